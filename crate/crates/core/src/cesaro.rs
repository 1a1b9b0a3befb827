//! Cesàro-averaged inner products for functions outside the local space.
//!
//! For a weakly bounded family with growth exponent `p`,
//! `σ_n^{fg}(t) = (n+1)^{p−1} Σ_{k≤n} K^k[f](t) K^k[g](t)`. Pure harmonics are
//! handled in closed form: `K^k[e^{iωt}] = i^k P_k(ω) e^{iωt}`, so
//! `K^k[sin ωt] = P_k(ω) sin(ωt + kπ/2)` and likewise for cosine. Only the
//! limit in `n` is truncated.
//!
//! The boundedness verdicts of [`conjecture_scan`] are a decade-ratio
//! heuristic. They describe what the partial means do up to `N`, nothing more.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::expand::{chromatic_jet_from_samples, BandlimitedSignal};
use crate::opoly::{eval_family, FamilySpec, KernelKind};

/// Largest `N` accepted by [`cesaro_dot`].
pub const CESARO_MAX_TERMS: usize = 5000;

/// Relative drift over the last decade below which a series counts as settled.
pub const SETTLED_DRIFT: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HarmonicKind {
    Sin,
    Cos,
}

/// `amplitude · sin(ωt)` or `amplitude · cos(ωt)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub kind: HarmonicKind,
    pub omega: f64,
    pub amplitude: f64,
}

impl Harmonic {
    pub fn sin(omega: f64, amplitude: f64) -> Self {
        Harmonic {
            kind: HarmonicKind::Sin,
            omega,
            amplitude,
        }
    }

    pub fn cos(omega: f64, amplitude: f64) -> Self {
        Harmonic {
            kind: HarmonicKind::Cos,
            omega,
            amplitude,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        let x = self.omega * t;
        self.amplitude
            * match self.kind {
                HarmonicKind::Sin => x.sin(),
                HarmonicKind::Cos => x.cos(),
            }
    }

    /// `K^k[self](t)` for `k ≤ n`.
    pub fn chromatic(&self, family: &FamilySpec, n: usize, t: f64) -> Result<Vec<f64>> {
        let p = eval_family(family, n, self.omega)?;
        let (s, c) = (self.omega * t).sin_cos();
        // phase-shifted values sin/cos(ωt + kπ/2) for k mod 4
        let cycle = match self.kind {
            HarmonicKind::Sin => [s, c, -s, -c],
            HarmonicKind::Cos => [c, -s, -c, s],
        };
        Ok(p
            .iter()
            .enumerate()
            .map(|(k, pk)| self.amplitude * pk * cycle[k % 4])
            .collect())
    }
}

/// Change of the partial means over the last decade of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CesaroQuality {
    /// `|σ_N − σ_{⌊N/10⌋}|`.
    pub decade_change: f64,
    /// `decade_change / |σ_N|`; infinite when `σ_N = 0`.
    pub relative_change: f64,
    /// `relative_change ≤ SETTLED_DRIFT` and `N ≥ 10`. Limits near zero never
    /// settle in this sense; judge them by `decade_change`.
    pub settled: bool,
}

impl CesaroQuality {
    fn of(partials: &[f64]) -> Self {
        let n = partials.len().saturating_sub(1);
        if n < 10 {
            return CesaroQuality {
                decade_change: f64::NAN,
                relative_change: f64::NAN,
                settled: false,
            };
        }
        let last = partials[n];
        let decade_change = (last - partials[n / 10]).abs();
        let relative_change = if last == 0.0 {
            f64::INFINITY
        } else {
            decade_change / last.abs()
        };
        CesaroQuality {
            decade_change,
            relative_change,
            settled: relative_change <= SETTLED_DRIFT,
        }
    }
}

/// Partial means `σ_0 .. σ_N` at one base point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CesaroSeries {
    pub family: String,
    pub p: f64,
    pub t: f64,
    pub partials: Vec<f64>,
    pub quality: CesaroQuality,
}

impl CesaroSeries {
    fn from_products(family: &FamilySpec, t: f64, products: impl IntoIterator<Item = f64>) -> Self {
        let p = family.bounds().p;
        let partials = cesaro_means(p, products);
        let quality = CesaroQuality::of(&partials);
        CesaroSeries {
            family: family.name().to_string(),
            p,
            t,
            partials,
            quality,
        }
    }

    /// `σ_N`, the best available estimate of the limit.
    pub fn last(&self) -> f64 {
        self.partials.last().copied().unwrap_or(0.0)
    }

    pub fn n(&self) -> usize {
        self.partials.len().saturating_sub(1)
    }
}

/// Running means `(n+1)^{p−1} Σ_{k≤n} x_k`.
pub fn cesaro_means(p: f64, terms: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut sum = 0.0;
    terms
        .into_iter()
        .enumerate()
        .map(|(n, x)| {
            sum += x;
            sum / ((n + 1) as f64).powf(1.0 - p)
        })
        .collect()
}

fn check_frequency(family: &FamilySpec, omega: f64) -> Result<()> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::Domain {
            what: "harmonic frequency (needs ω > 0)",
            value: omega,
        });
    }
    if omega >= family.support_radius() {
        return Err(Error::Domain {
            what: "harmonic frequency outside the open support",
            value: omega,
        });
    }
    Ok(())
}

/// `σ_n^{fg}(t)` for `n ≤ N` and two harmonics.
pub fn cesaro_dot(family: &FamilySpec, f: &Harmonic, g: &Harmonic, t: f64, n: usize) -> Result<CesaroSeries> {
    family.require_weakly_bounded()?;
    if n > CESARO_MAX_TERMS {
        return Err(Error::OrderCap {
            requested: n,
            cap: CESARO_MAX_TERMS,
        });
    }
    if !t.is_finite() {
        return Err(Error::Domain {
            what: "base point",
            value: t,
        });
    }
    check_frequency(family, f.omega)?;
    check_frequency(family, g.omega)?;
    let kf = f.chromatic(family, n, t)?;
    let kg = g.chromatic(family, n, t)?;
    Ok(CesaroSeries::from_products(
        family,
        t,
        kf.iter().zip(&kg).map(|(a, b)| a * b),
    ))
}

/// `(n+1)^{p−1} Σ_{k≤n} P_k(ω)²` for `n ≤ n_max`. On overflow the sequence
/// stops early and the second value is the first order that failed.
pub fn mean_squares(family: &FamilySpec, omega: f64, n_max: usize) -> Result<(Vec<f64>, Option<usize>)> {
    let (p, truncated) = match eval_family(family, n_max, omega) {
        Ok(p) => (p, None),
        Err(Error::Overflow { order, .. }) => (eval_family(family, order - 1, omega)?, Some(order)),
        Err(e) => return Err(e),
    };
    Ok((cesaro_means(family.bounds().p, p.iter().map(|x| x * x)), truncated))
}

/// Even- and odd-index halves,
/// `(2n+1)^{p−1} Σ_{k≤n} P_{2k}(ω)²` and `(2n+1)^{p−1} Σ_{k<n} P_{2k+1}(ω)²`.
pub fn even_odd_means(family: &FamilySpec, omega: f64, n: usize) -> Result<(f64, f64)> {
    let p = eval_family(family, 2 * n, omega)?;
    let even: f64 = p.iter().step_by(2).map(|x| x * x).sum();
    let odd: f64 = p.iter().skip(1).step_by(2).map(|x| x * x).sum();
    let scale = ((2 * n + 1) as f64).powf(family.bounds().p - 1.0);
    Ok((even * scale, odd * scale))
}

/// Heuristic classification of a partial-mean sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Positive, and the last decade changed the mean by a factor in `[1/2, 2]`.
    BoundedPositive,
    Growing,
    Decaying,
    /// The recurrence overflowed before `N`.
    Overflow,
    /// Fewer than ten terms.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::BoundedPositive => "bounded-positive",
            Verdict::Growing => "growing",
            Verdict::Decaying => "decaying",
            Verdict::Overflow => "overflow",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Ratio `σ_N / σ_{⌊N/10⌋}` mapped to a verdict.
    pub fn from_means(means: &[f64]) -> (Verdict, f64) {
        let n = means.len().saturating_sub(1);
        if n < 10 {
            return (Verdict::Inconclusive, f64::NAN);
        }
        let ratio = means[n] / means[n / 10];
        let v = if !ratio.is_finite() || means[n] <= 0.0 {
            Verdict::Decaying
        } else if ratio > 2.0 {
            Verdict::Growing
        } else if ratio < 0.5 {
            Verdict::Decaying
        } else {
            Verdict::BoundedPositive
        };
        (v, ratio)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub omega: f64,
    /// `(n, mean)` at `1, 2, 5, 10, 20, 50, …` and at `N`.
    pub checkpoints: Vec<(usize, f64)>,
    pub verdict: Verdict,
    pub decade_ratio: f64,
    pub truncated_at: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureScan {
    pub family: String,
    pub p: f64,
    pub n_max: usize,
    pub rows: Vec<ScanRow>,
}

impl ConjectureScan {
    pub fn all_bounded_positive(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::BoundedPositive)
    }
}

/// `1, 2, 5, 10, 20, 50, …` below `n_max`, then `n_max`.
pub fn log_checkpoints(n_max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut decade = 1usize;
    'outer: loop {
        for m in [1, 2, 5] {
            let n = m * decade;
            if n >= n_max {
                break 'outer;
            }
            out.push(n);
        }
        decade *= 10;
    }
    out.push(n_max);
    out
}

/// Interior frequencies: seven equally spaced points strictly inside a
/// bounded support, or `0.25, 0.5, …, 2` otherwise.
pub fn default_omega_grid(family: &FamilySpec) -> Vec<f64> {
    let r = family.support_radius();
    if r.is_finite() {
        (1..=7).map(|i| r * i as f64 / 8.0).collect()
    } else {
        (1..=8).map(|i| 0.25 * i as f64).collect()
    }
}

/// Mean squares `(n+1)^{p−1} Σ P_k(ω)²` along a frequency grid, with a
/// decade-ratio verdict per frequency.
pub fn conjecture_scan(
    exec: Execution,
    family: &FamilySpec,
    omegas: &[f64],
    n_max: usize,
) -> Result<ConjectureScan> {
    family.require_weakly_bounded()?;
    for &w in omegas {
        if !w.is_finite() || w.abs() >= family.support_radius() {
            return Err(Error::Domain {
                what: "scan frequency outside the open support",
                value: w,
            });
        }
    }
    let marks = log_checkpoints(n_max);
    let rows = exec::try_map(exec, omegas, |&omega| {
        let (means, truncated_at) = mean_squares(family, omega, n_max)?;
        let (verdict, decade_ratio) = if truncated_at.is_some() {
            log::warn!("recurrence overflow at ω = {omega}; scan truncated");
            (Verdict::Overflow, f64::NAN)
        } else {
            Verdict::from_means(&means)
        };
        let checkpoints = marks
            .iter()
            .filter(|&&n| n < means.len())
            .map(|&n| (n, means[n]))
            .collect();
        Ok::<_, Error>(ScanRow {
            omega,
            checkpoints,
            verdict,
            decade_ratio,
            truncated_at,
        })
    })?;
    Ok(ConjectureScan {
        family: family.name().to_string(),
        p: family.bounds().p,
        n_max,
        rows,
    })
}

/// `ν_n^f(t)` for `n ≤ N` and a band-limited signal. Such signals have
/// `Σ K^k[f]² < ∞`, so the means go to zero.
pub fn cesaro_null_check(family: &FamilySpec, sig: &BandlimitedSignal, t: f64, n: usize) -> Result<CesaroSeries> {
    if family.kernel() != KernelKind::LegendreSinc {
        return Err(Error::InvalidParameter(format!(
            "null check needs the legendre family, got {}",
            family.name()
        )));
    }
    let jet = chromatic_jet_from_samples(sig, t, n, Some(4 * sig.window().max(1)))?;
    Ok(CesaroSeries::from_products(family, t, jet.values.iter().map(|x| x * x)))
}
