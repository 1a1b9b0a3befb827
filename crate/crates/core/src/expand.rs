//! Chromatic, Shannon and Taylor approximation of band-limited signals.
//!
//! A [`BandlimitedSignal`] holds Nyquist-rate samples `f(n)` on `[−W, W]` and
//! stands for `f(t) = Σ f(n) sinc(t − n)`. Its chromatic jets are the sums of
//! `f(n) K^k[sinc](t − n)`; these kernels decay only like `1/|t|`, which is
//! why truncated sample windows converge slowly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chromdiff::{Jet, JetKind, OperatorTable};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::mkernel::{km_all, sin_pi, spherical_j_pi_all};
use crate::opoly::FamilySpec;

/// Finite set of Nyquist-rate samples `f(n)`, `−W ≤ n ≤ W`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandlimitedSignal {
    window: usize,
    samples: Vec<f64>,
    seed: Option<u64>,
}

impl BandlimitedSignal {
    /// `samples[i]` is `f(i − W)`; the length must be `2W + 1`.
    pub fn new(window: usize, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != 2 * window + 1 {
            return Err(Error::InvalidParameter(format!(
                "window {window} needs {} samples, got {}",
                2 * window + 1,
                samples.len()
            )));
        }
        if let Some(x) = samples.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite sample {x}")));
        }
        Ok(BandlimitedSignal { window, samples, seed: None })
    }

    /// Samples drawn uniformly from `(−1, 1)` with a ChaCha8 stream seeded by `seed`.
    pub fn random(window: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = (0..2 * window + 1)
            .map(|_| loop {
                let x: f64 = rng.random_range(-1.0..1.0);
                if x > -1.0 {
                    break x;
                }
            })
            .collect();
        BandlimitedSignal {
            window,
            samples,
            seed: Some(seed),
        }
    }

    /// The signal with `f(n0) = value` and every other sample zero.
    pub fn impulse(n0: i64, value: f64) -> Self {
        let window = n0.unsigned_abs() as usize;
        let mut samples = vec![0.0; 2 * window + 1];
        samples[(n0 + window as i64) as usize] = value;
        BandlimitedSignal { window, samples, seed: None }
    }

    /// The zero signal.
    pub fn empty() -> Self {
        BandlimitedSignal {
            window: 0,
            samples: vec![0.0],
            seed: None,
        }
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// `f(n)`, zero outside the window.
    pub fn sample(&self, n: i64) -> f64 {
        let i = n + self.window as i64;
        if i < 0 || i as usize >= self.samples.len() {
            0.0
        } else {
            self.samples[i as usize]
        }
    }

    /// `(n, f(n))` over the window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let w = self.window as i64;
        self.samples.iter().enumerate().map(move |(i, &x)| (i as i64 - w, x))
    }

    /// `Σ f(n)²`, which equals `∫ f²` for the sinc series.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|x| x * x).sum()
    }
}

/// `sin(πx)/(πx)`, exactly `δ` on the integers.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        sin_pi(x) / (std::f64::consts::PI * x)
    }
}

/// `Σ f(n) sinc(t − n)` over the window.
pub fn shannon_eval(sig: &BandlimitedSignal, t: f64) -> f64 {
    sig.iter().map(|(n, x)| x * sinc(t - n as f64)).sum()
}


/// `K^k[f](t)` for `k ≤ order`, summing `f(n)(−1)^k √(2k+1) j_k(π(t−n))` over
/// `|n| ≤ trunc_window` (default four times the signal window).
pub fn chromatic_jet_from_samples(
    sig: &BandlimitedSignal,
    t: f64,
    order: usize,
    trunc_window: Option<usize>,
) -> Result<Jet> {
    let trunc = trunc_window.unwrap_or(4 * sig.window().max(1));
    if trunc < sig.window() {
        return Err(Error::InvalidParameter(format!(
            "truncation window {trunc} is smaller than the signal window {}",
            sig.window()
        )));
    }
    if trunc_window.is_none() && order > 0 {
        let far = spherical_j_pi_all(order, trunc as f64)[order].abs() * (2.0 * order as f64 + 1.0).sqrt();
        log::warn!(
            "chromatic jets from samples converge slowly: K^{order}[sinc] at distance {trunc} is still {far:.2e}"
        );
    }
    let mut acc = vec![0.0; order + 1];
    for (n, x) in sig.iter() {
        if x == 0.0 || n.unsigned_abs() as usize > trunc {
            continue;
        }
        let j = spherical_j_pi_all(order, t - n as f64);
        for (k, a) in acc.iter_mut().enumerate() {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            *a += x * s * (2.0 * k as f64 + 1.0).sqrt() * j[k];
        }
    }
    Ok(Jet::chromatic(t, acc))
}

fn expect_chromatic(jet: &Jet) -> Result<()> {
    if jet.kind == JetKind::Chromatic {
        Ok(())
    } else {
        Err(Error::JetKind {
            expected: "chromatic",
            found: "taylor",
        })
    }
}

/// `Σ_k (−1)^k v_k K^k[m](t − u)` for a chromatic jet `v` at `u`.
pub fn chromatic_approx(family: &FamilySpec, jet: &Jet, t: f64) -> Result<f64> {
    expect_chromatic(jet)?;
    let Some(order) = jet.order() else {
        return Ok(0.0);
    };
    let k = km_all(family, order, t - jet.base)?;
    Ok(jet
        .values
        .iter()
        .zip(&k)
        .enumerate()
        .map(|(i, (v, km))| if i % 2 == 0 { v * km } else { -v * km })
        .sum())
}

/// [`chromatic_approx`] over a grid of `t`.
pub fn chromatic_approx_grid(exec: Execution, family: &FamilySpec, jet: &Jet, ts: &[f64]) -> Result<Vec<f64>> {
    expect_chromatic(jet)?;
    exec::try_map(exec, ts, |&t| chromatic_approx(family, jet, t))
}

/// Truncated Taylor sum `Σ v_k (t−u)^k / k!`.
pub fn taylor_approx(jet: &Jet, t: f64) -> Result<f64> {
    if jet.kind != JetKind::Taylor {
        return Err(Error::JetKind {
            expected: "taylor",
            found: "chromatic",
        });
    }
    let h = t - jet.base;
    let mut term = 1.0;
    let mut sum = 0.0;
    for (k, v) in jet.values.iter().enumerate() {
        if k > 0 {
            term *= h / k as f64;
        }
        sum += v * term;
    }
    Ok(sum)
}

/// Order of the last kernel used for the tail sum of [`error_bound_e`].
fn tail_order(family: &FamilySpec, n: usize, t: f64) -> usize {
    let b = family.bounds();
    let scale = if b.p < 1.0 {
        (2.0 * b.m * t.abs()).powf(1.0 / (1.0 - b.p))
    } else {
        0.0
    };
    n + 40 + (std::f64::consts::E * scale).ceil() as usize
}

/// `E_n(t) = (1 − Σ_{k≤n} K^k[m](t)²)^{1/2}`.
///
/// Evaluated as `(Σ_{k>n} K^k[m](t)²)^{1/2}`, which is the same quantity
/// because `Σ_k K^k[m](t)² = 1`, but keeps full relative accuracy where
/// `E_n` is tiny. The direct form is still computed; if it is below
/// `−1e-12`, or disagrees with the tail form by more than `1e-9`, a
/// consistency error is returned.
pub fn error_bound_e(family: &FamilySpec, n: usize, t: f64) -> Result<f64> {
    family.require_weakly_bounded()?;
    let mut top = tail_order(family, n, t);
    loop {
        let k = km_all(family, top, t)?;
        let head: f64 = k[..=n].iter().map(|x| x * x).sum();
        let tail: f64 = k[n + 1..].iter().map(|x| x * x).sum();
        let last: f64 = k[top - 4..].iter().map(|x| x * x).sum();
        if last > 1e-34 && top < 1 << 16 {
            top *= 2;
            continue;
        }
        let direct = 1.0 - head;
        if direct < -1e-12 {
            return Err(Error::Consistency(format!(
                "1 − Σ K^k[m]({t})² = {direct:e} for n = {n}"
            )));
        }
        if (direct - tail).abs() > 1e-9 {
            return Err(Error::Consistency(format!(
                "sum of squares of K^k[m]({t}) is {} instead of 1",
                head + tail
            )));
        }
        return Ok(tail.sqrt());
    }
}

/// One grid point of an [`ApproxReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxRow {
    pub t: f64,
    pub f: f64,
    pub chromatic: f64,
    pub taylor: f64,
    pub e_n: f64,
    /// `|f(t) − CA_n(t)|`
    pub error: f64,
    /// `tail · E_n(t − u)`
    pub bound: f64,
}

/// Order-`n` chromatic and Taylor approximations of a sampled signal at base `u`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub order: usize,
    pub base: f64,
    /// `(Σ_{k>n} K^k[f](u)²)^{1/2}`, from `Σ f(n)² − Σ_{k≤n} K^k[f](u)²`.
    pub tail: f64,
    pub rows: Vec<ApproxRow>,
}

impl ApproxReport {
    /// Largest `error − bound` over the grid; non-positive when the bound holds
    /// everywhere.
    pub fn worst_bound_excess(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.error - r.bound)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Max chromatic and Taylor errors over rows with `|t − u| ≤ radius`.
    pub fn max_errors_within(&self, radius: f64) -> (f64, f64) {
        self.rows
            .iter()
            .filter(|r| (r.t - self.base).abs() <= radius)
            .fold((0.0, 0.0), |(c, t), r| (c.max(r.error), t.max((r.f - r.taylor).abs())))
    }
}

/// Builds the chromatic jet of `sig` at `u` exactly (all samples), its Taylor
/// jet through the operator table, and evaluates everything on `ts`.
pub fn approx_report(
    exec: Execution,
    sig: &BandlimitedSignal,
    order: usize,
    u: f64,
    ts: &[f64],
) -> Result<ApproxReport> {
    let family = FamilySpec::legendre();
    let cjet = chromatic_jet_from_samples(sig, u, order, Some(sig.window()))?;
    let table = OperatorTable::build(&family, order)?;
    let tjet = table.to_taylor(&cjet)?;
    let head: f64 = cjet.values.iter().map(|x| x * x).sum();
    let tail = (sig.energy() - head).max(0.0).sqrt();
    let rows = exec::try_map(exec, ts, |&t| {
        let f = shannon_eval(sig, t);
        let chromatic = chromatic_approx(&family, &cjet, t)?;
        let taylor = taylor_approx(&tjet, t)?;
        let e_n = error_bound_e(&family, order, t - u)?;
        Ok::<_, Error>(ApproxRow {
            t,
            f,
            chromatic,
            taylor,
            e_n,
            error: (f - chromatic).abs(),
            bound: tail * e_n,
        })
    })?;
    Ok(ApproxReport {
        order,
        base: u,
        tail,
        rows,
    })
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
            .collect(),
    }
}

/// Direction of [`shannon_chromatic_transform`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformDirection {
    /// `f(n), |n| ≤ T  ↦  K^k[f](0), k ≤ T`
    SamplesToJet,
    /// `K^k[f](0), k ≤ T  ↦  f(n), |n| ≤ T`
    JetToSamples,
}

/// `G[k][n] = √(2k+1) j_k(πn)` for `k ≤ trunc`, `|n| ≤ trunc`; column `n + trunc`.
pub fn shannon_chromatic_matrix(trunc: usize) -> Vec<Vec<f64>> {
    let mut g = vec![vec![0.0; 2 * trunc + 1]; trunc + 1];
    for (col, n) in (-(trunc as i64)..=trunc as i64).enumerate() {
        let j = spherical_j_pi_all(trunc, n as f64);
        for (k, row) in g.iter_mut().enumerate() {
            row[col] = (2.0 * k as f64 + 1.0).sqrt() * j[k];
        }
    }
    g
}

/// Truncated change of coefficients between Nyquist samples and the chromatic
/// jet at zero (Legendre family):
/// `K^k[f](0) = Σ_n f(n) √(2k+1) j_k(πn)` and `f(n) = Σ_k K^k[f](0) √(2k+1) j_k(πn)`.
/// Samples are indexed from `n = −trunc`.
pub fn shannon_chromatic_transform(
    direction: TransformDirection,
    coeffs: &[f64],
    trunc: usize,
) -> Result<Vec<f64>> {
    let g = shannon_chromatic_matrix(trunc);
    match direction {
        TransformDirection::SamplesToJet => {
            if coeffs.len() != 2 * trunc + 1 {
                return Err(Error::InvalidParameter(format!(
                    "expected {} samples, got {}",
                    2 * trunc + 1,
                    coeffs.len()
                )));
            }
            Ok(g.iter()
                .map(|row| row.iter().zip(coeffs).map(|(a, b)| a * b).sum())
                .collect())
        }
        TransformDirection::JetToSamples => {
            if coeffs.len() != trunc + 1 {
                return Err(Error::InvalidParameter(format!(
                    "expected {} jet values, got {}",
                    trunc + 1,
                    coeffs.len()
                )));
            }
            Ok((0..2 * trunc + 1)
                .map(|col| g.iter().zip(coeffs).map(|(row, c)| row[col] * c).sum())
                .collect())
        }
    }
}

/// A truncated local sum with its convergence diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalSum {
    pub value: f64,
    /// Energy (sum of absolute values of the summands) of the last ten terms.
    pub tail: f64,
}

fn last_ten(terms: &[f64]) -> f64 {
    terms.iter().rev().take(10).map(|x| x.abs()).sum()
}

fn same_base(f: &Jet, g: &Jet) -> Result<()> {
    expect_chromatic(f)?;
    expect_chromatic(g)?;
    if f.base != g.base {
        return Err(Error::InvalidParameter(format!(
            "jets at different bases {} and {}",
            f.base, g.base
        )));
    }
    Ok(())
}

/// `Σ K^n[f](u) K^n[g](u)` over the common length of the jets.
pub fn local_dot(family: &FamilySpec, f: &Jet, g: &Jet) -> Result<LocalSum> {
    family.require_weakly_bounded()?;
    same_base(f, g)?;
    let terms: Vec<f64> = f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect();
    Ok(LocalSum {
        value: terms.iter().sum(),
        tail: last_ten(&terms),
    })
}

/// `(Σ K^n[f](u)²)^{1/2}`; the tail is reported on the squared terms.
pub fn local_norm(family: &FamilySpec, f: &Jet) -> Result<LocalSum> {
    let s = local_dot(family, f, f)?;
    Ok(LocalSum {
        value: s.value.max(0.0).sqrt(),
        tail: s.tail,
    })
}

/// `(f ∗ g)(t) = Σ_n K^n[f](u) (−1)^n K^n[g](t − u)`, where `g_jet(s, N)`
/// returns the chromatic jet of `g` at `s` up to order `N`.
pub fn local_conv<G>(family: &FamilySpec, f: &Jet, g_jet: G, t: f64) -> Result<LocalSum>
where
    G: Fn(f64, usize) -> Result<Jet>,
{
    family.require_weakly_bounded()?;
    expect_chromatic(f)?;
    let Some(order) = f.order() else {
        return Ok(LocalSum { value: 0.0, tail: 0.0 });
    };
    let g = g_jet(t - f.base, order)?;
    expect_chromatic(&g)?;
    if g.len() < f.len() {
        return Err(Error::JetLength { len: g.len(), order });
    }
    let terms: Vec<f64> = f
        .values
        .iter()
        .zip(&g.values)
        .enumerate()
        .map(|(n, (a, b))| if n % 2 == 0 { a * b } else { -a * b })
        .collect();
    Ok(LocalSum {
        value: terms.iter().sum(),
        tail: last_ten(&terms),
    })
}

/// Chromatic jet of the family's own kernel `m` at `s`, for use with
/// [`local_conv`].
pub fn kernel_jet(family: &FamilySpec, s: f64, order: usize) -> Result<Jet> {
    Ok(Jet::chromatic(s, km_all(family, order, s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn shannon_examples() {
        let one = BandlimitedSignal::impulse(0, 1.0);
        assert_eq!(shannon_eval(&one, 0.0), 1.0);
        assert_relative_eq!(shannon_eval(&one, 0.5), 2.0 / PI, max_relative = 1e-15);
        let sig = BandlimitedSignal::random(16, 3);
        for m in -20..=20 {
            assert_eq!(shannon_eval(&sig, m as f64), sig.sample(m));
        }
        // independent direct summation
        let t: f64 = 0.3;
        let direct: f64 = (-16..=16)
            .map(|n: i64| sig.sample(n) * (PI * (t - n as f64)).sin() / (PI * (t - n as f64)))
            .sum();
        assert!((shannon_eval(&sig, t) - direct).abs() < 1e-14);
    }

    #[test]
    fn random_signal_properties() {
        let a = BandlimitedSignal::random(32, 7);
        let b = BandlimitedSignal::random(32, 7);
        assert_eq!(a, b);
        assert_eq!(a.seed(), Some(7));
        assert!(a.iter().all(|(_, x)| x.abs() < 1.0));
        assert_ne!(a, BandlimitedSignal::random(32, 8));
        assert!(BandlimitedSignal::new(2, vec![0.0; 4]).is_err());
    }

    #[test]
    fn jet_of_impulse_at_zero() {
        let one = BandlimitedSignal::impulse(0, 1.0);
        let jet = chromatic_jet_from_samples(&one, 0.0, 10, None).unwrap();
        assert_eq!(jet.values[0], 1.0);
        assert!(jet.values[1..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn jet_row_zero_is_shannon() {
        let sig = BandlimitedSignal::random(12, 11);
        for &t in &[-3.3, 0.0, 0.45, 7.9] {
            let jet = chromatic_jet_from_samples(&sig, t, 4, Some(12)).unwrap();
            assert!((jet.values[0] - shannon_eval(&sig, t)).abs() < 1e-14);
        }
        assert!(chromatic_jet_from_samples(&sig, 0.0, 4, Some(3)).is_err());
    }

    #[test]
    fn empty_signal_is_zero_everywhere() {
        let z = BandlimitedSignal::empty();
        let jet = chromatic_jet_from_samples(&z, 0.3, 6, None).unwrap();
        assert!(jet.values.iter().all(|&x| x == 0.0));
        let leg = FamilySpec::legendre();
        assert_eq!(chromatic_approx(&leg, &jet, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn approx_of_kernel_itself() {
        for spec in FamilySpec::builtins() {
            let mut v = vec![0.0; 9];
            v[0] = 1.0;
            let jet = Jet::chromatic(0.0, v);
            for &t in &[-1.5, 0.2, 3.0] {
                let m = crate::mkernel::m_eval(&spec, t).unwrap();
                assert_eq!(chromatic_approx(&spec, &jet, t).unwrap(), m);
            }
        }
    }

    #[test]
    fn approx_of_sine_from_exact_taylor_jet() {
        let leg = FamilySpec::legendre();
        let table = OperatorTable::build(&leg, 16).unwrap();
        let w = PI / 2.0;
        // d^k/dt^k sin(wt) at 0 = w^k sin(kπ/2)
        let taylor: Vec<f64> = (0..=16)
            .map(|k| w.powi(k) * [0.0, 1.0, 0.0, -1.0][k as usize % 4])
            .collect();
        let cjet = table.to_chromatic(&Jet::taylor(0.0, taylor)).unwrap();
        for t in linspace(-2.0, 2.0, 81) {
            let ca = chromatic_approx(&leg, &cjet, t).unwrap();
            assert!((ca - (w * t).sin()).abs() <= 1e-6, "t={t}");
        }
    }

    #[test]
    fn approximation_reproduces_its_jet() {
        // K^j of CA_n at u equals v_j; checked through the Taylor jet of CA_n,
        // obtained by re-expanding each kernel K^k[m](t−u) with the table.
        let leg = FamilySpec::legendre();
        let n = 10;
        let table = OperatorTable::build(&leg, n).unwrap();
        let sig = BandlimitedSignal::random(6, 5);
        let u = 0.35;
        let cjet = chromatic_jet_from_samples(&sig, u, n, Some(6)).unwrap();
        // Taylor jet of t ↦ K^k[m](t − u) at t = u is (D^j K^k)[m](0) = (−1)^k B[j][k].
        let mut taylor = vec![0.0; n + 1];
        for (j, tv) in taylor.iter_mut().enumerate() {
            for k in 0..=n {
                let sk = if k % 2 == 0 { 1.0 } else { -1.0 };
                *tv += sk * cjet.values[k] * sk * table.b(j, k);
            }
        }
        let back = table.to_chromatic(&Jet::taylor(u, taylor)).unwrap();
        for (a, b) in back.values.iter().zip(&cjet.values) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn e_n_examples() {
        let leg = FamilySpec::legendre();
        for n in 0..6 {
            assert_eq!(error_bound_e(&leg, n, 0.0).unwrap(), 0.0);
        }
        assert_relative_eq!(error_bound_e(&leg, 0, 1.0).unwrap(), 1.0, max_relative = 1e-14);
        let e = error_bound_e(&leg, 4, 2.3).unwrap();
        assert!((0.0..=1.0).contains(&e));
        assert!(matches!(
            error_bound_e(&FamilySpec::herron(), 3, 0.5),
            Err(Error::NotWeaklyBounded { .. })
        ));
        for spec in [FamilySpec::chebyshev(), FamilySpec::hermite()] {
            for &t in &[-3.0, 0.5, 6.0] {
                let e = error_bound_e(&spec, 5, t).unwrap();
                let k = km_all(&spec, 5, t).unwrap();
                let direct = (1.0 - k.iter().map(|x| x * x).sum::<f64>()).max(0.0).sqrt();
                assert!((e - direct).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn e_n_is_flat_at_zero() {
        // central differences of E_15 of orders 1..8 at 0, step 1e-2
        let leg = FamilySpec::legendre();
        let h = 1e-2;
        let vals: Vec<f64> = (-4..=4)
            .map(|i| error_bound_e(&leg, 15, i as f64 * h).unwrap())
            .collect();
        let binom = |n: u32, k: u32| (0..k).fold(1.0, |a, i| a * (n - i) as f64 / (i + 1) as f64);
        for order in 1..=8u32 {
            // Δ^order with half-steps collapsed: use the centred stencil on the
            // available points (odd orders via the symmetric average).
            let half = order.div_ceil(2) as i32;
            let mut d = 0.0;
            if order % 2 == 0 {
                for i in 0..=order {
                    let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                    d += s * binom(order, i) * vals[(4 - half + i as i32) as usize];
                }
            } else {
                for i in 0..=order {
                    let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                    let lo = vals[(4 - half + i as i32) as usize];
                    let hi = vals[(4 - half + 1 + i as i32) as usize];
                    d += 0.5 * s * binom(order, i) * (lo + hi);
                }
            }
            let deriv = d / h.powi(order as i32);
            assert!(deriv.abs() <= 1e-6, "order {order}: {deriv}");
        }
    }

    #[test]
    fn taylor_examples() {
        assert_eq!(taylor_approx(&Jet::taylor(0.0, vec![2.5, 0.0, 0.0]), 7.0).unwrap(), 2.5);
        let e = taylor_approx(&Jet::taylor(0.0, vec![1.0; 11]), 1.0).unwrap();
        assert!((e - 2.718281801).abs() < 1e-9);
        assert!(taylor_approx(&Jet::chromatic(0.0, vec![1.0]), 1.0).is_err());
    }

    #[test]
    fn transform_examples() {
        let g = shannon_chromatic_matrix(6);
        for (col, n) in (-6i64..=6).enumerate() {
            assert_eq!(g[0][col], if n == 0 { 1.0 } else { 0.0 });
        }
        let sig = BandlimitedSignal::random(8, 21);
        let trunc = 64;
        let samples: Vec<f64> = (-(trunc as i64)..=trunc as i64).map(|n| sig.sample(n)).collect();
        let jet = shannon_chromatic_transform(TransformDirection::SamplesToJet, &samples, trunc).unwrap();
        let back = shannon_chromatic_transform(TransformDirection::JetToSamples, &jet, trunc).unwrap();
        for n in -8i64..=8 {
            let i = (n + trunc as i64) as usize;
            assert!((back[i] - samples[i]).abs() <= 1e-2, "n={n}");
        }
        // Row norms → 1. For odd k, j_k(πn) ≈ ±1/(πn), so the part of the
        // row beyond |n| = T carries about 2(2k+1)/(π² (T + 1/2)); for even
        // k the leading term vanishes on the integers.
        for trunc in [256usize, 512] {
            let g = shannon_chromatic_matrix(trunc);
            for (k, row) in g.iter().take(9).enumerate() {
                let deficit = 1.0 - row.iter().map(|x| x * x).sum::<f64>();
                assert!(deficit >= -1e-14, "k={k}: {deficit}");
                if k % 2 == 0 {
                    assert!(deficit < 1e-4, "k={k}: {deficit}");
                } else {
                    let predicted = 2.0 * (2 * k + 1) as f64 / (PI * PI * (trunc as f64 + 0.5));
                    assert!((deficit - predicted).abs() <= 0.05 * predicted, "k={k}: {deficit} vs {predicted}");
                }
                if trunc == 512 || k <= 5 {
                    assert!(deficit <= 1e-2, "trunc={trunc} k={k}: {deficit}");
                }
            }
        }
        assert!(shannon_chromatic_transform(TransformDirection::JetToSamples, &[1.0], 3).is_err());
    }

    #[test]
    fn local_examples() {
        let leg = FamilySpec::legendre();
        let mut v = vec![0.0; 12];
        v[0] = 1.0;
        let n = local_norm(&leg, &Jet::chromatic(0.0, v.clone())).unwrap();
        assert_eq!(n.value, 1.0);
        assert_eq!(n.tail, 0.0);
        assert!(local_norm(&FamilySpec::herron(), &Jet::chromatic(0.0, v.clone())).is_err());
        assert!(local_dot(&leg, &Jet::chromatic(0.0, v.clone()), &Jet::chromatic(1.0, v)).is_err());
    }

    #[test]
    fn convolution_with_kernel_is_identity() {
        let leg = FamilySpec::legendre();
        let sig = BandlimitedSignal::random(5, 2);
        let u = 0.25;
        let jet = chromatic_jet_from_samples(&sig, u, 40, Some(5)).unwrap();
        for &t in &[-1.0, 0.25, 1.6] {
            let c = local_conv(&leg, &jet, |s, n| kernel_jet(&leg, s, n), t).unwrap();
            let ca = chromatic_approx(&leg, &jet, t).unwrap();
            assert!((c.value - ca).abs() < 1e-14);
            assert!((c.value - shannon_eval(&sig, t)).abs() < 1e-6);
        }
    }
}
