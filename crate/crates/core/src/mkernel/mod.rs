//! The kernel `m(t) = ∫ e^{iωt} da(ω)` and its chromatic derivatives `K^n[m](t)`.
//!
//! Built-in families have closed forms. Any family can also be evaluated from
//! the Taylor series at zero, `K^n[m](t) = Σ_k (K^n∘D^k)[m](0) t^k/k!`, where
//! the coefficients follow `b(n,k+1) = γ_n b(n+1,k) − γ_{n−1} b(n−1,k)`.

pub mod bessel;

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::opoly::{FamilySpec, KernelKind};

pub use bessel::{bessel_j, bessel_j_all, cos_pi, sin_pi, spherical_j, spherical_j_all, spherical_j_pi_all};

/// Hard cap on series terms.
pub const SERIES_MAX_TERMS: usize = 400;

/// Relative size of the last retained term bound.
const SERIES_TOL: f64 = 1e-16;

/// How `K^n[m](t)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMethod {
    ClosedForm,
    Series,
}

/// Values `K^0[m](t) .. K^N[m](t)` with the method that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelValues {
    pub t: f64,
    pub values: Vec<f64>,
    pub method: KernelMethod,
    /// Taylor terms summed (zero for closed forms).
    pub series_terms: usize,
    /// Whether the rigorous term bound reached the tolerance, as opposed to
    /// stopping on observed term size.
    pub bound_met: bool,
    /// False when the term cap was hit before either stopping rule fired.
    pub converged: bool,
}

/// An evaluator for one family up to a fixed order.
#[derive(Debug, Clone)]
pub struct KernelEval {
    family: FamilySpec,
    max_order: usize,
    method: KernelMethod,
}

impl KernelEval {
    /// Refuses orders above [`crate::max_order`] and closed forms for families
    /// that have none.
    pub fn new(family: &FamilySpec, max_order: usize, method: KernelMethod) -> Result<Self> {
        let cap = crate::max_order();
        if max_order > cap {
            return Err(Error::OrderCap { requested: max_order, cap });
        }
        if method == KernelMethod::ClosedForm && family.kernel() == KernelKind::GenericSeries {
            return Err(Error::InvalidParameter(format!(
                "family {} has no closed-form kernel",
                family.name()
            )));
        }
        Ok(KernelEval {
            family: family.clone(),
            max_order,
            method,
        })
    }

    /// Closed form when available, otherwise the series.
    pub fn auto(family: &FamilySpec, max_order: usize) -> Result<Self> {
        let method = if family.kernel() == KernelKind::GenericSeries {
            KernelMethod::Series
        } else {
            KernelMethod::ClosedForm
        };
        Self::new(family, max_order, method)
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn method(&self) -> KernelMethod {
        self.method
    }

    pub fn eval(&self, t: f64) -> Result<KernelValues> {
        match self.method {
            KernelMethod::ClosedForm => Ok(KernelValues {
                t,
                values: km_closed_all(&self.family, self.max_order, t)?,
                method: KernelMethod::ClosedForm,
                series_terms: 0,
                bound_met: true,
                converged: true,
            }),
            KernelMethod::Series => km_series_all(&self.family, self.max_order, t),
        }
    }
}

fn check_t(t: f64) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what: "kernel argument", value: t })
    }
}

/// `m(t)`.
pub fn m_eval(family: &FamilySpec, t: f64) -> Result<f64> {
    km_eval(family, 0, t)
}

/// `K^n[m](t)` by the family's closed form, or by the series for generic
/// families.
pub fn km_eval(family: &FamilySpec, n: usize, t: f64) -> Result<f64> {
    Ok(km_all(family, n, t)?[n])
}

/// `K^0[m](t) .. K^{n_max}[m](t)`, closed form where one exists.
pub fn km_all(family: &FamilySpec, n_max: usize, t: f64) -> Result<Vec<f64>> {
    if family.kernel() == KernelKind::GenericSeries {
        Ok(km_series_all(family, n_max, t)?.values)
    } else {
        km_closed_all(family, n_max, t)
    }
}

/// Closed forms of the four named families.
pub fn km_closed_all(family: &FamilySpec, n_max: usize, t: f64) -> Result<Vec<f64>> {
    check_t(t)?;
    let mut out = vec![0.0; n_max + 1];
    match family.kernel() {
        KernelKind::LegendreSinc => {
            let j = spherical_j_pi_all(n_max, t);
            for (n, o) in out.iter_mut().enumerate() {
                let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                *o = s * (2.0 * n as f64 + 1.0).sqrt() * j[n];
            }
        }
        KernelKind::ChebyshevBessel => {
            let j = bessel_j_all(n_max, std::f64::consts::PI * t);
            out[0] = j[0];
            for n in 1..=n_max {
                let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                out[n] = s * std::f64::consts::SQRT_2 * j[n];
            }
        }
        KernelKind::HermiteGaussian => {
            out[0] = (-t * t / 4.0).exp();
            for n in 1..=n_max {
                out[n] = -out[n - 1] * t / (2.0 * n as f64).sqrt();
            }
        }
        KernelKind::HerronSech => {
            let sech = 1.0 / t.cosh();
            let tanh = t.tanh();
            out[0] = sech;
            for n in 1..=n_max {
                out[n] = -out[n - 1] * tanh;
            }
        }
        KernelKind::GenericSeries => {
            return Err(Error::InvalidParameter(format!(
                "family {} has no closed-form kernel",
                family.name()
            )))
        }
    }
    Ok(out)
}

/// Largest `|t|` at which the series is attempted for a family with `p ≥ 1`.
pub fn series_radius(family: &FamilySpec) -> f64 {
    if family.is_weakly_bounded() {
        f64::INFINITY
    } else {
        0.9 * std::f64::consts::FRAC_PI_2
    }
}

/// `ln` of the bound `(2M|t|)^k (k+r)!^p / k!` on the `k`-th Taylor term.
fn ln_term_bound(ln_2mt: f64, p: f64, r: u32, k: usize, ln_fact: &[f64]) -> f64 {
    k as f64 * ln_2mt + p * ln_fact[k + r as usize] - ln_fact[k]
}

/// All `K^n[m](t)`, `n ≤ n_max`, from the Taylor series at zero.
///
/// Terms are summed until the bound `(2M|t|)^k (k+r)!^p / k!` on the
/// remaining terms is below `1e-16` of the largest accumulated value. Where that
/// bound is too loose to be reached within [`SERIES_MAX_TERMS`], summation stops
/// once two consecutive observed terms are that small past the peak of the
/// term sequence, and `bound_met` is false.
pub fn km_series_all(family: &FamilySpec, n_max: usize, t: f64) -> Result<KernelValues> {
    check_t(t)?;
    let radius = series_radius(family);
    if t.abs() >= radius {
        return Err(Error::Domain {
            what: "kernel series (outside the convergence disc)",
            value: t,
        });
    }
    let mut values = vec![0.0; n_max + 1];
    values[0] = 1.0;
    if t == 0.0 {
        return Ok(KernelValues {
            t,
            values,
            method: KernelMethod::Series,
            series_terms: 1,
            bound_met: true,
            converged: true,
        });
    }
    let crate::opoly::WeakBounds { m, p, r } = family.bounds();
    let dim = n_max + SERIES_MAX_TERMS + 2;
    let gam: Vec<Dd> = (0..dim).map(|i| Dd::from(family.gamma(i as isize))).collect();
    let mut ln_fact = vec![0.0; SERIES_MAX_TERMS + r as usize + 2];
    for i in 1..ln_fact.len() {
        ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
    }
    let ln_2mt = (2.0 * m * t.abs()).ln();
    let peak = if p < 1.0 {
        (2.0 * m * t.abs()).powf(1.0 / (1.0 - p))
    } else {
        0.0
    };

    let mut u = vec![Dd::ZERO; dim];
    u[0] = Dd::ONE;
    let mut acc: Vec<Dd> = u[..=n_max].to_vec();
    let mut terms = 1;
    let mut bound_met = false;
    let mut small_run = 0;
    let mut converged = false;
    for k in 0..SERIES_MAX_TERMS {
        let scale = Dd::from(t) / Dd::from((k + 1) as f64);
        // u_k is supported on n ≤ k
        let live = (k + 2).min(dim - 1);
        let mut next = vec![Dd::ZERO; dim];
        for n in 0..live {
            let mut v = gam[n] * u[n + 1];
            if n >= 1 {
                v -= gam[n - 1] * u[n - 1];
            }
            next[n] = v * scale;
        }
        u = next;
        let mut biggest: f64 = 0.0;
        for n in 0..=n_max {
            acc[n] += u[n];
            biggest = biggest.max(u[n].to_f64().abs());
        }
        terms = k + 2;
        let kk = k + 1;
        let top = acc.iter().map(|a| a.to_f64().abs()).fold(0.0, f64::max);
        if !top.is_finite() {
            return Err(Error::Overflow { context: "kernel series", order: kk });
        }
        if kk <= n_max {
            continue;
        }
        let ln_tol = (SERIES_TOL * top).ln();
        // Ratio of successive bounds; the tail is geometric once it is < 1.
        let ratio = (ln_term_bound(ln_2mt, p, r, kk + 1, &ln_fact)
            - ln_term_bound(ln_2mt, p, r, kk, &ln_fact))
        .exp();
        if ratio < 0.5 && ln_term_bound(ln_2mt, p, r, kk + 1, &ln_fact) + 2f64.ln() <= ln_tol {
            bound_met = true;
            converged = true;
            break;
        }
        if biggest <= SERIES_TOL * 0.1 * top && kk as f64 > peak {
            small_run += 1;
            if small_run >= 2 {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    for (v, a) in values.iter_mut().zip(&acc) {
        *v = a.to_f64();
    }
    if !converged {
        log::warn!(
            "kernel series for {} at t = {t} did not converge within {SERIES_MAX_TERMS} terms",
            family.name()
        );
    } else if !bound_met {
        log::debug!(
            "kernel series for {} at t = {t}: stopped on observed term size after {terms} terms",
            family.name()
        );
    }
    Ok(KernelValues {
        t,
        values,
        method: KernelMethod::Series,
        series_terms: terms,
        bound_met,
        converged,
    })
}

/// `(K^k∘K^n)[m](t)` for `k = 0 ..= k_max`, through the linearization
/// `P_k P_n = Σ_j c_j P_j`, so that `(K^k∘K^n)[m] = Σ_j c_j i^{j−k−n} K^j[m]`.
pub fn kk_kernel_all(family: &FamilySpec, n: usize, k_max: usize, t: f64) -> Result<Vec<f64>> {
    let top = n + k_max + 1;
    let km = km_all(family, top, t)?;
    let gam: Vec<f64> = (0..=top + 1).map(|i| family.gamma(i as isize)).collect();
    let mut prev = vec![0.0; top + 2];
    let mut cur = vec![0.0; top + 2];
    cur[n] = 1.0;
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut s = 0.0;
        for (j, &c) in cur.iter().enumerate().take(top + 1) {
            if c == 0.0 || (j + k + n) % 2 == 1 {
                continue;
            }
            // i^{j−k−n} with j ≡ k+n (mod 2)
            let e = (j as i64 - k as i64 - n as i64).rem_euclid(4);
            let sign = if e == 0 { 1.0 } else { -1.0 };
            s += sign * c * km[j];
        }
        out.push(s);
        if k == k_max {
            break;
        }
        let gk = family.gamma(k as isize);
        let gkm = family.gamma(k as isize - 1);
        let mut next = vec![0.0; top + 2];
        for j in 0..=top {
            let mut jc = 0.0;
            if j >= 1 {
                jc += gam[j - 1] * cur[j - 1];
            }
            jc += gam[j] * cur[j + 1];
            next[j] = (jc - gkm * prev[j]) / gk;
        }
        prev = cur;
        cur = next;
    }
    Ok(out)
}
