//! Orthonormal polynomial families defined by symmetric three-term recurrences.
//!
//! A family is determined by its recursion coefficients `γ_n > 0`:
//!
//! ```text
//! P_{n+1}(ω) = ω/γ_n · P_n(ω) − γ_{n−1}/γ_n · P_{n−1}(ω),   P_{−1} = 0, P_0 = 1, γ_{−1} = 1
//! ```
//!
//! Moments are obtained from the Jacobi matrix (zero diagonal, off-diagonal
//! `γ_k`), which works uniformly for every family; closed forms are only used
//! as test oracles.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Which closed-form kernel `m(t)` (and `K^n[m](t)`) belongs to a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum KernelKind {
    /// `m(t) = sinc t`, `K^n[m](t) = (−1)^n √(2n+1) j_n(πt)`.
    LegendreSinc,
    /// `m(t) = J_0(πt)`, `K^n[m](t) = (−1)^n √2 J_n(πt)` for `n > 0`.
    ChebyshevBessel,
    /// `m(t) = e^{−t²/4}`, Gaussian monomials.
    HermiteGaussian,
    /// `m(t) = sech t`, `K^n[m](t) = (−1)^n sech t tanh^n t`.
    HerronSech,
    /// No closed form; evaluated from the Taylor series at zero.
    GenericSeries,
}

/// Parameters `(M, p, r)` of the weak-boundedness inequalities
/// `1/M ≤ γ_n ≤ M (n+r)^p` and `γ_n/γ_{n+1} ≤ M²`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct WeakBounds {
    pub m: f64,
    pub p: f64,
    pub r: u32,
}

#[derive(Clone)]
enum Recurrence {
    Legendre,
    Chebyshev,
    Hermite,
    Herron,
    Power(f64),
    Custom(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

/// A symmetric, positive definite, normalized moment functional presented by
/// its recursion coefficients.
#[derive(Clone)]
pub struct FamilySpec {
    name: String,
    recurrence: Recurrence,
    bounds: WeakBounds,
    support_radius: f64,
    kernel: KernelKind,
}

impl fmt::Debug for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FamilySpec")
            .field("name", &self.name)
            .field("bounds", &self.bounds)
            .field("support_radius", &self.support_radius)
            .field("kernel", &self.kernel)
            .finish()
    }
}

impl FamilySpec {
    /// Scaled, normalized Legendre polynomials on `[−π, π]` with weight `1/(2π)`.
    pub fn legendre() -> Self {
        FamilySpec {
            name: "legendre".into(),
            recurrence: Recurrence::Legendre,
            bounds: WeakBounds { m: 2.0, p: 0.0, r: 0 },
            support_radius: PI,
            kernel: KernelKind::LegendreSinc,
        }
    }

    /// Scaled Chebyshev polynomials of the first kind, `P_n = √2 T_n(ω/π)`.
    pub fn chebyshev() -> Self {
        FamilySpec {
            name: "chebyshev".into(),
            recurrence: Recurrence::Chebyshev,
            bounds: WeakBounds {
                m: PI / std::f64::consts::SQRT_2,
                p: 0.0,
                r: 0,
            },
            support_radius: PI,
            kernel: KernelKind::ChebyshevBessel,
        }
    }

    /// Normalized Hermite polynomials, weight `e^{−ω²}/√π`.
    pub fn hermite() -> Self {
        FamilySpec {
            name: "hermite".into(),
            recurrence: Recurrence::Hermite,
            bounds: WeakBounds {
                m: std::f64::consts::SQRT_2,
                p: 0.5,
                r: 1,
            },
            support_radius: f64::INFINITY,
            kernel: KernelKind::HermiteGaussian,
        }
    }

    /// The Herron family, `γ_n = n + 1`. Not weakly bounded.
    pub fn herron() -> Self {
        FamilySpec {
            name: "herron".into(),
            recurrence: Recurrence::Herron,
            bounds: WeakBounds { m: 1.0, p: 1.0, r: 1 },
            support_radius: f64::INFINITY,
            kernel: KernelKind::HerronSech,
        }
    }

    /// `γ_n = (n+1)^p`, the family used for the Cesàro-mean scans.
    pub fn power_p(p: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "power-p family needs 0 <= p < 1, got {p}"
            )));
        }
        Ok(FamilySpec {
            name: format!("power-p({p})"),
            recurrence: Recurrence::Power(p),
            bounds: WeakBounds { m: 1.0, p, r: 1 },
            support_radius: if p == 0.0 { 2.0 } else { f64::INFINITY },
            kernel: KernelKind::GenericSeries,
        })
    }

    /// A family given by an arbitrary coefficient function. The caller
    /// supplies the weak-boundedness parameters it claims; they can be checked
    /// with [`FamilySpec::check_weak_bounds`].
    pub fn custom<F>(name: &str, gamma: F, bounds: WeakBounds, support_radius: f64) -> Self
    where
        F: Fn(usize) -> f64 + Send + Sync + 'static,
    {
        FamilySpec {
            name: name.to_string(),
            recurrence: Recurrence::Custom(Arc::new(gamma)),
            bounds,
            support_radius,
            kernel: KernelKind::GenericSeries,
        }
    }

    /// Look a family up by its CLI name. `p` is required for `power-p`.
    pub fn by_name(name: &str, p: Option<f64>) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "legendre" => Ok(Self::legendre()),
            "chebyshev" => Ok(Self::chebyshev()),
            "hermite" => Ok(Self::hermite()),
            "herron" => Ok(Self::herron()),
            "power-p" | "power" => match p {
                Some(p) => Self::power_p(p),
                None => Err(Error::InvalidParameter(
                    "the power-p family needs an exponent p".into(),
                )),
            },
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    /// The four named families with closed-form kernels.
    pub fn builtins() -> Vec<FamilySpec> {
        vec![
            Self::legendre(),
            Self::chebyshev(),
            Self::hermite(),
            Self::herron(),
        ]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bounds(&self) -> WeakBounds {
        self.bounds
    }

    pub fn p(&self) -> f64 {
        self.bounds.p
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn kernel(&self) -> KernelKind {
        self.kernel
    }

    /// Bounded families (`p = 0`) have compactly supported `a(ω)`.
    pub fn is_bounded(&self) -> bool {
        self.bounds.p == 0.0
    }

    pub fn is_weakly_bounded(&self) -> bool {
        self.bounds.p < 1.0
    }

    pub fn require_weakly_bounded(&self) -> Result<()> {
        if self.is_weakly_bounded() {
            Ok(())
        } else {
            Err(Error::NotWeaklyBounded {
                family: self.name.clone(),
                p: self.bounds.p,
            })
        }
    }

    /// `γ_n`, with `γ_{−1} = 1`.
    pub fn gamma(&self, n: isize) -> f64 {
        if n < 0 {
            return 1.0;
        }
        let k = n as f64 + 1.0;
        match &self.recurrence {
            Recurrence::Legendre => PI * k / (4.0 * k * k - 1.0).sqrt(),
            Recurrence::Chebyshev => {
                if n == 0 {
                    PI / std::f64::consts::SQRT_2
                } else {
                    PI / 2.0
                }
            }
            Recurrence::Hermite => (k / 2.0).sqrt(),
            Recurrence::Herron => k,
            Recurrence::Power(p) => k.powf(*p),
            Recurrence::Custom(g) => g(n as usize),
        }
    }

    /// `γ_0 .. γ_{n−1}`.
    pub fn gammas(&self, n: usize) -> Vec<f64> {
        (0..n).map(|k| self.gamma(k as isize)).collect()
    }

    /// Verify `γ_n > 0` and the weak-boundedness inequalities for `n ≤ n_max`.
    pub fn check_weak_bounds(&self, n_max: usize) -> Result<()> {
        let WeakBounds { m, p, r } = self.bounds;
        let slack = 1.0 + 1e-12;
        for n in 0..=n_max {
            let g = self.gamma(n as isize);
            let g1 = self.gamma(n as isize + 1);
            let fail = |detail: String| Error::WeakBoundViolation {
                family: self.name.clone(),
                n,
                detail,
            };
            if !(g > 0.0) || !g.is_finite() {
                return Err(fail(format!("gamma = {g} is not positive")));
            }
            if g * m * slack < 1.0 {
                return Err(fail(format!("gamma = {g} < 1/M = {}", 1.0 / m)));
            }
            let upper = m * ((n + r as usize) as f64).powf(p);
            if g > upper * slack {
                return Err(fail(format!("gamma = {g} > M (n+r)^p = {upper}")));
            }
            if g / g1 > m * m * slack {
                return Err(fail(format!("gamma_n/gamma_(n+1) = {} > M^2", g / g1)));
            }
        }
        Ok(())
    }
}

/// `P_0(ω) .. P_n(ω)` by forward recurrence.
pub fn eval_family(spec: &FamilySpec, n: usize, omega: f64) -> Result<Vec<f64>> {
    if !omega.is_finite() {
        return Err(Error::InvalidParameter(format!("omega = {omega}")));
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let g = spec.gamma(k as isize);
        let gm = spec.gamma(k as isize - 1);
        let next = (omega * cur - gm * prev) / g;
        if !next.is_finite() {
            return Err(Error::Overflow {
                context: "polynomial recurrence",
                order: k + 1,
            });
        }
        out.push(next);
        prev = cur;
        cur = next;
    }
    Ok(out)
}

/// Values and first derivatives `(P_k(ω), P'_k(ω))` for `k ≤ n`, from the
/// recurrence differentiated term by term.
pub fn eval_family_with_derivative(
    spec: &FamilySpec,
    n: usize,
    omega: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let values = eval_family(spec, n, omega)?;
    let mut deriv = Vec::with_capacity(n + 1);
    deriv.push(0.0);
    let (mut prev, mut cur) = (0.0, 0.0);
    for k in 0..n {
        let g = spec.gamma(k as isize);
        let gm = spec.gamma(k as isize - 1);
        let next = (values[k] + omega * cur - gm * prev) / g;
        if !next.is_finite() {
            return Err(Error::Overflow {
                context: "differentiated recurrence",
                order: k + 1,
            });
        }
        deriv.push(next);
        prev = cur;
        cur = next;
    }
    Ok((values, deriv))
}

/// Moments `μ_0 .. μ_{2N}` of a symmetric functional.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeq {
    mu: Vec<f64>,
}

impl MomentSeq {
    /// Validates normalization, symmetry and positivity of even moments.
    pub fn new(mu: Vec<f64>) -> Result<Self> {
        if mu.first() != Some(&1.0) {
            return Err(Error::InvalidParameter("moment sequence needs mu_0 = 1".into()));
        }
        for (i, &m) in mu.iter().enumerate() {
            if i % 2 == 1 && m != 0.0 {
                return Err(Error::InvalidParameter(format!("odd moment mu_{i} = {m} is not 0")));
            }
            if i % 2 == 0 && !(m > 0.0) {
                return Err(Error::InvalidParameter(format!("even moment mu_{i} = {m} is not positive")));
            }
        }
        Ok(MomentSeq { mu })
    }

    /// Moment sequence from its even moments `μ_0, μ_2, μ_4, ...`.
    pub fn from_even(even: &[f64]) -> Result<Self> {
        let mut mu = Vec::with_capacity(2 * even.len());
        for (i, &m) in even.iter().enumerate() {
            if i > 0 {
                mu.push(0.0);
            }
            mu.push(m);
        }
        Self::new(mu)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.mu
    }

    pub fn get(&self, n: usize) -> Option<f64> {
        self.mu.get(n).copied()
    }

    /// Highest available order.
    pub fn order(&self) -> usize {
        self.mu.len() - 1
    }

    /// `m^{(k)}(0)`: `(−1)^{k/2} μ_k` for even `k`, zero for odd.
    pub fn kernel_derivative_at_zero(&self, k: usize) -> Option<f64> {
        let mu = self.get(k)?;
        Some(if k % 2 == 1 {
            0.0
        } else if (k / 2) % 2 == 0 {
            mu
        } else {
            -mu
        })
    }
}

/// Even moments `μ_0, μ_2, .., μ_{2q}` as `‖J^k e_0‖²`, in double-double.
pub(crate) fn even_moments_dd(spec: &FamilySpec, q: usize) -> Vec<Dd> {
    let dim = q + 2;
    let gam: Vec<Dd> = (0..dim).map(|k| Dd::from(spec.gamma(k as isize))).collect();
    let mut v = vec![Dd::ZERO; dim];
    v[0] = Dd::ONE;
    let mut out = Vec::with_capacity(q + 1);
    out.push(Dd::ONE);
    for _ in 0..q {
        let mut w = vec![Dd::ZERO; dim];
        for i in 0..dim {
            let mut s = Dd::ZERO;
            if i > 0 {
                s += gam[i - 1] * v[i - 1];
            }
            if i + 1 < dim {
                s += gam[i] * v[i + 1];
            }
            w[i] = s;
        }
        v = w;
        out.push(v.iter().map(|&x| x * x).sum());
    }
    out
}

/// Moments `μ_0 .. μ_{up_to}` from powers of the Jacobi matrix.
pub fn moments(spec: &FamilySpec, up_to: usize) -> Result<MomentSeq> {
    let even = even_moments_dd(spec, up_to / 2);
    let mut mu = Vec::with_capacity(up_to + 1);
    for n in 0..=up_to {
        if n % 2 == 1 {
            mu.push(0.0);
            continue;
        }
        let m = even[n / 2].to_f64();
        if !m.is_finite() {
            return Err(Error::Overflow {
                context: "moment computation",
                order: n,
            });
        }
        mu.push(m);
    }
    MomentSeq::new(mu)
}

/// Both sides of the Christoffel–Darboux identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdSides {
    /// `Σ_{k≤n} P_k(ω) P_k(σ)`.
    pub sum: f64,
    /// `γ_n (P_{n+1}(ω)P_n(σ) − P_{n+1}(σ)P_n(ω)) / (ω − σ)`, or the
    /// confluent form `γ_n (P'_{n+1}P_n − P_{n+1}P'_n)` when `ω = σ`.
    pub closed: f64,
}

/// `Σ_{k=0}^n P_k(ω) P_k(σ)`.
pub fn cd_kernel(spec: &FamilySpec, n: usize, omega: f64, sigma: f64) -> Result<f64> {
    let pw = eval_family(spec, n, omega)?;
    let ps = eval_family(spec, n, sigma)?;
    Ok(pw.iter().zip(&ps).map(|(a, b)| a * b).sum())
}

pub fn cd_kernel_sides(spec: &FamilySpec, n: usize, omega: f64, sigma: f64) -> Result<CdSides> {
    let sum = cd_kernel(spec, n, omega, sigma)?;
    let g = spec.gamma(n as isize);
    let closed = if omega == sigma {
        let (p, d) = eval_family_with_derivative(spec, n + 1, omega)?;
        g * (d[n + 1] * p[n] - p[n + 1] * d[n])
    } else {
        let pw = eval_family(spec, n + 1, omega)?;
        let ps = eval_family(spec, n + 1, sigma)?;
        g * (pw[n + 1] * ps[n] - ps[n + 1] * pw[n]) / (omega - sigma)
    };
    Ok(CdSides { sum, closed })
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `(μ_{2q}/(2q)!)^{1/(2q)}` for `q = 1 ..`, the finite-order terms whose
/// limsup is `ρ`.
pub fn rho_profile(moments: &MomentSeq) -> Vec<f64> {
    let mut out = Vec::new();
    let mut q = 1;
    while let Some(mu) = moments.get(2 * q) {
        let n = 2 * q;
        out.push(((mu.ln() - ln_factorial(n)) / n as f64).exp());
        q += 1;
    }
    out
}

/// Finite-order proxy for `ρ = limsup (μ_n/n!)^{1/n}`: the maximum of the
/// profile over its upper half. Diagnostic only.
pub fn rho_estimate(moments: &MomentSeq) -> Result<f64> {
    let prof = rho_profile(moments);
    if prof.len() < 7 {
        return Err(Error::InvalidParameter(format!(
            "rho estimate needs at least 8 even moments, got {}",
            prof.len() + 1
        )));
    }
    let start = prof.len() / 2;
    Ok(prof[start..].iter().copied().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn binom(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    /// Composite Gauss–Legendre on `[a, b]`, written out independently of the
    /// recurrence machinery.
    fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        const X: [f64; 5] = [
            0.0,
            -0.538_469_310_105_683_1,
            0.538_469_310_105_683_1,
            -0.906_179_845_938_664,
            0.906_179_845_938_664,
        ];
        const W: [f64; 5] = [
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_5,
            0.478_628_670_499_366_5,
            0.236_926_885_056_189_1,
            0.236_926_885_056_189_1,
        ];
        let h = (b - a) / panels as f64;
        let mut s = 0.0;
        for i in 0..panels {
            let c = a + (i as f64 + 0.5) * h;
            for (x, w) in X.iter().zip(W.iter()) {
                s += w * f(c + 0.5 * h * x);
            }
        }
        0.5 * h * s
    }

    #[test]
    fn p0_is_one() {
        for spec in FamilySpec::builtins() {
            assert_eq!(eval_family(&spec, 0, 3.7).unwrap(), vec![1.0]);
        }
    }

    #[test]
    fn legendre_p1_at_pi() {
        let v = eval_family(&FamilySpec::legendre(), 1, PI).unwrap();
        assert_relative_eq!(v[1], 3f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn chebyshev_p2_at_pi() {
        let v = eval_family(&FamilySpec::chebyshev(), 2, PI).unwrap();
        assert_relative_eq!(v[2], 2f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn overflow_names_order() {
        let err = eval_family(&FamilySpec::herron(), 400, 1e300).unwrap_err();
        assert!(matches!(err, Error::Overflow { order: 2, .. }), "{err:?}");
    }

    #[test]
    fn moment_examples() {
        for spec in FamilySpec::builtins() {
            assert_eq!(moments(&spec, 0).unwrap().as_slice(), &[1.0]);
        }
        let leg = moments(&FamilySpec::legendre(), 2).unwrap();
        assert_relative_eq!(leg.get(2).unwrap(), PI * PI / 3.0, max_relative = 1e-15);
        let her = moments(&FamilySpec::hermite(), 2).unwrap();
        assert_relative_eq!(her.get(2).unwrap(), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn moment_closed_forms_checked_by_quadrature_then_jacobi() {
        // First the closed forms against quadrature of the weights.
        for k in 0..=10u64 {
            let n = 2 * k as i32;
            let leg_cf = PI.powi(n) / (n + 1) as f64;
            let leg_q = quad(|w| w.powi(n) / (2.0 * PI), -PI, PI, 400);
            assert_relative_eq!(leg_cf, leg_q, max_relative = 1e-12);
            let cheb_cf = PI.powi(n) * binom(2 * k, k) / 4f64.powi(k as i32);
            // ω = π cos θ removes the endpoint singularity of 1/(π√(π²−ω²)).
            let cheb_q = quad(|th| (PI * th.cos()).powi(n) / PI, 0.0, PI, 400);
            assert_relative_eq!(cheb_cf, cheb_q, max_relative = 1e-12);
        }
        let leg = moments(&FamilySpec::legendre(), 20).unwrap();
        let cheb = moments(&FamilySpec::chebyshev(), 20).unwrap();
        for k in 0..=10u64 {
            let n = 2 * k as usize;
            let leg_cf = PI.powi(n as i32) / (n + 1) as f64;
            let cheb_cf = PI.powi(n as i32) * binom(2 * k, k) / 4f64.powi(k as i32);
            assert_relative_eq!(leg.get(n).unwrap(), leg_cf, max_relative = 1e-10);
            assert_relative_eq!(cheb.get(n).unwrap(), cheb_cf, max_relative = 1e-10);
            assert_eq!(leg.get(n + 1).unwrap_or(0.0), 0.0);
        }
    }

    #[test]
    fn orthonormality_by_quadrature() {
        let leg = FamilySpec::legendre();
        let cheb = FamilySpec::chebyshev();
        for n in 0..=15 {
            for m in 0..=15 {
                let want = if n == m { 1.0 } else { 0.0 };
                let l = quad(
                    |w| {
                        let p = eval_family(&leg, 15, w).unwrap();
                        p[n] * p[m] / (2.0 * PI)
                    },
                    -PI,
                    PI,
                    200,
                );
                assert!((l - want).abs() < 1e-9, "legendre {n},{m}: {l}");
                let c = quad(
                    |th| {
                        let p = eval_family(&cheb, 15, PI * th.cos()).unwrap();
                        p[n] * p[m] / PI
                    },
                    0.0,
                    PI,
                    200,
                );
                assert!((c - want).abs() < 1e-9, "chebyshev {n},{m}: {c}");
            }
        }
    }

    #[test]
    fn hermite_second_moment_by_quadrature() {
        let q = quad(|w| w * w * (-w * w).exp() / PI.sqrt(), -12.0, 12.0, 400);
        assert_relative_eq!(q, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn cd_examples() {
        let leg = FamilySpec::legendre();
        for spec in FamilySpec::builtins() {
            assert_eq!(cd_kernel(&spec, 0, 0.4, -1.1).unwrap(), 1.0);
        }
        let s = cd_kernel_sides(&leg, 5, 1.0, 2.0).unwrap();
        assert_relative_eq!(s.sum, s.closed, max_relative = 1e-12);
        for spec in FamilySpec::builtins() {
            for &w in &[0.0, 0.3, 1.7, -2.4] {
                let s = cd_kernel_sides(&spec, 9, w, w).unwrap();
                assert_relative_eq!(s.sum, s.closed, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn equal_identity_from_cd() {
        // ω(Σ P_{2k+1}² − Σ P_{2k}²) = γ_{2n+1} P_{2n+2} P_{2n+1}
        let mut seed = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for spec in FamilySpec::builtins() {
            for n in 0..=15 {
                let w = (next() * 2.0 - 1.0) * 3.0;
                let p = eval_family(&spec, 2 * n + 2, w).unwrap();
                let odd: f64 = (0..=n).map(|k| p[2 * k + 1].powi(2)).sum();
                let even: f64 = (0..=n).map(|k| p[2 * k].powi(2)).sum();
                let lhs = w * (odd - even);
                let rhs = spec.gamma(2 * n as isize + 1) * p[2 * n + 2] * p[2 * n + 1];
                let scale = w.abs() * (odd + even);
                assert!((lhs - rhs).abs() <= 1e-10 * scale.max(rhs.abs()), "{} n={n}", spec.name());
            }
        }
    }

    #[test]
    fn weak_bounds_of_builtins() {
        for spec in [FamilySpec::legendre(), FamilySpec::chebyshev(), FamilySpec::hermite()] {
            spec.check_weak_bounds(200).unwrap();
            assert!(spec.is_weakly_bounded());
        }
        let her = FamilySpec::herron();
        assert!(!her.is_weakly_bounded());
        assert!(matches!(
            her.require_weakly_bounded(),
            Err(Error::NotWeaklyBounded { .. })
        ));
        FamilySpec::power_p(0.3).unwrap().check_weak_bounds(200).unwrap();
        assert!(FamilySpec::power_p(1.0).is_err());
    }

    #[test]
    fn by_name_lookup() {
        assert_eq!(FamilySpec::by_name("Legendre", None).unwrap().name(), "legendre");
        assert!(FamilySpec::by_name("power-p", None).is_err());
        assert!(FamilySpec::by_name("power-p", Some(0.5)).is_ok());
        assert!(matches!(
            FamilySpec::by_name("laguerre", None),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn rho_examples() {
        let leg = moments(&FamilySpec::legendre(), 40).unwrap();
        let prof = rho_profile(&leg);
        let tail = &prof[prof.len() - 10..];
        assert!(tail.windows(2).all(|w| w[1] < w[0]), "{tail:?}");
        let her = moments(&FamilySpec::herron(), 40).unwrap();
        assert!(rho_estimate(&her).unwrap() > 0.1);
        let ones = MomentSeq::from_even(&[1.0; 21]).unwrap();
        let prof = rho_profile(&ones);
        assert!(prof.windows(2).all(|w| w[1] < w[0]));
        assert!(*prof.last().unwrap() < 0.1);
        assert!(rho_estimate(&MomentSeq::from_even(&[1.0; 4]).unwrap()).is_err());
    }

    #[test]
    fn herron_moments_are_euler_numbers() {
        // |E_0|, |E_2|, .., |E_10|
        let euler = [1.0, 1.0, 5.0, 61.0, 1385.0, 50521.0];
        let mu = moments(&FamilySpec::herron(), 10).unwrap();
        for (q, e) in euler.iter().enumerate() {
            assert_relative_eq!(mu.get(2 * q).unwrap(), *e, max_relative = 1e-14);
        }
    }

    #[test]
    fn moment_seq_validation() {
        assert!(MomentSeq::new(vec![2.0]).is_err());
        assert!(MomentSeq::new(vec![1.0, 0.1]).is_err());
        assert!(MomentSeq::new(vec![1.0, 0.0, -1.0]).is_err());
        let m = MomentSeq::new(vec![1.0, 0.0, 2.0, 0.0, 3.0]).unwrap();
        assert_eq!(m.kernel_derivative_at_zero(2), Some(-2.0));
        assert_eq!(m.kernel_derivative_at_zero(4), Some(3.0));
        assert_eq!(m.kernel_derivative_at_zero(3), Some(0.0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn parity(w in -6.0f64..6.0, which in 0usize..4) {
                let spec = FamilySpec::builtins().swap_remove(which);
                let a = eval_family(&spec, 40, w).unwrap();
                let b = eval_family(&spec, 40, -w).unwrap();
                for n in 0..=40 {
                    let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                    prop_assert!((a[n] - s * b[n]).abs() <= 1e-12 * a[n].abs().max(1.0));
                }
            }
        }
    }
}
