//! Chromatic-derivative operator tables.
//!
//! `A[n][k]` is the coefficient of `D^k` in `K^n`, i.e. `K^n[t^k/k!](0)`, and
//! `B = A^{-1}` with `B[n][k] = (−1)^k (D^n∘K^k)[m](0)`. A Taylor jet `v` maps to
//! the chromatic jet `A·v`, and back by `B`.
//!
//! The inverse entries grow like the moments (for Legendre at N = 24 they reach
//! 1e11), so both tables are built and stored in double-double and rounded on
//! access. Plain f64 loses about eight digits in `A·B − I` at that order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::opoly::{even_moments_dd, FamilySpec};

/// What a [`Jet`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JetKind {
    /// `v_k = f^(k)(u)`
    Taylor,
    /// `v_k = K^k[f](u)`
    Chromatic,
}

impl JetKind {
    fn name(self) -> &'static str {
        match self {
            JetKind::Taylor => "taylor",
            JetKind::Chromatic => "chromatic",
        }
    }
}

/// Derivative values of one kind at a base point `u`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Jet {
    pub kind: JetKind,
    pub base: f64,
    pub values: Vec<f64>,
}

impl Jet {
    pub fn taylor(base: f64, values: Vec<f64>) -> Self {
        Jet { kind: JetKind::Taylor, base, values }
    }

    pub fn chromatic(base: f64, values: Vec<f64>) -> Self {
        Jet { kind: JetKind::Chromatic, base, values }
    }

    /// Highest derivative order present; `None` for an empty jet.
    pub fn order(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn expect(&self, kind: JetKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::JetKind {
                expected: kind.name(),
                found: self.kind.name(),
            })
        }
    }
}

/// Which of the two tables to export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// `A[n][k] = K^n[t^k/k!](0)`
    Direct,
    /// `B[n][k] = (−1)^k (D^n∘K^k)[m](0)`
    Inverse,
}

/// Largest entries of `A·B − I` and `B·A − I`. The relative figures divide
/// each entry by the sum of the magnitudes of its products (at least 1).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct InverseResiduals {
    pub ab_abs: f64,
    pub ba_abs: f64,
    pub ab_rel: f64,
    pub ba_rel: f64,
}

/// Lower-triangular basis-change tables up to order `N`.
#[derive(Debug, Clone)]
pub struct OperatorTable {
    family: FamilySpec,
    order: usize,
    a: Vec<Vec<Dd>>,
    b: Vec<Vec<Dd>>,
}

impl OperatorTable {
    /// Builds the tables, refusing orders above the cap from
    /// [`crate::max_order`].
    pub fn build(family: &FamilySpec, order: usize) -> Result<Self> {
        Self::build_with_cap(family, order, crate::max_order())
    }

    pub fn build_with_cap(family: &FamilySpec, order: usize, cap: usize) -> Result<Self> {
        if order > cap {
            return Err(Error::OrderCap { requested: order, cap });
        }
        let a = direct_rows(family, order)?;
        let b = invert_lower(&a)?;
        Ok(OperatorTable {
            family: family.clone(),
            order,
            a,
            b,
        })
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `A[n][k]`, zero above the diagonal.
    pub fn a(&self, n: usize, k: usize) -> f64 {
        self.a_dd(n, k).to_f64()
    }

    /// `B[n][k]`, zero above the diagonal.
    pub fn b(&self, n: usize, k: usize) -> f64 {
        self.b_dd(n, k).to_f64()
    }

    pub fn a_dd(&self, n: usize, k: usize) -> Dd {
        self.a[n].get(k).copied().unwrap_or(Dd::ZERO)
    }

    pub fn b_dd(&self, n: usize, k: usize) -> Dd {
        self.b[n].get(k).copied().unwrap_or(Dd::ZERO)
    }

    /// Dense `(N+1)×(N+1)` copy of one table.
    pub fn dense(&self, which: TableKind) -> Vec<Vec<f64>> {
        let n = self.order + 1;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match which {
                        TableKind::Direct => self.a(i, j),
                        TableKind::Inverse => self.b(i, j),
                    })
                    .collect()
            })
            .collect()
    }

    /// Residuals of `A·B − I` and `B·A − I`, products accumulated in
    /// double-double.
    pub fn inverse_residuals(&self) -> InverseResiduals {
        let n = self.order + 1;
        let mut r = InverseResiduals::default();
        for i in 0..n {
            for j in 0..=i {
                let id = if i == j { Dd::ONE } else { Dd::ZERO };
                let mut s1 = Dd::ZERO;
                let mut s2 = Dd::ZERO;
                let mut m1: f64 = 0.0;
                let mut m2: f64 = 0.0;
                for k in j..=i {
                    let p1 = self.a[i][k] * self.b[k][j];
                    let p2 = self.b[i][k] * self.a[k][j];
                    m1 += p1.to_f64().abs();
                    m2 += p2.to_f64().abs();
                    s1 += p1;
                    s2 += p2;
                }
                let e1 = (s1 - id).to_f64().abs();
                let e2 = (s2 - id).to_f64().abs();
                r.ab_abs = r.ab_abs.max(e1);
                r.ba_abs = r.ba_abs.max(e2);
                r.ab_rel = r.ab_rel.max(e1 / m1.max(1.0));
                r.ba_rel = r.ba_rel.max(e2 / m2.max(1.0));
            }
        }
        r
    }

    fn check_jet(&self, jet: &Jet) -> Result<()> {
        if jet.len() > self.order + 1 {
            return Err(Error::JetLength {
                len: jet.len(),
                order: self.order,
            });
        }
        Ok(())
    }

    /// `v'_m = Σ_{k≤m} A[m][k] v_k`.
    pub fn to_chromatic(&self, jet: &Jet) -> Result<Jet> {
        jet.expect(JetKind::Taylor)?;
        self.check_jet(jet)?;
        Ok(Jet::chromatic(jet.base, apply(&self.a, &jet.values)))
    }

    /// `v_m = Σ_{k≤m} B[m][k] v'_k`.
    pub fn to_taylor(&self, jet: &Jet) -> Result<Jet> {
        jet.expect(JetKind::Chromatic)?;
        self.check_jet(jet)?;
        Ok(Jet::taylor(jet.base, apply(&self.b, &jet.values)))
    }

    /// `(K^n∘K^m)[m](0)` through the moments: the product of the two
    /// operator rows is applied to `m` and its derivatives at zero,
    /// `m^{(2q)}(0) = (−1)^q μ_{2q}`.
    pub fn kk_m_at_zero(&self, n: usize, m: usize) -> Result<f64> {
        self.bounds_check(n.max(m))?;
        let mu = even_moments_dd(&self.family, n + m);
        let mut s = Dd::ZERO;
        for j in 0..=n {
            for l in 0..=m {
                let d = j + l;
                if d % 2 == 1 {
                    continue;
                }
                let c = self.a[n][j] * self.a[m][l];
                if c.is_zero() {
                    continue;
                }
                let md = if (d / 2) % 2 == 0 { mu[d / 2] } else { -mu[d / 2] };
                s += c * md;
            }
        }
        Ok(s.to_f64())
    }

    /// `B[n][k]` recomputed from the moments,
    /// `(−1)^k Σ_j A[k][j] m^{(n+j)}(0)`, as an independent check on the
    /// triangular inversion.
    pub fn b_from_moments(&self, n: usize, k: usize) -> Result<f64> {
        self.bounds_check(n.max(k))?;
        let mu = even_moments_dd(&self.family, n + k);
        let mut s = Dd::ZERO;
        for j in 0..=k {
            let d = n + j;
            if d % 2 == 1 {
                continue;
            }
            let md = if (d / 2) % 2 == 0 { mu[d / 2] } else { -mu[d / 2] };
            s += self.a[k][j] * md;
        }
        Ok(if k % 2 == 0 { s.to_f64() } else { -s.to_f64() })
    }

    fn bounds_check(&self, n: usize) -> Result<()> {
        if n > self.order {
            Err(Error::InvalidParameter(format!(
                "order {n} exceeds table order {}",
                self.order
            )))
        } else {
            Ok(())
        }
    }

    /// CSV with one row per operator order `n` and one column per derivative
    /// order `k`.
    pub fn to_csv(&self, which: TableKind) -> String {
        let n = self.order + 1;
        let mut out = String::from("n");
        for k in 0..n {
            let _ = write!(out, ",k{k}");
        }
        out.push('\n');
        for (i, row) in self.dense(which).iter().enumerate() {
            let _ = write!(out, "{i}");
            for v in row {
                let _ = write!(out, ",{v:e}");
            }
            out.push('\n');
        }
        out
    }
}

fn apply(rows: &[Vec<Dd>], v: &[f64]) -> Vec<f64> {
    (0..v.len())
        .map(|m| {
            rows[m]
                .iter()
                .zip(v)
                .map(|(&c, &x)| c.mul_f64(x))
                .sum::<Dd>()
                .to_f64()
        })
        .collect()
}

/// `A[n+1][k] = A[n][k−1]/γ_n + (γ_{n−1}/γ_n) A[n−1][k]`.
fn direct_rows(spec: &FamilySpec, order: usize) -> Result<Vec<Vec<Dd>>> {
    let mut a: Vec<Vec<Dd>> = Vec::with_capacity(order + 1);
    a.push(vec![Dd::ONE]);
    for n in 0..order {
        let g = Dd::from(spec.gamma(n as isize));
        let gm = Dd::from(spec.gamma(n as isize - 1));
        let mut row = vec![Dd::ZERO; n + 2];
        for (k, slot) in row.iter_mut().enumerate() {
            let mut v = Dd::ZERO;
            if k >= 1 {
                v += a[n][k - 1] / g;
            }
            if n >= 1 && k < a[n - 1].len() {
                v += gm / g * a[n - 1][k];
            }
            if !v.is_finite() {
                return Err(Error::TableOverflow { row: n + 1, column: k });
            }
            *slot = v;
        }
        a.push(row);
    }
    Ok(a)
}

/// Forward substitution for the inverse of a lower-triangular matrix.
fn invert_lower(a: &[Vec<Dd>]) -> Result<Vec<Vec<Dd>>> {
    let n = a.len();
    let mut b: Vec<Vec<Dd>> = (0..n).map(|i| vec![Dd::ZERO; i + 1]).collect();
    for j in 0..n {
        b[j][j] = Dd::ONE / a[j][j];
        for i in j + 1..n {
            let s: Dd = (j..i).map(|k| a[i][k] * b[k][j]).sum();
            let v = -s / a[i][i];
            if !v.is_finite() {
                return Err(Error::TableOverflow { row: i, column: j });
            }
            b[i][j] = v;
        }
    }
    Ok(b)
}

/// `(K^n∘D^k)[m](0)` for `n ≤ n_max`, `k ≤ k_max`, from
/// `b(n,0) = δ_n`, `b(n,k+1) = γ_n b(n+1,k) − γ_{n−1} b(n−1,k)`.
///
/// Returned as `out[n][k]`.
pub fn kd_m_at_zero(spec: &FamilySpec, n_max: usize, k_max: usize) -> Result<Vec<Vec<f64>>> {
    let width = n_max + k_max + 1;
    let gam: Vec<Dd> = (0..width).map(|i| Dd::from(spec.gamma(i as isize))).collect();
    let mut col = vec![Dd::ZERO; width + 1];
    col[0] = Dd::ONE;
    let mut out = vec![Vec::with_capacity(k_max + 1); n_max + 1];
    for k in 0..=k_max {
        for (n, row) in out.iter_mut().enumerate() {
            let v = col[n].to_f64();
            if !v.is_finite() {
                return Err(Error::TableOverflow { row: n, column: k });
            }
            row.push(v);
        }
        let mut next = vec![Dd::ZERO; width + 1];
        for n in 0..width {
            let mut v = gam[n] * col[n + 1];
            if n >= 1 {
                v -= gam[n - 1] * col[n - 1];
            }
            next[n] = v;
        }
        col = next;
    }
    Ok(out)
}
