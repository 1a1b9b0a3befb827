//! Transversal filters estimating `K^n[f](t)` from samples at spacing 1/2.
//!
//! Frequencies are in signal units: the signal occupies `|ω| ≤ π` and the
//! half-spacing samples put the Nyquist frequency at `2π`. A filter
//! `T[f](t) = Σ_{k=−T}^{T} c_k f(t + k/2)` has response
//! `H(ω) = Σ c_k e^{iωk/2}`, and the target is `i^n P_n(ω)` on the passband
//! `|ω| ≤ fπ`, zero on the stopband `(2−f)π ≤ |ω| ≤ 2π`, don't-care between.
//! Plots that use the digital frequency `θ = ω/2 ∈ [0, π]` see the target as
//! `P_n(2θ)` on `θ ≤ fπ/2`.
//!
//! Symmetry `c_{−k} = (−1)^n c_k` reduces the design to a real cosine
//! (even `n`) or sine (odd `n`) series in `ω/2`. The coefficients start from
//! weighted least squares on a dense grid and are refined by Remez exchange.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::opoly::{eval_family, FamilySpec};

/// Sample spacing of the filter input, in signal time units.
pub const SPACING: f64 = 0.5;

/// Design parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirSpec {
    /// Chromatic derivative index `n`.
    pub order: usize,
    /// Number of taps `2T + 1`.
    pub taps: usize,
    /// Passband edge as a fraction of the signal band `π`.
    pub passband_fraction: f64,
    /// Design grid points per tap over `[0, 2π]`.
    pub grid_density: usize,
    /// Weight of passband errors relative to stopband errors.
    pub passband_weight: f64,
    pub max_iterations: usize,
}

impl FirSpec {
    pub fn new(order: usize, taps: usize, passband_fraction: f64) -> Self {
        FirSpec {
            order,
            taps,
            passband_fraction,
            grid_density: 16,
            passband_weight: 1.0,
            max_iterations: 40,
        }
    }

    pub fn with_passband_weight(mut self, w: f64) -> Self {
        self.passband_weight = w;
        self
    }

    pub fn half_length(&self) -> usize {
        self.taps / 2
    }

    /// Passband edge `fπ`.
    pub fn passband_edge(&self) -> f64 {
        self.passband_fraction * PI
    }

    /// Stopband edge `(2 − f)π`.
    pub fn stopband_edge(&self) -> f64 {
        (2.0 - self.passband_fraction) * PI
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.taps % 2 == 0 || self.taps < 3 {
            return bad(format!("taps must be odd and at least 3, got {}", self.taps));
        }
        if self.order > 24 {
            return bad(format!("filter order must be at most 24, got {}", self.order));
        }
        if !(self.passband_fraction > 0.0 && self.passband_fraction <= 0.95) {
            return bad(format!(
                "passband fraction must be in (0, 0.95], got {}",
                self.passband_fraction
            ));
        }
        if self.grid_density < 16 {
            return bad(format!("grid density must be at least 16, got {}", self.grid_density));
        }
        if !(self.passband_weight > 0.0 && self.passband_weight.is_finite()) {
            return bad(format!("passband weight must be positive, got {}", self.passband_weight));
        }
        Ok(())
    }
}

/// Outcome of a design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirReport {
    /// Max `|H(ω) − i^n P_n(ω)|` on the passband (fine check grid).
    pub max_passband_error: f64,
    /// Max `|H(ω)|` on the stopband.
    pub max_stopband_error: f64,
    pub max_tap: f64,
    pub passband_edge: f64,
    pub stopband_edge: f64,
    /// Passband error of the least-squares starting point.
    pub least_squares_passband_error: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Best weighted max error after each exchange step (non-increasing).
    pub history: Vec<f64>,
}

/// Taps `c_{−T} .. c_T` at spacing 1/2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirDesign {
    pub order: usize,
    pub taps: Vec<f64>,
    pub spacing: f64,
    pub passband_fraction: f64,
    pub report: Option<FirReport>,
}

impl FirDesign {
    /// Wraps explicit taps (odd count, centred).
    pub fn from_taps(order: usize, taps: Vec<f64>) -> Result<Self> {
        if taps.len() % 2 == 0 {
            return Err(Error::InvalidParameter(format!("need an odd tap count, got {}", taps.len())));
        }
        Ok(FirDesign {
            order,
            taps,
            spacing: SPACING,
            passband_fraction: 1.0,
            report: None,
        })
    }

    pub fn half_length(&self) -> usize {
        self.taps.len() / 2
    }

    /// `c_k`, `|k| ≤ T`.
    pub fn tap(&self, k: i64) -> f64 {
        self.taps[(k + self.half_length() as i64) as usize]
    }
}

struct Problem {
    odd: bool,
    /// basis index k ↦ tap index; k starts at 1 for sine series
    first: usize,
    half: usize,
    grid: Vec<f64>,
    target: Vec<f64>,
    weight: Vec<f64>,
    in_pass: Vec<bool>,
}

impl Problem {
    fn new(family: &FamilySpec, spec: &FirSpec, points_per_band: f64) -> Result<Self> {
        let odd = spec.order % 2 == 1;
        let half = spec.half_length();
        // H = A for even n and i·A for odd n, so A targets i^{−n}H rounded to ±P_n
        let sign = if (spec.order / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let n_total = (points_per_band * spec.taps as f64).ceil() as usize;
        let step = 2.0 * PI / n_total as f64;
        let (pe, se) = (spec.passband_edge(), spec.stopband_edge());
        let mut grid = Vec::new();
        let push_band = |lo: f64, hi: f64, grid: &mut Vec<f64>| {
            let m = ((hi - lo) / step).ceil().max(1.0) as usize;
            for i in 0..=m {
                grid.push(lo + (hi - lo) * i as f64 / m as f64);
            }
        };
        push_band(0.0, pe, &mut grid);
        push_band(se, 2.0 * PI, &mut grid);
        if odd {
            // sine series vanish at 0 and 2π, where the targets are 0 as well
            grid.retain(|&w| w != 0.0 && w != 2.0 * PI);
        }
        let mut target = Vec::with_capacity(grid.len());
        let mut weight = Vec::with_capacity(grid.len());
        let mut in_pass = Vec::with_capacity(grid.len());
        for &w in &grid {
            let pass = w <= pe;
            in_pass.push(pass);
            if pass {
                target.push(sign * eval_family(family, spec.order, w)?[spec.order]);
                weight.push(spec.passband_weight);
            } else {
                target.push(0.0);
                weight.push(1.0);
            }
        }
        Ok(Problem {
            odd,
            first: if odd { 1 } else { 0 },
            half,
            grid,
            target,
            weight,
            in_pass,
        })
    }

    fn n_basis(&self) -> usize {
        self.half + 1 - self.first
    }

    fn basis(&self, j: usize, w: f64) -> f64 {
        let k = (j + self.first) as f64;
        if self.odd {
            2.0 * (w * k / 2.0).sin()
        } else if j == 0 {
            1.0
        } else {
            2.0 * (w * k / 2.0).cos()
        }
    }

    fn eval(&self, a: &[f64], w: f64) -> f64 {
        a.iter().enumerate().map(|(j, c)| c * self.basis(j, w)).sum()
    }

    fn weighted_errors(&self, a: &[f64]) -> Vec<f64> {
        self.grid
            .iter()
            .zip(&self.target)
            .zip(&self.weight)
            .map(|((&w, &d), &wt)| wt * (self.eval(a, w) - d))
            .collect()
    }

    fn least_squares(&self) -> Result<Vec<f64>> {
        let nb = self.n_basis();
        let m = DMatrix::from_fn(self.grid.len(), nb, |i, j| self.weight[i] * self.basis(j, self.grid[i]));
        let rhs = DVector::from_iterator(
            self.grid.len(),
            self.target.iter().zip(&self.weight).map(|(d, w)| d * w),
        );
        let qr = m.qr();
        let qtb = qr.q().transpose() * rhs;
        let sol = qr
            .r()
            .solve_upper_triangular(&qtb)
            .ok_or_else(|| Error::Solve("least-squares R factor is singular".into()))?;
        Ok(sol.iter().copied().collect())
    }

    /// Solves `Σ a_j φ_j(x_i) + (−1)^i δ / W_i = D_i` on the reference set.
    fn remez_step(&self, ext: &[usize]) -> Result<(Vec<f64>, f64)> {
        let nb = self.n_basis();
        let n = nb + 1;
        let m = DMatrix::from_fn(n, n, |i, j| {
            let g = ext[i];
            if j < nb {
                self.basis(j, self.grid[g])
            } else {
                let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                s / self.weight[g]
            }
        });
        let rhs = DVector::from_iterator(n, ext.iter().map(|&g| self.target[g]));
        let sol = m
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::Solve("exchange system is singular".into()))?;
        Ok((sol.iter().take(nb).copied().collect(), sol[nb]))
    }

    fn taps(&self, a: &[f64]) -> Vec<f64> {
        let t = self.half;
        let mut c = vec![0.0; 2 * t + 1];
        for (j, &v) in a.iter().enumerate() {
            let k = j + self.first;
            c[t + k] = v;
            if k > 0 {
                c[t - k] = if self.odd { -v } else { v };
            }
        }
        c
    }
}

/// Local extrema of the weighted error with alternating signs, thinned to
/// `want` points.
fn select_extrema(err: &[f64], in_pass: &[bool], want: usize) -> Option<Vec<usize>> {
    let n = err.len();
    let mut cand: Vec<usize> = Vec::new();
    for i in 0..n {
        let band_start = i == 0 || in_pass[i - 1] != in_pass[i];
        let band_end = i + 1 == n || in_pass[i + 1] != in_pass[i];
        let e = err[i].abs();
        let left = if band_start { 0.0 } else { err[i - 1].abs() };
        let right = if band_end { 0.0 } else { err[i + 1].abs() };
        if e >= left && e >= right && e > 0.0 {
            cand.push(i);
        }
    }
    // merge runs of equal sign, keeping the largest
    let mut alt: Vec<usize> = Vec::new();
    for i in cand {
        if let Some(&last) = alt.last() {
            if err[last].signum() == err[i].signum() {
                if err[i].abs() > err[last].abs() {
                    *alt.last_mut().unwrap() = i;
                }
                continue;
            }
        }
        alt.push(i);
    }
    while alt.len() > want {
        if alt.len() == want + 1 {
            if err[alt[0]].abs() < err[*alt.last().unwrap()].abs() {
                alt.remove(0);
            } else {
                alt.pop();
            }
            continue;
        }
        let (pos, _) = alt
            .iter()
            .enumerate()
            .min_by(|a, b| err[*a.1].abs().total_cmp(&err[*b.1].abs()))
            .unwrap();
        alt.remove(pos);
        if pos > 0 && pos < alt.len() {
            // neighbours now share a sign
            let (l, r) = (alt[pos - 1], alt[pos]);
            if err[l].abs() >= err[r].abs() {
                alt.remove(pos);
            } else {
                alt.remove(pos - 1);
            }
        }
    }
    if alt.len() == want {
        Some(alt)
    } else {
        None
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Designs the filter. Exchange steps never make the result worse: the best
/// iterate is kept, and if the exchange stalls the best iterate is returned
/// with `converged = false`.
pub fn design_fir(family: &FamilySpec, spec: &FirSpec) -> Result<FirDesign> {
    spec.validate()?;
    let prob = Problem::new(family, spec, spec.grid_density as f64)?;
    let check = Problem::new(family, spec, 4.0 * spec.grid_density as f64)?;
    let nb = prob.n_basis();

    let ls = prob.least_squares()?;
    let ls_err = prob.weighted_errors(&ls);
    let mut best = ls.clone();
    let mut best_err = max_abs(&ls_err);
    let mut history = vec![best_err];
    let mut converged = false;
    let mut iterations = 0;

    let mut ext = select_extrema(&ls_err, &prob.in_pass, nb + 1).unwrap_or_else(|| {
        let g = prob.grid.len();
        (0..=nb).map(|i| i * (g - 1) / nb).collect()
    });
    for it in 0..spec.max_iterations {
        iterations = it + 1;
        let (a, delta) = match prob.remez_step(&ext) {
            Ok(x) => x,
            Err(e) => {
                log::warn!("exchange step {iterations} failed: {e}");
                break;
            }
        };
        let err = prob.weighted_errors(&a);
        let m = max_abs(&err);
        if m < best_err {
            best_err = m;
            best = a.clone();
        }
        history.push(best_err);
        if (m - delta.abs()) <= 1e-6 * m {
            converged = true;
            break;
        }
        match select_extrema(&err, &prob.in_pass, nb + 1) {
            Some(next) if next != ext => ext = next,
            _ => break,
        }
    }
    if !converged {
        log::warn!(
            "exchange did not converge in {iterations} iterations; returning the best iterate (weighted error {best_err:.3e})"
        );
    }

    let taps = prob.taps(&best);
    let pass_err = |a: &[f64]| {
        check
            .grid
            .iter()
            .zip(&check.target)
            .zip(&check.in_pass)
            .filter(|(_, &p)| p)
            .map(|((&w, &d), _)| (check.eval(a, w) - d).abs())
            .fold(0.0, f64::max)
    };
    let stop_err = check
        .grid
        .iter()
        .zip(&check.in_pass)
        .filter(|(_, &p)| !p)
        .map(|(&w, _)| check.eval(&best, w).abs())
        .fold(0.0, f64::max);
    let report = FirReport {
        max_passband_error: pass_err(&best),
        max_stopband_error: stop_err,
        max_tap: max_abs(&taps),
        passband_edge: spec.passband_edge(),
        stopband_edge: spec.stopband_edge(),
        least_squares_passband_error: pass_err(&ls),
        iterations,
        converged,
        history,
    };
    Ok(FirDesign {
        order: spec.order,
        taps,
        spacing: SPACING,
        passband_fraction: spec.passband_fraction,
        report: Some(report),
    })
}

/// `H(ω) = Σ c_k e^{iωk/2}`.
pub fn freq_response(design: &FirDesign, omega: f64) -> Complex<f64> {
    let t = design.half_length() as i64;
    let mut re = 0.0;
    let mut im = 0.0;
    for (i, &c) in design.taps.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let k = i as i64 - t;
        let (s, co) = (omega * k as f64 * SPACING).sin_cos();
        re += c * co;
        im += c * s;
    }
    Complex::new(re, im)
}

/// `i^n P_n(ω)`, the ideal response.
pub fn target_response(family: &FamilySpec, n: usize, omega: f64) -> Result<Complex<f64>> {
    let p = eval_family(family, n, omega)?[n];
    Ok(match n % 4 {
        0 => Complex::new(p, 0.0),
        1 => Complex::new(0.0, p),
        2 => Complex::new(-p, 0.0),
        _ => Complex::new(0.0, -p),
    })
}

/// `Σ_k c_k f(t + k/2)` with `samples[center + k] = f(t + k/2)`.
pub fn apply_fir(design: &FirDesign, samples: &[f64], center: usize) -> Result<f64> {
    let t = design.half_length();
    if center < t || center + t >= samples.len() {
        return Err(Error::Window {
            needed_lo: center as i64 - t as i64,
            needed_hi: (center + t) as i64,
            available: samples.len(),
        });
    }
    Ok(design
        .taps
        .iter()
        .zip(&samples[center - t..=center + t])
        .map(|(c, x)| c * x)
        .sum())
}

/// Finite-difference weights at `z` for nodes `x`, derivatives `0..=m`
/// (`out[d][j]` multiplies `f(x_j)` in the `d`-th derivative).
pub fn fornberg_weights(z: f64, x: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Monte-Carlo comparison of the filter and a plain finite-difference stencil
/// under additive sample noise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseReport {
    pub trials: usize,
    pub amplitude: f64,
    pub exact: f64,
    /// Largest `|T[f + noise](0) − K^n[f](0)|` over the trials.
    pub filter_max_error: f64,
    /// RMS over trials of `|Σ c_k ε_k|` divided by the amplitude.
    pub filter_noise_gain: f64,
    /// RMS over trials of `|Σ w_k ε_k|` divided by the amplitude, where `w`
    /// is the `n`-th derivative stencil on the same nodes scaled by `π^{−n}`.
    pub stencil_noise_gain: f64,
}

/// Noise experiment on `f(t) = sin(ωt)` at `t = 0` with uniform noise in
/// `[−amplitude, amplitude]`. Trial `i` draws from a ChaCha8 stream seeded by
/// `seed + i`, so results do not depend on the execution mode.
pub fn noise_experiment(
    exec: Execution,
    family: &FamilySpec,
    design: &FirDesign,
    omega: f64,
    amplitude: f64,
    trials: usize,
    seed: u64,
) -> Result<NoiseReport> {
    let n = design.order;
    let t = design.half_length() as i64;
    let nodes: Vec<f64> = (-t..=t).map(|k| k as f64 * SPACING).collect();
    let clean: Vec<f64> = nodes.iter().map(|&x| (omega * x).sin()).collect();
    // K^n[sin ωt](0) = P_n(ω) sin(nπ/2)
    let p = eval_family(family, n, omega)?[n];
    let exact = p * [0.0, 1.0, 0.0, -1.0][n % 4];
    let scale = PI.powi(-(n as i32));
    let stencil: Vec<f64> = fornberg_weights(0.0, &nodes, n)[n].iter().map(|w| w * scale).collect();
    let center = t as usize;
    let results = exec::try_map_range(exec, trials, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let noise: Vec<f64> = (0..nodes.len())
            .map(|_| rng.random_range(-amplitude..=amplitude))
            .collect();
        let noisy: Vec<f64> = clean.iter().zip(&noise).map(|(a, b)| a + b).collect();
        let est = apply_fir(design, &noisy, center)?;
        let fn_noise: f64 = design.taps.iter().zip(&noise).map(|(c, e)| c * e).sum();
        let st_noise: f64 = stencil.iter().zip(&noise).map(|(w, e)| w * e).sum();
        Ok::<_, Error>(((est - exact).abs(), fn_noise * fn_noise, st_noise * st_noise))
    })?;
    let m = trials.max(1) as f64;
    Ok(NoiseReport {
        trials,
        amplitude,
        exact,
        filter_max_error: results.iter().map(|r| r.0).fold(0.0, f64::max),
        filter_noise_gain: (results.iter().map(|r| r.1).sum::<f64>() / m).sqrt() / amplitude,
        stencil_noise_gain: (results.iter().map(|r| r.2).sum::<f64>() / m).sqrt() / amplitude,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leg() -> FamilySpec {
        FamilySpec::legendre()
    }

    #[test]
    fn trivial_responses() {
        let z = FirDesign::from_taps(0, vec![0.0; 9]).unwrap();
        assert_eq!(freq_response(&z, 1.3), Complex::new(0.0, 0.0));
        let mut one = vec![0.0; 9];
        one[4] = 1.0;
        let d = FirDesign::from_taps(0, one).unwrap();
        for &w in &[-3.0, 0.0, 2.2] {
            assert_eq!(freq_response(&d, w), Complex::new(1.0, 0.0));
        }
        assert!(FirDesign::from_taps(0, vec![0.0; 4]).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(design_fir(&leg(), &FirSpec::new(3, 64, 0.9)).is_err());
        assert!(design_fir(&leg(), &FirSpec::new(25, 65, 0.9)).is_err());
        assert!(design_fir(&leg(), &FirSpec::new(3, 65, 0.97)).is_err());
    }

    #[test]
    fn symmetry_and_history() {
        for n in [2usize, 5, 15] {
            let d = design_fir(&leg(), &FirSpec::new(n, 65, 0.9)).unwrap();
            let t = d.half_length() as i64;
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            for k in 0..=t {
                assert_eq!(d.tap(-k), s * d.tap(k));
            }
            let h = &d.report.as_ref().unwrap().history;
            assert!(h.windows(2).all(|w| w[1] <= w[0]));
            // response is i^n times a real function
            let r = freq_response(&d, 1.1);
            if n % 2 == 0 {
                assert!(r.im.abs() < 1e-15);
            } else {
                assert!(r.re.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn odd_design_vanishes_at_zero() {
        let d = design_fir(&leg(), &FirSpec::new(15, 129, 0.9)).unwrap();
        assert!(freq_response(&d, 0.0).norm() < 1e-6);
    }

    #[test]
    fn response_matches_target_every_phase() {
        for n in 0..8 {
            let d = design_fir(&leg(), &FirSpec::new(n, 65, 0.8)).unwrap();
            let tol = d.report.as_ref().unwrap().max_passband_error + 1e-12;
            for i in 0..=20 {
                let w = 0.8 * PI * i as f64 / 20.0;
                let diff = freq_response(&d, w) - target_response(&leg(), n, w).unwrap();
                assert!(diff.norm() <= tol, "n={n} ω={w}: {diff}");
            }
        }
    }

    #[test]
    fn error_decreases_with_length() {
        let e: Vec<f64> = [65, 129, 257]
            .iter()
            .map(|&taps| {
                design_fir(&leg(), &FirSpec::new(15, taps, 0.9))
                    .unwrap()
                    .report
                    .unwrap()
                    .max_passband_error
            })
            .collect();
        assert!(e[1] < e[0] && e[2] < e[1], "{e:?}");
    }

    #[test]
    fn remez_beats_least_squares() {
        let d = design_fir(&leg(), &FirSpec::new(6, 65, 0.9)).unwrap();
        let r = d.report.unwrap();
        assert!(r.max_passband_error <= r.least_squares_passband_error);
    }

    #[test]
    fn apply_window_errors_and_zero_signal() {
        let d = design_fir(&leg(), &FirSpec::new(3, 33, 0.9)).unwrap();
        assert!(matches!(apply_fir(&d, &[0.0; 40], 10), Err(Error::Window { .. })));
        assert_eq!(apply_fir(&d, &[0.0; 40], 20).unwrap(), 0.0);
    }

    #[test]
    fn fornberg_known_stencils() {
        let x = [-1.0, 0.0, 1.0];
        let w = fornberg_weights(0.0, &x, 2);
        assert_eq!(w[0], vec![0.0, 1.0, 0.0]);
        assert_eq!(w[1], vec![-0.5, 0.0, 0.5]);
        assert_eq!(w[2], vec![1.0, -2.0, 1.0]);
        // exact on polynomials
        let x: Vec<f64> = (-4..=4).map(|k| k as f64 * 0.5).collect();
        let w = fornberg_weights(0.0, &x, 5);
        let d5: f64 = w[5].iter().zip(&x).map(|(c, t)| c * t.powi(5)).sum();
        assert!((d5 - 120.0).abs() < 1e-9);
    }
}
