//! Bessel functions of the first kind of integer order, real argument.
//!
//! Both families use Miller's downward recurrence from well above
//! `max(n, |x|)`. Spherical `j_n` is normalized by whichever of the closed
//! forms `j_0`, `j_1` is larger in magnitude; cylindrical `J_n` by the sum rule
//! `J_0 + 2 Σ J_{2k} = 1`. When every requested order lies below `x` the
//! spherical values come from the (then stable) upward recurrence instead.

use std::f64::consts::PI;

const RESCALE_AT: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// `sin(πx)`, exactly zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    let k = x.round();
    let r = x - k;
    let s = (PI * r).sin();
    if k.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// `cos(πx)`, exactly zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let k = x.round();
    let r = x - k;
    let c = if r.abs() == 0.5 { 0.0 } else { (PI * r).cos() };
    if k.rem_euclid(2.0) == 0.0 {
        c
    } else {
        -c
    }
}

fn start_order(n_max: usize, x: f64) -> usize {
    let top = n_max.max(x.ceil() as usize);
    top + 60 + (40.0 * top as f64).sqrt().ceil() as usize
}

/// `j_n(x)` for a single order.
pub fn spherical_j(n: usize, x: f64) -> f64 {
    spherical_j_all(n, x)[n]
}

/// `j_0(x) .. j_{n_max}(x)`.
pub fn spherical_j_all(n_max: usize, x: f64) -> Vec<f64> {
    spherical_core(n_max, x, x.sin(), x.cos())
}

/// `j_0(πt) .. j_{n_max}(πt)`, using `sin(πt)`, `cos(πt)` reduced in `t` so
/// that `j_0` vanishes exactly at nonzero integers.
pub fn spherical_j_pi_all(n_max: usize, t: f64) -> Vec<f64> {
    spherical_core(n_max, PI * t, sin_pi(t), cos_pi(t))
}

fn spherical_core(n_max: usize, x: f64, s: f64, c: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if x < 0.0 {
        // j_n(−x) = (−1)^n j_n(x); sin is odd, cos even.
        let mut v = spherical_core(n_max, -x, -s, c);
        for (n, y) in v.iter_mut().enumerate() {
            if n % 2 == 1 {
                *y = -*y;
            }
        }
        return v;
    }
    let j0 = s / x;
    let j1 = if x < 0.25 {
        // sin x/x² − cos x/x cancels; use the series.
        let x2 = x * x;
        let mut term = x / 3.0;
        let mut sum = term;
        for k in 1..12 {
            term *= -x2 / (2.0 * k as f64 * (2.0 * k as f64 + 3.0));
            sum += term;
        }
        sum
    } else {
        s / (x * x) - c / x
    };
    out[0] = j0;
    if n_max == 0 {
        return out;
    }
    out[1] = j1;
    if (n_max as f64) < x {
        for n in 1..n_max {
            out[n + 1] = (2.0 * n as f64 + 1.0) / x * out[n] - out[n - 1];
        }
        return out;
    }
    let start = start_order(n_max, x);
    let mut hi = 0.0;
    let mut cur = 1e-300;
    let mut buf = vec![0.0; n_max + 1];
    for n in (1..=start).rev() {
        let lower = (2.0 * n as f64 + 1.0) / x * cur - hi;
        hi = cur;
        cur = lower;
        if n - 1 <= n_max {
            buf[n - 1] = cur;
        }
        if n <= n_max {
            buf[n] = hi;
        }
        if cur.abs() > RESCALE_AT {
            cur *= RESCALE_BY;
            hi *= RESCALE_BY;
            for v in buf.iter_mut().skip(n.saturating_sub(1)) {
                *v *= RESCALE_BY;
            }
        }
    }
    let scale = if j0.abs() >= j1.abs() {
        j0 / buf[0]
    } else {
        j1 / buf[1]
    };
    for (o, b) in out.iter_mut().zip(&buf) {
        *o = b * scale;
    }
    out[0] = j0;
    out[1] = j1;
    out
}

/// `J_n(x)` for a single order.
pub fn bessel_j(n: usize, x: f64) -> f64 {
    bessel_j_all(n, x)[n]
}

/// `J_0(x) .. J_{n_max}(x)`.
pub fn bessel_j_all(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if x < 0.0 {
        let mut v = bessel_j_all(n_max, -x);
        for (n, y) in v.iter_mut().enumerate() {
            if n % 2 == 1 {
                *y = -*y;
            }
        }
        return v;
    }
    let mut start = start_order(n_max, x);
    if start % 2 == 1 {
        start += 1;
    }
    let mut hi = 0.0;
    let mut cur = 1e-300;
    let mut sum = 0.0;
    for n in (1..=start).rev() {
        let lower = 2.0 * n as f64 / x * cur - hi;
        hi = cur;
        cur = lower;
        let idx = n - 1;
        if idx <= n_max {
            out[idx] = cur;
        }
        if n <= n_max {
            out[n] = hi;
        }
        if idx % 2 == 0 {
            sum += if idx == 0 { cur } else { 2.0 * cur };
        }
        if cur.abs() > RESCALE_AT {
            cur *= RESCALE_BY;
            hi *= RESCALE_BY;
            sum *= RESCALE_BY;
            for v in out.iter_mut().skip(idx) {
                *v *= RESCALE_BY;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= sum;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Power series `Σ (−1)^k (x/2)^{2k+n} / (k!(n+k)!)`, fine for small x.
    fn bessel_series(n: usize, x: f64) -> f64 {
        let mut term = (0..n).fold(1.0, |acc, i| acc * (x / 2.0) / (i + 1) as f64);
        let mut sum = term;
        for k in 1..60 {
            term *= -(x / 2.0).powi(2) / (k as f64 * (n + k) as f64);
            sum += term;
        }
        sum
    }

    #[test]
    fn values_at_zero() {
        assert_eq!(spherical_j(0, 0.0), 1.0);
        assert_eq!(bessel_j(0, 0.0), 1.0);
        assert_eq!(spherical_j(3, 0.0), 0.0);
        assert_eq!(bessel_j(3, 0.0), 0.0);
    }

    #[test]
    fn j0_zeros_on_integers() {
        for n in 1..20 {
            assert_eq!(spherical_j_pi_all(0, n as f64)[0], 0.0);
            assert_eq!(spherical_j_pi_all(0, -(n as f64))[0], 0.0);
        }
        assert!(spherical_j(0, PI * 3.0).abs() < 1e-16);
    }

    #[test]
    fn j1_at_half_pi() {
        assert_relative_eq!(spherical_j(1, PI / 2.0), 4.0 / (PI * PI), max_relative = 1e-15);
        assert_relative_eq!(spherical_j_pi_all(1, 0.5)[1], 4.0 / (PI * PI), max_relative = 1e-15);
    }

    #[test]
    fn cylindrical_against_series() {
        for &x in &[0.1, 0.7, 2.0, 5.5] {
            for n in 0..=12 {
                let want = bessel_series(n, x);
                assert_relative_eq!(bessel_j(n, x), want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn spherical_closed_forms() {
        for &x in &[0.01, 0.3, 1.0, 4.0, 9.5, 30.0] {
            let (s, c) = (f64::sin(x), f64::cos(x));
            let j2 = (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
            let v = spherical_j_all(5, x);
            assert_relative_eq!(v[0], s / x, max_relative = 1e-15);
            if x > 0.5 {
                assert_relative_eq!(v[2], j2, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn upward_and_miller_agree() {
        for &x in &[12.5, 40.0, 99.0] {
            let up = spherical_j_all(10, x);
            let miller = spherical_j_all(60, x);
            for n in 0..=10 {
                assert!((up[n] - miller[n]).abs() <= 1e-14 / x.sqrt().max(1.0) + 1e-13 * up[n].abs());
            }
        }
    }

    #[test]
    fn parity_in_x() {
        let a = bessel_j_all(9, 3.3);
        let b = bessel_j_all(9, -3.3);
        let c = spherical_j_all(9, 3.3);
        let d = spherical_j_all(9, -3.3);
        for n in 0..=9 {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(a[n], s * b[n]);
            assert_eq!(c[n], s * d[n]);
        }
    }

    #[test]
    fn tiny_arguments_underflow_quietly() {
        let v = spherical_j_all(40, 1e-8);
        assert!(v.iter().all(|x| x.is_finite()));
        assert_relative_eq!(v[1], 1e-8 / 3.0, max_relative = 1e-12);
        let w = bessel_j_all(40, 1e-8);
        assert!(w.iter().all(|x| x.is_finite()));
        assert_relative_eq!(w[1], 0.5e-8, max_relative = 1e-12);
    }

    #[test]
    fn sin_cos_pi() {
        assert_eq!(sin_pi(7.0), 0.0);
        assert_eq!(cos_pi(2.5), 0.0);
        assert_relative_eq!(sin_pi(0.5), 1.0);
        assert_relative_eq!(sin_pi(1.5), -1.0);
        assert_relative_eq!(cos_pi(1.0), -1.0);
        assert_relative_eq!(sin_pi(0.3), (0.3 * PI).sin(), max_relative = 1e-15);
    }
}
