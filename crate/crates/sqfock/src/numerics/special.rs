//! Special functions: physicists' Hermite polynomials, harmonic-oscillator
//! mode functions, log-factorials, and the error function.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Physicists' Hermite polynomial H_n(x) via the three-term recurrence
/// H_{k+1} = 2x H_k − 2k H_{k−1}.
pub fn hermite_eval(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// H_n at a complex argument. Same recurrence as [`hermite_eval`].
pub fn hermite_eval_c(n: usize, z: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = 2.0 * z;
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// ln(n!), exact for n ≤ 1 and accumulated in log space otherwise so that
/// normalization constants never overflow.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Oscillator mode function φ_n(x) = π^{−1/4} 2^{−n/2} (n!)^{−1/2} e^{−x²/2} H_n(x).
///
/// Evaluated with the normalized upward recurrence
/// φ_{k+1} = x √(2/(k+1)) φ_k − √(k/(k+1)) φ_{k−1},
/// which keeps every intermediate bounded; no factorials appear.
pub fn fock_mode(n: usize, x: f64, cap: usize) -> Result<f64> {
    if n > cap {
        return Err(Error::Capacity { n, cap });
    }
    Ok(fock_mode_unchecked(n, x))
}

pub(crate) fn fock_mode_unchecked(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Fill `out[k] = φ_k(x)` for k = 0..out.len() in one recurrence sweep.
pub(crate) fn fock_mode_row(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    if out.len() == 1 {
        return;
    }
    out[1] = x * std::f64::consts::SQRT_2 * out[0];
    for k in 1..out.len() - 1 {
        let kf = k as f64;
        out[k + 1] = x * (2.0 / (kf + 1.0)).sqrt() * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
    }
}

/// Error function, accurate to better than 1e−14 absolute.
///
/// Small arguments use the non-alternating series
/// erf x = (2x e^{−x²}/√π) Σ_k (2x²)^k / (2k+1)!!,
/// large ones the Lentz continued fraction for erfc.
pub fn erf_eval(x: f64) -> f64 {
    if x < 0.0 {
        return -erf_eval(-x);
    }
    if x == 0.0 {
        return 0.0;
    }
    if x <= 3.0 {
        let x2 = 2.0 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 0u32;
        loop {
            k += 1;
            term *= x2 / (2.0 * k as f64 + 1.0);
            sum += term;
            if term < 1e-18 * sum || k > 300 {
                break;
            }
        }
        2.0 / std::f64::consts::PI.sqrt() * x * (-x * x).exp() * sum
    } else {
        1.0 - erfc_cf(x)
    }
}

// Continued fraction erfc(x) = e^{−x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// via modified Lentz iteration; used only for x > 3 where it converges fast.
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = f;
    let mut d = 0.0;
    let mut k = 0u32;
    loop {
        k += 1;
        let a = k as f64 / 2.0;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 || k > 200 {
            break;
        }
    }
    let e = (-x * x).exp();
    if e == 0.0 {
        return 0.0;
    }
    e / (std::f64::consts::PI.sqrt() * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    // Explicit coefficient tables for H_0..H_10, lowest power first.
    const HERMITE_COEFFS: [&[f64]; 11] = [
        &[1.0],
        &[0.0, 2.0],
        &[-2.0, 0.0, 4.0],
        &[0.0, -12.0, 0.0, 8.0],
        &[12.0, 0.0, -48.0, 0.0, 16.0],
        &[0.0, 120.0, 0.0, -160.0, 0.0, 32.0],
        &[-120.0, 0.0, 720.0, 0.0, -480.0, 0.0, 64.0],
        &[0.0, -1680.0, 0.0, 3360.0, 0.0, -1344.0, 0.0, 128.0],
        &[1680.0, 0.0, -13440.0, 0.0, 13440.0, 0.0, -3584.0, 0.0, 256.0],
        &[0.0, 30240.0, 0.0, -80640.0, 0.0, 48384.0, 0.0, -9216.0, 0.0, 512.0],
        &[
            -30240.0, 0.0, 302400.0, 0.0, -403200.0, 0.0, 161280.0, 0.0, -23040.0, 0.0, 1024.0,
        ],
    ];

    fn hermite_explicit(n: usize, x: f64) -> f64 {
        HERMITE_COEFFS[n]
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c)
    }

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite_eval(0, 3.7), 1.0);
        assert_eq!(hermite_eval(1, 2.0), 4.0);
        assert_abs_diff_eq!(hermite_eval(3, 0.5), -5.0, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn hermite_matches_explicit_polynomial(n in 0usize..=10, x in -5.0f64..5.0) {
            let rec = hermite_eval(n, x);
            let exp = hermite_explicit(n, x);
            let scale = exp.abs().max(1.0);
            prop_assert!((rec - exp).abs() <= 1e-8 * scale);
        }
    }

    #[test]
    fn hermite_complex_reduces_to_real() {
        for n in 0..8 {
            for &x in &[-2.5, -0.3, 0.0, 1.7] {
                let z = hermite_eval_c(n, Complex64::new(x, 0.0));
                assert_abs_diff_eq!(z.re, hermite_eval(n, x), epsilon = 1e-10);
                assert_eq!(z.im, 0.0);
            }
        }
    }

    #[test]
    fn fock_mode_values() {
        let pim4 = std::f64::consts::PI.powf(-0.25);
        assert_abs_diff_eq!(fock_mode(0, 0.0, 60).unwrap(), pim4, epsilon = 1e-15);
        assert_abs_diff_eq!(fock_mode(1, 0.0, 60).unwrap(), 0.0, epsilon = 1e-15);
        // against the explicit formula for a few orders
        for n in 0..=10usize {
            for &x in &[-1.3, 0.4, 2.2] {
                let norm = (-0.5 * (n as f64 * std::f64::consts::LN_2 + ln_factorial(n))).exp()
                    * std::f64::consts::PI.powf(-0.25);
                let explicit = norm * (-0.5 * x * x).exp() * hermite_eval(n, x);
                assert_abs_diff_eq!(fock_mode_unchecked(n, x), explicit, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn fock_mode_cap_enforced() {
        assert!(matches!(
            fock_mode(61, 0.0, 60),
            Err(crate::error::Error::Capacity { n: 61, cap: 60 })
        ));
    }

    #[test]
    fn fock_mode_row_matches_single() {
        let mut row = vec![0.0; 41];
        fock_mode_row(1.37, &mut row);
        for (n, &v) in row.iter().enumerate() {
            assert_abs_diff_eq!(v, fock_mode_unchecked(n, 1.37), epsilon = 1e-13);
        }
    }

    #[test]
    fn ln_factorial_values() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert_abs_diff_eq!(ln_factorial(5), 120.0f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(ln_factorial(20), 2.43290200817664e18f64.ln(), epsilon = 1e-10);
    }

    #[test]
    fn erf_anchors() {
        assert_eq!(erf_eval(0.0), 0.0);
        assert_abs_diff_eq!(erf_eval(1.0), 0.842700792949715, epsilon = 1e-13);
        assert_abs_diff_eq!(erf_eval(-1.0), -0.842700792949715, epsilon = 1e-13);
        assert_abs_diff_eq!(erf_eval(2.0), 0.995322265018953, epsilon = 1e-13);
        assert_abs_diff_eq!(erf_eval(3.5), 0.999999256901628, epsilon = 1e-14);
        for &x in &[6.0, 8.0, 30.0] {
            assert_abs_diff_eq!(erf_eval(x), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn erf_continuous_at_regime_switch() {
        let below = erf_eval(3.0 - 1e-9);
        let above = erf_eval(3.0 + 1e-9);
        assert_abs_diff_eq!(below, above, epsilon = 1e-12);
    }
}
