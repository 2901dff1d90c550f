//! Small special-function kit: log-factorials, the complex gamma function in
//! its reciprocal (entire) form, and the Gaussian antiderivative
//! `∫_0^x e^{-ζ²} dζ` for complex `x`.

use crate::C64;
use std::f64::consts::PI;
use std::sync::OnceLock;

const LNFACT_LEN: usize = 4096;

fn lnfact_table() -> &'static [f64; LNFACT_LEN] {
    static TABLE: OnceLock<[f64; LNFACT_LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; LNFACT_LEN];
        for n in 2..LNFACT_LEN {
            t[n] = t[n - 1] + (n as f64).ln();
        }
        t
    })
}

/// `ln n!`, exact summation for n < 4096 and Stirling beyond.
pub fn ln_factorial(n: usize) -> f64 {
    if n < LNFACT_LEN {
        lnfact_table()[n]
    } else {
        let x = n as f64;
        // Stirling with the first correction term; relative error < 1e-12 here.
        x * x.ln() - x + 0.5 * (2.0 * PI * x).ln() + 1.0 / (12.0 * x)
    }
}

/// Binomial coefficient as f64. Overflows to `inf` above ~C(1028, 514),
/// which callers treat as a truncation signal.
pub fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)).exp()
}

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_gamma(z: C64) -> C64 {
    // Valid for Re(z) > 0.5; callers reflect first.
    let z = z - 1.0;
    let mut acc = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * acc
}

/// Γ(z) for complex z (principal branch), poles excluded.
pub fn gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // Reflection: Γ(z)Γ(1-z) = π / sin(πz).
        PI / ((PI * z).sin() * lanczos_gamma(1.0 - z))
    } else {
        lanczos_gamma(z)
    }
}

/// 1/Γ(z), entire in z; returns exactly 0 at the poles z = 0, -1, -2, ...
pub fn reciprocal_gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // 1/Γ(z) = sin(πz) Γ(1-z) / π, with sin supplying the zeros.
        if z.im == 0.0 && z.re == z.re.floor() {
            return C64::new(0.0, 0.0);
        }
        (PI * z).sin() * lanczos_gamma(1.0 - z) / PI
    } else {
        1.0 / lanczos_gamma(z)
    }
}

/// `∫_0^x e^{-ζ²} dζ` for complex x by the entire Taylor series
/// Σ (-1)^n x^(2n+1) / (n! (2n+1)). Accurate for moderate |x|.
pub fn gauss_integral(x: C64) -> C64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0usize;
    loop {
        n += 1;
        term = -term * x2 / n as f64;
        let increment = term / (2 * n + 1) as f64;
        sum += increment;
        if increment.norm() <= 1e-18 * (1.0 + sum.norm()) || n > 400 {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_against_direct_products() {
        let mut acc = 1.0f64;
        for n in 1..=30 {
            acc *= n as f64;
            assert!((ln_factorial(n) - acc.ln()).abs() < 1e-12 * acc.ln().abs().max(1.0));
        }
    }

    #[test]
    fn stirling_branch_is_continuous() {
        // ln_factorial must not jump at the table boundary.
        let direct: f64 = (2..LNFACT_LEN).map(|k| (k as f64).ln()).sum::<f64>() + (LNFACT_LEN as f64).ln();
        assert!((ln_factorial(LNFACT_LEN) - direct).abs() < 1e-8 * direct);
    }

    #[test]
    fn gamma_half_integers() {
        let g = gamma(C64::new(0.5, 0.0));
        assert!((g.re - PI.sqrt()).abs() < 1e-12);
        assert!(g.im.abs() < 1e-14);
        // Γ(-1/2) = -2√π
        let g = gamma(C64::new(-0.5, 0.0));
        assert!((g.re + 2.0 * PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn reciprocal_gamma_vanishes_at_poles() {
        for k in 0..6 {
            let v = reciprocal_gamma(C64::new(-(k as f64), 0.0));
            assert_eq!(v, C64::new(0.0, 0.0));
        }
        // And is the plain reciprocal away from them.
        let z = C64::new(2.3, 1.1);
        let prod = gamma(z) * reciprocal_gamma(z);
        assert!((prod - 1.0).norm() < 1e-12);
    }

    #[test]
    fn gauss_integral_matches_reference() {
        // ∫_0^1 e^{-ζ²} dζ = (√π/2) erf(1) = 0.7468241328124271
        let v = gauss_integral(C64::new(1.0, 0.0));
        assert!((v.re - 0.746_824_132_812_427_1).abs() < 1e-14);
        assert!(v.im.abs() < 1e-16);
        // Odd function.
        let a = gauss_integral(C64::new(0.4, -0.7));
        let b = gauss_integral(C64::new(-0.4, 0.7));
        assert!((a + b).norm() < 1e-15);
    }
}
