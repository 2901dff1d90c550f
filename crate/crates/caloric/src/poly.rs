//! Caloric polynomials `P_m(t, z)`: the polynomial solutions of the heat
//! equation with initial data `z^m`.
//!
//! Coefficients are kept as exact arbitrary-precision integers (the table
//! entry for `t^j z^{m-2j}` is `m!/(j!(m-2j)!)`, which overflows 64 bits at
//! m = 21), with a parallel f64 table for evaluation. Above a degree
//! threshold evaluation switches to the Hermite form
//! `P_m(t, z) = (i√t)^m H_m(z / 2i√t)`, whose parity cancels the square-root
//! branch choice.

use crate::rootfind;
use crate::{C64, Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Degree above which `eval` uses the Hermite route.
pub const HERMITE_ROUTE_THRESHOLD: usize = 60;

/// Exact coefficient table of the m-th caloric polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct CaloricPolynomial {
    degree: usize,
    /// coeffs[j] multiplies t^j z^{m-2j}, j = 0..=⌊m/2⌋.
    coeffs: Vec<BigUint>,
    coeffs_f64: Vec<f64>,
}

impl CaloricPolynomial {
    /// Build P_m. `coeffs[0] = 1` and every entry is a positive integer.
    pub fn new(m: usize) -> Self {
        let l = m / 2;
        let mut coeffs = Vec::with_capacity(l + 1);
        coeffs.push(BigUint::one());
        for j in 1..=l {
            // c_j = c_{j-1} * (m-2j+2)(m-2j+1) / j, exact in integers.
            let prev: &BigUint = &coeffs[j - 1];
            let num = prev * BigUint::from(m - 2 * j + 2) * BigUint::from(m - 2 * j + 1);
            coeffs.push(num / BigUint::from(j));
        }
        let coeffs_f64 = coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
        CaloricPolynomial { degree: m, coeffs, coeffs_f64 }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exact integer coefficients, index j for the t^j z^{m-2j} monomial.
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Value of P_m(t, z). Direct Horner below the degree threshold, the
    /// Hermite form above it.
    pub fn eval(&self, t: C64, z: C64) -> C64 {
        if self.degree > HERMITE_ROUTE_THRESHOLD && t.norm() > 0.0 {
            return eval_hermite_route(self.degree, t, z);
        }
        self.eval_monomial(t, z)
    }

    /// Horner evaluation grouped in powers of z².
    pub fn eval_monomial(&self, t: C64, z: C64) -> C64 {
        let m = self.degree;
        let u = z * z;
        let mut acc = C64::new(self.coeffs_f64[0], 0.0);
        let mut tp = C64::new(1.0, 0.0);
        for j in 1..self.coeffs.len() {
            tp *= t;
            acc = acc * u + self.coeffs_f64[j] * tp;
        }
        if m % 2 == 1 {
            acc *= z;
        }
        acc
    }

    /// Value of ∂_t P_m(t, z) straight from the table (coefficient j·c_j on
    /// t^{j-1} z^{m-2j}). An arithmetic path independent of the
    /// z-differentiation ladder, so the two sides of the heat equation can
    /// be compared.
    pub fn eval_dt(&self, t: C64, z: C64) -> C64 {
        let m = self.degree;
        if self.coeffs.len() < 2 {
            return C64::new(0.0, 0.0);
        }
        let u = z * z;
        let mut acc = C64::new(self.coeffs_f64[1], 0.0);
        let mut tp = C64::new(1.0, 0.0);
        for j in 2..self.coeffs.len() {
            tp *= t;
            acc = acc * u + j as f64 * self.coeffs_f64[j] * tp;
        }
        if m % 2 == 1 {
            acc *= z;
        }
        acc
    }

    /// Coefficient table of ∂_z P_m together with the ladder identity
    /// ∂_z P_m = m P_{m-1}, verified exactly in integer arithmetic.
    pub fn dz(&self) -> Result<ZDerivative> {
        let m = self.degree;
        if m == 0 {
            return Err(Error::InvalidInput("degree-0 polynomial has no z-derivative".into()));
        }
        // Differentiating c_j t^j z^{m-2j} keeps the terms with m-2j >= 1.
        let table: Vec<BigUint> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(j, _)| m - 2 * j >= 1)
            .map(|(j, c)| c * BigUint::from(m - 2 * j))
            .collect();
        let lower = CaloricPolynomial::new(m - 1);
        let scaled: Vec<BigUint> = lower.coeffs.iter().map(|c| c * BigUint::from(m)).collect();
        if table != scaled {
            return Err(Error::InvalidInput(format!("derivative ladder failed at m = {m}")));
        }
        Ok(ZDerivative { factor: m, table, lower })
    }
}

/// Result of differentiating P_m in z: the exact table and the ladder pair.
#[derive(Debug, Clone)]
pub struct ZDerivative {
    /// The scalar m in ∂_z P_m = m P_{m-1}.
    pub factor: usize,
    /// Coefficients of ∂_z P_m (index j for t^j z^{m-1-2j}).
    pub table: Vec<BigUint>,
    /// P_{m-1}.
    pub lower: CaloricPolynomial,
}

/// Hermite-route evaluation with the principal square root. The branch does
/// not matter: flipping √t multiplies the prefactor by (-1)^m and the
/// Hermite argument by -1, and H_m has parity (-1)^m.
fn eval_hermite_route(m: usize, t: C64, z: C64) -> C64 {
    let s = t.sqrt();
    let i = C64::new(0.0, 1.0);
    let x = z / (2.0 * i * s);
    (i * s).powu(m as u32) * hermite_value(m, x)
}

/// Physicists' Hermite polynomial H_m(x) by the three-term recurrence.
pub fn hermite_value(m: usize, x: C64) -> C64 {
    let mut h0 = C64::new(1.0, 0.0);
    if m == 0 {
        return h0;
    }
    let mut h1 = 2.0 * x;
    for k in 1..m {
        let next = 2.0 * x * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = next;
    }
    h1
}

/// Exact monomial coefficients of H_m, ascending powers.
pub fn hermite_coefficients(m: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::one()];
    if m == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::from(2)];
    for k in 1..m {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += 2 * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= 2 * k as i64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// The ρ-spectrum of P_m: values ρ with P_m(t,z) = z^{m mod 2} Π (z² + ρ_j t).
#[derive(Debug, Clone)]
pub struct RhoSpectrum {
    pub degree: usize,
    /// Strictly increasing positive values, ⌊m/2⌋ of them.
    pub values: Vec<f64>,
    pub even: bool,
}

/// ρ_{m,j} = 4 h_j² where h_j are the positive zeros of H_m, found by the
/// shared polynomial root finder on the exact Hermite table.
pub fn rho_spectrum(m: usize) -> Result<RhoSpectrum> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("rho spectrum needs m >= 2, got {m}")));
    }
    let coeffs: Vec<C64> = hermite_coefficients(m)
        .iter()
        .map(|c| {
            let v = c.to_f64().unwrap_or(if c.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY });
            C64::new(v, 0.0)
        })
        .collect();
    if coeffs.iter().any(|c| !c.re.is_finite()) {
        return Err(Error::InvalidInput(format!("Hermite coefficients overflow f64 at m = {m}")));
    }
    let roots = rootfind::polynomial_roots(&coeffs)?;
    let l = m / 2;
    let mut positive: Vec<f64> = roots
        .iter()
        .filter(|r| r.re > 1e-9 && r.im.abs() < 1e-6 * (1.0 + r.re.abs()))
        .map(|r| r.re)
        .collect();
    if positive.len() != l {
        return Err(Error::NonConvergence { what: "Hermite positive-zero count", iterations: 0 });
    }
    // Newton polish each zero on the f64 table.
    for h in positive.iter_mut() {
        let mut z = C64::new(*h, 0.0);
        rootfind::newton_polish(&coeffs, &mut z);
        *h = z.re;
    }
    let mut values: Vec<f64> = positive.iter().map(|h| 4.0 * h * h).collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for w in values.windows(2) {
        if w[1] - w[0] < 1e-6 {
            return Err(Error::NonConvergence { what: "rho spectrum separation", iterations: 0 });
        }
    }
    Ok(RhoSpectrum { degree: m, values, even: m % 2 == 0 })
}

/// Strict interlacing of the spectra of P_m and P_{m-1}.
///
/// For even m = 2l: 0 < ρ_{m,1} < ρ_{m-1,1} < ρ_{m,2} < ... < ρ_{m-1,l-1} < ρ_{m,l}.
/// For odd m = 2l+1: 0 < ρ_{m-1,1} < ρ_{m,1} < ... < ρ_{m-1,l} < ρ_{m,l}.
pub fn interlacing_check(m: usize) -> Result<bool> {
    if m < 3 {
        return Err(Error::InvalidInput(format!("interlacing needs m >= 3, got {m}")));
    }
    let hi = rho_spectrum(m)?.values;
    let lo = rho_spectrum(m - 1)?.values;
    // Merge in the prescribed alternating order and check strict increase.
    let chain: Vec<f64> = if m % 2 == 0 {
        // hi has l entries, lo has l-1; pattern hi, lo, hi, ..., lo, hi.
        let mut c = Vec::with_capacity(hi.len() + lo.len());
        for i in 0..hi.len() {
            c.push(hi[i]);
            if i < lo.len() {
                c.push(lo[i]);
            }
        }
        c
    } else {
        // Both have l entries; pattern lo, hi, lo, hi, ..., lo, hi.
        let mut c = Vec::with_capacity(hi.len() + lo.len());
        for i in 0..hi.len() {
            c.push(lo[i]);
            c.push(hi[i]);
        }
        c
    };
    Ok(chain[0] > 0.0 && chain.windows(2).all(|w| w[0] < w[1]))
}

/// Index of the largest coefficient, κ_m = ⌊(4m - 1 - √(8m + 17)) / 8⌋ + 1.
pub fn kappa(m: usize) -> usize {
    if m < 2 {
        return 0;
    }
    let mf = m as f64;
    (((4.0 * mf - 1.0 - (8.0 * mf + 17.0).sqrt()) / 8.0).floor() + 1.0) as usize
}

/// Upper bound `c_{m,κ_m} (⌊m/2⌋ + 1) max_j |t|^j |z|^{m-2j}` on |P_m(t, z)|.
pub fn crude_bound(m: usize, t: C64, z: C64) -> f64 {
    let p = CaloricPolynomial::new(m);
    let k = kappa(m).min(p.coeffs.len() - 1);
    let l = m / 2;
    let ta = t.norm();
    let za = z.norm();
    let mut max_mono = 0.0f64;
    let mut mono = za.powi(m as i32);
    for j in 0..=l {
        if j > 0 {
            mono = ta.powi(j as i32) * za.powi((m - 2 * j) as i32);
        }
        max_mono = max_mono.max(mono);
    }
    p.coeffs_f64[k] * (l as f64 + 1.0) * max_mono
}

/// Partial sum Σ_{m<=M} λ^m/m! · P_m(t, z) of the generating identity; the
/// full series equals exp(λ²t + λz).
pub fn generating_partial_sum(lambda: C64, t: C64, z: C64, terms: usize) -> C64 {
    let mut factor = C64::new(1.0, 0.0); // λ^m / m!
    let mut sum = C64::new(0.0, 0.0);
    for m in 0..=terms {
        if m > 0 {
            factor *= lambda / m as f64;
        }
        sum += factor * CaloricPolynomial::new(m).eval(t, z);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn first_six_tables_match_the_classical_list() {
        // P_0 = 1, P_1 = z, P_2 = z²+2t, P_3 = z(z²+6t),
        // P_4 = z⁴+12tz²+12t², P_5 = z(z⁴+20tz²+60t²).
        let want: [&[u64]; 6] = [&[1], &[1], &[1, 2], &[1, 6], &[1, 12, 12], &[1, 20, 60]];
        for (m, row) in want.iter().enumerate() {
            let p = CaloricPolynomial::new(m);
            let got: Vec<u64> = p.coefficients().iter().map(|c| c.to_u64().unwrap()).collect();
            assert_eq!(&got[..], *row, "m = {m}");
        }
    }

    #[test]
    fn initial_condition_is_monomial() {
        for m in 0..12 {
            let p = CaloricPolynomial::new(m);
            let z = c(0.7, -0.4);
            assert!((p.eval(c(0.0, 0.0), z) - z.powu(m as u32)).norm() < 1e-12 * z.norm().powi(m as i32));
        }
        // P_3(0, 2) = 8.
        assert!((CaloricPolynomial::new(3).eval(c(0.0, 0.0), c(2.0, 0.0)) - 8.0).norm() < 1e-12);
    }

    #[test]
    fn pointwise_values() {
        // P_2(1, 2) = 4 + 2 = 6.
        assert!((CaloricPolynomial::new(2).eval(c(1.0, 0.0), c(2.0, 0.0)) - 6.0).norm() < 1e-12);
        // P_0 ≡ 1.
        assert!((CaloricPolynomial::new(0).eval(c(3.0, 1.0), c(-2.0, 5.0)) - 1.0).norm() == 0.0);
    }

    #[test]
    fn parabolic_homogeneity() {
        // P_m(λ²t, λz) = λ^m P_m(t, z); spot-checked on a grid of m and λ.
        let t = c(0.3, 0.0);
        let z = c(1.1, 0.0);
        for m in [3usize, 4, 5, 8, 13, 21, 30] {
            let p = CaloricPolynomial::new(m);
            for lambda in [c(2.0, 0.0), c(0.5, 0.5), c(-1.2, 0.8)] {
                let lhs = p.eval(lambda * lambda * t, lambda * z);
                let rhs = lambda.powu(m as u32) * p.eval(t, z);
                assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm(), "m={m} λ={lambda}");
            }
        }
    }

    #[test]
    fn derivative_ladder_exact() {
        for m in 1..=64 {
            let d = CaloricPolynomial::new(m).dz().unwrap();
            assert_eq!(d.factor, m);
            assert_eq!(d.lower.degree(), m - 1);
        }
        assert!(CaloricPolynomial::new(0).dz().is_err());
    }

    #[test]
    fn hermite_bridge() {
        // P_m(-1, 2x) = H_m(x).
        for m in 0..=30 {
            let p = CaloricPolynomial::new(m);
            let mut worst = 0.0f64;
            let mut scale = 0.0f64;
            for i in 0..=60 {
                let x = -3.0 + 0.1 * i as f64;
                let h = hermite_value(m, c(x, 0.0));
                let v = p.eval(c(-1.0, 0.0), c(2.0 * x, 0.0));
                worst = worst.max((v - h).norm());
                scale = scale.max(h.norm());
            }
            assert!(worst <= 1e-8 * scale, "m = {m}: {worst:.3e} vs scale {scale:.3e}");
        }
        // H_2(1) = 2, H_0 = 1, H_3(0) = 0.
        assert!((hermite_value(2, c(1.0, 0.0)) - 2.0).norm() < 1e-14);
        assert_eq!(hermite_value(0, c(5.0, 2.0)), c(1.0, 0.0));
        assert_eq!(hermite_value(3, c(0.0, 0.0)).norm(), 0.0);
    }

    #[test]
    fn hermite_route_agrees_with_monomial_route_and_is_branch_free() {
        for m in [61usize, 75, 90] {
            let p = CaloricPolynomial::new(m);
            let t = c(0.2, 0.1);
            let z = c(0.9, -0.3);
            let direct = p.eval_monomial(t, z);
            let hermite = eval_hermite_route(m, t, z);
            assert!((direct - hermite).norm() < 1e-9 * direct.norm(), "m={m}");
            // Flip the square-root branch by hand: same value.
            let s = -t.sqrt();
            let i = c(0.0, 1.0);
            let flipped = (i * s).powu(m as u32) * hermite_value(m, z / (2.0 * i * s));
            assert!((flipped - hermite).norm() < 1e-9 * hermite.norm());
        }
    }

    #[test]
    fn spectra_of_small_degrees() {
        let s2 = rho_spectrum(2).unwrap();
        assert!((s2.values[0] - 2.0).abs() < 1e-12);
        let s3 = rho_spectrum(3).unwrap();
        assert!((s3.values[0] - 6.0).abs() < 1e-10);
        let s4 = rho_spectrum(4).unwrap();
        let d = 2.0 * 6.0f64.sqrt();
        assert!((s4.values[0] - (6.0 - d)).abs() < 1e-9);
        assert!((s4.values[1] - (6.0 + d)).abs() < 1e-9);
    }

    #[test]
    fn factorization_reconstructs_the_polynomial() {
        // P_m(t,z) = z^{m mod 2} Π (z² + ρ_j t) at a generic point.
        for m in [6usize, 9, 14] {
            let spec = rho_spectrum(m).unwrap();
            let t = c(0.4, -0.2);
            let z = c(1.3, 0.7);
            let mut prod = if m % 2 == 1 { z } else { c(1.0, 0.0) };
            for &rho in &spec.values {
                prod *= z * z + rho * t;
            }
            let direct = CaloricPolynomial::new(m).eval(t, z);
            assert!((prod - direct).norm() < 1e-10 * direct.norm(), "m={m}");
        }
    }

    #[test]
    fn interlacing_small_and_moderate() {
        assert!(interlacing_check(3).unwrap());
        assert!(interlacing_check(4).unwrap());
        assert!(interlacing_check(50).unwrap());
    }

    #[test]
    fn simple_zeros_at_nonzero_time() {
        // Roots of P_m(1, ·) are pairwise separated.
        for m in 2..=30 {
            let spec = rho_spectrum(m).unwrap();
            let mut roots: Vec<C64> = Vec::new();
            if m % 2 == 1 {
                roots.push(c(0.0, 0.0));
            }
            for &rho in &spec.values {
                roots.push(c(0.0, rho.sqrt()));
                roots.push(c(0.0, -rho.sqrt()));
            }
            for i in 0..roots.len() {
                for j in 0..i {
                    assert!((roots[i] - roots[j]).norm() > 1e-6, "m={m}");
                }
            }
        }
    }

    #[test]
    fn kappa_is_the_argmax_coefficient() {
        assert_eq!(kappa(4), 2);
        for m in 2..=80 {
            let p = CaloricPolynomial::new(m);
            let k = kappa(m);
            let max = p.coefficients().iter().max().unwrap();
            assert_eq!(&p.coefficients()[k], max, "m = {m}");
        }
    }

    #[test]
    fn bound_dominates_samples() {
        assert!(crude_bound(0, c(2.0, 1.0), c(0.3, 0.4)) >= 1.0);
        let pts = [c(1.0, 0.0), c(0.5, -0.8), c(-1.4, 0.3), c(0.0, 2.0)];
        for m in [1usize, 6, 11, 25, 40] {
            let p = CaloricPolynomial::new(m);
            for &t in &pts {
                for &z in &pts {
                    let b = crude_bound(m, t, z);
                    assert!(p.eval(t, z).norm() <= b * (1.0 + 1e-12), "m={m} t={t} z={z}");
                }
            }
        }
        // m=6, t=z=1 named case.
        assert!(CaloricPolynomial::new(6).eval(c(1.0, 0.0), c(1.0, 0.0)).norm() <= crude_bound(6, c(1.0, 0.0), c(1.0, 0.0)));
    }

    #[test]
    fn generating_function_partial_sums() {
        // λ = 0 collapses to P_0 = 1.
        assert_eq!(generating_partial_sum(c(0.0, 0.0), c(5.0, 1.0), c(2.0, 2.0), 25), c(1.0, 0.0));
        // t = 0 reduces to the exponential series.
        let v = generating_partial_sum(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), 40);
        assert!((v - std::f64::consts::E).norm() < 1e-12);
        // Full complex identity.
        let (l, t, z) = (c(0.7, 0.3), c(0.4, -0.2), c(1.1, 0.5));
        let v = generating_partial_sum(l, t, z, 60);
        let exact = (l * l * t + l * z).exp();
        assert!((v - exact).norm() < 1e-10, "err {:.3e}", (v - exact).norm());
    }
}
