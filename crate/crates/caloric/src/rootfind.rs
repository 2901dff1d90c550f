//! Simultaneous polynomial root finding: Aberth–Ehrlich iteration with a
//! Newton polish, for polynomials with complex coefficients.

use crate::{C64, Error, Result};

/// Horner evaluation of p and p' at z. Coefficients ascending: `[a_0, ..., a_n]`.
pub fn eval_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Coefficientwise absolute-value evaluation Σ |a_k| r^k, the natural scale
/// for residual tests.
pub fn sharp_scale(coeffs: &[C64], r: f64) -> f64 {
    let mut s = 0.0;
    for &c in coeffs.iter().rev() {
        s = s * r + c.norm();
    }
    s
}

/// All roots of the polynomial with ascending coefficients `[a_0, ..., a_n]`.
///
/// Exact zero roots (vanishing low-order coefficients) are split off first;
/// the rest go through Aberth–Ehrlich started on a circle of radius equal to
/// the geometric mean of the root moduli, followed by a Newton polish.
/// Residuals are checked against `1e-12` of the coefficientwise scale.
pub fn polynomial_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let n = coeffs.len().saturating_sub(1);
    let lead = *coeffs.last().ok_or_else(|| Error::InvalidInput("empty coefficient list".into()))?;
    if lead.norm() == 0.0 {
        return Err(Error::InvalidInput("leading coefficient is zero".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    // Split off exact roots at the origin.
    let zeros_at_origin = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros_at_origin..];
    let mut roots = vec![C64::new(0.0, 0.0); zeros_at_origin];
    if reduced.len() > 1 {
        roots.extend(aberth(reduced)?);
    }

    for &r in &roots[zeros_at_origin..] {
        let (p, _) = eval_with_derivative(coeffs, r);
        let scale = sharp_scale(coeffs, r.norm()).max(f64::MIN_POSITIVE);
        if p.norm() > 1e-12 * scale {
            return Err(Error::NonConvergence { what: "polynomial root residual", iterations: MAX_ITER });
        }
    }
    Ok(roots)
}

const MAX_ITER: usize = 500;

fn aberth(coeffs: &[C64]) -> Result<Vec<C64>> {
    let n = coeffs.len() - 1;
    let a0 = coeffs[0].norm();
    let lead = coeffs[n].norm();

    // Geometric mean of root moduli when available, Fujiwara-style otherwise.
    let radius = if a0 > 0.0 {
        (a0 / lead).powf(1.0 / n as f64)
    } else {
        2.0 * (0..n)
            .map(|k| (coeffs[k].norm() / lead).powf(1.0 / (n - k) as f64))
            .fold(0.0f64, f64::max)
    }
    .max(1e-12);

    let mut z: Vec<C64> = (0..n)
        .map(|i| {
            // Irrational angular offset breaks root symmetries.
            let angle = 2.0 * std::f64::consts::PI * i as f64 / n as f64 + 0.437;
            radius * C64::new(angle.cos(), angle.sin())
        })
        .collect();

    for _ in 0..MAX_ITER {
        let mut all_converged = true;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            // Residual at the coefficientwise roundoff floor counts as done:
            // the Newton correction below that level is pure noise.
            if p.norm() <= 8.0 * f64::EPSILON * sharp_scale(coeffs, z[i].norm()) {
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { C64::new(1e-8, 1e-8) };
            let mut repulsion = C64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        repulsion += 1.0 / d;
                    }
                }
            }
            let denom = 1.0 - newton * repulsion;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[i] -= step;
            if step.norm() > 1e-13 * (1.0 + z[i].norm()) {
                all_converged = false;
            }
        }
        if all_converged {
            for zi in z.iter_mut() {
                newton_polish(coeffs, zi);
            }
            return Ok(z);
        }
    }
    Err(Error::NonConvergence { what: "Aberth iteration", iterations: MAX_ITER })
}

/// A few Newton steps to pin the root down to machine residual. Steps that
/// fail to decrease |p| are rejected, so a converged root is never degraded.
pub fn newton_polish(coeffs: &[C64], z: &mut C64) {
    let mut best = eval_with_derivative(coeffs, *z).0.norm();
    for _ in 0..8 {
        let (p, dp) = eval_with_derivative(coeffs, *z);
        if dp.norm() == 0.0 || p.norm() <= 2.0 * f64::EPSILON * sharp_scale(coeffs, z.norm()) {
            return;
        }
        let step = p / dp;
        let candidate = *z - step;
        let next = eval_with_derivative(coeffs, candidate).0.norm();
        if next >= best {
            return;
        }
        best = next;
        *z = candidate;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_root_set(got: Vec<C64>, want: Vec<C64>, tol: f64) {
        assert_eq!(got.len(), want.len());
        for w in &want {
            assert!(got.iter().any(|g| (g - w).norm() < tol), "no match for {w} in {got:?}");
        }
    }

    #[test]
    fn quadratic_with_imaginary_roots() {
        // z² + 2 = P_2 at t = 1: roots ±i√2.
        let r = polynomial_roots(&[C64::new(2.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        let s2 = 2.0f64.sqrt();
        assert_root_set(r, vec![C64::new(0.0, s2), C64::new(0.0, -s2)], 1e-14);
    }

    #[test]
    fn monomial_gives_multiple_origin() {
        let mut coeffs = vec![C64::new(0.0, 0.0); 8];
        coeffs.push(C64::new(1.0, 0.0));
        let r = polynomial_roots(&coeffs).unwrap();
        assert_eq!(r.len(), 8);
        assert!(r.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn unit_pair() {
        // 1 - z²: roots ±1.
        let r = polynomial_roots(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(-1.0, 0.0)]).unwrap();
        assert_root_set(r, vec![C64::new(1.0, 0.0), C64::new(-1.0, 0.0)], 1e-14);
    }

    #[test]
    fn random_products_recover_their_roots() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for deg in [3usize, 6, 11, 17] {
            let want: Vec<C64> = (0..deg)
                .map(|_| C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            // Expand Π (z - r_k).
            let mut coeffs = vec![C64::new(1.0, 0.0)];
            for &r in &want {
                let mut next = vec![C64::new(0.0, 0.0); coeffs.len() + 1];
                for (i, &c) in coeffs.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * r;
                }
                coeffs = next;
            }
            let got = polynomial_roots(&coeffs).unwrap();
            for w in &want {
                assert!(got.iter().any(|g| (g - w).norm() < 1e-8), "missing root {w} at degree {deg}");
            }
        }
    }

    #[test]
    fn rejects_zero_leading_coefficient() {
        let err = polynomial_roots(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert!(err.is_err());
    }
}
