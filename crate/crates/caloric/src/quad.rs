//! Gauss–Hermite and Gauss–Legendre quadrature rules.
//!
//! Nodes are found by Newton iteration on the orthonormal three-term
//! recurrences, which is stable to a few hundred nodes.

use std::f64::consts::PI;

/// Gauss–Hermite rule: `∫_{-∞}^{∞} e^{-x²} f(x) dx ≈ Σ w_i f(x_i)`.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "quadrature needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = (n + 1) / 2;
        let mut z = 0.0f64;
        for i in 0..m {
            // Initial guesses from Numerical-Recipes-style asymptotics.
            z = match i {
                0 => (2.0 * n as f64 + 1.0).sqrt() - 1.85575 * (2.0 * n as f64 + 1.0).powf(-1.0 / 6.0),
                1 => z - 1.14 * (n as f64).powf(0.426) / z,
                2 => 1.86 * z - 0.86 * nodes[0],
                3 => 1.91 * z - 0.91 * nodes[1],
                _ => 2.0 * z - nodes[i - 2],
            };
            let mut pp = 0.0;
            for _ in 0..100 {
                // Orthonormal Hermite recurrence.
                let mut p1 = PI.powf(-0.25);
                let mut p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    p1 = z * (2.0 / (j as f64 + 1.0)).sqrt() * p2
                        - (j as f64 / (j as f64 + 1.0)).sqrt() * p3;
                }
                pp = (2.0 * n as f64).sqrt() * p2;
                let dz = p1 / pp;
                z -= dz;
                if dz.abs() < 1e-15 * (1.0 + z.abs()) {
                    break;
                }
            }
            nodes[i] = z;
            nodes[n - 1 - i] = -z;
            weights[i] = 2.0 / (pp * pp);
            weights[n - 1 - i] = weights[i];
        }
        GaussHermite { nodes, weights }
    }
}

/// Gauss–Legendre rule on [-1, 1]: `∫_{-1}^{1} f ≈ Σ w_i f(x_i)`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "quadrature needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = (n + 1) / 2;
        for i in 0..m {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut pp = 0.0;
            for _ in 0..100 {
                let mut p1 = 1.0;
                let mut p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j as f64 + 1.0) * z * p2 - j as f64 * p3) / (j as f64 + 1.0);
                }
                pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
                let dz = p1 / pp;
                z -= dz;
                if dz.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            let w = 2.0 / ((1.0 - z * z) * pp * pp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Integrate f over [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_moments() {
        let gh = GaussHermite::new(20);
        let mass: f64 = gh.weights.iter().sum();
        assert!((mass - PI.sqrt()).abs() < 1e-13);
        // ∫ x² e^{-x²} = √π/2
        let m2: f64 = gh.nodes.iter().zip(&gh.weights).map(|(x, w)| w * x * x).sum();
        assert!((m2 - PI.sqrt() / 2.0).abs() < 1e-13);
        // Exactness on x^30 needs n >= 16: ∫ x^30 e^{-x²} = Γ(15.5)
        let m30: f64 = gh.nodes.iter().zip(&gh.weights).map(|(x, w)| w * x.powi(30)).sum();
        let exact = crate::special::gamma(crate::C64::new(15.5, 0.0)).re;
        assert!((m30 - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn hermite_large_rule_is_finite() {
        let gh = GaussHermite::new(160);
        assert!(gh.nodes.iter().all(|x| x.is_finite()));
        assert!(gh.weights.iter().all(|w| w.is_finite() && *w > 0.0));
        let mass: f64 = gh.weights.iter().sum();
        assert!((mass - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn legendre_matches_polynomial_integrals() {
        let gl = GaussLegendre::new(12);
        let v = gl.integrate(0.0, 1.0, |x| x * x);
        assert!((v - 1.0 / 3.0).abs() < 1e-14);
        let v = gl.integrate(-2.0, 3.0, |x| x.powi(7) - x.powi(3) + 1.0);
        let exact = (3.0f64.powi(8) - 2.0f64.powi(8)) / 8.0 - (3.0f64.powi(4) - 2.0f64.powi(4)) / 4.0 + 5.0;
        assert!((v - exact).abs() < 1e-12 * exact.abs());
    }

    #[test]
    fn legendre_oscillatory_convergence() {
        // cos(40x) on [0,1]: sin(40)/40
        let gl = GaussLegendre::new(64);
        let v = gl.integrate(0.0, 1.0, |x| (40.0 * x).cos());
        assert!((v - (40.0f64).sin() / 40.0).abs() < 1e-12);
    }
}
