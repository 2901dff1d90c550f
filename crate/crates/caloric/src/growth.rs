//! Growth analysis of entire functions: order and type from Taylor
//! coefficients, even/odd derivative-subsequence statistics θ₀/θ₁, grid
//! sampling experiments for their almost-everywhere constancy, and the
//! caloric transfer laws between z-growth and t-growth.

use crate::series::{taylor_shift, CoefficientSeries, ShiftedSeries};
use crate::special::ln_factorial;
use crate::{C64, Error, Parity, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Inclusive index window used by the tail estimators.
pub type Window = (usize, usize);

/// Exact-order classification: order ρ annotated by whether the type is
/// zero, finite positive, or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExactOrderClass {
    RhoMinus,
    Rho,
    RhoPlus,
}

/// Estimated order/type with fit diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct OrderTypeEstimate {
    /// Estimated order; `f64::INFINITY` when the coefficients do not decay
    /// superpolynomially in the window.
    pub rho: f64,
    /// Estimated type, present iff 0 < rho < ∞.
    pub tau: Option<f64>,
    pub class: ExactOrderClass,
    pub window: Window,
    /// Tail values of the raw estimand n ln n / (-ln |a_n|).
    pub diagnostic: Vec<f64>,
    /// Estimates over the full window and its trailing half agree within 5%.
    pub stabilized: bool,
}

/// Type thresholds for the exact-order classes; tunable but frozen here.
const CLASS_TAU_MINIMAL: f64 = 1e-3;
const CLASS_TAU_MAXIMAL: f64 = 1e3;

fn regression_points(s: &CoefficientSeries, window: Window) -> Vec<(f64, f64, f64)> {
    let (lo, hi) = window;
    let mut pts = Vec::new();
    for n in lo.max(2)..=hi {
        let ln_a = s.ln_abs_coeff(n);
        if ln_a.is_finite() {
            let nf = n as f64;
            pts.push((nf * nf.ln(), nf, -ln_a));
        }
    }
    pts
}

/// Least-squares fit of -ln|a_n| against the Stirling basis
/// {n ln n, n, ln n, 1}; a factorially shaped tail |a_n| ~ (eρτ/n)^{n/ρ}
/// then yields β₁ = 1/ρ exactly and β₂ = -ln(eρτ)/ρ, so both order and type
/// drop out of the fit without the 1/ln n bias of the raw estimand.
fn fit_growth(pts: &[(f64, f64, f64)]) -> Option<(f64, f64)> {
    let k = if pts.len() >= 8 { 4 } else if pts.len() >= 3 { 2 } else { return None };
    let row = |x1: f64, x2: f64| -> [f64; 4] { [x1, x2, (x2.max(2.0)).ln(), 1.0] };
    // Normal equations for the first k basis functions.
    let mut a = [[0.0f64; 4]; 4];
    let mut b = [0.0f64; 4];
    for &(x1, x2, y) in pts {
        let r = row(x1, x2);
        for i in 0..k {
            for j in 0..k {
                a[i][j] += r[i] * r[j];
            }
            b[i] += r[i] * y;
        }
    }
    // Gaussian elimination with partial pivoting on the k×k system.
    let mut m = a;
    let mut rhs = b;
    for col in 0..k {
        let piv = (col..k).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..k {
            let f = m[r][col] / m[col][col];
            for c in col..k {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut beta = [0.0f64; 4];
    for r in (0..k).rev() {
        let mut v = rhs[r];
        for c in r + 1..k {
            v -= m[r][c] * beta[c];
        }
        beta[r] = v / m[r][r];
    }
    Some((beta[0], beta[1]))
}

fn rho_tau_from_window(s: &CoefficientSeries, window: Window) -> Option<(f64, Option<f64>)> {
    let pts = regression_points(s, window);
    if pts.is_empty() {
        return None;
    }
    match fit_growth(&pts) {
        Some((beta1, beta2)) if beta1 > 1e-9 => {
            let rho = 1.0 / beta1;
            let tau = (-beta2 * rho).exp() / (std::f64::consts::E * rho);
            Some((rho, Some(tau)))
        }
        Some(_) => Some((f64::INFINITY, None)),
        None => {
            // Too few points for a fit: raw tail maximum of n ln n / (-ln|a_n|).
            pts.iter()
                .filter(|p| p.2 > 0.0)
                .map(|p| p.0 / p.2)
                .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
                .map(|rho| (rho, None))
        }
    }
}

/// Order estimate over the tail window, with the coefficient formula
/// ρ = limsup n ln n / (-ln |a_n|) realized as a bias-corrected fit of
/// -ln|a_n| against (n ln n, n). Zero coefficients are skipped. The type and
/// exact-order class are filled in when the order is finite positive.
pub fn estimate_order(s: &CoefficientSeries, window: Window) -> Result<OrderTypeEstimate> {
    let (lo, hi) = window;
    if hi > s.n_max() || lo >= hi {
        return Err(Error::InvalidInput(format!(
            "window ({lo}, {hi}) invalid for a series capped at {}",
            s.n_max()
        )));
    }
    let any_nonzero = (0..=s.n_max()).any(|n| s.ln_abs_coeff(n).is_finite());
    if !any_nonzero {
        return Err(Error::InvalidInput("all coefficients are zero".into()));
    }

    let pts = regression_points(s, window);
    let (rho, tau_fit) = match rho_tau_from_window(s, window) {
        // Polynomial: every coefficient in (and beyond) the window vanishes.
        None => (0.0, None),
        Some(rt) => rt,
    };

    // Stabilization: the trailing half must tell the same story.
    let half = ((lo + hi) / 2, hi);
    let rho_half = rho_tau_from_window(s, half).map(|rt| rt.0);
    let stabilized = match (rho, rho_half) {
        (r, Some(rh)) if r.is_infinite() && rh.is_infinite() => true,
        (r, Some(rh)) => (r - rh).abs() <= 0.05 * r.abs().max(1e-6),
        (r, None) => r == 0.0,
    };

    let diagnostic: Vec<f64> = pts
        .iter()
        .rev()
        .take(12)
        .rev()
        .filter(|p| p.2 > 0.0)
        .map(|p| p.0 / p.2)
        .collect();

    let tau = if rho.is_finite() && rho > 0.0 {
        // The fit intercept is far less sensitive to the ρ̂ error than the
        // raw max formula; fall back to the latter if the fit had too few
        // points.
        match tau_fit {
            Some(t) => Some(t),
            None => Some(estimate_type(s, rho, window)?),
        }
    } else {
        None
    };
    let class = match tau {
        Some(t) if t < CLASS_TAU_MINIMAL => ExactOrderClass::RhoMinus,
        Some(t) if t > CLASS_TAU_MAXIMAL => ExactOrderClass::RhoPlus,
        _ => ExactOrderClass::Rho,
    };

    Ok(OrderTypeEstimate { rho, tau, class, window, diagnostic, stabilized })
}

/// Type estimate τ = (1/eρ) max over the tail window of n |a_n|^{ρ/n}.
pub fn estimate_type(s: &CoefficientSeries, rho: f64, window: Window) -> Result<f64> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidInput(format!("type needs 0 < rho < ∞, got {rho}")));
    }
    let (lo, hi) = window;
    let mut max = 0.0f64;
    for n in lo.max(1)..=hi.min(s.n_max()) {
        let ln_a = s.ln_abs_coeff(n);
        if ln_a.is_finite() {
            let v = n as f64 * (rho * ln_a / n as f64).exp();
            max = max.max(v);
        }
    }
    Ok(max / (std::f64::consts::E * rho))
}

// ---------------------------------------------------------------------------
// Derivative-subsequence statistics
// ---------------------------------------------------------------------------

/// θ₀/θ₁ at one point.
#[derive(Debug, Clone, Serialize)]
pub struct ThetaSample {
    pub z: (f64, f64),
    pub theta0: f64,
    pub theta1: f64,
    /// Derivative depth 2K(+1) used.
    pub depth: usize,
}

/// θ-statistic from an already recentered series. Entries whose magnitude
/// sits at the numerical floor (roundoff plus truncation) are consistent
/// with an exact zero and are excluded; if the whole tail is floored the
/// statistic is 0.
fn theta_from_shift(shift: &ShiftedSeries, parity: Parity, depth: usize) -> f64 {
    let k_lo = (depth / 2).max(2);
    let mut best = 0.0f64;
    let mut any = false;
    for k in k_lo..=depth {
        let n = match parity {
            Parity::Even => 2 * k,
            Parity::Odd => 2 * k + 1,
        };
        if n >= shift.coeffs.len() {
            break;
        }
        let a = shift.coeffs[n].norm();
        let floor = 10.0 * (shift.roundoff[n] + shift.tail_bound);
        if a <= floor {
            continue;
        }
        any = true;
        // |g^(n)(z)|^{1/(2k ln k)} in log space: g^(n) = n! a_n(z).
        let ln_g = ln_factorial(n) + a.ln();
        best = best.max((ln_g / (2.0 * k as f64 * (k as f64).ln())).exp());
    }
    if any {
        best
    } else {
        0.0
    }
}

/// Estimate of θ_parity(z) = limsup_k |g^((2k or 2k+1))(z)|^{1/(2k ln k)}
/// over the tail half of the available depth.
pub fn theta_subseq(s: &CoefficientSeries, z: C64, parity: Parity, depth: usize) -> Result<f64> {
    let shift = taylor_shift(s, z, 2 * depth + 1, 1e-3)?;
    Ok(theta_from_shift(&shift, parity, depth))
}

/// Both θ-statistics at z.
pub fn theta_sample(s: &CoefficientSeries, z: C64, depth: usize) -> Result<ThetaSample> {
    let shift = taylor_shift(s, z, 2 * depth + 1, 1e-3)?;
    Ok(ThetaSample {
        z: (z.re, z.im),
        theta0: theta_from_shift(&shift, Parity::Even, depth),
        theta1: theta_from_shift(&shift, Parity::Odd, depth),
        depth,
    })
}

/// Grid experiment summary: how often θ₀/θ₁ match the global θ = e^{1-1/ρ}.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Summary {
    pub rho_hat: f64,
    pub theta_global: f64,
    pub tolerance: f64,
    pub fraction_theta0: f64,
    pub fraction_theta1: f64,
    pub outliers_theta0: Vec<(f64, f64)>,
    pub outliers_theta1: Vec<(f64, f64)>,
    pub samples: Vec<ThetaSample>,
}

/// θ(ρ) = e^{1 - 1/ρ}, continuously extended to ρ ∈ {0, ∞}.
pub fn theta_of_order(rho: f64) -> f64 {
    if rho == 0.0 {
        0.0
    } else if rho.is_infinite() {
        std::f64::consts::E
    } else {
        (1.0 - 1.0 / rho).exp()
    }
}

/// Evaluate θ₀, θ₁ on a grid and compare with the global θ at tolerance 0.05.
/// Grid points are independent and processed in parallel.
pub fn theorem1_sample(s: &CoefficientSeries, grid: &[C64], depth: usize) -> Result<Theorem1Summary> {
    let hi = s.n_max();
    let est = estimate_order(s, (hi / 2, hi))?;
    let theta = theta_of_order(est.rho);
    let tolerance = 0.05;

    let samples: Vec<ThetaSample> = grid
        .par_iter()
        .map(|&z| theta_sample(s, z, depth))
        .collect::<Result<Vec<_>>>()?;

    let mut outliers0 = Vec::new();
    let mut outliers1 = Vec::new();
    let mut match0 = 0usize;
    let mut match1 = 0usize;
    for sm in &samples {
        if (sm.theta0 - theta).abs() <= tolerance {
            match0 += 1;
        } else {
            outliers0.push(sm.z);
        }
        if (sm.theta1 - theta).abs() <= tolerance {
            match1 += 1;
        } else {
            outliers1.push(sm.z);
        }
    }
    let n = samples.len().max(1) as f64;
    Ok(Theorem1Summary {
        rho_hat: est.rho,
        theta_global: theta,
        tolerance,
        fraction_theta0: match0 as f64 / n,
        fraction_theta1: match1 as f64 / n,
        outliers_theta0: outliers0,
        outliers_theta1: outliers1,
        samples,
    })
}

// ---------------------------------------------------------------------------
// Caloric transfer laws
// ---------------------------------------------------------------------------

/// t-order of an entire caloric function from its z-order: ρ_t = ρ/(2-ρ),
/// with ρ = 2 mapping to ∞. Orders above 2 cannot occur for entire caloric
/// initial data and are rejected.
pub fn caloric_t_order(rho: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&rho) {
        return Err(Error::InvalidInput(format!("z-order must lie in [0, 2], got {rho}")));
    }
    if rho == 2.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(rho / (2.0 - rho))
    }
}

/// t-type from z-order and z-type: τ_t = (1 - ρ/2) (2ρ)^{ρ/(2-ρ)} τ^{2/(2-ρ)}.
pub fn caloric_t_type(rho: f64, tau: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 2.0) {
        return Err(Error::InvalidInput(format!("t-type needs 0 < rho < 2, got {rho}")));
    }
    if tau < 0.0 {
        return Err(Error::InvalidInput(format!("type must be nonnegative, got {tau}")));
    }
    Ok((1.0 - rho / 2.0) * (2.0 * rho).powf(rho / (2.0 - rho)) * tau.powf(2.0 / (2.0 - rho)))
}

/// Coefficients in t of the caloric extension at a fixed z:
/// even parity b_j = (2j)! c_{2j}(z) / j! gives F(t, z),
/// odd parity b_j = (2j+1)! c_{2j+1}(z) / j! gives ∂_z F(t, z).
/// Feeding the output to `estimate_order` realizes the transfer law
/// empirically.
pub fn t_series_coeffs(
    f: &CoefficientSeries,
    z: C64,
    parity: Parity,
    j_max: usize,
) -> Result<CoefficientSeries> {
    let depth = match parity {
        Parity::Even => 2 * j_max,
        Parity::Odd => 2 * j_max + 1,
    };
    // At the origin the exact log-magnitude channel of the series is
    // available; away from it the recentered coefficients are used, which
    // limits the usable depth to where they have not underflowed.
    let shift = if z.norm() == 0.0 { None } else { Some(taylor_shift(f, z, depth, 1e-3)?) };
    let mut b = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let n = match parity {
            Parity::Even => 2 * j,
            Parity::Odd => 2 * j + 1,
        };
        let (ln_c, phase) = match &shift {
            None => {
                let c = f.coeff(n);
                let phase = if c.norm() > 0.0 { c / c.norm() } else { C64::new(1.0, 0.0) };
                (f.ln_abs_coeff(n), phase)
            }
            Some(sh) => {
                let c = sh.coeffs[n];
                let phase = if c.norm() > 0.0 { c / c.norm() } else { C64::new(1.0, 0.0) };
                (c.norm().ln(), phase)
            }
        };
        if !ln_c.is_finite() {
            b.push((f64::NEG_INFINITY, C64::new(1.0, 0.0)));
            continue;
        }
        // (2j)!/j! overflows f64 on its own; assemble in log space.
        b.push((ln_factorial(n) - ln_factorial(j) + ln_c, phase));
    }
    Ok(CoefficientSeries::from_log_coeffs(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Rule;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn order_of_exponential() {
        let s = CoefficientSeries::new(Rule::Exp { lambda: c(1.0, 0.0) }, 500);
        let est = estimate_order(&s, (200, 500)).unwrap();
        assert!((est.rho - 1.0).abs() < 0.02, "rho {}", est.rho);
        assert!(est.stabilized);
    }

    #[test]
    fn order_of_polynomial_is_zero() {
        let s = CoefficientSeries::from_coeffs(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).with_n_max(400);
        let est = estimate_order(&s, (100, 400)).unwrap();
        assert_eq!(est.rho, 0.0);
        assert!(est.tau.is_none());
    }

    #[test]
    fn order_and_type_of_gaussian_square() {
        // e^{a z²}: ρ = 2, τ = |a|.
        let s = CoefficientSeries::new(Rule::ExpSquare { a: c(0.5, 0.0) }, 520);
        let est = estimate_order(&s, (200, 500)).unwrap();
        assert!((est.rho - 2.0).abs() < 0.05, "rho {}", est.rho);
        let tau = est.tau.unwrap();
        assert!((tau - 0.5).abs() < 0.025, "tau {tau}");
        assert_eq!(est.class, ExactOrderClass::Rho);
    }

    #[test]
    fn type_of_sine_and_scaled_exp() {
        let s = CoefficientSeries::new(Rule::Sin { lambda: c(2.0, 0.0) }, 520);
        let est = estimate_order(&s, (200, 500)).unwrap();
        assert!((est.rho - 1.0).abs() < 0.02);
        let tau = est.tau.unwrap();
        assert!((tau - 2.0).abs() < 0.1, "tau {tau}");
        // e^{3z}: τ = 3.
        let s = CoefficientSeries::new(Rule::ScaledExp { rate: 3.0 }, 520);
        let tau = estimate_type(&s, 1.0, (200, 500)).unwrap();
        assert!((tau - 3.0).abs() < 0.15, "tau {tau}");
    }

    #[test]
    fn estimator_depends_only_on_moduli() {
        let s = CoefficientSeries::new(Rule::Sin { lambda: c(2.0, 0.0) }, 500);
        let a = estimate_order(&s, (150, 480)).unwrap();
        let b = estimate_order(&s.sharp(), (150, 480)).unwrap();
        assert_eq!(a.rho, b.rho);
        assert_eq!(a.tau, b.tau);
    }

    #[test]
    fn theta_for_sine_on_and_off_the_lattice() {
        let s = CoefficientSeries::new(Rule::Sin { lambda: c(1.0, 0.0) }, 160);
        let on = theta_subseq(&s, c(1.0, 0.0), Parity::Even, 40).unwrap();
        assert!((on - 1.0).abs() < 0.05, "theta0(1) = {on}");
        let lattice = theta_subseq(&s, c(std::f64::consts::PI, 0.0), Parity::Even, 40).unwrap();
        assert!(lattice < 0.05, "theta0(pi) = {lattice}");
        // exp: both statistics near 1 everywhere.
        let e = CoefficientSeries::new(Rule::Exp { lambda: c(1.0, 0.0) }, 160);
        let t0 = theta_subseq(&e, c(0.3, 0.2), Parity::Even, 40).unwrap();
        let t1 = theta_subseq(&e, c(0.3, 0.2), Parity::Odd, 40).unwrap();
        assert!((t0 - 1.0).abs() < 0.05 && (t1 - 1.0).abs() < 0.05);
    }

    #[test]
    fn theta_bounded_by_e() {
        let s = CoefficientSeries::new(Rule::ExpSquare { a: c(1.0, 0.0) }, 200);
        for &z in &[c(0.0, 0.0), c(1.0, 1.0), c(-2.0, 0.5)] {
            let t = theta_sample(&s, z, 45).unwrap();
            assert!(t.theta0.max(t.theta1) <= std::f64::consts::E + 1e-9);
        }
    }

    #[test]
    fn cosine_odd_statistic_drops_on_the_lattice() {
        let s = CoefficientSeries::new(Rule::Cos { lambda: c(1.0, 0.0) }, 160);
        // Odd derivatives of cos are ±sin: vanish at kπ.
        let t = theta_sample(&s, c(std::f64::consts::PI, 0.0), 40).unwrap();
        assert!(t.theta1 < 0.05, "theta1(pi) = {}", t.theta1);
        assert!((t.theta0 - 1.0).abs() < 0.05);
    }

    #[test]
    fn transfer_law_values() {
        assert!((caloric_t_order(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(caloric_t_order(0.0).unwrap(), 0.0);
        assert!((caloric_t_order(4.0 / 3.0).unwrap() - 2.0).abs() < 1e-12);
        assert!(caloric_t_order(2.0).unwrap().is_infinite());
        assert!(caloric_t_order(2.5).is_err());
        // τ_t at ρ=1 is τ².
        assert!((caloric_t_type(1.0, 3.0).unwrap() - 9.0).abs() < 1e-12);
        assert_eq!(caloric_t_type(1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn transfer_monotonicity() {
        let mut prev = -1.0;
        for i in 0..40 {
            let rho = 1.9 * i as f64 / 39.0;
            let v = caloric_t_order(rho).unwrap();
            assert!(v > prev);
            prev = v;
        }
        let mut prev = -1.0;
        for i in 0..20 {
            let tau = i as f64 * 0.3;
            let v = caloric_t_type(1.3, tau).unwrap();
            assert!(v > prev || (v == 0.0 && prev < 0.0));
            prev = v;
        }
    }

    #[test]
    fn t_series_of_plain_exponential() {
        // f = e^z at z=0: b_j = (2j)!/(j! (2j)!) = 1/j!, t-order 1.
        let f = CoefficientSeries::new(Rule::Exp { lambda: c(1.0, 0.0) }, 420);
        let b = t_series_coeffs(&f, c(0.0, 0.0), Parity::Even, 200).unwrap();
        for j in [0usize, 1, 5, 20] {
            let want = (-ln_factorial(j)).exp();
            assert!((b.coeff(j) - want).norm() < 1e-12 * want, "j={j}");
        }
        let est = estimate_order(&b, (100, 200)).unwrap();
        assert!((est.rho - 1.0).abs() < 0.05, "t-order {}", est.rho);
    }

    #[test]
    fn t_series_of_square_monomial() {
        // f = z²: even route at z=0 gives b = (0, 2, 0, ...), matching z²+2t at z=0.
        let f = CoefficientSeries::new(Rule::Monomial { m: 2 }, 40);
        let b = t_series_coeffs(&f, c(0.0, 0.0), Parity::Even, 10).unwrap();
        assert_eq!(b.coeff(0), c(0.0, 0.0));
        assert!((b.coeff(1) - 2.0).norm() < 1e-14);
        assert_eq!(b.coeff(2), c(0.0, 0.0));
    }

    #[test]
    fn t_series_vanishes_on_sine_lattice() {
        // f = sin z at z = π: even part of the caloric extension is ≡ 0.
        let f = CoefficientSeries::new(Rule::Sin { lambda: c(1.0, 0.0) }, 200);
        let b = t_series_coeffs(&f, c(std::f64::consts::PI, 0.0), Parity::Even, 40).unwrap();
        for j in 0..=40 {
            assert!(b.coeff(j).norm() < 1e-10, "j={j}: {}", b.coeff(j).norm());
        }
    }

    #[test]
    fn transfer_closure_for_factorial_powers() {
        // c_n = (n!)^{-1/ρ} has order ρ; its t-series has order ρ/(2-ρ).
        for &rho in &[1.0, 4.0 / 3.0, 1.5] {
            let f = CoefficientSeries::new(Rule::FactorialPower { beta: 1.0 / rho }, 520);
            let b = t_series_coeffs(&f, c(0.0, 0.0), Parity::Even, 250).unwrap();
            let est = estimate_order(&b, (125, 250)).unwrap();
            let want = caloric_t_order(rho).unwrap();
            assert!((est.rho - want).abs() < 0.05, "rho={rho}: t-order {} vs {want}", est.rho);
        }
    }
}
