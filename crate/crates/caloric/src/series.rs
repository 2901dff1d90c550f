//! Entire functions represented by Taylor-coefficient generators, the
//! coefficientwise absolute-value (sharp) operator, exact recentering, and
//! canonical products with the three-case genus rule.

use crate::special::ln_factorial;
use crate::{C64, Error, Result};
use serde::Deserialize;

/// Default tolerance for the recentering tail bound.
pub const SHIFT_TAIL_TOLERANCE: f64 = 1e-6;

/// Coefficient rule: a pure map n ↦ a_n.
#[derive(Debug, Clone)]
pub enum Rule {
    /// Explicit list; coefficients beyond the list are zero.
    List(Vec<C64>),
    /// exp(λz): a_n = λ^n / n!.
    Exp { lambda: C64 },
    /// sin(λz).
    Sin { lambda: C64 },
    /// cos(λz).
    Cos { lambda: C64 },
    /// exp(a z²): a_{2j} = a^j / j!.
    ExpSquare { a: C64 },
    /// cos(a z²): a_{4k} pattern from the cosine series.
    CosSquare { a: C64 },
    /// z^m.
    Monomial { m: usize },
    /// a_n = (n!)^{-beta}; order 1/beta.
    FactorialPower { beta: f64 },
    /// a_n = r^n / n! scaled copies: exp(rz) with real rate (CLI convenience).
    ScaledExp { rate: f64 },
    /// Coefficientwise absolute value of the inner rule.
    Sharp(Box<Rule>),
    /// Derivative of the inner rule: a_n = (n+1) · inner(n+1).
    Derivative(Box<Rule>),
    /// Coefficients kept as (ln |a_n|, phase); survives magnitudes far below
    /// the f64 underflow threshold, which growth estimation depends on.
    LogList(Vec<(f64, C64)>),
}

impl Rule {
    fn coeff(&self, n: usize) -> C64 {
        match self {
            Rule::List(v) => v.get(n).copied().unwrap_or_default(),
            Rule::Exp { lambda } => lambda.powu(n as u32) * (-ln_factorial(n)).exp(),
            Rule::Sin { lambda } => {
                if n % 2 == 1 {
                    let k = (n - 1) / 2;
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    sign * lambda.powu(n as u32) * (-ln_factorial(n)).exp()
                } else {
                    C64::new(0.0, 0.0)
                }
            }
            Rule::Cos { lambda } => {
                if n % 2 == 0 {
                    let k = n / 2;
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    sign * lambda.powu(n as u32) * (-ln_factorial(n)).exp()
                } else {
                    C64::new(0.0, 0.0)
                }
            }
            Rule::ExpSquare { a } => {
                if n % 2 == 0 {
                    let j = n / 2;
                    a.powu(j as u32) * (-ln_factorial(j)).exp()
                } else {
                    C64::new(0.0, 0.0)
                }
            }
            Rule::CosSquare { a } => {
                if n % 4 == 0 {
                    let k = n / 4;
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    sign * a.powu((2 * k) as u32) * (-ln_factorial(2 * k)).exp()
                } else {
                    C64::new(0.0, 0.0)
                }
            }
            Rule::Monomial { m } => {
                if n == *m {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            }
            Rule::FactorialPower { beta } => C64::new((-beta * ln_factorial(n)).exp(), 0.0),
            Rule::ScaledExp { rate } => {
                C64::new(rate.powi(n as i32) * (-ln_factorial(n)).exp(), 0.0)
            }
            Rule::Sharp(inner) => C64::new(inner.coeff(n).norm(), 0.0),
            Rule::Derivative(inner) => (n as f64 + 1.0) * inner.coeff(n + 1),
            Rule::LogList(v) => v
                .get(n)
                .map(|&(ln_abs, phase)| phase * ln_abs.exp())
                .unwrap_or_default(),
        }
    }

    /// ln |a_n|, valid far beyond the f64 underflow range of `coeff`.
    /// Returns -∞ for exactly-zero coefficients.
    fn ln_abs(&self, n: usize) -> f64 {
        match self {
            Rule::List(v) => v.get(n).map(|c| c.norm().ln()).unwrap_or(f64::NEG_INFINITY),
            Rule::Exp { lambda } => {
                if n == 0 {
                    0.0
                } else {
                    n as f64 * lambda.norm().ln() - ln_factorial(n)
                }
            }
            Rule::Sin { lambda } => {
                if n % 2 == 1 {
                    n as f64 * lambda.norm().ln() - ln_factorial(n)
                } else {
                    f64::NEG_INFINITY
                }
            }
            Rule::Cos { lambda } => {
                if n == 0 {
                    0.0
                } else if n % 2 == 0 {
                    n as f64 * lambda.norm().ln() - ln_factorial(n)
                } else {
                    f64::NEG_INFINITY
                }
            }
            Rule::ExpSquare { a } => {
                if n == 0 {
                    0.0
                } else if n % 2 == 0 {
                    let j = n / 2;
                    j as f64 * a.norm().ln() - ln_factorial(j)
                } else {
                    f64::NEG_INFINITY
                }
            }
            Rule::CosSquare { a } => {
                if n == 0 {
                    0.0
                } else if n % 4 == 0 {
                    let k = n / 4;
                    2.0 * k as f64 * a.norm().ln() - ln_factorial(2 * k)
                } else {
                    f64::NEG_INFINITY
                }
            }
            Rule::Monomial { m } => {
                if n == *m {
                    0.0
                } else {
                    f64::NEG_INFINITY
                }
            }
            Rule::FactorialPower { beta } => -beta * ln_factorial(n),
            Rule::ScaledExp { rate } => {
                if n == 0 {
                    0.0
                } else {
                    n as f64 * rate.abs().ln() - ln_factorial(n)
                }
            }
            Rule::Sharp(inner) => inner.ln_abs(n),
            Rule::Derivative(inner) => ((n + 1) as f64).ln() + inner.ln_abs(n + 1),
            Rule::LogList(v) => v.get(n).map(|&(ln_abs, _)| ln_abs).unwrap_or(f64::NEG_INFINITY),
        }
    }
}

/// A truncatable Taylor-coefficient view of an entire function about `center`.
#[derive(Debug, Clone)]
pub struct CoefficientSeries {
    rule: Rule,
    n_max: usize,
    center: C64,
}

impl CoefficientSeries {
    pub fn new(rule: Rule, n_max: usize) -> Self {
        CoefficientSeries { rule, n_max, center: C64::new(0.0, 0.0) }
    }

    pub fn with_center(rule: Rule, n_max: usize, center: C64) -> Self {
        CoefficientSeries { rule, n_max, center }
    }

    pub fn from_coeffs(coeffs: Vec<C64>) -> Self {
        let n_max = coeffs.len().saturating_sub(1);
        CoefficientSeries::new(Rule::List(coeffs), n_max)
    }

    /// a_n, zero beyond the cap.
    pub fn coeff(&self, n: usize) -> C64 {
        if n > self.n_max {
            C64::new(0.0, 0.0)
        } else {
            self.rule.coeff(n)
        }
    }

    /// ln |a_n| (-∞ for zero coefficients). The direct `coeff` underflows to
    /// zero near n ≈ 170 for factorially decaying families; the growth
    /// estimators read this channel instead.
    pub fn ln_abs_coeff(&self, n: usize) -> f64 {
        if n > self.n_max {
            f64::NEG_INFINITY
        } else {
            self.rule.ln_abs(n)
        }
    }

    /// Build directly from (ln |a_n|, phase) pairs.
    pub fn from_log_coeffs(coeffs: Vec<(f64, C64)>) -> Self {
        let n_max = coeffs.len().saturating_sub(1);
        CoefficientSeries::new(Rule::LogList(coeffs), n_max)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Raise the truncation cap; the generator is a pure rule so no
    /// re-ingestion happens.
    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn center(&self) -> C64 {
        self.center
    }

    /// Evaluate the truncated series at z (relative to the center).
    pub fn eval(&self, z: C64) -> C64 {
        let w = z - self.center;
        let mut acc = C64::new(0.0, 0.0);
        for n in (0..=self.n_max).rev() {
            acc = acc * w + self.coeff(n);
        }
        acc
    }

    /// Coefficientwise absolute value; order and type are unchanged and the
    /// operation commutes with differentiation.
    pub fn sharp(&self) -> Self {
        CoefficientSeries {
            rule: Rule::Sharp(Box::new(self.rule.clone())),
            n_max: self.n_max,
            center: self.center,
        }
    }

    /// Term-by-term derivative.
    pub fn derivative(&self) -> Self {
        CoefficientSeries {
            rule: Rule::Derivative(Box::new(self.rule.clone())),
            n_max: self.n_max.saturating_sub(1),
            center: self.center,
        }
    }
}

/// Output of `taylor_shift`: the recentered coefficients plus accuracy data.
#[derive(Debug, Clone)]
pub struct ShiftedSeries {
    /// a_n(z0) = g^{(n)}(z0)/n! for n = 0..=n_out.
    pub coeffs: Vec<C64>,
    /// Geometric estimate of the dropped tail, per requested coefficient the
    /// worst case is reported here.
    pub tail_bound: f64,
    /// Roundoff floor per coefficient: machine epsilon times the
    /// absolute-value sum of the convolution terms times the accumulation
    /// length. |a_n(z0)| below this is numerically indistinguishable from
    /// zero.
    pub roundoff: Vec<f64>,
}

impl ShiftedSeries {
    pub fn into_series(self, center: C64) -> CoefficientSeries {
        let n = self.coeffs.len().saturating_sub(1);
        CoefficientSeries::with_center(Rule::List(self.coeffs), n, center)
    }
}

/// Recentre: a_n(z0) = Σ_{k≥n} a_k C(k,n) z0^{k-n}, truncated at the series
/// cap, with a geometric tail estimate from the last terms. Errors when the
/// tail bound exceeds `tol`.
pub fn taylor_shift(s: &CoefficientSeries, z0: C64, n_out: usize, tol: f64) -> Result<ShiftedSeries> {
    if n_out > s.n_max() {
        return Err(Error::InvalidInput(format!(
            "requested {n_out} shifted coefficients but the series caps at {}",
            s.n_max()
        )));
    }
    if z0.norm() == 0.0 {
        let coeffs: Vec<C64> = (0..=n_out).map(|n| s.coeff(n)).collect();
        let roundoff = coeffs.iter().map(|c| f64::EPSILON * c.norm()).collect();
        return Ok(ShiftedSeries { coeffs, tail_bound: 0.0, roundoff });
    }

    let cap = s.n_max();
    let mut coeffs = Vec::with_capacity(n_out + 1);
    let mut roundoff = Vec::with_capacity(n_out + 1);
    let mut worst_tail = 0.0f64;

    for n in 0..=n_out {
        let mut sum = C64::new(0.0, 0.0);
        let mut abs_sum = 0.0f64;
        // binom(k, n) updated multiplicatively; z0 powers likewise.
        let mut binom = 1.0f64;
        let mut zpow = C64::new(1.0, 0.0);
        let mut recent: Vec<f64> = Vec::with_capacity(12);
        for k in n..=cap {
            if k > n {
                binom *= k as f64 / (k - n) as f64;
                zpow *= z0;
            }
            if !binom.is_finite() {
                return Err(Error::Overflow(format!("binomial C({k}, {n}) exceeds f64")));
            }
            let term = s.coeff(k) * binom * zpow;
            sum += term;
            abs_sum += term.norm();
            if cap - k < 12 {
                recent.push(term.norm());
            }
        }
        // Geometric tail from the trailing terms.
        let tail = geometric_tail(&recent);
        worst_tail = worst_tail.max(tail);
        coeffs.push(sum);
        roundoff.push(f64::EPSILON * abs_sum * (cap - n + 1) as f64);
    }

    if worst_tail > tol {
        return Err(Error::Truncation { bound: worst_tail, tolerance: tol });
    }
    Ok(ShiftedSeries { coeffs, tail_bound: worst_tail, roundoff })
}

fn geometric_tail(recent: &[f64]) -> f64 {
    let last = match recent.last() {
        Some(&v) => v,
        None => return 0.0,
    };
    if last == 0.0 {
        return 0.0;
    }
    let mut ratios = Vec::new();
    for w in recent.windows(2) {
        if w[0] > 0.0 && w[1] > 0.0 {
            ratios.push(w[1] / w[0]);
        }
    }
    if ratios.is_empty() {
        return last;
    }
    let r = ratios.iter().sum::<f64>() / ratios.len() as f64;
    if r < 0.9 {
        last * r / (1.0 - r)
    } else {
        // Not visibly contracting: refuse to extrapolate, report the raw term
        // scaled up as a pessimistic flag.
        last * 100.0
    }
}

// ---------------------------------------------------------------------------
// Canonical products
// ---------------------------------------------------------------------------

/// Genus from the convergence exponent σ:
/// non-integer σ → ⌊σ⌋; integer σ with divergent Σ|z_k|^{-σ} → σ;
/// integer σ with convergent sum → max(σ-1, 0).
pub fn genus_select(sigma: f64, sigma_is_integer: bool, sum_at_sigma_converges: bool) -> usize {
    if !sigma_is_integer {
        sigma.floor() as usize
    } else if !sum_at_sigma_converges {
        sigma.round() as usize
    } else {
        (sigma.round() as usize).saturating_sub(1)
    }
}

/// Finite Weierstrass product over nonzero zeros with genus-p convergence
/// factors.
#[derive(Debug, Clone)]
pub struct CanonicalProduct {
    pub zeros: Vec<C64>,
    pub genus: usize,
    /// Convergence exponent: declared by the caller or least-squares
    /// estimated from the zero moduli.
    pub sigma: f64,
}

impl CanonicalProduct {
    /// Build with an explicitly declared exponent (overrides any estimate).
    pub fn new(zeros: Vec<C64>, genus: usize, sigma: f64) -> Result<Self> {
        if zeros.iter().any(|z| z.norm() == 0.0) {
            return Err(Error::InvalidInput("canonical product zeros must be nonzero".into()));
        }
        Ok(CanonicalProduct { zeros, genus, sigma })
    }

    /// E_p(z/z_k) factors multiplied out.
    pub fn eval(&self, z: C64) -> C64 {
        let mut prod = C64::new(1.0, 0.0);
        for &zk in &self.zeros {
            let w = z / zk;
            let mut factor = 1.0 - w;
            if self.genus > 0 {
                let mut exponent = C64::new(0.0, 0.0);
                let mut wp = C64::new(1.0, 0.0);
                for r in 1..=self.genus {
                    wp *= w;
                    exponent += wp / r as f64;
                }
                factor *= exponent.exp();
            }
            prod *= factor;
        }
        prod
    }
}

/// Least-squares estimate of the convergence exponent from the log counting
/// function: fit ln n(r) against ln r over the sorted moduli.
pub fn estimate_sigma(zeros: &[C64]) -> f64 {
    let mut moduli: Vec<f64> = zeros.iter().map(|z| z.norm()).filter(|m| *m > 0.0).collect();
    if moduli.len() < 3 {
        return 0.0;
    }
    moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let pts: Vec<(f64, f64)> = moduli
        .iter()
        .enumerate()
        .map(|(i, m)| (m.ln(), ((i + 1) as f64).ln()))
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        0.0
    } else {
        ((n * sxy - sx * sy) / denom).max(0.0)
    }
}

// ---------------------------------------------------------------------------
// JSON description
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
struct SeriesSpec {
    kind: String,
    #[serde(default)]
    coeffs: Vec<[f64; 2]>,
    #[serde(default)]
    rule: Option<RuleSpec>,
    #[serde(default)]
    n_max: Option<usize>,
}

#[derive(Debug, Deserialize)]
struct RuleSpec {
    name: String,
    #[serde(default)]
    lambda: Option<[f64; 2]>,
    #[serde(default)]
    a: Option<[f64; 2]>,
    #[serde(default)]
    beta: Option<f64>,
    #[serde(default)]
    rate: Option<f64>,
    #[serde(default)]
    m: Option<usize>,
}

fn c_of(v: Option<[f64; 2]>, default: f64) -> C64 {
    match v {
        Some([re, im]) => C64::new(re, im),
        None => C64::new(default, 0.0),
    }
}

impl CoefficientSeries {
    /// Load from the JSON description
    /// `{"kind": "closed_form"|"list", "coeffs": [[re,im],...], "rule": {"name": ..}, "n_max": ..}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SeriesSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("series JSON: {e}")))?;
        let n_max = spec.n_max.unwrap_or(600);
        match spec.kind.as_str() {
            "list" => {
                let coeffs: Vec<C64> = spec.coeffs.iter().map(|&[re, im]| C64::new(re, im)).collect();
                if coeffs.is_empty() {
                    return Err(Error::InvalidInput("list series needs coeffs".into()));
                }
                Ok(CoefficientSeries::from_coeffs(coeffs))
            }
            "closed_form" => {
                let rule = spec.rule.ok_or_else(|| Error::InvalidInput("closed_form needs a rule".into()))?;
                let r = match rule.name.as_str() {
                    "exp" => Rule::Exp { lambda: c_of(rule.lambda, 1.0) },
                    "sin" => Rule::Sin { lambda: c_of(rule.lambda, 1.0) },
                    "cos" => Rule::Cos { lambda: c_of(rule.lambda, 1.0) },
                    "exp_square" => Rule::ExpSquare { a: c_of(rule.a, 1.0) },
                    "cos_square" => Rule::CosSquare { a: c_of(rule.a, 1.0) },
                    "monomial" => Rule::Monomial { m: rule.m.unwrap_or(1) },
                    "factorial_power" => Rule::FactorialPower { beta: rule.beta.unwrap_or(1.0) },
                    "scaled_exp" => Rule::ScaledExp { rate: rule.rate.unwrap_or(1.0) },
                    other => return Err(Error::InvalidInput(format!("unknown rule '{other}'"))),
                };
                Ok(CoefficientSeries::new(r, n_max))
            }
            other => Err(Error::InvalidInput(format!("unknown series kind '{other}'"))),
        }
    }
}
