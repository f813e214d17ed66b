// Copyright 2026 The bellsym Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Symmetrized persistency of GHZ and Dicke states.
//!
//! A state on `N` parties has persistency at least `t + 1` when some
//! `N - t` party reduction still violates a symmetrized Bell inequality.
//! For the GHZ mixture this reduces to the binomial condition
//! `QCR(M) / C(N, M) > 1` with `M = N - t`; for Dicke states the indicator is
//! the x/z correlation sum exceeding one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bell::{zigzag_numbers, GBI_CLASSICAL_MAX};
use crate::dicke::{fit_n0_line, sigma_sum_with, BinomialTable};
use crate::error::{Error, Result};
use crate::scalar::{binomial_int, ln_factorials};

/// Largest `N` for exact GBI evaluation.
pub const GBI_EXACT_MAX: usize = 500;

/// π to 60 decimals; the true value lies in `[PI_DIGITS, PI_DIGITS + 10^-60]`.
const PI_DIGITS: &str = "3141592653589793238462643383279502884197169399375105820974944";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Makb,
    Gbi,
    Custom,
}

/// Quantum-to-classical ratio growth `QCR(M) ≈ b · a^M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QcrModel {
    pub a: f64,
    pub b: f64,
    pub family: Family,
}

impl QcrModel {
    pub fn makb() -> Self {
        Self { a: std::f64::consts::SQRT_2, b: std::f64::consts::FRAC_1_SQRT_2, family: Family::Makb }
    }

    pub fn gbi() -> Self {
        Self { a: std::f64::consts::FRAC_PI_2, b: 0.5, family: Family::Gbi }
    }

    pub fn custom(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 1.0 && b.is_finite() && b > 0.0) {
            return Err(Error::domain(format!("need a > 1 and b > 0, got a = {a}, b = {b}")));
        }
        Ok(Self { a, b, family: Family::Custom })
    }

    fn ln_qcr(&self, m: usize) -> f64 {
        self.b.ln() + m as f64 * self.a.ln()
    }
}

/// How the GHZ condition is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact `QCR(M)` for the named family, decided without rounding.
    /// Custom models fall back to the asymptotic form.
    #[default]
    Exact,
    /// `b · a^M` compared in log space; handles very large `N`.
    Asymptotic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PersistencyResult {
    pub n: usize,
    /// Parties that can be traced while the criterion still holds.
    pub max_traced: usize,
    /// Size of the reduced group at the frontier, `n - max_traced`.
    pub witness_m: usize,
    /// Criterion value at `witness_m`: `QCR(M)/C(N,M)` for GHZ, `Σ` for Dicke.
    pub margin: f64,
}

impl PersistencyResult {
    /// Lower bound on the symmetrized persistency.
    pub fn persistency_lower_bound(&self) -> usize {
        self.max_traced + 1
    }
}

/// Outcome of the GHZ condition for one subgroup size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Condition {
    pub holds: bool,
    /// `QCR(M) / C(N, M)`.
    pub margin: f64,
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_ratio(r: &BigRational) -> f64 {
    ln_big(r.numer()) - ln_big(r.denom())
}

fn pi_bounds() -> (BigRational, BigRational) {
    let digits: BigInt = PI_DIGITS.parse().expect("valid digits");
    let scale = BigInt::from(10).pow((PI_DIGITS.len() - 1) as u32);
    let lo = BigRational::new(digits.clone(), scale.clone());
    let hi = BigRational::new(digits + 1, scale);
    (lo, hi)
}

/// Evaluates the GHZ condition family by family, reusing tables across `M`.
struct GhzEvaluator {
    model: QcrModel,
    mode: Mode,
    n: usize,
    ln_fact: Vec<f64>,
    zigzag: Vec<BigInt>,
    pi: (BigRational, BigRational),
}

impl GhzEvaluator {
    fn new(model: QcrModel, n: usize, mode: Mode) -> Result<Self> {
        if n < 2 {
            return Err(Error::Size { got: n, min: 2, max: usize::MAX });
        }
        let exact_gbi = mode == Mode::Exact && model.family == Family::Gbi;
        if exact_gbi && n > GBI_EXACT_MAX.min(GBI_CLASSICAL_MAX) {
            return Err(Error::capability(format!(
                "exact GBI evaluation supports N <= {GBI_EXACT_MAX}; use the asymptotic mode"
            )));
        }
        Ok(Self {
            model,
            mode,
            n,
            ln_fact: ln_factorials(n),
            zigzag: if exact_gbi { zigzag_numbers(n) } else { Vec::new() },
            pi: if exact_gbi { pi_bounds() } else { (BigRational::zero(), BigRational::zero()) },
        })
    }

    fn ln_binomial(&self, m: usize) -> f64 {
        self.ln_fact[self.n] - self.ln_fact[m] - self.ln_fact[self.n - m]
    }

    fn condition(&self, m: usize) -> Result<Condition> {
        let n = self.n;
        let binom = || binomial_int(n as i64, m as i64);
        match (self.mode, self.model.family) {
            (Mode::Exact, Family::Makb) => {
                // 2^{(M-1)/2} / C(N,M) > 1  ⇔  2^{M-1} > C(N,M)^2
                let c = binom();
                let holds = (BigInt::one() << (m - 1)) > &c * &c;
                let ln_margin = (m as f64 - 1.0) * 0.5 * std::f64::consts::LN_2 - ln_big(&c);
                Ok(Condition { holds, margin: ln_margin.exp() })
            }
            (Mode::Exact, Family::Gbi) => {
                // (2/π) / (C_M · C(N,M)) > 1  ⇔  π < r with r = 2 / (C_M · C(N,M))
                let fact: BigInt = (1..=m).fold(BigInt::one(), |acc, k| acc * k);
                let c_m = BigRational::new(self.zigzag[m].clone(), fact);
                let r = BigRational::from_integer(BigInt::from(2)) / (c_m * BigRational::from_integer(binom()));
                let (lo, hi) = &self.pi;
                let holds = if &r > hi {
                    true
                } else if &r < lo {
                    false
                } else {
                    return Err(Error::capability("GHZ condition too close to 1 to certify"));
                };
                let margin = (ln_ratio(&r) - std::f64::consts::PI.ln()).exp();
                Ok(Condition { holds, margin })
            }
            _ => {
                let ln_margin = self.model.ln_qcr(m) - self.ln_binomial(m);
                Ok(Condition { holds: ln_margin > 0.0, margin: ln_margin.exp() })
            }
        }
    }
}

/// `QCR(M) / C(N, M) > 1` for a single subgroup size `2 <= M <= N`.
pub fn ghz_condition(model: QcrModel, n: usize, m: usize, mode: Mode) -> Result<Condition> {
    if !(2..=n).contains(&m) {
        return Err(Error::Size { got: m, min: 2, max: n });
    }
    GhzEvaluator::new(model, n, mode)?.condition(m)
}

/// Largest `t >= 1` with `M = N - t >= 2` satisfying the GHZ condition.
///
/// When none does, `max_traced` is zero and the margin is `QCR(N)` itself.
pub fn ghz_persistency(model: QcrModel, n: usize, mode: Mode) -> Result<PersistencyResult> {
    let eval = GhzEvaluator::new(model, n, mode)?;
    for m in 2..n {
        let c = eval.condition(m)?;
        if c.holds {
            return Ok(PersistencyResult { n, max_traced: n - m, witness_m: m, margin: c.margin });
        }
    }
    let full = eval.condition(n)?;
    Ok(PersistencyResult { n, max_traced: 0, witness_m: n, margin: full.margin })
}

/// [`ghz_persistency`] for every `N` in `ns`, in parallel.
pub fn ghz_persistency_sweep(model: QcrModel, ns: &[usize], mode: Mode) -> Result<Vec<PersistencyResult>> {
    ns.par_iter().map(|&n| ghz_persistency(model, n, mode)).collect()
}

/// `H(x) = -x log₂ x - (1-x) log₂(1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("entropy argument {x} outside [0, 1]")));
    }
    let term = |p: f64| if p == 0.0 { 0.0 } else { -p * p.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// Root of `H(γ) = γ log₂ a`, bisected to the resolution of `f64`.
///
/// For `a < 4` the root lies in `(1/2, 1)`; larger bases push it below `1/2`
/// and the bracket moves to `(0, 1/2]`.
pub fn gamma_crit(a: f64) -> Result<f64> {
    gamma_crit_tol(a, 0.0)
}

/// [`gamma_crit`] stopping once the bracket is narrower than `tol`.
pub fn gamma_crit_tol(a: f64, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::domain(format!("tolerance must be non-negative, got {tol}")));
    }
    if !(a.is_finite() && a > 1.0) {
        return Err(Error::domain(format!("base must exceed 1, got {a}")));
    }
    let log_a = a.log2();
    let f = |g: f64| binary_entropy(g).expect("in range") - g * log_a;
    let (mut lo, mut hi) = if f(0.5 + 1e-9) > 0.0 { (0.5 + 1e-9, 1.0 - 1e-12) } else { (1e-12, 0.5 + 1e-9) };
    // f is positive left of the root on either bracket.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo < tol {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if f(lo).abs() <= f(hi).abs() { lo } else { hi })
}

/// Largest `L` in `1..=N-2` whose reduction of `|D_{N,M}⟩` has `Σ > 1`, decided exactly.
///
/// `Σ > 1` is a necessary-condition proxy for a symmetric x/z violation; the
/// reported persistency is a lower bound under that proxy.
pub fn dicke_persistency(n: usize, m: usize) -> Result<PersistencyResult> {
    if n < 2 || m > n {
        return Err(Error::domain(format!("invalid Dicke parameters N = {n}, M = {m}")));
    }
    let table = BinomialTable::<BigRational>::new(n);
    let one = BigRational::one();
    for l in (1..=n - 2).rev() {
        let s = sigma_sum_with(&table, n, m, l);
        if s > one {
            return Ok(PersistencyResult { n, max_traced: l, witness_m: n - l, margin: ln_ratio(&s).exp() });
        }
    }
    let s = sigma_sum_with(&table, n, m, 0);
    let margin = if s.is_positive() { ln_ratio(&s).exp() } else { 0.0 };
    Ok(PersistencyResult { n, max_traced: 0, witness_m: n, margin })
}

/// Asymptotic persistency fraction `1/a` from the line `N_0 ≈ a L + b`.
pub fn dicke_asymptotic(m: usize, traced: &[usize]) -> Result<f64> {
    Ok(1.0 / fit_n0_line(m, traced)?.slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn makb_first_persistent_at_nine() {
        for n in 2..9 {
            assert_eq!(ghz_persistency(QcrModel::makb(), n, Mode::Exact).unwrap().max_traced, 0, "N = {n}");
        }
        let r = ghz_persistency(QcrModel::makb(), 9, Mode::Exact).unwrap();
        assert!(r.persistency_lower_bound() >= 2);
        assert_eq!(r.witness_m, 8);
    }

    #[test]
    fn makb_boundary_is_not_strict() {
        let c = ghz_condition(QcrModel::makb(), 8, 7, Mode::Exact).unwrap();
        assert!(!c.holds);
        assert!((c.margin - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gbi_margin_at_seven() {
        let r = ghz_persistency(QcrModel::gbi(), 7, Mode::Exact).unwrap();
        assert_eq!((r.max_traced, r.witness_m), (1, 6));
        let expected = 1440.0 / (427.0 * std::f64::consts::PI);
        assert!((r.margin - expected).abs() < 1e-9);
        assert!((r.margin - 1.07346).abs() < 1e-5);
    }

    #[test]
    fn gbi_exact_limit() {
        assert!(matches!(ghz_persistency(QcrModel::gbi(), 501, Mode::Exact), Err(Error::Capability(_))));
        assert!(ghz_persistency(QcrModel::gbi(), 501, Mode::Asymptotic).is_ok());
        assert!(ghz_persistency(QcrModel::makb(), 1, Mode::Exact).is_err());
    }

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!(binary_entropy(1.5).is_err());
        assert!((binary_entropy(0.905118).unwrap() - 0.905118 / 2.0).abs() < 1e-5);
    }

    #[test]
    fn gamma_values() {
        assert!((gamma_crit(std::f64::consts::SQRT_2).unwrap() - 0.905118).abs() < 1e-5);
        assert!((gamma_crit(std::f64::consts::FRAC_PI_2).unwrap() - 0.867227).abs() < 1e-5);
        assert!(gamma_crit(1.0).is_err());
        let coarse = gamma_crit_tol(std::f64::consts::SQRT_2, 1e-4).unwrap();
        assert!((coarse - 0.905118).abs() < 1e-4);
        assert!(gamma_crit_tol(2.0, -1.0).is_err());
    }

    #[test]
    fn gamma_matches_grid_scan() {
        // Last grid point in (1/2, 1) where H(γ) > γ.
        let step = 1e-6;
        let mut last = 0.5;
        let mut g = 0.5;
        while g < 1.0 {
            if binary_entropy(g).unwrap() > g {
                last = g;
            }
            g += step;
        }
        assert!((gamma_crit(2.0).unwrap() - last).abs() < 2e-6);
    }

    #[test]
    fn gamma_for_large_base() {
        let g = gamma_crit(8.0).unwrap();
        assert!(g < 0.5);
        assert!((binary_entropy(g).unwrap() - 3.0 * g).abs() < 1e-8);
    }

    #[test]
    fn ghz_monotone_in_n() {
        for model in [QcrModel::makb(), QcrModel::gbi()] {
            let ns: Vec<_> = (2..=200).collect();
            let rs = ghz_persistency_sweep(model, &ns, Mode::Exact).unwrap();
            for w in rs.windows(2) {
                assert!(w[1].max_traced >= w[0].max_traced, "{model:?} at N = {}", w[1].n);
            }
        }
    }

    #[test]
    fn exact_and_asymptotic_makb_agree() {
        // b·a^M is exact for this family, so only rounding at the boundary can differ.
        for n in 2..=300 {
            let e = ghz_persistency(QcrModel::makb(), n, Mode::Exact).unwrap();
            let a = ghz_persistency(QcrModel::makb(), n, Mode::Asymptotic).unwrap();
            assert!(e.max_traced.abs_diff(a.max_traced) <= 1, "N = {n}");
        }
    }

    #[test]
    fn frontier_fraction_approaches_gamma() {
        for model in [QcrModel::makb(), QcrModel::gbi()] {
            let n = 10_000;
            let r = ghz_persistency(model, n, Mode::Asymptotic).unwrap();
            let frac = r.witness_m as f64 / n as f64;
            assert!((frac - gamma_crit(model.a).unwrap()).abs() < 0.01, "{model:?}: {frac}");
        }
    }

    #[test]
    fn dicke_reference_states() {
        for (n, m) in [(5, 1), (6, 2), (8, 3), (9, 4)] {
            let r = dicke_persistency(n, m).unwrap();
            assert!(r.persistency_lower_bound() >= 2, "({n},{m})");
            assert!(r.margin > 1.0);
        }
        let r = dicke_persistency(4, 1).unwrap();
        assert_eq!(r.max_traced, 0);
    }

    #[test]
    fn dicke_asymptotic_m1() {
        let frac = dicke_asymptotic(1, &(5..=40).collect::<Vec<_>>()).unwrap();
        assert!((frac - 1.0 / 3.0).abs() < 0.02 / 3.0);
    }

    proptest! {
        #[test]
        fn dicke_exchange_symmetry(n in 2usize..=24, m in 0usize..=24) {
            prop_assume!(m <= n);
            prop_assert_eq!(dicke_persistency(n, m).unwrap(), dicke_persistency(n, n - m).unwrap());
        }

        #[test]
        fn gamma_residual(a in 1.0001f64..64.0) {
            let g = gamma_crit(a).unwrap();
            let f = |x: f64| binary_entropy(x).unwrap() - x * a.log2();
            prop_assert!(f(g).abs() < 1e-8);
            if g + 1e-4 <= 1.0 {
                prop_assert!(f(g + 1e-4) < 0.0);
            }
        }
    }
}
