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

//! Closed-form reduced Dicke states and their x/z correlation sums.
//!
//! Tracing `L` of `N` parties from `|D_{N,M}⟩` leaves a mixture of Dicke states
//! on `N - L` qubits, and every x/z correlation component of a Dicke state
//! depends only on how many `σx` letters it contains. Both facts reduce the
//! `2^(N-L)`-term correlation sum to a polynomial-size computation, generic
//! over the scalar so it can run in `f64` or exactly in [`BigRational`].
//!
//! [`BigRational`]: num_rational::BigRational

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Pascal's triangle up to a fixed row, in the scalar of the computation.
#[derive(Debug, Clone)]
pub struct BinomialTable<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> BinomialTable<S> {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<S>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![S::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(S::one());
            for k in 1..n {
                row.push(prev[k - 1].clone() + prev[k].clone());
            }
            row.push(S::one());
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `n` choose `k`; zero when `k` is negative or exceeds `n`.
    pub fn get(&self, n: usize, k: i64) -> S {
        if k < 0 || k as usize > n {
            return S::zero();
        }
        self.rows[n][k as usize].clone()
    }
}

/// `Tr_L |D_{N,M}⟩⟨D_{N,M}|` as a weighted list of Dicke states on `n` qubits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DickeMixture<S> {
    n: usize,
    /// `(zeros-count, weight)`, weights summing to one.
    components: Vec<(usize, S)>,
}

impl<S: Scalar> DickeMixture<S> {
    /// Validates weights (non-negative, summing to one within `1e-12`).
    pub fn new(n: usize, components: Vec<(usize, S)>) -> Result<Self> {
        let mut total = S::zero();
        for (m, w) in &components {
            if *m > n {
                return Err(Error::domain(format!("component zeros-count {m} exceeds {n}")));
            }
            if *w < S::zero() {
                return Err(Error::domain("negative component weight"));
            }
            total = total + w.clone();
        }
        if (total.to_f64_lossy() - 1.0).abs() > 1e-12 {
            return Err(Error::domain("component weights do not sum to one"));
        }
        Ok(Self { n, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[(usize, S)] {
        &self.components
    }
}

/// Symmetric x/z correlation tensor: `values[k]` is the common value of every
/// component with `k` letters `σx` and `n - k` letters `σz`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymCorrelation<S> {
    n: usize,
    values: Vec<S>,
}

impl<S: Scalar> SymCorrelation<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// `Σ_k C(n,k) · values[k]²`: the sum of squares over all `2^n` x/z strings.
    pub fn squared_sum(&self) -> S {
        let table = BinomialTable::<S>::new(self.n);
        self.squared_sum_with(&table)
    }

    fn squared_sum_with(&self, table: &BinomialTable<S>) -> S {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .fold(S::zero(), |acc, (k, v)| acc + table.get(self.n, k as i64) * v.clone() * v.clone())
    }
}

fn check_params(total: usize, zeros: usize, traced: usize) -> Result<()> {
    if total == 0 {
        return Err(Error::domain("a Dicke state needs at least one party"));
    }
    if zeros > total {
        return Err(Error::domain(format!("zeros-count {zeros} exceeds {total} parties")));
    }
    if traced >= total {
        return Err(Error::domain(format!("cannot trace {traced} of {total} parties")));
    }
    Ok(())
}

fn reduced_with<S: Scalar>(table: &BinomialTable<S>, total: usize, zeros: usize, traced: usize) -> DickeMixture<S> {
    let n = total - traced;
    let norm = table.get(total, zeros as i64);
    let lo = zeros.saturating_sub(n);
    let hi = zeros.min(traced);
    // Ordered by the number `l` of zeros lost to the traced parties.
    let components = (lo..=hi)
        .map(|l| {
            let w = table.get(traced, l as i64) * table.get(n, (zeros - l) as i64) / norm.clone();
            (zeros - l, w)
        })
        .collect();
    DickeMixture { n, components }
}

/// Reduced state of `|D_{N,M}⟩` (`M` zeros) after tracing `L` parties.
pub fn reduced_dicke<S: Scalar>(total: usize, zeros: usize, traced: usize) -> Result<DickeMixture<S>> {
    check_params(total, zeros, traced)?;
    Ok(reduced_with(&BinomialTable::new(total), total, zeros, traced))
}

/// `⟨D_{n,m}| σx^{⊗k} ⊗ σz^{⊗(n-k)} |D_{n,m}⟩`.
///
/// `σx` on `k` qubits preserves the zeros-count only when exactly `k/2` of
/// them were zeros, so odd `k` vanish. Each surviving basis pair contributes
/// `1/C(n,m)` times the `σz` sign `(-1)^{#ones among the other n-k qubits}`.
fn component_value<S: Scalar>(table: &BinomialTable<S>, n: usize, m: usize, k: usize) -> S {
    if k % 2 == 1 {
        return S::zero();
    }
    let half = k / 2;
    if half > m || m - half > n - k {
        return S::zero();
    }
    let ones_rest = (n - k) - (m - half);
    let count = table.get(k, half as i64) * table.get(n - k, (m - half) as i64);
    let v = count / table.get(n, m as i64);
    if ones_rest % 2 == 1 {
        -v
    } else {
        v
    }
}

fn sym_correlation_with<S: Scalar>(table: &BinomialTable<S>, mix: &DickeMixture<S>) -> SymCorrelation<S> {
    let n = mix.n;
    let values = (0..=n)
        .map(|k| {
            mix.components.iter().fold(S::zero(), |acc, (m, w)| acc + w.clone() * component_value(table, n, *m, k))
        })
        .collect();
    SymCorrelation { n, values }
}

/// Symmetric x/z correlation tensor of a Dicke mixture.
pub fn sym_correlation<S: Scalar>(mix: &DickeMixture<S>) -> SymCorrelation<S> {
    sym_correlation_with(&BinomialTable::new(mix.n), mix)
}

/// `Σ_{M,L}(N)`: sum of squared x/z correlations of the `N - L` party reduction.
pub fn sigma_sum<S: Scalar>(total: usize, zeros: usize, traced: usize) -> Result<S> {
    check_params(total, zeros, traced)?;
    Ok(sigma_sum_with(&BinomialTable::new(total), total, zeros, traced))
}

/// [`sigma_sum`] against a precomputed table covering at least `total`.
pub fn sigma_sum_with<S: Scalar>(table: &BinomialTable<S>, total: usize, zeros: usize, traced: usize) -> S {
    let mix = reduced_with(table, total, zeros, traced);
    sym_correlation_with(table, &mix).squared_sum_with(table)
}

/// Interpolated crossing `Σ_{M,L}(N_0) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub zeros: usize,
    pub traced: usize,
    pub n0: f64,
    /// Largest scanned `N` with `Σ ≤ 1`, immediately below the crossing.
    pub below: usize,
    pub sigma_below: f64,
    pub sigma_above: f64,
}

/// Default upper end of the `N` scan for [`solve_n0`].
pub fn default_window_end(zeros: usize, traced: usize) -> usize {
    4 * traced + 4 * zeros + 64
}

/// Solves `Σ_{M,L}(N_0) = 1` for the crossing above which the x/z sum exceeds one.
///
/// `Σ` is evaluated at every integer `N` from `max(L+1, M)` upward; the first
/// `N` with `Σ(N) > 1` brackets the crossing with `N - 1`, and `N_0` is the
/// linear interpolation between them.
pub fn solve_n0(zeros: usize, traced: usize) -> Result<Crossing> {
    solve_n0_in(zeros, traced, default_window_end(zeros, traced))
}

pub fn solve_n0_in(zeros: usize, traced: usize, window_end: usize) -> Result<Crossing> {
    if traced == 0 {
        return Err(Error::domain("the crossing is defined for at least one traced party"));
    }
    let start = (traced + 1).max(zeros).max(1);
    let table = BinomialTable::<f64>::new(window_end);
    // Values within rounding of 1 are compared exactly, so crossings that land
    // on an integer bracket the same way every time.
    let compare = |total: usize, approx: f64| -> Result<Ordering> {
        if (approx - 1.0).abs() > 1e-9 {
            return Ok(if approx > 1.0 { Ordering::Greater } else { Ordering::Less });
        }
        Ok(sigma_sum::<BigRational>(total, zeros, traced)?.cmp(&BigRational::one()))
    };
    let mut prev = sigma_sum_with(&table, start, zeros, traced);
    let mut prev_cmp = compare(start, prev)?;
    for total in start + 1..=window_end {
        let cur = sigma_sum_with(&table, total, zeros, traced);
        let cur_cmp = compare(total, cur)?;
        if prev_cmp != Ordering::Greater && cur_cmp == Ordering::Greater {
            let frac = if prev_cmp == Ordering::Equal { 0.0 } else { ((1.0 - prev) / (cur - prev)).clamp(0.0, 1.0) };
            return Ok(Crossing {
                zeros,
                traced,
                n0: (total - 1) as f64 + frac,
                below: total - 1,
                sigma_below: prev,
                sigma_above: cur,
            });
        }
        prev = cur;
        prev_cmp = cur_cmp;
    }
    Err(Error::NotFound { lo: start, hi: window_end })
}

/// Least-squares line `N_0 ≈ slope · L + intercept`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineFit {
    pub zeros: usize,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square deviation of the points from the line.
    pub residual: f64,
    pub points: Vec<(usize, f64)>,
}

/// Default traced-party range for [`fit_n0_line`].
pub const DEFAULT_FIT_RANGE: std::ops::RangeInclusive<usize> = 5..=40;

pub fn fit_n0_line(zeros: usize, traced: &[usize]) -> Result<LineFit> {
    let mut ls = traced.to_vec();
    ls.sort_unstable();
    ls.dedup();
    if ls.len() < 2 {
        return Err(Error::domain("a line fit needs at least two distinct traced counts"));
    }
    let points = ls.par_iter().map(|&l| solve_n0(zeros, l).map(|c| (l, c.n0))).collect::<Result<Vec<_>>>()?;
    let (slope, intercept, residual) = least_squares(&points);
    Ok(LineFit { zeros, slope, intercept, residual, points })
}

fn least_squares(points: &[(usize, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0 as f64).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 as f64 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 as f64 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = points.iter().map(|p| (p.1 - slope * p.0 as f64 - intercept).powi(2)).sum();
    (slope, intercept, (rss / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{DenseState, Pauli};
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn reduced_dicke_examples() {
        let mix = reduced_dicke::<BigRational>(3, 1, 1).unwrap();
        assert_eq!(mix.n(), 2);
        assert_eq!(mix.components(), &[(1, q(2, 3)), (0, q(1, 3))]);

        let mix = reduced_dicke::<BigRational>(6, 4, 0).unwrap();
        assert_eq!(mix.components(), &[(4, q(1, 1))]);

        assert!(matches!(reduced_dicke::<f64>(3, 1, 3), Err(Error::Domain(_))));
        assert!(reduced_dicke::<f64>(3, 4, 0).is_err());
    }

    #[test]
    fn reduced_dicke_matches_dense_partial_trace() {
        for total in 2..=7 {
            for zeros in 0..=total {
                let dense = DenseState::<f64>::dicke(total, zeros).unwrap();
                for traced in 0..total {
                    let mix = reduced_dicke::<f64>(total, zeros, traced).unwrap();
                    let parts: Vec<_> =
                        mix.components().iter().map(|(m, w)| (*w, DenseState::dicke(mix.n(), *m).unwrap())).collect();
                    let closed = DenseState::mixture(&parts).unwrap();
                    let idx: Vec<usize> = (total - traced..total).collect();
                    let oracle = dense.partial_trace(&idx).unwrap();
                    assert!(closed.max_abs_diff(&oracle).unwrap() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn sym_correlation_examples() {
        let bell = reduced_dicke::<BigRational>(2, 1, 0).unwrap();
        let t = sym_correlation(&bell);
        assert_eq!(t.values(), &[q(-1, 1), q(0, 1), q(1, 1)]);

        let prod = reduced_dicke::<BigRational>(5, 5, 0).unwrap();
        let t = sym_correlation(&prod);
        assert_eq!(t.values()[0], q(1, 1));
        assert!(t.values()[1..].iter().all(|v| *v == q(0, 1)));
    }

    #[test]
    fn component_values_match_dense_oracle() {
        for n in 1..=8 {
            let table = BinomialTable::<f64>::new(n);
            for m in 0..=n {
                let state = DenseState::<f64>::dicke(n, m).unwrap();
                for k in 0..=n {
                    let mut ops = vec![Pauli::Z.matrix(); n];
                    ops[..k].fill(Pauli::X.matrix());
                    let oracle = state.expectation(&ops).unwrap();
                    let closed = component_value(&table, n, m, k);
                    assert!((oracle - closed).abs() < 1e-12, "n={n} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn sigma_sum_examples() {
        assert_eq!(sigma_sum::<BigRational>(2, 1, 0).unwrap(), q(2, 1));
        for n in 1..12 {
            assert_eq!(sigma_sum::<BigRational>(n, n, 0).unwrap(), q(1, 1));
        }
        assert!(sigma_sum::<BigRational>(5, 1, 1).unwrap() > q(1, 1));
        // Exactly on the threshold: W_4 with one party traced.
        assert_eq!(sigma_sum::<BigRational>(4, 1, 1).unwrap(), q(1, 1));
    }

    #[test]
    fn exact_and_float_sums_agree() {
        for total in 2..30 {
            for zeros in 0..=total {
                for traced in 0..total {
                    let e = sigma_sum::<BigRational>(total, zeros, traced).unwrap().to_f64().unwrap();
                    let f = sigma_sum::<f64>(total, zeros, traced).unwrap();
                    assert!((e - f).abs() <= 1e-10 * e.max(1.0));
                }
            }
        }
    }

    #[test]
    fn crossing_brackets() {
        let c = solve_n0(1, 5).unwrap();
        assert!((c.n0 - 16.0).abs() < 1e-9, "{c:?}");
        for (m, l) in [(2, 7), (3, 10), (4, 12)] {
            let c = solve_n0(m, l).unwrap();
            let below = sigma_sum::<f64>(c.n0.floor() as usize, m, l).unwrap();
            let above = sigma_sum::<f64>(c.n0.ceil() as usize, m, l).unwrap();
            assert!(below <= 1.0 && 1.0 < above, "{c:?}");
        }
        assert!(matches!(solve_n0(0, 3), Err(Error::NotFound { .. })));
        assert!(solve_n0(2, 0).is_err());
    }

    #[test]
    fn integer_crossings_are_exact() {
        for l in 1..=12 {
            let c = solve_n0(1, l).unwrap();
            assert_eq!(c.below, 3 * l + 1);
            assert_eq!(c.n0, (3 * l + 1) as f64);
        }
    }

    #[test]
    fn sigma_increases_past_the_crossing() {
        for m in 1..=4 {
            for l in [5, 12, 25] {
                let c = solve_n0(m, l).unwrap();
                let table = BinomialTable::<f64>::new(default_window_end(m, l));
                let vals: Vec<f64> =
                    (c.below..=default_window_end(m, l)).map(|n| sigma_sum_with(&table, n, m, l)).collect();
                assert!(vals.windows(2).all(|w| w[1] > w[0]), "M={m} L={l}");
            }
        }
    }

    #[test]
    fn fit_rejects_degenerate_ranges() {
        assert!(fit_n0_line(1, &[5, 5]).is_err());
        assert!(fit_n0_line(1, &[]).is_err());
        let f = fit_n0_line(1, &[5, 6, 7]).unwrap();
        assert!((f.slope - 3.0).abs() < 1e-9 && (f.intercept - 1.0).abs() < 1e-9);
    }
}
