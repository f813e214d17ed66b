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

//! Geometric Bell inequalities with x–y plane settings.
//!
//! The quantum part is `∫|cos(2π Σα)| = 2/π` for every `N`; the classical part
//! `C_N` is the zigzag number `E_N` over `N!`. `C_N` is also computed a second,
//! independent way by exact piecewise-polynomial integration of its defining
//! sign integral.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::BellFunctional;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest `N` accepted by [`gbi_classical`].
pub const GBI_CLASSICAL_MAX: usize = 1000;
const INTEGRATION_MAX: usize = 14;

/// `E_0, …, E_max` (1, 1, 1, 2, 5, 16, 61, …) by the boustrophedon recursion.
pub fn zigzag_numbers(max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for n in 1..=max {
        let mut next = Vec::with_capacity(n + 1);
        next.push(BigInt::zero());
        for k in 1..=n {
            let v = &next[k - 1] + &row[n - k];
            next.push(v);
        }
        out.push(next[n].clone());
        row = next;
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn check_range(n: usize, max: usize) -> Result<()> {
    if !(2..=max).contains(&n) {
        return Err(Error::Size { got: n, min: 2, max });
    }
    Ok(())
}

/// Quantum part `Q_N = 2/π`.
pub fn gbi_quantum<T: Real>(n: usize) -> Result<T> {
    if n < 2 {
        return Err(Error::Size { got: n, min: 2, max: usize::MAX });
    }
    Ok(T::FRAC_2_PI())
}

/// Optimal classical part `C_N = E_N / N!` in lowest terms.
pub fn gbi_classical(n: usize) -> Result<BigRational> {
    check_range(n, GBI_CLASSICAL_MAX)?;
    let e = zigzag_numbers(n).pop().expect("non-empty");
    Ok(BigRational::new(e, factorial(n)))
}

/// `C_N` from `2^N ∫ dα_1 ∫_0^{1/2} dα_2 … ∫_0^{1/2} dα_N sign cos(2π Σα)`
/// with `α_1` over the half period `[-N/4, (-N+2)/4]`.
///
/// With `u = 4α` every breakpoint is an integer, so densities are stored as
/// one polynomial per unit interval and convolved exactly.
pub fn gbi_classical_by_integration(n: usize) -> Result<BigRational> {
    check_range(n, INTEGRATION_MAX)?;
    let mut density = UnitPieces::indicator(-(n as i64), 2);
    for _ in 1..n {
        density = density.convolve_indicator(0, 2);
    }
    // sign cos(πu/2) is +1 on (-1, 1) mod 4 and -1 on (1, 3) mod 4.
    let signed = density.integrate_weighted(|j| if matches!(j.rem_euclid(4), 0 | 3) { 1 } else { -1 });
    let scale = BigRational::new(BigInt::one() << n, BigInt::one() << (2 * n));
    Ok(signed * scale)
}

/// Quantum-to-classical ratio `(2/π) / C_N`.
pub fn gbi_qcr<T: Real>(n: usize) -> Result<T> {
    let c = gbi_classical(n)?;
    let c = ratio_to_f64(&c);
    Ok(T::lit(std::f64::consts::FRAC_2_PI / c))
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Discretized continuum functional: `d` uniformly spaced settings
/// `α = j/d` per party and coefficients `cos(2π Σ α_i)`.
pub fn gbi_functional<T: Real>(n: usize, d: usize) -> Result<BellFunctional<T>> {
    if n < 2 {
        return Err(Error::Size { got: n, min: 2, max: usize::MAX });
    }
    let len = d.checked_pow(n as u32).ok_or_else(|| Error::capability("settings table too large"))?;
    let coeffs = (0..len)
        .map(|mut idx| {
            let mut total = 0usize;
            for _ in 0..n {
                total += idx % d;
                idx /= d;
            }
            let turns = T::from_usize(total % d).unwrap() / T::from_usize(d).unwrap();
            let c = (T::two_pi() * turns).cos();
            // Exact zeros keep the support (and hence the dealt distribution) clean.
            if c.abs() < T::lit(1e-14) {
                T::zero()
            } else {
                c
            }
        })
        .collect();
    BellFunctional::new(n, d, coeffs)
}

/// Piecewise polynomial with integer breakpoints: piece `lo + i` lives on
/// `[lo + i, lo + i + 1]` as a polynomial in the local coordinate `t ∈ [0, 1]`.
#[derive(Debug, Clone)]
struct UnitPieces {
    lo: i64,
    pieces: Vec<Vec<BigRational>>,
}

fn poly_eval_one(p: &[BigRational]) -> BigRational {
    p.iter().fold(BigRational::zero(), |a, c| a + c)
}

fn antiderivative(p: &[BigRational]) -> Vec<BigRational> {
    std::iter::once(BigRational::zero())
        .chain(p.iter().enumerate().map(|(i, c)| c / BigRational::from_integer(BigInt::from(i + 1))))
        .collect()
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

impl UnitPieces {
    fn indicator(lo: i64, width: usize) -> Self {
        Self { lo, pieces: vec![vec![BigRational::one()]; width] }
    }

    fn hi(&self) -> i64 {
        self.lo + self.pieces.len() as i64 - 1
    }

    /// `h(y) = ∫_{y-a-w}^{y-a} f = F(y-a) - F(y-a-w)` with `F` the running integral.
    fn convolve_indicator(&self, a: i64, w: i64) -> Self {
        let mut cumulative = Vec::with_capacity(self.pieces.len());
        let mut acc = BigRational::zero();
        for p in &self.pieces {
            let mut ap = antiderivative(p);
            let end = poly_eval_one(&ap);
            ap[0] += &acc;
            acc += end;
            cumulative.push(ap);
        }
        let total = acc;
        let running = |k: i64| -> Vec<BigRational> {
            if k < self.lo {
                vec![BigRational::zero()]
            } else if k > self.hi() {
                vec![total.clone()]
            } else {
                cumulative[(k - self.lo) as usize].clone()
            }
        };
        let lo = self.lo + a;
        let hi = self.hi() + a + w;
        let pieces = (lo..=hi).map(|j| poly_sub(&running(j - a), &running(j - a - w))).collect();
        Self { lo, pieces }
    }

    fn integrate_weighted(&self, weight: impl Fn(i64) -> i64) -> BigRational {
        self.pieces.iter().enumerate().fold(BigRational::zero(), |acc, (i, p)| {
            let area = poly_eval_one(&antiderivative(p));
            acc + area * BigRational::from_integer(BigInt::from(weight(self.lo + i as i64)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn zigzag_prefix() {
        let e: Vec<i64> = zigzag_numbers(10).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(e, vec![1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521]);
    }

    #[test]
    fn classical_parts() {
        let want = [q(1, 2), q(1, 3), q(5, 24), q(2, 15), q(61, 720), q(17, 315)];
        for (n, w) in (2..=7).zip(want) {
            assert_eq!(gbi_classical(n).unwrap(), w);
        }
        assert!(gbi_classical(1).is_err());
        assert!(gbi_classical(GBI_CLASSICAL_MAX + 1).is_err());
    }

    #[test]
    fn integration_route_agrees() {
        for n in 2..=9 {
            assert_eq!(gbi_classical_by_integration(n).unwrap(), gbi_classical(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn qcr_values() {
        let pi = std::f64::consts::PI;
        assert!((gbi_qcr::<f64>(2).unwrap() - 4.0 / pi).abs() < 1e-12);
        assert!((gbi_qcr::<f64>(6).unwrap() - 1440.0 / (61.0 * pi)).abs() < 1e-12);
        let r = gbi_qcr::<f64>(20).unwrap() / gbi_qcr::<f64>(19).unwrap();
        assert!((r - pi / 2.0).abs() < 1e-3);
        assert_eq!(gbi_quantum::<f64>(7).unwrap(), 2.0 / pi);
    }

    #[test]
    fn discretized_functional() {
        let f = gbi_functional::<f64>(2, 4).unwrap();
        // Settings sum to a quarter turn → cos = 0.
        assert_eq!(f.coefficient(&[0, 1]).unwrap(), 0.0);
        assert_eq!(f.coefficient(&[1, 1]).unwrap(), -1.0);
        assert_eq!(f.nonzero_count(), 8);
    }
}
