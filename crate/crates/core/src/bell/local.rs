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

//! Exhaustive local-realistic maximum over deterministic strategies.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::BellFunctional;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest `parties × settings` product enumerated exhaustively.
pub const LR_MAX_STRATEGY_BITS: usize = 16;

/// Deterministic local strategy: `signs[i][s]` is party `i`'s ±1 answer to setting `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategy {
    pub signs: Vec<Vec<i8>>,
}

impl Strategy {
    fn from_bits(bits: u32, n: usize, d: usize) -> Self {
        let signs =
            (0..n).map(|i| (0..d).map(|s| if bits >> (i * d + s) & 1 == 1 { -1 } else { 1 }).collect()).collect();
        Self { signs }
    }

    /// `Σ_s g(s) Π_i signs[i][s_i]`.
    pub fn evaluate<T: Real>(&self, f: &BellFunctional<T>) -> Result<T> {
        if self.signs.len() != f.n_parties() {
            return Err(Error::Shape { expected: f.n_parties(), got: self.signs.len() });
        }
        let mut total = T::zero();
        for (settings, g) in f.nonzero() {
            let neg = settings.iter().enumerate().filter(|(i, &s)| self.signs[*i][s] < 0).count();
            total = if neg % 2 == 0 { total + g } else { total - g };
        }
        Ok(total)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalOptimum<T> {
    pub value: T,
    pub strategy: Strategy,
}

/// Maximum of the functional over all `2^(n·d)` deterministic ±1 assignments.
pub fn lr_max<T: Real>(f: &BellFunctional<T>) -> Result<LocalOptimum<T>> {
    let (n, d) = (f.n_parties(), f.settings_per_party());
    if n * d > LR_MAX_STRATEGY_BITS {
        return Err(Error::capability(format!(
            "exhaustive local maximum limited to parties × settings <= {LR_MAX_STRATEGY_BITS}, got {}",
            n * d
        )));
    }
    // Each nonzero term flips sign iff the strategy answers -1 an odd number of
    // times on the bits that term reads.
    let terms: Vec<(u32, T)> = f
        .nonzero()
        .map(|(settings, g)| {
            let mask = settings.iter().enumerate().fold(0u32, |m, (i, &s)| m | 1 << (i * d + s));
            (mask, g)
        })
        .collect();
    let eval = |bits: u32| {
        terms.iter().fold(
            T::zero(),
            |acc, &(mask, g)| {
                if (bits & mask).count_ones() % 2 == 0 {
                    acc + g
                } else {
                    acc - g
                }
            },
        )
    };
    let count: u32 = 1 << (n * d);
    let (value, bits) = (0..count)
        .into_par_iter()
        .map(|b| (eval(b), b))
        .reduce(|| (T::neg_infinity(), u32::MAX), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
    Ok(LocalOptimum { value, strategy: Strategy::from_bits(bits, n, d) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::makb;

    #[test]
    fn chsh_local_bound() {
        let f = makb::<f64>(2).unwrap();
        let opt = lr_max(&f).unwrap();
        assert!((opt.value - 1.0).abs() < 1e-12);
        assert!((opt.strategy.evaluate(&f).unwrap() - opt.value).abs() < 1e-12);
    }

    #[test]
    fn nonnegative_coefficients_saturate() {
        let f = BellFunctional::<f64>::new(3, 2, vec![0.5, 0.0, 1.0, 2.0, 0.25, 0.0, 3.0, 1.0]).unwrap();
        let opt = lr_max(&f).unwrap();
        assert!((opt.value - f.abs_sum()).abs() < 1e-12);
    }

    #[test]
    fn capability_limit() {
        let f = makb::<f64>(9).unwrap();
        assert!(matches!(lr_max(&f), Err(Error::Capability(_))));
    }

    #[test]
    fn matches_naive_enumeration() {
        let f = BellFunctional::new(2, 3, vec![1.0, -2.0, 0.5, 0.0, 1.5, -1.0, 2.0, 0.25, -0.75]).unwrap();
        let mut best = f64::NEG_INFINITY;
        for bits in 0..64u32 {
            let v = Strategy::from_bits(bits, 2, 3).evaluate(&f).unwrap();
            best = best.max(v);
        }
        assert!((lr_max(&f).unwrap().value - best).abs() < 1e-12);
    }
}
