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

//! The recursive MAKB family.

use super::BellFunctional;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const MAKB_MAX_PARTIES: usize = 16;

/// Builds `B_n` over settings `0 = A`, `1 = A′`.
///
/// `B_2 = ½(A₁(A₂+A₂′) + A₁′(A₂−A₂′))`, and each new party `i+1` enters as
/// `½((A+A′)⊗B_i + (A−A′)⊗B̄_i)` where `B̄_i` swaps primed and unprimed settings
/// of the first `i` parties.
pub fn makb<T: Real>(n: usize) -> Result<BellFunctional<T>> {
    if !(2..=MAKB_MAX_PARTIES).contains(&n) {
        return Err(Error::Size { got: n, min: 2, max: MAKB_MAX_PARTIES });
    }
    let half = T::lit(0.5);
    let mut coeffs = vec![half, half, half, -half];
    for i in 2..n {
        let full = (1usize << i) - 1;
        let mut next = vec![T::zero(); coeffs.len() * 2];
        for (s, &c) in coeffs.iter().enumerate() {
            let swapped = coeffs[full ^ s];
            next[2 * s] = half * (c + swapped);
            next[2 * s + 1] = half * (c - swapped);
        }
        coeffs = next;
    }
    BellFunctional::new(n, 2, coeffs)
}

/// The permutation-symmetric x–y plane settings quoted for the MAKB family:
/// `α = 1/(8n)`, `α′ = (2n+1)/(8n)` turns.
pub fn makb_quoted_settings<T: Real>(n: usize) -> (T, T) {
    let d = T::from_usize(8 * n).unwrap();
    (T::one() / d, T::from_usize(2 * n + 1).unwrap() / d)
}

/// Best symmetric x–y setting pair on `|GHZ_n⟩` within the lattice
/// `α = r/(8n)`, `α′ = α ± 1/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricSettings<T> {
    pub a_turns: T,
    pub a_prime_turns: T,
    pub ghz_value: T,
}

/// Scans the `16n` lattice pairs `α = r/(8n)`, `α′ = α ± 1/4` (the quoted
/// pair is `r = 1`, `+1/4`) and returns the one maximizing the GHZ value.
///
/// The GHZ correlator depends only on `nα + j(α′−α)` for a term with `j`
/// primed settings, so the scan works on per-`j` coefficient totals.
pub fn makb_symmetric_optimum<T: Real>(n: usize) -> Result<SymmetricSettings<T>> {
    let f = makb::<T>(n)?;
    let mut by_primes = vec![T::zero(); n + 1];
    for (settings, g) in f.nonzero() {
        let j = settings.iter().filter(|&&s| s == 1).count();
        by_primes[j] = by_primes[j] + g;
    }
    let steps = 8 * n;
    let quarter = T::lit(0.25);
    let value = |alpha: T, delta: T| {
        by_primes.iter().enumerate().fold(T::zero(), |acc, (j, &cj)| {
            let phase = T::from_usize(n).unwrap() * alpha + T::from_usize(j).unwrap() * delta;
            acc + cj * (T::two_pi() * phase).cos()
        })
    };
    let mut best: Option<SymmetricSettings<T>> = None;
    for r in 0..steps {
        for delta in [quarter, -quarter] {
            let alpha = T::from_usize(r).unwrap() / T::from_usize(steps).unwrap();
            let v = value(alpha, delta);
            if best.is_none_or(|b| v > b.ghz_value + T::lit(1e-12)) {
                best = Some(SymmetricSettings { a_turns: alpha, a_prime_turns: alpha + delta, ghz_value: v });
            }
        }
    }
    Ok(best.expect("non-empty lattice"))
}
