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

//! Full-correlation two-setting Bell operators, one per sign function.
//!
//! For a sign function `S` over `s ∈ {±1}^N` the operator is
//! `2^{-N} Σ_s S(s) ⊗_i (A_i + s_i A′_i)`, bounded by one in local models.

use serde::Serialize;

use crate::dicke::SymCorrelation;
use crate::error::{Error, Result};
use crate::qstate::{DenseState, Pauli, PlaneObservable};
use crate::scalar::{Real, Scalar};

use super::BellFunctional;

/// Party limit for operators built from dense correlators.
pub const WWWZB_MAX_PARTIES: usize = 6;
/// Party limit for enumerating all `2^(2^N)` sign functions.
pub const WWWZB_ENUMERATION_MAX: usize = 4;

/// `S(s_1, …, s_N) = ±1`, indexed with bit `N-1-i` set when `s_i = -1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignFunction {
    n: usize,
    signs: Vec<i8>,
}

impl SignFunction {
    pub fn new(n: usize, signs: Vec<i8>) -> Result<Self> {
        if n == 0 || n > WWWZB_MAX_PARTIES {
            return Err(Error::Size { got: n, min: 1, max: WWWZB_MAX_PARTIES });
        }
        if signs.len() != 1 << n {
            return Err(Error::Shape { expected: 1 << n, got: signs.len() });
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::domain("sign function entries must be ±1"));
        }
        Ok(Self { n, signs })
    }

    /// Entry `s` is `-1` when bit `s` of `bits` is set.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        Self::new(n, (0..1usize << n.min(6)).map(|s| if bits >> s & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn constant(n: usize) -> Result<Self> {
        Self::new(n, vec![1; 1 << n.min(63)])
    }

    /// Signs reproducing CHSH: `S = -1` only at `s = (-1, -1)`.
    pub fn chsh() -> Self {
        Self { n: 2, signs: vec![1, 1, 1, -1] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Expands the operator into coefficients over settings (`0 = A`, `1 = A′`).
    pub fn to_functional<T: Real>(&self) -> Result<BellFunctional<T>> {
        let len = 1usize << self.n;
        let scale = T::one() / T::from_usize(len).unwrap();
        let coeffs = (0..len)
            .map(|t| {
                let sum: i64 = (0..len)
                    .map(|s| {
                        let parity = if (t & s).count_ones() % 2 == 0 { 1 } else { -1 };
                        self.signs[s] as i64 * parity
                    })
                    .sum();
                T::from_i64(sum).unwrap() * scale
            })
            .collect();
        BellFunctional::new(self.n, 2, coeffs)
    }
}

fn check_pairs<T>(state_n: usize, observables: &[Vec<PlaneObservable<T>>]) -> Result<()> {
    if state_n > WWWZB_MAX_PARTIES {
        return Err(Error::Size { got: state_n, min: 1, max: WWWZB_MAX_PARTIES });
    }
    if observables.len() != state_n {
        return Err(Error::Shape { expected: state_n, got: observables.len() });
    }
    if let Some(bad) = observables.iter().find(|o| o.len() != 2) {
        return Err(Error::Shape { expected: 2, got: bad.len() });
    }
    Ok(())
}

/// In-place Walsh–Hadamard transform: `out[s] = Σ_t (-1)^{|s∧t|} in[t]`.
fn walsh<T: Real>(v: &mut [T]) {
    let mut h = 1;
    while h < v.len() {
        for base in (0..v.len()).step_by(2 * h) {
            for i in base..base + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// `W(s) = ⟨⊗_i (A_i + s_i A′_i)⟩` for every sign pattern `s`.
pub fn wwwzb_terms<T: Real>(state: &DenseState<T>, observables: &[Vec<PlaneObservable<T>>]) -> Result<Vec<T>> {
    let n = state.n_qubits();
    check_pairs(n, observables)?;
    let mats: Vec<[_; 2]> = observables.iter().map(|o| [o[0].matrix(), o[1].matrix()]).collect();
    let mut corr = (0..1usize << n)
        .map(|t| {
            let ops: Vec<_> = (0..n).map(|i| mats[i][t >> (n - 1 - i) & 1]).collect();
            state.expectation(&ops)
        })
        .collect::<Result<Vec<T>>>()?;
    walsh(&mut corr);
    Ok(corr)
}

/// Mean value of the operator for sign function `sign`.
pub fn wwwzb_value<T: Real>(
    sign: &SignFunction,
    state: &DenseState<T>,
    observables: &[Vec<PlaneObservable<T>>],
) -> Result<T> {
    if sign.n != state.n_qubits() {
        return Err(Error::Shape { expected: state.n_qubits(), got: sign.n });
    }
    let w = wwwzb_terms(state, observables)?;
    let scale = T::one() / T::from_usize(w.len()).unwrap();
    Ok(sign.signs.iter().zip(&w).fold(T::zero(), |acc, (&s, &x)| if s > 0 { acc + x } else { acc - x }) * scale)
}

/// Largest `|value|` over every sign function, by enumeration.
pub fn wwwzb_max<T: Real>(state: &DenseState<T>, observables: &[Vec<PlaneObservable<T>>]) -> Result<T> {
    let n = state.n_qubits();
    if n > WWWZB_ENUMERATION_MAX {
        return Err(Error::capability(format!("sign-function enumeration limited to {WWWZB_ENUMERATION_MAX} parties")));
    }
    let w = wwwzb_terms(state, observables)?;
    let scale = T::one() / T::from_usize(w.len()).unwrap();
    let count: u64 = 1 << w.len();
    let mut best = T::zero();
    for bits in 0..count {
        let v = w.iter().enumerate().fold(T::zero(), |acc, (s, &x)| if bits >> s & 1 == 1 { acc - x } else { acc + x });
        best = best.max(v.abs());
    }
    Ok(best * scale)
}

/// `2^{-N} Σ_s |W(s)|`: the best sign function matches each term's sign.
pub fn wwwzb_max_closed_form<T: Real>(state: &DenseState<T>, observables: &[Vec<PlaneObservable<T>>]) -> Result<T> {
    let w = wwwzb_terms(state, observables)?;
    let scale = T::one() / T::from_usize(w.len()).unwrap();
    Ok(w.iter().fold(T::zero(), |a, x| a + x.abs()) * scale)
}

/// Necessary condition for violating some operator of the family: the sum of
/// squared x/z correlations exceeds one.
pub fn violation_indicator<S: Scalar>(sym: &SymCorrelation<S>) -> bool {
    sym.squared_sum() > S::one()
}

/// Best x–z plane settings found for a state.
#[derive(Debug, Clone, PartialEq)]
pub struct XzOptimum<T> {
    /// `[β_i, β′_i]` per party, radians.
    pub angles: Vec<[T; 2]>,
    pub value: T,
}

impl<T: Real> XzOptimum<T> {
    pub fn observables(&self) -> Vec<Vec<PlaneObservable<T>>> {
        self.angles.iter().map(|a| vec![PlaneObservable::xz(a[0]), PlaneObservable::xz(a[1])]).collect()
    }
}

/// Correlations `T_j` over all x/z strings, bit `N-1-i` set for `σz` on party `i`.
struct XzTensor<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Real> XzTensor<T> {
    fn of(state: &DenseState<T>) -> Result<Self> {
        let n = state.n_qubits();
        let values = (0..1usize << n)
            .map(|j| {
                let ops: Vec<_> = (0..n)
                    .map(|i| if j >> (n - 1 - i) & 1 == 1 { Pauli::Z.matrix() } else { Pauli::X.matrix() })
                    .collect();
                state.expectation(&ops)
            })
            .collect::<Result<_>>()?;
        Ok(Self { n, values })
    }

    fn objective(&self, angles: &[[T; 2]]) -> T {
        let n = self.n;
        let trig: Vec<[[T; 2]; 2]> = angles
            .iter()
            .map(|a| {
                let (s0, c0) = a[0].sin_cos();
                let (s1, c1) = a[1].sin_cos();
                [[c0, s0], [c1, s1]]
            })
            .collect();
        let mut corr: Vec<T> = (0..1usize << n)
            .map(|t| {
                self.values.iter().enumerate().fold(T::zero(), |acc, (j, &tj)| {
                    let prod = (0..n).fold(tj, |p, i| p * trig[i][t >> (n - 1 - i) & 1][j >> (n - 1 - i) & 1]);
                    acc + prod
                })
            })
            .collect();
        walsh(&mut corr);
        let scale = T::one() / T::from_usize(corr.len()).unwrap();
        corr.iter().fold(T::zero(), |a, x| a + x.abs()) * scale
    }
}

const GRID: usize = 32;

/// Maximizes [`wwwzb_max_closed_form`] over x–z plane settings: cyclic sweeps of
/// a 32-point grid per angle, then coordinate descent with a shrinking step.
pub fn optimize_wwwzb_xz<T: Real>(state: &DenseState<T>) -> Result<XzOptimum<T>> {
    let n = state.n_qubits();
    if n > WWWZB_MAX_PARTIES {
        return Err(Error::Size { got: n, min: 1, max: WWWZB_MAX_PARTIES });
    }
    let tensor = XzTensor::of(state)?;
    let pi = T::PI();
    let starts =
        [(T::zero(), pi / T::lit(2.0)), (pi / T::lit(4.0), -pi / T::lit(4.0)), (pi / T::lit(8.0), pi * T::lit(0.625))];
    let mut best: Option<XzOptimum<T>> = None;
    for (b0, b1) in starts {
        let mut angles = vec![[b0, b1]; n];
        let mut value = tensor.objective(&angles);
        for _ in 0..16 {
            let before = value;
            for i in 0..n {
                for k in 0..2 {
                    let mut best_here = (value, angles[i][k]);
                    for g in 0..GRID {
                        angles[i][k] = T::from_usize(g).unwrap() * T::two_pi() / T::from_usize(GRID).unwrap();
                        let v = tensor.objective(&angles);
                        if v > best_here.0 {
                            best_here = (v, angles[i][k]);
                        }
                    }
                    (value, angles[i][k]) = best_here;
                }
            }
            if value <= before {
                break;
            }
        }
        let mut step = T::two_pi() / T::from_usize(GRID).unwrap();
        while step > T::lit(1e-10) {
            let mut moved = false;
            for i in 0..n {
                for k in 0..2 {
                    for dir in [step, -step] {
                        let keep = angles[i][k];
                        angles[i][k] = keep + dir;
                        let v = tensor.objective(&angles);
                        if v > value {
                            value = v;
                            moved = true;
                        } else {
                            angles[i][k] = keep;
                        }
                    }
                }
            }
            if !moved {
                step = step / T::lit(2.0);
            }
        }
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(XzOptimum { angles, value });
        }
    }
    Ok(best.expect("at least one start"))
}
