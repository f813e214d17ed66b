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

//! Bell functionals over discrete settings and their local-realistic and
//! quantum values.

mod functional;
mod gbi;
mod local;
mod makb;
mod wwwzb;

pub use functional::{BellFunctional, BellFunctionalJson, SettingsIter};
pub use gbi::{
    gbi_classical, gbi_classical_by_integration, gbi_functional, gbi_qcr, gbi_quantum, zigzag_numbers,
    GBI_CLASSICAL_MAX,
};
pub use local::{lr_max, LocalOptimum, Strategy, LR_MAX_STRATEGY_BITS};
pub use makb::{makb, makb_quoted_settings, makb_symmetric_optimum, SymmetricSettings, MAKB_MAX_PARTIES};
pub use wwwzb::{
    optimize_wwwzb_xz, violation_indicator, wwwzb_max, wwwzb_max_closed_form, wwwzb_terms, wwwzb_value, SignFunction,
    XzOptimum, WWWZB_ENUMERATION_MAX, WWWZB_MAX_PARTIES,
};

use crate::error::{Error, Result};
use crate::qstate::{DenseState, PlaneObservable};
use crate::scalar::Real;

/// `Σ_s g(s) · ⟨⊗_i A_i(s_i)⟩`, with `observables[i][s]` the observable party
/// `i` measures for setting `s`.
pub fn quantum_value<T: Real>(
    f: &BellFunctional<T>,
    state: &DenseState<T>,
    observables: &[Vec<PlaneObservable<T>>],
) -> Result<T> {
    let n = f.n_parties();
    if state.n_qubits() != n {
        return Err(Error::Shape { expected: n, got: state.n_qubits() });
    }
    if observables.len() != n {
        return Err(Error::Shape { expected: n, got: observables.len() });
    }
    let d = f.settings_per_party();
    if let Some(bad) = observables.iter().find(|o| o.len() != d) {
        return Err(Error::Shape { expected: d, got: bad.len() });
    }
    let mats: Vec<Vec<_>> = observables.iter().map(|o| o.iter().map(|a| a.matrix()).collect()).collect();
    let mut total = T::zero();
    let mut ops = Vec::with_capacity(n);
    for (settings, g) in f.nonzero() {
        ops.clear();
        ops.extend(settings.iter().enumerate().map(|(i, &s)| mats[i][s]));
        total = total + g * state.expectation(&ops)?;
    }
    Ok(total)
}

/// Quantum value on `|GHZ_n⟩` for x–y plane settings given in turns, using
/// `⟨GHZ_n| ⊗_i A_i |GHZ_n⟩ = cos(2π Σ_i α_i)`.
pub fn ghz_value_xy<T: Real>(f: &BellFunctional<T>, turns: &[Vec<T>]) -> Result<T> {
    let n = f.n_parties();
    if turns.len() != n {
        return Err(Error::Shape { expected: n, got: turns.len() });
    }
    let mut total = T::zero();
    for (settings, g) in f.nonzero() {
        let sum = settings.iter().enumerate().fold(T::zero(), |acc, (i, &s)| acc + turns[i][s]);
        total = total + g * (T::two_pi() * sum).cos();
    }
    Ok(total)
}
