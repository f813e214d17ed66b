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

//! Bell-correlation persistency toolkit.
//!
//! Dense small-register states, Dicke reduced mixtures, Bell functionals and
//! their local and quantum values, anticommutativity-graph monogamy bounds,
//! symmetrized persistency solvers, and communication-complexity games.
//!
//! Numerical code is generic over [`scalar::Real`] (`f32`, `f64`) and, where
//! the algebra is rational, over [`scalar::Scalar`] including `BigRational`.

pub mod bell;
pub mod dicke;
pub mod error;
pub mod monogamy;
pub mod persistency;
pub mod qccr;
pub mod qstate;
pub mod scalar;

pub use error::{Error, Result};
pub use num_rational::BigRational;

/// Dense state in double precision.
pub type DenseState64 = qstate::DenseState<f64>;
/// Dense state in single precision.
pub type DenseState32 = qstate::DenseState<f32>;
/// Bell functional in double precision.
pub type BellFunctional64 = bell::BellFunctional<f64>;
/// Dicke mixture with exact weights.
pub type DickeMixtureExact = dicke::DickeMixture<BigRational>;
/// Dicke mixture in double precision.
pub type DickeMixture64 = dicke::DickeMixture<f64>;
/// Symmetric x/z correlations with exact values.
pub type SymCorrelationExact = dicke::SymCorrelation<BigRational>;
