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

//! Scalar abstractions.
//!
//! Floating-point code is written against [`Real`] (implemented for `f32` and
//! `f64`). Combinatorial sums that must decide strict inequalities at exact
//! ties are written against [`Scalar`], so the same code runs on `f64` for
//! speed and on [`BigRational`] for certification.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Floating point: f32 or f64.
pub trait Real: Float + FloatConst + FromPrimitive + Scalar + Debug + Default + Send + Sync + 'static {
    /// Converts an `f64` literal; panics only for types that cannot hold it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    fn two_pi() -> Self {
        Self::TAU()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Field-like scalar used by the closed-form combinatorial code paths.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync {
    /// Lossy view used for interpolation and reporting.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable")
    }

    /// `n` choose `k`, zero outside `0 <= k <= n`.
    fn binomial(n: i64, k: i64) -> Self {
        if k < 0 || n < 0 || k > n {
            return Self::zero();
        }
        let k = k.min(n - k);
        let mut acc = Self::one();
        for i in 0..k {
            acc = acc * Self::from_i64(n - i).expect("representable") / Self::from_i64(i + 1).expect("representable");
        }
        acc
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for BigRational {
    fn binomial(n: i64, k: i64) -> Self {
        BigRational::from_integer(binomial_int(n, k))
    }
}

/// Exact binomial coefficient.
pub fn binomial_int(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Natural log of `n!` for every `n <= max`, accumulated in double precision.
pub fn ln_factorials(max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..=max {
        acc += (i as f64).ln();
        out.push(acc);
    }
    out
}

/// Exact rational view of a finite `f64`.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}
