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

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Coefficients `g(s)` over settings tuples together with the probability of
/// each tuple being dealt.
///
/// Tuples are stored densely, indexed with party 0 as the most significant
/// base-`d` digit.
#[derive(Debug, Clone, PartialEq)]
pub struct BellFunctional<T> {
    n_parties: usize,
    settings_per_party: usize,
    coefficients: Vec<T>,
    distribution: Vec<T>,
    lr_max: Option<T>,
}

impl<T: Real> BellFunctional<T> {
    /// Builds a functional whose settings are dealt with probability
    /// `|g(s)| / Σ|g|`, as in the communication-complexity game.
    pub fn new(n_parties: usize, settings_per_party: usize, coefficients: Vec<T>) -> Result<Self> {
        if n_parties == 0 || settings_per_party == 0 {
            return Err(Error::domain("a functional needs parties and settings"));
        }
        let len = settings_per_party
            .checked_pow(n_parties as u32)
            .filter(|&l| l <= 1 << 24)
            .ok_or_else(|| Error::capability("settings table too large"))?;
        if coefficients.len() != len {
            return Err(Error::Shape { expected: len, got: coefficients.len() });
        }
        let total = coefficients.iter().fold(T::zero(), |a, c| a + c.abs());
        if total.is_zero() {
            return Err(Error::domain("all coefficients vanish"));
        }
        let distribution = coefficients.iter().map(|c| c.abs() / total).collect();
        Ok(Self { n_parties, settings_per_party, coefficients, distribution, lr_max: None })
    }

    /// Replaces the settings distribution; entries must be non-negative and sum to one.
    pub fn with_distribution(mut self, distribution: Vec<T>) -> Result<Self> {
        if distribution.len() != self.coefficients.len() {
            return Err(Error::Shape { expected: self.coefficients.len(), got: distribution.len() });
        }
        if distribution.iter().any(|p| *p < T::zero()) {
            return Err(Error::domain("negative settings probability"));
        }
        let total = distribution.iter().fold(T::zero(), |a, &b| a + b);
        if (total - T::one()).abs() > T::lit(1e-12) {
            return Err(Error::domain("settings distribution does not sum to one"));
        }
        self.distribution = distribution;
        Ok(self)
    }

    /// Uniform settings, as used in an ordinary Bell test.
    pub fn with_uniform_distribution(self) -> Self {
        let len = self.coefficients.len();
        let p = T::one() / T::from_usize(len).unwrap();
        Self { distribution: vec![p; len], ..self }
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn settings_per_party(&self) -> usize {
        self.settings_per_party
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn distribution(&self) -> &[T] {
        &self.distribution
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn abs_sum(&self) -> T {
        self.coefficients.iter().fold(T::zero(), |a, c| a + c.abs())
    }

    pub fn index_of(&self, settings: &[usize]) -> Result<usize> {
        if settings.len() != self.n_parties {
            return Err(Error::Shape { expected: self.n_parties, got: settings.len() });
        }
        settings.iter().try_fold(0usize, |acc, &s| {
            if s >= self.settings_per_party {
                Err(Error::domain(format!("setting {s} out of range")))
            } else {
                Ok(acc * self.settings_per_party + s)
            }
        })
    }

    pub fn settings_of(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.n_parties];
        for slot in out.iter_mut().rev() {
            *slot = index % self.settings_per_party;
            index /= self.settings_per_party;
        }
        out
    }

    pub fn coefficient(&self, settings: &[usize]) -> Result<T> {
        self.index_of(settings).map(|i| self.coefficients[i])
    }

    /// Settings tuples with nonzero coefficient, in index order.
    pub fn nonzero(&self) -> SettingsIter<'_, T> {
        SettingsIter { f: self, next: 0 }
    }

    pub fn nonzero_count(&self) -> usize {
        self.coefficients.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn cached_lr_max(&self) -> Option<T> {
        self.lr_max
    }

    /// Computes the local-realistic maximum once and caches it.
    pub fn lr_max(&mut self) -> Result<T> {
        if let Some(v) = self.lr_max {
            return Ok(v);
        }
        let v = super::lr_max(self)?.value;
        self.lr_max = Some(v);
        Ok(v)
    }

    /// Key used for a settings tuple in JSON: digits when every setting fits in
    /// one, comma-separated otherwise.
    pub fn settings_key(&self, settings: &[usize]) -> String {
        if self.settings_per_party <= 10 {
            settings.iter().map(|s| char::from(b'0' + *s as u8)).collect()
        } else {
            settings.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    fn parse_key(&self, key: &str) -> Result<usize> {
        let settings: Vec<usize> = if self.settings_per_party <= 10 && !key.contains(',') {
            key.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse(format!("bad settings key {key:?}")))?
        } else {
            key.split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad settings key {key:?}"))))
                .collect::<Result<_>>()?
        };
        self.index_of(&settings)
    }
}

pub struct SettingsIter<'a, T> {
    f: &'a BellFunctional<T>,
    next: usize,
}

impl<T: Real> Iterator for SettingsIter<'_, T> {
    type Item = (Vec<usize>, T);

    fn next(&mut self) -> Option<Self::Item> {
        while self.next < self.f.coefficients.len() {
            let i = self.next;
            self.next += 1;
            let g = self.f.coefficients[i];
            if !g.is_zero() {
                return Some((self.f.settings_of(i), g));
            }
        }
        None
    }
}

/// Wire form of a [`BellFunctional`]: sparse maps keyed by settings strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellFunctionalJson {
    pub parties: usize,
    pub settings_per_party: usize,
    pub coefficients: BTreeMap<String, f64>,
    /// Absent means `|g| / Σ|g|`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub settings_distribution: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lr_max: Option<f64>,
}

impl From<&BellFunctional<f64>> for BellFunctionalJson {
    fn from(f: &BellFunctional<f64>) -> Self {
        let sparse = |v: &[f64]| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| **x != 0.0)
                .map(|(i, x)| (f.settings_key(&f.settings_of(i)), *x))
                .collect::<BTreeMap<_, _>>()
        };
        Self {
            parties: f.n_parties,
            settings_per_party: f.settings_per_party,
            coefficients: sparse(&f.coefficients),
            settings_distribution: Some(sparse(&f.distribution)),
            lr_max: f.lr_max,
        }
    }
}

impl TryFrom<BellFunctionalJson> for BellFunctional<f64> {
    type Error = Error;

    fn try_from(j: BellFunctionalJson) -> Result<Self> {
        let len = j
            .settings_per_party
            .checked_pow(j.parties as u32)
            .filter(|&l| l <= 1 << 24)
            .ok_or_else(|| Error::capability("settings table too large"))?;
        let shell = BellFunctional {
            n_parties: j.parties,
            settings_per_party: j.settings_per_party,
            coefficients: vec![0.0; len],
            distribution: vec![0.0; len],
            lr_max: None,
        };
        let mut coefficients = vec![0.0; len];
        for (k, v) in &j.coefficients {
            coefficients[shell.parse_key(k)?] = *v;
        }
        let mut f = BellFunctional::new(j.parties, j.settings_per_party, coefficients)?;
        if let Some(dist) = &j.settings_distribution {
            let mut p = vec![0.0; len];
            for (k, v) in dist {
                p[shell.parse_key(k)?] = *v;
            }
            f = f.with_distribution(p)?;
        }
        f.lr_max = j.lr_max;
        Ok(f)
    }
}

impl Serialize for BellFunctional<f64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BellFunctionalJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BellFunctional<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BellFunctionalJson::deserialize(d)?;
        BellFunctional::try_from(j).map_err(serde::de::Error::custom)
    }
}
