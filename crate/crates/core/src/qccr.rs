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

//! Quantum communication complexity reduction games.
//!
//! Each of `n` players receives a setting `x_i` drawn with probability
//! `|g(x)| / Σ|g|` and a uniform bit `y_i = ±1`, and broadcasts one bit. The
//! group guesses `F = y_1⋯y_n · sign g(x)` as the product of the broadcasts.
//! Quantum players broadcast `y_i m_i` with `m_i` a local measurement outcome,
//! so the guess is right with probability `½(1 + sign g(x) E(x))`.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bell::{gbi_functional, lr_max, makb, makb_symmetric_optimum, BellFunctional, Strategy};
use crate::error::{Error, Result};
use crate::qstate::{DenseState, Mat2, Plane, PlaneObservable};
use crate::scalar::{binomial_int, rational_from_f64};

/// Trials per RNG stream. Chunk `c` draws from ChaCha8 seeded with the master
/// seed on stream `c`, so results do not depend on the worker count.
pub const SIMULATION_CHUNK: u64 = 1 << 16;
/// Largest register sampled from explicit outcome tables.
pub const DENSE_SAMPLING_MAX_QUBITS: usize = 8;
/// Largest `N` for [`marginal_feasibility`].
pub const FEASIBILITY_MAX_PARTIES: usize = 12;
/// Settings per party in the discretized GBI game.
pub const GBI_GAME_SETTINGS: usize = 32;

const DISTRIBUTION_TOLERANCE: f64 = 1e-12;

/// Shared state from which a subset of players measures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateModel {
    /// Uniform mixture over `block`-subsets of `parties` carrying `|GHZ_block⟩`
    /// with identity elsewhere.
    GhzMixture { parties: usize, block: usize },
    /// `v |GHZ_N⟩⟨GHZ_N| + (1 - v) 1/2^N`.
    NoisyGhz { parties: usize, visibility: f64 },
    /// Pure state; amplitudes as `[re, im]`.
    Pure { n_qubits: usize, amplitudes: Vec<[f64; 2]> },
    /// Density matrix, row-major, entries as `[re, im]`.
    Density { n_qubits: usize, matrix: Vec<[f64; 2]> },
}

impl StateModel {
    pub fn from_state(state: &DenseState<f64>) -> Self {
        let pack = |v: &[Complex<f64>]| v.iter().map(|c| [c.re, c.im]).collect();
        match state.amplitudes() {
            Some(a) => Self::Pure { n_qubits: state.n_qubits(), amplitudes: pack(a) },
            None => Self::Density { n_qubits: state.n_qubits(), matrix: pack(&state.density_matrix()) },
        }
    }

    pub fn n_parties(&self) -> usize {
        match *self {
            Self::GhzMixture { parties, .. } | Self::NoisyGhz { parties, .. } => parties,
            Self::Pure { n_qubits, .. } | Self::Density { n_qubits, .. } => n_qubits,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Self::GhzMixture { parties, block } if block < 2 || block > parties => {
                Err(Error::domain(format!("GHZ block {block} must lie in 2..={parties}")))
            }
            Self::NoisyGhz { parties, visibility } if parties < 2 || !(0.0..=1.0).contains(&visibility) => {
                Err(Error::domain("noisy GHZ needs at least two parties and visibility in [0, 1]"))
            }
            Self::Pure { .. } | Self::Density { .. } => self.dense().map(|_| ()),
            _ => Ok(()),
        }
    }

    fn dense(&self) -> Result<DenseState<f64>> {
        let unpack = |v: &[[f64; 2]]| v.iter().map(|&[re, im]| Complex::new(re, im)).collect();
        match self {
            Self::Pure { n_qubits, amplitudes } => DenseState::from_amplitudes(*n_qubits, unpack(amplitudes)),
            Self::Density { n_qubits, matrix } => DenseState::from_density(*n_qubits, unpack(matrix)),
            _ => Err(Error::domain("not an explicit state")),
        }
    }

    /// Full-correlator visibility seen by a GHZ-type subset of `k` players.
    fn ghz_visibility(&self, k: usize) -> Option<f64> {
        match *self {
            Self::GhzMixture { parties, block } => Some(if k == block {
                1.0 / binomial_int(parties as i64, block as i64).to_f64().unwrap_or(f64::INFINITY)
            } else {
                0.0
            }),
            Self::NoisyGhz { parties, visibility } => Some(if k == parties { visibility } else { 0.0 }),
            _ => None,
        }
    }
}

/// How players choose their broadcast.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Play {
    /// Broadcast `y_i m_i` from a measurement of the observable for `x_i`.
    #[default]
    Quantum,
    /// Broadcast `y_i f_i(x_i)` for a fixed local assignment.
    Deterministic { strategy: Strategy },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameSpec {
    pub functional: BellFunctional<f64>,
    pub state: StateModel,
    /// `observables[i][s]`: what player `i` measures on setting `s`.
    pub observables: Vec<Vec<PlaneObservable<f64>>>,
    #[serde(default)]
    pub play: Play,
}

impl GameSpec {
    pub fn new(
        functional: BellFunctional<f64>,
        state: StateModel,
        observables: Vec<Vec<PlaneObservable<f64>>>,
    ) -> Result<Self> {
        let game = Self { functional, state, observables, play: Play::Quantum };
        game.validate()?;
        Ok(game)
    }

    pub fn with_play(mut self, play: Play) -> Result<Self> {
        self.play = play;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let f = &self.functional;
        let (n, d) = (f.n_parties(), f.settings_per_party());
        if self.observables.len() != n {
            return Err(Error::Shape { expected: n, got: self.observables.len() });
        }
        if let Some(row) = self.observables.iter().find(|r| r.len() != d) {
            return Err(Error::Shape { expected: d, got: row.len() });
        }
        let total = f.abs_sum();
        for (p, g) in f.distribution().iter().zip(f.coefficients()) {
            if (p - g.abs() / total).abs() > DISTRIBUTION_TOLERANCE {
                return Err(Error::domain("settings distribution must be |g| / Σ|g|"));
            }
        }
        if self.state.n_parties() < n {
            return Err(Error::domain(format!("state has {} parties, game needs {n}", self.state.n_parties())));
        }
        if let Play::Deterministic { strategy } = &self.play {
            if strategy.signs.len() != n || strategy.signs.iter().any(|r| r.len() != d) {
                return Err(Error::Shape { expected: n, got: strategy.signs.len() });
            }
        }
        self.state.validate()
    }

    fn check_subset(&self, subset: &[usize]) -> Result<()> {
        let n = self.functional.n_parties();
        if subset.len() != n {
            return Err(Error::Shape { expected: n, got: subset.len() });
        }
        if subset.windows(2).any(|w| w[0] >= w[1]) || subset.iter().any(|&p| p >= self.state.n_parties()) {
            return Err(Error::domain("subset must be strictly increasing party indices within the state"));
        }
        Ok(())
    }
}

/// CHSH on a two-qubit GHZ block with the XY-plane settings that reach `2√2`.
pub fn chsh_game() -> GameSpec {
    let f = BellFunctional::new(2, 2, vec![1.0, 1.0, 1.0, -1.0]).expect("valid CHSH");
    let q = std::f64::consts::FRAC_PI_4;
    let obs = vec![
        vec![PlaneObservable::xy(0.0), PlaneObservable::xy(2.0 * q)],
        vec![PlaneObservable::xy(-q), PlaneObservable::xy(q)],
    ];
    GameSpec::new(f, StateModel::GhzMixture { parties: 2, block: 2 }, obs).expect("valid CHSH game")
}

/// MAKB functional for `n` players at the best symmetric XY settings.
pub fn makb_game(n: usize, state: StateModel) -> Result<GameSpec> {
    let f = makb::<f64>(n)?;
    let s = makb_symmetric_optimum::<f64>(n)?;
    let row = vec![PlaneObservable::xy_turns(s.a_turns), PlaneObservable::xy_turns(s.a_prime_turns)];
    GameSpec::new(f, state, vec![row; n])
}

/// Discretized GBI game: settings `α = j/32` per player, measured at `α` turns.
pub fn gbi_game(n: usize, state: StateModel) -> Result<GameSpec> {
    let d = GBI_GAME_SETTINGS;
    let f = gbi_functional::<f64>(n, d)?;
    let row = (0..d).map(|j| PlaneObservable::xy_turns(j as f64 / d as f64)).collect();
    GameSpec::new(f, state, vec![row; n])
}

/// `½(1 + lr_max / Σ|g|)`.
pub fn classical_best(game: &GameSpec) -> Result<f64> {
    let f = &game.functional;
    let lr = match f.cached_lr_max() {
        Some(v) => v,
        None => lr_max(f)?.value,
    };
    Ok(0.5 * (1.0 + lr / f.abs_sum()))
}

/// Correlation model of the measured subset.
enum Correlator {
    Ghz { visibility: f64 },
    Dense(DenseState<f64>),
}

impl Correlator {
    fn new(game: &GameSpec, subset: &[usize]) -> Result<Self> {
        game.check_subset(subset)?;
        if let Some(visibility) = game.state.ghz_visibility(subset.len()) {
            if game.observables.iter().flatten().any(|o| o.plane != Plane::XY) {
                return Err(Error::capability("GHZ-block models need XY-plane observables; use an explicit state"));
            }
            return Ok(Self::Ghz { visibility });
        }
        let state = game.state.dense()?;
        let traced: Vec<usize> = (0..state.n_qubits()).filter(|q| !subset.contains(q)).collect();
        let reduced = if traced.is_empty() { state } else { state.partial_trace(&traced)? };
        Ok(Self::Dense(reduced))
    }

    fn observables(game: &GameSpec, settings: &[usize]) -> Vec<PlaneObservable<f64>> {
        settings.iter().enumerate().map(|(i, &s)| game.observables[i][s]).collect()
    }

    fn correlation(&self, game: &GameSpec, settings: &[usize]) -> Result<f64> {
        let obs = Self::observables(game, settings);
        match self {
            Self::Ghz { visibility } => Ok(visibility * obs.iter().map(|o| o.angle).sum::<f64>().cos()),
            Self::Dense(state) => state.expectation_observables(&obs),
        }
    }

    fn sampler(&self, game: &GameSpec, settings: &[usize]) -> Result<OutcomeSampler> {
        match self {
            Self::Ghz { .. } => Ok(OutcomeSampler::Parity { p_even: 0.5 * (1.0 + self.correlation(game, settings)?) }),
            Self::Dense(state) => {
                let probs = outcome_table(state, &Self::observables(game, settings))?;
                let mut acc = 0.0;
                let cumulative = probs
                    .iter()
                    .map(|p| {
                        acc += p.max(0.0);
                        acc
                    })
                    .collect::<Vec<_>>();
                Ok(OutcomeSampler::Table { cumulative })
            }
        }
    }
}

/// `p(m) = ⟨⊗_i (1 + m_i A_i)/2⟩` for every outcome string; bit `n-1-i` set
/// means `m_i = -1`.
pub fn outcome_table(state: &DenseState<f64>, obs: &[PlaneObservable<f64>]) -> Result<Vec<f64>> {
    let n = obs.len();
    if n != state.n_qubits() {
        return Err(Error::Shape { expected: state.n_qubits(), got: n });
    }
    if n > DENSE_SAMPLING_MAX_QUBITS {
        return Err(Error::capability(format!("outcome tables limited to {DENSE_SAMPLING_MAX_QUBITS} qubits")));
    }
    let projector = |o: &PlaneObservable<f64>, sign: f64| -> Mat2<f64> {
        let a = o.matrix();
        let id = [[Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)], [Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)]];
        let mut p = id;
        for r in 0..2 {
            for c in 0..2 {
                p[r][c] = (id[r][c] + a[r][c] * sign) * 0.5;
            }
        }
        p
    };
    (0..1usize << n)
        .map(|m| {
            let ops: Vec<_> =
                (0..n).map(|i| projector(&obs[i], if m >> (n - 1 - i) & 1 == 1 { -1.0 } else { 1.0 })).collect();
            state.expectation(&ops)
        })
        .collect()
}

enum OutcomeSampler {
    /// Uniform marginals; the outcome product is `+1` with probability `p_even`.
    Parity {
        p_even: f64,
    },
    Table {
        cumulative: Vec<f64>,
    },
}

impl OutcomeSampler {
    /// Outcome bits, bit `n-1-i` set meaning `m_i = -1`.
    fn sample(&self, n: usize, rng: &mut ChaCha8Rng) -> u32 {
        match self {
            Self::Parity { p_even } => {
                let mut m = rng.random::<u32>() & low_mask(n);
                let want_odd = rng.random::<f64>() >= *p_even;
                if (m.count_ones() % 2 == 1) != want_odd {
                    m ^= 1;
                }
                m
            }
            Self::Table { cumulative } => {
                let u = rng.random::<f64>() * cumulative.last().copied().unwrap_or(1.0);
                cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1) as u32
            }
        }
    }
}

fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// `Σ_s P(s) sign g(s) E(s)` for the game's play, as a success probability.
fn success_from_bias(bias: f64) -> f64 {
    0.5 * (1.0 + bias)
}

/// `½(1 + B/Σ|g|)` with `B = Σ_s g(s) E(s)` for the subset's correlations.
pub fn quantum_success(game: &GameSpec, subset: &[usize]) -> Result<f64> {
    let corr = Correlator::new(game, subset)?;
    let f = &game.functional;
    let mut b = 0.0;
    for (settings, g) in f.nonzero() {
        b += g * corr.correlation(game, &settings)?;
    }
    Ok(success_from_bias(b / f.abs_sum()))
}

/// Success probability of the game's configured play.
pub fn analytic_success(game: &GameSpec, subset: &[usize]) -> Result<f64> {
    match &game.play {
        Play::Quantum => quantum_success(game, subset),
        Play::Deterministic { strategy } => {
            game.check_subset(subset)?;
            Ok(success_from_bias(strategy.evaluate(&game.functional)? / game.functional.abs_sum()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimOptions {
    pub trials: u64,
    pub seed: u64,
    /// Player whose `y_i` is left out of the broadcast.
    #[serde(default)]
    pub omit_y: Option<usize>,
    /// Worker threads; `None` uses the global pool.
    #[serde(default)]
    pub jobs: Option<usize>,
}

impl SimOptions {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self { trials, seed, omit_y: None, jobs: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    /// Binomial standard error of `success_rate`.
    pub stderr: f64,
    pub seed: u64,
}

/// Monte Carlo estimate of the game's success probability for `subset`.
pub fn simulate(game: &GameSpec, subset: &[usize], opts: &SimOptions) -> Result<SimReport> {
    if opts.trials == 0 {
        return Err(Error::domain("at least one trial is required"));
    }
    let f = &game.functional;
    let n = f.n_parties();
    if n > 32 {
        return Err(Error::capability("at most 32 players per game"));
    }
    if let Some(i) = opts.omit_y {
        if i >= n {
            return Err(Error::domain(format!("omitted player {i} out of range")));
        }
    }
    let support: Vec<(Vec<usize>, f64)> = f.nonzero().collect();
    let weights: Vec<f64> = support.iter().map(|(s, _)| f.distribution()[f.index_of(s).expect("valid")]).collect();
    let pick = WeightedIndex::new(&weights).map_err(|e| Error::domain(e.to_string()))?;
    let target_odd: Vec<bool> = support.iter().map(|(_, g)| *g < 0.0).collect();

    enum Answer {
        Measure(Vec<OutcomeSampler>),
        Fixed(Vec<u32>),
    }
    let answer = match &game.play {
        Play::Quantum => {
            let corr = Correlator::new(game, subset)?;
            Answer::Measure(support.iter().map(|(s, _)| corr.sampler(game, s)).collect::<Result<_>>()?)
        }
        Play::Deterministic { strategy } => {
            game.check_subset(subset)?;
            Answer::Fixed(
                support
                    .iter()
                    .map(|(s, _)| {
                        (0..n).fold(0u32, |m, i| if strategy.signs[i][s[i]] < 0 { m | 1 << (n - 1 - i) } else { m })
                    })
                    .collect(),
            )
        }
    };
    let kept_y = low_mask(n) & !opts.omit_y.map_or(0, |i| 1 << (n - 1 - i));

    let chunks = opts.trials.div_ceil(SIMULATION_CHUNK);
    let run_chunk = |c: u64| -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(c);
        let len = SIMULATION_CHUNK.min(opts.trials - c * SIMULATION_CHUNK);
        let mut wins = 0;
        for _ in 0..len {
            let x = pick.sample(&mut rng);
            let y = rng.random::<u32>() & low_mask(n);
            let m = match &answer {
                Answer::Measure(samplers) => samplers[x].sample(n, &mut rng),
                Answer::Fixed(bits) => bits[x],
            };
            let guess_odd = ((y & kept_y) ^ m).count_ones() % 2 == 1;
            let truth_odd = (y.count_ones() % 2 == 1) != target_odd[x];
            wins += u64::from(guess_odd == truth_odd);
        }
        wins
    };
    let count = || (0..chunks).into_par_iter().map(run_chunk).sum::<u64>();
    let successes = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::capability(e.to_string()))?
            .install(count),
        None => count(),
    };
    let rate = successes as f64 / opts.trials as f64;
    Ok(SimReport {
        trials: opts.trials,
        successes,
        success_rate: rate,
        stderr: (rate * (1.0 - rate) / opts.trials as f64).sqrt(),
        seed: opts.seed,
    })
}

/// Outcome of [`marginal_feasibility`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Feasibility {
    /// `type_weights[j]` is the probability of exactly `j` primed settings
    /// among `N`, spread uniformly over the `C(N, j)` strings.
    Feasible { type_weights: Vec<BigRationalString> },
    /// The distribution is not permutation symmetric, so no exchangeable extension exists.
    NotExchangeable,
    /// Exchangeable, but no `N`-party exchangeable distribution has it as marginal.
    Infeasible,
}

/// A rational serialized as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigRationalString(pub BigRational);

impl Serialize for BigRationalString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Feasible { .. })
    }

    pub fn type_weights(&self) -> Option<Vec<BigRational>> {
        match self {
            Self::Feasible { type_weights } => Some(type_weights.iter().map(|w| w.0.clone()).collect()),
            _ => None,
        }
    }
}

/// Exchangeable `N`-party distribution from type weights; bit `N-1-i` set
/// means player `i` uses the primed setting.
pub fn exchangeable_distribution(type_weights: &[BigRational]) -> Vec<BigRational> {
    let n = type_weights.len() - 1;
    (0..1usize << n)
        .map(|s| {
            let j = s.count_ones() as usize;
            type_weights[j].clone() / BigRational::from_integer(binomial_int(n as i64, j as i64))
        })
        .collect()
}

/// Marginal of a distribution over `n` two-setting players on the first `k`.
pub fn leading_marginal(dist: &[BigRational], n: usize, k: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); 1 << k];
    for (s, p) in dist.iter().enumerate() {
        out[s >> (n - k)] += p;
    }
    out
}

/// Exact settings distribution `|g| / Σ|g|` of a two-setting functional.
pub fn exact_settings_distribution(f: &BellFunctional<f64>) -> Result<Vec<BigRational>> {
    if f.settings_per_party() != 2 {
        return Err(Error::domain("feasibility is defined for two settings per player"));
    }
    let abs: Vec<BigRational> = f
        .coefficients()
        .iter()
        .map(|g| rational_from_f64(g.abs()).ok_or_else(|| Error::domain("non-finite coefficient")))
        .collect::<Result<_>>()?;
    let total: BigRational = abs.iter().cloned().sum();
    Ok(abs.into_iter().map(|a| a / total.clone()).collect())
}

/// Decides whether some exchangeable `N`-party settings distribution has
/// `dist` (over `k` players, two settings each) as every `k`-party marginal.
///
/// Exchangeable distributions are mixtures of uniform distributions on type
/// classes `j` = number of primed settings, and a type `j` places
/// `C(N-k, j-i) / C(N, j)` on each `k`-string with `i` primes. The resulting
/// `k + 2` equality constraints are solved by an exact rational simplex.
pub fn marginal_feasibility(dist: &[BigRational], n: usize) -> Result<Feasibility> {
    let k = dist.len().trailing_zeros() as usize;
    if dist.len() != 1 << k || k == 0 {
        return Err(Error::domain("distribution length must be 2^k with k >= 1"));
    }
    if k > n {
        return Err(Error::domain(format!("marginal on {k} players cannot come from {n}")));
    }
    if n > FEASIBILITY_MAX_PARTIES {
        return Err(Error::Size { got: n, min: k, max: FEASIBILITY_MAX_PARTIES });
    }
    if dist.iter().any(|p| p.is_negative()) || dist.iter().cloned().sum::<BigRational>() != BigRational::one() {
        return Err(Error::domain("distribution must be non-negative and sum to 1"));
    }
    let mut by_type: Vec<Option<BigRational>> = vec![None; k + 1];
    for (s, p) in dist.iter().enumerate() {
        let slot = &mut by_type[s.count_ones() as usize];
        match slot {
            Some(v) if v != p => return Ok(Feasibility::NotExchangeable),
            _ => *slot = Some(p.clone()),
        }
    }
    let d: Vec<BigRational> = by_type.into_iter().map(|v| v.expect("every popcount occurs")).collect();

    let h = |j: usize, i: usize| -> BigRational {
        if j < i || j - i > n - k {
            return BigRational::zero();
        }
        BigRational::new(binomial_int((n - k) as i64, (j - i) as i64), binomial_int(n as i64, j as i64))
    };
    let mut rows: Vec<Vec<BigRational>> = (0..=k).map(|i| (0..=n).map(|j| h(j, i)).collect()).collect();
    let mut rhs = d;
    rows.push(vec![BigRational::one(); n + 1]);
    rhs.push(BigRational::one());
    Ok(match phase_one(rows, rhs) {
        Some(q) => Feasibility::Feasible { type_weights: q.into_iter().map(BigRationalString).collect() },
        None => Feasibility::Infeasible,
    })
}

/// Finds `x >= 0` with `A x = b` (`b >= 0`) by the phase-one simplex with
/// Bland's rule, or `None` if the system is infeasible.
fn phase_one(a: Vec<Vec<BigRational>>, b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let (m, n) = (a.len(), a[0].len());
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(i, (mut row, bi))| {
            row.extend((0..m).map(|r| if r == i { BigRational::one() } else { BigRational::zero() }));
            row.push(bi);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs for minimizing the sum of artificials.
    let mut cost: Vec<BigRational> = (0..width)
        .map(|j| {
            if (n..n + m).contains(&j) {
                BigRational::zero()
            } else {
                -t.iter().map(|r| r[j].clone()).sum::<BigRational>()
            }
        })
        .collect();

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let leave = (0..m).filter(|&i| t[i][enter].is_positive()).min_by(|&i, &r| {
            let (a, b) = (&t[i][width - 1] / &t[i][enter], &t[r][width - 1] / &t[r][enter]);
            a.cmp(&b).then(basis[i].cmp(&basis[r]))
        })?;
        let pivot = t[leave][enter].clone();
        for v in t[leave].iter_mut() {
            *v /= &pivot;
        }
        let prow = t[leave].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != leave && !row[enter].is_zero() {
                let factor = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= &factor * p;
                }
            }
        }
        let factor = cost[enter].clone();
        for (v, p) in cost.iter_mut().zip(&prow) {
            *v -= &factor * p;
        }
        basis[leave] = enter;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some(x)
}
