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

//! Cross-module invariants checked against explicit matrices and random samples.

use bellsym::bell::{ghz_value_xy, makb};
use bellsym::monogamy::squared_sum_bound;
use bellsym::qstate::{anticommutes, kron_all, DenseState, Pauli, PauliString, PlaneObservable};
use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pauli_from_index(n: usize, mut idx: usize) -> PauliString {
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let mut v = vec![Pauli::I; n];
    for slot in v.iter_mut().rev() {
        *slot = letters[idx % 4];
        idx /= 4;
    }
    PauliString::new(v)
}

#[test]
fn anticommutation_matches_matrices_up_to_four_qubits() {
    for n in 1..=4 {
        let dim = 1 << n;
        let mats: Vec<Vec<Complex<f64>>> =
            (0..1 << (2 * n)).map(|i| kron_all(&pauli_from_index(n, i).matrices::<f64>())).collect();
        for i in 0..mats.len() {
            for j in i..mats.len() {
                let (a, b) = (&mats[i], &mats[j]);
                let mut anti = true;
                'outer: for r in 0..dim {
                    for c in 0..dim {
                        let s: Complex<f64> =
                            (0..dim).map(|k| a[r * dim + k] * b[k * dim + c] + b[r * dim + k] * a[k * dim + c]).sum();
                        if s.norm() > 1e-12 {
                            anti = false;
                            break 'outer;
                        }
                    }
                }
                let (p, q) = (pauli_from_index(n, i), pauli_from_index(n, j));
                assert_eq!(anticommutes(&p, &q).unwrap(), anti, "{p} {q}");
            }
        }
    }
}

#[test]
fn ghz_closed_form_matches_dense_expectation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    use rand::Rng;
    for n in 1..=10 {
        let ghz = DenseState::<f64>::ghz(n).unwrap();
        for _ in 0..100 {
            let turns: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let obs: Vec<_> = turns.iter().map(|&t| PlaneObservable::xy_turns(t)).collect();
            let dense = ghz.expectation_observables(&obs).unwrap();
            let closed = (2.0 * std::f64::consts::PI * turns.iter().sum::<f64>()).cos();
            assert!((dense - closed).abs() < 1e-10, "n = {n}");
        }
    }
    // The same identity drives the functional-level closed form.
    let f = makb::<f64>(3).unwrap();
    let turns = vec![vec![0.1, 0.35]; 3];
    let obs: Vec<Vec<_>> = turns.iter().map(|r| r.iter().map(|&t| PlaneObservable::xy_turns(t)).collect()).collect();
    let dense = bellsym::bell::quantum_value(&f, &DenseState::ghz(3).unwrap(), &obs).unwrap();
    assert!((dense - ghz_value_xy(&f, &turns).unwrap()).abs() < 1e-12);
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    prop::collection::vec(0usize..4, n)
        .prop_map(|v| PauliString::new(v.into_iter().map(|i| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][i]).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn constructors_are_normalized(n in 1usize..=8, m in 0usize..=8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut states = vec![
            DenseState::<f64>::ghz(n).unwrap(),
            DenseState::random_pure(n, &mut rng).unwrap(),
            DenseState::random_product(n, &mut rng).unwrap(),
            DenseState::maximally_mixed(n.min(6)).unwrap(),
        ];
        if m <= n {
            states.push(DenseState::dicke(n, m).unwrap());
        }
        let a = DenseState::random_pure(n.min(5), &mut rng).unwrap();
        let b = DenseState::random_pure(n.min(5), &mut rng).unwrap();
        states.push(DenseState::mixture(&[(0.3, a), (0.7, b)]).unwrap());
        for s in &states {
            prop_assert!((s.trace() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hermitian_expectations_are_real(n in 1usize..=5, seed in any::<u64>(), idx in any::<usize>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = DenseState::<f64>::random_pure(n, &mut rng).unwrap();
        let b = DenseState::random_pure(n, &mut rng).unwrap();
        let rho = DenseState::mixture(&[(0.5, a.clone()), (0.5, b)]).unwrap();
        let p = pauli_from_index(n, idx % (1 << (2 * n)));
        for s in [&a, &rho] {
            prop_assert!(s.expectation_complex(&p.matrices()).unwrap().im.abs() < 1e-10);
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn graph_bound_holds_on_random_states(
        ops in prop::collection::vec(pauli_strategy(3), 1..=10),
        seed in any::<u64>(),
    ) {
        let bound = squared_sum_bound(&ops).unwrap() as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10_000 {
            let psi = DenseState::<f64>::random_pure(3, &mut rng).unwrap();
            let s: f64 = ops.iter().map(|o| psi.expectation_pauli(o).unwrap().powi(2)).sum();
            prop_assert!(s <= bound + 1e-9, "{s} > {bound}");
        }
    }
}
