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

//! Anticommutativity graphs of Pauli strings.
//!
//! For a set of Pauli strings whose pairwise anticommutation is encoded as
//! graph edges, `Σ ⟨P⟩²` over any quantum state is bounded by the graph's
//! independence number: a 0/1 assignment may not place two ones on an edge.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::qstate::{anticommutes, PauliString};

/// Largest vertex count accepted for exact independence numbers.
pub const MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnticommGraph {
    vertices: Vec<PauliString>,
    /// `adjacency[i]` has bit `j` set iff vertices `i` and `j` anticommute.
    adjacency: Vec<u32>,
}

impl AnticommGraph {
    pub fn vertices(&self) -> &[PauliString] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i] >> j & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Builds a graph directly from adjacency lists; used to exercise the solver
    /// on graphs that do not come from Pauli strings.
    pub fn from_adjacency(adjacency: Vec<u32>) -> Result<Self> {
        let n = adjacency.len();
        if n > MAX_VERTICES {
            return Err(Error::capability(format!("at most {MAX_VERTICES} vertices")));
        }
        for (i, &row) in adjacency.iter().enumerate() {
            if row >> i & 1 == 1 || (n < 32 && row >> n != 0) {
                return Err(Error::domain("adjacency has a loop or an out-of-range vertex"));
            }
            for (j, &other) in adjacency.iter().enumerate() {
                if (row >> j & 1) != (other >> i & 1) {
                    return Err(Error::domain("adjacency is not symmetric"));
                }
            }
        }
        Ok(Self { vertices: Vec::new(), adjacency })
    }
}

pub fn build_graph(ops: &[PauliString]) -> Result<AnticommGraph> {
    if ops.len() > MAX_VERTICES {
        return Err(Error::capability(format!("at most {MAX_VERTICES} operators, got {}", ops.len())));
    }
    let mut adjacency = vec![0u32; ops.len()];
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if anticommutes(&ops[i], &ops[j])? {
                adjacency[i] |= 1 << j;
                adjacency[j] |= 1 << i;
            }
        }
    }
    Ok(AnticommGraph { vertices: ops.to_vec(), adjacency })
}

/// Exact maximum independent set size by branch and bound, pruning with a
/// greedy clique cover of the remaining candidates.
pub fn independence_number(g: &AnticommGraph) -> Result<usize> {
    if g.len() > MAX_VERTICES {
        return Err(Error::capability(format!("at most {MAX_VERTICES} vertices")));
    }
    let all = if g.len() == 32 { u32::MAX } else { (1u32 << g.len()) - 1 };
    let mut best = 0;
    branch(&g.adjacency, all, 0, &mut best);
    Ok(best)
}

/// Number of cliques in a greedy cover of `cand`; an independent set takes at
/// most one vertex from each.
fn clique_cover_bound(adj: &[u32], mut cand: u32) -> usize {
    let mut cliques = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let mut clique_cand = cand & adj[v];
        cand &= !(1 << v);
        while clique_cand != 0 {
            let u = clique_cand.trailing_zeros() as usize;
            cand &= !(1 << u);
            clique_cand &= adj[u];
        }
        cliques += 1;
    }
    cliques
}

fn branch(adj: &[u32], cand: u32, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + clique_cover_bound(adj, cand) <= *best {
        return;
    }
    // Branch on a highest-degree candidate: take it, or drop it.
    let v = (0..adj.len())
        .filter(|&i| cand >> i & 1 == 1)
        .max_by_key(|&i| (adj[i] & cand).count_ones())
        .expect("non-empty");
    branch(adj, cand & !(1 << v) & !adj[v], size + 1, best);
    branch(adj, cand & !(1 << v), size, best);
}

/// Upper bound on `Σ_P ⟨P⟩²` over all states for the given strings.
pub fn squared_sum_bound(ops: &[PauliString]) -> Result<usize> {
    independence_number(&build_graph(ops)?)
}

/// Reads one Pauli string per line; blank lines and `#` comments are skipped.
pub fn read_pauli_list(reader: impl BufRead) -> Result<Vec<PauliString>> {
    let mut out: Vec<PauliString> = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        out.push(body.parse()?);
    }
    if let Some(first) = out.first() {
        if let Some(bad) = out.iter().find(|p| p.len() != first.len()) {
            return Err(Error::Shape { expected: first.len(), got: bad.len() });
        }
    }
    Ok(out)
}

/// The eight two-body x/z correlators entering two CHSH expressions that share
/// the middle party of three.
pub fn two_chsh_operators() -> Vec<PauliString> {
    ["XXI", "XZI", "ZXI", "ZZI", "IXX", "IXZ", "IZX", "IZZ"].iter().map(|s| s.parse().expect("valid literal")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn brute_force(adj: &[u32]) -> usize {
        let n = adj.len();
        (0u32..1 << n)
            .filter(|&set| (0..n).all(|i| set >> i & 1 == 0 || adj[i] & set == 0))
            .map(|set| set.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn two_chsh_graph() {
        let g = build_graph(&two_chsh_operators()).unwrap();
        assert!((0..8).all(|i| g.degree(i) == 4));
        assert_eq!(independence_number(&g).unwrap(), 2);
        assert_eq!(squared_sum_bound(&two_chsh_operators()).unwrap(), 2);
    }

    #[test]
    fn small_graphs() {
        let g = build_graph(&[p("XZ")]).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = build_graph(&[p("XI"), p("ZI")]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(squared_sum_bound(&[p("XI"), p("ZI"), p("YI")]).unwrap(), 1);

        let empty = AnticommGraph::from_adjacency(vec![0; 5]).unwrap();
        assert_eq!(independence_number(&empty).unwrap(), 5);
        let k4 = AnticommGraph::from_adjacency(vec![0b1110, 0b1101, 0b1011, 0b0111]).unwrap();
        assert_eq!(independence_number(&k4).unwrap(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(build_graph(&[p("XX"), p("XXX")]), Err(Error::Shape { .. })));
        let many: Vec<_> = PauliString::all(3).take(25).collect();
        assert!(matches!(build_graph(&many), Err(Error::Capability(_))));
        assert!(AnticommGraph::from_adjacency(vec![0b10, 0b00]).is_err());
    }

    #[test]
    fn parses_operator_lists() {
        let text = "# two CHSH\nXX0\nXZ0\n\n0ZZ  # trailing\n";
        let ops = read_pauli_list(text.as_bytes()).unwrap();
        assert_eq!(ops.len(), 3);
        assert_eq!(ops[2].to_string(), "IZZ");
        assert!(read_pauli_list("XX\nXXX\n".as_bytes()).is_err());
        assert!(read_pauli_list("XQ\n".as_bytes()).is_err());
    }

    #[test]
    fn random_states_respect_bound() {
        use crate::qstate::{DenseState, Pauli, PlaneObservable};
        use rand::{Rng, SeedableRng};
        let ops = two_chsh_operators();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let psi = DenseState::<f64>::random_pure(3, &mut rng).unwrap();
            let sum: f64 = ops.iter().map(|o| psi.expectation_pauli(o).unwrap().powi(2)).sum();
            assert!(sum <= 2.0 + 1e-9, "{sum}");
        }
        // Two CHSH values sharing the middle party cannot both be violated.
        let chsh = |psi: &DenseState<f64>, a: [f64; 2], b: [f64; 2], left: bool| {
            let mut total = 0.0;
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    let id = Pauli::I.matrix();
                    let (ox, oy) = (PlaneObservable::xz(x).matrix(), PlaneObservable::xz(y).matrix());
                    let ops = if left { [ox, oy, id] } else { [id, ox, oy] };
                    let e = psi.expectation(&ops).unwrap();
                    total += if i == 1 && j == 1 { -e } else { e };
                }
            }
            total
        };
        for _ in 0..2_000 {
            let psi = DenseState::<f64>::random_pure(3, &mut rng).unwrap();
            let mut ang = || -> [f64; 2] { [rng.random::<f64>() * 6.3, rng.random::<f64>() * 6.3] };
            let (a, b, c) = (ang(), ang(), ang());
            let (b12, b23) = (chsh(&psi, a, b, true), chsh(&psi, b, c, false));
            assert!(b12 * b12 + b23 * b23 <= 8.0 + 1e-9);
        }
    }

    #[test]
    fn bound_is_tight_for_bell_pair() {
        use crate::qstate::DenseState;
        use num_complex::Complex;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![Complex::new(0.0, 0.0); 8];
        amps[0b000] = Complex::new(h, 0.0);
        amps[0b110] = Complex::new(h, 0.0);
        let psi = DenseState::from_amplitudes(3, amps).unwrap();
        let sum: f64 = two_chsh_operators().iter().map(|o| psi.expectation_pauli(o).unwrap().powi(2)).sum();
        assert!((sum - 2.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn branch_and_bound_matches_subset_enumeration(n in 1usize..=16, seed in any::<u64>()) {
            let mut adj = vec![0u32; n];
            let mut x = seed | 1;
            for i in 0..n {
                for j in i + 1..n {
                    x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                    if x % 3 == 0 {
                        adj[i] |= 1 << j;
                        adj[j] |= 1 << i;
                    }
                }
            }
            let g = AnticommGraph::from_adjacency(adj.clone()).unwrap();
            prop_assert_eq!(independence_number(&g).unwrap(), brute_force(&adj));
        }
    }
}
