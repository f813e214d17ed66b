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

//! Dense state-vector and density-matrix algebra on small qubit registers.
//!
//! Basis states are ordered lexicographically with qubit 0 as the most
//! significant bit. Everything here is exact linear algebra with no
//! approximations beyond floating point, and it serves as the reference
//! against which the closed-form modules are checked.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Largest register the dense representation accepts.
pub const MAX_QUBITS: usize = 12;

/// A single-qubit operator, row-major.
pub type Mat2<T> = [[Complex<T>; 2]; 2];

fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

fn check_qubits(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_QUBITS {
        return Err(Error::Size { got: n, min, max: MAX_QUBITS });
    }
    Ok(())
}

/// Single-qubit Pauli letter; `I` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix<T: Real>(self) -> Mat2<T> {
        let (z, o) = (T::zero(), T::one());
        match self {
            Pauli::I => [[c(o, z), c(z, z)], [c(z, z), c(o, z)]],
            Pauli::X => [[c(z, z), c(o, z)], [c(o, z), c(z, z)]],
            Pauli::Y => [[c(z, z), c(z, -o)], [c(z, o), c(z, z)]],
            Pauli::Z => [[c(o, z), c(z, z)], [c(z, z), c(-o, z)]],
        }
    }

    pub fn is_identity(self) -> bool {
        self == Pauli::I
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of Pauli letters, one per qubit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every string of the given length, in lexicographic `I < X < Y < Z` order.
    pub fn all(len: usize) -> impl Iterator<Item = PauliString> {
        const L: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        (0..4usize.pow(len as u32)).map(move |mut idx| {
            let mut v = vec![Pauli::I; len];
            for slot in v.iter_mut().rev() {
                *slot = L[idx % 4];
                idx /= 4;
            }
            PauliString(v)
        })
    }

    pub fn matrices<T: Real>(&self) -> Vec<Mat2<T>> {
        self.0.iter().map(|p| p.matrix()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts `I`/`0` for the identity and `X`, `Y`, `Z` (either case).
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|ch| match ch.to_ascii_uppercase() {
                'I' | '0' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Parse(format!("invalid Pauli letter {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .and_then(
                |v| {
                    if v.is_empty() {
                        Err(Error::Parse("empty Pauli string".into()))
                    } else {
                        Ok(PauliString(v))
                    }
                },
            )
    }
}

/// Whether two Pauli strings anticommute: true iff an odd number of slots hold
/// two different non-identity letters.
pub fn anticommutes(p: &PauliString, q: &PauliString) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::Shape { expected: p.len(), got: q.len() });
    }
    let clashes = p.0.iter().zip(&q.0).filter(|(a, b)| !a.is_identity() && !b.is_identity() && a != b).count();
    Ok(clashes % 2 == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    XZ,
    XY,
}

/// A ±1-valued observable in the x–z or x–y plane of the Bloch sphere.
///
/// `XZ` at angle β is `cos β σx + sin β σz`; `XY` at angle θ is
/// `cos θ σx + sin θ σy`. Angles are radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneObservable<T> {
    pub plane: Plane,
    pub angle: T,
}

impl<T: Real> PlaneObservable<T> {
    pub fn xz(beta: T) -> Self {
        Self { plane: Plane::XZ, angle: beta }
    }

    pub fn xy(theta: T) -> Self {
        Self { plane: Plane::XY, angle: theta }
    }

    /// x–y plane observable at `turns` full rotations, i.e. angle `2π·turns`.
    pub fn xy_turns(turns: T) -> Self {
        Self::xy(T::two_pi() * turns)
    }

    pub fn matrix(&self) -> Mat2<T> {
        let (s, co) = self.angle.sin_cos();
        let z = T::zero();
        match self.plane {
            Plane::XZ => [[c(s, z), c(co, z)], [c(co, z), c(-s, z)]],
            Plane::XY => [[c(z, z), c(co, -s)], [c(co, s), c(z, z)]],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr<T> {
    Pure(Vec<Complex<T>>),
    /// Row-major `2^n × 2^n`.
    Density(Vec<Complex<T>>),
}

/// A state of at most [`MAX_QUBITS`] qubits, either a normalized vector or a
/// density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState<T> {
    n_qubits: usize,
    repr: Repr<T>,
}

/// Applies `op` to qubit `q` (0 = most significant) of an `n`-qubit vector.
fn apply_1q<T: Real>(v: &mut [Complex<T>], n: usize, q: usize, op: &Mat2<T>) {
    let stride = 1usize << (n - 1 - q);
    let block = stride << 1;
    for base in (0..v.len()).step_by(block) {
        for i in base..base + stride {
            let (a0, a1) = (v[i], v[i + stride]);
            v[i] = op[0][0] * a0 + op[0][1] * a1;
            v[i + stride] = op[1][0] * a0 + op[1][1] * a1;
        }
    }
}

fn is_identity_op<T: Real>(op: &Mat2<T>) -> bool {
    op[0][1].is_zero() && op[1][0].is_zero() && op[0][0].is_one() && op[1][1].is_one()
}

impl<T: Real> DenseState<T> {
    /// Validates and wraps an amplitude vector; the norm must be 1 within 1e-10.
    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        check_qubits(n_qubits, 1)?;
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::Shape { expected: 1 << n_qubits, got: amplitudes.len() });
        }
        let norm: T = amplitudes.iter().map(|a| a.norm_sqr()).fold(T::zero(), |x, y| x + y);
        if (norm - T::one()).abs() > T::lit(1e-10) {
            return Err(Error::domain(format!("state norm {norm:?} differs from 1")));
        }
        Ok(Self { n_qubits, repr: Repr::Pure(amplitudes) })
    }

    /// Like [`from_amplitudes`](Self::from_amplitudes) but rescales to unit norm.
    pub fn normalized(n_qubits: usize, mut amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).fold(T::zero(), |x, y| x + y).sqrt();
        if norm.is_zero() {
            return Err(Error::domain("zero vector"));
        }
        amplitudes.iter_mut().for_each(|a| *a = *a / norm);
        Self::from_amplitudes(n_qubits, amplitudes)
    }

    /// Wraps a row-major density matrix; trace 1 and Hermiticity are checked.
    pub fn from_density(n_qubits: usize, matrix: Vec<Complex<T>>) -> Result<Self> {
        check_qubits(n_qubits, 1)?;
        let dim = 1usize << n_qubits;
        if matrix.len() != dim * dim {
            return Err(Error::Shape { expected: dim * dim, got: matrix.len() });
        }
        let tol = T::lit(1e-10);
        let tr: Complex<T> = (0..dim).map(|i| matrix[i * dim + i]).fold(Complex::zero(), |a, b| a + b);
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::domain("density operator trace differs from 1"));
        }
        for i in 0..dim {
            for j in i..dim {
                if (matrix[i * dim + j] - matrix[j * dim + i].conj()).norm() > tol {
                    return Err(Error::domain("density operator is not Hermitian"));
                }
            }
        }
        Ok(Self { n_qubits, repr: Repr::Density(matrix) })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubits(n_qubits, 1)?;
        if index >= 1 << n_qubits {
            return Err(Error::domain(format!("basis index {index} out of range")));
        }
        let mut v = vec![Complex::zero(); 1 << n_qubits];
        v[index] = Complex::one();
        Ok(Self { n_qubits, repr: Repr::Pure(v) })
    }

    /// `(|0…0⟩ + |1…1⟩)/√2` on `l` qubits.
    pub fn ghz(l: usize) -> Result<Self> {
        check_qubits(l, 1)?;
        let dim = 1usize << l;
        let h = T::FRAC_1_SQRT_2();
        let mut v = vec![Complex::zero(); dim];
        v[0] = c(h, T::zero());
        v[dim - 1] = c(h, T::zero());
        Ok(Self { n_qubits: l, repr: Repr::Pure(v) })
    }

    /// Equal superposition of every basis state with exactly `m` zeros.
    pub fn dicke(n: usize, m: usize) -> Result<Self> {
        check_qubits(n, 1)?;
        if m > n {
            return Err(Error::domain(format!("Dicke zeros-count {m} exceeds {n} qubits")));
        }
        let amp = <T as Scalar>::binomial(n as i64, m as i64).sqrt().recip();
        let v = (0..1usize << n)
            .map(|i| {
                let zeros = n - i.count_ones() as usize;
                if zeros == m {
                    c(amp, T::zero())
                } else {
                    Complex::zero()
                }
            })
            .collect();
        Ok(Self { n_qubits: n, repr: Repr::Pure(v) })
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits, 1)?;
        let dim = 1usize << n_qubits;
        let w = T::one() / T::from_usize(dim).unwrap();
        let mut m = vec![Complex::zero(); dim * dim];
        for i in 0..dim {
            m[i * dim + i] = c(w, T::zero());
        }
        Ok(Self { n_qubits, repr: Repr::Density(m) })
    }

    /// Product of single-qubit pure states, each given as `(a0, a1)` and normalized here.
    pub fn product(qubits: &[[Complex<T>; 2]]) -> Result<Self> {
        check_qubits(qubits.len(), 1)?;
        let mut v = vec![Complex::one()];
        for q in qubits {
            let norm = (q[0].norm_sqr() + q[1].norm_sqr()).sqrt();
            if norm.is_zero() {
                return Err(Error::domain("zero single-qubit vector"));
            }
            v = v.iter().flat_map(|a| [*a * q[0] / norm, *a * q[1] / norm]).collect();
        }
        Ok(Self { n_qubits: qubits.len(), repr: Repr::Pure(v) })
    }

    /// Haar-random pure state.
    pub fn random_pure<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        let v = (0..1usize << n_qubits)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                c(T::lit(re), T::lit(im))
            })
            .collect();
        Self::normalized(n_qubits, v)
    }

    /// Product of Haar-random single-qubit states.
    pub fn random_product<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        let qubits: Vec<[Complex<T>; 2]> = (0..n_qubits)
            .map(|_| {
                let mut g = || T::lit(rng.sample::<f64, _>(StandardNormal));
                [c(g(), g()), c(g(), g())]
            })
            .collect();
        Self::product(&qubits)
    }

    /// Convex combination of states on the same register.
    pub fn mixture(components: &[(T, DenseState<T>)]) -> Result<Self> {
        let first = components.first().ok_or_else(|| Error::domain("empty mixture"))?;
        let n = first.1.n_qubits;
        let dim = 1usize << n;
        let mut m = vec![Complex::zero(); dim * dim];
        for (w, s) in components {
            if s.n_qubits != n {
                return Err(Error::Shape { expected: n, got: s.n_qubits });
            }
            if *w < T::zero() {
                return Err(Error::domain("negative mixture weight"));
            }
            for (acc, x) in m.iter_mut().zip(s.density_matrix()) {
                *acc = *acc + x * *w;
            }
        }
        Self::from_density(n, m)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.repr, Repr::Pure(_))
    }

    pub fn amplitudes(&self) -> Option<&[Complex<T>]> {
        match &self.repr {
            Repr::Pure(v) => Some(v),
            Repr::Density(_) => None,
        }
    }

    /// Row-major density matrix (computed as `|ψ⟩⟨ψ|` for pure states).
    pub fn density_matrix(&self) -> Vec<Complex<T>> {
        match &self.repr {
            Repr::Density(m) => m.clone(),
            Repr::Pure(v) => {
                let mut m = Vec::with_capacity(v.len() * v.len());
                for a in v {
                    for b in v {
                        m.push(*a * b.conj());
                    }
                }
                m
            }
        }
    }

    pub fn to_density(&self) -> Self {
        Self { n_qubits: self.n_qubits, repr: Repr::Density(self.density_matrix()) }
    }

    /// `Tr ρ`, or `⟨ψ|ψ⟩` for pure states.
    pub fn trace(&self) -> T {
        match &self.repr {
            Repr::Pure(v) => v.iter().map(|a| a.norm_sqr()).fold(T::zero(), |x, y| x + y),
            Repr::Density(m) => {
                let d = self.dim();
                (0..d).map(|i| m[i * d + i].re).fold(T::zero(), |x, y| x + y)
            }
        }
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n_qubits + other.n_qubits;
        check_qubits(n, 1)?;
        if let (Repr::Pure(a), Repr::Pure(b)) = (&self.repr, &other.repr) {
            let v = a.iter().flat_map(|x| b.iter().map(move |y| *x * *y)).collect();
            return Ok(Self { n_qubits: n, repr: Repr::Pure(v) });
        }
        let (ma, mb) = (self.density_matrix(), other.density_matrix());
        let (da, db) = (self.dim(), other.dim());
        let d = da * db;
        let mut m = vec![Complex::zero(); d * d];
        for i in 0..da {
            for j in 0..da {
                let x = ma[i * da + j];
                if x.is_zero() {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        m[(i * db + k) * d + j * db + l] = x * mb[k * db + l];
                    }
                }
            }
        }
        Ok(Self { n_qubits: n, repr: Repr::Density(m) })
    }

    /// `⟨⊗_i ops[i]⟩` as a complex number; ops need not be Hermitian.
    pub fn expectation_complex(&self, ops: &[Mat2<T>]) -> Result<Complex<T>> {
        if ops.len() != self.n_qubits {
            return Err(Error::Shape { expected: self.n_qubits, got: ops.len() });
        }
        let n = self.n_qubits;
        match &self.repr {
            Repr::Pure(psi) => {
                let mut w = psi.clone();
                for (q, op) in ops.iter().enumerate() {
                    if !is_identity_op(op) {
                        apply_1q(&mut w, n, q, op);
                    }
                }
                Ok(psi.iter().zip(&w).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b))
            }
            Repr::Density(rho) => {
                // Viewing ρ as a 2n-qubit vector, the row index occupies the
                // leading n qubits, so O acting on rows is O on qubits 0..n.
                let mut w = rho.clone();
                for (q, op) in ops.iter().enumerate() {
                    if !is_identity_op(op) {
                        apply_1q(&mut w, 2 * n, q, op);
                    }
                }
                let d = self.dim();
                Ok((0..d).map(|i| w[i * d + i]).fold(Complex::zero(), |a, b| a + b))
            }
        }
    }

    /// Real part of `⟨⊗_i ops[i]⟩`.
    pub fn expectation(&self, ops: &[Mat2<T>]) -> Result<T> {
        self.expectation_complex(ops).map(|z| z.re)
    }

    pub fn expectation_observables(&self, obs: &[PlaneObservable<T>]) -> Result<T> {
        let ops: Vec<_> = obs.iter().map(|o| o.matrix()).collect();
        self.expectation(&ops)
    }

    pub fn expectation_pauli(&self, p: &PauliString) -> Result<T> {
        self.expectation(&p.matrices())
    }

    /// Reduced density operator after tracing out `traced` (qubit indices).
    /// Surviving qubits keep their relative order.
    pub fn partial_trace(&self, traced: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        let mut mask = 0usize;
        for &q in traced {
            if q >= n {
                return Err(Error::domain(format!("qubit index {q} out of range for {n} qubits")));
            }
            if mask & (1 << q) != 0 {
                return Err(Error::domain(format!("qubit index {q} repeated")));
            }
            mask |= 1 << q;
        }
        if traced.len() == n {
            return Err(Error::domain("cannot trace out every qubit"));
        }
        if traced.is_empty() {
            return Ok(self.to_density());
        }
        let kept: Vec<usize> = (0..n).filter(|q| mask & (1 << q) == 0).collect();
        let gone: Vec<usize> = (0..n).filter(|q| mask & (1 << q) != 0).collect();
        let spread = |qs: &[usize], x: usize| -> usize {
            qs.iter()
                .enumerate()
                .filter(|(j, _)| x & (1 << (qs.len() - 1 - j)) != 0)
                .fold(0, |acc, (_, &q)| acc | (1 << (n - 1 - q)))
        };
        let keep_idx: Vec<usize> = (0..1usize << kept.len()).map(|a| spread(&kept, a)).collect();
        let gone_idx: Vec<usize> = (0..1usize << gone.len()).map(|t| spread(&gone, t)).collect();
        let dk = keep_idx.len();
        let mut out = vec![Complex::zero(); dk * dk];
        match &self.repr {
            Repr::Pure(psi) => {
                for &t in &gone_idx {
                    for (a, &ia) in keep_idx.iter().enumerate() {
                        let x = psi[ia | t];
                        if x.is_zero() {
                            continue;
                        }
                        for (b, &ib) in keep_idx.iter().enumerate() {
                            out[a * dk + b] = out[a * dk + b] + x * psi[ib | t].conj();
                        }
                    }
                }
            }
            Repr::Density(rho) => {
                let d = self.dim();
                for &t in &gone_idx {
                    for (a, &ia) in keep_idx.iter().enumerate() {
                        for (b, &ib) in keep_idx.iter().enumerate() {
                            out[a * dk + b] = out[a * dk + b] + rho[(ia | t) * d + (ib | t)];
                        }
                    }
                }
            }
        }
        Ok(Self { n_qubits: kept.len(), repr: Repr::Density(out) })
    }

    /// Largest entrywise distance between the density operators of two states.
    pub fn max_abs_diff(&self, other: &Self) -> Option<T> {
        if self.n_qubits != other.n_qubits {
            return None;
        }
        Some(
            self.density_matrix()
                .iter()
                .zip(other.density_matrix())
                .map(|(a, b)| (*a - b).norm())
                .fold(T::zero(), T::max),
        )
    }
}

/// Explicit `2^n × 2^n` matrix of a tensor product of single-qubit operators.
pub fn kron_all<T: Real>(ops: &[Mat2<T>]) -> Vec<Complex<T>> {
    let mut m = vec![Complex::one()];
    let mut d = 1usize;
    for op in ops {
        let nd = d * 2;
        let mut next = vec![Complex::zero(); nd * nd];
        for i in 0..d {
            for j in 0..d {
                for a in 0..2 {
                    for b in 0..2 {
                        next[(i * 2 + a) * nd + j * 2 + b] = m[i * d + j] * op[a][b];
                    }
                }
            }
        }
        m = next;
        d = nd;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const EPS: f64 = 1e-12;

    fn amps(s: &DenseState<f64>) -> Vec<f64> {
        s.amplitudes().unwrap().iter().map(|a| a.re).collect()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < EPS)
    }

    #[test]
    fn ghz_amplitudes() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(&amps(&DenseState::ghz(2).unwrap()), &[h, 0.0, 0.0, h]));
        assert!(close(&amps(&DenseState::ghz(1).unwrap()), &[h, h]));
        assert!(matches!(DenseState::<f64>::ghz(13), Err(Error::Size { got: 13, .. })));
        assert!(DenseState::<f64>::ghz(0).is_err());
    }

    #[test]
    fn dicke_amplitudes() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(&amps(&DenseState::dicke(2, 1).unwrap()), &[0.0, h, h, 0.0]));
        let d33 = amps(&DenseState::dicke(3, 3).unwrap());
        assert!(close(&d33, &[1.0, 0., 0., 0., 0., 0., 0., 0.]));
        let t = 1.0 / 3f64.sqrt();
        // One zero among three qubits: 011, 101, 110.
        let d31 = amps(&DenseState::dicke(3, 1).unwrap());
        assert!(close(&d31, &[0., 0., 0., t, 0., t, t, 0.]));
        assert!(matches!(DenseState::<f64>::dicke(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn expectation_examples() {
        let x = Pauli::X.matrix::<f64>();
        let ghz2 = DenseState::ghz(2).unwrap();
        assert!((ghz2.expectation(&[x, x]).unwrap() - 1.0).abs() < 1e-10);

        let ghz3 = DenseState::ghz(3).unwrap();
        let obs: Vec<_> = [0.1, 0.2, 0.05].iter().map(|&a| PlaneObservable::xy_turns(a)).collect();
        let v = ghz3.expectation_observables(&obs).unwrap();
        assert!((v - (std::f64::consts::TAU * 0.35).cos()).abs() < 1e-10);

        let z = Pauli::Z.matrix::<f64>();
        let d31 = DenseState::dicke(3, 1).unwrap();
        assert!((d31.expectation(&[z, z, z]).unwrap() - 1.0).abs() < 1e-10);

        assert!(matches!(ghz3.expectation(&[x, x]), Err(Error::Shape { expected: 3, got: 2 })));
    }

    #[test]
    fn density_expectation_matches_pure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = DenseState::<f64>::random_pure(3, &mut rng).unwrap();
        let rho = s.to_density();
        for p in PauliString::all(3) {
            let a = s.expectation_pauli(&p).unwrap();
            let b = rho.expectation_pauli(&p).unwrap();
            assert!((a - b).abs() < 1e-12, "{p}");
        }
    }

    #[test]
    fn partial_trace_examples() {
        let ghz2 = DenseState::<f64>::ghz(2).unwrap();
        let r = ghz2.partial_trace(&[1]).unwrap();
        let id = DenseState::maximally_mixed(1).unwrap();
        assert!(r.max_abs_diff(&id).unwrap() < EPS);

        let d31 = DenseState::<f64>::dicke(3, 1).unwrap();
        let r = d31.partial_trace(&[2]).unwrap();
        let expect = DenseState::mixture(&[
            (2.0 / 3.0, DenseState::dicke(2, 1).unwrap()),
            (1.0 / 3.0, DenseState::basis(2, 3).unwrap()),
        ])
        .unwrap();
        assert!(r.max_abs_diff(&expect).unwrap() < EPS);
        assert!((r.trace() - 1.0).abs() < EPS);

        let same = d31.partial_trace(&[]).unwrap();
        assert!(same.max_abs_diff(&d31).unwrap() < EPS);

        assert!(matches!(ghz2.partial_trace(&[0, 1]), Err(Error::Domain(_))));
        assert!(ghz2.partial_trace(&[0, 0]).is_err());
        assert!(ghz2.partial_trace(&[2]).is_err());
    }

    #[test]
    fn partial_trace_of_density_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = DenseState::<f64>::random_pure(4, &mut rng).unwrap();
        let once = s.partial_trace(&[1, 3]).unwrap();
        let twice = s.partial_trace(&[3]).unwrap().partial_trace(&[1]).unwrap();
        assert!(once.max_abs_diff(&twice).unwrap() < EPS);
    }

    #[test]
    fn anticommutation_examples() {
        let p = |s: &str| s.parse::<PauliString>().unwrap();
        assert!(anticommutes(&p("XX0"), &p("XZ0")).unwrap());
        assert!(!anticommutes(&p("XX0"), &p("ZZ0")).unwrap());
        assert!(!anticommutes(&p("XX0"), &p("0XX")).unwrap());
        assert!(anticommutes(&p("XX0"), &p("0ZX")).unwrap());
        assert!(anticommutes(&p("XX"), &p("XXX")).is_err());
    }

    #[test]
    fn pauli_parse_and_display() {
        let p: PauliString = "x0zY".parse().unwrap();
        assert_eq!(p.to_string(), "XIZY");
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
    }

    #[test]
    fn plane_observables_square_to_identity() {
        for k in 0..16 {
            let t = k as f64 * 0.41;
            for o in [PlaneObservable::xz(t), PlaneObservable::xy(t)] {
                let m = o.matrix();
                for i in 0..2 {
                    for j in 0..2 {
                        let sq = m[i][0] * m[0][j] + m[i][1] * m[1][j];
                        let want = if i == j { 1.0 } else { 0.0 };
                        assert!((sq - Complex::new(want, 0.0)).norm() < 1e-12);
                    }
                }
            }
        }
    }
}
