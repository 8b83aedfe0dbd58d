//! Pauli operators on edge-indexed qubits, in binary symplectic form.
//!
//! An operator is a pair of GF(2) masks over the edges: `x_mask` marks
//! edges acted on by X, `z_mask` edges acted on by Z, a set bit in both
//! meaning Y. Phases play no role in code structure and are not tracked.
//! Two operators commute iff the symplectic form
//! `<a.x, b.z> + <a.z, b.x>` vanishes.
//!
//! A stabilizer code on a lattice has one X-type generator per interior
//! vertex (acting on the star of incident edges) and one Z-type generator
//! per face (acting on its existing boundary edges). Generators are ordered
//! vertex-first, then faces, so exported check matrices are reproducible
//! byte for byte.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::lattice::Lattice;

/// A phase-free Pauli operator as an (x, z) mask pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x_mask: BitVec,
    z_mask: BitVec,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self { x_mask: BitVec::zeros(n), z_mask: BitVec::zeros(n) }
    }

    pub fn new(x_mask: BitVec, z_mask: BitVec) -> Result<Self> {
        if x_mask.len() != z_mask.len() {
            return Err(Error::LengthMismatch(x_mask.len(), z_mask.len()));
        }
        Ok(Self { x_mask, z_mask })
    }

    pub fn from_x_support(n: usize, support: &[usize]) -> Self {
        Self { x_mask: BitVec::from_support(n, support), z_mask: BitVec::zeros(n) }
    }

    pub fn from_z_support(n: usize, support: &[usize]) -> Self {
        Self { x_mask: BitVec::zeros(n), z_mask: BitVec::from_support(n, support) }
    }

    pub fn from_x_mask(x_mask: BitVec) -> Self {
        let n = x_mask.len();
        Self { x_mask, z_mask: BitVec::zeros(n) }
    }

    pub fn from_z_mask(z_mask: BitVec) -> Self {
        let n = z_mask.len();
        Self { x_mask: BitVec::zeros(n), z_mask }
    }

    pub fn len(&self) -> usize {
        self.x_mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_mask.is_empty()
    }

    pub fn x_mask(&self) -> &BitVec {
        &self.x_mask
    }

    pub fn z_mask(&self) -> &BitVec {
        &self.z_mask
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask.is_zero() && self.z_mask.is_zero()
    }

    /// Number of qubits acted on non-trivially (Y counts once).
    pub fn weight(&self) -> usize {
        self.x_mask.union_weight(&self.z_mask)
    }

    /// Group product; phases are dropped, so this is just the mask XOR.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(Self { x_mask: self.x_mask.xor(&other.x_mask), z_mask: self.z_mask.xor(&other.z_mask) })
    }

    /// True iff the symplectic form `<a.x, b.z> + <a.z, b.x>` is zero.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(!(self.x_mask.dot(&other.z_mask) ^ self.z_mask.dot(&other.x_mask)))
    }

    /// The 2n-bit symplectic row [x | z].
    pub fn symplectic_row(&self) -> BitVec {
        let n = self.len();
        let mut row = BitVec::zeros(2 * n);
        for i in self.x_mask.ones() {
            row.set(i);
        }
        for i in self.z_mask.ones() {
            row.set(n + i);
        }
        row
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut first = true;
        for i in 0..self.len() {
            let (x, z) = (self.x_mask.get(i), self.z_mask.get(i));
            if x || z {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                let p = match (x, z) {
                    (true, false) => 'X',
                    (false, true) => 'Z',
                    _ => 'Y',
                };
                write!(f, "{p}{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}

/// Convenience free function mirroring [`PauliOperator::commutes`].
pub fn commutes(a: &PauliOperator, b: &PauliOperator) -> Result<bool> {
    a.commutes(b)
}

/// Rank of a GF(2) matrix.
pub fn gf2_rank(matrix: &BitMatrix) -> usize {
    matrix.rank()
}

/// A CSS stabilizer code built from a lattice: X generators on vertex
/// stars, Z generators on face boundaries.
#[derive(Clone)]
pub struct StabilizerCode {
    lattice: Lattice,
    vertex_generators: Vec<PauliOperator>,
    face_generators: Vec<PauliOperator>,
    h_x: BitMatrix,
    h_z: BitMatrix,
}

impl StabilizerCode {
    pub fn new(lattice: Lattice) -> Self {
        let n = lattice.edge_count();
        let mut h_x = BitMatrix::new(n);
        let mut vertex_generators = Vec::with_capacity(lattice.vertex_count());
        for v in 0..lattice.vertex_count() {
            let mask = BitVec::from_support(n, lattice.vertex_star(v));
            h_x.push_row(mask.clone());
            vertex_generators.push(PauliOperator::from_x_mask(mask));
        }
        let mut h_z = BitMatrix::new(n);
        let mut face_generators = Vec::with_capacity(lattice.face_count());
        for p in 0..lattice.face_count() {
            let mask = BitVec::from_support(n, lattice.face_edges(p));
            h_z.push_row(mask.clone());
            face_generators.push(PauliOperator::from_z_mask(mask));
        }
        Self { lattice, vertex_generators, face_generators, h_x, h_z }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Number of physical qubits (edges).
    pub fn qubit_count(&self) -> usize {
        self.lattice.edge_count()
    }

    pub fn vertex_generators(&self) -> &[PauliOperator] {
        &self.vertex_generators
    }

    pub fn face_generators(&self) -> &[PauliOperator] {
        &self.face_generators
    }

    pub fn generator_count(&self) -> usize {
        self.vertex_generators.len() + self.face_generators.len()
    }

    /// All generators in the pinned order: vertex generators first.
    pub fn generators(&self) -> impl Iterator<Item = &PauliOperator> {
        self.vertex_generators.iter().chain(self.face_generators.iter())
    }

    /// Check matrix of the X-type generators (rows = vertices).
    pub fn h_x(&self) -> &BitMatrix {
        &self.h_x
    }

    /// Check matrix of the Z-type generators (rows = faces).
    pub fn h_z(&self) -> &BitMatrix {
        &self.h_z
    }

    /// Stacked symplectic rows of all generators, in the pinned order.
    pub fn stacked_generators(&self) -> BitMatrix {
        let mut m = BitMatrix::new(2 * self.qubit_count());
        for g in self.generators() {
            m.push_row(g.symplectic_row());
        }
        m
    }

    /// One bit per generator; bit g is set iff `error` anticommutes with
    /// generator g. Order matches `generators()`.
    pub fn syndrome(&self, error: &PauliOperator) -> Result<BitVec> {
        if error.len() != self.qubit_count() {
            return Err(Error::LengthMismatch(error.len(), self.qubit_count()));
        }
        let mut out = BitVec::zeros(self.generator_count());
        let zs = self.syndrome_of_z_mask(error.z_mask());
        for i in zs.ones() {
            out.set(i);
        }
        let xs = self.syndrome_of_x_mask(error.x_mask());
        let off = self.vertex_generators.len();
        for i in xs.ones() {
            out.set(off + i);
        }
        Ok(out)
    }

    /// Syndrome of a pure-Z error against the X-type (vertex) generators.
    pub fn syndrome_of_z_mask(&self, z_mask: &BitVec) -> BitVec {
        self.h_x.mul_vec(z_mask)
    }

    /// Syndrome of a pure-X error against the Z-type (face) generators.
    pub fn syndrome_of_x_mask(&self, x_mask: &BitVec) -> BitVec {
        self.h_z.mul_vec(x_mask)
    }

    /// Number of logical qubits: edges minus the rank of the stacked
    /// generator matrix.
    pub fn logical_count(&self) -> usize {
        self.qubit_count() - self.stacked_generators().rank()
    }

    /// Check matrices in the sparse text format, one generator per line:
    /// `X <index>: <edge ids>` for vertex generators, then
    /// `Z <index>: <edge ids>` for face generators.
    pub fn checks_sparse(&self) -> String {
        let mut out = String::new();
        sparse_rows(&mut out, 'X', self.h_x.rows());
        sparse_rows(&mut out, 'Z', self.h_z.rows());
        out
    }

    /// A check matrix in MatrixMarket dense array form (entries 0/1,
    /// column-major), for `which` in `'X'` or `'Z'`.
    pub fn check_dense_mtx(&self, which: char) -> String {
        let m = match which {
            'X' => &self.h_x,
            'Z' => &self.h_z,
            other => panic!("check_dense_mtx expects 'X' or 'Z', got {other:?}"),
        };
        dense_mtx(m)
    }
}

pub(crate) fn sparse_rows(out: &mut String, tag: char, rows: &[BitVec]) {
    use std::fmt::Write;
    for (i, row) in rows.iter().enumerate() {
        let ids: Vec<String> = row.ones().map(|e| e.to_string()).collect();
        writeln!(out, "{tag} {i}: {}", ids.join(" ")).unwrap();
    }
}

pub(crate) fn dense_mtx(m: &BitMatrix) -> String {
    use std::fmt::Write;
    let mut out = String::from("%%MatrixMarket matrix array integer general\n");
    writeln!(out, "{} {}", m.n_rows(), m.n_cols()).unwrap();
    for c in 0..m.n_cols() {
        for r in 0..m.n_rows() {
            writeln!(out, "{}", u8::from(m.row(r).get(c))).unwrap();
        }
    }
    out
}

/// Asserts pairwise commutation of all generators; `Err` names the first
/// offending pair.
pub fn check_generators_commute(code: &StabilizerCode) -> Result<()> {
    let gens: Vec<&PauliOperator> = code.generators().collect();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            if !gens[i].commutes(gens[j])? {
                return Err(Error::Inconsistency(format!(
                    "generators {i} and {j} anticommute"
                )));
            }
        }
    }
    Ok(())
}

/// XOR of all vertex-generator masks and of all face-generator masks.
/// On a closed lattice both are zero (the product of all generators of one
/// type is the identity).
pub fn generator_products(code: &StabilizerCode) -> (BitVec, BitVec) {
    let n = code.qubit_count();
    let mut ax = BitVec::zeros(n);
    for g in code.vertex_generators() {
        ax.xor_assign(g.x_mask());
    }
    let mut bz = BitVec::zeros(n);
    for g in code.face_generators() {
        bz.xor_assign(g.z_mask());
    }
    (ax, bz)
}

/// H_X * H_Z^T over GF(2) must vanish for a CSS code.
pub fn css_condition_holds(code: &StabilizerCode) -> bool {
    code.h_x().rows().iter().all(|x| code.h_z().rows().iter().all(|z| !x.dot(z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn rect(n: usize, m: usize) -> StabilizerCode {
        StabilizerCode::new(Lattice::rectangle(n, m).unwrap())
    }

    #[test]
    fn single_qubit_commutation() {
        let x = PauliOperator::from_x_support(5, &[2]);
        let z_same = PauliOperator::from_z_support(5, &[2]);
        let z_other = PauliOperator::from_z_support(5, &[3]);
        assert!(!x.commutes(&z_same).unwrap());
        assert!(x.commutes(&z_other).unwrap());
    }

    #[test]
    fn commutes_rejects_length_mismatch() {
        let a = PauliOperator::identity(3);
        let b = PauliOperator::identity(4);
        assert!(matches!(a.commutes(&b), Err(Error::LengthMismatch(3, 4))));
    }

    #[test]
    fn weight_counts_y_once() {
        let op = PauliOperator::new(
            BitVec::from_support(6, &[0, 1]),
            BitVec::from_support(6, &[1, 4]),
        )
        .unwrap();
        assert_eq!(op.weight(), 3);
        assert_eq!(op.to_string(), "X0 Y1 Z4");
    }

    #[test]
    fn rectangle_2x3_generator_structure() {
        let code = rect(2, 3);
        assert_eq!(code.qubit_count(), 18);
        assert_eq!(code.vertex_generators().len(), 9);
        assert_eq!(code.face_generators().len(), 8);
        let mut a_weights: Vec<usize> = code.vertex_generators().iter().map(|g| g.weight()).collect();
        a_weights.sort_unstable();
        assert_eq!(a_weights, vec![3, 3, 3, 3, 3, 3, 4, 4, 4]);
        let mut b_weights: Vec<usize> = code.face_generators().iter().map(|g| g.weight()).collect();
        b_weights.sort_unstable();
        assert_eq!(b_weights, vec![3, 3, 3, 3, 4, 4, 4, 4]);
        assert!(code.vertex_generators().iter().all(|g| g.z_mask().is_zero()));
        assert!(code.face_generators().iter().all(|g| g.x_mask().is_zero()));
    }

    #[test]
    fn torus_2_generators_all_weight_4() {
        let code = StabilizerCode::new(Lattice::torus(2).unwrap());
        assert_eq!(code.generator_count(), 8);
        assert!(code.generators().all(|g| g.weight() == 4));
    }

    #[test]
    fn generators_commute_on_every_builtin_family() {
        let mut lats = vec![Lattice::torus(2).unwrap(), Lattice::torus(3).unwrap()];
        for n in 1..=3 {
            for m in 1..=3 {
                lats.push(Lattice::rectangle(n, m).unwrap());
            }
        }
        for k in 1..=4 {
            lats.push(Lattice::disk(k, 2).unwrap());
        }
        for lat in lats {
            let code = StabilizerCode::new(lat);
            assert!(css_condition_holds(&code));
            check_generators_commute(&code).unwrap();
        }
    }

    #[test]
    fn stacked_rank_of_2x3_is_17() {
        let code = rect(2, 3);
        assert_eq!(gf2_rank(&code.stacked_generators()), 17);
        assert_eq!(code.logical_count(), 1);
    }

    #[test]
    fn stacked_rank_of_torus_3_is_16() {
        let code = StabilizerCode::new(Lattice::torus(3).unwrap());
        assert_eq!(gf2_rank(&code.stacked_generators()), 16);
        assert_eq!(code.logical_count(), 2);
        let (ax, bz) = generator_products(&code);
        assert!(ax.is_zero());
        assert!(bz.is_zero());
    }

    #[test]
    fn rectangle_generators_are_independent() {
        for n in 1..=4 {
            for m in 1..=4 {
                let code = rect(n, m);
                let expected = 2 * n * m + n + m;
                assert_eq!(code.generator_count(), expected);
                assert_eq!(gf2_rank(&code.stacked_generators()), expected, "{n}x{m}");
            }
        }
    }

    #[test]
    fn disk_logical_count_is_pieces_minus_one() {
        for k in 1..=4 {
            let code = StabilizerCode::new(Lattice::disk(k, 2).unwrap());
            assert_eq!(code.logical_count(), k - 1, "disk k={k}");
        }
    }

    #[test]
    fn identity_error_has_zero_syndrome() {
        let code = rect(2, 3);
        let s = code.syndrome(&PauliOperator::identity(18)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn single_z_on_interior_edge_lights_two_vertex_bits() {
        let lat = Lattice::rectangle(2, 3).unwrap();
        let code = StabilizerCode::new(lat);
        // pick an edge with two interior endpoints
        let e = (0..code.qubit_count())
            .find(|&e| {
                code.lattice()
                    .edge_endpoints(e)
                    .iter()
                    .all(|ep| matches!(ep, crate::lattice::Endpoint::Vertex(_)))
            })
            .unwrap();
        let s = code.syndrome(&PauliOperator::from_z_support(18, &[e])).unwrap();
        let lit: Vec<usize> = s.ones().collect();
        let mut endpoints: Vec<usize> = code
            .lattice()
            .edge_endpoints(e)
            .iter()
            .map(|ep| match ep {
                crate::lattice::Endpoint::Vertex(v) => *v,
                _ => unreachable!(),
            })
            .collect();
        endpoints.sort_unstable();
        assert_eq!(lit, endpoints);
    }

    #[test]
    fn logical_count_is_relabeling_invariant() {
        let code = rect(2, 3);
        let k = code.logical_count();
        let n = code.qubit_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..5 {
            perm.shuffle(&mut rng);
            let mut m = BitMatrix::new(2 * n);
            for g in code.generators() {
                let x: Vec<usize> = g.x_mask().ones().map(|i| perm[i]).collect();
                let z: Vec<usize> = g.z_mask().ones().map(|i| perm[i]).collect();
                let op = PauliOperator::new(
                    BitVec::from_support(n, &x),
                    BitVec::from_support(n, &z),
                )
                .unwrap();
                m.push_row(op.symplectic_row());
            }
            assert_eq!(n - m.rank(), k);
        }
    }

    #[test]
    fn sparse_export_shape() {
        let code = rect(2, 3);
        let text = code.checks_sparse();
        let x_rows = text.lines().filter(|l| l.starts_with("X ")).count();
        let z_rows = text.lines().filter(|l| l.starts_with("Z ")).count();
        assert_eq!(x_rows, 9);
        assert_eq!(z_rows, 8);
        // byte-stable across rebuilds
        assert_eq!(text, rect(2, 3).checks_sparse());
        let mtx = code.check_dense_mtx('X');
        assert!(mtx.starts_with("%%MatrixMarket matrix array integer general\n9 18\n"));
        assert_eq!(mtx.lines().count(), 2 + 9 * 18);
    }

    proptest! {
        /// syndrome(e1 + e2) = syndrome(e1) + syndrome(e2)
        #[test]
        fn syndrome_is_linear(xs1 in proptest::collection::vec(0usize..18, 0..6),
                              zs1 in proptest::collection::vec(0usize..18, 0..6),
                              xs2 in proptest::collection::vec(0usize..18, 0..6),
                              zs2 in proptest::collection::vec(0usize..18, 0..6)) {
            let code = rect(2, 3);
            let e1 = PauliOperator::new(BitVec::from_support(18, &xs1), BitVec::from_support(18, &zs1)).unwrap();
            let e2 = PauliOperator::new(BitVec::from_support(18, &xs2), BitVec::from_support(18, &zs2)).unwrap();
            let sum = e1.compose(&e2).unwrap();
            let mut lhs = code.syndrome(&sum).unwrap();
            lhs.xor_assign(&code.syndrome(&e1).unwrap());
            lhs.xor_assign(&code.syndrome(&e2).unwrap());
            prop_assert!(lhs.is_zero());
        }

        /// the symplectic form agrees with counting anticommuting qubit pairs
        #[test]
        fn commutation_matches_per_qubit_count(xs1 in proptest::collection::vec(0usize..12, 0..8),
                                               zs1 in proptest::collection::vec(0usize..12, 0..8),
                                               xs2 in proptest::collection::vec(0usize..12, 0..8),
                                               zs2 in proptest::collection::vec(0usize..12, 0..8)) {
            let a = PauliOperator::new(BitVec::from_support(12, &xs1), BitVec::from_support(12, &zs1)).unwrap();
            let b = PauliOperator::new(BitVec::from_support(12, &xs2), BitVec::from_support(12, &zs2)).unwrap();
            // count qubits where both act non-trivially with different Paulis
            let mut anti = 0;
            for i in 0..12 {
                let pa = (a.x_mask().get(i), a.z_mask().get(i));
                let pb = (b.x_mask().get(i), b.z_mask().get(i));
                if pa != (false, false) && pb != (false, false) && pa != pb {
                    anti += 1;
                }
            }
            prop_assert_eq!(a.commutes(&b).unwrap(), anti % 2 == 0);
            prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
        }
    }
}
