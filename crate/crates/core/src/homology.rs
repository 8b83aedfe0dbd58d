//! Z2 chain complexes relative to the typed boundary.
//!
//! The first boundary map `d1` sends edges to interior vertices; rows for
//! free ends are simply absent, which is what makes the complex relative:
//! its kernel is exactly the set of relative 1-cycles (chains whose
//! boundary lies on free ends). The second map `d2` sends each face to its
//! existing boundary edges. `d1 * d2 = 0` holds because every face closes
//! up at interior vertices, and `ker d1 / im d2` is the relative first
//! homology. Its dimension on the primal side equals the number of logical
//! qubits; relative cycles on the primal lattice carry Z logicals, cycles
//! on the dual carry X logicals.
//!
//! `logical_basis` pairs the two sides symplectically: representatives are
//! BFS paths between boundary segments when the lattice has them (verified
//! nontrivial, never trusted on geometric grounds), or kernel-basis coset
//! representatives otherwise, and the x side is re-based by a GF(2) change
//! of basis so that the pairing matrix is the identity.

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVec, Echelon};
use crate::lattice::{Lattice, SegmentType};
use crate::pauli::{PauliOperator, StabilizerCode};

/// Which of the two mutually dual lattices a chain lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeSide {
    Primal,
    Dual,
}

/// The relative chain complex of one lattice side.
pub struct ChainComplex {
    side: LatticeSide,
    edge_count: usize,
    d1: BitMatrix,
    face_boundaries: Vec<BitVec>,
    face_span: Echelon,
    rank_d1: usize,
}

/// Builds the relative complex of `lattice` (side = primal) or of its dual.
pub fn relative_complex(lattice: &Lattice, side: LatticeSide) -> ChainComplex {
    match side {
        LatticeSide::Primal => ChainComplex::build(lattice, side),
        LatticeSide::Dual => ChainComplex::build(&lattice.dual(), side),
    }
}

impl ChainComplex {
    fn build(lattice: &Lattice, side: LatticeSide) -> Self {
        let n = lattice.edge_count();
        let mut d1 = BitMatrix::new(n);
        for v in 0..lattice.vertex_count() {
            d1.push_row(BitVec::from_support(n, lattice.vertex_star(v)));
        }
        let face_boundaries: Vec<BitVec> = (0..lattice.face_count())
            .map(|p| BitVec::from_support(n, lattice.face_edges(p)))
            .collect();
        let mut face_span = Echelon::new(n);
        for f in &face_boundaries {
            face_span.insert(f.clone());
        }
        let rank_d1 = d1.rank();
        Self { side, edge_count: n, d1, face_boundaries, face_span, rank_d1 }
    }

    pub fn side(&self) -> LatticeSide {
        self.side
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn d1(&self) -> &BitMatrix {
        &self.d1
    }

    pub fn face_boundaries(&self) -> &[BitVec] {
        &self.face_boundaries
    }

    pub fn rank_d2(&self) -> usize {
        self.face_span.rank()
    }

    /// dim ker(d1) - rank(d2).
    pub fn homology_dim(&self) -> usize {
        self.edge_count - self.rank_d1 - self.face_span.rank()
    }

    /// True iff `d1 * chain = 0`, i.e. the chain's boundary lies on free ends.
    pub fn is_relative_cycle(&self, chain: &BitVec) -> bool {
        chain.len() == self.edge_count && self.d1.rows().iter().all(|row| !row.dot(chain))
    }

    /// True iff the cycle is a sum of face boundaries.
    pub fn is_trivial(&self, cycle: &BitVec) -> Result<bool> {
        if !self.is_relative_cycle(cycle) {
            return Err(Error::InvalidParameter("chain is not a relative cycle".into()));
        }
        Ok(self.face_span.contains(cycle))
    }

    /// `d1 * d2 = 0`: every face boundary is a relative cycle.
    pub fn chain_property_holds(&self) -> bool {
        self.face_boundaries.iter().all(|f| self.is_relative_cycle(f))
    }

    /// Deterministic basis of `ker d1` (pivots in ascending edge order).
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        gf2::kernel_basis(self.d1.rows(), self.edge_count)
    }

    /// Coset representatives of a homology basis: kernel vectors that are
    /// independent modulo the face span, in kernel-basis order.
    pub fn homology_basis(&self) -> Vec<BitVec> {
        let mut span = Echelon::new(self.edge_count);
        for f in &self.face_boundaries {
            span.insert(f.clone());
        }
        let mut reps = Vec::new();
        for v in self.kernel_basis() {
            if span.insert(v.clone()) {
                reps.push(v);
            }
        }
        reps
    }

    pub fn class_of(&self, representative: BitVec) -> Result<RelativeCycleClass> {
        let trivial = self.is_trivial(&representative)?;
        Ok(RelativeCycleClass { representative, side: self.side, trivial })
    }
}

/// A relative homology class, carried by an explicit representative.
#[derive(Debug, Clone)]
pub struct RelativeCycleClass {
    representative: BitVec,
    side: LatticeSide,
    trivial: bool,
}

impl RelativeCycleClass {
    pub fn representative(&self) -> &BitVec {
        &self.representative
    }

    pub fn side(&self) -> LatticeSide {
        self.side
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }
}

/// A symplectically paired basis of logical operators: `z_logicals[i]`
/// anticommutes with `x_logicals[j]` iff `i == j`, and everything commutes
/// with every stabilizer generator.
#[derive(Debug, Clone)]
pub struct LogicalBasis {
    z_logicals: Vec<PauliOperator>,
    x_logicals: Vec<PauliOperator>,
}

impl LogicalBasis {
    pub fn z_logicals(&self) -> &[PauliOperator] {
        &self.z_logicals
    }

    pub fn x_logicals(&self) -> &[PauliOperator] {
        &self.x_logicals
    }

    pub fn len(&self) -> usize {
        self.z_logicals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z_logicals.is_empty()
    }

    /// The anticommutation matrix `P[i][j]` between z and x logicals.
    pub fn pairing_matrix(&self) -> Vec<BitVec> {
        let k = self.len();
        let mut rows = Vec::with_capacity(k);
        for zi in &self.z_logicals {
            let mut row = BitVec::zeros(k);
            for (j, xj) in self.x_logicals.iter().enumerate() {
                if !zi.commutes(xj).expect("logicals share the qubit count") {
                    row.set(j);
                }
            }
            rows.push(row);
        }
        rows
    }

    pub fn pairing_is_identity(&self) -> bool {
        self.pairing_matrix()
            .iter()
            .enumerate()
            .all(|(i, row)| row.ones().eq(std::iter::once(i)))
    }

    /// Sparse-row export in the check-matrix format: `Z <i>: <edge ids>`
    /// rows for the z logicals, then `X <i>: <edge ids>` for the x logicals.
    pub fn to_sparse(&self) -> String {
        let mut out = String::new();
        let z_rows: Vec<BitVec> = self.z_logicals.iter().map(|l| l.z_mask().clone()).collect();
        crate::pauli::sparse_rows(&mut out, 'Z', &z_rows);
        let x_rows: Vec<BitVec> = self.x_logicals.iter().map(|l| l.x_mask().clone()).collect();
        crate::pauli::sparse_rows(&mut out, 'X', &x_rows);
        out
    }

    /// Full consistency check against a code: identity pairing, commutation
    /// with all generators, and independence from the stabilizer group
    /// (stacking a logical onto the check matrix raises its rank).
    pub fn validate(&self, code: &StabilizerCode) -> Result<()> {
        if self.z_logicals.len() != self.x_logicals.len() {
            return Err(Error::Inconsistency("unequal logical list lengths".into()));
        }
        if self.len() != code.logical_count() {
            return Err(Error::Inconsistency(format!(
                "basis size {} differs from logical count {}",
                self.len(),
                code.logical_count()
            )));
        }
        if !self.pairing_is_identity() {
            return Err(Error::Inconsistency("pairing matrix is not the identity".into()));
        }
        for (i, l) in self.z_logicals.iter().chain(self.x_logicals.iter()).enumerate() {
            for (g, gen) in code.generators().enumerate() {
                if !l.commutes(gen)? {
                    return Err(Error::Inconsistency(format!(
                        "logical {i} anticommutes with generator {g}"
                    )));
                }
            }
        }
        let hx_rank = code.h_x().rank();
        let hz_rank = code.h_z().rank();
        for l in &self.x_logicals {
            let mut m = code.h_x().clone();
            m.push_row(l.x_mask().clone());
            if m.rank() != hx_rank + 1 {
                return Err(Error::Inconsistency("an x logical is a stabilizer product".into()));
            }
        }
        for l in &self.z_logicals {
            let mut m = code.h_z().clone();
            m.push_row(l.z_mask().clone());
            if m.rank() != hz_rank + 1 {
                return Err(Error::Inconsistency("a z logical is a stabilizer product".into()));
            }
        }
        Ok(())
    }
}

/// Candidate representatives from BFS paths between boundary segments.
///
/// On the primal side the paths join consecutive x segments (V1 to V2,
/// V2 to V3, ...); on the dual side they join each z segment to the last
/// one. Paths are only accepted if they are nontrivial and jointly
/// independent modulo face boundaries.
fn path_candidates(lattice: &Lattice, complex: &ChainComplex, to_last: bool) -> Option<Vec<BitVec>> {
    let segs = lattice.segments();
    let xs: Vec<usize> = lattice.x_segment_indices();
    if xs.len() < 2 {
        return None;
    }
    let mut span = Echelon::new(complex.edge_count());
    for f in complex.face_boundaries() {
        span.insert(f.clone());
    }
    let mut reps = Vec::new();
    for i in 0..xs.len() - 1 {
        let (a, b) = if to_last {
            (xs[i], *xs.last().expect("nonempty"))
        } else {
            (xs[i], xs[i + 1])
        };
        let path = lattice.shortest_free_end_path(&segs[a].members, &segs[b].members)?;
        let chain = BitVec::from_support(complex.edge_count(), &path);
        if !complex.is_relative_cycle(&chain) {
            return None;
        }
        if !span.insert(chain.clone()) {
            return None; // trivial or dependent: fall back to kernel reps
        }
        reps.push(chain);
    }
    Some(reps)
}

/// Extracts a symplectically paired logical basis for the code.
pub fn logical_basis(code: &StabilizerCode) -> Result<LogicalBasis> {
    let lattice = code.lattice();
    let dual = lattice.dual();
    let primal = relative_complex(lattice, LatticeSide::Primal);
    let dual_cx = ChainComplex::build(&dual, LatticeSide::Dual);
    let k = primal.homology_dim();
    if dual_cx.homology_dim() != k {
        return Err(Error::Inconsistency(format!(
            "homology dimensions differ: primal {k}, dual {}",
            dual_cx.homology_dim()
        )));
    }

    let z_reps = match path_candidates(lattice, &primal, false) {
        Some(reps) if reps.len() == k => reps,
        _ => primal.homology_basis(),
    };
    let x_reps = match path_candidates(&dual, &dual_cx, true) {
        Some(reps) if reps.len() == k => reps,
        _ => dual_cx.homology_basis(),
    };
    if z_reps.len() != k || x_reps.len() != k {
        return Err(Error::Inconsistency("homology basis extraction miscounted".into()));
    }

    // pairing P[i][j] = |z_i intersect x_j| mod 2; re-base the x side so
    // that P becomes the identity
    let pairing: Vec<BitVec> = z_reps
        .iter()
        .map(|z| {
            let mut row = BitVec::zeros(k);
            for (j, x) in x_reps.iter().enumerate() {
                if z.dot(x) {
                    row.set(j);
                }
            }
            row
        })
        .collect();
    let inv = gf2::invert(&pairing)
        .ok_or_else(|| Error::Inconsistency("singular pairing matrix".into()))?;
    let n = code.qubit_count();
    let x_paired: Vec<BitVec> = (0..k)
        .map(|j| {
            let mut acc = BitVec::zeros(n);
            for (t, x) in x_reps.iter().enumerate() {
                if inv[t].get(j) {
                    acc.xor_assign(x);
                }
            }
            acc
        })
        .collect();

    Ok(LogicalBasis {
        z_logicals: z_reps.into_iter().map(PauliOperator::from_z_mask).collect(),
        x_logicals: x_paired.into_iter().map(PauliOperator::from_x_mask).collect(),
    })
}

/// Free ends touched an odd number of times by a chain: the endpoints of a
/// path, as (segment index, free end) pairs.
pub fn chain_segment_endpoints(lattice: &Lattice, chain: &BitVec) -> Vec<(usize, usize)> {
    let mut odd_free: Vec<usize> = Vec::new();
    for fe in 0..lattice.free_end_count() {
        if chain.get(lattice.free_end_edge(fe)) {
            odd_free.push(fe);
        }
    }
    let mut out = Vec::new();
    for fe in odd_free {
        for (si, seg) in lattice.segments().iter().enumerate() {
            if seg.segment_type == SegmentType::XBoundary && seg.members.contains(&fe) {
                out.push((si, fe));
            }
        }
    }
    out
}
