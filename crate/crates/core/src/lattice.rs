//! Combinatorial 2-complexes with typed boundary.
//!
//! A lattice is a set of interior vertices, edges and faces. Each edge has
//! two endpoints, each either an interior vertex or a *free end*. Free ends
//! carry no stabilizer site; they make up the x-type boundary. The z-type
//! boundary lives on the dual lattice: every edge side not covered by a face
//! (an edge belongs to at most two faces) is a *dual free end*. Boundary
//! segments group free ends (x segments) and dual free ends (z segments)
//! into labeled pieces.
//!
//! # Rectangle indexing
//!
//! `Lattice::rectangle(n, m)` places interior vertices on a grid of `n + 1`
//! rows by `m` columns, vertex `(r, c)` at index `r * m + c`. Each vertex row
//! carries `m + 1` horizontal edges; the outermost ones end in free ends, so
//! the left and right columns of free ends form the two x segments `V1` and
//! `V2`. There are `n * m` vertical edges between consecutive rows. Faces sit
//! between consecutive vertex rows: `m - 1` interior four-edge faces plus a
//! truncated three-edge face at each end of the row (the missing fourth edge
//! would join two free ends). The top and bottom rows of horizontal edges
//! each have one uncovered side; those dual free ends form the two z segments
//! `V*1` (top) and `V*2` (bottom). Totals: `(n+1)(m+1)` horizontal plus `nm`
//! vertical edges, `n(m+1)` faces, `(n+1)m` interior vertices.
//!
//! Edge indices: horizontal edges first, row-major with the free-ended edge
//! at position 0 of each row, then vertical edges row-major.
//!
//! # Disk indexing
//!
//! `Lattice::disk(k, scale)` builds a disk whose boundary alternates `k`
//! x segments and `k` z segments. It starts from a fully-faced rectangular
//! grid with `R + C = max(k * scale, 2)` (R rows by C columns of faces) and
//! walks the outer cycle clockwise from the top-left corner. Each x segment
//! claims `scale + 1` consecutive outer vertices, attaching a free-ended
//! whisker edge to each and a truncated three-edge face between consecutive
//! whiskers; each z segment is the following run of bare boundary edges
//! (length `scale`, padded when `k * scale < 2`). Segments are stored in
//! cyclic order `V1, V*1, V2, V*2, ...`; `V*i` lies between `Vi` and
//! `Vi+1`, and the two whiskers flanking a z run contribute their uncovered
//! sides to it, exactly as the rectangle corners do.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// What kind of cell an index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    Vertex,
    Edge,
    Face,
}

/// A typed cell index, mostly used in diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CellId {
    pub kind: CellKind,
    pub index: usize,
}

impl CellId {
    pub fn vertex(index: usize) -> Self {
        Self { kind: CellKind::Vertex, index }
    }
    pub fn edge(index: usize) -> Self {
        Self { kind: CellKind::Edge, index }
    }
    pub fn face(index: usize) -> Self {
        Self { kind: CellKind::Face, index }
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            CellKind::Vertex => "v",
            CellKind::Edge => "e",
            CellKind::Face => "p",
        };
        write!(f, "{tag}{}", self.index)
    }
}

/// One endpoint of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Vertex(usize),
    Free(usize),
}

impl Endpoint {
    fn sort_key(self) -> (u8, usize) {
        match self {
            Endpoint::Vertex(i) => (0, i),
            Endpoint::Free(i) => (1, i),
        }
    }
}

/// Boundary condition type of a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentType {
    XBoundary,
    ZBoundary,
}

/// A labeled piece of boundary.
///
/// For x segments `members` are free-end ids of this lattice; for
/// z segments they are dual free-end ids (uncovered edge sides).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySegment {
    pub segment_type: SegmentType,
    pub members: Vec<usize>,
    pub label: String,
}

/// Input form of a boundary segment for [`Lattice::from_parts`].
///
/// X members are free-end ids. Z members are *edge* ids, one entry per
/// uncovered side being claimed; they are resolved to dual free ends during
/// validation.
#[derive(Debug, Clone)]
pub struct SegmentSpec {
    pub segment_type: SegmentType,
    pub label: String,
    pub members: Vec<usize>,
}

/// An immutable validated 2-complex with typed boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    vertex_count: usize,
    free_end_count: usize,
    edges: Vec<[Endpoint; 2]>,
    faces: Vec<Vec<usize>>,
    segments: Vec<BoundarySegment>,
    // derived incidence data
    free_end_edge: Vec<usize>,
    edge_faces: Vec<Vec<usize>>,
    vertex_edges: Vec<Vec<usize>>,
    dual_free_end_edge: Vec<usize>,
}

impl Lattice {
    /// Validates and assembles a lattice from raw parts.
    pub fn from_parts(
        vertex_count: usize,
        free_end_count: usize,
        edges: Vec<[Endpoint; 2]>,
        faces: Vec<Vec<usize>>,
        segments: Vec<SegmentSpec>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidLattice(msg));
        if edges.is_empty() {
            return bad("lattice has no edges".into());
        }

        let mut free_end_edge = vec![usize::MAX; free_end_count];
        let mut vertex_edges: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for (e, eps) in edges.iter().enumerate() {
            if let [Endpoint::Vertex(a), Endpoint::Vertex(b)] = eps {
                if a == b {
                    return bad(format!("{} is a self-loop at {}", CellId::edge(e), CellId::vertex(*a)));
                }
            }
            for ep in eps {
                match *ep {
                    Endpoint::Vertex(v) => {
                        if v >= vertex_count {
                            return bad(format!("{} references unknown {}", CellId::edge(e), CellId::vertex(v)));
                        }
                        vertex_edges[v].push(e);
                    }
                    Endpoint::Free(fe) => {
                        if fe >= free_end_count {
                            return bad(format!("{} references unknown free end free{fe}", CellId::edge(e)));
                        }
                        if free_end_edge[fe] != usize::MAX {
                            return bad(format!("free end free{fe} is attached to more than one edge"));
                        }
                        free_end_edge[fe] = e;
                    }
                }
            }
        }
        if let Some(fe) = free_end_edge.iter().position(|&e| e == usize::MAX) {
            return bad(format!("free end free{fe} is attached to no edge"));
        }
        if let Some(v) = vertex_edges.iter().position(|es| es.is_empty()) {
            return bad(format!("{} has no incident edge", CellId::vertex(v)));
        }

        let mut faces = faces;
        let mut edge_faces: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
        for (p, list) in faces.iter_mut().enumerate() {
            if list.is_empty() {
                return bad(format!("{} has an empty edge list", CellId::face(p)));
            }
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("{} lists an edge twice", CellId::face(p)));
            }
            for &e in list.iter() {
                if e >= edges.len() {
                    return bad(format!("{} references unknown {}", CellId::face(p), CellId::edge(e)));
                }
                if edge_faces[e].len() == 2 {
                    return bad(format!("{} belongs to more than two faces", CellId::edge(e)));
                }
                edge_faces[e].push(p);
            }
            // the face boundary must close up at every interior vertex
            let mut incidence: HashMap<usize, usize> = HashMap::new();
            for &e in list.iter() {
                for ep in &edges[e] {
                    if let Endpoint::Vertex(v) = ep {
                        *incidence.entry(*v).or_insert(0) += 1;
                    }
                }
            }
            if let Some((&v, _)) = incidence.iter().find(|&(_, &c)| c % 2 == 1) {
                return bad(format!(
                    "{} has odd incidence at {}; its boundary does not close up",
                    CellId::face(p),
                    CellId::vertex(v)
                ));
            }
        }

        // dual free ends: one per uncovered edge side, in (edge, occurrence) order
        let mut dual_free_end_edge = Vec::new();
        let mut dual_start = vec![0usize; edges.len()];
        for (e, fs) in edge_faces.iter().enumerate() {
            dual_start[e] = dual_free_end_edge.len();
            for _ in fs.len()..2 {
                dual_free_end_edge.push(e);
            }
        }

        // resolve segments
        let mut resolved = Vec::with_capacity(segments.len());
        let mut labels_seen: Vec<&str> = Vec::new();
        let mut free_seen = vec![false; free_end_count];
        let mut dual_claimed = vec![0usize; edges.len()];
        let mut dual_total = 0usize;
        for spec in &segments {
            if spec.members.is_empty() {
                return bad(format!("segment {} has no members", spec.label));
            }
            if labels_seen.contains(&spec.label.as_str()) {
                return bad(format!("duplicate segment label {}", spec.label));
            }
            labels_seen.push(&spec.label);
            let members = match spec.segment_type {
                SegmentType::XBoundary => {
                    for &fe in &spec.members {
                        if fe >= free_end_count {
                            return bad(format!("segment {} references unknown free end free{fe}", spec.label));
                        }
                        if free_seen[fe] {
                            return bad(format!("free end free{fe} belongs to more than one segment"));
                        }
                        free_seen[fe] = true;
                    }
                    spec.members.clone()
                }
                SegmentType::ZBoundary => {
                    let mut ids = Vec::with_capacity(spec.members.len());
                    for &e in &spec.members {
                        if e >= edges.len() {
                            return bad(format!("segment {} references unknown {}", spec.label, CellId::edge(e)));
                        }
                        let uncovered = 2 - edge_faces[e].len();
                        if dual_claimed[e] == uncovered {
                            return bad(format!(
                                "segment {} claims more dual free ends on {} than it has",
                                spec.label,
                                CellId::edge(e)
                            ));
                        }
                        ids.push(dual_start[e] + dual_claimed[e]);
                        dual_claimed[e] += 1;
                        dual_total += 1;
                    }
                    ids
                }
            };
            resolved.push(BoundarySegment {
                segment_type: spec.segment_type,
                members,
                label: spec.label.clone(),
            });
        }
        if let Some(fe) = free_seen.iter().position(|&s| !s) {
            return bad(format!("boundary segment covering violation: free end free{fe} is in no x segment"));
        }
        if dual_total != dual_free_end_edge.len() {
            return bad(format!(
                "boundary segment covering violation: {} of {} dual free ends assigned to z segments",
                dual_total,
                dual_free_end_edge.len()
            ));
        }

        Ok(Self {
            vertex_count,
            free_end_count,
            edges,
            faces,
            segments: resolved,
            free_end_edge,
            edge_faces,
            vertex_edges,
            dual_free_end_edge,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn free_end_count(&self) -> usize {
        self.free_end_count
    }

    pub fn dual_free_end_count(&self) -> usize {
        self.dual_free_end_edge.len()
    }

    pub fn edge_endpoints(&self, e: usize) -> [Endpoint; 2] {
        self.edges[e]
    }

    pub fn face_edges(&self, p: usize) -> &[usize] {
        &self.faces[p]
    }

    /// Faces containing edge `e` (at most two).
    pub fn faces_of_edge(&self, e: usize) -> &[usize] {
        &self.edge_faces[e]
    }

    /// Edges incident to interior vertex `v`, ascending.
    pub fn vertex_star(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    pub fn free_end_edge(&self, fe: usize) -> usize {
        self.free_end_edge[fe]
    }

    pub fn dual_free_end_edge(&self, d: usize) -> usize {
        self.dual_free_end_edge[d]
    }

    pub fn segments(&self) -> &[BoundarySegment] {
        &self.segments
    }

    /// Indices into `segments()` of the x segments, in stored order.
    pub fn x_segment_indices(&self) -> Vec<usize> {
        self.segments
            .iter()
            .enumerate()
            .filter(|(_, s)| s.segment_type == SegmentType::XBoundary)
            .map(|(i, _)| i)
            .collect()
    }

    /// Indices into `segments()` of the z segments, in stored order.
    pub fn z_segment_indices(&self) -> Vec<usize> {
        self.segments
            .iter()
            .enumerate()
            .filter(|(_, s)| s.segment_type == SegmentType::ZBoundary)
            .map(|(i, _)| i)
            .collect()
    }

    /// V - E + F over interior cells.
    pub fn euler_characteristic(&self) -> isize {
        self.vertex_count as isize - self.edges.len() as isize + self.faces.len() as isize
    }

    /// The planar code lattice on an n by m rectangle. See the module docs
    /// for the exact indexing convention.
    pub fn rectangle(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameter(format!(
                "rectangle requires n >= 1 and m >= 1, got {n} x {m}"
            )));
        }
        let rows = n + 1;
        let v = |r: usize, c: usize| r * m + c;
        let h = |r: usize, pos: usize| r * (m + 1) + pos;
        let nh = rows * (m + 1);
        let ve = |r: usize, c: usize| nh + r * m + c;
        let left_free = |r: usize| r;
        let right_free = |r: usize| rows + r;

        let mut edges = Vec::with_capacity(nh + n * m);
        for r in 0..rows {
            edges.push([Endpoint::Free(left_free(r)), Endpoint::Vertex(v(r, 0))]);
            for pos in 1..m {
                edges.push([Endpoint::Vertex(v(r, pos - 1)), Endpoint::Vertex(v(r, pos))]);
            }
            edges.push([Endpoint::Vertex(v(r, m - 1)), Endpoint::Free(right_free(r))]);
        }
        for r in 0..n {
            for c in 0..m {
                edges.push([Endpoint::Vertex(v(r, c)), Endpoint::Vertex(v(r + 1, c))]);
            }
        }

        let mut faces = Vec::with_capacity(n * (m + 1));
        for r in 0..n {
            for j in 0..=m {
                let mut f = if j == 0 {
                    vec![h(r, 0), h(r + 1, 0), ve(r, 0)]
                } else if j == m {
                    vec![h(r, m), h(r + 1, m), ve(r, m - 1)]
                } else {
                    vec![h(r, j), h(r + 1, j), ve(r, j - 1), ve(r, j)]
                };
                f.sort_unstable();
                faces.push(f);
            }
        }

        let segments = vec![
            SegmentSpec {
                segment_type: SegmentType::XBoundary,
                label: "V1".into(),
                members: (0..rows).map(left_free).collect(),
            },
            SegmentSpec {
                segment_type: SegmentType::ZBoundary,
                label: "V*1".into(),
                members: (0..=m).map(|pos| h(0, pos)).collect(),
            },
            SegmentSpec {
                segment_type: SegmentType::XBoundary,
                label: "V2".into(),
                members: (0..rows).map(right_free).collect(),
            },
            SegmentSpec {
                segment_type: SegmentType::ZBoundary,
                label: "V*2".into(),
                members: (0..=m).map(|pos| h(n, pos)).collect(),
            },
        ];

        Self::from_parts(rows * m, 2 * rows, edges, faces, segments)
    }

    /// The n by n square lattice on the torus: closed, no boundary.
    pub fn torus(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "torus requires n >= 2, got {n}"
            )));
        }
        let v = |r: usize, c: usize| r * n + c;
        let h = |r: usize, c: usize| r * n + c;
        let ve = |r: usize, c: usize| n * n + r * n + c;
        let mut edges = Vec::with_capacity(2 * n * n);
        for r in 0..n {
            for c in 0..n {
                edges.push([Endpoint::Vertex(v(r, c)), Endpoint::Vertex(v(r, (c + 1) % n))]);
            }
        }
        for r in 0..n {
            for c in 0..n {
                edges.push([Endpoint::Vertex(v(r, c)), Endpoint::Vertex(v((r + 1) % n, c))]);
            }
        }
        let mut faces = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut f = vec![h(r, c), h((r + 1) % n, c), ve(r, c), ve(r, (c + 1) % n)];
                f.sort_unstable();
                faces.push(f);
            }
        }
        Self::from_parts(n * n, 0, edges, faces, Vec::new())
    }

    /// A disk whose boundary alternates `k` x segments and `k` z segments.
    /// `scale` is the arc length in boundary edges. See the module docs.
    pub fn disk(k: usize, scale: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("disk requires k >= 1".into()));
        }
        if scale == 0 {
            return Err(Error::InvalidParameter("disk requires scale >= 1".into()));
        }
        let total = (k * scale).max(2);
        let r_rows = total / 2;
        let c_cols = total - r_rows;
        let vcols = c_cols + 1;
        let v = |r: usize, c: usize| r * vcols + c;
        let h = |r: usize, c: usize| r * c_cols + c;
        let nh = (r_rows + 1) * c_cols;
        let w = |r: usize, c: usize| nh + r * vcols + c;

        let mut edges = Vec::new();
        for r in 0..=r_rows {
            for c in 0..c_cols {
                edges.push([Endpoint::Vertex(v(r, c)), Endpoint::Vertex(v(r, c + 1))]);
            }
        }
        for r in 0..r_rows {
            for c in 0..vcols {
                edges.push([Endpoint::Vertex(v(r, c)), Endpoint::Vertex(v(r + 1, c))]);
            }
        }
        let mut faces = Vec::new();
        for r in 0..r_rows {
            for c in 0..c_cols {
                let mut f = vec![h(r, c), h(r + 1, c), w(r, c), w(r, c + 1)];
                f.sort_unstable();
                faces.push(f);
            }
        }

        // outer cycle, clockwise from the top-left corner
        let mut cyc_v = Vec::new();
        let mut cyc_e = Vec::new();
        for c in 0..c_cols {
            cyc_v.push(v(0, c));
            cyc_e.push(h(0, c));
        }
        for r in 0..r_rows {
            cyc_v.push(v(r, c_cols));
            cyc_e.push(w(r, c_cols));
        }
        for c in (0..c_cols).rev() {
            cyc_v.push(v(r_rows, c + 1));
            cyc_e.push(h(r_rows, c));
        }
        for r in (0..r_rows).rev() {
            cyc_v.push(v(r + 1, 0));
            cyc_e.push(w(r, 0));
        }
        let perimeter = cyc_v.len();
        debug_assert_eq!(perimeter, 2 * (r_rows + c_cols));

        // arc lengths: x arcs take `scale` edges each, z arcs share the rest
        let z_total = perimeter - k * scale;
        let z_len = |i: usize| z_total / k + usize::from(i < z_total % k);
        let mut x_start = vec![0usize; k + 1];
        for i in 0..k {
            x_start[i + 1] = x_start[i] + scale + z_len(i);
        }

        let mut free_count = 0usize;
        let mut segments = Vec::with_capacity(2 * k);
        // whisker edge ids per arc, in boundary order
        let mut arc_whiskers: Vec<Vec<usize>> = Vec::with_capacity(k);
        for (i, &start) in x_start[..k].iter().enumerate() {
            let mut whiskers = Vec::with_capacity(scale + 1);
            let mut members = Vec::with_capacity(scale + 1);
            for j in 0..=scale {
                let pos = (start + j) % perimeter;
                let eid = edges.len();
                edges.push([Endpoint::Vertex(cyc_v[pos]), Endpoint::Free(free_count)]);
                whiskers.push(eid);
                members.push(free_count);
                free_count += 1;
            }
            for j in 0..scale {
                let pos = (start + j) % perimeter;
                let mut f = vec![whiskers[j], cyc_e[pos], whiskers[j + 1]];
                f.sort_unstable();
                faces.push(f);
            }
            segments.push(SegmentSpec {
                segment_type: SegmentType::XBoundary,
                label: format!("V{}", i + 1),
                members,
            });
            arc_whiskers.push(whiskers);
        }
        // interleave the z segments: V*i sits between Vi and Vi+1
        for (i, &start) in x_start[..k].iter().enumerate() {
            let mut members = vec![*arc_whiskers[i].last().expect("arc has whiskers")];
            for t in 0..z_len(i) {
                members.push(cyc_e[(start + scale + t) % perimeter]);
            }
            members.push(arc_whiskers[(i + 1) % k][0]);
            segments.insert(
                2 * i + 1,
                SegmentSpec {
                    segment_type: SegmentType::ZBoundary,
                    label: format!("V*{}", i + 1),
                    members,
                },
            );
        }

        Self::from_parts((r_rows + 1) * vcols, free_count, edges, faces, segments)
    }

    /// The dual lattice: faces and vertices swap roles, edges correspond
    /// one to one, x and z segments trade places.
    pub fn dual(&self) -> Lattice {
        let mut edges = Vec::with_capacity(self.edges.len());
        // free ends of the dual are this lattice's dual free ends; both are
        // enumerated in (edge, occurrence) order, so ids carry over directly
        let mut next_dual = 0usize;
        for (e, fs) in self.edge_faces.iter().enumerate() {
            let mut eps: Vec<Endpoint> = fs.iter().map(|&p| Endpoint::Vertex(p)).collect();
            while eps.len() < 2 {
                debug_assert_eq!(self.dual_free_end_edge[next_dual], e);
                eps.push(Endpoint::Free(next_dual));
                next_dual += 1;
            }
            edges.push([eps[0], eps[1]]);
        }
        let faces: Vec<Vec<usize>> = self.vertex_edges.clone();

        let segments = self
            .segments
            .iter()
            .map(|s| match s.segment_type {
                SegmentType::ZBoundary => SegmentSpec {
                    segment_type: SegmentType::XBoundary,
                    label: s.label.clone(),
                    members: s.members.clone(),
                },
                SegmentType::XBoundary => SegmentSpec {
                    segment_type: SegmentType::ZBoundary,
                    label: s.label.clone(),
                    // one uncovered dual side per free end, claimed per edge
                    members: s.members.iter().map(|&f| self.free_end_edge[f]).collect(),
                },
            })
            .collect();

        Lattice::from_parts(self.faces.len(), self.dual_free_end_edge.len(), edges, faces, segments)
            .expect("dual of a valid lattice is valid")
    }

    /// Canonical relabeling: free ends renumbered in (edge, slot) order,
    /// endpoint pairs and segment members sorted. Two lattices that differ
    /// only by free-end numbering compare equal after canonicalization.
    pub fn canonical(&self) -> Lattice {
        let mut free_map = vec![0usize; self.free_end_count];
        let mut counter = 0usize;
        for eps in &self.edges {
            for ep in eps {
                if let Endpoint::Free(f) = ep {
                    free_map[*f] = counter;
                    counter += 1;
                }
            }
        }
        let map_ep = |ep: Endpoint| match ep {
            Endpoint::Vertex(v) => Endpoint::Vertex(v),
            Endpoint::Free(f) => Endpoint::Free(free_map[f]),
        };
        let edges: Vec<[Endpoint; 2]> = self
            .edges
            .iter()
            .map(|&[a, b]| {
                let (a, b) = (map_ep(a), map_ep(b));
                if a.sort_key() <= b.sort_key() {
                    [a, b]
                } else {
                    [b, a]
                }
            })
            .collect();
        let segments = self
            .segments
            .iter()
            .map(|s| {
                let mut members = match s.segment_type {
                    SegmentType::XBoundary => s.members.iter().map(|&f| free_map[f]).collect::<Vec<_>>(),
                    SegmentType::ZBoundary => s.members.clone(),
                };
                members.sort_unstable();
                BoundarySegment { segment_type: s.segment_type, members, label: s.label.clone() }
            })
            .collect();
        let mut free_end_edge = vec![0usize; self.free_end_count];
        for (f, &e) in self.free_end_edge.iter().enumerate() {
            free_end_edge[free_map[f]] = e;
        }
        Lattice {
            vertex_count: self.vertex_count,
            free_end_count: self.free_end_count,
            edges,
            faces: self.faces.clone(),
            segments,
            free_end_edge,
            edge_faces: self.edge_faces.clone(),
            vertex_edges: self.vertex_edges.clone(),
            dual_free_end_edge: self.dual_free_end_edge.clone(),
        }
    }

    /// Shortest edge path from any free end in `sources` to any in
    /// `targets`, by multi-source BFS. Deterministic: sources are seeded in
    /// order and neighbors expand in ascending edge order.
    pub fn shortest_free_end_path(&self, sources: &[usize], targets: &[usize]) -> Option<Vec<usize>> {
        let nodes = self.vertex_count + self.free_end_count;
        let node_of = |ep: Endpoint| match ep {
            Endpoint::Vertex(v) => v,
            Endpoint::Free(f) => self.vertex_count + f,
        };
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            adj[node_of(a)].push((e, node_of(b)));
            adj[node_of(b)].push((e, node_of(a)));
        }
        let mut is_target = vec![false; nodes];
        for &t in targets {
            is_target[self.vertex_count + t] = true;
        }
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; nodes]; // (node, edge)
        let mut seen = vec![false; nodes];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            let node = self.vertex_count + s;
            if !seen[node] {
                seen[node] = true;
                queue.push_back(node);
            }
        }
        while let Some(cur) = queue.pop_front() {
            for &(e, next) in &adj[cur] {
                if seen[next] {
                    continue;
                }
                seen[next] = true;
                parent[next] = Some((cur, e));
                if is_target[next] {
                    let mut path = Vec::new();
                    let mut node = next;
                    while let Some((prev, edge)) = parent[node] {
                        path.push(edge);
                        node = prev;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(next);
            }
        }
        None
    }

    /// Parses the `lattice v1` text format. See [`Lattice::to_file_string`].
    pub fn parse(text: &str) -> Result<Self> {
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let mut edges: HashMap<usize, ([Endpoint; 2], usize)> = HashMap::new();
        let mut faces: HashMap<usize, (Vec<usize>, usize)> = HashMap::new();
        let mut segments: Vec<SegmentSpec> = Vec::new();
        let mut max_vertex: Option<usize> = None;
        let mut max_free: Option<usize> = None;
        let mut header_seen = false;

        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !header_seen {
                if tokens != ["lattice", "v1"] {
                    return Err(perr(lineno, "expected header `lattice v1`".into()));
                }
                header_seen = true;
                continue;
            }
            let parse_idx = |tok: &str, what: &str| -> Result<usize> {
                tok.parse::<usize>()
                    .map_err(|_| perr(lineno, format!("invalid {what} `{tok}`")))
            };
            let parse_endpoint = |tok: &str| -> Result<Endpoint> {
                if let Some(rest) = tok.strip_prefix("free") {
                    Ok(Endpoint::Free(parse_idx(rest, "free end index")?))
                } else if let Some(rest) = tok.strip_prefix('v') {
                    Ok(Endpoint::Vertex(parse_idx(rest, "vertex index")?))
                } else {
                    Err(perr(lineno, format!("invalid endpoint `{tok}`; expected v<idx> or free<idx>")))
                }
            };
            match tokens[0] {
                "edge" => {
                    if tokens.len() != 4 {
                        return Err(perr(lineno, "edge line needs an id and two endpoints".into()));
                    }
                    let id = parse_idx(tokens[1], "edge id")?;
                    let a = parse_endpoint(tokens[2])?;
                    let b = parse_endpoint(tokens[3])?;
                    for ep in [a, b] {
                        match ep {
                            Endpoint::Vertex(v) => max_vertex = Some(max_vertex.map_or(v, |m| m.max(v))),
                            Endpoint::Free(f) => max_free = Some(max_free.map_or(f, |m| m.max(f))),
                        }
                    }
                    if edges.insert(id, ([a, b], lineno)).is_some() {
                        return Err(perr(lineno, format!("edge {id} defined twice")));
                    }
                }
                "face" => {
                    if tokens.len() < 3 {
                        return Err(perr(lineno, "face line needs an id and at least one edge".into()));
                    }
                    let id = parse_idx(tokens[1], "face id")?;
                    let list = tokens[2..]
                        .iter()
                        .map(|t| parse_idx(t, "edge id"))
                        .collect::<Result<Vec<_>>>()?;
                    if faces.insert(id, (list, lineno)).is_some() {
                        return Err(perr(lineno, format!("face {id} defined twice")));
                    }
                }
                "xseg" | "zseg" => {
                    if tokens.len() < 3 {
                        return Err(perr(lineno, format!("{} line needs a label and members", tokens[0])));
                    }
                    let is_x = tokens[0] == "xseg";
                    let members = tokens[2..]
                        .iter()
                        .map(|t| {
                            if is_x {
                                match parse_endpoint(t)? {
                                    Endpoint::Free(f) => Ok(f),
                                    Endpoint::Vertex(_) => {
                                        Err(perr(lineno, format!("xseg member `{t}` must be a free end")))
                                    }
                                }
                            } else {
                                let rest = t.strip_prefix('d').ok_or_else(|| {
                                    perr(lineno, format!("zseg member `{t}` must be d<edge-id>"))
                                })?;
                                parse_idx(rest, "edge id")
                            }
                        })
                        .collect::<Result<Vec<_>>>()?;
                    segments.push(SegmentSpec {
                        segment_type: if is_x { SegmentType::XBoundary } else { SegmentType::ZBoundary },
                        label: tokens[1].to_string(),
                        members,
                    });
                }
                other => {
                    return Err(perr(lineno, format!("unknown directive `{other}`")));
                }
            }
        }
        if !header_seen {
            return Err(perr(1, "missing header `lattice v1`".into()));
        }
        if edges.is_empty() {
            return Err(perr(1, "no edges defined".into()));
        }

        let edge_count = edges.len();
        let mut edge_list = vec![[Endpoint::Vertex(0); 2]; edge_count];
        for (id, (eps, lineno)) in edges {
            if id >= edge_count {
                return Err(perr(lineno, format!("edge ids must cover 0..{edge_count}, got {id}")));
            }
            edge_list[id] = eps;
        }
        let face_count = faces.len();
        let mut face_list = vec![Vec::new(); face_count];
        for (id, (list, lineno)) in faces {
            if id >= face_count {
                return Err(perr(lineno, format!("face ids must cover 0..{face_count}, got {id}")));
            }
            face_list[id] = list;
        }

        Self::from_parts(
            max_vertex.map_or(0, |m| m + 1),
            max_free.map_or(0, |m| m + 1),
            edge_list,
            face_list,
            segments,
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Serializes to the line-oriented `lattice v1` format:
    /// `edge <id> <endpoint> <endpoint>` with endpoints `v<idx>` or
    /// `free<idx>`, `face <id> <edge ids>`, `xseg <label> <free ends>`,
    /// `zseg <label> <d<edge-id> per uncovered side>`. `#` starts a comment.
    pub fn to_file_string(&self) -> String {
        use std::fmt::Write;
        let mut out = String::from("lattice v1\n");
        let ep = |e: Endpoint| match e {
            Endpoint::Vertex(v) => format!("v{v}"),
            Endpoint::Free(f) => format!("free{f}"),
        };
        for (i, &[a, b]) in self.edges.iter().enumerate() {
            writeln!(out, "edge {i} {} {}", ep(a), ep(b)).unwrap();
        }
        for (i, f) in self.faces.iter().enumerate() {
            let ids: Vec<String> = f.iter().map(|e| e.to_string()).collect();
            writeln!(out, "face {i} {}", ids.join(" ")).unwrap();
        }
        for s in &self.segments {
            match s.segment_type {
                SegmentType::XBoundary => {
                    let ms: Vec<String> = s.members.iter().map(|f| format!("free{f}")).collect();
                    writeln!(out, "xseg {} {}", s.label, ms.join(" ")).unwrap();
                }
                SegmentType::ZBoundary => {
                    let ms: Vec<String> =
                        s.members.iter().map(|&d| format!("d{}", self.dual_free_end_edge[d])).collect();
                    writeln!(out, "zseg {} {}", s.label, ms.join(" ")).unwrap();
                }
            }
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_file_string())?;
        Ok(())
    }
}
