//! Isomorphism of CSS codes up to relabeling.
//!
//! Two codes are compared as support hypergraphs: a bijection of qubits
//! must map the multiset of X generator supports onto the other code's and
//! likewise for Z. The search is plain backtracking over qubit assignments,
//! pruned by per-qubit signatures and pairwise co-incidence counts, which
//! is ample for desk-scale instances.

use crate::error::{Error, Result};
use crate::pauli::StabilizerCode;

/// A code reduced to its generator supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeView {
    pub n: usize,
    pub x_rows: Vec<Vec<usize>>,
    pub z_rows: Vec<Vec<usize>>,
}

impl CodeView {
    pub fn from_code(code: &StabilizerCode) -> Self {
        Self {
            n: code.qubit_count(),
            x_rows: code.vertex_generators().iter().map(|g| g.x_mask().support()).collect(),
            z_rows: code.face_generators().iter().map(|g| g.z_mask().support()).collect(),
        }
    }

    /// Parses the sparse check format (`X <i>: <ids>` / `Z <i>: <ids>`).
    pub fn parse_sparse(text: &str, n: usize) -> Result<Self> {
        let mut x_rows = Vec::new();
        let mut z_rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, message: msg };
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| err("expected `X <i>: <ids>` or `Z <i>: <ids>`".into()))?;
            let ids = rest
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .ok()
                        .filter(|&q| q < n)
                        .ok_or_else(|| err(format!("bad qubit index `{t}`")))
                })
                .collect::<Result<Vec<usize>>>()?;
            let mut ids = ids;
            ids.sort_unstable();
            match head.split_whitespace().next() {
                Some("X") => x_rows.push(ids),
                Some("Z") => z_rows.push(ids),
                _ => return Err(err(format!("unknown row tag in `{head}`"))),
            }
        }
        Ok(Self { n, x_rows, z_rows })
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord, Clone, Debug)]
struct Signature {
    x_deg: usize,
    z_deg: usize,
    x_weights: Vec<usize>,
    z_weights: Vec<usize>,
}

struct Side {
    sig: Vec<Signature>,
    x_pair: Vec<Vec<u8>>,
    z_pair: Vec<Vec<u8>>,
}

fn analyze(view: &CodeView) -> Side {
    let n = view.n;
    let mut sig: Vec<Signature> = (0..n)
        .map(|_| Signature { x_deg: 0, z_deg: 0, x_weights: vec![], z_weights: vec![] })
        .collect();
    let mut x_pair = vec![vec![0u8; n]; n];
    let mut z_pair = vec![vec![0u8; n]; n];
    for row in &view.x_rows {
        for &q in row {
            sig[q].x_deg += 1;
            sig[q].x_weights.push(row.len());
        }
        for (i, &q) in row.iter().enumerate() {
            for &r in &row[i + 1..] {
                x_pair[q][r] += 1;
                x_pair[r][q] += 1;
            }
        }
    }
    for row in &view.z_rows {
        for &q in row {
            sig[q].z_deg += 1;
            sig[q].z_weights.push(row.len());
        }
        for (i, &q) in row.iter().enumerate() {
            for &r in &row[i + 1..] {
                z_pair[q][r] += 1;
                z_pair[r][q] += 1;
            }
        }
    }
    for s in &mut sig {
        s.x_weights.sort_unstable();
        s.z_weights.sort_unstable();
    }
    Side { sig, x_pair, z_pair }
}

fn sorted_rows(rows: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = rows.to_vec();
    for r in &mut out {
        r.sort_unstable();
    }
    out.sort();
    out
}

/// Whether the full qubit mapping sends the generator multisets of `a`
/// onto those of `b`.
fn mapping_matches(a: &CodeView, b: &CodeView, map: &[usize]) -> bool {
    let apply = |rows: &[Vec<usize>]| {
        let mapped: Vec<Vec<usize>> =
            rows.iter().map(|r| r.iter().map(|&q| map[q]).collect()).collect();
        sorted_rows(&mapped)
    };
    apply(&a.x_rows) == sorted_rows(&b.x_rows) && apply(&a.z_rows) == sorted_rows(&b.z_rows)
}

/// True iff some relabeling of qubits maps `a` onto `b`.
pub fn isomorphic(a: &CodeView, b: &CodeView) -> bool {
    if a.n != b.n || a.x_rows.len() != b.x_rows.len() || a.z_rows.len() != b.z_rows.len() {
        return false;
    }
    let sa = analyze(a);
    let sb = analyze(b);
    let mut sig_a = sa.sig.clone();
    let mut sig_b = sb.sig.clone();
    sig_a.sort();
    sig_b.sort();
    if sig_a != sig_b {
        return false;
    }

    let n = a.n;
    // candidates per a-qubit: b-qubits with the same signature
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|q| (0..n).filter(|&r| sb.sig[r] == sa.sig[q]).collect())
        .collect();
    // most constrained first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&q| (candidates[q].len(), q));

    struct Search<'s> {
        order: Vec<usize>,
        candidates: Vec<Vec<usize>>,
        sa: &'s Side,
        sb: &'s Side,
        a: &'s CodeView,
        b: &'s CodeView,
        map: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn backtrack(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return mapping_matches(self.a, self.b, &self.map);
            }
            let q = self.order[depth];
            'cand: for ci in 0..self.candidates[q].len() {
                let r = self.candidates[q][ci];
                if self.used[r] {
                    continue;
                }
                for &q2 in &self.order[..depth] {
                    let r2 = self.map[q2];
                    if self.sa.x_pair[q][q2] != self.sb.x_pair[r][r2]
                        || self.sa.z_pair[q][q2] != self.sb.z_pair[r][r2]
                    {
                        continue 'cand;
                    }
                }
                self.map[q] = r;
                self.used[r] = true;
                if self.backtrack(depth + 1) {
                    return true;
                }
                self.map[q] = usize::MAX;
                self.used[r] = false;
            }
            false
        }
    }

    let mut search = Search {
        order,
        candidates,
        sa: &sa,
        sb: &sb,
        a,
        b,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    search.backtrack(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    fn view(lat: Lattice) -> CodeView {
        CodeView::from_code(&StabilizerCode::new(lat))
    }

    #[test]
    fn identical_codes_are_isomorphic() {
        let a = view(Lattice::rectangle(2, 3).unwrap());
        assert!(isomorphic(&a, &a.clone()));
    }

    #[test]
    fn relabeled_code_is_isomorphic() {
        let a = view(Lattice::rectangle(2, 3).unwrap());
        // reverse all qubit labels
        let relabel = |rows: &[Vec<usize>]| {
            rows.iter()
                .map(|r| r.iter().map(|&q| a.n - 1 - q).collect::<Vec<usize>>())
                .collect::<Vec<_>>()
        };
        let b = CodeView { n: a.n, x_rows: relabel(&a.x_rows), z_rows: relabel(&a.z_rows) };
        assert!(isomorphic(&a, &b));
    }

    #[test]
    fn different_rectangles_are_not_isomorphic() {
        let a = view(Lattice::rectangle(2, 3).unwrap());
        let b = view(Lattice::rectangle(3, 2).unwrap());
        // same qubit count but transposed roles
        assert!(!isomorphic(&a, &b));
        let c = view(Lattice::rectangle(2, 2).unwrap());
        assert!(!isomorphic(&a, &c));
    }

    #[test]
    fn torus_is_self_dual() {
        let lat = Lattice::torus(3).unwrap();
        let a = view(lat.clone());
        let b = view(lat.dual());
        assert!(isomorphic(&a, &b));
    }

    #[test]
    fn torus_differs_from_rectangle() {
        // both have 18 qubits
        let a = view(Lattice::torus(3).unwrap());
        let b = view(Lattice::rectangle(2, 3).unwrap());
        assert!(!isomorphic(&a, &b));
    }
}
