//! Embedded reference data: the complete generator list of the 18-qubit
//! rectangle instance (2 x 3), in the sparse check format.
//!
//! Qubit indices follow the reading order of the reference list, which is
//! not the order `Lattice::rectangle` produces, so comparisons go through
//! the relabeling-insensitive check in [`crate::iso`].

use crate::iso::{isomorphic, CodeView};
use crate::pauli::StabilizerCode;

pub const GOLDEN_2X3_QUBITS: usize = 18;

/// Nine weight-3/4 X generators on vertex stars and eight Z generators on
/// face boundaries, truncated at the boundary.
pub const GOLDEN_2X3: &str = "\
X 0: 0 1 2
X 1: 2 3 4
X 2: 4 5 6
X 3: 1 7 8 9
X 4: 3 8 10 11
X 5: 5 10 12 13
X 6: 9 14 15
X 7: 11 15 16
X 8: 13 16 17
Z 0: 0 1 7
Z 1: 1 2 3 8
Z 2: 3 4 5 10
Z 3: 5 6 12
Z 4: 7 9 14
Z 5: 8 9 11 15
Z 6: 10 11 13 16
Z 7: 12 13 17
";

pub fn golden_2x3() -> CodeView {
    CodeView::parse_sparse(GOLDEN_2X3, GOLDEN_2X3_QUBITS).expect("embedded data parses")
}

/// Whether `code` matches the embedded 2 x 3 list up to relabeling.
pub fn matches_golden_2x3(code: &StabilizerCode) -> bool {
    isomorphic(&CodeView::from_code(code), &golden_2x3())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    #[test]
    fn golden_data_is_well_formed() {
        let g = golden_2x3();
        assert_eq!(g.x_rows.len(), 9);
        assert_eq!(g.z_rows.len(), 8);
        let mut x_weights: Vec<usize> = g.x_rows.iter().map(|r| r.len()).collect();
        x_weights.sort_unstable();
        assert_eq!(x_weights, vec![3, 3, 3, 3, 3, 3, 4, 4, 4]);
        // every qubit appears in at least one generator of each type
        for q in 0..GOLDEN_2X3_QUBITS {
            assert!(g.x_rows.iter().any(|r| r.contains(&q)), "qubit {q} missing from X");
            assert!(g.z_rows.iter().any(|r| r.contains(&q)), "qubit {q} missing from Z");
        }
    }

    #[test]
    fn built_rectangle_matches_the_golden_list() {
        let code = StabilizerCode::new(Lattice::rectangle(2, 3).unwrap());
        assert!(matches_golden_2x3(&code));
    }

    #[test]
    fn other_codes_do_not_match() {
        let torus = StabilizerCode::new(Lattice::torus(3).unwrap());
        assert!(!matches_golden_2x3(&torus));
    }
}
