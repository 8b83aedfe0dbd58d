//! The invariant suite behind `boundary-codes verify`.
//!
//! With a family, runs every check on that code; without one, sweeps the
//! built-in families at default sizes. One line per check, `ok <name>` or
//! `FAIL <name>: <detail>`, then a summary; any failure exits with code 4.

use boundary_codes::homology::{chain_segment_endpoints, relative_complex, LatticeSide};
use boundary_codes::pauli::{check_generators_commute, css_condition_holds, generator_products};
use boundary_codes::sim::exhaustive_correction_check;
use boundary_codes::{
    distance_by_path, distance_exhaustive, gf2_rank, golden, logical_basis, Error, Lattice,
    StabilizerCode,
};

use crate::{CliError, Family};

struct Checks {
    prefix: String,
    passed: usize,
    failed: usize,
}

impl Checks {
    fn new() -> Self {
        Self { prefix: String::new(), passed: 0, failed: 0 }
    }

    fn set_prefix(&mut self, label: &str) {
        self.prefix = if label.is_empty() { String::new() } else { format!("[{label}] ") };
    }

    fn record(&mut self, name: &str, result: Result<(), String>) {
        match result {
            Ok(()) => {
                self.passed += 1;
                println!("ok {}{name}", self.prefix);
            }
            Err(detail) => {
                self.failed += 1;
                println!("FAIL {}{name}: {detail}", self.prefix);
            }
        }
    }

    fn expect(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.record(name, if ok { Ok(()) } else { Err(detail.into()) });
    }
}

fn expected_k(family: &Family) -> Option<usize> {
    match family {
        Family::Rectangle(_, _) => Some(1),
        Family::Disk(k, _) => Some(k - 1),
        Family::Torus(_) => Some(2),
        Family::File(_) => None,
    }
}

fn verify_code(family: &Family, weight_cap: Option<usize>, checks: &mut Checks) {
    let lat = match family.build() {
        Ok(lat) => {
            checks.record("lattice-valid", Ok(()));
            lat
        }
        Err(e) => {
            checks.record("lattice-valid", Err(e.to_string()));
            return;
        }
    };
    let code = StabilizerCode::new(lat);

    checks.record(
        "generators-commute",
        check_generators_commute(&code).map_err(|e| e.to_string()),
    );
    checks.expect("css-orthogonality", css_condition_holds(&code), "H_X * H_Z^T != 0");

    let rank = gf2_rank(&code.stacked_generators());
    match family {
        Family::Rectangle(_, _) | Family::Disk(_, _) => {
            checks.expect(
                "generator-independence",
                rank == code.generator_count(),
                format!("rank {rank} of {} generators", code.generator_count()),
            );
        }
        Family::Torus(_) => {
            let (ax, bz) = generator_products(&code);
            checks.expect(
                "torus-dependencies",
                rank == code.generator_count() - 2 && ax.is_zero() && bz.is_zero(),
                format!(
                    "rank {rank} of {} generators, product masks zero: {} {}",
                    code.generator_count(),
                    ax.is_zero(),
                    bz.is_zero()
                ),
            );
        }
        Family::File(_) => {}
    }

    let primal = relative_complex(code.lattice(), LatticeSide::Primal);
    let dual = relative_complex(code.lattice(), LatticeSide::Dual);
    checks.expect(
        "chain-property",
        primal.chain_property_holds() && dual.chain_property_holds(),
        "d1 * d2 != 0",
    );
    checks.expect(
        "homology-duality",
        primal.homology_dim() == dual.homology_dim(),
        format!("primal {} vs dual {}", primal.homology_dim(), dual.homology_dim()),
    );
    let k = code.logical_count();
    checks.expect(
        "logical-count-matches-homology",
        k == primal.homology_dim(),
        format!("k {} vs homology dim {}", k, primal.homology_dim()),
    );
    if let Some(expect) = expected_k(family) {
        checks.expect("logical-count", k == expect, format!("k = {k}, expected {expect}"));
    }

    match logical_basis(&code) {
        Ok(basis) => {
            checks.record("logical-basis", basis.validate(&code).map_err(|e| e.to_string()));
            if let Family::Disk(pieces, _) = family {
                if *pieces >= 2 {
                    checks.expect(
                        "disk-connectivity",
                        disk_connectivity_holds(&code, &basis),
                        "representative paths do not join the expected segments",
                    );
                }
            }
        }
        Err(e) => checks.record("logical-basis", Err(e.to_string())),
    }

    checks.expect(
        "dual-involution",
        code.lattice().dual().dual().canonical() == code.lattice().canonical(),
        "dual(dual(L)) differs from L",
    );

    if matches!(family, Family::Rectangle(2, 3)) {
        checks.expect(
            "golden-2x3",
            golden::matches_golden_2x3(&code),
            "generator list does not match the embedded reference",
        );
    }

    let cap = weight_cap.unwrap_or_else(|| family.default_weight_cap(&code));
    let d = match distance_exhaustive(&code, cap) {
        Ok(res) => {
            let mut stacked = code.stacked_generators();
            let before = gf2_rank(&stacked);
            stacked.push_row(res.witness.symplectic_row());
            let witness_ok = code.syndrome(&res.witness).map(|s| s.is_zero()).unwrap_or(false)
                && gf2_rank(&stacked) == before + 1;
            checks.expect(
                "distance-witness",
                witness_ok && res.witness.weight() == res.d,
                "witness is not a minimum-weight logical",
            );
            let lat = code.lattice();
            if lat.x_segment_indices().len() >= 2 || lat.z_segment_indices().len() >= 2 {
                match distance_by_path(&code) {
                    Ok(p) => checks.expect(
                        "distance-agreement",
                        p.d == res.d,
                        format!("path {} vs exhaustive {}", p.d, res.d),
                    ),
                    Err(e) => checks.record("distance-agreement", Err(e.to_string())),
                }
            }
            if let Family::Rectangle(n, m) = family {
                checks.expect(
                    "distance-closed-form",
                    res.d == (n + 1).min(m + 1),
                    format!("d = {}, closed form {}", res.d, (n + 1).min(m + 1)),
                );
            }
            Some(res.d)
        }
        Err(Error::WeightCapExceeded { .. }) if k == 0 => {
            checks.record("distance-witness", Ok(()));
            None
        }
        Err(e) => {
            checks.record("distance-witness", Err(e.to_string()));
            None
        }
    };

    if let (Some(d), true) = (d, k >= 1) {
        let t = (d - 1) / 2;
        match exhaustive_correction_check(&code, t) {
            Ok(ok) => checks.expect(
                "protection-guarantee",
                ok,
                format!("an error of weight <= {t} is not corrected"),
            ),
            Err(e) => checks.record("protection-guarantee", Err(e.to_string())),
        }
    }
}

/// z logical i joins Vi to Vi+1; x logical i joins V*i to V*k.
fn disk_connectivity_holds(code: &StabilizerCode, basis: &boundary_codes::LogicalBasis) -> bool {
    let lat = code.lattice();
    let dual = lat.dual();
    let k = basis.len() + 1;
    for (i, z) in basis.z_logicals().iter().enumerate() {
        let mut labels: Vec<String> = chain_segment_endpoints(lat, z.z_mask())
            .iter()
            .map(|&(s, _)| lat.segments()[s].label.clone())
            .collect();
        labels.sort();
        let mut expect = vec![format!("V{}", i + 1), format!("V{}", i + 2)];
        expect.sort();
        if labels != expect {
            return false;
        }
    }
    for (i, x) in basis.x_logicals().iter().enumerate() {
        let mut labels: Vec<String> = chain_segment_endpoints(&dual, x.x_mask())
            .iter()
            .map(|&(s, _)| dual.segments()[s].label.clone())
            .collect();
        labels.sort();
        let mut expect = vec![format!("V*{}", i + 1), format!("V*{k}")];
        expect.sort();
        if labels != expect {
            return false;
        }
    }
    true
}

fn default_suite(checks: &mut Checks) {
    checks.set_prefix("edge-count");
    let mut formula_ok = true;
    for n in 1..=6 {
        for m in 1..=6 {
            let lat = Lattice::rectangle(n, m).expect("positive sizes");
            if lat.edge_count() != 2 * n * m + n + m + 1 {
                formula_ok = false;
            }
        }
    }
    checks.expect("rectangle-formula", formula_ok, "edge count differs from 2nm+n+m+1");

    let families: Vec<Family> = vec![
        Family::Rectangle(1, 1),
        Family::Rectangle(2, 3),
        Family::Rectangle(3, 2),
        Family::Rectangle(3, 3),
        Family::Torus(2),
        Family::Torus(3),
        Family::Disk(1, 2),
        Family::Disk(2, 2),
        Family::Disk(3, 2),
        Family::Disk(4, 2),
    ];
    for family in families {
        checks.set_prefix(&family.label());
        verify_code(&family, None, checks);
    }
}

pub fn cmd_verify(family: Option<Family>, weight_cap: Option<usize>) -> Result<String, CliError> {
    let mut checks = Checks::new();
    match family {
        Some(f) => verify_code(&f, weight_cap, &mut checks),
        None => default_suite(&mut checks),
    }
    println!("verify: {} of {} checks passed", checks.passed, checks.passed + checks.failed);
    if checks.failed > 0 {
        Err(CliError { message: format!("{} checks failed", checks.failed), code: 4 })
    } else {
        Ok(String::new())
    }
}
