//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).

use std::time::{Duration, Instant};

use boundary_codes::homology::{logical_basis, relative_complex, LatticeSide};
use boundary_codes::pauli::{check_generators_commute, generator_products};
use boundary_codes::sim::{
    build_decoder, csv_row, exhaustive_correction_check, find_uncorrectable_error, NoiseModel,
};
use boundary_codes::{
    distance_by_path, distance_exhaustive, gf2_rank, golden, Lattice, StabilizerCode,
};

fn rect_code(n: usize, m: usize) -> StabilizerCode {
    StabilizerCode::new(Lattice::rectangle(n, m).unwrap())
}

fn assert_within(start: Instant, budget: Duration, what: &str) {
    let elapsed = start.elapsed();
    assert!(elapsed <= budget, "{what} took {elapsed:?}, budget {budget:?}");
}

/// Every instance named by criteria 1 through 4, with its distance.
fn all_instances() -> Vec<(String, StabilizerCode, Option<usize>)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for m in 1..=4 {
            out.push((format!("rectangle {n}x{m}"), rect_code(n, m), Some((n + 1).min(m + 1))));
        }
    }
    for n in [2, 3] {
        out.push((format!("torus {n}"), StabilizerCode::new(Lattice::torus(n).unwrap()), Some(n)));
    }
    for k in 1..=4 {
        let code = StabilizerCode::new(Lattice::disk(k, 2).unwrap());
        let d = distance_exhaustive(&code, code.qubit_count() / 2).ok().map(|r| r.d);
        out.push((format!("disk k={k} scale=2"), code, d));
    }
    out
}

#[test]
fn criterion_1_golden_2x3_instance() {
    let start = Instant::now();
    let code = rect_code(2, 3);
    assert_eq!(code.qubit_count(), 18);
    assert_eq!(code.generator_count(), 17);
    assert_eq!(code.vertex_generators().len(), 9);
    assert_eq!(code.face_generators().len(), 8);
    check_generators_commute(&code).unwrap();
    assert_eq!(gf2_rank(&code.stacked_generators()), 17);
    assert!(golden::matches_golden_2x3(&code), "generator list must match the embedded reference");
    assert_eq!(code.logical_count(), 1);
    assert_eq!(distance_by_path(&code).unwrap().d, 3);
    assert_eq!(distance_exhaustive(&code, 4).unwrap().d, 3);
    assert_within(start, Duration::from_secs(1), "criterion 1");
    println!("criterion 1 PASS: 2x3 instance is [[18,1,3]] and matches the golden list");
}

#[test]
fn criterion_2_rectangle_family_sweep() {
    let start = Instant::now();
    for n in 1..=4usize {
        for m in 1..=4usize {
            let code = rect_code(n, m);
            assert_eq!(code.qubit_count(), 2 * n * m + n + m + 1, "{n}x{m} edge count");
            assert_eq!(code.generator_count(), 2 * n * m + n + m, "{n}x{m} generator count");
            assert_eq!(
                gf2_rank(&code.stacked_generators()),
                2 * n * m + n + m,
                "{n}x{m} full rank"
            );
            assert_eq!(code.logical_count(), 1, "{n}x{m} k");
            let expect = (n + 1).min(m + 1);
            assert_eq!(distance_by_path(&code).unwrap().d, expect, "{n}x{m} path distance");
            assert_eq!(
                distance_exhaustive(&code, n.min(m) + 2).unwrap().d,
                expect,
                "{n}x{m} exhaustive distance"
            );
        }
    }
    assert_within(start, Duration::from_secs(120), "criterion 2");
    println!("criterion 2 PASS: rectangles up to 4x4 are [[2nm+n+m+1,1,min(n+1,m+1)]]");
}

#[test]
fn criterion_3_toric_baseline() {
    let start = Instant::now();
    for n in [2usize, 3] {
        let code = StabilizerCode::new(Lattice::torus(n).unwrap());
        assert_eq!(code.logical_count(), 2, "torus {n} k");
        assert_eq!(code.h_x().rank(), n * n - 1, "torus {n} X rank deficiency");
        assert_eq!(code.h_z().rank(), n * n - 1, "torus {n} Z rank deficiency");
        let (ax, bz) = generator_products(&code);
        assert!(ax.is_zero(), "product of all vertex generators is the identity mask");
        assert!(bz.is_zero(), "product of all face generators is the identity mask");
        let basis = logical_basis(&code).unwrap();
        basis.validate(&code).unwrap();
        assert_eq!(basis.len(), 2);
        // the four generators obey two-qubit Pauli commutation relations:
        // same-type pairs commute, cross pairs anticommute iff same index
        for a in basis.z_logicals() {
            for b in basis.z_logicals() {
                assert!(a.commutes(b).unwrap());
            }
        }
        for a in basis.x_logicals() {
            for b in basis.x_logicals() {
                assert!(a.commutes(b).unwrap());
            }
        }
        assert!(basis.pairing_is_identity());
        assert_eq!(distance_exhaustive(&code, n + 1).unwrap().d, n, "torus {n} distance");
    }
    assert_within(start, Duration::from_secs(60), "criterion 3");
    println!("criterion 3 PASS: tori n=2,3 are [[2n^2,2,n]] with one dependency per sector");
}

#[test]
fn criterion_4_disk_family() {
    let start = Instant::now();
    for k in 1..=4usize {
        let code = StabilizerCode::new(Lattice::disk(k, 2).unwrap());
        assert_eq!(code.logical_count(), k - 1, "disk k={k} logical count");
        let basis = logical_basis(&code).unwrap();
        assert_eq!(basis.len(), k - 1);
        basis.validate(&code).unwrap();
        assert!(basis.pairing_is_identity());
        // connectivity rule: z_i joins V_i to V_{i+1}, x_i joins V*_i to V*_k
        let lat = code.lattice();
        for (i, z) in basis.z_logicals().iter().enumerate() {
            let mut labels: Vec<String> =
                boundary_codes::homology::chain_segment_endpoints(lat, z.z_mask())
                    .iter()
                    .map(|&(s, _)| lat.segments()[s].label.clone())
                    .collect();
            labels.sort();
            let mut expect = vec![format!("V{}", i + 1), format!("V{}", i + 2)];
            expect.sort();
            assert_eq!(labels, expect, "disk k={k}: z logical {i} endpoints");
        }
        let dual = lat.dual();
        for (i, x) in basis.x_logicals().iter().enumerate() {
            let mut labels: Vec<String> =
                boundary_codes::homology::chain_segment_endpoints(&dual, x.x_mask())
                    .iter()
                    .map(|&(s, _)| dual.segments()[s].label.clone())
                    .collect();
            labels.sort();
            let mut expect = vec![format!("V*{}", i + 1), format!("V*{k}")];
            expect.sort();
            assert_eq!(labels, expect, "disk k={k}: x logical {i} endpoints");
        }
    }
    assert_within(start, Duration::from_secs(60), "criterion 4");
    println!("criterion 4 PASS: disks k=1..4 encode k-1 qubits with dual-basis paths");
}

#[test]
fn criterion_5_protection_guarantee() {
    let start = Instant::now();
    for (label, code, d) in all_instances() {
        // codes with no logical qubits correct everything; probe them at t=1
        let t = match d {
            Some(d) => (d - 1) / 2,
            None => {
                assert_eq!(code.logical_count(), 0, "{label}: distance undefined only when k=0");
                1
            }
        };
        assert!(
            exhaustive_correction_check(&code, t).unwrap(),
            "{label}: an error of weight <= {t} went uncorrected"
        );
    }
    // one step past the radius must fail on the 2x3 instance
    let code = rect_code(2, 3);
    let witness = find_uncorrectable_error(&code, 2).unwrap();
    let witness = witness.expect("some weight-2 error must defeat a distance-3 code");
    println!("criterion 5 witness: weight-2 uncorrectable error {witness}");
    assert!(!exhaustive_correction_check(&code, 2).unwrap());
    assert_within(start, Duration::from_secs(120), "criterion 5");
    println!("criterion 5 PASS: floor((d-1)/2) errors corrected on every instance, t+1 fails");
}

#[test]
fn criterion_6_duality_and_homology() {
    let start = Instant::now();
    for (label, code, _) in all_instances() {
        let lat = code.lattice();
        let primal = relative_complex(lat, LatticeSide::Primal);
        let dual = relative_complex(lat, LatticeSide::Dual);
        assert!(primal.chain_property_holds(), "{label}: primal d1*d2 != 0");
        assert!(dual.chain_property_holds(), "{label}: dual d1*d2 != 0");
        assert_eq!(primal.homology_dim(), dual.homology_dim(), "{label}: homology duality");
        assert_eq!(lat.dual().dual().canonical(), lat.canonical(), "{label}: dual involution");
    }
    assert_within(start, Duration::from_secs(60), "criterion 6");
    println!("criterion 6 PASS: dual involution and homology duality hold on every instance");
}

#[test]
fn criterion_7_simulation_determinism() {
    let start = Instant::now();
    let code = rect_code(2, 3);
    let decoder = build_decoder(&code).unwrap();

    // p = 0: no failures over 1e5 trials
    let silent = NoiseModel::new(0.0, 0.0).unwrap();
    let report = decoder.run_trials_with_workers(silent, 100_000, 11, 4);
    assert_eq!(report.failures, 0);
    assert_eq!(report.trials, 100_000);

    // identical CSV across repeated runs and across 1 vs 4 workers
    let noise = NoiseModel::new(0.03, 0.03).unwrap();
    let row = |workers| {
        let rep = decoder.run_trials_with_workers(noise, 5000, 99, workers);
        csv_row("rectangle 2x3", code.qubit_count(), 1, 3, noise, &rep, 99)
    };
    let a = row(1);
    let b = row(1);
    let c = row(4);
    assert_eq!(a, b, "repeated runs must be byte-identical");
    assert_eq!(a, c, "worker count must not change the CSV");
    assert_within(start, Duration::from_secs(60), "criterion 7");
    println!("criterion 7 PASS: seeded CSV is byte-identical across runs and worker counts");
}
