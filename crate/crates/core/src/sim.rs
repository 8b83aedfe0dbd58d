//! Desk-scale Monte Carlo validation of the correction guarantee.
//!
//! Errors are sampled as independent X and Z flips per edge, decoded with an
//! exact minimum-weight decoder (the two CSS sectors are independent), and a
//! trial counts as a failure when the residual error acts nontrivially on
//! the code space, i.e. its class is nonzero on the primal side (Z part) or
//! the dual side (X part).
//!
//! Reproducibility: every trial draws from a `ChaCha8` generator seeded with
//! the run seed and using the trial index as the stream number, so results
//! are identical across runs and across any worker count.

use std::collections::HashMap;

use rand::distr::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVec};
use crate::homology::{relative_complex, ChainComplex, LatticeSide};
use crate::pauli::{PauliOperator, StabilizerCode};

/// Environment variable capping the number of simulation workers.
pub const THREADS_ENV: &str = "BOUNDARY_CODES_THREADS";

/// Independent per-edge X and Z flip probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    p_x: f64,
    p_z: f64,
}

impl NoiseModel {
    pub fn new(p_x: f64, p_z: f64) -> Result<Self> {
        for p in [p_x, p_z] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
            }
        }
        Ok(Self { p_x, p_z })
    }

    pub fn p_x(&self) -> f64 {
        self.p_x
    }

    pub fn p_z(&self) -> f64 {
        self.p_z
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    /// Precomputed syndrome table; errors out on codes with more than
    /// 2^16 syndromes per sector.
    Lookup,
    /// Per-syndrome minimum-weight search; same corrections, no table.
    ExactMinWeight,
}

impl std::fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecoderKind::Lookup => write!(f, "lookup"),
            DecoderKind::ExactMinWeight => write!(f, "exact_min_weight"),
        }
    }
}

const MAX_TABLE_BITS: usize = 16;

/// An exact minimum-weight decoder for both CSS sectors.
///
/// Corrections are deterministic: the minimum-weight preimage of the
/// syndrome with the lexicographically smallest support. The lookup and
/// search variants compute the same function.
pub struct Decoder<'a> {
    code: &'a StabilizerCode,
    kind: DecoderKind,
    z_columns: Vec<BitVec>,
    x_columns: Vec<BitVec>,
    primal: ChainComplex,
    dual: ChainComplex,
    z_table: HashMap<BitVec, BitVec>,
    x_table: HashMap<BitVec, BitVec>,
}

/// Builds the lookup decoder for a desk-scale code.
pub fn build_decoder(code: &StabilizerCode) -> Result<Decoder<'_>> {
    Decoder::with_kind(code, DecoderKind::Lookup)
}

impl<'a> Decoder<'a> {
    pub fn with_kind(code: &'a StabilizerCode, kind: DecoderKind) -> Result<Self> {
        let z_columns = code.h_x().transposed().rows().to_vec();
        let x_columns = code.h_z().transposed().rows().to_vec();
        let (z_table, x_table) = match kind {
            DecoderKind::Lookup => (
                build_table(&z_columns, code.h_x())?,
                build_table(&x_columns, code.h_z())?,
            ),
            DecoderKind::ExactMinWeight => (HashMap::new(), HashMap::new()),
        };
        Ok(Self {
            code,
            kind,
            z_columns,
            x_columns,
            primal: relative_complex(code.lattice(), LatticeSide::Primal),
            dual: relative_complex(code.lattice(), LatticeSide::Dual),
            z_table,
            x_table,
        })
    }

    pub fn kind(&self) -> DecoderKind {
        self.kind
    }

    pub fn code(&self) -> &StabilizerCode {
        self.code
    }

    /// Minimum-weight Z correction for a vertex-generator syndrome.
    pub fn decode_z(&self, syndrome: &BitVec) -> Result<BitVec> {
        match self.kind {
            DecoderKind::Lookup => self
                .z_table
                .get(syndrome)
                .cloned()
                .ok_or_else(|| Error::Inconsistency("syndrome outside the reachable set".into())),
            DecoderKind::ExactMinWeight => {
                min_weight_match(&self.z_columns, syndrome, self.code.qubit_count())
            }
        }
    }

    /// Minimum-weight X correction for a face-generator syndrome.
    pub fn decode_x(&self, syndrome: &BitVec) -> Result<BitVec> {
        match self.kind {
            DecoderKind::Lookup => self
                .x_table
                .get(syndrome)
                .cloned()
                .ok_or_else(|| Error::Inconsistency("syndrome outside the reachable set".into())),
            DecoderKind::ExactMinWeight => {
                min_weight_match(&self.x_columns, syndrome, self.code.qubit_count())
            }
        }
    }

    /// Decodes both sectors of an error and reports per-sector logical
    /// failure of the residual.
    pub fn correct_and_classify(&self, x_error: &BitVec, z_error: &BitVec) -> Result<(bool, bool)> {
        let sz = self.code.syndrome_of_z_mask(z_error);
        let cz = self.decode_z(&sz)?;
        let sx = self.code.syndrome_of_x_mask(x_error);
        let cx = self.decode_x(&sx)?;
        let mut rz = z_error.clone();
        rz.xor_assign(&cz);
        let mut rx = x_error.clone();
        rx.xor_assign(&cx);
        debug_assert!(self.code.syndrome_of_z_mask(&rz).is_zero());
        debug_assert!(self.code.syndrome_of_x_mask(&rx).is_zero());
        let z_fail = !self.primal.is_trivial(&rz)?;
        let x_fail = !self.dual.is_trivial(&rx)?;
        Ok((z_fail, x_fail))
    }

    /// Runs `trials` noise trials with the worker count taken from
    /// `BOUNDARY_CODES_THREADS` (default 1).
    pub fn run_trials(&self, noise: NoiseModel, trials: u64, seed: u64) -> TrialReport {
        self.run_trials_with_workers(noise, trials, seed, workers_from_env())
    }

    /// Same, with an explicit worker count. The report is identical for
    /// every worker count: trial i always draws from stream i of a ChaCha8
    /// generator seeded with `seed`, and failure counts are summed.
    pub fn run_trials_with_workers(
        &self,
        noise: NoiseModel,
        trials: u64,
        seed: u64,
        workers: usize,
    ) -> TrialReport {
        let workers = workers.clamp(1, trials.max(1) as usize);
        let chunk = trials.div_ceil(workers as u64);
        let mut z_failures = 0;
        let mut x_failures = 0;
        let mut failures = 0;
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let lo = w as u64 * chunk;
                    let hi = (lo + chunk).min(trials);
                    s.spawn(move || self.run_range(noise, seed, lo, hi))
                })
                .collect();
            for h in handles {
                let (z, x, any) = h.join().expect("simulation worker panicked");
                z_failures += z;
                x_failures += x;
                failures += any;
            }
        });
        TrialReport { trials, z_failures, x_failures, failures, decoder: self.kind }
    }

    fn run_range(&self, noise: NoiseModel, seed: u64, lo: u64, hi: u64) -> (u64, u64, u64) {
        let bern_x = Bernoulli::new(noise.p_x).expect("validated probability");
        let bern_z = Bernoulli::new(noise.p_z).expect("validated probability");
        let n = self.code.qubit_count();
        let mut z_failures = 0;
        let mut x_failures = 0;
        let mut failures = 0;
        for trial in lo..hi {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let mut x = BitVec::zeros(n);
            for e in 0..n {
                if bern_x.sample(&mut rng) {
                    x.set(e);
                }
            }
            let mut z = BitVec::zeros(n);
            for e in 0..n {
                if bern_z.sample(&mut rng) {
                    z.set(e);
                }
            }
            let (z_fail, x_fail) =
                self.correct_and_classify(&x, &z).expect("sampled syndromes are reachable");
            z_failures += u64::from(z_fail);
            x_failures += u64::from(x_fail);
            failures += u64::from(z_fail || x_fail);
        }
        (z_failures, x_failures, failures)
    }
}

fn build_table(columns: &[BitVec], check: &BitMatrix) -> Result<HashMap<BitVec, BitVec>> {
    let rank = check.rank();
    if rank > MAX_TABLE_BITS {
        return Err(Error::DecoderTooLarge(format!(
            "sector has 2^{rank} syndromes, table cap is 2^{MAX_TABLE_BITS}"
        )));
    }
    let total = 1usize << rank;
    let n = columns.len();
    let syndrome_len = check.n_rows();
    let mut table = HashMap::with_capacity(total);
    table.insert(BitVec::zeros(syndrome_len), BitVec::zeros(n));
    let mut w = 1;
    while table.len() < total {
        assert!(w <= n, "every achievable syndrome has a preimage of weight <= rank");
        gf2::for_each_support(columns, w, BitVec::zeros(syndrome_len), &mut |support, synd| {
            if !table.contains_key(synd) {
                table.insert(synd.clone(), BitVec::from_support(n, support));
            }
            table.len() == total
        });
        w += 1;
    }
    Ok(table)
}

/// Minimum-weight support whose columns sum to `target`, lexicographically
/// smallest within the minimum weight.
fn min_weight_match(columns: &[BitVec], target: &BitVec, n: usize) -> Result<BitVec> {
    for w in 0..=n {
        let mut hit = None;
        gf2::for_each_support(columns, w, target.clone(), &mut |support, synd| {
            if synd.is_zero() {
                hit = Some(BitVec::from_support(n, support));
                true
            } else {
                false
            }
        });
        if let Some(h) = hit {
            return Ok(h);
        }
    }
    Err(Error::Inconsistency("syndrome outside the reachable set".into()))
}

/// Outcome counts of a trial run. `z_failures` counts residuals nontrivial
/// on the primal side, `x_failures` on the dual side; `failures` counts
/// trials where either happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialReport {
    pub trials: u64,
    pub z_failures: u64,
    pub x_failures: u64,
    pub failures: u64,
    pub decoder: DecoderKind,
}

impl TrialReport {
    pub fn failure_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.failures as f64 / self.trials as f64
        }
    }
}

/// First CSS error of weight at most `t` that the exact decoder fails to
/// correct, scanning pure-Z errors then pure-X errors by increasing weight
/// in lexicographic order. `None` means every such error is corrected.
pub fn find_uncorrectable_error(code: &StabilizerCode, t: usize) -> Result<Option<PauliOperator>> {
    // A mixed error of weight <= t has X and Z parts of weight <= t that
    // are decoded independently, so scanning the pure sectors is exhaustive.
    let decoder = Decoder::with_kind(code, DecoderKind::ExactMinWeight)?;
    let n = code.qubit_count();
    for w in 1..=t.min(n) {
        let mut found = None;
        gf2::for_each_support(&decoder.z_columns, w, BitVec::zeros(code.h_x().n_rows()), &mut |support, synd| {
            let c = min_weight_match(&decoder.z_columns, synd, n).expect("reachable syndrome");
            let mut residual = BitVec::from_support(n, support);
            residual.xor_assign(&c);
            let fail = !decoder.primal.is_trivial(&residual).expect("residual is a cycle");
            if fail {
                found = Some(PauliOperator::from_z_support(n, support));
            }
            fail
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    for w in 1..=t.min(n) {
        let mut found = None;
        gf2::for_each_support(&decoder.x_columns, w, BitVec::zeros(code.h_z().n_rows()), &mut |support, synd| {
            let c = min_weight_match(&decoder.x_columns, synd, n).expect("reachable syndrome");
            let mut residual = BitVec::from_support(n, support);
            residual.xor_assign(&c);
            let fail = !decoder.dual.is_trivial(&residual).expect("residual is a cycle");
            if fail {
                found = Some(PauliOperator::from_x_support(n, support));
            }
            fail
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// True iff every CSS error of weight at most `t` is corrected exactly
/// (trivial residual). `t = 0` is vacuously true.
pub fn exhaustive_correction_check(code: &StabilizerCode, t: usize) -> Result<bool> {
    Ok(find_uncorrectable_error(code, t)?.is_none())
}

/// Worker count from `BOUNDARY_CODES_THREADS`; defaults to 1 when unset
/// or unparsable. The report does not depend on this, only the wall time.
pub fn workers_from_env() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

pub fn csv_header() -> &'static str {
    "lattice,n_qubits,k,d,p_x,p_z,trials,failures,failure_rate,seed"
}

pub fn csv_row(
    lattice: &str,
    n_qubits: usize,
    k: usize,
    d: usize,
    noise: NoiseModel,
    report: &TrialReport,
    seed: u64,
) -> String {
    format!(
        "{lattice},{n_qubits},{k},{d},{},{},{},{},{},{seed}",
        noise.p_x(),
        noise.p_z(),
        report.trials,
        report.failures,
        report.failure_rate()
    )
}
