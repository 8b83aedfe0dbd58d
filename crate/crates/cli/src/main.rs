//! Command-line front end: build lattices, print code parameters, export
//! matrices, run simulations and the invariant suite.
//!
//! Exit codes: 0 ok, 2 usage or invalid input, 3 internal inconsistency
//! (independent distance computations disagree), 4 verification failure.

mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use boundary_codes::sim::{self, NoiseModel};
use boundary_codes::{
    build_decoder, distance_by_path, distance_exhaustive, logical_basis, DecoderKind,
    DistanceResult, Error, Lattice, StabilizerCode,
};

#[derive(Parser)]
#[command(name = "boundary-codes", version, about = "Stabilizer codes on 2-D lattices with mixed x/z boundaries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a lattice and print a summary
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        /// Write the lattice description to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the code parameters [[n, k, d]]
    Params {
        #[command(flatten)]
        family: FamilyArgs,
        /// Weight cap for the exhaustive distance search
        #[arg(long = "weight-cap")]
        weight_cap: Option<usize>,
    },
    /// Compute the code distance and a minimum-weight witness
    Distance {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long = "weight-cap")]
        weight_cap: Option<usize>,
    },
    /// Write check matrices, logical basis and lattice description
    Export {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Sparse)]
        format: FormatArg,
    },
    /// Run seeded noise trials and emit one CSV row
    Simulate {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        opts: SimulateOpts,
    },
    /// Run the invariant suite; without a family, sweep the built-in ones
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "weight-cap")]
        weight_cap: Option<usize>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// Code family: rectangle | disk | torus | file
    #[arg(value_name = "FAMILY")]
    family_pos: Option<String>,
    /// Code family, as a flag
    #[arg(long = "family", value_name = "FAMILY")]
    family_flag: Option<String>,
    /// Rectangle rows / torus size
    #[arg(short = 'n', long)]
    n: Option<usize>,
    /// Rectangle columns
    #[arg(short = 'm', long)]
    m: Option<usize>,
    /// Number of x-boundary pieces of a disk
    #[arg(short = 'k', long)]
    k: Option<usize>,
    /// Boundary arc length of a disk
    #[arg(long, default_value_t = 2)]
    scale: usize,
    /// Lattice file for the `file` family
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateOpts {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// X flip probability per edge
    #[arg(long, default_value_t = 0.0)]
    px: f64,
    /// Z flip probability per edge
    #[arg(long, default_value_t = 0.0)]
    pz: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long = "weight-cap")]
    weight_cap: Option<usize>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Path,
    Exhaustive,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Sparse,
    Dense,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Rectangle(usize, usize),
    Disk(usize, usize),
    Torus(usize),
    File(PathBuf),
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::Rectangle(n, m) => format!("rectangle {n}x{m}"),
            Family::Disk(k, s) => format!("disk k={k} scale={s}"),
            Family::Torus(n) => format!("torus {n}"),
            Family::File(p) => format!("file {}", p.display()),
        }
    }

    pub fn build(&self) -> Result<Lattice, Error> {
        match self {
            Family::Rectangle(n, m) => Lattice::rectangle(*n, *m),
            Family::Disk(k, s) => Lattice::disk(*k, *s),
            Family::Torus(n) => Lattice::torus(*n),
            Family::File(p) => Lattice::load(p).map_err(|e| match e {
                Error::Io(io) => {
                    Error::InvalidParameter(format!("cannot read {}: {io}", p.display()))
                }
                other => other,
            }),
        }
    }

    /// Default weight cap for the exhaustive distance search.
    pub fn default_weight_cap(&self, code: &StabilizerCode) -> usize {
        match self {
            Family::Rectangle(n, m) => n.min(m) + 2,
            _ => (code.qubit_count() / 2).max(1),
        }
    }
}

/// An error with the exit code it maps to.
pub struct CliError {
    pub message: String,
    pub code: u8,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 2 }
    }

    pub fn inconsistency(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 3 }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Inconsistency(_) => 3,
            Error::Io(_) => 1,
            _ => 2,
        };
        Self { message: e.to_string(), code }
    }
}

impl FamilyArgs {
    fn resolve(&self) -> Result<Option<Family>, CliError> {
        let name = match (&self.family_pos, &self.family_flag) {
            (Some(a), Some(b)) if a != b => {
                return Err(CliError::usage(format!(
                    "conflicting family given positionally ({a}) and via --family ({b})"
                )))
            }
            (Some(a), _) => Some(a.as_str()),
            (None, Some(b)) => Some(b.as_str()),
            (None, None) => None,
        };
        let Some(name) = name else { return Ok(None) };
        let need = |v: Option<usize>, flag: &str| {
            v.ok_or_else(|| CliError::usage(format!("family {name} requires {flag}")))
        };
        let family = match name {
            "rectangle" => Family::Rectangle(need(self.n, "-n")?, need(self.m, "-m")?),
            "disk" => Family::Disk(need(self.k, "-k")?, self.scale),
            "torus" => Family::Torus(need(self.n, "-n")?),
            "file" => Family::File(
                self.file
                    .clone()
                    .ok_or_else(|| CliError::usage("family file requires --file"))?,
            ),
            other => {
                return Err(CliError::usage(format!(
                    "unknown family `{other}`; expected rectangle, disk, torus or file"
                )))
            }
        };
        Ok(Some(family))
    }

    fn require(&self) -> Result<Family, CliError> {
        self.resolve()?
            .ok_or_else(|| CliError::usage("a family is required: rectangle, disk, torus or file"))
    }
}

/// Both distances where applicable; errors with exit 3 if they disagree.
fn agreed_distance(
    family: &Family,
    code: &StabilizerCode,
    weight_cap: Option<usize>,
) -> Result<(DistanceResult, &'static str), CliError> {
    let cap = weight_cap.unwrap_or_else(|| family.default_weight_cap(code));
    let exhaustive = distance_exhaustive(code, cap)?;
    let lat = code.lattice();
    let has_pairs = lat.x_segment_indices().len() >= 2 || lat.z_segment_indices().len() >= 2;
    if has_pairs {
        let path = distance_by_path(code)?;
        if path.d != exhaustive.d {
            return Err(CliError::inconsistency(format!(
                "path distance {} disagrees with exhaustive distance {}",
                path.d, exhaustive.d
            )));
        }
        Ok((exhaustive, "path+exhaustive"))
    } else {
        Ok((exhaustive, "exhaustive"))
    }
}

fn cmd_build(family: &Family, out: Option<&PathBuf>) -> Result<String, CliError> {
    let lat = family.build()?;
    let mut s = String::new();
    use std::fmt::Write;
    writeln!(s, "lattice: {}", family.label()).unwrap();
    writeln!(s, "edges (qubits): {}", lat.edge_count()).unwrap();
    writeln!(s, "interior vertices: {}", lat.vertex_count()).unwrap();
    writeln!(s, "faces: {}", lat.face_count()).unwrap();
    writeln!(s, "free ends: {}", lat.free_end_count()).unwrap();
    writeln!(s, "dual free ends: {}", lat.dual_free_end_count()).unwrap();
    let segs: Vec<String> = lat
        .segments()
        .iter()
        .map(|seg| {
            let t = match seg.segment_type {
                boundary_codes::SegmentType::XBoundary => 'x',
                boundary_codes::SegmentType::ZBoundary => 'z',
            };
            format!("{} ({t}, {} members)", seg.label, seg.members.len())
        })
        .collect();
    writeln!(s, "segments: {}", if segs.is_empty() { "none".into() } else { segs.join(", ") }).unwrap();
    if let Some(path) = out {
        lat.save(path)?;
        writeln!(s, "wrote {}", path.display()).unwrap();
    }
    Ok(s)
}

fn cmd_params(family: &Family, weight_cap: Option<usize>) -> Result<String, CliError> {
    let code = StabilizerCode::new(family.build()?);
    let n = code.qubit_count();
    let k = code.logical_count();
    let (dist, method) = agreed_distance(family, &code, weight_cap)?;
    let mut s = String::new();
    use std::fmt::Write;
    writeln!(s, "[[{n},{k},{}]]", dist.d).unwrap();
    writeln!(s, "qubits: {n}").unwrap();
    writeln!(
        s,
        "generators: {} ({} x-type, {} z-type)",
        code.generator_count(),
        code.vertex_generators().len(),
        code.face_generators().len()
    )
    .unwrap();
    writeln!(s, "k: {k}").unwrap();
    writeln!(s, "d: {} ({method})", dist.d).unwrap();
    if let Family::Rectangle(rn, rm) = family {
        let closed_form = (rn + 1).min(rm + 1);
        if closed_form != dist.d {
            return Err(CliError::inconsistency(format!(
                "computed distance {} disagrees with the closed form min{{n+1,m+1}} = {closed_form}",
                dist.d
            )));
        }
        writeln!(s, "closed form min{{n+1,m+1}} = {closed_form}: ok").unwrap();
    }
    Ok(s)
}

fn cmd_distance(
    family: &Family,
    method: MethodArg,
    weight_cap: Option<usize>,
) -> Result<String, CliError> {
    let code = StabilizerCode::new(family.build()?);
    let (res, note) = match method {
        MethodArg::Path => (distance_by_path(&code)?, "path"),
        MethodArg::Exhaustive => {
            let cap = weight_cap.unwrap_or_else(|| family.default_weight_cap(&code));
            (distance_exhaustive(&code, cap)?, "exhaustive")
        }
        MethodArg::Auto => agreed_distance(family, &code, weight_cap)?,
    };
    Ok(format!("d: {}\nmethod: {note}\nwitness: {}\n", res.d, res.witness))
}

fn cmd_export(family: &Family, out: &PathBuf, format: FormatArg) -> Result<String, CliError> {
    if format == FormatArg::Csv {
        return Err(CliError::usage("--format csv applies to simulate; use sparse or dense"));
    }
    let lat = family.build()?;
    let code = StabilizerCode::new(lat);
    std::fs::create_dir_all(out).map_err(Error::from)?;
    let mut written = Vec::new();
    let mut write = |name: &str, content: String| -> Result<(), CliError> {
        let path = out.join(name);
        std::fs::write(&path, content).map_err(Error::from)?;
        written.push(path.display().to_string());
        Ok(())
    };
    write("lattice.txt", code.lattice().to_file_string())?;
    match format {
        FormatArg::Sparse => write("checks.txt", code.checks_sparse())?,
        FormatArg::Dense => {
            write("hx.mtx", code.check_dense_mtx('X'))?;
            write("hz.mtx", code.check_dense_mtx('Z'))?;
        }
        FormatArg::Csv => unreachable!(),
    }
    write("logicals.txt", logical_basis(&code)?.to_sparse())?;
    Ok(written.iter().map(|p| format!("wrote {p}\n")).collect())
}

fn cmd_simulate(family: &Family, opts: &SimulateOpts) -> Result<String, CliError> {
    if opts.format != FormatArg::Csv {
        return Err(CliError::usage("simulate emits CSV; use --format csv"));
    }
    let code = StabilizerCode::new(family.build()?);
    let noise = NoiseModel::new(opts.px, opts.pz)?;
    let decoder = match build_decoder(&code) {
        Ok(d) => d,
        Err(Error::DecoderTooLarge(_)) => {
            boundary_codes::Decoder::with_kind(&code, DecoderKind::ExactMinWeight)?
        }
        Err(e) => return Err(e.into()),
    };
    let report = decoder.run_trials(noise, opts.trials, opts.seed);
    let (dist, _) = agreed_distance(family, &code, opts.weight_cap)?;
    let mut csv = String::new();
    csv.push_str(sim::csv_header());
    csv.push('\n');
    csv.push_str(&sim::csv_row(
        &family.label(),
        code.qubit_count(),
        code.logical_count(),
        dist.d,
        noise,
        &report,
        opts.seed,
    ));
    csv.push('\n');
    if let Some(path) = &opts.out {
        std::fs::write(path, &csv).map_err(Error::from)?;
        Ok(format!("wrote {}\n", path.display()))
    } else {
        Ok(csv)
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Build { family, out } => cmd_build(&family.require()?, out.as_ref()),
        Command::Params { family, weight_cap } => cmd_params(&family.require()?, *weight_cap),
        Command::Distance { family, method, weight_cap } => {
            cmd_distance(&family.require()?, *method, *weight_cap)
        }
        Command::Export { family, out, format } => cmd_export(&family.require()?, out, *format),
        Command::Simulate { family, opts } => cmd_simulate(&family.require()?, opts),
        Command::Verify { family, weight_cap } => verify::cmd_verify(family.resolve()?, *weight_cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
