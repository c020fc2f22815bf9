use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sidon_codes::verify::exhaustive_pair_count;
use sidon_codes::{
    bounds, materialize_code, min_distance_exhaustive, table_row, verify_construction,
    ConstructionParams, FieldTower, GeneratorFile, Level, Params1, Params2, TowerConfig,
};

const EXIT_IO: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "sidon", version, about = "Build and certify cyclic subspace codes from Sidon spaces")]
struct Cli {
    /// Output format; each command picks its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for the parallel scans.
    #[arg(long, global = true, env = "SIDON_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the field tower: moduli, ξ, γ and the flattening basis.
    Field(FieldArgs),
    /// Enumerate the generators of a construction into a JSON file.
    Construct(ConstructArgs),
    /// Certify the code spanned by a generator file.
    Verify(VerifyArgs),
    /// Sphere-packing bound and, with --r, the construction size formula.
    Bound(BoundArgs),
    /// Comparison table of lower and upper bounds.
    Table(TableArgs),
}

#[derive(Args)]
struct TowerArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: usize,
    /// Modulus of GF(q) over GF(p), low degree first (q a proper prime power only).
    #[arg(long, value_delimiter = ',')]
    modulus_q: Option<Vec<u32>>,
    /// Modulus of GF(q^k) over GF(q), low degree first.
    #[arg(long, value_delimiter = ',')]
    modulus_k: Option<Vec<u32>>,
    /// Modulus of GF(q^n) over GF(q^k), low degree first, coefficients as codes.
    #[arg(long, value_delimiter = ',')]
    modulus_n: Option<Vec<u32>>,
    /// Primitive element of GF(q^k) to use as ξ, as a code.
    #[arg(long)]
    xi: Option<u32>,
}

impl TowerArgs {
    fn build(&self, n: usize) -> sidon_codes::Result<FieldTower> {
        let mut cfg = TowerConfig::for_q(self.q, self.k, n)?;
        cfg.modulus_q = self.modulus_q.clone();
        cfg.modulus_k = self.modulus_k.clone();
        cfg.modulus_n = self.modulus_n.clone();
        cfg.xi = self.xi;
        FieldTower::new(&cfg)
    }
}

#[derive(Args)]
struct FieldArgs {
    #[command(flatten)]
    tower: TowerArgs,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    construction: u8,
    #[command(flatten)]
    tower: TowerArgs,
    /// Required for construction 1; construction 2 uses n = 2rk.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    gens: PathBuf,
    /// Also scan every pair of codewords for the minimum distance.
    #[arg(long)]
    exhaustive: bool,
    /// Run the exhaustive scan even above --max-pairs.
    #[arg(long)]
    force: bool,
    #[arg(long, default_value_t = 1_000_000_000)]
    max_pairs: u64,
    /// Compare the product-class and shift criteria on this many sampled generator pairs.
    #[arg(long, default_value_t = 0)]
    crosscheck: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    /// With --construction, also evaluate that construction's size formula.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    construction: Option<u8>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, default_value_t = 2)]
    k_min: usize,
    #[arg(long, default_value_t = 5)]
    k_max: usize,
    /// r values for the n = (2r+1)k rows.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    r: Vec<usize>,
    /// Set size for the NXG2022 column; blank when omitted.
    #[arg(long)]
    ell: Option<u64>,
}

/// A failure carrying its exit status.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = if err.chain().any(|c| c.is::<sidon_codes::Error>()) {
            EXIT_INVALID
        } else {
            EXIT_IO
        };
        Failure { code, err }
    }
}

impl From<sidon_codes::Error> for Failure {
    fn from(err: sidon_codes::Error) -> Self {
        Failure {
            code: EXIT_INVALID,
            err: err.into(),
        }
    }
}

type Run = Result<u8, Failure>;

fn invalid(err: anyhow::Error) -> Failure {
    Failure {
        code: EXIT_INVALID,
        err,
    }
}

fn emit_json<T: Serialize>(x: &T) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, x)?;
    writeln!(out)?;
    Ok(())
}

fn field(args: &FieldArgs, format: Format) -> Run {
    let t = args.tower.build(args.n)?;
    if format == Format::Json {
        emit_json(&t.description())?;
        return Ok(0);
    }
    let d = t.description();
    println!("p = {}, e = {}, q = {}, k = {}, n = {}", d.p, d.e, t.q(), d.k, d.n);
    if let Some(m) = &d.modulus_q {
        println!("modulus_q  {m:?}");
    }
    println!("modulus_k  {:?}", d.modulus_k);
    println!("modulus_n  {:?}", d.modulus_n);
    println!("xi         {}  (primitive in GF(q^k))", t.xi().code());
    println!("gamma      {}  (root of modulus_n)", t.gamma().code());
    println!("omega      {}  (primitive in GF(q^n), used for shifts)", t.top_primitive().code());
    println!("flattening basis, index b*k + a = gamma^b * theta^a with theta a root of modulus_k:");
    let qk = t.size(Level::Mid);
    for b in 0..t.n() / t.k() {
        for a in 0..t.k() {
            let code = t.q().pow(a as u32) * qk.pow(b as u32);
            println!("  [{:>2}] gamma^{b} * theta^{a}  code {code}", b * t.k() + a);
        }
    }
    Ok(0)
}

fn construct(args: &ConstructArgs) -> Run {
    let (t, params) = match args.construction {
        1 => {
            let n = args
                .n
                .ok_or_else(|| invalid(anyhow!("construction 1 needs --n")))?;
            let p = Params1::new(args.tower.q as u32, args.tower.k, n, args.r)?;
            (args.tower.build(n)?, ConstructionParams::One(p))
        }
        _ => {
            let n = 2 * args.r * args.tower.k;
            if let Some(given) = args.n.filter(|&g| g != n) {
                return Err(invalid(anyhow!("construction 2 requires n = 2rk = {n}, got --n {given}")));
            }
            let t = args.tower.build(n)?;
            let p = Params2::new(&t, args.r)?;
            (t, ConstructionParams::Two(p))
        }
    };
    let records = params.enumerate(&t)?;
    let file = GeneratorFile::new(&t, &params, &records);
    fs::write(&args.out, file.to_json())
        .with_context(|| format!("writing {}", args.out.display()))
        .map_err(|err| Failure { code: EXIT_IO, err })?;
    eprintln!("wrote {} generators to {}", records.len(), args.out.display());
    Ok(0)
}

fn verify(args: &VerifyArgs, format: Format) -> Run {
    let text = fs::read_to_string(&args.gens)
        .with_context(|| format!("reading {}", args.gens.display()))
        .map_err(|err| Failure { code: EXIT_IO, err })?;
    let file = GeneratorFile::from_json(&text)?;
    let (t, params, records) = file.load()?;
    let mut report = verify_construction(&t, &params, &records)?;
    let mut failed = !report.certified();

    if args.exhaustive {
        let pairs = exhaustive_pair_count(&report.total_size);
        if pairs > BigUint::from(args.max_pairs) && !args.force {
            return Err(invalid(anyhow!(
                    "exhaustive scan needs {pairs} pairs, above --max-pairs {}; pass --force to run it anyway",
                    args.max_pairs
                )));
        }
        let gens: Vec<_> = records.iter().map(|r| r.subspace.clone()).collect();
        let code = materialize_code(&t, &gens)?;
        if code.len() >= 2 {
            let d = min_distance_exhaustive(&t, &code)?;
            report.min_distance_exhaustive = Some(d);
            if report.min_distance != Some(d) {
                failed = true;
                report
                    .failures
                    .push(format!("exhaustive distance {d} disagrees with the shift scan"));
            }
        }
    }

    let mut crosscheck_note = None;
    if args.crosscheck > 0 && records.len() >= 2 {
        let mut pairs: Vec<(usize, usize)> = (0..records.len())
            .flat_map(|i| (i + 1..records.len()).map(move |j| (i, j)))
            .collect();
        pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(args.seed));
        pairs.truncate(args.crosscheck);
        let mut disagree = 0;
        for &(i, j) in &pairs {
            let (u, v) = (&records[i].subspace, &records[j].subspace);
            if t.pairwise_ok(u, v)? != t.shiftwise_ok(u, v)?.ok {
                disagree += 1;
            }
        }
        if disagree > 0 {
            failed = true;
            report
                .failures
                .push(format!("{disagree} sampled pairs disagree between the two criteria"));
        }
        crosscheck_note = Some(format!(
            "crosscheck: {} sampled pairs, {disagree} disagreements",
            pairs.len()
        ));
    }

    if let Some(path) = &args.out {
        fs::write(path, serde_json::to_string_pretty(&report).expect("plain data"))
            .with_context(|| format!("writing {}", path.display()))
            .map_err(|err| Failure { code: EXIT_IO, err })?;
    }
    match format {
        Format::Json => emit_json(&report)?,
        _ => {
            print!("{}", report.to_text());
            if let Some(n) = crosscheck_note {
                println!("{n}");
            }
        }
    }
    if let Some(step) = report.failed_step {
        eprintln!("verification failed at step {}", step.label());
    }
    Ok(if failed { EXIT_VERIFY } else { 0 })
}

#[derive(Serialize)]
struct BoundOut {
    n: usize,
    k: usize,
    q: u32,
    d: usize,
    sphere_packing: String,
    sphere_packing_exact: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    size_formula: Option<String>,
}

fn bound(args: &BoundArgs, format: Format) -> Run {
    let sp = bounds::sphere_packing(args.n, args.k, args.d, args.q)?;
    let exact = bounds::sphere_packing_exact(args.n, args.k, args.d, args.q)?;
    let formula = match (args.construction, args.r) {
        (Some(c), Some(r)) => Some(bounds::size_formula(c, args.q, args.k, args.n, r)?),
        (None, None) => None,
        _ => {
            return Err(invalid(anyhow!("--construction and --r must be given together")))
        }
    };
    let out = BoundOut {
        n: args.n,
        k: args.k,
        q: args.q,
        d: args.d,
        sphere_packing: sp.to_string(),
        sphere_packing_exact: exact.to_string(),
        size_formula: formula.as_ref().map(|f| f.to_string()),
    };
    match format {
        Format::Json => emit_json(&out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["n", "k", "q", "d", "sphere_packing", "size_formula"])
                .map_err(anyhow::Error::from)?;
            w.write_record([
                out.n.to_string(),
                out.k.to_string(),
                out.q.to_string(),
                out.d.to_string(),
                out.sphere_packing.clone(),
                out.size_formula.clone().unwrap_or_default(),
            ])
            .map_err(anyhow::Error::from)?;
            w.flush().map_err(anyhow::Error::from)?;
        }
        Format::Text => {
            println!("n = {}, k = {}, q = {}, d = {}", out.n, out.k, out.q, out.d);
            println!("sphere_packing  {}", out.sphere_packing);
            if out.sphere_packing_exact != out.sphere_packing {
                println!("exact           {}", out.sphere_packing_exact);
            }
            if let Some(f) = &out.size_formula {
                println!("size_formula    {f}");
            }
        }
    }
    Ok(0)
}

fn table(args: &TableArgs, format: Format) -> Run {
    if args.k_min < 2 || args.k_max < args.k_min {
        return Err(invalid(anyhow!("need 2 ≤ --k-min ≤ --k-max")));
    }
    let mut rows = Vec::new();
    for k in args.k_min..=args.k_max {
        rows.push(table_row(4 * k, k, args.q, 2, None)?);
    }
    for &r in &args.r {
        for k in args.k_min..=args.k_max {
            rows.push(table_row((2 * r + 1) * k, k, args.q, r, args.ell)?);
        }
    }
    match format {
        Format::Json => emit_json(&rows)?,
        Format::Text => {
            for row in &rows {
                println!("{}", row.csv_record().join("  "));
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(sidon_codes::BoundRow::CSV_HEADER)
                .map_err(anyhow::Error::from)?;
            for row in &rows {
                w.write_record(row.csv_record()).map_err(anyhow::Error::from)?;
            }
            w.flush().map_err(anyhow::Error::from)?;
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Run {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(invalid(anyhow!("--threads must be at least 1")));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| anyhow!(e))?;
    }
    match &cli.cmd {
        Command::Field(a) => field(a, cli.format.unwrap_or(Format::Text)),
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a, cli.format.unwrap_or(Format::Text)),
        Command::Bound(a) => bound(a, cli.format.unwrap_or(Format::Text)),
        Command::Table(a) => table(a, cli.format.unwrap_or(Format::Csv)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
