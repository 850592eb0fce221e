//! Command-line front end. [`run`] is the whole program minus process exit.

mod output;
mod table1;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::Error;
use crate::exact::{ExactVector, LatticeBasis, MAX_DIM, MIN_DIM};
use crate::families::{family_point, hermite_bound, FamilyId};
use crate::modlat::{build_basis, project_2d, GeneratorSpec};
use crate::search::{scan_moduli, ResultCache, SearchRecord};
use crate::svp::{minkowski_reduce, normalized_length, pairwise_reduce, svp_oracle};

pub use output::{format_sig, Cell, Format, Table};
pub use table1::{lagrange_2d, table1_rows, Table1Row, PUBLISHED};
pub use verify::{random_spec, run_verify, CheckResult, Scope, VerifyHooks};

/// Environment variable naming a directory for the scan cache.
pub const CACHE_DIR_ENV: &str = "MODLAT_CACHE_DIR";
pub const CACHE_FILE_NAME: &str = "scan.jsonl";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "modlat", version, about = "Shortest distances in rank-1 modular point sets")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Scan cache file (overrides the cache directory variable).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Significant digits for floating-point columns.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: u8,
    /// Allow generators whose first entry shares a factor with N.
    #[arg(long, global = true)]
    pub relaxed: bool,
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(2..=5))]
    pub dim: Option<u8>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Shortest vector and reduced basis of one point set.
    Svp(SpecArgs),
    /// Best generator for every N in a range.
    Scan {
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
    },
    /// Rows for one of the explicit lattice families.
    Family {
        #[arg(long)]
        id: FamilyId,
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        /// Largest N measured with the oracle; beyond it only the prediction is shown.
        #[arg(long, default_value_t = 5_000_000)]
        cap: u64,
    },
    /// The nine (1,13,169) rows.
    Table1,
    /// Two-dimensional coordinate projection.
    Project {
        #[command(flatten)]
        spec: SpecArgs,
        /// Zero-based coordinate pair, e.g. `0,1`.
        #[arg(long, default_value = "0,1", value_parser = parse_axes)]
        axes: (usize, usize),
    },
    /// Minkowski reduction of an explicit basis or of a point set's lattice.
    Reduce {
        /// Columns separated by `;`, entries by `,`.
        #[arg(long, conflicts_with_all = ["n", "gen"], required_unless_present = "n")]
        basis: Option<String>,
        #[arg(long, requires = "gen")]
        n: Option<u64>,
        #[arg(long, requires = "n", value_delimiter = ',')]
        gen: Option<Vec<u64>>,
    },
    /// Self-checks; exits 1 when any fails.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        scope: Scope,
    },
}

#[derive(Args, Debug)]
pub struct SpecArgs {
    #[arg(long)]
    pub n: u64,
    /// Comma-separated generator; a missing leading 1 is implied when the
    /// tuple is one short of the dimension.
    #[arg(long, value_delimiter = ',', required = true)]
    pub gen: Vec<u64>,
}

fn parse_axes(s: &str) -> std::result::Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?)),
        _ => Err("expected two comma-separated indices".into()),
    }
}

/// Errors split by exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Generator tuple completed with an implied leading 1 where needed.
pub fn resolve_generator(gen: &[u64], dim: Option<usize>) -> std::result::Result<Vec<u64>, String> {
    let target = match dim {
        Some(d) => d,
        None if gen.len() == 1 => 2,
        None => gen.len(),
    };
    if gen.len() == target {
        Ok(gen.to_vec())
    } else if gen.len() + 1 == target {
        Ok(std::iter::once(1).chain(gen.iter().copied()).collect())
    } else {
        Err(format!("generator of length {} does not fit dimension {target}", gen.len()))
    }
}

fn make_spec(n: u64, gen: &[u64], g: &GlobalOpts) -> CliResult<GeneratorSpec> {
    let gen = resolve_generator(gen, g.dim.map(usize::from)).map_err(CliError::Usage)?;
    if !(MIN_DIM..=MAX_DIM).contains(&gen.len()) {
        return Err(CliError::Usage(format!("dimension {} outside {MIN_DIM}..={MAX_DIM}", gen.len())));
    }
    GeneratorSpec::new(n, gen, g.relaxed).map_err(usage)
}

fn join(gen: &[u64]) -> String {
    gen.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn parse_basis(text: &str) -> CliResult<LatticeBasis> {
    let columns = text
        .split(';')
        .map(|col| {
            let entries = col
                .split(',')
                .map(|e| e.trim().parse::<BigInt>().map_err(|err| CliError::Usage(format!("bad entry {e:?}: {err}"))))
                .collect::<CliResult<Vec<_>>>()?;
            ExactVector::new(entries).map_err(usage)
        })
        .collect::<CliResult<Vec<_>>>()?;
    LatticeBasis::from_columns(columns).map_err(usage)
}

fn cmd_svp(args: &SpecArgs, g: &GlobalOpts) -> CliResult<Table> {
    let spec = make_spec(args.n, &args.gen, g)?;
    let d = spec.dim();
    let (lambda_sq, vector) = svp_oracle(&spec);
    let report = minkowski_reduce(&build_basis(&spec))?;
    if report.lambda1_sq != BigInt::from(lambda_sq) {
        return Err(CliError::Failure(format!(
            "oracle gives {lambda_sq} but enumeration gives {}",
            report.lambda1_sq
        )));
    }
    let lambda = (lambda_sq as f64).sqrt();
    let bound = hermite_bound(d, spec.modulus());
    let minima: Vec<String> = report.successive_minima_sq.iter().map(BigInt::to_string).collect();
    let mut t = Table::new(vec![
        "N",
        "gen",
        "dim",
        "lambda_sq",
        "lambda",
        "normalized",
        "shortest_vector",
        "reduced_basis",
        "successive_minima_sq",
        "hermite_bound",
        "bound_slack",
        "certified",
    ]);
    t.push(vec![
        spec.modulus().into(),
        join(spec.gen()).into(),
        (d as u64).into(),
        Cell::Exact(lambda_sq.to_string()),
        lambda.into(),
        normalized_length(lambda_sq, spec.modulus(), d).into(),
        vector.to_string().into(),
        report.reduced_basis.to_string().into(),
        minima.join(",").into(),
        bound.into(),
        (bound - lambda).into(),
        report.certified.into(),
    ]);
    Ok(t)
}

fn cache_location(g: &GlobalOpts) -> CliResult<Option<ResultCache>> {
    if let Some(p) = &g.cache {
        return Ok(Some(ResultCache::new(p)));
    }
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => {
            let dir = PathBuf::from(dir);
            fs::create_dir_all(&dir)?;
            Ok(Some(ResultCache::new(dir.join(CACHE_FILE_NAME))))
        }
        _ => Ok(None),
    }
}

pub const SCAN_HEADERS: [&str; 6] = ["N", "best_a", "best_b", "best_c", "lambda_sq", "normalized"];

fn cmd_scan(min: u64, max: u64, g: &GlobalOpts) -> CliResult<Table> {
    if min > max {
        return Err(CliError::Usage(format!("--min {min} exceeds --max {max}")));
    }
    if min < 4 {
        return Err(CliError::Usage("scan needs N >= 4".into()));
    }
    if g.dim.is_some_and(|d| d != 3) {
        return Err(CliError::Usage("scan supports --dim 3 only".into()));
    }
    let cache = cache_location(g)?;
    let mut known = match &cache {
        Some(c) => c.load()?,
        None => Default::default(),
    };
    let missing: Vec<u64> = (min..=max).filter(|&n| !known.contains_key(&(n, 3, g.relaxed))).collect();
    if !missing.is_empty() {
        log::info!("scanning {} moduli ({} cached)", missing.len(), (max - min + 1) as usize - missing.len());
        let writer = Mutex::new(());
        let fresh = scan_moduli(&missing, 3, g.relaxed, g.jobs, |rec| {
            log::info!("N = {} done: lambda_sq {}", rec.modulus, rec.lambda_sq);
            if let Some(c) = &cache {
                let _guard = writer.lock().unwrap_or_else(|e| e.into_inner());
                if let Err(e) = c.put(rec) {
                    log::warn!("cache write failed: {e}");
                }
            }
        })?;
        if let Some(c) = &cache {
            c.put_all(&fresh)?;
        }
        for rec in fresh {
            known.insert((rec.modulus, rec.dim, rec.relaxed), rec);
        }
    }
    let mut t = Table::new(SCAN_HEADERS.to_vec());
    for n in min..=max {
        let rec: &SearchRecord = &known[&(n, 3, g.relaxed)];
        t.push(vec![
            n.into(),
            rec.best_gen[0].into(),
            rec.best_gen[1].into(),
            rec.best_gen[2].into(),
            Cell::Exact(rec.lambda_sq.to_string()),
            normalized_length(rec.lambda_sq, n, 3).into(),
        ]);
    }
    Ok(t)
}

pub const FAMILY_HEADERS: [&str; 9] = [
    "param",
    "N",
    "gen",
    "predicted_lambda_sq",
    "measured_lambda_sq",
    "normalized",
    "normalized_source",
    "limit_constant",
    "certified",
];

fn cmd_family(id: FamilyId, min: u64, max: u64, cap: u64) -> CliResult<Table> {
    if min > max {
        return Err(CliError::Usage(format!("--min {min} exceeds --max {max}")));
    }
    let mut t = Table::new(FAMILY_HEADERS.to_vec());
    for p in min..=max {
        let point = family_point(id, p).map_err(usage)?;
        let n = point.modulus();
        let d = point.spec.dim();
        let measured = (n <= cap).then(|| svp_oracle(&point.spec).0);
        let lambda_sq = measured.unwrap_or(point.predicted_lambda_sq);
        let certified = match id {
            FamilyId::Hex2d => minkowski_reduce(&point.candidate_basis)?.certified,
            _ => {
                crate::svp::is_minkowski_reduced(&point.candidate_basis)?
                    && crate::exact::unimodular_equivalent(&point.candidate_basis, &build_basis(&point.spec))?
            }
        } && measured.is_none_or(|m| m == point.predicted_lambda_sq);
        t.push(vec![
            p.into(),
            n.into(),
            join(point.gen()).into(),
            Cell::Exact(point.predicted_lambda_sq.to_string()),
            measured.map_or(Cell::Empty, |m| Cell::Exact(m.to_string())),
            normalized_length(lambda_sq, n, d).into(),
            if measured.is_some() { "measured" } else { "predicted" }.into(),
            point.limit_constant.to_string().into(),
            certified.into(),
        ]);
    }
    Ok(t)
}

pub const TABLE1_HEADERS: [&str; 8] = ["N", "x", "bx", "bx2", "lambda_sq", "normalized", "shortest_vector", "note"];

fn cmd_table1() -> CliResult<Table> {
    let mut t = Table::new(TABLE1_HEADERS.to_vec());
    for r in table1_rows()? {
        t.push(vec![
            r.modulus.into(),
            r.x.into(),
            r.bx.into(),
            r.bx2.into(),
            Cell::Exact(r.lambda_sq.to_string()),
            r.normalized.into(),
            r.shortest_vector.to_string().into(),
            r.note.into(),
        ]);
    }
    Ok(t)
}

fn cmd_project(args: &SpecArgs, axes: (usize, usize), g: &GlobalOpts) -> CliResult<Table> {
    let spec = make_spec(args.n, &args.gen, g)?;
    let basis = project_2d(&spec, axes).map_err(usage)?;
    let reduced = pairwise_reduce(&basis);
    let mut t = Table::new(vec!["N", "gen", "axes", "basis", "reduced_basis", "lambda_sq"]);
    t.push(vec![
        spec.modulus().into(),
        join(spec.gen()).into(),
        format!("{},{}", axes.0, axes.1).into(),
        basis.to_string().into(),
        reduced.to_string().into(),
        Cell::Exact(reduced.columns()[0].norm_sq().to_string()),
    ]);
    Ok(t)
}

fn cmd_reduce(basis: Option<&str>, n: Option<u64>, gen: Option<&[u64]>, g: &GlobalOpts) -> CliResult<Table> {
    let (lattice, modulus) = match (basis, n, gen) {
        (Some(text), _, _) => (parse_basis(text)?, None),
        (None, Some(n), Some(gen)) => {
            let spec = make_spec(n, gen, g)?;
            (build_basis(&spec), Some(n))
        }
        _ => return Err(CliError::Usage("give --basis or both --n and --gen".into())),
    };
    let d = lattice.dim();
    let report = minkowski_reduce(&lattice)?;
    let normalized = match (modulus, report.lambda1_sq.to_u128()) {
        (Some(n), Some(l)) => normalized_length(l, n, d),
        _ => report.normalized,
    };
    let minima: Vec<String> = report.successive_minima_sq.iter().map(BigInt::to_string).collect();
    let mut t = Table::new(vec!["dim", "det", "reduced_basis", "lambda_sq", "successive_minima_sq", "normalized", "certified"]);
    t.push(vec![
        (d as u64).into(),
        Cell::Exact(lattice.det().to_string()),
        report.reduced_basis.to_string().into(),
        Cell::Exact(report.lambda1_sq.to_string()),
        minima.join(",").into(),
        normalized.into(),
        report.certified.into(),
    ]);
    Ok(t)
}

fn cmd_verify(scope: Scope, hooks: &VerifyHooks) -> CliResult<(Table, bool)> {
    let results = run_verify(scope, hooks)?;
    let mut t = Table::new(vec!["check", "cases", "passed", "detail"]);
    let ok = results.iter().all(|r| r.passed);
    for r in results {
        t.push(vec![r.name.into(), (r.cases as u64).into(), r.passed.into(), r.detail.into()]);
    }
    Ok((t, ok))
}

fn execute(cli: &Cli, hooks: &VerifyHooks) -> CliResult<(Table, bool)> {
    let g = &cli.global;
    let table = match &cli.command {
        Command::Svp(args) => cmd_svp(args, g)?,
        Command::Scan { min, max } => cmd_scan(*min, *max, g)?,
        Command::Family { id, min, max, cap } => cmd_family(*id, *min, *max, *cap)?,
        Command::Table1 => cmd_table1()?,
        Command::Project { spec, axes } => cmd_project(spec, *axes, g)?,
        Command::Reduce { basis, n, gen } => cmd_reduce(basis.as_deref(), *n, gen.as_deref(), g)?,
        Command::Verify { scope } => return cmd_verify(*scope, hooks),
    };
    Ok((table, true))
}

/// Parses `args` (program name first), runs, writes the table, and returns
/// the exit code.
pub fn run_with_hooks<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write, hooks: &VerifyHooks) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (table, ok) = match execute(&cli, hooks) {
        Ok(x) => x,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(CliError::Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_FAILURE;
        }
    };
    let precision = cli.global.precision as usize;
    let written = match &cli.global.out {
        Some(path) => fs::File::create(path).and_then(|mut f| table.write(&mut f, cli.global.format, precision)),
        None => table.write(stdout, cli.global.format, precision),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_FAILURE;
    }
    if ok {
        EXIT_OK
    } else {
        let _ = writeln!(stderr, "error: verification failed");
        EXIT_FAILURE
    }
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_hooks(args, stdout, stderr, &VerifyHooks::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("modlat").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn generator_completion() {
        assert_eq!(resolve_generator(&[1], None).unwrap(), vec![1, 1]);
        assert_eq!(resolve_generator(&[13, 169], Some(3)).unwrap(), vec![1, 13, 169]);
        assert_eq!(resolve_generator(&[1, 13, 169], None).unwrap(), vec![1, 13, 169]);
        assert!(resolve_generator(&[1, 2, 3, 4], Some(2)).is_err());
    }

    #[test]
    fn svp_row() {
        let (code, out, _) = call(&["svp", "--n", "244", "--gen", "1,13,169"]);
        assert_eq!(code, 0);
        let line = out.lines().nth(1).unwrap();
        assert!(line.starts_with("244,\"1,13,169\",3,1891,"), "{line}");
    }

    #[test]
    fn usage_and_failure_codes() {
        assert_eq!(call(&["svp", "--n", "244", "--gen", "x"]).0, EXIT_USAGE);
        assert_eq!(call(&["svp", "--n", "244", "--gen", "2,13,169"]).0, EXIT_USAGE);
        assert_eq!(call(&["scan", "--min", "9", "--max", "8"]).0, EXIT_USAGE);
        assert_eq!(call(&["family", "--id", "thm1_cubic", "--min", "1", "--max", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn verify_failure_exits_one() {
        fn broken(x: i128, n: u64) -> i128 {
            crate::exact::sym_residue(x, n) + 1
        }
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with_hooks(["modlat", "verify"], &mut out, &mut err, &VerifyHooks { residue: broken });
        assert_eq!(code, EXIT_FAILURE);
    }

    #[test]
    fn reduce_paths_agree() {
        let (_, a, _) = call(&["reduce", "--n", "244", "--gen", "1,13,169"]);
        let (_, b, _) = call(&["reduce", "--basis", "0,0,244;0,244,0;1,13,169"]);
        assert_eq!(a.lines().nth(1).unwrap().split(',').next(), Some("3"));
        assert!(a.contains("1891") && b.contains("1891"));
    }
}
