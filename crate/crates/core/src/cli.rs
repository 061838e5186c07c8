//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::Serialize;

use crate::characters::{freudenthal_table, weyl_kac_character, CharacterTable};
use crate::datum::RootDatum;
use crate::error::{Error, Result};
use crate::gcm::{classify, GcmClass};
use crate::hall_littlewood::{chi_expansion, hl_expansion_direct, hl_function, macdonald_h, HlExpansion};
use crate::roots::{enumerate_roots, RootRow};
use crate::satake::{gamma_count, mv_prediction, satake_transform, strata_interval, transform_rows, MvPrediction};
use crate::selftest::{self, Level};
use crate::series::{CharacterSeries, SeriesRow};

pub const THREADS_ENV: &str = "KM_SATAKE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "km-satake", version, about = "Kac–Moody root data, characters, Hall–Littlewood functions and Satake transforms")]
pub struct Cli {
    /// Worker threads for orbit sums (overridden by KM_SATAKE_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    /// Coefficients of irreducible characters.
    Chi,
    /// Coefficients of monomials `e^μ`.
    Mono,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Hlw,
    Macdonald,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a datum file and print its derived data.
    Validate {
        #[arg(long)]
        datum: PathBuf,
    },
    /// Positive roots and multiplicities up to a height.
    Roots {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Weight multiplicities of an irreducible highest-weight module.
    Char {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
        lambda: Coords,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Hall–Littlewood function of a dominant weight.
    Hl {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
        lambda: Coords,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 6)]
        tdeg: usize,
        #[arg(long, value_enum, default_value_t = Basis::Chi)]
        basis: Basis,
        #[arg(long, value_enum, default_value_t = Method::Hlw)]
        method: Method,
    },
    /// Satake transform of a dominant coweight.
    Satake {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
        lambda: Coords,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 6)]
        tdeg: usize,
    },
    /// Dimension, top components and point-count series of `Gr_λ ∩ T_ν`.
    Mv {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
        lambda: Coords,
        #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
        nu: Coords,
        #[arg(long, default_value_t = 6)]
        tdeg: usize,
    },
    /// The set Γ for a dominant coweight and a Weyl group element.
    Gamma {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
        lambda: Coords,
        /// Simple reflection indices, e.g. `0,1,0`; empty for the identity.
        #[arg(long, value_parser = parse_word, default_value = "")]
        word: Word,
    },
    /// Dominant coweights between two dominant coweights.
    Interval {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
        mu: Coords,
        #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
        lambda: Coords,
    },
    /// Run the built-in consistency suites.
    Selftest {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
}

/// Integer coordinates given as `1,0,-2` or `[1,0,-2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coords(pub Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<usize>);

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.trim().trim_start_matches('[').trim_end_matches(']').split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn parse_coords(s: &str) -> std::result::Result<Coords, String> {
    split_list(s).map(|t| t.parse::<i64>().map_err(|e| format!("bad coordinate {t:?}: {e}"))).collect::<std::result::Result<_, _>>().map(Coords)
}

fn parse_word(s: &str) -> std::result::Result<Word, String> {
    split_list(s).map(|t| t.parse::<usize>().map_err(|e| format!("bad index {t:?}: {e}"))).collect::<std::result::Result<_, _>>().map(Word)
}

#[derive(Debug, Serialize)]
struct Header {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    datum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coordinates: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tdeg: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<i64>,
}

impl Header {
    fn new(command: &'static str, datum: &RootDatum, coweights: bool) -> Header {
        let kind = if coweights { "coweights" } else { "weights" };
        Header {
            command,
            datum: Some(datum.name().to_string()),
            coordinates: Some(format!(
                "{kind} as integer vectors in Z^{} with the dot pairing; simple roots and coroots as listed by `validate`",
                datum.rank()
            )),
            depth: None,
            tdeg: None,
            basis: None,
            method: None,
            shift: None,
        }
    }
}

#[derive(Debug, Serialize)]
struct Output<T: Serialize> {
    header: Header,
    data: T,
}

#[derive(Debug, Serialize)]
struct MultRow {
    weight: Vec<i64>,
    mult: i64,
}

#[derive(Debug, Serialize)]
struct GammaRow {
    root: Vec<i64>,
    n: i64,
}

#[derive(Debug, Serialize)]
struct GammaData {
    word: Vec<usize>,
    count: i64,
    rho_pairing: i64,
    gamma: Vec<GammaRow>,
}

#[derive(Debug, Serialize)]
struct ValidateData {
    name: String,
    n: usize,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Option<Vec<i64>>,
    class: GcmClass,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    rho: Vec<String>,
    rho_check: Vec<String>,
}

#[derive(Debug, Serialize)]
struct CheckRow {
    name: String,
    passed: bool,
    detail: String,
}

fn rationals(v: &[Rational64]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn load(path: &Path) -> Result<RootDatum> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    RootDatum::from_json(&text)
}

fn check_len(datum: &RootDatum, v: &[i64]) -> Result<()> {
    if v.len() != datum.rank() {
        return Err(Error::DimensionMismatch { expected: datum.rank(), found: v.len() });
    }
    Ok(())
}

fn rows_of_expansion(datum: &RootDatum, e: &HlExpansion) -> Vec<SeriesRow> {
    e.rows(datum).into_iter().map(|(weight, coeffs)| SeriesRow { weight, coeffs: coeffs.coeffs().to_vec() }).collect()
}

/// Serialized command output: pretty JSON or a CSV table whose comment
/// lines carry the header.
struct Emitted {
    json: String,
    csv: String,
}

fn emit<T: Serialize>(header: Header, data: T, columns: &str, rows: Vec<String>) -> Result<Emitted> {
    let header_value = serde_json::to_value(&header).map_err(|e| Error::Internal(e.to_string()))?;
    let mut csv = String::new();
    if let serde_json::Value::Object(map) = &header_value {
        for (k, v) in map {
            let v = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            csv.push_str(&format!("# {k}: {v}\n"));
        }
    }
    csv.push_str(columns);
    csv.push('\n');
    for r in rows {
        csv.push_str(&r);
        csv.push('\n');
    }
    let json = serde_json::to_string_pretty(&Output { header, data }).map_err(|e| Error::Internal(e.to_string()))? + "\n";
    Ok(Emitted { json, csv })
}

fn series_rows_csv(rows: &[SeriesRow]) -> Vec<String> {
    rows.iter().map(|r| format!("{},{}", join(&r.weight), join(&r.coeffs))).collect()
}

fn hl_series(datum: &RootDatum, lambda: &[i64], depth: usize, tdeg: usize, method: Method, basis: Basis) -> Result<Vec<SeriesRow>> {
    let table = enumerate_roots(datum, depth.max(1))?;
    let mono: Option<CharacterSeries> = match method {
        Method::Hlw => Some(hl_function(datum, &table, lambda, depth, tdeg)?),
        Method::Macdonald => Some(macdonald_h(datum, &table, lambda, depth, tdeg)?),
        Method::Direct => None,
    };
    match (basis, mono) {
        (Basis::Mono, Some(s)) => s.to_rows(datum),
        (Basis::Chi, Some(s)) => Ok(rows_of_expansion(datum, &chi_expansion(datum, &table, lambda, &s)?)),
        (basis, None) => {
            let e = hl_expansion_direct(datum, &table, lambda, depth, tdeg)?;
            match basis {
                Basis::Chi => Ok(rows_of_expansion(datum, &e)),
                Basis::Mono => e.to_series(datum, &table)?.to_rows(datum),
            }
        }
    }
}

fn execute(command: &Command) -> Result<(Emitted, i32)> {
    let out = match command {
        Command::Validate { datum } => {
            let d = load(datum)?;
            let data = ValidateData {
                name: d.name().to_string(),
                n: d.n(),
                rank: d.rank(),
                cartan: d.gcm().rows().to_vec(),
                symmetrizer: d.symmetrizer().ok().map(|s| s.0.clone()),
                class: classify(d.gcm()),
                simple_roots: d.simple_roots().to_vec(),
                simple_coroots: d.simple_coroots().to_vec(),
                rho: rationals(d.rho()),
                rho_check: rationals(d.rho_check()),
            };
            let rows = vec![format!("{},{},{}", data.name, data.n, data.rank)];
            emit(Header::new("validate", &d, false), data, "name,n,rank", rows)?
        }
        Command::Roots { datum, depth } => {
            let d = load(datum)?;
            let table = enumerate_roots(&d, *depth)?;
            let rows: Vec<RootRow> = table.rows();
            let csv = rows.iter().map(|r| format!("{},{},{},{}", join(&r.coords), r.height, r.mult, r.real)).collect();
            let mut h = Header::new("roots", &d, false);
            h.depth = Some(*depth);
            emit(h, rows, "coords,height,mult,real", csv)?
        }
        Command::Char { datum, lambda, depth } => {
            let lambda = &lambda.0;
            let d = load(datum)?;
            check_len(&d, lambda)?;
            let table = enumerate_roots(&d, (*depth).max(1))?;
            let wk = CharacterTable::from_series(lambda, &weyl_kac_character(&d, &table, lambda, *depth)?)?;
            let fr = freudenthal_table(&d, &table, lambda, *depth)?;
            if wk.mults != fr.mults {
                return Err(Error::Internal("Weyl–Kac and Freudenthal multiplicities differ".into()));
            }
            let rows: Vec<MultRow> = wk.rows(&d).into_iter().map(|(weight, mult)| MultRow { weight, mult }).collect();
            let csv = rows.iter().map(|r| format!("{},{}", join(&r.weight), r.mult)).collect();
            let mut h = Header::new("char", &d, false);
            h.depth = Some(*depth);
            emit(h, rows, "weight,mult", csv)?
        }
        Command::Hl { datum, lambda, depth, tdeg, basis, method } => {
            let lambda = &lambda.0;
            let d = load(datum)?;
            check_len(&d, lambda)?;
            let rows = hl_series(&d, lambda, *depth, *tdeg, *method, *basis)?;
            let csv = series_rows_csv(&rows);
            let mut h = Header::new("hl", &d, false);
            h.depth = Some(*depth);
            h.tdeg = Some(*tdeg);
            h.basis = Some(match basis {
                Basis::Chi => "chi",
                Basis::Mono => "mono",
            });
            h.method = Some(match method {
                Method::Hlw => "hlw",
                Method::Macdonald => "macdonald",
                Method::Direct => "direct",
            });
            emit(h, rows, "weight,coeffs", csv)?
        }
        Command::Satake { datum, lambda, depth, tdeg } => {
            let lambda = &lambda.0;
            let d = load(datum)?;
            check_len(&d, lambda)?;
            let st = satake_transform(&d, lambda, *depth, *tdeg)?;
            let rows: Vec<SeriesRow> = transform_rows(&d, &st)?
                .into_iter()
                .map(|((_, weight), coeffs)| SeriesRow { weight, coeffs: coeffs.coeffs().to_vec() })
                .collect();
            let csv = series_rows_csv(&rows);
            let mut h = Header::new("satake", &d, true);
            h.depth = Some(*depth);
            h.tdeg = Some(*tdeg);
            h.shift = Some(st.shift);
            emit(h, rows, "weight,coeffs", csv)?
        }
        Command::Mv { datum, lambda, nu, tdeg } => {
            let (lambda, nu) = (&lambda.0, &nu.0);
            let d = load(datum)?;
            check_len(&d, lambda)?;
            check_len(&d, nu)?;
            let p: MvPrediction = mv_prediction(&d, lambda, nu, *tdeg)?;
            let csv = vec![format!(
                "{},{},{},{},{},{}",
                join(&p.lambda),
                join(&p.nu),
                p.dimension,
                p.top_components,
                join(p.count_series.coeffs()),
                p.stable_degree.map(|d| d.to_string()).unwrap_or_default()
            )];
            let mut h = Header::new("mv", &d, true);
            h.tdeg = Some(*tdeg);
            emit(h, p, "lambda,nu,dimension,top_components,count_series,stable_degree", csv)?
        }
        Command::Gamma { datum, lambda, word } => {
            let (lambda, word) = (&lambda.0, &word.0);
            let d = load(datum)?;
            check_len(&d, lambda)?;
            let g = gamma_count(&d, lambda, word)?;
            let data = GammaData {
                word: g.word,
                count: g.count,
                rho_pairing: g.rho_pairing,
                gamma: g.pairs.into_iter().map(|(root, n)| GammaRow { root, n }).collect(),
            };
            let csv = data.gamma.iter().map(|r| format!("{},{}", join(&r.root), r.n)).collect();
            emit(Header::new("gamma", &d, true), data, "root,n", csv)?
        }
        Command::Interval { datum, mu, lambda } => {
            let (mu, lambda) = (&mu.0, &lambda.0);
            let d = load(datum)?;
            check_len(&d, mu)?;
            check_len(&d, lambda)?;
            let v = strata_interval(&d, mu, lambda)?;
            let csv = v.iter().map(|w| join(w)).collect();
            emit(Header::new("interval", &d, true), v, "coweight", csv)?
        }
        Command::Selftest { level } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let checks = selftest::run(level);
            let code = if checks.iter().all(|c| c.passed) { 0 } else { 3 };
            let rows: Vec<CheckRow> =
                checks.into_iter().map(|c| CheckRow { name: c.name, passed: c.passed, detail: c.detail }).collect();
            let csv = rows.iter().map(|r| format!("{},{},{}", r.name, r.passed, r.detail)).collect();
            let header = Header {
                command: "selftest",
                datum: None,
                coordinates: None,
                depth: None,
                tdeg: None,
                basis: None,
                method: None,
                shift: None,
            };
            return Ok((emit(header, rows, "name,passed,detail", csv)?, code));
        }
    };
    Ok((out, 0))
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let n = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|e| Error::Input(format!("{THREADS_ENV}={v:?}: {e}")))?),
        Err(_) => flag,
    };
    if let Some(n) = n {
        // a pool that already exists (repeated calls in one process) is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = configure_threads(cli.threads).and_then(|_| execute(&cli.command));
    match result {
        Ok((emitted, code)) => {
            let text = match cli.format {
                Format::Json => emitted.json,
                Format::Csv => emitted.csv,
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
