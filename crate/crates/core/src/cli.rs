//! Command-line front end: `census`, `check` and `bench`.
//!
//! The binary only forwards its arguments to [`run`]; everything else lives
//! here so it can be driven from tests and examples.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::census::{
    cycle_census_conv, cycle_census_with, det_perm_inverse_sum, hamiltonian_count, inverse_identities, mobius_poly,
    subgraph_convolve, zeta_poly, CensusError, CycleCensus, Pairing,
};
use crate::detperm::{build_minor_tables, det_i_minus_za_direct, DetPermError, DEFAULT_SIZE_CAP};
use crate::digraph::{parse_edge_list, Digraph, ParseError};
use crate::hopf::{
    divisor_mangoldt_sum, dynkin_of, eulerian_of, is_coassociative, is_cocommutative, satisfies_counit, HikeSeries,
    HikeUniverse, HopfError, DEFAULT_HIKE_BUDGET,
};
use crate::oracle::{brute_force_census, OracleError, DEFAULT_CYCLE_BUDGET};
use crate::polyring::TruncPoly;

/// Environment variable overriding [`DEFAULT_SIZE_CAP`].
pub const SIZE_CAP_ENV: &str = "CYCLEHOPF_SIZE_CAP";

/// Hike budget for the symbolic part of `check`; larger graphs skip it.
pub const CHECK_HIKE_BUDGET: usize = 100_000;

/// Largest order for which `check` expands `det(I - zA)` over all permutations.
const CHECK_LEIBNIZ_MAX_N: usize = 8;

/// Largest order for which `check` tests the z-specialization subset by subset.
const CHECK_INTERTWINING_MAX_N: usize = 10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("invalid {SIZE_CAP_ENV} value `{0}`")]
    SizeCapEnv(String),
    #[error("thread pool: {0}")]
    Threads(String),
    #[error(transparent)]
    Size(#[from] DetPermError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("identity `{name}` failed: {detail}")]
    Identity { name: String, detail: String },
    #[error("cannot write output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    /// 1 for input and usage problems, 2 for size or budget caps, 3 for
    /// results that fail a cross-check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::SizeCapEnv(_) => 1,
            CliError::Threads(_) | CliError::Output(_) => 1,
            CliError::Size(_) | CliError::Oracle(_) => 2,
            CliError::Census(CensusError::Overflow) => 2,
            CliError::Hopf(HopfError::Budget { .. } | HopfError::Oracle(_)) => 2,
            CliError::Census(_) | CliError::Hopf(_) => 3,
            CliError::Mismatch(_) | CliError::Identity { .. } => 3,
        }
    }

    fn is_cap(&self) -> bool {
        self.exit_code() == 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Induced-subgraph convolution of determinants and permanents.
    #[default]
    Conv,
    /// Explicit enumeration of every simple cycle.
    Brute,
    /// Logarithm of the zeta series of self-avoiding hikes.
    HopfLog,
    /// Dynkin idempotent applied to the zeta series.
    HopfDynkin,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Conv, Method::Brute, Method::HopfLog, Method::HopfDynkin];

    pub fn name(self) -> &'static str {
        match self {
            Method::Conv => "conv",
            Method::Brute => "brute",
            Method::HopfLog => "hopf-log",
            Method::HopfDynkin => "hopf-dynkin",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

/// Caps shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub size_cap: usize,
    pub cycle_budget: usize,
    pub hike_budget: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { size_cap: DEFAULT_SIZE_CAP, cycle_budget: DEFAULT_CYCLE_BUDGET, hike_budget: DEFAULT_HIKE_BUDGET }
    }
}

impl Limits {
    /// Defaults, with the size cap taken from `CYCLEHOPF_SIZE_CAP` when set.
    pub fn from_env() -> Result<Limits, CliError> {
        let mut limits = Limits::default();
        if let Some(raw) = std::env::var_os(SIZE_CAP_ENV) {
            let raw = raw.to_string_lossy().into_owned();
            limits.size_cap = raw.trim().parse().map_err(|_| CliError::SizeCapEnv(raw))?;
        }
        Ok(limits)
    }
}

/// Non-zero cycle counts keyed by length. Serialized as a JSON object whose
/// keys and values are decimal strings, keys in numeric order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountMap(pub BTreeMap<usize, BigInt>);

impl CountMap {
    pub fn from_census(c: &CycleCensus) -> CountMap {
        CountMap(c.nonzero().map(|(l, v)| (l, v.clone())).collect())
    }
}

impl Serialize for CountMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (l, v) in &self.0 {
            map.serialize_entry(&l.to_string(), &v.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for CountMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<CountMap, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(deserializer)?;
        let mut out = BTreeMap::new();
        for (k, v) in raw {
            let l = k.parse().map_err(|_| D::Error::custom(format!("bad cycle length `{k}`")))?;
            let c = v.parse().map_err(|_| D::Error::custom(format!("bad count `{v}`")))?;
            out.insert(l, c);
        }
        Ok(CountMap(out))
    }
}

/// The result of one `census` run, in its JSON field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub n: usize,
    pub edges: usize,
    pub method: Method,
    pub counts: CountMap,
    pub hamiltonian: Option<String>,
    pub elapsed_ms: u64,
    pub verified: Option<bool>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<RunReport> {
        serde_json::from_str(text)
    }

    /// `field<TAB>value` lines; one `count_<len>` line per non-zero count.
    pub fn to_tsv(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".to_string());
        let mut s = format!("field\tvalue\nn\t{}\nedges\t{}\nmethod\t{}\n", self.n, self.edges, self.method);
        for (l, c) in &self.counts.0 {
            s += &format!("count_{l}\t{c}\n");
        }
        s += &format!("hamiltonian\t{}\n", opt(self.hamiltonian.clone()));
        s += &format!("elapsed_ms\t{}\n", self.elapsed_ms);
        s += &format!("verified\t{}\n", opt(self.verified.map(|v| v.to_string())));
        s
    }
}

#[derive(Debug, Clone, Default)]
pub struct CensusOptions {
    pub method: Method,
    pub hamiltonian: bool,
    pub max_length: Option<usize>,
    pub verify: bool,
    pub limits: Limits,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Outcome {
    census: CycleCensus,
    hamiltonian: Option<BigInt>,
}

fn run_method(
    g: &Digraph,
    method: Method,
    max_length: Option<usize>,
    want_hamiltonian: bool,
    limits: &Limits,
) -> Result<Outcome, CliError> {
    let n = g.n();
    let cap = max_length.unwrap_or(n).min(n);
    let (census, hamiltonian) = match method {
        Method::Conv => {
            let t = build_minor_tables(g, limits.size_cap)?;
            let census = cycle_census_conv(&t, Some(cap))?;
            let ham = if want_hamiltonian { Some(hamiltonian_count(&t)?) } else { None };
            (census, ham)
        }
        Method::Brute => {
            let full = brute_force_census(g, limits.cycle_budget)?;
            (full.truncated(cap), want_hamiltonian.then(|| hamiltonian_of(&full)))
        }
        Method::HopfLog | Method::HopfDynkin => {
            let universe = HikeUniverse::from_graph(g, limits.hike_budget)?;
            let primes = if method == Method::HopfLog { eulerian_of(&universe)? } else { dynkin_of(&universe)? };
            let full = CycleCensus::from_generating_function(n, &primes.z_specialize(n)?);
            (full.truncated(cap), want_hamiltonian.then(|| hamiltonian_of(&full)))
        }
    };
    Ok(Outcome { census, hamiltonian })
}

fn hamiltonian_of(full: &CycleCensus) -> BigInt {
    if full.n() == 0 {
        BigInt::zero()
    } else {
        full.count(full.n())
    }
}

pub fn read_graph(path: &Path) -> Result<Digraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_edge_list(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

/// Reads the graph at `path` and runs [`census_report`].
pub fn cmd_census(path: &Path, opts: &CensusOptions) -> Result<RunReport, CliError> {
    census_report(&read_graph(path)?, opts)
}

/// Census of `g` by the selected method. With `verify`, the brute-force and
/// convolution results are computed as well and must agree with it.
pub fn census_report(g: &Digraph, opts: &CensusOptions) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let main = run_method(g, opts.method, opts.max_length, opts.hamiltonian, &opts.limits)?;
    let verified = if opts.verify {
        for other in [Method::Brute, Method::Conv] {
            if other == opts.method {
                continue;
            }
            let check = run_method(g, other, opts.max_length, opts.hamiltonian, &opts.limits)?;
            if check != main {
                return Err(CliError::Mismatch(format!(
                    "{} gives {:?} (hamiltonian {:?}), {} gives {:?} (hamiltonian {:?})",
                    opts.method, main.census, main.hamiltonian, other, check.census, check.hamiltonian
                )));
            }
        }
        Some(true)
    } else {
        None
    };
    Ok(RunReport {
        n: g.n(),
        edges: g.edge_count(),
        method: opts.method,
        counts: CountMap::from_census(&main.census),
        hamiltonian: main.hamiltonian.map(|h| h.to_string()),
        elapsed_ms: start.elapsed().as_millis() as u64,
        verified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    Skipped(String),
}

/// Outcome of every identity tried by `check`, in order.
#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub results: Vec<(String, CheckStatus)>,
    pub hopf_skipped: Option<String>,
}

impl CheckReport {
    fn record(&mut self, name: &str, outcome: Result<(), String>) {
        let status = match outcome {
            Ok(()) => CheckStatus::Pass,
            Err(detail) => CheckStatus::Fail(detail),
        };
        self.results.push((name.to_string(), status));
    }

    fn skip(&mut self, name: &str, reason: String) {
        self.results.push((name.to_string(), CheckStatus::Skipped(reason)));
    }

    pub fn first_failure(&self) -> Option<(&str, &str)> {
        self.results.iter().find_map(|(name, s)| match s {
            CheckStatus::Fail(detail) => Some((name.as_str(), detail.as_str())),
            _ => None,
        })
    }

    pub fn passed(&self) -> usize {
        self.results.iter().filter(|(_, s)| *s == CheckStatus::Pass).count()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (name, status) in &self.results {
            match status {
                CheckStatus::Pass => s += &format!("ok    {name}\n"),
                CheckStatus::Fail(detail) => s += &format!("FAIL  {name}: {detail}\n"),
                CheckStatus::Skipped(reason) => s += &format!("skip  {name}: {reason}\n"),
            }
        }
        if let Some(reason) = &self.hopf_skipped {
            s += &format!("hopf suite skipped: {reason}\n");
        }
        match self.first_failure() {
            Some((name, _)) => s += &format!("first failure: {name}\n"),
            None => s += &format!("all {} identities hold\n", self.passed()),
        }
        s
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

/// Reads the graph at `path` and runs [`check_graph`].
pub fn cmd_check(path: &Path, limits: &Limits) -> Result<CheckReport, CliError> {
    check_graph(&read_graph(path)?, limits)
}

/// Runs the identity suite on `g`. The minor tables must fit the size cap;
/// the symbolic part is skipped when the graph has too many self-avoiding hikes.
pub fn check_graph(g: &Digraph, limits: &Limits) -> Result<CheckReport, CliError> {
    let n = g.n();
    let mut report = CheckReport::default();
    let t = build_minor_tables(g, limits.size_cap)?;
    let one = TruncPoly::constant(1, n);

    report.record("det-perm-inverse-sum", expect_eq(det_perm_inverse_sum(&t), BigInt::from((n == 0) as u8)));
    let (perm_det, det_perm) = inverse_identities(&t)?;
    report.record("inverse-perm-det", expect_eq(&perm_det, &one));
    report.record("inverse-det-perm", expect_eq(&det_perm, &one));

    let census = match cycle_census_with(&t, None, Pairing::DetWithPermSums) {
        Ok(c) => c,
        Err(e) => {
            report.record("census-divisibility", Err(e.to_string()));
            return Ok(report);
        }
    };
    report.record("census-divisibility", Ok(()));
    let other = cycle_census_with(&t, None, Pairing::PermWithDetSums).map_err(|e| e.to_string());
    report.record("census-pairings", other.and_then(|o| expect_eq(&o, &census)));
    let ham = hamiltonian_count(&t).map_err(|e| e.to_string());
    report.record("hamiltonian", ham.and_then(|h| expect_eq(h, hamiltonian_of(&census))));

    if n <= CHECK_LEIBNIZ_MAX_N {
        report.record("mobius-leibniz", expect_eq(det_i_minus_za_direct(g), mobius_poly(&t)));
    } else {
        report.skip("mobius-leibniz", format!("n = {n} > {CHECK_LEIBNIZ_MAX_N}"));
    }
    match brute_force_census(g, limits.cycle_budget) {
        Ok(brute) => report.record("oracle-census", expect_eq(&brute, &census)),
        Err(e) => report.skip("oracle-census", e.to_string()),
    }

    let universe = match HikeUniverse::from_graph(g, CHECK_HIKE_BUDGET.min(limits.hike_budget)) {
        Ok(u) => u,
        Err(e @ (HopfError::Budget { .. } | HopfError::Oracle(_))) => {
            report.hopf_skipped = Some(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    hopf_identities(&mut report, &universe, &census, &t)?;
    Ok(report)
}

fn hopf_identities(
    report: &mut CheckReport,
    u: &HikeUniverse,
    census: &CycleCensus,
    t: &crate::detperm::MinorTables,
) -> Result<(), CliError> {
    let n = u.n();
    let zeta = u.zeta();
    let mobius = u.mobius();
    let primes = u.prime_series();
    let first_bad = |pred: &dyn Fn(&crate::hopf::SelfAvoidingHike) -> bool| -> Result<(), String> {
        match u.hikes().iter().find(|h| !pred(h)) {
            Some(h) => Err(format!("fails on {h}")),
            None => Ok(()),
        }
    };

    report.record("coassociativity", first_bad(&|h| is_coassociative(h)));
    report.record("counit", first_bad(&|h| satisfies_counit(h)));
    report.record("cocommutativity", first_bad(&|h| is_cocommutative(h)));
    report.record("antipode", expect_eq(&zeta.antipode(), &mobius));
    report.record("antipode-law", expect_eq(zeta.antipode().star(&zeta), HikeSeries::delta()));
    report.record("log-zeta", expect_eq(&zeta.star_log()?, &primes));
    report.record("log-mobius", expect_eq(mobius.star_log()?, primes.scale(&(-BigInt::one()).into())));
    report.record("exp-primes", expect_eq(&primes.star_exp()?, &zeta));

    for k in -2i64..=3 {
        let power = zeta.star_power(k)?;
        let want = HikeSeries::from_fn(u.hikes(), |h| k.pow(h.omega() as u32));
        report.record(&format!("zeta-power({k})"), expect_eq(&power, &want));
    }
    report.record("dynkin-consistency", expect_eq(primes.star(&zeta), u.omega_series()));
    report.record("mangoldt-divisors", first_bad(&|h| divisor_mangoldt_sum(h) == h.length() as i64));

    let eulerian = eulerian_of(u).map_err(|e| e.to_string());
    report.record("eulerian-idempotent", eulerian.and_then(|e| expect_eq(&e, &primes)));
    let dynkin = dynkin_of(u).map_err(|e| e.to_string());
    report.record("dynkin-idempotent", dynkin.and_then(|d| expect_eq(&d, &primes)));

    report.record("z-zeta", expect_eq(zeta.z_specialize(n)?, zeta_poly(t)));
    report.record("z-mobius", expect_eq(mobius.z_specialize(n)?, mobius_poly(t)));
    report.record("z-primes", expect_eq(primes.z_specialize(n)?, census.generating_function()));
    if n <= CHECK_INTERTWINING_MAX_N {
        let star = mobius.star(&primes).z_specialize(n)?;
        let conv = subgraph_convolve(
            n,
            n,
            |s| mobius.z_specialize_exact(s, n).expect("integral"),
            |s| primes.z_specialize_within(s, n).expect("integral"),
        )
        .map_err(CensusError::from)?;
        report.record("z-intertwining", expect_eq(star, conv));
    } else {
        report.skip("z-intertwining", format!("n = {n} > {CHECK_INTERTWINING_MAX_N}"));
    }
    Ok(())
}

/// One graph's row of the benchmark table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub file: String,
    pub n: usize,
    pub edges: usize,
    /// Elapsed milliseconds per method, or `skipped(cap)`, `skipped(budget)`,
    /// `timeout`, `error`.
    pub cells: Vec<String>,
    /// `yes` when every finished method agrees, `no` otherwise, `-` when
    /// fewer than two finished.
    pub agree: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchTable {
    pub methods: Vec<Method>,
    pub rows: Vec<BenchRow>,
}

impl BenchTable {
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("file\tn\tedges");
        for m in &self.methods {
            s += &format!("\t{m}_ms");
        }
        s += "\tagree\n";
        for r in &self.rows {
            s += &format!("{}\t{}\t{}\t{}\t{}\n", r.file, r.n, r.edges, r.cells.join("\t"), r.agree);
        }
        s
    }

    pub fn disagreements(&self) -> Vec<&str> {
        self.rows.iter().filter(|r| r.agree == "no").map(|r| r.file.as_str()).collect()
    }
}

/// Times each method on every file of `dir` (sorted by name, dot-files
/// ignored). A method still running after `timeout` is reported as `timeout`
/// and left to finish in the background.
pub fn cmd_bench(dir: &Path, methods: &[Method], timeout: Duration, limits: &Limits) -> Result<BenchTable, CliError> {
    let io_err = |source| CliError::Io { path: dir.to_path_buf(), source };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io_err)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io_err)?;
    files.retain(|p| p.is_file() && !p.file_name().is_some_and(|f| f.to_string_lossy().starts_with('.')));
    files.sort();

    let mut rows = Vec::new();
    for path in files {
        let g = read_graph(&path)?;
        let mut cells = Vec::new();
        let mut finished: Vec<Outcome> = Vec::new();
        for &method in methods {
            let (tx, rx) = mpsc::channel();
            let (g2, limits2) = (g.clone(), *limits);
            thread::spawn(move || {
                let start = Instant::now();
                let result = run_method(&g2, method, None, false, &limits2);
                let _ = tx.send((result, start.elapsed()));
            });
            cells.push(match rx.recv_timeout(timeout) {
                Ok((Ok(outcome), elapsed)) => {
                    finished.push(outcome);
                    elapsed.as_millis().to_string()
                }
                Ok((Err(CliError::Size(_)), _)) => "skipped(cap)".to_string(),
                Ok((Err(e), _)) if e.is_cap() => "skipped(budget)".to_string(),
                Ok((Err(_), _)) => "error".to_string(),
                Err(_) => "timeout".to_string(),
            });
        }
        let agree = match finished.split_first() {
            Some((first, rest)) if !rest.is_empty() => {
                if rest.iter().all(|o| o == first) {
                    "yes"
                } else {
                    "no"
                }
            }
            _ => "-",
        };
        rows.push(BenchRow {
            file: path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
            n: g.n(),
            edges: g.edge_count(),
            cells,
            agree: agree.to_string(),
        });
    }
    Ok(BenchTable { methods: methods.to_vec(), rows })
}

#[derive(Debug, Parser)]
#[command(name = "cyclehopf", version, about = "Exact simple-cycle census of directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count simple cycles of a graph by length
    Census {
        /// Edge-list file: one `u v` arc per line
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Conv)]
        method: Method,
        /// Also report the number of Hamiltonian cycles
        #[arg(long)]
        hamiltonian: bool,
        /// Only count cycles up to this length
        #[arg(long, value_name = "L")]
        max_length: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Worker threads (default: all cores)
        #[arg(long, value_name = "N")]
        threads: Option<usize>,
        /// Cross-check against brute force and the convolution
        #[arg(long)]
        verify: bool,
    },
    /// Verify the counting identities on a graph
    Check {
        file: PathBuf,
        #[arg(long, value_name = "N")]
        threads: Option<usize>,
    },
    /// Time methods on every graph file in a directory
    Bench {
        dir: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', num_args = 1..)]
        methods: Vec<Method>,
        #[arg(long, value_name = "T", default_value_t = 60_000)]
        timeout_ms: u64,
    },
}

fn in_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Threads("--threads must be at least 1".into())),
        Some(k) => {
            let pool =
                rayon::ThreadPoolBuilder::new().num_threads(k).build().map_err(|e| CliError::Threads(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let limits = Limits::from_env()?;
    match cli.command {
        Command::Census { file, method, hamiltonian, max_length, format, threads, verify } => {
            let opts = CensusOptions { method, hamiltonian, max_length, verify, limits };
            let report = in_pool(threads, || cmd_census(&file, &opts))??;
            match format {
                Format::Json => writeln!(out, "{}", report.to_json())?,
                Format::Tsv => write!(out, "{}", report.to_tsv())?,
            }
            Ok(0)
        }
        Command::Check { file, threads } => {
            let report = in_pool(threads, || cmd_check(&file, &limits))??;
            write!(out, "{}", report.render())?;
            match report.first_failure() {
                Some((name, detail)) => Err(CliError::Identity { name: name.into(), detail: detail.into() }),
                None => Ok(0),
            }
        }
        Command::Bench { dir, methods, timeout_ms } => {
            let methods = if methods.is_empty() { Method::ALL.to_vec() } else { methods };
            let table = cmd_bench(&dir, &methods, Duration::from_millis(timeout_ms), &limits)?;
            write!(out, "{}", table.to_tsv())?;
            let bad = table.disagreements();
            if bad.is_empty() {
                Ok(0)
            } else {
                Err(CliError::Mismatch(format!("methods disagree on {}", bad.join(", "))))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(text: &str, method: Method) -> RunReport {
        let opts = CensusOptions { method, hamiltonian: true, ..Default::default() };
        census_report(&parse_edge_list(text).unwrap(), &opts).unwrap()
    }

    #[test]
    fn triangle_report() {
        let tri = "0 1\n1 0\n1 2\n2 1\n0 2\n2 0";
        for method in Method::ALL {
            let r = report(tri, method);
            let counts: Vec<(usize, String)> = r.counts.0.iter().map(|(l, c)| (*l, c.to_string())).collect();
            assert_eq!(counts, vec![(2, "3".to_string()), (3, "2".to_string())], "{method}");
            assert_eq!(r.hamiltonian.as_deref(), Some("2"));
        }
        let mut r = report(tri, Method::Conv);
        r.elapsed_ms = 7;
        assert_eq!(
            r.to_json(),
            r#"{"n":3,"edges":6,"method":"conv","counts":{"2":"3","3":"2"},"hamiltonian":"2","elapsed_ms":7,"verified":null}"#
        );
    }

    #[test]
    fn json_round_trip_keeps_numeric_key_order() {
        let mut counts = BTreeMap::new();
        for l in [2usize, 10, 3] {
            counts.insert(l, BigInt::from(l) * BigInt::from(u128::MAX));
        }
        let r = RunReport {
            n: 10,
            edges: 40,
            method: Method::HopfDynkin,
            counts: CountMap(counts),
            hamiltonian: None,
            elapsed_ms: 0,
            verified: Some(true),
        };
        let json = r.to_json();
        assert!(json.contains(r#""counts":{"2":"#));
        assert!(json.find(r#""3":"#).unwrap() < json.find(r#""10":"#).unwrap());
        let back = RunReport::from_json(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn empty_graph_report() {
        let r = report("", Method::Conv);
        assert_eq!(r.n, 0);
        assert!(r.counts.0.is_empty());
        assert_eq!(r.hamiltonian.as_deref(), Some("0"));
    }

    #[test]
    fn max_length_truncates() {
        let opts = CensusOptions { max_length: Some(3), verify: true, ..Default::default() };
        let r = census_report(&Digraph::complete(5), &opts).unwrap();
        let lengths: Vec<usize> = r.counts.0.keys().copied().collect();
        assert_eq!(lengths, vec![2, 3]);
        assert_eq!(r.verified, Some(true));
    }

    #[test]
    fn exit_codes() {
        let size = CliError::Size(DetPermError::SizeCap { n: 30, cap: 20 });
        assert_eq!(size.exit_code(), 2);
        assert_eq!(CliError::Hopf(HopfError::Budget { limit: 1 }).exit_code(), 2);
        assert_eq!(CliError::Mismatch(String::new()).exit_code(), 3);
        assert_eq!(CliError::SizeCapEnv("x".into()).exit_code(), 1);
    }

    #[test]
    fn check_triangle_passes() {
        let report = check_graph(&Digraph::complete(3), &Limits::default()).unwrap();
        assert_eq!(report.first_failure(), None, "{}", report.render());
        assert!(report.hopf_skipped.is_none());
        assert!(report.render().ends_with("identities hold\n"));
    }

    #[test]
    fn tsv_layout() {
        let mut r = report("0 0", Method::Brute);
        r.elapsed_ms = 0;
        assert_eq!(
            r.to_tsv(),
            "field\tvalue\nn\t1\nedges\t1\nmethod\tbrute\ncount_1\t1\nhamiltonian\t1\nelapsed_ms\t0\nverified\t-\n"
        );
    }
}
