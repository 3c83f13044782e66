//! Flags, config files and the resolved run configuration.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_integer::Integer;
use rootq_core::qfield::QRoot;
use rootq_core::rootdata::{build_root_system, CartanType, RootSystem, Weight};
use rootq_core::Rat;
use serde_json::{json, Value};

use crate::render::{ints, weight};
use crate::CliError;

pub const HEIGHT_BUDGET_ENV: &str = "ROOTQ_HEIGHT_BUDGET";
pub const DEFAULT_HEIGHT_BUDGET: usize = 40;
pub const DEFAULT_SHIFT_HEIGHT: usize = 8;
pub const DEFAULT_K_MAX: usize = 6;

#[derive(Parser, Debug)]
#[command(
    name = "rootq",
    version,
    about = "Exact reports for U_q^fin(g) at roots of unity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orders M, M_i, M_alpha, parity and the dual algebra.
    Spec(Opts),
    /// Dual Cartan matrix and its type.
    Dual(Opts),
    /// Special points z_i M_i Lambda_i with their singlet exponents and parities.
    SpecialPoints(Opts),
    /// Unitarity of L^fin(lambda) over a box of highest weights.
    UnitaryTable(Opts),
    /// One Gram block on all words of a weight space.
    Gram(Opts),
    /// Block-by-block check that a singlet shift only changes the real form.
    ShiftCheck(Opts),
    /// Unitarity along q_k -> 1 for a Hermitian node.
    LimitScan(Opts),
    /// Quasi-classical relations and sector decompositions.
    FrobeniusCheck(Opts),
    /// Subalgebra of the dual algebra commuting with all K~_i.
    RealityAlgebra(Opts),
    /// Hermitian nodes and the noncompact forms they select.
    ClassifyForms(Opts),
}

/// Every option is taken as text so that flags and config files share one parser.
#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Cartan type, e.g. A2, B3, G2, or a product such as A1xA1.
    #[arg(long)]
    pub algebra: Option<String>,
    /// q = exp(2 pi i n/m), given as n/m.
    #[arg(long)]
    pub q: Option<String>,
    /// Real form: "compact" or a sign vector such as "+,-".
    #[arg(long, conflicts_with = "shift")]
    pub form: Option<String>,
    /// Real form induced by the singlet weight with exponents p1,p2,...
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<String>,
    /// Highest weight (lambda_0 when --shift is given), comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Weight-space depth eta for gram, comma-separated.
    #[arg(long)]
    pub eta: Option<String>,
    /// Special point coordinates z for frobenius-check, comma-separated.
    #[arg(long)]
    pub z: Option<String>,
    /// Largest Dynkin label in table scans.
    #[arg(long)]
    pub max_weight: Option<String>,
    /// Height up to which blocks are compared (shift-check, limit-scan).
    #[arg(long)]
    pub max_height: Option<String>,
    /// Hermitian node (1-based) for limit-scan.
    #[arg(long)]
    pub node: Option<String>,
    /// Last stage of limit-scan.
    #[arg(long)]
    pub k_max: Option<String>,
    /// Height cap for module construction [env: ROOTQ_HEIGHT_BUDGET] [default: 40].
    #[arg(long)]
    pub height_budget: Option<String>,
    /// json or csv [default: json].
    #[arg(long)]
    pub format: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<String>,
    /// key=value file using the long flag names.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

const KEYS: [&str; 14] = [
    "algebra",
    "q",
    "form",
    "shift",
    "lambda",
    "eta",
    "z",
    "max-weight",
    "max-height",
    "node",
    "k-max",
    "height-budget",
    "format",
    "output",
];

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spec(_) => "spec",
            Command::Dual(_) => "dual",
            Command::SpecialPoints(_) => "special-points",
            Command::UnitaryTable(_) => "unitary-table",
            Command::Gram(_) => "gram",
            Command::ShiftCheck(_) => "shift-check",
            Command::LimitScan(_) => "limit-scan",
            Command::FrobeniusCheck(_) => "frobenius-check",
            Command::RealityAlgebra(_) => "reality-algebra",
            Command::ClassifyForms(_) => "classify-forms",
        }
    }

    pub fn opts(&self) -> &Opts {
        match self {
            Command::Spec(o)
            | Command::Dual(o)
            | Command::SpecialPoints(o)
            | Command::UnitaryTable(o)
            | Command::Gram(o)
            | Command::ShiftCheck(o)
            | Command::LimitScan(o)
            | Command::FrobeniusCheck(o)
            | Command::RealityAlgebra(o)
            | Command::ClassifyForms(o) => o,
        }
    }
}

impl Opts {
    fn as_map(&self) -> BTreeMap<&'static str, String> {
        let vals = [
            &self.algebra,
            &self.q,
            &self.form,
            &self.shift,
            &self.lambda,
            &self.eta,
            &self.z,
            &self.max_weight,
            &self.max_height,
            &self.node,
            &self.k_max,
            &self.height_budget,
            &self.format,
            &self.output,
        ];
        KEYS.iter()
            .zip(vals)
            .filter_map(|(k, v)| v.clone().map(|v| (*k, v)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// How the real form was requested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormChoice {
    Compact,
    Signs(Vec<i8>),
    Shift(Vec<i64>),
}

/// Fully validated parameters of one run.
#[derive(Debug)]
pub struct RunConfig {
    pub command: &'static str,
    pub algebra: Option<(String, RootSystem)>,
    pub q: Option<QRoot>,
    pub form: FormChoice,
    pub lambda: Option<Weight>,
    pub eta: Option<Vec<i64>>,
    pub z: Option<Vec<i64>>,
    pub max_weight: Option<i64>,
    pub max_height: usize,
    pub node: Option<usize>,
    pub k_max: usize,
    pub height_budget: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Merge flags over the environment over the config file over defaults,
    /// and validate every value.
    pub fn resolve(cmd: &Command, env_budget: Option<String>) -> Result<Self, CliError> {
        let opts = cmd.opts();
        let mut merged: BTreeMap<&'static str, String> = match &opts.config {
            Some(path) => read_config(path)?,
            None => BTreeMap::new(),
        };
        let flags = opts.as_map();
        if flags.contains_key("form") {
            merged.remove("shift");
        }
        if flags.contains_key("shift") {
            merged.remove("form");
        }
        if let Some(v) = env_budget {
            merged.insert("height-budget", v);
        }
        merged.extend(flags);
        if merged.contains_key("form") && merged.contains_key("shift") {
            return Err(CliError::usage("--form and --shift are mutually exclusive"));
        }
        let get = |k: &str| merged.get(k).map(|s| s.trim());

        let algebra = get("algebra").map(parse_algebra).transpose()?;
        let q = get("q").map(parse_q).transpose()?;
        let rank = algebra.as_ref().map(|(_, rs)| rs.rank());
        let with_rank = |key: &str, v: usize| -> Result<(), CliError> {
            match rank {
                Some(r) if r != v => Err(CliError::usage(format!(
                    "--{key} has {v} entries, the algebra has rank {r}"
                ))),
                _ => Ok(()),
            }
        };
        let form = match (get("form"), get("shift")) {
            (Some(f), _) => parse_form(f)?,
            (None, Some(p)) => FormChoice::Shift(parse_ints(p, "shift")?),
            (None, None) => FormChoice::Compact,
        };
        match &form {
            FormChoice::Signs(s) => with_rank("form", s.len())?,
            FormChoice::Shift(p) => with_rank("shift", p.len())?,
            FormChoice::Compact => {}
        }
        let lambda = get("lambda").map(parse_weight).transpose()?;
        if let Some(l) = &lambda {
            with_rank("lambda", l.rank())?;
        }
        let eta = get("eta").map(|s| parse_ints(s, "eta")).transpose()?;
        if let Some(e) = &eta {
            with_rank("eta", e.len())?;
            if e.iter().any(|&x| x < 0) {
                return Err(CliError::usage("--eta entries must be non-negative"));
            }
        }
        let z = get("z").map(|s| parse_ints(s, "z")).transpose()?;
        if let Some(z) = &z {
            with_rank("z", z.len())?;
            if z.iter().any(|&x| x < 0) {
                return Err(CliError::usage("--z entries must be non-negative"));
            }
        }
        let max_weight = get("max-weight")
            .map(|s| parse_num::<i64>(s, "max-weight"))
            .transpose()?;
        if max_weight.is_some_and(|w| w < 0) {
            return Err(CliError::usage("--max-weight must be non-negative"));
        }
        let node = get("node")
            .map(|s| parse_num::<usize>(s, "node"))
            .transpose()?;
        if let (Some(n), Some(r)) = (node, rank) {
            if n == 0 || n > r {
                return Err(CliError::usage(format!("--node must lie in 1..={r}")));
            }
        }
        let format = match get("format") {
            None | Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(other) => {
                return Err(CliError::usage(format!(
                    "--format must be json or csv, got {other:?}"
                )))
            }
        };
        Ok(RunConfig {
            command: cmd.name(),
            algebra,
            q,
            form,
            lambda,
            eta,
            z,
            max_weight,
            max_height: get("max-height")
                .map(|s| parse_num(s, "max-height"))
                .transpose()?
                .unwrap_or(DEFAULT_SHIFT_HEIGHT),
            node,
            k_max: get("k-max")
                .map(|s| parse_num(s, "k-max"))
                .transpose()?
                .unwrap_or(DEFAULT_K_MAX),
            height_budget: get("height-budget")
                .map(|s| parse_num(s, "height-budget"))
                .transpose()?
                .unwrap_or(DEFAULT_HEIGHT_BUDGET),
            format,
            output: get("output").map(PathBuf::from),
        })
    }

    pub fn root_system(&self) -> Result<&RootSystem, CliError> {
        self.algebra
            .as_ref()
            .map(|(_, rs)| rs)
            .ok_or_else(|| CliError::usage(format!("{} requires --algebra", self.command)))
    }

    pub fn q(&self) -> Result<QRoot, CliError> {
        self.q
            .ok_or_else(|| CliError::usage(format!("{} requires --q n/m", self.command)))
    }

    pub fn to_json(&self) -> Value {
        let form = match &self.form {
            FormChoice::Compact => json!("compact"),
            FormChoice::Signs(s) => json!(rootq_core::qspec::RealForm { s: s.clone() }.to_string()),
            FormChoice::Shift(_) => Value::Null,
        };
        let shift = match &self.form {
            FormChoice::Shift(p) => ints(p),
            _ => Value::Null,
        };
        json!({
            "command": self.command,
            "algebra": self.algebra.as_ref().map(|(l, _)| l.clone()),
            "q": self.q.map(|q| format!("{}/{}", q.n(), q.m())),
            "form": form,
            "shift": shift,
            "lambda": self.lambda.as_ref().map(weight),
            "eta": self.eta.as_ref().map(|e| ints(e)),
            "z": self.z.as_ref().map(|e| ints(e)),
            "max_weight": self.max_weight,
            "max_height": self.max_height,
            "node": self.node,
            "k_max": self.k_max,
            "height_budget": self.height_budget,
            "format": match self.format { Format::Json => "json", Format::Csv => "csv" },
            "output": self.output.as_ref().map(|p| p.display().to_string()),
        })
    }
}

fn read_config(path: &PathBuf) -> Result<BTreeMap<&'static str, String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::usage(format!("{}:{}: expected key=value", path.display(), no + 1))
        })?;
        let k = k.trim().trim_start_matches("--").replace('_', "-");
        let key = KEYS.iter().find(|&&x| x == k).ok_or_else(|| {
            CliError::usage(format!("{}:{}: unknown key {k:?}", path.display(), no + 1))
        })?;
        out.insert(*key, v.trim().to_string());
    }
    Ok(out)
}

/// `A2`, `G2`, or a product `A1xA1xB2`.
pub fn parse_algebra(s: &str) -> Result<(String, RootSystem), CliError> {
    let parts: Vec<CartanType> = s
        .split(['x', 'X', '*'])
        .map(|p| {
            p.trim()
                .parse::<CartanType>()
                .map_err(|e| CliError::usage(format!("--algebra {s:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    let label = parts
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join("x");
    let systems: Vec<RootSystem> = parts
        .iter()
        .map(|t| build_root_system(t.series, t.rank))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::usage(format!("--algebra {s:?}: {e}")))?;
    if systems.len() == 1 {
        return Ok((label, systems.into_iter().next().unwrap()));
    }
    let n: usize = systems.iter().map(|r| r.rank()).sum();
    let mut a = vec![vec![0i64; n]; n];
    let mut off = 0;
    for r in &systems {
        for (i, row) in r.cartan().iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                a[off + i][off + j] = x;
            }
        }
        off += r.rank();
    }
    let rs = RootSystem::from_cartan_matrix(&a)
        .map_err(|e| CliError::usage(format!("--algebra {s:?}: {e}")))?;
    Ok((label, rs))
}

/// `n/m`, reduced to lowest terms.
pub fn parse_q(s: &str) -> Result<QRoot, CliError> {
    let (n, m) = s
        .split_once('/')
        .ok_or_else(|| CliError::usage(format!("--q must be n/m, got {s:?}")))?;
    let n: i64 = parse_num(n.trim(), "q")?;
    let m: i64 = parse_num(m.trim(), "q")?;
    if m == 0 {
        return Err(CliError::usage("--q has zero denominator"));
    }
    let g = n.gcd(&m);
    QRoot::new(n / g, m / g).map_err(|e| CliError::usage(format!("--q {s}: {e}")))
}

fn parse_form(s: &str) -> Result<FormChoice, CliError> {
    if s.eq_ignore_ascii_case("compact") {
        return Ok(FormChoice::Compact);
    }
    s.split(',')
        .map(|t| match t.trim() {
            "+" | "+1" | "1" => Ok(1i8),
            "-" | "-1" => Ok(-1i8),
            other => Err(CliError::usage(format!(
                "--form entries must be + or -, got {other:?}"
            ))),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(FormChoice::Signs)
}

fn parse_num<T: std::str::FromStr>(s: &str, key: &str) -> Result<T, CliError> {
    s.parse()
        .map_err(|_| CliError::usage(format!("--{key}: cannot parse {s:?}")))
}

fn parse_ints(s: &str, key: &str) -> Result<Vec<i64>, CliError> {
    s.split(',').map(|t| parse_num(t.trim(), key)).collect()
}

fn parse_weight(s: &str) -> Result<Weight, CliError> {
    let coords: Vec<Rat> = s
        .split(',')
        .map(|t| parse_num::<Rat>(t.trim(), "lambda"))
        .collect::<Result<_, _>>()?;
    Ok(Weight::new(coords))
}
