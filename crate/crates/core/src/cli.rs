//! The `dwkit` command line.
//!
//! Every command prints one JSON document on standard output. Failures print
//! `{"error":{"kind":..,"detail":..}}` and exit with status 1. Counts and
//! phases are decimal strings; object keys are sorted, so output is
//! byte-identical across runs and thread counts.

use std::collections::BTreeMap;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::cochain::{set_memory_budget, Cochain, CochainError};
use crate::group::{FiniteGroup, GroupError};
use crate::invariants::{torus_holonomy, torus_report, InvariantError, InvariantReport};
use crate::json::{self, format_key, InputError};
use crate::phase::PhaseError;
use crate::simplicial::{torus_field, DeltaComplex, SimplicialError};
use crate::transgression::{equivariant_sector_counts, transgress, TransgressionError};

pub const MEM_BUDGET_ENV: &str = "DWKIT_MEM_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "dwkit",
    version,
    about = "Exact invariants of twisted Dijkgraaf-Witten theories for finite groups"
)]
pub struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Add floating-point diagnostics (12 decimals) next to exact values.
    #[arg(long, global = true)]
    pub numeric: bool,
    /// Cap on dense table memory, in bytes, with optional K/M/G suffix.
    #[arg(long, global = true)]
    pub mem_budget: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a group.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Work with group cochains.
    #[command(subcommand)]
    Cocycle(CocycleCommand),
    /// Transgress a cocycle to the loop groupoid.
    Transgress(CocycleArgs),
    /// Torus invariant from the commuting-tuple formula.
    Torus {
        #[command(flatten)]
        input: CocycleArgs,
        /// Torus dimension; must equal the cocycle degree.
        #[arg(long)]
        n: usize,
        /// Also evaluate the state sum and the transgression count.
        #[arg(long)]
        check_all: bool,
    },
    /// Simple objects of the twisted Drinfeld double.
    Simples {
        #[command(flatten)]
        input: CocycleArgs,
        /// Also evaluate the state sum and the transgression count.
        #[arg(long)]
        check_all: bool,
    },
    /// State sum on a complex; repeated complexes are joined disjointly.
    Statesum {
        #[command(flatten)]
        input: CocycleArgs,
        #[arg(long, required = true)]
        complex: Vec<String>,
    },
    /// Holonomy of one flat field.
    Holonomy {
        #[command(flatten)]
        input: CocycleArgs,
        #[arg(long)]
        complex: String,
        /// Field document mapping edge names to elements.
        #[arg(long, conflicts_with = "tuple", required_unless_present = "tuple")]
        field: Option<String>,
        /// Commuting axis holonomies for a torus complex, e.g. `1,1,1`.
        #[arg(long, value_delimiter = ',')]
        tuple: Option<Vec<usize>>,
    },
    /// Sector counts of the pushforward along a homomorphism.
    Equivariant {
        #[arg(long)]
        hom: String,
        #[arg(long)]
        cocycle: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    Show {
        #[arg(long)]
        group: String,
    },
    Verify {
        #[arg(long)]
        group: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CocycleCommand {
    Verify(CocycleArgs),
    Coboundary(CocycleArgs),
    /// Seeded random cocycle `delta beta` with normalized `beta` of degree `n-1`.
    Random {
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest denominator drawn for `beta`.
        #[arg(long, default_value_t = 12)]
        max_den: u64,
        /// Emit the random normalized cochain itself instead of its coboundary.
        #[arg(long)]
        raw: bool,
    },
}

#[derive(Debug, Args)]
pub struct CocycleArgs {
    /// Group URI or file; optional when the cocycle carries its group.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub cocycle: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    InvalidInput,
    NotACocycle,
    NotAFundamentalCycle,
    NotRational,
    CrossCheckMismatch,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::InvalidInput => "InvalidInput",
            ErrorKind::NotACocycle => "NotACocycle",
            ErrorKind::NotAFundamentalCycle => "NotAFundamentalCycle",
            ErrorKind::NotRational => "NotRational",
            ErrorKind::CrossCheckMismatch => "CrossCheckMismatch",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub kind: ErrorKind,
    pub detail: String,
}

impl CliError {
    fn new(kind: ErrorKind, detail: impl Into<String>) -> Self {
        Self {
            kind,
            detail: detail.into(),
        }
    }

    fn invalid(detail: impl Into<String>) -> Self {
        Self::new(ErrorKind::InvalidInput, detail)
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind.as_str(), "detail": self.detail } })
    }
}

fn phase_kind(e: &PhaseError) -> ErrorKind {
    match e {
        PhaseError::NotRational { .. } => ErrorKind::NotRational,
        _ => ErrorKind::InvalidInput,
    }
}

impl From<PhaseError> for CliError {
    fn from(e: PhaseError) -> Self {
        Self::new(phase_kind(&e), e.to_string())
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        Self::invalid(e.to_string())
    }
}

impl From<CochainError> for CliError {
    fn from(e: CochainError) -> Self {
        Self::invalid(e.to_string())
    }
}

impl From<SimplicialError> for CliError {
    fn from(e: SimplicialError) -> Self {
        let kind = match &e {
            SimplicialError::NotAFundamentalCycle { .. } => ErrorKind::NotAFundamentalCycle,
            SimplicialError::Phase(p) => phase_kind(p),
            _ => ErrorKind::InvalidInput,
        };
        Self::new(kind, e.to_string())
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Simplicial(s) => s.into(),
            other => Self::invalid(other.to_string()),
        }
    }
}

impl From<TransgressionError> for CliError {
    fn from(e: TransgressionError) -> Self {
        let kind = match &e {
            TransgressionError::CrossCheckMismatch { .. } => ErrorKind::CrossCheckMismatch,
            TransgressionError::NotACount(_) => ErrorKind::NotRational,
            TransgressionError::Phase(p) => phase_kind(p),
            _ => ErrorKind::InvalidInput,
        };
        Self::new(kind, e.to_string())
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        let kind = match &e {
            InvariantError::CrossCheckMismatch { .. } => ErrorKind::CrossCheckMismatch,
            InvariantError::NegativeCount(_) | InvariantError::NonIntegral(_) => {
                ErrorKind::NotRational
            }
            InvariantError::Phase(p) => phase_kind(p),
            InvariantError::Simplicial(s) => return s.clone().into(),
            InvariantError::Transgression(t) => return t.clone().into(),
            _ => ErrorKind::InvalidInput,
        };
        Self::new(kind, e.to_string())
    }
}

/// Parses `1048576`, `512K`, `16M` or `2G`.
pub fn parse_bytes(s: &str) -> Result<usize, CliError> {
    let t = s.trim();
    let (digits, shift) = match t.chars().last().map(|c| c.to_ascii_uppercase()) {
        Some('K') => (&t[..t.len() - 1], 10),
        Some('M') => (&t[..t.len() - 1], 20),
        Some('G') => (&t[..t.len() - 1], 30),
        _ => (t, 0),
    };
    digits
        .trim()
        .parse::<usize>()
        .ok()
        .and_then(|n| n.checked_mul(1 << shift))
        .ok_or_else(|| CliError::invalid(format!("bad memory budget {s:?}")))
}

fn numeric(value: &BigRational) -> String {
    let x = value.to_f64().unwrap_or(f64::NAN);
    fmt_f64(x)
}

fn fmt_f64(x: f64) -> String {
    let x = if x.abs() < 5e-13 { 0.0 } else { x };
    format!("{x:.12}")
}

struct Context {
    numeric: bool,
}

impl Context {
    fn resolve_cocycle(&self, args: &CocycleArgs) -> Result<Cochain, CliError> {
        let group = args.group.as_deref().map(json::load_group).transpose()?;
        Ok(json::load_cocycle(&args.cocycle, group.as_ref())?)
    }

    /// Loads a cochain and rejects it unless it is a cocycle.
    fn cocycle(&self, args: &CocycleArgs) -> Result<Cochain, CliError> {
        let theta = self.resolve_cocycle(args)?;
        require_cocycle(&theta)?;
        Ok(theta)
    }

    fn report(&self, report: &InvariantReport, degree: usize) -> Value {
        let checks: Vec<Value> = report
            .cross_checks
            .iter()
            .map(
                |c| json!({ "channel": c.channel, "value": c.value.to_string(), "equal": c.equal }),
            )
            .collect();
        let mut out = json!({
            "value": report.value.to_string(),
            "channel": report.channel,
            "degree": degree,
            "cross_checks": checks,
        });
        if self.numeric {
            out["numeric"] = json!(numeric(&report.value));
        }
        out
    }
}

fn require_cocycle(theta: &Cochain) -> Result<(), CliError> {
    let report = theta.verify();
    match report.violation {
        None => Ok(()),
        Some((args, value)) => Err(CliError::new(
            ErrorKind::NotACocycle,
            format!("coboundary is {value} at {}", format_key(&args)),
        )),
    }
}

fn group_compatible(a: &FiniteGroup, b: &FiniteGroup) -> Result<(), CliError> {
    if a != b {
        return Err(CliError::invalid(
            "cocycle and homomorphism source are different groups",
        ));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Value, CliError> {
    let ctx = Context {
        numeric: cli.numeric,
    };
    match &cli.command {
        Command::Group(GroupCommand::Show { group }) => {
            Ok(json::group_to_json(&*json::load_group(group)?))
        }
        Command::Group(GroupCommand::Verify { group }) => {
            let g = json::load_group(group)?;
            g.verify_axioms()?;
            Ok(json!({ "ok": true, "order": g.order().to_string(), "abelian": g.is_abelian() }))
        }
        Command::Cocycle(CocycleCommand::Verify(args)) => {
            let theta = ctx.resolve_cocycle(args)?;
            let report = theta.verify();
            if let Some((at, value)) = report.violation {
                return Err(CliError::new(
                    ErrorKind::NotACocycle,
                    format!("coboundary is {value} at {}", format_key(&at)),
                ));
            }
            Ok(json!({
                "ok": true,
                "degree": theta.degree(),
                "normalized": report.normalized,
                "denominator": theta.denominator_lcm().to_string(),
            }))
        }
        Command::Cocycle(CocycleCommand::Coboundary(args)) => {
            let c = ctx.resolve_cocycle(args)?;
            Ok(json::cocycle_to_json(&c.coboundary()?))
        }
        Command::Cocycle(CocycleCommand::Random {
            group,
            degree,
            seed,
            max_den,
            raw,
        }) => {
            let g = json::load_group(group)?;
            if *raw {
                return Ok(json::cocycle_to_json(&Cochain::random(
                    g, *degree, *seed, *max_den,
                )?));
            }
            if *degree == 0 {
                return Err(CliError::invalid("random cocycles need degree at least 1"));
            }
            let beta = Cochain::random(g, degree - 1, *seed, *max_den)?;
            Ok(json::cocycle_to_json(&beta.coboundary()?))
        }
        Command::Transgress(args) => {
            let theta = ctx.cocycle(args)?;
            let tau = transgress(&theta)?;
            let group = theta.group();
            let entries: BTreeMap<String, String> = tau
                .entries()
                .filter(|(_, _, v)| !v.is_zero())
                .map(|(g, hs, v)| {
                    let hs: Vec<String> = hs.iter().map(|h| h.to_string()).collect();
                    (format!("({};{})", g, hs.join(",")), v.to_string())
                })
                .collect();
            Ok(json!({
                "objects": group.labels(),
                "degree": tau.degree(),
                "entries": entries,
                "default": "0",
                "cocycle": tau.is_groupoid_cocycle(),
                "normalized": tau.is_normalized(),
            }))
        }
        Command::Torus {
            input,
            n,
            check_all,
        } => {
            let theta = ctx.cocycle(input)?;
            if theta.degree() != *n {
                return Err(CliError::invalid(format!(
                    "torus dimension {n} differs from cocycle degree {}",
                    theta.degree()
                )));
            }
            Ok(ctx.report(&torus_report(&theta, *check_all)?, *n))
        }
        Command::Simples { input, check_all } => {
            let theta = ctx.cocycle(input)?;
            if theta.degree() != 3 {
                return Err(CliError::invalid(format!(
                    "simple objects need a degree-3 cocycle, got degree {}",
                    theta.degree()
                )));
            }
            Ok(ctx.report(&torus_report(&theta, *check_all)?, 3))
        }
        Command::Statesum { input, complex } => {
            let theta = ctx.cocycle(input)?;
            let mut joined: Option<DeltaComplex> = None;
            for c in complex {
                let next = json::load_complex(c)?;
                joined = Some(match joined {
                    None => next,
                    Some(acc) => acc.disjoint_union(&next)?,
                });
            }
            let joined = joined.expect("at least one complex");
            joined.validate()?;
            let sum = joined.state_sum(&theta)?;
            let mut out = json!({
                "value": sum.value.to_string(),
                "field_count": sum.field_count.to_string(),
                "vertex_count": joined.vertex_count(),
                "simplex_count": joined.simplices().len(),
            });
            if ctx.numeric {
                let z = sum.phases.numeric_value();
                let norm = (theta.group().order() as f64).powi(joined.vertex_count() as i32);
                out["numeric"] = json!({ "re": fmt_f64(z.re / norm), "im": fmt_f64(z.im / norm) });
            }
            Ok(out)
        }
        Command::Holonomy {
            input,
            complex,
            field,
            tuple,
        } => {
            let theta = ctx.cocycle(input)?;
            let complex = json::load_complex(complex)?;
            complex.validate()?;
            let group = theta.group();
            let field = match (field, tuple) {
                (Some(path), _) => json::load_field(path, &complex, group)?,
                (None, Some(t)) => torus_field(&complex, group, t)?,
                (None, None) => return Err(CliError::invalid("holonomy needs --field or --tuple")),
            };
            let value = complex.holonomy(&field, &theta)?;
            let mut out = json!({ "holonomy": value.to_string() });
            if let Some(t) = tuple {
                if t.len() == theta.degree() {
                    let closed = torus_holonomy(t, &theta)?;
                    out["closed_form"] = json!(closed.to_string());
                    out["equal"] = json!(closed == value);
                }
            }
            Ok(out)
        }
        Command::Equivariant { hom, cocycle } => {
            let hom = json::load_hom(hom)?;
            let source: Arc<FiniteGroup> = hom.source().clone();
            let theta = json::load_cocycle(cocycle, Some(&source))?;
            group_compatible(theta.group(), &source)?;
            require_cocycle(&theta)?;
            let counts = equivariant_sector_counts(&hom, &theta)?;
            let target = hom.target();
            let sectors: BTreeMap<String, String> = counts
                .sectors
                .iter()
                .map(|&(j, c)| (target.label(j).to_string(), c.to_string()))
                .collect();
            Ok(json!({
                "sectors": sectors,
                "total": counts.total.to_string(),
                "kernel_path_checked": counts.kernel_path_checked,
            }))
        }
    }
}

/// Runs one invocation; returns the exit status and the text for standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(
                e.kind(),
                K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                return (0, e.to_string());
            }
            return fail(&CliError::invalid(e.to_string().trim().to_string()));
        }
    };
    match run_parsed(&cli) {
        Ok(value) => (0, render(&value)),
        Err(e) => fail(&e),
    }
}

fn run_parsed(cli: &Cli) -> Result<Value, CliError> {
    let budget = match (&cli.mem_budget, std::env::var(MEM_BUDGET_ENV)) {
        (Some(flag), _) => Some(parse_bytes(flag)?),
        (None, Ok(env)) => Some(parse_bytes(&env)?),
        (None, Err(_)) => None,
    };
    if let Some(bytes) = budget {
        set_memory_budget(bytes);
    }
    match cli.threads {
        None => execute(cli),
        Some(0) => Err(CliError::invalid("--threads must be positive")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::invalid(e.to_string()))?
            .install(|| execute(cli)),
    }
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn fail(e: &CliError) -> (i32, String) {
    (1, render(&e.to_json()))
}
