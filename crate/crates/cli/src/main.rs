//! `dop`: verify, emit and explore diffusion orthogonal polynomial models.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use dop_core::catalog::{self, CatalogCase, Params};
use dop_core::coxeter::{
    closed_form, degree_violations, operator_mismatch, oracle_pushforward, CoxeterSpec, Family,
};
use dop_core::dopcore::{verify_model_with, DopModel};
use dop_core::exactmath::json::{matrix_to_json, rational_poly_from_json};
use dop_core::exactmath::resultant::DEFAULT_SEED;
use dop_core::exactmath::{parse_poly, parse_rational, vars_of, MultiPoly, Rational};
use dop_core::pluecker;
use dop_core::surfaces::{
    cone_patch, developable_patch, forced_factor, points_to_csv, sample_surface, solution_space, CurveBranch,
    SampleBox,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "dop", version, about = "Exact tools for diffusion orthogonal polynomial models")]
struct Cli {
    /// Seed for every randomized subroutine.
    #[arg(long, global = true, env = "DOP_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (0 = one per core). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a model file against the algebraic conditions.
    Verify {
        model: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// List or emit catalog cases.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Laplacian pushforwards by Coxeter groups.
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// Cometrics tangent to a surface, and sampling of Γ = 0.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Plücker numerics and the plane-curve count.
    #[command(subcommand)]
    Pluecker(PlueckerCmd),
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Emit {
        #[arg(long)]
        case: String,
        /// Comma-separated `name=value` pairs with rational values.
        #[arg(long, default_value = "")]
        params: String,
    },
}

#[derive(Subcommand)]
enum CoxeterCmd {
    Emit(CoxeterEmit),
}

#[derive(Args)]
struct CoxeterEmit {
    #[arg(long)]
    family: String,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    variant: Option<u8>,
    /// Product factors such as `T1,A2,B1`.
    #[arg(long, value_delimiter = ',')]
    factors: Vec<String>,
    /// Recompute with the brute-force oracle and compare.
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Subcommand)]
enum SurfaceCmd {
    Solve {
        #[arg(long)]
        curve: PathBuf,
        /// Use the cone over the curve instead of its tangent developable.
        #[arg(long)]
        cone: bool,
    },
    Sample {
        #[arg(long)]
        gamma: PathBuf,
        /// x0,x1,y0,y1,z0,z1
        #[arg(long = "box", value_delimiter = ',', num_args = 6, default_values = ["-2", "2", "-2", "2", "-2", "2"])]
        bounds: Vec<String>,
        #[arg(long, default_value_t = 24)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        out: Format,
    },
}

#[derive(Subcommand)]
enum PlueckerCmd {
    Table1 {
        #[arg(long, default_value_t = 6)]
        r1_max: i64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        out: Format,
    },
    Conic {
        #[arg(long, default_value_t = 3)]
        dmin: i64,
        #[arg(long, default_value_t = 5)]
        dmax: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// A run that ends with a nonzero exit code.
#[derive(Debug)]
struct Exit {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Exit {
    Exit { code, msg: msg.into() }
}

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        let code = match e.downcast_ref::<dop_core::Error>() {
            Some(dop_core::Error::Parse(_) | dop_core::Error::UnknownVariable(_)) => 2,
            Some(_) => 1,
            None => 2,
        };
        fail(code, format!("{e:#}"))
    }
}

impl From<dop_core::Error> for Exit {
    fn from(e: dop_core::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

struct Ctx {
    seed: u64,
    command: String,
}

impl Ctx {
    /// Attach tool, version, seed and command to a JSON object.
    fn stamp(&self, v: Value) -> Value {
        let mut m = match v {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("result".into(), other);
                m
            }
        };
        m.insert("tool".into(), json!("dop"));
        m.insert("version".into(), json!(VERSION));
        m.insert("seed".into(), json!(self.seed));
        m.insert("command".into(), json!(self.command));
        Value::Object(m)
    }

    fn print_json(&self, v: Value) {
        emit(&format!("{}\n", serde_json::to_string_pretty(&self.stamp(v)).expect("serializable")));
    }

    fn print_csv(&self, body: &str) {
        emit(&format!("# dop {VERSION} seed={} {}\n{body}", self.seed, self.command));
    }
}

/// Write to stdout; a closed pipe ends output quietly.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: stdout: {e}");
        }
    }
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, Exit> {
    serde_json::from_str(&read(path)?).map_err(|e| fail(2, format!("{}: invalid JSON: {e}", path.display())))
}

fn parse_params(s: &str) -> Result<Params, Exit> {
    let mut out = Params::new();
    for pair in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = pair.split_once('=').ok_or_else(|| fail(2, format!("expected name=value, got {pair:?}")))?;
        out.insert(k.trim().to_string(), parse_rational(v)?);
    }
    Ok(out)
}

fn verify(ctx: &Ctx, path: &Path, max_degree: u32) -> Result<(), Exit> {
    let v = read_json(path)?;
    let model = DopModel::from_json(&v).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    let report = verify_model_with(&model, max_degree, ctx.seed);
    for c in &report.checks {
        eprintln!("{}: {}", c.condition, if c.pass { "pass" } else { "fail" });
    }
    ctx.print_json(report.to_json());
    if report.pass() {
        Ok(())
    } else {
        Err(fail(1, "verification failed"))
    }
}

fn catalog_cmd(ctx: &Ctx, cmd: &CatalogCmd) -> Result<(), Exit> {
    match cmd {
        CatalogCmd::List => ctx.print_json(json!({ "cases": catalog::catalog_index() })),
        CatalogCmd::Emit { case, params } => {
            let case: CatalogCase = case.parse()?;
            let params = parse_params(params)?;
            let v = if case.is_solution() {
                catalog::solution(case, &params)?.to_json()
            } else {
                let g = catalog::cometric_family(case, &params)?;
                json!({ "label": case.id(), "g": matrix_to_json(g.matrix()) })
            };
            ctx.print_json(v);
        }
    }
    Ok(())
}

fn coxeter_spec(a: &CoxeterEmit) -> Result<CoxeterSpec, Exit> {
    let family: Family = a.family.parse()?;
    let spec = if family == Family::Product {
        if a.factors.is_empty() {
            return Err(fail(2, "a product needs --factors"));
        }
        let factors = a.factors.iter().map(|t| CoxeterSpec::parse_factor(t)).collect::<Result<Vec<_>, _>>()?;
        CoxeterSpec::product(factors, a.variant.unwrap_or(1))
    } else {
        let rank = match (family, a.rank, a.family.eq_ignore_ascii_case("d4")) {
            (_, Some(n), _) => n,
            (Family::D, None, true) => 4,
            _ => return Err(fail(2, format!("--rank is required for {family}"))),
        };
        let mut spec = CoxeterSpec::new(family, rank);
        spec.variant = a.variant;
        spec
    };
    spec.validate()?;
    Ok(spec)
}

fn coxeter_cmd(ctx: &Ctx, cmd: &CoxeterCmd) -> Result<(), Exit> {
    let CoxeterCmd::Emit(a) = cmd;
    let spec = coxeter_spec(a)?;
    let model = closed_form(&spec)?;
    let violations = degree_violations(&model);
    let mut out = model.to_json();
    out["weighted"] = json!(model.is_weighted());
    out["degreeViolations"] = json!(violations.iter().map(|d| d.to_json()).collect::<Vec<_>>());
    let mut mismatch = None;
    if a.check_oracle {
        let o = oracle_pushforward(&spec)?;
        mismatch = operator_mismatch(&model.op, &o.op)
            .or_else(|| (model.eigen != o.eigen).then(|| "eigenvalues differ".to_string()));
        out["oracle"] = json!(match &mismatch {
            None => "match".to_string(),
            Some(m) => format!("mismatch: {m}"),
        });
    }
    for d in &violations {
        eprintln!("degree {} in G[{},{}]: {}", d.degree, d.row + 1, d.col + 1, d.monomial);
    }
    ctx.print_json(out);
    if let Some(m) = mismatch {
        return Err(fail(1, format!("oracle mismatch: {m}")));
    }
    if model.is_weighted() || !violations.is_empty() {
        return Err(fail(3, format!("{} is a weighted model only", spec.label())));
    }
    Ok(())
}

/// Curve file: a branch JSON whose components are polynomial JSON or strings in t.
fn read_curve(path: &Path) -> Result<CurveBranch, Exit> {
    let mut v = read_json(path)?;
    if let Some(comps) = v.get_mut("components").and_then(Value::as_array_mut) {
        for c in comps.iter_mut() {
            if let Value::String(s) = c {
                let p = parse_poly(s, &["t"]).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
                *c = dop_core::exactmath::json::poly_to_json(&p.to_laurent());
            }
        }
    }
    CurveBranch::from_json(&v).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

/// Γ file: polynomial JSON, or a polynomial in x, y, z as text.
fn read_gamma(path: &Path) -> Result<MultiPoly, Exit> {
    let src = read(path)?;
    let p = match serde_json::from_str::<Value>(&src) {
        Ok(v) => rational_poly_from_json(&v)?,
        Err(_) => parse_poly(src.trim(), &["x", "y", "z"])?,
    };
    Ok(p.with_vars(&vars_of(&["x", "y", "z"]))?)
}

fn surface_cmd(ctx: &Ctx, cmd: &SurfaceCmd) -> Result<(), Exit> {
    match cmd {
        SurfaceCmd::Solve { curve, cone } => {
            let b = read_curve(curve)?;
            let patch = if *cone { cone_patch(&b)? } else { developable_patch(&b)? };
            let space = solution_space(&[patch]);
            let basis = space.cometrics();
            let mut out = json!({
                "surface": if *cone { "cone" } else { "developable" },
                "dim": space.dim(),
                "basis": basis.iter().map(|g| matrix_to_json(g.matrix())).collect::<Vec<_>>(),
            });
            if *cone {
                let x2 = parse_poly("x^2", &["x", "y", "z"])?;
                out["forcedFactor"] = json!({ "factor": "x^2", "report": forced_factor(&basis, &x2, 8, ctx.seed).to_json() });
            }
            ctx.print_json(out);
        }
        SurfaceCmd::Sample { gamma, bounds, grid, out } => {
            let g = read_gamma(gamma)?;
            let b: Vec<Rational> = bounds.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
            let bx = SampleBox::new(b.try_into().map_err(|_| fail(2, "--box needs six values"))?)?;
            let pts = sample_surface(&g, &bx, *grid)?;
            match out {
                Format::Csv => ctx.print_csv(&points_to_csv(&pts)),
                Format::Json => ctx.print_json(json!({ "count": pts.len(), "points": pts })),
            }
        }
    }
    Ok(())
}

fn pluecker_cmd(ctx: &Ctx, cmd: &PlueckerCmd) -> Result<(), Exit> {
    match cmd {
        PlueckerCmd::Table1 { r1_max, out } => {
            let rows = pluecker::enumerate_table1(*r1_max);
            match out {
                Format::Csv => ctx.print_csv(&pluecker::table_csv(&rows)),
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|r| {
                            let mut v = r.numerics.to_json();
                            v["no"] = json!(r.label);
                            v
                        })
                        .collect();
                    ctx.print_json(json!({ "rows": rows }));
                }
            }
        }
        PlueckerCmd::Conic { dmin, dmax } => ctx.print_json(pluecker::conic_infeasible(*dmin, *dmax)?.to_json()),
    }
    Ok(())
}

fn command_line() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn run(cli: &Cli) -> Result<(), Exit> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
        .context("thread pool")
        .map_err(Exit::from)?;
    let ctx = Ctx { seed: cli.seed, command: command_line() };
    match &cli.cmd {
        Cmd::Verify { model, max_degree } => verify(&ctx, model, *max_degree),
        Cmd::Catalog(c) => catalog_cmd(&ctx, c),
        Cmd::Coxeter(c) => coxeter_cmd(&ctx, c),
        Cmd::Surface(c) => surface_cmd(&ctx, c),
        Cmd::Pluecker(c) => pluecker_cmd(&ctx, c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
