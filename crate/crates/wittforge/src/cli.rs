//! `wittforge` command line: JSON on standard output, exit code 0 on
//! success, 1 when a predicate or verification fails, 2 on any error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use wittforge_core::cone::QuasiIdeal;
use wittforge_core::derham::{hodge_cohomology, MonomialAlgebra};
use wittforge_core::prismatic::{prismatic_points_affine, wbar_ring, witt_points, AffinePresentation, PrismaticContext};
use wittforge_core::rees::{FilteredModule, ReesModule};
use wittforge_core::structure::{
    ghost_profile_search, is_distinguished, is_hodge_tate, v_nonfree_obstruction, witt_is_unit, LocalContext,
    PredicateContext,
};
use wittforge_core::witt::WittPolynomials;
use wittforge_core::{CommRing, Elem, IndexSet, Ring, WittRing};

use crate::cache::{self, DiskCache};
use crate::json;
use crate::suites::{self, Budget, SuiteReport};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "wittforge", version, about = "Exact Witt vector and prismatic point computations")]
pub struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the JSON output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Cap on enumerated elements.
    #[arg(long, global = true)]
    pub budget_enum: Option<usize>,
    /// Multiplier for random case counts in `verify`.
    #[arg(long, global = true)]
    pub budget_cases: Option<f64>,
    /// Cap on sign patterns in the non-freeness search.
    #[arg(long, global = true)]
    pub budget_search: Option<u64>,
    /// Radius of the character box for de Rham computations.
    #[arg(long, global = true)]
    pub budget_box: Option<i64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget {
            cases: self.budget_cases.unwrap_or(d.cases),
            enumeration: self.budget_enum.unwrap_or(d.enumeration),
            search: self.budget_search.unwrap_or(d.search),
            char_box: self.budget_box.unwrap_or(d.char_box),
        }
    }
}

#[derive(Debug, Args)]
pub struct WittArgs {
    /// Coefficient ring, e.g. `integers`, `zmod:4`, `poly(integers; x)`.
    #[arg(long, default_value = "integers")]
    pub ring: String,
    /// `div:N`, `ptyp:p:len` or `set:a,b,c`.
    #[arg(long)]
    pub index_set: String,
}

#[derive(Debug, Args)]
pub struct Unary {
    #[command(flatten)]
    pub witt: WittArgs,
    /// Comma-separated coordinates in increasing index order.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
}

#[derive(Debug, Args)]
pub struct Binary {
    #[command(flatten)]
    pub witt: WittArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Debug, Subcommand)]
pub enum WittCommand {
    Add(Binary),
    Mul(Binary),
    Sub(Binary),
    Neg(Unary),
    /// Inverse if `a` is a unit; exit 1 otherwise.
    Unit(Unary),
    /// Non-freeness obstruction for the Verschiebung of 1.
    Nonfree {
        #[arg(long)]
        index_set: String,
        /// Search for a ghost profile realized by an integral vector instead.
        #[arg(long)]
        search: bool,
    },
    /// W-points of `Z[vars]/(relations)`.
    Points {
        #[command(flatten)]
        witt: WittArgs,
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        relation: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Witt vector arithmetic.
    #[command(subcommand)]
    Witt(WittCommand),
    /// Ghost components.
    Ghost(Unary),
    /// `F_n`, landing in `W_{E/n}`.
    Frobenius {
        #[command(flatten)]
        x: Unary,
        #[arg(long)]
        n: u64,
    },
    /// `V_n`, taking coordinates over `E/n`.
    Verschiebung {
        #[command(flatten)]
        x: Unary,
        #[arg(long)]
        n: u64,
    },
    /// Teichmüller lift of a ring element.
    Teich {
        #[command(flatten)]
        witt: WittArgs,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// p-local product decomposition.
    Decompose {
        #[command(flatten)]
        x: Unary,
        #[arg(long)]
        p: u64,
    },
    /// Hodge–Tate predicate; exit 1 if false.
    HodgeTate {
        #[command(flatten)]
        x: Unary,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Distinguished predicate; exit 1 if false.
    Distinguished {
        #[command(flatten)]
        x: Unary,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Quasi-ideal `d: I -> R`, its law, π₀ and optional Hom sets.
    Cone {
        #[arg(long, default_value = "integers")]
        ring: String,
        /// Images of the generators, or ideal generators with `--from-ideal`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        d: Vec<String>,
        /// Module relation as comma-separated coefficients; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        relations: Vec<String>,
        #[arg(long)]
        from_ideal: bool,
        #[arg(long, allow_hyphen_values = true, requires = "r2")]
        r1: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "r1")]
        r2: Option<String>,
    },
    /// Rees module of a filtered vector space.
    Rees {
        /// Filtered module as JSON.
        #[arg(long, value_name = "FILE", conflicts_with = "twist")]
        filtered: Option<PathBuf>,
        /// Use the twist `Q{n}`.
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
        /// Day-convolve with the filtered module in FILE.
        #[arg(long, value_name = "FILE")]
        tensor: Option<PathBuf>,
    },
    /// Hodge-filtered de Rham cohomology of `Q[x^±1.., y..]`.
    Derham {
        #[arg(long, default_value_t = 0)]
        torus: usize,
        #[arg(long, default_value_t = 0)]
        affine: usize,
    },
    /// Prismatic points of an affine presentation.
    Prismatic {
        #[command(flatten)]
        witt: WittArgs,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        relation: Vec<String>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// List suite ids and the invariants they cover.
        #[arg(long)]
        list: bool,
        /// Include wall times (output is then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
}

/// Polynomial families touched by a command, persisted when a cache
/// directory is configured.
#[derive(Default)]
struct Session {
    disk: Option<DiskCache>,
    used: Vec<Arc<WittPolynomials>>,
}

impl Session {
    fn witt(&mut self, args: &WittArgs) -> Result<WittRing> {
        let ring = Ring::parse(&args.ring)?;
        let index = IndexSet::parse(&args.index_set)?;
        let polys = cache::polynomials(&index)?;
        if let Some(disk) = &self.disk {
            disk.warm(&polys, &cache::default_ops(&index))?;
        }
        self.used.push(polys.clone());
        Ok(WittRing::with_polynomials(ring, polys))
    }

    fn finish(&self) -> Result<()> {
        if let Some(disk) = &self.disk {
            for polys in &self.used {
                disk.persist(polys, &cache::default_ops(polys.index()))?;
            }
        }
        Ok(())
    }
}

struct Outcome {
    value: Value,
    ok: bool,
}

fn done(value: Value) -> Result<Outcome> {
    Ok(Outcome { value, ok: true })
}

fn presentation(vars: &[String], relations: &[String]) -> Result<AffinePresentation> {
    let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
    let rels: Vec<&str> = relations.iter().map(String::as_str).collect();
    Ok(AffinePresentation::new(&vars, &rels)?)
}

fn elems(ring: &Ring, texts: &[String]) -> Result<Vec<Elem>> {
    Ok(texts.iter().map(|t| ring.parse_elem(t.trim())).collect::<wittforge_core::Result<_>>()?)
}

fn read_filtered(path: &PathBuf) -> Result<FilteredModule> {
    let value: Value = serde_json::from_str(&fs::read_to_string(path)?)?;
    json::filtered_from_json(&value)
}

fn predicate_context(w: &WittRing, p: Option<u64>) -> Result<PredicateContext> {
    Ok(match p {
        Some(p) => PredicateContext::local(w, p)?,
        None => PredicateContext::auto(w)?,
    })
}

fn binary(s: &mut Session, x: &Binary, f: impl Fn(&WittRing, &wittforge_core::WittVector, &wittforge_core::WittVector) -> wittforge_core::WittVector) -> Result<Outcome> {
    let w = s.witt(&x.witt)?;
    let (a, b) = (json::parse_vector(&w, &x.a)?, json::parse_vector(&w, &x.b)?);
    done(json!({ "coords": json::coords_json(&w, &f(&w, &a, &b)) }))
}

fn run_witt(s: &mut Session, cmd: &WittCommand, budget: &Budget) -> Result<Outcome> {
    match cmd {
        WittCommand::Add(x) => binary(s, x, |w, a, b| w.add(a, b)),
        WittCommand::Mul(x) => binary(s, x, |w, a, b| w.mul(a, b)),
        WittCommand::Sub(x) => binary(s, x, |w, a, b| w.sub(a, b)),
        WittCommand::Neg(x) => {
            let w = s.witt(&x.witt)?;
            let a = json::parse_vector(&w, &x.a)?;
            done(json!({ "coords": json::coords_json(&w, &w.neg(&a)) }))
        }
        WittCommand::Unit(x) => {
            let w = s.witt(&x.witt)?;
            let a = json::parse_vector(&w, &x.a)?;
            let inv = witt_is_unit(&w, &a)?;
            Ok(Outcome {
                ok: inv.is_some(),
                value: json!({ "unit": inv.is_some(), "inverse": inv.map(|b| json::coords_json(&w, &b)) }),
            })
        }
        WittCommand::Nonfree { index_set, search } => {
            let index = IndexSet::parse(index_set)?;
            let cert = if *search {
                ghost_profile_search(&index, budget.search)?
            } else {
                v_nonfree_obstruction(&index, budget.search)?
            };
            done(json!({ "index_set": json::index_json(&index), "certificate": json::certificate_json(&cert) }))
        }
        WittCommand::Points { witt, vars, relation } => {
            let w = s.witt(witt)?;
            let b = presentation(vars, relation)?;
            let pts = witt_points(&b, &w, budget.enumeration)?;
            let list: Vec<Value> = pts.iter().map(|p| json!(p.iter().map(|a| json::coords_json(&w, a)).collect::<Vec<_>>())).collect();
            done(json!({ "count": list.len(), "points": list }))
        }
    }
}

fn verify(suite: &str, seed: u64, list: bool, timing: bool, budget: &Budget) -> Result<Outcome> {
    if list {
        let ids: Vec<&str> = suites::SUITES.iter().map(|s| s.id).collect();
        return done(json!({ "suites": ids, "coverage": suites::coverage() }));
    }
    if suite != "all" {
        let report = if timing { suites::run_timed(suite, seed, budget)? } else { suites::run_suite(suite, seed, budget)? };
        return Ok(Outcome { ok: report.passed(), value: serde_json::to_value(&report)? });
    }
    let start = Instant::now();
    let reports = suites::run_all(seed, budget);
    let ok = reports.iter().all(SuiteReport::passed);
    let failures: Vec<Value> = reports
        .iter()
        .flat_map(|r| r.failures.iter().map(move |f| json!({ "suite": r.suite, "check": f.check, "counterexample": f.counterexample })))
        .collect();
    let mut value = json!({
        "suite": "all",
        "seed": seed,
        "cases": reports.iter().map(|r| r.cases).sum::<u64>(),
        "failures": failures,
        "suites": reports,
    });
    if timing {
        value["wall_time_ms"] = json!(start.elapsed().as_millis());
    }
    Ok(Outcome { value, ok })
}

fn dispatch(s: &mut Session, cli: &Cli) -> Result<Outcome> {
    let budget = cli.budget.budget();
    match &cli.command {
        Command::Witt(cmd) => run_witt(s, cmd, &budget),
        Command::Ghost(x) => {
            let w = s.witt(&x.witt)?;
            let a = json::parse_vector(&w, &x.a)?;
            done(json!({ "ghost": json::elem_strings(w.ring(), &w.ghost(&a)) }))
        }
        Command::Frobenius { x, n } => {
            let w = s.witt(&x.witt)?;
            let a = json::parse_vector(&w, &x.a)?;
            let f = w.frobenius(*n, &a)?;
            let target = w.quotient_ring(*n)?;
            done(json!({ "index_set": json::index_json(f.index()), "coords": json::coords_json(&target, &f) }))
        }
        Command::Verschiebung { x, n } => {
            let big = s.witt(&x.witt)?;
            let small = big.quotient_ring(*n)?;
            let a = json::parse_vector(&small, &x.a)?;
            done(json!({ "coords": json::coords_json(&big, &big.verschiebung(*n, &a)?) }))
        }
        Command::Teich { witt, r } => {
            let w = s.witt(witt)?;
            let r = w.ring().parse_elem(r)?;
            done(json!({ "coords": json::coords_json(&w, &w.teichmuller(&r)) }))
        }
        Command::Decompose { x, p } => {
            let w = s.witt(&x.witt)?;
            let a = json::parse_vector(&w, &x.a)?;
            let ctx = LocalContext::new(&w, *p)?;
            done(json::decomposed_json(&ctx.decompose(&a)?, ctx.local_ring()))
        }
        Command::HodgeTate { x, p } => {
            let w = s.witt(&x.witt)?;
            let a = json::parse_vector(&w, &x.a)?;
            let ht = is_hodge_tate(&predicate_context(&w, *p)?, &a)?;
            Ok(Outcome { value: json!({ "hodge_tate": ht }), ok: ht })
        }
        Command::Distinguished { x, p } => {
            let w = s.witt(&x.witt)?;
            let a = json::parse_vector(&w, &x.a)?;
            let wit = is_distinguished(&predicate_context(&w, *p)?, &a)?;
            let witness = wit.as_ref().map(|d| {
                json!({ "x": w.ring().format_elem(&d.x), "nilpotency": d.nilpotency, "v": json::coords_json(&w, &d.v) })
            });
            Ok(Outcome { ok: wit.is_some(), value: json!({ "distinguished": wit.is_some(), "witness": witness }) })
        }
        Command::Cone { ring, d, relations, from_ideal, r1, r2 } => {
            let ring = Ring::parse(ring)?;
            let d = elems(&ring, d)?;
            let q = if *from_ideal {
                if !relations.is_empty() {
                    return Err(Error::Usage("--relations and --from-ideal are exclusive".into()));
                }
                QuasiIdeal::from_ideal(ring.clone(), d, budget.enumeration)?
            } else {
                let rels = relations
                    .iter()
                    .map(|r| elems(&ring, &r.split(',').map(str::to_string).collect::<Vec<_>>()))
                    .collect::<Result<Vec<_>>>()?;
                QuasiIdeal::new(ring.clone(), d, rels, budget.enumeration)?
            };
            let law = q.check()?;
            let mut value = json::quasi_ideal_json(&q);
            value["law"] = json!(law.as_ref().map(|v| json!({ "i": v.i, "j": v.j })));
            if law.is_none() {
                value["pi0"] = match q.pi0() {
                    Ok(pi0) => json::pi0_json(&pi0, &ring),
                    Err(wittforge_core::Error::Unsupported(_)) => Value::Null,
                    Err(e) => return Err(e.into()),
                };
                if let (Some(r1), Some(r2)) = (r1, r2) {
                    let (r1, r2) = (ring.parse_elem(r1)?, ring.parse_elem(r2)?);
                    let homs = q.hom_set(&r1, &r2, budget.enumeration)?;
                    value["hom"] = json!(homs.iter().map(|h| json::elem_strings(&ring, h)).collect::<Vec<_>>());
                }
            }
            Ok(Outcome { ok: law.is_none(), value })
        }
        Command::Rees { filtered, twist, shift, tensor } => {
            let mut m = match (filtered, twist) {
                (Some(path), _) => read_filtered(path)?,
                (None, Some(n)) => FilteredModule::twist(*n),
                (None, None) => return Err(Error::Usage("rees needs --filtered FILE or --twist N".into())),
            };
            if let Some(n) = shift {
                m = m.shift(*n);
            }
            if let Some(path) = tensor {
                m = m.day_tensor(&read_filtered(path)?);
            }
            let rees = ReesModule::of_filtered(&m);
            done(json!({ "filtered": json::filtered_json(&m), "complete": m.is_complete(), "rees": json::rees_json(&rees) }))
        }
        Command::Derham { torus, affine } => {
            let h = hodge_cohomology(&MonomialAlgebra::new(*torus, *affine), budget.char_box.max(1));
            done(json::derham_json(&h))
        }
        Command::Prismatic { witt, xi, vars, relation } => {
            let w = s.witt(witt)?;
            let ctx = PrismaticContext::new(&w, json::parse_vector(&w, xi)?)?;
            let b = presentation(vars, relation)?;
            let bar = wbar_ring(&ctx, budget.enumeration)?;
            let g = prismatic_points_affine(&b, &ctx, budget.enumeration)?;
            done(json!({ "wbar": json::wbar_json(&w, &bar), "groupoid": json::groupoid_json(&w, &g) }))
        }
        Command::Verify { suite, seed, list, timing } => verify(suite, *seed, *list, *timing, &budget),
    }
}

fn emit(cli: &Cli, value: &Value) -> Result<()> {
    let mut text = if cli.pretty { serde_json::to_string_pretty(value)? } else { serde_json::to_string(value)? };
    text.push('\n');
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut session = Session { disk: DiskCache::from_env(), used: Vec::new() };
    let result = dispatch(&mut session, &cli).and_then(|o| {
        emit(&cli, &o.value)?;
        session.finish()?;
        Ok(o.ok)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
