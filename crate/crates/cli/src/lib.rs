//! Command-line front end: parses group and G-set specifications, runs the
//! computations and verification suites of `burnside-core`, and prints
//! deterministic text or JSON reports.

pub mod json;
pub mod spec;

use std::io::Write;
use std::sync::Arc;

use burnside_core::burnside::verify::{verify_conlon, verify_mackey, VerifyOptions};
use burnside_core::burnside::{basis_product, conlon_idempotents, ghost_idempotents, BurnsideAlgebra, BurnsideContext};
use burnside_core::equivk::verify::{sample_gsets, verify_ktheory, verify_mackey_k};
use burnside_core::equivk::{
    burnside_character, decomposition_reports, inertia_pairs, part_dims, verify_vistoli, vistoli_compare,
    wild_inertia, KSpace,
};
use burnside_core::group::{FiniteGroup, DEFAULT_MAX_ORDER};
use burnside_core::gset::GSet;
use burnside_core::report::Report;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use json::{BurnsideJson, CyclotomicJson};
use spec::{GSetSpec, GroupSpec};

const GROUP_HELP: &str = "Groups: C<n> cyclic, D<n> dihedral of order 2n, S<n> symmetric, A<n> alternating, Q8, \
products like C2xS3, and raw generators perm:<degree>:[(0 1 2);(0 1)].\n\
G-sets: point, regular, cosets:<class id>, union(<gset>,...).";

#[derive(Parser)]
#[command(name = "burnside", version, about = "Burnside-algebra idempotents and equivariant decompositions", after_help = GROUP_HELP)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Refuse groups larger than this.
    #[arg(long, global = true, env = "BURNSIDE_MAX_ORDER", value_name = "N")]
    max_order: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group structure.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Table of marks.
    Marks { spec: String },
    /// The Conlon idempotent family.
    Idem {
        spec: String,
        /// Cross-check against the idempotents solved from the table of marks.
        #[arg(long)]
        oracle: bool,
    },
    /// Product of two basis classes <H><K>.
    Bprod { spec: String, h: usize, k: usize },
    /// Burnside parts of the class-function ring and the cyclic comparison.
    Repring { spec: String },
    /// Decomposition of K(X,G) into H-parts.
    Ktheory {
        spec: String,
        #[arg(long)]
        gset: String,
        /// Only this subgroup class.
        #[arg(long)]
        h: Option<usize>,
    },
    /// Inertia decomposition for the class H.
    Inertia {
        spec: String,
        #[arg(long)]
        gset: String,
        #[arg(long)]
        h: usize,
    },
    /// Run verification suites.
    Verify {
        spec: String,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Random samples per randomized identity.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// Order, classes and subgroup classes.
    Info { spec: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Conlon,
    Mackey,
    Ktheory,
    All,
}

/// A command's outcome: `Ok(true)` when every check passed.
type Outcome = Result<bool, String>;

struct Env<'a> {
    json: bool,
    max_order: usize,
    out: &'a mut dyn Write,
}

impl Env<'_> {
    fn line(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", text.as_ref());
        let _ = self.out.flush();
    }

    fn emit(&mut self, value: &serde_json::Value) {
        let text = serde_json::to_string_pretty(value).expect("serializable");
        self.line(text);
    }

    fn group(&self, text: &str) -> Result<(GroupSpec, Arc<FiniteGroup>), String> {
        let spec = GroupSpec::parse(text).map_err(|e| format!("{e} in '{text}'"))?;
        let group = spec.build(self.max_order).map_err(|e| format!("{spec}: {e}"))?;
        Ok((spec, group))
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code: 0 when all checks pass, 1 when a check fails, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let mut env = Env { json: cli.json, max_order: cli.max_order.unwrap_or(DEFAULT_MAX_ORDER), out };
    let ctx = BurnsideContext::new();
    let outcome = match &cli.command {
        Command::Group { action: GroupAction::Info { spec } } => group_info(&mut env, spec),
        Command::Marks { spec } => marks(&mut env, &ctx, spec),
        Command::Idem { spec, oracle } => idem(&mut env, &ctx, spec, *oracle),
        Command::Bprod { spec, h, k } => bprod(&mut env, &ctx, spec, *h, *k),
        Command::Repring { spec } => repring(&mut env, &ctx, spec),
        Command::Ktheory { spec, gset, h } => ktheory(&mut env, &ctx, spec, gset, *h),
        Command::Inertia { spec, gset, h } => inertia(&mut env, &ctx, spec, gset, *h),
        Command::Verify { spec, suite, samples, seed } => {
            verify(&mut env, &ctx, spec, *suite, &VerifyOptions { samples: *samples, seed: *seed })
        }
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn class_in_range(algebra: &BurnsideAlgebra, id: usize) -> Result<(), String> {
    if id < algebra.rank() {
        Ok(())
    } else {
        Err(format!("unknown subgroup class {id} (the group has {} classes)", algebra.rank()))
    }
}

fn gset(algebra: &BurnsideAlgebra, text: &str) -> Result<(GSetSpec, GSet), String> {
    let spec = GSetSpec::parse(text).map_err(|e| format!("{e} in '{text}'"))?;
    let x = spec.build(algebra.lattice()).map_err(|id| format!("unknown subgroup class {id} in '{text}'"))?;
    Ok((spec, x))
}

fn group_info(env: &mut Env, text: &str) -> Outcome {
    let (spec, g) = env.group(text)?;
    let lattice = burnside_core::subgroup::SubgroupLattice::new(g.clone());
    let classes: Vec<_> = lattice
        .classes()
        .iter()
        .map(|c| {
            let gens: Vec<String> = c
                .representative
                .as_group()
                .greedy_generators()
                .iter()
                .map(|&i| c.representative.as_group().element(i).to_string())
                .collect();
            json!({
                "id": c.id,
                "order": c.order(),
                "conjugates": c.class_members.len(),
                "normalizer_order": c.normalizer.order(),
                "nu": c.nu,
                "cyclic": c.is_cyclic(),
                "generators": gens,
            })
        })
        .collect();
    if env.json {
        env.emit(&json!({
            "group": spec.to_string(),
            "order": g.order(),
            "degree": g.degree(),
            "exponent": g.exponent(),
            "abelian": g.is_abelian(),
            "cyclic": g.is_cyclic(),
            "element_classes": g.num_classes(),
            "subgroups": lattice.total_subgroups(),
            "subgroup_classes": classes,
        }));
    } else {
        env.line(format!("group {spec}: order {}, degree {}, exponent {}", g.order(), g.degree(), g.exponent()));
        env.line(format!("abelian: {}, cyclic: {}", g.is_abelian(), g.is_cyclic()));
        env.line(format!("conjugacy classes of elements: {}", g.num_classes()));
        env.line(format!("subgroups: {} in {} conjugacy classes", lattice.total_subgroups(), lattice.len()));
        env.line("  id  order  conjugates  nu  cyclic  generators");
        for c in &classes {
            let gens: Vec<&str> = c["generators"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
            let num = |key: &str| c[key].as_u64().unwrap();
            env.line(format!(
                "  {:>2}  {:>5}  {:>10}  {:>2}  {:<6}  {}",
                num("id"),
                num("order"),
                num("conjugates"),
                num("nu"),
                if c["cyclic"].as_bool().unwrap() { "yes" } else { "no" },
                gens.join(" ")
            ));
        }
    }
    Ok(true)
}

fn marks(env: &mut Env, ctx: &BurnsideContext, text: &str) -> Outcome {
    let (spec, g) = env.group(text)?;
    let algebra = ctx.algebra(&g);
    let lattice = algebra.lattice();
    let table = algebra.marks();
    if env.json {
        let classes: Vec<_> = lattice.classes().iter().map(|c| json!({"id": c.id, "order": c.order()})).collect();
        env.emit(&json!({"group": spec.to_string(), "classes": classes, "rows": table.rows}));
    } else {
        env.line(format!("table of marks of {spec}; row H, column K is |(G/H)^K|"));
        let header: Vec<String> = (0..table.size()).map(|k| format!("{k:>4}")).collect();
        env.line(format!("  H |H| |{}", header.join("")));
        for (h, row) in table.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|m| format!("{m:>4}")).collect();
            env.line(format!("{h:>3} {:>3} |{}", lattice.class(h).order(), cells.join("")));
        }
    }
    Ok(true)
}

fn idem(env: &mut Env, ctx: &BurnsideContext, text: &str, oracle: bool) -> Outcome {
    let (spec, g) = env.group(text)?;
    let algebra = ctx.algebra(&g);
    let family = conlon_idempotents(ctx, &algebra);
    let matches = if oracle { Some(ghost_idempotents(&algebra).map_err(|e| e.to_string())? == *family) } else { None };
    let name = spec.to_string();
    if env.json {
        let elems: Vec<_> = family.idempotents().iter().map(|u| BurnsideJson::new(&name, u)).collect();
        let mut doc = json!({"group": name, "idempotents": elems});
        if let Some(m) = matches {
            doc["oracle_match"] = json!(m);
        }
        env.emit(&doc);
    } else {
        for (h, u) in family.idempotents().iter().enumerate() {
            env.line(format!("u_{h} = {u}"));
        }
        if let Some(m) = matches {
            env.line(format!("ghost oracle: {}", if m { "match" } else { "MISMATCH" }));
        }
    }
    Ok(matches.unwrap_or(true))
}

fn bprod(env: &mut Env, ctx: &BurnsideContext, text: &str, h: usize, k: usize) -> Outcome {
    let (spec, g) = env.group(text)?;
    let algebra = ctx.algebra(&g);
    class_in_range(&algebra, h)?;
    class_in_range(&algebra, k)?;
    let product = basis_product(&algebra, h, k).map_err(|e| e.to_string())?;
    if env.json {
        env.emit(&serde_json::to_value(BurnsideJson::new(&spec.to_string(), &product)).expect("serializable"));
    } else {
        env.line(format!("<{h}><{k}> = {product}"));
    }
    Ok(true)
}

fn print_report(env: &mut Env, report: &Report) {
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {}/{} ({} cases)", c.suite, c.name, c.cases);
        if !c.passed {
            line.push_str(&format!(": {}", c.detail));
        }
        env.line(line);
    }
}

fn repring(env: &mut Env, ctx: &BurnsideContext, text: &str) -> Outcome {
    let (spec, g) = env.group(text)?;
    let algebra = ctx.algebra(&g);
    let lattice = algebra.lattice().clone();
    let family = conlon_idempotents(ctx, &algebra);
    let n = g.exponent();
    let dims = part_dims(ctx, &KSpace::new(GSet::point(&g), n));
    let cmp = vistoli_compare(ctx, &g).map_err(|e| e.to_string())?;
    let mut report = verify_vistoli(ctx, &g).map_err(|e| e.to_string())?;
    let mut check = report.check("ktheory", "part_dims_match_pieces");
    for class in lattice.classes() {
        let expected = cmp.pieces.iter().find(|p| p.class == class.id).map_or(0, |p| p.classical_dim);
        check.case(dims[class.id] == expected, || {
            format!("class {}: part dim {}, classical piece {expected}", class.id, dims[class.id])
        });
    }
    check.finish();
    let passed = report.passed();
    if env.json {
        let parts: Vec<_> = lattice
            .classes()
            .iter()
            .map(|c| {
                let image = burnside_character(family.get(c.id), n);
                let values: Vec<_> = image.values().iter().map(CyclotomicJson::new).collect();
                json!({"class": c.id, "order": c.order(), "cyclic": c.is_cyclic(), "dim": dims[c.id], "image": values})
            })
            .collect();
        env.emit(&json!({
            "group": spec.to_string(),
            "element_classes": g.num_classes(),
            "parts": parts,
            "pieces": cmp.pieces,
            "checks": report.checks,
            "passed": passed,
        }));
    } else {
        env.line(format!("class functions of {spec}: {} conjugacy classes, conductor {n}", g.num_classes()));
        for c in lattice.classes() {
            let piece = cmp.pieces.iter().find(|p| p.class == c.id);
            let detail = piece.map_or_else(
                || "noncyclic".to_string(),
                |p| format!("phi({}) / |{:?}| = {}", p.order, p.normalizer_image, p.classical_dim),
            );
            env.line(format!("  H={} (order {}): dim {}  [{detail}]", c.id, c.order(), dims[c.id]));
        }
        print_report(env, &report);
    }
    Ok(passed)
}

fn ktheory(env: &mut Env, ctx: &BurnsideContext, text: &str, gtext: &str, only: Option<usize>) -> Outcome {
    let (spec, g) = env.group(text)?;
    let algebra = ctx.algebra(&g);
    if let Some(h) = only {
        class_in_range(&algebra, h)?;
    }
    let (gspec, x) = gset(&algebra, gtext)?;
    let (dim, reports) = decomposition_reports(ctx, &x).map_err(|e| e.to_string())?;
    let total: usize = reports.iter().map(|r| r.dim_source).sum();
    let shown: Vec<_> = reports.iter().filter(|r| only.is_none_or(|h| r.class == h)).cloned().collect();
    let passed = shown.iter().all(|r| r.iso && r.inverse_ok) && (only.is_some() || total == dim);
    if env.json {
        let mut doc = json!({"group": spec.to_string(), "gset": gspec.to_string(), "dim": dim, "parts": shown});
        if only.is_none() {
            doc["source_total"] = json!(total);
        }
        doc["passed"] = json!(passed);
        env.emit(&doc);
    } else {
        env.line(format!("K({gspec}, {spec}): dim {dim}"));
        for r in &shown {
            env.line(format!(
                "  H={}: source {}, target {}, {}{}",
                r.class,
                r.dim_source,
                r.dim_target,
                if r.iso { "isomorphism" } else { "NOT an isomorphism" },
                if r.inverse_ok { "" } else { ", modified restriction is NOT inverse" }
            ));
        }
        if only.is_none() {
            env.line(format!("sum of source dimensions: {total} ({})", if total == dim { "matches" } else { "MISMATCH" }));
        }
    }
    Ok(passed)
}

fn inertia(env: &mut Env, ctx: &BurnsideContext, text: &str, gtext: &str, h: usize) -> Outcome {
    let (spec, g) = env.group(text)?;
    let algebra = ctx.algebra(&g);
    class_in_range(&algebra, h)?;
    let (gspec, x) = gset(&algebra, gtext)?;
    let lattice = algebra.lattice();
    let report = wild_inertia(lattice, &x, h).map_err(|e| e.to_string())?;
    let pairs = inertia_pairs(lattice, &x, h).map_err(|e| e.to_string())?;
    let matches = report.orbit_type_multiset() == pairs;
    if env.json {
        let mut doc = serde_json::to_value(&report).expect("serializable");
        doc["group"] = json!(spec.to_string());
        doc["gset"] = json!(gspec.to_string());
        doc["definitional_match"] = json!(matches);
        env.emit(&doc);
    } else {
        env.line(format!("inertia of {gspec} for H={h} in {spec}"));
        for s in &report.summands {
            env.line(format!(
                "  H'={}: |X^H'| = {}, orbit stabilizer classes {:?}",
                s.class, s.fixed_points, s.orbit_types
            ));
        }
        env.line(format!("pairs (x, K <= Stab(x)) count: {} ({})", pairs.len(), if matches { "match" } else { "MISMATCH" }));
    }
    Ok(matches)
}

/// Runs the requested suites; `all` is conlon, mackey and ktheory in order.
pub fn run_suites(ctx: &BurnsideContext, group: &Arc<FiniteGroup>, suite: Suite, opts: &VerifyOptions, mut sink: impl FnMut(&Report)) -> Report {
    let algebra = ctx.algebra(group);
    let mut all = Report::new();
    let mut push = |r: Report, all: &mut Report| {
        sink(&r);
        all.extend(r);
    };
    if matches!(suite, Suite::Conlon | Suite::All) {
        push(verify_conlon(ctx, &algebra, opts), &mut all);
    }
    if matches!(suite, Suite::Mackey | Suite::All) {
        push(verify_mackey(ctx, &algebra, opts), &mut all);
        let samples = sample_gsets(algebra.lattice(), opts);
        push(verify_mackey_k(ctx, &GSet::point(group), "point", opts), &mut all);
        let (label, x) = samples.last().expect("sample list is nonempty");
        push(verify_mackey_k(ctx, x, label, opts), &mut all);
    }
    if matches!(suite, Suite::Ktheory | Suite::All) {
        push(verify_ktheory(ctx, group, opts), &mut all);
    }
    all
}

fn verify(env: &mut Env, ctx: &BurnsideContext, text: &str, suite: Suite, opts: &VerifyOptions) -> Outcome {
    let (spec, g) = env.group(text)?;
    let json_mode = env.json;
    let report = run_suites(ctx, &g, suite, opts, |r| {
        if !json_mode {
            print_report(env, r);
        }
    });
    let passed = report.passed();
    if json_mode {
        env.emit(&json!({
            "group": spec.to_string(),
            "suite": suite,
            "samples": opts.samples,
            "seed": opts.seed,
            "passed": passed,
            "checks": report.checks,
        }));
    } else {
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        if failed == 0 {
            env.line(format!("{spec}: all {} checks passed", report.checks.len()));
        } else {
            env.line(format!("{spec}: {failed} of {} checks FAILED", report.checks.len()));
        }
    }
    Ok(passed)
}
