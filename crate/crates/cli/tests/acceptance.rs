//! Exact acceptance checks over the sample groups. Runs as a plain binary and
//! prints one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use burnside_cli::spec::GroupSpec;
use burnside_core::burnside::verify::{
    induced_section, mackey_sides, projection_sides, restriction_law_sides, VerifyOptions,
};
use burnside_core::burnside::{conlon_idempotents, ghost_idempotents, BurnsideContext, BurnsideElement};
use burnside_core::cyclotomic::{euler_phi, CyclotomicNumber};
use burnside_core::equivk::verify::{k_mackey_sides, k_projection_sides, sample_gsets};
use burnside_core::equivk::{
    burnside_character, decomposition_reports, inertia_pairs, vistoli_compare, wild_inertia, ClassFunction, KClass,
    KSpace,
};
use burnside_core::group::FiniteGroup;
use burnside_core::gset::GSet;
use burnside_core::subgroup::{is_cyclic_coprime, is_p_hypoelementary, Subgroup};

const GROUPS: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C2xC2", "C2xC4", "S3", "D4", "Q8",
    "D5", "D6", "A4", "C3xC3", "S3xC2", "S4",
];

const SAMPLES: usize = 20;

struct Sample {
    name: &'static str,
    group: Arc<FiniteGroup>,
}

fn build(name: &'static str) -> Sample {
    let group = GroupSpec::parse(name).unwrap().build(200).unwrap();
    Sample { name, group }
}

/// Failure descriptions; empty means the criterion holds.
type Failures = Vec<String>;

fn per_group(samples: &[Sample], f: impl Fn(&BurnsideContext, &Sample, &mut Failures) + Sync) -> Failures {
    std::thread::scope(|s| {
        let handles: Vec<_> = samples
            .iter()
            .map(|sample| {
                let f = &f;
                s.spawn(move || {
                    let ctx = BurnsideContext::new();
                    let mut failures = Vec::new();
                    f(&ctx, sample, &mut failures);
                    failures.into_iter().map(|m| format!("{}: {m}", sample.name)).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("criterion thread panicked")).collect()
    })
}

fn criterion_1(ctx: &BurnsideContext, s: &Sample, fail: &mut Failures) {
    let algebra = ctx.algebra(&s.group);
    let family = conlon_idempotents(ctx, &algebra);
    match ghost_idempotents(&algebra) {
        Ok(oracle) if oracle == *family => {}
        Ok(_) => fail.push("Conlon family differs from ghost idempotents".into()),
        Err(e) => fail.push(format!("ghost oracle: {e}")),
    }
    let u = family.idempotents();
    let mut sum = BurnsideElement::zero(&algebra);
    for (i, a) in u.iter().enumerate() {
        sum = sum.add(a).unwrap();
        for (j, b) in u.iter().enumerate() {
            let p = a.mul(b).unwrap();
            if i == j && p != *a {
                fail.push(format!("u_{i} is not idempotent"));
            }
            if i != j && !p.is_zero() {
                fail.push(format!("u_{i} u_{j} != 0"));
            }
        }
    }
    if sum != BurnsideElement::one(&algebra) {
        fail.push("idempotents do not sum to 1".into());
    }
}

fn criterion_2(ctx: &BurnsideContext, s: &Sample, fail: &mut Failures) {
    let algebra = ctx.algebra(&s.group);
    let lattice = algebra.lattice();
    for class in &lattice.classes()[..lattice.top()] {
        let v = induced_section(ctx, &algebra, class.id);
        let nu = burnside_core::rational::Rational::from_integer((class.nu as i64).into());
        if v.mul(&v).unwrap() != v.scale(&nu) {
            fail.push(format!("class {}: v*v != {}*v", class.id, class.nu));
        }
    }
}

fn criterion_3(ctx: &BurnsideContext, s: &Sample, fail: &mut Failures) {
    let algebra = ctx.algebra(&s.group);
    let lattice = algebra.lattice();
    for gamma in 0..lattice.len() {
        for gamma_prime in 0..lattice.len() {
            let (actual, expected) = restriction_law_sides(ctx, &algebra, gamma, gamma_prime);
            if actual != expected {
                fail.push(format!("Res to {gamma} of u_{gamma_prime}: {actual} vs {expected}"));
            }
            if !lattice.is_subconjugate(gamma_prime, gamma) && !actual.is_zero() {
                fail.push(format!("Res to {gamma} of u_{gamma_prime} should vanish"));
            }
        }
    }
}

fn k_space(x: &GSet, h: &Subgroup, n: usize) -> Arc<KSpace> {
    KSpace::new(x.restrict(&h.inclusion()).unwrap(), n)
}

fn criterion_4(ctx: &BurnsideContext, s: &Sample, fail: &mut Failures) {
    let algebra = ctx.algebra(&s.group);
    let lattice = algebra.lattice().clone();
    let opts = VerifyOptions::default();
    let mut rng = opts.rng(101);
    for k in lattice.classes() {
        for h in lattice.classes() {
            let h_alg = ctx.algebra_of(&h.representative);
            for _ in 0..SAMPLES {
                let x = BurnsideElement::random(&h_alg, &mut rng, 4);
                let (lhs, rhs) = mackey_sides(ctx, &algebra, k.id, h.id, &x).unwrap();
                if lhs != rhs {
                    fail.push(format!("Burnside Mackey K={} H={}", k.id, h.id));
                }
            }
        }
    }
    for h in lattice.classes() {
        let h_alg = ctx.algebra_of(&h.representative);
        for _ in 0..SAMPLES {
            let x = BurnsideElement::random(&algebra, &mut rng, 4);
            let y = BurnsideElement::random(&h_alg, &mut rng, 4);
            for y in [y, BurnsideElement::one(&h_alg)] {
                let (lhs, rhs) = projection_sides(ctx, &algebra, h.id, &x, &y).unwrap();
                if lhs != rhs {
                    fail.push(format!("Burnside projection H={}", h.id));
                }
            }
        }
    }

    let n = s.group.exponent();
    let gsets = sample_gsets(&lattice, &opts);
    let point = &gsets[0];
    let union = gsets.last().unwrap();
    for (label, x) in [point, union] {
        let whole = KSpace::new(x.clone(), n);
        for k in lattice.classes() {
            for h in lattice.classes() {
                let h_space = k_space(x, &h.representative, n);
                for _ in 0..SAMPLES {
                    let xi = KClass::random(&h_space, &mut rng, 3);
                    let (lhs, rhs) = k_mackey_sides(x, &k.representative, &h.representative, &xi).unwrap();
                    if lhs != rhs {
                        fail.push(format!("K-model Mackey on {label}, K={} H={}", k.id, h.id));
                    }
                }
            }
        }
        for h in lattice.classes() {
            let h_space = k_space(x, &h.representative, n);
            for _ in 0..SAMPLES {
                let xi = KClass::random(&whole, &mut rng, 3);
                let eta = KClass::random(&h_space, &mut rng, 3);
                for eta in [eta, KClass::one(&h_space)] {
                    let (lhs, rhs) = k_projection_sides(&h.representative, &xi, &eta).unwrap();
                    if lhs != rhs {
                        fail.push(format!("K-model projection on {label}, H={}", h.id));
                    }
                }
            }
        }
    }
}

fn criterion_5(ctx: &BurnsideContext, s: &Sample, fail: &mut Failures) {
    let g = &s.group;
    let algebra = ctx.algebra(g);
    let n = g.exponent();
    if g.is_cyclic() {
        let family = conlon_idempotents(ctx, &algebra);
        let mut pieces = 0;
        for class in algebra.lattice().classes() {
            let d = class.order();
            let indicator =
                ClassFunction::from_fn(g, |x| CyclotomicNumber::from_integer(n, i64::from(g.element_order(x) == d)));
            if burnside_character(family.get(class.id), n) != indicator {
                fail.push(format!("image of u_C{d} is not the order-{d} indicator"));
            }
            pieces += euler_phi(d);
        }
        // Q ⊗ R(C_n) has dimension n, split as Σ_{d|n} φ(d).
        if pieces != g.order() {
            fail.push(format!("Σ φ(d) = {pieces} != {}", g.order()));
        }
    }
    let cmp = vistoli_compare(ctx, g).unwrap();
    if cmp.total != g.num_classes() {
        fail.push(format!("cyclic pieces sum to {}, element classes {}", cmp.total, g.num_classes()));
    }
}

/// Hand-checked values of (cyclic of order prime to p, p-hypoelementary) for
/// p = 2, 3, 5 by isomorphism type.
fn expected_predicates(kind: &str) -> ([bool; 3], [bool; 3]) {
    const T: bool = true;
    const F: bool = false;
    match kind {
        "1" => ([T, T, T], [T, T, T]),
        "C2" => ([F, T, T], [T, T, T]),
        "C3" => ([T, F, T], [T, T, T]),
        "C4" => ([F, T, T], [T, T, T]),
        "V4" | "Q8" | "D4" | "A4" => ([F, F, F], [T, F, F]),
        "S3" => ([F, F, F], [F, T, F]),
        "S4" => ([F, F, F], [F, F, F]),
        _ => panic!("no fixture for {kind}"),
    }
}

fn kind(h: &FiniteGroup) -> &'static str {
    let involutions = (0..h.order()).filter(|&g| h.element_order(g) == 2).count();
    match (h.order(), h.is_cyclic()) {
        (1, _) => "1",
        (2, _) => "C2",
        (3, _) => "C3",
        (4, true) => "C4",
        (4, false) => "V4",
        (6, false) => "S3",
        (8, false) if involutions == 1 => "Q8",
        (8, false) => "D4",
        (12, false) => "A4",
        (24, false) => "S4",
        other => panic!("unexpected subgroup type {other:?}"),
    }
}

fn criterion_6(ctx: &BurnsideContext, s: &Sample, fail: &mut Failures) {
    let algebra = ctx.algebra(&s.group);
    let family = conlon_idempotents(ctx, &algebra);
    let n = s.group.exponent();
    for class in algebra.lattice().classes().iter().filter(|c| !c.is_cyclic()) {
        if !burnside_character(family.get(class.id), n).is_zero() {
            fail.push(format!("noncyclic class {} has nonzero class-function image", class.id));
        }
    }

    let expected_kinds: &[&str] = match s.name {
        "S3" => &["1", "C2", "C3", "S3"],
        "A4" => &["1", "C2", "C3", "V4", "A4"],
        "Q8" => &["1", "C2", "C4", "C4", "C4", "Q8"],
        "S4" => &["1", "C2", "C2", "C3", "C4", "V4", "V4", "S3", "D4", "A4", "S4"],
        _ => return,
    };
    let mut kinds: Vec<&str> = Vec::new();
    for class in algebra.lattice().classes() {
        let h = class.representative.as_group();
        let k = kind(&h);
        kinds.push(k);
        let (coprime, hypo) = expected_predicates(k);
        for (i, p) in [2u64, 3, 5].into_iter().enumerate() {
            if is_cyclic_coprime(&h, p).unwrap() != coprime[i] {
                fail.push(format!("class {} ({k}): is_cyclic_coprime(p={p}) wrong", class.id));
            }
            if is_p_hypoelementary(&h, p).unwrap() != hypo[i] {
                fail.push(format!("class {} ({k}): is_p_hypoelementary(p={p}) wrong", class.id));
            }
        }
    }
    let count = |v: &[&str]| {
        let mut m = BTreeMap::new();
        for k in v {
            *m.entry(k.to_string()).or_insert(0) += 1;
        }
        m
    };
    if count(&kinds) != count(expected_kinds) {
        fail.push(format!("subgroup classes {kinds:?}, expected {expected_kinds:?}"));
    }
}

fn criterion_7(ctx: &BurnsideContext, s: &Sample, fail: &mut Failures) {
    let lattice = ctx.algebra(&s.group).lattice().clone();
    for (label, x) in sample_gsets(&lattice, &VerifyOptions::default()) {
        let (dim, reports) = decomposition_reports(ctx, &x).unwrap();
        let total: usize = reports.iter().map(|r| r.dim_source).sum();
        if total != dim {
            fail.push(format!("{label}: Σ source dims {total} != dim K(X,G) {dim}"));
        }
        for r in reports.iter().filter(|r| !(r.iso && r.inverse_ok)) {
            fail.push(format!("{label}, H={}: iso {}, inverse {}", r.class, r.iso, r.inverse_ok));
        }
    }
}

fn criterion_8(ctx: &BurnsideContext, s: &Sample, fail: &mut Failures) {
    let lattice = ctx.algebra(&s.group).lattice().clone();
    for (label, x) in sample_gsets(&lattice, &VerifyOptions::default()) {
        for h in 0..lattice.len() {
            let theorem = wild_inertia(&lattice, &x, h).unwrap().orbit_type_multiset();
            let pairs = inertia_pairs(&lattice, &x, h).unwrap();
            if theorem != pairs {
                fail.push(format!("{label}, H={h}: {theorem:?} vs {pairs:?}"));
            }
        }
    }
}

fn verify_json(name: &str) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = burnside_cli::run(["burnside", "verify", name, "--suite", "all", "--json"], &mut out, &mut err);
    (code, out)
}

fn criterion_9(_: &BurnsideContext, s: &Sample, fail: &mut Failures) {
    let (code_a, a) = verify_json(s.name);
    let (code_b, b) = verify_json(s.name);
    if code_a != 0 || code_b != 0 {
        fail.push(format!("exit codes {code_a}, {code_b}"));
    }
    if a != b {
        fail.push("outputs differ between runs".into());
    }
}

type Criterion = fn(&BurnsideContext, &Sample, &mut Failures);

fn main() {
    let samples: Vec<Sample> = GROUPS.iter().map(|&name| build(name)).collect();
    let criteria: [(&str, Criterion); 9] = [
        ("Conlon family equals ghost idempotents; complete, orthogonal, idempotent", criterion_1),
        ("induced sections satisfy v*v = nu*v", criterion_2),
        ("restriction law for every pair of classes", criterion_3),
        ("Mackey and projection formulas in B(G) and the K-theory model", criterion_4),
        ("cyclic images are order indicators; pieces count element classes", criterion_5),
        ("noncyclic images vanish; coprime/hypoelementary fixtures", criterion_6),
        ("decomposition theorem with exact inverse on sample G-sets", criterion_7),
        ("wild inertia agrees with the definitional pair count", criterion_8),
        ("verify --suite all --json is byte-identical across runs", criterion_9),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let failures = per_group(&samples, check);
        let secs = start.elapsed().as_secs_f64();
        if failures.is_empty() {
            println!("PASS criterion {}: {title} ({} groups, {secs:.1}s)", i + 1, samples.len());
        } else {
            failed += 1;
            println!("FAIL criterion {}: {title}", i + 1);
            for f in failures.iter().take(10) {
                println!("    {f}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
