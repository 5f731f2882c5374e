//! Exact checks of the finite K-theory model: module structure, functoriality,
//! Mackey and projection formulas, the decomposition theorem, wild inertia,
//! and the comparison with the classical cyclic decomposition.

use std::sync::Arc;

use rand::Rng;

use super::action::{burnside_action, burnside_action_geometric, h_part_k, part_dims};
use super::decomposition::decomposition_reports;
use super::inertia::{fixed_locus_orbit_types, inertia_pairs, isomorphic_classes, wild_inertia};
use super::kclass::{induce_k, pullback, pullback_along, pushforward, pushforward_along, restrict_k, KClass, KSpace};
use super::vistoli::verify_vistoli;
use crate::burnside::verify::VerifyOptions;
use crate::burnside::{conlon_idempotents, BurnsideContext, BurnsideElement};
use crate::error::Result;
use crate::gset::GSet;
use crate::rational::rank;
use crate::report::Report;
use crate::subgroup::{double_cosets, Subgroup, SubgroupLattice};

/// The G-sets the verifier runs over: the point, the regular G-set, every
/// `G/H`, and a union of three random coset spaces. Labels use the CLI's
/// G-set syntax.
pub fn sample_gsets(lattice: &SubgroupLattice, opts: &VerifyOptions) -> Vec<(String, GSet)> {
    let g = lattice.group();
    let mut out = vec![("point".to_string(), GSet::point(g)), ("regular".to_string(), GSet::regular(g))];
    for class in lattice.classes() {
        out.push((format!("cosets:{}", class.id), GSet::cosets(&class.representative)));
    }
    let mut rng = opts.rng(3);
    let picks: Vec<usize> = (0..3).map(|_| rng.gen_range(0..lattice.len())).collect();
    let parts: Vec<GSet> = picks.iter().map(|&i| GSet::cosets(&lattice.class(i).representative)).collect();
    let label = format!("union({})", picks.iter().map(|i| format!("cosets:{i}")).collect::<Vec<_>>().join(","));
    out.push((label, GSet::disjoint_union(&parts).expect("same group")));
    out
}

fn restricted_space(x: &GSet, h: &Subgroup, conductor: usize) -> Arc<KSpace> {
    KSpace::new(x.restrict(&h.inclusion()).expect("subgroup of the acting group"), conductor)
}

/// `(Res_K Ind_H ξ, Σ_{g ∈ K\G/H} Ind_{K∩gHg^-1} μ_g Res_{H∩g^-1Kg} ξ)` for
/// `ξ ∈ K(X|_H, H)`, where `μ_g` moves `(y, l)` to `(g·y, g l g^-1)`.
pub fn k_mackey_sides(x: &GSet, k: &Subgroup, h: &Subgroup, xi: &KClass) -> Result<(KClass, KClass)> {
    let n = xi.space().conductor();
    let group = x.group();
    let whole = KSpace::new(x.clone(), n);
    let k_space = restricted_space(x, k, n);
    let lhs = restrict_k(&k.inclusion(), &induce_k(&h.inclusion(), xi, &whole)?, &k_space)?;
    let id: Vec<usize> = (0..x.size()).collect();
    let mut rhs = KClass::zero(&k_space);
    for g in double_cosets(k, h) {
        let meet = h.intersection(&k.conjugate(group.inv(g)));
        let meet_space = restricted_space(x, &meet, n);
        let restricted = pullback_along(&meet.embed_into(h, group.identity())?, &id, xi, &meet_space)?;
        let moved: Vec<usize> = (0..x.size()).map(|p| x.act(g, p)).collect();
        let term = pushforward_along(&meet.embed_into(k, g)?, &moved, &restricted, &k_space)?;
        rhs = rhs.add(&term)?;
    }
    Ok((lhs, rhs))
}

/// `(i_*(i^*ξ·η), ξ·i_*η)` for the change of group `i` from `H` to `G`.
pub fn k_projection_sides(h: &Subgroup, xi: &KClass, eta: &KClass) -> Result<(KClass, KClass)> {
    let incl = h.inclusion();
    let lhs = induce_k(&incl, &restrict_k(&incl, xi, eta.space())?.mul(eta)?, xi.space())?;
    let rhs = xi.mul(&induce_k(&incl, eta, xi.space())?)?;
    Ok((lhs, rhs))
}

/// Mackey and projection formulas in `K(X,G)` for every ordered pair of
/// classes and `opts.samples` random classes per pair.
pub fn verify_mackey_k(ctx: &BurnsideContext, x: &GSet, label: &str, opts: &VerifyOptions) -> Report {
    const SUITE: &str = "mackey";
    let mut report = Report::new();
    let lattice = ctx.algebra(x.group()).lattice().clone();
    let n = x.group().exponent();
    let whole = KSpace::new(x.clone(), n);
    let mut rng = opts.rng(4);

    let mut check = report.check(SUITE, &format!("k_mackey[{label}]"));
    for k in lattice.classes() {
        for h in lattice.classes() {
            let h_space = restricted_space(x, &h.representative, n);
            for _ in 0..opts.samples {
                let xi = KClass::random(&h_space, &mut rng, 3);
                match k_mackey_sides(x, &k.representative, &h.representative, &xi) {
                    Ok((lhs, rhs)) => {
                        check.case(lhs == rhs, || format!("K={}, H={}: {lhs:?} vs {rhs:?}", k.id, h.id))
                    }
                    Err(e) => check.fail(format!("K={}, H={}: {e}", k.id, h.id)),
                }
            }
        }
    }
    check.finish();

    let mut check = report.check(SUITE, &format!("k_projection[{label}]"));
    for h in lattice.classes() {
        let h_space = restricted_space(x, &h.representative, n);
        let one = KClass::one(&h_space);
        for _ in 0..opts.samples {
            let xi = KClass::random(&whole, &mut rng, 3);
            let eta = KClass::random(&h_space, &mut rng, 3);
            for e in [&eta, &one] {
                match k_projection_sides(&h.representative, &xi, e) {
                    Ok((lhs, rhs)) => check.case(lhs == rhs, || format!("H={}: {lhs:?} vs {rhs:?}", h.id)),
                    Err(err) => check.fail(format!("H={}: {err}", h.id)),
                }
            }
        }
    }
    check.finish();
    report
}

fn check_module_structure(
    ctx: &BurnsideContext,
    report: &mut Report,
    label: &str,
    space: &Arc<KSpace>,
    opts: &VerifyOptions,
) -> Result<()> {
    const SUITE: &str = "ktheory";
    let algebra = ctx.algebra(space.group());
    let lattice = algebra.lattice().clone();
    let family = conlon_idempotents(ctx, &algebra);
    let group = space.group();
    let x = space.gset();
    let mut rng = opts.rng(5);

    let mut check = report.check(SUITE, &format!("basepoint_invariance[{label}]"));
    let xi = KClass::random(space, &mut rng, 5);
    for p in 0..x.size() {
        for s in (0..group.order()).filter(|&s| x.act(s, p) == p) {
            for g in 0..group.order() {
                let ok = xi.eval(x.act(g, p), group.conjugate(g, s)) == xi.eval(p, s);
                check.case(ok, || format!("point {p}, element {s}, moved by {g}"));
            }
        }
    }
    check.finish();

    let mut check = report.check(SUITE, &format!("h_part_decomposition[{label}]"));
    for _ in 0..opts.samples.min(5) {
        let xi = KClass::random(space, &mut rng, 5);
        let parts = (0..lattice.len()).map(|h| h_part_k(ctx, &xi, h)).collect::<Result<Vec<_>>>()?;
        let mut sum = KClass::zero(space);
        for p in &parts {
            sum = sum.add(p)?;
        }
        check.case(sum == xi, || "parts do not sum to the class".into());
        for (h, p) in parts.iter().enumerate() {
            for k in 0..lattice.len() {
                let twice = burnside_action(family.get(k), p)?;
                let ok = if h == k { twice == *p } else { twice.is_zero() };
                check.case(ok, || format!("u_{k} on the {h}-part"));
            }
        }
    }
    check.finish();

    let mut check = report.check(SUITE, &format!("burnside_module[{label}]"));
    let xi = KClass::random(space, &mut rng, 5);
    check.case(burnside_action(&BurnsideElement::one(&algebra), &xi)? == xi, || "unit acts nontrivially".into());
    for _ in 0..opts.samples.min(5) {
        let b = BurnsideElement::random(&algebra, &mut rng, 3);
        let c = BurnsideElement::random(&algebra, &mut rng, 3);
        let lhs = burnside_action(&b.mul(&c)?, &xi)?;
        let rhs = burnside_action(&b, &burnside_action(&c, &xi)?)?;
        check.case(lhs == rhs, || format!("b = {b}, c = {c}"));
    }
    for class in lattice.classes() {
        let geometric = burnside_action_geometric(&class.representative, &xi)?;
        let direct = burnside_action(&BurnsideElement::basis(&algebra, class.id), &xi)?;
        check.case(geometric == direct, || format!("<{}> via X × G/H differs", class.id));
    }
    check.finish();

    // Y = X × G/Γ → X → point
    let gamma = &lattice.class(rng.gen_range(0..lattice.len())).representative;
    let cosets = GSet::cosets(gamma);
    let m = cosets.size();
    let y_space = KSpace::new(x.product(&cosets)?, space.conductor());
    let pr: Vec<usize> = (0..y_space.gset().size()).map(|p| p / m).collect();
    let pt_space = KSpace::new(GSet::point(group), space.conductor());
    let collapse_x = vec![0; x.size()];
    let collapse_y = vec![0; y_space.gset().size()];

    let mut check = report.check(SUITE, &format!("functoriality[{label}]"));
    let eta = KClass::random(&y_space, &mut rng, 5);
    let lhs = pushforward(&collapse_y, &eta, &pt_space)?;
    let rhs = pushforward(&collapse_x, &pushforward(&pr, &eta, space)?, &pt_space)?;
    check.case(lhs == rhs, || "pushforward of a composite".into());
    let zeta = KClass::random(&pt_space, &mut rng, 5);
    let lhs = pullback(&collapse_y, &zeta, &y_space)?;
    let rhs = pullback(&pr, &pullback(&collapse_x, &zeta, space)?, &y_space)?;
    check.case(lhs == rhs, || "pullback of a composite".into());
    let id: Vec<usize> = (0..x.size()).collect();
    check.case(pushforward(&id, &xi, space)? == xi && pullback(&id, &xi, space)? == xi, || "identity map".into());
    check.finish();

    let mut check = report.check(SUITE, &format!("module_maps[{label}]"));
    for _ in 0..opts.samples.min(5) {
        let b = BurnsideElement::random(&algebra, &mut rng, 3);
        let eta = KClass::random(&y_space, &mut rng, 5);
        let lhs = pushforward(&pr, &burnside_action(&b, &eta)?, space)?;
        let rhs = burnside_action(&b, &pushforward(&pr, &eta, space)?)?;
        check.case(lhs == rhs, || format!("pushforward, b = {b}"));
        let lhs = pullback(&pr, &burnside_action(&b, &xi)?, &y_space)?;
        let rhs = burnside_action(&b, &pullback(&pr, &xi, &y_space)?)?;
        check.case(lhs == rhs, || format!("pullback, b = {b}"));
    }
    check.finish();
    Ok(())
}

/// Everything in the K-theory model for one group, over [`sample_gsets`].
pub fn verify_ktheory(ctx: &BurnsideContext, group: &Arc<crate::group::FiniteGroup>, opts: &VerifyOptions) -> Report {
    const SUITE: &str = "ktheory";
    let mut report = Report::new();
    let lattice = ctx.algebra(group).lattice().clone();
    let n = group.exponent();
    let samples = sample_gsets(&lattice, opts);

    for (label, x) in &samples {
        let space = KSpace::new(x.clone(), n);
        if let Err(e) = check_module_structure(ctx, &mut report, label, &space, opts) {
            report.check(SUITE, &format!("module_structure[{label}]")).fail(e.to_string());
        }

        let mut check = report.check(SUITE, &format!("decomposition[{label}]"));
        match decomposition_reports(ctx, x) {
            Ok((dim, parts)) => {
                for r in &parts {
                    check.case(r.iso && r.inverse_ok, || format!("{r:?}"));
                }
                let total: usize = parts.iter().map(|r| r.dim_source).sum();
                check.case(total == dim, || format!("dim K(X,G) = {dim}, sum of sources = {total}"));
            }
            Err(e) => check.fail(e.to_string()),
        }
        check.finish();

        let mut check = report.check(SUITE, &format!("wild_inertia[{label}]"));
        for h in 0..lattice.len() {
            match (wild_inertia(&lattice, x, h), inertia_pairs(&lattice, x, h)) {
                (Ok(r), Ok(pairs)) => {
                    let theorem = r.orbit_type_multiset();
                    check.case(theorem == pairs, || format!("H={h}: {theorem:?} vs {pairs:?}"));
                }
                (Err(e), _) | (_, Err(e)) => check.fail(format!("H={h}: {e}")),
            }
            // another member of each class H' gives the same orbit types
            for id in isomorphic_classes(&lattice, h) {
                let class = lattice.class(id);
                let a = fixed_locus_orbit_types(&lattice, x, &class.representative);
                let b = fixed_locus_orbit_types(&lattice, x, class.class_members.last().expect("nonempty class"));
                check.case(matches!((&a, &b), (Ok(a), Ok(b)) if a == b), || format!("H'={id}: {a:?} vs {b:?}"));
            }
        }
        check.finish();
    }

    let point = KSpace::new(GSet::point(group), n);
    let mut check = report.check(SUITE, "point_part_dims");
    let dims = part_dims(ctx, &point);
    for (h, d) in dims.iter().enumerate() {
        let expected = group.conjugacy_classes().iter().filter(|c| lattice.cyclic_class_of(c[0]) == h).count();
        check.case(*d == expected, || format!("H={h}: part dim {d}, expected {expected}"));
    }
    check.finish();

    let mut check = report.check(SUITE, "induction_invariance");
    for class in lattice.classes() {
        let h = &class.representative;
        let hg = h.as_group();
        for y in [GSet::point(&hg), GSet::regular(&hg), GSet::cosets(&Subgroup::trivial(&hg))] {
            let result = (|| -> Result<bool> {
                let (induced, incl) = GSet::induced(&h.inclusion(), &y)?;
                let y_space = KSpace::new(y.clone(), n);
                let induced_space = KSpace::new(induced, n);
                if y_space.dim() != induced_space.dim() {
                    return Ok(false);
                }
                let images: Vec<_> = KClass::basis_all(&induced_space)
                    .iter()
                    .map(|v| pullback_along(&h.inclusion(), &incl, v, &y_space).map(|w| w.rational_coords()))
                    .collect::<Result<Vec<_>>>()?;
                let rows: Option<Vec<_>> = images.into_iter().collect();
                Ok(rows.is_some_and(|r| rank(&r) == y_space.dim()))
            })();
            check.case(matches!(result, Ok(true)), || format!("H={}: {result:?}", class.id));
        }
    }
    check.finish();

    match verify_vistoli(ctx, group) {
        Ok(r) => report.extend(r),
        Err(e) => report.check(SUITE, "vistoli").fail(e.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn s3_passes() {
        let ctx = BurnsideContext::new();
        let g = Arc::new(families::symmetric(3).unwrap());
        let opts = VerifyOptions { samples: 3, seed: 1 };
        let r = verify_ktheory(&ctx, &g, &opts);
        assert!(r.passed(), "{:#?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        let lattice = ctx.algebra(&g).lattice().clone();
        let m = verify_mackey_k(&ctx, &GSet::cosets(&lattice.class(2).representative), "cosets:2", &opts);
        assert!(m.passed(), "{:#?}", m.checks);
    }

    #[test]
    fn point_mackey_is_classical() {
        let ctx = BurnsideContext::new();
        let g = Arc::new(families::dihedral(4).unwrap());
        let r = verify_mackey_k(&ctx, &GSet::point(&g), "point", &VerifyOptions { samples: 2, seed: 9 });
        assert!(r.passed(), "{:#?}", r.checks);
    }

    #[test]
    fn sample_labels() {
        let ctx = BurnsideContext::new();
        let g = Arc::new(families::cyclic(3).unwrap());
        let lattice = ctx.algebra(&g).lattice().clone();
        let labels: Vec<String> = sample_gsets(&lattice, &VerifyOptions::default()).into_iter().map(|s| s.0).collect();
        assert_eq!(&labels[..4], &["point", "regular", "cosets:0", "cosets:1"]);
        assert!(labels[4].starts_with("union("));
    }
}
