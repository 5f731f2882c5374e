//! Exact verification of the idempotent family and of the Mackey and
//! projection formulas in `B(G) ⊗ Q`.

use std::sync::Arc;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    conlon_idempotents, ghost_idempotents, induce, restrict, BurnsideAlgebra, BurnsideContext, BurnsideElement,
};
use crate::error::Result;
use crate::rational::{int, Rational};
use crate::report::Report;
use crate::subgroup::double_cosets;

/// Sampling parameters for the randomized identities.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { samples: 20, seed: 0x5eed }
    }
}

impl VerifyOptions {
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

const SUITE: &str = "conlon";

/// `Ind^G_Γ(u^Γ_Γ)` for a class `Γ` of `G`.
pub fn induced_section(ctx: &BurnsideContext, algebra: &Arc<BurnsideAlgebra>, class: usize) -> BurnsideElement {
    let rep = &algebra.lattice().class(class).representative;
    let sub = ctx.algebra_of(rep);
    let family = conlon_idempotents(ctx, &sub);
    induce(&rep.inclusion(), family.section(), algebra).expect("inclusion matches algebras")
}

/// Both sides of the restriction law for `Res^G_Γ u^G_{Γ'}`: the actual
/// restriction and `Σ u^Γ_{Γ'^g}` over the `Γ`-classes of `G`-conjugates of
/// `Γ'` inside `Γ` (zero when there are none).
pub fn restriction_law_sides(
    ctx: &BurnsideContext,
    algebra: &Arc<BurnsideAlgebra>,
    gamma: usize,
    gamma_prime: usize,
) -> (BurnsideElement, BurnsideElement) {
    let lattice = algebra.lattice();
    let rep = &lattice.class(gamma).representative;
    let sub = ctx.algebra_of(rep);
    let family = conlon_idempotents(ctx, algebra);
    let sub_family = conlon_idempotents(ctx, &sub);
    let actual = restrict(&rep.inclusion(), family.get(gamma_prime), &sub).expect("inclusion matches algebras");
    let mut expected = BurnsideElement::zero(&sub);
    for (c, class) in sub.lattice().classes().iter().enumerate() {
        let mut image: Vec<usize> = class.representative.members().iter().map(|&a| rep.members()[a]).collect();
        image.sort_unstable();
        if lattice.class_of_members(&image) == Some(gamma_prime) {
            expected = expected.add(sub_family.get(c)).expect("same algebra");
        }
    }
    (actual, expected)
}

/// `λ` with `actual = λ·expected`, if one exists.
fn multiplier(actual: &BurnsideElement, expected: &BurnsideElement) -> Option<Rational> {
    let pivot = expected.coeffs().iter().position(|c| !c.is_zero())?;
    let lambda = actual.coeff(pivot) / expected.coeff(pivot);
    (expected.scale(&lambda) == *actual).then_some(lambda)
}

/// `(Res^G_K Ind^G_H x, Σ_{g ∈ K\G/H} Ind^K_{K∩gHg^-1} c_g Res^H_{H∩g^-1Kg} x)`.
pub fn mackey_sides(
    ctx: &BurnsideContext,
    algebra: &Arc<BurnsideAlgebra>,
    k: usize,
    h: usize,
    x: &BurnsideElement,
) -> Result<(BurnsideElement, BurnsideElement)> {
    let group = algebra.group();
    let k_rep = &algebra.lattice().class(k).representative;
    let h_rep = &algebra.lattice().class(h).representative;
    let k_alg = ctx.algebra_of(k_rep);
    let lhs = restrict(&k_rep.inclusion(), &induce(&h_rep.inclusion(), x, algebra)?, &k_alg)?;
    let mut rhs = BurnsideElement::zero(&k_alg);
    for g in double_cosets(k_rep, h_rep) {
        let meet = h_rep.intersection(&k_rep.conjugate(group.inv(g)));
        let meet_alg = ctx.algebra_of(&meet);
        let into_h = meet.embed_into(h_rep, 0)?;
        let into_k = meet.embed_into(k_rep, g)?;
        let term = induce(&into_k, &restrict(&into_h, x, &meet_alg)?, &k_alg)?;
        rhs = rhs.add(&term)?;
    }
    Ok((lhs, rhs))
}

/// `(Ind^G_H(Res^G_H(x)·y), x·Ind^G_H(y))` for `x ∈ B(G)`, `y ∈ B(H)`.
pub fn projection_sides(
    ctx: &BurnsideContext,
    algebra: &Arc<BurnsideAlgebra>,
    h: usize,
    x: &BurnsideElement,
    y: &BurnsideElement,
) -> Result<(BurnsideElement, BurnsideElement)> {
    let rep = &algebra.lattice().class(h).representative;
    let sub = ctx.algebra_of(rep);
    let incl = rep.inclusion();
    let lhs = induce(&incl, &restrict(&incl, x, &sub)?.mul(y)?, algebra)?;
    let rhs = x.mul(&induce(&incl, y, algebra)?)?;
    Ok((lhs, rhs))
}

/// Structural checks of the Conlon family: agreement with the ghost oracle,
/// idempotency, orthogonality, completeness, almost-idempotency of the
/// induced sections, the restriction law, vanishing of `Res u^G_G`, and
/// push-forward covariance.
pub fn verify_conlon(ctx: &BurnsideContext, algebra: &Arc<BurnsideAlgebra>, opts: &VerifyOptions) -> Report {
    let mut report = Report::new();
    let lattice = algebra.lattice();
    let n = lattice.len();
    let family = conlon_idempotents(ctx, algebra);
    let u = family.idempotents();

    let mut check = report.check(SUITE, "ghost_oracle_equality");
    match ghost_idempotents(algebra) {
        Ok(ghost) => {
            for h in 0..n {
                check.case(u[h] == *ghost.get(h), || format!("class {h}: conlon {} vs ghost {}", u[h], ghost.get(h)));
            }
        }
        Err(e) => check.fail(e.to_string()),
    }
    check.finish();

    let mut check = report.check(SUITE, "idempotency");
    for h in 0..n {
        let sq = u[h].mul(&u[h]).expect("same algebra");
        check.case(sq == u[h], || format!("class {h}: u^2 = {sq}, u = {}", u[h]));
    }
    check.finish();

    let mut check = report.check(SUITE, "orthogonality");
    for h in 0..n {
        for k in h + 1..n {
            let p = u[h].mul(&u[k]).expect("same algebra");
            check.case(p.is_zero(), || format!("classes {h},{k}: product {p}"));
        }
    }
    check.finish();

    let mut check = report.check(SUITE, "completeness");
    let sum = u.iter().fold(BurnsideElement::zero(algebra), |acc, x| acc.add(x).expect("same algebra"));
    check.case(sum == BurnsideElement::one(algebra), || format!("sum = {sum}"));
    check.finish();

    let mut check = report.check(SUITE, "almost_idempotent");
    for (c, class) in lattice.classes().iter().enumerate() {
        let v = induced_section(ctx, algebra, c);
        let vv = v.mul(&v).expect("same algebra");
        let nu_v = v.scale(&int(class.nu as i64));
        check.case(vv == nu_v, || format!("class {c}: v*v = {vv}, nu*v = {nu_v}"));
    }
    check.finish();

    let mut check = report.check(SUITE, "restriction_law");
    for gamma in 0..n {
        for gamma_prime in 0..n {
            let (actual, expected) = restriction_law_sides(ctx, algebra, gamma, gamma_prime);
            check.case(actual == expected, || {
                let measured = multiplier(&actual, &expected)
                    .map_or_else(|| "none".to_string(), |l| l.to_string());
                format!(
                    "Res to class {gamma} of u_{gamma_prime}: got {actual}, expected {expected}, measured multiplier {measured}"
                )
            });
        }
    }
    check.finish();

    let mut check = report.check(SUITE, "section_restriction_vanishes");
    for (c, class) in lattice.classes().iter().enumerate().take(n - 1) {
        let rep = &class.representative;
        let sub = ctx.algebra_of(rep);
        let r = restrict(&rep.inclusion(), family.section(), &sub).expect("inclusion matches algebras");
        check.case(r.is_zero(), || format!("Res to class {c} of u_G = {r}"));
    }
    check.finish();

    let mut check = report.check(SUITE, "pushforward_covariance");
    for class in lattice.classes() {
        let rep = &class.representative;
        let sub = ctx.algebra_of(rep);
        let sub_family = conlon_idempotents(ctx, &sub);
        for (c, sub_class) in sub.lattice().classes().iter().enumerate() {
            let mut image: Vec<usize> = sub_class.representative.members().iter().map(|&a| rep.members()[a]).collect();
            image.sort_unstable();
            let target = lattice.class_of_members(&image).expect("image is a subgroup");
            for b in 0..sub.rank() {
                let part = BurnsideElement::basis(&sub, b).mul(sub_family.get(c)).expect("same algebra");
                let y = induce(&rep.inclusion(), &part, algebra).expect("inclusion matches algebras");
                let projected = u[target].mul(&y).expect("same algebra");
                check.case(projected == y, || {
                    format!("Ind from class {} of part {c}: {y} not in part {target}", class.id)
                });
            }
        }
    }
    check.finish();

    let mut rng = opts.rng(1);
    let mut check = report.check(SUITE, "ghost_homomorphism");
    for _ in 0..opts.samples {
        let x = BurnsideElement::random(algebra, &mut rng, 3);
        let y = BurnsideElement::random(algebra, &mut rng, 3);
        let lhs = x.mul(&y).expect("same algebra").marks();
        let rhs: Vec<Rational> = x.marks().iter().zip(y.marks()).map(|(a, b)| a * b).collect();
        check.case(lhs == rhs, || format!("x = {x}, y = {y}"));
    }
    check.finish();

    report
}

/// Mackey and projection formulas over all ordered pairs of classes, plus
/// multiplicativity of restriction, each on `opts.samples` random elements.
pub fn verify_mackey(ctx: &BurnsideContext, algebra: &Arc<BurnsideAlgebra>, opts: &VerifyOptions) -> Report {
    const SUITE: &str = "mackey";
    let mut report = Report::new();
    let lattice = algebra.lattice();
    let n = lattice.len();
    let mut rng = opts.rng(2);

    let mut check = report.check(SUITE, "burnside_mackey");
    for k in 0..n {
        for h in 0..n {
            let h_alg = ctx.algebra_of(&lattice.class(h).representative);
            for _ in 0..opts.samples {
                let x = BurnsideElement::random(&h_alg, &mut rng, 3);
                match mackey_sides(ctx, algebra, k, h, &x) {
                    Ok((lhs, rhs)) => check.case(lhs == rhs, || format!("K={k}, H={h}, x={x}: {lhs} vs {rhs}")),
                    Err(e) => check.fail(format!("K={k}, H={h}: {e}")),
                }
            }
        }
    }
    check.finish();

    let mut check = report.check(SUITE, "burnside_projection");
    for h in 0..n {
        let h_alg = ctx.algebra_of(&lattice.class(h).representative);
        for _ in 0..opts.samples {
            let x = BurnsideElement::random(algebra, &mut rng, 3);
            let y = BurnsideElement::random(&h_alg, &mut rng, 3);
            match projection_sides(ctx, algebra, h, &x, &y) {
                Ok((lhs, rhs)) => check.case(lhs == rhs, || format!("H={h}, x={x}, y={y}: {lhs} vs {rhs}")),
                Err(e) => check.fail(format!("H={h}: {e}")),
            }
        }
    }
    check.finish();

    let mut check = report.check(SUITE, "restriction_ring_hom");
    for h in 0..n {
        let rep = &lattice.class(h).representative;
        let h_alg = ctx.algebra_of(rep);
        let incl = rep.inclusion();
        let one = restrict(&incl, &BurnsideElement::one(algebra), &h_alg).expect("inclusion");
        check.case(one == BurnsideElement::one(&h_alg), || format!("H={h}: Res(1) = {one}"));
        for _ in 0..opts.samples {
            let x = BurnsideElement::random(algebra, &mut rng, 3);
            let y = BurnsideElement::random(algebra, &mut rng, 3);
            let lhs = restrict(&incl, &x.mul(&y).expect("same"), &h_alg).expect("inclusion");
            let rhs = restrict(&incl, &x, &h_alg).expect("inclusion").mul(&restrict(&incl, &y, &h_alg).expect("inclusion"));
            let rhs = rhs.expect("same algebra");
            check.case(lhs == rhs, || format!("H={h}, x={x}, y={y}"));
        }
    }
    check.finish();

    report
}
