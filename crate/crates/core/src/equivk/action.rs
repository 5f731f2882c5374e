use std::sync::Arc;

use super::classfn::burnside_character;
use super::kclass::{pullback, pushforward, KClass, KSpace};
use crate::burnside::{conlon_idempotents, BurnsideContext, BurnsideElement};
use crate::error::{Error, Result};
use crate::gset::GSet;
use crate::subgroup::{same_group, Subgroup};

/// The B(G)-module structure: `⟨Γ⟩·ξ` tensors ξ with the permutation bundle
/// of `G/Γ`, i.e. multiplies the value at `(x, s)` by `|(G/Γ)^s|`.
pub fn burnside_action(b: &BurnsideElement, xi: &KClass) -> Result<KClass> {
    if !same_group(b.algebra().group(), xi.space().group()) {
        return Err(Error::GroupMismatch);
    }
    let chi = burnside_character(b, xi.space().conductor());
    Ok(xi.twist(|s| chi.at(s).clone()))
}

/// `⟨Γ⟩·ξ` computed literally as `pr_* pr^* ξ` for `pr: X × G/Γ → X`.
pub fn burnside_action_geometric(gamma: &Subgroup, xi: &KClass) -> Result<KClass> {
    let x = xi.space();
    let cosets = GSet::cosets(gamma);
    let m = cosets.size();
    let product = KSpace::new(x.gset().product(&cosets)?, x.conductor());
    let pr: Vec<usize> = (0..product.gset().size()).map(|p| p / m).collect();
    pushforward(&pr, &pullback(&pr, xi, &product)?, x)
}

/// The H-part `u^G_H · ξ`.
pub fn h_part_k(ctx: &BurnsideContext, xi: &KClass, class: usize) -> Result<KClass> {
    let algebra = ctx.algebra(xi.space().group());
    let family = conlon_idempotents(ctx, &algebra);
    if class >= family.idempotents().len() {
        return Err(Error::UnknownClass(class));
    }
    burnside_action(family.get(class), xi)
}

/// Dimension of the H-part of `K(X,G)`, for every class `H`.
pub fn part_dims(ctx: &BurnsideContext, space: &Arc<KSpace>) -> Vec<usize> {
    let algebra = ctx.algebra(space.group());
    let family = conlon_idempotents(ctx, &algebra);
    let basis = KClass::basis_all(space);
    family
        .idempotents()
        .iter()
        .map(|u| {
            let rows: Vec<_> = basis
                .iter()
                .map(|v| burnside_action(u, v).expect("same group").rational_coords().expect("rational idempotent"))
                .collect();
            crate::rational::rank(&rows)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::rational::int;

    #[test]
    fn point_part_dimensions() {
        let ctx = BurnsideContext::new();
        let s3 = Arc::new(families::symmetric(3).unwrap());
        assert_eq!(part_dims(&ctx, &KSpace::of(GSet::point(&s3))), vec![1, 1, 1, 0]);
        let a4 = Arc::new(families::alternating(4).unwrap());
        assert_eq!(part_dims(&ctx, &KSpace::of(GSet::point(&a4))), vec![1, 1, 2, 0, 0]);
    }

    #[test]
    fn c2_regular_twist() {
        let ctx = BurnsideContext::new();
        let g = Arc::new(families::cyclic(2).unwrap());
        let alg = ctx.algebra(&g);
        let pt = KSpace::of(GSet::point(&g));
        let triv = KClass::one(&pt);
        let free = BurnsideElement::basis(&alg, 0);
        let out = burnside_action(&free, &triv).unwrap();
        assert_eq!(out.rational_coords().unwrap(), vec![int(2), int(0)]);
        let lattice = alg.lattice();
        assert_eq!(burnside_action_geometric(&lattice.class(0).representative, &triv).unwrap(), out);
        assert_eq!(burnside_action(&BurnsideElement::one(&alg), &triv).unwrap(), triv);
    }

    #[test]
    fn parts_sum_to_whole() {
        let ctx = BurnsideContext::new();
        let g = Arc::new(families::dihedral(4).unwrap());
        let x = KSpace::of(GSet::regular(&g).product(&GSet::point(&g)).unwrap());
        let xi = KClass::random(&x, &mut rand::thread_rng(), 4);
        let n = ctx.algebra(&g).rank();
        let mut acc = KClass::zero(&x);
        for h in 0..n {
            acc = acc.add(&h_part_k(&ctx, &xi, h).unwrap()).unwrap();
        }
        assert_eq!(acc, xi);
        assert!(h_part_k(&ctx, &xi, n).is_err());
    }
}
