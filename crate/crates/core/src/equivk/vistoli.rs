use std::sync::Arc;

use serde::Serialize;

use super::classfn::{burnside_character, ClassFunction};
use crate::burnside::{conlon_idempotents, BurnsideContext};
use crate::cyclotomic::{euler_phi, fixed_subspace_dim, CyclotomicNumber};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::rational::{rank, Rational};
use crate::report::Report;

/// The classical piece `Q(ζ_r)^{N_G(C)}` attached to a cyclic class `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicPiece {
    pub class: usize,
    pub order: usize,
    /// Exponents `k` with `n c n^-1 = c^k` for `n ∈ N_G(C)`, sorted.
    pub normalizer_image: Vec<i64>,
    /// `φ(r) / |image|`.
    pub classical_dim: usize,
    /// Rank of `u^G_C` acting on class functions of `G`.
    pub burnside_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VistoliComparison {
    pub pieces: Vec<CyclicPiece>,
    pub total: usize,
    pub element_classes: usize,
}

/// Indicator of the elements generating a conjugate of the class `H`
/// (identically zero for noncyclic `H`).
pub fn generator_indicator(ctx: &BurnsideContext, group: &Arc<FiniteGroup>, class: usize, conductor: usize) -> ClassFunction {
    let lattice = ctx.algebra(group).lattice().clone();
    ClassFunction::from_fn(group, |g| {
        CyclotomicNumber::from_integer(conductor, i64::from(lattice.cyclic_class_of(g) == class))
    })
}

pub fn vistoli_compare(ctx: &BurnsideContext, group: &Arc<FiniteGroup>) -> Result<VistoliComparison> {
    let algebra = ctx.algebra(group);
    let lattice = algebra.lattice();
    let family = conlon_idempotents(ctx, &algebra);
    let n = group.exponent();
    let mut pieces = Vec::new();
    for class in lattice.classes().iter().filter(|c| c.is_cyclic()) {
        let r = class.order();
        let c = *class
            .representative
            .members()
            .iter()
            .find(|&&m| group.element_order(m) == r)
            .expect("cyclic subgroup has a generator");
        let mut image: Vec<i64> = class
            .normalizer
            .members()
            .iter()
            .map(|&m| {
                let conj = group.conjugate(m, c);
                (0..r).find(|&k| group.pow(c, k) == conj).expect("normalizer preserves the subgroup") as i64
            })
            .collect();
        image.sort_unstable();
        image.dedup();
        let classical_dim = fixed_subspace_dim(r, &image)?;
        let chi = burnside_character(family.get(class.id), n);
        let burnside_dim = chi.values().iter().filter(|v| !v.is_zero()).count();
        pieces.push(CyclicPiece { class: class.id, order: r, normalizer_image: image, classical_dim, burnside_dim });
    }
    let total = pieces.iter().map(|p| p.classical_dim).sum();
    Ok(VistoliComparison { pieces, total, element_classes: group.num_classes() })
}

/// For `G = C_n` generated by `σ`: the Q-span of `{χ_j · e_d}` where
/// `χ_j(σ^k) = ζ_n^{jk}` and `e_d` is the image of `u^G_{C_d}`, measured as a
/// Q-dimension. Returns `(d, dimension)` per divisor.
pub fn cyclic_piece_ranks(ctx: &BurnsideContext, group: &Arc<FiniteGroup>) -> Option<Vec<(usize, usize)>> {
    let n = group.order();
    let sigma = (0..n).find(|&g| group.element_order(g) == n)?;
    let algebra = ctx.algebra(group);
    let family = conlon_idempotents(ctx, &algebra);
    let mut log = vec![0usize; n];
    for k in 0..n {
        log[group.pow(sigma, k)] = k;
    }
    let out = algebra
        .lattice()
        .classes()
        .iter()
        .map(|class| {
            let e = burnside_character(family.get(class.id), n);
            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|j| {
                    (0..n)
                        .flat_map(|g| {
                            let v = &CyclotomicNumber::zeta_pow(n, (j * log[g]) as i64) * e.at(g);
                            v.coeffs().to_vec()
                        })
                        .collect()
                })
                .collect();
            (class.order(), rank(&rows))
        })
        .collect();
    Some(out)
}

/// Checks the coincidence of the Burnside decomposition of class functions
/// with the classical cyclic decomposition.
pub fn verify_vistoli(ctx: &BurnsideContext, group: &Arc<FiniteGroup>) -> Result<Report> {
    const SUITE: &str = "ktheory";
    let mut report = Report::new();
    let algebra = ctx.algebra(group);
    let lattice = algebra.lattice().clone();
    let family = conlon_idempotents(ctx, &algebra);
    let n = group.exponent();
    let cmp = vistoli_compare(ctx, group)?;

    let mut check = report.check(SUITE, "cyclic_piece_dims");
    for p in &cmp.pieces {
        check.case(p.classical_dim == p.burnside_dim, || {
            format!("class {}: classical {} vs burnside {}", p.class, p.classical_dim, p.burnside_dim)
        });
    }
    check.case(cmp.total == cmp.element_classes, || {
        format!("sum of pieces {} vs {} element classes", cmp.total, cmp.element_classes)
    });
    check.finish();

    let mut check = report.check(SUITE, "idempotent_images");
    for class in lattice.classes() {
        let image = burnside_character(family.get(class.id), n);
        let expected = generator_indicator(ctx, group, class.id, n);
        check.case(image == expected, || format!("class {}: image {:?}, expected {:?}", class.id, image, expected));
        if !class.is_cyclic() {
            check.case(image.is_zero(), || format!("noncyclic class {} has nonzero image", class.id));
        }
    }
    check.finish();

    if group.is_cyclic() {
        let mut check = report.check(SUITE, "cyclic_field_pieces");
        for class in lattice.classes() {
            let d = class.order();
            let image = burnside_character(family.get(class.id), n);
            let order_d = ClassFunction::from_fn(group, |g| {
                CyclotomicNumber::from_integer(n, i64::from(group.element_order(g) == d))
            });
            check.case(image == order_d, || format!("C_{d}: image {image:?} is not the order-{d} indicator"));
        }
        for (d, r) in cyclic_piece_ranks(ctx, group).unwrap_or_default() {
            check.case(r == euler_phi(d), || format!("C_{d}: Q-dimension {r}, expected {}", euler_phi(d)));
        }
        check.finish();
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::rational::int;

    #[test]
    fn c2_images() {
        let ctx = BurnsideContext::new();
        let g = Arc::new(families::cyclic(2).unwrap());
        let fam = conlon_idempotents(&ctx, &ctx.algebra(&g));
        let vals = |c: usize| -> Vec<Rational> {
            burnside_character(fam.get(c), 2).values().iter().map(|v| v.as_rational().unwrap()).collect()
        };
        assert_eq!(vals(0), vec![int(1), int(0)]);
        assert_eq!(vals(1), vec![int(0), int(1)]);
    }

    #[test]
    fn a4_pieces() {
        let ctx = BurnsideContext::new();
        let g = Arc::new(families::alternating(4).unwrap());
        let cmp = vistoli_compare(&ctx, &g).unwrap();
        assert_eq!(cmp.pieces.iter().map(|p| p.classical_dim).collect::<Vec<_>>(), vec![1, 1, 2]);
        assert_eq!(cmp.total, 4);
        assert_eq!(cmp.element_classes, 4);
        assert!(verify_vistoli(&ctx, &g).unwrap().passed());
    }

    #[test]
    fn trivial_and_cyclic() {
        let ctx = BurnsideContext::new();
        let g = Arc::new(families::cyclic(1).unwrap());
        let cmp = vistoli_compare(&ctx, &g).unwrap();
        assert_eq!(cmp.pieces.len(), 1);
        assert_eq!(cmp.total, 1);
        let c12 = Arc::new(families::cyclic(12).unwrap());
        let ranks = cyclic_piece_ranks(&ctx, &c12).unwrap();
        assert_eq!(ranks, vec![(1, 1), (2, 1), (3, 2), (4, 2), (6, 2), (12, 4)]);
        assert!(verify_vistoli(&ctx, &c12).unwrap().passed());
    }
}
