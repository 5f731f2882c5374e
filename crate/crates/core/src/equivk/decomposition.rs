use std::sync::Arc;

use serde::Serialize;

use super::action::burnside_action;
use super::kclass::{pullback_along, pushforward_along, KClass, KSpace};
use crate::burnside::{conlon_idempotents, BurnsideContext};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::gset::{fixed_points, GSet};
use crate::rational::{independent_rows, int, rank, Rational};
use crate::subgroup::SubgroupLattice;

/// Outcome of checking `i_*: K(X^H, H)_H^{N_G(H)} → K(X,G)_H` for one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub class: usize,
    pub dim_source: usize,
    pub dim_target: usize,
    pub iso: bool,
    /// `(1/ν)·i^*` is a two-sided inverse of `i_*`.
    pub inverse_ok: bool,
}

/// The source, target and both maps of the decomposition for one class `H`.
pub struct Decomposition {
    pub class: usize,
    /// `K(X^H, H)`; the source is the subspace cut out by `u^H_H` and
    /// `N_G(H)`-averaging.
    pub fixed_space: Arc<KSpace>,
    pub target_space: Arc<KSpace>,
    pub source_basis: Vec<KClass>,
    pub target_basis: Vec<KClass>,
    nu: usize,
    h_incl: crate::group::Embedding,
    point_map: Vec<usize>,
}

fn rational_rows(classes: &[KClass]) -> Vec<Vec<Rational>> {
    classes.iter().map(|c| c.rational_coords().expect("rational class")).collect()
}

fn span_basis(images: Vec<KClass>) -> Vec<KClass> {
    let keep = independent_rows(&rational_rows(&images));
    keep.into_iter().map(|i| images[i].clone()).collect()
}

impl Decomposition {
    pub fn new(ctx: &BurnsideContext, lattice: &SubgroupLattice, x: &Arc<KSpace>, class: usize) -> Result<Decomposition> {
        if class >= lattice.len() {
            return Err(Error::UnknownClass(class));
        }
        let sc = lattice.class(class);
        let h = &sc.representative;
        let n = x.conductor();
        let fp = fixed_points(x.gset(), h)?;
        let normalizer = fp.normalizer.as_group();
        let h_in_n = h.embed_into(&fp.normalizer, h.parent().identity())?;
        let fixed_space = KSpace::new(fp.gset.restrict(&h_in_n)?, n);

        let h_algebra = ctx.algebra_of(h);
        let section = conlon_idempotents(ctx, &h_algebra).section().clone();
        // N_G(H) acts on K(X^H, H) by (n·η)(y, a) = η(n^-1 y, n^-1 a n)
        let average = |eta: &KClass| -> KClass {
            let scale = Rational::new(1.into(), (normalizer.order() as i64).into());
            KClass::from_fn(&fixed_space, |y, a| {
                let a_n = h_in_n.map(a);
                let mut acc = CyclotomicNumber::zero(n);
                for m in 0..normalizer.order() {
                    let mi = normalizer.inv(m);
                    let y2 = fp.gset.act(mi, y);
                    let a2 = h_in_n.preimage(normalizer.conjugate(mi, a_n)).expect("normal in N");
                    acc += eta.eval(y2, a2);
                }
                acc.scale(&scale)
            })
        };
        let source_images: Vec<KClass> = KClass::basis_all(&fixed_space)
            .iter()
            .map(|v| average(&burnside_action(&section, v).expect("same group")))
            .collect();
        let source_basis = span_basis(source_images);

        let algebra = ctx.algebra(x.group());
        let u = conlon_idempotents(ctx, &algebra).get(class).clone();
        let target_images: Vec<KClass> =
            KClass::basis_all(x).iter().map(|v| burnside_action(&u, v).expect("same group")).collect();
        let target_basis = span_basis(target_images);

        Ok(Decomposition {
            class,
            fixed_space,
            target_space: x.clone(),
            source_basis,
            target_basis,
            nu: sc.nu,
            h_incl: h.inclusion(),
            point_map: fp.inclusion,
        })
    }

    /// `i_*`: extension by zero along `X^H ↪ X`, then induction from `H` to `G`.
    pub fn push(&self, v: &KClass) -> Result<KClass> {
        pushforward_along(&self.h_incl, &self.point_map, v, &self.target_space)
    }

    /// The modified restriction `(1/ν)·i^*`.
    pub fn modified_restriction(&self, w: &KClass) -> Result<KClass> {
        let pulled = pullback_along(&self.h_incl, &self.point_map, w, &self.fixed_space)?;
        Ok(pulled.scale(&(Rational::from_integer(1.into()) / int(self.nu as i64))))
    }

    pub fn report(&self, ctx: &BurnsideContext) -> Result<DecompositionReport> {
        let algebra = ctx.algebra(self.target_space.group());
        let u = conlon_idempotents(ctx, &algebra).get(self.class).clone();
        let pushed = self.source_basis.iter().map(|v| self.push(v)).collect::<Result<Vec<_>>>()?;
        let injective = rank(&rational_rows(&pushed)) == self.source_basis.len();
        let lands_in_part = pushed.iter().all(|w| burnside_action(&u, w).map(|uw| uw == *w).unwrap_or(false));
        let iso = injective && lands_in_part && self.source_basis.len() == self.target_basis.len();
        let mut inverse_ok = true;
        for (v, w) in self.source_basis.iter().zip(&pushed) {
            inverse_ok &= self.modified_restriction(w)? == *v;
        }
        for w in &self.target_basis {
            inverse_ok &= self.push(&self.modified_restriction(w)?)? == *w;
        }
        Ok(DecompositionReport {
            class: self.class,
            dim_source: self.source_basis.len(),
            dim_target: self.target_basis.len(),
            iso,
            inverse_ok,
        })
    }
}

/// Decomposition reports for every subgroup class, plus `dim K(X,G)`.
pub fn decomposition_reports(ctx: &BurnsideContext, x: &GSet) -> Result<(usize, Vec<DecompositionReport>)> {
    let space = KSpace::of(x.clone());
    let lattice = ctx.algebra(x.group()).lattice().clone();
    let reports = (0..lattice.len())
        .map(|h| Decomposition::new(ctx, &lattice, &space, h)?.report(ctx))
        .collect::<Result<Vec<_>>>()?;
    Ok((space.dim(), reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn s3_coset_space() {
        let ctx = BurnsideContext::new();
        let g = Arc::new(families::symmetric(3).unwrap());
        let lattice = ctx.algebra(&g).lattice().clone();
        let x = GSet::cosets(&lattice.class(1).representative);
        let (dim, reports) = decomposition_reports(&ctx, &x).unwrap();
        assert_eq!(dim, 2);
        let dims: Vec<(usize, usize)> = reports.iter().map(|r| (r.dim_source, r.dim_target)).collect();
        // X^{C3} and X^{S3} are empty
        assert_eq!(dims, vec![(1, 1), (1, 1), (0, 0), (0, 0)]);
        assert!(reports.iter().all(|r| r.iso && r.inverse_ok));
    }

    #[test]
    fn global_rank_identity() {
        let ctx = BurnsideContext::new();
        for g in [families::alternating(4).unwrap(), families::quaternion().unwrap(), families::cyclic(6).unwrap()] {
            let g = Arc::new(g);
            for x in [GSet::point(&g), GSet::regular(&g), GSet::empty(&g)] {
                let (dim, reports) = decomposition_reports(&ctx, &x).unwrap();
                assert_eq!(dim, reports.iter().map(|r| r.dim_source).sum::<usize>());
                assert!(reports.iter().all(|r| r.iso && r.inverse_ok));
            }
        }
    }
}
