use std::sync::Arc;

use num_traits::{One, Zero};

use super::{induce, BurnsideAlgebra, BurnsideContext, BurnsideElement};
use crate::error::{Error, Result};
use crate::rational::{int, solve_upper_triangular, Rational};

/// A complete family of orthogonal idempotents `u^G_H`, one per subgroup class.
/// The last entry `u^G_G` generates the tautological part.
#[derive(Clone, Debug)]
pub struct IdempotentFamily {
    algebra: Arc<BurnsideAlgebra>,
    idempotents: Vec<BurnsideElement>,
}

impl IdempotentFamily {
    pub fn algebra(&self) -> &Arc<BurnsideAlgebra> {
        &self.algebra
    }

    pub fn idempotents(&self) -> &[BurnsideElement] {
        &self.idempotents
    }

    pub fn get(&self, class: usize) -> &BurnsideElement {
        &self.idempotents[class]
    }

    /// `u^G_G`.
    pub fn section(&self) -> &BurnsideElement {
        self.idempotents.last().expect("a lattice has at least one class")
    }
}

impl PartialEq for IdempotentFamily {
    fn eq(&self, other: &Self) -> bool {
        self.idempotents == other.idempotents
    }
}

/// Conlon's recursion: for a proper class `Γ`,
/// `u^G_Γ = (1/ν^G_Γ)·Ind^G_Γ(u^Γ_Γ)`, and `u^G_G = 1 - Σ_{Γ<G} u^G_Γ`.
/// Families of subgroups are memoized in `ctx`.
pub fn conlon_idempotents(ctx: &BurnsideContext, algebra: &Arc<BurnsideAlgebra>) -> Arc<IdempotentFamily> {
    if let Some(f) = ctx.cached_family(algebra.group()) {
        return f;
    }
    let lattice = algebra.lattice();
    let top = lattice.top();
    let mut idempotents = Vec::with_capacity(lattice.len());
    let mut rest = BurnsideElement::one(algebra);
    for class in &lattice.classes()[..top] {
        let rep = &class.representative;
        let sub = ctx.algebra_of(rep);
        let sub_family = conlon_idempotents(ctx, &sub);
        let induced = induce(&rep.inclusion(), sub_family.section(), algebra).expect("inclusion matches algebras");
        let u = induced.scale(&(Rational::one() / int(class.nu as i64)));
        rest = rest.sub(&u).expect("same algebra");
        idempotents.push(u);
    }
    idempotents.push(rest);
    ctx.store_family(Arc::new(IdempotentFamily { algebra: algebra.clone(), idempotents }))
}

/// The primitive idempotents read off the table of marks: for each class
/// `H`, the element whose mark vector is the indicator `δ_H`.
pub fn ghost_idempotents(algebra: &Arc<BurnsideAlgebra>) -> Result<IdempotentFamily> {
    let n = algebra.rank();
    let marks = algebra.marks();
    // transpose: row K, column H holds M[H][K]; upper triangular in class order
    let a: Vec<Vec<Rational>> =
        (0..n).map(|k| (0..n).map(|h| int(marks.get(h, k) as i64)).collect()).collect();
    let mut idempotents = Vec::with_capacity(n);
    for h in 0..n {
        let mut rhs = vec![Rational::zero(); n];
        rhs[h] = Rational::one();
        let x = solve_upper_triangular(&a, &rhs)
            .map_err(|e| Error::Singular(format!("table of marks: {e}")))?;
        idempotents.push(BurnsideElement::from_coeffs(algebra, x)?);
    }
    Ok(IdempotentFamily { algebra: algebra.clone(), idempotents })
}

/// The `H`-part `x·u^G_H`.
pub fn h_part(x: &BurnsideElement, family: &IdempotentFamily, class: usize) -> Result<BurnsideElement> {
    if class >= family.idempotents.len() {
        return Err(Error::UnknownClass(class));
    }
    x.mul(&family.idempotents[class])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::rational::rat;

    fn alg(g: crate::group::FiniteGroup) -> Arc<BurnsideAlgebra> {
        Arc::new(BurnsideAlgebra::new(Arc::new(g)))
    }

    fn elem(a: &Arc<BurnsideAlgebra>, c: Vec<Rational>) -> BurnsideElement {
        BurnsideElement::from_coeffs(a, c).unwrap()
    }

    #[test]
    fn s3_family() {
        let ctx = BurnsideContext::new();
        let a = alg(families::symmetric(3).unwrap());
        let f = conlon_idempotents(&ctx, &a);
        let z = int(0);
        assert_eq!(*f.get(0), elem(&a, vec![rat(1, 6), z.clone(), z.clone(), z.clone()]));
        assert_eq!(*f.get(1), elem(&a, vec![rat(-1, 2), int(1), z.clone(), z.clone()]));
        assert_eq!(*f.get(2), elem(&a, vec![rat(-1, 6), z.clone(), rat(1, 2), z.clone()]));
        assert_eq!(*f.get(3), elem(&a, vec![rat(1, 2), int(-1), rat(-1, 2), int(1)]));
        assert_eq!(*f, ghost_idempotents(&a).unwrap());
    }

    #[test]
    fn trivial_and_c2() {
        let ctx = BurnsideContext::new();
        let t = alg(families::cyclic(1).unwrap());
        assert_eq!(*conlon_idempotents(&ctx, &t).get(0), BurnsideElement::one(&t));
        assert_eq!(ghost_idempotents(&t).unwrap().idempotents().len(), 1);

        let a = alg(families::cyclic(2).unwrap());
        let f = conlon_idempotents(&ctx, &a);
        assert_eq!(*f.get(0), elem(&a, vec![rat(1, 2), int(0)]));
        assert_eq!(*f.get(1), elem(&a, vec![rat(-1, 2), int(1)]));
        assert_eq!(f.get(1).marks(), vec![int(0), int(1)]);
    }

    #[test]
    fn h_parts() {
        let ctx = BurnsideContext::new();
        let a = alg(families::symmetric(3).unwrap());
        let f = conlon_idempotents(&ctx, &a);
        let one = BurnsideElement::one(&a);
        for h in 0..4 {
            assert_eq!(h_part(&one, &f, h).unwrap(), *f.get(h));
            for k in 0..4 {
                if k != h {
                    assert!(h_part(f.get(h), &f, k).unwrap().is_zero());
                }
            }
        }
        let free = BurnsideElement::basis(&a, 0);
        assert_eq!(h_part(&free, &f, 0).unwrap(), free);
        assert!(h_part(&free, &f, 9).is_err());
    }
}
