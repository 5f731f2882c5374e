//! The rational Burnside algebra `B(G) ⊗ Q`.
//!
//! Elements are coefficient vectors over the basis `⟨H⟩ = [G/H]`, indexed by
//! subgroup class id in the lattice order (so the table of marks is lower
//! triangular).

mod idempotents;
mod marks;
pub mod verify;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{Embedding, FiniteGroup};
use crate::perm::Perm;
use crate::rational::{int, Rational};
use crate::subgroup::{double_cosets, same_group, Subgroup, SubgroupLattice};

pub use idempotents::{conlon_idempotents, ghost_idempotents, h_part, IdempotentFamily};
pub use marks::TableOfMarks;

/// `B(G) ⊗ Q` for one group: the class lattice, table of marks, and
/// memoized structure constants of the basis product.
pub struct BurnsideAlgebra {
    lattice: Arc<SubgroupLattice>,
    marks: TableOfMarks,
    structure: Mutex<HashMap<(usize, usize), Arc<Vec<(usize, usize)>>>>,
}

impl BurnsideAlgebra {
    pub fn new(group: Arc<FiniteGroup>) -> BurnsideAlgebra {
        let lattice = Arc::new(SubgroupLattice::new(group));
        let marks = TableOfMarks::new(&lattice);
        BurnsideAlgebra { lattice, marks, structure: Mutex::new(HashMap::new()) }
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.lattice.group()
    }

    pub fn marks(&self) -> &TableOfMarks {
        &self.marks
    }

    pub fn rank(&self) -> usize {
        self.lattice.len()
    }

    /// Sparse `⟨Γ⟩⟨Γ'⟩` as `(class, multiplicity)` pairs: one term
    /// `⟨Γ ∩ g^-1 Γ' g⟩` per double coset `Γ' g Γ`.
    fn structure_constants(&self, a: usize, b: usize) -> Arc<Vec<(usize, usize)>> {
        let key = (a.min(b), a.max(b));
        if let Some(s) = self.structure.lock().unwrap().get(&key) {
            return s.clone();
        }
        let gamma = &self.lattice.class(a).representative;
        let gamma_prime = &self.lattice.class(b).representative;
        let group = self.group();
        let mut counts: Vec<usize> = vec![0; self.rank()];
        for g in double_cosets(gamma_prime, gamma) {
            let conj = gamma_prime.conjugate(group.inv(g));
            let meet = gamma.intersection(&conj);
            let id = self.lattice.class_of(&meet).expect("intersection of subgroups is a subgroup");
            counts[id] += 1;
        }
        let sparse: Vec<(usize, usize)> = counts.into_iter().enumerate().filter(|(_, c)| *c > 0).collect();
        let sparse = Arc::new(sparse);
        self.structure.lock().unwrap().insert(key, sparse.clone());
        sparse
    }
}

impl fmt::Debug for BurnsideAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BurnsideAlgebra").field("group", self.group()).field("rank", &self.rank()).finish()
    }
}

/// Insert-once memo of algebras and Conlon families, keyed by the group's
/// element list. Sharing one context across calls shares all subgroup work.
#[derive(Default)]
pub struct BurnsideContext {
    algebras: Mutex<HashMap<Vec<Perm>, Arc<BurnsideAlgebra>>>,
    families: Mutex<HashMap<Vec<Perm>, Arc<IdempotentFamily>>>,
}

impl BurnsideContext {
    pub fn new() -> BurnsideContext {
        BurnsideContext::default()
    }

    pub fn algebra(&self, group: &Arc<FiniteGroup>) -> Arc<BurnsideAlgebra> {
        if let Some(a) = self.algebras.lock().unwrap().get(group.elements()) {
            return a.clone();
        }
        let algebra = Arc::new(BurnsideAlgebra::new(group.clone()));
        self.algebras.lock().unwrap().entry(group.elements().to_vec()).or_insert(algebra).clone()
    }

    pub fn algebra_of(&self, h: &Subgroup) -> Arc<BurnsideAlgebra> {
        self.algebra(&h.as_group())
    }

    pub(crate) fn cached_family(&self, group: &FiniteGroup) -> Option<Arc<IdempotentFamily>> {
        self.families.lock().unwrap().get(group.elements()).cloned()
    }

    pub(crate) fn store_family(&self, family: Arc<IdempotentFamily>) -> Arc<IdempotentFamily> {
        let key = family.algebra().group().elements().to_vec();
        self.families.lock().unwrap().entry(key).or_insert(family).clone()
    }
}

/// An element of `B(G) ⊗ Q`.
#[derive(Clone)]
pub struct BurnsideElement {
    algebra: Arc<BurnsideAlgebra>,
    coeffs: Vec<Rational>,
}

impl BurnsideElement {
    pub fn zero(algebra: &Arc<BurnsideAlgebra>) -> BurnsideElement {
        BurnsideElement { algebra: algebra.clone(), coeffs: vec![Rational::zero(); algebra.rank()] }
    }

    /// The unit `⟨G⟩`.
    pub fn one(algebra: &Arc<BurnsideAlgebra>) -> BurnsideElement {
        BurnsideElement::basis(algebra, algebra.lattice.top())
    }

    /// `⟨H⟩` for the class with the given id.
    pub fn basis(algebra: &Arc<BurnsideAlgebra>, class: usize) -> BurnsideElement {
        let mut x = BurnsideElement::zero(algebra);
        x.coeffs[class] = Rational::one();
        x
    }

    pub fn from_coeffs(algebra: &Arc<BurnsideAlgebra>, coeffs: Vec<Rational>) -> Result<BurnsideElement> {
        if coeffs.len() != algebra.rank() {
            return Err(Error::GroupMismatch);
        }
        Ok(BurnsideElement { algebra: algebra.clone(), coeffs })
    }

    /// Integer coefficients drawn uniformly from `-bound..=bound`.
    pub fn random(algebra: &Arc<BurnsideAlgebra>, rng: &mut impl Rng, bound: i64) -> BurnsideElement {
        let coeffs = (0..algebra.rank()).map(|_| int(rng.gen_range(-bound..=bound))).collect();
        BurnsideElement { algebra: algebra.clone(), coeffs }
    }

    pub fn algebra(&self) -> &Arc<BurnsideAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, class: usize) -> &Rational {
        &self.coeffs[class]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &BurnsideElement) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || same_group(self.algebra.group(), other.algebra.group()) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &BurnsideElement) -> Result<BurnsideElement> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(BurnsideElement { algebra: self.algebra.clone(), coeffs })
    }

    pub fn sub(&self, other: &BurnsideElement) -> Result<BurnsideElement> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(BurnsideElement { algebra: self.algebra.clone(), coeffs })
    }

    pub fn scale(&self, r: &Rational) -> BurnsideElement {
        BurnsideElement { algebra: self.algebra.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// The ring product, bilinear in the basis product.
    pub fn mul(&self, other: &BurnsideElement) -> Result<BurnsideElement> {
        self.check_same(other)?;
        let mut out = vec![Rational::zero(); self.algebra.rank()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for &(k, m) in self.algebra.structure_constants(i, j).iter() {
                    out[k] += &ab * int(m as i64);
                }
            }
        }
        Ok(BurnsideElement { algebra: self.algebra.clone(), coeffs: out })
    }

    /// Image under the ghost map: `marks[K] = Σ_H x_H |(G/H)^K|`.
    pub fn marks(&self) -> Vec<Rational> {
        self.algebra.marks.mark_vector(&self.coeffs)
    }
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.check_same(other).is_ok() && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if c.is_one() { format!("<{i}>") } else { format!("{c}*<{i}>") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `⟨Γ⟩·⟨Γ'⟩` for two class ids of the same algebra.
pub fn basis_product(algebra: &Arc<BurnsideAlgebra>, gamma: usize, gamma_prime: usize) -> Result<BurnsideElement> {
    if gamma >= algebra.rank() {
        return Err(Error::UnknownClass(gamma));
    }
    if gamma_prime >= algebra.rank() {
        return Err(Error::UnknownClass(gamma_prime));
    }
    let mut x = BurnsideElement::zero(algebra);
    for &(k, m) in algebra.structure_constants(gamma, gamma_prime).iter() {
        x.coeffs[k] = int(m as i64);
    }
    Ok(x)
}

fn check_ends(emb: &Embedding, source: &BurnsideAlgebra, target: &BurnsideAlgebra) -> Result<()> {
    if same_group(emb.source(), source.group()) && same_group(emb.target(), target.group()) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// Induction along an embedding `H → G`: `⟨K⟩_H ↦ ⟨φ(K)⟩_G`.
pub fn induce(emb: &Embedding, x: &BurnsideElement, target: &Arc<BurnsideAlgebra>) -> Result<BurnsideElement> {
    check_ends(emb, &x.algebra, target)?;
    let mut out = BurnsideElement::zero(target);
    for (k, c) in x.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut image: Vec<usize> =
            x.algebra.lattice.class(k).representative.members().iter().map(|&a| emb.map(a)).collect();
        image.sort_unstable();
        let id = target.lattice.class_of_members(&image).ok_or_else(|| Error::NotASubgroup("image class".into()))?;
        out.coeffs[id] += c;
    }
    Ok(out)
}

/// Restriction along an embedding `H → G`: the `H`-set `G/L` splits into
/// one orbit `H/(φ^-1(φ(H) ∩ gLg^-1))` per double coset `φ(H) g L`.
pub fn restrict(emb: &Embedding, x: &BurnsideElement, source: &Arc<BurnsideAlgebra>) -> Result<BurnsideElement> {
    check_ends(emb, source, &x.algebra)?;
    let target = emb.target();
    let image = Subgroup::from_sorted(target.clone(), emb.image_set());
    let mut out = BurnsideElement::zero(source);
    for (l, c) in x.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let rep = &x.algebra.lattice.class(l).representative;
        for g in double_cosets(&image, rep) {
            let stab = image.intersection(&rep.conjugate(g));
            let mut pre: Vec<usize> = stab.members().iter().map(|&t| emb.preimage(t).expect("in image")).collect();
            pre.sort_unstable();
            let id = source.lattice.class_of_members(&pre).expect("stabilizer is a subgroup");
            out.coeffs[id] += c;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::rational::rat;

    fn s3() -> Arc<BurnsideAlgebra> {
        Arc::new(BurnsideAlgebra::new(Arc::new(families::symmetric(3).unwrap())))
    }

    fn elem(a: &Arc<BurnsideAlgebra>, c: &[Rational]) -> BurnsideElement {
        BurnsideElement::from_coeffs(a, c.to_vec()).unwrap()
    }

    #[test]
    fn s3_basis_products() {
        let a = s3();
        // classes: 0 = 1, 1 = C2, 2 = C3, 3 = S3
        assert_eq!(basis_product(&a, 1, 1).unwrap(), elem(&a, &[int(1), int(1), int(0), int(0)]));
        assert_eq!(basis_product(&a, 0, 0).unwrap(), elem(&a, &[int(6), int(0), int(0), int(0)]));
        for k in 0..4 {
            assert_eq!(basis_product(&a, 3, k).unwrap(), BurnsideElement::basis(&a, k));
        }
        assert_eq!(basis_product(&a, 1, 2).unwrap(), elem(&a, &[int(1), int(0), int(0), int(0)]));
        assert_eq!(basis_product(&a, 2, 2).unwrap(), elem(&a, &[int(0), int(0), int(2), int(0)]));
        assert!(basis_product(&a, 4, 0).is_err());
    }

    #[test]
    fn s3_induction_and_restriction() {
        let a = s3();
        let c2 = a.lattice().class(1).representative.clone();
        let c3 = a.lattice().class(2).representative.clone();
        let b2 = Arc::new(BurnsideAlgebra::new(c2.as_group()));
        let b3 = Arc::new(BurnsideAlgebra::new(c3.as_group()));

        let ind = induce(&c2.inclusion(), &BurnsideElement::basis(&b2, 0), &a).unwrap();
        assert_eq!(ind, BurnsideElement::basis(&a, 0));
        let ind = induce(&c3.inclusion(), &BurnsideElement::one(&b3), &a).unwrap();
        assert_eq!(ind, BurnsideElement::basis(&a, 2));

        let res = restrict(&c2.inclusion(), &BurnsideElement::basis(&a, 2), &b2).unwrap();
        assert_eq!(res, BurnsideElement::basis(&b2, 0));
        let res = restrict(&c3.inclusion(), &BurnsideElement::basis(&a, 1), &b3).unwrap();
        assert_eq!(res, BurnsideElement::basis(&b3, 0));

        let id = Embedding::identity(a.group());
        let x = elem(&a, &[rat(1, 2), int(-1), int(3), int(2)]);
        assert_eq!(induce(&id, &x, &a).unwrap(), x);
        assert_eq!(restrict(&id, &x, &a).unwrap(), x);
    }

    #[test]
    fn mismatched_groups() {
        let a = s3();
        let b = Arc::new(BurnsideAlgebra::new(Arc::new(families::cyclic(3).unwrap())));
        let x = BurnsideElement::one(&a);
        let y = BurnsideElement::one(&b);
        assert_eq!(x.mul(&y).unwrap_err(), Error::GroupMismatch);
        assert!(induce(&Embedding::identity(a.group()), &y, &a).is_err());
    }
}
