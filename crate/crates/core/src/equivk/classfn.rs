use std::sync::Arc;

use crate::burnside::BurnsideElement;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::{Embedding, FiniteGroup};
use crate::rational::{int, Rational};
use crate::subgroup::{same_group, Subgroup};

/// A function on a group, constant on conjugacy classes, with values in
/// `Q(ζ_n)`. Values are indexed by the group's conjugacy classes.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn zero(group: &Arc<FiniteGroup>, conductor: usize) -> ClassFunction {
        ClassFunction { group: group.clone(), values: vec![CyclotomicNumber::zero(conductor); group.num_classes()] }
    }

    pub fn constant(group: &Arc<FiniteGroup>, value: CyclotomicNumber) -> ClassFunction {
        ClassFunction { group: group.clone(), values: vec![value; group.num_classes()] }
    }

    /// Evaluates `f` at the smallest element of each conjugacy class.
    pub fn from_fn(group: &Arc<FiniteGroup>, f: impl Fn(usize) -> CyclotomicNumber) -> ClassFunction {
        let values = group.conjugacy_classes().iter().map(|c| f(c[0])).collect();
        ClassFunction { group: group.clone(), values }
    }

    pub fn from_values(group: &Arc<FiniteGroup>, values: Vec<CyclotomicNumber>) -> Result<ClassFunction> {
        if values.len() != group.num_classes() {
            return Err(Error::GroupMismatch);
        }
        Ok(ClassFunction { group: group.clone(), values })
    }

    /// Rational class function given by integer values per class.
    pub fn from_integers(group: &Arc<FiniteGroup>, conductor: usize, values: &[i64]) -> Result<ClassFunction> {
        ClassFunction::from_values(group, values.iter().map(|&v| CyclotomicNumber::from_integer(conductor, v)).collect())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }

    pub fn conductor(&self) -> usize {
        self.values[0].conductor()
    }

    /// Value at an element index.
    pub fn at(&self, g: usize) -> &CyclotomicNumber {
        &self.values[self.group.class_of(g)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CyclotomicNumber::is_zero)
    }

    fn zip(&self, other: &ClassFunction, f: impl Fn(&CyclotomicNumber, &CyclotomicNumber) -> CyclotomicNumber) -> Result<ClassFunction> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product (tensor product of virtual characters).
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, r: &Rational) -> ClassFunction {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.scale(r)).collect() }
    }
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|v| v.as_rational().map_or_else(|| v.to_text(), |r| r.to_string()))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Frobenius induction along `φ: H → K`:
/// `(Ind χ)(k) = (1/|H|) Σ_{x ∈ K, x^-1 k x ∈ φ(H)} χ(φ^-1(x^-1 k x))`.
pub fn induce_cf(emb: &Embedding, chi: &ClassFunction) -> Result<ClassFunction> {
    if !same_group(emb.source(), &chi.group) {
        return Err(Error::GroupMismatch);
    }
    let k = emb.target();
    let n = chi.conductor();
    let scale = Rational::new(1.into(), (emb.source().order() as i64).into());
    Ok(ClassFunction::from_fn(k, |g| {
        let mut acc = CyclotomicNumber::zero(n);
        for x in 0..k.order() {
            let y = k.mul(k.inv(x), k.mul(g, x));
            if let Some(h) = emb.preimage(y) {
                acc += chi.at(h);
            }
        }
        acc.scale(&scale)
    }))
}

/// Restriction along `φ: H → K`: `χ ∘ φ`.
pub fn restrict_cf(emb: &Embedding, chi: &ClassFunction) -> Result<ClassFunction> {
    if !same_group(emb.target(), &chi.group) {
        return Err(Error::GroupMismatch);
    }
    Ok(ClassFunction::from_fn(emb.source(), |h| chi.at(emb.map(h)).clone()))
}

/// Conjugation `χ ↦ (y ↦ χ(g^-1 y g))`, taking class functions on `H` to
/// class functions on `gHg^-1`. `chi` lives on `h.as_group()`.
pub fn conj_cf(h: &Subgroup, g: usize, chi: &ClassFunction) -> Result<ClassFunction> {
    if !same_group(&h.as_group(), &chi.group) {
        return Err(Error::GroupMismatch);
    }
    let target = h.conjugate(g);
    let iso = h.embed_into(&target, g)?;
    Ok(ClassFunction::from_fn(&target.as_group(), |y| chi.at(iso.preimage(y).expect("bijective")).clone()))
}

/// Number of fixed points of each element on a G-set.
pub fn permutation_character(x: &crate::gset::GSet, conductor: usize) -> ClassFunction {
    ClassFunction::from_fn(x.group(), |g| {
        let fixed = (0..x.size()).filter(|&p| x.act(g, p) == p).count();
        CyclotomicNumber::from_integer(conductor, fixed as i64)
    })
}

/// Image of a Burnside element under `B(G) → R(G) ⊗ Q`, `⟨Γ⟩ ↦` permutation
/// character of `G/Γ`, read from the table of marks at the class of `⟨g⟩`.
pub fn burnside_character(b: &BurnsideElement, conductor: usize) -> ClassFunction {
    let algebra = b.algebra();
    let lattice = algebra.lattice();
    let marks = algebra.marks();
    ClassFunction::from_fn(algebra.group(), |g| {
        let cyc = lattice.cyclic_class_of(g);
        let mut acc = Rational::from_integer(0.into());
        for (h, c) in b.coeffs().iter().enumerate() {
            let m = marks.get(h, cyc);
            if m != 0 {
                acc += c * int(m as i64);
            }
        }
        CyclotomicNumber::from_rational(conductor, acc)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::gset::GSet;
    use crate::subgroup::SubgroupLattice;

    fn s3() -> (Arc<FiniteGroup>, SubgroupLattice) {
        let g = Arc::new(families::symmetric(3).unwrap());
        (g.clone(), SubgroupLattice::new(g))
    }

    fn ints(f: &ClassFunction) -> Vec<Rational> {
        f.values().iter().map(|v| v.as_rational().unwrap()).collect()
    }

    #[test]
    fn induced_trivial_characters() {
        let (g, l) = s3();
        // classes of S3 ordered by smallest element: e, transpositions, 3-cycles
        assert_eq!(g.conjugacy_classes().iter().map(|c| c.len()).collect::<Vec<_>>(), vec![1, 3, 2]);
        let c2 = &l.class(1).representative;
        let c3 = &l.class(2).representative;
        let triv2 = ClassFunction::constant(&c2.as_group(), CyclotomicNumber::one(6));
        let triv3 = ClassFunction::constant(&c3.as_group(), CyclotomicNumber::one(6));
        assert_eq!(ints(&induce_cf(&c2.inclusion(), &triv2).unwrap()), vec![int(3), int(1), int(0)]);
        assert_eq!(ints(&induce_cf(&c3.inclusion(), &triv3).unwrap()), vec![int(2), int(0), int(2)]);
        // matches the permutation characters of the coset spaces
        assert_eq!(induce_cf(&c2.inclusion(), &triv2).unwrap(), permutation_character(&GSet::cosets(c2), 6));
    }

    #[test]
    fn identity_and_restriction() {
        let (g, l) = s3();
        let chi = ClassFunction::from_integers(&g, 6, &[2, 0, -1]).unwrap();
        let id = Embedding::identity(&g);
        assert_eq!(induce_cf(&id, &chi).unwrap(), chi);
        let triv = Subgroup::trivial(&g);
        assert_eq!(ints(&restrict_cf(&triv.inclusion(), &chi).unwrap()), vec![int(2)]);
        // Mackey: C3 acts freely on G/C2
        let c2 = &l.class(1).representative;
        let c3 = &l.class(2).representative;
        let ind = induce_cf(&c2.inclusion(), &ClassFunction::constant(&c2.as_group(), CyclotomicNumber::one(6))).unwrap();
        assert_eq!(ints(&restrict_cf(&c3.inclusion(), &ind).unwrap()), vec![int(3), int(0), int(0)]);
    }

    #[test]
    fn conjugation() {
        let (g, l) = s3();
        let c3 = &l.class(2).representative;
        let h = c3.as_group();
        let chi = ClassFunction::from_fn(&h, |x| CyclotomicNumber::from_integer(6, x as i64));
        // every element of S3 normalizes C3; a transposition swaps the two 3-cycles
        let t = l.class(1).representative.members()[1];
        let conj = conj_cf(c3, t, &chi).unwrap();
        assert_ne!(conj, chi);
        assert_eq!(conj_cf(c3, t, &conj).unwrap(), chi);
        let invariant = ClassFunction::constant(&h, CyclotomicNumber::from_integer(6, 4));
        assert_eq!(conj_cf(c3, t, &invariant).unwrap(), invariant);
        let _ = g;
    }
}
