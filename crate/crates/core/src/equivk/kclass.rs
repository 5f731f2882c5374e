use std::sync::Arc;

use rand::Rng;

use super::classfn::ClassFunction;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::{Embedding, FiniteGroup};
use crate::gset::GSet;
use crate::rational::{int, Rational};
use crate::subgroup::same_group;

/// `K(X,G) ⊗ Q(ζ_N)`: one class function per orbit, living on the stabilizer
/// of the orbit's basepoint. Equivalently, G-invariant functions on pairs
/// `(x, s)` with `s·x = x`.
pub struct KSpace {
    gset: GSet,
    conductor: usize,
    stabilizers: Vec<Arc<FiniteGroup>>,
    inclusions: Vec<Embedding>,
    offsets: Vec<usize>,
}

impl KSpace {
    pub fn new(gset: GSet, conductor: usize) -> Arc<KSpace> {
        let mut stabilizers = Vec::new();
        let mut inclusions = Vec::new();
        let mut offsets = vec![0];
        for orbit in 0..gset.num_orbits() {
            let s = gset.orbit_stabilizer(orbit);
            let sg = s.as_group();
            offsets.push(offsets.last().unwrap() + sg.num_classes());
            inclusions.push(s.inclusion());
            stabilizers.push(sg);
        }
        Arc::new(KSpace { gset, conductor, stabilizers, inclusions, offsets })
    }

    /// The space for `X` with the exponent of its group as conductor.
    pub fn of(gset: GSet) -> Arc<KSpace> {
        let n = gset.group().exponent();
        KSpace::new(gset, n)
    }

    pub fn gset(&self) -> &GSet {
        &self.gset
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.gset.group()
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// `Σ_orbits #(conjugacy classes of the stabilizer)`.
    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn stabilizer_group(&self, orbit: usize) -> &Arc<FiniteGroup> {
        &self.stabilizers[orbit]
    }

    /// Basis labels `(orbit, stabilizer class)` in coordinate order.
    pub fn labels(&self) -> Vec<(usize, usize)> {
        (0..self.stabilizers.len())
            .flat_map(|o| (0..self.stabilizers[o].num_classes()).map(move |c| (o, c)))
            .collect()
    }

    fn same_as(&self, other: &KSpace) -> bool {
        std::ptr::eq(self, other)
            || (same_group(self.group(), other.group())
                && self.gset.size() == other.gset.size()
                && self.conductor == other.conductor
                && (0..self.group().order())
                    .all(|g| (0..self.gset.size()).all(|x| self.gset.act(g, x) == other.gset.act(g, x))))
    }
}

/// An element of `K(X,G) ⊗ Q(ζ_N)`.
#[derive(Clone)]
pub struct KClass {
    space: Arc<KSpace>,
    parts: Vec<ClassFunction>,
}

impl KClass {
    pub fn zero(space: &Arc<KSpace>) -> KClass {
        let parts = space.stabilizers.iter().map(|s| ClassFunction::zero(s, space.conductor)).collect();
        KClass { space: space.clone(), parts }
    }

    /// The class that is 1 at `(orbit, class)` of the given coordinate index
    /// and 0 elsewhere.
    pub fn basis(space: &Arc<KSpace>, index: usize) -> KClass {
        let mut coords = vec![CyclotomicNumber::zero(space.conductor); space.dim()];
        coords[index] = CyclotomicNumber::one(space.conductor);
        KClass::from_coords(space, coords).expect("length matches")
    }

    pub fn basis_all(space: &Arc<KSpace>) -> Vec<KClass> {
        (0..space.dim()).map(|i| KClass::basis(space, i)).collect()
    }

    /// The class of the trivial rank-one bundle.
    pub fn one(space: &Arc<KSpace>) -> KClass {
        KClass::from_fn(space, |_, _| CyclotomicNumber::one(space.conductor))
    }

    /// Builds a class from a function on pairs `(x, s)` with `s·x = x`,
    /// sampled at basepoints and class representatives. The function is
    /// assumed to be G-invariant.
    pub fn from_fn(space: &Arc<KSpace>, f: impl Fn(usize, usize) -> CyclotomicNumber) -> KClass {
        let parts = (0..space.stabilizers.len())
            .map(|o| {
                let x = space.gset.basepoint(o);
                let incl = &space.inclusions[o];
                ClassFunction::from_fn(&space.stabilizers[o], |s| f(x, incl.map(s)))
            })
            .collect();
        KClass { space: space.clone(), parts }
    }

    pub fn from_coords(space: &Arc<KSpace>, coords: Vec<CyclotomicNumber>) -> Result<KClass> {
        if coords.len() != space.dim() {
            return Err(Error::GroupMismatch);
        }
        let mut coords = coords.into_iter();
        let parts = space
            .stabilizers
            .iter()
            .map(|s| ClassFunction::from_values(s, coords.by_ref().take(s.num_classes()).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(KClass { space: space.clone(), parts })
    }

    /// Random integer combination of basis classes, each coefficient also
    /// multiplied by a random power of `ζ_N`.
    pub fn random(space: &Arc<KSpace>, rng: &mut impl Rng, bound: i64) -> KClass {
        let n = space.conductor;
        let coords = (0..space.dim())
            .map(|_| {
                let c = rng.gen_range(-bound..=bound);
                let k = rng.gen_range(0..n as i64);
                CyclotomicNumber::zeta_pow(n, k).scale(&int(c))
            })
            .collect();
        KClass::from_coords(space, coords).expect("length matches")
    }

    pub fn space(&self) -> &Arc<KSpace> {
        &self.space
    }

    pub fn parts(&self) -> &[ClassFunction] {
        &self.parts
    }

    pub fn coords(&self) -> Vec<CyclotomicNumber> {
        self.parts.iter().flat_map(|p| p.values().iter().cloned()).collect()
    }

    /// Coordinates as rationals, if every coordinate is rational.
    pub fn rational_coords(&self) -> Option<Vec<Rational>> {
        self.parts.iter().flat_map(|p| p.values().iter().map(CyclotomicNumber::as_rational)).collect()
    }

    /// Value at `(x, s)`: the character of the fiber over `x` at `s ∈ Stab(x)`.
    pub fn eval(&self, x: usize, s: usize) -> &CyclotomicNumber {
        let space = &*self.space;
        let g = space.group();
        let orbit = space.gset.orbit_of(x);
        let t = space.gset.transporter(x);
        let at_base = g.mul(g.inv(t), g.mul(s, t));
        let local = space.inclusions[orbit].preimage(at_base).expect("element does not fix the point");
        self.parts[orbit].at(local)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(ClassFunction::is_zero)
    }

    fn zip(&self, other: &KClass, f: impl Fn(&ClassFunction, &ClassFunction) -> Result<ClassFunction>) -> Result<KClass> {
        if !self.space.same_as(&other.space) {
            return Err(Error::GroupMismatch);
        }
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| f(a, b)).collect::<Result<Vec<_>>>()?;
        Ok(KClass { space: self.space.clone(), parts })
    }

    pub fn add(&self, other: &KClass) -> Result<KClass> {
        self.zip(other, ClassFunction::add)
    }

    pub fn sub(&self, other: &KClass) -> Result<KClass> {
        self.zip(other, ClassFunction::sub)
    }

    /// Tensor product of bundles: pointwise product of fiber characters.
    pub fn mul(&self, other: &KClass) -> Result<KClass> {
        self.zip(other, ClassFunction::mul)
    }

    pub fn scale(&self, r: &Rational) -> KClass {
        KClass { space: self.space.clone(), parts: self.parts.iter().map(|p| p.scale(r)).collect() }
    }

    /// Multiplies the value at `(x, s)` by `f(s)`.
    pub fn twist(&self, f: impl Fn(usize) -> CyclotomicNumber) -> KClass {
        let parts = self
            .parts
            .iter()
            .enumerate()
            .map(|(o, p)| {
                let incl = &self.space.inclusions[o];
                ClassFunction::from_fn(p.group(), |s| p.at(s) * &f(incl.map(s)))
            })
            .collect();
        KClass { space: self.space.clone(), parts }
    }
}

impl PartialEq for KClass {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_as(&other.space) && self.parts == other.parts
    }
}

impl std::fmt::Debug for KClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.parts).finish()
    }
}

fn check_equivariant_along(phi: &Embedding, map: &[usize], source: &GSet, target: &GSet) -> Result<()> {
    if !same_group(phi.source(), source.group()) || !same_group(phi.target(), target.group()) {
        return Err(Error::GroupMismatch);
    }
    if map.len() != source.size() || map.iter().any(|&x| x >= target.size()) {
        return Err(Error::NotEquivariant("map has the wrong shape".into()));
    }
    for a in 0..phi.source().order() {
        let b = phi.map(a);
        for y in 0..source.size() {
            if map[source.act(a, y)] != target.act(b, map[y]) {
                return Err(Error::NotEquivariant(format!("fails at element {a}, point {y}")));
            }
        }
    }
    Ok(())
}

/// Pullback along a map of pairs `(Y, A) → (X, B)` given by an injective
/// homomorphism `φ: A → B` and a map `f` with `f(a·y) = φ(a)·f(y)`:
/// `(f^*ξ)(y, a) = ξ(f(y), φ(a))`.
pub fn pullback_along(phi: &Embedding, map: &[usize], xi: &KClass, source: &Arc<KSpace>) -> Result<KClass> {
    check_equivariant_along(phi, map, source.gset(), xi.space.gset())?;
    if source.conductor != xi.space.conductor {
        return Err(Error::ConductorMismatch(source.conductor, xi.space.conductor));
    }
    Ok(KClass::from_fn(source, |y, a| xi.eval(map[y], phi.map(a)).clone()))
}

/// Pushforward along a map of pairs (see [`pullback_along`]): pushforward
/// along `f` as `A`-sets followed by induction from `A` to `B`,
/// `(f_*η)(x, b) = (1/|A|) Σ_{c ∈ B, c^-1 b c ∈ φ(A)} Σ_{f(y) = c^-1 x, a·y = y} η(y, a)`
/// with `a = φ^-1(c^-1 b c)`.
pub fn pushforward_along(phi: &Embedding, map: &[usize], eta: &KClass, target: &Arc<KSpace>) -> Result<KClass> {
    check_equivariant_along(phi, map, eta.space.gset(), target.gset())?;
    if target.conductor != eta.space.conductor {
        return Err(Error::ConductorMismatch(target.conductor, eta.space.conductor));
    }
    let source = eta.space.gset();
    let b_group = phi.target();
    let mut fibers = vec![Vec::new(); target.gset().size()];
    for (y, &x) in map.iter().enumerate() {
        fibers[x].push(y);
    }
    let scale = Rational::new(1.into(), (phi.source().order() as i64).into());
    Ok(KClass::from_fn(target, |x, b| {
        let mut acc = CyclotomicNumber::zero(target.conductor);
        for c in 0..b_group.order() {
            let ci = b_group.inv(c);
            let Some(a) = phi.preimage(b_group.mul(ci, b_group.mul(b, c))) else { continue };
            for &y in &fibers[target.gset().act(ci, x)] {
                if source.act(a, y) == y {
                    acc += eta.eval(y, a);
                }
            }
        }
        acc.scale(&scale)
    }))
}

/// Pullback along a G-equivariant map `f: Y → X`.
pub fn pullback(map: &[usize], xi: &KClass, source: &Arc<KSpace>) -> Result<KClass> {
    pullback_along(&Embedding::identity(xi.space.group()), map, xi, source)
}

/// Pushforward along a G-equivariant map `f: Y → X`:
/// `(f_*η)(x, s) = Σ_{y ∈ f^-1(x), s·y = y} η(y, s)`.
pub fn pushforward(map: &[usize], eta: &KClass, target: &Arc<KSpace>) -> Result<KClass> {
    let g = eta.space.group();
    check_equivariant_along(&Embedding::identity(g), map, eta.space.gset(), target.gset())?;
    let mut fibers = vec![Vec::new(); target.gset().size()];
    for (y, &x) in map.iter().enumerate() {
        fibers[x].push(y);
    }
    let source = eta.space.gset();
    Ok(KClass::from_fn(target, |x, s| {
        let mut acc = CyclotomicNumber::zero(target.conductor);
        for &y in &fibers[x] {
            if source.act(s, y) == y {
                acc += eta.eval(y, s);
            }
        }
        acc
    }))
}

/// Restriction of the group along `φ: H → G`, from `K(X,G)` to `K(X|_H, H)`.
pub fn restrict_k(phi: &Embedding, xi: &KClass, source: &Arc<KSpace>) -> Result<KClass> {
    let id: Vec<usize> = (0..source.gset().size()).collect();
    pullback_along(phi, &id, xi, source)
}

/// Induction from `K(X|_H, H)` to `K(X,G)`.
pub fn induce_k(phi: &Embedding, eta: &KClass, target: &Arc<KSpace>) -> Result<KClass> {
    let id: Vec<usize> = (0..target.gset().size()).collect();
    pushforward_along(phi, &id, eta, target)
}
