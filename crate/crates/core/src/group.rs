//! Finite permutation groups stored as explicit, canonically ordered element
//! lists with a full multiplication table.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Order cap applied when nothing else is configured.
pub const DEFAULT_MAX_ORDER: usize = 200;

/// A finite group of permutations.
///
/// Elements are sorted lexicographically by their image vectors, so the
/// identity is always element `0` and any subset of elements inherits the
/// same relative order when it is turned into a group of its own.
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: Vec<u32>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

/// Closes `generators` under composition, refusing groups larger than `max_order`.
pub fn generate_group(degree: usize, generators: &[Perm], max_order: usize) -> Result<FiniteGroup> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
        }
    }
    let identity = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for s in generators {
            let y = s.compose(&x);
            if seen.insert(y.clone()) {
                if seen.len() > max_order {
                    return Err(Error::GroupTooLarge { cap: max_order });
                }
                queue.push_back(y);
            }
        }
    }
    let generators: Vec<Perm> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
    Ok(FiniteGroup::from_closed_set(degree, seen.into_iter().collect(), generators))
}

impl FiniteGroup {
    /// Builds the group from a set of permutations already closed under
    /// composition. Empty `generators` are replaced by a greedy generating set.
    pub(crate) fn from_closed_set(degree: usize, mut elements: Vec<Perm>, generators: Vec<Perm>) -> FiniteGroup {
        elements.sort();
        elements.dedup();
        let n = elements.len();
        let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&elements[i].compose(&elements[j])] as u32;
            }
        }
        let inverses: Vec<usize> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let mut group = FiniteGroup {
            degree,
            elements,
            generators,
            index,
            table,
            inverses,
            orders: Vec::new(),
            class_of: Vec::new(),
            classes: Vec::new(),
        };
        group.orders = (0..n).map(|g| group.power_order(g)).collect();
        group.fill_classes();
        if group.generators.is_empty() && n > 1 {
            group.generators = group.greedy_generators().into_iter().map(|g| group.elements[g].clone()).collect();
        }
        group
    }

    fn power_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    fn fill_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| self.conjugate(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        self.class_of = class_of;
        self.classes = classes;
    }

    pub fn trivial(degree: usize) -> FiniteGroup {
        FiniteGroup::from_closed_set(degree, vec![Perm::identity(degree)], Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverses[g])
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.orders[g]
    }

    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().any(|&o| o == self.order())
    }

    /// Conjugacy classes of elements, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// A generating set chosen greedily, preferring elements of large order.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (1..self.order()).collect();
        candidates.sort_by_key(|&g| (std::cmp::Reverse(self.orders[g]), g));
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for g in candidates {
            if span.len() == self.order() {
                break;
            }
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Multiset of element orders as a sorted vector.
    pub fn order_statistics(&self) -> Vec<usize> {
        let mut v = self.orders.clone();
        v.sort_unstable();
        v
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// An injective homomorphism between two finite groups, given on element indices.
#[derive(Clone)]
pub struct Embedding {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<usize>,
    preimage: Vec<Option<usize>>,
}

impl Embedding {
    /// Checked constructor.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, image: Vec<usize>) -> Result<Embedding> {
        let n = source.order();
        if image.len() != n || image.iter().any(|&t| t >= target.order()) {
            return Err(Error::NotASubgroup("image has the wrong shape".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(Error::NotASubgroup("map is not a homomorphism".into()));
                }
            }
        }
        let emb = Embedding::new_unchecked(source, target, image);
        if emb.preimage.iter().filter(|p| p.is_some()).count() != n {
            return Err(Error::NotASubgroup("map is not injective".into()));
        }
        Ok(emb)
    }

    pub(crate) fn new_unchecked(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, image: Vec<usize>) -> Embedding {
        let mut preimage = vec![None; target.order()];
        for (i, &t) in image.iter().enumerate() {
            preimage[t] = Some(i);
        }
        Embedding { source, target, image, preimage }
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Embedding {
        Embedding::new_unchecked(group.clone(), group.clone(), (0..group.order()).collect())
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn map(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Sorted image of the whole source group inside the target.
    pub fn image_set(&self) -> Vec<usize> {
        let mut v = self.image.clone();
        v.sort_unstable();
        v
    }

    #[inline]
    pub fn preimage(&self, t: usize) -> Option<usize> {
        self.preimage[t]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Embedding {
        debug_assert!(*self.target == *next.source);
        let image = self.image.iter().map(|&t| next.map(t)).collect();
        Embedding::new_unchecked(self.source.clone(), next.target.clone(), image)
    }

    /// `a ↦ g·φ(a)·g^-1` with `g` an element of the target.
    pub fn conjugated_by(&self, g: usize) -> Embedding {
        let image = self.image.iter().map(|&t| self.target.conjugate(g, t)).collect();
        Embedding::new_unchecked(self.source.clone(), self.target.clone(), image)
    }
}

/// Decides abstract isomorphism by backtracking over generator images.
pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    if a.order() != b.order()
        || a.order_statistics() != b.order_statistics()
        || a.num_classes() != b.num_classes()
        || a.is_abelian() != b.is_abelian()
    {
        return false;
    }
    let gens = a.greedy_generators();
    let mut assigned = Vec::with_capacity(gens.len());
    extend_isomorphism(a, b, &gens, &mut assigned)
}

fn extend_isomorphism(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], assigned: &mut Vec<usize>) -> bool {
    if assigned.len() == gens.len() {
        return partial_hom(a, b, gens, assigned).is_some_and(|m| m.len() == a.order());
    }
    let g = gens[assigned.len()];
    for candidate in 0..b.order() {
        if b.element_order(candidate) != a.element_order(g) {
            continue;
        }
        assigned.push(candidate);
        if partial_hom(a, b, &gens[..assigned.len()], assigned).is_some()
            && extend_isomorphism(a, b, gens, assigned)
        {
            return true;
        }
        assigned.pop();
    }
    false
}

/// Extends `gens[i] ↦ images[i]` to the generated subgroup; `None` if the
/// assignment is not a well-defined injective homomorphism.
fn partial_hom(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<HashMap<usize, usize>> {
    let mut map = HashMap::from([(0usize, 0usize)]);
    let mut used = HashSet::from([0usize]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = map[&x];
        for (&s, &t) in gens.iter().zip(images) {
            let y = a.mul(x, s);
            let fy = b.mul(fx, t);
            match map.get(&y) {
                Some(&existing) if existing != fy => return None,
                Some(_) => {}
                None => {
                    if !used.insert(fy) {
                        return None;
                    }
                    map.insert(y, fy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(map)
}
