//! Subgroups, their conjugacy classes, and the lattice of classes that every
//! algebra layer indexes by.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{Embedding, FiniteGroup};
use crate::perm::Perm;

/// A subgroup of a parent group, stored as the sorted list of member indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    group: OnceLock<Arc<FiniteGroup>>,
}

impl Subgroup {
    /// Checked constructor: `members` must be closed under products and inverses.
    pub fn new(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        if parent.order() % members.len() != 0 {
            return Err(Error::NotASubgroup("order does not divide the group order".into()));
        }
        for &a in &members {
            if members.binary_search(&parent.inv(a)).is_err() {
                return Err(Error::NotASubgroup("not closed under inverses".into()));
            }
            for &b in &members {
                if members.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(Error::NotASubgroup("not closed under products".into()));
                }
            }
        }
        Ok(Subgroup::from_sorted(parent, members))
    }

    pub(crate) fn from_sorted(parent: Arc<FiniteGroup>, members: Vec<usize>) -> Subgroup {
        Subgroup { parent, members, group: OnceLock::new() }
    }

    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Subgroup {
        let members = parent.closure(gens);
        Subgroup::from_sorted(parent.clone(), members)
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::from_sorted(parent.clone(), (0..parent.order()).collect())
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::from_sorted(parent.clone(), vec![0])
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&h| self.parent.conjugate(g, h)).collect();
        members.sort_unstable();
        Subgroup::from_sorted(self.parent.clone(), members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&m| other.contains(m)).collect();
        Subgroup::from_sorted(self.parent.clone(), members)
    }

    pub fn normalizer(&self) -> Subgroup {
        let members = (0..self.parent.order()).filter(|&g| self.conjugate(g).members == self.members).collect();
        Subgroup::from_sorted(self.parent.clone(), members)
    }

    /// The subgroup as a standalone group; its element `i` is parent element `members[i]`.
    pub fn as_group(&self) -> Arc<FiniteGroup> {
        self.group
            .get_or_init(|| {
                let elements: Vec<Perm> = self.members.iter().map(|&m| self.parent.element(m).clone()).collect();
                Arc::new(FiniteGroup::from_closed_set(self.parent.degree(), elements, Vec::new()))
            })
            .clone()
    }

    pub fn inclusion(&self) -> Embedding {
        Embedding::new_unchecked(self.as_group(), self.parent.clone(), self.members.clone())
    }

    /// The embedding `a ↦ g a g^-1` of this subgroup into `sup`, both seen as
    /// standalone groups. Fails unless `g H g^-1 ⊆ sup`.
    pub fn embed_into(&self, sup: &Subgroup, g: usize) -> Result<Embedding> {
        let image = self
            .members
            .iter()
            .map(|&a| sup.members.binary_search(&self.parent.conjugate(g, a)).ok())
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| Error::NotASubgroup("conjugate is not contained in the target".into()))?;
        Ok(Embedding::new_unchecked(self.as_group(), sup.as_group(), image))
    }

    pub fn is_cyclic(&self) -> bool {
        self.members.iter().any(|&m| self.parent.element_order(m) == self.order())
    }

    pub fn is_cyclic_coprime(&self, p: u64) -> Result<bool> {
        is_cyclic_coprime(&self.as_group(), p)
    }

    pub fn is_p_hypoelementary(&self, p: u64) -> Result<bool> {
        is_p_hypoelementary(&self.as_group(), p)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_group(&self.parent, &other.parent)
    }
}

impl Eq for Subgroup {}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

pub fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// True iff `group` is cyclic of order prime to `p` (`p = 0` means characteristic zero).
pub fn is_cyclic_coprime(group: &FiniteGroup, p: u64) -> Result<bool> {
    if p != 0 && !is_prime(p) {
        return Err(Error::InvalidCharacteristic(p));
    }
    Ok(group.is_cyclic() && (p == 0 || (group.order() as u64).gcd(&p) == 1))
}

/// True iff `group ≅ P ⋊ C` with `P` a normal `p`-subgroup and `C` cyclic of
/// order prime to `p`: the Sylow `p`-subgroup is normal with cyclic quotient.
pub fn is_p_hypoelementary(group: &FiniteGroup, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::InvalidCharacteristic(p));
    }
    let p = p as usize;
    let n = group.order();
    let mut p_part = 1;
    while n % (p_part * p) == 0 {
        p_part *= p;
    }
    let is_p_power = |mut k: usize| {
        while k % p == 0 {
            k /= p;
        }
        k == 1
    };
    let p_elements: Vec<usize> = (0..n).filter(|&g| is_p_power(group.element_order(g))).collect();
    if p_elements.len() != p_part {
        return Ok(false);
    }
    // Order of g modulo the normal Sylow subgroup.
    let quotient_order = |g: usize| {
        let mut x = g;
        let mut k = 1;
        while p_elements.binary_search(&x).is_err() {
            x = group.mul(x, g);
            k += 1;
        }
        k
    };
    Ok((0..n).any(|g| quotient_order(g) == n / p_part))
}

/// One representative per double coset `H g K`, each the smallest element of its class.
pub fn double_cosets(h: &Subgroup, k: &Subgroup) -> Vec<usize> {
    let group = h.parent();
    let mut seen = vec![false; group.order()];
    let mut reps = Vec::new();
    for g in 0..group.order() {
        if seen[g] {
            continue;
        }
        reps.push(g);
        for &a in h.members() {
            let ag = group.mul(a, g);
            for &b in k.members() {
                seen[group.mul(ag, b)] = true;
            }
        }
    }
    reps
}

/// Left cosets `gH`, each given by its sorted members; ordered by smallest member.
pub fn left_cosets(h: &Subgroup) -> Vec<Vec<usize>> {
    let group = h.parent();
    let mut seen = vec![false; group.order()];
    let mut cosets = Vec::new();
    for g in 0..group.order() {
        if seen[g] {
            continue;
        }
        let mut coset: Vec<usize> = h.members().iter().map(|&x| group.mul(g, x)).collect();
        coset.sort_unstable();
        for &c in &coset {
            seen[c] = true;
        }
        cosets.push(coset);
    }
    cosets
}

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub id: usize,
    pub representative: Subgroup,
    pub class_members: Vec<Subgroup>,
    pub normalizer: Subgroup,
    /// `|N_G(H)| / |H|`.
    pub nu: usize,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }

    pub fn is_cyclic(&self) -> bool {
        self.representative.is_cyclic()
    }
}

/// All conjugacy classes of subgroups of a group, sorted by
/// `(order, smallest member set)`. Class `0` is the trivial subgroup and the
/// last class is the whole group.
pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    classes: Vec<SubgroupClass>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl SubgroupLattice {
    pub fn new(group: Arc<FiniteGroup>) -> SubgroupLattice {
        let n = group.order();
        let mut cyclic: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
        for g in 0..n {
            cyclic.insert(group.closure(&[g]), ());
        }
        let cyclic: Vec<Vec<usize>> = cyclic.into_keys().collect();

        // canonical representative -> all conjugates
        let mut found: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
        let mut pending: Vec<Vec<usize>> = Vec::new();
        let add = |members: Vec<usize>, found: &mut BTreeMap<Vec<usize>, Vec<Vec<usize>>>, pending: &mut Vec<Vec<usize>>| {
            let mut conjugates: Vec<Vec<usize>> = (0..n)
                .map(|g| {
                    let mut c: Vec<usize> = members.iter().map(|&h| group.conjugate(g, h)).collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            conjugates.sort();
            conjugates.dedup();
            let rep = conjugates[0].clone();
            if !found.contains_key(&rep) {
                found.insert(rep.clone(), conjugates);
                pending.push(rep);
            }
        };
        for c in &cyclic {
            add(c.clone(), &mut found, &mut pending);
        }
        while let Some(rep) = pending.pop() {
            for c in &cyclic {
                if c.iter().all(|x| rep.binary_search(x).is_ok()) {
                    continue;
                }
                let gens: Vec<usize> = rep.iter().chain(c.iter()).copied().collect();
                let joined = group.closure(&gens);
                add(joined, &mut found, &mut pending);
            }
        }

        let mut entries: Vec<(Vec<usize>, Vec<Vec<usize>>)> = found.into_iter().collect();
        entries.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let mut classes = Vec::with_capacity(entries.len());
        let mut lookup = HashMap::new();
        for (id, (rep, conjugates)) in entries.into_iter().enumerate() {
            let representative = Subgroup::from_sorted(group.clone(), rep);
            let normalizer = representative.normalizer();
            let nu = normalizer.order() / representative.order();
            let class_members: Vec<Subgroup> = conjugates
                .into_iter()
                .map(|m| {
                    lookup.insert(m.clone(), id);
                    Subgroup::from_sorted(group.clone(), m)
                })
                .collect();
            classes.push(SubgroupClass { id, representative, class_members, normalizer, nu });
        }
        SubgroupLattice { group, classes, lookup }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &SubgroupClass {
        &self.classes[id]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }

    /// Class id of the subgroup with the given sorted members.
    pub fn class_of_members(&self, members: &[usize]) -> Option<usize> {
        self.lookup.get(members).copied()
    }

    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.class_of_members(h.members())
    }

    /// Class of the cyclic subgroup generated by `g`.
    pub fn cyclic_class_of(&self, g: usize) -> usize {
        self.lookup[&self.group.closure(&[g])]
    }

    /// Whether some conjugate of class `small` is contained in the representative of `big`.
    pub fn is_subconjugate(&self, small: usize, big: usize) -> bool {
        let big = &self.classes[big].representative;
        self.classes[small].class_members.iter().any(|c| c.is_subgroup_of(big))
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.class_members.len()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn s3_classes() {
        let g = Arc::new(families::symmetric(3).unwrap());
        let l = SubgroupLattice::new(g);
        let orders: Vec<usize> = l.classes().iter().map(|c| c.order()).collect();
        let nus: Vec<usize> = l.classes().iter().map(|c| c.nu).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(nus, vec![6, 1, 2, 1]);
    }

    #[test]
    fn a4_classes() {
        let l = SubgroupLattice::new(Arc::new(families::alternating(4).unwrap()));
        let orders: Vec<usize> = l.classes().iter().map(|c| c.order()).collect();
        let sizes: Vec<usize> = l.classes().iter().map(|c| c.class_members.len()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 12]);
        assert_eq!(sizes, vec![1, 3, 4, 1, 1]);
    }

    #[test]
    fn trivial_lattice() {
        let l = SubgroupLattice::new(Arc::new(families::cyclic(1).unwrap()));
        assert_eq!(l.len(), 1);
        assert_eq!(l.top(), 0);
    }

    #[test]
    fn double_coset_examples() {
        let g = Arc::new(families::symmetric(3).unwrap());
        let l = SubgroupLattice::new(g.clone());
        let c2 = &l.class(1).representative;
        let c3 = &l.class(2).representative;
        let reps = double_cosets(c2, c2);
        assert_eq!(reps.len(), 2);
        assert_eq!(reps[0], 0);
        assert_eq!(double_cosets(&Subgroup::whole(&g), c2), vec![0]);
        assert_eq!(double_cosets(c3, &Subgroup::trivial(&g)).len(), 2);
    }

    #[test]
    fn predicates() {
        let c6 = families::cyclic(6).unwrap();
        assert!(is_cyclic_coprime(&c6, 5).unwrap());
        assert!(!is_cyclic_coprime(&c6, 2).unwrap());
        assert!(is_cyclic_coprime(&c6, 0).unwrap());
        assert_eq!(is_cyclic_coprime(&c6, 4), Err(Error::InvalidCharacteristic(4)));
        assert_eq!(is_p_hypoelementary(&c6, 0), Err(Error::InvalidCharacteristic(0)));

        let a4 = Arc::new(families::alternating(4).unwrap());
        let l = SubgroupLattice::new(a4);
        let v4 = &l.class(3).representative;
        assert!(!v4.is_cyclic_coprime(0).unwrap());

        let s3 = families::symmetric(3).unwrap();
        assert!(is_p_hypoelementary(&s3, 3).unwrap());
        assert!(!is_p_hypoelementary(&s3, 2).unwrap());
        for p in [2, 3, 5, 7] {
            assert!(is_p_hypoelementary(&c6, p).unwrap());
        }
    }

    #[test]
    fn subgroup_validation() {
        let g = Arc::new(families::symmetric(3).unwrap());
        assert!(Subgroup::new(g.clone(), vec![0, 1, 2]).is_err());
        assert!(Subgroup::new(g.clone(), vec![1]).is_err());
        let t = Subgroup::generated(&g, &[1]);
        assert!(Subgroup::new(g, t.members().to_vec()).is_ok());
    }
}
