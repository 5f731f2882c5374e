use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{are_isomorphic, FiniteGroup};
use crate::gset::{fixed_points, GSet};
use crate::subgroup::{Subgroup, SubgroupLattice};

/// One piece `X^{H'}/N_G(H')` of the inertia decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InertiaSummand {
    /// Class id of `H'`.
    pub class: usize,
    /// `|X^{H'}|`.
    pub fixed_points: usize,
    /// For each `N_G(H')`-orbit of `X^{H'}`, the G-class of its stabilizer
    /// `N_G(H') ∩ Stab(x)`; sorted.
    pub orbit_types: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InertiaReport {
    pub class: usize,
    pub summands: Vec<InertiaSummand>,
}

impl InertiaReport {
    /// Multiset of `(H' class, stabilizer class)` over all orbits, sorted.
    pub fn orbit_type_multiset(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.summands.iter().flat_map(|s| s.orbit_types.iter().map(move |&t| (s.class, t))).collect();
        out.sort_unstable();
        out
    }
}

/// Classes `H'` of subgroups abstractly isomorphic to the class `H`.
pub fn isomorphic_classes(lattice: &SubgroupLattice, class: usize) -> Vec<usize> {
    isomorphic_classes_to(lattice, &lattice.class(class).representative.as_group())
}

/// Classes of subgroups abstractly isomorphic to `h`.
pub fn isomorphic_classes_to(lattice: &SubgroupLattice, h: &FiniteGroup) -> Vec<usize> {
    lattice
        .classes()
        .iter()
        .filter(|c| c.order() == h.order() && are_isomorphic(&c.representative.as_group(), h))
        .map(|c| c.id)
        .collect()
}

/// `X^{H'}` as an `N_G(H')`-set for one chosen subgroup `H'`: its size, and
/// the G-classes of its orbit stabilizers.
pub fn fixed_locus_orbit_types(lattice: &SubgroupLattice, x: &GSet, h: &Subgroup) -> Result<(usize, Vec<usize>)> {
    let fp = fixed_points(x, h)?;
    let n_members = fp.normalizer.members();
    let mut types: Vec<usize> = (0..fp.gset.num_orbits())
        .map(|o| {
            let local = fp.gset.orbit_stabilizer(o).members();
            let members: Vec<usize> = local.iter().map(|&i| n_members[i]).collect();
            lattice.class_of_members(&members).expect("stabilizer is a subgroup")
        })
        .collect();
    types.sort_unstable();
    Ok((fp.gset.size(), types))
}

/// The inertia decomposition `⊔_{H' ≅ H} X^{H'}/N_G(H')`.
pub fn wild_inertia(lattice: &SubgroupLattice, x: &GSet, class: usize) -> Result<InertiaReport> {
    if class >= lattice.len() {
        return Err(Error::UnknownClass(class));
    }
    let summands = inertia_summands(lattice, x, &lattice.class(class).representative.as_group())?;
    Ok(InertiaReport { class, summands })
}

/// The summands for an abstract group `h`; empty when `G` has no subgroup
/// isomorphic to `h`.
pub fn inertia_summands(lattice: &SubgroupLattice, x: &GSet, h: &FiniteGroup) -> Result<Vec<InertiaSummand>> {
    isomorphic_classes_to(lattice, h)
        .into_iter()
        .map(|id| {
            let (fixed_points, orbit_types) = fixed_locus_orbit_types(lattice, x, &lattice.class(id).representative)?;
            Ok(InertiaSummand { class: id, fixed_points, orbit_types })
        })
        .collect()
}

/// The same multiset computed from the definition: G-orbits of pairs
/// `(x, K)` with `K ≤ Stab(x)` and `K ≅ H`, each recorded as
/// `(class of K, class of the pair's stabilizer)`.
pub fn inertia_pairs(lattice: &SubgroupLattice, x: &GSet, class: usize) -> Result<Vec<(usize, usize)>> {
    if class >= lattice.len() {
        return Err(Error::UnknownClass(class));
    }
    let group = lattice.group();
    let mut subgroups: Vec<(usize, &Subgroup)> = Vec::new();
    for id in isomorphic_classes(lattice, class) {
        subgroups.extend(lattice.class(id).class_members.iter().map(|k| (id, k)));
    }
    let index: HashMap<&[usize], usize> = subgroups.iter().enumerate().map(|(i, (_, k))| (k.members(), i)).collect();
    let conj = |g: usize, k: usize| -> usize {
        let mut m: Vec<usize> = subgroups[k].1.members().iter().map(|&a| group.conjugate(g, a)).collect();
        m.sort_unstable();
        index[m.as_slice()]
    };
    let n_sub = subgroups.len();
    let mut seen = vec![false; x.size() * n_sub];
    let mut out = Vec::new();
    for p in 0..x.size() {
        for k in 0..n_sub {
            if seen[p * n_sub + k] || !subgroups[k].1.members().iter().all(|&a| x.act(a, p) == p) {
                continue;
            }
            let mut stab = Vec::new();
            for g in 0..group.order() {
                let (q, l) = (x.act(g, p), conj(g, k));
                seen[q * n_sub + l] = true;
                if q == p && l == k {
                    stab.push(g);
                }
            }
            let stab_class = lattice.class_of_members(&stab).expect("stabilizer is a subgroup");
            out.push((subgroups[k].0, stab_class));
        }
    }
    out.sort_unstable();
    Ok(out)
}
