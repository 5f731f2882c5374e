//! Finite G-sets given by explicit action tables.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Embedding, FiniteGroup};
use crate::subgroup::{left_cosets, same_group, Subgroup};

/// A finite set with a left action of a finite group.
#[derive(Clone)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    action: Vec<usize>,
    orbit_of: Vec<usize>,
    basepoints: Vec<usize>,
    transporters: Vec<usize>,
    stabilizers: Vec<Subgroup>,
}

impl GSet {
    /// Builds a G-set from an action function, checking the action axioms.
    pub fn new(group: Arc<FiniteGroup>, size: usize, act: impl Fn(usize, usize) -> usize) -> Result<GSet> {
        let n = group.order();
        let mut action = vec![0; n * size];
        for g in 0..n {
            for x in 0..size {
                let y = act(g, x);
                if y >= size {
                    return Err(Error::NotEquivariant(format!("point {y} out of range")));
                }
                action[g * size + x] = y;
            }
        }
        for x in 0..size {
            if action[x] != x {
                return Err(Error::NotEquivariant("identity moves a point".into()));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                for x in 0..size {
                    if action[g * size + action[h * size + x]] != action[gh * size + x] {
                        return Err(Error::NotEquivariant("action is not compatible with products".into()));
                    }
                }
            }
        }
        Ok(GSet::from_table(group, size, action))
    }

    fn from_table(group: Arc<FiniteGroup>, size: usize, action: Vec<usize>) -> GSet {
        let n = group.order();
        let mut orbit_of = vec![usize::MAX; size];
        let mut transporters = vec![0; size];
        let mut basepoints = Vec::new();
        let mut stabilizers = Vec::new();
        for x in 0..size {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let orbit = basepoints.len();
            basepoints.push(x);
            let mut stab = Vec::new();
            for g in 0..n {
                let y = action[g * size + x];
                if y == x {
                    stab.push(g);
                }
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = orbit;
                    transporters[y] = g;
                }
            }
            stabilizers.push(Subgroup::from_sorted(group.clone(), stab));
        }
        GSet { group, size, action, orbit_of, basepoints, transporters, stabilizers }
    }

    pub fn empty(group: &Arc<FiniteGroup>) -> GSet {
        GSet::from_table(group.clone(), 0, Vec::new())
    }

    pub fn point(group: &Arc<FiniteGroup>) -> GSet {
        GSet::from_table(group.clone(), 1, vec![0; group.order()])
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: &Arc<FiniteGroup>) -> GSet {
        let n = group.order();
        let action = (0..n).flat_map(|g| (0..n).map(move |x| (g, x))).map(|(g, x)| group.mul(g, x)).collect();
        GSet::from_table(group.clone(), n, action)
    }

    /// `G/H`, points ordered by the smallest element of each coset.
    pub fn cosets(h: &Subgroup) -> GSet {
        let group = h.parent().clone();
        let cosets = left_cosets(h);
        let mut coset_of = vec![0; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &g in c {
                coset_of[g] = i;
            }
        }
        let m = cosets.len();
        let mut action = vec![0; group.order() * m];
        for g in 0..group.order() {
            for (i, c) in cosets.iter().enumerate() {
                action[g * m + i] = coset_of[group.mul(g, c[0])];
            }
        }
        GSet::from_table(group, m, action)
    }

    pub fn disjoint_union(parts: &[GSet]) -> Result<GSet> {
        let group = parts.first().map(|p| p.group.clone()).ok_or(Error::GroupMismatch)?;
        if parts.iter().any(|p| !same_group(&p.group, &group)) {
            return Err(Error::GroupMismatch);
        }
        let size: usize = parts.iter().map(|p| p.size).sum();
        let mut action = Vec::with_capacity(group.order() * size);
        for g in 0..group.order() {
            let mut offset = 0;
            for p in parts {
                action.extend((0..p.size).map(|x| offset + p.act(g, x)));
                offset += p.size;
            }
        }
        Ok(GSet::from_table(group, size, action))
    }

    /// `X × Y` with the diagonal action; point `(x, y)` has index `x * |Y| + y`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let size = self.size * other.size;
        let mut action = Vec::with_capacity(self.group.order() * size);
        for g in 0..self.group.order() {
            for x in 0..self.size {
                for y in 0..other.size {
                    action.push(self.act(g, x) * other.size + other.act(g, y));
                }
            }
        }
        Ok(GSet::from_table(self.group.clone(), size, action))
    }

    /// `G ×_H Y` for an `H`-set `Y` and `φ: H → G`, with the `H`-equivariant
    /// inclusion `y ↦ [e, y]`. Point `[r_i, y]` has index `i * |Y| + y`, where
    /// `r_i` is the smallest element of the `i`-th left coset of `φ(H)`.
    pub fn induced(emb: &Embedding, y: &GSet) -> Result<(GSet, Vec<usize>)> {
        if !same_group(emb.source(), &y.group) {
            return Err(Error::GroupMismatch);
        }
        let group = emb.target().clone();
        let image = Subgroup::new(group.clone(), emb.image_set())?;
        let cosets = left_cosets(&image);
        let mut coset_of = vec![0; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &g in c {
                coset_of[g] = i;
            }
        }
        let m = y.size;
        let size = cosets.len() * m;
        let mut action = Vec::with_capacity(group.order() * size);
        for g in 0..group.order() {
            for c in &cosets {
                let gr = group.mul(g, c[0]);
                let j = coset_of[gr];
                let h = emb.preimage(group.mul(group.inv(cosets[j][0]), gr)).expect("same coset");
                action.extend((0..m).map(|p| j * m + y.act(h, p)));
            }
        }
        let base = coset_of[group.identity()];
        let inclusion = (0..m).map(|p| base * m + p).collect();
        Ok((GSet::from_table(group, size, action), inclusion))
    }

    /// The same points with the action pulled back along `emb`.
    pub fn restrict(&self, emb: &Embedding) -> Result<GSet> {
        if !same_group(emb.target(), &self.group) {
            return Err(Error::GroupMismatch);
        }
        let n = emb.source().order();
        let mut action = Vec::with_capacity(n * self.size);
        for a in 0..n {
            let g = emb.map(a);
            action.extend((0..self.size).map(|x| self.act(g, x)));
        }
        Ok(GSet::from_table(emb.source().clone(), self.size, action))
    }

    /// Restricts the action to `emb` and to an invariant subset of points.
    pub fn sub_gset(&self, emb: &Embedding, points: &[usize]) -> Result<GSet> {
        let mut local = vec![usize::MAX; self.size];
        for (i, &p) in points.iter().enumerate() {
            local[p] = i;
        }
        let n = emb.source().order();
        let mut action = Vec::with_capacity(n * points.len());
        for a in 0..n {
            let g = emb.map(a);
            for &p in points {
                let y = local[self.act(g, p)];
                if y == usize::MAX {
                    return Err(Error::NotEquivariant("subset is not invariant".into()));
                }
                action.push(y);
            }
        }
        Ok(GSet::from_table(emb.source().clone(), points.len(), action))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    pub fn num_orbits(&self) -> usize {
        self.basepoints.len()
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    pub fn basepoint(&self, orbit: usize) -> usize {
        self.basepoints[orbit]
    }

    pub fn basepoints(&self) -> &[usize] {
        &self.basepoints
    }

    /// Smallest `t` with `t · basepoint = x`.
    pub fn transporter(&self, x: usize) -> usize {
        self.transporters[x]
    }

    /// Stabilizer of the basepoint of `orbit`.
    pub fn orbit_stabilizer(&self, orbit: usize) -> &Subgroup {
        &self.stabilizers[orbit]
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let members = (0..self.group.order()).filter(|&g| self.act(g, x) == x).collect();
        Subgroup::from_sorted(self.group.clone(), members)
    }

    pub fn orbit(&self, orbit: usize) -> Vec<usize> {
        (0..self.size).filter(|&x| self.orbit_of[x] == orbit).collect()
    }

    /// Points fixed by every element of `h`, in increasing order.
    pub fn fixed_point_indices(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.size).filter(|&x| h.members().iter().all(|&g| self.act(g, x) == x)).collect()
    }

    /// Checks that `map: self → target` commutes with the action.
    pub fn check_equivariant(&self, target: &GSet, map: &[usize]) -> Result<()> {
        if !same_group(&self.group, &target.group) {
            return Err(Error::GroupMismatch);
        }
        if map.len() != self.size || map.iter().any(|&y| y >= target.size) {
            return Err(Error::NotEquivariant("map has the wrong shape".into()));
        }
        for g in 0..self.group.order() {
            for x in 0..self.size {
                if map[self.act(g, x)] != target.act(g, map[x]) {
                    return Err(Error::NotEquivariant(format!("fails at element {g}, point {x}")));
                }
            }
        }
        Ok(())
    }
}

/// `X^H` as an `N_G(H)`-set, together with its inclusion into `X`.
#[derive(Clone)]
pub struct FixedPoints {
    pub normalizer: Subgroup,
    pub gset: GSet,
    pub inclusion: Vec<usize>,
}

pub fn fixed_points(x: &GSet, h: &Subgroup) -> Result<FixedPoints> {
    if !same_group(h.parent(), x.group()) {
        return Err(Error::GroupMismatch);
    }
    let normalizer = h.normalizer();
    let inclusion = x.fixed_point_indices(h);
    let gset = x.sub_gset(&normalizer.inclusion(), &inclusion)?;
    Ok(FixedPoints { normalizer, gset, inclusion })
}
