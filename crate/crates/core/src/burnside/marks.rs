use num_traits::Zero;
use serde::Serialize;

use crate::rational::{int, Rational};
use crate::subgroup::{left_cosets, SubgroupLattice};

/// `M[H][K] = |(G/H)^K|`, rows and columns in class order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableOfMarks {
    pub rows: Vec<Vec<u64>>,
}

impl TableOfMarks {
    /// Counts, for each pair of class representatives, the cosets `gH`
    /// with `K·gH = gH`.
    pub fn new(lattice: &SubgroupLattice) -> TableOfMarks {
        let group = lattice.group();
        let rows = lattice
            .classes()
            .iter()
            .map(|h| {
                let h = &h.representative;
                let cosets = left_cosets(h);
                lattice
                    .classes()
                    .iter()
                    .map(|k| {
                        let k = &k.representative;
                        cosets
                            .iter()
                            .filter(|c| {
                                let g = c[0];
                                let gi = group.inv(g);
                                k.members().iter().all(|&x| h.contains(group.mul(gi, group.mul(x, g))))
                            })
                            .count() as u64
                    })
                    .collect()
            })
            .collect();
        TableOfMarks { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, h: usize, k: usize) -> u64 {
        self.rows[h][k]
    }

    /// Ghost image of a coefficient vector over the basis `⟨H⟩`.
    pub fn mark_vector(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let n = self.size();
        let mut out = vec![Rational::zero(); n];
        for (h, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate() {
                let m = self.rows[h][k];
                if m != 0 {
                    *slot += c * int(m as i64);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use std::sync::Arc;

    #[test]
    fn s3_table() {
        let l = SubgroupLattice::new(Arc::new(families::symmetric(3).unwrap()));
        let t = TableOfMarks::new(&l);
        assert_eq!(t.rows, vec![vec![6, 0, 0, 0], vec![3, 1, 0, 0], vec![2, 0, 2, 0], vec![1, 1, 1, 1]]);
    }

    #[test]
    fn trivial_table() {
        let l = SubgroupLattice::new(Arc::new(families::cyclic(1).unwrap()));
        assert_eq!(TableOfMarks::new(&l).rows, vec![vec![1]]);
    }

    #[test]
    fn shape_invariants() {
        for g in [families::symmetric(4).unwrap(), families::quaternion().unwrap(), families::dihedral(6).unwrap()] {
            let order = g.order() as u64;
            let l = SubgroupLattice::new(Arc::new(g));
            let t = TableOfMarks::new(&l);
            for (h, class) in l.classes().iter().enumerate() {
                assert_eq!(t.get(h, h), class.nu as u64);
                assert_eq!(t.get(h, 0), order / class.order() as u64);
                for k in 0..l.len() {
                    if t.get(h, k) != 0 {
                        assert!(k <= h && l.is_subconjugate(k, h));
                    }
                }
            }
        }
    }
}
