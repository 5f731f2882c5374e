//! Permutation generators for the named group families.
//!
//! `D(n)` is the dihedral group of order `2n`.

use crate::error::Result;
use crate::group::{generate_group, FiniteGroup, DEFAULT_MAX_ORDER};
use crate::perm::Perm;

/// A degree together with generators of that degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub degree: usize,
    pub perms: Vec<Perm>,
}

impl Generators {
    pub fn build(&self, max_order: usize) -> Result<FiniteGroup> {
        generate_group(self.degree, &self.perms, max_order)
    }

    /// Generators of the direct product acting on the disjoint union of points.
    pub fn product(&self, other: &Generators) -> Generators {
        let degree = self.degree + other.degree;
        let perms = self
            .perms
            .iter()
            .map(|p| p.shifted(0, degree))
            .chain(other.perms.iter().map(|p| p.shifted(self.degree, degree)))
            .collect();
        Generators { degree, perms }
    }
}

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Perm {
    Perm::from_cycles(degree, &[points.into_iter().collect()]).expect("valid cycle")
}

pub fn cyclic_generators(n: usize) -> Generators {
    let n = n.max(1);
    let perms = if n > 1 { vec![cycle(n, 0..n)] } else { Vec::new() };
    Generators { degree: n, perms }
}

pub fn dihedral_generators(n: usize) -> Generators {
    match n {
        0 | 1 => cyclic_generators(2),
        2 => cyclic_generators(2).product(&cyclic_generators(2)),
        _ => {
            let rotation = cycle(n, 0..n);
            let reflection = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).expect("valid reflection");
            Generators { degree: n, perms: vec![rotation, reflection] }
        }
    }
}

pub fn symmetric_generators(n: usize) -> Generators {
    let n = n.max(1);
    let perms = match n {
        1 => Vec::new(),
        2 => vec![cycle(2, [0, 1])],
        _ => vec![cycle(n, [0, 1]), cycle(n, 0..n)],
    };
    Generators { degree: n, perms }
}

pub fn alternating_generators(n: usize) -> Generators {
    let n = n.max(1);
    let perms = (2..n).map(|i| cycle(n, [0, 1, i])).collect();
    Generators { degree: n, perms }
}

/// The quaternion group through its regular representation on 8 points.
pub fn quaternion_generators() -> Generators {
    let i = Perm::from_cycles(8, &[vec![0, 1, 3, 6], vec![2, 5, 7, 4]]).expect("valid");
    let j = Perm::from_cycles(8, &[vec![0, 2, 3, 7], vec![1, 4, 6, 5]]).expect("valid");
    Generators { degree: 8, perms: vec![i, j] }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    cyclic_generators(n).build(DEFAULT_MAX_ORDER)
}

pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    dihedral_generators(n).build(DEFAULT_MAX_ORDER)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    symmetric_generators(n).build(DEFAULT_MAX_ORDER)
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    alternating_generators(n).build(DEFAULT_MAX_ORDER)
}

pub fn quaternion() -> Result<FiniteGroup> {
    quaternion_generators().build(DEFAULT_MAX_ORDER)
}
