//! σ-algebras on finite ground sets.
//!
//! A finite σ-algebra is exactly the family of unions of the blocks of some
//! partition, its atoms. [`SigmaAlgebra`] stores only that partition; the
//! `2^k` member sets are never materialized.

use std::fmt;

use crate::error::SpaceError;
use crate::space::{overlap_components, refines, Bits, GroundSet, Partition, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaAlgebra {
    atoms: Partition,
}

impl SigmaAlgebra {
    pub fn from_atoms(atoms: Partition) -> Self {
        SigmaAlgebra { atoms }
    }

    /// `{∅, X}`.
    pub fn trivial(space: &GroundSet) -> Self {
        Self::from_atoms(Partition::trivial(space))
    }

    /// The power set.
    pub fn discrete(space: &GroundSet) -> Self {
        Self::from_atoms(Partition::discrete(space))
    }

    pub fn space(&self) -> &GroundSet {
        self.atoms.space()
    }

    pub fn atoms(&self) -> &Partition {
        &self.atoms
    }

    pub fn into_atoms(self) -> Partition {
        self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.num_blocks()
    }

    /// Atom containing `point`.
    pub fn atom_of(&self, point: usize) -> Option<Subset> {
        self.atoms
            .block_of(point)
            .map(|b| Subset::from_bits_unchecked(self.space(), b))
    }
}

impl fmt::Display for SigmaAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.atoms, f)
    }
}

/// The smallest σ-algebra containing `family`.
///
/// The atom of a point `x` is the intersection, over every generator `S`, of
/// `S` when `x ∈ S` and of its complement otherwise.
pub fn generate(space: &GroundSet, family: &[Subset]) -> Result<SigmaAlgebra, SpaceError> {
    for s in family {
        space.check_same(s.space())?;
    }
    let full = space.full().bits();
    let mut covered: Bits = 0;
    let mut atoms = Vec::new();
    for x in 0..space.size() {
        if covered >> x & 1 == 1 {
            continue;
        }
        let atom = family.iter().fold(full, |acc, s| {
            if s.contains(x) {
                acc & s.bits()
            } else {
                acc & !s.bits()
            }
        });
        covered |= atom;
        atoms.push(atom);
    }
    Ok(SigmaAlgebra::from_atoms(Partition::from_disjoint_bits(
        space, atoms,
    )))
}

/// Membership: `set` is a union of atoms, i.e. it splits no atom.
pub fn contains(sigma: &SigmaAlgebra, set: &Subset) -> Result<bool, SpaceError> {
    sigma.space().check_same(set.space())?;
    let s = set.bits();
    Ok(sigma
        .atoms
        .block_bits()
        .iter()
        .all(|&a| a & s == 0 || a & s == a))
}

/// `F ∩ G`, the largest σ-algebra inside both.
pub fn meet(f: &SigmaAlgebra, g: &SigmaAlgebra) -> Result<SigmaAlgebra, SpaceError> {
    overlap_components(&f.atoms, &g.atoms).map(SigmaAlgebra::from_atoms)
}

/// `F ∨ G`, the smallest σ-algebra containing both; its atoms are the
/// nonempty intersections of an atom of `F` with an atom of `G`.
pub fn join(f: &SigmaAlgebra, g: &SigmaAlgebra) -> Result<SigmaAlgebra, SpaceError> {
    f.space().check_same(g.space())?;
    let mut atoms = Vec::with_capacity(f.num_atoms() * g.num_atoms());
    for &a in f.atoms.block_bits() {
        for &b in g.atoms.block_bits() {
            if a & b != 0 {
                atoms.push(a & b);
            }
        }
    }
    Ok(SigmaAlgebra::from_atoms(Partition::from_disjoint_bits(
        f.space(),
        atoms,
    )))
}

/// `F ⊆ G`: the atoms of `G` refine those of `F`.
pub fn is_sub(f: &SigmaAlgebra, g: &SigmaAlgebra) -> Result<bool, SpaceError> {
    refines(&g.atoms, &f.atoms)
}

/// Every atom is a singleton.
pub fn separates_points(f: &SigmaAlgebra) -> bool {
    f.atoms.is_discrete()
}
