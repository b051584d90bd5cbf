//! Product σ-algebras, rectangles, product-form detection and the
//! distributivity report for `(A⊗F)∩(A⊗G)` against `A⊗(F∩G)`.

use crate::error::SpaceError;
use crate::sigma::{is_sub, meet, SigmaAlgebra};
use crate::space::{Bits, GroundSet, Partition, Points, Subset};

/// Bits of the rectangle `left × right` inside `space`.
fn rectangle_bits(space: &GroundSet, left: Bits, right: Bits) -> Bits {
    let width = space.factors().expect("product space").1.size();
    Points(left).fold(0, |acc, x| acc | right << (x * width))
}

/// The rectangle `left × right` as a subset of the product of their spaces.
pub fn rectangle(left: &Subset, right: &Subset) -> Result<Subset, SpaceError> {
    let space = GroundSet::product(left.space(), right.space())?;
    let bits = rectangle_bits(&space, left.bits(), right.bits());
    Ok(Subset::from_bits_unchecked(&space, bits))
}

/// `A ⊗ F`: atoms are the rectangles `a × f` over all atom pairs.
pub fn product(a: &SigmaAlgebra, f: &SigmaAlgebra) -> Result<SigmaAlgebra, SpaceError> {
    let space = GroundSet::product(a.space(), f.space())?;
    let mut atoms = Vec::with_capacity(a.num_atoms() * f.num_atoms());
    for &x in a.atoms().block_bits() {
        for &u in f.atoms().block_bits() {
            atoms.push(rectangle_bits(&space, x, u));
        }
    }
    Ok(SigmaAlgebra::from_atoms(Partition::from_disjoint_bits(
        &space, atoms,
    )))
}

fn projections(space: &GroundSet, bits: Bits) -> Result<(Bits, Bits), SpaceError> {
    let (_, right) = space.factors().ok_or(SpaceError::NotProduct)?;
    let width = right.size();
    let row: Bits = if width == Bits::BITS as usize {
        Bits::MAX
    } else {
        (1 << width) - 1
    };
    let mut left_bits = 0;
    let mut right_bits = 0;
    let mut rest = bits;
    let mut x = 0;
    while rest != 0 {
        let slice = rest & row;
        if slice != 0 {
            left_bits |= 1 << x;
            right_bits |= slice;
        }
        rest = rest.checked_shr(width as u32).unwrap_or(0);
        x += 1;
    }
    Ok((left_bits, right_bits))
}

/// First coordinates occurring in `set`.
pub fn project_left(set: &Subset) -> Result<Subset, SpaceError> {
    let (bits, _) = projections(set.space(), set.bits())?;
    let (left, _) = set.space().factors().expect("checked above");
    Ok(Subset::from_bits_unchecked(left, bits))
}

/// Second coordinates occurring in `set`.
pub fn project_right(set: &Subset) -> Result<Subset, SpaceError> {
    let (_, bits) = projections(set.space(), set.bits())?;
    let (_, right) = set.space().factors().expect("checked above");
    Ok(Subset::from_bits_unchecked(right, bits))
}

fn is_rectangle_bits(space: &GroundSet, bits: Bits) -> Result<bool, SpaceError> {
    let (l, r) = projections(space, bits)?;
    Ok(rectangle_bits(space, l, r) == bits)
}

/// `set` equals the product of its two projections. The empty set counts.
pub fn is_rectangle(set: &Subset) -> Result<bool, SpaceError> {
    is_rectangle_bits(set.space(), set.bits())
}

/// Decomposes `h` as `A0 ⊗ E` when its atoms form a full grid of rectangles.
pub fn product_form(h: &SigmaAlgebra) -> Result<Option<(SigmaAlgebra, SigmaAlgebra)>, SpaceError> {
    let space = h.space();
    let (left, right) = space.factors().ok_or(SpaceError::NotProduct)?;
    let mut lefts: Vec<Bits> = Vec::new();
    let mut rights: Vec<Bits> = Vec::new();
    for &atom in h.atoms().block_bits() {
        let (l, r) = projections(space, atom)?;
        if rectangle_bits(space, l, r) != atom {
            return Ok(None);
        }
        if !lefts.contains(&l) {
            lefts.push(l);
        }
        if !rights.contains(&r) {
            rights.push(r);
        }
    }
    let (Ok(a0), Ok(e)) = (
        Partition::from_block_bits(left, &lefts),
        Partition::from_block_bits(right, &rights),
    ) else {
        return Ok(None);
    };
    let (a0, e) = (SigmaAlgebra::from_atoms(a0), SigmaAlgebra::from_atoms(e));
    if &product(&a0, &e)? == h {
        Ok(Some((a0, e)))
    } else {
        Ok(None)
    }
}

/// Maps a σ-algebra on `X×U` to the mirrored one on `U×X`.
pub fn transpose(h: &SigmaAlgebra) -> Result<SigmaAlgebra, SpaceError> {
    let space = h.space();
    let (left, right) = space.factors().ok_or(SpaceError::NotProduct)?;
    let flipped = GroundSet::product(right, left)?;
    let atoms = h
        .atoms()
        .block_bits()
        .iter()
        .map(|&atom| {
            Points(atom).fold(0, |acc: Bits, i| {
                let (x, u) = (i / right.size(), i % right.size());
                acc | 1 << (u * left.size() + x)
            })
        })
        .collect();
    Ok(SigmaAlgebra::from_atoms(Partition::from_disjoint_bits(
        &flipped, atoms,
    )))
}

/// The diagonal `{(x, x)}` of `X × X`.
pub fn diagonal(space: &GroundSet) -> Result<Subset, SpaceError> {
    let square = GroundSet::product(space, space)?;
    let points = (0..space.size()).map(|x| x * space.size() + x);
    Subset::from_points(&square, points)
}

/// Outcome of comparing `(A⊗F)∩(A⊗G)` with `A⊗(F∩G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributivityReport {
    /// `(A⊗F) ∩ (A⊗G)`
    pub lhs: SigmaAlgebra,
    /// `A ⊗ (F∩G)`
    pub rhs: SigmaAlgebra,
    /// `rhs ⊆ lhs`
    pub inclusion_ok: bool,
    pub equal: bool,
    /// Every atom of `lhs` is a rectangle.
    pub atoms_rectangles: bool,
    /// `equal ⟺ atoms_rectangles`
    pub equivalence_ok: bool,
}

impl DistributivityReport {
    /// Every atom of `lhs` is a single point.
    pub fn lhs_separates_points(&self) -> bool {
        self.lhs.atoms().is_discrete()
    }
}

pub fn distributivity_report(
    a: &SigmaAlgebra,
    f: &SigmaAlgebra,
    g: &SigmaAlgebra,
) -> Result<DistributivityReport, SpaceError> {
    f.space().check_same(g.space())?;
    let lhs = meet(&product(a, f)?, &product(a, g)?)?;
    let rhs = product(a, &meet(f, g)?)?;
    let inclusion_ok = is_sub(&rhs, &lhs)?;
    let equal = lhs == rhs;
    let mut atoms_rectangles = true;
    for &atom in lhs.atoms().block_bits() {
        if !is_rectangle_bits(lhs.space(), atom)? {
            atoms_rectangles = false;
            break;
        }
    }
    Ok(DistributivityReport {
        lhs,
        rhs,
        inclusion_ok,
        equal,
        atoms_rectangles,
        equivalence_ok: equal == atoms_rectangles,
    })
}
