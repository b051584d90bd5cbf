//! Finite ground sets, subsets stored as bit-vectors, and set partitions in
//! canonical form.
//!
//! Points of a ground set are the integers `0..size`. A ground set may carry a
//! product factorization `X×U`, in which case the pair `(x, u)` lives at index
//! `x·|U| + u` (row-major).

use std::fmt;
use std::sync::Arc;

use crate::error::SpaceError;

/// Bit storage for one subset. Bit `i` set means point `i` is a member.
pub type Bits = u128;

/// A finite set of points `0..size`, optionally factored as a product of two
/// smaller ground sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    size: usize,
    factors: Option<Arc<(GroundSet, GroundSet)>>,
}

impl GroundSet {
    /// Largest number of points a ground set may have.
    pub const MAX_POINTS: usize = Bits::BITS as usize;

    pub fn new(size: usize) -> Result<Self, SpaceError> {
        if size == 0 {
            return Err(SpaceError::EmptyGround);
        }
        if size > Self::MAX_POINTS {
            return Err(SpaceError::TooLarge {
                size,
                max: Self::MAX_POINTS,
            });
        }
        Ok(GroundSet {
            size,
            factors: None,
        })
    }

    /// The product space `left × right` with row-major indexing.
    pub fn product(left: &GroundSet, right: &GroundSet) -> Result<Self, SpaceError> {
        let size = left.size * right.size;
        if size > Self::MAX_POINTS {
            return Err(SpaceError::TooLarge {
                size,
                max: Self::MAX_POINTS,
            });
        }
        Ok(GroundSet {
            size,
            factors: Some(Arc::new((left.clone(), right.clone()))),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn factors(&self) -> Option<(&GroundSet, &GroundSet)> {
        self.factors.as_deref().map(|(l, r)| (l, r))
    }

    pub fn is_product(&self) -> bool {
        self.factors.is_some()
    }

    /// Index of the pair `(x, u)` in a product space.
    pub fn pair_index(&self, x: usize, u: usize) -> Result<usize, SpaceError> {
        let (left, right) = self.factors().ok_or(SpaceError::NotProduct)?;
        if x >= left.size {
            return Err(SpaceError::PointOutOfRange {
                point: x,
                size: left.size,
            });
        }
        if u >= right.size {
            return Err(SpaceError::PointOutOfRange {
                point: u,
                size: right.size,
            });
        }
        Ok(x * right.size + u)
    }

    /// Inverse of [`GroundSet::pair_index`].
    pub fn split_index(&self, index: usize) -> Result<(usize, usize), SpaceError> {
        let (_, right) = self.factors().ok_or(SpaceError::NotProduct)?;
        self.check_point(index)?;
        Ok((index / right.size, index % right.size))
    }

    pub(crate) fn mask(&self) -> Bits {
        if self.size == Self::MAX_POINTS {
            Bits::MAX
        } else {
            (1 << self.size) - 1
        }
    }

    pub(crate) fn check_point(&self, point: usize) -> Result<(), SpaceError> {
        if point < self.size {
            Ok(())
        } else {
            Err(SpaceError::PointOutOfRange {
                point,
                size: self.size,
            })
        }
    }

    pub(crate) fn check_same(&self, other: &GroundSet) -> Result<(), SpaceError> {
        if self == other {
            Ok(())
        } else {
            Err(SpaceError::MismatchedSpaces {
                left: self.size,
                right: other.size,
            })
        }
    }

    pub fn empty(&self) -> Subset {
        Subset {
            space: self.clone(),
            bits: 0,
        }
    }

    pub fn full(&self) -> Subset {
        Subset {
            space: self.clone(),
            bits: self.mask(),
        }
    }

    /// Renders a point; product points print as (nested) pairs.
    pub fn format_point(&self, point: usize) -> String {
        match self.factors() {
            Some((left, right)) => {
                let (x, u) = (point / right.size, point % right.size);
                format!("({},{})", left.format_point(x), right.format_point(u))
            }
            None => point.to_string(),
        }
    }
}

/// A subset of a ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subset {
    space: GroundSet,
    bits: Bits,
}

impl Subset {
    pub fn from_points<I>(space: &GroundSet, points: I) -> Result<Self, SpaceError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0;
        for p in points {
            space.check_point(p)?;
            bits |= 1 << p;
        }
        Ok(Subset {
            space: space.clone(),
            bits,
        })
    }

    pub fn from_bits(space: &GroundSet, bits: Bits) -> Result<Self, SpaceError> {
        let stray = bits & !space.mask();
        if stray != 0 {
            return Err(SpaceError::PointOutOfRange {
                point: stray.trailing_zeros() as usize,
                size: space.size,
            });
        }
        Ok(Subset {
            space: space.clone(),
            bits,
        })
    }

    pub(crate) fn from_bits_unchecked(space: &GroundSet, bits: Bits) -> Self {
        debug_assert_eq!(bits & !space.mask(), 0);
        Subset {
            space: space.clone(),
            bits,
        }
    }

    pub fn space(&self) -> &GroundSet {
        &self.space
    }

    pub fn bits(&self) -> Bits {
        self.bits
    }

    pub fn contains(&self, point: usize) -> bool {
        point < self.space.size && self.bits >> point & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn points(&self) -> Points {
        Points(self.bits)
    }

    pub fn complement(&self) -> Subset {
        Subset {
            space: self.space.clone(),
            bits: !self.bits & self.space.mask(),
        }
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset, SpaceError> {
        self.space.check_same(&other.space)?;
        Ok(Subset {
            space: self.space.clone(),
            bits: self.bits & other.bits,
        })
    }

    pub fn union(&self, other: &Subset) -> Result<Subset, SpaceError> {
        self.space.check_same(&other.space)?;
        Ok(Subset {
            space: self.space.clone(),
            bits: self.bits | other.bits,
        })
    }

    pub fn is_subset_of(&self, other: &Subset) -> Result<bool, SpaceError> {
        self.space.check_same(&other.space)?;
        Ok(self.bits & !other.bits == 0)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, &self.space, self.bits)
    }
}

fn write_bits(f: &mut fmt::Formatter<'_>, space: &GroundSet, bits: Bits) -> fmt::Result {
    f.write_str("{")?;
    for (i, p) in Points(bits).enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        f.write_str(&space.format_point(p))?;
    }
    f.write_str("}")
}

/// Ascending iterator over the members of a bit set.
#[derive(Clone, Debug)]
pub struct Points(pub(crate) Bits);

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

/// A set partition in canonical form: blocks are nonempty, disjoint, cover
/// the ground set, and are sorted by their smallest point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    space: GroundSet,
    blocks: Vec<Bits>,
}

impl Partition {
    /// The one-block partition.
    pub fn trivial(space: &GroundSet) -> Self {
        Partition {
            space: space.clone(),
            blocks: vec![space.mask()],
        }
    }

    /// The all-singletons partition.
    pub fn discrete(space: &GroundSet) -> Self {
        Partition {
            space: space.clone(),
            blocks: (0..space.size).map(|p| 1 << p).collect(),
        }
    }

    /// Builds a partition from a block-label vector (`labels[p]` is the block
    /// of point `p`). Labels need not be normalized.
    pub fn from_labels(space: &GroundSet, labels: &[usize]) -> Result<Self, SpaceError> {
        if labels.len() != space.size {
            return Err(SpaceError::MismatchedSpaces {
                left: labels.len(),
                right: space.size,
            });
        }
        let mut blocks: Vec<(usize, Bits)> = Vec::new();
        for (p, &label) in labels.iter().enumerate() {
            match blocks.iter_mut().find(|(l, _)| *l == label) {
                Some((_, b)) => *b |= 1 << p,
                None => blocks.push((label, 1 << p)),
            }
        }
        // first-occurrence order is already ascending by minimum
        Ok(Partition {
            space: space.clone(),
            blocks: blocks.into_iter().map(|(_, b)| b).collect(),
        })
    }

    /// Validates raw block bit sets and puts them in canonical order.
    pub fn from_block_bits(space: &GroundSet, blocks: &[Bits]) -> Result<Self, SpaceError> {
        let mut seen: Bits = 0;
        for (index, &b) in blocks.iter().enumerate() {
            if b == 0 {
                return Err(SpaceError::EmptyBlock { index });
            }
            let stray = b & !space.mask();
            if stray != 0 {
                return Err(SpaceError::PointOutOfRange {
                    point: stray.trailing_zeros() as usize,
                    size: space.size,
                });
            }
            let clash = seen & b;
            if clash != 0 {
                return Err(SpaceError::Overlap {
                    point: clash.trailing_zeros() as usize,
                });
            }
            seen |= b;
        }
        let missing = space.mask() & !seen;
        if missing != 0 {
            return Err(SpaceError::Uncovered {
                point: missing.trailing_zeros() as usize,
            });
        }
        Ok(Self::from_disjoint_bits(space, blocks.to_vec()))
    }

    /// Convenience constructor from point lists, e.g. `[[0], [1, 2]]`.
    pub fn from_point_blocks<B>(space: &GroundSet, blocks: &[B]) -> Result<Self, SpaceError>
    where
        B: AsRef<[usize]>,
    {
        let mut bits = Vec::with_capacity(blocks.len());
        for (index, block) in blocks.iter().enumerate() {
            let mut b: Bits = 0;
            for &p in block.as_ref() {
                space.check_point(p)?;
                if b >> p & 1 == 1 {
                    return Err(SpaceError::Overlap { point: p });
                }
                b |= 1 << p;
            }
            if b == 0 {
                return Err(SpaceError::EmptyBlock { index });
            }
            bits.push(b);
        }
        Self::from_block_bits(space, &bits)
    }

    /// Caller guarantees the blocks are a valid partition of `space`.
    pub(crate) fn from_disjoint_bits(space: &GroundSet, mut blocks: Vec<Bits>) -> Self {
        blocks.sort_unstable_by_key(|b| b.trailing_zeros());
        Partition {
            space: space.clone(),
            blocks,
        }
    }

    pub fn space(&self) -> &GroundSet {
        &self.space
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_bits(&self) -> &[Bits] {
        &self.blocks
    }

    pub fn blocks(&self) -> impl ExactSizeIterator<Item = Subset> + '_ {
        self.blocks
            .iter()
            .map(move |&b| Subset::from_bits_unchecked(&self.space, b))
    }

    /// The block containing `point`.
    pub fn block_of(&self, point: usize) -> Option<Bits> {
        self.blocks.iter().copied().find(|b| b >> point & 1 == 1)
    }

    /// Restricted-growth string: `rgs[p]` is the index of the block holding `p`.
    pub fn rgs(&self) -> Vec<usize> {
        let mut out = vec![0; self.space.size];
        for (i, b) in self.blocks.iter().enumerate() {
            for p in Points(*b) {
                out[p] = i;
            }
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.space.size
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write_bits(f, &self.space, *b)?;
        }
        f.write_str("}")
    }
}

/// Validates `blocks` as a partition of `space` and returns it in canonical
/// order.
pub fn canonical_partition(space: &GroundSet, blocks: &[Subset]) -> Result<Partition, SpaceError> {
    for b in blocks {
        space.check_same(b.space())?;
    }
    let bits: Vec<Bits> = blocks.iter().map(Subset::bits).collect();
    Partition::from_block_bits(space, &bits)
}

/// Every partition of an `n`-point set, in lexicographic order of
/// restricted-growth strings.
pub fn enumerate_partitions(n: usize) -> Result<Partitions, SpaceError> {
    let space = GroundSet::new(n)?;
    Ok(Partitions {
        space,
        rgs: vec![0; n],
        prefix_max: vec![0; n],
        done: false,
    })
}

/// Iterator returned by [`enumerate_partitions`].
#[derive(Clone, Debug)]
pub struct Partitions {
    space: GroundSet,
    rgs: Vec<usize>,
    // prefix_max[i] = max(rgs[0..=i])
    prefix_max: Vec<usize>,
    done: bool,
}

impl Partitions {
    fn advance(&mut self) {
        let n = self.rgs.len();
        // rightmost position that can grow: rgs[i] <= max(rgs[..i])
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let mut blocks: Vec<Bits> = vec![0; self.prefix_max[self.rgs.len() - 1] + 1];
        for (p, &label) in self.rgs.iter().enumerate() {
            blocks[label] |= 1 << p;
        }
        let out = Partition {
            space: self.space.clone(),
            blocks,
        };
        self.advance();
        Some(out)
    }
}

/// Ranks and unranks the partitions of an `n`-point set in the order of
/// [`enumerate_partitions`].
#[derive(Clone, Debug)]
pub struct PartitionRanker {
    space: GroundSet,
    // completions[i][m]: ways to fill positions i.. of a restricted-growth
    // string whose prefix has maximum label m
    completions: Vec<Vec<u128>>,
}

impl PartitionRanker {
    /// `None` when the number of partitions does not fit in a `u128`.
    pub fn new(n: usize) -> Result<Option<Self>, SpaceError> {
        let space = GroundSet::new(n)?;
        let mut completions = vec![vec![0u128; n + 1]; n + 1];
        completions[n].fill(1);
        for i in (1..n).rev() {
            for m in 0..n {
                let keep = completions[i + 1][m].saturating_mul(m as u128 + 1);
                completions[i][m] = keep.saturating_add(completions[i + 1][m + 1]);
            }
        }
        let ranker = PartitionRanker { space, completions };
        Ok((ranker.count() != u128::MAX).then_some(ranker))
    }

    pub fn space(&self) -> &GroundSet {
        &self.space
    }

    /// Number of partitions of the space.
    pub fn count(&self) -> u128 {
        let n = self.space.size;
        if n == 1 {
            1
        } else {
            self.completions[1][0]
        }
    }

    /// The partition at position `rank`, or `None` past the end.
    pub fn unrank(&self, mut rank: u128) -> Option<Partition> {
        if rank >= self.count() {
            return None;
        }
        let n = self.space.size;
        let mut labels = vec![0; n];
        let mut max = 0;
        for (i, label) in labels.iter_mut().enumerate().skip(1) {
            for v in 0..=max + 1 {
                let c = self.completions[i + 1][max.max(v)];
                if rank < c {
                    *label = v;
                    max = max.max(v);
                    break;
                }
                rank -= c;
            }
        }
        Some(Partition::from_labels(&self.space, &labels).expect("labels sized to space"))
    }

    /// Position of `p` in enumeration order.
    pub fn rank(&self, p: &Partition) -> Result<u128, SpaceError> {
        self.space.check_same(&p.space)?;
        let labels = p.rgs();
        let mut rank = 0;
        let mut max = 0;
        for (i, &label) in labels.iter().enumerate().skip(1) {
            for v in 0..label {
                rank += self.completions[i + 1][max.max(v)];
            }
            max = max.max(label);
        }
        Ok(rank)
    }
}

/// True iff every block of `finer` lies inside a block of `coarser`.
pub fn refines(finer: &Partition, coarser: &Partition) -> Result<bool, SpaceError> {
    finer.space.check_same(&coarser.space)?;
    Ok(finer.blocks.iter().all(|&b| {
        let host = coarser
            .block_of(b.trailing_zeros() as usize)
            .expect("partition covers its space");
        b & !host == 0
    }))
}

/// The finest partition coarser than both inputs: connected components of
/// the graph linking points that share a block of either partition.
pub fn overlap_components(p: &Partition, q: &Partition) -> Result<Partition, SpaceError> {
    p.space.check_same(&q.space)?;
    let mut sets = DisjointSets::new(p.space.size);
    for &b in p.blocks.iter().chain(&q.blocks) {
        let root = b.trailing_zeros() as usize;
        for pt in Points(b) {
            sets.union(root, pt);
        }
    }
    let labels: Vec<usize> = (0..p.space.size).map(|pt| sets.find(pt)).collect();
    Partition::from_labels(&p.space, &labels)
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}
