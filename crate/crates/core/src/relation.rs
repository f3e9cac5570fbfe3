//! Square boolean relation matrices and named partitions shared by the
//! structure, order and diagram modules.

use std::fmt;

use crate::natural::natural_cmp;

/// A binary relation on `0..size` stored as a dense row-major matrix;
/// `get(a, b)` is true when `a` relates to `b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    size: usize,
    bits: Vec<bool>,
}

impl BoolMatrix {
    pub fn new(size: usize) -> Self {
        BoolMatrix {
            size,
            bits: vec![false; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::new(size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                bits.push(f(a, b));
            }
        }
        BoolMatrix { size, bits }
    }

    /// Builds a matrix from row vectors. Returns `None` unless the rows form
    /// a square.
    pub fn from_rows(rows: &[Vec<bool>]) -> Option<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return None;
        }
        Some(BoolMatrix {
            size,
            bits: rows.concat(),
        })
    }

    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::new(size);
        for (a, b) in pairs {
            m.set(a, b, true);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.size + b]
    }

    pub fn set(&mut self, a: usize, b: usize, value: bool) {
        self.bits[a * self.size + b] = value;
    }

    /// All related pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size)
            .flat_map(move |a| (0..self.size).map(move |b| (a, b)))
            .filter(move |&(a, b)| self.get(a, b))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// True when every pair of `self` is also in `other`.
    pub fn is_subset_of(&self, other: &BoolMatrix) -> bool {
        self.size == other.size && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &BoolMatrix) -> BoolMatrix {
        assert_eq!(self.size, other.size, "relation sizes differ");
        BoolMatrix {
            size: self.size,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| a || b)
                .collect(),
        }
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix({})", self.size)?;
        for a in 0..self.size {
            let row: String = (0..self.size)
                .map(|b| if self.get(a, b) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Which member of a block names it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representative {
    /// Smallest member name in natural order.
    NaturalMin,
    /// Largest member name in natural order.
    NaturalMax,
}

/// One block of a partition of named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Element indices, sorted by name in natural order.
    pub members: Vec<usize>,
    pub representative: usize,
}

/// A partition of `0..n` into blocks, each with a representative.
///
/// Blocks are ordered by their representative's name (natural order) and
/// members within a block by their own names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Block>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Groups elements by `key` (elements with equal keys share a block).
    pub fn group_by<K: Eq>(
        names: &[impl AsRef<str>],
        rule: Representative,
        key: impl Fn(usize) -> K,
    ) -> Self {
        let keys: Vec<K> = (0..names.len()).map(&key).collect();
        Self::group_with(names, rule, |a, b| keys[a] == keys[b])
    }

    /// Groups elements with an equivalence predicate. `same` must be an
    /// equivalence relation; each element joins the first block whose first
    /// member it matches.
    pub fn group_with(
        names: &[impl AsRef<str>],
        rule: Representative,
        same: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| natural_cmp(names[a].as_ref(), names[b].as_ref()));

        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &x in &order {
            match groups.iter_mut().find(|g| same(g[0], x)) {
                Some(g) => g.push(x),
                None => groups.push(vec![x]),
            }
        }

        let mut blocks: Vec<Block> = groups
            .into_iter()
            .map(|members| {
                let representative = match rule {
                    Representative::NaturalMin => members[0],
                    Representative::NaturalMax => members[members.len() - 1],
                };
                Block {
                    members,
                    representative,
                }
            })
            .collect();
        blocks.sort_by(|a, b| {
            natural_cmp(
                names[a.representative].as_ref(),
                names[b.representative].as_ref(),
            )
        });

        let mut block_of = vec![0; names.len()];
        for (bi, block) in blocks.iter().enumerate() {
            for &m in &block.members {
                block_of[m] = bi;
            }
        }
        Partition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `element`.
    pub fn block_of(&self, element: usize) -> usize {
        self.block_of[element]
    }

    /// Representatives in block order.
    pub fn representatives(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.representative).collect()
    }

    /// True when every block has exactly one member.
    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.members.len() == 1)
    }

    /// Blocks as sorted member-index sets, for comparing partitions while
    /// ignoring representatives.
    pub fn member_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut m = b.members.clone();
                m.sort_unstable();
                m
            })
            .collect();
        sets.sort();
        sets
    }
}
