//! Minimal (layered) permutations for a shape: the shape class members
//! with the fewest inversions. A layered permutation splits into blocks
//! of consecutively decreasing entries, each block entirely below the
//! next; the block lengths rearrange the conjugate shape.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{multinomial, Partition};
use crate::permutation::{next_permutation, Permutation};

/// Block lengths (c₁, …, c_M) of a layered permutation, a rearrangement
/// of the parts of the conjugate shape λ′.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct BlockComposition {
    blocks: Vec<usize>,
}

impl BlockComposition {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.contains(&0) {
            return Err(Error::InvalidComposition);
        }
        Ok(BlockComposition { blocks })
    }

    /// Builds a composition and checks it rearranges the conjugate
    /// parts of `shape`.
    pub fn for_shape(shape: &Partition, blocks: Vec<usize>) -> Result<Self> {
        let composition = Self::new(blocks)?;
        let expected = shape.conjugate();
        if composition.shape() != *shape {
            return Err(Error::CompositionShape {
                expected: expected.parts().to_vec(),
                got: composition.blocks.clone(),
            });
        }
        Ok(composition)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Number of blocks, M.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Total length n = Σ cᵢ.
    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Prefix sums (c*₀, c*₁, …, c*_M) with c*₀ = 0 and c*_M = n.
    pub fn prefix_sums(&self) -> Vec<usize> {
        let mut sums = Vec::with_capacity(self.len() + 1);
        sums.push(0);
        for &b in &self.blocks {
            sums.push(sums.last().unwrap() + b);
        }
        sums
    }

    /// The shape whose layered permutations carry this composition:
    /// the conjugate of the sorted block multiset.
    pub fn shape(&self) -> Partition {
        Partition::from_multiset(self.blocks.clone())
            .expect("blocks are positive")
            .conjugate()
    }
}

impl TryFrom<Vec<usize>> for BlockComposition {
    type Error = Error;
    fn try_from(blocks: Vec<usize>) -> Result<Self> {
        BlockComposition::new(blocks)
    }
}

impl From<BlockComposition> for Vec<usize> {
    fn from(c: BlockComposition) -> Vec<usize> {
        c.blocks
    }
}

impl fmt::Display for BlockComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// The layered permutation with the given block lengths: block j fills
/// positions c*_{j−1}+1 … c*_j with the same values in decreasing order.
pub fn minimal_from_composition(c: &BlockComposition) -> Permutation {
    let mut entries = Vec::with_capacity(c.n());
    let mut base = 0;
    for &b in c.blocks() {
        entries.extend((base + 1..=base + b).rev());
        base += b;
    }
    Permutation::from_entries_unchecked(entries)
}

/// All minimal permutations of a shape, one per distinct rearrangement
/// of the conjugate parts, in lexicographic order of block sequences.
pub fn all_minimal(shape: &Partition) -> Vec<(BlockComposition, Permutation)> {
    let mut blocks: Vec<usize> = shape.conjugate().parts().to_vec();
    blocks.sort_unstable();
    let mut out = Vec::new();
    if blocks.is_empty() {
        let c = BlockComposition { blocks };
        let p = minimal_from_composition(&c);
        out.push((c, p));
        return out;
    }
    loop {
        let c = BlockComposition {
            blocks: blocks.clone(),
        };
        let p = minimal_from_composition(&c);
        out.push((c, p));
        if !next_permutation(&mut blocks) {
            break;
        }
    }
    out
}

/// The minimal inversion count of the shape class: Σᵢ C(λ′ᵢ, 2).
pub fn min_inversions(shape: &Partition) -> u64 {
    shape
        .conjugate()
        .parts()
        .iter()
        .map(|&c| (c as u64) * (c as u64 - 1) / 2)
        .sum()
}

/// The number of minimal permutations, M! / (m₁! ⋯ m_k!) over the
/// conjugate multiplicities.
pub fn minimal_count(shape: &Partition) -> BigUint {
    let ff = shape.conjugate().frequency_form();
    multinomial(ff.total_multiplicity(), &ff.multiplicities())
        .expect("multiplicities sum to M by construction")
}

/// Recognizes a layered permutation by structural scan and returns its
/// block composition; `None` when the permutation is not layered.
///
/// Consistency: `minimal_from_composition(is_minimal(p)?) == p`.
pub fn is_minimal(p: &Permutation) -> Option<BlockComposition> {
    let entries = p.entries();
    let n = entries.len();
    let mut blocks = Vec::new();
    let mut pos = 0;
    while pos < n {
        let top = entries[pos];
        if top <= pos {
            return None;
        }
        let len = top - pos;
        for t in 0..len {
            if entries[pos + t] != top - t {
                return None;
            }
        }
        blocks.push(len);
        pos += len;
    }
    Some(BlockComposition { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::shape_of;

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn perm(entries: &[usize]) -> Permutation {
        Permutation::new(entries.to_vec()).unwrap()
    }

    fn comp(blocks: &[usize]) -> BlockComposition {
        BlockComposition::new(blocks.to_vec()).unwrap()
    }

    #[test]
    fn layered_construction_examples() {
        assert_eq!(
            minimal_from_composition(&comp(&[2, 1, 3, 2])),
            perm(&[2, 1, 3, 6, 5, 4, 8, 7])
        );
        assert_eq!(minimal_from_composition(&comp(&[5])), Permutation::reverse(5));
        assert_eq!(
            minimal_from_composition(&comp(&[3, 4, 3])),
            perm(&[3, 2, 1, 7, 6, 5, 4, 10, 9, 8])
        );
    }

    #[test]
    fn composition_validates_shape() {
        let shape = part(&[4, 3, 1]);
        assert!(BlockComposition::for_shape(&shape, vec![2, 1, 3, 2]).is_ok());
        assert!(BlockComposition::for_shape(&shape, vec![3, 3, 2]).is_err());
        assert!(BlockComposition::new(vec![2, 0]).is_err());
        assert_eq!(comp(&[2, 1, 3, 2]).shape(), shape);
        assert_eq!(comp(&[2, 1, 3, 2]).prefix_sums(), vec![0, 2, 3, 6, 8]);
    }

    #[test]
    fn minimal_counts_match_formula() {
        // A shape with a repeated column: exactly one minimal permutation.
        let one = all_minimal(&part(&[2, 2, 2, 2, 2, 2]));
        assert_eq!(one.len(), 1);
        assert_eq!(
            one[0].1,
            perm(&[6, 5, 4, 3, 2, 1, 12, 11, 10, 9, 8, 7])
        );

        // Two columns of distinct lengths: exactly two, in block-lex order.
        let two = all_minimal(&part(&[2, 2, 1]));
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].0, comp(&[2, 3]));
        assert_eq!(two[0].1, perm(&[2, 1, 5, 4, 3]));
        assert_eq!(two[1].0, comp(&[3, 2]));
        assert_eq!(two[1].1, perm(&[3, 2, 1, 5, 4]));

        let twelve = all_minimal(&part(&[4, 3, 1]));
        assert_eq!(twelve.len(), 12);
        assert_eq!(minimal_count(&part(&[4, 3, 1])), 12u32.into());
    }

    #[test]
    fn min_inversion_examples() {
        assert_eq!(min_inversions(&Partition::row(9)), 0);
        // Conjugate (3,2,2,1): 3 + 1 + 1 + 0.
        assert_eq!(min_inversions(&part(&[4, 3, 1])), 5);
        assert_eq!(perm(&[2, 1, 3, 6, 5, 4, 8, 7]).inversions(), 5);
        // Conjugate (6,6): 15 + 15.
        assert_eq!(min_inversions(&part(&[2, 2, 2, 2, 2, 2])), 30);
        assert_eq!(
            perm(&[6, 5, 4, 3, 2, 1, 12, 11, 10, 9, 8, 7]).inversions(),
            30
        );
    }

    #[test]
    fn recognizer_examples() {
        assert_eq!(
            is_minimal(&perm(&[2, 1, 3, 6, 5, 4, 8, 7])),
            Some(comp(&[2, 1, 3, 2]))
        );
        assert_eq!(
            is_minimal(&Permutation::identity(4)),
            Some(comp(&[1, 1, 1, 1]))
        );
        assert_eq!(is_minimal(&perm(&[3, 1, 2])), None);
        assert_eq!(is_minimal(&perm(&[2, 3, 1])), None);
        // Layered even though it does not look sorted: blocks (1 | 3,2).
        assert_eq!(is_minimal(&perm(&[1, 3, 2])), Some(comp(&[1, 2])));
    }

    #[test]
    fn recognizer_round_trips() {
        for n in 0..=8 {
            for shape in crate::partition::partitions_of(n) {
                for (c, p) in all_minimal(&shape) {
                    assert_eq!(is_minimal(&p).as_ref(), Some(&c));
                    assert_eq!(minimal_from_composition(&c), p);
                }
            }
        }
    }

    #[test]
    fn minimal_permutations_are_involutions_with_right_statistics() {
        for n in 1..=8 {
            for shape in crate::partition::partitions_of(n) {
                let list = all_minimal(&shape);
                assert_eq!(BigUint::from(list.len()), minimal_count(&shape));
                for (_, p) in &list {
                    assert_eq!(p.inverse(), *p, "minimal permutations are involutions");
                    assert_eq!(shape_of(p), shape);
                    assert_eq!(p.inversions(), min_inversions(&shape));
                }
            }
        }
    }
}
