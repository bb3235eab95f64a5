//! One-line permutations with inversion statistics, longest monotone
//! subsequences, adjacent-transposition actions, and the four Knuth
//! move families with inversion tracking.
//!
//! Positions and values are 1-indexed throughout, matching the usual
//! combinatorial conventions; serialized form is the one-line notation
//! as a JSON array.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest n for which [`Permutation::knuth_closure`] will run; the
/// closure can touch a sizable chunk of S_n.
pub const CLOSURE_GUARD: usize = 9;

/// A permutation of {1, …, n} in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from one-line notation, checking that the
    /// entries are exactly 1..=n.
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation);
            }
            seen[v] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    /// The reversal (n, n−1, …, 1).
    pub fn reverse(n: usize) -> Self {
        Permutation {
            entries: (1..=n).rev().collect(),
        }
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One-line notation; `entries()[i]` is the value at position `i+1`.
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Value at a 1-indexed position. Panics out of range.
    pub fn value_at(&self, position: usize) -> usize {
        self.entries[position - 1]
    }

    /// 1-indexed position of a value. Panics if absent.
    pub fn position_of(&self, value: usize) -> usize {
        self.entries.iter().position(|&v| v == value).unwrap() + 1
    }

    /// The group inverse: result[πᵢ] = i.
    pub fn inverse(&self) -> Permutation {
        let mut entries = vec![0; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            entries[v - 1] = i + 1;
        }
        Permutation { entries }
    }

    /// Number of pairs i < j with πᵢ > πⱼ, counted by merge sort.
    pub fn inversions(&self) -> u64 {
        let mut work = self.entries.clone();
        let mut tmp = vec![0; self.len()];
        merge_count(&mut work, &mut tmp)
    }

    /// Right action of the elementary transposition s_i: swaps the
    /// entries at positions i and i+1.
    pub fn right_transpose(&self, i: usize) -> Result<Permutation> {
        if i == 0 || i >= self.len() {
            return Err(Error::TranspositionRange {
                index: i,
                n: self.len(),
            });
        }
        let mut entries = self.entries.clone();
        entries.swap(i - 1, i);
        Ok(Permutation { entries })
    }

    /// Left action of s_i: exchanges the positions of the values i and i+1.
    pub fn left_transpose(&self, i: usize) -> Result<Permutation> {
        if i == 0 || i >= self.len() {
            return Err(Error::TranspositionRange {
                index: i,
                n: self.len(),
            });
        }
        let mut entries = self.entries.clone();
        let a = entries.iter().position(|&v| v == i).unwrap();
        let b = entries.iter().position(|&v| v == i + 1).unwrap();
        entries.swap(a, b);
        Ok(Permutation { entries })
    }

    /// Length of the longest strictly increasing subsequence, by
    /// patience sorting.
    pub fn lis_length(&self) -> usize {
        patience_length(self.entries.iter().copied())
    }

    /// Length of the longest strictly decreasing subsequence.
    pub fn lds_length(&self) -> usize {
        patience_length(self.entries.iter().rev().copied())
    }

    /// One longest decreasing subsequence, returned as 1-indexed
    /// positions (increasing, with strictly decreasing values).
    ///
    /// Among all LDS of maximal length the returned one starts at the
    /// smallest possible position, and each later point is chosen with
    /// the smallest position among those that still complete a maximal
    /// LDS. This makes the output deterministic.
    pub fn leftmost_lds(&self) -> Vec<usize> {
        let n = self.len();
        if n == 0 {
            return Vec::new();
        }
        let starts = lds_start_lengths(&self.entries);
        let longest = *starts.iter().max().unwrap();
        let mut current = starts.iter().position(|&d| d == longest).unwrap();
        let mut positions = vec![current + 1];
        let mut remaining = longest - 1;
        while remaining > 0 {
            let next = (current + 1..n)
                .find(|&j| self.entries[j] < self.entries[current] && starts[j] == remaining)
                .expect("a maximal LDS always completes");
            positions.push(next + 1);
            current = next;
            remaining -= 1;
        }
        positions
    }

    /// Every Knuth and dual Knuth move applicable to this permutation.
    ///
    /// K moves scan windows of three adjacent positions for the
    /// patterns acb, bac (inversion +1) and cab, bca (inversion −1)
    /// with a < b < c, anchored by the window start position. KD moves
    /// scan value triples {a−1, a, a+1} and {a, a+1, a+2}, anchored by
    /// the value a; both KD witness patterns exchange the values a and
    /// a+1, so an anchor is listed once even if both match.
    pub fn available_knuth_moves(&self) -> Vec<KnuthMove> {
        let n = self.len();
        let mut moves = Vec::new();
        for w in 1..=n.saturating_sub(2) {
            if let Some(kind) = classify_window(&self.entries[w - 1..w + 2]) {
                moves.push(KnuthMove { kind, anchor: w });
            }
        }
        let mut pos = vec![0usize; n + 1];
        for (i, &v) in self.entries.iter().enumerate() {
            pos[v] = i + 1;
        }
        for a in 1..=n {
            if let Some(kind) = classify_value_anchor(&pos, a, n) {
                moves.push(KnuthMove {
                    kind,
                    anchor: a,
                });
            }
        }
        moves
    }

    /// Applies a move previously reported by
    /// [`available_knuth_moves`](Self::available_knuth_moves); the move
    /// is re-checked against the current permutation.
    pub fn apply_knuth_move(&self, mv: &KnuthMove) -> Result<Permutation> {
        let n = self.len();
        match mv.kind {
            MoveKind::KPlus | MoveKind::KMinus => {
                let w = mv.anchor;
                if w == 0 || w + 2 > n || classify_window(&self.entries[w - 1..w + 2]) != Some(mv.kind) {
                    return Err(Error::MoveNotApplicable {
                        kind: mv.kind.name(),
                        anchor: mv.anchor,
                    });
                }
                let mut entries = self.entries.clone();
                // acb→cab and cab→acb swap the first two of the window;
                // bac→bca and bca→bac swap the last two.
                let (x, y, z) = (entries[w - 1], entries[w], entries[w + 1]);
                if (x < z && z < y) || (y < z && z < x) {
                    entries.swap(w - 1, w);
                } else {
                    entries.swap(w, w + 1);
                }
                Ok(Permutation { entries })
            }
            MoveKind::KdPlus | MoveKind::KdMinus => {
                let a = mv.anchor;
                let mut pos = vec![0usize; n + 1];
                for (i, &v) in self.entries.iter().enumerate() {
                    pos[v] = i + 1;
                }
                if a == 0 || a >= n || classify_value_anchor(&pos, a, n) != Some(mv.kind) {
                    return Err(Error::MoveNotApplicable {
                        kind: mv.kind.name(),
                        anchor: mv.anchor,
                    });
                }
                let mut entries = self.entries.clone();
                entries.swap(pos[a] - 1, pos[a + 1] - 1);
                Ok(Permutation { entries })
            }
        }
    }

    /// BFS closure under K moves, and KD moves when `include_dual` is
    /// set. With dual moves included the closure is the full set of
    /// permutations sharing this permutation's insertion shape.
    ///
    /// Guarded at n ≤ [`CLOSURE_GUARD`].
    pub fn knuth_closure(&self, include_dual: bool) -> Result<BTreeSet<Permutation>> {
        if self.len() > CLOSURE_GUARD {
            return Err(Error::ClosureGuard {
                n: self.len(),
                limit: CLOSURE_GUARD,
            });
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.clone());
        queue.push_back(self.clone());
        while let Some(p) = queue.pop_front() {
            for mv in p.available_knuth_moves() {
                if !include_dual && matches!(mv.kind, MoveKind::KdPlus | MoveKind::KdMinus) {
                    continue;
                }
                let next = p.apply_knuth_move(&mv)?;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(seen)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(entries: Vec<usize>) -> Result<Self> {
        Permutation::new(entries)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.entries
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parses whitespace- or comma-separated one-line notation.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::InvalidPermutation))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(entries)
    }
}

/// The four move families: K acts on adjacent positions, KD on value
/// triples. Plus variants raise the inversion number by one, minus
/// variants lower it by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    KPlus,
    KMinus,
    KdPlus,
    KdMinus,
}

impl MoveKind {
    pub fn name(&self) -> &'static str {
        match self {
            MoveKind::KPlus => "K+",
            MoveKind::KMinus => "K-",
            MoveKind::KdPlus => "KD+",
            MoveKind::KdMinus => "KD-",
        }
    }

    /// +1 for the plus kinds, −1 for the minus kinds.
    pub fn inversion_delta(&self) -> i64 {
        match self {
            MoveKind::KPlus | MoveKind::KdPlus => 1,
            MoveKind::KMinus | MoveKind::KdMinus => -1,
        }
    }
}

/// A Knuth move: K kinds are anchored by the 1-indexed start position
/// of their three-position window, KD kinds by the value `a` of the
/// witnessing pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KnuthMove {
    pub kind: MoveKind,
    pub anchor: usize,
}

fn classify_window(w: &[usize]) -> Option<MoveKind> {
    let (x, y, z) = (w[0], w[1], w[2]);
    if (x < z && z < y) || (y < x && x < z) {
        Some(MoveKind::KPlus) // acb or bac
    } else if (y < z && z < x) || (z < x && x < y) {
        Some(MoveKind::KMinus) // cab or bca
    } else {
        None
    }
}

/// Checks the KD witness patterns for anchor value `a`:
/// a … a−1 … a+1 and a … a+2 … a+1 raise inversions, their reversals
/// lower them. For a fixed anchor the two witnesses never disagree on
/// direction.
fn classify_value_anchor(pos: &[usize], a: usize, n: usize) -> Option<MoveKind> {
    if a >= 2 && a < n {
        if pos[a] < pos[a - 1] && pos[a - 1] < pos[a + 1] {
            return Some(MoveKind::KdPlus);
        }
        if pos[a + 1] < pos[a - 1] && pos[a - 1] < pos[a] {
            return Some(MoveKind::KdMinus);
        }
    }
    if a + 2 <= n {
        if pos[a] < pos[a + 2] && pos[a + 2] < pos[a + 1] {
            return Some(MoveKind::KdPlus);
        }
        if pos[a + 1] < pos[a + 2] && pos[a + 2] < pos[a] {
            return Some(MoveKind::KdMinus);
        }
    }
    None
}

/// Patience sorting pass; with distinct inputs the pile count is the
/// length of the longest strictly increasing subsequence.
fn patience_length(seq: impl Iterator<Item = usize>) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for x in seq {
        let idx = tails.partition_point(|&t| t < x);
        if idx == tails.len() {
            tails.push(x);
        } else {
            tails[idx] = x;
        }
    }
    tails.len()
}

/// For each position, the length of the longest strictly decreasing
/// subsequence starting there.
pub(crate) fn lds_start_lengths(entries: &[usize]) -> Vec<usize> {
    let n = entries.len();
    let mut starts = vec![1usize; n];
    for i in (0..n).rev() {
        for j in i + 1..n {
            if entries[j] < entries[i] && starts[j] + 1 > starts[i] {
                starts[i] = starts[j] + 1;
            }
        }
    }
    starts
}

/// Merge sort on `values`, counting inversions; `tmp` must match in length.
pub(crate) fn merge_count(values: &mut [usize], tmp: &mut [usize]) -> u64 {
    let n = values.len();
    let mut inversions = 0u64;
    let mut width = 1;
    while width < n {
        let mut start = 0;
        while start + width < n {
            let mid = start + width;
            let end = (start + 2 * width).min(n);
            let (mut i, mut j, mut k) = (start, mid, start);
            while i < mid && j < end {
                if values[i] <= values[j] {
                    tmp[k] = values[i];
                    i += 1;
                } else {
                    inversions += (mid - i) as u64;
                    tmp[k] = values[j];
                    j += 1;
                }
                k += 1;
            }
            tmp[k..k + (mid - i)].copy_from_slice(&values[i..mid]);
            tmp[k + (mid - i)..end].copy_from_slice(&values[j..end]);
            values[start..end].copy_from_slice(&tmp[start..end]);
            start = end;
        }
        width *= 2;
    }
    inversions
}

/// In-place step to the lexicographic successor; false once the slice
/// is the final (descending) arrangement, which is left reversed back
/// to ascending.
pub(crate) fn next_permutation(slice: &mut [usize]) -> bool {
    let n = slice.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && slice[i - 1] >= slice[i] {
        i -= 1;
    }
    if i == 0 {
        slice.reverse();
        return false;
    }
    let mut j = n - 1;
    while slice[j] <= slice[i - 1] {
        j -= 1;
    }
    slice.swap(i - 1, j);
    slice[i..].reverse();
    true
}

/// n! as a u64; callers keep n ≤ 20.
pub(crate) fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// The permutation of 1..=n at `rank` (0-based) in lexicographic order.
pub(crate) fn unrank_permutation(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial_u64(i);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}
