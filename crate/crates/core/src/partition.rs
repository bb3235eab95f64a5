//! Integer partitions, conjugation, frequency notation, multinomial
//! coefficients, and `c`-colored partition counting and enumeration.
//!
//! All counts are exact: anything that can outgrow a machine word is a
//! [`BigUint`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of a nonnegative integer: weakly decreasing positive parts.
///
/// The empty partition is the unique partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting parts that are zero or increase.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        let positive = parts.last().is_none_or(|&p| p > 0);
        if decreasing && positive {
            Ok(Partition { parts })
        } else {
            Err(Error::InvalidPartition)
        }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Single-row partition `(n)`; the empty partition when `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// Builds the partition from an unordered bag of positive parts.
    pub fn from_multiset(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts, written ℓ(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The size |λ| = Σ λᵢ.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The `i`-th part (0-indexed), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// First (largest) part, or 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.part(0)
    }

    /// Last (smallest) part, or 0 for the empty partition.
    pub fn last(&self) -> usize {
        self.parts.last().copied().unwrap_or(0)
    }

    /// The conjugate partition λ′, whose diagram is the transpose:
    /// λ′ᵢ = #{j : λⱼ ≥ i+1}.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.first());
        for i in 1..=self.first() {
            parts.push(self.parts.iter().take_while(|&&p| p >= i).count());
        }
        Partition { parts }
    }

    /// Run-length encoding ⟨t₁^{m₁}, …, t_k^{m_k}⟩ with t₁ > ⋯ > t_k.
    pub fn frequency_form(&self) -> FrequencyForm {
        let mut entries: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match entries.last_mut() {
                Some((value, mult)) if *value == p => *mult += 1,
                _ => entries.push((p, 1)),
            }
        }
        FrequencyForm { entries }
    }

    /// Key used in tabular exports: parts joined by dots, e.g. `4.3.1`.
    /// The empty partition renders as `-`.
    pub fn dot_key(&self) -> String {
        if self.parts.is_empty() {
            "-".to_string()
        } else {
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Parses a comma-, space-, or dot-separated list of parts.
/// The empty string, `()` and `-` denote the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() || trimmed == "-" {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(|c: char| c == ',' || c == '.' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::InvalidPartition))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Frequency notation ⟨t₁^{m₁}, …, t_k^{m_k}⟩ for a partition:
/// strictly decreasing values tᵢ with positive multiplicities mᵢ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyForm {
    entries: Vec<(usize, usize)>,
}

impl FrequencyForm {
    /// `(value, multiplicity)` pairs with strictly decreasing values.
    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    /// The multiplicities (m₁, …, m_k).
    pub fn multiplicities(&self) -> Vec<usize> {
        self.entries.iter().map(|&(_, m)| m).collect()
    }

    /// M = Σ mᵢ, the number of parts of the encoded partition.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// Expands back to the partition it encodes.
    pub fn expand(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.total_multiplicity());
        for &(value, mult) in &self.entries {
            parts.extend(std::iter::repeat_n(value, mult));
        }
        Partition { parts }
    }
}

impl fmt::Display for FrequencyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, (value, mult)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{value}^{mult}")?;
        }
        write!(f, ">")
    }
}

/// One part of a colored partition: a positive value carrying a color
/// index in `0..c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColoredPart {
    pub value: usize,
    pub color: usize,
}

/// A partition into colored parts, kept in canonical order: value
/// descending, then color ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredPartition {
    parts: Vec<ColoredPart>,
}

impl ColoredPartition {
    pub fn parts(&self) -> &[ColoredPart] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|p| p.value).sum()
    }

    /// The plain partition formed by the parts of one color.
    pub fn monochrome(&self, color: usize) -> Partition {
        let parts: Vec<usize> = self
            .parts
            .iter()
            .filter(|p| p.color == color)
            .map(|p| p.value)
            .collect();
        // Values arrive descending because the canonical order is.
        Partition { parts }
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}:{}", p.value, p.color)?;
        }
        write!(f, "]")
    }
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    for i in 1..=k {
        result = result * BigUint::from(n - k + i) / BigUint::from(i);
    }
    result
}

/// Exact multinomial coefficient M! / (m₁! ⋯ m_k!).
///
/// Rejects inputs whose multiplicities do not sum to `m`.
pub fn multinomial(m: usize, ms: &[usize]) -> Result<BigUint> {
    let total: usize = ms.iter().sum();
    if total != m {
        return Err(Error::MultiplicitySum {
            expected: m,
            got: total,
        });
    }
    let mut result = BigUint::one();
    let mut acc = 0;
    for &mi in ms {
        acc += mi;
        result *= binomial(acc, mi);
    }
    Ok(result)
}

/// p_c(n): the number of partitions of `n` into parts of `c` colors,
/// read off as the coefficient of xⁿ in ∏_{m≥1} (1−x^m)^{−c}.
///
/// `c = 0` yields the empty product, so p₀(n) = [n = 0].
pub fn colored_count(colors: usize, n: usize) -> BigUint {
    let mut coeffs = vec![BigUint::zero(); n + 1];
    coeffs[0] = BigUint::one();
    // Multiply by 1/(1-x^m) once per color; each pass is the usual
    // prefix recurrence a[j] += a[j-m].
    for m in 1..=n {
        for _ in 0..colors {
            for j in m..=n {
                let lower = coeffs[j - m].clone();
                coeffs[j] += lower;
            }
        }
    }
    coeffs[n].clone()
}

/// All colored partitions of `n` with `c` colors, each exactly once.
///
/// Partitions are emitted in lexicographic order of their canonical
/// part sequences, where parts compare by value descending then color
/// ascending. The length of the result equals [`colored_count`].
pub fn colored_enumerate(colors: usize, n: usize) -> Vec<ColoredPartition> {
    let mut out = Vec::new();
    if colors == 0 {
        if n == 0 {
            out.push(ColoredPartition { parts: Vec::new() });
        }
        return out;
    }
    let mut acc: Vec<ColoredPart> = Vec::new();
    descend_colored(colors, n, n, 0, &mut acc, &mut out);
    out
}

fn descend_colored(
    colors: usize,
    remaining: usize,
    max_value: usize,
    min_color_at_max: usize,
    acc: &mut Vec<ColoredPart>,
    out: &mut Vec<ColoredPartition>,
) {
    if remaining == 0 {
        out.push(ColoredPartition { parts: acc.clone() });
        return;
    }
    for value in (1..=max_value.min(remaining)).rev() {
        let color_start = if value == max_value { min_color_at_max } else { 0 };
        for color in color_start..colors {
            acc.push(ColoredPart { value, color });
            descend_colored(colors, remaining - value, value, color, acc, out);
            acc.pop();
        }
    }
}

/// All partitions of `n` in reverse-lexicographic order:
/// (n) first, (1,…,1) last. The order is stable across runs.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    descend_plain(n, n, &mut acc, &mut out);
    out
}

fn descend_plain(remaining: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: acc.clone() });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        acc.push(part);
        descend_plain(remaining - part, part, acc, out);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[5, 5, 3, 2]).conjugate(), p(&[4, 4, 3, 2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[4, 3, 1]).conjugate(), p(&[3, 2, 2, 1]));
    }

    #[test]
    fn conjugate_is_involution_up_to_30() {
        for n in 0..=30 {
            for part in partitions_of(n) {
                assert_eq!(part.conjugate().conjugate(), part);
                assert_eq!(part.conjugate().size(), n);
            }
        }
    }

    #[test]
    fn rejects_bad_partitions() {
        assert_eq!(Partition::new(vec![1, 2]), Err(Error::InvalidPartition));
        assert_eq!(Partition::new(vec![2, 0]), Err(Error::InvalidPartition));
    }

    #[test]
    fn frequency_form_examples() {
        assert_eq!(
            p(&[3, 2, 2, 1]).frequency_form().entries(),
            &[(3, 1), (2, 2), (1, 1)]
        );
        assert_eq!(p(&[7]).frequency_form().entries(), &[(7, 1)]);
        assert_eq!(
            p(&[2, 2, 2, 2, 2, 2]).frequency_form().entries(),
            &[(2, 6)]
        );
    }

    #[test]
    fn frequency_form_round_trips() {
        for n in 0..=12 {
            for part in partitions_of(n) {
                let ff = part.frequency_form();
                assert_eq!(ff.expand(), part);
                assert_eq!(ff.total_multiplicity(), part.len());
            }
        }
    }

    /// Brute-force oracle: the number of distinct orderings of a multiset,
    /// by generating all index permutations and deduplicating.
    fn orderings_by_enumeration(multiset: &[usize]) -> usize {
        fn rec(remaining: &mut Vec<usize>, acc: &mut Vec<usize>, seen: &mut HashSet<Vec<usize>>) {
            if remaining.is_empty() {
                seen.insert(acc.clone());
                return;
            }
            for i in 0..remaining.len() {
                let v = remaining.remove(i);
                acc.push(v);
                rec(remaining, acc, seen);
                acc.pop();
                remaining.insert(i, v);
            }
        }
        let mut seen = HashSet::new();
        rec(&mut multiset.to_vec(), &mut Vec::new(), &mut seen);
        seen.len()
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(1, &[1]).unwrap(), BigUint::from(1u32));
        // Distinct orderings of {3,2,2,1}: frozen from the enumeration oracle.
        assert_eq!(orderings_by_enumeration(&[3, 2, 2, 1]), 12);
        assert_eq!(multinomial(4, &[1, 2, 1]).unwrap(), BigUint::from(12u32));
        assert_eq!(orderings_by_enumeration(&[5, 3]), 2);
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn multinomial_rejects_bad_sum() {
        assert_eq!(
            multinomial(4, &[1, 1]),
            Err(Error::MultiplicitySum {
                expected: 4,
                got: 2
            })
        );
    }

    #[test]
    fn multinomial_matches_enumeration() {
        let cases: [&[usize]; 5] = [&[2, 2, 1], &[3, 3], &[1, 1, 1, 1], &[4, 1], &[2, 1, 1, 1]];
        for ms in cases {
            let m: usize = ms.iter().sum();
            // Build a concrete multiset with ms[i] copies of value i+1.
            let multiset: Vec<usize> = ms
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
                .collect();
            assert_eq!(
                multinomial(m, ms).unwrap(),
                BigUint::from(orderings_by_enumeration(&multiset))
            );
        }
    }

    #[test]
    fn colored_count_examples() {
        // P_2(2) = {2, 2', 11, 11', 1'1'}.
        assert_eq!(colored_count(2, 2), BigUint::from(5u32));
        for c in 1..=6 {
            assert_eq!(colored_count(c, 0), BigUint::one());
        }
        assert_eq!(colored_count(1, 4), BigUint::from(5u32));
        assert_eq!(colored_count(0, 0), BigUint::one());
        assert_eq!(colored_count(0, 3), BigUint::zero());
    }

    #[test]
    fn colored_count_convolution_identity() {
        // p_{a+b}(n) = sum_j p_a(j) p_b(n-j): product of generating functions.
        for a in 1..=4usize {
            for b in 1..=4usize {
                for n in 0..=15usize {
                    let lhs = colored_count(a + b, n);
                    let rhs: BigUint = (0..=n)
                        .map(|j| colored_count(a, j) * colored_count(b, n - j))
                        .sum();
                    assert_eq!(lhs, rhs, "a={a} b={b} n={n}");
                }
            }
        }
    }

    #[test]
    fn colored_enumerate_canonical_order_for_two_colors() {
        let listed = colored_enumerate(2, 2);
        let rendered: Vec<String> = listed.iter().map(|cp| cp.to_string()).collect();
        assert_eq!(
            rendered,
            vec!["[2:0]", "[2:1]", "[1:0 1:0]", "[1:0 1:1]", "[1:1 1:1]"]
        );
    }

    #[test]
    fn colored_enumerate_small_cases() {
        assert_eq!(colored_enumerate(3, 0).len(), 1);
        assert!(colored_enumerate(3, 0)[0].parts().is_empty());
        let two_colors_of_one = colored_enumerate(2, 1);
        assert_eq!(two_colors_of_one.len(), 2);
        assert_eq!(colored_count(2, 1), BigUint::from(2u32));
    }

    #[test]
    fn colored_enumerate_length_matches_count() {
        // Distinctness plus cardinality against the series expansion.
        let mut grid: Vec<(usize, usize)> = Vec::new();
        for c in 1..=10 {
            for n in 0..=8 {
                grid.push((c, n));
            }
        }
        for n in 9..=14 {
            grid.push((2, n));
            grid.push((3, n));
        }
        grid.push((2, 16));
        for (c, n) in grid {
            let listed = colored_enumerate(c, n);
            let distinct: HashSet<_> = listed.iter().cloned().collect();
            assert_eq!(distinct.len(), listed.len(), "duplicates at c={c} n={n}");
            assert_eq!(
                BigUint::from(listed.len()),
                colored_count(c, n),
                "cardinality at c={c} n={n}"
            );
            assert!(listed.iter().all(|cp| cp.size() == n));
        }
    }

    #[test]
    fn partitions_of_examples() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(9).len(), 30);
        // Reverse-lexicographic order, largest first.
        let four: Vec<Vec<usize>> = partitions_of(4)
            .into_iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(
            four,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn partition_count_matches_one_color_series() {
        for n in 0..=30 {
            assert_eq!(BigUint::from(partitions_of(n).len()), colored_count(1, n));
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p(&[4, 3, 1]).to_string(), "(4,3,1)");
        assert_eq!(Partition::empty().to_string(), "()");
        assert_eq!("4,3,1".parse::<Partition>().unwrap(), p(&[4, 3, 1]));
        assert_eq!("4.3.1".parse::<Partition>().unwrap(), p(&[4, 3, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("3,4".parse::<Partition>().is_err());
        assert_eq!(p(&[4, 3, 1]).dot_key(), "4.3.1");
        assert_eq!(Partition::empty().dot_key(), "-");
    }

    #[test]
    fn serde_round_trip_validates() {
        let part = p(&[4, 3, 1]);
        let json = serde_json::to_string(&part).unwrap();
        assert_eq!(json, "[4,3,1]");
        assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), part);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
