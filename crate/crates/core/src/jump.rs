//! Inner and outer jump partitions acting on layered permutations, jump
//! enumeration, validity, the two-column decomposition, and the
//! fixed-block structure check.
//!
//! A layered permutation with blocks (c₁, …, c_M) admits, at each of
//! the M−1 block boundaries, controlled exchanges with the next block:
//! inner jumps slide the smallest entries of a block rightward over the
//! following block (right multiplication by adjacent transpositions),
//! outer jumps raise the largest values of a block over the following
//! block's values (left multiplication). Row j of a component moves the
//! element at position c*ᵢ − j + 1 (inner) or the value c*ᵢ − j + 1
//! (outer); rows are applied largest first, so every single
//! transposition raises the inversion count by exactly one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minimal::{is_minimal, min_inversions, minimal_from_composition, BlockComposition};
use crate::partition::{colored_enumerate, Partition};
use crate::permutation::Permutation;
use crate::tableau::shape_of;

/// Validates the per-component bounds: component i needs at most cᵢ
/// rows and its rows must be shorter than c_{i+1}.
fn validate_components(composition: &BlockComposition, components: &[Partition]) -> Result<()> {
    let blocks = composition.blocks();
    let expected = blocks.len().saturating_sub(1);
    if components.len() != expected {
        return Err(Error::ComponentCount {
            expected,
            got: components.len(),
        });
    }
    for (i, comp) in components.iter().enumerate() {
        if comp.len() > blocks[i] || comp.first() >= blocks[i + 1] {
            return Err(Error::JumpConstraint {
                component: i + 1,
                len_bound: blocks[i],
                part_bound: blocks[i + 1],
            });
        }
    }
    Ok(())
}

/// Checks that an action target is compatible with the attached
/// composition: sizes must agree, and a layered permutation must be
/// layered for exactly this composition. Non-layered permutations are
/// allowed: applying a jump after another jump passes through here.
fn validate_target(composition: &BlockComposition, p: &Permutation) -> Result<()> {
    if composition.n() != p.len() {
        return Err(Error::SizeMismatch {
            expected: composition.n(),
            got: p.len(),
        });
    }
    if let Some(found) = is_minimal(p) {
        if found != *composition {
            return Err(Error::CompositionMismatch);
        }
    }
    Ok(())
}

fn format_components(components: &[Partition], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (i, comp) in components.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{comp}")?;
    }
    write!(f, ")")
}

/// An inner jump partition μ̄ = (μ⁽¹⁾, …, μ⁽ᴹ⁻¹⁾) attached to a block
/// composition; acts by right multiplication.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InnerJumpPartition {
    composition: BlockComposition,
    components: Vec<Partition>,
}

/// An outer jump partition ν̄ = (ν⁽¹⁾, …, ν⁽ᴹ⁻¹⁾) attached to a block
/// composition; acts by left multiplication. Components obey the same
/// bounds as inner components.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OuterJumpPartition {
    composition: BlockComposition,
    components: Vec<Partition>,
}

impl InnerJumpPartition {
    pub fn new(composition: BlockComposition, components: Vec<Partition>) -> Result<Self> {
        validate_components(&composition, &components)?;
        Ok(InnerJumpPartition {
            composition,
            components,
        })
    }

    pub fn empty(composition: BlockComposition) -> Self {
        let components = vec![Partition::empty(); composition.len().saturating_sub(1)];
        InnerJumpPartition {
            composition,
            components,
        }
    }

    pub fn composition(&self) -> &BlockComposition {
        &self.composition
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    /// |μ̄| = Σ |μ⁽ⁱ⁾|.
    pub fn size(&self) -> usize {
        self.components.iter().map(|c| c.size()).sum()
    }

    /// π ∘ μ̄: row j of component i slides the element at position
    /// c*ᵢ − j + 1 rightward by μ⁽ⁱ⁾ⱼ places. Raises the inversion
    /// count by |μ̄|.
    pub fn apply(&self, p: &Permutation) -> Result<Permutation> {
        validate_target(&self.composition, p)?;
        let mut entries = p.entries().to_vec();
        let prefix = self.composition.prefix_sums();
        for (i, comp) in self.components.iter().enumerate() {
            let boundary = prefix[i + 1];
            for (row, &steps) in comp.parts().iter().enumerate() {
                let start = boundary - (row + 1); // 0-indexed slot of position c*ᵢ − j + 1
                for t in 0..steps {
                    entries.swap(start + t, start + t + 1);
                }
            }
        }
        Ok(Permutation::from_entries_unchecked(entries))
    }
}

impl OuterJumpPartition {
    pub fn new(composition: BlockComposition, components: Vec<Partition>) -> Result<Self> {
        validate_components(&composition, &components)?;
        Ok(OuterJumpPartition {
            composition,
            components,
        })
    }

    pub fn empty(composition: BlockComposition) -> Self {
        let components = vec![Partition::empty(); composition.len().saturating_sub(1)];
        OuterJumpPartition {
            composition,
            components,
        }
    }

    pub fn composition(&self) -> &BlockComposition {
        &self.composition
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(|c| c.size()).sum()
    }

    /// ν̄ ∘ π: row j of component i raises the value c*ᵢ − j + 1 upward
    /// by ν⁽ⁱ⁾ⱼ, exchanging it with each successor value in turn.
    /// Raises the inversion count by |ν̄|.
    pub fn apply(&self, p: &Permutation) -> Result<Permutation> {
        validate_target(&self.composition, p)?;
        let mut entries = p.entries().to_vec();
        let n = entries.len();
        let mut pos = vec![0usize; n + 2];
        for (idx, &v) in entries.iter().enumerate() {
            pos[v] = idx;
        }
        let prefix = self.composition.prefix_sums();
        for (i, comp) in self.components.iter().enumerate() {
            let boundary = prefix[i + 1];
            for (row, &steps) in comp.parts().iter().enumerate() {
                for t in 1..=steps {
                    let v = boundary - (row + 1) + t; // swap values v and v+1
                    let (a, b) = (pos[v], pos[v + 1]);
                    entries.swap(a, b);
                    pos[v] = b;
                    pos[v + 1] = a;
                }
            }
        }
        Ok(Permutation::from_entries_unchecked(entries))
    }
}

impl fmt::Display for InnerJumpPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_components(&self.components, f)
    }
}

impl fmt::Display for OuterJumpPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_components(&self.components, f)
    }
}

/// A jump partition J = (μ̄, ν̄): an inner and an outer jump partition
/// attached to the same composition, of total size |J| = |μ̄| + |ν̄|.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "JumpPartitionRepr", into = "JumpPartitionRepr")]
pub struct JumpPartition {
    inner: InnerJumpPartition,
    outer: OuterJumpPartition,
}

impl JumpPartition {
    pub fn new(inner: InnerJumpPartition, outer: OuterJumpPartition) -> Result<Self> {
        if inner.composition != outer.composition {
            return Err(Error::CompositionDisagreement);
        }
        Ok(JumpPartition { inner, outer })
    }

    /// Builds both halves from raw component lists.
    pub fn from_parts(
        composition: BlockComposition,
        inner: Vec<Partition>,
        outer: Vec<Partition>,
    ) -> Result<Self> {
        let inner = InnerJumpPartition::new(composition.clone(), inner)?;
        let outer = OuterJumpPartition::new(composition, outer)?;
        Ok(JumpPartition { inner, outer })
    }

    pub fn empty(composition: BlockComposition) -> Self {
        JumpPartition {
            inner: InnerJumpPartition::empty(composition.clone()),
            outer: OuterJumpPartition::empty(composition),
        }
    }

    pub fn composition(&self) -> &BlockComposition {
        &self.inner.composition
    }

    pub fn inner(&self) -> &InnerJumpPartition {
        &self.inner
    }

    pub fn outer(&self) -> &OuterJumpPartition {
        &self.outer
    }

    /// |J| = |μ̄| + |ν̄|.
    pub fn size(&self) -> usize {
        self.inner.size() + self.outer.size()
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 0
    }

    /// The jump partition with inner and outer roles exchanged.
    pub fn swapped(&self) -> JumpPartition {
        JumpPartition {
            inner: InnerJumpPartition {
                composition: self.inner.composition.clone(),
                components: self.outer.components.clone(),
            },
            outer: OuterJumpPartition {
                composition: self.inner.composition.clone(),
                components: self.inner.components.clone(),
            },
        }
    }

    /// J(π) = ν̄ ∘ π ∘ μ̄: the inner half acts first; the order of the
    /// two halves does not change the result.
    pub fn apply(&self, p: &Permutation) -> Result<Permutation> {
        self.outer.apply(&self.inner.apply(p)?)
    }
}

#[derive(Serialize, Deserialize)]
struct JumpPartitionRepr {
    composition: Vec<usize>,
    inner: Vec<Vec<usize>>,
    outer: Vec<Vec<usize>>,
}

impl TryFrom<JumpPartitionRepr> for JumpPartition {
    type Error = Error;
    fn try_from(repr: JumpPartitionRepr) -> Result<Self> {
        let composition = BlockComposition::new(repr.composition)?;
        let inner = repr
            .inner
            .into_iter()
            .map(Partition::new)
            .collect::<Result<Vec<_>>>()?;
        let outer = repr
            .outer
            .into_iter()
            .map(Partition::new)
            .collect::<Result<Vec<_>>>()?;
        JumpPartition::from_parts(composition, inner, outer)
    }
}

impl From<JumpPartition> for JumpPartitionRepr {
    fn from(j: JumpPartition) -> JumpPartitionRepr {
        JumpPartitionRepr {
            composition: j.inner.composition.blocks().to_vec(),
            inner: j
                .inner
                .components
                .iter()
                .map(|p| p.parts().to_vec())
                .collect(),
            outer: j
                .outer
                .components
                .iter()
                .map(|p| p.parts().to_vec())
                .collect(),
        }
    }
}

impl fmt::Display for JumpPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inner ")?;
        format_components(&self.inner.components, f)?;
        write!(f, " outer ")?;
        format_components(&self.outer.components, f)
    }
}

/// All jump partitions of the given size attached to a composition,
/// each once, in a deterministic order.
///
/// Built by routing the colors of 2(M−1)-colored partitions of Δ to
/// components (color 2i to μ⁽ⁱ⁺¹⁾, color 2i+1 to ν⁽ⁱ⁺¹⁾) and filtering
/// by the component bounds. When Δ is below the smallest block the
/// filter never rejects, so the count is p_{2(M−1)}(Δ).
pub fn enumerate_jumps(composition: &BlockComposition, delta: usize) -> Vec<JumpPartition> {
    let m = composition.len();
    if m <= 1 {
        return if delta == 0 {
            vec![JumpPartition::empty(composition.clone())]
        } else {
            Vec::new()
        };
    }
    let colors = 2 * (m - 1);
    colored_enumerate(colors, delta)
        .into_iter()
        .filter_map(|cp| {
            let inner: Vec<Partition> = (0..m - 1).map(|i| cp.monochrome(2 * i)).collect();
            let outer: Vec<Partition> = (0..m - 1).map(|i| cp.monochrome(2 * i + 1)).collect();
            JumpPartition::from_parts(composition.clone(), inner, outer).ok()
        })
        .collect()
}

/// True when applying J preserves the insertion shape.
pub fn is_valid(j: &JumpPartition, p: &Permutation) -> Result<bool> {
    Ok(shape_of(&j.apply(p)?) == shape_of(p))
}

/// The inverse law: (J(π))⁻¹ equals the swapped jump partition applied
/// to the same layered permutation.
pub fn inverse_identity_check(j: &JumpPartition, p: &Permutation) -> Result<bool> {
    Ok(j.apply(p)?.inverse() == j.swapped().apply(p)?)
}

/// Points of the permutation diagram split by the bounding rectangle of
/// the leftmost maximal decreasing subsequence. Region names follow the
/// compass layout around that rectangle: b/c sit to the left (middle
/// and bottom bands), f below, g above, h/j to the right (top and
/// middle bands); d, e and interior points are structure violations
/// outside the supported regime.
#[derive(Debug, Default)]
pub(crate) struct RegionSplit {
    pub s_points: Vec<(usize, usize)>,
    pub b: Vec<(usize, usize)>,
    pub c: Vec<(usize, usize)>,
    pub f: Vec<(usize, usize)>,
    pub g: Vec<(usize, usize)>,
    pub h: Vec<(usize, usize)>,
    pub j: Vec<(usize, usize)>,
    pub bad: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Confinement {
    /// All complement points in {b, c, f}.
    LowerLeft,
    /// All complement points in {g, h, j}.
    UpperRight,
    Mixed,
    Violated,
}

impl RegionSplit {
    pub fn confinement(&self) -> Confinement {
        if !self.bad.is_empty() {
            return Confinement::Violated;
        }
        let lower = self.b.len() + self.c.len() + self.f.len();
        let upper = self.g.len() + self.h.len() + self.j.len();
        match (lower, upper) {
            (_, 0) => Confinement::LowerLeft,
            (0, _) => Confinement::UpperRight,
            _ => Confinement::Mixed,
        }
    }

    /// Complement points sorted by position; true when their values
    /// strictly decrease.
    pub fn complement_decreasing(&self) -> bool {
        let mut points: Vec<(usize, usize)> = self
            .b
            .iter()
            .chain(&self.c)
            .chain(&self.f)
            .chain(&self.g)
            .chain(&self.h)
            .chain(&self.j)
            .chain(&self.bad)
            .copied()
            .collect();
        points.sort_unstable();
        points.windows(2).all(|w| w[0].1 > w[1].1)
    }
}

/// Classifies every point off the leftmost LDS into the regions cut out
/// by the LDS bounding rectangle.
pub(crate) fn split_by_leftmost_lds(p: &Permutation) -> RegionSplit {
    let mut split = RegionSplit::default();
    let n = p.len();
    if n == 0 {
        return split;
    }
    let lds = p.leftmost_lds();
    let mut on_lds = vec![false; n + 1];
    for &pos in &lds {
        on_lds[pos] = true;
    }
    let x_top = lds[0];
    let x_bot = *lds.last().unwrap();
    let y_top = p.value_at(x_top);
    let y_bot = p.value_at(x_bot);
    split.s_points = lds.iter().map(|&pos| (pos, p.value_at(pos))).collect();
    for (idx, &val) in p.entries().iter().enumerate() {
        let pos = idx + 1;
        if on_lds[pos] {
            continue;
        }
        let point = (pos, val);
        let bucket = if val > y_top {
            if pos < x_top {
                &mut split.bad // d
            } else if pos < x_bot {
                &mut split.g
            } else {
                &mut split.h
            }
        } else if val < y_bot {
            if pos < x_top {
                &mut split.c
            } else if pos < x_bot {
                &mut split.f
            } else {
                &mut split.bad // e
            }
        } else if pos < x_top {
            &mut split.b
        } else if pos > x_bot {
            &mut split.j
        } else {
            &mut split.bad // interior of the rectangle
        };
        bucket.push(point);
    }
    split
}

/// Shape and excess data for a permutation whose shape has exactly two
/// columns, with the excess below the smaller column length.
struct TwoColumnFrame {
    shape: Partition,
    taller: usize,
    shorter: usize,
    delta: usize,
}

fn two_column_frame(p: &Permutation) -> Result<TwoColumnFrame> {
    let shape = shape_of(p);
    let conj = shape.conjugate();
    if conj.len() != 2 {
        return Err(Error::NotTwoColumn(shape.to_string()));
    }
    let (taller, shorter) = (conj.part(0), conj.part(1));
    let delta = p.inversions() - min_inversions(&shape);
    if delta >= shorter as u64 {
        return Err(Error::ExcessOutOfRegime {
            delta,
            bound: shorter,
        });
    }
    Ok(TwoColumnFrame {
        shape,
        taller,
        shorter,
        delta: delta as usize,
    })
}

/// Recovers the unique layered permutation and jump partition producing
/// a two-column permutation with excess below the smaller column.
///
/// The complement of the leftmost LDS determines the case: points in
/// {b, c, f} mean the short block leads, points in {g, h, j} mean the
/// tall block leads. Outer rows are read off b (or j) points by
/// counting LDS points below them, inner rows off f (or g) points by
/// counting LDS points beside them. The reconstruction is replayed and
/// compared against the input before returning.
pub fn decompose_two_column(sigma: &Permutation) -> Result<(Permutation, JumpPartition)> {
    let frame = two_column_frame(sigma)?;
    let (s, r) = (frame.taller, frame.shorter);
    let split = split_by_leftmost_lds(sigma);

    let (composition, inner, outer) = match split.confinement() {
        Confinement::LowerLeft => {
            // Short block first. Outer rows from b: LDS values below each
            // b point. Inner rows from f: LDS points left of each f
            // point, lowest value first.
            let outer: Vec<usize> = split
                .b
                .iter()
                .map(|&(_, val)| split.s_points.iter().filter(|&&(_, v)| v < val).count())
                .collect();
            let inner: Vec<usize> = split
                .f
                .iter()
                .rev()
                .map(|&(pos, _)| split.s_points.iter().filter(|&&(q, _)| q < pos).count())
                .collect();
            (BlockComposition::new(vec![r, s])?, inner, outer)
        }
        Confinement::UpperRight => {
            // Tall block first. The g points are the entries hopped over
            // by inner jumps: LDS points to their right count the column
            // lengths of μ. The j points are the values stepped over by
            // outer jumps: LDS values above them count the columns of ν.
            let inner_conj: Vec<usize> = split
                .g
                .iter()
                .map(|&(pos, _)| split.s_points.iter().filter(|&&(q, _)| q > pos).count())
                .collect();
            let outer_conj: Vec<usize> = split
                .j
                .iter()
                .rev()
                .map(|&(_, val)| split.s_points.iter().filter(|&&(_, v)| v > val).count())
                .collect();
            let inner = Partition::new(inner_conj)
                .map_err(|_| internal(sigma, "inner column counts not monotone"))?
                .conjugate();
            let outer = Partition::new(outer_conj)
                .map_err(|_| internal(sigma, "outer column counts not monotone"))?
                .conjugate();
            return finish_decomposition(
                sigma,
                &frame,
                BlockComposition::new(vec![s, r])?,
                inner,
                outer,
            );
        }
        Confinement::Mixed | Confinement::Violated => {
            return Err(internal(sigma, "complement points not confined"));
        }
    };

    let inner = Partition::new(inner).map_err(|_| internal(sigma, "inner rows not monotone"))?;
    let outer = Partition::new(outer).map_err(|_| internal(sigma, "outer rows not monotone"))?;
    finish_decomposition(sigma, &frame, composition, inner, outer)
}

fn finish_decomposition(
    sigma: &Permutation,
    frame: &TwoColumnFrame,
    composition: BlockComposition,
    inner: Partition,
    outer: Partition,
) -> Result<(Permutation, JumpPartition)> {
    debug_assert_eq!(composition.shape(), frame.shape);
    let jump = JumpPartition::from_parts(composition.clone(), vec![inner], vec![outer])
        .map_err(|_| internal(sigma, "reconstructed jumps violate the bounds"))?;
    if jump.size() != frame.delta {
        return Err(internal(sigma, "reconstructed size differs from the excess"));
    }
    let pi = minimal_from_composition(&composition);
    if jump.apply(&pi)? != *sigma {
        return Err(internal(sigma, "replay mismatch"));
    }
    Ok((pi, jump))
}

fn internal(sigma: &Permutation, what: &str) -> Error {
    Error::DecompositionInternal(format!("{what}: {sigma}"))
}

/// Structure of a two-column permutation with excess Δ below the
/// smaller column: one block keeps a run of untouched positions of
/// length (block length − Δ) in the window allowed by the jumps, for
/// both blocks of one of the two layered arrangements.
pub fn fixed_block_check(sigma: &Permutation) -> Result<bool> {
    let frame = two_column_frame(sigma)?;
    Ok(fixed_block_check_given(
        sigma,
        frame.taller,
        frame.shorter,
        frame.delta,
    ))
}

/// The window search itself, reusable when shape data is already known.
pub(crate) fn fixed_block_check_given(
    sigma: &Permutation,
    s: usize,
    r: usize,
    delta: usize,
) -> bool {
    // Tall block leading: entries s+1−q on a run of length s−Δ starting
    // within the first Δ+1 positions, and entries 2s+r+1−q on a run of
    // length r−Δ starting within positions s+1 ..= s+Δ+1.
    let tall_first = has_fixed_run(sigma, 1, delta + 1, s - delta, s + 1)
        && has_fixed_run(sigma, s + 1, s + delta + 1, r - delta, 2 * s + r + 1);
    if tall_first {
        return true;
    }
    // Short block leading: the mirrored alternative.
    has_fixed_run(sigma, 1, delta + 1, r - delta, r + 1)
        && has_fixed_run(sigma, r + 1, r + delta + 1, s - delta, s + 2 * r + 1)
}

/// Is there a start in `start_lo ..= start_hi` with
/// σ_q = offset − q for `run` consecutive positions q?
fn has_fixed_run(sigma: &Permutation, start_lo: usize, start_hi: usize, run: usize, offset: usize) -> bool {
    (start_lo..=start_hi).any(|start| {
        (start..start + run).all(|q| q < offset && sigma.value_at(q) == offset - q)
    })
}
