//! Young tableaux, Schensted row insertion, and the Robinson-Schensted
//! correspondence between permutations and pairs of standard tableaux
//! of the same shape.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::permutation::Permutation;

/// A tableau with distinct positive entries that strictly increase
/// along rows and down columns, with weakly decreasing row lengths.
///
/// A tableau of size n whose entries are exactly {1, …, n} is a
/// standard Young tableau; see [`Tableau::is_standard`]. Row insertion
/// builds intermediate tableaux whose entries are not yet an initial
/// segment, which is why the type allows arbitrary distinct entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (i, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidTableau);
            }
            if i > 0 && row.len() > rows[i - 1].len() {
                return Err(Error::InvalidTableau);
            }
            for (j, &v) in row.iter().enumerate() {
                if v == 0 || !seen.insert(v) {
                    return Err(Error::InvalidTableau);
                }
                if j > 0 && row[j - 1] >= v {
                    return Err(Error::InvalidTableau);
                }
                if i > 0 && rows[i - 1][j] >= v {
                    return Err(Error::InvalidTableau);
                }
            }
        }
        Ok(Tableau { rows })
    }

    pub fn empty() -> Self {
        Tableau { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn shape(&self) -> Partition {
        let lengths: Vec<usize> = self.rows.iter().map(|r| r.len()).collect();
        Partition::new(lengths).expect("row lengths weakly decrease")
    }

    /// True when the entries are exactly {1, …, n}.
    pub fn is_standard(&self) -> bool {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        for row in &self.rows {
            for &v in row {
                if v > n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        true
    }

    /// Schensted row insertion of a value not present in the tableau.
    /// Returns the grown tableau and the 1-indexed (row, column) of the
    /// cell added.
    pub fn row_insert(&self, x: usize) -> Result<(Tableau, (usize, usize))> {
        if x == 0 {
            return Err(Error::InvalidTableau);
        }
        if self.rows.iter().any(|r| r.binary_search(&x).is_ok()) {
            return Err(Error::DuplicateEntry(x));
        }
        let mut rows = self.rows.clone();
        let cell = bump_rows(&mut rows, x);
        Ok((Tableau { rows }, (cell.0 + 1, cell.1 + 1)))
    }
}

impl TryFrom<Vec<Vec<usize>>> for Tableau {
    type Error = Error;
    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Tableau::new(rows)
    }
}

impl From<Tableau> for Vec<Vec<usize>> {
    fn from(t: Tableau) -> Vec<Vec<usize>> {
        t.rows
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Insertion tableau P and recording tableau Q of a permutation;
/// both standard, of equal shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsPair {
    insertion: Tableau,
    recording: Tableau,
}

impl RsPair {
    pub fn new(insertion: Tableau, recording: Tableau) -> Result<Self> {
        if !insertion.is_standard()
            || !recording.is_standard()
            || insertion.shape() != recording.shape()
        {
            return Err(Error::InvalidRsPair);
        }
        Ok(RsPair {
            insertion,
            recording,
        })
    }

    pub fn insertion(&self) -> &Tableau {
        &self.insertion
    }

    pub fn recording(&self) -> &Tableau {
        &self.recording
    }

    pub fn shape(&self) -> Partition {
        self.insertion.shape()
    }
}

/// The Robinson-Schensted correspondence: row-inserts the one-line
/// entries to build P, recording in Q the cell created at each step.
pub fn rs(p: &Permutation) -> RsPair {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut recording: Vec<Vec<usize>> = Vec::new();
    for (step, &x) in p.entries().iter().enumerate() {
        let (row, col) = bump_rows(&mut rows, x);
        if row == recording.len() {
            recording.push(Vec::new());
        }
        debug_assert_eq!(col, recording[row].len());
        recording[row].push(step + 1);
    }
    RsPair {
        insertion: Tableau { rows },
        recording: Tableau { rows: recording },
    }
}

/// The shape sh(π) of the insertion tableau of π.
pub fn shape_of(p: &Permutation) -> Partition {
    let mut scratch = InsertionScratch::new();
    scratch.reset();
    for &x in p.entries() {
        scratch.insert(x);
    }
    scratch.shape()
}

/// Inverts the correspondence: recovers the unique permutation whose
/// insertion and recording tableaux are the given pair.
///
/// Rejects non-standard tableaux and mismatched shapes. Cells are
/// removed in decreasing recording order, reverse-bumping from the row
/// of each removed corner.
pub fn rs_inverse(insertion: &Tableau, recording: &Tableau) -> Result<Permutation> {
    if !insertion.is_standard()
        || !recording.is_standard()
        || insertion.shape() != recording.shape()
    {
        return Err(Error::InvalidRsPair);
    }
    let n = insertion.size();
    let mut rows = insertion.rows.clone();
    // Position of each recording entry, found once up front.
    let mut cell_of = vec![(0usize, 0usize); n + 1];
    for (i, row) in recording.rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            cell_of[v] = (i, j);
        }
    }
    let mut entries = vec![0usize; n];
    for step in (1..=n).rev() {
        let (row, col) = cell_of[step];
        debug_assert_eq!(col + 1, rows[row].len());
        let mut carried = rows[row].pop().expect("corner exists");
        if rows[row].is_empty() {
            rows.pop();
        }
        for upper in (0..row).rev() {
            // The rightmost entry smaller than the carried value is the
            // one that bumped it downward.
            let idx = rows[upper].partition_point(|&t| t < carried);
            debug_assert!(idx > 0, "standard pairs always reverse-bump");
            std::mem::swap(&mut carried, &mut rows[upper][idx - 1]);
        }
        entries[step - 1] = carried;
    }
    Permutation::new(entries)
}

/// Core bumping pass shared by [`rs`], [`Tableau::row_insert`] and the
/// scratch used in sweeps. Returns the 0-indexed cell created.
fn bump_rows(rows: &mut Vec<Vec<usize>>, mut x: usize) -> (usize, usize) {
    for (i, row) in rows.iter_mut().enumerate() {
        let idx = row.partition_point(|&t| t < x);
        if idx == row.len() {
            row.push(x);
            return (i, idx);
        }
        std::mem::swap(&mut x, &mut row[idx]);
    }
    rows.push(vec![x]);
    (rows.len() - 1, 0)
}

/// Reusable row buffers for shape-only insertion in hot sweeps; resets
/// keep the allocations.
pub(crate) struct InsertionScratch {
    rows: Vec<Vec<usize>>,
    used: usize,
}

impl InsertionScratch {
    pub fn new() -> Self {
        InsertionScratch {
            rows: Vec::new(),
            used: 0,
        }
    }

    pub fn reset(&mut self) {
        for row in &mut self.rows[..self.used] {
            row.clear();
        }
        self.used = 0;
    }

    pub fn insert(&mut self, mut x: usize) {
        for i in 0..self.used {
            let row = &mut self.rows[i];
            let idx = row.partition_point(|&t| t < x);
            if idx == row.len() {
                row.push(x);
                return;
            }
            std::mem::swap(&mut x, &mut row[idx]);
        }
        if self.used == self.rows.len() {
            self.rows.push(Vec::new());
        }
        self.rows[self.used].push(x);
        self.used += 1;
    }

    pub fn row_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows[..self.used].iter().map(|r| r.len())
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.row_lengths().collect()).expect("row lengths weakly decrease")
    }
}
