//! Exact edit distance and LCS computations.
//!
//! These serve two roles: subroutines run on stored windows and offline
//! substrings, and reference oracles for tests. Everything that touches the
//! offline text goes through its counting accessor and keeps at most one DP
//! row (metered as offline scratch).

use std::cmp::{min, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{Category, MemoryMeter, OfflineText, SubstringRef, Symbol};

/// An offline position or the distinguished value above every position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reach {
    At(usize),
    Infinity,
}

impl Reach {
    pub fn is_finite(self) -> bool {
        matches!(self, Reach::At(_))
    }

    pub fn position(self) -> Option<usize> {
        match self {
            Reach::At(q) => Some(q),
            Reach::Infinity => None,
        }
    }
}

/// Closed interval `[l, r]` of the offline text with a distance to the
/// online segment it was matched against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosestMatch {
    pub l: usize,
    pub r: usize,
    pub d: usize,
}

impl ClosestMatch {
    pub fn as_ref(&self) -> SubstringRef {
        SubstringRef::closed(self.l, self.r)
    }
}

/// Edit distance by dynamic programming (single row, no traceback).
pub fn ed_full(a: &[Symbol], b: &[Symbol]) -> usize {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut row: Vec<usize> = (0..=short.len()).collect();
    for (i, &x) in long.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, &y) in short.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = min(min(up, row[j]) + 1, diag + usize::from(x != y));
            diag = up;
        }
    }
    row[short.len()]
}

/// Length of a longest common subsequence.
pub fn lcs_full(a: &[Symbol], b: &[Symbol]) -> usize {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut row = vec![0usize; short.len() + 1];
    for &x in long {
        let mut diag = 0;
        for (j, &y) in short.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[short.len()]
}

/// Second operand of [`ed_bounded_space`].
#[derive(Clone, Copy, Debug)]
pub enum Operand<'w> {
    Offline(SubstringRef),
    Window(&'w [Symbol]),
}

impl Operand<'_> {
    fn len(&self) -> usize {
        match self {
            Operand::Offline(s) => s.len(),
            Operand::Window(w) => w.len(),
        }
    }

    #[inline]
    fn at(&self, text: &OfflineText, i: usize) -> Symbol {
        match self {
            Operand::Offline(s) => text.read(s.l + i),
            Operand::Window(w) => w[i],
        }
    }
}

/// Edit distance between an offline substring and either another offline
/// substring or a stored window, keeping one row over the shorter operand.
///
/// Offline symbols are re-queried as needed rather than copied, so scratch
/// stays at `min(|a|, |b|) + 1` units.
pub fn ed_bounded_space(text: &OfflineText, a: SubstringRef, b: Operand<'_>, meter: &MemoryMeter) -> Result<usize> {
    text.check(a)?;
    if let Operand::Offline(s) = b {
        text.check(s)?;
    }
    let a_op = Operand::Offline(a);
    let (long, short) = if a.len() >= b.len() { (a_op, b) } else { (b, a_op) };
    let (n_long, n_short) = (long.len(), short.len());
    let _scratch = meter.alloc(Category::ScratchOffline, n_short + 1);
    let mut row: Vec<usize> = (0..=n_short).collect();
    for i in 0..n_long {
        let x = long.at(text, i);
        let mut diag = row[0];
        row[0] = i + 1;
        for j in 0..n_short {
            let y = short.at(text, j);
            let up = row[j + 1];
            row[j + 1] = min(min(up, row[j]) + 1, diag + usize::from(x != y));
            diag = up;
        }
    }
    Ok(row[n_short])
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    cost: usize,
    start: usize,
}

impl Cell {
    fn better(self, other: Cell) -> Cell {
        match self.cost.cmp(&other.cost) {
            Ordering::Less => self,
            Ordering::Greater => other,
            Ordering::Equal => {
                if other.start < self.start {
                    other
                } else {
                    self
                }
            }
        }
    }
}

/// Closest non-empty offline substring to a stored window.
///
/// Free-start matching DP: every offline column may open an alignment at cost
/// zero, and each cell carries the smallest start index among its optimal
/// alignments. Among minimisers the smallest `r` wins, then the smallest `l`.
pub fn closest_substring_exact(text: &OfflineText, window: &[Symbol], meter: &MemoryMeter) -> Result<ClosestMatch> {
    if window.is_empty() {
        return Err(Error::Domain("closest substring of an empty window".into()));
    }
    if text.is_empty() {
        return Err(Error::Domain("closest substring in an empty text".into()));
    }
    let m = window.len();
    let _scratch = meter.alloc(Category::ScratchOffline, 2 * (m + 1));
    // Column c = 0: only the empty substring starting at 1.
    let mut col: Vec<Cell> = (0..=m).map(|j| Cell { cost: j, start: 1 }).collect();
    let mut best: Option<ClosestMatch> = None;
    for c in 1..=text.len() {
        let x = text.read(c);
        let mut diag = col[0];
        col[0] = Cell { cost: 0, start: c + 1 };
        for j in 1..=m {
            let left = col[j];
            let via_diag = Cell {
                cost: diag.cost + usize::from(x != window[j - 1]),
                start: diag.start,
            };
            let via_up = Cell {
                cost: col[j - 1].cost + 1,
                start: col[j - 1].start,
            };
            let via_left = Cell {
                cost: left.cost + 1,
                start: left.start,
            };
            col[j] = via_diag.better(via_up).better(via_left);
            diag = left;
        }
        let end = col[m];
        debug_assert!(end.start <= c, "a non-empty substring is always optimal");
        if best.is_none_or(|b| end.cost < b.d) {
            best = Some(ClosestMatch {
                l: end.start,
                r: c,
                d: end.cost,
            });
        }
    }
    Ok(best.expect("text is non-empty"))
}

/// Exhaustive closest substring over every `1 ≤ i ≤ j ≤ n`. Oracle only;
/// cubic in the text length times the online length.
pub fn closest_substring_brute(text: &OfflineText, online: &[Symbol]) -> Result<ClosestMatch> {
    if text.is_empty() {
        return Err(Error::Domain("closest substring in an empty text".into()));
    }
    let s: Vec<Symbol> = (1..=text.len()).map(|i| text.char_at(i)).collect::<Result<_>>()?;
    let mut best: Option<ClosestMatch> = None;
    for r in 1..=s.len() {
        for l in 1..=r {
            let d = ed_full(&s[l - 1..r], online);
            if best.is_none_or(|b| d < b.d) {
                best = Some(ClosestMatch { l, r, d });
            }
        }
    }
    Ok(best.unwrap())
}

/// Resumable forward scan answering `lcsp(p, k)` for non-decreasing `k`
/// against a stored window.
///
/// One LCS row over the window is kept; each step reads one more offline
/// symbol. Since the row maximum grows by at most one per symbol, the first
/// position where it reaches `k` is the smallest such `q`.
pub struct LcspScanner<'t, 'w> {
    text: &'t OfflineText,
    window: &'w [Symbol],
    start: usize,
    pos: usize,
    row: Vec<usize>,
    last_k: usize,
    _scratch: crate::text::Allocation<'t>,
}

impl<'t, 'w> LcspScanner<'t, 'w> {
    pub fn new(text: &'t OfflineText, p: usize, window: &'w [Symbol], meter: &'t MemoryMeter) -> Result<Self> {
        if p == 0 || p > text.len() + 1 {
            return Err(Error::OutOfBounds {
                index: p,
                len: text.len() + 1,
            });
        }
        Ok(LcspScanner {
            text,
            window,
            start: p,
            pos: p - 1,
            row: vec![0; window.len() + 1],
            last_k: 0,
            _scratch: meter.alloc(Category::ScratchOffline, window.len() + 1),
        })
    }

    /// Smallest `q` with `lcs(s̄[p, q], window) ≥ k`; `k = 0` gives `p − 1`.
    pub fn advance_to(&mut self, k: usize) -> Reach {
        debug_assert!(k >= self.last_k, "lcsp queries must be non-decreasing in k");
        self.last_k = k;
        if k == 0 {
            return Reach::At(self.start - 1);
        }
        let w = self.window.len();
        if k > w {
            return Reach::Infinity;
        }
        while self.row[w] < k {
            if self.pos == self.text.len() {
                return Reach::Infinity;
            }
            self.pos += 1;
            let x = self.text.read(self.pos);
            let mut diag = 0;
            for j in 1..=w {
                let up = self.row[j];
                self.row[j] = if self.window[j - 1] == x {
                    diag + 1
                } else {
                    up.max(self.row[j - 1])
                };
                diag = up;
            }
        }
        Reach::At(self.pos)
    }
}

/// `lcsp(p, k)`: the smallest offline position `q` such that
/// `lcs(s̄[p, q], window) ≥ k`, or infinity.
pub fn lcsp_scan(text: &OfflineText, p: usize, window: &[Symbol], k: usize, meter: &MemoryMeter) -> Result<Reach> {
    Ok(LcspScanner::new(text, p, window, meter)?.advance_to(k))
}
