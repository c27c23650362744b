//! Recursive approximate closest substring and the constant-factor edit
//! distance estimate built on it.
//!
//! The online segment is cut into `ξ = ⌈n^δ⌉` balanced windows. Each window
//! is solved recursively and only its summary `(l_i, r_i, d_i)` is kept. The
//! segment's answer is then the best way to lay the windows over consecutive
//! offline pieces `s̄[p_{i−1}, p_i)`, scoring piece `i` as
//! `d_i + ed(s̄[p_{i−1}, p_i), s̄[l_i, r_i])` so the window itself is never
//! needed again. Segments of at most `⌈n^δ⌉` symbols are buffered and solved
//! exactly.
//!
//! Each recursion level at most doubles-plus-one the approximation factor,
//! giving `2^{⌈γ/δ⌉+1} − 1` for a segment of length `n^γ`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exact::{closest_substring_exact, ed_bounded_space, ClosestMatch, Operand};
use crate::numeric::{ceil_pow, ceil_recip, Rational};
use crate::text::{Category, MemoryMeter, OfflineText, OnlineStream, SubstringRef};

/// Default ceiling on the number of mapping tuples the enumeration may visit.
pub const DEFAULT_ENUM_LIMIT: u128 = 100_000_000;

/// Per-window result of a recursive call: closed interval and approximate
/// distance.
pub type WindowSummary = ClosestMatch;

/// How the best window-to-piece mapping is searched.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MappingSearch {
    /// Lexicographic enumeration of every mapping tuple; `O(ξ)` state.
    #[default]
    Enumerate,
    /// Suffix dynamic program over `(i, p_i)`; same result, `O(ξ·n)` state.
    Dp,
}

#[derive(Clone, Debug)]
pub struct RecursionConfig {
    pub delta: Rational,
    /// Offline length; fixed across recursion levels.
    pub n: usize,
    /// `⌈n^δ⌉`: segments this short are solved exactly, and also the
    /// window count at every split.
    pub base_threshold: usize,
    pub search: MappingSearch,
    pub force: bool,
    pub enum_limit: u128,
}

impl RecursionConfig {
    pub fn new(n: usize, delta: Rational) -> Result<Self> {
        if *delta.numer() == 0 || delta > Rational::from_integer(1) {
            return Err(Error::Config(format!("delta must lie in (0, 1], got {delta}")));
        }
        Ok(RecursionConfig {
            base_threshold: ceil_pow(n, &delta).max(1),
            delta,
            n,
            search: MappingSearch::Enumerate,
            force: false,
            enum_limit: DEFAULT_ENUM_LIMIT,
        })
    }

    pub fn with_search(mut self, search: MappingSearch) -> Self {
        self.search = search;
        self
    }

    pub fn with_force(mut self, force: bool) -> Self {
        self.force = force;
        self
    }

    pub fn with_enum_limit(mut self, limit: u128) -> Self {
        self.enum_limit = limit;
        self
    }

    /// Window count for a segment of length `m`.
    pub fn xi(&self, m: usize) -> usize {
        self.base_threshold.min(m)
    }

    /// Refuses enumeration runs whose tuple count exceeds the limit.
    pub fn check_tractable(&self) -> Result<()> {
        if self.search != MappingSearch::Enumerate || self.force || self.n <= self.base_threshold {
            return Ok(());
        }
        let tuples = mapping_count(self.xi(self.n), self.n);
        match tuples {
            Some(t) if t <= self.enum_limit => Ok(()),
            _ => Err(Error::Intractable {
                tuples,
                limit: self.enum_limit,
            }),
        }
    }
}

/// Approximation factor proven for a top-level closest substring run:
/// `2^{⌈1/δ⌉+1} − 1`.
pub fn closest_bound(delta: &Rational) -> u64 {
    (1u64 << (ceil_recip(delta) + 1)) - 1
}

/// Factor for the edit distance estimate: `2α + 1` with `α` from
/// [`closest_bound`], i.e. `2^{⌈1/δ⌉+2} − 1`.
pub fn ed_const_bound(delta: &Rational) -> u64 {
    2 * closest_bound(delta) + 1
}

/// `2^{⌈γ/δ⌉+1} − 1` for a segment of length `len = n^γ`.
pub fn segment_bound(n: usize, len: usize, delta: &Rational) -> u64 {
    if len <= 1 || n <= 1 {
        return 1;
    }
    // ⌈γ/δ⌉ is the least t with len ≤ n^{tδ}, i.e. len^b ≤ n^{ta} for δ = a/b.
    let (a, b) = (*delta.numer() as u32, *delta.denom() as u32);
    let lhs = BigUint::from(len).pow(b);
    let mut t = 0u32;
    while BigUint::from(n).pow(t * a) < lhs {
        t += 1;
    }
    (1u64 << (t + 1)) - 1
}

/// Number of non-decreasing `(ξ+1)`-tuples over `[1, n+1]`:
/// `C(n + 1 + ξ, ξ + 1)`, or `None` past `u128`.
pub fn mapping_count(xi: usize, n: usize) -> Option<u128> {
    let total = (n + 1 + xi) as u128;
    let k = (xi + 1) as u128;
    let mut c: u128 = 1;
    for i in 1..=k {
        c = c.checked_mul(total - k + i)? / i;
    }
    Some(c)
}

/// Lexicographic walk over mapping tuples `1 ≤ p_0 ≤ … ≤ p_ξ ≤ n+1`,
/// holding only the current tuple.
#[derive(Clone, Debug)]
pub struct MappingEnumerator {
    p: Vec<usize>,
    top: usize,
    started: bool,
}

impl MappingEnumerator {
    pub fn new(xi: usize, n: usize) -> Self {
        MappingEnumerator {
            p: vec![1; xi + 1],
            top: n + 1,
            started: false,
        }
    }

    /// Moves to the next tuple, returning the first index that changed.
    pub fn advance(&mut self) -> Option<usize> {
        if !self.started {
            self.started = true;
            return Some(0);
        }
        let i = self.p.iter().rposition(|&v| v < self.top)?;
        let v = self.p[i] + 1;
        self.p[i..].fill(v);
        Some(i)
    }

    /// Skips every remaining tuple that shares `p[0..=i]` with the current one.
    pub fn skip_suffix_after(&mut self, i: usize) {
        let top = self.top;
        self.p[i + 1..].fill(top);
    }

    pub fn current(&self) -> &[usize] {
        &self.p
    }
}

/// Owning iterator over every mapping tuple, in lexicographic order.
pub struct Mappings(MappingEnumerator);

impl Iterator for Mappings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.0.advance().map(|_| self.0.current().to_vec())
    }
}

pub fn enumerate_mappings(xi: usize, n: usize) -> Mappings {
    Mappings(MappingEnumerator::new(xi, n))
}

fn piece_cost(
    text: &OfflineText,
    summary: &WindowSummary,
    from: usize,
    to: usize,
    meter: &MemoryMeter,
) -> Result<usize> {
    let piece = SubstringRef::new(from, to);
    Ok(summary.d + ed_bounded_space(text, piece, Operand::Offline(summary.as_ref()), meter)?)
}

/// Best mapping by enumeration. Ties go to the lexicographically first tuple.
pub fn mapping_min_enumerate(
    summaries: &[WindowSummary],
    text: &OfflineText,
    meter: &MemoryMeter,
) -> Result<ClosestMatch> {
    if summaries.is_empty() {
        return Err(Error::Domain("mapping search needs at least one window".into()));
    }
    let xi = summaries.len();
    let _state = meter.alloc(Category::FrontierState, 2 * (xi + 1));
    let mut walk = MappingEnumerator::new(xi, text.len());
    let mut prefix = vec![0usize; xi + 1];
    let mut best: Option<ClosestMatch> = None;
    'tuples: while let Some(changed) = walk.advance() {
        let p = walk.current();
        for i in changed.max(1)..=xi {
            prefix[i] = prefix[i - 1] + piece_cost(text, &summaries[i - 1], p[i - 1], p[i], meter)?;
            if best.is_some_and(|b| prefix[i] >= b.d) {
                // Every later tuple with this prefix is at least as costly.
                walk.skip_suffix_after(i);
                continue 'tuples;
            }
        }
        best = Some(ClosestMatch {
            l: p[0],
            r: p[xi] - 1,
            d: prefix[xi],
        });
    }
    Ok(best.expect("at least one tuple exists"))
}

/// Costs `cost_i(from, to)` for every `to` in `from..=n+1`, in order, via one
/// incremental column over the summary substring.
fn sweep_piece_costs(
    text: &OfflineText,
    summary: &WindowSummary,
    from: usize,
    meter: &MemoryMeter,
    mut visit: impl FnMut(usize, usize) -> bool,
) {
    let len = summary.r + 1 - summary.l;
    let _scratch = meter.alloc(Category::ScratchOffline, len + 1);
    let mut col: Vec<usize> = (0..=len).collect();
    let top = text.len() + 1;
    let mut to = from;
    loop {
        if !visit(to, summary.d + col[len]) || to == top {
            return;
        }
        let x = text.read(to);
        let mut diag = col[0];
        col[0] += 1;
        for j in 1..=len {
            let up = col[j];
            let y = text.read(summary.l + j - 1);
            col[j] = (up.min(col[j - 1]) + 1).min(diag + usize::from(x != y));
            diag = up;
        }
        to += 1;
    }
}

/// Best mapping by a suffix dynamic program. Returns the same tuple the
/// enumeration would (the lexicographically first minimiser).
pub fn mapping_min_dp(summaries: &[WindowSummary], text: &OfflineText, meter: &MemoryMeter) -> Result<ClosestMatch> {
    if summaries.is_empty() {
        return Err(Error::Domain("mapping search needs at least one window".into()));
    }
    let xi = summaries.len();
    let top = text.len() + 1;
    let _state = meter.alloc(Category::FrontierState, (xi + 1) * top);
    // suffix[i][p - 1]: cheapest cost of pieces i+1..=ξ given p_i = p.
    let mut suffix = vec![vec![0usize; top]; xi + 1];
    for i in (1..=xi).rev() {
        for p in 1..=top {
            let mut best = usize::MAX;
            let next = &suffix[i];
            sweep_piece_costs(text, &summaries[i - 1], p, meter, |to, cost| {
                best = best.min(cost + next[to - 1]);
                true
            });
            suffix[i - 1][p - 1] = best;
        }
    }
    let d = *suffix[0].iter().min().unwrap();
    let mut p = 1 + suffix[0].iter().position(|&v| v == d).unwrap();
    let l = p;
    for i in 1..=xi {
        let need = suffix[i - 1][p - 1];
        let next = &suffix[i];
        let mut chosen = None;
        sweep_piece_costs(text, &summaries[i - 1], p, meter, |to, cost| {
            if cost + next[to - 1] == need {
                chosen = Some(to);
                false
            } else {
                true
            }
        });
        p = chosen.expect("the optimum is attained");
    }
    Ok(ClosestMatch { l, r: p - 1, d })
}

/// One solved recursion node, reported to tracing callers.
#[derive(Clone, Copy, Debug)]
pub struct NodeTrace {
    /// 0-based offset of the segment in the online string.
    pub offset: usize,
    pub len: usize,
    pub depth: usize,
    pub result: ClosestMatch,
}

struct Solver<'a, 'm> {
    text: &'a OfflineText,
    cfg: &'a RecursionConfig,
    meter: &'m MemoryMeter,
}

impl Solver<'_, '_> {
    fn solve(
        &self,
        stream: &mut OnlineStream<'_>,
        m: usize,
        depth: usize,
        trace: &mut dyn FnMut(&NodeTrace),
    ) -> Result<ClosestMatch> {
        if m == 0 {
            return Err(Error::Domain("closest substring of an empty segment".into()));
        }
        let offset = stream.delivered();
        let result = if m <= self.cfg.base_threshold {
            let _buffer = self.meter.alloc(Category::StreamBuffer, m);
            let mut window = Vec::with_capacity(m);
            stream.fill(&mut window, m)?;
            closest_substring_exact(self.text, &window, self.meter)?
        } else {
            let xi = self.cfg.xi(m);
            let _summaries = self.meter.alloc(Category::FrontierState, 3 * xi);
            let mut summaries = Vec::with_capacity(xi);
            let (short, extra) = (m / xi, m % xi);
            for i in 0..xi {
                let len = short + usize::from(i < extra);
                summaries.push(self.solve(stream, len, depth + 1, trace)?);
            }
            match self.cfg.search {
                MappingSearch::Enumerate => mapping_min_enumerate(&summaries, self.text, self.meter)?,
                MappingSearch::Dp => mapping_min_dp(&summaries, self.text, self.meter)?,
            }
        };
        trace(&NodeTrace {
            offset,
            len: m,
            depth,
            result,
        });
        Ok(result)
    }
}

/// Approximate closest substring of the next `m` online symbols.
pub fn closest_substring_stream(
    text: &OfflineText,
    stream: &mut OnlineStream<'_>,
    m: usize,
    cfg: &RecursionConfig,
    meter: &MemoryMeter,
) -> Result<ClosestMatch> {
    closest_substring_stream_traced(text, stream, m, cfg, meter, &mut |_| {})
}

/// As [`closest_substring_stream`], reporting every recursion node.
pub fn closest_substring_stream_traced(
    text: &OfflineText,
    stream: &mut OnlineStream<'_>,
    m: usize,
    cfg: &RecursionConfig,
    meter: &MemoryMeter,
    trace: &mut dyn FnMut(&NodeTrace),
) -> Result<ClosestMatch> {
    if text.is_empty() {
        return Err(Error::Domain("closest substring in an empty text".into()));
    }
    Solver { text, cfg, meter }.solve(stream, m, 0, trace)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdConstOutcome {
    pub estimate: usize,
    /// `None` only for empty inputs.
    pub closest: Option<ClosestMatch>,
}

/// Constant-factor edit distance: `d + ed(s̄[l, r], s̄)` where `(l, r, d)` is
/// the approximate closest substring of the whole online string.
pub fn ed_const_estimate(
    text: &OfflineText,
    stream: &mut OnlineStream<'_>,
    cfg: &RecursionConfig,
    meter: &MemoryMeter,
) -> Result<EdConstOutcome> {
    let n = text.len();
    if stream.len() != n {
        return Err(Error::Model(format!(
            "offline and online strings must have equal length ({n} vs {})",
            stream.len()
        )));
    }
    if n == 0 {
        stream.next_symbol()?;
        return Ok(EdConstOutcome {
            estimate: 0,
            closest: None,
        });
    }
    cfg.check_tractable()?;
    let closest = closest_substring_stream(text, stream, n, cfg, meter)?;
    // Surfaces a longer-than-declared source.
    if stream.next_symbol()?.is_some() {
        return Err(Error::SinglePass("stream not fully consumed".into()));
    }
    let tail = ed_bounded_space(text, closest.as_ref(), Operand::Offline(text.full()), meter)?;
    Ok(EdConstOutcome {
        estimate: closest.d + tail,
        closest: Some(closest),
    })
}
