//! Single-pass `(1+ε)`-approximate edit distance over square-root windows.
//!
//! For a distance guess `d`, window `i` may only map onto an offline interval
//! ending within `2d` of its nominal end `β_i + 1`, and only at positions on
//! a grid of pitch `κ = max(1, ⌊dε/√N⌋)` (or at 1). The frontier holds the
//! cheapest window-compatible cost for each admissible endpoint. Guesses
//! `⌊(1+ε)^j⌋` all run off one pass, sharing each buffered window.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numeric::{GeometricFloors, Rational};
use crate::text::{sqrt_window, Allocation, Category, MemoryMeter, OfflineText, OnlineStream, Symbol, WindowConsumer};

/// Nominal span `[α, β]` of window `i` and its admissible endpoint band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowBand {
    pub i: usize,
    pub alpha: usize,
    pub beta: usize,
    /// Band `[lo, hi]`, clamped to `[1, N+1]`; empty when `lo > hi`.
    pub lo: usize,
    pub hi: usize,
}

impl WindowBand {
    /// Band for window `i` (1-based) covering `[α, β]`, under guess `d`.
    pub fn new(i: usize, alpha: usize, beta: usize, d: usize, n: usize) -> Self {
        let centre = beta + 1;
        WindowBand {
            i,
            alpha,
            beta,
            lo: centre.saturating_sub(2 * d).max(1),
            hi: (centre + 2 * d).min(n + 1),
        }
    }

    /// Band for the `i`-th full window of length `w`.
    pub fn regular(i: usize, w: usize, d: usize, n: usize) -> Self {
        WindowBand::new(i, (i - 1) * w + 1, i * w, d, n)
    }

    pub fn contains(&self, r: usize) -> bool {
        self.lo <= r && r <= self.hi
    }
}

/// Admissible endpoints in the band: 1 if present, then every multiple of
/// `κ`, ascending and without duplicates.
pub fn candidate_endpoints(band: &WindowBand, kappa: usize) -> Vec<usize> {
    assert!(kappa >= 1);
    let mut out = Vec::new();
    if band.lo > band.hi {
        return out;
    }
    if band.contains(1) {
        out.push(1);
    }
    let mut r = band.lo.div_ceil(kappa) * kappa;
    while r <= band.hi {
        if r != 1 {
            out.push(r);
        }
        r += kappa;
    }
    out
}

/// `max(1, ⌊dε/√N⌋)`, exactly: the largest `κ` with `κ²·N ≤ d²ε²`.
pub fn kappa(d: usize, epsilon: &Rational, n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let (a, b) = (*epsilon.numer() as u128, *epsilon.denom() as u128);
    let rhs = (d as u128 * a).pow(2);
    let fits = |k: u128| k * k * n as u128 * b * b <= rhs;
    let guess = (d as f64 * a as f64 / (b as f64 * (n as f64).sqrt())).floor() as u128;
    let mut k = guess.max(1);
    while k > 1 && !fits(k) {
        k -= 1;
    }
    while fits(k + 1) {
        k += 1;
    }
    k as usize
}

/// Distinct values of `⌊(1+ε)^j⌋` in `[1, N]`, ascending, topped with `N`.
pub fn guess_ladder(epsilon: &Rational, n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for g in GeometricFloors::new(epsilon) {
        let Some(g) = g.to_usize().filter(|&g| g <= n) else {
            break;
        };
        if out.last() != Some(&g) {
            out.push(g);
        }
    }
    if n > 0 && out.last() != Some(&n) {
        out.push(n);
    }
    out
}

/// Endpoint → cost table, sorted by endpoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdFrontier {
    entries: Vec<(usize, usize)>,
}

impl EdFrontier {
    /// The start state: nothing mapped, at position 1, cost 0.
    pub fn initial() -> Self {
        EdFrontier { entries: vec![(1, 0)] }
    }

    /// Builds a frontier from `(endpoint, cost)` pairs; the last cost wins on
    /// duplicate endpoints.
    pub fn from_entries(mut entries: Vec<(usize, usize)>) -> Self {
        entries.sort_by_key(|&(r, _)| r);
        entries.dedup_by(|later, earlier| {
            let same = later.0 == earlier.0;
            if same {
                earlier.1 = later.1;
            }
            same
        });
        EdFrontier { entries }
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn get(&self, r: usize) -> Option<usize> {
        self.entries
            .binary_search_by_key(&r, |&(k, _)| k)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Metered size: endpoint and cost per entry.
    pub fn units(&self) -> usize {
        2 * self.entries.len()
    }
}

/// Next frontier over `endpoints` (ascending):
/// `T[r] = min_{l ≤ r} D[l] + ed(s̄[l, r), window)`.
///
/// All sources are swept together: `col[j]` holds
/// `min_{l ≤ c} D[l] + ed(s̄[l, c), window[..j])` as `c` moves right one
/// offline symbol at a time, so one column of `w+1` cells serves every `l`.
pub fn advance_frontier(
    frontier: &EdFrontier,
    window: &[Symbol],
    endpoints: &[usize],
    text: &OfflineText,
    meter: &MemoryMeter,
) -> EdFrontier {
    let (Some(&(first, _)), Some(&last)) = (frontier.entries.first(), endpoints.last()) else {
        return EdFrontier::default();
    };
    let w = window.len();
    let _scratch = meter.alloc(Category::ScratchOffline, w + 1);
    let mut col = vec![usize::MAX; w + 1];
    let mut sources = frontier.entries.iter().peekable();
    let mut targets = endpoints.iter().copied().peekable();
    let mut out = Vec::with_capacity(endpoints.len());
    let mut c = first;
    loop {
        // Admit a source starting at c: cost D[c] + j for the first j symbols.
        if let Some(&&(l, cost)) = sources.peek() {
            if l == c {
                for (j, cell) in col.iter_mut().enumerate() {
                    *cell = (*cell).min(cost + j);
                }
                sources.next();
            }
        }
        while targets.peek().is_some_and(|&r| r < c) {
            targets.next();
        }
        if targets.peek() == Some(&c) {
            out.push((c, col[w]));
            targets.next();
        }
        if c >= last || c > text.len() {
            break;
        }
        let x = text.read(c);
        let mut diag = col[0];
        col[0] = col[0].saturating_add(1);
        for j in 1..=w {
            let up = col[j];
            let sub = diag.saturating_add(usize::from(x != window[j - 1]));
            col[j] = sub.min(up.saturating_add(1)).min(col[j - 1].saturating_add(1));
            diag = up;
        }
        c += 1;
    }
    EdFrontier { entries: out }
}

/// `min_r D[r] + (N − r + 1)`, or `None` for an empty frontier.
pub fn finalize(frontier: &EdFrontier, n: usize) -> Option<usize> {
    frontier.entries.iter().map(|&(r, cost)| cost + (n + 1 - r)).min()
}

/// One distance guess and its frontier.
pub struct GuessInstance<'a> {
    pub d: usize,
    pub kappa: usize,
    frontier: EdFrontier,
    text: &'a OfflineText,
    meter: &'a MemoryMeter,
    state: Allocation<'a>,
    consumed: usize,
}

impl<'a> GuessInstance<'a> {
    pub fn new(d: usize, epsilon: &Rational, text: &'a OfflineText, meter: &'a MemoryMeter) -> Self {
        Self::with_kappa(d, kappa(d, epsilon, text.len()), text, meter)
    }

    pub fn with_kappa(d: usize, kappa: usize, text: &'a OfflineText, meter: &'a MemoryMeter) -> Self {
        let frontier = EdFrontier::initial();
        let state = meter.alloc(Category::FrontierState, frontier.units());
        GuessInstance {
            d,
            kappa,
            frontier,
            text,
            meter,
            state,
            consumed: 0,
        }
    }

    pub fn frontier(&self) -> &EdFrontier {
        &self.frontier
    }

    /// Consumes the next window.
    pub fn step(&mut self, index: usize, window: &[Symbol]) {
        let alpha = self.consumed + 1;
        self.consumed += window.len();
        let band = WindowBand::new(index, alpha, self.consumed, self.d, self.text.len());
        let endpoints = candidate_endpoints(&band, self.kappa);
        // D and T coexist while the step runs.
        self.state.resize(self.frontier.units() + 2 * endpoints.len());
        let next = advance_frontier(&self.frontier, window, &endpoints, self.text, self.meter);
        self.frontier = next;
        self.state.resize(self.frontier.units());
    }

    pub fn finalize(&self) -> Option<usize> {
        finalize(&self.frontier, self.text.len())
    }
}

impl WindowConsumer for GuessInstance<'_> {
    fn consume(&mut self, index: usize, window: &[Symbol]) -> Result<()> {
        self.step(index, window);
        Ok(())
    }
}

/// Round-robin over every guess for each shared window.
struct Ladder<'a>(Vec<GuessInstance<'a>>);

impl WindowConsumer for Ladder<'_> {
    fn consume(&mut self, index: usize, window: &[Symbol]) -> Result<()> {
        for g in &mut self.0 {
            g.step(index, window);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdEpsOutcome {
    pub estimate: usize,
    /// Smallest guess attaining the estimate; `None` for empty input.
    pub verifying_d: Option<usize>,
    pub window: usize,
    pub ladder: Vec<usize>,
}

/// `(1+5ε)`-approximate edit distance of ED-padded, equal-length inputs.
pub fn ed_eps_estimate(
    text: &OfflineText,
    stream: &mut OnlineStream<'_>,
    epsilon: &Rational,
    meter: &MemoryMeter,
) -> Result<EdEpsOutcome> {
    if *epsilon.numer() == 0 || *epsilon >= Rational::from_integer(1) {
        return Err(Error::Config(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let n = text.len();
    if stream.len() != n {
        return Err(Error::Model(format!(
            "offline and online strings must have equal length ({n} vs {})",
            stream.len()
        )));
    }
    let w = sqrt_window(stream.original_len());
    let ladder = guess_ladder(epsilon, n);
    let mut instances = Ladder(
        ladder
            .iter()
            .map(|&d| GuessInstance::new(d, epsilon, text, meter))
            .collect(),
    );
    stream.fan_out(w, meter, &mut [&mut instances])?;
    let mut best: Option<(usize, usize)> = None;
    for g in &instances.0 {
        if let Some(v) = g.finalize() {
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, g.d));
            }
        }
    }
    let (estimate, verifying_d) = match best {
        Some((v, d)) => (v, Some(d)),
        None if n == 0 => (0, None),
        None => unreachable!("the guess d = N admits the diagonal mapping"),
    };
    Ok(EdEpsOutcome {
        estimate,
        verifying_d,
        window: w,
        ladder,
    })
}
