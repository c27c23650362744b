//! Single-pass `(1−ε)`-approximate LCS over square-root windows.
//!
//! The frontier keeps, for each geometric target `t_k = ⌊(1+ε*)^k⌋ ≤ N`, the
//! smallest offline position `D[k]` such that some common subsequence of
//! `s̄[1, D[k]]` and the consumed online prefix has length at least `t_k`.
//! A new window extends an entry `(D[k₁], t_{k₁})` by an `lcsp` step of
//! residual `t_k − t_{k₁}`, or starts fresh from position 1.

use crate::error::{Error, Result};
use crate::exact::{LcspScanner, Reach};
use crate::numeric::{self, GeometricFloors, Rational};
use crate::text::Symbol;
use crate::text::{sqrt_window, Allocation, Category, MemoryMeter, OfflineText, OnlineStream, WindowConsumer};

/// `⌊(1+ε*)^k⌋` by exact rational multiplication, clamped to `n + 1`.
pub fn pow_floor(eps_star: &Rational, k: u32, n: usize) -> usize {
    numeric::pow_floor(eps_star, k, n as u64 + 1) as usize
}

/// Every `t_k = ⌊(1+ε*)^k⌋` with `t_k ≤ n`, duplicates kept.
pub fn target_table(eps_star: &Rational, n: usize) -> Vec<usize> {
    GeometricFloors::new(eps_star)
        .take_while(|&t| t <= n as u64)
        .map(|t| t as usize)
        .collect()
}

#[derive(Clone, Debug)]
pub struct LcsFrontier {
    pub eps_star: Rational,
    targets: Vec<usize>,
    d: Vec<Reach>,
}

impl LcsFrontier {
    /// Empty-prefix frontier: no positive target is reachable yet.
    pub fn new(eps_star: Rational, n: usize) -> Result<Self> {
        if *eps_star.numer() == 0 {
            return Err(Error::Config("eps_star must be positive".into()));
        }
        let targets = target_table(&eps_star, n);
        let d = vec![Reach::Infinity; targets.len()];
        Ok(LcsFrontier { eps_star, targets, d })
    }

    /// `K`, or `None` when no target fits (`n = 0`).
    pub fn k_max(&self) -> Option<usize> {
        self.targets.len().checked_sub(1)
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn positions(&self) -> &[Reach] {
        &self.d
    }

    /// Largest target whose position is finite, or 0.
    pub fn answer(&self) -> usize {
        self.targets
            .iter()
            .zip(&self.d)
            .rev()
            .find(|(_, r)| r.is_finite())
            .map_or(0, |(&t, _)| t)
    }

    /// Replaces `D` with the next-window table
    /// `T[k] = min(lcsp(1, t_k), min_{k₁: t_{k₁} ≤ t_k, D[k₁] < ∞} lcsp(D[k₁]+1, t_k − t_{k₁}))`.
    pub fn update(&mut self, window: &[Symbol], text: &OfflineText, meter: &MemoryMeter) -> Result<()> {
        let _next = meter.alloc(Category::FrontierState, self.d.len());
        let mut next = vec![Reach::Infinity; self.d.len()];
        let w = window.len();
        // A candidate is (position reached, length secured). Among equal
        // positions only the last slot matters: it secures the longest target.
        let fresh = std::iter::once((0usize, 0usize));
        let carried = (0..self.d.len()).filter_map(|k1| {
            let pos = self.d[k1].position()?;
            let dominated = self.d.get(k1 + 1) == Some(&self.d[k1]);
            (!dominated).then_some((pos, self.targets[k1]))
        });
        for (pos, secured) in fresh.chain(carried) {
            let mut scan = LcspScanner::new(text, pos + 1, window, meter)?;
            let first = self.targets.partition_point(|&t| t < secured);
            for (slot, &target) in next[first..].iter_mut().zip(&self.targets[first..]) {
                let residual = target - secured;
                if residual > w {
                    break;
                }
                let reach = scan.advance_to(residual);
                if !reach.is_finite() {
                    break;
                }
                *slot = (*slot).min(reach);
            }
        }
        self.d = next;
        Ok(())
    }
}

/// Functional form of [`LcsFrontier::update`].
pub fn update_frontier(
    frontier: &LcsFrontier,
    window: &[Symbol],
    text: &OfflineText,
    meter: &MemoryMeter,
) -> Result<LcsFrontier> {
    let mut next = frontier.clone();
    next.update(window, text, meter)?;
    Ok(next)
}

/// A frontier being driven window by window, with its state metered.
pub struct LcsRun<'a> {
    text: &'a OfflineText,
    meter: &'a MemoryMeter,
    frontier: LcsFrontier,
    // D plus the target table.
    _state: Allocation<'a>,
}

impl<'a> LcsRun<'a> {
    pub fn new(text: &'a OfflineText, eps_star: Rational, meter: &'a MemoryMeter) -> Result<Self> {
        let frontier = LcsFrontier::new(eps_star, text.len())?;
        let _state = meter.alloc(Category::FrontierState, 2 * frontier.targets.len());
        Ok(LcsRun {
            text,
            meter,
            frontier,
            _state,
        })
    }

    pub fn step(&mut self, window: &[Symbol]) -> Result<()> {
        self.frontier.update(window, self.text, self.meter)
    }

    pub fn frontier(&self) -> &LcsFrontier {
        &self.frontier
    }

    pub fn answer(&self) -> usize {
        self.frontier.answer()
    }
}

impl WindowConsumer for LcsRun<'_> {
    fn consume(&mut self, _index: usize, window: &[Symbol]) -> Result<()> {
        self.step(window)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcsOutcome {
    pub estimate: usize,
    pub eps_star: Rational,
    pub window: usize,
    pub k_max: Option<usize>,
}

fn check_lengths(text: &OfflineText, stream: &OnlineStream<'_>) -> Result<()> {
    if text.len() != stream.len() {
        return Err(Error::Model(format!(
            "offline and online strings must have equal length ({} vs {})",
            text.len(),
            stream.len()
        )));
    }
    Ok(())
}

/// Runs the frontier with a given `ε*` over windows of `⌈√n⌉` symbols, where
/// `n` is the stream's unpadded length.
pub fn lcs_estimate_with_eps_star(
    text: &OfflineText,
    stream: &mut OnlineStream<'_>,
    eps_star: Rational,
    meter: &MemoryMeter,
) -> Result<LcsOutcome> {
    check_lengths(text, stream)?;
    let w = sqrt_window(stream.original_len());
    let mut run = LcsRun::new(text, eps_star, meter)?;
    stream.fan_out(w, meter, &mut [&mut run])?;
    Ok(LcsOutcome {
        estimate: run.answer(),
        eps_star,
        window: w,
        k_max: run.frontier.k_max(),
    })
}

/// `(1−ε)`-approximate LCS of LCS-padded inputs.
///
/// Uses `ε* = ε/w` with `w = ⌈√n⌉ ≥ √N`; the padded length is a multiple of
/// `w`, so there are at most `w` windows and `(1−ε*)^{N/w} ≥ 1−ε`.
pub fn lcs_eps_estimate(
    text: &OfflineText,
    stream: &mut OnlineStream<'_>,
    epsilon: &Rational,
    meter: &MemoryMeter,
) -> Result<LcsOutcome> {
    if *epsilon.numer() == 0 || *epsilon >= Rational::from_integer(1) {
        return Err(Error::Config(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let w = sqrt_window(stream.original_len()) as u64;
    lcs_estimate_with_eps_star(text, stream, epsilon / w, meter)
}
