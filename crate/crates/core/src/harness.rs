//! Seeded instance generation, metered runs with oracle comparison, and
//! JSON-ready reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closest::{
    closest_bound, closest_substring_stream, ed_const_bound, ed_const_estimate, MappingSearch, RecursionConfig,
    DEFAULT_ENUM_LIMIT,
};
use crate::ed_stream::ed_eps_estimate;
use crate::error::{Error, Result};
use crate::exact::{closest_substring_exact, ed_bounded_space, ed_full, lcs_full, Operand};
use crate::lcs_stream::lcs_eps_estimate;
use crate::numeric::{parse_rational, to_f64, Rational};
use crate::text::{pad_offline, sqrt_window, Category, MemoryMeter, OfflineText, OnlineStream, PadMode, Symbol};

/// Generator used for every instance, recorded in each report.
pub const PRNG: &str = "xoshiro256++/splitmix64-seeded";

pub const DEFAULT_ORACLE_THRESHOLD: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub n: usize,
    pub alphabet_size: u32,
    pub edits: usize,
    pub seed: u64,
}

struct Draw(Xoshiro256PlusPlus);

impl Draw {
    /// Uniform in `0..k` by multiply-high.
    fn below(&mut self, k: u64) -> u64 {
        ((self.0.next_u64() as u128 * k as u128) >> 64) as u64
    }

    fn symbol(&mut self, sigma: u32) -> Symbol {
        Symbol::new(self.below(sigma as u64) as u32).expect("alphabet codes are small")
    }

    fn index(&mut self, len: usize) -> usize {
        self.below(len as u64) as usize
    }
}

/// Uniform offline string plus an online copy perturbed by random edits.
///
/// Each operation is a substitution (costs 1 of the edit budget), an
/// insert-then-trim or a delete-then-pad (2 each, since the trim or pad may
/// itself be an edit), chosen uniformly; a 2-cost choice with one unit left
/// becomes a substitution. So `ed(offline, online) ≤ edits`.
pub fn generate_instance(spec: &InstanceSpec) -> Result<(Vec<Symbol>, Vec<Symbol>)> {
    if spec.alphabet_size == 0 || spec.alphabet_size > Symbol::MAX_USER_CODE {
        return Err(Error::Config(format!(
            "alphabet size {} out of range",
            spec.alphabet_size
        )));
    }
    if spec.edits > spec.n {
        return Err(Error::Config(format!("edits {} exceed n = {}", spec.edits, spec.n)));
    }
    let sigma = spec.alphabet_size;
    let mut rng = Draw(Xoshiro256PlusPlus::seed_from_u64(spec.seed));
    let offline: Vec<Symbol> = (0..spec.n).map(|_| rng.symbol(sigma)).collect();
    let mut online = offline.clone();
    let mut budget = spec.edits;
    while budget > 0 && spec.n > 0 {
        let op = rng.below(3);
        if op == 0 || budget < 2 {
            let i = rng.index(spec.n);
            if sigma > 1 {
                // Shift by 1..σ-1 so the symbol always changes.
                let shift = 1 + rng.below(sigma as u64 - 1) as u32;
                online[i] = Symbol::new((online[i].code() + shift) % sigma)?;
            }
            budget -= 1;
        } else if op == 1 {
            let i = rng.index(spec.n + 1);
            let s = rng.symbol(sigma);
            online.insert(i, s);
            online.pop();
            budget -= 2;
        } else {
            let i = rng.index(spec.n);
            online.remove(i);
            let s = rng.symbol(sigma);
            online.push(s);
            budget -= 2;
        }
    }
    Ok((offline, online))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algo {
    #[serde(rename = "exact-ed")]
    ExactEd,
    #[serde(rename = "exact-lcs")]
    ExactLcs,
    #[serde(rename = "closest")]
    Closest,
    #[serde(rename = "ed-const")]
    EdConst,
    #[serde(rename = "lcs-eps")]
    LcsEps,
    #[serde(rename = "ed-eps")]
    EdEps,
}

impl Algo {
    pub const ALL: [Algo; 6] = [
        Algo::ExactEd,
        Algo::ExactLcs,
        Algo::Closest,
        Algo::EdConst,
        Algo::LcsEps,
        Algo::EdEps,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algo::ExactEd => "exact-ed",
            Algo::ExactLcs => "exact-lcs",
            Algo::Closest => "closest",
            Algo::EdConst => "ed-const",
            Algo::LcsEps => "lcs-eps",
            Algo::EdEps => "ed-eps",
        }
    }

    fn uses_delta(self) -> bool {
        matches!(self, Algo::Closest | Algo::EdConst)
    }

    fn uses_epsilon(self) -> bool {
        matches!(self, Algo::LcsEps | Algo::EdEps)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct RunParams {
    /// δ for `closest`/`ed-const`, ε for `lcs-eps`/`ed-eps`; unused otherwise.
    pub param: Option<Rational>,
    pub mapping: MappingSearch,
    pub force: bool,
    pub enum_limit: u128,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            param: None,
            mapping: MappingSearch::Enumerate,
            force: false,
            enum_limit: DEFAULT_ENUM_LIMIT,
        }
    }
}

impl RunParams {
    pub fn with_param(param: Rational) -> Self {
        RunParams {
            param: Some(param),
            ..RunParams::default()
        }
    }
}

/// One JSON line of output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algo: Algo,
    pub n: usize,
    pub n_padded: usize,
    pub delta: Option<f64>,
    pub epsilon: Option<f64>,
    pub estimate: Option<usize>,
    pub oracle: Option<usize>,
    /// `estimate / oracle`; null when the oracle is absent or 0.
    pub ratio: Option<f64>,
    /// Proven factor: an upper factor for distances, the lower factor
    /// `1 − ε` for `lcs-eps`.
    pub bound: Option<f64>,
    pub mem_stream: usize,
    pub mem_frontier: usize,
    pub mem_scratch: usize,
    pub offline_queries: u64,
    pub wall_ms: f64,
    pub seed: Option<u64>,
    pub prng: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verifying_d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mapping: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    /// Whether the estimate respects the proven sandwich against the oracle.
    /// `None` when there is nothing to check.
    pub fn within_bound(&self) -> Option<bool> {
        let (est, opt) = (self.estimate? as f64, self.oracle? as f64);
        let bound = self.bound?;
        Some(match self.algo {
            Algo::LcsEps => bound * opt <= est + 1e-9 && est <= opt,
            _ => opt <= est && est <= bound * opt + 1e-9,
        })
    }
}

/// A finished run plus the stream instrumentation used to prove a single pass.
#[derive(Debug)]
pub struct RunOutcome {
    pub report: RunReport,
    pub delivered: usize,
    pub digest: u64,
    pub error: Option<Error>,
}

/// Estimate, and for `closest` the interval; verifying guess for `ed-eps`.
struct Estimate {
    value: usize,
    interval: Option<(usize, usize)>,
    verifying_d: Option<usize>,
}

fn padding_for(algo: Algo, n: usize) -> Option<(PadMode, usize)> {
    match algo {
        Algo::LcsEps => Some((PadMode::Lcs, sqrt_window(n))),
        Algo::EdEps => Some((PadMode::Ed, sqrt_window(n))),
        _ => None,
    }
}

fn bound_for(algo: Algo, param: Option<&Rational>) -> Option<f64> {
    match (algo, param) {
        (Algo::ExactEd | Algo::ExactLcs, _) => Some(1.0),
        (Algo::Closest, Some(d)) => Some(closest_bound(d) as f64),
        (Algo::EdConst, Some(d)) => Some(ed_const_bound(d) as f64),
        (Algo::LcsEps, Some(e)) => Some(1.0 - to_f64(e)),
        (Algo::EdEps, Some(e)) => Some(1.0 + 5.0 * to_f64(e)),
        _ => None,
    }
}

fn execute(
    algo: Algo,
    params: &RunParams,
    text: &OfflineText,
    stream: &mut OnlineStream<'_>,
    meter: &MemoryMeter,
) -> Result<Estimate> {
    let need_param = || {
        params.param.ok_or_else(|| {
            Error::Config(format!(
                "{algo} needs a {} parameter",
                if algo.uses_delta() { "delta" } else { "epsilon" }
            ))
        })
    };
    let plain = |value| Estimate {
        value,
        interval: None,
        verifying_d: None,
    };
    match algo {
        Algo::ExactEd | Algo::ExactLcs => {
            if stream.len() != text.len() {
                return Err(Error::Model(format!(
                    "offline and online strings must have equal length ({} vs {})",
                    text.len(),
                    stream.len()
                )));
            }
            let _buffer = meter.alloc(Category::StreamBuffer, stream.len());
            let mut online = Vec::with_capacity(stream.len());
            stream.fill(&mut online, stream.len())?;
            stream.next_symbol()?;
            if algo == Algo::ExactEd {
                Ok(plain(ed_bounded_space(
                    text,
                    text.full(),
                    Operand::Window(&online),
                    meter,
                )?))
            } else {
                let all: Vec<Symbol> = (1..=text.len()).map(|i| text.char_at(i)).collect::<Result<_>>()?;
                let _scratch = meter.alloc(Category::ScratchOffline, 2 * (online.len() + 1));
                Ok(plain(lcs_full(&all, &online)))
            }
        }
        Algo::Closest => {
            let cfg = recursion_config(text.len(), need_param()?, params)?;
            if stream.len() != text.len() {
                return Err(Error::Model(format!(
                    "offline and online strings must have equal length ({} vs {})",
                    text.len(),
                    stream.len()
                )));
            }
            cfg.check_tractable()?;
            let m = closest_substring_stream(text, stream, text.len(), &cfg, meter)?;
            stream.next_symbol()?;
            Ok(Estimate {
                value: m.d,
                interval: Some((m.l, m.r)),
                verifying_d: None,
            })
        }
        Algo::EdConst => {
            let cfg = recursion_config(text.len(), need_param()?, params)?;
            let out = ed_const_estimate(text, stream, &cfg, meter)?;
            Ok(Estimate {
                value: out.estimate,
                interval: out.closest.map(|c| (c.l, c.r)),
                verifying_d: None,
            })
        }
        Algo::LcsEps => Ok(plain(lcs_eps_estimate(text, stream, &need_param()?, meter)?.estimate)),
        Algo::EdEps => {
            let out = ed_eps_estimate(text, stream, &need_param()?, meter)?;
            Ok(Estimate {
                value: out.estimate,
                interval: None,
                verifying_d: out.verifying_d,
            })
        }
    }
}

fn recursion_config(n: usize, delta: Rational, params: &RunParams) -> Result<RecursionConfig> {
    Ok(RecursionConfig::new(n, delta)?
        .with_search(params.mapping)
        .with_force(params.force)
        .with_enum_limit(params.enum_limit))
}

/// Exact reference value for `algo` on unpadded inputs.
pub fn oracle_value(algo: Algo, offline: &[Symbol], online: &[Symbol]) -> Result<usize> {
    Ok(match algo {
        Algo::ExactLcs | Algo::LcsEps => lcs_full(offline, online),
        Algo::Closest => closest_substring_exact(&OfflineText::new(offline.to_vec()), online, &MemoryMeter::new())?.d,
        _ => ed_full(offline, online),
    })
}

/// Runs `algo` on an offline string and a fallible online source that should
/// yield `offline.len()` symbols. Padding is applied where the algorithm
/// needs it. `oracle_online` enables the exact comparison.
pub fn run_algorithm<'a, I>(
    algo: Algo,
    params: &RunParams,
    offline: Vec<Symbol>,
    online: I,
    oracle_online: Option<&[Symbol]>,
) -> RunOutcome
where
    I: Iterator<Item = Result<Symbol>> + 'a,
{
    let n = offline.len();
    let oracle = oracle_online.map(|on| oracle_value(algo, &offline, on));
    let (text, mut stream) = match padding_for(algo, n) {
        Some((mode, w)) => {
            let text = pad_offline(offline, mode, w);
            let padded = text.len();
            (text, OnlineStream::padded(online, n, mode.online_pad(), padded))
        }
        None => (OfflineText::new(offline), OnlineStream::from_source(online, n)),
    };
    let meter = MemoryMeter::new();
    let start = Instant::now();
    let result = execute(algo, params, &text, &mut stream, &meter);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let peaks = meter.peaks();
    let param = params.param.filter(|_| algo.uses_delta() || algo.uses_epsilon());
    let (estimate, interval, verifying_d, error) = match result {
        Ok(e) => (Some(e.value), e.interval, e.verifying_d, None),
        Err(e) => (None, None, None, Some(e)),
    };
    let oracle = match oracle {
        Some(Ok(v)) => Some(v),
        _ => None,
    };
    let ratio = match (estimate, oracle) {
        (Some(e), Some(o)) if o > 0 => Some(e as f64 / o as f64),
        _ => None,
    };
    let report = RunReport {
        algo,
        n,
        n_padded: text.len(),
        delta: param.filter(|_| algo.uses_delta()).map(|d| to_f64(&d)),
        epsilon: param.filter(|_| algo.uses_epsilon()).map(|e| to_f64(&e)),
        estimate,
        oracle,
        ratio,
        bound: bound_for(algo, param.as_ref()),
        mem_stream: peaks.stream_buffer,
        mem_frontier: peaks.frontier_state,
        mem_scratch: peaks.scratch_offline,
        offline_queries: text.query_count(),
        wall_ms,
        seed: None,
        prng: PRNG.to_string(),
        l: interval.map(|i| i.0),
        r: interval.map(|i| i.1),
        verifying_d,
        mapping: (algo.uses_delta() && params.mapping == MappingSearch::Dp).then(|| "dp".to_string()),
        oracle_source: None,
        error: error.as_ref().map(|e| e.to_string()),
    };
    RunOutcome {
        report,
        delivered: stream.delivered(),
        digest: stream.digest(),
        error,
    }
}

/// Generates the instance for `spec` and runs `algo` on it, with the oracle
/// when `n ≤ oracle_threshold`.
pub fn run_instance(algo: Algo, params: &RunParams, spec: &InstanceSpec, oracle_threshold: usize) -> RunOutcome {
    let (offline, online) = match generate_instance(spec) {
        Ok(pair) => pair,
        Err(e) => {
            let mut out = run_algorithm(algo, params, Vec::new(), std::iter::empty(), None);
            out.report.estimate = None;
            out.report.error = Some(e.to_string());
            out.error = Some(e);
            return out;
        }
    };
    let with_oracle = spec.n <= oracle_threshold;
    let oracle_input = with_oracle.then_some(online.as_slice());
    let mut out = run_algorithm(algo, params, offline, online.iter().copied().map(Ok), oracle_input);
    out.report.seed = Some(spec.seed);
    if with_oracle {
        out.report.oracle_source = Some("full-dp".into());
    }
    out
}

fn default_alphabet() -> u32 {
    4
}

fn default_trials() -> usize {
    1
}

fn default_edits() -> Vec<usize> {
    vec![0]
}

fn default_threshold() -> usize {
    DEFAULT_ORACLE_THRESHOLD
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MappingChoice {
    Enumerate,
    Dp,
}

/// Suite description, as read from a bench config file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub algo: Algo,
    pub sizes: Vec<usize>,
    /// δ or ε values as exact rationals (`"1/2"`, `"0.25"`); ignored by exact.
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_alphabet")]
    pub alphabet: u32,
    /// Edit counts, cycled over trials and clamped to `n`.
    #[serde(default = "default_edits")]
    pub edits: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_threshold")]
    pub oracle_threshold: usize,
    #[serde(default)]
    pub mapping: Option<MappingChoice>,
    #[serde(default)]
    pub force: bool,
}

/// One run of a suite, keyed for deterministic ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SuiteKey {
    pub size_index: usize,
    pub param_index: usize,
    pub trial: usize,
}

impl SuiteConfig {
    fn parsed_params(&self) -> Result<Vec<Option<Rational>>> {
        if self.params.is_empty() {
            if self.algo.uses_delta() || self.algo.uses_epsilon() {
                return Err(Error::Config(format!("{} needs at least one parameter", self.algo)));
            }
            return Ok(vec![None]);
        }
        self.params.iter().map(|p| parse_rational(p).map(Some)).collect()
    }

    /// The instance for a key. Seeds depend on size and trial only, so every
    /// parameter sees the same instances.
    pub fn instance(&self, key: SuiteKey) -> InstanceSpec {
        let n = self.sizes[key.size_index];
        let edits = if self.edits.is_empty() {
            0
        } else {
            self.edits[key.trial % self.edits.len()]
        };
        InstanceSpec {
            n,
            alphabet_size: self.alphabet,
            edits: edits.min(n),
            seed: self
                .seed
                .wrapping_add((key.size_index as u64).wrapping_mul(1 << 32))
                .wrapping_add(key.trial as u64),
        }
    }
}

/// Runs every `(size, parameter, trial)` of the suite, in parallel, returning
/// reports in key order. Per-run failures are reported, not raised.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<RunOutcome>> {
    let params = config.parsed_params()?;
    let enum_limit = enum_limit_from_env()?;
    let mut keys = Vec::new();
    for size_index in 0..config.sizes.len() {
        for param_index in 0..params.len() {
            for trial in 0..config.trials {
                keys.push(SuiteKey {
                    size_index,
                    param_index,
                    trial,
                });
            }
        }
    }
    let mapping = match config.mapping {
        Some(MappingChoice::Dp) => MappingSearch::Dp,
        _ => MappingSearch::Enumerate,
    };
    Ok(keys
        .par_iter()
        .map(|&key| {
            let run_params = RunParams {
                param: params[key.param_index],
                mapping,
                force: config.force,
                enum_limit,
            };
            run_instance(config.algo, &run_params, &config.instance(key), config.oracle_threshold)
        })
        .collect())
}

/// Enumeration guard from `ASD_MAX_ENUM`, or the default.
pub fn enum_limit_from_env() -> Result<u128> {
    match std::env::var("ASD_MAX_ENUM") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("ASD_MAX_ENUM must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_ENUM_LIMIT),
    }
}

/// Largest `stream_buffer + frontier_state` peak per input size.
pub fn peak_state_by_size(reports: &[RunReport]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for r in reports {
        let e = out.entry(r.n).or_insert(0);
        *e = (*e).max(r.mem_stream + r.mem_frontier);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::delivery_digest;
    use num_rational::Ratio;

    fn spec(n: usize, edits: usize, seed: u64) -> InstanceSpec {
        InstanceSpec {
            n,
            alphabet_size: 4,
            edits,
            seed,
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_instance(&spec(64, 8, 7)).unwrap();
        let b = generate_instance(&spec(64, 8, 7)).unwrap();
        assert_eq!(a, b);
        let c = generate_instance(&spec(64, 8, 8)).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn zero_edits_copies() {
        let (a, b) = generate_instance(&spec(50, 0, 3)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|s| s.code() < 4));
    }

    #[test]
    fn edit_budget_bounds_distance() {
        let (a, b) = generate_instance(&spec(64, 8, 7)).unwrap();
        assert_eq!(b.len(), 64);
        assert!(ed_full(&a, &b) <= 8);
        for seed in 0..200 {
            let edits = (seed % 17) as usize;
            let (a, b) = generate_instance(&spec(32, edits, seed)).unwrap();
            assert!(ed_full(&a, &b) <= edits);
        }
    }

    #[test]
    fn generation_rejects_bad_specs() {
        assert!(generate_instance(&InstanceSpec {
            n: 4,
            alphabet_size: 0,
            edits: 0,
            seed: 0
        })
        .is_err());
        assert!(generate_instance(&spec(4, 5, 0)).is_err());
    }

    #[test]
    fn algo_ids_round_trip() {
        for a in Algo::ALL {
            assert_eq!(a.id().parse::<Algo>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.id()));
        }
        assert!("nope".parse::<Algo>().is_err());
    }

    #[test]
    fn reports_carry_every_field() {
        let out = run_instance(
            Algo::EdEps,
            &RunParams::with_param(Ratio::new(1, 2)),
            &spec(31, 3, 1),
            256,
        );
        let json = serde_json::to_value(&out.report).unwrap();
        for key in [
            "algo",
            "n",
            "n_padded",
            "delta",
            "epsilon",
            "estimate",
            "oracle",
            "ratio",
            "bound",
            "mem_stream",
            "mem_frontier",
            "mem_scratch",
            "offline_queries",
            "wall_ms",
            "seed",
            "prng",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(out.report.n_padded, 36);
        assert_eq!(out.delivered, 36);
        assert_eq!(out.report.within_bound(), Some(true));
    }

    #[test]
    fn delivery_is_instrumented() {
        let (a, b) = generate_instance(&spec(25, 2, 9)).unwrap();
        for algo in Algo::ALL {
            let p = RunParams::with_param(Ratio::new(1, 2));
            let out = run_algorithm(algo, &p, a.clone(), b.iter().copied().map(Ok), Some(&b));
            assert!(out.error.is_none(), "{algo}: {:?}", out.error);
            assert_eq!(out.delivered, out.report.n_padded);
            let pad = match algo {
                Algo::LcsEps => Symbol::PAD_DISTINCT_ONLINE,
                _ => Symbol::PAD_SAME,
            };
            let mut padded = b.clone();
            padded.resize(out.report.n_padded, pad);
            assert_eq!(out.digest, delivery_digest(&padded));
            assert_eq!(out.report.within_bound(), Some(true), "{algo}");
        }
    }

    #[test]
    fn unequal_lengths_are_model_violations() {
        for algo in Algo::ALL {
            let p = RunParams::with_param(Ratio::new(1, 2));
            let short = vec![Symbol::from(b'a'); 8];
            let out = run_algorithm(algo, &p, vec![Symbol::from(b'a'); 9], short.into_iter().map(Ok), None);
            assert!(out.error.as_ref().is_some_and(Error::is_model_violation), "{algo}");
            let long = vec![Symbol::from(b'a'); 10];
            let out = run_algorithm(algo, &p, vec![Symbol::from(b'a'); 9], long.into_iter().map(Ok), None);
            assert!(out.error.as_ref().is_some_and(Error::is_model_violation), "{algo}");
        }
    }

    #[test]
    fn zero_edit_suite_reports_zero() {
        for algo in [Algo::EdConst, Algo::EdEps, Algo::ExactEd] {
            let cfg = SuiteConfig {
                algo,
                sizes: vec![16, 25],
                params: if algo == Algo::ExactEd {
                    vec![]
                } else {
                    vec!["1/2".into()]
                },
                trials: 3,
                alphabet: 4,
                edits: vec![0],
                seed: 11,
                oracle_threshold: 256,
                mapping: None,
                force: false,
            };
            let out = run_suite(&cfg).unwrap();
            assert_eq!(out.len(), 6);
            for o in out {
                assert_eq!(o.report.estimate, Some(0));
                assert_eq!(o.report.ratio, None);
            }
        }
    }

    #[test]
    fn suite_is_ordered_and_reproducible() {
        let cfg = SuiteConfig {
            algo: Algo::LcsEps,
            sizes: vec![36, 16],
            params: vec!["0.25".into(), "0.5".into()],
            trials: 2,
            alphabet: 3,
            edits: vec![1, 4],
            seed: 5,
            oracle_threshold: 256,
            mapping: None,
            force: false,
        };
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        let sizes: Vec<usize> = a.iter().map(|o| o.report.n).collect();
        assert_eq!(sizes, vec![36, 36, 36, 36, 16, 16, 16, 16]);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.report.estimate, y.report.estimate);
            assert_eq!(x.report.seed, y.report.seed);
            assert_eq!(x.report.within_bound(), Some(true));
        }
    }

    #[test]
    fn intractable_runs_are_reported() {
        let p = RunParams {
            param: Some(Ratio::new(1, 2)),
            enum_limit: 10,
            ..RunParams::default()
        };
        let out = run_instance(Algo::EdConst, &p, &spec(16, 2, 0), 256);
        assert!(matches!(out.error, Some(Error::Intractable { .. })));
        assert!(out.report.error.is_some() && out.report.estimate.is_none());
    }
}
