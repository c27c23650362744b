//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Every sandwich is checked in integer arithmetic.

use std::time::{Duration, Instant};

use asd_core::closest::{
    closest_substring_stream, mapping_min_dp, mapping_min_enumerate, MappingSearch, RecursionConfig, WindowSummary,
};
use asd_core::exact::{closest_substring_brute, ed_bounded_space, ed_full, lcs_full, lcsp_scan, ClosestMatch, Operand};
use asd_core::harness::{generate_instance, run_instance, Algo, InstanceSpec, RunOutcome, RunParams};
use asd_core::lcs_stream::lcs_estimate_with_eps_star;
use asd_core::text::{delivery_digest, Category, SubstringRef, Symbol};
use asd_core::{Error, MemoryMeter, OfflineText, OnlineStream, Rational, Reach};
use num_rational::Ratio;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

struct Rng(Xoshiro256PlusPlus);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    /// Uniform in `lo..=hi`.
    fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + ((self.0.next_u64() as u128 * (hi - lo + 1) as u128) >> 64) as usize
    }

    fn string(&mut self, n: usize, sigma: u8) -> Vec<Symbol> {
        (0..n)
            .map(|_| Symbol::from(self.range(0, sigma as usize - 1) as u8))
            .collect()
    }
}

/// Stream instrumentation collected across criteria for the single-pass check.
#[derive(Default)]
struct PassLog {
    runs: usize,
    failures: Vec<String>,
}

impl PassLog {
    fn check(&mut self, label: &str, delivered: usize, digest: u64, expected: &[Symbol]) {
        self.runs += 1;
        if delivered != expected.len() || digest != delivery_digest(expected) {
            self.failures
                .push(format!("{label}: delivered {delivered} of {}", expected.len()));
        }
    }

    /// Checks a harness run against the padded online string it must have seen.
    fn check_run(&mut self, label: &str, out: &RunOutcome, online: &[Symbol], pad: Symbol) {
        let mut padded = online.to_vec();
        padded.resize(out.report.n_padded, pad);
        self.check(label, out.delivered, out.digest, &padded);
    }
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(violations: &[String], summary: String) -> Verdict {
    let mut detail = summary;
    if let Some(first) = violations.first() {
        detail.push_str(&format!("; first violation: {first}"));
    }
    Verdict {
        pass: violations.is_empty(),
        detail,
    }
}

fn pad_for(algo: Algo) -> Symbol {
    match algo {
        Algo::LcsEps => Symbol::PAD_DISTINCT_ONLINE,
        _ => Symbol::PAD_SAME,
    }
}

fn harness_run(
    algo: Algo,
    params: &RunParams,
    spec: &InstanceSpec,
    log: &mut PassLog,
) -> (RunOutcome, Vec<Symbol>, Vec<Symbol>) {
    let (offline, online) = generate_instance(spec).unwrap();
    let out = run_instance(algo, params, spec, 256);
    log.check_run(
        &format!("{algo} n={} seed={}", spec.n, spec.seed),
        &out,
        &online,
        pad_for(algo),
    );
    (out, offline, online)
}

fn criterion_1(log: &mut PassLog) -> Verdict {
    let start = Instant::now();
    let params = RunParams::with_param(Ratio::new(1, 2));
    let mut violations = Vec::new();
    let mut worst = 0.0f64;
    for trial in 0..200u64 {
        let spec = InstanceSpec {
            n: 16,
            alphabet_size: 4,
            edits: (trial % 9) as usize,
            seed: 1_000 + trial,
        };
        let (out, offline, online) = harness_run(Algo::EdConst, &params, &spec, log);
        let Some(est) = out.report.estimate else {
            violations.push(format!("seed {}: {}", spec.seed, out.report.error.unwrap_or_default()));
            continue;
        };
        let ed = ed_full(&offline, &online);
        if !(ed <= est && est <= 15 * ed) {
            violations.push(format!("seed {}: ed {ed}, estimate {est}", spec.seed));
        }
        if ed > 0 {
            worst = worst.max(est as f64 / ed as f64);
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        violations.push(format!("runtime {:.1} s", elapsed.as_secs_f64()));
    }
    verdict(
        &violations,
        format!(
            "constant-factor ED, n=16, delta=1/2: 200 instances, {} violations of ed <= est <= 15 ed, worst ratio {worst:.2}, {:.2} s",
            violations.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2(log: &mut PassLog) -> Verdict {
    let mut violations = Vec::new();
    let mut worst = 0.0f64;
    for trial in 0..100u64 {
        let spec = InstanceSpec {
            n: 16,
            alphabet_size: 4,
            edits: (trial % 12) as usize,
            seed: 2_000 + trial,
        };
        let (offline, online) = generate_instance(&spec).unwrap();
        let text = OfflineText::new(offline.clone());
        let cfg = RecursionConfig::new(16, Ratio::new(1, 2)).unwrap();
        let meter = MemoryMeter::new();
        let mut stream = OnlineStream::from_symbols(online.clone());
        let got = match closest_substring_stream(&text, &mut stream, 16, &cfg, &meter) {
            Ok(m) => m,
            Err(e) => {
                violations.push(format!("seed {}: {e}", spec.seed));
                continue;
            }
        };
        log.check(
            &format!("closest seed={}", spec.seed),
            stream.delivered(),
            stream.digest(),
            &online,
        );
        let opt = closest_substring_brute(&text, &online).unwrap().d;
        let realised = ed_full(&offline[got.l - 1..got.r], &online);
        if !(realised <= got.d && got.d <= 7 * opt) {
            violations.push(format!(
                "seed {}: ed(s[l,r], s) {realised}, min_dist {}, brute {opt}",
                spec.seed, got.d
            ));
        }
        if opt > 0 {
            worst = worst.max(got.d as f64 / opt as f64);
        }
    }
    verdict(
        &violations,
        format!(
            "closest substring, n=16, delta=1/2: 100 instances, {} violations of ed(s[l,r],s) <= d <= 7 opt, worst ratio {worst:.2}",
            violations.len()
        ),
    )
}

fn criterion_3() -> Verdict {
    let mut rng = Rng::new(3);
    let mut violations = Vec::new();
    for case in 0..100 {
        let n = rng.range(1, 16);
        let xi = rng.range(1, 4);
        let text = OfflineText::new(rng.string(n, 3));
        let summaries: Vec<WindowSummary> = (0..xi)
            .map(|_| {
                let l = rng.range(1, n);
                let r = rng.range(l, n);
                ClosestMatch {
                    l,
                    r,
                    d: rng.range(0, 4),
                }
            })
            .collect();
        let meter = MemoryMeter::new();
        let e = mapping_min_enumerate(&summaries, &text, &meter).unwrap();
        let d = mapping_min_dp(&summaries, &text, &meter).unwrap();
        if e != d {
            violations.push(format!("case {case}: enumerate {e:?}, dp {d:?}"));
        }
    }
    verdict(
        &violations,
        format!(
            "mapping dp vs enumeration, n<=16, xi<=4: 100 instances, {} mismatches",
            violations.len()
        ),
    )
}

fn criterion_4(log: &mut PassLog) -> Verdict {
    let mut violations = Vec::new();
    let mut runs = 0;
    for n in [36usize, 64] {
        for quarters in [1u64, 2] {
            let eps = Ratio::new(quarters, 4);
            let params = RunParams::with_param(eps);
            for trial in 0..100u64 {
                let spec = InstanceSpec {
                    n,
                    alphabet_size: 4,
                    edits: (trial as usize * 3) % (n / 2),
                    seed: 4_000 + 1_000 * n as u64 + 100 * quarters + trial,
                };
                let (out, offline, online) = harness_run(Algo::LcsEps, &params, &spec, log);
                runs += 1;
                let lcs = lcs_full(&offline, &online) as u64;
                match out.report.estimate {
                    Some(est) => {
                        let est = est as u64;
                        // (1 − q/4)·lcs ≤ est ≤ lcs
                        if !((4 - quarters) * lcs <= 4 * est && est <= lcs) {
                            violations.push(format!("n={n} eps={eps} seed {}: lcs {lcs}, estimate {est}", spec.seed));
                        }
                    }
                    None => violations.push(format!("seed {}: {}", spec.seed, out.report.error.unwrap_or_default())),
                }
            }
        }
    }
    // Standalone ε* = 1/10 at n = 36: est ≥ 0.9^6 · lcs ⇔ est·10^6 ≥ 531441·lcs.
    for trial in 0..100u64 {
        let spec = InstanceSpec {
            n: 36,
            alphabet_size: 4,
            edits: (trial as usize) % 18,
            seed: 4_900 + trial,
        };
        let (offline, online) = generate_instance(&spec).unwrap();
        let text = OfflineText::new(offline.clone());
        let mut stream = OnlineStream::from_symbols(online.clone());
        let est = lcs_estimate_with_eps_star(&text, &mut stream, Ratio::new(1, 10), &MemoryMeter::new())
            .unwrap()
            .estimate as u64;
        log.check(
            &format!("lcs eps*=0.1 seed={}", spec.seed),
            stream.delivered(),
            stream.digest(),
            &online,
        );
        runs += 1;
        let lcs = lcs_full(&offline, &online) as u64;
        if !(est * 1_000_000 >= 531_441 * lcs && est <= lcs) {
            violations.push(format!("eps*=0.1 seed {}: lcs {lcs}, estimate {est}", spec.seed));
        }
    }
    verdict(
        &violations,
        format!(
            "LCS sandwich, n in {{36,64}}, eps in {{1/4,1/2}}, plus eps*=1/10 form at n=36: {runs} runs, {} violations",
            violations.len()
        ),
    )
}

/// Smallest `q ≥ p − 1` with `lcs(s̄[p, q], window) ≥ k`, by full DP per `q`.
fn lcsp_brute(text: &[Symbol], p: usize, window: &[Symbol], k: usize) -> Reach {
    (p - 1..=text.len())
        .find(|&q| lcs_full(&text[p - 1..q], window) >= k)
        .map_or(Reach::Infinity, Reach::At)
}

fn criterion_5() -> Verdict {
    let mut rng = Rng::new(5);
    let mut violations = Vec::new();
    let mut checks = 0usize;
    let meter = MemoryMeter::new();
    for case in 0..500 {
        let n = rng.range(1, 24);
        let w = rng.range(1, 8);
        let raw = rng.string(n, 3);
        let window = rng.string(w, 3);
        let text = OfflineText::new(raw.clone());
        let lcsp = |p: usize, win: &[Symbol], k: usize| lcsp_scan(&text, p, win, k, &meter).unwrap();
        // table[p-1][k] for the whole window.
        let table: Vec<Vec<Reach>> = (1..=n + 1)
            .map(|p| (0..=w + 1).map(|k| lcsp(p, &window, k)).collect())
            .collect();
        for p in 1..=n + 1 {
            for k in 0..=w + 1 {
                checks += 1;
                let v = table[p - 1][k];
                if v != lcsp_brute(&raw, p, &window, k) {
                    violations.push(format!("case {case}: lcsp({p},{k}) disagrees with brute force"));
                }
                if k > 0 && table[p - 1][k - 1] > v {
                    violations.push(format!("case {case}: not monotone in k at p={p}, k={k}"));
                }
                if p > 1 && table[p - 2][k] > v {
                    violations.push(format!("case {case}: not monotone in p at p={p}, k={k}"));
                }
            }
        }
        for m in 1..w {
            let (left, right) = window.split_at(m);
            for p in 1..=n + 1 {
                for (k, &whole) in table[p - 1].iter().enumerate().take(w + 1) {
                    checks += 1;
                    let composed = (0..=k)
                        .filter_map(|k1| {
                            let q = lcsp(p, left, k1).position()?;
                            Some(lcsp(q + 1, right, k - k1))
                        })
                        .min()
                        .unwrap_or(Reach::Infinity);
                    if composed != whole {
                        violations.push(format!("case {case}: split {m} breaks composition at p={p}, k={k}"));
                    }
                }
            }
        }
    }
    verdict(
        &violations,
        format!(
            "LCSP monotonicity and split composition: 500 cases, {checks} checks against brute force, {} violations",
            violations.len()
        ),
    )
}

fn criterion_6(log: &mut PassLog) -> Verdict {
    let mut violations = Vec::new();
    let mut worst = 0.0f64;
    let mut runs = 0;
    for n in [36usize, 64] {
        for (a, b) in [(1u64, 5u64), (1, 2)] {
            let eps: Rational = Ratio::new(a, b);
            let params = RunParams::with_param(eps);
            for trial in 0..100u64 {
                let spec = InstanceSpec {
                    n,
                    alphabet_size: 4,
                    edits: (trial as usize) % 13,
                    seed: 6_000 + 1_000 * n as u64 + 100 * b + trial,
                };
                let (out, offline, online) = harness_run(Algo::EdEps, &params, &spec, log);
                runs += 1;
                let ed = ed_full(&offline, &online) as u64;
                match out.report.estimate {
                    Some(est) => {
                        let est = est as u64;
                        // est ≤ (1 + 5a/b)·ed ⇔ est·b ≤ (b + 5a)·ed
                        if !(ed <= est && est * b <= (b + 5 * a) * ed) {
                            violations.push(format!("n={n} eps={eps} seed {}: ed {ed}, estimate {est}", spec.seed));
                        }
                        if ed > 0 {
                            worst = worst.max(est as f64 / ed as f64);
                        }
                    }
                    None => violations.push(format!("seed {}: {}", spec.seed, out.report.error.unwrap_or_default())),
                }
            }
        }
    }
    verdict(
        &violations,
        format!(
            "(1+eps) ED sandwich, n in {{36,64}}, eps in {{1/5,1/2}}: {runs} runs, {} violations, worst ratio {worst:.3}",
            violations.len()
        ),
    )
}

fn growth(label: &str, sizes: &[usize], peaks: &[usize], violations: &mut Vec<String>) -> String {
    let ratios: Vec<f64> = peaks.windows(2).map(|p| p[1] as f64 / p[0] as f64).collect();
    for (i, r) in ratios.iter().enumerate() {
        if *r > 2.5 {
            violations.push(format!("{label}: n {} -> {} grows {r:.3}x", sizes[i], sizes[i + 1]));
        }
    }
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.3}")).collect();
    format!("{label} peaks {peaks:?} ratios [{}]", shown.join(", "))
}

fn criterion_7(log: &mut PassLog) -> Verdict {
    let mut violations = Vec::new();
    let mut parts = Vec::new();
    let half = Ratio::new(1, 2);
    for algo in [Algo::LcsEps, Algo::EdEps] {
        let sizes = [256usize, 1024, 4096];
        let mut peaks = Vec::new();
        for &n in &sizes {
            let spec = InstanceSpec {
                n,
                alphabet_size: 4,
                edits: n / 16,
                seed: 7_000 + n as u64,
            };
            let (out, _, _) = harness_run(algo, &RunParams::with_param(half), &spec, log);
            if let Some(e) = &out.report.error {
                violations.push(format!("{algo} n={n}: {e}"));
            }
            peaks.push(out.report.mem_stream + out.report.mem_frontier);
        }
        parts.push(growth(algo.id(), &sizes, &peaks, &mut violations));
    }
    let sizes = [16usize, 64, 256];
    let mut peaks = Vec::new();
    let params = RunParams {
        param: Some(half),
        mapping: MappingSearch::Dp,
        ..RunParams::default()
    };
    for &n in &sizes {
        let spec = InstanceSpec {
            n,
            alphabet_size: 4,
            edits: n / 16,
            seed: 7_500 + n as u64,
        };
        let (out, _, _) = harness_run(Algo::EdConst, &params, &spec, log);
        if let Some(e) = &out.report.error {
            violations.push(format!("ed-const n={n}: {e}"));
        }
        peaks.push(out.report.mem_stream);
    }
    parts.push(growth("ed-const stream_buffer", &sizes, &peaks, &mut violations));
    verdict(
        &violations,
        format!("memory growth per 4x n (limit 2.5): {}", parts.join("; ")),
    )
}

fn criterion_8(log: &PassLog) -> Verdict {
    let mut violations = log.failures.clone();
    // A rewind after the first delivery must be refused.
    let mut stream = OnlineStream::from_symbols(vec![Symbol::from(b'a'); 4]);
    stream.rewind().unwrap();
    stream.next_symbol().unwrap();
    match stream.rewind() {
        Err(Error::SinglePass(_)) => {}
        other => violations.push(format!("rewind after delivery returned {other:?}")),
    }
    // Same for a stream an algorithm has fully consumed.
    let text = OfflineText::new(vec![Symbol::from(b'a'); 16]);
    let mut stream = OnlineStream::from_symbols(vec![Symbol::from(b'b'); 16]);
    let cfg = RecursionConfig::new(16, Ratio::new(1, 2)).unwrap();
    closest_substring_stream(&text, &mut stream, 16, &cfg, &MemoryMeter::new()).unwrap();
    if !matches!(stream.rewind(), Err(Error::SinglePass(_))) {
        violations.push("rewind after a full run was accepted".into());
    }
    let mut buf = Vec::new();
    if !matches!(stream.fill(&mut buf, 1), Err(Error::SinglePass(_))) {
        violations.push("read past the end was accepted".into());
    }
    verdict(
        &violations,
        format!(
            "single pass: {} instrumented runs delivered every symbol once in order; rewind and over-read rejected",
            log.runs
        ),
    )
}

fn criterion_9() -> Verdict {
    let mut rng = Rng::new(9);
    let raw = rng.string(64, 4);
    let text = OfflineText::new(raw.clone());
    let mut violations = Vec::new();
    let mut worst_slack = i64::MIN;
    for case in 0..500 {
        let mut pick = || {
            let l = rng.range(1, 65);
            let r = rng.range(l, 65);
            SubstringRef::new(l, r)
        };
        let (a, b) = (pick(), pick());
        let meter = MemoryMeter::new();
        let got = ed_bounded_space(&text, a, Operand::Offline(b), &meter).unwrap();
        let want = ed_full(&raw[a.l - 1..a.r_exclusive - 1], &raw[b.l - 1..b.r_exclusive - 1]);
        if got != want {
            violations.push(format!("case {case}: {a:?} vs {b:?}: bounded {got}, full {want}"));
        }
        let limit = 2 * (a.len().min(b.len()) + 1) + 8;
        let peak = meter.peak(Category::ScratchOffline);
        worst_slack = worst_slack.max(peak as i64 - limit as i64);
        if peak > limit {
            violations.push(format!("case {case}: scratch peak {peak} above {limit}"));
        }
    }
    verdict(
        &violations,
        format!(
            "bounded-space ED, n=64: 500 substring pairs, {} violations, scratch peak at most limit{worst_slack:+}",
            violations.len()
        ),
    )
}

fn main() {
    let mut log = PassLog::default();
    let mut results: Vec<(usize, Verdict)> = Vec::new();
    let started = Instant::now();
    results.push((1, criterion_1(&mut log)));
    results.push((2, criterion_2(&mut log)));
    results.push((3, criterion_3()));
    results.push((4, criterion_4(&mut log)));
    results.push((5, criterion_5()));
    results.push((6, criterion_6(&mut log)));
    results.push((7, criterion_7(&mut log)));
    results.push((8, criterion_8(&log)));
    results.push((9, criterion_9()));
    results.sort_by_key(|(i, _)| *i);
    let mut failed = 0;
    for (i, v) in &results {
        println!("{} criterion {i}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1} s",
        results.len() - failed,
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
