//! Codebook construction, typical-set decoding, and exact / Monte Carlo
//! computation of the decoding-error and false-acceptance probabilities.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};

use crate::channels::ChannelModel;
use crate::error::{Error, Result};
use crate::info_theory::{
    binary_entropy, entropy, typical_set_prob, typical_weight, JointPmf, ProbVector,
    TypicalityParams,
};
use crate::rng::derive_rng;
use crate::word::Word;

/// Default cap on exact enumeration: at most this many channel outputs.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 16;

/// Decoding rule attached to a codebook.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum DecodeParams {
    /// Binary typical-set decoding: `y` matches codeword `c` iff the noise
    /// word `y - c` is delta-typical for Bernoulli(p).
    Typical { p: f64, delta: f64 },
    /// Jointly-typical decoding against the joint pmf `P(x, y)` of a code
    /// symbol and its channel output.
    JointlyTypical { joint: Vec<Vec<f64>>, delta: f64 },
    /// Disjoint-alphabet demo decoder: reject any output containing a
    /// symbol above 1, otherwise decode as the embedded binary code.
    BinaryEmbedded {
        p: f64,
        delta: f64,
        bob_alphabet: usize,
    },
}

/// Message-index-to-codeword map plus its decoding rule.
///
/// Holds exactly `2^k` codewords of length `n`. Codewords need not be
/// distinct: duplicates simply make the uniqueness rule reject outputs in
/// their overlap region.
#[derive(Clone, Debug, PartialEq)]
pub struct Codebook {
    pub n: usize,
    pub k: usize,
    pub codewords: Vec<Word>,
    pub decode_params: DecodeParams,
}

/// Cap on codebook size: `2^k` codewords must fit comfortably in memory.
pub const MAX_MESSAGE_BITS: usize = 20;

impl Codebook {
    pub fn new(n: usize, k: usize, codewords: Vec<Word>, decode_params: DecodeParams) -> Result<Self> {
        if k > MAX_MESSAGE_BITS {
            return Err(Error::resource(format!(
                "k = {k} exceeds the {MAX_MESSAGE_BITS}-bit message cap"
            )));
        }
        if codewords.len() != 1usize << k {
            return Err(Error::domain(format!(
                "expected 2^{k} = {} codewords, got {}",
                1usize << k,
                codewords.len()
            )));
        }
        if codewords.iter().any(|c| c.len() != n) {
            return Err(Error::domain("codeword length differs from n"));
        }
        Ok(Codebook {
            n,
            k,
            codewords,
            decode_params,
        })
    }

    pub fn messages(&self) -> usize {
        1usize << self.k
    }

    /// Size of Bob's output alphabet under this decoding rule.
    pub fn bob_alphabet(&self) -> usize {
        match &self.decode_params {
            DecodeParams::Typical { .. } => 2,
            DecodeParams::JointlyTypical { joint, .. } => joint[0].len(),
            DecodeParams::BinaryEmbedded { bob_alphabet, .. } => *bob_alphabet,
        }
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

/// Bob's verdict: a decoded message index, or the rejection symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecodeResult {
    Message(usize),
    Reject,
}

/// Precomputed decoding context; build once, decode many.
pub struct Decoder<'a> {
    cb: &'a Codebook,
    kind: DecoderKind,
}

enum DecoderKind {
    /// `typical_weights[d]` = is a weight-`d` noise word typical.
    Typical { typical_weights: Vec<bool> },
    /// Reject on symbols above 1, then as `Typical`.
    Embedded { typical_weights: Vec<bool> },
    Joint {
        log_joint: Vec<Vec<f64>>,
        log_px: Vec<f64>,
        log_py: Vec<f64>,
        h_joint: f64,
        h_x: f64,
        h_y: f64,
        delta: f64,
    },
}

impl<'a> Decoder<'a> {
    pub fn new(cb: &'a Codebook) -> Result<Self> {
        let kind = match &cb.decode_params {
            DecodeParams::Typical { p, delta } => DecoderKind::Typical {
                typical_weights: typical_weight_table(cb.n, *p, *delta)?,
            },
            DecodeParams::BinaryEmbedded { p, delta, .. } => DecoderKind::Embedded {
                typical_weights: typical_weight_table(cb.n, *p, *delta)?,
            },
            DecodeParams::JointlyTypical { joint, delta } => {
                let pmf = JointPmf::new(joint.clone())?;
                let px = pmf.marginal_x();
                let py = pmf.marginal_y();
                let log = |v: f64| if v > 0.0 { v.log2() } else { f64::NEG_INFINITY };
                DecoderKind::Joint {
                    log_joint: joint.iter().map(|r| r.iter().map(|&v| log(v)).collect()).collect(),
                    log_px: px.entries().iter().map(|&v| log(v)).collect(),
                    log_py: py.entries().iter().map(|&v| log(v)).collect(),
                    h_joint: crate::info_theory::joint_entropy(&pmf),
                    h_x: entropy(&px),
                    h_y: entropy(&py),
                    delta: *delta,
                }
            }
        };
        Ok(Decoder { cb, kind })
    }

    fn matches(&self, codeword: &Word, y: &Word) -> bool {
        match &self.kind {
            DecoderKind::Typical { typical_weights }
            | DecoderKind::Embedded { typical_weights } => {
                typical_weights[codeword.distance(y)]
            }
            DecoderKind::Joint {
                log_joint,
                log_px,
                log_py,
                h_joint,
                h_x,
                h_y,
                delta,
            } => {
                let n = y.len() as f64;
                let mut lj = 0.0;
                let mut lx = 0.0;
                let mut ly = 0.0;
                for (&xs, &ys) in codeword.symbols().iter().zip(y.symbols()) {
                    lj += log_joint[xs as usize][ys as usize];
                    lx += log_px[xs as usize];
                    ly += log_py[ys as usize];
                }
                if !lj.is_finite() {
                    return false;
                }
                (lj / n + h_joint).abs() < *delta
                    && (lx / n + h_x).abs() < *delta
                    && (ly / n + h_y).abs() < *delta
            }
        }
    }

    /// Uniqueness rule: decode to `i` iff exactly one codeword matches `y`.
    pub fn decode(&self, y: &Word) -> DecodeResult {
        if let DecoderKind::Embedded { .. } = self.kind {
            if y.symbols().iter().any(|&s| s > 1) {
                return DecodeResult::Reject;
            }
        }
        let mut found = None;
        for (i, c) in self.cb.codewords.iter().enumerate() {
            if self.matches(c, y) {
                if found.is_some() {
                    return DecodeResult::Reject;
                }
                found = Some(i);
            }
        }
        found.map_or(DecodeResult::Reject, DecodeResult::Message)
    }
}

fn typical_weight_table(n: usize, p: f64, delta: f64) -> Result<Vec<bool>> {
    (0..=n).map(|d| typical_weight(d, n, p, delta)).collect()
}

/// Binary typical-set decoding of a single channel output.
pub fn typical_decode(y: &Word, cb: &Codebook) -> Result<DecodeResult> {
    match cb.decode_params {
        DecodeParams::Typical { .. } | DecodeParams::BinaryEmbedded { .. } => {
            Ok(Decoder::new(cb)?.decode(y))
        }
        _ => Err(Error::usage("codebook does not carry (p, delta) decode parameters")),
    }
}

/// Jointly-typical decoding of a single channel output.
pub fn jointly_typical_decode(y: &Word, cb: &Codebook) -> Result<DecodeResult> {
    match cb.decode_params {
        DecodeParams::JointlyTypical { .. } => Ok(Decoder::new(cb)?.decode(y)),
        _ => Err(Error::usage("codebook does not carry a joint pmf")),
    }
}

/// Codebook of `2^k` codewords i.i.d. uniform over `{0,1}^n`,
/// deterministic given `seed`.
pub fn gen_random_codebook(n: usize, k: usize, decode_params: DecodeParams, seed: u64) -> Result<Codebook> {
    use rand::Rng;
    if k > MAX_MESSAGE_BITS {
        return Err(Error::resource(format!(
            "k = {k} exceeds the {MAX_MESSAGE_BITS}-bit message cap"
        )));
    }
    let codewords = (0..1usize << k)
        .map(|i| {
            let mut rng = derive_rng(seed, 0x636f6465, i as u64);
            Word::new((0..n).map(|_| rng.random_range(0..2u8)).collect())
        })
        .collect();
    Codebook::new(n, k, codewords, decode_params)
}

/// Codebook with each codeword symbol drawn i.i.d. from `px`.
pub fn gen_px_codebook(
    n: usize,
    k: usize,
    px: &ProbVector<f64>,
    decode_params: DecodeParams,
    seed: u64,
) -> Result<Codebook> {
    use rand::Rng;
    if k > MAX_MESSAGE_BITS {
        return Err(Error::resource(format!(
            "k = {k} exceeds the {MAX_MESSAGE_BITS}-bit message cap"
        )));
    }
    let codewords = (0..1usize << k)
        .map(|i| {
            let mut rng = derive_rng(seed, 0x70785f63, i as u64);
            Word::new(
                (0..n)
                    .map(|_| {
                        let u: f64 = rng.random();
                        let mut acc = 0.0;
                        let mut pick = px.len() as u8 - 1;
                        for (s, &prob) in px.entries().iter().enumerate() {
                            acc += prob;
                            if u < acc {
                                pick = s as u8;
                                break;
                            }
                        }
                        pick
                    })
                    .collect(),
            )
        })
        .collect();
    Codebook::new(n, k, codewords, decode_params)
}

/// Accept set `S` and its per-message partition `S_i`.
pub struct AcceptSets {
    /// All outputs Bob does not reject.
    pub accepted: Vec<Word>,
    /// `per_message[i]` = outputs decoded to message `i`; these partition `accepted`.
    pub per_message: Vec<Vec<Word>>,
}

fn checked_space(alphabet: usize, n: usize, cap: u64) -> Result<u64> {
    let size = (alphabet as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::resource(format!(
            "enumeration of {alphabet}^{n} words exceeds cap {cap}"
        )));
    }
    Ok(size as u64)
}

/// Enumerates Bob's whole output space and decodes every word.
pub fn accept_set(cb: &Codebook, cap: u64) -> Result<AcceptSets> {
    let alphabet = cb.bob_alphabet();
    let space = checked_space(alphabet, cb.n, cap)?;
    let decoder = Decoder::new(cb)?;
    let mut accepted = Vec::new();
    let mut per_message = vec![Vec::new(); cb.messages()];
    for rank in 0..space {
        let y = Word::from_rank(rank, alphabet, cb.n);
        if let DecodeResult::Message(i) = decoder.decode(&y) {
            per_message[i].push(y.clone());
            accepted.push(y);
        }
    }
    Ok(AcceptSets {
        accepted,
        per_message,
    })
}

/// How an error probability was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Method {
    /// Exhaustive enumeration; no confidence interval.
    Exact,
    /// Seeded Monte Carlo with a Clopper-Pearson 95% interval.
    MonteCarlo { trials: u64 },
    /// Max over a finite set of adversary strategies; a lower bound.
    HeuristicLb { trials: u64 },
    /// Union-bound style upper bound.
    AnalyticUb,
}

/// An error probability together with its provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorEstimate {
    pub value: f64,
    pub method: Method,
    /// Clopper-Pearson 95% interval, present exactly for the Monte Carlo
    /// methods.
    pub ci95: Option<(f64, f64)>,
}

impl ErrorEstimate {
    pub fn exact(value: f64) -> Self {
        ErrorEstimate {
            // The enumeration sums can drift a few ulps outside [0, 1]
            // (and an empty sum is -0.0); adding 0.0 normalizes the sign.
            value: value.clamp(0.0, 1.0) + 0.0,
            method: Method::Exact,
            ci95: None,
        }
    }

    fn from_counts(successes: u64, trials: u64, method: Method) -> Self {
        ErrorEstimate {
            value: successes as f64 / trials as f64,
            method,
            ci95: Some(clopper_pearson(successes, trials, 0.05)),
        }
    }
}

/// Clopper-Pearson two-sided binomial interval at level `1 - alpha`.
pub fn clopper_pearson(successes: u64, trials: u64, alpha: f64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let lo = if successes == 0 {
        0.0
    } else {
        Beta::new(successes as f64, (trials - successes + 1) as f64)
            .expect("valid beta")
            .inverse_cdf(alpha / 2.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        Beta::new((successes + 1) as f64, (trials - successes) as f64)
            .expect("valid beta")
            .inverse_cdf(1.0 - alpha / 2.0)
    };
    (lo, hi)
}

/// Per-message exact decoding-error probabilities, by enumerating the
/// support of the channel output for each codeword.
pub fn per_codeword_pde(cb: &Codebook, ch: &ChannelModel, cap: u64) -> Result<Vec<f64>> {
    if ch.output_alphabet() > cb.bob_alphabet() {
        return Err(Error::domain(
            "channel output alphabet exceeds the decoder's alphabet",
        ));
    }
    let decoder = Decoder::new(cb)?;
    cb.codewords
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let supports: Vec<Vec<u8>> =
                c.symbols().iter().map(|&s| ch.symbol_support(s)).collect();
            let total: u128 = supports.iter().map(|s| s.len() as u128).product();
            if total > cap as u128 {
                return Err(Error::resource(format!(
                    "support enumeration of {total} outputs exceeds cap {cap}"
                )));
            }
            let mut err = 0.0;
            let mut y = Word::new(supports.iter().map(|s| s[0]).collect());
            let mut idx = vec![0usize; cb.n];
            loop {
                if decoder.decode(&y) != DecodeResult::Message(i) {
                    err += ch.output_prob(c, &y)?;
                }
                // Odometer over the per-symbol supports.
                let mut pos = 0;
                loop {
                    if pos == cb.n {
                        return Ok(err);
                    }
                    idx[pos] += 1;
                    if idx[pos] < supports[pos].len() {
                        y.0[pos] = supports[pos][idx[pos]];
                        break;
                    }
                    idx[pos] = 0;
                    y.0[pos] = supports[pos][0];
                    pos += 1;
                }
            }
        })
        .collect()
}

/// Exact maximum decoding-error probability `p_de`.
pub fn exact_pde(cb: &Codebook, ch: &ChannelModel, cap: u64) -> Result<ErrorEstimate> {
    let per = per_codeword_pde(cb, ch, cap)?;
    Ok(ErrorEstimate::exact(
        per.iter().copied().fold(0.0, f64::max),
    ))
}

/// Exact maximum false-acceptance probability `p_fa`, maximizing over
/// every word Eve can input.
pub fn exact_pfa(cb: &Codebook, eve: &ChannelModel, cap: u64) -> Result<ErrorEstimate> {
    if eve.output_alphabet() > cb.bob_alphabet() {
        return Err(Error::domain(
            "Eve's output alphabet exceeds the decoder's alphabet",
        ));
    }
    let z_alphabet = eve.input_alphabet();
    let z_space = checked_space(z_alphabet, cb.n, cap)?;

    // Fast path: binary BSC Eve over a fully enumerable binary output
    // space. Accept probabilities then depend only on Hamming distances.
    if let ChannelModel::Bsc { p: q } = eve {
        if cb.bob_alphabet() == 2 && checked_space(2, cb.n, cap).is_ok() {
            let sets = accept_set(cb, cap)?;
            let accepted_bits: Vec<u64> = sets.accepted.iter().map(|w| w.to_bits()).collect();
            let pw: Vec<f64> = (0..=cb.n)
                .map(|d| q.powi(d as i32) * (1.0 - q).powi((cb.n - d) as i32))
                .collect();
            let best = (0..z_space)
                .map(|z| {
                    accepted_bits
                        .iter()
                        .map(|&y| pw[(y ^ z).count_ones() as usize])
                        .sum::<f64>()
                })
                .fold(0.0, f64::max);
            return Ok(ErrorEstimate::exact(best));
        }
    }

    // General path: per Eve input, enumerate the support of her channel's
    // output and sum the accepted mass.
    let decoder = Decoder::new(cb)?;
    let mut best = 0.0f64;
    for z_rank in 0..z_space {
        let z = Word::from_rank(z_rank, z_alphabet, cb.n);
        let supports: Vec<Vec<u8>> = z.symbols().iter().map(|&s| eve.symbol_support(s)).collect();
        let total: u128 = supports.iter().map(|s| s.len() as u128).product();
        if total > cap as u128 {
            return Err(Error::resource(format!(
                "support enumeration of {total} outputs exceeds cap {cap}"
            )));
        }
        let mut acc = 0.0;
        let mut y = Word::new(supports.iter().map(|s| s[0]).collect());
        let mut idx = vec![0usize; cb.n];
        'outer: loop {
            if decoder.decode(&y) != DecodeResult::Reject {
                acc += eve.output_prob(&z, &y)?;
            }
            let mut pos = 0;
            loop {
                if pos == cb.n {
                    break 'outer;
                }
                idx[pos] += 1;
                if idx[pos] < supports[pos].len() {
                    y.0[pos] = supports[pos][idx[pos]];
                    break;
                }
                idx[pos] = 0;
                y.0[pos] = supports[pos][0];
                pos += 1;
            }
        }
        best = best.max(acc);
    }
    Ok(ErrorEstimate::exact(best))
}

/// Monte Carlo estimate of `p_de`: worst per-message error frequency over
/// `trials` seeded transmissions each. Results are independent of worker
/// count.
pub fn mc_pde(cb: &Codebook, ch: &ChannelModel, trials: u64, seed: u64) -> Result<ErrorEstimate> {
    if trials == 0 {
        return Err(Error::usage("mc_pde requires trials >= 1"));
    }
    let decoder = Decoder::new(cb)?;
    let worst = cb
        .codewords
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut errors = 0u64;
            for t in 0..trials {
                let mut rng = derive_rng(seed, i as u64, t);
                let y = ch.transmit_with(c, &mut rng)?;
                if decoder.decode(&y) != DecodeResult::Message(i) {
                    errors += 1;
                }
            }
            Ok(errors)
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .max()
        .unwrap();
    Ok(ErrorEstimate::from_counts(
        worst,
        trials,
        Method::MonteCarlo { trials },
    ))
}

/// Built-in adversary strategies for the heuristic `p_fa` lower bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AdversaryStrategy {
    /// Try every codeword as Eve's input.
    EachCodeword,
    AllZeros,
    /// `count` uniformly random inputs derived from the master seed.
    UniformRandom { count: usize },
    /// The codeword whose accept set `S_i` is largest (needs an enumerable
    /// output space; skipped otherwise).
    LargestAcceptCenter,
}

/// Heuristic Monte Carlo lower bound on `p_fa`: the best acceptance
/// frequency over the supplied adversary strategies.
pub fn mc_pfa_heuristic(
    cb: &Codebook,
    eve: &ChannelModel,
    strategies: &[AdversaryStrategy],
    trials: u64,
    seed: u64,
) -> Result<ErrorEstimate> {
    use rand::Rng;
    if strategies.is_empty() {
        return Err(Error::usage("mc_pfa_heuristic requires at least one strategy"));
    }
    if trials == 0 {
        return Err(Error::usage("mc_pfa_heuristic requires trials >= 1"));
    }
    let z_alphabet = eve.input_alphabet();
    let mut candidates: Vec<Word> = Vec::new();
    for strategy in strategies {
        match strategy {
            AdversaryStrategy::EachCodeword => candidates.extend(
                cb.codewords
                    .iter()
                    .filter(|c| c.fits_alphabet(z_alphabet))
                    .cloned(),
            ),
            AdversaryStrategy::AllZeros => candidates.push(Word::zeros(cb.n)),
            AdversaryStrategy::UniformRandom { count } => {
                for j in 0..*count {
                    let mut rng = derive_rng(seed, 0x65766531, j as u64);
                    candidates.push(Word::new(
                        (0..cb.n)
                            .map(|_| rng.random_range(0..z_alphabet as u8))
                            .collect(),
                    ));
                }
            }
            AdversaryStrategy::LargestAcceptCenter => {
                if let Ok(sets) = accept_set(cb, DEFAULT_ENUM_CAP) {
                    let i = sets
                        .per_message
                        .iter()
                        .enumerate()
                        .max_by_key(|(_, s)| s.len())
                        .map(|(i, _)| i)
                        .unwrap();
                    if cb.codewords[i].fits_alphabet(z_alphabet) {
                        candidates.push(cb.codewords[i].clone());
                    }
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    if candidates.is_empty() {
        return Err(Error::usage("no applicable adversary strategy"));
    }

    let decoder = Decoder::new(cb)?;
    let best = candidates
        .par_iter()
        .enumerate()
        .map(|(zi, z)| {
            let mut accepted = 0u64;
            for t in 0..trials {
                let mut rng = derive_rng(seed, 0x65766532 ^ (zi as u64) << 20, t);
                let y = eve.transmit_with(z, &mut rng)?;
                if decoder.decode(&y) != DecodeResult::Reject {
                    accepted += 1;
                }
            }
            Ok(accepted)
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .max()
        .unwrap();
    Ok(ErrorEstimate::from_counts(
        best,
        trials,
        Method::HeuristicLb { trials },
    ))
}

/// Union-bound upper bound on `p_fa` for the binary BSC setting:
/// `Pr(V not delta-typical) + |S| * 2^{-n(h(q) - delta)}`, clamped to [0,1].
/// Uses the exact `|S|` when enumerable, else the bound
/// `2^k * 2^{n(h(p)+delta)}`.
pub fn analytic_pfa_bound(cb: &Codebook, q: f64, cap: u64) -> Result<f64> {
    let (p, delta) = match cb.decode_params {
        DecodeParams::Typical { p, delta } => (p, delta),
        _ => {
            return Err(Error::usage(
                "analytic_pfa_bound applies to binary typical-set decoding",
            ))
        }
    };
    let tp = TypicalityParams::new(cb.n, delta)?;
    let atypical = 1.0 - typical_set_prob(q, &tp)?;
    let s_size = match accept_set(cb, cap) {
        Ok(sets) => sets.accepted.len() as f64,
        Err(Error::Resource(_)) => {
            (cb.k as f64 + cb.n as f64 * (binary_entropy(p)? + delta)).exp2()
        }
        Err(e) => return Err(e),
    };
    let bound = atypical + s_size * (-(cb.n as f64) * (binary_entropy(q)? - delta)).exp2();
    Ok(bound.clamp(0.0, 1.0))
}

/// Keeps the half of the codebook with the smallest per-message
/// decoding-error probability (ties broken by lower index). The input must
/// hold `2^{k+1}` codewords; the result holds `2^k`.
pub fn prune_codebook(
    cb: &Codebook,
    ch: &ChannelModel,
    cap: u64,
    mc_fallback: Option<(u64, u64)>,
) -> Result<Codebook> {
    if cb.k == 0 {
        return Err(Error::usage("cannot prune a single-codeword codebook"));
    }
    let errors = match per_codeword_pde(cb, ch, cap) {
        Ok(v) => v,
        Err(Error::Resource(_)) => {
            let (trials, seed) = mc_fallback.ok_or_else(|| {
                Error::resource("exact per-codeword errors infeasible and no Monte Carlo fallback given")
            })?;
            let decoder = Decoder::new(cb)?;
            cb.codewords
                .par_iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut err = 0u64;
                    for t in 0..trials {
                        let mut rng = derive_rng(seed, 0x7072756e ^ i as u64, t);
                        let y = ch.transmit_with(c, &mut rng)?;
                        if decoder.decode(&y) != DecodeResult::Message(i) {
                            err += 1;
                        }
                    }
                    Ok(err as f64 / trials as f64)
                })
                .collect::<Result<Vec<f64>>>()?
        }
        Err(e) => return Err(e),
    };
    let mut order: Vec<usize> = (0..cb.messages()).collect();
    order.sort_by(|&a, &b| {
        errors[a]
            .partial_cmp(&errors[b])
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = order[..cb.messages() / 2].to_vec();
    kept.sort_unstable();
    let codewords = kept.iter().map(|&i| cb.codewords[i].clone()).collect();
    Codebook::new(cb.n, cb.k - 1, codewords, cb.decode_params.clone())
}

/// Typicality slack strictly inside the achievability proof's requirement
/// `delta < (h(q) - h(p) - r) / 3`.
pub fn default_delta(p: f64, q: f64, rate: f64) -> Result<f64> {
    let gap = binary_entropy(q)? - binary_entropy(p)? - rate;
    if gap <= 0.0 {
        return Err(Error::domain(format!(
            "rate {rate} is not below h(q) - h(p)"
        )));
    }
    Ok(gap / 4.0)
}

/// The disjoint-alphabet demonstration code: a binary repetition-style
/// embedding into a four-symbol output alphabet whose decoder rejects any
/// word containing symbols 2 or 3, making `p_fa` exactly zero.
pub fn converse_demo_code(n: usize, k: usize, p: f64, delta: Option<f64>) -> Result<Codebook> {
    if k == 0 || k > n {
        return Err(Error::domain("converse demo requires 1 <= k <= n"));
    }
    let delta = match delta {
        Some(d) => d,
        None => 0.75 * binary_entropy(p)?,
    };
    // Bit j of the message is repeated over the j-th of k near-equal blocks.
    let base = n / k;
    let extra = n % k;
    let codewords = (0..1usize << k)
        .map(|m| {
            let mut symbols = Vec::with_capacity(n);
            for j in 0..k {
                let len = base + usize::from(j < extra);
                let bit = ((m >> j) & 1) as u8;
                symbols.extend(std::iter::repeat(bit).take(len));
            }
            Word::new(symbols)
        })
        .collect();
    Codebook::new(
        n,
        k,
        codewords,
        DecodeParams::BinaryEmbedded {
            p,
            delta,
            bob_alphabet: 4,
        },
    )
}

/// The Alice and Eve channels of the disjoint-alphabet counterexample:
/// Alice is a BSC(p) embedded in Bob's alphabet `{0,1,2,3}`, Eve maps
/// `0 -> 2` and `1 -> 3` noiselessly.
pub fn converse_demo_channels(p: f64) -> Result<(ChannelModel, ChannelModel)> {
    let alice = ChannelModel::dmc(vec![
        vec![1.0 - p, p, 0.0, 0.0],
        vec![p, 1.0 - p, 0.0, 0.0],
    ])?;
    let eve = ChannelModel::dmc(vec![
        vec![0.0, 0.0, 1.0, 0.0],
        vec![0.0, 0.0, 0.0, 1.0],
    ])?;
    Ok((alice, eve))
}

#[derive(Serialize, Deserialize)]
struct CodebookFile {
    n: usize,
    k: usize,
    codewords: Vec<String>,
    decode_params: DecodeParams,
}

/// Serializes a codebook to its JSON document (codewords as hex strings,
/// one digit per symbol).
pub fn codebook_to_json(cb: &Codebook) -> String {
    let file = CodebookFile {
        n: cb.n,
        k: cb.k,
        codewords: cb.codewords.iter().map(Word::to_hex).collect(),
        decode_params: cb.decode_params.clone(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn codebook_from_json(json: &str) -> Result<Codebook> {
    let file: CodebookFile = serde_json::from_str(json)?;
    let codewords = file
        .codewords
        .iter()
        .map(|s| Word::from_hex(s))
        .collect::<Result<Vec<Word>>>()?;
    Codebook::new(file.n, file.k, codewords, file.decode_params)
}
