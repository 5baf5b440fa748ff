//! An executable miniature of the composable-security resource calculus.
//!
//! Resources here are single-activation, single-input/single-output systems
//! described by exact finite output distributions per input. For such
//! systems the optimal distinguisher is deterministic and single-input, so
//! the distinguishing distance is the maximum over inputs of half the L1
//! distance between output rows; `exhaustive_distinguisher_distance`
//! re-derives the same value by brute force over deterministic strategies
//! and serves as the independent oracle.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use crate::channels::NoisyAuthResource;
use crate::coding::{exact_pde, exact_pfa, Codebook, DecodeResult, Decoder};
use crate::error::{Error, Result};
use crate::word::Word;

/// A single-round interactive system: for every admissible input, an exact
/// probability distribution over outputs.
#[derive(Clone, Debug, PartialEq)]
pub struct OneShotResource<I, O> {
    inputs: Vec<I>,
    outputs: Vec<O>,
    rows: Vec<Vec<f64>>,
}

impl<I, O> OneShotResource<I, O>
where
    I: Clone + Eq + Hash,
    O: Clone + Eq + Hash,
{
    pub fn new(inputs: Vec<I>, outputs: Vec<O>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if inputs.len() != rows.len() {
            return Err(Error::domain("one row required per input"));
        }
        let mut seen = HashMap::new();
        for (idx, i) in inputs.iter().enumerate() {
            if seen.insert(i.clone(), idx).is_some() {
                return Err(Error::domain("duplicate input label"));
            }
        }
        let mut out_seen = HashMap::new();
        for (idx, o) in outputs.iter().enumerate() {
            if out_seen.insert(o.clone(), idx).is_some() {
                return Err(Error::domain("duplicate output label"));
            }
        }
        for row in &rows {
            if row.len() != outputs.len() {
                return Err(Error::domain("row length differs from output count"));
            }
            if row.iter().any(|&p| p < 0.0) {
                return Err(Error::domain("negative probability in resource row"));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::domain(format!("resource row sums to {sum}, not 1")));
            }
        }
        Ok(OneShotResource {
            inputs,
            outputs,
            rows,
        })
    }

    pub fn inputs(&self) -> &[I] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[O] {
        &self.outputs
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Output distribution for a given input, as a label-to-probability map.
    pub fn row_for(&self, input: &I) -> Option<HashMap<O, f64>> {
        let idx = self.inputs.iter().position(|i| i == input)?;
        Some(
            self.outputs
                .iter()
                .cloned()
                .zip(self.rows[idx].iter().copied())
                .collect(),
        )
    }
}

/// Exact distinguishing distance between two one-shot resources with the
/// same input space: `max_x (1/2) || r(.|x) - s(.|x) ||_1`.
pub fn distance<I, O>(r: &OneShotResource<I, O>, s: &OneShotResource<I, O>) -> Result<f64>
where
    I: Clone + Eq + Hash,
    O: Clone + Eq + Hash,
{
    if r.inputs.len() != s.inputs.len() {
        return Err(Error::domain("resources have different input spaces"));
    }
    let s_input_index: HashMap<&I, usize> =
        s.inputs.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let s_output_index: HashMap<&O, usize> =
        s.outputs.iter().enumerate().map(|(i, o)| (o, i)).collect();
    // Align output columns once: r's columns mapped into s, plus s's
    // columns with no counterpart in r.
    let col_map: Vec<Option<usize>> = r
        .outputs
        .iter()
        .map(|o| s_output_index.get(o).copied())
        .collect();
    let r_output_index: HashMap<&O, usize> =
        r.outputs.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let s_only: Vec<usize> = s
        .outputs
        .iter()
        .enumerate()
        .filter(|(_, o)| !r_output_index.contains_key(o))
        .map(|(j, _)| j)
        .collect();

    let mut best = 0.0f64;
    for (input, r_row) in r.inputs.iter().zip(&r.rows) {
        let s_idx = *s_input_index
            .get(input)
            .ok_or_else(|| Error::domain("resources have different input spaces"))?;
        let s_row = &s.rows[s_idx];
        let mut total = 0.0;
        for (j, &pr) in r_row.iter().enumerate() {
            let ps = col_map[j].map_or(0.0, |sj| s_row[sj]);
            total += (pr - ps).abs();
        }
        for &sj in &s_only {
            total += s_row[sj];
        }
        best = best.max(total / 2.0);
    }
    Ok(best)
}

/// Independent oracle for [`distance`]: brute force over deterministic
/// distinguisher strategies (an input choice plus a verdict-1 output
/// subset). Enumerates all subsets when the output space is small, else
/// uses the greedy optimal subset `{y : r(y|x) > s(y|x)}`.
pub fn exhaustive_distinguisher_distance<I, O>(
    r: &OneShotResource<I, O>,
    s: &OneShotResource<I, O>,
) -> Result<f64>
where
    I: Clone + Eq + Hash,
    O: Clone + Eq + Hash + Ord,
{
    if r.inputs.len() != s.inputs.len() {
        return Err(Error::domain("resources have different input spaces"));
    }
    if r.inputs.len() > 64 {
        return Err(Error::resource("input space too large for exhaustive search"));
    }
    let mut best = 0.0f64;
    for input in &r.inputs {
        let a = r.row_for(input).expect("own input");
        let b = s
            .row_for(input)
            .ok_or_else(|| Error::domain("resources have different input spaces"))?;
        let mut labels: Vec<O> = a.keys().chain(b.keys()).cloned().collect();
        labels.sort();
        labels.dedup();
        if labels.len() > 64 {
            return Err(Error::resource("output space too large for exhaustive search"));
        }
        let diffs: Vec<f64> = labels
            .iter()
            .map(|o| a.get(o).copied().unwrap_or(0.0) - b.get(o).copied().unwrap_or(0.0))
            .collect();
        if labels.len() <= 20 {
            for mask in 0u64..(1u64 << labels.len()) {
                let advantage: f64 = diffs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, d)| d)
                    .sum();
                best = best.max(advantage.abs());
            }
        } else {
            let advantage: f64 = diffs.iter().filter(|&&d| d > 0.0).sum();
            best = best.max(advantage);
        }
    }
    Ok(best)
}

/// Independent access to the interfaces of both resources.
pub fn parallel_compose<I1, O1, I2, O2>(
    r: &OneShotResource<I1, O1>,
    s: &OneShotResource<I2, O2>,
) -> OneShotResource<(I1, I2), (O1, O2)>
where
    I1: Clone + Eq + Hash,
    O1: Clone + Eq + Hash,
    I2: Clone + Eq + Hash,
    O2: Clone + Eq + Hash,
{
    let mut inputs = Vec::new();
    let mut rows = Vec::new();
    let outputs: Vec<(O1, O2)> = r
        .outputs
        .iter()
        .flat_map(|o1| s.outputs.iter().map(move |o2| (o1.clone(), o2.clone())))
        .collect();
    for (i1, row1) in r.inputs.iter().zip(&r.rows) {
        for (i2, row2) in s.inputs.iter().zip(&s.rows) {
            inputs.push((i1.clone(), i2.clone()));
            rows.push(
                row1.iter()
                    .flat_map(|&p1| row2.iter().map(move |&p2| p1 * p2))
                    .collect(),
            );
        }
    }
    OneShotResource {
        inputs,
        outputs,
        rows,
    }
}

/// A converter for one-shot systems: a stochastic relabeling of inputs
/// (outside to inside) and of outputs (inside to outside).
#[derive(Clone, Debug)]
pub struct Converter<I2, I1, O1, O2> {
    /// Maps each outside input to a distribution over inside inputs.
    pub pre: OneShotResource<I2, I1>,
    /// Maps each inside output to a distribution over outside outputs.
    pub post: OneShotResource<O1, O2>,
}

/// Attaches a converter to a resource, rewiring its interface.
pub fn apply_converter<I2, I1, O1, O2>(
    conv: &Converter<I2, I1, O1, O2>,
    res: &OneShotResource<I1, O1>,
) -> Result<OneShotResource<I2, O2>>
where
    I2: Clone + Eq + Hash,
    I1: Clone + Eq + Hash,
    O1: Clone + Eq + Hash,
    O2: Clone + Eq + Hash,
{
    let mut rows = Vec::new();
    for pre_row in &conv.pre.rows {
        let mut out_row = vec![0.0; conv.post.outputs.len()];
        for (inner_input, &p_in) in conv.pre.outputs.iter().zip(pre_row) {
            if p_in == 0.0 {
                continue;
            }
            let res_idx = res
                .inputs
                .iter()
                .position(|i| i == inner_input)
                .ok_or_else(|| Error::domain("converter targets an unknown resource input"))?;
            for (inner_output, &p_out) in res.outputs.iter().zip(&res.rows[res_idx]) {
                if p_out == 0.0 {
                    continue;
                }
                let post_idx = conv
                    .post
                    .inputs
                    .iter()
                    .position(|o| o == inner_output)
                    .ok_or_else(|| Error::domain("converter does not cover a resource output"))?;
                for (slot, &p_map) in out_row.iter_mut().zip(&conv.post.rows[post_idx]) {
                    *slot += p_in * p_out * p_map;
                }
            }
        }
        rows.push(out_row);
    }
    OneShotResource::new(conv.pre.inputs.clone(), conv.post.outputs.clone(), rows)
}

/// The identity converter on the given interface labels.
pub fn identity_converter<I, O>(inputs: &[I], outputs: &[O]) -> Converter<I, I, O, O>
where
    I: Clone + Eq + Hash,
    O: Clone + Eq + Hash,
{
    let eye = |n: usize| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect()
    };
    Converter {
        pre: OneShotResource {
            inputs: inputs.to_vec(),
            outputs: inputs.to_vec(),
            rows: eye(inputs.len()),
        },
        post: OneShotResource {
            inputs: outputs.to_vec(),
            outputs: outputs.to_vec(),
            rows: eye(outputs.len()),
        },
    }
}

/// Tagged inputs of the authentication systems.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuthInput {
    /// Alice inputs a message word.
    Alice(Word),
    /// Eve inputs a forgery word.
    Eve(Word),
    /// Alice's message together with Eve's blocking bit.
    AliceBlock(Word, u8),
    /// Eve's forgery together with her blocking bit.
    EveBlock(Word, u8),
}

/// What Bob's interface emits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BobOutput {
    /// A decoded message, as a k-bit word.
    Message(Word),
    /// The rejection symbol.
    Reject,
    /// No output at all (blocked transmission).
    Absent,
}

/// Joint output at (Eve, Bob).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AuthOutput {
    pub eve: Option<Word>,
    pub bob: BobOutput,
}

/// The authentication systems are one-shot resources over tagged words.
pub type AuthSystem = OneShotResource<AuthInput, AuthOutput>;

fn checked_pow(alphabet: usize, n: usize, cap: u64) -> Result<u64> {
    let size = (alphabet as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::resource(format!(
            "input space {alphabet}^{n} exceeds enumeration cap {cap}"
        )));
    }
    Ok(size as u64)
}

/// Computes Bob's exact output distribution for a given channel input.
/// For binary codes over an enumerable output space the decode results
/// are tabulated once, turning each BSC input into a pass over Hamming
/// distances.
struct BobKernel<'a> {
    decoder: Decoder<'a>,
    cb: &'a Codebook,
    cap: u64,
    table: Option<Vec<DecodeResult>>,
}

impl<'a> BobKernel<'a> {
    fn new(cb: &'a Codebook, cap: u64) -> Result<Self> {
        let decoder = Decoder::new(cb)?;
        let table = if cb.bob_alphabet() == 2 && cb.n < 64 && (1u128 << cb.n) <= cap as u128 {
            Some(
                (0..1u64 << cb.n)
                    .map(|y| decoder.decode(&Word::from_bits(y, cb.n)))
                    .collect(),
            )
        } else {
            None
        };
        Ok(BobKernel {
            decoder,
            cb,
            cap,
            table,
        })
    }

    /// Sparse (outcome, probability) pairs over messages and rejection.
    fn distribution(
        &self,
        ch: &crate::channels::ChannelModel,
        input: &Word,
    ) -> Result<Vec<(BobOutput, f64)>> {
        let messages = self.cb.messages();
        let mut mass = vec![0.0f64; messages + 1];
        match (&self.table, ch) {
            (Some(table), crate::channels::ChannelModel::Bsc { p }) => {
                let n = self.cb.n;
                let pw: Vec<f64> = (0..=n)
                    .map(|d| p.powi(d as i32) * (1.0 - p).powi((n - d) as i32))
                    .collect();
                let z = input.to_bits();
                for (y, res) in table.iter().enumerate() {
                    let pr = pw[(y as u64 ^ z).count_ones() as usize];
                    match res {
                        DecodeResult::Message(i) => mass[*i] += pr,
                        DecodeResult::Reject => mass[messages] += pr,
                    }
                }
            }
            _ => {
                let supports: Vec<Vec<u8>> = input
                    .symbols()
                    .iter()
                    .map(|&s| ch.symbol_support(s))
                    .collect();
                let total: u128 = supports.iter().map(|s| s.len() as u128).product();
                if total > self.cap as u128 {
                    return Err(Error::resource(format!(
                        "support enumeration of {total} outputs exceeds cap {}",
                        self.cap
                    )));
                }
                let mut y = Word::new(supports.iter().map(|s| s[0]).collect());
                let mut idx = vec![0usize; input.len()];
                'outer: loop {
                    let p = ch.output_prob(input, &y)?;
                    match self.decoder.decode(&y) {
                        DecodeResult::Message(i) => mass[i] += p,
                        DecodeResult::Reject => mass[messages] += p,
                    }
                    let mut pos = 0;
                    loop {
                        if pos == input.len() {
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
            }
        }
        let mut dist: Vec<(BobOutput, f64)> = mass[..messages]
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, &p)| (BobOutput::Message(Word::from_bits(i as u64, self.cb.k)), p))
            .collect();
        if mass[messages] > 0.0 {
            dist.push((BobOutput::Reject, mass[messages]));
        }
        Ok(dist)
    }
}

struct AuthSystemBuilder {
    inputs: Vec<AuthInput>,
    outputs: Vec<AuthOutput>,
    index: HashMap<AuthOutput, usize>,
    rows: Vec<Vec<(usize, f64)>>,
}

impl AuthSystemBuilder {
    fn new() -> Self {
        AuthSystemBuilder {
            inputs: Vec::new(),
            outputs: Vec::new(),
            index: HashMap::new(),
            rows: Vec::new(),
        }
    }

    fn push_row(&mut self, input: AuthInput, dist: Vec<(AuthOutput, f64)>) {
        let mut sparse = Vec::with_capacity(dist.len());
        for (o, p) in dist {
            let idx = *self.index.entry(o.clone()).or_insert_with(|| {
                self.outputs.push(o);
                self.outputs.len() - 1
            });
            sparse.push((idx, p));
        }
        self.inputs.push(input);
        self.rows.push(sparse);
    }

    fn build(self) -> Result<AuthSystem> {
        let cols = self.outputs.len();
        let rows = self
            .rows
            .into_iter()
            .map(|sparse| {
                let mut row = vec![0.0; cols];
                for (idx, p) in sparse {
                    row[idx] += p;
                }
                row
            })
            .collect();
        OneShotResource::new(self.inputs, self.outputs, rows)
    }
}

/// Compiles protocol + noisy resource into the one-shot real system:
/// Alice's k-bit messages are encoded, transmitted and decoded with the
/// codeword leaked to Eve; Eve's n-symbol inputs pass through her channel
/// into the same decoder.
pub fn compile_real(cb: &Codebook, res: &NoisyAuthResource, cap: u64) -> Result<AuthSystem> {
    if res.n != cb.n {
        return Err(Error::domain("resource length differs from codeword length"));
    }
    let kernel = BobKernel::new(cb, cap)?;
    let z_alphabet = res.eve_channel.input_alphabet();
    let z_space = checked_pow(z_alphabet, cb.n, cap)?;
    checked_pow(2, cb.k, cap)?;

    let mut builder = AuthSystemBuilder::new();
    for m in 0..cb.messages() {
        let message = Word::from_bits(m as u64, cb.k);
        let codeword = &cb.codewords[m];
        let bob = kernel.distribution(&res.alice_channel, codeword)?;
        let dist = |bob: &[(BobOutput, f64)]| {
            bob.iter()
                .map(|(o, p)| {
                    (
                        AuthOutput {
                            eve: Some(codeword.clone()),
                            bob: o.clone(),
                        },
                        *p,
                    )
                })
                .collect::<Vec<_>>()
        };
        if res.blocking_enabled {
            builder.push_row(AuthInput::AliceBlock(message.clone(), 1), dist(&bob));
            builder.push_row(
                AuthInput::AliceBlock(message, 0),
                vec![(
                    AuthOutput {
                        eve: Some(codeword.clone()),
                        bob: BobOutput::Absent,
                    },
                    1.0,
                )],
            );
        } else {
            builder.push_row(AuthInput::Alice(message), dist(&bob));
        }
    }
    for z_rank in 0..z_space {
        let z = Word::from_rank(z_rank, z_alphabet, cb.n);
        let bob = kernel.distribution(&res.eve_channel, &z)?;
        let dist: Vec<(AuthOutput, f64)> = bob
            .into_iter()
            .map(|(o, p)| (AuthOutput { eve: None, bob: o }, p))
            .collect();
        if res.blocking_enabled {
            builder.push_row(AuthInput::EveBlock(z.clone(), 1), dist.clone());
            builder.push_row(AuthInput::EveBlock(z, 0), dist);
        } else {
            builder.push_row(AuthInput::Eve(z), dist);
        }
    }
    builder.build()
}

/// The ideal authenticated channel on k-bit messages: Alice's message is
/// delivered verbatim to Bob and Eve; anything Eve inputs turns into the
/// rejection symbol at Bob.
pub fn ideal_authenticated(k: usize, blocking: bool) -> Result<AuthSystem> {
    if k > crate::coding::MAX_MESSAGE_BITS {
        return Err(Error::resource(format!("k = {k} exceeds message cap")));
    }
    let mut builder = AuthSystemBuilder::new();
    for m in 0..1u64 << k {
        let message = Word::from_bits(m, k);
        let delivered = vec![(
            AuthOutput {
                eve: Some(message.clone()),
                bob: BobOutput::Message(message.clone()),
            },
            1.0,
        )];
        if blocking {
            builder.push_row(AuthInput::AliceBlock(message.clone(), 1), delivered);
            builder.push_row(
                AuthInput::AliceBlock(message.clone(), 0),
                vec![(
                    AuthOutput {
                        eve: Some(message.clone()),
                        bob: BobOutput::Absent,
                    },
                    1.0,
                )],
            );
        } else {
            builder.push_row(AuthInput::Alice(message.clone()), delivered);
        }
    }
    for m in 0..1u64 << k {
        let forged = Word::from_bits(m, k);
        let rejected = vec![(
            AuthOutput {
                eve: None,
                bob: BobOutput::Reject,
            },
            1.0,
        )];
        if blocking {
            builder.push_row(AuthInput::EveBlock(forged.clone(), 1), rejected.clone());
            builder.push_row(AuthInput::EveBlock(forged, 0), rejected);
        } else {
            builder.push_row(AuthInput::Eve(forged), rejected);
        }
    }
    builder.build()
}

/// The filtered view of a system: Eve's interface is blocked, so the
/// distinguisher only drives Alice's input (with the blocking bit forced
/// to 1) and sees Bob's output.
pub fn with_filter(res: &AuthSystem) -> Result<AuthSystem> {
    let mut builder = AuthSystemBuilder::new();
    for (input, row) in res.inputs.iter().zip(&res.rows) {
        let message = match input {
            AuthInput::Alice(m) => m.clone(),
            AuthInput::AliceBlock(m, 1) => m.clone(),
            _ => continue,
        };
        // Marginalize Eve's hidden output.
        let mut bob_mass: HashMap<BobOutput, f64> = HashMap::new();
        for (output, &p) in res.outputs.iter().zip(row) {
            if p > 0.0 {
                *bob_mass.entry(output.bob.clone()).or_insert(0.0) += p;
            }
        }
        let mut dist: Vec<(AuthOutput, f64)> = bob_mass
            .into_iter()
            .map(|(bob, p)| (AuthOutput { eve: None, bob }, p))
            .collect();
        dist.sort_by(|a, b| a.0.cmp(&b.0));
        builder.push_row(AuthInput::Alice(message), dist);
    }
    builder.build()
}

/// Attaches the simulator to the ideal resource: Alice-side leaks become
/// codewords, and Eve's n-symbol inputs are collapsed to the all-zeros
/// k-bit message (which the ideal resource rejects anyway). The blocking
/// bit, when present, is conveyed through unchanged.
pub fn with_simulator(
    ideal: &AuthSystem,
    cb: &Codebook,
    eve_alphabet: usize,
    cap: u64,
) -> Result<AuthSystem> {
    let blocking = ideal
        .inputs
        .iter()
        .any(|i| matches!(i, AuthInput::AliceBlock(..)));
    let z_space = checked_pow(eve_alphabet, cb.n, cap)?;
    let mut builder = AuthSystemBuilder::new();

    let map_row = |row_input: &AuthInput| -> Result<Vec<(AuthOutput, f64)>> {
        let idx = ideal
            .inputs
            .iter()
            .position(|i| i == row_input)
            .ok_or_else(|| Error::domain("simulator: ideal resource is missing an input"))?;
        Ok(ideal
            .outputs
            .iter()
            .zip(&ideal.rows[idx])
            .filter(|(_, &p)| p > 0.0)
            .map(|(o, &p)| {
                let eve = o.eve.as_ref().map(|m| cb.codewords[m.to_bits() as usize].clone());
                (
                    AuthOutput {
                        eve,
                        bob: o.bob.clone(),
                    },
                    p,
                )
            })
            .collect())
    };

    for m in 0..cb.messages() {
        let message = Word::from_bits(m as u64, cb.k);
        if blocking {
            for b in [1u8, 0] {
                let dist = map_row(&AuthInput::AliceBlock(message.clone(), b))?;
                builder.push_row(AuthInput::AliceBlock(message.clone(), b), dist);
            }
        } else {
            let dist = map_row(&AuthInput::Alice(message.clone()))?;
            builder.push_row(AuthInput::Alice(message), dist);
        }
    }
    let zeros = Word::zeros(cb.k);
    for z_rank in 0..z_space {
        let z = Word::from_rank(z_rank, eve_alphabet, cb.n);
        if blocking {
            for b in [1u8, 0] {
                let dist = map_row(&AuthInput::EveBlock(zeros.clone(), b))?;
                builder.push_row(AuthInput::EveBlock(z.clone(), b), dist);
            }
        } else {
            let dist = map_row(&AuthInput::Eve(zeros.clone()))?;
            builder.push_row(AuthInput::Eve(z), dist);
        }
    }
    builder.build()
}

/// Verification report for a concrete codebook over a concrete resource.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub schema: u32,
    pub n: usize,
    pub k: usize,
    pub eps: f64,
    pub d_filtered: f64,
    pub d_simulated: f64,
    pub p_de: f64,
    pub p_fa: f64,
    /// Whether `d_filtered = p_de` and `d_simulated = max(p_de, p_fa)`
    /// hold to 1e-12.
    pub equalities_hold: bool,
    pub pass: bool,
}

/// Distance equality tolerance: both sides are exact enumerations, so only
/// accumulated rounding separates them.
pub const EQUALITY_TOL: f64 = 1e-12;

/// Checks the construction: distances with Eve blocked and with the
/// simulator present, their predicted equalities against the exact error
/// probabilities, and the epsilon threshold.
pub fn verify_construction(
    cb: &Codebook,
    res: &NoisyAuthResource,
    eps: f64,
    cap: u64,
) -> Result<ConstructionReport> {
    let real = compile_real(cb, res, cap)?;
    let ideal = ideal_authenticated(cb.k, res.blocking_enabled)?;
    let d_filtered = distance(&with_filter(&real)?, &with_filter(&ideal)?)?;
    let simulated = with_simulator(&ideal, cb, res.eve_channel.input_alphabet(), cap)?;
    let d_simulated = distance(&real, &simulated)?;

    let p_de = exact_pde(cb, &res.alice_channel, cap)?.value;
    let p_fa = exact_pfa(cb, &res.eve_channel, cap)?.value;
    let equalities_hold = (d_filtered - p_de).abs() <= EQUALITY_TOL
        && (d_simulated - p_de.max(p_fa)).abs() <= EQUALITY_TOL;
    Ok(ConstructionReport {
        schema: 1,
        n: cb.n,
        k: cb.k,
        eps,
        d_filtered,
        d_simulated,
        p_de,
        p_fa,
        equalities_hold,
        pass: d_filtered < eps && d_simulated < eps,
    })
}
