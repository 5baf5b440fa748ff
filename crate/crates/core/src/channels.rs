//! Executable noisy-channel models and the authentication resource.
//!
//! The resource leaks Alice's channel input to Eve uncorrupted, routes
//! Alice's words through her channel and Eve's words through hers, and can
//! optionally expose a blocking bit that suppresses Bob's output.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::derive_rng;
use crate::word::Word;

/// Row-stochastic per-symbol transition description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ChannelModel {
    /// Binary symmetric channel flipping each bit with probability `p`.
    Bsc { p: f64 },
    /// General discrete memoryless channel, `rows[x][y] = P(y|x)`.
    Dmc { rows: Vec<Vec<f64>> },
}

impl ChannelModel {
    pub fn bsc(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("BSC parameter {p} outside [0,1]")));
        }
        Ok(ChannelModel::Bsc { p })
    }

    pub fn dmc(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::domain("DMC matrix must be non-empty"));
        }
        let cols = rows[0].len();
        for (x, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::domain("DMC rows have unequal lengths"));
            }
            if row.iter().any(|&p| p < 0.0) {
                return Err(Error::domain(format!("DMC row {x} has a negative entry")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::domain(format!("DMC row {x} sums to {sum}, not 1")));
            }
        }
        Ok(ChannelModel::Dmc { rows })
    }

    /// The same channel as an explicit DMC matrix.
    pub fn as_dmc(&self) -> ChannelModel {
        match self {
            ChannelModel::Bsc { p } => ChannelModel::Dmc {
                rows: vec![vec![1.0 - p, *p], vec![*p, 1.0 - p]],
            },
            dmc => dmc.clone(),
        }
    }

    pub fn input_alphabet(&self) -> usize {
        match self {
            ChannelModel::Bsc { .. } => 2,
            ChannelModel::Dmc { rows } => rows.len(),
        }
    }

    pub fn output_alphabet(&self) -> usize {
        match self {
            ChannelModel::Bsc { .. } => 2,
            ChannelModel::Dmc { rows } => rows[0].len(),
        }
    }

    /// Per-symbol transition probability `P(y|x)`.
    pub fn symbol_prob(&self, x: u8, y: u8) -> f64 {
        match self {
            ChannelModel::Bsc { p } => {
                if x == y {
                    1.0 - p
                } else {
                    *p
                }
            }
            ChannelModel::Dmc { rows } => rows[x as usize][y as usize],
        }
    }

    /// Output symbols reachable from input symbol `x`.
    pub fn symbol_support(&self, x: u8) -> Vec<u8> {
        (0..self.output_alphabet() as u8)
            .filter(|&y| self.symbol_prob(x, y) > 0.0)
            .collect()
    }

    fn check_input(&self, x: &Word) -> Result<()> {
        if !x.fits_alphabet(self.input_alphabet()) {
            return Err(Error::domain(format!(
                "word symbol outside channel input alphabet of size {}",
                self.input_alphabet()
            )));
        }
        Ok(())
    }

    /// Sends `x` through the channel; each output symbol is drawn
    /// independently per the channel row. Deterministic given `seed`.
    pub fn transmit(&self, x: &Word, seed: u64) -> Result<Word> {
        self.transmit_with(x, &mut derive_rng(seed, 0, 0))
    }

    /// As [`ChannelModel::transmit`] but drawing from a caller-owned generator.
    pub fn transmit_with(&self, x: &Word, rng: &mut impl Rng) -> Result<Word> {
        self.check_input(x)?;
        let out = x
            .symbols()
            .iter()
            .map(|&s| match self {
                ChannelModel::Bsc { p } => {
                    if rng.random::<f64>() < *p {
                        s ^ 1
                    } else {
                        s
                    }
                }
                ChannelModel::Dmc { rows } => {
                    let u: f64 = rng.random();
                    let row = &rows[s as usize];
                    let mut acc = 0.0;
                    let mut pick = row.len() as u8 - 1;
                    for (y, &prob) in row.iter().enumerate() {
                        acc += prob;
                        if u < acc {
                            pick = y as u8;
                            break;
                        }
                    }
                    pick
                }
            })
            .collect();
        Ok(Word::new(out))
    }

    /// Exact likelihood `Pr(output = y | input = x)`.
    pub fn output_prob(&self, x: &Word, y: &Word) -> Result<f64> {
        self.check_input(x)?;
        if y.len() != x.len() {
            return Err(Error::domain("output_prob: length mismatch"));
        }
        if !y.fits_alphabet(self.output_alphabet()) {
            return Err(Error::domain("output_prob: symbol outside output alphabet"));
        }
        Ok(match self {
            ChannelModel::Bsc { p } => {
                let d = x.distance(y) as i32;
                p.powi(d) * (1.0 - p).powi(x.len() as i32 - d)
            }
            ChannelModel::Dmc { .. } => x
                .symbols()
                .iter()
                .zip(y.symbols())
                .map(|(&xs, &ys)| self.symbol_prob(xs, ys))
                .product(),
        })
    }
}

/// On-disk schema for DMC matrices:
/// `{"inputs": A, "outputs": B, "rows": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct ChannelSpec {
    pub inputs: usize,
    pub outputs: usize,
    pub rows: Vec<Vec<f64>>,
}

impl ChannelSpec {
    pub fn into_channel(self) -> Result<ChannelModel> {
        if self.rows.len() != self.inputs {
            return Err(Error::domain(format!(
                "channel spec declares {} inputs but has {} rows",
                self.inputs,
                self.rows.len()
            )));
        }
        if self.rows.iter().any(|r| r.len() != self.outputs) {
            return Err(Error::domain(format!(
                "channel spec declares {} outputs but a row disagrees",
                self.outputs
            )));
        }
        ChannelModel::dmc(self.rows)
    }
}

/// Parses a DMC from its JSON document.
pub fn channel_from_json(json: &str) -> Result<ChannelModel> {
    let spec: ChannelSpec = serde_json::from_str(json)?;
    spec.into_channel()
}

pub fn channel_to_json(c: &ChannelModel) -> String {
    let dmc = c.as_dmc();
    let rows = match dmc {
        ChannelModel::Dmc { rows } => rows,
        _ => unreachable!(),
    };
    let spec = ChannelSpec {
        inputs: rows.len(),
        outputs: rows[0].len(),
        rows,
    };
    serde_json::to_string_pretty(&spec).expect("serializable")
}

/// The real resource: Alice's words pass through her channel (with the
/// input leaked to Eve), Eve's words pass through hers, and an optional
/// blocking bit can suppress Bob's output for Alice's transmissions.
#[derive(Clone, Debug)]
pub struct NoisyAuthResource {
    pub n: usize,
    pub alice_channel: ChannelModel,
    pub eve_channel: ChannelModel,
    pub blocking_enabled: bool,
}

impl NoisyAuthResource {
    pub fn new(
        n: usize,
        alice_channel: ChannelModel,
        eve_channel: ChannelModel,
        blocking_enabled: bool,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("resource length n must be >= 1"));
        }
        if alice_channel.output_alphabet() != eve_channel.output_alphabet() {
            return Err(Error::domain(
                "Alice's and Eve's channels must share Bob's output alphabet",
            ));
        }
        Ok(NoisyAuthResource {
            n,
            alice_channel,
            eve_channel,
            blocking_enabled,
        })
    }

    /// Binary BSC pair N^n_{p,q}.
    pub fn bsc_pair(n: usize, p: f64, q: f64, blocking_enabled: bool) -> Result<Self> {
        NoisyAuthResource::new(
            n,
            ChannelModel::bsc(p)?,
            ChannelModel::bsc(q)?,
            blocking_enabled,
        )
    }

    fn check_len(&self, w: &Word) -> Result<()> {
        if w.len() != self.n {
            return Err(Error::domain(format!(
                "word length {} != resource length {}",
                w.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// Alice sends `m`: Bob receives it through Alice's channel, Eve
    /// observes `m` uncorrupted.
    pub fn alice_send(&self, m: &Word, seed: u64) -> Result<(Word, Word)> {
        self.check_len(m)?;
        let bob = self.alice_channel.transmit(m, seed)?;
        Ok((bob, m.clone()))
    }

    /// Eve sends `z`: Bob receives it through Eve's channel; nothing is
    /// leaked back to Eve.
    pub fn eve_send(&self, z: &Word, seed: u64) -> Result<Word> {
        self.check_len(z)?;
        self.eve_channel.transmit(z, seed)
    }

    /// Alice's transmission under the blocking interface: with `b = 0`
    /// nothing reaches Bob, with `b = 1` this is exactly [`Self::alice_send`]'s
    /// Bob output.
    pub fn blocked_send(&self, m: &Word, b: u8, seed: u64) -> Result<Option<Word>> {
        if !self.blocking_enabled {
            return Err(Error::usage("blocking is not enabled on this resource"));
        }
        self.check_len(m)?;
        if b == 0 {
            Ok(None)
        } else {
            Ok(Some(self.alice_channel.transmit(m, seed)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bsc_extremes() {
        let x = Word::from_bits(0b1010, 4);
        let noiseless = ChannelModel::bsc(0.0).unwrap();
        assert_eq!(noiseless.transmit(&x, 1).unwrap(), x);
        let flip = ChannelModel::bsc(1.0).unwrap();
        assert_eq!(flip.transmit(&x, 1).unwrap(), x.complement());
    }

    #[test]
    fn transmit_reproducible_per_seed() {
        let c = ChannelModel::bsc(0.3).unwrap();
        let x = Word::zeros(32);
        let a = c.transmit(&x, 99).unwrap();
        let b = c.transmit(&x, 99).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c.transmit(&x, 100).unwrap());
    }

    #[test]
    fn output_prob_examples() {
        let c = ChannelModel::bsc(0.1).unwrap();
        let x = Word::zeros(3);
        assert!((c.output_prob(&x, &x).unwrap() - 0.9f64.powi(3)).abs() < 1e-15);
        // d = 2 at n = 3: 0.1^2 * 0.9 = 0.009.
        let y = Word::from_bits(0b011, 3);
        assert!((c.output_prob(&x, &y).unwrap() - 0.009).abs() < 1e-15);
        assert!(c.output_prob(&x, &Word::zeros(4)).is_err());
    }

    #[test]
    fn output_prob_rows_sum_to_one() {
        for c in [
            ChannelModel::bsc(0.23).unwrap(),
            ChannelModel::dmc(vec![vec![0.2, 0.5, 0.3], vec![0.0, 0.4, 0.6]]).unwrap(),
        ] {
            let n = 6;
            for x_rank in 0..(c.input_alphabet() as u64).pow(n as u32) {
                let x = Word::from_rank(x_rank, c.input_alphabet(), n);
                let total: f64 = (0..(c.output_alphabet() as u64).pow(n as u32))
                    .map(|y_rank| {
                        let y = Word::from_rank(y_rank, c.output_alphabet(), n);
                        c.output_prob(&x, &y).unwrap()
                    })
                    .sum();
                assert!((total - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bsc_translation_symmetry() {
        let c = ChannelModel::bsc(0.17).unwrap();
        let n = 8;
        let x = Word::from_bits(0b1011_0010, n);
        let y = Word::from_bits(0b0111_1000, n);
        for w_bits in 0..(1u64 << n) {
            let w = Word::from_bits(w_bits, n);
            let a = c.output_prob(&x, &y).unwrap();
            let b = c.output_prob(&x.xor(&w), &y.xor(&w)).unwrap();
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn transmit_frequencies_match_output_prob() {
        // Monte Carlo agreement with the exact likelihood at n = 2, within
        // 5 sigma of the binomial standard deviation per output.
        let c = ChannelModel::bsc(0.3).unwrap();
        let x = Word::from_bits(0b01, 2);
        let trials = 100_000u64;
        let mut counts = [0u64; 4];
        for t in 0..trials {
            let y = c
                .transmit_with(&x, &mut derive_rng(42, 0, t))
                .unwrap();
            counts[y.to_bits() as usize] += 1;
        }
        for y_bits in 0..4u64 {
            let y = Word::from_bits(y_bits, 2);
            let p = c.output_prob(&x, &y).unwrap();
            let sigma = (p * (1.0 - p) / trials as f64).sqrt();
            let freq = counts[y_bits as usize] as f64 / trials as f64;
            assert!((freq - p).abs() < 5.0 * sigma, "y={y_bits} freq={freq} p={p}");
        }
    }

    #[test]
    fn dmc_transmit_respects_support() {
        // The counterexample Eve channel maps 0 -> 2 and 1 -> 3
        // deterministically.
        let eve = ChannelModel::dmc(vec![
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        let z = Word::new(vec![0, 1, 1, 0]);
        assert_eq!(eve.transmit(&z, 7).unwrap(), Word::new(vec![2, 3, 3, 2]));
        assert_eq!(eve.symbol_support(0), vec![2]);
    }

    #[test]
    fn resource_semantics() {
        let r = NoisyAuthResource::bsc_pair(4, 0.0, 0.5, false).unwrap();
        let m = Word::from_bits(0b1010, 4);
        let (bob, eve_obs) = r.alice_send(&m, 3).unwrap();
        assert_eq!(bob, m);
        assert_eq!(eve_obs, m);

        // Eve's observation is the raw input regardless of noise.
        let noisy = NoisyAuthResource::bsc_pair(4, 0.4, 0.5, false).unwrap();
        let (_, eve_obs) = noisy.alice_send(&m, 3).unwrap();
        assert_eq!(eve_obs, m);

        assert!(r.alice_send(&Word::zeros(3), 0).is_err());
    }

    #[test]
    fn eve_send_through_eve_channel() {
        let r = NoisyAuthResource::bsc_pair(4, 0.0, 1.0, false).unwrap();
        let z = Word::from_bits(0b0011, 4);
        assert_eq!(r.eve_send(&z, 5).unwrap(), z.complement());
    }

    #[test]
    fn eve_bsc_half_is_uniform() {
        // Chi-squared against uniform over {0,1}^3 at 10^5 trials.
        let r = NoisyAuthResource::bsc_pair(3, 0.0, 0.5, false).unwrap();
        let z = Word::zeros(3);
        let trials = 100_000u64;
        let mut counts = [0u64; 8];
        for t in 0..trials {
            let y = r
                .eve_channel
                .transmit_with(&z, &mut derive_rng(8, 1, t))
                .unwrap();
            counts[y.to_bits() as usize] += 1;
        }
        let expected = trials as f64 / 8.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // 7 degrees of freedom; 0.999 quantile is about 24.3.
        assert!(chi2 < 24.3, "chi2 = {chi2}");
    }

    #[test]
    fn blocking_interface() {
        let r = NoisyAuthResource::bsc_pair(4, 0.1, 0.4, true).unwrap();
        let m = Word::from_bits(0b1100, 4);
        assert_eq!(r.blocked_send(&m, 0, 11).unwrap(), None);
        let passed = r.blocked_send(&m, 1, 11).unwrap().unwrap();
        let (direct, _) = r.alice_send(&m, 11).unwrap();
        assert_eq!(passed, direct);

        let no_block = NoisyAuthResource::bsc_pair(4, 0.1, 0.4, false).unwrap();
        assert!(matches!(
            no_block.blocked_send(&m, 1, 0),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn resource_rejects_mismatched_bob_alphabets() {
        let alice = ChannelModel::bsc(0.1).unwrap();
        let eve = ChannelModel::dmc(vec![vec![0.5, 0.25, 0.25]]).unwrap();
        assert!(NoisyAuthResource::new(4, alice, eve, false).is_err());
    }

    #[test]
    fn channel_json_round_trip() {
        let json = r#"{"inputs": 2, "outputs": 3, "rows": [[0.2, 0.5, 0.3], [0.0, 0.4, 0.6]]}"#;
        let c = channel_from_json(json).unwrap();
        assert_eq!(c.input_alphabet(), 2);
        assert_eq!(c.output_alphabet(), 3);
        let again = channel_from_json(&channel_to_json(&c)).unwrap();
        assert_eq!(c, again);

        assert!(channel_from_json(r#"{"inputs": 3, "outputs": 2, "rows": [[1.0, 0.0]]}"#).is_err());
        assert!(
            channel_from_json(r#"{"inputs": 1, "outputs": 2, "rows": [[0.6, 0.5]]}"#).is_err()
        );
    }
}
