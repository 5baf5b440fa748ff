//! Entropy, typicality, joint typicality and achievable-rate formulas.
//!
//! All entropies are in bits (log base 2), `0 * log 0 := 0` throughout, and
//! sequences of probability zero are never typical. Typicality uses strict
//! inequality against the slack `delta`.

use crate::channels::ChannelModel;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::Word;

/// Probability distribution over a finite alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbVector<T: Scalar> {
    entries: Vec<T>,
}

impl<T: Scalar> ProbVector<T> {
    /// Validates non-negativity and normalization (tolerance `1e-9`).
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("probability vector must be non-empty"));
        }
        if entries.iter().any(|&p| p < T::zero()) {
            return Err(Error::domain("probability vector has a negative entry"));
        }
        let total: T = entries.iter().copied().sum();
        if (total - T::one()).abs() > T::of(1e-9) {
            return Err(Error::domain(format!(
                "probability vector sums to {:?}, not 1",
                total
            )));
        }
        Ok(ProbVector { entries })
    }

    pub fn uniform(len: usize) -> Self {
        let p = T::one() / T::of(len as f64);
        ProbVector {
            entries: vec![p; len],
        }
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Joint probability mass function on `X x Y`, stored row-major by `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointPmf<T: Scalar> {
    matrix: Vec<Vec<T>>,
}

impl<T: Scalar> JointPmf<T> {
    pub fn new(matrix: Vec<Vec<T>>) -> Result<Self> {
        if matrix.is_empty() || matrix[0].is_empty() {
            return Err(Error::domain("joint pmf must be non-empty"));
        }
        let cols = matrix[0].len();
        if matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("joint pmf rows have unequal lengths"));
        }
        if matrix.iter().flatten().any(|&p| p < T::zero()) {
            return Err(Error::domain("joint pmf has a negative entry"));
        }
        let total: T = matrix.iter().flatten().copied().sum();
        if (total - T::one()).abs() > T::of(1e-9) {
            return Err(Error::domain(format!("joint pmf sums to {:?}, not 1", total)));
        }
        Ok(JointPmf { matrix })
    }

    /// Joint pmf induced by an input distribution and a transition matrix:
    /// `P(x, y) = P_X(x) * P(y|x)`.
    pub fn from_input_and_channel(px: &ProbVector<T>, rows: &[Vec<T>]) -> Result<Self> {
        if px.len() != rows.len() {
            return Err(Error::domain("input distribution does not match channel rows"));
        }
        let matrix = px
            .entries()
            .iter()
            .zip(rows)
            .map(|(&p, row)| row.iter().map(|&t| p * t).collect())
            .collect();
        JointPmf::new(matrix)
    }

    pub fn prob(&self, x: usize, y: usize) -> T {
        self.matrix[x][y]
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix[0].len()
    }

    /// Marginal over the row index `x`.
    pub fn marginal_x(&self) -> ProbVector<T> {
        ProbVector {
            entries: self.matrix.iter().map(|r| r.iter().copied().sum()).collect(),
        }
    }

    /// Marginal over the column index `y`.
    pub fn marginal_y(&self) -> ProbVector<T> {
        ProbVector {
            entries: (0..self.cols())
                .map(|y| self.matrix.iter().map(|r| r[y]).sum())
                .collect(),
        }
    }
}

/// Typicality parameters: sequence length `n` and slack `delta` (bits/symbol).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TypicalityParams<T: Scalar> {
    pub n: usize,
    pub delta: T,
}

impl<T: Scalar> TypicalityParams<T> {
    pub fn new(n: usize, delta: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("typicality requires n >= 1"));
        }
        if !(delta > T::zero()) {
            return Err(Error::domain("typicality slack delta must be positive"));
        }
        Ok(TypicalityParams { n, delta })
    }
}

fn xlog2x<T: Scalar>(p: T) -> T {
    if p == T::zero() {
        T::zero()
    } else {
        p * p.log2()
    }
}

/// Binary entropy `h(p) = -p log p - (1-p) log (1-p)` in bits.
pub fn binary_entropy<T: Scalar>(p: T) -> Result<T> {
    if !(T::zero()..=T::one()).contains(&p) {
        return Err(Error::domain(format!("binary_entropy: p = {:?} outside [0,1]", p)));
    }
    Ok(-xlog2x(p) - xlog2x(T::one() - p))
}

/// Shannon entropy of a distribution, in bits.
pub fn entropy<T: Scalar>(p: &ProbVector<T>) -> T {
    -p.entries().iter().map(|&q| xlog2x(q)).sum::<T>()
}

/// Joint entropy `H(X, Y)` in bits.
pub fn joint_entropy<T: Scalar>(j: &JointPmf<T>) -> T {
    -(0..j.rows())
        .flat_map(|x| (0..j.cols()).map(move |y| (x, y)))
        .map(|(x, y)| xlog2x(j.prob(x, y)))
        .sum::<T>()
}

/// Conditional entropy `H(Y|X) = H(X,Y) - H(X)` in bits.
pub fn conditional_entropy<T: Scalar>(j: &JointPmf<T>) -> T {
    joint_entropy(j) - entropy(&j.marginal_x())
}

/// Mutual information `I(X;Y) = H(Y) - H(Y|X)` in bits.
pub fn mutual_information<T: Scalar>(j: &JointPmf<T>) -> T {
    entropy(&j.marginal_y()) - conditional_entropy(j)
}

/// Per-sequence log-likelihood rate `-(1/n) log Pr(X = x)` for a weight-`k`
/// binary sequence under i.i.d. Bernoulli(p); `None` when the probability
/// is zero.
fn weight_rate<T: Scalar>(k: usize, n: usize, p: T) -> Option<T> {
    let ones = T::of(k as f64) / T::of(n as f64);
    let zeros = T::of((n - k) as f64) / T::of(n as f64);
    let mut rate = T::zero();
    if k > 0 {
        if p == T::zero() {
            return None;
        }
        rate = rate - ones * p.log2();
    }
    if k < n {
        if p == T::one() {
            return None;
        }
        rate = rate - zeros * (T::one() - p).log2();
    }
    Some(rate)
}

/// Whether weight-`k` binary sequences of length `n` are delta-typical for
/// i.i.d. Bernoulli(p).
pub fn typical_weight<T: Scalar>(k: usize, n: usize, p: T, delta: T) -> Result<bool> {
    if !(T::zero()..=T::one()).contains(&p) {
        return Err(Error::domain(format!("typical_weight: p = {:?} outside [0,1]", p)));
    }
    let h = binary_entropy(p)?;
    Ok(match weight_rate(k, n, p) {
        Some(rate) => (rate - h).abs() < delta,
        None => false,
    })
}

/// Whether the binary word `x` is delta-typical for i.i.d. Bernoulli(p).
pub fn is_typical<T: Scalar>(x: &Word, p: T, tp: &TypicalityParams<T>) -> Result<bool> {
    if x.len() != tp.n {
        return Err(Error::domain(format!(
            "is_typical: word length {} != n = {}",
            x.len(),
            tp.n
        )));
    }
    if !x.fits_alphabet(2) {
        return Err(Error::domain("is_typical: word is not binary"));
    }
    typical_weight(x.weight(), tp.n, p, tp.delta)
}

/// Binomial coefficient, exact.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Exact size of the delta-typical set via binomial summation, O(n).
pub fn typical_set_size<T: Scalar>(p: T, tp: &TypicalityParams<T>) -> Result<u128> {
    let mut size = 0u128;
    for k in 0..=tp.n {
        if typical_weight(k, tp.n, p, tp.delta)? {
            size += binomial(tp.n, k);
        }
    }
    Ok(size)
}

/// Exact probability mass of the delta-typical set under Bernoulli(p)^n.
pub fn typical_set_prob<T: Scalar>(p: T, tp: &TypicalityParams<T>) -> Result<T> {
    let mut prob = T::zero();
    for k in 0..=tp.n {
        if typical_weight(k, tp.n, p, tp.delta)? {
            let mass = T::of(binomial(tp.n, k) as f64)
                * p.powi(k as i32)
                * (T::one() - p).powi((tp.n - k) as i32);
            prob = prob + mass;
        }
    }
    Ok(prob)
}

/// Joint delta-typicality of a symbol-sequence pair: the joint sequence and
/// both marginal sequences must each have log-likelihood rate within `delta`
/// of the corresponding entropy.
pub fn is_jointly_typical<T: Scalar>(
    x: &Word,
    y: &Word,
    j: &JointPmf<T>,
    tp: &TypicalityParams<T>,
) -> Result<bool> {
    if x.len() != tp.n || y.len() != tp.n {
        return Err(Error::domain("is_jointly_typical: word lengths must equal n"));
    }
    if !x.fits_alphabet(j.rows()) || !y.fits_alphabet(j.cols()) {
        return Err(Error::domain("is_jointly_typical: symbol outside pmf alphabet"));
    }
    let px = j.marginal_x();
    let py = j.marginal_y();
    let n = T::of(tp.n as f64);

    let mut log_joint = T::zero();
    let mut log_x = T::zero();
    let mut log_y = T::zero();
    for (&xs, &ys) in x.symbols().iter().zip(y.symbols()) {
        let pj = j.prob(xs as usize, ys as usize);
        let pxs = px.entries()[xs as usize];
        let pys = py.entries()[ys as usize];
        if pj == T::zero() || pxs == T::zero() || pys == T::zero() {
            return Ok(false);
        }
        log_joint = log_joint + pj.log2();
        log_x = log_x + pxs.log2();
        log_y = log_y + pys.log2();
    }

    let ok_joint = (log_joint / n + joint_entropy(j)).abs() < tp.delta;
    let ok_x = (log_x / n + entropy(&px)).abs() < tp.delta;
    let ok_y = (log_y / n + entropy(&py)).abs() < tp.delta;
    Ok(ok_joint && ok_x && ok_y)
}

/// Achievable authentication rate `h(q) - h(p)` for the binary case;
/// requires `0 <= p < q <= 1/2`.
pub fn achievable_rate_bsc<T: Scalar>(p: T, q: T) -> Result<T> {
    if !(T::zero() <= p && p < q && q <= T::of(0.5)) {
        return Err(Error::domain(format!(
            "achievable_rate_bsc requires 0 <= p < q <= 1/2, got p = {:?}, q = {:?}",
            p, q
        )));
    }
    Ok(binary_entropy(q)? - binary_entropy(p)?)
}

/// Result of the rate optimization over input distributions.
#[derive(Clone, Debug)]
pub struct DmcRate {
    /// Best objective value found; a lower bound on the true supremum.
    pub rate: f64,
    /// Input distribution achieving it.
    pub input_dist: ProbVector<f64>,
}

fn dmc_rows(c: &ChannelModel) -> Vec<Vec<f64>> {
    (0..c.input_alphabet())
        .map(|x| {
            (0..c.output_alphabet())
                .map(|y| c.symbol_prob(x as u8, y as u8))
                .collect()
        })
        .collect()
}

/// Objective `min { I(X;Y), min_z H_Q(Y|Z=z) - H_P(Y|X) }` at a fixed input
/// distribution. `min_eve_row_entropy` is the precomputed `min_z H_Q(Y|Z=z)`.
fn dmc_objective(px: &ProbVector<f64>, rows: &[Vec<f64>], min_eve_row_entropy: f64) -> f64 {
    let joint = JointPmf::from_input_and_channel(px, rows).expect("valid joint");
    let mi = mutual_information(&joint);
    let h_y_given_x: f64 = px
        .entries()
        .iter()
        .zip(rows)
        .map(|(&p, row)| {
            p * entropy(&ProbVector {
                entries: row.clone(),
            })
        })
        .sum();
    mi.min(min_eve_row_entropy - h_y_given_x)
}

fn simplex_grid(dims: usize, resolution: usize) -> Vec<Vec<f64>> {
    let mut points = Vec::new();
    let mut current = vec![0usize; dims];
    fn rec(
        current: &mut Vec<usize>,
        idx: usize,
        remaining: usize,
        resolution: usize,
        out: &mut Vec<Vec<f64>>,
    ) {
        if idx == current.len() - 1 {
            current[idx] = remaining;
            out.push(
                current
                    .iter()
                    .map(|&c| c as f64 / resolution as f64)
                    .collect(),
            );
            return;
        }
        for c in 0..=remaining {
            current[idx] = c;
            rec(current, idx + 1, remaining - c, resolution, out);
        }
    }
    rec(&mut current, 0, resolution, resolution, &mut points);
    points
}

/// Maximizes the rate objective over input distributions by simplex grid
/// search refined with coordinate ascent. Returns a lower bound on the
/// supremum together with the achieving distribution.
pub fn achievable_rate_dmc(
    alice: &ChannelModel,
    eve: &ChannelModel,
    grid_resolution: usize,
) -> Result<DmcRate> {
    if alice.output_alphabet() != eve.output_alphabet() {
        return Err(Error::domain(
            "achievable_rate_dmc: channels must share Bob's output alphabet",
        ));
    }
    if grid_resolution == 0 {
        return Err(Error::domain("grid_resolution must be >= 1"));
    }
    let rows = dmc_rows(alice);
    let dims = rows.len();
    let min_eve_row_entropy = (0..eve.input_alphabet())
        .map(|z| {
            let row: Vec<f64> = (0..eve.output_alphabet())
                .map(|y| eve.symbol_prob(z as u8, y as u8))
                .collect();
            entropy(&ProbVector { entries: row })
        })
        .fold(f64::INFINITY, f64::min);

    let mut candidates = simplex_grid(dims, grid_resolution);
    candidates.push(vec![1.0 / dims as f64; dims]);
    let mut best = vec![1.0 / dims as f64; dims];
    let mut best_val = f64::NEG_INFINITY;
    for cand in candidates {
        let px = ProbVector { entries: cand };
        let val = dmc_objective(&px, &rows, min_eve_row_entropy);
        if val > best_val {
            best_val = val;
            best = px.entries.clone();
        }
    }

    // Coordinate ascent: shift mass between coordinate pairs with a
    // halving step until no move improves the objective.
    let mut step = 1.0 / grid_resolution as f64;
    while step > 1e-9 {
        let mut improved = true;
        while improved {
            improved = false;
            for i in 0..dims {
                for jj in 0..dims {
                    if i == jj || best[i] < step {
                        continue;
                    }
                    let mut trial = best.clone();
                    trial[i] -= step;
                    trial[jj] += step;
                    let px = ProbVector { entries: trial };
                    let val = dmc_objective(&px, &rows, min_eve_row_entropy);
                    if val > best_val + 1e-15 {
                        best_val = val;
                        best = px.entries;
                        improved = true;
                    }
                }
            }
        }
        step /= 2.0;
    }

    Ok(DmcRate {
        rate: best_val,
        input_dist: ProbVector { entries: best },
    })
}

/// Weak symmetry: rows are permutations of each other (within `1e-9` after
/// sorting) and all column sums are equal.
pub fn is_weakly_symmetric(c: &ChannelModel) -> bool {
    let rows = dmc_rows(c);
    let tol = 1e-9;
    let mut sorted0 = rows[0].clone();
    sorted0.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for row in &rows[1..] {
        let mut sorted = row.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if sorted
            .iter()
            .zip(&sorted0)
            .any(|(a, b)| (a - b).abs() > tol)
        {
            return false;
        }
    }
    let cols = rows[0].len();
    let col_sum = |y: usize| rows.iter().map(|r| r[y]).sum::<f64>();
    let first = col_sum(0);
    (1..cols).all(|y| (col_sum(y) - first).abs() <= tol)
}

/// Capacity of a weakly symmetric channel: `log2 |Y| - H(row)`.
pub fn weakly_symmetric_capacity(c: &ChannelModel) -> Result<f64> {
    if !is_weakly_symmetric(c) {
        return Err(Error::domain("channel is not weakly symmetric"));
    }
    let rows = dmc_rows(c);
    Ok((rows[0].len() as f64).log2()
        - entropy(&ProbVector {
            entries: rows[0].clone(),
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::ChannelModel;

    fn tp(n: usize, delta: f64) -> TypicalityParams<f64> {
        TypicalityParams::new(n, delta).unwrap()
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5f64).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0f64).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0f64).unwrap(), 0.0);
        // -0.25 log2 0.25 - 0.75 log2 0.75
        assert!((binary_entropy(0.25f64).unwrap() - 0.8112781244591328).abs() < 1e-12);
        assert!(binary_entropy(-0.1f64).is_err());
        assert!(binary_entropy(1.1f64).is_err());
    }

    #[test]
    fn binary_entropy_symmetric_and_concave() {
        for i in 0..=1000 {
            let p = i as f64 / 1000.0;
            let h = binary_entropy(p).unwrap();
            assert!((h - binary_entropy(1.0 - p).unwrap()).abs() < 1e-12);
            assert!((0.0..=1.0 + 1e-12).contains(&h));
        }
        for i in 0..=100 {
            for j in 0..=100 {
                let a = i as f64 / 100.0;
                let b = j as f64 / 100.0;
                let mid = binary_entropy((a + b) / 2.0).unwrap();
                let avg = (binary_entropy(a).unwrap() + binary_entropy(b).unwrap()) / 2.0;
                assert!(mid >= avg - 1e-12);
            }
        }
    }

    #[test]
    fn entropy_and_mutual_information_examples() {
        let u4 = ProbVector::<f64>::uniform(4);
        assert!((entropy(&u4) - 2.0).abs() < 1e-12);

        // Product joint: independent => I = 0.
        let px = [0.3f64, 0.7];
        let py = [0.25f64, 0.25, 0.5];
        let prod = JointPmf::new(
            px.iter()
                .map(|&a| py.iter().map(|&b| a * b).collect())
                .collect(),
        )
        .unwrap();
        assert!(mutual_information(&prod).abs() < 1e-12);
        assert!(conditional_entropy(&prod) >= 0.0);

        // Perfectly correlated uniform bits => I = 1.
        let diag = JointPmf::new(vec![vec![0.5f64, 0.0], vec![0.0, 0.5]]).unwrap();
        assert!((mutual_information(&diag) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mutual_information_nonnegative_on_random_joints() {
        use rand::Rng;
        let mut rng = crate::rng::derive_rng(11, 0, 0);
        for _ in 0..200 {
            let rows = rng.random_range(2..=4usize);
            let cols = rng.random_range(2..=4usize);
            let mut m: Vec<Vec<f64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.random::<f64>()).collect())
                .collect();
            let total: f64 = m.iter().flatten().sum();
            m.iter_mut().flatten().for_each(|v| *v /= total);
            let j = JointPmf::new(m).unwrap();
            assert!(mutual_information(&j) >= -1e-12);
            assert!(conditional_entropy(&j) >= -1e-12);
        }
    }

    #[test]
    fn invalid_distributions_rejected() {
        assert!(ProbVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbVector::new(vec![-0.1, 1.1]).is_err());
        assert!(JointPmf::new(vec![vec![0.7, 0.7]]).is_err());
    }

    #[test]
    fn typicality_uniform_and_zero_prob() {
        // p = 1/2: every word has probability 2^-n, all typical.
        for v in 0..16u64 {
            assert!(is_typical(&Word::from_bits(v, 4), 0.5, &tp(4, 0.01)).unwrap());
        }
        // Zero-probability sequences are never typical.
        assert!(!is_typical(&Word::from_bits(0b1, 4), 0.0, &tp(4, 10.0)).unwrap());
        assert!(is_typical(&Word::zeros(4), 0.0, &tp(4, 0.5)).unwrap());
    }

    #[test]
    fn typicality_matches_direct_log_likelihood() {
        // k = 2 ones out of n = 10 at p = 0.2, delta = 0.05: decide by the
        // k-only formula and cross-check against the direct computation.
        let n = 10;
        let p: f64 = 0.2;
        let delta = 0.05;
        for k in 0..=n {
            let direct = -((k as f64) * p.log2() + ((n - k) as f64) * (1.0 - p).log2()) / n as f64;
            let expected = (direct - binary_entropy(p).unwrap()).abs() < delta;
            let mut bits = vec![0u8; n];
            bits[..k].fill(1);
            assert_eq!(
                is_typical(&Word::new(bits), p, &tp(n, delta)).unwrap(),
                expected,
                "k = {k}"
            );
        }
    }

    #[test]
    fn typical_set_uniform_case() {
        let params = tp(4, 0.1);
        assert_eq!(typical_set_size(0.5, &params).unwrap(), 16);
        assert!((typical_set_prob(0.5, &params).unwrap() - 1.0).abs() < 1e-12);
    }

    /// Brute-force oracle: enumerate all 2^n words.
    fn enumerate_typical(p: f64, params: &TypicalityParams<f64>) -> (u128, f64) {
        let mut count = 0u128;
        let mut prob = 0.0;
        for v in 0..(1u64 << params.n) {
            let w = Word::from_bits(v, params.n);
            if is_typical(&w, p, params).unwrap() {
                count += 1;
                let k = w.weight() as i32;
                prob += p.powi(k) * (1.0 - p).powi(params.n as i32 - k);
            }
        }
        (count, prob)
    }

    #[test]
    fn typical_set_matches_exhaustive_enumeration() {
        for &(p, n, delta) in &[(0.1, 16, 0.2), (0.3, 10, 0.1), (0.05, 12, 0.3)] {
            let params = tp(n, delta);
            let (count, prob) = enumerate_typical(p, &params);
            assert_eq!(typical_set_size(p, &params).unwrap(), count);
            assert!((typical_set_prob(p, &params).unwrap() - prob).abs() < 1e-12);
        }
    }

    #[test]
    fn typical_set_size_bound() {
        for pi in 1..=10 {
            let p = pi as f64 * 0.05;
            for &delta in &[0.01, 0.05, 0.1, 0.25, 0.5] {
                for n in 1..=16 {
                    let params = tp(n, delta);
                    let size = typical_set_size(p, &params).unwrap() as f64;
                    let bound =
                        (n as f64 * (binary_entropy(p).unwrap() + delta)).exp2();
                    assert!(size <= bound * (1.0 + 1e-12), "p={p} n={n} delta={delta}");
                }
            }
        }
    }

    #[test]
    fn joint_typicality_zero_prob_and_diag() {
        let diag = JointPmf::new(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        let params = tp(4, 0.3);
        // Any pair with a zero-probability symbol pair is non-typical.
        assert!(!is_jointly_typical(
            &Word::from_bits(0b0001, 4),
            &Word::from_bits(0b0000, 4),
            &diag,
            &params
        )
        .unwrap());
        // Deterministic identity channel: (x, x) typical iff x typical for
        // the uniform marginal (always, since p = 1/2).
        for v in 0..16u64 {
            let x = Word::from_bits(v, 4);
            assert_eq!(
                is_jointly_typical(&x, &x, &diag, &params).unwrap(),
                is_typical(&x, 0.5, &params).unwrap()
            );
        }
    }

    #[test]
    fn joint_typicality_frequency_trend() {
        // Pr((X^n, Y^n) jointly typical) grows toward 1 with n for i.i.d.
        // draws from the joint; exact computation over weight profiles is
        // expensive, so sample.
        use rand::Rng;
        let j = JointPmf::new(vec![vec![0.45, 0.05], vec![0.05, 0.45]]).unwrap();
        let delta = 0.15;
        let mut rates = Vec::new();
        for &n in &[8usize, 32, 128] {
            let params = tp(n, delta);
            let mut rng = crate::rng::derive_rng(5, n as u64, 0);
            let mut hits = 0;
            let trials = 2000;
            for _ in 0..trials {
                let mut xs = Vec::with_capacity(n);
                let mut ys = Vec::with_capacity(n);
                for _ in 0..n {
                    let u: f64 = rng.random();
                    let (x, y) = match u {
                        u if u < 0.45 => (0, 0),
                        u if u < 0.50 => (0, 1),
                        u if u < 0.55 => (1, 0),
                        _ => (1, 1),
                    };
                    xs.push(x);
                    ys.push(y);
                }
                if is_jointly_typical(&Word::new(xs), &Word::new(ys), &j, &params).unwrap() {
                    hits += 1;
                }
            }
            rates.push(hits as f64 / trials as f64);
        }
        assert!(rates[2] > rates[0]);
        assert!(rates[2] > 0.9, "rates = {rates:?}");
    }

    #[test]
    fn achievable_rate_bsc_examples() {
        assert!((achievable_rate_bsc(0.0f64, 0.5).unwrap() - 1.0).abs() < 1e-12);
        assert!(achievable_rate_bsc(0.3f64, 0.3).is_err());
        assert!(achievable_rate_bsc(0.4f64, 0.05).is_err());
        let expected = binary_entropy(0.4f64).unwrap() - binary_entropy(0.05f64).unwrap();
        assert!((achievable_rate_bsc(0.05f64, 0.4).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn dmc_rate_on_bsc_pair_matches_binary_formula() {
        let p = 0.05;
        let q = 0.4;
        let alice = ChannelModel::bsc(p).unwrap().as_dmc();
        let eve = ChannelModel::bsc(q).unwrap().as_dmc();
        let got = achievable_rate_dmc(&alice, &eve, 64).unwrap();
        assert!((got.rate - achievable_rate_bsc(p, q).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn dmc_rate_counterexample_channel() {
        // Alice: BSC(p) on Bob symbols {0,1}; Eve: noiseless on {2,3}.
        let p = 0.1;
        let alice = ChannelModel::dmc(vec![
            vec![1.0 - p, p, 0.0, 0.0],
            vec![p, 1.0 - p, 0.0, 0.0],
        ])
        .unwrap();
        let eve = ChannelModel::dmc(vec![
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        let got = achievable_rate_dmc(&alice, &eve, 64).unwrap();
        assert!((got.rate - (-binary_entropy(p).unwrap())).abs() < 1e-9);
    }

    #[test]
    fn dmc_rate_equal_channels_nonpositive() {
        use rand::Rng;
        let mut rng = crate::rng::derive_rng(13, 0, 0);
        for _ in 0..20 {
            let rows_n = rng.random_range(2..=3usize);
            let cols_n = rng.random_range(2..=3usize);
            let rows: Vec<Vec<f64>> = (0..rows_n)
                .map(|_| {
                    let mut r: Vec<f64> = (0..cols_n).map(|_| rng.random::<f64>()).collect();
                    let s: f64 = r.iter().sum();
                    r.iter_mut().for_each(|v| *v /= s);
                    r
                })
                .collect();
            let c = ChannelModel::dmc(rows).unwrap();
            let got = achievable_rate_dmc(&c, &c, 16).unwrap();
            assert!(got.rate <= 1e-9, "rate = {}", got.rate);
        }
    }

    #[test]
    fn dmc_rate_rejects_mismatched_outputs() {
        let a = ChannelModel::bsc(0.1).unwrap();
        let b = ChannelModel::dmc(vec![vec![0.5, 0.25, 0.25]]).unwrap();
        assert!(achievable_rate_dmc(&a, &b, 8).is_err());
    }

    #[test]
    fn weak_symmetry_cases() {
        assert!(is_weakly_symmetric(&ChannelModel::bsc(0.2).unwrap()));
        assert!(!is_weakly_symmetric(
            &ChannelModel::dmc(vec![vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap()
        ));
        // Rows are permutations of each other but column sums differ.
        assert!(!is_weakly_symmetric(
            &ChannelModel::dmc(vec![vec![0.0, 0.0, 1.0, 0.0], vec![0.0, 0.0, 0.0, 1.0]])
                .unwrap()
        ));
    }

    #[test]
    fn weakly_symmetric_pair_matches_capacity_difference() {
        // Circulant channels are weakly symmetric; the optimized rate equals
        // the capacity difference.
        let alice =
            ChannelModel::dmc(vec![vec![0.8, 0.15, 0.05], vec![0.05, 0.8, 0.15], vec![
                0.15, 0.05, 0.8,
            ]])
            .unwrap();
        let eve = ChannelModel::dmc(vec![vec![0.5, 0.3, 0.2], vec![0.2, 0.5, 0.3], vec![
            0.3, 0.2, 0.5,
        ]])
        .unwrap();
        assert!(is_weakly_symmetric(&alice));
        assert!(is_weakly_symmetric(&eve));
        let c_a = 3f64.log2() - entropy(&ProbVector::new(vec![0.8, 0.15, 0.05]).unwrap());
        let c_e = 3f64.log2() - entropy(&ProbVector::new(vec![0.5, 0.3, 0.2]).unwrap());
        let got = achievable_rate_dmc(&alice, &eve, 32).unwrap();
        assert!((got.rate - (c_a - c_e)).abs() < 1e-6);
    }
}
