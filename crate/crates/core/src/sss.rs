//! Minimal codewords of the Gray image and the secret sharing scheme they
//! describe.
//!
//! The secret sits at binary coordinate 1 and users `2..=n_bin` hold the
//! remaining coordinates (users are 1-based coordinate numbers). Shares are a
//! random word of the binary dual `Phi(C_m)^perp` whose first coordinate is
//! the secret. A coalition `S` can recover it exactly when some codeword `c`
//! of `Phi(C_m)` has `c_1 = 1` and support inside `{1} + S`, since then
//! `t_1 = sum_{i in S} c_i t_i`. The minimal coalitions are therefore the
//! supports, minus coordinate 1, of minimal codewords hitting coordinate 1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{covers_words, ones, BitWord, GrayWord};
use crate::code::{gray_fold, CodeSpec};
use crate::distribution::WeightDistribution;
use crate::error::{Error, Result};
use crate::gf2::{self, XorBasis};
use crate::serde_util;

/// Whether `supp(y)` is contained in `supp(x)`.
pub fn covers(x: &GrayWord, y: &GrayWord) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(covers_words(x.words(), y.words()))
}

/// Largest dimension for the pairwise cover search.
pub const MAX_PAIRWISE_DIMENSION: usize = 16;
/// Largest dimension for the rank-based minimality test.
pub const MAX_RANK_DIMENSION: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalityMethod {
    Pairwise,
    Rank,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub method: MinimalityMethod,
    #[serde(serialize_with = "serde_util::dec")]
    pub nonzero_words: u64,
    #[serde(serialize_with = "serde_util::dec")]
    pub minimal_words: u64,
    pub all_minimal: bool,
}

impl MinimalityReport {
    fn new(method: MinimalityMethod, k: usize, minimal_words: u64) -> Self {
        let nonzero_words = (1u64 << k) - 1;
        Self {
            method,
            nonzero_words,
            minimal_words,
            all_minimal: minimal_words == nonzero_words,
        }
    }
}

fn check_full_rank(rows: &[BitWord]) -> Result<()> {
    if rows.len() > 63 {
        return Err(Error::UnsupportedParameter(format!(
            "dimension {} > 63",
            rows.len()
        )));
    }
    if gf2::rank(rows) != rows.len() {
        return Err(Error::Inconsistent(
            "generator rows are linearly dependent".into(),
        ));
    }
    Ok(())
}

fn guard(k: usize, limit: usize, what: &str) -> Result<()> {
    if k > limit {
        return Err(Error::Infeasible(format!(
            "{what} needs dimension <= {limit}, got {k}"
        )));
    }
    Ok(())
}

fn all_words(rows: &[BitWord]) -> Vec<BitWord> {
    let n = rows.first().map_or(0, BitWord::len);
    let mut out = vec![BitWord::zeros(n); 1 << rows.len()];
    for msg in 1..out.len() {
        let low = msg.trailing_zeros() as usize;
        let mut w = out[msg & (msg - 1)].clone();
        w.xor_assign(&rows[low]);
        out[msg] = w;
    }
    out
}

/// Minimal codewords by comparing every nonzero word with all nonzero words
/// of strictly smaller weight (distinct words of equal weight cannot cover
/// one another).
pub fn minimal_codewords_pairwise(rows: &[BitWord], threads: usize) -> Result<MinimalityReport> {
    check_full_rank(rows)?;
    guard(rows.len(), MAX_PAIRWISE_DIMENSION, "pairwise minimality")?;
    let mut words = all_words(rows);
    words.remove(0);
    words.sort_by_key(BitWord::weight);
    let weights: Vec<u32> = words.iter().map(BitWord::weight).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("failed to build worker pool");
    let minimal = pool.install(|| {
        (0..words.len())
            .into_par_iter()
            .filter(|&i| {
                let lighter = weights.partition_point(|&w| w < weights[i]);
                !words[..lighter]
                    .iter()
                    .any(|y| covers_words(words[i].words(), y.words()))
            })
            .count()
    });
    Ok(MinimalityReport::new(
        MinimalityMethod::Pairwise,
        rows.len(),
        minimal as u64,
    ))
}

// A nonzero codeword with message `msg` is minimal iff the columns outside
// its support span a space of dimension k - 1: the subcode supported inside
// supp(c) has dimension k minus that rank.
#[inline]
fn is_minimal_by_rank(cols: &[u64], word: &[u64], k: usize) -> bool {
    let n = cols.len();
    let mut basis = XorBasis::new();
    for (wi, &w) in word.iter().enumerate() {
        let base = wi * 64;
        let valid = if base + 64 <= n {
            u64::MAX
        } else {
            (1u64 << (n - base)) - 1
        };
        let mut zeros = !w & valid;
        while zeros != 0 {
            let j = base + zeros.trailing_zeros() as usize;
            zeros &= zeros - 1;
            basis.insert(cols[j]);
            if basis.rank() + 1 == k {
                return true;
            }
        }
    }
    k == 1
}

/// Minimal codewords by a rank test per codeword.
pub fn minimal_codewords_rank(rows: &[BitWord], threads: usize) -> Result<MinimalityReport> {
    check_full_rank(rows)?;
    guard(rows.len(), MAX_RANK_DIMENSION, "rank-based minimality")?;
    let k = rows.len();
    let cols = gf2::columns(rows);
    let minimal = gray_fold(
        rows,
        threads,
        || 0u64,
        |count, msg, word| {
            if msg != 0 && is_minimal_by_rank(&cols, word, k) {
                *count += 1;
            }
        },
        |a, b| a + b,
    );
    Ok(MinimalityReport::new(MinimalityMethod::Rank, k, minimal))
}

/// Minimality of `Phi(C_m)`: pairwise when small enough, else by rank.
pub fn minimal_codewords(spec: &CodeSpec, threads: usize) -> Result<MinimalityReport> {
    let rows = spec.generator_rows();
    if rows.len() <= MAX_PAIRWISE_DIMENSION {
        minimal_codewords_pairwise(&rows, threads)
    } else {
        minimal_codewords_rank(&rows, threads)
    }
}

/// The sufficient condition `w_min / w_max > 1/2` for every nonzero binary
/// codeword to be minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AbCondition {
    pub w_min: u64,
    pub w_max: u64,
    pub holds: bool,
}

pub fn ab_condition(dist: &WeightDistribution) -> Result<AbCondition> {
    let w_min = dist.min_nonzero_weight();
    let w_max = dist.max_weight().filter(|&w| w > 0);
    match (w_min, w_max) {
        (Some(w_min), Some(w_max)) => Ok(AbCondition {
            w_min,
            w_max,
            holds: 2 * w_min > w_max,
        }),
        _ => Err(Error::Inconsistent(
            "distribution has no nonzero weight".into(),
        )),
    }
}

/// Largest number of minimal access sets listed in full.
pub const MAX_LISTED_SETS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AccessStructure {
    pub secret_coordinate: usize,
    #[serde(serialize_with = "serde_util::dec")]
    pub users: usize,
    #[serde(serialize_with = "serde_util::dec")]
    pub minimal_access_set_count: u64,
    /// Sorted user lists, present when there are at most
    /// [`MAX_LISTED_SETS`] of them.
    pub minimal_access_sets: Option<Vec<Vec<usize>>>,
    /// Users in every minimal access set.
    pub dictators: Vec<usize>,
    /// Coordinate 1 vanishes on the whole code, so nothing can be recovered.
    pub degenerate: bool,
}

struct AccessTally {
    count: u64,
    meet: Vec<u64>,
    sets: Option<Vec<Vec<u64>>>,
}

impl AccessTally {
    fn merge(mut self, other: AccessTally) -> AccessTally {
        self.count += other.count;
        for (a, b) in self.meet.iter_mut().zip(&other.meet) {
            *a &= b;
        }
        self.sets = match (self.sets, other.sets) {
            (Some(mut a), Some(b)) if a.len() + b.len() <= MAX_LISTED_SETS => {
                a.extend(b);
                Some(a)
            }
            _ => None,
        };
        self
    }
}

fn users_of(word: &[u64]) -> Vec<usize> {
    // 0-based coordinate j is user j + 1; coordinate 0 is the secret.
    ones(word).filter(|&j| j > 0).map(|j| j + 1).collect()
}

/// Minimal access sets for a binary code given by full-rank generator rows.
pub fn access_structure_from_rows(rows: &[BitWord], threads: usize) -> Result<AccessStructure> {
    check_full_rank(rows)?;
    guard(rows.len(), MAX_RANK_DIMENSION, "access structure")?;
    let k = rows.len();
    let n = rows.first().map_or(0, BitWord::len);
    let cols = gf2::columns(rows);
    let nwords = rows.first().map_or(0, |r| r.words().len());
    let tally = gray_fold(
        rows,
        threads,
        || AccessTally {
            count: 0,
            meet: vec![u64::MAX; nwords],
            sets: Some(Vec::new()),
        },
        |t, msg, word| {
            if msg == 0 || word[0] & 1 == 0 || !is_minimal_by_rank(&cols, word, k) {
                return;
            }
            t.count += 1;
            for (a, w) in t.meet.iter_mut().zip(word) {
                *a &= w;
            }
            if let Some(sets) = &mut t.sets {
                if sets.len() < MAX_LISTED_SETS {
                    sets.push(word.to_vec());
                } else {
                    t.sets = None;
                }
            }
        },
        AccessTally::merge,
    );
    let degenerate = cols.first().is_none_or(|&c| c == 0);
    let dictators = if tally.count == 0 {
        Vec::new()
    } else {
        users_of(&tally.meet)
    };
    let minimal_access_sets = tally.sets.map(|sets| {
        let mut lists: Vec<Vec<usize>> = sets.iter().map(|w| users_of(w)).collect();
        lists.sort();
        lists
    });
    Ok(AccessStructure {
        secret_coordinate: 1,
        users: n.saturating_sub(1),
        minimal_access_set_count: tally.count,
        minimal_access_sets,
        dictators,
        degenerate,
    })
}

pub fn massey_access_structure(spec: &CodeSpec, threads: usize) -> Result<AccessStructure> {
    access_structure_from_rows(&spec.generator_rows(), threads)
}

/// A random minimal access set: the support of a minimal codeword hitting
/// coordinate 1, drawn by rejection from random messages. `None` if no such
/// codeword turns up within `attempts` draws.
pub fn sample_access_set(
    rows: &[BitWord],
    rng: &mut impl Rng,
    attempts: usize,
) -> Result<Option<Vec<usize>>> {
    check_full_rank(rows)?;
    let k = rows.len();
    let cols = gf2::columns(rows);
    let n = cols.len();
    for _ in 0..attempts {
        let msg: u64 = rng.gen_range(1..1u64 << k);
        let mut word = BitWord::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            if msg >> i & 1 == 1 {
                word.xor_assign(r);
            }
        }
        if word.get(0) && is_minimal_by_rank(&cols, word.words(), k) {
            return Ok(Some(users_of(word.words())));
        }
    }
    Ok(None)
}

/// Users whose generator column equals the secret's: exactly those without
/// whom no coalition can recover the secret.
pub fn dictators_by_columns(rows: &[BitWord]) -> Vec<usize> {
    let cols = gf2::columns(rows);
    match cols.first() {
        Some(&c0) if c0 != 0 => (1..cols.len())
            .filter(|&j| cols[j] == c0)
            .map(|j| j + 1)
            .collect(),
        _ => Vec::new(),
    }
}

/// A dealt share vector: a dual word whose coordinate 1 is the secret.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DealtShares {
    word: BitWord,
}

impl DealtShares {
    pub fn secret(&self) -> bool {
        self.word.get(0)
    }

    /// Share of user `u` in `2..=n_bin`.
    pub fn share(&self, user: usize) -> bool {
        self.word.get(user - 1)
    }

    /// The full length word, secret included.
    pub fn word(&self) -> &BitWord {
        &self.word
    }

    /// Shares of users `2..=n_bin` as a hex string, user 2 in the lowest bit.
    pub fn shares_hex(&self) -> String {
        BitWord::from_bits((1..self.word.len()).map(|j| self.word.get(j))).to_hex()
    }
}

/// Draws share vectors for the code with the given generator rows.
#[derive(Clone, Debug)]
pub struct Dealer {
    basis: Vec<BitWord>,
    anchor: BitWord,
}

impl Dealer {
    pub fn from_rows(rows: &[BitWord]) -> Result<Self> {
        check_full_rank(rows)?;
        let cols = gf2::columns(rows);
        if cols.first().is_none_or(|&c| c == 0) {
            return Err(Error::DegenerateCoordinate(
                "coordinate 1 is identically zero on the code".into(),
            ));
        }
        let basis = gf2::null_space(&cols);
        let anchor = basis.iter().find(|w| w.get(0)).cloned().ok_or_else(|| {
            Error::DegenerateCoordinate("no dual word is nonzero at coordinate 1".into())
        })?;
        Ok(Self { basis, anchor })
    }

    pub fn new(spec: &CodeSpec) -> Result<Self> {
        Self::from_rows(&spec.generator_rows())
    }

    pub fn dual_dimension(&self) -> usize {
        self.basis.len()
    }

    /// The dual word `sum_i coeffs_i basis_i`, corrected to carry `secret`.
    pub fn deal_with(&self, secret: bool, coeffs: &[bool]) -> Result<DealtShares> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::LengthMismatch {
                left: coeffs.len(),
                right: self.basis.len(),
            });
        }
        let mut word = BitWord::zeros(self.anchor.len());
        for (b, _) in self.basis.iter().zip(coeffs).filter(|(_, &c)| c) {
            word.xor_assign(b);
        }
        if word.get(0) != secret {
            word.xor_assign(&self.anchor);
        }
        Ok(DealtShares { word })
    }

    pub fn deal(&self, secret: bool, rng: &mut impl Rng) -> DealtShares {
        let coeffs: Vec<bool> = (0..self.basis.len()).map(|_| rng.gen()).collect();
        self.deal_with(secret, &coeffs)
            .expect("coefficient count matches")
    }
}

/// Deals `secret` with a generator seeded by `seed`.
pub fn deal_shares(secret: bool, seed: u64, spec: &CodeSpec) -> Result<DealtShares> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Dealer::new(spec)?.deal(secret, &mut rng))
}

/// Recovers the secret from the shares of `users` (each in `2..=n_bin`),
/// reading no other share.
pub fn reconstruct_from_rows(
    rows: &[BitWord],
    users: &[usize],
    shares: &DealtShares,
) -> Result<bool> {
    let k = rows.len();
    let cols = gf2::columns(rows);
    let n = cols.len();
    let mut inside = vec![false; n];
    inside[0] = true;
    for &u in users {
        if !(2..=n).contains(&u) {
            return Err(Error::Inconsistent(format!("user {u} outside 2..={n}")));
        }
        inside[u - 1] = true;
    }
    // A message whose codeword is 1 at coordinate 1 and 0 off the coalition.
    let mut eqs: Vec<(u64, bool)> = vec![(cols[0], true)];
    eqs.extend((1..n).filter(|&j| !inside[j]).map(|j| (cols[j], false)));
    let msg = gf2::solve(&eqs, k as u32).ok_or(Error::ReconstructionFailure)?;
    Ok(users
        .iter()
        .filter(|&&u| (msg & cols[u - 1]).count_ones() & 1 == 1)
        .fold(false, |acc, &u| acc ^ shares.share(u)))
}

pub fn reconstruct(spec: &CodeSpec, users: &[usize], shares: &DealtShares) -> Result<bool> {
    reconstruct_from_rows(&spec.generator_rows(), users, shares)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(bits: &str) -> BitWord {
        BitWord::from_bits(bits.bytes().map(|b| b == b'1'))
    }

    #[test]
    fn covers_basics() {
        let x = word("1101");
        assert!(covers(&x, &BitWord::zeros(4)).unwrap());
        assert!(covers(&x, &x).unwrap());
        assert!(covers(&x, &word("0101")).unwrap());
        assert!(!covers(&x, &word("0011")).unwrap());
        assert!(matches!(
            covers(&x, &word("11")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn equal_weight_code_all_minimal() {
        // Simplex code [7,3]: every nonzero word has weight 4.
        let rows = [word("1010101"), word("0110011"), word("0001111")];
        let a = minimal_codewords_pairwise(&rows, 2).unwrap();
        let b = minimal_codewords_rank(&rows, 2).unwrap();
        assert!(a.all_minimal && b.all_minimal);
        assert_eq!(a.minimal_words, 7);
    }

    #[test]
    fn non_minimal_detected() {
        // Words 1100, 0011 and their sum 1111, which covers both.
        let rows = [word("1100"), word("0011")];
        let a = minimal_codewords_pairwise(&rows, 1).unwrap();
        let b = minimal_codewords_rank(&rows, 1).unwrap();
        assert_eq!(a.minimal_words, 2);
        assert_eq!(b.minimal_words, 2);
        assert!(!a.all_minimal);
    }

    #[test]
    fn ab_condition_values() {
        let d = WeightDistribution::from_pairs([(0, 1u8.into()), (4, 7u8.into())]);
        assert!(ab_condition(&d).unwrap().holds);
        let d =
            WeightDistribution::from_pairs([(0, 1u8.into()), (32, 1u8.into()), (96, 1u8.into())]);
        assert!(!ab_condition(&d).unwrap().holds);
        assert!(ab_condition(&WeightDistribution::from_histogram(&[1])).is_err());
    }

    #[test]
    fn degenerate_secret_coordinate() {
        let rows = [word("0110"), word("0011")];
        let s = access_structure_from_rows(&rows, 1).unwrap();
        assert!(s.degenerate);
        assert_eq!(s.minimal_access_set_count, 0);
        assert!(s.dictators.is_empty());
        assert!(matches!(
            Dealer::from_rows(&rows),
            Err(Error::DegenerateCoordinate(_))
        ));
    }

    #[test]
    fn toy_scheme() {
        // Columns: c0 = c2, so user 3 is a dictator.
        let rows = [word("10110"), word("01011")];
        let s = access_structure_from_rows(&rows, 1).unwrap();
        assert_eq!(s.dictators, dictators_by_columns(&rows));
        assert_eq!(s.dictators, vec![3]);
        let dealer = Dealer::from_rows(&rows).unwrap();
        for secret in [false, true] {
            let sh = dealer.deal(secret, &mut ChaCha8Rng::seed_from_u64(1));
            assert_eq!(sh.secret(), secret);
            for set in s.minimal_access_sets.as_ref().unwrap() {
                assert_eq!(reconstruct_from_rows(&rows, set, &sh).unwrap(), secret);
            }
        }
        let zero = dealer
            .deal_with(false, &vec![false; dealer.dual_dimension()])
            .unwrap();
        assert!(zero.word().is_zero());
    }
}
