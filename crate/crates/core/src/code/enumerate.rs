//! Exhaustive enumeration of the binary image in Gray-code order.
//!
//! Message `g(t) = t ^ (t >> 1)` is visited at step `t`; consecutive
//! messages differ in bit `trailing_zeros(t + 1)`, so each step costs one
//! row XOR. The step range is split into contiguous chunks, each worker
//! seeds its accumulator directly from `g(start)`.

use rayon::prelude::*;

use crate::bits::{popcount, xor_into, GrayWord};
use crate::code::CodeSpec;
use crate::distribution::WeightDistribution;
use crate::error::{Error, Result};

/// Largest code dimension accepted for exhaustive enumeration.
pub const MAX_ENUM_DIMENSION: usize = 40;

#[inline]
fn gray(t: u64) -> u64 {
    t ^ (t >> 1)
}

/// Folds `visit(acc, message, codeword_words)` over every message of the
/// code spanned by `rows` (row `i` selected by message bit `i`), on
/// `threads` workers, combining per-chunk results with `merge`.
pub fn gray_fold<T, I, V, M>(rows: &[GrayWord], threads: usize, init: I, visit: V, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, u64, &[u64]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let k = rows.len();
    assert!(
        k <= MAX_ENUM_DIMENSION,
        "dimension {k} too large to enumerate"
    );
    let nwords = rows.first().map_or(0, |r| r.words().len());
    let total = 1u64 << k;
    let threads = threads.max(1);
    // Power-of-two chunking, a few chunks per worker for balance.
    let target_chunks = (threads as u64 * 8).next_power_of_two().min(total);
    let chunk = total / target_chunks;

    let run_chunk = |c: u64| {
        let start = c * chunk;
        let mut state = init();
        let mut acc = vec![0u64; nwords];
        let g0 = gray(start);
        for (i, row) in rows.iter().enumerate() {
            if g0 >> i & 1 == 1 {
                xor_into(&mut acc, row.words());
            }
        }
        let end = start + chunk;
        let mut t = start;
        loop {
            visit(&mut state, gray(t), &acc);
            t += 1;
            if t == end {
                break;
            }
            let flip = t.trailing_zeros() as usize;
            xor_into(&mut acc, rows[flip].words());
        }
        state
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("failed to build worker pool");
    pool.install(|| {
        (0..target_chunks)
            .into_par_iter()
            .map(run_chunk)
            .reduce_with(&merge)
            .expect("at least one chunk")
    })
}

fn check_feasible(spec: &CodeSpec) -> Result<()> {
    if spec.k_bin() > MAX_ENUM_DIMENSION {
        return Err(Error::Infeasible(format!(
            "exhaustive enumeration of 2^{} codewords exceeds the 2^{MAX_ENUM_DIMENSION} guard",
            spec.k_bin()
        )));
    }
    Ok(())
}

/// Exact Hamming weight distribution of the Gray image of `C_m`.
pub fn enumerate_weights(spec: &CodeSpec, threads: usize) -> Result<WeightDistribution> {
    check_feasible(spec)?;
    let rows = spec.generator_rows();
    let n_bin = spec.n_bin();
    let hist = gray_fold(
        &rows,
        threads,
        || vec![0u64; n_bin + 1],
        |h, _, words| h[popcount(words) as usize] += 1,
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    Ok(WeightDistribution::from_histogram(&hist))
}

/// Reference distribution from evaluating `Ev(a, b)` for every pair and
/// summing per-coordinate Lee weights. Only practical for small `m`.
pub fn enumerate_weights_direct(spec: &CodeSpec) -> Result<WeightDistribution> {
    if spec.k_bin() > 24 {
        return Err(Error::Infeasible(format!(
            "direct evaluation of 2^{} pairs is too slow",
            spec.k_bin()
        )));
    }
    let mut hist = vec![0u64; spec.n_bin() + 1];
    for msg in 0..1u64 << spec.k_bin() {
        let (a, b) = spec.message_pair(msg);
        hist[spec.ev(a, b).lee_weight() as usize] += 1;
    }
    Ok(WeightDistribution::from_histogram(&hist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn gray_fold_visits_every_message_once() {
        let spec = CodeSpec::with_degree(3).unwrap();
        let rows = spec.generator_rows();
        for threads in [1, 3, 8] {
            let seen = gray_fold(
                &rows,
                threads,
                Vec::new,
                |v: &mut Vec<(u64, Vec<u64>)>, msg, w| v.push((msg, w.to_vec())),
                |mut a, b| {
                    a.extend(b);
                    a
                },
            );
            assert_eq!(seen.len(), 4096);
            let mut msgs: Vec<u64> = seen.iter().map(|(m, _)| *m).collect();
            msgs.sort_unstable();
            msgs.dedup();
            assert_eq!(msgs.len(), 4096);
            for (msg, words) in seen.iter().step_by(97) {
                let (a, b) = spec.message_pair(*msg);
                assert_eq!(words.as_slice(), spec.ev(a, b).gray_image().words());
            }
        }
    }

    #[test]
    fn m3_distribution() {
        let spec = CodeSpec::with_degree(3).unwrap();
        let d = enumerate_weights(&spec, 2).unwrap();
        assert_eq!(d.nonzero_support(), vec![32, 48, 56, 64, 96]);
        assert_eq!(d.total(), BigUint::from(4096u32));
        assert!(d.has_single_zero_word());
        assert_eq!(d.min_nonzero_weight(), Some(32));
    }

    #[test]
    fn gray_enumeration_matches_direct_evaluation() {
        let spec = CodeSpec::with_degree(3).unwrap();
        assert_eq!(
            enumerate_weights(&spec, 4).unwrap(),
            enumerate_weights_direct(&spec).unwrap()
        );
        let spec = CodeSpec::with_degree(2).unwrap();
        assert_eq!(
            enumerate_weights(&spec, 1).unwrap(),
            enumerate_weights_direct(&spec).unwrap()
        );
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let spec = CodeSpec::with_degree(3).unwrap();
        let one = enumerate_weights(&spec, 1).unwrap();
        for t in [2, 5, 16] {
            assert_eq!(enumerate_weights(&spec, t).unwrap(), one);
        }
    }

    #[test]
    fn infeasible_dimension_refused() {
        let spec = CodeSpec::with_degree(11).unwrap();
        assert!(matches!(
            enumerate_weights(&spec, 1),
            Err(Error::Infeasible(_))
        ));
    }
}
