//! Gaussian elimination over GF(2).
//!
//! Short vectors (at most 64 coordinates, e.g. generator-matrix columns of a
//! code of dimension `k <= 64`) are plain `u64`; long vectors are [`BitWord`]s.

use crate::bits::BitWord;

/// Rank of a set of long row vectors.
pub fn rank(rows: &[BitWord]) -> usize {
    echelon(rows).len()
}

/// Whether `v` is a GF(2) combination of `rows`.
pub fn in_row_span(rows: &[BitWord], v: &BitWord) -> bool {
    reduce_long(&echelon(rows), v.clone()).is_none()
}

fn echelon(rows: &[BitWord]) -> Vec<(usize, BitWord)> {
    let mut basis: Vec<(usize, BitWord)> = Vec::new();
    for row in rows {
        if let Some(r) = reduce_long(&basis, row.clone()) {
            let pivot = r.support().next().unwrap();
            basis.push((pivot, r));
        }
    }
    basis
}

// Reduces `v` against a basis whose entries each have a distinct leading
// (lowest) set bit not present in the others' pivot positions at insertion
// time. Returns the nonzero remainder, if any.
fn reduce_long(basis: &[(usize, BitWord)], mut v: BitWord) -> Option<BitWord> {
    for (pivot, b) in basis {
        if v.get(*pivot) {
            v.xor_assign(b);
        }
    }
    (!v.is_zero()).then_some(v)
}

/// Column `j` of a `k x n` matrix given by rows: bit `i` is `rows[i][j]`.
pub fn columns(rows: &[BitWord]) -> Vec<u64> {
    assert!(
        rows.len() <= 64,
        "short vectors hold at most 64 coordinates"
    );
    let n = rows.first().map_or(0, BitWord::len);
    let mut cols = vec![0u64; n];
    for (i, row) in rows.iter().enumerate() {
        for j in row.support() {
            cols[j] |= 1 << i;
        }
    }
    cols
}

/// Incremental basis of short vectors, reduced on the highest set bit.
#[derive(Clone, Debug)]
pub struct XorBasis {
    pivots: [u64; 64],
    rank: usize,
}

impl Default for XorBasis {
    fn default() -> Self {
        Self {
            pivots: [0; 64],
            rank: 0,
        }
    }
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            let p = self.pivots[top];
            if p == 0 {
                break;
            }
            v ^= p;
        }
        v
    }

    /// Inserts `v`; returns whether it was independent of the basis.
    #[inline]
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.pivots[63 - r.leading_zeros() as usize] = r;
        self.rank += 1;
        true
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }
}

/// Solves `<a_i, x> = b_i` for `x` in GF(2)^nvars, where each equation is
/// `(a_i, b_i)`. Free variables are set to zero. `None` when inconsistent.
pub fn solve(equations: &[(u64, bool)], nvars: u32) -> Option<u64> {
    assert!(nvars < 64);
    let rhs_bit = 1u64 << nvars;
    // Echelon form keyed by highest coefficient bit.
    let mut rows: [u64; 64] = [0; 64];
    for &(a, b) in equations {
        let mut r = a | if b { rhs_bit } else { 0 };
        loop {
            let coeffs = r & (rhs_bit - 1);
            if coeffs == 0 {
                if r != 0 {
                    return None;
                }
                break;
            }
            let top = 63 - coeffs.leading_zeros() as usize;
            if rows[top] == 0 {
                rows[top] = r;
                break;
            }
            r ^= rows[top];
        }
    }
    // Back substitution from low pivots upwards: each row's other variables
    // are all lower than its pivot.
    let mut x = 0u64;
    for top in 0..nvars as usize {
        let r = rows[top];
        if r == 0 {
            continue;
        }
        let lower = r & ((1u64 << top) - 1);
        let val = ((lower & x).count_ones() & 1 == 1) ^ (r & rhs_bit != 0);
        if val {
            x |= 1 << top;
        }
    }
    Some(x)
}

/// A basis of `{ y : G y^T = 0 }` where `G` has the given short columns.
pub fn null_space(cols: &[u64]) -> Vec<BitWord> {
    let n = cols.len();
    // pivot bit -> (reduced vector, set of original columns summing to it)
    let mut basis: Vec<Option<(u64, BitWord)>> = vec![None; 64];
    let mut kernel = Vec::new();
    for (j, &c) in cols.iter().enumerate() {
        let mut v = c;
        let mut combo = BitWord::zeros(n);
        combo.set(j, true);
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            match &basis[top] {
                Some((bv, bc)) => {
                    v ^= bv;
                    combo.xor_assign(bc);
                }
                None => break,
            }
        }
        if v == 0 {
            kernel.push(combo);
        } else {
            let top = 63 - v.leading_zeros() as usize;
            basis[top] = Some((v, combo));
        }
    }
    kernel
}
