//! Power moments of the Gray image's weight distribution and the five-weight
//! moment system.
//!
//! For odd `m` the nonzero weights of the image lie in
//! `w1 = 2^{2m} - 2^{(3m+1)/2}`, `w2 = 2^m (2^m - 2)`, `w3 = 2^m (2^m - 1)`,
//! `w4 = 2^{2m}`, `w5 = 2^{2m} + 2^{(3m+1)/2}`. The system below relates
//! `sum_i w_i^r A_i` (`r = 0..4`) to the length `n` and two dual counts; its
//! right sides are evaluated exactly as stated, and the residuals against the
//! enumerated frequencies are what gets reported.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::distribution::WeightDistribution;
use crate::error::{Error, Result};
use crate::serde_util;

pub const MAX_MOMENT: u32 = 4;

/// `sum_{w > 0} w^r A_w`.
pub fn power_sum(dist: &WeightDistribution, r: u32) -> Result<BigUint> {
    if r > MAX_MOMENT {
        return Err(Error::UnsupportedParameter(format!(
            "moment order {r} > {MAX_MOMENT}"
        )));
    }
    Ok(dist
        .iter()
        .filter(|&(w, _)| w > 0)
        .map(|(w, c)| BigUint::from(w).pow(r) * c)
        .sum())
}

fn check_odd(m: u32) -> Result<()> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::UnsupportedParameter(format!(
            "the five-weight system needs odd m >= 3, got {m}"
        )));
    }
    Ok(())
}

/// The five weights `w1 < ... < w5` for odd `m >= 3`.
pub fn system_weights(m: u32) -> Result<[u64; 5]> {
    check_odd(m)?;
    let q = 1u64 << m;
    let s = 1u64 << (3 * m).div_ceil(2);
    Ok([q * q - s, q * (q - 2), q * (q - 1), q * q, q * q + s])
}

/// Binary length `2^{m+1} (2^m - 1)`.
pub fn binary_length(m: u32) -> u64 {
    (1u64 << (m + 1)) * ((1u64 << m) - 1)
}

/// The dual counts as given by the closed formulas: `A2 = 3 (2^m - 1) 2^m`,
/// `A4 = (2^m - 1) 2^{2m+2}`.
pub fn formula_dual_counts(m: u32) -> (BigInt, BigInt) {
    let q = BigInt::from(1u64 << m);
    let a2 = BigInt::from(3) * (&q - 1) * &q;
    let a4 = (&q - 1) * &q * &q * 4;
    (a2, a4)
}

/// Right sides of the five equations, with `n` the binary length.
pub fn system_rhs(m: u32, a2d: &BigInt, a4d: &BigInt) -> [BigInt; 5] {
    let n = BigInt::from(binary_length(m));
    let p = |e: u32| BigInt::one() << (4 * m - e) as usize;
    let n2 = &n * &n;
    [
        p(0) - 1,
        p(1) * &n,
        p(2) * (&n * (&n + 1) + 2 * a2d),
        p(3) * (&n2 * (&n + 3) + 6 * &n * a2d),
        p(4) * (&n * (&n + 1) * (&n2 + 5 * &n - 2) + 4 * (3 * &n2 + 3 * &n - 4) * a2d + 24 * a4d),
    ]
}

/// Left side minus right side for each equation, with the enumerated
/// frequencies substituted.
pub fn system_residuals(
    dist: &WeightDistribution,
    a2d: &BigInt,
    a4d: &BigInt,
    m: u32,
) -> Result<[BigInt; 5]> {
    let rhs = system_rhs(m, a2d, a4d);
    let mut out: [BigInt; 5] = Default::default();
    for (r, (o, rhs)) in out.iter_mut().zip(rhs).enumerate() {
        let lhs = BigInt::from_biguint(Sign::Plus, power_sum(dist, r as u32)?);
        *o = lhs - rhs;
    }
    Ok(out)
}

/// Solves `sum_i w_i^r x_i = rhs_r` for `r = 0..len` exactly.
pub fn solve_power_system(weights: &[u64], rhs: &[BigInt]) -> Result<Vec<BigRational>> {
    let k = weights.len();
    if rhs.len() != k {
        return Err(Error::LengthMismatch {
            left: k,
            right: rhs.len(),
        });
    }
    let mut a: Vec<Vec<BigRational>> = (0..k)
        .map(|r| {
            let mut row: Vec<BigRational> = weights
                .iter()
                .map(|&w| BigRational::from_integer(BigInt::from(w).pow(r as u32)))
                .collect();
            row.push(BigRational::from_integer(rhs[r].clone()));
            row
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Inconsistent("singular moment system".into()))?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=k {
                    let t = &a[col][c] * &f;
                    a[r][c] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[k].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("numerator", &self.0.numer().to_string())?;
        st.serialize_field("denominator", &self.0.denom().to_string())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemSolution {
    #[serde(serialize_with = "serde_util::dec_seq")]
    pub weights: Vec<u64>,
    pub values: Vec<Rational>,
    /// Per unknown: an integer and nonnegative.
    pub admissible: Vec<bool>,
}

impl SystemSolution {
    pub fn all_admissible(&self) -> bool {
        self.admissible.iter().all(|&b| b)
    }
}

fn admissible(x: &BigRational) -> bool {
    x.is_integer() && !x.is_negative()
}

/// The exact solution of the five equations with the given dual counts.
pub fn solve_moment_system(m: u32, a2d: &BigInt, a4d: &BigInt) -> Result<SystemSolution> {
    let weights = system_weights(m)?.to_vec();
    let values = solve_power_system(&weights, &system_rhs(m, a2d, a4d))?;
    Ok(SystemSolution {
        admissible: values.iter().map(admissible).collect(),
        values: values.into_iter().map(Rational).collect(),
        weights,
    })
}

/// Rebuilds the system from the distribution's own power sums and checks
/// that solving it returns the enumerated frequencies.
pub fn roundtrip_holds(dist: &WeightDistribution, m: u32) -> Result<bool> {
    let weights = system_weights(m)?;
    let support = dist.nonzero_support();
    if support.iter().any(|w| !weights.contains(w)) {
        return Ok(false);
    }
    let rhs: Vec<BigInt> = (0..5)
        .map(|r| power_sum(dist, r).map(|p| BigInt::from_biguint(Sign::Plus, p)))
        .collect::<Result<_>>()?;
    let sol = solve_power_system(&weights, &rhs)?;
    Ok(weights.iter().zip(&sol).all(|(&w, x)| {
        *x == BigRational::from_integer(BigInt::from_biguint(Sign::Plus, dist.count(w)))
    }))
}

/// `sum_{i<k} ceil(d / 2^i)`.
pub fn griesmer_bound(k: u32, d: u64) -> u64 {
    (0..k).map(|i| d.div_ceil(1u64 << i.min(63))).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GriesmerCheck {
    pub n: u64,
    pub k: u32,
    pub d: u64,
    pub bound: u64,
    pub satisfied: bool,
}

pub fn griesmer_check(n: u64, k: u32, d: u64) -> Result<GriesmerCheck> {
    if k == 0 {
        return Err(Error::UnsupportedParameter(
            "Griesmer bound needs k >= 1".into(),
        ));
    }
    let bound = griesmer_bound(k, d);
    Ok(GriesmerCheck {
        n,
        k,
        d,
        bound,
        satisfied: n >= bound,
    })
}

/// One evaluation of the system for a particular choice of dual counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualRun {
    pub source: String,
    #[serde(serialize_with = "serde_util::dec")]
    pub a2_dual: BigInt,
    #[serde(serialize_with = "serde_util::dec")]
    pub a4_dual: BigInt,
    #[serde(serialize_with = "serde_util::dec_seq")]
    pub residuals: Vec<BigInt>,
    pub solution: SystemSolution,
}

impl ResidualRun {
    pub fn new(
        source: &str,
        dist: &WeightDistribution,
        m: u32,
        a2d: BigInt,
        a4d: BigInt,
    ) -> Result<Self> {
        let residuals = system_residuals(dist, &a2d, &a4d, m)?.to_vec();
        let solution = solve_moment_system(m, &a2d, &a4d)?;
        Ok(Self {
            source: source.to_string(),
            a2_dual: a2d,
            a4_dual: a4d,
            residuals,
            solution,
        })
    }

    /// Indices (1-based) of equations with nonzero residual.
    pub fn failing_equations(&self) -> Vec<usize> {
        self.residuals
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(i, _)| i + 1)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentReport {
    pub m: u32,
    #[serde(serialize_with = "serde_util::dec_seq")]
    pub power_sums: Vec<BigUint>,
    pub runs: Vec<ResidualRun>,
    pub roundtrip_holds: bool,
    pub griesmer: GriesmerCheck,
}

/// Power sums, round trip, Griesmer, and one residual run per supplied
/// `(source, A2, A4)` triple.
pub fn moment_report(
    dist: &WeightDistribution,
    m: u32,
    dual_counts: &[(&str, BigInt, BigInt)],
) -> Result<MomentReport> {
    check_odd(m)?;
    let power_sums = (0..=MAX_MOMENT)
        .map(|r| power_sum(dist, r))
        .collect::<Result<_>>()?;
    let runs = dual_counts
        .iter()
        .map(|(src, a2, a4)| ResidualRun::new(src, dist, m, a2.clone(), a4.clone()))
        .collect::<Result<_>>()?;
    let d = dist
        .min_nonzero_weight()
        .ok_or_else(|| Error::Inconsistent("distribution has no nonzero weight".into()))?;
    Ok(MomentReport {
        m,
        power_sums,
        runs,
        roundtrip_holds: roundtrip_holds(dist, m)?,
        griesmer: griesmer_check(binary_length(m), 4 * m, d)?,
    })
}
