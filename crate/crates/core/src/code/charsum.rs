//! Binary exponential sums appearing in the Lee weights of `C_m`.

use crate::error::{Error, Result};
use crate::gf2m::{Field, FieldElem};

/// `A(b1, b2) = sum_{x in GF(2^m)} (-1)^tr(b1 x + b2 x^3)`.
pub fn charsum_a(field: &Field, beta1: FieldElem, beta2: FieldElem) -> i64 {
    field
        .elements()
        .map(|x| field.trace_sign(field.add(field.mul(beta1, x), field.mul(beta2, field.cube(x)))))
        .sum()
}

/// `B = sum_{x0 != 0} sum_{x1} (-1)^tr(a1 x1 + b1 x0 + a2 x0^2 x1 + b2 x0^3)`,
/// defined for `a1, a2 != 0`.
pub fn charsum_b(
    field: &Field,
    alpha1: FieldElem,
    beta1: FieldElem,
    alpha2: FieldElem,
    beta2: FieldElem,
) -> Result<i64> {
    charsum_b_inner(field, alpha1, beta1, alpha2, beta2, false)
}

/// The companion of [`charsum_b`] carrying the extra phase
/// `(-1)^tr(a1 x0 + a2 x0^3)`: the second of the two sums whose total gives
/// the Lee weight when both `a` and `b` are units.
pub fn charsum_b_phased(
    field: &Field,
    alpha1: FieldElem,
    beta1: FieldElem,
    alpha2: FieldElem,
    beta2: FieldElem,
) -> Result<i64> {
    charsum_b_inner(field, alpha1, beta1, alpha2, beta2, true)
}

fn charsum_b_inner(
    f: &Field,
    alpha1: FieldElem,
    beta1: FieldElem,
    alpha2: FieldElem,
    beta2: FieldElem,
    phased: bool,
) -> Result<i64> {
    if alpha1.is_zero() || alpha2.is_zero() {
        return Err(Error::UnsupportedParameter(
            "B requires alpha1, alpha2 != 0".into(),
        ));
    }
    let mut total = 0i64;
    for x0 in f.nonzero_elements() {
        let x0_sq = f.square(x0);
        let x0_cu = f.mul(x0_sq, x0);
        let mut outer = f.add(f.mul(beta1, x0), f.mul(beta2, x0_cu));
        if phased {
            outer = f.add(outer, f.add(f.mul(alpha1, x0), f.mul(alpha2, x0_cu)));
        }
        for x1 in f.elements() {
            let inner = f.add(f.mul(alpha1, x1), f.mul(alpha2, f.mul(x0_sq, x1)));
            total += f.trace_sign(f.add(outer, inner));
        }
    }
    Ok(total)
}

/// `A(b1, b2)` for every pair, indexed `b1 * 2^m + b2`.
#[derive(Clone, Debug)]
pub struct CharsumTable {
    order: usize,
    values: Vec<i64>,
}

impl CharsumTable {
    pub fn new(field: &Field) -> Self {
        let order = field.order() as usize;
        let values = field
            .elements()
            .flat_map(|b1| field.elements().map(move |b2| (b1, b2)))
            .map(|(b1, b2)| charsum_a(field, b1, b2))
            .collect();
        Self { order, values }
    }

    #[inline]
    pub fn get(&self, beta1: FieldElem, beta2: FieldElem) -> i64 {
        self.values[beta1.bits() as usize * self.order + beta2.bits() as usize]
    }
}
