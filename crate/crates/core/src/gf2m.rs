//! Arithmetic in GF(2^m), polynomial basis.
//!
//! Elements are stored as their coefficient bitmask (bit `i` is the
//! coefficient of `x^i`). All operations go through a [`Field`], which holds
//! the reduction polynomial and a few precomputed masks.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest supported extension degree.
pub const MIN_DEGREE: u32 = 2;
/// Largest supported extension degree (enumeration feasibility guard).
pub const MAX_DEGREE: u32 = 20;

/// Lexicographically smallest irreducible polynomial of each degree
/// `MIN_DEGREE..=MAX_DEGREE`, as integer bitmasks.
const DEFAULT_POLYS: [u32; 19] = [
    0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021, 0x8003,
    0x1002b, 0x20009, 0x40009, 0x80027, 0x100009,
];

/// Extension degree plus reduction polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldParams {
    pub m: u32,
    pub reduction_poly: u32,
}

impl FieldParams {
    /// Parameters with the built-in default polynomial for degree `m`.
    pub fn new(m: u32) -> Result<Self> {
        check_degree(m)?;
        Ok(Self {
            m,
            reduction_poly: DEFAULT_POLYS[(m - MIN_DEGREE) as usize],
        })
    }

    /// Parameters with an explicit reduction polynomial, rejected when it
    /// has the wrong degree or is reducible.
    pub fn with_poly(m: u32, reduction_poly: u32) -> Result<Self> {
        check_degree(m)?;
        if poly_degree(reduction_poly) != Some(m) {
            return Err(Error::InvalidPolynomial {
                poly: reduction_poly,
                reason: format!("degree is not {m}"),
            });
        }
        if !is_irreducible(reduction_poly) {
            return Err(Error::InvalidPolynomial {
                poly: reduction_poly,
                reason: "reducible over GF(2)".into(),
            });
        }
        Ok(Self { m, reduction_poly })
    }

    pub fn default_poly(m: u32) -> Option<u32> {
        (MIN_DEGREE..=MAX_DEGREE)
            .contains(&m)
            .then(|| DEFAULT_POLYS[(m - MIN_DEGREE) as usize])
    }
}

fn check_degree(m: u32) -> Result<()> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
        return Err(Error::InvalidDegree(m));
    }
    Ok(())
}

fn poly_degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 {
        let da = 63 - a.leading_zeros();
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Trial division by every polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: u32) -> bool {
    let Some(deg) = poly_degree(poly) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for q in (1u64 << d)..(1u64 << (d + 1)) {
            if poly_rem(poly as u64, q) == 0 {
                return false;
            }
        }
    }
    true
}

/// An element of GF(2^m). Only meaningful together with the [`Field`] that
/// produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// GF(2^m) for one fixed reduction polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    params: FieldParams,
    mask: u32,
    // Bit i set iff tr(x^i) = 1; tr is then a masked parity.
    trace_mask: u32,
    cube_root_exp: Option<u64>,
}

impl Field {
    pub fn new(params: FieldParams) -> Self {
        let m = params.m;
        let mask = ((1u64 << m) - 1) as u32;
        let mut field = Field {
            params,
            mask,
            trace_mask: 0,
            cube_root_exp: None,
        };
        field.trace_mask = (0..m)
            .filter(|&i| field.trace_by_frobenius(FieldElem(1 << i)))
            .fold(0, |acc, i| acc | (1 << i));
        if m % 2 == 1 {
            // 3e = 1 mod 2^m - 1; gcd(3, 2^m - 1) = 1 for odd m.
            let order = (1u64 << m) - 1;
            field.cube_root_exp = (1..order).find(|e| (3 * e) % order == 1);
        }
        field
    }

    /// Field with the default polynomial for degree `m`.
    pub fn with_degree(m: u32) -> Result<Self> {
        Ok(Self::new(FieldParams::new(m)?))
    }

    #[inline]
    pub fn params(&self) -> FieldParams {
        self.params
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.params.m
    }

    /// Number of field elements, `2^m`.
    #[inline]
    pub fn order(&self) -> u32 {
        1 << self.params.m
    }

    /// Validates a bit pattern as an element of this field.
    pub fn elem(&self, bits: u32) -> Result<FieldElem> {
        if bits & !self.mask != 0 {
            return Err(Error::ElementOutOfRange {
                bits,
                m: self.params.m,
            });
        }
        Ok(FieldElem(bits))
    }

    /// Unchecked constructor for callers iterating `0..order()`.
    #[inline]
    pub(crate) fn elem_unchecked(&self, bits: u32) -> FieldElem {
        debug_assert!(bits & !self.mask == 0);
        FieldElem(bits)
    }

    /// All elements in increasing integer order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order()).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (1..self.order()).map(FieldElem)
    }

    /// `x^0, ..., x^{m-1}`: the polynomial basis over GF(2).
    pub fn basis(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.params.m).map(|i| FieldElem(1 << i))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(a.0 ^ b.0)
    }

    /// Addition that rejects operands from a larger field.
    pub fn try_add(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        self.elem(a.0)?;
        self.elem(b.0)?;
        Ok(self.add(a, b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let m = self.params.m;
        let mut prod = clmul(a.0, b.0);
        let poly = self.params.reduction_poly as u64;
        // Product degree is at most 2m - 2.
        let mut bit = 2 * m - 2;
        while bit >= m {
            if prod & (1 << bit) != 0 {
                prod ^= poly << (bit - m);
            }
            bit -= 1;
        }
        FieldElem(prod as u32)
    }

    pub fn try_mul(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        self.elem(a.0)?;
        self.elem(b.0)?;
        Ok(self.mul(a, b))
    }

    #[inline]
    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    #[inline]
    pub fn cube(&self, a: FieldElem) -> FieldElem {
        self.mul(self.mul(a, a), a)
    }

    /// Square-and-multiply; `pow(a, 0) = 1` for every `a`, including zero.
    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse as `a^(2^m - 2)`.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, (1u64 << self.params.m) - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Absolute trace to GF(2).
    #[inline]
    pub fn trace(&self, a: FieldElem) -> bool {
        (a.0 & self.trace_mask).count_ones() & 1 == 1
    }

    /// The trace straight from its definition, `sum_j a^(2^j)`.
    pub fn trace_by_frobenius(&self, a: FieldElem) -> bool {
        let mut acc = FieldElem::ZERO;
        let mut power = a;
        for _ in 0..self.params.m {
            acc = self.add(acc, power);
            power = self.square(power);
        }
        debug_assert!(acc.0 <= 1, "trace must land in GF(2)");
        acc.0 == 1
    }

    /// The unique square root, `a^(2^(m-1))`.
    pub fn sqrt(&self, a: FieldElem) -> FieldElem {
        self.pow(a, 1u64 << (self.params.m - 1))
    }

    /// The unique cube root; only defined for odd `m`.
    pub fn cube_root(&self, a: FieldElem) -> Result<FieldElem> {
        let e = self.cube_root_exp.ok_or_else(|| {
            Error::UnsupportedParameter(format!(
                "cube roots are not unique in GF(2^{}) (even degree)",
                self.params.m
            ))
        })?;
        Ok(self.pow(a, e))
    }

    /// `(-1)^tr(a)` as an integer.
    #[inline]
    pub fn trace_sign(&self, a: FieldElem) -> i64 {
        if self.trace(a) {
            -1
        } else {
            1
        }
    }
}

/// Carryless product of two field-sized operands.
#[inline]
fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut acc = 0u64;
    while b != 0 {
        let i = b.trailing_zeros();
        acc ^= a << i;
        b &= b - 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> Field {
        Field::with_degree(3).unwrap()
    }

    #[test]
    fn default_table_is_smallest_irreducible() {
        for m in MIN_DEGREE..=MAX_DEGREE {
            let p = FieldParams::default_poly(m).unwrap();
            assert!(is_irreducible(p), "m={m}");
            assert_eq!(poly_degree(p), Some(m));
            let smaller = ((1u32 << m)..p).find(|&q| is_irreducible(q));
            assert_eq!(smaller, None, "m={m}");
        }
    }

    #[test]
    fn rejects_reducible_and_bad_degree() {
        // x^3 + x^2 + x + 1 = (x + 1)^3
        assert!(matches!(
            FieldParams::with_poly(3, 0b1111),
            Err(Error::InvalidPolynomial { .. })
        ));
        assert!(matches!(
            FieldParams::with_poly(3, 0b10011),
            Err(Error::InvalidPolynomial { .. })
        ));
        assert!(FieldParams::with_poly(3, 0b1101).is_ok());
        assert!(matches!(FieldParams::new(1), Err(Error::InvalidDegree(1))));
        assert!(matches!(
            FieldParams::new(21),
            Err(Error::InvalidDegree(21))
        ));
    }

    #[test]
    fn add_examples() {
        let f = gf8();
        for a in f.elements() {
            assert_eq!(f.add(a, a), FieldElem::ZERO);
            assert_eq!(f.add(a, FieldElem::ZERO), a);
        }
        assert_eq!(f.add(FieldElem(0b011), FieldElem(0b101)), FieldElem(0b110));
    }

    #[test]
    fn mismatched_operands_rejected() {
        let f = gf8();
        let big = Field::with_degree(5).unwrap().elem(20).unwrap();
        assert!(matches!(
            f.try_add(big, FieldElem::ONE),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert!(f.try_mul(FieldElem::ONE, big).is_err());
        assert!(f.elem(8).is_err());
        assert_eq!(f.elem(7).unwrap().bits(), 7);
    }

    #[test]
    fn mul_examples() {
        let f = gf8();
        // x * x^2 = x^3 = x + 1 mod x^3 + x + 1
        assert_eq!(f.mul(FieldElem(0b010), FieldElem(0b100)), FieldElem(0b011));
        for a in f.elements() {
            assert_eq!(f.mul(a, FieldElem::ONE), a);
        }
        for a in f.nonzero_elements() {
            assert_eq!(f.mul(a, f.pow(a, 6)), FieldElem::ONE);
        }
    }

    #[test]
    fn pow_examples() {
        let f = gf8();
        for a in f.nonzero_elements() {
            assert_eq!(f.pow(a, 7), FieldElem::ONE);
        }
        for a in f.elements() {
            assert_eq!(f.pow(a, 2), f.mul(a, a));
            assert_eq!(f.pow(a, 0), FieldElem::ONE);
        }
        assert_eq!(f.pow(FieldElem::ZERO, 5), FieldElem::ZERO);
    }

    #[test]
    fn inverse() {
        let f = gf8();
        assert_eq!(f.inv(FieldElem::ONE).unwrap(), FieldElem::ONE);
        assert!(matches!(f.inv(FieldElem::ZERO), Err(Error::DivisionByZero)));
        for a in f.nonzero_elements() {
            let ai = f.inv(a).unwrap();
            assert_eq!(f.mul(a, ai), FieldElem::ONE);
            assert_eq!(f.inv(ai).unwrap(), a);
        }
    }

    #[test]
    fn trace_examples() {
        for m in MIN_DEGREE..=10 {
            let f = Field::with_degree(m).unwrap();
            assert!(!f.trace(FieldElem::ZERO));
            assert_eq!(f.trace(FieldElem::ONE), m % 2 == 1);
            let zeros = f.elements().filter(|&a| !f.trace(a)).count();
            assert_eq!(zeros as u32, f.order() / 2, "trace is balanced");
        }
        let f = gf8();
        assert_eq!(f.elements().filter(|&a| !f.trace(a)).count(), 4);
    }

    #[test]
    fn trace_mask_matches_definition() {
        for m in MIN_DEGREE..=10 {
            let f = Field::with_degree(m).unwrap();
            for a in f.elements() {
                assert_eq!(f.trace(a), f.trace_by_frobenius(a));
            }
        }
    }

    #[test]
    fn trace_additive_and_frobenius_invariant() {
        for m in MIN_DEGREE..=8 {
            let f = Field::with_degree(m).unwrap();
            for a in f.elements() {
                assert_eq!(f.trace(f.square(a)), f.trace(a));
                for b in f.elements() {
                    assert_eq!(f.trace(f.add(a, b)), f.trace(a) ^ f.trace(b));
                }
            }
        }
    }

    #[test]
    fn additive_character_sums_vanish() {
        for m in MIN_DEGREE..=8 {
            let f = Field::with_degree(m).unwrap();
            for z in f.nonzero_elements() {
                let s: i64 = f.elements().map(|x| f.trace_sign(f.mul(z, x))).sum();
                assert_eq!(s, 0, "m={m} z={z}");
            }
        }
    }

    #[test]
    fn field_axioms_gf8() {
        let f = gf8();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                }
            }
        }
    }

    #[test]
    fn square_roots() {
        for m in [3, 4, 5, 8] {
            let f = Field::with_degree(m).unwrap();
            assert_eq!(f.sqrt(FieldElem::ZERO), FieldElem::ZERO);
            assert_eq!(f.sqrt(FieldElem::ONE), FieldElem::ONE);
            for a in f.elements() {
                let r = f.sqrt(a);
                assert_eq!(f.mul(r, r), a);
                assert_eq!(f.sqrt(f.mul(a, a)), a);
            }
        }
    }

    #[test]
    fn cube_roots() {
        for m in [3, 5, 7] {
            let f = Field::with_degree(m).unwrap();
            assert_eq!(f.cube_root(FieldElem::ONE).unwrap(), FieldElem::ONE);
            assert_eq!(f.cube_root(FieldElem::ZERO).unwrap(), FieldElem::ZERO);
            for a in f.elements() {
                assert_eq!(f.pow(f.cube_root(a).unwrap(), 3), a);
            }
        }
        let f4 = Field::with_degree(4).unwrap();
        assert!(matches!(
            f4.cube_root(FieldElem::ONE),
            Err(Error::UnsupportedParameter(_))
        ));
    }

    #[test]
    fn alternative_polynomial_gives_a_field() {
        let f = Field::new(FieldParams::with_poly(3, 0b1101).unwrap());
        for a in f.nonzero_elements() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
        }
    }
}
