//! The chain ring `R_m = GF(2^m) + u GF(2^m)` with `u^2 = 0`, its Frobenius
//! operator and trace down to `R = F_2 + u F_2`, and the Gray map / Lee
//! weight on `R`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2m::{Field, FieldElem};

/// `alpha + beta * u`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElem {
    pub alpha: FieldElem,
    pub beta: FieldElem,
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}u", self.alpha, self.beta)
    }
}

/// Which part of `R_m = R_m^* ∪ M` an element lies in, with zero split out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Zero,
    /// `M \ {0}`: nonzero multiples of `u`.
    Nilpotent,
    Unit,
}

impl RingElem {
    pub const ZERO: RingElem = RingElem {
        alpha: FieldElem::ZERO,
        beta: FieldElem::ZERO,
    };
    pub const ONE: RingElem = RingElem {
        alpha: FieldElem::ONE,
        beta: FieldElem::ZERO,
    };
    pub const U: RingElem = RingElem {
        alpha: FieldElem::ZERO,
        beta: FieldElem::ONE,
    };

    pub fn new(alpha: FieldElem, beta: FieldElem) -> Self {
        Self { alpha, beta }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    #[inline]
    pub fn is_unit(self) -> bool {
        !self.alpha.is_zero()
    }

    pub fn membership(self) -> Membership {
        if self.is_unit() {
            Membership::Unit
        } else if self.beta.is_zero() {
            Membership::Zero
        } else {
            Membership::Nilpotent
        }
    }
}

/// An element of the base ring `R = F_2 + u F_2`.
///
/// Encoded as `alpha | beta << 1`, so the four values are
/// `0 = 0`, `1 = 1`, `2 = u`, `3 = 1 + u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseRingElem(u8);

const LEE_WEIGHTS: [u32; 4] = [0, 1, 2, 1];

impl BaseRingElem {
    pub const ZERO: BaseRingElem = BaseRingElem(0);
    pub const ONE: BaseRingElem = BaseRingElem(1);
    pub const U: BaseRingElem = BaseRingElem(2);
    pub const ONE_PLUS_U: BaseRingElem = BaseRingElem(3);
    pub const ALL: [BaseRingElem; 4] = [Self::ZERO, Self::ONE, Self::U, Self::ONE_PLUS_U];
    pub const NONZERO: [BaseRingElem; 3] = [Self::ONE, Self::U, Self::ONE_PLUS_U];

    #[inline]
    pub fn from_bits(alpha: bool, beta: bool) -> Self {
        BaseRingElem(alpha as u8 | (beta as u8) << 1)
    }

    #[inline]
    pub fn alpha(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn beta(self) -> bool {
        self.0 & 2 == 2
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn add(self, other: Self) -> Self {
        BaseRingElem(self.0 ^ other.0)
    }

    pub fn mul(self, other: Self) -> Self {
        let (a1, b1) = (self.alpha(), self.beta());
        let (a2, b2) = (other.alpha(), other.beta());
        Self::from_bits(a1 & a2, (a1 & b2) ^ (a2 & b1))
    }

    /// `Phi(alpha + beta u) = (beta, alpha + beta)`.
    #[inline]
    pub fn gray(self) -> (bool, bool) {
        let (a, b) = (self.alpha(), self.beta());
        (b, a ^ b)
    }

    #[inline]
    pub fn lee_weight(self) -> u32 {
        LEE_WEIGHTS[self.0 as usize]
    }

    /// Embeds into `R_m`.
    pub fn lift(self) -> RingElem {
        RingElem {
            alpha: if self.alpha() {
                FieldElem::ONE
            } else {
                FieldElem::ZERO
            },
            beta: if self.beta() {
                FieldElem::ONE
            } else {
                FieldElem::ZERO
            },
        }
    }
}

impl fmt::Display for BaseRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "u",
            _ => "1+u",
        })
    }
}

/// Arithmetic in `R_m` over a fixed [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    field: Field,
}

impl Ring {
    pub fn new(field: Field) -> Self {
        Self { field }
    }

    pub fn with_degree(m: u32) -> Result<Self> {
        Ok(Self::new(Field::with_degree(m)?))
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Validates both components against the field.
    pub fn elem(&self, alpha: u32, beta: u32) -> Result<RingElem> {
        Ok(RingElem {
            alpha: self.field.elem(alpha)?,
            beta: self.field.elem(beta)?,
        })
    }

    /// All `4^m` elements, ordered by `(alpha, beta)`.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let q = self.field.order();
        (0..q).flat_map(move |a| {
            (0..q).map(move |b| RingElem {
                alpha: self.field.elem_unchecked(a),
                beta: self.field.elem_unchecked(b),
            })
        })
    }

    #[inline]
    pub fn add(&self, x: RingElem, y: RingElem) -> RingElem {
        let f = &self.field;
        RingElem {
            alpha: f.add(x.alpha, y.alpha),
            beta: f.add(x.beta, y.beta),
        }
    }

    pub fn try_add(&self, x: RingElem, y: RingElem) -> Result<RingElem> {
        let f = &self.field;
        Ok(RingElem {
            alpha: f.try_add(x.alpha, y.alpha)?,
            beta: f.try_add(x.beta, y.beta)?,
        })
    }

    /// `(a1 + b1 u)(a2 + b2 u) = a1 a2 + (a1 b2 + a2 b1) u`.
    #[inline]
    pub fn mul(&self, x: RingElem, y: RingElem) -> RingElem {
        let f = &self.field;
        RingElem {
            alpha: f.mul(x.alpha, y.alpha),
            beta: f.add(f.mul(x.alpha, y.beta), f.mul(y.alpha, x.beta)),
        }
    }

    pub fn try_mul(&self, x: RingElem, y: RingElem) -> Result<RingElem> {
        for e in [x.alpha, x.beta, y.alpha, y.beta] {
            self.field.elem(e.bits())?;
        }
        Ok(self.mul(x, y))
    }

    /// `x^3`, the only power the code needs.
    #[inline]
    pub fn cube(&self, x: RingElem) -> RingElem {
        self.mul(self.mul(x, x), x)
    }

    /// `(a + b u)^-1 = a^-1 + a^-2 b u`.
    pub fn inv(&self, x: RingElem) -> Result<RingElem> {
        if !x.is_unit() {
            return Err(Error::NotInvertible);
        }
        let f = &self.field;
        let ai = f.inv(x.alpha)?;
        Ok(RingElem {
            alpha: ai,
            beta: f.mul(f.square(ai), x.beta),
        })
    }

    /// `F(a + b u) = a^2 + b^2 u`.
    #[inline]
    pub fn frobenius(&self, x: RingElem) -> RingElem {
        RingElem {
            alpha: self.field.square(x.alpha),
            beta: self.field.square(x.beta),
        }
    }

    /// `Tr(a + b u) = tr(a) + tr(b) u`.
    #[inline]
    pub fn trace(&self, x: RingElem) -> BaseRingElem {
        BaseRingElem::from_bits(self.field.trace(x.alpha), self.field.trace(x.beta))
    }

    /// The trace from its definition, `sum_{j<m} F^j(x)`.
    pub fn trace_by_frobenius(&self, x: RingElem) -> BaseRingElem {
        let mut acc = RingElem::ZERO;
        let mut power = x;
        for _ in 0..self.field.degree() {
            acc = self.add(acc, power);
            power = self.frobenius(power);
        }
        debug_assert!(acc.alpha.bits() <= 1 && acc.beta.bits() <= 1);
        BaseRingElem::from_bits(acc.alpha.bits() == 1, acc.beta.bits() == 1)
    }

    /// Number of units, `(2^m - 1) 2^m`.
    pub fn unit_count(&self) -> usize {
        let q = self.field.order() as usize;
        (q - 1) * q
    }

    /// The units in canonical coordinate order: lexicographic by
    /// `(alpha, beta)` as integers.
    pub fn units(&self) -> Vec<RingElem> {
        let q = self.field.order();
        (1..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .map(|(a, b)| RingElem {
                alpha: self.field.elem_unchecked(a),
                beta: self.field.elem_unchecked(b),
            })
            .collect()
    }

    /// Position of a unit in [`Ring::units`].
    #[inline]
    pub fn unit_index(&self, x: RingElem) -> Option<usize> {
        x.is_unit().then(|| {
            (x.alpha.bits() as usize - 1) * self.field.order() as usize + x.beta.bits() as usize
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> Ring {
        Ring::with_degree(3).unwrap()
    }

    #[test]
    fn addition() {
        let r = r3();
        for x in r.elements() {
            assert_eq!(r.add(x, x), RingElem::ZERO);
        }
        assert_eq!(r.add(RingElem::U, RingElem::U), RingElem::ZERO);
        let x = r.elem(3, 5).unwrap();
        let y = r.elem(6, 1).unwrap();
        assert_eq!(r.add(x, y), r.elem(5, 4).unwrap());
    }

    #[test]
    fn multiplication() {
        let r = r3();
        assert_eq!(r.mul(RingElem::U, RingElem::U), RingElem::ZERO);
        for x in r.elements() {
            assert_eq!(r.mul(x, RingElem::ONE), x);
        }
        // (beta u)(x0 + x1 u) = beta x0 u
        let f = r.field();
        for beta in f.elements() {
            for x in r.elements() {
                let p = r.mul(RingElem::new(FieldElem::ZERO, beta), x);
                assert_eq!(p, RingElem::new(FieldElem::ZERO, f.mul(beta, x.alpha)));
            }
        }
    }

    #[test]
    fn ring_axioms() {
        let r = r3();
        let all: Vec<_> = r.elements().collect();
        for &x in &all {
            for &y in &all {
                assert_eq!(r.mul(x, y), r.mul(y, x));
            }
        }
        // associativity / distributivity on a stride sample of triples
        for &x in all.iter().step_by(3) {
            for &y in all.iter().step_by(5) {
                for &z in &all {
                    assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)));
                    assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
                }
            }
        }
    }

    #[test]
    fn inverse() {
        let r = r3();
        assert_eq!(r.inv(RingElem::ONE).unwrap(), RingElem::ONE);
        let one_plus_u = r.elem(1, 1).unwrap();
        assert_eq!(r.inv(one_plus_u).unwrap(), one_plus_u);
        let units = r.units();
        assert_eq!(units.len(), 56);
        for x in units {
            assert_eq!(r.mul(x, r.inv(x).unwrap()), RingElem::ONE);
        }
        assert!(matches!(r.inv(RingElem::U), Err(Error::NotInvertible)));
        assert!(matches!(r.inv(RingElem::ZERO), Err(Error::NotInvertible)));
    }

    #[test]
    fn frobenius() {
        let r = r3();
        assert_eq!(r.frobenius(RingElem::U), RingElem::U);
        for x in r.elements() {
            let mut y = x;
            for _ in 0..3 {
                y = r.frobenius(y);
            }
            assert_eq!(y, x);
            for z in r.elements() {
                assert_eq!(
                    r.frobenius(r.add(x, z)),
                    r.add(r.frobenius(x), r.frobenius(z))
                );
            }
        }
    }

    #[test]
    fn trace_closed_form() {
        let r = r3();
        assert_eq!(r.trace(RingElem::ZERO), BaseRingElem::ZERO);
        assert_eq!(r.trace(RingElem::ONE), BaseRingElem::ONE);
        for m in 2..=6 {
            let r = Ring::with_degree(m).unwrap();
            for x in r.elements() {
                assert_eq!(r.trace(x), r.trace_by_frobenius(x));
            }
        }
    }

    #[test]
    fn trace_is_base_ring_linear() {
        let r = r3();
        for s in BaseRingElem::ALL {
            for x in r.elements() {
                assert_eq!(r.trace(r.mul(s.lift(), x)), s.mul(r.trace(x)));
            }
        }
    }

    #[test]
    fn gray_and_lee() {
        assert_eq!(BaseRingElem::ZERO.gray(), (false, false));
        assert_eq!(BaseRingElem::U.gray(), (true, true));
        assert_eq!(BaseRingElem::ONE.gray(), (false, true));
        assert_eq!(BaseRingElem::ONE_PLUS_U.gray(), (true, false));
        let weights: Vec<u32> = BaseRingElem::ALL.iter().map(|x| x.lee_weight()).collect();
        assert_eq!(weights, [0, 1, 2, 1]);
        let mut images: Vec<_> = BaseRingElem::ALL.iter().map(|x| x.gray()).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 4, "gray map is a bijection");
        for x in BaseRingElem::ALL {
            let (g0, g1) = x.gray();
            assert_eq!(x.lee_weight(), g0 as u32 + g1 as u32);
            for y in BaseRingElem::ALL {
                let (h0, h1) = y.gray();
                assert_eq!(x.add(y).gray(), (g0 ^ h0, g1 ^ h1));
            }
        }
    }

    #[test]
    fn units_and_partition() {
        for m in [3, 5] {
            let r = Ring::with_degree(m).unwrap();
            let units = r.units();
            assert_eq!(units.len(), r.unit_count());
            assert_eq!(units[0], RingElem::ONE);
            assert!(units.windows(2).all(|w| w[0] < w[1]));
            for (i, &x) in units.iter().enumerate() {
                assert_eq!(r.unit_index(x), Some(i));
            }
        }
        assert_eq!(Ring::with_degree(3).unwrap().units().len(), 56);
        assert_eq!(Ring::with_degree(5).unwrap().units().len(), 992);

        let r = r3();
        for x in r.elements() {
            let in_m = x.alpha.is_zero();
            assert_ne!(x.is_unit(), in_m);
            match x.membership() {
                Membership::Zero => assert!(x.is_zero()),
                Membership::Nilpotent => assert!(in_m && !x.is_zero()),
                Membership::Unit => assert!(x.is_unit()),
            }
        }
    }
}
