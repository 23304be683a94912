//! The trace code `C_m = { Ev(a, b) : a, b in R_m }` with
//! `Ev(a, b) = (Tr(a x + b x^3))_{x in R_m^*}`, and its binary Gray image.

mod charsum;
mod enumerate;
mod symmetry;
mod theorem;

pub use charsum::{charsum_a, charsum_b, charsum_b_phased, CharsumTable};
pub use enumerate::{enumerate_weights, enumerate_weights_direct, gray_fold, MAX_ENUM_DIMENSION};
pub use symmetry::{permutation_invariance_check, SymmetryReport, SymmetryTrial};
pub use theorem::{
    classify, predicted_weights, verify_weight_cases, verify_weight_cases_direct, CaseLabel,
    Violation, WeightCaseReport,
};

use serde::Serialize;

use crate::bits::{BitWord, GrayWord};
use crate::error::Result;
use crate::gf2m::{Field, FieldElem, FieldParams};
use crate::ring::{BaseRingElem, Ring, RingElem};

/// Parameters of `C_m` together with the ring it lives over.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    ring: Ring,
    units: Vec<RingElem>,
}

/// Plain-data summary of a [`CodeSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub m: u32,
    #[serde(serialize_with = "crate::serde_util::hex")]
    pub reduction_poly: u32,
    /// Length over `R`, `(2^m - 1) 2^m`.
    #[serde(serialize_with = "crate::serde_util::dec")]
    pub n: usize,
    /// Binary length of the Gray image, `2n`.
    #[serde(serialize_with = "crate::serde_util::dec")]
    pub n_bin: usize,
    /// Binary dimension, `4m`.
    #[serde(serialize_with = "crate::serde_util::dec")]
    pub k_bin: usize,
    #[serde(serialize_with = "crate::serde_util::dec")]
    pub unit_count: usize,
}

impl CodeSpec {
    pub fn new(params: FieldParams) -> Self {
        let ring = Ring::new(Field::new(params));
        let units = ring.units();
        Self { ring, units }
    }

    pub fn with_degree(m: u32) -> Result<Self> {
        Ok(Self::new(FieldParams::new(m)?))
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.ring.field().degree()
    }

    pub fn field_params(&self) -> FieldParams {
        self.ring.field().params()
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    /// Coordinate index set in canonical order.
    #[inline]
    pub fn units(&self) -> &[RingElem] {
        &self.units
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.units.len()
    }

    #[inline]
    pub fn n_bin(&self) -> usize {
        2 * self.units.len()
    }

    #[inline]
    pub fn k_bin(&self) -> usize {
        4 * self.m() as usize
    }

    pub fn params(&self) -> CodeParams {
        let p = self.field_params();
        CodeParams {
            m: p.m,
            reduction_poly: p.reduction_poly,
            n: self.n(),
            n_bin: self.n_bin(),
            k_bin: self.k_bin(),
            unit_count: self.ring.unit_count(),
        }
    }

    /// `Ev(a, b)`.
    pub fn ev(&self, a: RingElem, b: RingElem) -> Codeword {
        let r = &self.ring;
        let coords = self
            .units
            .iter()
            .map(|&x| r.trace(r.add(r.mul(a, x), r.mul(b, r.cube(x)))))
            .collect();
        Codeword { coords }
    }

    /// Decodes a message index (the GF(2) coordinates of `(a, b)` in the
    /// basis used by [`CodeSpec::generator_rows`]) into the pair `(a, b)`.
    ///
    /// Bit layout, low to high, `m` bits each: `alpha(a)`, `beta(a)`,
    /// `alpha(b)`, `beta(b)`.
    pub fn message_pair(&self, message: u64) -> (RingElem, RingElem) {
        let m = self.m();
        let mask = (1u64 << m) - 1;
        let f = self.field();
        let part = |i: u32| f.elem_unchecked((message >> (i * m) & mask) as u32);
        (
            RingElem::new(part(0), part(1)),
            RingElem::new(part(2), part(3)),
        )
    }

    /// Inverse of [`CodeSpec::message_pair`].
    pub fn pair_message(&self, a: RingElem, b: RingElem) -> u64 {
        let m = self.m();
        [a.alpha, a.beta, b.alpha, b.beta]
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, e)| {
                acc | (e.bits() as u64) << (i as u32 * m)
            })
    }

    /// Gray images of `Ev` on the GF(2)-basis `{x^j, x^j u}` of `R_m`, in
    /// both arguments. Row `i` is the image of message bit `i`.
    pub fn generator_rows(&self) -> Vec<GrayWord> {
        (0..self.k_bin())
            .map(|i| {
                let (a, b) = self.message_pair(1 << i);
                self.ev(a, b).gray_image()
            })
            .collect()
    }

    /// The `2m` generators of `C_m` as an `R`-module: `Ev(x^j, 0)` and
    /// `Ev(0, x^j)`.
    pub fn module_generators(&self) -> Vec<Codeword> {
        let basis: Vec<FieldElem> = self.field().basis().collect();
        let lift = |g: FieldElem| RingElem::new(g, FieldElem::ZERO);
        basis
            .iter()
            .map(|&g| self.ev(lift(g), RingElem::ZERO))
            .chain(basis.iter().map(|&g| self.ev(RingElem::ZERO, lift(g))))
            .collect()
    }
}

/// A codeword of `C_m`: one base-ring symbol per unit, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub coords: Vec<BaseRingElem>,
}

impl Codeword {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn lee_weight(&self) -> u32 {
        self.coords.iter().map(|c| c.lee_weight()).sum()
    }

    /// `(b_1 .. b_n | a_1 + b_1 .. a_n + b_n)` for `c_i = a_i + b_i u`.
    pub fn gray_image(&self) -> GrayWord {
        let n = self.coords.len();
        let mut w = BitWord::zeros(2 * n);
        for (i, c) in self.coords.iter().enumerate() {
            let (first, second) = c.gray();
            if first {
                w.set(i, true);
            }
            if second {
                w.set(n + i, true);
            }
        }
        w
    }
}
