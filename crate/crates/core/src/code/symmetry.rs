//! The regular action of `R_m^*` on the coordinates of `C_m`.
//!
//! Multiplying the coordinate index by a unit `g` maps `Ev(a, b)` onto
//! `Ev(a g, b g^3)`, so `C_m` is closed under these permutations; and for
//! any two units `v, w` the unit `w / v` is the one moving coordinate `v` to
//! coordinate `w`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::CodeSpec;
use crate::ring::RingElem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryTrial {
    pub g: String,
    pub a: String,
    pub b: String,
    /// `Ev(a, b)` read at `g x` equals `Ev(a g, b g^3)` read at `x`.
    pub substitution_holds: bool,
    /// `x -> g x` is a bijection of the unit group.
    pub is_permutation: bool,
    /// For a random pair of units `(v, w)`, `x -> (w / v) x` sends `v` to `w`.
    pub moves_v_to_w: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub seed: u64,
    pub trials: Vec<SymmetryTrial>,
    pub all_passed: bool,
}

fn random_unit(spec: &CodeSpec, rng: &mut impl Rng) -> RingElem {
    spec.units()[rng.gen_range(0..spec.n())]
}

fn random_elem(spec: &CodeSpec, rng: &mut impl Rng) -> RingElem {
    let q = spec.field().order();
    let f = spec.field();
    RingElem::new(
        f.elem_unchecked(rng.gen_range(0..q)),
        f.elem_unchecked(rng.gen_range(0..q)),
    )
}

/// Runs `trials` random checks; the first trial always uses `g = 1`.
pub fn permutation_invariance_check(spec: &CodeSpec, trials: usize, seed: u64) -> SymmetryReport {
    let r = spec.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for t in 0..trials {
        let g = if t == 0 {
            RingElem::ONE
        } else {
            random_unit(spec, &mut rng)
        };
        let a = random_elem(spec, &mut rng);
        let b = random_elem(spec, &mut rng);

        let perm: Vec<usize> = spec
            .units()
            .iter()
            .map(|&x| {
                r.unit_index(r.mul(g, x))
                    .expect("unit times unit is a unit")
            })
            .collect();
        let mut seen = vec![false; spec.n()];
        for &p in &perm {
            seen[p] = true;
        }
        let is_permutation = seen.iter().all(|&s| s);

        let word = spec.ev(a, b);
        let moved = spec.ev(r.mul(a, g), r.mul(b, r.cube(g)));
        let substitution_holds = perm
            .iter()
            .enumerate()
            .all(|(i, &p)| word.coords[p] == moved.coords[i]);

        let v = random_unit(spec, &mut rng);
        let w = random_unit(spec, &mut rng);
        let h = r.mul(w, r.inv(v).expect("v is a unit"));
        let moves_v_to_w = r.mul(h, v) == w;

        out.push(SymmetryTrial {
            g: g.to_string(),
            a: a.to_string(),
            b: b.to_string(),
            substitution_holds,
            is_permutation,
            moves_v_to_w,
        });
    }
    let all_passed = out
        .iter()
        .all(|t| t.substitution_holds && t.is_permutation && t.moves_v_to_w);
    SymmetryReport {
        seed,
        trials: out,
        all_passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hundred_trials_m3() {
        let spec = CodeSpec::with_degree(3).unwrap();
        let report = permutation_invariance_check(&spec, 100, 7);
        assert_eq!(report.trials.len(), 100);
        assert_eq!(report.trials[0].g, RingElem::ONE.to_string());
        assert!(report.all_passed);
    }

    #[test]
    fn deterministic_in_seed() {
        let spec = CodeSpec::with_degree(3).unwrap();
        assert_eq!(
            permutation_invariance_check(&spec, 10, 3),
            permutation_invariance_check(&spec, 10, 3)
        );
    }

    #[test]
    fn wrong_substitution_is_detected() {
        // Control: Ev(a, b) at g x is generally not Ev(a g, b g) at x.
        let spec = CodeSpec::with_degree(3).unwrap();
        let r = spec.ring();
        let g = r.elem(2, 1).unwrap();
        let a = r.elem(0, 0).unwrap();
        let b = r.elem(1, 0).unwrap();
        let word = spec.ev(a, b);
        let wrong = spec.ev(r.mul(a, g), r.mul(b, g));
        let differs = spec
            .units()
            .iter()
            .enumerate()
            .any(|(i, &x)| word.coords[r.unit_index(r.mul(g, x)).unwrap()] != wrong.coords[i]);
        assert!(differs);
    }
}
