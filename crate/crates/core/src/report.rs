//! End-to-end verification run and its JSON report.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cache::{enumerate_cached, CacheStatus};
use crate::code::{
    permutation_invariance_check, predicted_weights, verify_weight_cases, CaseLabel, CodeParams,
    CodeSpec, SymmetryReport, WeightCaseReport,
};
use crate::distribution::WeightDistribution;
use crate::dual::{
    macwilliams_binary, nondegeneracy_check, search_low_weight_duals, DualSearchReport,
};
use crate::error::{Error, Result};
use crate::gf2m::FieldParams;
use crate::moments::{formula_dual_counts, moment_report, MomentReport};
use crate::serde_util;
use crate::sss::{
    ab_condition, deal_shares, dictators_by_columns, massey_access_structure, minimal_codewords,
    reconstruct_from_rows, sample_access_set, AbCondition, AccessStructure, MinimalityReport,
};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub m: u32,
    pub poly: Option<u32>,
    pub threads: usize,
    /// Defaults to the largest feasible bound for `m`.
    pub max_lee: Option<u32>,
    pub trials: usize,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    /// Refuse even `m` instead of skipping the odd-only parts.
    pub require_odd: bool,
}

impl VerifyConfig {
    pub fn new(m: u32) -> Self {
        Self {
            m,
            poly: None,
            threads: 1,
            max_lee: None,
            trials: 100,
            seed: 1,
            cache_dir: None,
            require_odd: false,
        }
    }

    pub fn field_params(&self) -> Result<FieldParams> {
        match self.poly {
            Some(p) => FieldParams::with_poly(self.m, p),
            None => FieldParams::new(self.m),
        }
    }
}

/// Largest Lee weight the dual search accepts for this `m`.
pub fn default_max_lee(m: u32) -> Option<u32> {
    match m {
        0..=4 => Some(4),
        5 => Some(2),
        _ => None,
    }
}

/// Largest `m` for which `verify` is feasible.
pub const MAX_VERIFY_DEGREE: u32 = 5;

/// A pass/fail item; any failure makes the run fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

/// A disagreement with a published closed form, reported without failing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub id: String,
    pub summary: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecSection {
    #[serde(flatten)]
    pub params: CodeParams,
    pub max_lee: u32,
    #[serde(serialize_with = "serde_util::dec")]
    pub trials: usize,
    #[serde(serialize_with = "serde_util::dec")]
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistributionSection {
    pub weights: WeightDistribution,
    pub nonzero_weights: Vec<u64>,
    pub min_distance: Option<u64>,
    /// Binary dual weight counts `B_0..B_4` from the MacWilliams transform.
    #[serde(serialize_with = "serde_util::dec_map")]
    pub binary_dual_low_weights: BTreeMap<u64, BigUint>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightCaseSection {
    /// Weight predictions exist only for odd `m`.
    pub applicable: bool,
    pub report: Option<WeightCaseReport>,
    pub symmetry: SymmetryReport,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualSection {
    pub search: DualSearchReport,
    #[serde(serialize_with = "serde_util::dec")]
    pub formula_a2: BigInt,
    #[serde(serialize_with = "serde_util::dec")]
    pub formula_a4: BigInt,
    pub nondegenerate: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentsSection {
    pub report: Option<MomentReport>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripSummary {
    #[serde(serialize_with = "serde_util::dec")]
    pub trials: usize,
    #[serde(serialize_with = "serde_util::dec")]
    pub recovered: usize,
    #[serde(serialize_with = "serde_util::dec")]
    pub single_users_tested: usize,
    #[serde(serialize_with = "serde_util::dec")]
    pub single_users_rejected: usize,
    /// Hex shares of the first trial.
    pub sample_shares: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SssSection {
    pub ab_condition: AbCondition,
    pub minimality: MinimalityReport,
    pub access_structure: AccessStructure,
    pub roundtrip: RoundtripSummary,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub spec: SpecSection,
    pub distribution: DistributionSection,
    pub theorem43: WeightCaseSection,
    pub dual: DualSection,
    pub moments: MomentsSection,
    pub sss: SssSection,
    pub findings: Vec<Finding>,
    /// Wall clock seconds per stage; the only nondeterministic field.
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.distribution
            .checks
            .iter()
            .chain(&self.theorem43.checks)
            .chain(&self.dual.checks)
            .chain(&self.moments.checks)
            .chain(&self.sss.checks)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks().filter(|c| !c.passed).collect()
    }

    pub fn passed(&self) -> bool {
        self.checks().all(|c| c.passed)
    }
}

/// Output of [`verify`], with the cache outcome kept out of the report.
pub struct VerifyOutcome {
    pub report: Report,
    pub cache_status: CacheStatus,
}

fn validate(config: &VerifyConfig) -> Result<(CodeSpec, u32)> {
    let params = config.field_params()?;
    if config.require_odd && config.m.is_multiple_of(2) {
        return Err(Error::UnsupportedParameter(format!(
            "hypothesis not met: the weight predictions need odd m, got m = {}",
            config.m
        )));
    }
    if config.m > MAX_VERIFY_DEGREE {
        return Err(Error::Infeasible(format!(
            "verify supports m <= {MAX_VERIFY_DEGREE}, got m = {}",
            config.m
        )));
    }
    let limit = default_max_lee(config.m).expect("m within verify range");
    let max_lee = config.max_lee.unwrap_or(limit);
    if max_lee == 0 || max_lee > 4 {
        return Err(Error::UnsupportedParameter(format!(
            "max Lee weight must be 1..=4, got {max_lee}"
        )));
    }
    if max_lee > limit {
        return Err(Error::Infeasible(format!(
            "dual search up to Lee weight {max_lee} is infeasible for m = {}",
            config.m
        )));
    }
    Ok((CodeSpec::new(params), max_lee))
}

struct Timer(BTreeMap<String, f64>);

impl Timer {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let t = Instant::now();
        let out = f()?;
        self.0.insert(name.to_string(), t.elapsed().as_secs_f64());
        Ok(out)
    }
}

/// Runs every stage for one field and collects the report.
pub fn verify(config: &VerifyConfig) -> Result<VerifyOutcome> {
    let (spec, max_lee) = validate(config)?;
    let m = spec.m();
    let odd = m % 2 == 1 && m >= 3;
    let threads = config.threads.max(1);
    let mut timer = Timer(BTreeMap::new());
    let mut findings = Vec::new();

    let (dist, cache_status) = timer.time("enumerate", || {
        enumerate_cached(&spec, threads, config.cache_dir.as_deref())
    })?;
    let distribution = distribution_section(&spec, &dist, odd)?;
    let theorem43 = timer.time("theorem43", || weight_case_section(&spec, config, odd))?;
    let dual = timer.time("dual", || {
        dual_section(&spec, max_lee, threads, &mut findings)
    })?;
    let moments = timer.time("moments", || {
        moments_section(
            &spec,
            &dist,
            &dual.search,
            &distribution,
            odd,
            &mut findings,
        )
    })?;
    let sss = timer.time("sss", || sss_section(&spec, &dist, config, &mut findings))?;

    let report = Report {
        spec: SpecSection {
            params: spec.params(),
            max_lee,
            trials: config.trials,
            seed: config.seed,
        },
        distribution,
        theorem43,
        dual,
        moments,
        sss,
        findings,
        timings: timer.0,
    };
    Ok(VerifyOutcome {
        report,
        cache_status,
    })
}

fn distribution_section(
    spec: &CodeSpec,
    dist: &WeightDistribution,
    odd: bool,
) -> Result<DistributionSection> {
    let m = spec.m();
    let mut checks = vec![
        check(
            "distribution_total",
            dist.total() == BigUint::from(1u8) << (4 * m as usize),
            format!("{} codewords", dist.total()),
        ),
        check(
            "single_zero_word",
            dist.has_single_zero_word(),
            "Gray map image has full rank",
        ),
    ];
    if odd {
        let allowed = [
            CaseLabel::I,
            CaseLabel::II1,
            CaseLabel::II2,
            CaseLabel::III1,
        ]
        .into_iter()
        .chain([
            CaseLabel::III2,
            CaseLabel::IV1,
            CaseLabel::IV2,
            CaseLabel::IV3,
            CaseLabel::IV4,
        ])
        .map(|c| predicted_weights(c, m))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<std::collections::BTreeSet<u64>>();
        let extra: Vec<u64> = dist
            .nonzero_support()
            .into_iter()
            .filter(|w| !allowed.contains(w))
            .collect();
        checks.push(check(
            "weights_within_predictions",
            extra.is_empty(),
            format!("unexpected weights: {extra:?}"),
        ));
    }
    let bd = macwilliams_binary(dist, spec.n_bin() as u64, spec.k_bin() as u64)?;
    checks.push(check(
        "binary_dual_low_weights",
        bd.count(0) == BigUint::from(1u8) && bd.count(1).is_zero(),
        format!("B0 = {}, B1 = {}", bd.count(0), bd.count(1)),
    ));
    Ok(DistributionSection {
        weights: dist.clone(),
        nonzero_weights: dist.nonzero_support(),
        min_distance: dist.min_nonzero_weight(),
        binary_dual_low_weights: (0..=4).map(|w| (w, bd.count(w))).collect(),
        checks,
    })
}

fn weight_case_section(
    spec: &CodeSpec,
    config: &VerifyConfig,
    odd: bool,
) -> Result<WeightCaseSection> {
    let symmetry = permutation_invariance_check(spec, config.trials, config.seed);
    let mut checks = vec![check(
        "coordinate_symmetry",
        symmetry.all_passed,
        format!("{} trials", symmetry.trials.len()),
    )];
    let report = if odd {
        Some(verify_weight_cases(spec, config.threads)?)
    } else {
        None
    };
    if let Some(r) = &report {
        checks.push(check(
            "case_weight_predictions",
            r.violation_count == 0,
            format!(
                "{} pairs, {} outside their case",
                r.pairs_checked, r.violation_count
            ),
        ));
        checks.push(check(
            "iv1_closed_form",
            r.iv1_closed_form_mismatches == 0,
            format!(
                "{} pairs, {} mismatches",
                r.iv1_closed_form_checked, r.iv1_closed_form_mismatches
            ),
        ));
    }
    Ok(WeightCaseSection {
        applicable: odd,
        report,
        symmetry,
        checks,
    })
}

fn dual_section(
    spec: &CodeSpec,
    max_lee: u32,
    threads: usize,
    findings: &mut Vec<Finding>,
) -> Result<DualSection> {
    let m = spec.m();
    let search = search_low_weight_duals(spec, max_lee, threads)?;
    let nondegenerate = nondegeneracy_check(spec)?.is_none();
    let (a2, a4) = formula_dual_counts(m);
    let mut checks = vec![
        check(
            "no_dual_weight_one",
            search.count(1) == 0,
            format!("A1 = {}", search.count(1)),
        ),
        check(
            "trace_form_nondegenerate",
            nondegenerate,
            "every nonzero x is detected by some (a, b)",
        ),
    ];
    if max_lee >= 2 {
        checks.push(check(
            "dual_distance_two",
            search.dual_distance == Some(2),
            format!(
                "dual distance {}",
                search
                    .dual_distance
                    .map_or("none".to_string(), |d| d.to_string())
            ),
        ));
        let a2_found = BigInt::from(search.count(2));
        if a2_found != a2 {
            let split: Vec<String> = search
                .per_type
                .iter()
                .filter(|(_, t)| t.lee_weight == 2)
                .map(|(k, t)| format!("{k}: {}", t.count))
                .collect();
            findings.push(Finding {
                id: "dual_weight_two_count".into(),
                summary: format!(
                    "searched A2 = {a2_found} differs from the closed form 3(2^m-1)2^m = {a2}; \
                     by type: {}; type {{u}} count {}",
                    split.join(", "),
                    search.type_count("{u}")
                ),
            });
        }
    }
    if max_lee >= 4 {
        let a4_found = BigInt::from(search.count(4));
        if a4_found != a4 {
            findings.push(Finding {
                id: "dual_weight_four_count".into(),
                summary: format!(
                    "searched A4 = {a4_found} differs from the closed form (2^m-1)2^(2m+2) = {a4}; \
                     type {{u,u}} count {}, type {{1,1,1,1}} count {}",
                    search.type_count("{u,u}"),
                    search.type_count("{1,1,1,1}")
                ),
            });
        }
        if search.count(3) != 0 {
            findings.push(Finding {
                id: "dual_weight_three_count".into(),
                summary: format!("searched A3 = {} is nonzero", search.count(3)),
            });
        }
    }
    Ok(DualSection {
        search,
        formula_a2: a2,
        formula_a4: a4,
        nondegenerate,
        checks,
    })
}

fn moments_section(
    spec: &CodeSpec,
    dist: &WeightDistribution,
    search: &DualSearchReport,
    distribution: &DistributionSection,
    odd: bool,
    findings: &mut Vec<Finding>,
) -> Result<MomentsSection> {
    if !odd {
        return Ok(MomentsSection {
            report: None,
            checks: Vec::new(),
        });
    }
    let m = spec.m();
    let (a2, a4) = formula_dual_counts(m);
    let b = &distribution.binary_dual_low_weights;
    let mut runs = vec![("closed_form", a2, a4)];
    if search.max_lee >= 4 {
        runs.push((
            "searched",
            BigInt::from(search.count(2)),
            BigInt::from(search.count(4)),
        ));
    }
    runs.push((
        "binary_dual",
        BigInt::from(b[&2].clone()),
        BigInt::from(b[&4].clone()),
    ));
    let report = moment_report(dist, m, &runs)?;

    let formula = &report.runs[0];
    let mut checks = vec![
        check(
            "moment_equations_1_2",
            formula.residuals[..2].iter().all(Zero::is_zero),
            format!(
                "residuals {}, {}",
                formula.residuals[0], formula.residuals[1]
            ),
        ),
        check(
            "moment_roundtrip",
            report.roundtrip_holds,
            "solve with enumerated power sums",
        ),
        check(
            "griesmer",
            report.griesmer.satisfied,
            format!("n = {} >= {}", report.griesmer.n, report.griesmer.bound),
        ),
    ];
    // With B1 = B3 = 0 the system is the binary power moments themselves.
    let binary = report.runs.last().expect("binary dual run");
    if b[&1].is_zero() && b[&3].is_zero() {
        checks.push(check(
            "moments_with_binary_dual_counts",
            binary.failing_equations().is_empty(),
            format!("failing equations {:?}", binary.failing_equations()),
        ));
    }
    let failing = formula.failing_equations();
    if !failing.is_empty() || !formula.solution.all_admissible() {
        let others: Vec<String> = report.runs[1..]
            .iter()
            .map(|r| format!("{} counts fail {:?}", r.source, r.failing_equations()))
            .collect();
        findings.push(Finding {
            id: "moment_system_closed_form".into(),
            summary: format!(
                "with the closed-form dual counts equations {failing:?} fail and the solution has \
                 {} non-admissible components; {}",
                formula.solution.admissible.iter().filter(|&&a| !a).count(),
                others.join("; ")
            ),
        });
    }
    Ok(MomentsSection {
        report: Some(report),
        checks,
    })
}

fn sss_section(
    spec: &CodeSpec,
    dist: &WeightDistribution,
    config: &VerifyConfig,
    findings: &mut Vec<Finding>,
) -> Result<SssSection> {
    let threads = config.threads.max(1);
    let rows = spec.generator_rows();
    let ab = ab_condition(dist)?;
    let minimality = minimal_codewords(spec, threads)?;
    let structure = massey_access_structure(spec, threads)?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut recovered = 0;
    let mut sample_shares = String::new();
    for t in 0..config.trials {
        let secret: bool = rng.gen();
        let shares = deal_shares(secret, config.seed.wrapping_add(t as u64), spec)?;
        if t == 0 {
            sample_shares = shares.shares_hex();
        }
        let set = sample_access_set(&rows, &mut rng, 10_000)?
            .ok_or_else(|| Error::Inconsistent("no minimal access set found".into()))?;
        if reconstruct_from_rows(&rows, &set, &shares).ok() == Some(secret) {
            recovered += 1;
        }
    }
    let shares = deal_shares(true, config.seed, spec)?;
    let singles: Vec<usize> = (2..=spec.n_bin())
        .filter(|u| !structure.dictators.contains(u))
        .collect();
    let rejected = singles
        .iter()
        .filter(|&&u| {
            matches!(
                reconstruct_from_rows(&rows, &[u], &shares),
                Err(Error::ReconstructionFailure)
            )
        })
        .count();

    let checks = vec![
        check(
            "sufficient_condition_implies_minimal",
            !ab.holds || minimality.all_minimal,
            format!(
                "condition {}, all minimal {}",
                ab.holds, minimality.all_minimal
            ),
        ),
        check(
            "sharing_roundtrip",
            recovered == config.trials,
            format!("{recovered} of {} trials", config.trials),
        ),
        check(
            "single_users_unqualified",
            rejected == singles.len(),
            format!("{rejected} of {} rejected", singles.len()),
        ),
        check(
            "dictators_match_columns",
            structure.dictators == dictators_by_columns(&rows),
            format!("dictators {:?}", structure.dictators),
        ),
        check(
            "scheme_dictatorial",
            !structure.dictators.is_empty(),
            "dual distance two forces a dictator",
        ),
    ];
    if !minimality.all_minimal {
        findings.push(Finding {
            id: "minimality".into(),
            summary: format!(
                "{} of {} nonzero codewords are minimal; the sufficient condition 2 w_min > w_max \
                 evaluates to 2*{} > {} = {}",
                minimality.minimal_words, minimality.nonzero_words, ab.w_min, ab.w_max, ab.holds
            ),
        });
    } else if !ab.holds {
        findings.push(Finding {
            id: "minimality_condition".into(),
            summary: format!(
                "all nonzero codewords are minimal although 2 w_min > w_max fails (2*{} <= {})",
                ab.w_min, ab.w_max
            ),
        });
    }
    Ok(SssSection {
        ab_condition: ab,
        minimality,
        access_structure: structure,
        roundtrip: RoundtripSummary {
            trials: config.trials,
            recovered,
            single_users_tested: singles.len(),
            single_users_rejected: rejected,
            sample_shares,
        },
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let mut c = VerifyConfig::new(4);
        c.require_odd = true;
        assert!(matches!(verify(&c), Err(Error::UnsupportedParameter(_))));
        let mut c = VerifyConfig::new(5);
        c.max_lee = Some(3);
        assert!(matches!(verify(&c), Err(Error::Infeasible(_))));
        assert!(matches!(
            verify(&VerifyConfig::new(6)),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            verify(&VerifyConfig::new(1)),
            Err(Error::InvalidDegree(1))
        ));
        assert_eq!(default_max_lee(3), Some(4));
        assert_eq!(default_max_lee(7), None);
    }
}
