//! Low Lee weight words of the dual of `C_m` over `R`, and the binary
//! MacWilliams transform of the Gray image's weight distribution.
//!
//! The `R`-dual is far too large to list, so dual words of Lee weight at
//! most 4 are found by enumerating sparse supports. A word `y` is dual iff
//! `sum_i y_i c_i = 0` for each of the `2m` module generators `c` of `C_m`.
//! Each `(coordinate, value)` pair is mapped to its vector of inner products
//! with the generators (its "syndrome"), so a pattern is dual iff its
//! syndromes XOR to zero; the last entry of every pattern is found by hash
//! lookup instead of enumeration.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::code::CodeSpec;
use crate::distribution::WeightDistribution;
use crate::error::{Error, Result};
use crate::ring::{BaseRingElem, RingElem};
use crate::serde_util;

/// A sparse word over `R`: strictly increasing coordinates, nonzero values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualPattern {
    entries: Vec<(usize, BaseRingElem)>,
}

impl DualPattern {
    pub fn new(entries: Vec<(usize, BaseRingElem)>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Inconsistent(
                "pattern coordinates must increase".into(),
            ));
        }
        if entries.iter().any(|(_, v)| v.is_zero()) {
            return Err(Error::Inconsistent("pattern values must be nonzero".into()));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(usize, BaseRingElem)] {
        &self.entries
    }

    pub fn lee_weight(&self) -> u32 {
        self.entries.iter().map(|(_, v)| v.lee_weight()).sum()
    }

    /// Multiset of values, e.g. `{1,1+u,u}`.
    pub fn type_label(&self) -> String {
        let mut values: Vec<BaseRingElem> = self.entries.iter().map(|&(_, v)| v).collect();
        values.sort_by_key(|&v| value_rank(v));
        type_label(&values)
    }
}

fn value_rank(v: BaseRingElem) -> u8 {
    match v {
        BaseRingElem::ONE => 0,
        BaseRingElem::ONE_PLUS_U => 1,
        _ => 2,
    }
}

fn type_label(sorted: &[BaseRingElem]) -> String {
    let parts: Vec<String> = sorted.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Orthogonality over `R` to the `2m` module generators of `C_m`.
pub fn is_dual_word(pattern: &DualPattern, spec: &CodeSpec) -> bool {
    spec.module_generators().iter().all(|g| {
        pattern
            .entries
            .iter()
            .fold(BaseRingElem::ZERO, |acc, &(i, v)| {
                acc.add(v.mul(g.coords[i]))
            })
            .is_zero()
    })
}

/// Per-coordinate syndromes: entry `[i][v]` is the vector of products of
/// value `v` at coordinate `i` with every generator, alpha bits in the low
/// 64 bits and beta bits in the high 64.
struct SyndromeTable {
    rows: Vec<[u128; 4]>,
}

impl SyndromeTable {
    fn new(spec: &CodeSpec) -> Self {
        let gens = spec.module_generators();
        let rows = (0..spec.n())
            .map(|i| {
                let mut alpha = 0u128;
                let mut beta = 0u128;
                for (g, word) in gens.iter().enumerate() {
                    let c = word.coords[i];
                    alpha |= (c.alpha() as u128) << g;
                    beta |= (c.beta() as u128) << g;
                }
                // 1*c = c, u*c = alpha u, (1+u)*c = alpha + (alpha+beta) u
                [
                    0,
                    alpha | beta << 64,
                    alpha << 64,
                    alpha | (alpha ^ beta) << 64,
                ]
            })
            .collect();
        Self { rows }
    }

    #[inline]
    fn get(&self, i: usize, v: BaseRingElem) -> u128 {
        let idx = v.alpha() as usize | (v.beta() as usize) << 1;
        self.rows[i][idx]
    }
}

/// A dual word found by the search, values rendered as `"1"`, `"u"`, `"1+u"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub entries: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeCount {
    pub lee_weight: u32,
    #[serde(serialize_with = "serde_util::dec")]
    pub count: u64,
    /// Lexicographically smallest few witnesses.
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualSearchReport {
    pub max_lee: u32,
    /// Lee weight -> number of dual words, for every weight `1..=max_lee`.
    #[serde(serialize_with = "serde_util::dec_map")]
    pub counts: BTreeMap<u32, u64>,
    /// Value multiset -> count.
    pub per_type: BTreeMap<String, TypeCount>,
    /// Smallest Lee weight with a nonzero count, if any is within range.
    pub dual_distance: Option<u32>,
}

impl DualSearchReport {
    pub fn count(&self, lee: u32) -> u64 {
        self.counts.get(&lee).copied().unwrap_or(0)
    }

    pub fn type_count(&self, label: &str) -> u64 {
        self.per_type.get(label).map_or(0, |t| t.count)
    }
}

const WITNESSES_PER_TYPE: usize = 3;

pub const MAX_SEARCH_LEE: u32 = 4;

fn check_search_feasible(spec: &CodeSpec, max_lee: u32) -> Result<()> {
    let m = spec.m();
    if max_lee == 0 || max_lee > MAX_SEARCH_LEE {
        return Err(Error::UnsupportedParameter(format!(
            "max Lee weight must be in 1..={MAX_SEARCH_LEE}, got {max_lee}"
        )));
    }
    let limit = if max_lee <= 2 { 5 } else { 4 };
    if m > limit {
        return Err(Error::Infeasible(format!(
            "dual search up to Lee weight {max_lee} needs m <= {limit}, got m = {m}"
        )));
    }
    Ok(())
}

#[derive(Default)]
struct SearchTally {
    // key: (#1, #(1+u), #u)
    per_type: HashMap<[u8; 3], (u64, Vec<Witness>)>,
}

impl SearchTally {
    fn record(&mut self, prefix: &[(usize, BaseRingElem)], last: (usize, BaseRingElem)) {
        let mut key = [0u8; 3];
        for &(_, v) in prefix.iter().chain(std::iter::once(&last)) {
            key[value_rank(v) as usize] += 1;
        }
        let entry = self.per_type.entry(key).or_default();
        entry.0 += 1;
        // keep a sorted list of the smallest witnesses
        let w = Witness {
            entries: prefix
                .iter()
                .chain(std::iter::once(&last))
                .map(|&(i, v)| (i, v.to_string()))
                .collect(),
        };
        if entry.1.len() < WITNESSES_PER_TYPE || w < *entry.1.last().unwrap() {
            let pos = entry.1.binary_search(&w).unwrap_or_else(|p| p);
            entry.1.insert(pos, w);
            entry.1.truncate(WITNESSES_PER_TYPE);
        }
    }

    fn merge(mut self, other: SearchTally) -> SearchTally {
        for (k, (c, ws)) in other.per_type {
            let e = self.per_type.entry(k).or_default();
            e.0 += c;
            e.1.extend(ws);
            e.1.sort();
            e.1.truncate(WITNESSES_PER_TYPE);
        }
        self
    }
}

struct Search<'a> {
    table: &'a SyndromeTable,
    lookup: &'a HashMap<u128, Vec<(usize, BaseRingElem)>>,
    n: usize,
}

impl Search<'_> {
    /// Extends `prefix` (syndrome `acc`, Lee budget left `budget`), closing
    /// it with every matching final entry.
    fn walk(
        &self,
        prefix: &mut Vec<(usize, BaseRingElem)>,
        acc: u128,
        budget: u32,
        tally: &mut SearchTally,
    ) {
        let next = prefix.last().map_or(0, |&(i, _)| i + 1);
        if let Some(cands) = self.lookup.get(&acc) {
            for &(l, v) in cands {
                if l >= next && v.lee_weight() <= budget {
                    tally.record(prefix, (l, v));
                }
            }
        }
        // A further entry needs at least one more unit of budget after it.
        if budget < 2 {
            return;
        }
        for j in next..self.n {
            for v in BaseRingElem::NONZERO {
                if v.lee_weight() < budget {
                    prefix.push((j, v));
                    self.walk(
                        prefix,
                        acc ^ self.table.get(j, v),
                        budget - v.lee_weight(),
                        tally,
                    );
                    prefix.pop();
                }
            }
        }
    }
}

/// Exact counts of dual words of Lee weight `1..=max_lee`, split by value
/// type.
pub fn search_low_weight_duals(
    spec: &CodeSpec,
    max_lee: u32,
    threads: usize,
) -> Result<DualSearchReport> {
    check_search_feasible(spec, max_lee)?;
    let n = spec.n();
    let table = SyndromeTable::new(spec);
    let mut lookup: HashMap<u128, Vec<(usize, BaseRingElem)>> = HashMap::new();
    for i in 0..n {
        for v in BaseRingElem::NONZERO {
            lookup.entry(table.get(i, v)).or_default().push((i, v));
        }
    }
    let search = Search {
        table: &table,
        lookup: &lookup,
        n,
    };

    // Single-entry patterns, then everything with a given first entry.
    let mut root = SearchTally::default();
    if let Some(cands) = lookup.get(&0) {
        for &(l, v) in cands {
            if v.lee_weight() <= max_lee {
                root.record(&[], (l, v));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("failed to build worker pool");
    let firsts: Vec<(usize, BaseRingElem)> = (0..n)
        .flat_map(|i| BaseRingElem::NONZERO.into_iter().map(move |v| (i, v)))
        .filter(|&(_, v)| v.lee_weight() < max_lee)
        .collect();
    let tally = pool.install(|| {
        firsts
            .par_iter()
            .map(|&(i, v)| {
                let mut t = SearchTally::default();
                let mut prefix = vec![(i, v)];
                search.walk(
                    &mut prefix,
                    table.get(i, v),
                    max_lee - v.lee_weight(),
                    &mut t,
                );
                t
            })
            .reduce(SearchTally::default, SearchTally::merge)
    });
    let tally = root.merge(tally);

    let mut counts: BTreeMap<u32, u64> = (1..=max_lee).map(|w| (w, 0)).collect();
    let mut per_type = BTreeMap::new();
    for ([ones, ones_u, us], (count, witnesses)) in tally.per_type {
        let lee = (ones + ones_u + 2 * us) as u32;
        *counts.get_mut(&lee).expect("lee within budget") += count;
        let values: Vec<BaseRingElem> = std::iter::repeat_n(BaseRingElem::ONE, ones as usize)
            .chain(std::iter::repeat_n(
                BaseRingElem::ONE_PLUS_U,
                ones_u as usize,
            ))
            .chain(std::iter::repeat_n(BaseRingElem::U, us as usize))
            .collect();
        per_type.insert(
            type_label(&values),
            TypeCount {
                lee_weight: lee,
                count,
                witnesses,
            },
        );
    }
    let dual_distance = counts.iter().find(|(_, &c)| c > 0).map(|(&w, _)| w);
    Ok(DualSearchReport {
        max_lee,
        counts,
        per_type,
        dual_distance,
    })
}

/// Minimum Lee weight of a nonzero dual word, if it is at most `max_lee`.
pub fn dual_distance(spec: &CodeSpec, max_lee: u32, threads: usize) -> Result<Option<u32>> {
    Ok(search_low_weight_duals(spec, max_lee, threads)?.dual_distance)
}

/// Whether every nonzero `x in R_m` has some `(a, b)` with
/// `Tr(a x + b x^3) != 0`. Returns the first failing `x` otherwise.
pub fn nondegeneracy_check(spec: &CodeSpec) -> Result<Option<RingElem>> {
    if spec.k_bin() > 24 {
        return Err(Error::Infeasible(format!("m = {} is too large", spec.m())));
    }
    let r = spec.ring();
    let pairs = 1u64 << spec.k_bin();
    let failing = r.elements().filter(|x| !x.is_zero()).find(|&x| {
        let x3 = r.cube(x);
        !(0..pairs).any(|msg| {
            let (a, b) = spec.message_pair(msg);
            !r.trace(r.add(r.mul(a, x), r.mul(b, x3))).is_zero()
        })
    });
    Ok(failing)
}

/// Krawtchouk values `K_j(i)` for `j = 0..=n`, by the three-term recurrence
/// `(j+1) K_{j+1} = (n - 2i) K_j - (n - j + 1) K_{j-1}`.
pub fn krawtchouk_row(n: u64, i: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    row.push(BigInt::from(1));
    if n == 0 {
        return row;
    }
    let span = BigInt::from(n as i64 - 2 * i as i64);
    row.push(span.clone());
    for j in 1..n {
        let next = (&span * &row[j as usize] - BigInt::from(n - j + 1) * &row[j as usize - 1])
            / BigInt::from(j + 1);
        row.push(next);
    }
    row
}

/// Weight distribution of the binary dual of an `[n_bin, k_bin]` code with
/// distribution `dist`, exact.
pub fn macwilliams_binary(
    dist: &WeightDistribution,
    n_bin: u64,
    k_bin: u64,
) -> Result<WeightDistribution> {
    let size = BigUint::from(1u8) << k_bin as usize;
    if dist.total() != size {
        return Err(Error::Inconsistent(format!(
            "distribution sums to {} but the code has {size} words",
            dist.total()
        )));
    }
    if let Some(w) = dist.iter().map(|(w, _)| w).find(|&w| w > n_bin) {
        return Err(Error::Inconsistent(format!(
            "weight {w} exceeds length {n_bin}"
        )));
    }
    let mut sums = vec![BigInt::zero(); n_bin as usize + 1];
    for (w, count) in dist.iter() {
        let count = BigInt::from_biguint(Sign::Plus, count.clone());
        for (s, k) in sums.iter_mut().zip(krawtchouk_row(n_bin, w)) {
            *s += &count * k;
        }
    }
    let size = BigInt::from_biguint(Sign::Plus, size);
    let mut out = WeightDistribution::new();
    for (j, s) in sums.into_iter().enumerate() {
        let (q, r) = s.div_rem(&size);
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!(
                "non-integral dual coefficient at weight {j}"
            )));
        }
        if q.is_negative() {
            return Err(Error::Inconsistent(format!(
                "negative dual coefficient at weight {j}"
            )));
        }
        out.add(j as u64, q.to_biguint().expect("nonnegative"));
    }
    Ok(out)
}
