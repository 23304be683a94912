//! Exact weight distributions.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// Map weight -> number of words of that weight. Zero counts are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: BTreeMap<u64, BigUint>,
}

impl WeightDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    /// From a dense histogram indexed by weight.
    pub fn from_histogram(hist: &[u64]) -> Self {
        let counts = hist
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(w, &c)| (w as u64, BigUint::from(c)))
            .collect();
        Self { counts }
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, BigUint)>>(pairs: I) -> Self {
        let mut d = Self::new();
        for (w, c) in pairs {
            d.add(w, c);
        }
        d
    }

    pub fn add(&mut self, weight: u64, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.counts.entry(weight).or_default() += count;
    }

    pub fn merge(&mut self, other: &WeightDistribution) {
        for (&w, c) in &other.counts {
            self.add(w, c.clone());
        }
    }

    pub fn count(&self, weight: u64) -> BigUint {
        self.counts.get(&weight).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.counts.iter().map(|(&w, c)| (w, c))
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Weights with a nonzero count, excluding zero.
    pub fn nonzero_support(&self) -> Vec<u64> {
        self.counts.keys().copied().filter(|&w| w != 0).collect()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.counts.keys().copied().find(|&w| w != 0)
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.counts.keys().next_back().copied().filter(|&w| w != 0)
    }

    /// Whether the only weight-0 word is the zero word.
    pub fn has_single_zero_word(&self) -> bool {
        self.count(0).is_one()
    }
}

/// Serialized as `{ "weight": "count", ... }` with decimal strings.
impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.counts.len()))?;
        for (w, c) in &self.counts {
            map.serialize_entry(&w.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_and_queries() {
        let d = WeightDistribution::from_histogram(&[1, 0, 3, 0, 4]);
        assert_eq!(d.total(), BigUint::from(8u32));
        assert_eq!(d.nonzero_support(), vec![2, 4]);
        assert_eq!(d.min_nonzero_weight(), Some(2));
        assert_eq!(d.max_weight(), Some(4));
        assert!(d.has_single_zero_word());
        assert_eq!(d.count(1), BigUint::zero());
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"0":"1","2":"3","4":"4"}"#);
    }

    #[test]
    fn merge_is_additive() {
        let mut a = WeightDistribution::from_histogram(&[1, 2]);
        let b = WeightDistribution::from_histogram(&[0, 5, 1]);
        a.merge(&b);
        assert_eq!(a, WeightDistribution::from_histogram(&[1, 7, 1]));
    }
}
