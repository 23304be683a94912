//! Serialization helpers: every count is written as a decimal string.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::Serializer;

pub fn dec<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn hex<S: Serializer>(v: &u32, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{v:#x}"))
}

pub fn dec_seq<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn dec_map<K: Display, V: Display, S: Serializer>(
    v: &BTreeMap<K, V>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(v.len()))?;
    for (k, x) in v {
        map.serialize_entry(&k.to_string(), &x.to_string())?;
    }
    map.end()
}

pub fn dec_set_map<K: Display, V: Display, S: Serializer>(
    v: &BTreeMap<K, BTreeSet<V>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(v.len()))?;
    for (k, set) in v {
        let items: Vec<String> = set.iter().map(|x| x.to_string()).collect();
        map.serialize_entry(&k.to_string(), &items)?;
    }
    map.end()
}

pub fn dec_nested_map<K: Display, K2: Display, V: Display, S: Serializer>(
    v: &BTreeMap<K, BTreeMap<K2, V>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(v.len()))?;
    for (k, inner) in v {
        let inner: BTreeMap<String, String> = inner
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        map.serialize_entry(&k.to_string(), &inner)?;
    }
    map.end()
}
