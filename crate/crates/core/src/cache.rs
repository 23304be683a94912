//! On-disk cache of enumerated weight distributions.
//!
//! One CSV file per `(m, reduction_poly)` with header `key,weight,count`;
//! every row repeats the key so files can be concatenated.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::code::{enumerate_weights, CodeSpec};
use crate::distribution::WeightDistribution;
use crate::error::{Error, Result};
use crate::gf2m::FieldParams;

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    key: String,
    weight: u64,
    count: String,
}

pub fn cache_key(params: FieldParams) -> String {
    format!("m{}-poly{:#x}", params.m, params.reduction_poly)
}

pub fn cache_path(dir: &Path, params: FieldParams) -> PathBuf {
    dir.join(format!("weights-{}.csv", cache_key(params)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Computed,
}

pub fn store(dir: &Path, params: FieldParams, dist: &WeightDistribution) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, params);
    let tmp = path.with_extension("csv.tmp");
    {
        let mut w = csv::Writer::from_path(&tmp)?;
        let key = cache_key(params);
        for (weight, count) in dist.iter() {
            w.serialize(Row {
                key: key.clone(),
                weight,
                count: count.to_string(),
            })?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Reads a cached distribution. `Ok(None)` when no file exists; an error if
/// the file is present but malformed or belongs to other parameters.
pub fn load(dir: &Path, params: FieldParams) -> Result<Option<WeightDistribution>> {
    let path = cache_path(dir, params);
    if !path.exists() {
        return Ok(None);
    }
    let key = cache_key(params);
    let mut reader = csv::Reader::from_path(&path)?;
    let mut dist = WeightDistribution::new();
    for row in reader.deserialize() {
        let row: Row = row?;
        if row.key != key {
            return Err(Error::Cache(format!(
                "{}: key {} != {key}",
                path.display(),
                row.key
            )));
        }
        let count: BigUint = row
            .count
            .parse()
            .map_err(|_| Error::Cache(format!("{}: bad count {:?}", path.display(), row.count)))?;
        dist.add(row.weight, count);
    }
    let expected = BigUint::from(1u8) << (4 * params.m as usize);
    if dist.total() != expected {
        return Err(Error::Cache(format!(
            "{}: counts sum to {} instead of {expected}",
            path.display(),
            dist.total()
        )));
    }
    Ok(Some(dist))
}

/// Enumerates unless a cached copy exists under `dir`.
pub fn enumerate_cached(
    spec: &CodeSpec,
    threads: usize,
    dir: Option<&Path>,
) -> Result<(WeightDistribution, CacheStatus)> {
    let params = spec.field_params();
    if let Some(dir) = dir {
        if let Some(d) = load(dir, params)? {
            return Ok((d, CacheStatus::Hit));
        }
    }
    let d = enumerate_weights(spec, threads)?;
    if let Some(dir) = dir {
        store(dir, params, &d)?;
    }
    Ok((d, CacheStatus::Computed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_hit() {
        let dir = tempfile::tempdir().unwrap();
        let spec = CodeSpec::with_degree(3).unwrap();
        let (d1, s1) = enumerate_cached(&spec, 2, Some(dir.path())).unwrap();
        assert_eq!(s1, CacheStatus::Computed);
        let bytes1 = fs::read(cache_path(dir.path(), spec.field_params())).unwrap();
        let (d2, s2) = enumerate_cached(&spec, 2, Some(dir.path())).unwrap();
        assert_eq!(s2, CacheStatus::Hit);
        assert_eq!(d1, d2);
        store(dir.path(), spec.field_params(), &d2).unwrap();
        let bytes2 = fs::read(cache_path(dir.path(), spec.field_params())).unwrap();
        assert_eq!(bytes1, bytes2);
        let text = String::from_utf8(bytes1).unwrap();
        assert!(
            text.starts_with("key,weight,count\nm3-poly0xb,0,1\n"),
            "{text}"
        );
    }

    #[test]
    fn rejects_foreign_or_truncated_file() {
        let dir = tempfile::tempdir().unwrap();
        let params = FieldParams::new(3).unwrap();
        fs::write(
            cache_path(dir.path(), params),
            "key,weight,count\nm5-poly0x25,0,1\n",
        )
        .unwrap();
        assert!(matches!(load(dir.path(), params), Err(Error::Cache(_))));
        fs::write(
            cache_path(dir.path(), params),
            "key,weight,count\nm3-poly0xb,0,1\n",
        )
        .unwrap();
        assert!(matches!(load(dir.path(), params), Err(Error::Cache(_))));
    }

    #[test]
    fn missing_file_is_none() {
        let dir = tempfile::tempdir().unwrap();
        assert!(load(dir.path(), FieldParams::new(4).unwrap())
            .unwrap()
            .is_none());
    }
}
