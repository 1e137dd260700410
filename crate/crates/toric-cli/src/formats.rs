//! JSON file schemas for fans, divisors and configurations.
//!
//! Files are self-contained: a divisor carries its fan, a configuration
//! carries its surface divisor. Coefficients are 64-bit integers in the
//! files and widen to exact arithmetic on load. The canonical form is
//! two-space-indented JSON with a trailing newline; parsing a canonical
//! file and re-serializing it is byte-identical.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use toric_core::bounds::Config;
use toric_core::lattice::ivec;
use toric_core::toric::{Fan, ToricDivisor};

/// A complete fan: ray generators and maximal cones as ray index lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub lattice_rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// A torus-invariant divisor: one coefficient per fan ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorFile {
    pub fan: FanFile,
    pub coeffs: Vec<i64>,
}

/// A configuration: surface divisor plus auxiliary coefficient rows on
/// the same fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub d: DivisorFile,
    pub e: Vec<Vec<i64>>,
}

impl FanFile {
    pub fn to_fan(&self) -> Result<Arc<Fan>> {
        for (i, ray) in self.rays.iter().enumerate() {
            if ray.len() != self.lattice_rank {
                bail!(
                    "field rays[{}]: expected {} coordinates, found {}",
                    i,
                    self.lattice_rank,
                    ray.len()
                );
            }
        }
        let rays = self.rays.iter().map(|r| ivec(r)).collect();
        Fan::new(self.lattice_rank, rays, self.max_cones.clone())
            .map_err(|e| anyhow!("invalid fan: {}", e))
    }

    pub fn from_fan(fan: &Fan) -> Self {
        FanFile {
            lattice_rank: fan.rank(),
            rays: fan
                .rays()
                .iter()
                .map(|r| r.iter().map(|c| i64::try_from(c).expect("fixture-sized ray")).collect())
                .collect(),
            max_cones: fan.max_cones().to_vec(),
        }
    }
}

impl DivisorFile {
    pub fn to_divisor(&self) -> Result<ToricDivisor> {
        let fan = self.fan.to_fan()?;
        if self.coeffs.len() != fan.rays().len() {
            bail!(
                "field coeffs: expected {} entries (one per ray), found {}",
                fan.rays().len(),
                self.coeffs.len()
            );
        }
        Ok(ToricDivisor::from_i64(&fan, &self.coeffs))
    }
}

impl ConfigFile {
    pub fn to_config(&self) -> Result<Config> {
        let d = self.d.to_divisor()?;
        let fan = d.fan().clone();
        let mut es = Vec::with_capacity(self.e.len());
        for (i, row) in self.e.iter().enumerate() {
            if row.len() != fan.rays().len() {
                bail!(
                    "field e[{}]: expected {} entries (one per ray), found {}",
                    i,
                    fan.rays().len(),
                    row.len()
                );
            }
            es.push(ToricDivisor::from_i64(&fan, row));
        }
        Ok(Config::new(d, es))
    }
}

/// Serializes a schema value in the canonical on-disk form.
pub fn canonical<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("schema types serialize");
    out.push('\n');
    out
}

pub fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow!("{}: {}", path.display(), e))
}

pub fn load_fan(path: &Path) -> Result<Arc<Fan>> {
    load::<FanFile>(path)?.to_fan()
}

pub fn load_divisor(path: &Path) -> Result<ToricDivisor> {
    load::<DivisorFile>(path)?.to_divisor()
}

pub fn load_config(path: &Path) -> Result<Config> {
    load::<ConfigFile>(path)?.to_config()
}
