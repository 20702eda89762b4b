use serde::{Deserialize, Serialize};

use embedkit_core::gmodule::GModule;
use embedkit_core::matrix::Matrix;
use embedkit_core::modarith::Modulus;
use embedkit_core::pm_builder::{artin_schreier_spec, build_pm_genus0, synthetic_spec, PmModule, PuncturedCoverSpec};

use crate::error::{At, CliError};

/// A module given directly by its generator matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ModuleParams {
    pub p: u64,
    pub a: u32,
    pub l: u64,
    pub c: u32,
    /// Row-major matrix of the generator acting on column vectors.
    pub sigma: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ArtinSchreierParams {
    pub p: u64,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SyntheticParams {
    pub p: u64,
    pub a: u32,
    pub orbit_sizes: Vec<u64>,
    pub m: u64,
}

/// Where a module comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Source {
    Module(ModuleParams),
    Cover(PuncturedCoverSpec),
    ArtinSchreier(ArtinSchreierParams),
    Synthetic(SyntheticParams),
}

impl Source {
    /// The cover description, or `None` for a bare module.
    pub fn cover_spec(&self, pointer: &str) -> Result<Option<PuncturedCoverSpec>, CliError> {
        let spec = match self {
            Source::Module(_) => return Ok(None),
            Source::Cover(spec) => spec.clone(),
            Source::ArtinSchreier(p) => artin_schreier_spec(p.p, p.m).at(pointer)?,
            Source::Synthetic(p) => synthetic_spec(p.p, p.a, &p.orbit_sizes, p.m).at(pointer)?,
        };
        Ok(Some(spec))
    }

    pub fn torsion(&self) -> u64 {
        match self {
            Source::Module(m) => m.l.saturating_pow(m.c),
            Source::Cover(spec) => spec.m,
            Source::ArtinSchreier(p) => p.m,
            Source::Synthetic(p) => p.m,
        }
    }

    pub fn p(&self) -> u64 {
        match self {
            Source::Module(m) => m.p,
            Source::Cover(spec) => spec.p,
            Source::ArtinSchreier(p) => p.p,
            Source::Synthetic(p) => p.p,
        }
    }

    pub fn pm(&self, pointer: &str) -> Result<PmModule, CliError> {
        match self.cover_spec(pointer)? {
            Some(spec) => build_pm_genus0(&spec).at(pointer),
            None => Err(CliError::validation(
                pointer,
                "a cover description (cover, artinSchreier or synthetic) is required here",
            )),
        }
    }

    /// The same cover with torsion order `m`; bare modules are returned as is.
    pub fn with_torsion(&self, m: u64) -> Source {
        match self {
            Source::Module(_) => self.clone(),
            Source::Cover(spec) => Source::Cover(PuncturedCoverSpec { m, ..spec.clone() }),
            Source::ArtinSchreier(p) => Source::ArtinSchreier(ArtinSchreierParams { m, ..p.clone() }),
            Source::Synthetic(p) => Source::Synthetic(SyntheticParams { m, ..p.clone() }),
        }
    }

    pub fn module(&self, seed: u64, pointer: &str) -> Result<GModule, CliError> {
        match self {
            Source::Module(mp) => {
                let modulus = Modulus::new(mp.l, mp.c).at(pointer)?;
                let sigma = Matrix::from_rows(modulus, &mp.sigma).at(&format!("{pointer}/sigma"))?;
                GModule::with_seed(mp.p, mp.a, mp.l, mp.c, sigma, seed).at(pointer)
            }
            _ => {
                let pm = self.pm(pointer)?;
                let m = pm.module();
                GModule::with_seed(m.p(), m.a(), m.l(), m.c(), m.sigma().clone(), seed).at(pointer)
            }
        }
    }
}
