//! Concrete `P_m` modules for genus-0 covers.
//!
//! For the projective line minus a finite `G`-stable set `S`, `Pic = Z` via
//! the degree, so an `m`-torsion class is determined by its divisor part:
//! `P_m(P^1 \ S)` is the kernel of the degree map `(Z/m)[S] -> Z/m`, with
//! `G` permuting the punctures. Coordinates use the basis `s_i - s_0`
//! (`i >= 1`), where `s_0 < s_1 < ...` are the puncture labels in
//! lexicographic order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gmodule::{GModule, Submodule};
use crate::matrix::{HowellForm, Matrix};
use crate::modarith::{is_prime, Modulus};

/// A genus-0 cover described by its puncture set and the permutation the
/// generator of `G = Z/p^a` induces on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PuncturedCoverSpec {
    pub p: u64,
    pub a: u32,
    pub punctures: Vec<String>,
    /// `generator_image[i]` is the index of the puncture `sigma` sends
    /// `punctures[i]` to.
    pub generator_image: Vec<usize>,
    /// Torsion order, a prime power `l^c` with `l != p`.
    pub m: u64,
}

#[derive(Clone, Debug)]
pub struct PmModule {
    module: GModule,
    /// Puncture labels in lexicographic order.
    points: Vec<String>,
    /// The generator's permutation on `points` indices.
    permutation: Vec<usize>,
}

impl PmModule {
    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn into_module(self) -> GModule {
        self.module
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// `"s_i - s_0"` for every module coordinate.
    pub fn coordinate_labels(&self) -> Vec<String> {
        self.points
            .iter()
            .skip(1)
            .map(|s| format!("[{s}] - [{}]", self.points[0]))
            .collect()
    }

    /// The divisor in `(Z/m)[S]` with module coordinates `v`.
    pub fn to_divisor(&self, v: &[u64]) -> Vec<u64> {
        let m = self.module.modulus();
        let mut out = vec![0; self.points.len()];
        for (k, &x) in v.iter().enumerate() {
            out[k + 1] = x;
            out[0] = m.sub(out[0], x);
        }
        out
    }

    /// Module coordinates of a degree-zero divisor.
    pub fn from_divisor(&self, divisor: &[u64]) -> Result<Vec<u64>> {
        if divisor.len() != self.points.len() {
            return Err(Error::Dimension("divisor length differs from puncture count".into()));
        }
        if self.degree(divisor) != 0 {
            return Err(Error::InvalidInput("divisor has nonzero degree mod m".into()));
        }
        Ok(divisor[1..].iter().map(|&x| self.module.modulus().reduce(x)).collect())
    }

    /// Degree mod `m`.
    pub fn degree(&self, divisor: &[u64]) -> u64 {
        let m = self.module.modulus();
        divisor.iter().fold(0, |acc, &x| m.add(acc, m.reduce(x)))
    }

    /// Pushes a divisor forward along the generator's permutation.
    pub fn act_on_divisor(&self, divisor: &[u64]) -> Vec<u64> {
        let mut out = vec![0; divisor.len()];
        for (i, &x) in divisor.iter().enumerate() {
            out[self.permutation[i]] = x;
        }
        out
    }

    fn index_of(&self, label: &str) -> Result<usize> {
        self.points
            .binary_search_by(|p| p.as_str().cmp(label))
            .map_err(|_| Error::InvalidInput(format!("unknown puncture {label:?}")))
    }
}

fn torsion_modulus(m: u64, p: u64) -> Result<Modulus> {
    let modulus = Modulus::from_prime_power(m)?;
    if modulus.prime() == p {
        return Err(Error::SamePrime(p));
    }
    Ok(modulus)
}

/// Builds the degree-zero divisor module of a genus-0 cover.
pub fn build_pm_genus0(spec: &PuncturedCoverSpec) -> Result<PmModule> {
    if !is_prime(spec.p) {
        return Err(Error::NotPrime(spec.p));
    }
    if spec.a == 0 {
        return Err(Error::InvalidInput("a must be at least 1".into()));
    }
    let r = spec.punctures.len();
    if r == 0 {
        return Err(Error::InvalidInput(
            "empty puncture set (the projective case is not modelled)".into(),
        ));
    }
    if spec.generator_image.len() != r {
        return Err(Error::Dimension(format!(
            "{} generator images for {r} punctures",
            spec.generator_image.len()
        )));
    }
    let mut seen = vec![false; r];
    for &j in &spec.generator_image {
        if j >= r || std::mem::replace(&mut seen[j], true) {
            return Err(Error::InvalidInput("generator image is not a permutation".into()));
        }
    }
    let modulus = torsion_modulus(spec.m, spec.p)?;

    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| spec.punctures[i].cmp(&spec.punctures[j]));
    if order.windows(2).any(|w| spec.punctures[w[0]] == spec.punctures[w[1]]) {
        return Err(Error::InvalidInput("duplicate puncture labels".into()));
    }
    let mut rank_of = vec![0; r];
    for (new, &old) in order.iter().enumerate() {
        rank_of[old] = new;
    }
    let points: Vec<String> = order.iter().map(|&i| spec.punctures[i].clone()).collect();
    let permutation: Vec<usize> = order
        .iter()
        .map(|&old| rank_of[spec.generator_image[old]])
        .collect();

    let group_order = spec
        .p
        .checked_pow(spec.a)
        .ok_or_else(|| Error::InvalidInput("group order overflows".into()))?;
    if !permutation_order_divides(&permutation, group_order) {
        return Err(Error::BadOrder { order: group_order });
    }

    let sigma = degree_zero_action(modulus, &permutation);
    let module = GModule::new(spec.p, spec.a, modulus.prime(), modulus.exponent(), sigma)?;
    Ok(PmModule {
        module,
        points,
        permutation,
    })
}

fn permutation_order_divides(perm: &[usize], n: u64) -> bool {
    let mut visited = vec![false; perm.len()];
    for start in 0..perm.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = perm[i];
            len += 1;
        }
        if n % len != 0 {
            return false;
        }
    }
    true
}

/// Matrix of the permutation action on the basis `s_k - s_0`.
fn degree_zero_action(modulus: Modulus, perm: &[usize]) -> Matrix {
    let n = perm.len().saturating_sub(1);
    let mut sigma = Matrix::zeros(modulus, n, n);
    for k in 0..n {
        // sigma(s_{k+1} - s_0) = (s_{perm(k+1)} - s_0) - (s_{perm(0)} - s_0).
        let plus = perm[k + 1];
        if plus != 0 {
            let v = modulus.add(sigma.get(plus - 1, k), 1);
            sigma.set(plus - 1, k, v);
        }
        let minus = perm[0];
        if minus != 0 {
            let v = modulus.sub(sigma.get(minus - 1, k), 1);
            sigma.set(minus - 1, k, v);
        }
    }
    sigma
}

/// The cover `t -> t^p - t` of the line, branched only at infinity.
/// Punctures are the fibre `F_p` over 0 together with `inf`, and the
/// generator acts by `t -> t + 1`.
pub fn artin_schreier_example(p: u64, m: u64) -> Result<PmModule> {
    build_pm_genus0(&artin_schreier_spec(p, m)?)
}

pub fn artin_schreier_spec(p: u64, m: u64) -> Result<PuncturedCoverSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut punctures: Vec<String> = (0..p).map(|t| t.to_string()).collect();
    punctures.push("inf".into());
    let mut generator_image: Vec<usize> = (0..p as usize).map(|t| (t + 1) % p as usize).collect();
    generator_image.push(p as usize);
    Ok(PuncturedCoverSpec {
        p,
        a: 1,
        punctures,
        generator_image,
        m,
    })
}

/// Degree-zero permutation module on a disjoint union of cyclic orbits.
pub fn synthetic_module(p: u64, a: u32, orbit_sizes: &[u64], m: u64) -> Result<PmModule> {
    build_pm_genus0(&synthetic_spec(p, a, orbit_sizes, m)?)
}

pub fn synthetic_spec(p: u64, a: u32, orbit_sizes: &[u64], m: u64) -> Result<PuncturedCoverSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if orbit_sizes.is_empty() {
        return Err(Error::InvalidInput("at least one orbit is required".into()));
    }
    let group_order = p
        .checked_pow(a)
        .ok_or_else(|| Error::InvalidInput("group order overflows".into()))?;
    if let Some(bad) = orbit_sizes.iter().find(|&&s| s == 0 || group_order % s != 0) {
        return Err(Error::InvalidInput(format!(
            "orbit size {bad} does not divide {p}^{a}"
        )));
    }
    let width = orbit_sizes.len().to_string().len();
    let inner = orbit_sizes.iter().max().map_or(1, |s| s.to_string().len());
    let mut punctures = Vec::new();
    let mut generator_image = Vec::new();
    for (k, &size) in orbit_sizes.iter().enumerate() {
        let base = punctures.len();
        for t in 0..size as usize {
            punctures.push(format!("o{k:0width$}.{t:0inner$}"));
            generator_image.push(base + (t + 1) % size as usize);
        }
    }
    Ok(PuncturedCoverSpec {
        p,
        a,
        punctures,
        generator_image,
        m,
    })
}

/// Evidence that an embedded submodule is `sigma`-stable: for every
/// generator, whether its image lies in the span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilityCertificate {
    pub generators: Vec<Vec<u64>>,
    pub images_in_span: Vec<bool>,
}

impl StabilityCertificate {
    pub fn holds(&self) -> bool {
        self.images_in_span.iter().all(|&b| b)
    }
}

/// The degree-zero divisors supported on a `G`-stable subset `subset` of
/// the punctures, as a submodule of the full module.
pub fn pm_inclusion(pm: &PmModule, subset: &[String]) -> Result<(Submodule, StabilityCertificate)> {
    let mut idx = subset
        .iter()
        .map(|s| pm.index_of(s))
        .collect::<Result<Vec<_>>>()?;
    idx.sort_unstable();
    idx.dedup();
    let mut member = vec![false; pm.points.len()];
    for &i in &idx {
        member[i] = true;
    }
    if let Some(&bad) = idx.iter().find(|&&i| !member[pm.permutation[i]]) {
        return Err(Error::NotGStable(pm.points[bad].clone()));
    }
    let module = &pm.module;
    let m = module.modulus();
    let generators = match idx.split_first() {
        Some((&base, rest)) => rest
            .iter()
            .map(|&i| {
                let mut div = vec![0; pm.points.len()];
                div[i] = 1;
                div[base] = m.neg(1);
                pm.from_divisor(&div)
            })
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let span = HowellForm::from_rows(m, module.rank(), generators.clone());
    let images_in_span = generators
        .iter()
        .map(|g| span.contains(&module.sigma().apply(g)))
        .collect();
    let certificate = StabilityCertificate {
        generators,
        images_in_span,
    };
    if !certificate.holds() {
        return Err(Error::Inconsistent(
            "stable puncture subset produced a non-stable submodule".into(),
        ));
    }
    let sub = module.submodule_from_rows(span.rows().to_vec())?;
    Ok((sub, certificate))
}
