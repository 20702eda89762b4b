//! Existence criteria and exact counts for `G`-submodules of a given type.
//!
//! Over `F_l` the module is semisimple: `M = F_l^(n_0) + sum_{b,i} (F_l[x]/P_bi)^(gamma_bi)`,
//! every submodule has the same shape with smaller multiplicities, and the
//! submodules of a fixed shape are counted by Gaussian binomials over
//! `F_(l^d_b)`. Over `Z/l^c` only a sufficient criterion is available.
//!
//! Since `|H|` and `|G|` are coprime there is a single extension class for
//! each action, so "number of solutions" and "number of submodules
//! isomorphic to `H`" are the same integer.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gmodule::{fixed_submodule, kernel_of_poly, GModule, GradedDims};
use crate::modarith::{factor_small, is_prime, multiplicative_order, Poly};

/// Invariants of a `c = 1` module at one level `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelInvariants {
    pub b: u32,
    /// `d_b`, the order of `l` mod `p^b`.
    pub degree: u64,
    /// `n_b = dim ker Phi_{p^b}(sigma)`.
    pub kernel_dim: u64,
    /// `gamma_bi`, one per factor of `Phi_{p^b}` mod `l`; empty when only
    /// `n_b` is known.
    pub gamma: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FieldInvariants {
    pub l: u64,
    /// `n_0 = dim M^G`.
    pub n0: u64,
    pub levels: Vec<LevelInvariants>,
}

impl FieldInvariants {
    /// Invariants known only through `n_0` and the `n_b`.
    pub fn from_dimensions(p: u64, l: u64, n0: u64, kernel_dims: &[u64]) -> Result<Self> {
        let levels = kernel_dims
            .iter()
            .enumerate()
            .map(|(k, &n_b)| {
                let b = k as u32 + 1;
                Ok(LevelInvariants {
                    b,
                    degree: multiplicative_order(l, p, b)?,
                    kernel_dim: n_b,
                    gamma: Vec::new(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { l, n0, levels })
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.levels.iter().map(|lv| lv.degree).collect()
    }

    pub fn gammas(&self) -> Vec<Vec<u64>> {
        self.levels.iter().map(|lv| lv.gamma.clone()).collect()
    }
}

/// `n_0`, `n_b` and `gamma_bi` of a module over `F_l`.
pub fn invariants_of(module: &GModule) -> Result<FieldInvariants> {
    if module.c() != 1 {
        return Err(Error::InvalidInput(format!(
            "field invariants need c = 1 (got c = {}); use graded_dims for prime-power moduli",
            module.c()
        )));
    }
    let n0 = fixed_submodule(module)?.log_size();
    let fact = module.factorization();
    let mut levels = Vec::new();
    for level in &fact.levels {
        let phi = level
            .factors_mod_l
            .iter()
            .try_fold(Poly::one(module.modulus()), |acc, f| acc.try_mul(f))?;
        let kernel_dim = kernel_of_poly(module, &phi)?.log_size();
        let gamma = level
            .factors_mod_l
            .iter()
            .map(|f| {
                let dim = kernel_of_poly(module, f)?.log_size();
                if dim % level.degree != 0 {
                    return Err(Error::Inconsistent(format!(
                        "kernel of an irreducible factor has dimension {dim}, not a multiple of {}",
                        level.degree
                    )));
                }
                Ok(dim / level.degree)
            })
            .collect::<Result<Vec<_>>>()?;
        if gamma.iter().sum::<u64>() * level.degree != kernel_dim {
            return Err(Error::Inconsistent(format!(
                "n_{} = {kernel_dim} does not match the factor kernels {gamma:?}",
                level.b
            )));
        }
        levels.push(LevelInvariants {
            b: level.b,
            degree: level.degree,
            kernel_dim,
            gamma,
        });
    }
    Ok(FieldInvariants {
        l: module.l(),
        n0,
        levels,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    /// The sufficient criterion failed; existence is undecided.
    SufficientOnlyUnknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    FieldCriterion,
    SquareFree,
    PrimePowerSufficient,
}

/// One summand of a bounded representation: up to `max` copies of `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Part {
    pub b: u32,
    pub degree: u64,
    pub max: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Representation {
    /// Copies of the trivial summand (`u`, resp. `e'_i`).
    pub unit: u64,
    /// Copies per level (`v_b`, resp. `e''_bi`).
    pub counts: Vec<u64>,
}

/// Whether `target = unit + sum_b counts_b * degree_b` within the bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RepresentationCheck {
    /// Prime `l` the check runs over.
    pub prime: u64,
    /// Exponent `i` for prime-power checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<usize>,
    pub target: u64,
    pub unit_max: u64,
    pub parts: Vec<Part>,
    pub witness: Option<Representation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolvabilityReport {
    pub verdict: Verdict,
    pub criterion: Criterion,
    pub checks: Vec<RepresentationCheck>,
}

impl SolvabilityReport {
    /// The witness of the first check, for single-prime criteria.
    pub fn witness(&self) -> Option<&Representation> {
        self.checks.first().and_then(|c| c.witness.as_ref())
    }
}

/// Lexicographically smallest `(unit, counts)` with
/// `target = unit + sum counts_k * parts_k.degree`, `unit <= unit_max`,
/// `counts_k <= parts_k.max`.
pub fn bounded_representation(target: u64, unit_max: u64, parts: &[Part]) -> Option<Representation> {
    let t = target as usize;
    // reachable[k][r]: r is a sum over parts[k..] within bounds.
    let mut reachable = vec![vec![false; t + 1]; parts.len() + 1];
    reachable[parts.len()][0] = true;
    for k in (0..parts.len()).rev() {
        let (d, max) = (parts[k].degree as usize, parts[k].max as usize);
        for r in 0..=t {
            reachable[k][r] = (0..=max)
                .take_while(|&v| v * d <= r)
                .any(|v| reachable[k + 1][r - v * d]);
        }
    }
    let unit = (0..=unit_max.min(target)).find(|&u| reachable[0][t - u as usize])?;
    let mut rest = t - unit as usize;
    let mut counts = Vec::with_capacity(parts.len());
    for (k, part) in parts.iter().enumerate() {
        let d = part.degree as usize;
        let v = (0..=part.max as usize)
            .take_while(|&v| v * d <= rest)
            .find(|&v| reachable[k + 1][rest - v * d])
            .expect("reachability table guarantees a choice");
        counts.push(v as u64);
        rest -= v * d;
    }
    Some(Representation { unit, counts })
}

fn field_check(n: u64, inv: &FieldInvariants) -> Result<RepresentationCheck> {
    let parts = inv
        .levels
        .iter()
        .map(|lv| {
            if lv.degree == 0 {
                return Err(Error::InvalidInput("level degree must be positive".into()));
            }
            Ok(Part {
                b: lv.b,
                degree: lv.degree,
                max: lv.kernel_dim / lv.degree,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = bounded_representation(n, inv.n0, &parts);
    Ok(RepresentationCheck {
        prime: inv.l,
        exponent: None,
        target: n,
        unit_max: inv.n0,
        parts,
        witness,
    })
}

/// Exact criterion for `H = (Z/l)^n`: yes iff `n = u + sum v_b d_b` with
/// `u <= n_0` and `v_b <= n_b / d_b`.
pub fn solvable_field(n: u64, inv: &FieldInvariants) -> Result<SolvabilityReport> {
    let check = field_check(n, inv)?;
    Ok(SolvabilityReport {
        verdict: if check.witness.is_some() {
            Verdict::Yes
        } else {
            Verdict::No
        },
        criterion: Criterion::FieldCriterion,
        checks: vec![check],
    })
}

/// Exact criterion for `H = (Z/m)^n`, `m` squarefree: the field criterion
/// must hold for every prime divisor of `m`.
pub fn solvable_squarefree(
    p: u64,
    m: u64,
    n: u64,
    per_prime: &[FieldInvariants],
) -> Result<SolvabilityReport> {
    let primes = squarefree_primes(p, m)?;
    let mut given: Vec<u64> = per_prime.iter().map(|inv| inv.l).collect();
    given.sort_unstable();
    if given != primes {
        return Err(Error::InvalidInput(format!(
            "invariants supplied for primes {given:?}, but m = {m} has prime divisors {primes:?}"
        )));
    }
    let mut checks = per_prime
        .iter()
        .map(|inv| field_check(n, inv))
        .collect::<Result<Vec<_>>>()?;
    checks.sort_by_key(|c| c.prime);
    let verdict = if checks.iter().all(|c| c.witness.is_some()) {
        Verdict::Yes
    } else {
        Verdict::No
    };
    Ok(SolvabilityReport {
        verdict,
        criterion: Criterion::SquareFree,
        checks,
    })
}

/// Prime divisors of a squarefree `m` coprime to `p`.
pub fn squarefree_primes(p: u64, m: u64) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("m = {m} must be at least 2")));
    }
    let factors = factor_small(m);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Err(Error::InvalidInput(format!("m = {m} is not squarefree")));
    }
    if factors.iter().any(|&(q, _)| q == p) {
        return Err(Error::InvalidInput(format!("m = {m} is not prime to p = {p}")));
    }
    Ok(factors.into_iter().map(|(q, _)| q).collect())
}

/// Sufficient criterion for `H = sum_i (Z/l^i)^(e_i)`; `exponents[i - 1] = e_i`.
///
/// Never answers [`Verdict::No`]: a failed representation only means the
/// criterion is silent.
pub fn solvable_prime_power(l: u64, exponents: &[u64], dims: &GradedDims) -> Result<SolvabilityReport> {
    let c = dims.c() as usize;
    if exponents.len() != c {
        return Err(Error::InvalidInput(format!(
            "expected {c} exponents e_1..e_{c}, got {}",
            exponents.len()
        )));
    }
    if dims.components.iter().any(|g| g.dims.len() != c + 1) {
        return Err(Error::InvalidInput("component gradings have the wrong length".into()));
    }
    let levels = dims.level_degrees();
    let mut checks = Vec::with_capacity(c);
    for i in 1..=c {
        let unit_max = dims.fixed[i - 1].checked_sub(dims.fixed[i]).ok_or_else(|| {
            Error::InvalidInput(format!("fixed-part grading increases: {:?}", dims.fixed))
        })?;
        let parts = levels
            .iter()
            .map(|&(b, degree)| {
                let max = dims
                    .components
                    .iter()
                    .filter(|g| g.b == b)
                    .map(|g| {
                        g.dims[i - 1].checked_sub(g.dims[i]).ok_or_else(|| {
                            Error::InvalidInput(format!("component grading increases: {:?}", g.dims))
                        })
                    })
                    .sum::<Result<u64>>()?;
                Ok(Part { b, degree, max })
            })
            .collect::<Result<Vec<_>>>()?;
        let witness = bounded_representation(exponents[i - 1], unit_max, &parts);
        checks.push(RepresentationCheck {
            prime: l,
            exponent: Some(i),
            target: exponents[i - 1],
            unit_max,
            parts,
            witness,
        });
    }
    let verdict = if checks.iter().all(|c| c.witness.is_some()) {
        Verdict::Yes
    } else {
        Verdict::SufficientOnlyUnknown
    };
    Ok(SolvabilityReport {
        verdict,
        criterion: Criterion::PrimePowerSufficient,
        checks,
    })
}

/// Inputs of the submodule count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CountInput {
    pub l: u64,
    /// `d_b` per level.
    pub degrees: Vec<u64>,
    /// `gamma[b - 1][i - 1]`: multiplicity of `F_l[x]/P_bi` in the module.
    pub gamma: Vec<Vec<u64>>,
    /// Same shape as `gamma`, for `H`.
    pub gamma_prime: Vec<Vec<u64>>,
    pub n0: u64,
    pub u: u64,
}

impl CountInput {
    pub fn from_invariants(inv: &FieldInvariants, u: u64, gamma_prime: Vec<Vec<u64>>) -> Self {
        Self {
            l: inv.l,
            degrees: inv.degrees(),
            gamma: inv.gammas(),
            gamma_prime,
            n0: inv.n0,
            u,
        }
    }
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// One factor `n/n'` of the count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RatioFactor {
    /// `(b, i)` for a nontrivial isotypic part; `None` for the fixed part.
    pub index: Option<(u32, usize)>,
    #[serde(serialize_with = "decimal")]
    pub q: BigUint,
    pub ambient: u64,
    pub sub: u64,
    #[serde(serialize_with = "decimal")]
    pub numerator: BigUint,
    #[serde(serialize_with = "decimal")]
    pub denominator: BigUint,
    #[serde(serialize_with = "decimal")]
    pub ratio: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubmoduleCount {
    #[serde(serialize_with = "decimal")]
    pub value: BigUint,
    pub factors: Vec<RatioFactor>,
    pub fixed: Option<RatioFactor>,
    /// Set when the requested shape does not fit in the module; `value` is 0.
    pub bound_violation: Option<String>,
}

/// `prod_{r=0}^{k-1} sum_{s=r}^{n-1} q^s`, the literal product in the count.
fn literal_product(n: u64, k: u64, q: &BigUint) -> BigUint {
    let mut acc = BigUint::one();
    for r in 0..k {
        let mut sum = BigUint::zero();
        for s in r..n {
            sum += q.pow(s as u32);
        }
        acc *= sum;
    }
    acc
}

/// Gaussian binomial `[n choose k]_q = prod_{r<k} (q^n - q^r)/(q^k - q^r)`.
pub fn gaussian_binomial(n: u64, k: u64, q: &BigUint) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for r in 0..k {
        num *= q.pow(n as u32) - q.pow(r as u32);
        den *= q.pow(k as u32) - q.pow(r as u32);
    }
    num / den
}

fn ratio_factor(index: Option<(u32, usize)>, q: BigUint, ambient: u64, sub: u64) -> Result<RatioFactor> {
    let numerator = literal_product(ambient, sub, &q);
    let denominator = literal_product(sub, sub, &q);
    if !(&numerator % &denominator).is_zero() {
        return Err(Error::Inconsistent(format!(
            "count ratio {numerator}/{denominator} is not integral"
        )));
    }
    let ratio = &numerator / &denominator;
    if ratio != gaussian_binomial(ambient, sub, &q) {
        return Err(Error::Inconsistent(format!(
            "count ratio {ratio} disagrees with the Gaussian binomial [{ambient} choose {sub}]_{q}"
        )));
    }
    Ok(RatioFactor {
        index,
        q,
        ambient,
        sub,
        numerator,
        denominator,
        ratio,
    })
}

/// Number of `G`-submodules of a module over `F_l` isomorphic to the shape
/// `(u; gamma'_bi)`.
pub fn count_nsext(input: &CountInput) -> Result<SubmoduleCount> {
    if !is_prime(input.l) {
        return Err(Error::NotPrime(input.l));
    }
    let levels = input.degrees.len();
    if input.gamma.len() != levels || input.gamma_prime.len() != levels {
        return Err(Error::InvalidInput(format!(
            "{levels} level degrees but {} gamma rows and {} gamma' rows",
            input.gamma.len(),
            input.gamma_prime.len()
        )));
    }
    for (b, (g, gp)) in input.gamma.iter().zip(&input.gamma_prime).enumerate() {
        if g.len() != gp.len() {
            return Err(Error::InvalidInput(format!(
                "level {}: {} gamma entries but {} gamma' entries",
                b + 1,
                g.len(),
                gp.len()
            )));
        }
    }
    let mut violations = Vec::new();
    if input.u > input.n0 {
        violations.push(format!("u = {} exceeds n0 = {}", input.u, input.n0));
    }
    for (b, (g, gp)) in input.gamma.iter().zip(&input.gamma_prime).enumerate() {
        for (i, (&x, &y)) in g.iter().zip(gp).enumerate() {
            if y > x {
                violations.push(format!("gamma'_{},{} = {y} exceeds gamma = {x}", b + 1, i + 1));
            }
        }
    }
    if !violations.is_empty() {
        return Ok(SubmoduleCount {
            value: BigUint::zero(),
            factors: Vec::new(),
            fixed: None,
            bound_violation: Some(violations.join("; ")),
        });
    }
    let l = BigUint::from(input.l);
    let mut value = BigUint::one();
    let mut factors = Vec::new();
    for (b, ((g, gp), &d)) in input
        .gamma
        .iter()
        .zip(&input.gamma_prime)
        .zip(&input.degrees)
        .enumerate()
    {
        let q = l.pow(d as u32);
        for (i, (&x, &y)) in g.iter().zip(gp).enumerate() {
            let f = ratio_factor(Some((b as u32 + 1, i + 1)), q.clone(), x, y)?;
            value *= &f.ratio;
            factors.push(f);
        }
    }
    let fixed = ratio_factor(None, l, input.n0, input.u)?;
    value *= &fixed.ratio;
    Ok(SubmoduleCount {
        value,
        factors,
        fixed: Some(fixed),
        bound_violation: None,
    })
}

/// Isomorphism type requested for the kernel `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum HShape {
    /// `(Z/l)^n`.
    #[serde(rename_all = "camelCase")]
    Field {
        l: u64,
        n: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        action: Option<FieldAction>,
    },
    /// `sum_i (Z/l^i)^(e_i)`, `exponents[i - 1] = e_i`.
    #[serde(rename_all = "camelCase")]
    PrimePower {
        l: u64,
        c: u32,
        exponents: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        action: Option<PrimePowerAction>,
    },
    /// `(Z/m)^n`, `m` squarefree.
    #[serde(rename_all = "camelCase")]
    SquareFree { m: u64, n: u64 },
}

/// Action data for `(Z/l)^n`: `u = dim H^G` and `gamma'_bi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FieldAction {
    pub u: u64,
    pub gamma_prime: Vec<Vec<u64>>,
}

/// Action data over `Z/l^c`: multiplicities of `Z/l^i` (`trivial[i - 1]`)
/// and of `Z[zeta_{p^b}]/Q_bj^i` (`components[b - 1][j - 1][i - 1]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimePowerAction {
    pub trivial: Vec<u64>,
    pub components: Vec<Vec<Vec<u64>>>,
}

impl HShape {
    /// Checks the internal constraints that do not depend on a module.
    pub fn validate(&self, p: u64) -> Result<()> {
        match self {
            HShape::Field { l, action, .. } => {
                if !is_prime(*l) {
                    return Err(Error::NotPrime(*l));
                }
                if *l == p {
                    return Err(Error::SamePrime(p));
                }
                let _ = action;
                Ok(())
            }
            HShape::PrimePower { l, c, exponents, action } => {
                if !is_prime(*l) {
                    return Err(Error::NotPrime(*l));
                }
                if *l == p {
                    return Err(Error::SamePrime(p));
                }
                if exponents.len() != *c as usize {
                    return Err(Error::InvalidInput(format!(
                        "{} exponents for c = {c}",
                        exponents.len()
                    )));
                }
                if let Some(act) = action {
                    if act.trivial.len() != *c as usize
                        || act.components.iter().flatten().any(|v| v.len() != *c as usize)
                    {
                        return Err(Error::InvalidInput(
                            "action multiplicities must have one entry per exponent".into(),
                        ));
                    }
                }
                Ok(())
            }
            HShape::SquareFree { m, .. } => squarefree_primes(p, *m).map(|_| ()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmodule::graded_dims;
    use crate::matrix::Matrix;
    use crate::modarith::Modulus;
    use crate::pm_builder::{artin_schreier_example, synthetic_module};

    fn inv(p: u64, l: u64, n0: u64, nb: &[u64]) -> FieldInvariants {
        FieldInvariants::from_dimensions(p, l, n0, nb).unwrap()
    }

    #[test]
    fn invariants_examples() {
        let pm = artin_schreier_example(3, 2).unwrap();
        let i = invariants_of(pm.module()).unwrap();
        assert_eq!(i.n0, 1);
        assert_eq!(i.levels[0].kernel_dim, 2);
        assert_eq!(i.levels[0].gamma, vec![1]);

        let f5 = Modulus::new(5, 1).unwrap();
        let triv = GModule::new(3, 2, 5, 1, Matrix::identity(f5, 4)).unwrap();
        let i = invariants_of(&triv).unwrap();
        assert_eq!(i.n0, 4);
        assert!(i.levels.iter().all(|lv| lv.kernel_dim == 0));

        let f2 = Modulus::new(2, 1).unwrap();
        let perm: Vec<usize> = (0..7).map(|i| (i + 1) % 7).collect();
        let regular = GModule::new(7, 1, 2, 1, Matrix::permutation(f2, &perm)).unwrap();
        let i = invariants_of(&regular).unwrap();
        assert_eq!(i.n0, 1);
        assert_eq!(i.levels[0].kernel_dim, 6);
        assert_eq!(i.levels[0].gamma, vec![1, 1]);

        let z4 = synthetic_module(3, 1, &[3], 4).unwrap();
        assert!(invariants_of(z4.module()).is_err());
    }

    #[test]
    fn field_examples() {
        let i = inv(3, 2, 1, &[2]);
        let r = solvable_field(3, &i).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.witness(), Some(&Representation { unit: 1, counts: vec![1] }));
        assert_eq!(solvable_field(4, &i).unwrap().verdict, Verdict::No);
        let r = solvable_field(0, &i).unwrap();
        assert_eq!(r.witness(), Some(&Representation { unit: 0, counts: vec![0] }));
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        let parts = [
            Part { b: 1, degree: 2, max: 3 },
            Part { b: 2, degree: 3, max: 2 },
        ];
        // 6 = 0 + 0*2 + 2*3 is smaller than 0 + 3*2 + 0*3 in (u, v_1, v_2) order.
        assert_eq!(
            bounded_representation(6, 0, &parts),
            Some(Representation { unit: 0, counts: vec![0, 2] })
        );
        assert_eq!(
            bounded_representation(7, 1, &parts),
            Some(Representation { unit: 0, counts: vec![2, 1] })
        );
        assert_eq!(bounded_representation(13, 0, &parts), None);
    }

    #[test]
    fn squarefree_examples() {
        // l = 2: n0 = 1, n_1 = 2 (d = 2); l = 3 over p = 2: d = 1.
        let two = inv(3, 2, 1, &[2]);
        let seven = inv(3, 7, 0, &[2]);
        let r = solvable_squarefree(3, 14, 2, &[two.clone(), seven.clone()]).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.criterion, Criterion::SquareFree);

        let two = inv(5, 2, 3, &[0]);
        let three = inv(5, 3, 2, &[0]);
        assert_eq!(solvable_squarefree(5, 6, 2, &[two.clone(), three.clone()]).unwrap().verdict, Verdict::Yes);
        let two_big = inv(5, 2, 3, &[0]);
        let r = solvable_squarefree(5, 6, 3, &[two_big, three.clone()]).unwrap();
        assert_eq!(r.verdict, Verdict::No);
        assert!(r.checks[0].witness.is_some());
        assert!(r.checks[1].witness.is_none());
        assert_eq!(solvable_squarefree(5, 6, 0, &[two.clone(), three.clone()]).unwrap().verdict, Verdict::Yes);

        assert!(solvable_squarefree(5, 12, 1, &[two.clone(), three.clone()]).is_err());
        assert!(solvable_squarefree(5, 10, 1, &[two.clone()]).is_err());
        assert!(solvable_squarefree(5, 6, 1, &[two]).is_err());
    }

    #[test]
    fn prime_power_examples() {
        let f = Modulus::new(2, 2).unwrap();
        let m = GModule::new(3, 1, 2, 2, Matrix::permutation(f, &[1, 2, 0])).unwrap();
        let dims = graded_dims(&m).unwrap();
        let r = solvable_prime_power(2, &[0, 1], &dims).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.checks[1].witness, Some(Representation { unit: 1, counts: vec![0] }));
        let r = solvable_prime_power(2, &[0, 3], &dims).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.checks[1].witness, Some(Representation { unit: 1, counts: vec![1] }));
        let r = solvable_prime_power(2, &[1, 0], &dims).unwrap();
        assert_eq!(r.verdict, Verdict::SufficientOnlyUnknown);
        assert!(solvable_prime_power(2, &[1], &dims).is_err());
    }

    #[test]
    fn count_examples() {
        let five = count_nsext(&CountInput {
            l: 2,
            degrees: vec![2],
            gamma: vec![vec![2]],
            gamma_prime: vec![vec![1]],
            n0: 0,
            u: 0,
        })
        .unwrap();
        assert_eq!(five.value, BigUint::from(5u32));

        let whole = count_nsext(&CountInput {
            l: 3,
            degrees: vec![1, 3],
            gamma: vec![vec![2, 1], vec![1, 0]],
            gamma_prime: vec![vec![2, 1], vec![1, 0]],
            n0: 4,
            u: 4,
        })
        .unwrap();
        assert_eq!(whole.value, BigUint::one());

        let lines = count_nsext(&CountInput {
            l: 2,
            degrees: vec![],
            gamma: vec![],
            gamma_prime: vec![],
            n0: 2,
            u: 1,
        })
        .unwrap();
        assert_eq!(lines.value, BigUint::from(3u32));
    }

    #[test]
    fn count_bound_violations_and_errors() {
        let over = count_nsext(&CountInput {
            l: 2,
            degrees: vec![2],
            gamma: vec![vec![1]],
            gamma_prime: vec![vec![2]],
            n0: 0,
            u: 1,
        })
        .unwrap();
        assert!(over.value.is_zero());
        assert!(over.bound_violation.unwrap().contains("u = 1"));

        assert!(count_nsext(&CountInput {
            l: 2,
            degrees: vec![2],
            gamma: vec![vec![1, 1]],
            gamma_prime: vec![vec![1]],
            n0: 0,
            u: 0,
        })
        .is_err());
    }

    #[test]
    fn large_counts_do_not_overflow() {
        let c = count_nsext(&CountInput {
            l: 5,
            degrees: vec![6],
            gamma: vec![vec![8]],
            gamma_prime: vec![vec![4]],
            n0: 0,
            u: 0,
        })
        .unwrap();
        assert!(c.value.bits() > 128);
        assert_eq!(c.value, gaussian_binomial(8, 4, &BigUint::from(5u32).pow(6)));
    }

    #[test]
    fn count_is_monotone() {
        for gamma in 0..5u64 {
            for gp in 0..=gamma {
                let at = |g: u64, n0: u64| {
                    count_nsext(&CountInput {
                        l: 3,
                        degrees: vec![2],
                        gamma: vec![vec![g]],
                        gamma_prime: vec![vec![gp]],
                        n0,
                        u: 1,
                    })
                    .unwrap()
                    .value
                };
                assert!(at(gamma + 1, 2) >= at(gamma, 2));
                assert!(at(gamma, 3) >= at(gamma, 2));
            }
        }
    }

    #[test]
    fn shape_validation() {
        assert!(HShape::SquareFree { m: 6, n: 1 }.validate(5).is_ok());
        assert!(HShape::SquareFree { m: 12, n: 1 }.validate(5).is_err());
        assert!(HShape::SquareFree { m: 15, n: 1 }.validate(5).is_err());
        assert!(HShape::Field { l: 3, n: 1, action: None }.validate(3).is_err());
        assert!(HShape::PrimePower { l: 2, c: 2, exponents: vec![1], action: None }
            .validate(3)
            .is_err());
    }
}
