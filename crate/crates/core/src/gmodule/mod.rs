//! Finite `Z/l^c`-modules with an action of `G = Z/p^a`.
//!
//! A [`GModule`] is a `sigma`-stable subgroup (the *carrier*) of the free
//! module `(Z/l^c)^rank`, where `sigma` acts on column vectors. Most modules
//! are the whole free module; components and submodules share the ambient
//! space so their coordinates stay comparable.

mod t1;

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::cyclotomic::{CycloFactorization, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::matrix::{HowellForm, Matrix};
use crate::modarith::{Modulus, Poly};

pub use t1::{is_type_t1, AbelianGroup, DEFAULT_T1_BOUND};

struct Ambient {
    sigma: Matrix,
    factorization: CycloFactorization,
    /// `e(sigma)` for every idempotent, in factorization order.
    projectors: OnceLock<Vec<Matrix>>,
}

#[derive(Clone)]
pub struct GModule {
    ambient: Arc<Ambient>,
    carrier: HowellForm,
}

impl std::fmt::Debug for GModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GModule")
            .field("p", &self.p())
            .field("a", &self.a())
            .field("modulus", &self.modulus())
            .field("sigma", &self.ambient.sigma)
            .field("carrier", &self.carrier.rows())
            .finish()
    }
}

/// A `sigma`-stable subgroup, stored as its canonical Howell basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    basis: HowellForm,
}

impl Submodule {
    /// Wraps a basis already known to be a stable subgroup.
    pub(crate) fn from_basis(basis: HowellForm) -> Self {
        Self { basis }
    }

    pub fn basis(&self) -> &HowellForm {
        &self.basis
    }

    pub fn log_size(&self) -> u64 {
        self.basis.log_size()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_zero()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.basis.contains(v)
    }
}

impl GModule {
    /// The free module `(Z/l^c)^rank` with generator `sigma`.
    pub fn new(p: u64, a: u32, l: u64, c: u32, sigma: Matrix) -> Result<Self> {
        Self::with_seed(p, a, l, c, sigma, DEFAULT_SEED)
    }

    pub fn with_seed(p: u64, a: u32, l: u64, c: u32, sigma: Matrix, seed: u64) -> Result<Self> {
        let factorization = CycloFactorization::with_seed(p, a, l, c, seed)?;
        Self::from_factorization(factorization, sigma)
    }

    pub fn from_factorization(factorization: CycloFactorization, sigma: Matrix) -> Result<Self> {
        let m = factorization.modulus();
        if sigma.modulus() != m {
            return Err(Error::ModulusMismatch(sigma.modulus().value(), m.value()));
        }
        if sigma.rows() != sigma.cols() {
            return Err(Error::Dimension("sigma must be square".into()));
        }
        let order = factorization.group_order() as u64;
        if !sigma.pow(order)?.is_identity() {
            return Err(Error::BadOrder { order });
        }
        sigma.inverse()?;
        let carrier = HowellForm::full(m, sigma.rows());
        Ok(Self {
            ambient: Arc::new(Ambient {
                sigma,
                factorization,
                projectors: OnceLock::new(),
            }),
            carrier,
        })
    }

    /// The submodule `sub` viewed as a module in its own right.
    pub fn restrict(&self, sub: &Submodule) -> Result<GModule> {
        if sub.basis.cols() != self.rank() || sub.basis.modulus() != self.modulus() {
            return Err(Error::Dimension("submodule lives in a different ambient space".into()));
        }
        if !self.carrier.contains_all(&sub.basis) || !sub.basis.is_stable_under(self.sigma()) {
            return Err(Error::NotStable);
        }
        Ok(self.with_carrier(sub.basis.clone()))
    }

    fn with_carrier(&self, carrier: HowellForm) -> GModule {
        GModule {
            ambient: Arc::clone(&self.ambient),
            carrier,
        }
    }

    /// Validates a basis as a `sigma`-stable subgroup of this module.
    pub fn submodule_from_rows(&self, rows: Vec<Vec<u64>>) -> Result<Submodule> {
        if rows.iter().any(|r| r.len() != self.rank()) {
            return Err(Error::Dimension("row length differs from module rank".into()));
        }
        let basis = HowellForm::from_rows(self.modulus(), self.rank(), rows);
        if !self.carrier.contains_all(&basis) || !basis.is_stable_under(self.sigma()) {
            return Err(Error::NotStable);
        }
        Ok(Submodule { basis })
    }

    /// Transports the module along `v -> P v`: the new generator is
    /// `P sigma P^-1` and the carrier is `P` applied to the old one.
    pub fn change_basis(&self, p: &Matrix) -> Result<GModule> {
        let p_inv = p.inverse()?;
        let sigma = p.mul(self.sigma())?.mul(&p_inv)?;
        let carrier = self.carrier.image_under(p);
        let mut out = Self::from_factorization(self.ambient.factorization.clone(), sigma)?;
        out.carrier = carrier;
        Ok(out)
    }

    pub fn p(&self) -> u64 {
        self.ambient.factorization.p
    }

    pub fn a(&self) -> u32 {
        self.ambient.factorization.a
    }

    pub fn l(&self) -> u64 {
        self.ambient.factorization.l
    }

    pub fn c(&self) -> u32 {
        self.ambient.factorization.c
    }

    pub fn modulus(&self) -> Modulus {
        self.ambient.factorization.modulus()
    }

    /// Rank of the ambient free module.
    pub fn rank(&self) -> usize {
        self.ambient.sigma.rows()
    }

    pub fn sigma(&self) -> &Matrix {
        &self.ambient.sigma
    }

    pub fn factorization(&self) -> &CycloFactorization {
        &self.ambient.factorization
    }

    pub fn carrier(&self) -> &HowellForm {
        &self.carrier
    }

    pub fn whole(&self) -> Submodule {
        Submodule {
            basis: self.carrier.clone(),
        }
    }

    pub fn is_free(&self) -> bool {
        self.carrier.log_size() == self.rank() as u64 * self.c() as u64
    }

    /// `log_l |M|`.
    pub fn log_size(&self) -> u64 {
        self.carrier.log_size()
    }

    fn projectors(&self) -> Result<&[Matrix]> {
        if let Some(p) = self.ambient.projectors.get() {
            return Ok(p);
        }
        let sigma = &self.ambient.sigma;
        let computed = self
            .ambient
            .factorization
            .idempotents
            .iter()
            .map(|e| e.eval_matrix(sigma))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.ambient.projectors.get_or_init(|| computed))
    }
}

/// `{ v in M : f(sigma) v = 0 }`.
pub fn kernel_of_poly(module: &GModule, f: &Poly) -> Result<Submodule> {
    if f.modulus() != module.modulus() {
        return Err(Error::ModulusMismatch(f.modulus().value(), module.modulus().value()));
    }
    let action = f.eval_matrix(module.sigma())?;
    Ok(Submodule {
        basis: module.carrier.kernel_of(&action),
    })
}

/// `M^G = ker(sigma - 1)`.
pub fn fixed_submodule(module: &GModule) -> Result<Submodule> {
    let x_minus_one = Poly::from_i64(module.modulus(), &[-1, 1]);
    kernel_of_poly(module, &x_minus_one)
}

/// The component cut out by the idempotent of the `j`-th lifted factor of
/// `Phi_{p^b}` (both 1-based).
pub fn component(module: &GModule, b: u32, j: usize) -> Result<GModule> {
    let pos = module.factorization().component_position(b, j)?;
    project(module, pos)
}

/// The component cut out by the idempotent of `x - 1`; equals `M^G`.
pub fn trivial_component(module: &GModule) -> Result<GModule> {
    project(module, 0)
}

fn project(module: &GModule, pos: usize) -> Result<GModule> {
    let e = &module.projectors()?[pos];
    Ok(module.with_carrier(module.carrier.image_under(e)))
}

/// `dim_{F_l} (l^i K / l^(i+1) K)` for `i = 0..=c`.
fn layer_dims(k: &HowellForm) -> Vec<u64> {
    let c = k.modulus().exponent();
    let sizes: Vec<u64> = (0..=c).map(|i| k.scaled_by_prime_power(i).log_size()).collect();
    let mut dims: Vec<u64> = sizes.windows(2).map(|w| w[0] - w[1]).collect();
    dims.push(0);
    dims
}

/// Graded dimensions of one `Q_bj`-component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ComponentGrading {
    pub b: u32,
    pub j: usize,
    pub degree: u64,
    /// `f_{b,i,j}` for `i = 0..=c`, counted in `d_b`-dimensional units.
    pub dims: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradedDims {
    /// `f'_i = dim l^i M^G / l^(i+1) M^G` for `i = 0..=c`.
    pub fixed: Vec<u64>,
    pub components: Vec<ComponentGrading>,
}

impl GradedDims {
    pub fn c(&self) -> u32 {
        (self.fixed.len() - 1) as u32
    }

    /// `f'_(i-1) - f'_i`, the number of `Z/l^i` summands (`i` 1-based).
    pub fn trivial_multiplicity(&self, i: usize) -> u64 {
        self.fixed[i - 1] - self.fixed[i]
    }

    /// Degree `d_b` for each level, in level order.
    pub fn level_degrees(&self) -> Vec<(u32, u64)> {
        let mut out: Vec<(u32, u64)> = Vec::new();
        for g in &self.components {
            if out.last().map(|&(b, _)| b) != Some(g.b) {
                out.push((g.b, g.degree));
            }
        }
        out
    }
}

pub fn graded_dims(module: &GModule) -> Result<GradedDims> {
    let fixed = layer_dims(&fixed_submodule(module)?.basis);
    let fact = module.factorization();
    let mut components = Vec::new();
    for (b, j) in fact.component_indices() {
        let degree = fact.level(b)?.degree;
        let raw = layer_dims(&component(module, b, j)?.carrier);
        let dims = raw
            .iter()
            .map(|&r| {
                if r % degree == 0 {
                    Ok(r / degree)
                } else {
                    Err(Error::Inconsistent(format!(
                        "graded piece of dimension {r} at (b={b}, j={j}) is not a multiple of d_b = {degree}"
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        components.push(ComponentGrading { b, j, degree, dims });
    }
    Ok(GradedDims { fixed, components })
}

/// Multiplicities of `Z[zeta_{p^b}]/Q_bj^i` for one `(b, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ComponentSummands {
    pub b: u32,
    pub j: usize,
    pub degree: u64,
    /// Entry `i - 1` counts summands `Z[zeta]/Q^i`, `i = 1..=c`.
    pub multiplicities: Vec<u64>,
}

/// Krull-Schmidt decomposition of a module into `Z/l^i` (trivial action)
/// and `Z[zeta_{p^b}]/Q_bj^i` summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Decomposition {
    /// Entry `i - 1` counts summands `Z/l^i`, `i = 1..=c`.
    pub trivial: Vec<u64>,
    pub components: Vec<ComponentSummands>,
    pub graded: GradedDims,
}

impl Decomposition {
    /// `log_l` of the module size implied by the summands.
    pub fn log_size(&self) -> u64 {
        let t: u64 = self.trivial.iter().enumerate().map(|(k, &m)| (k as u64 + 1) * m).sum();
        let n: u64 = self
            .components
            .iter()
            .flat_map(|s| {
                s.multiplicities
                    .iter()
                    .enumerate()
                    .map(move |(k, &m)| (k as u64 + 1) * s.degree * m)
            })
            .sum();
        t + n
    }

    /// Exponents `e_i` of the underlying abelian group `sum (Z/l^i)^(e_i)`.
    pub fn abelian_exponents(&self) -> Vec<u64> {
        let mut e = self.trivial.clone();
        for s in &self.components {
            for (k, &m) in s.multiplicities.iter().enumerate() {
                e[k] += s.degree * m;
            }
        }
        e
    }

    /// Total multiplicity of level-`b` summands of exponent `i` (1-based),
    /// summed over `j`.
    pub fn level_multiplicity(&self, b: u32, i: usize) -> u64 {
        self.components
            .iter()
            .filter(|s| s.b == b)
            .map(|s| s.multiplicities[i - 1])
            .sum()
    }
}

fn differences(seq: &[u64], what: &str) -> Result<Vec<u64>> {
    seq.windows(2)
        .map(|w| {
            w[0].checked_sub(w[1])
                .ok_or_else(|| Error::Inconsistent(format!("negative multiplicity in {what}: {seq:?}")))
        })
        .collect()
}

pub fn decompose(module: &GModule) -> Result<Decomposition> {
    let graded = graded_dims(module)?;
    let trivial = differences(&graded.fixed, "fixed part")?;
    let components = graded
        .components
        .iter()
        .map(|g| {
            Ok(ComponentSummands {
                b: g.b,
                j: g.j,
                degree: g.degree,
                multiplicities: differences(&g.dims, "component")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let d = Decomposition {
        trivial,
        components,
        graded,
    };
    if d.log_size() != module.log_size() {
        return Err(Error::Inconsistent(format!(
            "summands account for l^{} elements, module has l^{}",
            d.log_size(),
            module.log_size()
        )));
    }
    Ok(d)
}
