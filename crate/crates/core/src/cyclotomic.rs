//! Cyclotomic factorizations of `x^(p^a) - 1` over `F_l` and `Z/l^c`.
//!
//! Over `F_l` (with `l != p`) every irreducible factor of `Phi_{p^b}` has the
//! same degree `d_b`, the order of `l` mod `p^b`. The factors are therefore
//! found by equal-degree splitting alone, Hensel-lifted to `Z/l^c`, and turned
//! into orthogonal idempotents of `(Z/l^c)[x]/(x^(p^a) - 1)`.
//!
//! Factor lists are sorted with [`Poly::canonical_cmp`]; the index `j` of a
//! factor at level `b` always refers to this order, and lifted factors keep
//! the index of the factor they lift.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modarith::{is_prime, multiplicative_order, Modulus, Poly};

pub const DEFAULT_SEED: u64 = 0x5eed_0f_c7c1;

/// `Phi_{p^b}` with integer coefficients, lowest degree first.
pub fn cyclotomic_poly(p: u64, b: u32) -> Result<Vec<i64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if b == 0 {
        return Err(Error::InvalidInput("level b must be at least 1".into()));
    }
    let step = p.pow(b - 1) as usize;
    let mut coeffs = vec![0i64; step * (p as usize - 1) + 1];
    for j in 0..p as usize {
        coeffs[j * step] = 1;
    }
    Ok(coeffs)
}

/// Monic irreducible factors of `Phi_{p^b}` over `F_l`, canonically sorted.
pub fn factor_cyclotomic(p: u64, b: u32, l: u64) -> Result<Vec<Poly>> {
    factor_cyclotomic_seeded(p, b, l, DEFAULT_SEED)
}

pub fn factor_cyclotomic_seeded(p: u64, b: u32, l: u64, seed: u64) -> Result<Vec<Poly>> {
    let d = multiplicative_order(l, p, b)? as usize;
    let field = Modulus::new(l, 1)?;
    let phi = Poly::from_i64(field, &cyclotomic_poly(p, b)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 32) ^ ((b as u64) << 16) ^ l);
    let mut factors = Vec::new();
    equal_degree_split(&phi, d, &mut rng, &mut factors)?;
    factors.sort_by(Poly::canonical_cmp);
    let expected = p.pow(b - 1) as usize * (p as usize - 1) / d;
    if factors.len() != expected || factors.iter().any(|f| f.degree() != Some(d)) {
        return Err(Error::Inconsistent(format!(
            "Phi_{p}^{b} mod {l} split into {} factors, expected {expected} of degree {d}",
            factors.len()
        )));
    }
    Ok(factors)
}

/// Splits a squarefree monic `f` whose irreducible factors all have degree `d`.
fn equal_degree_split(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) -> Result<()> {
    let n = f.degree().expect("nonzero polynomial");
    if n == d {
        out.push(f.clone());
        return Ok(());
    }
    let m = f.modulus();
    let l = m.prime();
    let half_exp = (BigUint::from(l).pow(d as u32) - 1u32) / 2u32;
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..l)).collect();
        let a = Poly::new(m, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let probe = if l == 2 {
            // Trace to F_2: a + a^2 + ... + a^(2^(d-1)).
            let mut term = a.clone();
            let mut trace = a.clone();
            for _ in 1..d {
                term = term.try_mul(&term)?.rem(f)?;
                trace = trace.try_add(&term)?;
            }
            trace
        } else {
            a.pow_mod(&half_exp, f)?.try_sub(&Poly::one(m))?
        };
        let g = f.gcd(&probe)?;
        let deg = g.degree().unwrap_or(0);
        if deg > 0 && deg < n {
            let (h, r) = f.div_rem(&g)?;
            debug_assert!(r.is_zero());
            equal_degree_split(&g, d, rng, out)?;
            equal_degree_split(&h, d, rng, out)?;
            return Ok(());
        }
    }
}

/// Lifts a factorization of `target mod l` into pairwise coprime monic
/// factors to the unique monic factorization of `target` over `Z/l^c`.
///
/// `target` lives over `Z/l^c` and must be monic; `factors` live over `F_l`.
pub fn hensel_lift(target: &Poly, factors: &[Poly]) -> Result<Vec<Poly>> {
    let big = target.modulus();
    let field = big.with_exponent(1)?;
    if !target.is_monic() {
        return Err(Error::NotMonic);
    }
    let reduced = target.change_modulus(field);
    let mut product = Poly::one(field);
    for f in factors {
        if f.modulus() != field {
            return Err(Error::ModulusMismatch(f.modulus().value(), field.value()));
        }
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        product = product.try_mul(f)?;
    }
    if product != reduced {
        return Err(Error::InvalidInput(
            "factors do not multiply to the target modulo l".into(),
        ));
    }
    let mut lifted = Vec::with_capacity(factors.len());
    for f in factors {
        let (cofactor, _) = reduced.div_rem(f)?;
        lifted.push(lift_pair(target, f, &cofactor)?);
    }
    let mut check = Poly::one(big);
    for f in &lifted {
        check = check.try_mul(f)?;
    }
    if check != *target {
        return Err(Error::Inconsistent("lifted factors do not reconstruct the target".into()));
    }
    Ok(lifted)
}

/// Quadratic Hensel lifting of `target = factor * cofactor (mod l)`; returns
/// the lift of `factor`, which stays monic.
fn lift_pair(target: &Poly, factor: &Poly, cofactor: &Poly) -> Result<Poly> {
    let big = target.modulus();
    let c = big.exponent();
    // s*g + t*h = 1 with h the factor being lifted, g its cofactor.
    let (gcd, s0, t0) = cofactor.ext_gcd(factor)?;
    if !gcd.is_one() {
        return Err(Error::NotCoprime);
    }
    let mut g = cofactor.change_modulus(big);
    let mut h = factor.change_modulus(big);
    let mut s = s0.change_modulus(big);
    let mut t = t0.change_modulus(big);
    let one = Poly::one(big);
    let mut precision = 1;
    while precision < c {
        let e = target.try_sub(&g.try_mul(&h)?)?;
        let (q, r) = s.try_mul(&e)?.div_rem(&h)?;
        let g_new = g.try_add(&t.try_mul(&e)?)?.try_add(&q.try_mul(&g)?)?;
        let h_new = h.try_add(&r)?;
        let bez = s.try_mul(&g_new)?.try_add(&t.try_mul(&h_new)?)?.try_sub(&one)?;
        let (cq, dr) = s.try_mul(&bez)?.div_rem(&h_new)?;
        s = s.try_sub(&dr)?;
        t = t.try_sub(&t.try_mul(&bez)?)?.try_sub(&cq.try_mul(&g_new)?)?;
        g = g_new;
        h = h_new;
        precision *= 2;
    }
    Ok(h)
}

/// Orthogonal idempotents of `(Z/l^c)[x]/(x^n - 1)`, one per factor of a
/// pairwise-coprime monic factorization of `x^n - 1` over `Z/l^c`.
///
/// The idempotent for factor `F` is `1` modulo `F` and `0` modulo every
/// other factor, so `e(sigma)` projects onto the `F`-primary component.
pub fn crt_idempotents(factors: &[Poly], n: usize) -> Result<Vec<Poly>> {
    let Some(first) = factors.first() else {
        return Err(Error::InvalidInput("empty factorization".into()));
    };
    let big = first.modulus();
    if factors.len() == 1 {
        return Ok(vec![Poly::one(big)]);
    }
    let field = big.with_exponent(1)?;
    let whole = Poly::x_pow_minus_one(field, n);
    let mut out = Vec::with_capacity(factors.len());
    for f in factors {
        let f_low = f.change_modulus(field);
        let (cofactor, r) = whole.div_rem(&f_low)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput("factor does not divide x^n - 1".into()));
        }
        let (g, _, t) = f_low.ext_gcd(&cofactor)?;
        if !g.is_one() {
            return Err(Error::NotCoprime);
        }
        let e_low = t.try_mul(&cofactor)?.reduce_cyclic(n);
        out.push(lift_idempotent(&e_low.change_modulus(big), n)?);
    }
    for (k, (e, f)) in out.iter().zip(factors).enumerate() {
        if !e.rem(f)?.is_one() {
            return Err(Error::Inconsistent(format!("idempotent {k} is not 1 modulo its factor")));
        }
        for (j, g) in factors.iter().enumerate() {
            if j != k && !e.rem(g)?.is_zero() {
                return Err(Error::Inconsistent(format!("idempotent {k} does not vanish mod factor {j}")));
            }
        }
    }
    Ok(out)
}

/// Newton iteration `e <- 3e^2 - 2e^3`, which doubles the `l`-adic precision
/// of an idempotent each step.
fn lift_idempotent(e: &Poly, n: usize) -> Result<Poly> {
    let mut e = e.clone();
    for _ in 0..=64 {
        let sq = e.mul_cyclic(&e, n)?;
        if sq == e {
            return Ok(e);
        }
        let cube = sq.mul_cyclic(&e, n)?;
        e = sq.scale(3).try_sub(&cube.scale(2))?;
    }
    Err(Error::Inconsistent("idempotent lifting did not converge".into()))
}

/// Factors of `Phi_{p^b}` at one level `b`.
#[derive(Clone, Debug, Serialize)]
pub struct CycloLevel {
    pub b: u32,
    /// Order of `l` modulo `p^b`, the common factor degree.
    pub degree: u64,
    pub factors_mod_l: Vec<Poly>,
    pub factors_lifted: Vec<Poly>,
}

impl CycloLevel {
    pub fn count(&self) -> usize {
        self.factors_mod_l.len()
    }
}

/// Full factorization data for `(Z/l^c)[Z/p^a]`.
#[derive(Clone, Debug, Serialize)]
pub struct CycloFactorization {
    pub p: u64,
    pub a: u32,
    pub l: u64,
    pub c: u32,
    pub levels: Vec<CycloLevel>,
    /// `x - 1` over `Z/l^c`.
    pub linear_factor: Poly,
    /// Idempotent of the trivial component first, then one per lifted
    /// factor in level-major order.
    pub idempotents: Vec<Poly>,
}

impl CycloFactorization {
    pub fn new(p: u64, a: u32, l: u64, c: u32) -> Result<Self> {
        Self::with_seed(p, a, l, c, DEFAULT_SEED)
    }

    pub fn with_seed(p: u64, a: u32, l: u64, c: u32, seed: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if l == p {
            return Err(Error::SamePrime(p));
        }
        let big = Modulus::new(l, c)?;
        let order = p
            .checked_pow(a)
            .filter(|&n| n <= 1 << 16)
            .ok_or_else(|| Error::InvalidInput(format!("group order {p}^{a} is too large")))?
            as usize;
        let field = big.with_exponent(1)?;
        let linear_low = Poly::from_i64(field, &[-1, 1]);
        let linear_factor = Poly::from_i64(big, &[-1, 1]);
        let mut low_all = vec![linear_low];
        let mut levels = Vec::new();
        for b in 1..=a {
            let factors_mod_l = factor_cyclotomic_seeded(p, b, l, seed)?;
            low_all.extend(factors_mod_l.iter().cloned());
            levels.push(CycloLevel {
                b,
                degree: multiplicative_order(l, p, b)?,
                factors_mod_l,
                factors_lifted: Vec::new(),
            });
        }
        let target = Poly::x_pow_minus_one(big, order);
        let lifted = hensel_lift(&target, &low_all)?;
        debug_assert_eq!(lifted[0], linear_factor);
        let mut rest = lifted[1..].iter();
        for level in &mut levels {
            level.factors_lifted = rest.by_ref().take(level.count()).cloned().collect();
        }
        let idempotents = crt_idempotents(&lifted, order)?;
        Ok(Self {
            p,
            a,
            l,
            c,
            levels,
            linear_factor,
            idempotents,
        })
    }

    pub fn modulus(&self) -> Modulus {
        Modulus::new(self.l, self.c).expect("validated at construction")
    }

    /// `p^a`.
    pub fn group_order(&self) -> usize {
        self.p.pow(self.a) as usize
    }

    /// Level data for `b` in `1..=a`.
    pub fn level(&self, b: u32) -> Result<&CycloLevel> {
        b.checked_sub(1)
            .and_then(|i| self.levels.get(i as usize))
            .ok_or_else(|| Error::IndexOutOfRange(format!("level {b} not in 1..={}", self.a)))
    }

    /// Position of `(b, j)` (both 1-based) in [`Self::idempotents`].
    pub fn component_position(&self, b: u32, j: usize) -> Result<usize> {
        let level = self.level(b)?;
        if j == 0 || j > level.count() {
            return Err(Error::IndexOutOfRange(format!(
                "factor {j} not in 1..={} at level {b}",
                level.count()
            )));
        }
        let before: usize = self.levels[..(b - 1) as usize].iter().map(CycloLevel::count).sum();
        Ok(1 + before + j - 1)
    }

    /// All `(b, j)` pairs in idempotent order.
    pub fn component_indices(&self) -> Vec<(u32, usize)> {
        self.levels
            .iter()
            .flat_map(|lv| (1..=lv.count()).map(move |j| (lv.b, j)))
            .collect()
    }
}
