//! Arithmetic in `Z/l^c` and dense univariate polynomials over it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Trial-division primality test; inputs here are small group and field orders.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `n` as `l^c` with `l` prime, if possible.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let l = (2..)
        .take_while(|d: &u64| d.saturating_mul(*d) <= n)
        .find(|d| n % d == 0)
        .unwrap_or(n);
    let mut rest = n;
    let mut c = 0;
    while rest % l == 0 {
        rest /= l;
        c += 1;
    }
    (rest == 1).then_some((l, c))
}

/// Distinct prime divisors of `n` in increasing order, with multiplicities.
pub fn factor_small(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Order of `l` in `(Z/p^b)^*`.
///
/// Found by iterated multiplication; the answer divides `p^(b-1)(p-1)`,
/// which is tiny for any group this crate can act with.
pub fn multiplicative_order(l: u64, p: u64, b: u32) -> Result<u64> {
    for q in [l, p] {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
    }
    if l == p {
        return Err(Error::SamePrime(p));
    }
    if b == 0 {
        return Err(Error::InvalidInput("level b must be at least 1".into()));
    }
    let modulus = p
        .checked_pow(b)
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{b} overflows")))?;
    let base = (l % modulus) as u128;
    let mut acc = base;
    let mut d = 1u64;
    while acc != 1 {
        acc = acc * base % modulus as u128;
        d += 1;
    }
    Ok(d)
}

/// The ring `Z/l^c` with `l` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Modulus {
    l: u64,
    c: u32,
    n: u64,
}

impl Modulus {
    /// Largest modulus accepted; products are formed in `u128`.
    pub const MAX: u64 = 1 << 62;

    pub fn new(l: u64, c: u32) -> Result<Self> {
        if !is_prime(l) {
            return Err(Error::NotPrime(l));
        }
        if c == 0 {
            return Err(Error::InvalidInput("exponent c must be at least 1".into()));
        }
        let n = l
            .checked_pow(c)
            .filter(|&n| n <= Self::MAX)
            .ok_or(Error::ModulusTooLarge(l, c))?;
        Ok(Self { l, c, n })
    }

    pub fn from_prime_power(m: u64) -> Result<Self> {
        let (l, c) = prime_power(m).ok_or(Error::NotPrimePower(m))?;
        Self::new(l, c)
    }

    pub fn prime(&self) -> u64 {
        self.l
    }

    pub fn exponent(&self) -> u32 {
        self.c
    }

    pub fn value(&self) -> u64 {
        self.n
    }

    pub fn is_field(&self) -> bool {
        self.c == 1
    }

    /// `Z/l^k` for `k <= c`.
    pub fn with_exponent(&self, k: u32) -> Result<Self> {
        Self::new(self.l, k)
    }

    /// `l^k`, saturating at the modulus.
    pub fn prime_pow(&self, k: u32) -> u64 {
        if k >= self.c {
            self.n
        } else {
            self.l.pow(k)
        }
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.n
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.n as i64) as u64
    }

    /// Signed representative in `(-n/2, n/2]`.
    pub fn to_signed(&self, x: u64) -> i64 {
        if x > self.n / 2 {
            x as i64 - self.n as i64
        } else {
            x as i64
        }
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.n - y
        }
    }

    #[inline]
    pub fn neg(&self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.n - x
        }
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        if self.n <= u32::MAX as u64 {
            // Both operands are reduced, so the product fits in 64 bits.
            (x * y) % self.n
        } else {
            ((x as u128 * y as u128) % self.n as u128) as u64
        }
    }

    pub fn pow(&self, x: u64, mut e: u64) -> u64 {
        let mut base = x % self.n;
        let mut acc = 1 % self.n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `l`-adic valuation; zero has valuation `c`.
    pub fn valuation(&self, x: u64) -> u32 {
        let mut x = x % self.n;
        if x == 0 {
            return self.c;
        }
        let mut v = 0;
        while x % self.l == 0 {
            x /= self.l;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, x: u64) -> bool {
        x % self.l != 0
    }

    pub fn inv(&self, x: u64) -> Result<u64> {
        let x = x % self.n;
        if !self.is_unit(x) {
            return Err(Error::NotUnit(x));
        }
        let (mut r0, mut r1) = (self.n as i128, x as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.n as i128) as u64)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c == 1 {
            write!(f, "Z/{}", self.l)
        } else {
            write!(f, "Z/{}^{}", self.l, self.c)
        }
    }
}

/// An element of `Z/l^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        Self {
            value: modulus.from_i64(value),
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self {
            value: self.modulus.inv(self.value)?,
            modulus: self.modulus,
        })
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "residues from different rings combined"
        );
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        Self {
            value: self.modulus.add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        Self {
            value: self.modulus.sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        Self {
            value: self.modulus.mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Self {
        Self {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus.value())
    }
}

/// Dense polynomial over `Z/l^c`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    modulus: Modulus,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(modulus: Modulus, coeffs: Vec<u64>) -> Self {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(|c| modulus.reduce(c)).collect(),
            modulus,
        };
        p.trim();
        p
    }

    pub fn from_i64(modulus: Modulus, coeffs: &[i64]) -> Self {
        Self::new(modulus, coeffs.iter().map(|&c| modulus.from_i64(c)).collect())
    }

    pub fn zero(modulus: Modulus) -> Self {
        Self {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(modulus: Modulus, c: u64) -> Self {
        Self::new(modulus, vec![c])
    }

    pub fn one(modulus: Modulus) -> Self {
        Self::constant(modulus, 1)
    }

    /// `c * x^k`.
    pub fn monomial(modulus: Modulus, k: usize, c: u64) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(modulus, coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(modulus: Modulus, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = modulus.neg(1);
        coeffs[n] = 1 % modulus.value();
        Self::new(modulus, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1 % self.modulus.value()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1 % self.modulus.value()]
    }

    fn same_ring(&self, other: &Poly) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.value(),
                other.modulus.value(),
            ));
        }
        Ok(())
    }

    /// Reinterprets the coefficients in another ring `Z/l^k` of the same prime.
    ///
    /// Going down reduces; going up keeps the integer representatives.
    pub fn change_modulus(&self, target: Modulus) -> Poly {
        Poly::new(target, self.coeffs.clone())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly::new(
            m,
            (0..n).map(|k| m.add(self.coeff(k), other.coeff(k))).collect(),
        ))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Poly::new(
            m,
            (0..n).map(|k| m.sub(self.coeff(k), other.coeff(k))).collect(),
        ))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.modulus));
        }
        let m = self.modulus;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(a, b));
            }
        }
        Ok(Poly::new(m, out))
    }

    pub fn scale(&self, c: u64) -> Poly {
        let m = self.modulus;
        Poly::new(m, self.coeffs.iter().map(|&a| m.mul(a, c)).collect())
    }

    /// Division with remainder by a monic divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_ring(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let m = self.modulus;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(m), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = rem[k];
            if q == 0 {
                continue;
            }
            quot[k - dd] = q;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = m.sub(rem[k - dd + i], m.mul(q, b));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(m, quot), Poly::new(m, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Product in `(Z/l^c)[x]/(x^n - 1)`.
    pub fn mul_cyclic(&self, other: &Poly, n: usize) -> Result<Poly> {
        self.same_ring(other)?;
        let m = self.modulus;
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = (i + j) % n;
                out[k] = m.add(out[k], m.mul(a, b));
            }
        }
        Ok(Poly::new(m, out))
    }

    /// Reduction into `(Z/l^c)[x]/(x^n - 1)`.
    pub fn reduce_cyclic(&self, n: usize) -> Poly {
        let m = self.modulus;
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i % n] = m.add(out[i % n], a);
        }
        Poly::new(m, out)
    }

    /// Scales to a monic polynomial; the leading coefficient must be a unit.
    pub fn to_monic(&self) -> Result<Poly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.modulus.inv(self.leading())?;
        Ok(self.scale(inv))
    }

    fn require_field(&self) -> Result<()> {
        if self.modulus.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(
                self.modulus.prime(),
                self.modulus.exponent(),
            ))
        }
    }

    /// Monic greatest common divisor over a prime field.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        Ok(self.ext_gcd(other)?.0)
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic (or zero).
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.same_ring(other)?;
        self.require_field()?;
        let m = self.modulus;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(m), Poly::zero(m));
        let (mut t0, mut t1) = (Poly::zero(m), Poly::one(m));
        while !r1.is_zero() {
            let inv = m.inv(r1.leading())?;
            let (q, r) = r0.div_rem(&r1.scale(inv))?;
            let q = q.scale(inv);
            let s2 = s0.try_sub(&q.try_mul(&s1)?)?;
            let t2 = t0.try_sub(&q.try_mul(&t1)?)?;
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = m.inv(r0.leading())?;
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// `self^exp mod modulus_poly` for a monic `modulus_poly`.
    pub fn pow_mod(&self, exp: &BigUint, modulus_poly: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(self.modulus).rem(modulus_poly)?;
        let base = self.rem(modulus_poly)?;
        for i in (0..exp.bits()).rev() {
            acc = acc.try_mul(&acc)?.rem(modulus_poly)?;
            if exp.bit(i) {
                acc = acc.try_mul(&base)?.rem(modulus_poly)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &crate::matrix::Matrix) -> Result<crate::matrix::Matrix> {
        use crate::matrix::Matrix;
        if a.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.value(),
                a.modulus().value(),
            ));
        }
        if a.rows() != a.cols() {
            return Err(Error::Dimension("matrix must be square".into()));
        }
        let n = a.rows();
        let mut acc = Matrix::zeros(self.modulus, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?;
            for i in 0..n {
                let v = self.modulus.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    /// Canonical ordering used for factor lists: degree, then coefficients
    /// from the leading term downwards.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// Serializes as the coefficient array, lowest degree first.
impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}
