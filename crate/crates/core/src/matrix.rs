//! Dense matrices over `Z/l^c` and Howell normal form of row spans.
//!
//! `Z/l^c` is a chain ring, so every nonzero entry is a unit times a power
//! of `l`. The Howell form of a row span is an echelon basis whose pivots are
//! powers of `l`, whose entries above each pivot are reduced below that
//! pivot, and which has the Howell property: for every `k`, the rows with
//! pivot column `>= k` span every element of the module whose first `k`
//! coordinates vanish. These three conditions make the basis unique, so two
//! subgroups are equal exactly when their Howell forms are.

use std::fmt;

use crate::error::{Error, Result};
use crate::modarith::Modulus;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        Self {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1 % modulus.value());
        }
        m
    }

    pub fn from_rows(modulus: Modulus, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Self {
            modulus,
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .flatten()
                .map(|&x| modulus.from_i64(x))
                .collect(),
        })
    }

    pub fn from_u64_rows(modulus: Modulus, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Self {
            modulus,
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .flatten()
                .map(|&x| modulus.reduce(x))
                .collect(),
        })
    }

    /// Matrix of the permutation `i -> perm[i]` acting on column vectors,
    /// i.e. column `i` is the unit vector `e_{perm[i]}`.
    pub fn permutation(modulus: Modulus, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(modulus, n, n);
        for (i, &j) in perm.iter().enumerate() {
            m.set(j, i, 1 % modulus.value());
        }
        m
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = self.modulus.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.value(),
                other.modulus.value(),
            ));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.modulus;
        let n = m.value() as u128;
        let mut out = Matrix::zeros(m, self.rows, other.cols);
        let mut acc = vec![0u128; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u128;
                if a == 0 {
                    continue;
                }
                let row = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot = (*slot + a * b as u128) % n;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = v as u64;
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &x)| m.add(acc, m.mul(a, x)))
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.modulus != other.modulus || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape or modulus mismatch".into()));
        }
        let m = self.modulus;
        Ok(Matrix {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| m.sub(a, b))
                .collect(),
            ..*self
        })
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("matrix must be square".into()));
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.modulus, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.modulus, self.rows)
    }

    /// Inverse over `Z/l^c`; exists iff the reduction mod `l` is invertible.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("matrix must be square".into()));
        }
        let m = self.modulus;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::identity(m, n).to_rows();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| m.is_unit(a[r][col]))
                .ok_or(Error::NotInvertible)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let s = m.inv(a[col][col])?;
            scale_row(m, &mut a[col], s);
            scale_row(m, &mut inv[col], s);
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let t = a[r][col];
                    let (pa, pi) = (a[col].clone(), inv[col].clone());
                    axpy(m, &mut a[r], t, &pa);
                    axpy(m, &mut inv[r], t, &pi);
                }
            }
        }
        Matrix::from_u64_rows(m, n, &inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix over {} ({}x{})", self.modulus, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

fn scale_row(m: Modulus, row: &mut [u64], s: u64) {
    row.iter_mut().for_each(|x| *x = m.mul(*x, s));
}

/// `row -= t * other`.
fn axpy(m: Modulus, row: &mut [u64], t: u64, other: &[u64]) {
    for (x, &y) in row.iter_mut().zip(other) {
        if y != 0 {
            *x = m.sub(*x, m.mul(t, y));
        }
    }
}

/// Howell normal form of a row span in `(Z/l^c)^cols`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HowellForm {
    modulus: Modulus,
    cols: usize,
    rows: Vec<Vec<u64>>,
    /// `(column, valuation)` of each row's pivot; the pivot entry is `l^valuation`.
    pivots: Vec<(usize, u32)>,
}

impl HowellForm {
    pub fn zero(modulus: Modulus, cols: usize) -> Self {
        Self {
            modulus,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(modulus: Modulus, cols: usize) -> Self {
        Self::from_rows(modulus, cols, Matrix::identity(modulus, cols).to_rows())
    }

    pub fn of_matrix(m: &Matrix) -> Self {
        Self::from_rows(m.modulus(), m.cols(), m.to_rows())
    }

    /// Howell form of the span of `rows` (each of length `cols`, entries reduced).
    pub fn from_rows(modulus: Modulus, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let m = modulus;
        let c = m.exponent();
        let mut work: Vec<Vec<u64>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| m.reduce(x)).collect::<Vec<_>>())
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let mut out: Vec<Vec<u64>> = Vec::new();
        let mut pivots = Vec::new();
        for j in 0..cols {
            let Some(best) = (0..work.len())
                .filter(|&r| work[r][j] != 0)
                .min_by_key(|&r| m.valuation(work[r][j]))
            else {
                continue;
            };
            let mut piv = work.swap_remove(best);
            let v = m.valuation(piv[j]);
            let lv = m.prime_pow(v);
            let unit = m.inv(piv[j] / lv).expect("cofactor of l-power is a unit");
            scale_row(m, &mut piv, unit);
            debug_assert_eq!(piv[j], lv);
            for r in work.iter_mut() {
                if r[j] != 0 {
                    let t = r[j] / lv;
                    axpy(m, r, t, &piv);
                }
            }
            if v > 0 {
                let extra: Vec<u64> = piv.iter().map(|&x| m.mul(x, m.prime_pow(c - v))).collect();
                work.push(extra);
            }
            work.retain(|r| r.iter().any(|&x| x != 0));
            out.push(piv);
            pivots.push((j, v));
        }
        debug_assert!(work.is_empty());
        for i in 0..out.len() {
            let (j, v) = pivots[i];
            let lv = m.prime_pow(v);
            let (head, tail) = out.split_at_mut(i);
            for row in head.iter_mut() {
                let q = row[j] / lv;
                if q != 0 {
                    axpy(m, row, q, &tail[0]);
                }
            }
        }
        Self {
            modulus,
            cols,
            rows: out,
            pivots,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_u64_rows(self.modulus, self.cols, &self.rows).expect("rows have equal length")
    }

    /// `log_l` of the number of elements in the span.
    pub fn log_size(&self) -> u64 {
        let c = self.modulus.exponent();
        self.pivots.iter().map(|&(_, v)| (c - v) as u64).sum()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        self.reduce_with_coords(v).0
    }

    /// Returns the residue of `v` and the coefficients used, one per row.
    pub fn reduce_with_coords(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let m = self.modulus;
        let mut r: Vec<u64> = v.iter().map(|&x| m.reduce(x)).collect();
        let mut coords = vec![0; self.rows.len()];
        for (i, (row, &(j, v))) in self.rows.iter().zip(&self.pivots).enumerate() {
            let lv = m.prime_pow(v);
            if r[j] % lv != 0 {
                break;
            }
            let q = r[j] / lv;
            if q != 0 {
                axpy(m, &mut r, q, row);
                coords[i] = q;
            }
        }
        (r, coords)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_all(&self, other: &HowellForm) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &HowellForm) -> HowellForm {
        debug_assert_eq!(self.cols, other.cols);
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        HowellForm::from_rows(self.modulus, self.cols, rows)
    }

    pub fn intersect(&self, other: &HowellForm) -> HowellForm {
        // w*A = z*B  <=>  (w, z) in the left kernel of [A; -B].
        let m = self.modulus;
        let mut stacked = self.rows.clone();
        stacked.extend(
            other
                .rows
                .iter()
                .map(|r| r.iter().map(|&x| m.neg(x)).collect::<Vec<_>>()),
        );
        let stacked = Matrix::from_u64_rows(m, self.cols, &stacked).expect("equal widths");
        let kernel = left_kernel(&stacked);
        let k = self.rows.len();
        let images = kernel
            .rows
            .iter()
            .map(|w| combine(m, &w[..k], &self.rows, self.cols))
            .collect();
        HowellForm::from_rows(m, self.cols, images)
    }

    /// Span of `l^k` times the elements.
    pub fn scaled_by_prime_power(&self, k: u32) -> HowellForm {
        let m = self.modulus;
        let s = m.prime_pow(k);
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| m.mul(x, s)).collect())
            .collect();
        HowellForm::from_rows(m, self.cols, rows)
    }

    /// Image of the span under `v -> A v` (column-vector action).
    pub fn image_under(&self, a: &Matrix) -> HowellForm {
        let rows = self.rows.iter().map(|r| a.apply(r)).collect();
        HowellForm::from_rows(self.modulus, a.rows(), rows)
    }

    /// Elements `v` of the span with `A v = 0`.
    pub fn kernel_of(&self, a: &Matrix) -> HowellForm {
        let m = self.modulus;
        if self.rows.is_empty() {
            return self.clone();
        }
        // v = w * B; A v = 0  <=>  w * (B A^T) = 0.
        let images: Vec<Vec<u64>> = self.rows.iter().map(|r| a.apply(r)).collect();
        let c = Matrix::from_u64_rows(m, a.rows(), &images).expect("equal widths");
        let kernel = left_kernel(&c);
        let rows = kernel
            .rows
            .iter()
            .map(|w| combine(m, w, &self.rows, self.cols))
            .collect();
        HowellForm::from_rows(m, self.cols, rows)
    }

    /// Whether `A` maps the span into itself.
    pub fn is_stable_under(&self, a: &Matrix) -> bool {
        self.rows.iter().all(|r| self.contains(&a.apply(r)))
    }

    /// Every element of the span, each exactly once.
    ///
    /// Element `sum w_i * row_i` with `0 <= w_i < l^(c - v_i)` is unique per
    /// element thanks to the Howell property.
    pub fn elements(&self) -> Elements<'_> {
        Elements {
            form: self,
            counter: vec![0; self.rows.len()],
            limits: self
                .pivots
                .iter()
                .map(|&(_, v)| self.modulus.prime_pow(self.modulus.exponent() - v))
                .collect(),
            done: false,
        }
    }
}

pub struct Elements<'a> {
    form: &'a HowellForm,
    counter: Vec<u64>,
    limits: Vec<u64>,
    done: bool,
}

impl Iterator for Elements<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let f = self.form;
        let item = combine(f.modulus, &self.counter, &f.rows, f.cols);
        self.done = true;
        for (w, &lim) in self.counter.iter_mut().zip(&self.limits) {
            *w += 1;
            if *w < lim {
                self.done = false;
                break;
            }
            *w = 0;
        }
        Some(item)
    }
}

fn combine(m: Modulus, w: &[u64], rows: &[Vec<u64>], cols: usize) -> Vec<u64> {
    let mut out = vec![0u64; cols];
    for (&c, row) in w.iter().zip(rows) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = m.add(*o, m.mul(c, x));
        }
    }
    out
}

/// `{ w : w * A = 0 }` for a `k x n` matrix `A`, as a Howell form in `(Z/l^c)^k`.
pub fn left_kernel(a: &Matrix) -> HowellForm {
    let m = a.modulus();
    let (k, n) = (a.rows(), a.cols());
    let one = 1 % m.value();
    let augmented: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend((0..k).map(|j| if i == j { one } else { 0 }));
            r
        })
        .collect();
    let h = HowellForm::from_rows(m, n + k, augmented);
    let rows = h
        .rows
        .iter()
        .zip(&h.pivots)
        .filter(|(_, &(j, _))| j >= n)
        .map(|(r, _)| r[n..].to_vec())
        .collect();
    HowellForm::from_rows(m, k, rows)
}
