//! Exact linear algebra over the rationals and prime fields, and finite
//! cochain complexes of vector spaces.
//!
//! Everything downstream (Čech pieces, Koszul complexes for Bass numbers,
//! Taylor complexes) reduces to ranks of small 0/±1 matrices, so matrices are
//! dense and arithmetic is exact. Floating point never appears.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
#[cfg(test)]
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Runtime choice of coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarField {
    Rationals,
    Prime(u64),
}

impl ScalarField {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 32) {
            Ok(ScalarField::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarField::Rationals => 0,
            ScalarField::Prime(p) => *p,
        }
    }
}

impl Default for ScalarField {
    fn default() -> Self {
        ScalarField::Rationals
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Rationals => write!(f, "Q"),
            ScalarField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Field arithmetic. Implementors are cheap handles (the prime field carries
/// its modulus) so matrices can carry their field by value.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn kind(&self) -> ScalarField;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Row rank. Fields may override with a specialized elimination.
    fn rank(&self, m: &DenseMatrix<Self>) -> usize
    where
        Self: Sized,
    {
        sparse_rank(self, m)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> ScalarField {
        ScalarField::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// Incremental echelon form on sparse rows: each row is reduced by the
/// pivots found so far and becomes a new pivot if anything survives.
fn sparse_rank<F: Field>(f: &F, m: &DenseMatrix<F>) -> usize {
    let mut rows: Vec<Vec<(usize, F::Elem)>> = (0..m.rows)
        .map(|r| {
            m.row(r)
                .iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .map(|(c, x)| (c, x.clone()))
                .collect::<Vec<_>>()
        })
        .filter(|r| !r.is_empty())
        .collect();
    rows.sort_by_key(Vec::len);
    let mut pivots: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
    for mut row in rows {
        while let Some((lead, _)) = row.first() {
            let Some(p) = pivots.get(lead) else {
                let inv = f.inv(&row[0].1);
                let lead = *lead;
                row.iter_mut().for_each(|(_, x)| *x = f.mul(x, &inv));
                pivots.insert(lead, row);
                break;
            };
            row = axpy(f, &row, p);
        }
    }
    pivots.len()
}

/// `row − row[lead] · pivot`, where the pivot has leading entry 1 at `lead`.
fn axpy<F: Field>(
    f: &F,
    row: &[(usize, F::Elem)],
    pivot: &[(usize, F::Elem)],
) -> Vec<(usize, F::Elem)> {
    let factor = row[0].1.clone();
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let (ci, cj) = (
            row.get(i).map_or(usize::MAX, |e| e.0),
            pivot.get(j).map_or(usize::MAX, |e| e.0),
        );
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else {
            let scaled = f.mul(&factor, &pivot[j].1);
            let v = if ci == cj {
                i += 1;
                f.sub(&row[i - 1].1, &scaled)
            } else {
                f.neg(&scaled)
            };
            if !f.is_zero(&v) {
                out.push((cj, v));
            }
            j += 1;
        }
    }
    out
}

/// Bareiss elimination on the integer matrix obtained by clearing
/// denominators row by row.
#[cfg(test)]
fn fraction_free_rank(m: &DenseMatrix<Rationals>) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k];
                a[r][k] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        ScalarField::prime(p).map(|_| PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> ScalarField {
        ScalarField::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
}

/// Runs `$body` with `$f` bound to the concrete field selected by a
/// [`ScalarField`].
#[macro_export]
macro_rules! with_field {
    ($sf:expr, |$f:ident| $body:expr) => {
        match $sf {
            $crate::linalg::ScalarField::Rationals => {
                let $f = $crate::linalg::Rationals;
                $body
            }
            $crate::linalg::ScalarField::Prime(p) => {
                let $f = $crate::linalg::PrimeField::new(p).expect("validated prime");
                $body
            }
        }
    };
}

#[derive(Clone, PartialEq)]
pub struct DenseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for DenseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_i64(field: &F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        DenseMatrix {
            field: field.clone(),
            rows,
            cols,
            data: entries.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Entrywise equality in the field.
    pub fn same_entries(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| self.field.is_zero(&self.field.sub(a, b)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch in product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(r, c), &f.mul(a, b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.field.rank(self)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !f.is_zero(m.get(r, c))) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = f.inv(m.get(lead, c));
            for k in c..m.cols {
                let v = f.mul(m.get(lead, k), &inv);
                m.set(lead, k, v);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for k in c..m.cols {
                    let v = f.sub(m.get(r, k), &f.mul(&factor, m.get(lead, k)));
                    m.set(r, k, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the null space, as columns of a `cols × nullity` matrix.
    pub fn kernel(&self) -> Self {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (row, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(row, fc)));
            }
        }
        k
    }

    /// Left inverse of a matrix with full column rank.
    pub fn left_inverse(&self) -> Result<Self> {
        let f = &self.field;
        let (m, k) = (self.rows, self.cols);
        let mut aug = Self::zeros(f, m, k + m);
        for r in 0..m {
            for c in 0..k {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, k + r, f.one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < k || pivots[..k].iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Invariant(
                "left inverse of rank-deficient matrix".into(),
            ));
        }
        let mut l = Self::zeros(f, k, m);
        for r in 0..k {
            for c in 0..m {
                l.set(r, c, red.get(r, k + c).clone());
            }
        }
        Ok(l)
    }
}

pub fn rank<F: Field>(m: &DenseMatrix<F>) -> usize {
    m.rank()
}

/// A finite cochain complex `0 → C^0 → C^1 → … → C^{m-1} → 0`, where
/// `differentials[i]` maps term `i` to term `i + 1`.
#[derive(Debug, Clone)]
pub struct VectorSpaceComplex<F: Field> {
    field: F,
    term_dims: Vec<usize>,
    differentials: Vec<DenseMatrix<F>>,
}

impl<F: Field> VectorSpaceComplex<F> {
    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(
        field: &F,
        term_dims: Vec<usize>,
        differentials: Vec<DenseMatrix<F>>,
    ) -> Result<Self> {
        let c = Self::new_unchecked(field, term_dims, differentials)?;
        for i in 0..c.differentials.len().saturating_sub(1) {
            if !c.differentials[i + 1].mul(&c.differentials[i]).is_zero() {
                return Err(Error::NotAComplex(format!("d_{} ∘ d_{i} ≠ 0", i + 1)));
            }
        }
        Ok(c)
    }

    /// Checks shapes only. For complexes whose `d ∘ d = 0` holds by construction.
    pub fn new_unchecked(
        field: &F,
        term_dims: Vec<usize>,
        differentials: Vec<DenseMatrix<F>>,
    ) -> Result<Self> {
        if differentials.len() + 1 != term_dims.len().max(1) {
            return Err(Error::NotAComplex(format!(
                "{} terms need {} differentials, got {}",
                term_dims.len(),
                term_dims.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.cols() != term_dims[i] || d.rows() != term_dims[i + 1] {
                return Err(Error::NotAComplex(format!(
                    "d_{i} has shape {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    term_dims[i + 1],
                    term_dims[i]
                )));
            }
        }
        Ok(VectorSpaceComplex {
            field: field.clone(),
            term_dims,
            differentials,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn term_dims(&self) -> &[usize] {
        &self.term_dims
    }

    pub fn len(&self) -> usize {
        self.term_dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.term_dims.is_empty()
    }

    pub fn differential(&self, i: usize) -> Option<&DenseMatrix<F>> {
        self.differentials.get(i)
    }

    /// `h^i = dim C^i − rank d_i − rank d_{i−1}`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(|d| d.rank()).collect();
        (0..self.term_dims.len())
            .map(|i| {
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i > 0 { ranks[i - 1] } else { 0 };
                self.term_dims[i] - out - inc
            })
            .collect()
    }

    pub fn cohomology_dim(&self, i: usize) -> usize {
        if i >= self.term_dims.len() || self.term_dims[i] == 0 {
            return 0;
        }
        let out = self.differentials.get(i).map_or(0, |d| d.rank());
        let inc = if i > 0 {
            self.differentials[i - 1].rank()
        } else {
            0
        };
        self.term_dims[i] - out - inc
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.term_dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

pub fn cohomology_dims<F: Field>(c: &VectorSpaceComplex<F>) -> Vec<usize> {
    c.cohomology_dims()
}

/// A chosen basis of `H^i` of a complex together with a coordinate map
/// from cocycles to that basis.
#[derive(Debug, Clone)]
pub struct CohomologyBasis<F: Field> {
    /// Representative cocycles, one column per basis class.
    reps: DenseMatrix<F>,
    /// `dim H × dim C^i`; applied to a cocycle it yields its class coordinates.
    coords: DenseMatrix<F>,
}

impl<F: Field> CohomologyBasis<F> {
    pub fn compute(c: &VectorSpaceComplex<F>, i: usize) -> Result<Self> {
        let f = c.field().clone();
        let dim = c.term_dims.get(i).copied().unwrap_or(0);
        if dim == 0 {
            return Ok(CohomologyBasis {
                reps: DenseMatrix::zeros(&f, 0, 0),
                coords: DenseMatrix::zeros(&f, 0, 0),
            });
        }
        let cocycles = match c.differential(i) {
            Some(d) => d.kernel(),
            None => DenseMatrix::identity(&f, dim),
        };
        let mut basis: Vec<Vec<F::Elem>> = Vec::new();
        if i > 0 {
            let d = &c.differentials[i - 1];
            let (_, pivots) = d.rref();
            basis.extend(pivots.iter().map(|&p| d.column(p)));
        }
        let boundary_rank = basis.len();
        let mut current = boundary_rank;
        let mut reps = Vec::new();
        for k in 0..cocycles.cols() {
            let z = cocycles.column(k);
            basis.push(z.clone());
            let r = DenseMatrix::from_columns(&f, dim, &basis).rank();
            if r > current {
                current = r;
                reps.push(z);
            } else {
                basis.pop();
            }
        }
        let w = DenseMatrix::from_columns(&f, dim, &basis);
        let l = w.left_inverse()?;
        let h = reps.len();
        let mut coords = DenseMatrix::zeros(&f, h, dim);
        for r in 0..h {
            for col in 0..dim {
                coords.set(r, col, l.get(boundary_rank + r, col).clone());
            }
        }
        Ok(CohomologyBasis {
            reps: DenseMatrix::from_columns(&f, dim, &reps),
            coords,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn reps(&self) -> &DenseMatrix<F> {
        &self.reps
    }

    /// Matrix of the map on cohomology induced by the degree-`i` component
    /// `chain` of a chain map, in the bases `self` (source) and `target`.
    pub fn induced(&self, target: &CohomologyBasis<F>, chain: &DenseMatrix<F>) -> DenseMatrix<F> {
        let f = chain.field().clone();
        if self.dim() == 0 || target.dim() == 0 {
            return DenseMatrix::zeros(&f, target.dim(), self.dim());
        }
        target.coords.mul(&chain.mul(&self.reps))
    }
}
