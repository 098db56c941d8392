//! Dense exact linear algebra over ℚ(u).

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::arith::{poly_lcm, Poly, RatFun, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix over ℚ(u).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFun>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![RatFun::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &RatFun::one())
    }

    pub fn scalar(n: usize, c: &RatFun) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFun>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests: every entry parsed from the textual syntax.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|s| s.parse()).collect::<Result<Vec<RatFun>>>())
                .collect::<Result<_>>()?,
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFun) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[RatFun] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatFun> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFun::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> RatFun {
        (0..self.rows.min(self.cols)).fold(RatFun::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, rhs: &Matrix) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        Ok(())
    }

    /// `self - c·I`.
    pub fn shift(&self, c: &RatFun) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] = &m[(i, i)] - c;
        }
        Ok(m)
    }

    pub fn scale(&self, c: &RatFun) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mat_vec(&self, v: &[RatFun]) -> Result<Vec<RatFun>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(RatFun::zero(), |acc, (a, b)| acc + &(a * b)))
            .collect())
    }

    /// Entrywise specialization `u = t`.
    pub fn eval(&self, t: &Rational) -> Result<Vec<Vec<Rational>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|a| a.eval(t)).collect()).collect()
    }

    /// Vertical concatenation; all blocks must share a column count.
    pub fn vstack(blocks: &[Matrix], cols: usize) -> Result<Matrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch("vstack column count".into()));
            }
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Ok(Matrix { rows, cols, data })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = RatFun;
    fn index(&self, (i, j): (usize, usize)) -> &RatFun {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RatFun {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    /// Panics on a shape mismatch; use [`Matrix::checked_mul`] otherwise.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Determinant by fraction-free elimination.
///
/// Each row is multiplied by the lcm of its denominators so the work happens
/// in ℚ[u]; Bareiss' update keeps every intermediate a polynomial, and the
/// row multipliers are divided back out at the end.
pub fn det_bareiss(m: &Matrix) -> Result<RatFun> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(RatFun::one());
    }
    let mut scale = Poly::one();
    let mut a: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for i in 0..n {
        let l = m.row(i).iter().fold(Poly::one(), |acc, x| poly_lcm(&acc, x.den()));
        a.push(m.row(i).iter().map(|x| (x.num() * &l).div_exact(x.den()).expect("lcm is a multiple")).collect());
        scale = &scale * &l;
    }

    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(RatFun::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev)?;
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = RatFun::new(a[n - 1][n - 1].clone(), scale)?;
    Ok(if negate { -d } else { d })
}

/// Reduced row echelon form by Gauss-Jordan elimination over ℚ(u).
/// Returns the reduced matrix and its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a[(r, c)].inv().expect("pivot is nonzero");
        for j in c..a.cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..a.cols {
                if !a[(r, j)].is_zero() {
                    a[(i, j)] = &a[(i, j)] - &(&f * &a[(r, j)]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// A subspace of ℚ(u)^n held by a canonical basis: the basis vectors are the
/// rows of a reduced row echelon matrix (equivalently, the columns of a
/// reduced column echelon one), so equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<RatFun>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| if i == j { RatFun::one() } else { RatFun::zero() }).collect())
            .collect();
        Subspace { ambient_dim, basis }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<RatFun>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        if vectors.is_empty() || ambient_dim == 0 {
            return Ok(Self::zero(ambient_dim));
        }
        let m = Matrix::from_rows(vectors.to_vec())?;
        let (r, pivots) = rref(&m);
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<RatFun>] {
        &self.basis
    }

    pub fn contains(&self, v: &[RatFun]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Subspace::span(self.ambient_dim, &vs).map(|s| s.dim() == self.dim()).unwrap_or(false)
    }
}

/// Kernel `{v : m·v = 0}` in canonical form; dimension is `cols - rank`.
pub fn nullspace(m: &Matrix) -> Subspace {
    let (r, pivots) = rref(m);
    let n = m.cols;
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<RatFun>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![RatFun::zero(); n];
            v[f] = RatFun::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(i, f)];
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors).expect("kernel vectors have ambient length")
}

/// Dimension of the simultaneous eigenspace `∩ ker(mats[i] - scalars[i]·I)`
/// inside ℚ(u)^dim. With no matrices this is `dim`.
pub fn eigenspace_dim(dim: usize, mats: &[Matrix], scalars: &[RatFun]) -> Result<usize> {
    Ok(eigenspace(dim, mats, scalars)?.dim())
}

pub fn eigenspace(dim: usize, mats: &[Matrix], scalars: &[RatFun]) -> Result<Subspace> {
    if mats.len() != scalars.len() {
        return Err(Error::DimensionMismatch("matrix and scalar lists differ in length".into()));
    }
    let mut blocks = Vec::with_capacity(mats.len());
    for (m, c) in mats.iter().zip(scalars) {
        if m.rows != dim || m.cols != dim {
            return Err(Error::DimensionMismatch(format!("expected {dim}x{dim}, got {}x{}", m.rows, m.cols)));
        }
        blocks.push(m.shift(c)?);
    }
    if blocks.is_empty() {
        return Ok(Subspace::full(dim));
    }
    Ok(nullspace(&Matrix::vstack(&blocks, dim)?))
}

/// The intertwiner space `{A : rho_b[s]·A = A·rho_a[s] for all s}` with `A`
/// of shape `dim_b x dim_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub rows: usize,
    pub cols: usize,
    /// Coordinates of `A` flattened row-major: `A[i][j]` is `i * cols + j`.
    pub space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.space.basis().iter().map(|v| Matrix { rows: self.rows, cols: self.cols, data: v.clone() }).collect()
    }
}

/// Solves the stacked Sylvester-type system for all intertwiners from the
/// module given by `rho_a` (dimension `dim_a`) to the one given by `rho_b`.
pub fn hom_space(dim_a: usize, rho_a: &[Matrix], dim_b: usize, rho_b: &[Matrix]) -> Result<HomSpace> {
    if rho_a.len() != rho_b.len() {
        return Err(Error::DimensionMismatch("generator lists differ in length".into()));
    }
    for m in rho_a {
        if m.rows != dim_a || m.cols != dim_a {
            return Err(Error::DimensionMismatch("rho_a matrix shape".into()));
        }
    }
    for m in rho_b {
        if m.rows != dim_b || m.cols != dim_b {
            return Err(Error::DimensionMismatch("rho_b matrix shape".into()));
        }
    }
    let (m, n) = (dim_b, dim_a);
    let unknowns = m * n;
    let var = |i: usize, j: usize| i * n + j;
    let mut sys = Matrix::zeros(rho_a.len() * unknowns, unknowns);
    for (s, (ra, rb)) in rho_a.iter().zip(rho_b).enumerate() {
        for i in 0..m {
            for j in 0..n {
                let row = s * unknowns + var(i, j);
                // (rb·A)[i][j] = Σ_k rb[i][k] A[k][j]
                for k in 0..m {
                    let c = &rb[(i, k)];
                    if !c.is_zero() {
                        sys[(row, var(k, j))] = &sys[(row, var(k, j))] + c;
                    }
                }
                // (A·ra)[i][j] = Σ_k A[i][k] ra[k][j]
                for k in 0..n {
                    let c = &ra[(k, j)];
                    if !c.is_zero() {
                        sys[(row, var(i, k))] = &sys[(row, var(i, k))] - c;
                    }
                }
            }
        }
    }
    let space = if rho_a.is_empty() { Subspace::full(unknowns) } else { nullspace(&sys) };
    Ok(HomSpace { rows: m, cols: n, space })
}
