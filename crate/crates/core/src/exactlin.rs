//! Exact rational linear algebra.
//!
//! Everything here works over ℚ with dense matrices. Dimensions in this
//! workbench stay in the low hundreds, so a row-reduced echelon form computed
//! with exact fractions is both simple and fast enough. All other modules
//! address coordinates positionally; basis labels are carried for reporting.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always kept in lowest terms.
pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// The fraction `num/den`. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a scalar as `"num/den"` (denominator always present).
pub fn scalar_to_string(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Parses `"n"`, `"n/d"` or a JSON integer-like string.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid rational `{text}`")))
    };
    match text.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{text}`")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(text)?)),
    }
}

/// A finite-dimensional vector space with labelled basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorSpace {
    labels: Vec<String>,
}

impl VectorSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidStructure(format!("duplicate basis label `{l}`")));
            }
        }
        Ok(Self { labels })
    }

    /// Space of dimension `dim` with labels `prefix0, prefix1, ...`.
    pub fn with_dim(prefix: &str, dim: usize) -> Self {
        Self {
            labels: (0..dim).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self { rows: n, cols, data })
    }

    /// Convenience constructor from integer rows; all rows must have equal length.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Scalar> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| int(x))
            })
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(columns: &[Vec<Scalar>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m[(r, c)] = x.clone();
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = &self[(r, c)];
                if !x.is_zero() {
                    t[(c, r)] = x.clone();
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} applied to {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            for (c, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let a = &self[(r, c)];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`, indices ordered (self, other).
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = &self[(r1, c1)];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = &other[(r2, c2)];
                        if !b.is_zero() {
                            out[(r1 * other.rows + r2, c1 * other.cols + c2)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        Ok(out)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = rref_in_place(&mut rows, self.cols);
        let m = Matrix::from_rows(rows, self.cols).expect("rref preserves shape");
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space. Basis vector `k` has a 1 in the `k`-th free
    /// column and zeros in the other free columns.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); n];
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                let x = &r[(i, free)];
                if !x.is_zero() {
                    v[p] = -x.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self · x = target`, free variables set to zero; `None`
    /// when the system is inconsistent.
    pub fn solve(&self, target: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if target.len() != self.rows {
            return Err(Error::Shape(format!(
                "target of length {} for {}x{} system",
                target.len(),
                self.rows,
                self.cols
            )));
        }
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(target[r].clone());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rows[i][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Solves `self · X = rhs` column by column; `None` if any column fails.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if rhs.rows != self.rows {
            return Err(Error::Shape("solve_matrix row mismatch".into()));
        }
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend(rhs.row(r).iter().cloned());
                row
            })
            .collect();
        // Only eliminate on the coefficient block.
        let pivots = rref_in_place_limited(&mut rows, self.cols, self.cols + rhs.cols);
        for row in rows.iter().skip(pivots.len()) {
            if row[self.cols..].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x[(p, c)] = rows[i][self.cols + c].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        match self.solve_matrix(&Matrix::identity(self.rows))? {
            Some(inv) if self.rank() == self.rows => Ok(inv),
            _ => Err(Error::Precondition("matrix is singular".into())),
        }
    }

    /// Indices of a maximal set of linearly independent columns (greedy, left to right).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// Basis of the column space, as vectors.
    pub fn column_space(&self) -> Vec<Vec<Scalar>> {
        self.independent_columns()
            .into_iter()
            .map(|c| self.column(c))
            .collect()
    }

    pub fn max_abs_entry(&self) -> Scalar {
        self.data
            .iter()
            .map(|x| x.abs())
            .fold(Scalar::zero(), |a, b| if b > a { b } else { a })
    }
}

fn rref_in_place(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    rref_in_place_limited(rows, ncols, ncols)
}

/// Gauss–Jordan elimination choosing pivots only among the first
/// `pivot_cols` columns while updating all `total_cols` columns.
fn rref_in_place_limited(rows: &mut [Vec<Scalar>], pivot_cols: usize, total_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..pivot_cols {
        if pr >= rows.len() {
            break;
        }
        let Some(found) = (pr..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pr, found);
        let inv = rows[pr][col].recip();
        if !inv.is_one() {
            for x in rows[pr][col..total_cols].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = rows[pr].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pr || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in col..total_cols {
                if !pivot_row[c].is_zero() {
                    row[c] -= &f * &pivot_row[c];
                }
            }
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

/// A linear map between labelled spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub domain: VectorSpace,
    pub codomain: VectorSpace,
    pub matrix: Matrix,
}

impl LinearMap {
    pub fn new(domain: VectorSpace, codomain: VectorSpace, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::Shape(format!(
                "matrix is {}x{} but map is {} -> {}",
                matrix.rows(),
                matrix.cols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(space: VectorSpace) -> Self {
        let n = space.dim();
        Self {
            domain: space.clone(),
            codomain: space,
            matrix: Matrix::identity(n),
        }
    }

    pub fn zero(domain: VectorSpace, codomain: VectorSpace) -> Self {
        let matrix = Matrix::zeros(codomain.dim(), domain.dim());
        Self {
            domain,
            codomain,
            matrix,
        }
    }
}

/// Some preimage of `target` under `map` (free pivots zero), or `None`.
pub fn solve(map: &LinearMap, target: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    map.matrix.solve(target)
}

/// Homology of a two-step complex: dimension plus cocycles whose classes form a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub dim: usize,
    pub representatives: Vec<Vec<Scalar>>,
}

/// Homology of `d_in` followed by `d_out` at the middle term.
pub fn homology_at(d_in: &LinearMap, d_out: &LinearMap) -> Result<Homology> {
    if d_in.codomain.dim() != d_out.domain.dim() {
        return Err(Error::Shape(format!(
            "middle dimensions differ: {} vs {}",
            d_in.codomain.dim(),
            d_out.domain.dim()
        )));
    }
    homology_of_matrices(&d_in.matrix, &d_out.matrix)
}

/// Matrix form of [`homology_at`]. `d_in` is `n x a`, `d_out` is `b x n`.
pub fn homology_of_matrices(d_in: &Matrix, d_out: &Matrix) -> Result<Homology> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::Shape(format!(
            "middle dimensions differ: {} vs {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let composite = d_out.mul(d_in)?;
    if !composite.is_zero() {
        return Err(Error::NotAComplex(format!(
            "d_out·d_in has max entry {}",
            composite.max_abs_entry()
        )));
    }
    let n = d_in.rows();
    let mut span = SpanBuilder::new(n);
    for v in d_in.column_space() {
        span.insert(&v);
    }
    let mut representatives = Vec::new();
    for z in d_out.kernel() {
        if span.insert(&z) {
            representatives.push(z);
        }
    }
    Ok(Homology {
        dim: representatives.len(),
        representatives,
    })
}

/// Incrementally maintained row-reduced basis of a subspace of ℚⁿ.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    n: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current basis; the remainder is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n);
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

/// Rank of the map induced on homology by `f: C → C'`, given cocycle
/// representatives of the source homology and the target's coboundary
/// matrix `d_in_target` (into the same degree).
pub fn induced_rank(
    f: &Matrix,
    source_reps: &[Vec<Scalar>],
    d_in_target: &Matrix,
) -> Result<usize> {
    let mut span = SpanBuilder::new(f.rows());
    for b in d_in_target.column_space() {
        span.insert(&b);
    }
    let base = span.dim();
    for z in source_reps {
        span.insert(&f.mul_vec(z)?);
    }
    Ok(span.dim() - base)
}

/// Coordinates of the class of the cocycle `v` in the basis given by
/// `reps`, modulo the image of `d_in`. `None` if `v` is not in the span.
pub fn class_coordinates(reps: &[Vec<Scalar>], d_in: &Matrix, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let n = v.len();
    if d_in.rows() != n {
        return Err(Error::Shape(format!("coboundary matrix has {} rows, vector has {}", d_in.rows(), n)));
    }
    let mut m = Matrix::from_columns(reps, n);
    m = m.hstack(d_in)?;
    Ok(m.solve(v)?.map(|x| x[..reps.len()].to_vec()))
}

/// Bilinear map `V × W → U` given by sparse structure constants
/// `(i, j, k, c)`: `e_i ⊗ f_j ↦ c·g_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BilinearMap {
    pub left_dim: usize,
    pub right_dim: usize,
    pub out_dim: usize,
    pub terms: Vec<(usize, usize, usize, Scalar)>,
}

impl BilinearMap {
    pub fn zero(left_dim: usize, right_dim: usize, out_dim: usize) -> Self {
        Self {
            left_dim,
            right_dim,
            out_dim,
            terms: Vec::new(),
        }
    }

    /// Builds from a dense table `table[i][j]` of output vectors, dropping zeros.
    pub fn from_table(left_dim: usize, right_dim: usize, out_dim: usize, table: &[Vec<Vec<Scalar>>]) -> Self {
        let mut terms = Vec::new();
        for (i, row) in table.iter().enumerate() {
            for (j, out) in row.iter().enumerate() {
                for (k, c) in out.iter().enumerate() {
                    if !c.is_zero() {
                        terms.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        Self {
            left_dim,
            right_dim,
            out_dim,
            terms,
        }
    }

    /// Evaluates on plain vectors.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.out_dim);
        for (i, j, k, c) in &self.terms {
            if x[*i].is_zero() || y[*j].is_zero() {
                continue;
            }
            out[*k] += c * &x[*i] * &y[*j];
        }
        out
    }

    /// Dense table `[i][j] -> out vector`.
    pub fn table(&self) -> Vec<Vec<Vec<Scalar>>> {
        let mut t = vec![vec![zero_vec(self.out_dim); self.right_dim]; self.left_dim];
        for (i, j, k, c) in &self.terms {
            t[*i][*j][*k] += c;
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.3.is_zero())
    }
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn map(m: Matrix) -> LinearMap {
        let d = VectorSpace::with_dim("e", m.cols());
        let c = VectorSpace::with_dim("f", m.rows());
        LinearMap::new(d, c, m).unwrap()
    }

    #[test]
    fn solve_identity() {
        let m = map(Matrix::identity(2));
        assert_eq!(solve(&m, &v(&[1, 2])).unwrap(), Some(v(&[1, 2])));
    }

    #[test]
    fn solve_zero_map_has_no_solution() {
        let m = map(Matrix::zeros(1, 1));
        assert_eq!(solve(&m, &v(&[1])).unwrap(), None);
    }

    #[test]
    fn solve_sets_free_pivots_to_zero() {
        let m = map(Matrix::from_i64(&[&[1, 1]]));
        assert_eq!(solve(&m, &v(&[3])).unwrap(), Some(v(&[3, 0])));
    }

    #[test]
    fn solve_rejects_wrong_target_length() {
        let m = map(Matrix::identity(2));
        assert!(matches!(solve(&m, &v(&[1])), Err(Error::Shape(_))));
    }

    #[test]
    fn homology_of_trivial_differentials() {
        let h = homology_of_matrices(&Matrix::zeros(1, 0), &Matrix::zeros(0, 1)).unwrap();
        assert_eq!(h.dim, 1);
    }

    #[test]
    fn homology_exact_at_middle() {
        let h = homology_of_matrices(&Matrix::identity(1), &Matrix::zeros(0, 1)).unwrap();
        assert_eq!(h.dim, 0);
    }

    #[test]
    fn homology_diagonal_into_plane() {
        let d_in = Matrix::from_i64(&[&[1], &[1]]);
        let d_out = Matrix::from_i64(&[&[1, -1]]);
        let h = homology_of_matrices(&d_in, &d_out).unwrap();
        assert_eq!(h.dim, 0);
    }

    #[test]
    fn homology_rejects_non_complex() {
        let err = homology_of_matrices(&Matrix::identity(1), &Matrix::identity(1)).unwrap_err();
        assert!(matches!(err, Error::NotAComplex(_)));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn scalar_text_roundtrip() {
        let s = frac(-6, 4);
        assert_eq!(scalar_to_string(&s), "-3/2");
        assert_eq!(parse_scalar("-3/2").unwrap(), s);
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_err());
    }
}
