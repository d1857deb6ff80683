//! Cosimplicial vector spaces up to a level cap.
//!
//! Identity checks, conormalization `Nⁿ = ∩ ker σ^i`, the quotient model
//! `N̄ⁿ = Xⁿ / Σ_{i≥1} ∂^i X^{n-1}`, Dold-Kan denormalization of cochain
//! complexes, shuffles and the shuffle contraction `∇^{pq}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{homology_of_matrices, Homology, Matrix, Scalar};

/// A finite cochain complex `C⁰ → C¹ → … → C^top`, ending at its last term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        if differentials.len() + 1 != dims.len() {
            return Err(Error::Shape(format!(
                "{} terms need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.rows() != dims[n + 1] || d.cols() != dims[n] {
                return Err(Error::Shape(format!("differential {n} has the wrong shape")));
            }
        }
        for n in 0..differentials.len().saturating_sub(1) {
            if !differentials[n + 1].mul(&differentials[n])?.is_zero() {
                return Err(Error::NotAComplex(format!("degree {n}")));
            }
        }
        Ok(Self { dims, differentials })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d: Cⁿ → C^{n+1}`, zero past the top.
    pub fn differential(&self, n: usize) -> Matrix {
        self.differentials
            .get(n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(n + 1), self.dim(n)))
    }

    pub fn differential_into(&self, n: usize) -> Matrix {
        if n == 0 {
            Matrix::zeros(self.dim(0), 0)
        } else {
            self.differential(n - 1)
        }
    }

    pub fn cohomology(&self, n: usize) -> Result<Homology> {
        if n > self.top() {
            return Err(Error::OutOfRange { index: n, max: self.top() });
        }
        homology_of_matrices(&self.differential_into(n), &self.differential(n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `∂^j∂^i = ∂^i∂^{j-1}` for `i < j`.
    CofaceCoface,
    /// `σ^jσ^i = σ^iσ^{j+1}` for `i ≤ j`.
    CodegeneracyCodegeneracy,
    /// The mixed relations for `σ^j∂^i`.
    CodegeneracyCoface,
}

/// A failed identity, located by source level and the indices `i`, `j` as
/// they appear in the identity's left-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub identity: Identity,
    pub level: usize,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, n) = (self.i, self.j, self.level);
        match self.identity {
            Identity::CofaceCoface => write!(f, "∂^{j}∂^{i} ≠ ∂^{i}∂^{} on level {n}", j - 1),
            Identity::CodegeneracyCodegeneracy => write!(f, "σ^{j}σ^{i} ≠ σ^{i}σ^{} on level {n}", j + 1),
            Identity::CodegeneracyCoface => write!(f, "σ^{j}∂^{i} relation fails on level {n}"),
        }
    }
}

/// Which cofaces take part in identity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CofaceRange {
    /// `∂⁰ … ∂^{n+1}` on level `n`.
    Full,
    /// Only `∂¹ … ∂ⁿ` on level `n` (the shape of an SDC without a base point).
    Inner,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosimplicialSpace {
    dims: Vec<usize>,
    /// `cofaces[n][i]: level n → n+1`, `0 ≤ i ≤ n+1`, for `n < cap`.
    cofaces: Vec<Vec<Matrix>>,
    /// `codegeneracies[n][i]: level n → n-1`, `0 ≤ i < n`.
    codegeneracies: Vec<Vec<Matrix>>,
}

impl CosimplicialSpace {
    pub fn new(dims: Vec<usize>, cofaces: Vec<Vec<Matrix>>, codegeneracies: Vec<Vec<Matrix>>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("a cosimplicial space needs level 0".into()));
        }
        let cap = dims.len() - 1;
        if cofaces.len() != cap || codegeneracies.len() != cap + 1 {
            return Err(Error::Shape("operator lists do not match the level cap".into()));
        }
        for n in 0..cap {
            if cofaces[n].len() != n + 2 {
                return Err(Error::Shape(format!("level {n} needs {} cofaces", n + 2)));
            }
            for m in &cofaces[n] {
                if m.rows() != dims[n + 1] || m.cols() != dims[n] {
                    return Err(Error::Shape(format!("coface on level {n} has the wrong shape")));
                }
            }
        }
        for n in 0..=cap {
            if codegeneracies[n].len() != n {
                return Err(Error::Shape(format!("level {n} needs {n} codegeneracies")));
            }
            for m in &codegeneracies[n] {
                if m.rows() != dims[n - 1] || m.cols() != dims[n] {
                    return Err(Error::Shape(format!("codegeneracy on level {n} has the wrong shape")));
                }
            }
        }
        Ok(Self {
            dims,
            cofaces,
            codegeneracies,
        })
    }

    /// The constant cosimplicial space with value `ℚ^dim`.
    pub fn constant(dim: usize, cap: usize) -> Self {
        let id = Matrix::identity(dim);
        Self {
            dims: vec![dim; cap + 1],
            cofaces: (0..cap).map(|n| vec![id.clone(); n + 2]).collect(),
            codegeneracies: (0..=cap).map(|n| vec![id.clone(); n]).collect(),
        }
    }

    pub fn cap(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn coface(&self, n: usize, i: usize) -> &Matrix {
        &self.cofaces[n][i]
    }

    pub fn codegeneracy(&self, n: usize, i: usize) -> &Matrix {
        &self.codegeneracies[n][i]
    }

    /// Replaces one coface (used to build corrupted fixtures).
    pub fn set_coface(&mut self, n: usize, i: usize, m: Matrix) -> Result<()> {
        let old = &self.cofaces[n][i];
        if old.rows() != m.rows() || old.cols() != m.cols() {
            return Err(Error::Shape("replacement coface has the wrong shape".into()));
        }
        self.cofaces[n][i] = m;
        Ok(())
    }

    pub fn set_codegeneracy(&mut self, n: usize, i: usize, m: Matrix) -> Result<()> {
        let old = &self.codegeneracies[n][i];
        if old.rows() != m.rows() || old.cols() != m.cols() {
            return Err(Error::Shape("replacement codegeneracy has the wrong shape".into()));
        }
        self.codegeneracies[n][i] = m;
        Ok(())
    }

    /// Levels `0..=cap` only.
    pub fn truncate(&self, cap: usize) -> Self {
        let cap = cap.min(self.cap());
        Self {
            dims: self.dims[..=cap].to_vec(),
            cofaces: self.cofaces[..cap].to_vec(),
            codegeneracies: self.codegeneracies[..=cap].to_vec(),
        }
    }

    /// Diagonal tensor product: levels `Xⁿ ⊗ Yⁿ`, operators `f ⊗ f`.
    pub fn tensor(&self, other: &Self) -> Self {
        let cap = self.cap().min(other.cap());
        Self {
            dims: (0..=cap).map(|n| self.dims[n] * other.dims[n]).collect(),
            cofaces: (0..cap)
                .map(|n| (0..n + 2).map(|i| self.cofaces[n][i].kron(&other.cofaces[n][i])).collect())
                .collect(),
            codegeneracies: (0..=cap)
                .map(|n| (0..n).map(|i| self.codegeneracies[n][i].kron(&other.codegeneracies[n][i])).collect())
                .collect(),
        }
    }

    /// Exhaustive identity verification on all levels up to the cap.
    pub fn check(&self) -> Vec<IdentityViolation> {
        self.check_with(CofaceRange::Full)
    }

    pub fn check_with(&self, range: CofaceRange) -> Vec<IdentityViolation> {
        let cap = self.cap();
        let ok = |n: usize, i: usize| match range {
            CofaceRange::Full => i <= n + 1,
            CofaceRange::Inner => i >= 1 && i <= n,
        };
        let mul = |a: &Matrix, b: &Matrix| a.mul(b).expect("operator shapes");
        let mut out = Vec::new();
        for n in 0..cap.saturating_sub(1) {
            for j in 0..=n + 2 {
                for i in 0..j {
                    if !(ok(n, i) && ok(n + 1, j) && ok(n, j - 1) && ok(n + 1, i)) {
                        continue;
                    }
                    let lhs = mul(&self.cofaces[n + 1][j], &self.cofaces[n][i]);
                    let rhs = mul(&self.cofaces[n + 1][i], &self.cofaces[n][j - 1]);
                    if lhs != rhs {
                        out.push(IdentityViolation {
                            identity: Identity::CofaceCoface,
                            level: n,
                            i,
                            j,
                        });
                    }
                }
            }
        }
        for n in 2..=cap {
            for j in 0..n - 1 {
                for i in 0..=j {
                    let lhs = mul(&self.codegeneracies[n - 1][j], &self.codegeneracies[n][i]);
                    let rhs = mul(&self.codegeneracies[n - 1][i], &self.codegeneracies[n][j + 1]);
                    if lhs != rhs {
                        out.push(IdentityViolation {
                            identity: Identity::CodegeneracyCodegeneracy,
                            level: n,
                            i,
                            j,
                        });
                    }
                }
            }
        }
        for n in 0..cap {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    if !ok(n, i) {
                        continue;
                    }
                    let lhs = mul(&self.codegeneracies[n + 1][j], &self.cofaces[n][i]);
                    let rhs = if i < j {
                        if !ok(n - 1, i) {
                            continue;
                        }
                        mul(&self.cofaces[n - 1][i], &self.codegeneracies[n][j - 1])
                    } else if i == j || i == j + 1 {
                        Matrix::identity(self.dims[n])
                    } else {
                        if !ok(n - 1, i - 1) {
                            continue;
                        }
                        mul(&self.cofaces[n - 1][i - 1], &self.codegeneracies[n][j])
                    };
                    if lhs != rhs {
                        out.push(IdentityViolation {
                            identity: Identity::CodegeneracyCoface,
                            level: n,
                            i,
                            j,
                        });
                    }
                }
            }
        }
        out
    }

    /// `d = Σ_i (-1)^i ∂^i` from level `n`.
    pub fn alternating_differential(&self, n: usize) -> Matrix {
        let mut d = Matrix::zeros(self.dims[n + 1], self.dims[n]);
        for (i, m) in self.cofaces[n].iter().enumerate() {
            d = if i % 2 == 0 { d.add(m) } else { d.sub(m) }.expect("shapes");
        }
        d
    }

    /// The unnormalized cochain complex on levels `0..=cap`.
    pub fn alternating_complex(&self) -> Result<CochainComplex> {
        CochainComplex::new(
            self.dims.clone(),
            (0..self.cap()).map(|n| self.alternating_differential(n)).collect(),
        )
    }

    /// Basis (as columns) of `Nⁿ = ∩_i ker σ^i`.
    pub fn normalized_basis(&self, n: usize) -> Matrix {
        if n == 0 {
            return Matrix::identity(self.dims[0]);
        }
        let mut stacked = Matrix::zeros(0, self.dims[n]);
        for s in &self.codegeneracies[n] {
            stacked = stacked.vstack(s).expect("shapes");
        }
        Matrix::from_columns(&stacked.kernel(), self.dims[n])
    }

    /// Conormalized complex with its inclusions into the levels.
    pub fn conormalize(&self) -> Result<Conormalized> {
        if let Some(v) = self.check().first() {
            return Err(Error::Precondition(format!("cosimplicial identity violated: {v}")));
        }
        let bases: Vec<Matrix> = (0..=self.cap()).map(|n| self.normalized_basis(n)).collect();
        let mut diffs = Vec::new();
        for n in 0..self.cap() {
            let image = self.alternating_differential(n).mul(&bases[n])?;
            let coords = bases[n + 1]
                .solve_matrix(&image)?
                .ok_or_else(|| Error::InvalidStructure(format!("d does not preserve N at level {n}")))?;
            diffs.push(coords);
        }
        let complex = CochainComplex::new(bases.iter().map(Matrix::cols).collect(), diffs)?;
        Ok(Conormalized {
            complex,
            inclusions: bases,
        })
    }

    /// Quotient model `N̄ⁿ = Xⁿ / Σ_{i=1}^n ∂^i X^{n-1}`.
    pub fn cobar_normalize(&self) -> Result<QuotientComplex> {
        if let Some(v) = self.check().first() {
            return Err(Error::Precondition(format!("cosimplicial identity violated: {v}")));
        }
        let mut projections = Vec::new();
        let mut sections = Vec::new();
        for n in 0..=self.cap() {
            let dim = self.dims[n];
            let mut span = crate::exactlin::SpanBuilder::new(dim);
            let mut sub = Vec::new();
            if n > 0 {
                for i in 1..=n {
                    for v in self.cofaces[n - 1][i].column_space() {
                        if span.insert(&v) {
                            sub.push(v);
                        }
                    }
                }
            }
            let mut complement = Vec::new();
            for k in 0..dim {
                let mut e = vec![Scalar::zero(); dim];
                e[k] = Scalar::one();
                if span.insert(&e) {
                    complement.push(e);
                }
            }
            let mut all = sub.clone();
            all.extend(complement.iter().cloned());
            let inv = Matrix::from_columns(&all, dim).inverse()?;
            let q = complement.len();
            let mut p = Matrix::zeros(q, dim);
            for r in 0..q {
                for c in 0..dim {
                    p[(r, c)] = inv[(sub.len() + r, c)].clone();
                }
            }
            projections.push(p);
            sections.push(Matrix::from_columns(&complement, dim));
        }
        let mut diffs = Vec::new();
        for n in 0..self.cap() {
            let d = projections[n + 1].mul(&self.alternating_differential(n))?.mul(&sections[n])?;
            diffs.push(d);
        }
        let complex = CochainComplex::new(projections.iter().map(Matrix::rows).collect(), diffs)?;
        Ok(QuotientComplex {
            complex,
            projections,
            sections,
        })
    }

    /// `πⁱ`, the cohomology of the conormalized complex, for `i < cap`.
    pub fn cohomotopy(&self, i: usize) -> Result<usize> {
        if i >= self.cap() {
            return Err(Error::OutOfRange {
                index: i,
                max: self.cap().saturating_sub(1),
            });
        }
        Ok(self.conormalize()?.complex.cohomology(i)?.dim)
    }

    /// The simplicial vector space of dual spaces (transposed operators).
    pub fn dual(&self) -> SimplicialSpace {
        SimplicialSpace {
            dims: self.dims.clone(),
            faces: self
                .cofaces
                .iter()
                .map(|l| l.iter().map(Matrix::transpose).collect())
                .collect(),
            degeneracies: self
                .codegeneracies
                .iter()
                .map(|l| l.iter().map(Matrix::transpose).collect())
                .collect(),
        }
    }
}

/// Conormalized complex `N` with `inclusions[n]: Nⁿ → Xⁿ` (columns).
#[derive(Clone, Debug)]
pub struct Conormalized {
    pub complex: CochainComplex,
    pub inclusions: Vec<Matrix>,
}

/// Quotient complex with projections `Xⁿ → N̄ⁿ` and sections `N̄ⁿ → Xⁿ`.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub complex: CochainComplex,
    pub projections: Vec<Matrix>,
    pub sections: Vec<Matrix>,
}

/// Simplicial vector space: `faces[n][i]: level n+1 → n`, `degeneracies[n][i]: level n-1 → n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSpace {
    dims: Vec<usize>,
    faces: Vec<Vec<Matrix>>,
    degeneracies: Vec<Vec<Matrix>>,
}

impl SimplicialSpace {
    pub fn cap(&self) -> usize {
        self.dims.len() - 1
    }

    /// Moore complex `N_n = ∩_{i=1}^{n} ker d_i` with boundary `d_0`;
    /// returns the boundary matrices `N_{n+1} → N_n` and the basis inclusions.
    pub fn normalize(&self) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
        let mut bases = Vec::new();
        for n in 0..=self.cap() {
            if n == 0 {
                bases.push(Matrix::identity(self.dims[0]));
                continue;
            }
            let mut stacked = Matrix::zeros(0, self.dims[n]);
            for i in 1..=n {
                stacked = stacked.vstack(&self.faces[n - 1][i])?;
            }
            bases.push(Matrix::from_columns(&stacked.kernel(), self.dims[n]));
        }
        let mut boundaries = Vec::new();
        for n in 0..self.cap() {
            let image = self.faces[n][0].mul(&bases[n + 1])?;
            let coords = bases[n]
                .solve_matrix(&image)?
                .ok_or_else(|| Error::InvalidStructure(format!("d_0 leaves the Moore complex at {n}")))?;
            boundaries.push(coords);
        }
        Ok((boundaries, bases))
    }

    /// `H_i` of the Moore complex, `i < cap`.
    pub fn homology(&self, i: usize) -> Result<usize> {
        if i >= self.cap() {
            return Err(Error::OutOfRange {
                index: i,
                max: self.cap().saturating_sub(1),
            });
        }
        let (b, bases) = self.normalize()?;
        let d_in = &b[i];
        let d_out = if i == 0 {
            Matrix::zeros(0, bases[0].cols())
        } else {
            b[i - 1].clone()
        };
        Ok(homology_of_matrices(d_in, &d_out)?.dim)
    }
}

/// An `(m, n)` shuffle: `μ` and `ν` partition `{0, …, m+n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShufflePair {
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
    /// Parity of the permutation listing `μ` then `ν`.
    pub sign: i8,
}

/// All `C(m+n, m)` shuffles, memoized.
pub fn shuffles(m: usize, n: usize) -> Arc<Vec<ShufflePair>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Vec<ShufflePair>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("shuffle cache poisoned").get(&(m, n)) {
        return s.clone();
    }
    let total = m + n;
    let mut out = Vec::new();
    for mu in combinations(&(0..total).collect::<Vec<_>>(), m) {
        let nu: Vec<usize> = (0..total).filter(|k| !mu.contains(k)).collect();
        let inversions: usize = mu.iter().map(|&a| nu.iter().filter(|&&b| b < a).count()).sum();
        out.push(ShufflePair {
            mu,
            nu,
            sign: if inversions % 2 == 0 { 1 } else { -1 },
        });
    }
    let out = Arc::new(out);
    cache
        .lock()
        .expect("shuffle cache poisoned")
        .entry((m, n))
        .or_insert(out)
        .clone()
}

/// All size-`k` subsets of `items` in lexicographic order.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for idx in start..items.len() {
            if items.len() - idx < k - cur.len() {
                break;
            }
            cur.push(items[idx]);
            go(items, k, idx + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// `σ^{k_1} ⋯ σ^{k_r}` from level `n` (rightmost applied first).
pub fn codegeneracy_word(x: &CosimplicialSpace, n: usize, word: &[usize]) -> Matrix {
    let mut m = Matrix::identity(x.dim(n));
    let mut level = n;
    for &k in word.iter().rev() {
        m = x.codegeneracy(level, k).mul(&m).expect("shapes");
        level -= 1;
    }
    m
}

/// `∇^{pq}: X^{p+q} ⊗ Y^{p+q} → X^p ⊗ Y^q`,
/// `v ⊗ w ↦ Σ ± σ^{ν_1}⋯σ^{ν_q} v ⊗ σ^{μ_1}⋯σ^{μ_p} w`.
pub fn shuffle_contraction(x: &CosimplicialSpace, y: &CosimplicialSpace, p: usize, q: usize) -> Matrix {
    let n = p + q;
    let mut out = Matrix::zeros(x.dim(p) * y.dim(q), x.dim(n) * y.dim(n));
    for sh in shuffles(p, q).iter() {
        let left = codegeneracy_word(x, n, &sh.nu);
        let right = codegeneracy_word(y, n, &sh.mu);
        let term = left.kron(&right);
        out = if sh.sign > 0 { out.add(&term) } else { out.sub(&term) }.expect("shapes");
    }
    out
}

/// Basis element `∂^J v` of `DⁿV`: `v = e_a ∈ V^m` and `J ⊂ {1..n}`,
/// `|J| = n - m`, the complement of the image of `[m] → [n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenormalBasis {
    pub m: usize,
    pub j: Vec<usize>,
    pub a: usize,
}

/// `DV` with its basis bookkeeping.
#[derive(Clone, Debug)]
pub struct Denormalized {
    pub space: CosimplicialSpace,
    pub basis: Vec<Vec<DenormalBasis>>,
    pub source: CochainComplex,
}

impl Denormalized {
    /// `πₙ: DⁿV → Vⁿ`, the coordinates on the generators `J = ∅`.
    pub fn generator_projection(&self, n: usize) -> Matrix {
        let dv = self.source.dim(n);
        let mut m = Matrix::zeros(dv, self.space.dim(n));
        for (k, b) in self.basis[n].iter().enumerate() {
            if b.m == n {
                m[(b.a, k)] = Scalar::one();
            }
        }
        m
    }

    /// `Vⁿ → DⁿV` onto the generators.
    pub fn generator_inclusion(&self, n: usize) -> Matrix {
        self.generator_projection(n).transpose()
    }
}

/// Dold-Kan denormalization of `V` up to level `cap`.
///
/// Coface words avoid index 0: a copy `∂⁰` is eliminated with
/// `∂⁰v = dv - Σ_{i=1}^{m+1} (-1)^i ∂^i v`.
pub fn denormalize(v: &CochainComplex, cap: usize) -> Denormalized {
    let top = v.top();
    let mut basis: Vec<Vec<DenormalBasis>> = Vec::new();
    let mut index: Vec<HashMap<DenormalBasis, usize>> = Vec::new();
    for n in 0..=cap {
        let mut level = Vec::new();
        for m in (0..=n.min(top)).rev() {
            for j in combinations(&(1..=n).collect::<Vec<_>>(), n - m) {
                for a in 0..v.dim(m) {
                    level.push(DenormalBasis { m, j: j.clone(), a });
                }
            }
        }
        index.push(level.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect());
        basis.push(level);
    }
    let diffs: Vec<Matrix> = (0..=top).map(|m| v.differential(m)).collect();

    // Adds c·∂^K e_a (with e_a ∈ V^m) to `col` on level n, rewriting ∂⁰.
    let emit = |n: usize, m: usize, k: &[usize], a: usize, c: Scalar, col: &mut Vec<Scalar>| {
        if k.first() != Some(&0) {
            let key = DenormalBasis { m, j: k.to_vec(), a };
            col[index[n][&key]] += c;
            return;
        }
        let kp: Vec<usize> = k[1..].to_vec();
        if m < top {
            let d = &diffs[m];
            for b in 0..d.rows() {
                let x = &d[(b, a)];
                if !x.is_zero() {
                    let key = DenormalBasis { m: m + 1, j: kp.clone(), a: b };
                    col[index[n][&key]] += &c * x;
                }
            }
        }
        // inj_{K'}: [m+1] → [n], image = complement of K'
        let image: Vec<usize> = (0..=n).filter(|x| !kp.contains(x)).collect();
        for i in 1..=m + 1 {
            let mut kk = kp.clone();
            kk.push(image[i]);
            kk.sort_unstable();
            let s = if i % 2 == 0 { -c.clone() } else { c.clone() };
            let key = DenormalBasis { m, j: kk, a };
            col[index[n][&key]] += s;
        }
    };

    // Matrix of the operator induced by the monotone map `g: [n] → [n2]`.
    let operator = |n: usize, n2: usize, g: &dyn Fn(usize) -> usize| -> Matrix {
        let mut cols = Vec::with_capacity(basis[n].len());
        for b in &basis[n] {
            let mut col = vec![Scalar::zero(); basis[n2].len()];
            let image: Vec<usize> = (0..=n).filter(|x| !b.j.contains(x)).map(g).collect();
            if image.windows(2).all(|w| w[0] < w[1]) {
                let k: Vec<usize> = (0..=n2).filter(|x| !image.contains(x)).collect();
                emit(n2, b.m, &k, b.a, Scalar::one(), &mut col);
            }
            cols.push(col);
        }
        Matrix::from_columns(&cols, basis[n2].len())
    };

    let mut cofaces = Vec::new();
    for n in 0..cap {
        cofaces.push(
            (0..=n + 1)
                .map(|i| operator(n, n + 1, &move |x| if x < i { x } else { x + 1 }))
                .collect(),
        );
    }
    let mut codegeneracies = Vec::new();
    for n in 0..=cap {
        codegeneracies.push(
            (0..n)
                .map(|i| operator(n, n - 1, &move |x| if x <= i { x } else { x - 1 }))
                .collect(),
        );
    }
    let space = CosimplicialSpace::new(basis.iter().map(Vec::len).collect(), cofaces, codegeneracies)
        .expect("denormalization shapes");
    Denormalized {
        space,
        basis,
        source: v.clone(),
    }
}
