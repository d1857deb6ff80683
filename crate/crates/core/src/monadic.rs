//! Hom-space SDCs of finite monads and comonads.
//!
//! For an algebra `B`, a coalgebra `C` and a space `M` carrying a base
//! action `ρ₀: B⊗M → M` and coaction `λ₀: M → M⊗C`, level `n` is
//! `Hom(B^{⊗n}⊗M, M⊗C^{⊗n})`. An element over `A` is the base composite
//! `ω₀^{*n}` (with `ω₀ = λ₀∘ρ₀`) plus a perturbation in `Hom ⊗ m_A`; only the
//! perturbation is stored. Matrices act on Kronecker coordinates with `B`
//! slots before `M` and `C` slots after `M`, and perturbations are vectorized
//! row-major.
//!
//! `g*h = (g ⊗ 1_{C^n}) ∘ (1_{B^m} ⊗ h)`, so the `C` slots of `g` come first.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::artinian::{CoefficientRing, RingElement, TensorElement};
use crate::cosimplicial::CosimplicialSpace;
use crate::error::{Error, Result};
use crate::exactlin::{BilinearMap, Matrix, Scalar};
use crate::sdc::Sdc;

/// Finite-dimensional unital associative algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocAlgebra {
    pub labels: Vec<String>,
    pub unit: Vec<Scalar>,
    pub mult: BilinearMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraViolation {
    Associativity { a: usize, b: usize, c: usize },
    LeftUnit { a: usize },
    RightUnit { a: usize },
    Coassociativity { a: usize },
    LeftCounit { a: usize },
    RightCounit { a: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Associativity { a, b, c } => write!(f, "associativity fails on ({a},{b},{c})"),
            Self::LeftUnit { a } => write!(f, "left unit fails on {a}"),
            Self::RightUnit { a } => write!(f, "right unit fails on {a}"),
            Self::Coassociativity { a } => write!(f, "coassociativity fails on {a}"),
            Self::LeftCounit { a } => write!(f, "left counit fails on {a}"),
            Self::RightCounit { a } => write!(f, "right counit fails on {a}"),
        }
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

impl AssocAlgebra {
    pub fn new(labels: Vec<String>, unit: Vec<Scalar>, mult: BilinearMap) -> Result<Self> {
        let n = labels.len();
        if unit.len() != n || mult.left_dim != n || mult.right_dim != n || mult.out_dim != n {
            return Err(Error::Shape("algebra data has inconsistent dimensions".into()));
        }
        Ok(Self { labels, unit, mult })
    }

    /// The ground field.
    pub fn trivial() -> Self {
        let mut mult = BilinearMap::zero(1, 1, 1);
        mult.terms.push((0, 0, 0, Scalar::one()));
        Self {
            labels: vec!["1".into()],
            unit: vec![Scalar::one()],
            mult,
        }
    }

    /// `ℚ[y]/(y^n)` on the basis `1, y, …, y^{n-1}`.
    pub fn truncated_polynomial(n: usize) -> Self {
        let mut mult = BilinearMap::zero(n, n, n);
        for a in 0..n {
            for b in 0..n {
                if a + b < n {
                    mult.terms.push((a, b, a + b, Scalar::one()));
                }
            }
        }
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "y".to_string(),
                _ => format!("y^{k}"),
            })
            .collect();
        Self {
            labels,
            unit: unit_vec(n, 0),
            mult,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `μ` as a `dim × dim²` matrix.
    pub fn mult_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n * n);
        for (a, b, k, c) in &self.mult.terms {
            m[(*k, a * n + b)] += c;
        }
        m
    }

    pub fn check(&self) -> Vec<AlgebraViolation> {
        let n = self.dim();
        let mut out = Vec::new();
        let mul = |x: &[Scalar], y: &[Scalar]| self.mult.apply(x, y);
        for a in 0..n {
            let ea = unit_vec(n, a);
            if mul(&self.unit, &ea) != ea {
                out.push(AlgebraViolation::LeftUnit { a });
            }
            if mul(&ea, &self.unit) != ea {
                out.push(AlgebraViolation::RightUnit { a });
            }
            for b in 0..n {
                let eb = unit_vec(n, b);
                for c in 0..n {
                    let ec = unit_vec(n, c);
                    if mul(&mul(&ea, &eb), &ec) != mul(&ea, &mul(&eb, &ec)) {
                        out.push(AlgebraViolation::Associativity { a, b, c });
                    }
                }
            }
        }
        out
    }
}

/// Finite-dimensional counital coassociative coalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    pub labels: Vec<String>,
    pub counit: Vec<Scalar>,
    /// `Δ` as a `dim² × dim` matrix.
    pub comult: Matrix,
}

impl Coalgebra {
    pub fn new(labels: Vec<String>, counit: Vec<Scalar>, comult: Matrix) -> Result<Self> {
        let n = labels.len();
        if counit.len() != n || comult.rows() != n * n || comult.cols() != n {
            return Err(Error::Shape("coalgebra data has inconsistent dimensions".into()));
        }
        Ok(Self { labels, counit, comult })
    }

    pub fn trivial() -> Self {
        Self {
            labels: vec!["1".into()],
            counit: vec![Scalar::one()],
            comult: Matrix::identity(1),
        }
    }

    /// The linear dual of a finite-dimensional algebra.
    pub fn dual_of(b: &AssocAlgebra) -> Self {
        Self {
            labels: b.labels.iter().map(|l| format!("{l}*")).collect(),
            counit: b.unit.clone(),
            comult: b.mult_matrix().transpose(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn counit_row(&self) -> Matrix {
        Matrix::from_rows(vec![self.counit.clone()], self.dim()).expect("shape")
    }

    pub fn check(&self) -> Vec<AlgebraViolation> {
        let n = self.dim();
        let id = Matrix::identity(n);
        let d = &self.comult;
        let left = id.kron(d).mul(d).expect("shapes");
        let right = d.kron(&id).mul(d).expect("shapes");
        let eps = self.counit_row();
        let lc = eps.kron(&id).mul(d).expect("shapes");
        let rc = id.kron(&eps).mul(d).expect("shapes");
        let mut out = Vec::new();
        for a in 0..n {
            if left.column(a) != right.column(a) {
                out.push(AlgebraViolation::Coassociativity { a });
            }
            if lc.column(a) != id.column(a) {
                out.push(AlgebraViolation::LeftCounit { a });
            }
            if rc.column(a) != id.column(a) {
                out.push(AlgebraViolation::RightCounit { a });
            }
        }
        out
    }
}

/// A matrix with entries in `A = ℚ ⊕ m_A`: `unit + Σ_r parts[r]·e_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RingMatrix {
    unit: Matrix,
    parts: Vec<Matrix>,
}

impl RingMatrix {
    fn map(&self, f: impl Fn(&Matrix) -> Matrix) -> Self {
        Self {
            unit: f(&self.unit),
            parts: self.parts.iter().map(f).collect(),
        }
    }

    fn mul(&self, other: &Self, ring: &CoefficientRing) -> Result<Self> {
        let unit = self.unit.mul(&other.unit)?;
        let mut parts = Vec::with_capacity(self.parts.len());
        for r in 0..self.parts.len() {
            parts.push(self.unit.mul(&other.parts[r])?.add(&self.parts[r].mul(&other.unit)?)?);
        }
        for (s, x) in self.parts.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, y) in other.parts.iter().enumerate() {
                if y.is_zero() || ring.product(s, t).is_empty() {
                    continue;
                }
                let xy = x.mul(y)?;
                for (r, c) in ring.product(s, t) {
                    parts[*r] = parts[*r].add(&xy.scale(c))?;
                }
            }
        }
        Ok(Self { unit, parts })
    }
}

/// `Hom(B^{⊗n}⊗M, M⊗C^{⊗n})` levels with base point `ω₀^{*n}`.
#[derive(Clone, Debug)]
pub struct HomSdc {
    pub algebra: AssocAlgebra,
    pub coalgebra: Coalgebra,
    pub module_dim: usize,
    /// `ρ₀: B⊗M → M`.
    pub action: Matrix,
    /// `λ₀: M → M⊗C`.
    pub coaction: Matrix,
    omega0: Matrix,
    base: Vec<Matrix>,
    tangent: CosimplicialSpace,
}

fn pow(d: usize, n: usize) -> usize {
    d.pow(n as u32)
}

/// Row-major vectorization.
fn vectorize(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

fn unvectorize(v: &[Scalar], rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = v[r * cols + c].clone();
        }
    }
    m
}

impl HomSdc {
    /// Module structures on `M` over `B`, deforming `ρ₀`.
    pub fn module_sdc(b: AssocAlgebra, m: usize, action: Matrix, cap: usize) -> Result<Self> {
        Self::bimodule_sdc(b, Coalgebra::trivial(), m, action, Matrix::identity(m), cap)
    }

    /// Comodule structures on `M` over `C`, deforming `λ₀`.
    pub fn comodule_sdc(c: Coalgebra, m: usize, coaction: Matrix, cap: usize) -> Result<Self> {
        Self::bimodule_sdc(AssocAlgebra::trivial(), c, m, Matrix::identity(m), coaction, cap)
    }

    /// Pairs of a `B`-action and a commuting `C`-coaction on `M`.
    pub fn bimodule_sdc(
        b: AssocAlgebra,
        c: Coalgebra,
        m: usize,
        action: Matrix,
        coaction: Matrix,
        cap: usize,
    ) -> Result<Self> {
        if let Some(v) = b.check().first() {
            return Err(Error::InvalidStructure(format!("algebra: {v}")));
        }
        if let Some(v) = c.check().first() {
            return Err(Error::InvalidStructure(format!("coalgebra: {v}")));
        }
        if action.rows() != m || action.cols() != b.dim() * m {
            return Err(Error::Shape("action must be dim M × (dim B · dim M)".into()));
        }
        if coaction.rows() != m * c.dim() || coaction.cols() != m {
            return Err(Error::Shape("coaction must be (dim M · dim C) × dim M".into()));
        }
        if cap < 2 {
            return Err(Error::Precondition("cap must be at least 2".into()));
        }
        let omega0 = coaction.mul(&action)?;
        let mut s = Self {
            algebra: b,
            coalgebra: c,
            module_dim: m,
            action,
            coaction,
            omega0,
            base: Vec::new(),
            tangent: CosimplicialSpace::constant(0, 0),
        };
        let mut base = vec![Matrix::identity(m)];
        for n in 0..cap {
            let next = s.star_plain(n, &base[n], 1, &s.omega0)?;
            base.push(next);
        }
        s.base = base;
        s.validate_base()?;
        let dims: Vec<usize> = (0..=cap).map(|n| s.rows(n) * s.cols(n)).collect();
        let mut cofaces = Vec::new();
        for n in 0..cap {
            cofaces.push((0..=n + 1).map(|i| s.linearize(n, n + 1, |p| s.coface_plain(n, i, p))).collect::<Result<Vec<_>>>()?);
        }
        let mut codegeneracies = Vec::new();
        for n in 0..=cap {
            codegeneracies.push((0..n).map(|i| s.linearize(n, n - 1, |p| s.codegeneracy_plain(n, i, p))).collect::<Result<Vec<_>>>()?);
        }
        s.tangent = CosimplicialSpace::new(dims, cofaces, codegeneracies)?;
        Ok(s)
    }

    fn rows(&self, n: usize) -> usize {
        self.module_dim * pow(self.coalgebra.dim(), n)
    }

    fn cols(&self, n: usize) -> usize {
        pow(self.algebra.dim(), n) * self.module_dim
    }

    /// The base composite on level `n`.
    pub fn base(&self, n: usize) -> &Matrix {
        &self.base[n]
    }

    /// `ω₀ = λ₀∘ρ₀`.
    pub fn omega0(&self) -> &Matrix {
        &self.omega0
    }

    fn star_plain(&self, m: usize, g: &Matrix, n: usize, h: &Matrix) -> Result<Matrix> {
        let left = g.kron(&Matrix::identity(pow(self.coalgebra.dim(), n)));
        let right = Matrix::identity(pow(self.algebra.dim(), m)).kron(h);
        left.mul(&right)
    }

    /// `μ` on `B` slots `i, i+1` (1-based) of `B^{⊗(n+1)}⊗M`.
    fn mu(&self, n: usize, i: usize) -> Matrix {
        let db = self.algebra.dim();
        Matrix::identity(pow(db, i - 1))
            .kron(&self.algebra.mult_matrix())
            .kron(&Matrix::identity(pow(db, n - i) * self.module_dim))
    }

    /// `Δ` on `C` slot `i` (1-based) of `M⊗C^{⊗n}`.
    fn delta(&self, n: usize, i: usize) -> Matrix {
        let dc = self.coalgebra.dim();
        Matrix::identity(self.module_dim * pow(dc, i - 1))
            .kron(&self.coalgebra.comult)
            .kron(&Matrix::identity(pow(dc, n - i)))
    }

    /// Unit inserted as `B` slot `i+1` of `B^{⊗n}⊗M`.
    fn eta(&self, n: usize, i: usize) -> Matrix {
        let db = self.algebra.dim();
        let u = Matrix::from_columns(&std::slice::from_ref(&self.algebra.unit), db);
        Matrix::identity(pow(db, i))
            .kron(&u)
            .kron(&Matrix::identity(pow(db, n - 1 - i) * self.module_dim))
    }

    /// Counit on `C` slot `i+1` of `M⊗C^{⊗n}`.
    fn epsilon(&self, n: usize, i: usize) -> Matrix {
        let dc = self.coalgebra.dim();
        Matrix::identity(self.module_dim * pow(dc, i))
            .kron(&self.coalgebra.counit_row())
            .kron(&Matrix::identity(pow(dc, n - 1 - i)))
    }

    fn coface_plain(&self, n: usize, i: usize, g: &Matrix) -> Result<Matrix> {
        if i == 0 {
            self.star_plain(1, &self.omega0, n, g)
        } else if i == n + 1 {
            self.star_plain(n, g, 1, &self.omega0)
        } else {
            self.delta(n, i).mul(g)?.mul(&self.mu(n, i))
        }
    }

    fn codegeneracy_plain(&self, n: usize, i: usize, g: &Matrix) -> Result<Matrix> {
        self.epsilon(n, i).mul(g)?.mul(&self.eta(n, i))
    }

    fn linearize(&self, from: usize, to: usize, f: impl Fn(&Matrix) -> Result<Matrix>) -> Result<Matrix> {
        let (r, c) = (self.rows(from), self.cols(from));
        let mut cols = Vec::with_capacity(r * c);
        for k in 0..r * c {
            let mut p = Matrix::zeros(r, c);
            p[(k / c, k % c)] = Scalar::one();
            cols.push(vectorize(&f(&p)?));
        }
        Ok(Matrix::from_columns(&cols, self.rows(to) * self.cols(to)))
    }

    /// The base composites must form a cosimplicial point; this is where
    /// invalid or incompatible base structures are caught.
    fn validate_base(&self) -> Result<()> {
        let cap = self.base.len() - 1;
        for n in 0..cap {
            for i in 1..=n {
                if self.coface_plain(n, i, &self.base[n])? != self.base[n + 1] {
                    return Err(Error::InvalidStructure(format!(
                        "base structure fails ∂^{i} on level {n}: action, coaction or their compatibility"
                    )));
                }
            }
            for i in [0, n + 1] {
                if self.coface_plain(n, i, &self.base[n])? != self.base[n + 1] {
                    return Err(Error::InvalidStructure(format!("base structure fails ∂^{i} on level {n}")));
                }
            }
        }
        if self.coface_plain(1, 1, &self.omega0)? != self.base[2] {
            return Err(Error::InvalidStructure("base action and coaction are not compatible".into()));
        }
        for n in 1..=cap {
            for i in 0..n {
                if self.codegeneracy_plain(n, i, &self.base[n])? != self.base[n - 1] {
                    return Err(Error::InvalidStructure(format!(
                        "base structure fails σ^{i} on level {n}: unit or counit law"
                    )));
                }
            }
        }
        Ok(())
    }

    fn to_ring_matrix(&self, n: usize, e: &TensorElement) -> RingMatrix {
        let (r, c) = (self.rows(n), self.cols(n));
        RingMatrix {
            unit: self.base[n].clone(),
            parts: (0..e.ring().dim()).map(|k| unvectorize(&e.column(k), r, c)).collect(),
        }
    }

    fn to_element(&self, n: usize, x: &RingMatrix, ring: &Arc<CoefficientRing>) -> Result<TensorElement> {
        if x.unit != self.base[n] {
            return Err(Error::InvalidStructure(format!("residue on level {n} left the base point")));
        }
        let cols: Vec<Vec<Scalar>> = x.parts.iter().map(vectorize).collect();
        TensorElement::from_columns(ring, self.rows(n) * self.cols(n), &cols)
    }

    /// The full map `base + Σ parts·e_r` of an element, as a matrix over `A`
    /// given by its residue and its `m_A` components.
    pub fn element_matrix(&self, n: usize, e: &TensorElement) -> (Matrix, Vec<Matrix>) {
        let x = self.to_ring_matrix(n, e);
        (x.unit, x.parts)
    }
}

impl Sdc for HomSdc {
    fn tangent(&self) -> &CosimplicialSpace {
        &self.tangent
    }

    fn star(&self, m: usize, g: &TensorElement, n: usize, h: &TensorElement) -> Result<TensorElement> {
        if m + n > self.cap() {
            return Err(Error::OutOfRange {
                index: m + n,
                max: self.cap(),
            });
        }
        if g.dim() != self.level_dim(m) || h.dim() != self.level_dim(n) {
            return Err(Error::Shape("star arguments do not match their levels".into()));
        }
        if g.ring() != h.ring() {
            return Err(Error::RingMismatch("star arguments over different rings".into()));
        }
        let ring = g.ring();
        let ic = Matrix::identity(pow(self.coalgebra.dim(), n));
        let ib = Matrix::identity(pow(self.algebra.dim(), m));
        let left = self.to_ring_matrix(m, g).map(|x| x.kron(&ic));
        let right = self.to_ring_matrix(n, h).map(|x| ib.kron(x));
        self.to_element(m + n, &left.mul(&right, ring)?, ring)
    }

    fn inverse(&self, g: &TensorElement) -> Result<TensorElement> {
        if g.dim() != self.level_dim(0) {
            return Err(Error::Shape("inverse is defined on level 0".into()));
        }
        let ring = g.ring();
        let x = self.to_ring_matrix(0, g);
        // (1 + N)^{-1} = Σ (-N)^k with N nilpotent
        let neg = RingMatrix {
            unit: Matrix::zeros(self.module_dim, self.module_dim),
            parts: x.parts.iter().map(|p| p.scale(&-Scalar::one())).collect(),
        };
        let mut total = RingMatrix {
            unit: Matrix::identity(self.module_dim),
            parts: vec![Matrix::zeros(self.module_dim, self.module_dim); ring.dim()],
        };
        let mut term = total.clone();
        for _ in 0..ring.nilpotency() {
            term = term.mul(&neg, ring)?;
            total = RingMatrix {
                unit: total.unit.clone(),
                parts: total.parts.iter().zip(&term.parts).map(|(a, b)| a.add(b).expect("shapes")).collect(),
            };
        }
        self.to_element(0, &total, ring)
    }

    fn difference(&self, _n: usize, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        a.sub(b)
    }
}

/// The deformed structure extracted from a level-1 element and checked
/// axiom by axiom with explicit index loops over `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// `θ = (1⊗ε)∘ω`, indexed `[out][b][in]`.
    pub action: Vec<Vec<Vec<RingElement>>>,
    /// `φ = ω∘(η⊗1)`, indexed `[out][c][in]`.
    pub coaction: Vec<Vec<Vec<RingElement>>>,
    /// Names of failed axioms.
    pub violations: Vec<String>,
    /// Coordinates of every axiom's two sides subtracted, in a fixed order.
    pub residual: Vec<Scalar>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reads `θ` and `φ` off `ω` and verifies associativity, unit,
/// coassociativity, counit, compatibility `(θ⊗1)(1⊗φ) = φθ` and `ω = φθ`.
pub fn mc_to_structure(s: &HomSdc, omega: &TensorElement) -> Result<StructureReport> {
    if omega.dim() != s.level_dim(1) {
        return Err(Error::Shape("structure is read from level 1".into()));
    }
    let ring = omega.ring().as_ref();
    let (db, dc, dm) = (s.algebra.dim(), s.coalgebra.dim(), s.module_dim);
    let cols = db * dm;
    let entry = |o: usize, c: usize, b: usize, j: usize| -> RingElement {
        let row = o * dc + c;
        let col = b * dm + j;
        RingElement {
            unit: s.omega0[(row, col)].clone(),
            m: (0..ring.dim()).map(|r| omega.get(row * cols + col, r).clone()).collect(),
        }
    };
    let zero = RingElement::zero(ring);
    let sum = |terms: Vec<RingElement>| terms.into_iter().fold(zero.clone(), |acc, x| acc.add(&x));
    let theta: Vec<Vec<Vec<RingElement>>> = (0..dm)
        .map(|o| {
            (0..db)
                .map(|b| (0..dm).map(|j| sum((0..dc).map(|c| entry(o, c, b, j).scale(&s.coalgebra.counit[c])).collect())).collect())
                .collect()
        })
        .collect();
    let phi: Vec<Vec<Vec<RingElement>>> = (0..dm)
        .map(|o| {
            (0..dc)
                .map(|c| (0..dm).map(|j| sum((0..db).map(|b| entry(o, c, b, j).scale(&s.algebra.unit[b])).collect())).collect())
                .collect()
        })
        .collect();
    let mu = s.algebra.mult.table();
    let delta = &s.coalgebra.comult;
    let delta_ = |c: usize, c1: usize, c2: usize| delta[(c1 * dc + c2, c)].clone();
    let kron = |a: usize, b: usize| if a == b { RingElement::one(ring) } else { zero.clone() };

    let mut violations = Vec::new();
    let mut residual = Vec::new();
    let mut record = |name: &str, diffs: Vec<RingElement>| {
        let mut bad = false;
        for d in diffs {
            bad |= !d.is_zero();
            residual.push(d.unit.clone());
            residual.extend(d.m);
        }
        if bad {
            violations.push(name.to_string());
        }
    };

    let mut d = Vec::new();
    for o in 0..dm {
        for b1 in 0..db {
            for b2 in 0..db {
                for j in 0..dm {
                    let lhs = sum((0..dm).map(|k| theta[o][b1][k].mul(&theta[k][b2][j], ring)).collect());
                    let rhs = sum((0..db).map(|b| theta[o][b][j].scale(&mu[b1][b2][b])).collect());
                    d.push(lhs.sub(&rhs));
                }
            }
        }
    }
    record("associativity", d);

    let mut d = Vec::new();
    for o in 0..dm {
        for j in 0..dm {
            let lhs = sum((0..db).map(|b| theta[o][b][j].scale(&s.algebra.unit[b])).collect());
            d.push(lhs.sub(&kron(o, j)));
        }
    }
    record("unit", d);

    let mut d = Vec::new();
    for o in 0..dm {
        for c1 in 0..dc {
            for c2 in 0..dc {
                for j in 0..dm {
                    let lhs = sum((0..dm).map(|k| phi[o][c1][k].mul(&phi[k][c2][j], ring)).collect());
                    let rhs = sum((0..dc).map(|c| phi[o][c][j].scale(&delta_(c, c1, c2))).collect());
                    d.push(lhs.sub(&rhs));
                }
            }
        }
    }
    record("coassociativity", d);

    let mut d = Vec::new();
    for o in 0..dm {
        for j in 0..dm {
            let lhs = sum((0..dc).map(|c| phi[o][c][j].scale(&s.coalgebra.counit[c])).collect());
            d.push(lhs.sub(&kron(o, j)));
        }
    }
    record("counit", d);

    let mut compat = Vec::new();
    let mut factor = Vec::new();
    for o in 0..dm {
        for c in 0..dc {
            for b in 0..db {
                for j in 0..dm {
                    let lhs = sum((0..dm).map(|k| theta[o][b][k].mul(&phi[k][c][j], ring)).collect());
                    let rhs = sum((0..dm).map(|k| phi[o][c][k].mul(&theta[k][b][j], ring)).collect());
                    factor.push(entry(o, c, b, j).sub(&rhs));
                    compat.push(lhs.sub(&rhs));
                }
            }
        }
    }
    record("compatibility", compat);
    record("factorization", factor);

    Ok(StructureReport {
        action: theta,
        coaction: phi,
        violations,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::fixtures::{dual_numbers, t_cubed};
    use crate::sdc::{is_mc, sdc_cohomology, sdc_lift};
    use crate::artinian::extension_tower;

    fn dual_module() -> HomSdc {
        HomSdc::module_sdc(AssocAlgebra::truncated_polynomial(2), 1, Matrix::from_i64(&[&[1, 0]]), 4).unwrap()
    }

    #[test]
    fn module_cohomology_of_dual_numbers_is_one_everywhere() {
        let s = dual_module();
        for i in 0..4 {
            assert_eq!(sdc_cohomology(&s, i).unwrap(), 1, "degree {i}");
        }
    }

    #[test]
    fn square_zero_action_is_obstructed_at_t_squared() {
        let s = dual_module();
        let ring = t_cubed();
        let tower = extension_tower(&ring);
        // y ↦ t over ℚ[t]/(t²)
        let w = TensorElement::from_columns(&tower[1].quotient, 2, &[vec![int(0), int(1)]]).unwrap();
        assert!(is_mc(&s, &w).unwrap());
        assert!(sdc_lift(&s, &tower[1], &w).unwrap().is_none());
        assert!(mc_to_structure(&s, &w).unwrap().passed());
    }

    #[test]
    fn corrupted_coassociativity_is_rejected() {
        // dual of the one-sided product y·y² = y², y²·y = 0
        let mut c = Coalgebra::dual_of(&AssocAlgebra::truncated_polynomial(3));
        c.comult[(5, 2)] = int(1);
        assert!(c.check().iter().all(|v| matches!(v, AlgebraViolation::Coassociativity { .. })));
        assert!(!c.check().is_empty());
        let lam = Matrix::from_i64(&[&[1], &[0], &[0]]);
        assert!(HomSdc::comodule_sdc(c, 1, lam, 3).is_err());
    }

    #[test]
    fn inverse_is_two_sided() {
        let s = dual_module();
        let ring = dual_numbers();
        let g = TensorElement::pure(&ring, &[int(3)], 0);
        let inv = s.inverse(&g).unwrap();
        assert!(s.star(0, &g, 0, &inv).unwrap().is_zero());
    }
}
