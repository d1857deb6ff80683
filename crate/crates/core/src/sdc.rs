//! Simplicial deformation complexes.
//!
//! An SDC here is anything implementing [`Sdc`]: finite-dimensional levels,
//! elements given as coordinates in `levelⁿ ⊗ m_A` relative to a base point,
//! cofaces and codegeneracies acting linearly on those coordinates, and a
//! possibly nonlinear associative product `*`. [`ExpSdc`] is the exponential
//! model `exp(gⁿ ⊗ m_A)` with the Alexander-Whitney product; the monadic
//! module supplies the affine Hom-space model.
//!
//! Maurer-Cartan calculus, obstruction classes, cohomology and fibers are
//! written once against the trait.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use crate::artinian::{extension_tower, CoefficientRing, SmallExtensionStep, TensorElement};
use crate::bch::{bch, LieAlgebra, LieViolation};
use crate::cosimplicial::{CosimplicialSpace, IdentityViolation};
use crate::error::{Error, Result};
use crate::exactlin::{class_coordinates, homology_of_matrices, induced_rank, is_zero_vec, BilinearMap, Matrix, Scalar};
use crate::sample::{random_combination, random_tensor, SampleRng};

/// The capability set shared by exponential and Hom-space SDCs.
pub trait Sdc {
    /// The tangent cosimplicial space `CCⁿ(E) = Eⁿ(k[ε])`, with all cofaces
    /// taken at the base point.
    fn tangent(&self) -> &CosimplicialSpace;

    /// `g * h` for `g` on level `m` and `h` on level `n`.
    fn star(&self, m: usize, g: &TensorElement, n: usize, h: &TensorElement) -> Result<TensorElement>;

    /// Inverse in the group `E⁰(A)`.
    fn inverse(&self, g: &TensorElement) -> Result<TensorElement>;

    /// A coordinate expression vanishing exactly when `a = b` on level `n`.
    fn difference(&self, n: usize, a: &TensorElement, b: &TensorElement) -> Result<TensorElement>;

    fn cap(&self) -> usize {
        self.tangent().cap()
    }

    fn level_dim(&self, n: usize) -> usize {
        self.tangent().dim(n)
    }

    fn coface(&self, n: usize, i: usize, e: &TensorElement) -> Result<TensorElement> {
        e.apply(self.tangent().coface(n, i))
    }

    fn codegeneracy(&self, n: usize, i: usize, e: &TensorElement) -> Result<TensorElement> {
        e.apply(self.tangent().codegeneracy(n, i))
    }

    /// The identity `1 ∈ Eⁿ(A)` (the base point), which is coordinate zero.
    fn identity(&self, n: usize, ring: &Arc<CoefficientRing>) -> TensorElement {
        TensorElement::zero(self.level_dim(n), ring)
    }
}

/// `exp(gⁿ ⊗ m_A)` with group law BCH and `g*h = (∂^{m+n}⋯∂^{m+1}g)·(∂⁰)^m h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSdc {
    tangent: CosimplicialSpace,
    lie: Vec<LieAlgebra>,
}

impl ExpSdc {
    pub fn new(tangent: CosimplicialSpace, lie: Vec<LieAlgebra>) -> Result<Self> {
        if lie.len() != tangent.cap() + 1 {
            return Err(Error::Shape("one Lie algebra per level expected".into()));
        }
        for (n, l) in lie.iter().enumerate() {
            if l.dim() != tangent.dim(n) {
                return Err(Error::Shape(format!("Lie algebra on level {n} has the wrong dimension")));
            }
        }
        Ok(Self { tangent, lie })
    }

    /// Constant SDC: every level `ℚ^dim`, all operators the identity, abelian.
    pub fn constant(dim: usize, cap: usize) -> Self {
        Self {
            tangent: CosimplicialSpace::constant(dim, cap),
            lie: (0..=cap).map(|_| LieAlgebra::abelian(dim)).collect(),
        }
    }

    pub fn lie(&self, n: usize) -> &LieAlgebra {
        &self.lie[n]
    }

    pub fn tangent_mut(&mut self) -> &mut CosimplicialSpace {
        &mut self.tangent
    }

    /// Levelwise direct sum `E × F`.
    pub fn product(&self, other: &ExpSdc) -> Result<ExpSdc> {
        let cap = self.cap().min(other.cap());
        let a = &self.tangent;
        let b = &other.tangent;
        let dims: Vec<usize> = (0..=cap).map(|n| a.dim(n) + b.dim(n)).collect();
        let cofaces = (0..cap)
            .map(|n| (0..n + 2).map(|i| block_diag(a.coface(n, i), b.coface(n, i))).collect())
            .collect();
        let codegeneracies = (0..=cap)
            .map(|n| (0..n).map(|i| block_diag(a.codegeneracy(n, i), b.codegeneracy(n, i))).collect())
            .collect();
        let tangent = CosimplicialSpace::new(dims, cofaces, codegeneracies)?;
        let lie = (0..=cap)
            .map(|n| {
                let da = self.lie[n].dim();
                let db = other.lie[n].dim();
                let d = da + db;
                let mut br = BilinearMap::zero(d, d, d);
                for (i, j, k, c) in &self.lie[n].bracket.terms {
                    br.terms.push((*i, *j, *k, c.clone()));
                }
                for (i, j, k, c) in &other.lie[n].bracket.terms {
                    br.terms.push((i + da, j + da, k + da, c.clone()));
                }
                LieAlgebra { bracket: br }
            })
            .collect();
        ExpSdc::new(tangent, lie)
    }

    /// Projection `self × other → other` as levelwise matrices.
    pub fn second_projection(&self, other: &ExpSdc) -> Vec<Matrix> {
        let cap = self.cap().min(other.cap());
        (0..=cap)
            .map(|n| {
                let da = self.level_dim(n);
                let db = other.level_dim(n);
                let mut m = Matrix::zeros(db, da + db);
                for k in 0..db {
                    m[(k, da + k)] = Scalar::from_integer(1.into());
                }
                m
            })
            .collect()
    }
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m[(r, c)] = a[(r, c)].clone();
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m[(a.rows() + r, a.cols() + c)] = b[(r, c)].clone();
        }
    }
    m
}

impl Sdc for ExpSdc {
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
        let mut left = g.clone();
        for k in 1..=n {
            left = self.coface(m + k - 1, m + k, &left)?;
        }
        let mut right = h.clone();
        for k in 0..m {
            right = self.coface(n + k, 0, &right)?;
        }
        bch(&self.lie[m + n], &left, &right)
    }

    fn inverse(&self, g: &TensorElement) -> Result<TensorElement> {
        Ok(g.neg())
    }

    fn difference(&self, n: usize, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        bch(&self.lie[n], a, &b.neg())
    }
}

fn expect_level<S: Sdc + ?Sized>(e: &S, n: usize, x: &TensorElement) -> Result<()> {
    if n > e.cap() {
        return Err(Error::OutOfRange { index: n, max: e.cap() });
    }
    if x.dim() != e.level_dim(n) {
        return Err(Error::Shape(format!(
            "element of dim {} on level {n} of dim {}",
            x.dim(),
            e.level_dim(n)
        )));
    }
    Ok(())
}

/// `ω*ω` measured against `∂¹ω` on level 2; zero iff `ω` is Maurer-Cartan.
pub fn mc_defect<S: Sdc + ?Sized>(e: &S, omega: &TensorElement) -> Result<TensorElement> {
    expect_level(e, 1, omega)?;
    if e.cap() < 2 {
        return Err(Error::Precondition("Maurer-Cartan needs level 2".into()));
    }
    let sq = e.star(1, omega, 1, omega)?;
    let d1 = e.coface(1, 1, omega)?;
    e.difference(2, &sq, &d1)
}

pub fn is_mc<S: Sdc + ?Sized>(e: &S, omega: &TensorElement) -> Result<bool> {
    let mc = mc_defect(e, omega)?.is_zero();
    if mc {
        // σ⁰(ω) = 1 follows from faithfulness of the E⁰ action.
        let s = e.codegeneracy(1, 0, omega)?;
        if !s.is_zero() {
            return Err(Error::InvalidStructure("Maurer-Cartan element with σ⁰(ω) ≠ 1".into()));
        }
    }
    Ok(mc)
}

/// `g * ω * g⁻¹`.
pub fn adjoint<S: Sdc + ?Sized>(e: &S, g: &TensorElement, omega: &TensorElement) -> Result<TensorElement> {
    expect_level(e, 0, g)?;
    if !is_mc(e, omega)? {
        return Err(Error::Precondition("adjoint action needs a Maurer-Cartan element".into()));
    }
    let left = e.star(0, g, 1, omega)?;
    let out = e.star(1, &left, 0, &e.inverse(g)?)?;
    if !is_mc(e, &out)? {
        return Err(Error::InvalidStructure("adjoint action left the Maurer-Cartan set".into()));
    }
    Ok(out)
}

/// `dim Hⁱ(E)`: cohomotopy of the tangent cosimplicial space.
pub fn sdc_cohomology<S: Sdc + ?Sized>(e: &S, i: usize) -> Result<usize> {
    e.tangent().cohomotopy(i)
}

/// Class of `c` with `ω̃*ω̃ = ∂¹(ω̃) + c·t` in `H²(E) ⊗ (t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdcObstruction {
    /// `c` as a vector on level 2.
    pub representative: Vec<Scalar>,
    /// Coordinates of `[c]` in the basis of [`second_cohomology`].
    pub class: Vec<Scalar>,
    pub kernel_generator: usize,
    pub is_zero: bool,
}

/// Representatives of `H²` of the unnormalized tangent complex, with the
/// coboundary `CC¹ → CC²`.
pub fn second_cohomology<S: Sdc + ?Sized>(e: &S) -> Result<(Vec<Vec<Scalar>>, Matrix)> {
    if e.cap() < 3 {
        return Err(Error::Precondition("obstruction classes need levels up to 3".into()));
    }
    let t = e.tangent();
    let d1 = t.alternating_differential(1);
    let d2 = t.alternating_differential(2);
    let h = homology_of_matrices(&d1, &d2)?;
    Ok((h.representatives, d1))
}

pub fn sdc_obstruction<S: Sdc + ?Sized>(
    e: &S,
    step: &SmallExtensionStep,
    omega: &TensorElement,
) -> Result<SdcObstruction> {
    sdc_obstruction_with_lift(e, step, omega, &omega.zero_extend(step)?)
}

pub fn sdc_obstruction_with_lift<S: Sdc + ?Sized>(
    e: &S,
    step: &SmallExtensionStep,
    omega: &TensorElement,
    lift: &TensorElement,
) -> Result<SdcObstruction> {
    if !is_mc(e, omega)? {
        return Err(Error::Precondition("element is not Maurer-Cartan over the quotient".into()));
    }
    if lift.reduce(&step.projection)? != *omega {
        return Err(Error::Precondition("given lift does not reduce to the element".into()));
    }
    let defect = mc_defect(e, lift)?;
    let t = step.kernel_generator;
    if !defect.supported_on(t) {
        return Err(Error::InvalidStructure("defect of a lift is not in the kernel ideal".into()));
    }
    let c = defect.column(t);
    let dc = e.tangent().alternating_differential(2).mul_vec(&c)?;
    if !is_zero_vec(&dc) {
        return Err(Error::NotAComplex("obstruction cocycle is not closed".into()));
    }
    let (reps, d1) = second_cohomology(e)?;
    let class = class_coordinates(&reps, &d1, &c)?
        .ok_or_else(|| Error::InvalidStructure("obstruction cocycle outside ker d".into()))?;
    let is_zero = is_zero_vec(&class);
    Ok(SdcObstruction {
        representative: c,
        class,
        kernel_generator: t,
        is_zero,
    })
}

/// A Maurer-Cartan lift across `step`, or `None` if obstructed.
pub fn sdc_lift<S: Sdc + ?Sized>(
    e: &S,
    step: &SmallExtensionStep,
    omega: &TensorElement,
) -> Result<Option<TensorElement>> {
    let lift = omega.zero_extend(step)?;
    let obs = sdc_obstruction_with_lift(e, step, omega, &lift)?;
    if !obs.is_zero {
        return Ok(None);
    }
    let target: Vec<Scalar> = obs.representative.iter().map(|x| -x).collect();
    let b = e
        .tangent()
        .alternating_differential(1)
        .solve(&target)?
        .ok_or_else(|| Error::InvalidStructure("zero class without a primitive".into()))?;
    let lifted = lift.add(&TensorElement::pure(&step.total, &b, step.kernel_generator))?;
    if !is_mc(e, &lifted)? {
        return Err(Error::InvalidStructure("corrected lift is not Maurer-Cartan".into()));
    }
    Ok(Some(lifted))
}

/// A random Maurer-Cartan element over `ring`, lifted through the tower with
/// random tangent cocycles and finally conjugated by a random `g ∈ E⁰`.
pub fn random_sdc_mc<S: Sdc + ?Sized>(
    e: &S,
    ring: &Arc<CoefficientRing>,
    rng: &mut SampleRng,
) -> Result<TensorElement> {
    let tower = extension_tower(ring);
    let n1 = e.level_dim(1);
    let cocycles = e.tangent().alternating_differential(1).kernel();
    'attempt: for attempt in 0..64 {
        let base = tower.first().map_or_else(|| ring.clone(), |s| s.quotient.clone());
        let mut w = e.identity(1, &base);
        for step in &tower {
            let Some(lift) = sdc_lift(e, step, &w)? else {
                continue 'attempt;
            };
            w = lift;
            if attempt < 48 && rng.gen_range(0..3) != 0 {
                let z = random_combination(rng, &cocycles, n1);
                w = w.add(&TensorElement::pure(&step.total, &z, step.kernel_generator))?;
            }
        }
        let g = random_tensor(rng, e.level_dim(0), ring);
        return adjoint(e, &g, &w);
    }
    Ok(e.identity(1, ring))
}

/// Which axiom a sampled check violated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SdcViolation {
    Identity(IdentityViolation),
    /// `∂^i(e)*f ≠ ∂^i(e*f)`.
    CofaceLeft { m: usize, n: usize, i: usize },
    /// `e*∂^i(f) ≠ ∂^{i+m}(e*f)`.
    CofaceRight { m: usize, n: usize, i: usize },
    /// `σ^i(e)*f ≠ σ^i(e*f)`.
    CodegeneracyLeft { m: usize, n: usize, i: usize },
    /// `e*σ^i(f) ≠ σ^{i+m}(e*f)`.
    CodegeneracyRight { m: usize, n: usize, i: usize },
    Associativity { l: usize, m: usize, n: usize },
    Unit { n: usize },
    Inverse,
    Lie { level: usize, violation: LieViolation },
    NotLieMorphism { level: usize, op: String },
}

impl fmt::Display for SdcViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Identity(v) => write!(f, "cosimplicial identity: {v}"),
            Self::CofaceLeft { m, n, i } => write!(f, "∂^{i}(e)*f ≠ ∂^{i}(e*f) for levels ({m},{n})"),
            Self::CofaceRight { m, n, i } => {
                write!(f, "e*∂^{i}(f) ≠ ∂^{}(e*f) for levels ({m},{n})", i + m)
            }
            Self::CodegeneracyLeft { m, n, i } => write!(f, "σ^{i}(e)*f ≠ σ^{i}(e*f) for levels ({m},{n})"),
            Self::CodegeneracyRight { m, n, i } => {
                write!(f, "e*σ^{i}(f) ≠ σ^{}(e*f) for levels ({m},{n})", i + m)
            }
            Self::Associativity { l, m, n } => write!(f, "* not associative on levels ({l},{m},{n})"),
            Self::Unit { n } => write!(f, "1 is not a two-sided unit on level {n}"),
            Self::Inverse => write!(f, "E⁰ inverse fails"),
            Self::Lie { level, violation } => write!(f, "level {level} bracket: {violation:?}"),
            Self::NotLieMorphism { level, op } => write!(f, "{op} on level {level} is not a Lie morphism"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SdcReport {
    pub violations: Vec<SdcViolation>,
    pub checks: usize,
}

impl SdcReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, v: SdcViolation) {
        self.checks += 1;
        if !ok && !self.violations.contains(&v) {
            self.violations.push(v);
        }
    }
}

/// Checks the cosimplicial identities of the tangent, then the product
/// axioms on the supplied elements: `elements[n]` are coordinates on level
/// `n`, all over `ring`.
pub fn check_sdc_on<S: Sdc + ?Sized>(e: &S, elements: &[Vec<TensorElement>]) -> Result<SdcReport> {
    let mut report = SdcReport::default();
    for v in e.tangent().check() {
        report.violations.push(SdcViolation::Identity(v));
    }
    report.checks += 1;
    let cap = e.cap();
    let eq = |n: usize, a: &TensorElement, b: &TensorElement| -> Result<bool> { Ok(e.difference(n, a, b)?.is_zero()) };
    for m in 0..=cap {
        for n in 0..=cap - m {
            for x in &elements[m] {
                for y in &elements[n] {
                    let xy = e.star(m, x, n, y)?;
                    for i in 1..=m {
                        if m + n < cap {
                            let lhs = e.star(m + 1, &e.coface(m, i, x)?, n, y)?;
                            let rhs = e.coface(m + n, i, &xy)?;
                            report.record(eq(m + n + 1, &lhs, &rhs)?, SdcViolation::CofaceLeft { m, n, i });
                        }
                    }
                    for i in 1..=n {
                        if m + n < cap {
                            let lhs = e.star(m, x, n + 1, &e.coface(n, i, y)?)?;
                            let rhs = e.coface(m + n, i + m, &xy)?;
                            report.record(eq(m + n + 1, &lhs, &rhs)?, SdcViolation::CofaceRight { m, n, i });
                        }
                    }
                    for i in 0..m {
                        let lhs = e.star(m - 1, &e.codegeneracy(m, i, x)?, n, y)?;
                        let rhs = e.codegeneracy(m + n, i, &xy)?;
                        report.record(eq(m + n - 1, &lhs, &rhs)?, SdcViolation::CodegeneracyLeft { m, n, i });
                    }
                    for i in 0..n {
                        let lhs = e.star(m, x, n - 1, &e.codegeneracy(n, i, y)?)?;
                        let rhs = e.codegeneracy(m + n, i + m, &xy)?;
                        report.record(eq(m + n - 1, &lhs, &rhs)?, SdcViolation::CodegeneracyRight { m, n, i });
                    }
                    for l in 0..=cap - m - n {
                        for z in elements[l].iter().take(2) {
                            let a = e.star(m + n, &xy, l, z)?;
                            let b = e.star(m, x, n + l, &e.star(n, y, l, z)?)?;
                            report.record(eq(m + n + l, &a, &b)?, SdcViolation::Associativity { l: m, m: n, n: l });
                        }
                    }
                }
            }
        }
    }
    for n in 0..=cap {
        for x in &elements[n] {
            let one = e.identity(0, x.ring());
            let ok = eq(n, &e.star(0, &one, n, x)?, x)? && eq(n, &e.star(n, x, 0, &one)?, x)?;
            report.record(ok, SdcViolation::Unit { n });
        }
    }
    for g in &elements[0] {
        let inv = e.inverse(g)?;
        let one = e.identity(0, g.ring());
        let ok = eq(0, &e.star(0, g, 0, &inv)?, &one)? && eq(0, &e.star(0, &inv, 0, g)?, &one)?;
        report.record(ok, SdcViolation::Inverse);
    }
    Ok(report)
}

/// Sampled check: `samples` random elements per level over each ring.
pub fn check_sdc<S: Sdc + ?Sized>(
    e: &S,
    rings: &[Arc<CoefficientRing>],
    samples: usize,
    rng: &mut SampleRng,
) -> Result<SdcReport> {
    let mut total = SdcReport::default();
    for ring in rings {
        let elements: Vec<Vec<TensorElement>> = (0..=e.cap())
            .map(|n| (0..samples).map(|_| random_tensor(rng, e.level_dim(n), ring)).collect())
            .collect();
        let r = check_sdc_on(e, &elements)?;
        total.checks += r.checks;
        for v in r.violations {
            if !total.violations.contains(&v) {
                total.violations.push(v);
            }
        }
    }
    Ok(total)
}

/// Exhaustive structural checks specific to exponential SDCs: every level is
/// a Lie algebra and every operator is a Lie morphism.
pub fn check_exp_structure(e: &ExpSdc) -> Vec<SdcViolation> {
    let mut out = Vec::new();
    for n in 0..=e.cap() {
        for v in e.lie[n].check() {
            out.push(SdcViolation::Lie { level: n, violation: v });
        }
    }
    let t = &e.tangent;
    let hom = |src: &LieAlgebra, dst: &LieAlgebra, f: &Matrix| -> bool {
        let d = src.dim();
        for a in 0..d {
            for b in 0..d {
                let (x, y) = (f.column(a), f.column(b));
                let mut ua = vec![Scalar::zero(); d];
                ua[a] = Scalar::from_integer(1.into());
                let mut ub = vec![Scalar::zero(); d];
                ub[b] = Scalar::from_integer(1.into());
                let lhs = f.mul_vec(&src.bracket_vec(&ua, &ub)).expect("shapes");
                if lhs != dst.bracket_vec(&x, &y) {
                    return false;
                }
            }
        }
        true
    };
    for n in 0..e.cap() {
        for i in 0..=n + 1 {
            if !hom(&e.lie[n], &e.lie[n + 1], t.coface(n, i)) {
                out.push(SdcViolation::NotLieMorphism {
                    level: n,
                    op: format!("∂^{i}"),
                });
            }
        }
    }
    for n in 1..=e.cap() {
        for i in 0..n {
            if !hom(&e.lie[n], &e.lie[n - 1], t.codegeneracy(n, i)) {
                out.push(SdcViolation::NotLieMorphism {
                    level: n,
                    op: format!("σ^{i}"),
                });
            }
        }
    }
    out
}

/// `E` with outer cofaces twisted by a Maurer-Cartan element:
/// `∂⁰_ω(e) = ω*e`, `∂^{n+1}_ω(e) = e*ω`.
pub struct ExtendedAt<'a, S: Sdc + ?Sized> {
    pub sdc: &'a S,
    pub omega: TensorElement,
}

/// Fails unless `ω` is Maurer-Cartan.
pub fn extend_at<'a, S: Sdc + ?Sized>(e: &'a S, omega: &TensorElement) -> Result<ExtendedAt<'a, S>> {
    if !is_mc(e, omega)? {
        return Err(Error::Precondition("extension needs a Maurer-Cartan element".into()));
    }
    Ok(ExtendedAt {
        sdc: e,
        omega: omega.clone(),
    })
}

impl<S: Sdc + ?Sized> ExtendedAt<'_, S> {
    pub fn coface(&self, n: usize, i: usize, x: &TensorElement) -> Result<TensorElement> {
        if i == 0 {
            self.sdc.star(1, &self.omega, n, x)
        } else if i == n + 1 {
            self.sdc.star(n, x, 1, &self.omega)
        } else {
            self.sdc.coface(n, i, x)
        }
    }

    pub fn codegeneracy(&self, n: usize, i: usize, x: &TensorElement) -> Result<TensorElement> {
        self.sdc.codegeneracy(n, i, x)
    }

    /// Cosimplicial identities on the given elements (`elements[n]` on level `n`).
    pub fn check_identities(&self, elements: &[Vec<TensorElement>]) -> Result<Vec<IdentityViolation>> {
        use crate::cosimplicial::Identity;
        let cap = self.sdc.cap();
        let mut out = Vec::new();
        let mut push = |v: IdentityViolation| {
            if !out.contains(&v) {
                out.push(v);
            }
        };
        let eq = |n: usize, a: &TensorElement, b: &TensorElement| -> Result<bool> {
            Ok(self.sdc.difference(n, a, b)?.is_zero())
        };
        for n in 0..=cap {
            for x in &elements[n] {
                if n + 2 <= cap {
                    for j in 0..=n + 2 {
                        for i in 0..j {
                            let lhs = self.coface(n + 1, j, &self.coface(n, i, x)?)?;
                            let rhs = self.coface(n + 1, i, &self.coface(n, j - 1, x)?)?;
                            if !eq(n + 2, &lhs, &rhs)? {
                                push(IdentityViolation {
                                    identity: Identity::CofaceCoface,
                                    level: n,
                                    i,
                                    j,
                                });
                            }
                        }
                    }
                }
                if n < cap {
                    for j in 0..=n {
                        for i in 0..=n + 1 {
                            let lhs = self.codegeneracy(n + 1, j, &self.coface(n, i, x)?)?;
                            let rhs = if i < j {
                                self.coface(n - 1, i, &self.codegeneracy(n, j - 1, x)?)?
                            } else if i == j || i == j + 1 {
                                x.clone()
                            } else {
                                self.coface(n - 1, i - 1, &self.codegeneracy(n, j, x)?)?
                            };
                            if !eq(n, &lhs, &rhs)? {
                                push(IdentityViolation {
                                    identity: Identity::CodegeneracyCoface,
                                    level: n,
                                    i,
                                    j,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Searches the given pairs for `∂_ω^{m+1}(e)*f ≠ ∂^{m+1}(e*f)`, the
    /// identity that fails for twisted outer cofaces. Returns the first
    /// witness `(m, n, index into elements[m], index into elements[n])`.
    pub fn non_identity_witness(&self, elements: &[Vec<TensorElement>]) -> Result<Option<(usize, usize, usize, usize)>> {
        let cap = self.sdc.cap();
        for m in 0..cap {
            for n in 1..cap - m {
                for (a, x) in elements[m].iter().enumerate() {
                    for (b, y) in elements[n].iter().enumerate() {
                        let lhs = self.sdc.star(m + 1, &self.coface(m, m + 1, x)?, n, y)?;
                        let rhs = self.sdc.coface(m + n, m + 1, &self.sdc.star(m, x, n, y)?)?;
                        if !self.sdc.difference(m + n + 1, &lhs, &rhs)?.is_zero() {
                            return Ok(Some((m, n, a, b)));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Fiber of a levelwise surjection `φ: E → F` over the base point of `F`.
#[derive(Clone, Debug)]
pub struct FiberSdc {
    pub sdc: ExpSdc,
    /// `inclusions[n]: Kⁿ → Eⁿ` (columns).
    pub inclusions: Vec<Matrix>,
}

/// Kernel Lie algebras of `φ` with the restricted operators.
pub fn fiber_sdc(e: &ExpSdc, f: &ExpSdc, phi: &[Matrix]) -> Result<FiberSdc> {
    let cap = e.cap().min(f.cap());
    if phi.len() < cap + 1 {
        return Err(Error::Shape("one map per level expected".into()));
    }
    for n in 0..=cap {
        if phi[n].rows() != f.level_dim(n) || phi[n].cols() != e.level_dim(n) {
            return Err(Error::Shape(format!("map on level {n} has the wrong shape")));
        }
        if phi[n].rank() != f.level_dim(n) {
            return Err(Error::Unsupported(format!("map on level {n} is not surjective")));
        }
    }
    let te = e.tangent();
    let tf = f.tangent();
    for n in 0..cap {
        for i in 0..=n + 1 {
            if phi[n + 1].mul(te.coface(n, i))? != tf.coface(n, i).mul(&phi[n])? {
                return Err(Error::Precondition(format!("map does not commute with ∂^{i} on level {n}")));
            }
        }
    }
    let bases: Vec<Matrix> = (0..=cap)
        .map(|n| Matrix::from_columns(&phi[n].kernel(), e.level_dim(n)))
        .collect();
    let restrict = |src: usize, dst: usize, op: &Matrix| -> Result<Matrix> {
        bases[dst]
            .solve_matrix(&op.mul(&bases[src])?)?
            .ok_or_else(|| Error::InvalidStructure("operator leaves the kernel".into()))
    };
    let mut cofaces = Vec::new();
    for n in 0..cap {
        cofaces.push((0..=n + 1).map(|i| restrict(n, n + 1, te.coface(n, i))).collect::<Result<Vec<_>>>()?);
    }
    let mut codegeneracies = Vec::new();
    for n in 0..=cap {
        codegeneracies.push((0..n).map(|i| restrict(n, n - 1, te.codegeneracy(n, i))).collect::<Result<Vec<_>>>()?);
    }
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let tangent = CosimplicialSpace::new(dims.clone(), cofaces, codegeneracies)?;
    let mut lie = Vec::new();
    for n in 0..=cap {
        let k = dims[n];
        let mut table = vec![vec![Vec::new(); k]; k];
        for a in 0..k {
            for b in 0..k {
                let v = e.lie[n].bracket_vec(&bases[n].column(a), &bases[n].column(b));
                table[a][b] = bases[n]
                    .solve(&v)?
                    .ok_or_else(|| Error::InvalidStructure("kernel is not a subalgebra".into()))?;
            }
        }
        lie.push(LieAlgebra {
            bracket: BilinearMap::from_table(k, k, k, &table),
        });
    }
    Ok(FiberSdc {
        sdc: ExpSdc::new(tangent, lie)?,
        inclusions: bases,
    })
}

/// One degree of the long exact sequence
/// `… → Hⁱ(K) → Hⁱ(E) → Hⁱ(F) → H^{i+1}(K) → …`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LesRow {
    pub degree: usize,
    pub dim_fiber: usize,
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank_inclusion: usize,
    pub rank_map: usize,
    pub rank_connecting: usize,
    /// Exactness at `Hⁱ(K)`, `Hⁱ(E)`, `Hⁱ(F)`.
    pub exact: [bool; 3],
}

/// Rank bookkeeping for the long exact sequence of `0 → K → E → F → 0` on
/// the unnormalized tangent complexes, degrees `0..=max_degree`.
pub fn long_exact_sequence(
    k: &CosimplicialSpace,
    e: &CosimplicialSpace,
    f: &CosimplicialSpace,
    inclusion: &[Matrix],
    phi: &[Matrix],
    max_degree: usize,
) -> Result<Vec<LesRow>> {
    let cap = k.cap().min(e.cap()).min(f.cap());
    if max_degree + 1 > cap {
        return Err(Error::OutOfRange {
            index: max_degree,
            max: cap.saturating_sub(1),
        });
    }
    let d_into = |x: &CosimplicialSpace, i: usize| -> Matrix {
        if i == 0 {
            Matrix::zeros(x.dim(0), 0)
        } else {
            x.alternating_differential(i - 1)
        }
    };
    let hom = |x: &CosimplicialSpace, i: usize| homology_of_matrices(&d_into(x, i), &x.alternating_differential(i));
    let mut connecting = Vec::new();
    let mut rows = Vec::new();
    for i in 0..=max_degree {
        let hk = hom(k, i)?;
        let he = hom(e, i)?;
        let hf = hom(f, i)?;
        let r_inc = induced_rank(&inclusion[i], &hk.representatives, &d_into(e, i))?;
        let r_phi = induced_rank(&phi[i], &he.representatives, &d_into(f, i))?;
        // δ[z] = [d z̃] with φ z̃ = z, read in K.
        let mut images = Vec::new();
        for z in &hf.representatives {
            let lift = phi[i]
                .solve(z)?
                .ok_or_else(|| Error::Unsupported("map is not surjective".into()))?;
            let dz = e.alternating_differential(i).mul_vec(&lift)?;
            let in_k = inclusion[i + 1]
                .solve(&dz)?
                .ok_or_else(|| Error::InvalidStructure("connecting image outside the fiber".into()))?;
            images.push(in_k);
        }
        let id = Matrix::identity(k.dim(i + 1));
        let r_delta = induced_rank(&id, &images, &k.alternating_differential(i))?;
        connecting.push(r_delta);
        let prev = if i == 0 { 0 } else { connecting[i - 1] };
        rows.push(LesRow {
            degree: i,
            dim_fiber: hk.dim,
            dim_source: he.dim,
            dim_target: hf.dim,
            rank_inclusion: r_inc,
            rank_map: r_phi,
            rank_connecting: r_delta,
            exact: [
                hk.dim == prev + r_inc,
                he.dim == r_inc + r_phi,
                hf.dim == r_phi + r_delta,
            ],
        });
    }
    Ok(rows)
}
