//! Differential graded Lie algebras in non-negative degrees.
//!
//! Maurer-Cartan elements live in `L¹ ⊗ m_A` and gauge elements in
//! `L⁰ ⊗ m_A`, both as [`TensorElement`]s. The gauge action is the closed
//! nilpotent series for `exp(ad_α)(x + d) - d` inside `L ⋊ ⟨d⟩`, where
//! `[d, a] = da`; in particular `ad_α(d) = -dα`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::artinian::{extension_tower, CoefficientRing, SmallExtensionStep, TensorElement};
use crate::bch::LieAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{class_coordinates, frac, homology_of_matrices, is_zero_vec, BilinearMap, Homology, Matrix, Scalar};

/// Coordinates in `L¹ ⊗ m_A`.
pub type McElement = TensorElement;
/// Coordinates in `L⁰ ⊗ m_A`.
pub type GaugeElement = TensorElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dgla {
    labels: Vec<Vec<String>>,
    /// `differential[i]: L^i → L^{i+1}` for `i < top`.
    differential: Vec<Matrix>,
    brackets: BTreeMap<(usize, usize), BilinearMap>,
}

fn sign(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

impl Dgla {
    /// DGLA with the given differentials and zero bracket.
    pub fn new(dims: &[usize], differential: Vec<Matrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidStructure("a DGLA needs at least degree 0".into()));
        }
        let top = dims.len() - 1;
        if differential.len() != top {
            return Err(Error::Shape(format!(
                "{} differentials given for top degree {top}",
                differential.len()
            )));
        }
        for (i, d) in differential.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(Error::Shape(format!(
                    "d{i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        let labels = dims
            .iter()
            .enumerate()
            .map(|(p, &n)| (0..n).map(|a| format!("e{p}_{a}")).collect())
            .collect();
        let mut brackets = BTreeMap::new();
        for p in 0..=top {
            for q in 0..=top - p {
                brackets.insert((p, q), BilinearMap::zero(dims[p], dims[q], dims[p + q]));
            }
        }
        Ok(Self {
            labels,
            differential,
            brackets,
        })
    }

    /// Abelian DGLA with zero differential.
    pub fn abelian(dims: &[usize]) -> Result<Self> {
        let diffs = (0..dims.len().saturating_sub(1))
            .map(|i| Matrix::zeros(dims[i + 1], dims[i]))
            .collect();
        Self::new(dims, diffs)
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.labels.len() || labels.iter().zip(&self.labels).any(|(a, b)| a.len() != b.len()) {
            return Err(Error::Shape("label counts do not match degree dimensions".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Sets `[e^p_a, e^q_b]` exactly as given, without touching `[e^q_b, e^p_a]`.
    pub fn set_bracket_raw(&mut self, p: usize, a: usize, q: usize, b: usize, out: &[Scalar]) -> Result<()> {
        let map = self
            .brackets
            .get_mut(&(p, q))
            .ok_or(Error::OutOfRange { index: p + q, max: self.labels.len() - 1 })?;
        if a >= map.left_dim || b >= map.right_dim || out.len() != map.out_dim {
            return Err(Error::Shape(format!("bracket entry ({p},{a})x({q},{b}) out of shape")));
        }
        map.terms.retain(|t| t.0 != a || t.1 != b);
        for (k, c) in out.iter().enumerate() {
            if !c.is_zero() {
                map.terms.push((a, b, k, c.clone()));
            }
        }
        Ok(())
    }

    /// Sets `[e^p_a, e^q_b]` and the mirrored value forced by graded antisymmetry.
    pub fn set_bracket(&mut self, p: usize, a: usize, q: usize, b: usize, out: &[Scalar]) -> Result<()> {
        self.set_bracket_raw(p, a, q, b, out)?;
        let s = -sign(p * q);
        let mirrored: Vec<Scalar> = out.iter().map(|x| x * &s).collect();
        self.set_bracket_raw(q, b, p, a, &mirrored)
    }

    pub fn top_degree(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    /// `dim L^p`, zero above the top degree.
    pub fn dim(&self, p: usize) -> usize {
        self.labels.get(p).map_or(0, Vec::len)
    }

    pub fn labels(&self, p: usize) -> &[String] {
        self.labels.get(p).map_or(&[], |v| v.as_slice())
    }

    /// `d: L^p → L^{p+1}` (a zero matrix at and above the top degree).
    pub fn differential(&self, p: usize) -> Matrix {
        self.differential
            .get(p)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(p + 1), self.dim(p)))
    }

    /// `d: L^{p-1} → L^p`; empty domain in degree 0.
    pub fn differential_into(&self, p: usize) -> Matrix {
        if p == 0 {
            Matrix::zeros(self.dim(0), 0)
        } else {
            self.differential(p - 1)
        }
    }

    /// The bracket `L^p × L^q → L^{p+q}` (zero when `p + q` exceeds the top degree).
    pub fn bracket_map(&self, p: usize, q: usize) -> BilinearMap {
        self.brackets
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| BilinearMap::zero(self.dim(p), self.dim(q), self.dim(p + q)))
    }

    pub fn bracket_vec(&self, p: usize, x: &[Scalar], q: usize, y: &[Scalar]) -> Vec<Scalar> {
        match self.brackets.get(&(p, q)) {
            Some(m) => m.apply(x, y),
            None => Vec::new(),
        }
    }

    pub fn bracket_tensor(&self, p: usize, x: &TensorElement, q: usize, y: &TensorElement) -> Result<TensorElement> {
        match self.brackets.get(&(p, q)) {
            Some(m) => TensorElement::bilinear(m, x, y),
            None => Ok(TensorElement::zero(0, x.ring())),
        }
    }

    /// `L⁰` as an ordinary Lie algebra.
    pub fn degree_zero_lie(&self) -> LieAlgebra {
        LieAlgebra {
            bracket: self.bracket_map(0, 0),
        }
    }

    fn unit(&self, p: usize, a: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim(p)];
        v[a] = Scalar::one();
        v
    }

    /// Exhaustive verification of `d² = 0`, graded antisymmetry, graded Jacobi
    /// and Leibniz on basis tuples.
    pub fn check(&self) -> DglaReport {
        let top = self.top_degree();
        let mut violations = Vec::new();
        for p in 0..top.saturating_sub(1) {
            let dd = self.differential(p + 1).mul(&self.differential(p)).expect("shapes");
            for a in 0..self.dim(p) {
                if !is_zero_vec(&dd.column(a)) {
                    violations.push(DglaViolation::DSquared { degree: p, a });
                }
            }
        }
        for p in 0..=top {
            for q in 0..=top - p {
                for a in 0..self.dim(p) {
                    for b in 0..self.dim(q) {
                        let x = self.unit(p, a);
                        let y = self.unit(q, b);
                        let ab = self.bracket_vec(p, &x, q, &y);
                        let ba = self.bracket_vec(q, &y, p, &x);
                        let s = sign(p * q);
                        if ab.iter().zip(&ba).any(|(u, v)| !(u + &s * v).is_zero()) {
                            violations.push(DglaViolation::Antisymmetry { p, a, q, b });
                        }
                        if p + q < top {
                            // d[a,b] = [da,b] + (-1)^p [a,db]
                            let lhs = self.differential(p + q).mul_vec(&ab).expect("shapes");
                            let da = self.differential(p).mul_vec(&x).expect("shapes");
                            let db = self.differential(q).mul_vec(&y).expect("shapes");
                            let t1 = self.bracket_vec(p + 1, &da, q, &y);
                            let t2 = self.bracket_vec(p, &x, q + 1, &db);
                            let sp = sign(p);
                            if (0..lhs.len()).any(|k| !(&lhs[k] - &t1[k] - &sp * &t2[k]).is_zero()) {
                                violations.push(DglaViolation::Leibniz { p, a, q, b });
                            }
                        }
                    }
                }
            }
        }
        for p in 0..=top {
            for q in 0..=top - p {
                for r in 0..=top - p - q {
                    for a in 0..self.dim(p) {
                        for b in 0..self.dim(q) {
                            for c in 0..self.dim(r) {
                                let (x, y, z) = (self.unit(p, a), self.unit(q, b), self.unit(r, c));
                                // [x,[y,z]] = [[x,y],z] + (-1)^{pq} [y,[x,z]]
                                let lhs = self.bracket_vec(p, &x, q + r, &self.bracket_vec(q, &y, r, &z));
                                let t1 = self.bracket_vec(p + q, &self.bracket_vec(p, &x, q, &y), r, &z);
                                let t2 = self.bracket_vec(q, &y, p + r, &self.bracket_vec(p, &x, r, &z));
                                let s = sign(p * q);
                                if (0..lhs.len()).any(|k| !(&lhs[k] - &t1[k] - &s * &t2[k]).is_zero()) {
                                    violations.push(DglaViolation::Jacobi { p, a, q, b, r, c });
                                }
                            }
                        }
                    }
                }
            }
        }
        DglaReport { violations }
    }

    /// `H^i(L)` with representative cocycles.
    pub fn cohomology(&self, i: usize) -> Result<Homology> {
        let top = self.top_degree();
        if i > top {
            return Err(Error::OutOfRange { index: i, max: top });
        }
        homology_of_matrices(&self.differential_into(i), &self.differential(i))
    }

    fn expect_degree(&self, x: &TensorElement, p: usize) -> Result<()> {
        if x.dim() != self.dim(p) {
            return Err(Error::Shape(format!(
                "element of dim {} where L^{p} has dim {}",
                x.dim(),
                self.dim(p)
            )));
        }
        Ok(())
    }

    /// `dx + ½[x,x] ∈ L² ⊗ m_A`.
    pub fn mc_residual(&self, x: &McElement) -> Result<TensorElement> {
        self.expect_degree(x, 1)?;
        let dx = x.apply(&self.differential(1))?;
        let xx = self.bracket_tensor(1, x, 1, x)?;
        if xx.dim() == 0 {
            return Ok(dx);
        }
        dx.add(&xx.scale(&frac(1, 2)))
    }

    pub fn is_mc(&self, x: &McElement) -> Result<bool> {
        Ok(self.mc_residual(x)?.is_zero())
    }

    fn ad(&self, alpha: &GaugeElement, p: usize, y: &TensorElement) -> Result<TensorElement> {
        self.bracket_tensor(0, alpha, p, y)
    }

    /// `exp(ad_α)(x + d) - d = Σ_{n≥0} ad_α^n(x)/n! - Σ_{n≥0} ad_α^n(dα)/(n+1)!`.
    pub fn gauge_act(&self, alpha: &GaugeElement, x: &McElement) -> Result<McElement> {
        self.expect_degree(alpha, 0)?;
        self.expect_degree(x, 1)?;
        let mut total = x.clone();
        let mut term = x.clone();
        let mut n = 1i64;
        loop {
            term = self.ad(alpha, 1, &term)?.scale(&frac(1, n));
            if term.is_zero() {
                break;
            }
            total = total.add(&term)?;
            n += 1;
        }
        // ad^n(dα)/(n+1)!: keep ad^n(dα)/n! and divide by n+1.
        let mut term = alpha.apply(&self.differential(0))?;
        let mut n = 0i64;
        while !term.is_zero() {
            total = total.sub(&term.scale(&frac(1, n + 1)))?;
            n += 1;
            term = self.ad(alpha, 1, &term)?.scale(&frac(1, n));
        }
        Ok(total)
    }

    /// Obstruction to lifting the MC element `x` across a small extension.
    pub fn obstruction_class(&self, step: &SmallExtensionStep, x: &McElement) -> Result<ObstructionClass> {
        self.obstruction_with_lift(step, x, &x.zero_extend(step)?)
    }

    /// As [`Dgla::obstruction_class`] but with an explicit lift `lift` of `x`.
    pub fn obstruction_with_lift(
        &self,
        step: &SmallExtensionStep,
        x: &McElement,
        lift: &McElement,
    ) -> Result<ObstructionClass> {
        if !self.is_mc(x)? {
            return Err(Error::Precondition("element is not Maurer-Cartan over the quotient".into()));
        }
        if lift.reduce(&step.projection)? != *x {
            return Err(Error::Precondition("given lift does not reduce to the element".into()));
        }
        let h = self.mc_residual(lift)?;
        let t = step.kernel_generator;
        if !h.supported_on(t) {
            return Err(Error::InvalidStructure("residual of a lift is not in the kernel ideal".into()));
        }
        let h_vec = h.column(t);
        let dh = self.differential(2).mul_vec(&h_vec)?;
        if !is_zero_vec(&dh) {
            return Err(Error::NotAComplex("obstruction cocycle is not closed".into()));
        }
        let reps = self.cohomology(2).map(|h| h.representatives).unwrap_or_default();
        let class = class_coordinates(&reps, &self.differential_into(2), &h_vec)?
            .ok_or_else(|| Error::InvalidStructure("obstruction cocycle outside ker d".into()))?;
        let is_zero = is_zero_vec(&class);
        Ok(ObstructionClass {
            representative: h_vec,
            class,
            kernel_generator: t,
            is_zero,
        })
    }

    /// An MC lift across `step`, or `None` when the obstruction is nonzero.
    pub fn lift_mc(&self, step: &SmallExtensionStep, x: &McElement) -> Result<Option<McElement>> {
        let lift = x.zero_extend(step)?;
        let obs = self.obstruction_with_lift(step, x, &lift)?;
        if !obs.is_zero {
            return Ok(None);
        }
        let target: Vec<Scalar> = obs.representative.iter().map(|c| -c).collect();
        let z = self
            .differential(1)
            .solve(&target)?
            .ok_or_else(|| Error::InvalidStructure("zero class without a primitive".into()))?;
        let lifted = lift.add(&TensorElement::pure(&step.total, &z, step.kernel_generator))?;
        if !self.is_mc(&lifted)? {
            return Err(Error::InvalidStructure("corrected lift is not Maurer-Cartan".into()));
        }
        Ok(Some(lifted))
    }

    /// Order-by-order search for `α` with `α·x = y`.
    pub fn find_gauge(&self, x: &McElement, y: &McElement) -> Result<GaugeOutcome> {
        if x.ring() != y.ring() && **x.ring() != **y.ring() {
            return Err(Error::RingMismatch("elements over different rings".into()));
        }
        if !self.is_mc(x)? || !self.is_mc(y)? {
            return Err(Error::Precondition("both elements must be Maurer-Cartan".into()));
        }
        let ring: Arc<CoefficientRing> = x.ring().clone();
        let tower = extension_tower(&ring);
        let mut xs = vec![x.clone()];
        let mut ys = vec![y.clone()];
        for step in tower.iter().rev() {
            let xl = xs.last().unwrap().reduce(&step.projection)?;
            let yl = ys.last().unwrap().reduce(&step.projection)?;
            xs.push(xl);
            ys.push(yl);
        }
        xs.reverse();
        ys.reverse();
        let h0 = self.cohomology(0)?.dim;
        let d0 = self.differential(0);
        let base = tower.first().map_or_else(|| ring.clone(), |s| s.quotient.clone());
        let mut alpha = TensorElement::zero(self.dim(0), &base);
        for (k, step) in tower.iter().enumerate() {
            let lifted = alpha.zero_extend(step)?;
            let moved = self.gauge_act(&lifted, &xs[k + 1])?;
            let delta = ys[k + 1].sub(&moved)?;
            let t = step.kernel_generator;
            if !delta.supported_on(t) {
                return Err(Error::InvalidStructure("gauge defect escaped the kernel ideal".into()));
            }
            let dv = delta.column(t);
            let target: Vec<Scalar> = dv.iter().map(|c| -c).collect();
            match d0.solve(&target)? {
                Some(beta) => {
                    alpha = lifted.add(&TensorElement::pure(&step.total, &beta, t))?;
                }
                None if h0 == 0 => {
                    let reps = self.cohomology(1)?.representatives;
                    let class = class_coordinates(&reps, &d0, &dv)?.unwrap_or_default();
                    return Ok(GaugeOutcome::NotEquivalent {
                        stage: k + 1,
                        defect: dv,
                        class,
                    });
                }
                None => {
                    return Ok(GaugeOutcome::Undetermined {
                        stage: k + 1,
                        ambiguity: vec![h0; k + 1],
                    });
                }
            }
        }
        Ok(GaugeOutcome::Found(alpha))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DglaViolation {
    DSquared { degree: usize, a: usize },
    Antisymmetry { p: usize, a: usize, q: usize, b: usize },
    Jacobi { p: usize, a: usize, q: usize, b: usize, r: usize, c: usize },
    Leibniz { p: usize, a: usize, q: usize, b: usize },
}

impl fmt::Display for DglaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DSquared { degree, a } => write!(f, "d∘d ≠ 0 on e{degree}_{a}"),
            Self::Antisymmetry { p, a, q, b } => write!(f, "antisymmetry fails on (e{p}_{a}, e{q}_{b})"),
            Self::Jacobi { p, a, q, b, r, c } => {
                write!(f, "Jacobi fails on (e{p}_{a}, e{q}_{b}, e{r}_{c})")
            }
            Self::Leibniz { p, a, q, b } => write!(f, "Leibniz fails on (e{p}_{a}, e{q}_{b})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DglaReport {
    pub violations: Vec<DglaViolation>,
}

impl DglaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Class of `h = dx̃ + ½[x̃,x̃]` in `H²(L) ⊗ (t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionClass {
    /// The cocycle `h` as a vector in `L²` (coefficient of `t`).
    pub representative: Vec<Scalar>,
    /// Coordinates of `[h]` in the basis of `H²` returned by `cohomology(2)`.
    pub class: Vec<Scalar>,
    pub kernel_generator: usize,
    pub is_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeOutcome {
    Found(GaugeElement),
    /// No gauge exists; `defect` is the `H¹`-valued discrepancy at `stage`.
    NotEquivalent {
        stage: usize,
        defect: Vec<Scalar>,
        class: Vec<Scalar>,
    },
    /// `H⁰ ≠ 0` and the zero-ambiguity path failed at `stage`.
    Undetermined { stage: usize, ambiguity: Vec<usize> },
}

/// Degreewise linear maps `L → M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DglaMorphism {
    pub maps: Vec<Matrix>,
}

impl DglaMorphism {
    /// Whether the maps commute with `d` and the bracket on all basis pairs.
    pub fn is_morphism(&self, source: &Dgla, target: &Dgla) -> bool {
        let top = source.top_degree();
        if self.maps.len() != top + 1 {
            return false;
        }
        for p in 0..=top {
            let f = &self.maps[p];
            if f.rows() != target.dim(p) || f.cols() != source.dim(p) {
                return false;
            }
        }
        let map = |p: usize, v: &[Scalar]| -> Vec<Scalar> {
            match self.maps.get(p) {
                Some(f) => f.mul_vec(v).expect("shapes"),
                None => vec![Scalar::zero(); target.dim(p)],
            }
        };
        for p in 0..top {
            let lhs = target.differential(p).mul(&self.maps[p]).expect("shapes");
            let rhs = self.maps[p + 1].mul(&source.differential(p)).expect("shapes");
            if lhs != rhs {
                return false;
            }
        }
        for p in 0..=top {
            for q in 0..=top - p {
                for a in 0..source.dim(p) {
                    for b in 0..source.dim(q) {
                        let x = source.unit(p, a);
                        let y = source.unit(q, b);
                        let lhs = map(p + q, &source.bracket_vec(p, &x, q, &y));
                        let rhs = target.bracket_vec(p, &map(p, &x), q, &map(q, &y));
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Applies the degree-`p` component to `x ∈ L^p ⊗ m_A`.
    pub fn apply(&self, p: usize, x: &TensorElement) -> Result<TensorElement> {
        x.apply(&self.maps[p])
    }

    /// Rank of `H^i(f)`.
    pub fn cohomology_rank(&self, source: &Dgla, target: &Dgla, i: usize) -> Result<usize> {
        let reps = source.cohomology(i)?.representatives;
        crate::exactlin::induced_rank(&self.maps[i], &reps, &target.differential_into(i))
    }
}
