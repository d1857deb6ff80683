//! Artinian local coefficient rings over ℚ.
//!
//! A [`CoefficientRing`] stores only its maximal ideal `m`: a basis with an
//! m-adic order per element and multiplication structure constants. The unit
//! is implicit. Rings come from monomial quotients of polynomial rings or from
//! fiber products, which are stored by explicit structure constants in a basis
//! adapted to the filtration `m ⊃ m² ⊃ …`.
//!
//! [`TensorElement`]s are elements of `V ⊗ m_A`, stored as a `dim V × dim m`
//! coordinate matrix.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{is_zero_vec, zero_vec, BilinearMap, Matrix, Scalar, SpanBuilder};

/// Multiplication table entry: sparse combination of basis elements.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientRing {
    generator_names: Vec<String>,
    labels: Vec<String>,
    exponents: Option<Vec<Vec<u32>>>,
    orders: Vec<usize>,
    mult: Vec<Vec<SparseVec>>,
    nilpotency: usize,
}

/// A violated ring axiom located by basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingViolation {
    NotCommutative { i: usize, j: usize },
    NotAssociative { i: usize, j: usize, k: usize },
    OrderDrop { i: usize, j: usize, k: usize },
}

impl CoefficientRing {
    /// The residue field ℚ itself (`m = 0`).
    pub fn rationals() -> Self {
        Self {
            generator_names: Vec::new(),
            labels: Vec::new(),
            exponents: Some(Vec::new()),
            orders: Vec::new(),
            mult: Vec::new(),
            nilpotency: 1,
        }
    }

    /// Ring from explicit structure constants on a basis of `m`.
    pub fn from_structure_constants(
        labels: Vec<String>,
        orders: Vec<usize>,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let n = labels.len();
        if orders.len() != n || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("structure constants do not match basis size".into()));
        }
        if orders.contains(&0) {
            return Err(Error::InvalidStructure("basis elements of m must have order ≥ 1".into()));
        }
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if table[i][j].len() != n {
                    return Err(Error::Shape(format!("product ({i},{j}) has wrong length")));
                }
                mult[i][j] = table[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
            }
        }
        let nilpotency = orders.iter().copied().max().unwrap_or(0) + 1;
        let ring = Self {
            generator_names: Vec::new(),
            labels,
            exponents: None,
            orders,
            mult,
            nilpotency,
        };
        if let Some(v) = ring.check().into_iter().next() {
            return Err(Error::InvalidStructure(format!("ring axiom violated: {v:?}")));
        }
        Ok(ring)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// Exponent vectors of the monomial basis, when the ring is a monomial quotient.
    pub fn exponents(&self) -> Option<&[Vec<u32>]> {
        self.exponents.as_deref()
    }

    pub fn order_of(&self, i: usize) -> usize {
        self.orders[i]
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Smallest `N` with `m^N = 0`.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Product of two elements of `m` given by coordinates.
    pub fn mul_m(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim());
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                for (k, c) in &self.mult[i][j] {
                    out[*k] += c * x * y;
                }
            }
        }
        out
    }

    /// Exhaustive commutativity, associativity and order checks on basis tuples.
    pub fn check(&self) -> Vec<RingViolation> {
        let n = self.dim();
        let mut out = Vec::new();
        let unit = |i: usize| {
            let mut v = zero_vec(n);
            v[i] = Scalar::one();
            v
        };
        for i in 0..n {
            for j in 0..n {
                if self.mul_m(&unit(i), &unit(j)) != self.mul_m(&unit(j), &unit(i)) {
                    out.push(RingViolation::NotCommutative { i, j });
                }
                for (k, _) in &self.mult[i][j] {
                    if self.orders[*k] < self.orders[i] + self.orders[j] {
                        out.push(RingViolation::OrderDrop { i, j, k: *k });
                    }
                }
                for k in 0..n {
                    let left = self.mul_m(&self.mul_m(&unit(i), &unit(j)), &unit(k));
                    let right = self.mul_m(&unit(i), &self.mul_m(&unit(j), &unit(k)));
                    if left != right {
                        out.push(RingViolation::NotAssociative { i, j, k });
                    }
                }
            }
        }
        out
    }

    /// Subring/quotient that keeps only the basis elements in `keep` (sorted).
    /// The discarded span must be an ideal; the caller guarantees it.
    fn quotient_keeping(&self, keep: &[usize]) -> Self {
        let mut new_index = vec![None; self.dim()];
        for (n, &o) in keep.iter().enumerate() {
            new_index[o] = Some(n);
        }
        let mult = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| {
                        self.mult[i][j]
                            .iter()
                            .filter_map(|(k, c)| new_index[*k].map(|nk| (nk, c.clone())))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let orders: Vec<usize> = keep.iter().map(|&i| self.orders[i]).collect();
        Self {
            generator_names: self.generator_names.clone(),
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            exponents: self
                .exponents
                .as_ref()
                .map(|e| keep.iter().map(|&i| e[i].clone()).collect()),
            nilpotency: orders.iter().copied().max().unwrap_or(0) + 1,
            orders,
            mult,
        }
    }
}

fn monomial_label(names: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    parts.join("*")
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `ℚ[vars]/(ideal)` for a monomial ideal given by exponent vectors.
///
/// The quotient must be finite-dimensional: every variable needs a pure power
/// in the ideal. Basis monomials are ordered by total degree, then by
/// descending exponent vector (`s` before `t`, `s²` before `st`).
pub fn truncated_algebra(vars: &[&str], ideal: &[Vec<u32>]) -> Result<CoefficientRing> {
    let nv = vars.len();
    if ideal.iter().any(|g| g.len() != nv) {
        return Err(Error::Shape("ideal generator length differs from variable count".into()));
    }
    if ideal.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Err(Error::InvalidStructure("ideal contains 1; the ring would be zero".into()));
    }
    let mut bounds = Vec::with_capacity(nv);
    for v in 0..nv {
        let pure = ideal
            .iter()
            .filter(|g| g.iter().enumerate().all(|(w, &e)| w == v || e == 0))
            .map(|g| g[v])
            .min();
        match pure {
            Some(p) => bounds.push(p),
            None => {
                return Err(Error::NotArtinian(format!(
                    "no power of `{}` lies in the ideal",
                    vars[v]
                )))
            }
        }
    }
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; nv];
    loop {
        if cur.iter().any(|&e| e > 0) && !ideal.iter().any(|g| divides(g, &cur)) {
            monomials.push(cur.clone());
        }
        let mut pos = 0;
        loop {
            if pos == nv {
                break;
            }
            cur[pos] += 1;
            if cur[pos] < bounds[pos] {
                break;
            }
            cur[pos] = 0;
            pos += 1;
        }
        if pos == nv {
            break;
        }
    }
    let degree = |m: &Vec<u32>| m.iter().map(|&e| e as usize).sum::<usize>();
    monomials.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let n = monomials.len();
    let mut mult = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod: Vec<u32> = monomials[i].iter().zip(&monomials[j]).map(|(a, b)| a + b).collect();
            if let Some(k) = monomials.iter().position(|m| *m == prod) {
                mult[i][j] = vec![(k, Scalar::one())];
            }
        }
    }
    let orders: Vec<usize> = monomials.iter().map(degree).collect();
    Ok(CoefficientRing {
        labels: monomials.iter().map(|m| monomial_label(&names, m)).collect(),
        generator_names: names,
        nilpotency: orders.iter().copied().max().unwrap_or(0) + 1,
        orders,
        exponents: Some(monomials),
        mult,
    })
}

/// `ℚ[t]/(t^n)`.
pub fn truncated_polynomial(var: &str, n: u32) -> Result<CoefficientRing> {
    truncated_algebra(&[var], &[vec![n]])
}

/// `ℚ[vars]/(vars)^n`.
pub fn truncated_by_power(vars: &[&str], n: u32) -> Result<CoefficientRing> {
    let nv = vars.len();
    let mut gens = Vec::new();
    let mut cur = vec![0u32; nv];
    fn rec(v: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if v + 1 == cur.len() {
            cur[v] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[v] = e;
            rec(v + 1, left - e, cur, out);
        }
    }
    if nv > 0 {
        rec(0, n, &mut cur, &mut gens);
    }
    truncated_algebra(vars, &gens)
}

/// JSON ring description `{"vars": [...], "ideal": [[exponents], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub vars: Vec<String>,
    pub ideal: Vec<Vec<u32>>,
}

impl RingSpec {
    pub fn build(&self) -> Result<CoefficientRing> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        truncated_algebra(&vars, &self.ideal)
    }
}

/// Element `c·1 + x` of a coefficient ring, `x ∈ m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub unit: Scalar,
    pub m: Vec<Scalar>,
}

impl RingElement {
    pub fn scalar(ring: &CoefficientRing, c: Scalar) -> Self {
        Self {
            unit: c,
            m: zero_vec(ring.dim()),
        }
    }

    pub fn zero(ring: &CoefficientRing) -> Self {
        Self::scalar(ring, Scalar::zero())
    }

    pub fn one(ring: &CoefficientRing) -> Self {
        Self::scalar(ring, Scalar::one())
    }

    pub fn basis(ring: &CoefficientRing, i: usize) -> Self {
        let mut m = zero_vec(ring.dim());
        m[i] = Scalar::one();
        Self {
            unit: Scalar::zero(),
            m,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && is_zero_vec(&self.m)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            unit: &self.unit + &other.unit,
            m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            unit: &self.unit - &other.unit,
            m: self.m.iter().zip(&other.m).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            unit: &self.unit * c,
            m: self.m.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self, ring: &CoefficientRing) -> Self {
        let mut m = ring.mul_m(&self.m, &other.m);
        for (i, x) in m.iter_mut().enumerate() {
            *x += &self.unit * &other.m[i] + &other.unit * &self.m[i];
        }
        Self {
            unit: &self.unit * &other.unit,
            m,
        }
    }
}

/// Morphism of local ℚ-algebras, determined by the images of the basis of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMorphism {
    pub source: Arc<CoefficientRing>,
    pub target: Arc<CoefficientRing>,
    /// `images[i]` is the image of source basis element `i`, in target `m` coordinates.
    pub images: Vec<Vec<Scalar>>,
}

impl RingMorphism {
    pub fn new(
        source: Arc<CoefficientRing>,
        target: Arc<CoefficientRing>,
        images: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        if images.len() != source.dim() || images.iter().any(|v| v.len() != target.dim()) {
            return Err(Error::Shape("morphism images do not match ring dimensions".into()));
        }
        let f = Self {
            source,
            target,
            images,
        };
        if !f.is_multiplicative() {
            return Err(Error::InvalidStructure("ring map is not multiplicative".into()));
        }
        Ok(f)
    }

    pub fn identity(ring: Arc<CoefficientRing>) -> Self {
        let n = ring.dim();
        let images = (0..n)
            .map(|i| {
                let mut v = zero_vec(n);
                v[i] = Scalar::one();
                v
            })
            .collect();
        Self {
            source: ring.clone(),
            target: ring,
            images,
        }
    }

    /// The residue map `A → ℚ`.
    pub fn residue(ring: Arc<CoefficientRing>) -> Self {
        let n = ring.dim();
        Self {
            source: ring,
            target: Arc::new(CoefficientRing::rationals()),
            images: vec![Vec::new(); n],
        }
    }

    /// Map between monomial quotients sending each basis monomial of the
    /// source to the same monomial in the target when it survives, else 0.
    pub fn canonical(source: Arc<CoefficientRing>, target: Arc<CoefficientRing>) -> Result<Self> {
        let images = source
            .labels()
            .iter()
            .map(|l| {
                let mut v = zero_vec(target.dim());
                if let Some(k) = target.index_of(l) {
                    v[k] = Scalar::one();
                }
                v
            })
            .collect();
        Self::new(source, target, images)
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.target.dim());
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, y) in self.images[i].iter().enumerate() {
                if !y.is_zero() {
                    out[k] += c * y;
                }
            }
        }
        out
    }

    pub fn is_multiplicative(&self) -> bool {
        let n = self.source.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.target.mul_m(&self.images[i], &self.images[j]);
                let mut prod = zero_vec(n);
                for (k, c) in self.source.product(i, j) {
                    prod[*k] += c;
                }
                if lhs != self.apply(&prod) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let m = Matrix::from_columns(&self.images, self.target.dim());
        m.rank() == self.target.dim()
    }

    pub fn compose(&self, after: &RingMorphism) -> Result<RingMorphism> {
        if *self.target != *after.source {
            return Err(Error::RingMismatch("composition of incompatible ring maps".into()));
        }
        let images = self.images.iter().map(|v| after.apply(v)).collect();
        Ok(RingMorphism {
            source: self.source.clone(),
            target: after.target.clone(),
            images,
        })
    }
}

/// Small extension `0 → (t) → total → quotient → 0` with `m_total·t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallExtensionStep {
    pub total: Arc<CoefficientRing>,
    pub quotient: Arc<CoefficientRing>,
    pub projection: RingMorphism,
    /// Basis index of `t` in `total`.
    pub kernel_generator: usize,
    /// `lift_index[i]`: position in `total` of quotient basis element `i`.
    pub lift_index: Vec<usize>,
}

/// Chain `ℚ = A₀ ← A₁ ← … ← A_r = A` of small extensions, listed bottom-up.
///
/// Each step strips one basis element of maximal m-adic order; among ties the
/// one latest in the basis order goes first (for monomial rings: `t²` before
/// `st` before `s²`).
pub fn extension_tower(ring: &Arc<CoefficientRing>) -> Vec<SmallExtensionStep> {
    let mut keep: Vec<usize> = (0..ring.dim()).collect();
    let mut rings = vec![ring.clone()];
    let mut stripped = Vec::new();
    let mut kept_lists = vec![keep.clone()];
    while !keep.is_empty() {
        let max_order = keep.iter().map(|&i| ring.order_of(i)).max().unwrap();
        let pos = keep
            .iter()
            .rposition(|&i| ring.order_of(i) == max_order)
            .expect("nonempty");
        stripped.push(pos);
        keep.remove(pos);
        rings.push(Arc::new(ring.quotient_keeping(&keep)));
        kept_lists.push(keep.clone());
    }
    // rings[0] = A, rings[r] = ℚ; build steps from the bottom.
    let r = rings.len() - 1;
    let mut steps = Vec::with_capacity(r);
    for level in (0..r).rev() {
        let total = rings[level].clone();
        let quotient = rings[level + 1].clone();
        let t = stripped[level];
        let lift_index: Vec<usize> = (0..total.dim()).filter(|&i| i != t).collect();
        let images = (0..total.dim())
            .map(|i| {
                let mut v = zero_vec(quotient.dim());
                if let Some(q) = lift_index.iter().position(|&x| x == i) {
                    v[q] = Scalar::one();
                }
                v
            })
            .collect();
        let projection = RingMorphism {
            source: total.clone(),
            target: quotient.clone(),
            images,
        };
        steps.push(SmallExtensionStep {
            total,
            quotient,
            projection,
            kernel_generator: t,
            lift_index,
        });
    }
    steps
}

impl SmallExtensionStep {
    /// Whether `m_total · t = 0`, checked on all basis elements.
    pub fn kernel_is_annihilated(&self) -> bool {
        (0..self.total.dim()).all(|i| self.total.product(i, self.kernel_generator).is_empty())
    }
}

/// Fiber product `B ×_A C` with its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub ring: Arc<CoefficientRing>,
    pub to_left: RingMorphism,
    pub to_right: RingMorphism,
}

/// Fiber product of `p: B → A` (surjective) and `q: C → A`.
pub fn fiber_product(p: &RingMorphism, q: &RingMorphism) -> Result<FiberProduct> {
    if *p.target != *q.target {
        return Err(Error::RingMismatch("p and q must share a target".into()));
    }
    if !p.is_surjective() {
        return Err(Error::Precondition("p must be surjective".into()));
    }
    let (b, c) = (p.source.clone(), q.source.clone());
    let (nb, nc, na) = (b.dim(), c.dim(), p.target.dim());
    // Matching condition P·x - Q·y = 0 on m_B ⊕ m_C.
    let mut cond = Matrix::zeros(na, nb + nc);
    for i in 0..nb {
        for (k, v) in p.images[i].iter().enumerate() {
            cond[(k, i)] = v.clone();
        }
    }
    for j in 0..nc {
        for (k, v) in q.images[j].iter().enumerate() {
            cond[(k, nb + j)] = -v.clone();
        }
    }
    let kernel = cond.kernel();
    let pair_mul = |x: &[Scalar], y: &[Scalar]| {
        let mut out = b.mul_m(&x[..nb], &y[..nb]);
        out.extend(c.mul_m(&x[nb..], &y[nb..]));
        out
    };
    // Powers m^k of the fiber ideal as spanning sets.
    let mut powers: Vec<Vec<Vec<Scalar>>> = vec![kernel.clone()];
    loop {
        let last = powers.last().unwrap();
        let mut span = SpanBuilder::new(nb + nc);
        let mut next = Vec::new();
        for x in last {
            for y in &kernel {
                let z = pair_mul(x, y);
                if span.insert(&z) {
                    next.push(z);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        powers.push(next);
    }
    // Basis adapted to the filtration: highest powers first, then reversed.
    let mut span = SpanBuilder::new(nb + nc);
    let mut chosen: Vec<(Vec<Scalar>, usize)> = Vec::new();
    for (k, gens) in powers.iter().enumerate().rev() {
        for v in gens {
            if span.insert(v) {
                chosen.push((v.clone(), k + 1));
            }
        }
    }
    chosen.reverse();
    let n = chosen.len();
    let basis_matrix = Matrix::from_columns(&chosen.iter().map(|c| c.0.clone()).collect::<Vec<_>>(), nb + nc);
    let mut table = vec![vec![zero_vec(n); n]; n];
    for i in 0..n {
        for j in 0..n {
            let z = pair_mul(&chosen[i].0, &chosen[j].0);
            table[i][j] = basis_matrix
                .solve(&z)?
                .ok_or_else(|| Error::InvalidStructure("fiber product not closed".into()))?;
        }
    }
    let labels = (0..n).map(|i| format!("f{i}")).collect();
    let orders = chosen.iter().map(|c| c.1).collect();
    let ring = Arc::new(CoefficientRing::from_structure_constants(labels, orders, table)?);
    let to_left = RingMorphism::new(ring.clone(), b.clone(), chosen.iter().map(|c| c.0[..nb].to_vec()).collect())?;
    let to_right = RingMorphism::new(ring.clone(), c.clone(), chosen.iter().map(|c| c.0[nb..].to_vec()).collect())?;
    Ok(FiberProduct {
        ring,
        to_left,
        to_right,
    })
}

/// Element of `V ⊗ m_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    ring: Arc<CoefficientRing>,
    /// `dim V × dim m_A`.
    coords: Matrix,
}

impl TensorElement {
    pub fn zero(dim: usize, ring: &Arc<CoefficientRing>) -> Self {
        Self {
            ring: ring.clone(),
            coords: Matrix::zeros(dim, ring.dim()),
        }
    }

    pub fn from_coords(ring: &Arc<CoefficientRing>, coords: Matrix) -> Result<Self> {
        if coords.cols() != ring.dim() {
            return Err(Error::Shape(format!(
                "coordinate matrix has {} columns, ring has {} basis elements",
                coords.cols(),
                ring.dim()
            )));
        }
        Ok(Self {
            ring: ring.clone(),
            coords,
        })
    }

    /// `v ⊗ r` for a vector `v` and a ring basis element `r`.
    pub fn pure(ring: &Arc<CoefficientRing>, v: &[Scalar], r: usize) -> Self {
        let mut e = Self::zero(v.len(), ring);
        for (i, x) in v.iter().enumerate() {
            e.coords[(i, r)] = x.clone();
        }
        e
    }

    /// `Σ_r v_r ⊗ r`, i.e. a column per ring basis element.
    pub fn from_columns(ring: &Arc<CoefficientRing>, dim: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        if columns.len() != ring.dim() {
            return Err(Error::Shape("one column per ring basis element expected".into()));
        }
        Self::from_coords(ring, Matrix::from_columns(columns, dim))
    }

    pub fn dim(&self) -> usize {
        self.coords.rows()
    }

    pub fn ring(&self) -> &Arc<CoefficientRing> {
        &self.ring
    }

    pub fn coords(&self) -> &Matrix {
        &self.coords
    }

    pub fn get(&self, v: usize, r: usize) -> &Scalar {
        &self.coords[(v, r)]
    }

    /// The `V`-vector multiplying ring basis element `r`.
    pub fn column(&self, r: usize) -> Vec<Scalar> {
        self.coords.column(r)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch("tensor elements over different rings".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self {
            ring: self.ring.clone(),
            coords: self.coords.add(&other.coords)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self {
            ring: self.ring.clone(),
            coords: self.coords.sub(&other.coords)?,
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            ring: self.ring.clone(),
            coords: self.coords.scale(c),
        }
    }

    /// Applies a linear map `V → W` levelwise.
    pub fn apply(&self, map: &Matrix) -> Result<Self> {
        Ok(Self {
            ring: self.ring.clone(),
            coords: map.mul(&self.coords)?,
        })
    }

    /// Pushes coefficients along a ring morphism.
    pub fn reduce(&self, f: &RingMorphism) -> Result<Self> {
        if *f.source != *self.ring {
            return Err(Error::RingMismatch("morphism source differs from element ring".into()));
        }
        let mut coords = Matrix::zeros(self.dim(), f.target.dim());
        for v in 0..self.dim() {
            let row = f.apply(self.coords.row(v));
            for (k, x) in row.into_iter().enumerate() {
                coords[(v, k)] = x;
            }
        }
        Ok(Self {
            ring: f.target.clone(),
            coords,
        })
    }

    /// Multiplies every coefficient by the ring element `a ∈ m_A` (coordinates).
    pub fn mul_ring(&self, a: &[Scalar]) -> Result<Self> {
        if a.len() != self.ring.dim() {
            return Err(Error::RingMismatch("ring element of wrong length".into()));
        }
        let mut coords = Matrix::zeros(self.dim(), self.ring.dim());
        for v in 0..self.dim() {
            let row = self.ring.mul_m(self.coords.row(v), a);
            for (k, x) in row.into_iter().enumerate() {
                coords[(v, k)] = x;
            }
        }
        Ok(Self {
            ring: self.ring.clone(),
            coords,
        })
    }

    /// Evaluates a bilinear map `V × W → U` with ring multiplication of coefficients.
    pub fn bilinear(map: &BilinearMap, x: &Self, y: &Self) -> Result<Self> {
        x.same_ring(y)?;
        if x.dim() != map.left_dim || y.dim() != map.right_dim {
            return Err(Error::Shape(format!(
                "bilinear map {}x{} applied to elements of dims {} and {}",
                map.left_dim,
                map.right_dim,
                x.dim(),
                y.dim()
            )));
        }
        let ring = &x.ring;
        let nm = ring.dim();
        let mut coords = Matrix::zeros(map.out_dim, nm);
        let xr: Vec<Vec<(usize, &Scalar)>> = (0..x.dim()).map(|i| nonzero_row(x.coords.row(i))).collect();
        let yr: Vec<Vec<(usize, &Scalar)>> = (0..y.dim()).map(|j| nonzero_row(y.coords.row(j))).collect();
        for (i, j, k, c) in &map.terms {
            if xr[*i].is_empty() || yr[*j].is_empty() {
                continue;
            }
            for (r, a) in &xr[*i] {
                for (s, b) in &yr[*j] {
                    for (u, m) in ring.product(*r, *s) {
                        coords[(*k, *u)] += c * *a * *b * m;
                    }
                }
            }
        }
        Ok(Self {
            ring: ring.clone(),
            coords,
        })
    }

    /// Zero-extension from the quotient of a small extension to the total ring.
    pub fn zero_extend(&self, step: &SmallExtensionStep) -> Result<Self> {
        if *self.ring != *step.quotient {
            return Err(Error::RingMismatch("element is not over the step's quotient".into()));
        }
        let mut coords = Matrix::zeros(self.dim(), step.total.dim());
        for v in 0..self.dim() {
            for (q, &t) in step.lift_index.iter().enumerate() {
                coords[(v, t)] = self.coords[(v, q)].clone();
            }
        }
        Ok(Self {
            ring: step.total.clone(),
            coords,
        })
    }

    /// Whether all coefficients lie in the span of ring basis element `r`.
    pub fn supported_on(&self, r: usize) -> bool {
        (0..self.dim()).all(|v| (0..self.ring.dim()).all(|s| s == r || self.coords[(v, s)].is_zero()))
    }
}

fn nonzero_row(row: &[Scalar]) -> Vec<(usize, &Scalar)> {
    row.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// Labels of monomials whose exponents are listed; helper for reports.
pub fn support_labels(ring: &CoefficientRing, e: &TensorElement) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for r in 0..ring.dim() {
        if !is_zero_vec(&e.column(r)) {
            out.insert(ring.labels()[r].clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    fn arc(r: CoefficientRing) -> Arc<CoefficientRing> {
        Arc::new(r)
    }

    #[test]
    fn dual_numbers() {
        let r = truncated_polynomial("t", 2).unwrap();
        assert_eq!(r.labels(), ["t"]);
        assert_eq!(r.nilpotency(), 2);
        assert!(r.product(0, 0).is_empty());
    }

    #[test]
    fn cubic_truncation() {
        let r = truncated_polynomial("t", 3).unwrap();
        assert_eq!(r.labels(), ["t", "t^2"]);
        assert_eq!(r.product(0, 0), &vec![(1, int(1))]);
        assert!(r.product(0, 1).is_empty());
        assert_eq!(r.nilpotency(), 3);
    }

    #[test]
    fn two_variables_square_zero() {
        let r = truncated_algebra(&["s", "t"], &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert_eq!(r.labels(), ["s", "t"]);
        for i in 0..2 {
            for j in 0..2 {
                assert!(r.product(i, j).is_empty());
            }
        }
    }

    #[test]
    fn non_artinian_rejected() {
        let err = truncated_algebra(&["s", "t"], &[vec![2, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotArtinian(_)));
    }

    #[test]
    fn rings_pass_exhaustive_axioms() {
        for r in [
            truncated_polynomial("t", 5).unwrap(),
            truncated_by_power(&["s", "t"], 3).unwrap(),
            truncated_algebra(&["s", "t"], &[vec![2, 0], vec![0, 2]]).unwrap(),
        ] {
            assert!(r.check().is_empty());
        }
    }

    #[test]
    fn towers() {
        let q = arc(CoefficientRing::rationals());
        assert!(extension_tower(&q).is_empty());

        let d = arc(truncated_polynomial("t", 2).unwrap());
        let tower = extension_tower(&d);
        assert_eq!(tower.len(), 1);
        assert_eq!(tower[0].total.labels()[tower[0].kernel_generator], "t");

        let c = arc(truncated_polynomial("t", 3).unwrap());
        let tower = extension_tower(&c);
        let kernels: Vec<&str> = tower
            .iter()
            .map(|s| s.total.labels()[s.kernel_generator].as_str())
            .collect();
        // Bottom-up: first ℚ[t]/t² → ℚ (kernel t), then ℚ[t]/t³ → ℚ[t]/t² (kernel t²).
        assert_eq!(kernels, ["t", "t^2"]);

        let st = arc(truncated_by_power(&["s", "t"], 3).unwrap());
        let tower = extension_tower(&st);
        assert_eq!(tower.len(), st.dim());
        for step in &tower {
            assert!(step.kernel_is_annihilated());
            assert!(step.projection.is_surjective());
            assert!(step.projection.is_multiplicative());
        }
    }

    #[test]
    fn fiber_product_over_field_adds_dimensions() {
        let d = arc(truncated_polynomial("t", 2).unwrap());
        let p = RingMorphism::residue(d.clone());
        let fp = fiber_product(&p, &p).unwrap();
        assert_eq!(fp.ring.dim(), 2);
        for i in 0..2 {
            for j in 0..2 {
                assert!(fp.ring.product(i, j).is_empty());
            }
        }
    }

    #[test]
    fn fiber_product_along_identity_is_source() {
        let b = arc(truncated_polynomial("t", 3).unwrap());
        let a = arc(truncated_polynomial("t", 2).unwrap());
        let p = RingMorphism::canonical(b.clone(), a.clone()).unwrap();
        let id = RingMorphism::identity(a.clone());
        let fp = fiber_product(&p, &id).unwrap();
        assert_eq!(fp.ring.dim(), b.dim());
        // The projection to B is an isomorphism of rings.
        assert!(fp.to_left.is_surjective());
        assert!(fp.to_left.is_multiplicative());
    }

    #[test]
    fn fiber_product_cubic_over_dual() {
        let b = arc(truncated_polynomial("t", 3).unwrap());
        let a = arc(truncated_polynomial("t", 2).unwrap());
        let c = arc(truncated_polynomial("t", 2).unwrap());
        let p = RingMorphism::canonical(b, a.clone()).unwrap();
        let q = RingMorphism::canonical(c, a).unwrap();
        let fp = fiber_product(&p, &q).unwrap();
        // Pairs (b, c) with matching t-coefficients: spanned by (t, t) and (t², 0).
        assert_eq!(fp.ring.dim(), 2);
        assert!(fp.ring.check().is_empty());
        let tower = extension_tower(&fp.ring);
        assert!(tower.iter().all(SmallExtensionStep::kernel_is_annihilated));
    }

    #[test]
    fn fiber_product_requires_surjection() {
        let a = arc(truncated_polynomial("t", 2).unwrap());
        let q = arc(CoefficientRing::rationals());
        let zero = RingMorphism::new(q.clone(), a.clone(), vec![]).unwrap();
        assert!(matches!(fiber_product(&zero, &zero), Err(Error::Precondition(_))));
    }

    #[test]
    fn tensor_reduce_to_residue_is_zero() {
        let r = arc(truncated_polynomial("t", 3).unwrap());
        let x = TensorElement::pure(&r, &[int(1), int(2)], 0);
        let y = x.reduce(&RingMorphism::residue(r)).unwrap();
        assert!(y.is_zero());
        assert_eq!(y.dim(), 2);
    }

    #[test]
    fn tensor_identity_and_square_zero() {
        let r = arc(truncated_polynomial("t", 2).unwrap());
        let x = TensorElement::pure(&r, &[int(3)], 0);
        assert_eq!(x.apply(&Matrix::identity(1)).unwrap(), x);
        assert!(x.mul_ring(&[int(1)]).unwrap().is_zero());
        let other = arc(truncated_polynomial("t", 3).unwrap());
        let y = TensorElement::pure(&other, &[int(3)], 0);
        assert!(matches!(x.add(&y), Err(Error::RingMismatch(_))));
    }
}
