//! JSON input documents.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Deserialize;

use sdclab::artinian::{CoefficientRing, RingSpec, TensorElement};
use sdclab::bch::LieAlgebra;
use sdclab::cosimplicial::CosimplicialSpace;
use sdclab::dgla::Dgla;
use sdclab::exactlin::{parse_scalar, BilinearMap, Matrix, Scalar};
use sdclab::monadic::{AssocAlgebra, Coalgebra, HomSdc};
use sdclab::sdc::{ExpSdc, Sdc};
use sdclab::translate::build_esdc;
use sdclab::{Error, Result};

/// A rational given as a JSON integer or a `"num/den"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Rat {
    Int(i64),
    Text(String),
}

impl Rat {
    fn value(&self) -> Result<Scalar> {
        match self {
            Rat::Int(n) => Ok(Scalar::from_integer((*n).into())),
            Rat::Text(s) => parse_scalar(s),
        }
    }
}

type Combination = BTreeMap<String, Rat>;

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Ring(RingSpec),
    Dgla(DglaDoc),
    Expsdc(ExpSdcDoc),
    Algebra(AlgebraDoc),
    Coalgebra(CoalgebraDoc),
    ModuleProblem(ModuleProblemDoc),
    Element(ElementDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Ring(_) => "ring",
            Document::Dgla(_) => "dgla",
            Document::Expsdc(_) => "expsdc",
            Document::Algebra(_) => "algebra",
            Document::Coalgebra(_) => "coalgebra",
            Document::ModuleProblem(_) => "module-problem",
            Document::Element(_) => "element",
        }
    }
}

pub fn parse(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub left: String,
    pub right: String,
    pub value: Combination,
}

/// Basis labels per degree; `d` and brackets refer to labels.
#[derive(Clone, Debug, Deserialize)]
pub struct DglaDoc {
    pub degrees: Vec<Vec<String>>,
    #[serde(default)]
    pub d: BTreeMap<String, Combination>,
    #[serde(default)]
    pub brackets: Vec<ProductDoc>,
    /// Take bracket entries literally instead of also setting the mirrored entry.
    #[serde(default)]
    pub raw: bool,
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut map = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if map.insert(l.as_str(), i).is_some() {
            return Err(Error::Parse(format!("duplicate label `{l}`")));
        }
    }
    Ok(map)
}

fn combination(c: &Combination, index: &HashMap<&str, usize>, dim: usize, what: &str) -> Result<Vec<Scalar>> {
    let mut v = vec![Scalar::from_integer(0.into()); dim];
    for (k, x) in c {
        let i = *index
            .get(k.as_str())
            .ok_or_else(|| Error::Parse(format!("unknown label `{k}` in {what}")))?;
        v[i] += x.value()?;
    }
    Ok(v)
}

impl DglaDoc {
    pub fn build(&self) -> Result<Dgla> {
        let dims: Vec<usize> = self.degrees.iter().map(Vec::len).collect();
        if dims.is_empty() {
            return Err(Error::Parse("a DGLA needs at least degree 0".into()));
        }
        let mut where_: HashMap<&str, (usize, usize)> = HashMap::new();
        for (p, ls) in self.degrees.iter().enumerate() {
            for (a, l) in ls.iter().enumerate() {
                if where_.insert(l.as_str(), (p, a)).is_some() {
                    return Err(Error::Parse(format!("duplicate label `{l}`")));
                }
            }
        }
        let locate = |l: &str| {
            where_
                .get(l)
                .copied()
                .ok_or_else(|| Error::Parse(format!("unknown label `{l}`")))
        };
        let top = dims.len() - 1;
        let mut diffs: Vec<Matrix> = (0..top).map(|p| Matrix::zeros(dims[p + 1], dims[p])).collect();
        for (src, image) in &self.d {
            let (p, a) = locate(src)?;
            for (dst, c) in image {
                let (q, b) = locate(dst)?;
                if q != p + 1 {
                    return Err(Error::Parse(format!("d({src}) names `{dst}` outside degree {}", p + 1)));
                }
                diffs[p][(b, a)] += c.value()?;
            }
        }
        let mut l = Dgla::new(&dims, diffs)?.with_labels(self.degrees.clone())?;
        for entry in &self.brackets {
            let (p, a) = locate(&entry.left)?;
            let (q, b) = locate(&entry.right)?;
            if p + q > top {
                if entry.value.is_empty() {
                    continue;
                }
                return Err(Error::Parse(format!("[{}, {}] lands above the top degree", entry.left, entry.right)));
            }
            let index = label_index(&self.degrees[p + q])?;
            let v = combination(&entry.value, &index, dims[p + q], "bracket value")?;
            if self.raw {
                l.set_bracket_raw(p, a, q, b, &v)?;
            } else {
                l.set_bracket(p, a, q, b, &v)?;
            }
        }
        Ok(l)
    }
}

fn matrix(rows: &[Vec<Rat>], r: usize, c: usize, what: &str) -> Result<Matrix> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::Parse(format!("{what} must be {r}x{c}")));
    }
    let mut m = Matrix::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m[(i, j)] = x.value()?;
        }
    }
    Ok(m)
}

/// Either `𝓔(L)` of an embedded DGLA, a constant SDC, or explicit levels.
#[derive(Clone, Debug, Deserialize)]
pub struct ExpSdcDoc {
    #[serde(default)]
    pub dgla: Option<DglaDoc>,
    #[serde(default)]
    pub constant: Option<usize>,
    #[serde(default)]
    pub dims: Vec<usize>,
    /// `cofaces[n][i]`, each a `dims[n+1] x dims[n]` row list.
    #[serde(default)]
    pub cofaces: Vec<Vec<Vec<Vec<Rat>>>>,
    #[serde(default)]
    pub codegeneracies: Vec<Vec<Vec<Vec<Rat>>>>,
    /// Per level, entries `[i, j, k, c]` meaning `[e_i, e_j]` has `c` on `e_k`.
    #[serde(default)]
    pub brackets: Vec<Vec<(usize, usize, usize, Rat)>>,
}

impl ExpSdcDoc {
    pub fn build(&self, cap: usize) -> Result<ExpSdc> {
        if let Some(l) = &self.dgla {
            return Ok(build_esdc(&l.build()?, cap)?.sdc);
        }
        if let Some(dim) = self.constant {
            return Ok(ExpSdc::constant(dim, cap));
        }
        let dims = &self.dims;
        if dims.is_empty() {
            return Err(Error::Parse("expsdc needs `dgla`, `constant` or `dims`".into()));
        }
        let top = dims.len() - 1;
        if self.cofaces.len() != top || self.codegeneracies.len() != top + 1 {
            return Err(Error::Parse(format!(
                "expected {top} coface levels and {} codegeneracy levels",
                top + 1
            )));
        }
        let mut cofaces = Vec::new();
        for (n, level) in self.cofaces.iter().enumerate() {
            if level.len() != n + 2 {
                return Err(Error::Parse(format!("level {n} needs {} cofaces", n + 2)));
            }
            cofaces.push(
                level
                    .iter()
                    .enumerate()
                    .map(|(i, m)| matrix(m, dims[n + 1], dims[n], &format!("coface {i} on level {n}")))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut codegeneracies = Vec::new();
        for (n, level) in self.codegeneracies.iter().enumerate() {
            if level.len() != n {
                return Err(Error::Parse(format!("level {n} needs {n} codegeneracies")));
            }
            codegeneracies.push(
                level
                    .iter()
                    .enumerate()
                    .map(|(i, m)| matrix(m, dims[n - 1], dims[n], &format!("codegeneracy {i} on level {n}")))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let tangent = CosimplicialSpace::new(dims.clone(), cofaces, codegeneracies)?;
        let mut lie = Vec::new();
        for (n, &d) in dims.iter().enumerate() {
            let mut b = BilinearMap::zero(d, d, d);
            for (i, j, k, c) in self.brackets.get(n).map(Vec::as_slice).unwrap_or(&[]) {
                if *i >= d || *j >= d || *k >= d {
                    return Err(Error::Parse(format!("bracket entry out of range on level {n}")));
                }
                b.terms.push((*i, *j, *k, c.value()?));
            }
            lie.push(LieAlgebra::new(b)?);
        }
        ExpSdc::new(tangent, lie)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct AlgebraDoc {
    pub basis: Vec<String>,
    pub unit: Combination,
    #[serde(default)]
    pub products: Vec<ProductDoc>,
}

impl AlgebraDoc {
    pub fn build(&self) -> Result<AssocAlgebra> {
        let index = label_index(&self.basis)?;
        let n = self.basis.len();
        let unit = combination(&self.unit, &index, n, "unit")?;
        let mut table = vec![vec![vec![Scalar::from_integer(0.into()); n]; n]; n];
        for p in &self.products {
            let a = *index.get(p.left.as_str()).ok_or_else(|| Error::Parse(format!("unknown label `{}`", p.left)))?;
            let b = *index.get(p.right.as_str()).ok_or_else(|| Error::Parse(format!("unknown label `{}`", p.right)))?;
            table[a][b] = combination(&p.value, &index, n, "product")?;
        }
        AssocAlgebra::new(self.basis.clone(), unit, BilinearMap::from_table(n, n, n, &table))
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct CoproductDoc {
    pub of: String,
    /// Terms `[left, right, coefficient]`.
    pub terms: Vec<(String, String, Rat)>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CoalgebraDoc {
    pub basis: Vec<String>,
    pub counit: Combination,
    #[serde(default)]
    pub coproducts: Vec<CoproductDoc>,
}

impl CoalgebraDoc {
    pub fn build(&self) -> Result<Coalgebra> {
        let index = label_index(&self.basis)?;
        let n = self.basis.len();
        let find = |l: &str| index.get(l).copied().ok_or_else(|| Error::Parse(format!("unknown label `{l}`")));
        let counit = combination(&self.counit, &index, n, "counit")?;
        let mut comult = Matrix::zeros(n * n, n);
        for c in &self.coproducts {
            let k = find(&c.of)?;
            for (l, r, x) in &c.terms {
                comult[(find(l)? * n + find(r)?, k)] += x.value()?;
            }
        }
        Coalgebra::new(self.basis.clone(), counit, comult)
    }
}

/// `M = ℚ^module_dim` with an action of `algebra` and/or a coaction of
/// `coalgebra`, as `dim M x (dim B · dim M)` and `(dim M · dim C) x dim M`
/// matrices.
#[derive(Clone, Debug, Deserialize)]
pub struct ModuleProblemDoc {
    #[serde(default)]
    pub algebra: Option<AlgebraDoc>,
    #[serde(default)]
    pub coalgebra: Option<CoalgebraDoc>,
    pub module_dim: usize,
    #[serde(default)]
    pub action: Option<Vec<Vec<Rat>>>,
    #[serde(default)]
    pub coaction: Option<Vec<Vec<Rat>>>,
}

impl ModuleProblemDoc {
    pub fn build(&self, cap: usize) -> Result<HomSdc> {
        let m = self.module_dim;
        let b = match &self.algebra {
            Some(a) => a.build()?,
            None => AssocAlgebra::trivial(),
        };
        let c = match &self.coalgebra {
            Some(c) => c.build()?,
            None => Coalgebra::trivial(),
        };
        let action = match &self.action {
            Some(rows) => matrix(rows, m, b.dim() * m, "action")?,
            None if b.dim() == 1 => Matrix::identity(m),
            None => return Err(Error::Parse("an algebra needs an `action`".into())),
        };
        let coaction = match &self.coaction {
            Some(rows) => matrix(rows, m * c.dim(), m, "coaction")?,
            None if c.dim() == 1 => Matrix::identity(m),
            None => return Err(Error::Parse("a coalgebra needs a `coaction`".into())),
        };
        HomSdc::bimodule_sdc(b, c, m, action, coaction, cap)
    }
}

/// Coordinates `{basis label or index: {monomial label: coefficient}}`.
#[derive(Clone, Debug, Deserialize)]
pub struct ElementDoc {
    pub coords: BTreeMap<String, Combination>,
    /// A second element for an equivalence search.
    #[serde(default)]
    pub target: Option<BTreeMap<String, Combination>>,
}

pub fn element(
    coords: &BTreeMap<String, Combination>,
    labels: &[String],
    ring: &Arc<CoefficientRing>,
) -> Result<TensorElement> {
    let dim = labels.len();
    let index = label_index(labels)?;
    let monomials = label_index(ring.labels())?;
    let mut m = Matrix::zeros(dim, ring.dim());
    for (key, comb) in coords {
        let i = match index.get(key.as_str()) {
            Some(&i) => i,
            None => key
                .parse::<usize>()
                .ok()
                .filter(|&i| i < dim)
                .ok_or_else(|| Error::Parse(format!("unknown basis element `{key}`")))?,
        };
        for (mono, x) in comb {
            let r = *monomials
                .get(mono.as_str())
                .ok_or_else(|| Error::Parse(format!("`{mono}` is not a basis monomial of the maximal ideal")))?;
            m[(i, r)] += x.value()?;
        }
    }
    TensorElement::from_coords(ring, m)
}

/// Index labels `0, 1, …` for levels without names.
pub fn index_labels<S: Sdc + ?Sized>(s: &S, n: usize) -> Vec<String> {
    (0..s.level_dim(n)).map(|i| i.to_string()).collect()
}
