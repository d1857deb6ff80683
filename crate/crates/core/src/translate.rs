//! From DGLAs to exponential SDCs and back.
//!
//! [`build_esdc`] denormalizes `L`, puts a Lie bracket on each `DⁿL` and uses
//! the Alexander-Whitney product. [`tangent_dgla`] reads a DGLA off any SDC:
//! the conormalized tangent complex with the bracket taken from the bilinear
//! part of `*`.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::artinian::{CoefficientRing, TensorElement};
use crate::bch::LieAlgebra;
use crate::cosimplicial::{denormalize, shuffle_contraction, CochainComplex, CosimplicialSpace, Denormalized};
use crate::dgla::{Dgla, DglaMorphism, GaugeElement, McElement};
use crate::error::{Error, Result};
use crate::exactlin::{scalar_to_string, BilinearMap, Matrix, Scalar};
use crate::sample::{random_mc, random_tensor, rng};
use crate::sdc::{check_exp_structure, is_mc, sdc_cohomology, ExpSdc, Sdc};

/// `𝓔(L)` together with the denormalization it was built on.
#[derive(Clone, Debug)]
pub struct Esdc {
    pub sdc: ExpSdc,
    pub denormal: Denormalized,
}

/// The bracket `L^p ⊗ L^q → L^{p+q}` as a matrix on Kronecker coordinates.
fn bracket_matrix(l: &Dgla, p: usize, q: usize) -> Matrix {
    let (dp, dq, dn) = (l.dim(p), l.dim(q), l.dim(p + q));
    let mut m = Matrix::zeros(dn, dp * dq);
    if dn == 0 {
        return m;
    }
    for (a, b, k, c) in &l.bracket_map(p, q).terms {
        m[(*k, a * dq + b)] += c;
    }
    m
}

/// The underlying complex of `L`.
pub fn underlying_complex(l: &Dgla) -> Result<CochainComplex> {
    let top = l.top_degree();
    CochainComplex::new(l.dims(), (0..top).map(|i| l.differential(i)).collect())
}

/// Brackets `Fₙ: DⁿL ⊗ DⁿL → DⁿL`, one matrix per level.
///
/// `Fₙ` is `[,]_L ∘ (π⊗π) ∘ ∇` on the conormalized part of `DL ⊗ DL` and is
/// forced by `Fₙ ∘ ∂^i = ∂^i ∘ F_{n-1}` (`i ≥ 1`) on the rest.
fn level_brackets(l: &Dgla, den: &Denormalized) -> Result<Vec<Matrix>> {
    let d = &den.space;
    let x = d.tensor(d);
    let mut out: Vec<Matrix> = Vec::new();
    for n in 0..=d.cap() {
        let dn = d.dim(n);
        let mut f = Matrix::zeros(l.dim(n), dn * dn);
        for p in 0..=n {
            let q = n - p;
            if l.dim(p) == 0 || l.dim(q) == 0 || l.dim(n) == 0 {
                continue;
            }
            let proj = den.generator_projection(p).kron(&den.generator_projection(q));
            let term = bracket_matrix(l, p, q).mul(&proj.mul(&shuffle_contraction(d, d, p, q))?)?;
            f = f.add(&term)?;
        }
        let f = den.generator_inclusion(n).mul(&f)?;
        if n == 0 {
            out.push(f);
            continue;
        }
        let nb = x.normalized_basis(n);
        let mut m = nb.clone();
        let mut r = f.mul(&nb)?;
        for i in 1..=n {
            m = m.hstack(x.coface(n - 1, i))?;
            r = r.hstack(&d.coface(n - 1, i).mul(&out[n - 1])?)?;
        }
        let sel = m.independent_columns();
        if sel.len() != m.rows() {
            return Err(Error::InvalidStructure(format!(
                "conormalized part and coface images do not span level {n}"
            )));
        }
        let m_sel = Matrix::from_columns(&sel.iter().map(|&c| m.column(c)).collect::<Vec<_>>(), m.rows());
        let r_sel = Matrix::from_columns(&sel.iter().map(|&c| r.column(c)).collect::<Vec<_>>(), r.rows());
        let ft = m_sel
            .transpose()
            .solve_matrix(&r_sel.transpose())?
            .ok_or_else(|| Error::InvalidStructure("singular spanning set".into()))?;
        let fnn = ft.transpose();
        if fnn.mul(&m)? != r {
            return Err(Error::InvalidStructure(format!(
                "bracket on level {n} is not compatible with the cofaces"
            )));
        }
        out.push(fnn);
    }
    Ok(out)
}

fn to_bilinear(f: &Matrix, dim: usize) -> BilinearMap {
    let mut b = BilinearMap::zero(dim, dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let c = &f[(k, i * dim + j)];
                if !c.is_zero() {
                    b.terms.push((i, j, k, c.clone()));
                }
            }
        }
    }
    b
}

/// `𝓔(L)` on levels `0..=cap`.
pub fn build_esdc(l: &Dgla, cap: usize) -> Result<Esdc> {
    if cap < 3 {
        return Err(Error::Precondition("cap must be at least 3".into()));
    }
    if let Some(v) = l.check().violations.first() {
        return Err(Error::Precondition(format!("not a DGLA: {v}")));
    }
    let den = denormalize(&underlying_complex(l)?, cap);
    let brackets = level_brackets(l, &den)?;
    let lie = brackets
        .iter()
        .enumerate()
        .map(|(n, f)| LieAlgebra {
            bracket: to_bilinear(f, den.space.dim(n)),
        })
        .collect();
    let sdc = ExpSdc::new(den.space.clone(), lie)?;
    if let Some(v) = check_exp_structure(&sdc).first() {
        return Err(Error::InvalidStructure(format!("denormalized bracket: {v}")));
    }
    Ok(Esdc { sdc, denormal: den })
}

impl Esdc {
    /// `α ∈ L¹ ⊗ m_A` placed on the generators of `D¹L`.
    pub fn mc_transport(&self, alpha: &McElement) -> Result<TensorElement> {
        if alpha.dim() != self.denormal.source.dim(1) {
            return Err(Error::Shape("element is not in degree 1".into()));
        }
        alpha.apply(&self.denormal.generator_inclusion(1))
    }

    /// Inverse of [`Esdc::mc_transport`] on elements supported on generators.
    pub fn mc_recover(&self, omega: &TensorElement) -> Result<McElement> {
        let alpha = omega.apply(&self.denormal.generator_projection(1))?;
        if self.mc_transport(&alpha)? != *omega {
            return Err(Error::Precondition("element has components off the generators".into()));
        }
        Ok(alpha)
    }

    /// `D⁰L = L⁰`, so gauge elements are group elements as they stand.
    pub fn gauge_transport(&self, alpha: &GaugeElement) -> Result<TensorElement> {
        if alpha.dim() != self.sdc.level_dim(0) {
            return Err(Error::Shape("element is not in degree 0".into()));
        }
        Ok(alpha.clone())
    }

    /// `L² → D²L` on generators; a quasi-isomorphism onto the alternating complex.
    pub fn degree_two_inclusion(&self) -> Matrix {
        self.denormal.generator_inclusion(2)
    }
}

/// `Dⁿf: DⁿL → DⁿM` for a degreewise map `f`, acting on generators.
pub fn induced_morphism(l: &Esdc, m: &Esdc, f: &DglaMorphism) -> Result<Vec<Matrix>> {
    let cap = l.sdc.cap().min(m.sdc.cap());
    let mut out = Vec::new();
    for n in 0..=cap {
        let src = &l.denormal.basis[n];
        let dst = &m.denormal.basis[n];
        let mut mat = Matrix::zeros(dst.len(), src.len());
        for (c, b) in src.iter().enumerate() {
            let fm = f
                .maps
                .get(b.m)
                .ok_or_else(|| Error::Shape(format!("no component in degree {}", b.m)))?;
            for (r, t) in dst.iter().enumerate() {
                if t.m == b.m && t.j == b.j {
                    mat[(r, c)] = fm[(t.a, b.a)].clone();
                }
            }
        }
        out.push(mat);
    }
    Ok(out)
}

/// A DGLA read off an SDC, with `inclusions[n]: Nⁿ → CCⁿ`.
#[derive(Clone, Debug)]
pub struct TangentDgla {
    pub dgla: Dgla,
    pub inclusions: Vec<Matrix>,
}

/// Projection `CCⁿ → Nⁿ` along `Σ_{i≥1} im ∂^i`.
fn normal_projection(t: &CosimplicialSpace, inclusion: &Matrix, n: usize) -> Result<Matrix> {
    let dim = t.dim(n);
    let mut degenerate = Matrix::zeros(dim, 0);
    for i in 1..=n {
        degenerate = degenerate.hstack(t.coface(n - 1, i))?;
    }
    let rd = degenerate.rank();
    if rd + inclusion.cols() != dim || inclusion.hstack(&degenerate)?.rank() != dim {
        return Err(Error::InvalidStructure(format!(
            "conormalized part is not complementary to the coface images on level {n}"
        )));
    }
    let m = inclusion.hstack(&degenerate)?;
    let mut p = Matrix::zeros(inclusion.cols(), dim);
    for k in 0..dim {
        let mut e = vec![Scalar::zero(); dim];
        e[k] = Scalar::from_integer(1.into());
        let x = m.solve(&e)?.expect("spanning");
        for r in 0..inclusion.cols() {
            p[(r, k)] = x[r].clone();
        }
    }
    Ok(p)
}

/// `[a,b] = c(a,b) - (-1)^{pq} c(b,a)` with `c(a,b)` the `st`-coefficient of
/// `(a⊗s) * (b⊗t)` over `ℚ[s,t]/(s²,t²)`, projected to the conormalized part.
pub fn tangent_dgla<S: Sdc + ?Sized>(e: &S) -> Result<TangentDgla> {
    let t = e.tangent();
    let conorm = t.conormalize()?;
    let dims = conorm.complex.dims();
    let top = (0..dims.len()).rev().find(|&n| dims[n] > 0).unwrap_or(0);
    let dgla_dims = dims[..=top].to_vec();
    let diffs = (0..top).map(|n| conorm.complex.differential(n)).collect();
    let mut dgla = Dgla::new(&dgla_dims, diffs)?;
    let ring: Arc<CoefficientRing> = crate::fixtures::bidual_numbers();
    let idx = |exp: [u32; 2]| -> usize {
        ring.exponents()
            .expect("monomial ring")
            .iter()
            .position(|m| m[..] == exp)
            .expect("monomial present")
    };
    let (s, tt, st) = (idx([1, 0]), idx([0, 1]), idx([1, 1]));
    let projections: Vec<Matrix> = (0..=top)
        .map(|n| normal_projection(t, &conorm.inclusions[n], n))
        .collect::<Result<_>>()?;
    let c = |p: usize, a: &[Scalar], q: usize, b: &[Scalar]| -> Result<Vec<Scalar>> {
        let g = TensorElement::pure(&ring, a, s);
        let h = TensorElement::pure(&ring, b, tt);
        let prod = e.star(p, &g, q, &h)?;
        projections[p + q].mul_vec(&prod.column(st))
    };
    for p in 0..=top {
        for q in 0..=top - p {
            if p + q > e.cap() {
                continue;
            }
            let sign = if (p * q) % 2 == 0 { Scalar::from_integer(1.into()) } else { Scalar::from_integer((-1).into()) };
            for a in 0..dgla_dims[p] {
                for b in 0..dgla_dims[q] {
                    let va = conorm.inclusions[p].column(a);
                    let vb = conorm.inclusions[q].column(b);
                    let ab = c(p, &va, q, &vb)?;
                    let ba = c(q, &vb, p, &va)?;
                    let out: Vec<Scalar> = ab.iter().zip(&ba).map(|(x, y)| x - &sign * y).collect();
                    dgla.set_bracket_raw(p, a, q, b, &out)?;
                }
            }
        }
    }
    Ok(TangentDgla {
        dgla,
        inclusions: conorm.inclusions[..=top].to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub degree: usize,
    pub dgla: usize,
    pub sdc: usize,
    pub recovered: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McSample {
    pub ring: String,
    pub sample: usize,
    pub dgla_mc: bool,
    pub sdc_mc: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub source: Vec<String>,
    pub recovered: Vec<String>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslationReport {
    pub cap: usize,
    pub cohomology: Vec<CohomologyRow>,
    pub mc_samples: Vec<McSample>,
    pub brackets: Vec<BracketEntry>,
    pub differential_equal: bool,
    pub consistent: bool,
}

/// Compares `L`, `𝓔(L)` and `tangent_dgla(𝓔(L))`: cohomology, Maurer-Cartan
/// status of transported samples, and structure constants.
pub fn roundtrip_report(l: &Dgla, cap: usize, rings: &[(String, Arc<CoefficientRing>)], seed: u64) -> Result<TranslationReport> {
    if cap < l.top_degree() + 2 {
        return Err(Error::Precondition(format!(
            "cap {cap} is below top degree {} + 2",
            l.top_degree()
        )));
    }
    let e = build_esdc(l, cap)?;
    let back = tangent_dgla(&e.sdc)?;
    let r = &back.dgla;
    let mut cohomology = Vec::new();
    for i in 0..=cap - 2 {
        let hl = if i <= l.top_degree() { l.cohomology(i)?.dim } else { 0 };
        let hr = if i <= r.top_degree() { r.cohomology(i)?.dim } else { 0 };
        cohomology.push(CohomologyRow {
            degree: i,
            dgla: hl,
            sdc: sdc_cohomology(&e.sdc, i)?,
            recovered: hr,
        });
    }
    let mut mc_samples = Vec::new();
    let mut g = rng(seed);
    for (name, ring) in rings {
        for k in 0..8 {
            // alternate genuine Maurer-Cartan samples with arbitrary elements
            let alpha = if k % 2 == 0 {
                random_mc(l, ring, &mut g)?
            } else {
                random_tensor(&mut g, l.dim(1), ring)
            };
            mc_samples.push(McSample {
                ring: name.clone(),
                sample: k,
                dgla_mc: l.is_mc(&alpha)?,
                sdc_mc: is_mc(&e.sdc, &e.mc_transport(&alpha)?)?,
            });
        }
    }
    let mut brackets = Vec::new();
    let label = |d: &Dgla, p: usize, a: usize| d.labels(p).get(a).cloned().unwrap_or_default();
    let same_shape = l.dims() == r.dims();
    for p in 0..=l.top_degree() {
        for q in 0..=l.top_degree() - p {
            for a in 0..l.dim(p) {
                for b in 0..l.dim(q) {
                    let unit = |n: usize, i: usize| {
                        let mut v = vec![Scalar::zero(); n];
                        v[i] = Scalar::from_integer(1.into());
                        v
                    };
                    let src = l.bracket_vec(p, &unit(l.dim(p), a), q, &unit(l.dim(q), b));
                    let rec = if same_shape {
                        r.bracket_vec(p, &unit(r.dim(p), a), q, &unit(r.dim(q), b))
                    } else {
                        Vec::new()
                    };
                    brackets.push(BracketEntry {
                        left: label(l, p, a),
                        right: label(l, q, b),
                        equal: same_shape && src == rec,
                        source: src.iter().map(scalar_to_string).collect(),
                        recovered: rec.iter().map(scalar_to_string).collect(),
                    });
                }
            }
        }
    }
    let differential_equal = same_shape && (0..l.top_degree()).all(|p| l.differential(p) == r.differential(p));
    let consistent = cohomology.iter().all(|c| c.dgla == c.sdc && c.sdc == c.recovered)
        && mc_samples.iter().all(|s| s.dgla_mc == s.sdc_mc)
        && brackets.iter().all(|b| b.equal)
        && differential_equal;
    Ok(TranslationReport {
        cap,
        cohomology,
        mc_samples,
        brackets,
        differential_equal,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::frac;
    use crate::fixtures::{l_ab, l_obs, t_cubed};
    use crate::sdc::mc_defect;

    #[test]
    fn abelian_levels_have_zero_bracket() {
        let e = build_esdc(&l_ab(), 3).unwrap();
        for n in 0..=3 {
            assert!(e.sdc.lie(n).is_abelian());
        }
    }

    #[test]
    fn degree_one_line_has_dims_n() {
        let l = Dgla::abelian(&[0, 1]).unwrap();
        let e = build_esdc(&l, 4).unwrap();
        assert_eq!(e.sdc.tangent().dims(), &[0, 1, 2, 3, 4]);
        assert_eq!(sdc_cohomology(&e.sdc, 1).unwrap(), 1);
        assert_eq!(sdc_cohomology(&e.sdc, 0).unwrap(), 0);
        assert_eq!(sdc_cohomology(&e.sdc, 2).unwrap(), 0);
    }

    #[test]
    fn obstructed_defect_is_half_y_t_squared() {
        let l = l_obs();
        let e = build_esdc(&l, 3).unwrap();
        let ring = t_cubed();
        let alpha = TensorElement::pure(&ring, &[Scalar::from_integer(1.into())], 0);
        let defect = mc_defect(&e.sdc, &e.mc_transport(&alpha).unwrap()).unwrap();
        let expected = TensorElement::pure(&ring, &[frac(1, 2)], 1).apply(&e.degree_two_inclusion()).unwrap();
        assert_eq!(defect, expected);
    }

    #[test]
    fn recovers_the_obstructed_bracket() {
        let back = tangent_dgla(&build_esdc(&l_obs(), 3).unwrap().sdc).unwrap();
        assert_eq!(back.dgla.dims(), vec![0, 1, 1]);
        let one = [Scalar::from_integer(1.into())];
        assert_eq!(back.dgla.bracket_vec(1, &one, 1, &one), vec![Scalar::from_integer(1.into())]);
    }
}
