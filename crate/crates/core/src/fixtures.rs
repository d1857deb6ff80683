//! Small reference objects used by tests, examples and the CLI.

use std::sync::Arc;

use crate::artinian::{truncated_algebra, truncated_by_power, truncated_polynomial, CoefficientRing};
use crate::dgla::Dgla;
use crate::exactlin::{int, BilinearMap, Matrix};
use crate::monadic::{AssocAlgebra, Coalgebra, HomSdc};

/// Abelian, zero differential, one generator in each of degrees 0, 1, 2.
pub fn l_ab() -> Dgla {
    Dgla::abelian(&[1, 1, 1])
        .expect("fixture")
        .with_labels(vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]])
        .expect("fixture")
}

/// `L⁰ = ⟨u⟩`, `L¹ = ⟨v⟩`, `du = v`, zero bracket.
pub fn contractible() -> Dgla {
    Dgla::new(&[1, 1], vec![Matrix::from_i64(&[&[1]])])
        .expect("fixture")
        .with_labels(vec![vec!["u".into()], vec!["v".into()]])
        .expect("fixture")
}

/// `L¹ = ⟨x⟩`, `L² = ⟨y⟩`, `[x,x] = y`: unobstructed to first order,
/// obstructed at `t²`.
pub fn l_obs() -> Dgla {
    let mut l = Dgla::abelian(&[0, 1, 1])
        .expect("fixture")
        .with_labels(vec![vec![], vec!["x".into()], vec!["y".into()]])
        .expect("fixture");
    l.set_bracket(1, 0, 1, 0, &[int(1)]).expect("fixture");
    l
}

/// `L⁰ = ⟨u⟩`, `L¹ = ⟨v, w⟩`, `L² = ⟨y⟩` with `dv = y`, `[u,v] = v`,
/// `[u,y] = y`, `[v,w] = y`. Maurer-Cartan: `av + bw` with `a(1+b) = 0`.
pub fn l_mix() -> Dgla {
    let d0 = Matrix::zeros(2, 1);
    let d1 = Matrix::from_i64(&[&[1, 0]]);
    let mut l = Dgla::new(&[1, 2, 1], vec![d0, d1])
        .expect("fixture")
        .with_labels(vec![vec!["u".into()], vec!["v".into(), "w".into()], vec!["y".into()]])
        .expect("fixture");
    l.set_bracket(0, 0, 1, 0, &[int(1), int(0)]).expect("fixture");
    l.set_bracket(0, 0, 2, 0, &[int(1)]).expect("fixture");
    l.set_bracket(1, 0, 1, 1, &[int(1)]).expect("fixture");
    l
}

/// The four DGLAs above, named.
pub fn dgla_fixtures() -> Vec<(&'static str, Dgla)> {
    vec![
        ("abelian", l_ab()),
        ("contractible", contractible()),
        ("obstructed", l_obs()),
        ("mixed", l_mix()),
    ]
}

pub fn dual_numbers() -> Arc<CoefficientRing> {
    Arc::new(truncated_polynomial("t", 2).expect("fixture"))
}

pub fn t_cubed() -> Arc<CoefficientRing> {
    Arc::new(truncated_polynomial("t", 3).expect("fixture"))
}

pub fn t_fourth() -> Arc<CoefficientRing> {
    Arc::new(truncated_polynomial("t", 4).expect("fixture"))
}

/// `ℚ[s,t]/(s,t)³`.
pub fn two_variable_cube() -> Arc<CoefficientRing> {
    Arc::new(truncated_by_power(&["s", "t"], 3).expect("fixture"))
}

/// `ℚ[s,t]/(s²,t²)`, used to read off bilinear parts.
pub fn bidual_numbers() -> Arc<CoefficientRing> {
    Arc::new(truncated_algebra(&["s", "t"], &[vec![2, 0], vec![0, 2]]).expect("fixture"))
}

/// `ℚ` as a module over `ℚ[y]/(y²)` with `y` acting by zero.
pub fn dual_numbers_module(cap: usize) -> HomSdc {
    HomSdc::module_sdc(AssocAlgebra::truncated_polynomial(2), 1, Matrix::from_i64(&[&[1, 0]]), cap).expect("fixture")
}

/// `ℚ` as a comodule over the dual of `ℚ[y]/(y²)`, coacting by `m ↦ m⊗1*`.
pub fn dual_numbers_comodule(cap: usize) -> HomSdc {
    let c = Coalgebra::dual_of(&AssocAlgebra::truncated_polynomial(2));
    HomSdc::comodule_sdc(c, 1, Matrix::from_i64(&[&[1], &[0]]), cap).expect("fixture")
}

/// Both structures above on `ℚ` at once.
pub fn dual_numbers_bimodule(cap: usize) -> HomSdc {
    let b = AssocAlgebra::truncated_polynomial(2);
    let c = Coalgebra::dual_of(&b);
    HomSdc::bimodule_sdc(b, c, 1, Matrix::from_i64(&[&[1, 0]]), Matrix::from_i64(&[&[1], &[0]]), cap)
        .expect("fixture")
}

/// `ℚ²` over `ℚ[y]/(y²)` with `y ↦ E₁₂`.
pub fn nilpotent_plane_module(cap: usize) -> HomSdc {
    let action = Matrix::from_i64(&[&[1, 0, 0, 1], &[0, 1, 0, 0]]);
    HomSdc::module_sdc(AssocAlgebra::truncated_polynomial(2), 2, action, cap).expect("fixture")
}

/// `ℚ[g]/(g²-1)` on the basis `1, g`.
pub fn group_algebra_z2() -> AssocAlgebra {
    let mut mult = BilinearMap::zero(2, 2, 2);
    for (a, b, k) in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)] {
        mult.terms.push((a, b, k, int(1)));
    }
    AssocAlgebra::new(vec!["1".into(), "g".into()], vec![int(1), int(0)], mult).expect("fixture")
}

/// The trivial representation of `ℤ/2`.
pub fn z2_trivial_module(cap: usize) -> HomSdc {
    HomSdc::module_sdc(group_algebra_z2(), 1, Matrix::from_i64(&[&[1, 1]]), cap).expect("fixture")
}
