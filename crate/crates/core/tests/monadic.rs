use sdclab::artinian::{extension_tower, TensorElement};
use sdclab::exactlin::{int, Matrix, Scalar};
use sdclab::fixtures::*;
use sdclab::monadic::{mc_to_structure, HomSdc};
use sdclab::sample::{random_tensor, rng};
use sdclab::sdc::{adjoint, check_sdc_on, is_mc, mc_defect, random_sdc_mc, sdc_cohomology, sdc_lift, Sdc};

fn fixtures() -> Vec<(&'static str, HomSdc)> {
    vec![
        ("module", dual_numbers_module(3)),
        ("plane", nilpotent_plane_module(3)),
        ("z2", z2_trivial_module(3)),
        ("comodule", dual_numbers_comodule(3)),
        ("bimodule", dual_numbers_bimodule(3)),
    ]
}

/// Columns: first-order images of the basis perturbations.
fn linearized(s: &HomSdc, f: impl Fn(&TensorElement) -> Vec<Scalar>) -> Matrix {
    let ring = dual_numbers();
    let n = s.level_dim(1);
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|k| {
            let mut v = vec![int(0); n];
            v[k] = int(1);
            f(&TensorElement::pure(&ring, &v, 0))
        })
        .collect();
    let rows = cols.first().map_or(0, Vec::len);
    Matrix::from_columns(&cols, rows)
}

#[test]
fn first_order_mc_matches_structure_axioms() {
    for (name, s) in fixtures() {
        let zero = mc_to_structure(&s, &s.identity(1, &dual_numbers())).unwrap();
        assert!(zero.passed(), "{name}");
        let d = linearized(&s, |w| mc_defect(&s, w).unwrap().column(0));
        let o = linearized(&s, |w| mc_to_structure(&s, w).unwrap().residual);
        let both = d.transpose().hstack(&o.transpose()).unwrap();
        assert_eq!(d.rank(), o.rank(), "{name}");
        assert_eq!(both.rank(), d.rank(), "{name}");
    }
}

#[test]
fn bimodule_first_order_solutions_form_a_plane() {
    let s = dual_numbers_bimodule(3);
    let d = linearized(&s, |w| mc_defect(&s, w).unwrap().column(0));
    assert_eq!(s.level_dim(1) - d.rank(), 2);
}

#[test]
fn sampled_mc_matches_structure_axioms_over_order_three() {
    for (name, s) in fixtures() {
        let mut g = rng(17);
        for ring in [t_cubed(), two_variable_cube()] {
            for k in 0..25 {
                let w = if k % 2 == 0 {
                    random_sdc_mc(&s, &ring, &mut g).unwrap()
                } else {
                    random_tensor(&mut g, s.level_dim(1), &ring)
                };
                let mc = is_mc(&s, &w).unwrap();
                let oracle = mc_to_structure(&s, &w).unwrap();
                assert_eq!(mc, oracle.passed(), "{name} sample {k}: {:?}", oracle.violations);
                if k % 2 == 0 {
                    assert!(mc, "{name}: sampler returned a non-MC element");
                }
            }
        }
    }
}

#[test]
fn square_zero_action_obstructed_exactly_at_second_stage() {
    let s = dual_numbers_module(3);
    let ring = t_cubed();
    let tower = extension_tower(&ring);
    let w = TensorElement::pure(&ring, &[int(0), int(1)], 0);
    let mut first_obstructed = None;
    for (k, step) in tower.iter().enumerate() {
        let reduced = (k..tower.len()).rev().try_fold(w.clone(), |acc, j| acc.reduce(&tower[j].projection)).unwrap();
        if sdc_lift(&s, step, &reduced).unwrap().is_none() && first_obstructed.is_none() {
            first_obstructed = Some(k + 1);
        }
    }
    assert_eq!(first_obstructed, Some(2));
}

#[test]
fn z2_representation_is_rigid() {
    let s = z2_trivial_module(3);
    assert_eq!(sdc_cohomology(&s, 1).unwrap(), 0);
}

#[test]
fn comodule_cohomology_matches_dual_module() {
    let m = dual_numbers_module(4);
    let c = dual_numbers_comodule(4);
    for i in 0..4 {
        assert_eq!(sdc_cohomology(&m, i).unwrap(), sdc_cohomology(&c, i).unwrap(), "degree {i}");
    }
}

#[test]
fn bimodule_reduces_to_module_when_coalgebra_trivial() {
    let b = sdclab::monadic::AssocAlgebra::truncated_polynomial(2);
    let c = sdclab::monadic::Coalgebra::trivial();
    let s = HomSdc::bimodule_sdc(b, c, 1, Matrix::from_i64(&[&[1, 0]]), Matrix::identity(1), 3).unwrap();
    let m = dual_numbers_module(3);
    assert_eq!(s.tangent(), m.tangent());
}

#[test]
fn hom_sdc_axioms_hold_exhaustively_on_basis_perturbations() {
    // b + p s and b + q t over ℚ[s,t]/(s²,t²) for all basis p, q
    let ring = bidual_numbers();
    for (name, s) in fixtures() {
        let elements: Vec<Vec<TensorElement>> = (0..=s.cap())
            .map(|n| {
                let d = s.level_dim(n);
                let mut out = vec![s.identity(n, &ring)];
                for k in 0..d.min(6) {
                    let mut v = vec![int(0); d];
                    v[k] = int(1);
                    out.push(TensorElement::pure(&ring, &v, 0));
                    out.push(TensorElement::pure(&ring, &v, 1));
                }
                out
            })
            .collect();
        let report = check_sdc_on(&s, &elements).unwrap();
        assert!(report.passed(), "{name}: {:?}", report.violations);
    }
}

#[test]
fn conjugation_preserves_structures() {
    let s = nilpotent_plane_module(3);
    let ring = t_cubed();
    let mut g = rng(2);
    for _ in 0..5 {
        let w = random_sdc_mc(&s, &ring, &mut g).unwrap();
        let h = random_tensor(&mut g, s.level_dim(0), &ring);
        let moved = adjoint(&s, &h, &w).unwrap();
        assert!(mc_to_structure(&s, &moved).unwrap().passed());
    }
}
