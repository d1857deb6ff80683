//! Seeded pseudo-random inputs: small rationals, tensors and Maurer-Cartan
//! elements obtained by lifting through extension towers.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::artinian::{extension_tower, CoefficientRing, TensorElement};
use crate::dgla::{Dgla, McElement};
use crate::error::Result;
use crate::exactlin::{frac, Matrix, Scalar};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ 3`, `q ∈ {1, 2}`.
pub fn small_rational(rng: &mut SampleRng) -> Scalar {
    let p: i64 = rng.gen_range(-3..=3);
    let q: i64 = rng.gen_range(1..=2);
    frac(p, q)
}

pub fn random_vector(rng: &mut SampleRng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| small_rational(rng)).collect()
}

pub fn random_matrix(rng: &mut SampleRng, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = small_rational(rng);
        }
    }
    m
}

pub fn random_tensor(rng: &mut SampleRng, dim: usize, ring: &Arc<CoefficientRing>) -> TensorElement {
    TensorElement::from_coords(ring, random_matrix(rng, dim, ring.dim())).expect("shape")
}

/// Random element of the span of the given vectors.
pub fn random_combination(rng: &mut SampleRng, basis: &[Vec<Scalar>], n: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::from_integer(0.into()); n];
    for b in basis {
        let c = small_rational(rng);
        for (x, y) in v.iter_mut().zip(b) {
            *x += &c * y;
        }
    }
    v
}

/// A random Maurer-Cartan element of `L` over `ring`.
///
/// Lifts `0` through the extension tower; at each step a random cocycle
/// (zero with probability 1/3) is added to the canonical lift. Obstructed
/// paths are retried; the final element is moved by a random gauge.
pub fn random_mc(l: &Dgla, ring: &Arc<CoefficientRing>, rng: &mut SampleRng) -> Result<McElement> {
    let tower = extension_tower(ring);
    let cocycles = l.differential(1).kernel();
    'attempt: for attempt in 0..64 {
        let base = tower.first().map_or_else(|| ring.clone(), |s| s.quotient.clone());
        let mut x = TensorElement::zero(l.dim(1), &base);
        for step in &tower {
            let Some(lift) = l.lift_mc(step, &x)? else {
                continue 'attempt;
            };
            x = lift;
            // late attempts take the zero path to guarantee termination
            if attempt < 48 && rng.gen_range(0..3) != 0 {
                let z = random_combination(rng, &cocycles, l.dim(1));
                x = x.add(&TensorElement::pure(&step.total, &z, step.kernel_generator))?;
            }
        }
        let alpha = random_tensor(rng, l.dim(0), ring);
        return l.gauge_act(&alpha, &x);
    }
    Ok(TensorElement::zero(l.dim(1), ring))
}
