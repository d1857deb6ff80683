//! Finite-dimensional Lie algebras and the truncated Baker-Campbell-Hausdorff
//! group law on `g ⊗ m_A`.
//!
//! BCH coefficients are not tabulated by hand. For each truncation order the
//! series `log(exp X · exp Y)` is expanded in the free associative algebra on
//! two letters and converted to left-normed brackets with the Dynkin-Specht-
//! Wever projection. The result is cached per order.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::artinian::TensorElement;
use crate::error::{Error, Result};
use crate::exactlin::{frac, int, is_zero_vec, BilinearMap, Scalar};

/// An ordinary (ungraded) Lie algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    pub bracket: BilinearMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieViolation {
    Antisymmetry { a: usize, b: usize },
    Jacobi { a: usize, b: usize, c: usize },
}

impl LieAlgebra {
    pub fn new(bracket: BilinearMap) -> Result<Self> {
        let n = bracket.out_dim;
        if bracket.left_dim != n || bracket.right_dim != n {
            return Err(Error::Shape(format!(
                "bracket {}x{}->{} is not on a single space",
                bracket.left_dim, bracket.right_dim, n
            )));
        }
        Ok(Self { bracket })
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            bracket: BilinearMap::zero(dim, dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.bracket.out_dim
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.bracket.apply(x, y)
    }

    /// `[x, y]` for `x, y ∈ g ⊗ m_A`.
    pub fn bracket_tensor(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        TensorElement::bilinear(&self.bracket, x, y)
    }

    /// Exhaustive antisymmetry and Jacobi check on basis vectors.
    pub fn check(&self) -> Vec<LieViolation> {
        let n = self.dim();
        let table = self.bracket.table();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a..n {
                let s: Vec<Scalar> = table[a][b].iter().zip(&table[b][a]).map(|(x, y)| x + y).collect();
                if !is_zero_vec(&s) {
                    out.push(LieViolation::Antisymmetry { a, b });
                }
            }
        }
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // [a,[b,c]] + [b,[c,a]] + [c,[a,b]]
                    let t1 = self.bracket_vec(&unit(a), &table[b][c]);
                    let t2 = self.bracket_vec(&unit(b), &table[c][a]);
                    let t3 = self.bracket_vec(&unit(c), &table[a][b]);
                    let s: Vec<Scalar> = (0..n).map(|k| &t1[k] + &t2[k] + &t3[k]).collect();
                    if !is_zero_vec(&s) {
                        out.push(LieViolation::Jacobi { a, b, c });
                    }
                }
            }
        }
        out
    }
}

/// Letter 0 is `X`, letter 1 is `Y`.
pub type Word = Vec<u8>;

/// The BCH series truncated to words of length `< order`, as coefficients of
/// left-normed brackets `[..[[w₁,w₂],w₃],…,w_k]`.
pub fn bch_series(order: usize) -> Arc<Vec<(Word, Scalar)>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(Word, Scalar)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("bch cache poisoned").get(&order) {
        return s.clone();
    }
    let series = Arc::new(compute_series(order));
    cache
        .lock()
        .expect("bch cache poisoned")
        .entry(order)
        .or_insert(series)
        .clone()
}

type Poly = BTreeMap<Word, Scalar>;

fn poly_mul(a: &Poly, b: &Poly, max_len: usize) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() > max_len {
                continue;
            }
            let mut w = u.clone();
            w.extend_from_slice(v);
            *out.entry(w).or_insert_with(Scalar::zero) += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn exp_letter(letter: u8, max_len: usize) -> Poly {
    let mut p = Poly::new();
    let mut fact = Scalar::one();
    for k in 0..=max_len {
        if k > 0 {
            fact *= int(k as i64);
        }
        p.insert(vec![letter; k], fact.recip());
    }
    p
}

fn compute_series(order: usize) -> Vec<(Word, Scalar)> {
    if order <= 1 {
        return Vec::new();
    }
    let max_len = order - 1;
    let mut z = poly_mul(&exp_letter(0, max_len), &exp_letter(1, max_len), max_len);
    z.remove(&Vec::new());
    // log(1+z) = Σ (-1)^{k+1} z^k / k
    let mut log = Poly::new();
    let mut power = z.clone();
    for k in 1..=max_len {
        let c = frac(if k % 2 == 1 { 1 } else { -1 }, k as i64);
        for (w, x) in &power {
            *log.entry(w.clone()).or_insert_with(Scalar::zero) += x * &c;
        }
        power = poly_mul(&power, &z, max_len);
    }
    log.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(w, c)| {
            let n = w.len() as i64;
            (w, c / int(n))
        })
        .collect()
}

/// `log(exp a · exp b)` in `g ⊗ m_A`, truncated at the ring's nilpotency.
pub fn bch(lie: &LieAlgebra, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    if a.dim() != lie.dim() || b.dim() != lie.dim() {
        return Err(Error::Shape(format!(
            "bch on level of dim {} given elements of dims {} and {}",
            lie.dim(),
            a.dim(),
            b.dim()
        )));
    }
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    let sum = a.add(b)?;
    if lie.is_abelian() {
        return Ok(sum);
    }
    let series = bch_series(a.ring().nilpotency());
    let mut total = TensorElement::zero(lie.dim(), a.ring());
    // Left-normed brackets share prefixes; memoize them.
    let mut memo: HashMap<Word, TensorElement> = HashMap::new();
    memo.insert(vec![0], a.clone());
    memo.insert(vec![1], b.clone());
    for (word, coeff) in series.iter() {
        let value = left_normed(lie, word, &mut memo)?;
        if !value.is_zero() {
            total = total.add(&value.scale(coeff))?;
        }
    }
    Ok(total)
}

fn left_normed(lie: &LieAlgebra, word: &[u8], memo: &mut HashMap<Word, TensorElement>) -> Result<TensorElement> {
    if let Some(v) = memo.get(word) {
        return Ok(v.clone());
    }
    let prefix = left_normed(lie, &word[..word.len() - 1], memo)?;
    let value = if prefix.is_zero() {
        prefix
    } else {
        let last = memo[&vec![word[word.len() - 1]]].clone();
        lie.bracket_tensor(&prefix, &last)?
    };
    memo.insert(word.to_vec(), value.clone());
    Ok(value)
}

/// `bch(a, -b)`: zero iff `a = b` as group elements.
pub fn bch_difference(lie: &LieAlgebra, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    bch(lie, a, &b.neg())
}

/// `Σ_{k≥0} ad_a^k(x) / k!`, the adjoint action of `exp a` on `x`.
pub fn exp_ad(lie: &LieAlgebra, a: &TensorElement, x: &TensorElement) -> Result<TensorElement> {
    let mut total = x.clone();
    let mut term = x.clone();
    let mut k = 1i64;
    loop {
        term = lie.bracket_tensor(a, &term)?.scale(&frac(1, k));
        if term.is_zero() {
            return Ok(total);
        }
        total = total.add(&term)?;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artinian::truncated_polynomial;
    use crate::exactlin::Matrix;

    fn heisenberg() -> LieAlgebra {
        // basis p, q, c with [p,q] = c central
        let mut b = BilinearMap::zero(3, 3, 3);
        b.terms.push((0, 1, 2, int(1)));
        b.terms.push((1, 0, 2, int(-1)));
        LieAlgebra::new(b).unwrap()
    }

    #[test]
    fn low_order_coefficients() {
        let s = bch_series(4);
        let get = |w: &[u8]| s.iter().find(|(x, _)| x == w).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero);
        assert_eq!(get(&[0]), int(1));
        assert_eq!(get(&[1]), int(1));
        // ½[X,Y] from words XY (1/2 / 2) and YX (-1/2 / 2)
        assert_eq!(get(&[0, 1]), frac(1, 4));
        assert_eq!(get(&[1, 0]), frac(-1, 4));
    }

    #[test]
    fn heisenberg_half_commutator() {
        let lie = heisenberg();
        assert!(lie.check().is_empty());
        let ring = Arc::new(truncated_polynomial("t", 3).unwrap());
        let a = TensorElement::pure(&ring, &[int(1), int(0), int(0)], 0);
        let b = TensorElement::pure(&ring, &[int(0), int(1), int(0)], 0);
        let z = bch(&lie, &a, &b).unwrap();
        let mut expected = Matrix::zeros(3, 2);
        expected[(0, 0)] = int(1);
        expected[(1, 0)] = int(1);
        expected[(2, 1)] = frac(1, 2);
        assert_eq!(z.coords(), &expected);
    }

    #[test]
    fn identity_and_commuting() {
        let lie = heisenberg();
        let ring = Arc::new(truncated_polynomial("t", 4).unwrap());
        let a = TensorElement::pure(&ring, &[int(2), int(0), int(1)], 0);
        let zero = TensorElement::zero(3, &ring);
        assert_eq!(bch(&lie, &a, &zero).unwrap(), a);
        let c = TensorElement::pure(&ring, &[int(0), int(0), int(5)], 1);
        assert_eq!(bch(&lie, &a, &c).unwrap(), a.add(&c).unwrap());
        assert!(bch(&lie, &a, &a.neg()).unwrap().is_zero());
    }

    #[test]
    fn detects_broken_jacobi() {
        // [e0,e1]=e1, [e0,e2]=e2, [e1,e2]=e0 is antisymmetric but not Lie
        let mut b = BilinearMap::zero(3, 3, 3);
        for (i, j, k, c) in [(0, 1, 1, 1), (0, 2, 2, 1), (1, 2, 0, 1)] {
            b.terms.push((i, j, k, int(c)));
            b.terms.push((j, i, k, int(-c)));
        }
        let lie = LieAlgebra::new(b).unwrap();
        assert!(lie.check().iter().any(|v| matches!(v, LieViolation::Jacobi { .. })));
    }
}
