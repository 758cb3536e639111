//! The Fock space in the monomial basis `∏ 𝔭_{−r}(b_c)|0⟩`: Heisenberg
//! operators act as super-derivations on canonically ordered monomials.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::partition::{Factor, PartitionFunction};
use crate::frobenius::{AlgebraElement, FrobeniusAlgebra};
use crate::scalar::{Scalar, Q};

/// Coordinates in the monomial basis (`𝔭_ρ(n)` with `‖ρ‖ = n`).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CoordVector<S> {
    pub terms: BTreeMap<PartitionFunction, S>,
}

impl<S: Scalar> CoordVector<S> {
    pub fn zero() -> Self {
        CoordVector { terms: BTreeMap::new() }
    }

    pub fn vacuum() -> Self {
        Self::single(PartitionFunction::empty(), S::one())
    }

    pub fn single(p: PartitionFunction, c: S) -> Self {
        let mut v = Self::zero();
        v.add_term(p, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: PartitionFunction, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut r = Self::zero();
        if s.is_zero() {
            return r;
        }
        for (p, c) in &self.terms {
            r.terms.insert(p.clone(), c.mul_ref(s));
        }
        r
    }

    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CoordVector<T> {
        let mut r = CoordVector::zero();
        for (p, c) in &self.terms {
            r.add_term(p.clone(), f(c));
        }
        r
    }

    /// Restriction to monomials of norm `n`.
    pub fn level(&self, n: usize) -> Self {
        CoordVector { terms: self.terms.iter().filter(|(p, _)| p.norm() == n).map(|(p, c)| (p.clone(), c.clone())).collect() }
    }

    /// Applies a linear map given on basis monomials.
    pub fn map_linear(&self, mut f: impl FnMut(&PartitionFunction) -> CoordVector<S>) -> Self {
        let mut r = Self::zero();
        for (p, c) in &self.terms {
            let img = f(p);
            for (q, d) in img.terms {
                r.add_term(q, d.mul_ref(c));
            }
        }
        r
    }
}

/// `𝔭_{−r}(b_c)` on one monomial.
pub fn create_basis(alg: &FrobeniusAlgebra, r: u32, c: usize, p: &PartitionFunction) -> Option<(PartitionFunction, bool)> {
    p.insert(alg, (c as u16, r))
}

/// `𝔭_{r}(b_c)` on one monomial: `Σ_j ± r (b_c, b_{c_j})` over factors of part `r`.
pub fn annihilate_basis(alg: &FrobeniusAlgebra, r: u32, c: usize, p: &PartitionFunction) -> Vec<(PartitionFunction, Q)> {
    let odd_c = alg.is_odd(c);
    let mut out = Vec::new();
    let mut odd_before = 0usize;
    for (j, &(cj, rj)) in p.factors().iter().enumerate() {
        if rj == r {
            let g = alg.gram_entry(c, cj as usize);
            if !g.is_zero() {
                let mut v = g * Q::from_integer(r.into());
                if odd_c && odd_before % 2 == 1 {
                    v = -v;
                }
                out.push((p.remove_at(j), v));
            }
        }
        if alg.is_odd(cj as usize) {
            odd_before += 1;
        }
    }
    out
}

/// `𝔭_m(α)` for `m ∈ ℤ`, with `𝔭_0 = 0`.
pub fn mode<S: Scalar>(alg: &FrobeniusAlgebra, m: i64, alpha: &AlgebraElement<S>, v: &CoordVector<S>) -> CoordVector<S> {
    let mut out = CoordVector::zero();
    if m == 0 {
        return out;
    }
    for (c, a) in alpha.support() {
        for (p, x) in &v.terms {
            let ax = a.mul_ref(x);
            if m < 0 {
                if let Some((q, neg)) = create_basis(alg, (-m) as u32, c, p) {
                    out.add_term(q, if neg { -ax } else { ax });
                }
            } else {
                for (q, g) in annihilate_basis(alg, m as u32, c, p) {
                    out.add_term(q, ax.mul_ref(&S::from_q(&g)));
                }
            }
        }
    }
    out
}

/// Applies `𝔭_{m_1}(b_{c_1}) ⋯ 𝔭_{m_k}(b_{c_k})` (rightmost first) to a monomial.
pub fn word_on_basis(alg: &FrobeniusAlgebra, word: &[(i64, usize)], p: &PartitionFunction) -> CoordVector<Q> {
    let mut v = CoordVector::single(p.clone(), Q::from_integer(1.into()));
    for &(m, c) in word.iter().rev() {
        v = mode(alg, m, &alg.element::<Q>(c), &v);
        if v.is_zero() {
            break;
        }
    }
    v
}

/// The monomial `∏ 𝔭_{−r}(b_c)` with factors in the given order, as coordinates.
pub fn monomial_from_word(alg: &FrobeniusAlgebra, factors: &[Factor]) -> CoordVector<Q> {
    let word: Vec<(i64, usize)> = factors.iter().map(|&(c, r)| (-(r as i64), c as usize)).collect();
    word_on_basis(alg, &word, &PartitionFunction::empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn heisenberg_on_monomials() {
        for name in ["P2", "odd"] {
            let a = FrobeniusAlgebra::builtin(name).unwrap();
            let basis = super::super::partition::enumerate_up_to(&a, 3);
            for m in -2i64..=2 {
                for n in -2i64..=2 {
                    for i in 0..a.dim() {
                        for j in 0..a.dim() {
                            let odd = a.is_odd(i) && a.is_odd(j);
                            for p in &basis {
                                let v = CoordVector::single(p.clone(), q(1));
                                let ab = mode(&a, m, &a.element(i), &mode(&a, n, &a.element(j), &v));
                                let ba = mode(&a, n, &a.element(j), &mode(&a, m, &a.element(i), &v));
                                let br = if odd { ab.add(&ba) } else { ab.sub(&ba) };
                                let expect = if m == -n && m != 0 {
                                    v.scale(&(a.gram_entry(i, j) * q(m)))
                                } else {
                                    CoordVector::zero()
                                };
                                assert_eq!(br, expect, "{name} m={m} n={n} i={i} j={j} p={p}");
                            }
                        }
                    }
                }
            }
        }
    }
}
