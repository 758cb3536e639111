//! The Fock space `ℱ_X = ⊕ₙ H*_orb(Xⁿ/Sₙ)` with Heisenberg operators built
//! from induction and restriction, and conversion to monomial coordinates.

pub mod partition;
pub mod symbolic;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::frobenius::{AlgebraElement, FrobeniusAlgebra, TensorElement};
use crate::orbiring::OrbElement;
use crate::scalar::{factorial, Scalar};
use crate::symgroup::{symmetric_group, Permutation};

pub use partition::{enumerate, enumerate_up_to, orbifold_dimension, Factor, PartitionFunction};
pub use symbolic::CoordVector;

/// Finitely many levels of invariant elements.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FockVector<S> {
    pub levels: BTreeMap<usize, OrbElement<S>>,
}

impl<S: Scalar> FockVector<S> {
    pub fn zero() -> Self {
        FockVector { levels: BTreeMap::new() }
    }

    pub fn vacuum() -> Self {
        Self::at_level(OrbElement::vacuum())
    }

    pub fn at_level(x: OrbElement<S>) -> Self {
        let mut v = Self::zero();
        v.add_level(x);
        v
    }

    pub fn add_level(&mut self, x: OrbElement<S>) {
        if x.is_zero() {
            return;
        }
        let n = x.n;
        match self.levels.remove(&n) {
            Some(y) => {
                let s = y.add(&x);
                if !s.is_zero() {
                    self.levels.insert(n, s);
                }
            }
            None => {
                self.levels.insert(n, x);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for x in other.levels.values() {
            r.add_level(x.clone());
        }
        r
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut r = Self::zero();
        for x in self.levels.values() {
            r.add_level(x.scale(s));
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level(&self, n: usize) -> OrbElement<S> {
        self.levels.get(&n).cloned().unwrap_or_else(|| OrbElement::zero(n))
    }

    /// Applies a level-wise operator.
    pub fn map(&self, mut f: impl FnMut(&OrbElement<S>) -> OrbElement<S>) -> Self {
        let mut r = Self::zero();
        for x in self.levels.values() {
            r.add_level(f(x));
        }
        r
    }
}

/// `ω_m(α)`: payload `m·α` on every `m`-cycle of `S_m`.
pub fn omega<S: Scalar>(alg: &FrobeniusAlgebra, m: usize, alpha: &AlgebraElement<S>) -> OrbElement<S> {
    let mut r = OrbElement::zero(m);
    let mut t = TensorElement::zero(1);
    let mm = S::from_i64(m as i64);
    for (i, c) in alpha.support() {
        t.add_term(vec![i as u16], c.mul_ref(&mm));
    }
    if t.is_zero() {
        return r;
    }
    let _ = alg;
    for g in symmetric_group(m) {
        if g.num_cycles() == 1 {
            r.terms.insert(g.clone(), t.clone());
        }
    }
    r
}

/// `𝔭_{−m}(α) y = Ind(ω_m(α) ⊗ y)`, the sum running over shuffles.
pub fn create<S: Scalar>(alg: &FrobeniusAlgebra, m: usize, alpha: &AlgebraElement<S>, y: &OrbElement<S>) -> OrbElement<S> {
    assert!(m >= 1);
    let w = omega(alg, m, alpha);
    if w.is_zero() || y.is_zero() {
        return OrbElement::zero(y.n + m);
    }
    w.tensor(y).induce_cosets(alg, m)
}

/// `𝟏_{−k} y = (1/k!) 𝔭_{−1}(1_X)^k y`.
pub fn unit_create<S: Scalar>(alg: &FrobeniusAlgebra, k: usize, y: &OrbElement<S>) -> OrbElement<S> {
    if k == 0 {
        return y.clone();
    }
    OrbElement::unit(alg, k).tensor(y).induce_cosets(alg, k)
}

/// True when `σ` restricted to `0..m` is the cycle `0 → 1 → ⋯ → m−1 → 0`
/// and `σ` preserves `0..m`.
fn leads_with_cycle(sigma: &Permutation, m: usize) -> bool {
    (0..m).all(|i| sigma.apply(i) == (i + 1) % m)
}

fn drop_leading(sigma: &Permutation, m: usize) -> Permutation {
    Permutation::from_images((m..sigma.n()).map(|i| (sigma.apply(i) - m) as u8).collect())
}

/// `𝔭_m(α) y`: restrict to `S_m × S_{n−m}`, read off the `m`-cycle
/// component and pair its factor with `α`.
pub fn annihilate<S: Scalar>(alg: &FrobeniusAlgebra, m: usize, alpha: &AlgebraElement<S>, y: &OrbElement<S>) -> OrbElement<S> {
    assert!(m >= 1);
    if m > y.n {
        return OrbElement::zero(0);
    }
    // (α, b_k) for every k
    let pair: Vec<S> = (0..alg.dim()).map(|k| alg.pairing(alpha, &alg.element(k))).collect();
    let mut r = OrbElement::zero(y.n - m);
    for (sigma, t) in &y.terms {
        if !leads_with_cycle(sigma, m) {
            continue;
        }
        let mut out = TensorElement::zero(t.arity - 1);
        for (key, c) in &t.terms {
            let p = &pair[key[0] as usize];
            if !p.is_zero() {
                out.add_term(key[1..].to_vec(), c.mul_ref(p));
            }
        }
        r.add_component(drop_leading(sigma, m), out);
    }
    r
}

/// `𝔭_m(b^c)` for the dual basis element `b^c`: keeps the components whose
/// leading factor is exactly `b_c`.
pub fn annihilate_dual<S: Scalar>(m: usize, c: usize, y: &OrbElement<S>) -> OrbElement<S> {
    if m > y.n {
        return OrbElement::zero(0);
    }
    let mut r = OrbElement::zero(y.n - m);
    for (sigma, t) in &y.terms {
        if !leads_with_cycle(sigma, m) {
            continue;
        }
        let mut out = TensorElement::zero(t.arity - 1);
        for (key, v) in &t.terms {
            if key[0] as usize == c {
                out.add_term(key[1..].to_vec(), v.clone());
            }
        }
        r.add_component(drop_leading(sigma, m), out);
    }
    r
}

/// `𝔭_m(α)` for `m ∈ ℤ` on a single level; `𝔭_0 = 0`.
pub fn mode<S: Scalar>(alg: &FrobeniusAlgebra, m: i64, alpha: &AlgebraElement<S>, y: &OrbElement<S>) -> OrbElement<S> {
    match m {
        0 => OrbElement::zero(y.n),
        m if m < 0 => create(alg, (-m) as usize, alpha, y),
        m => annihilate(alg, m as usize, alpha, y),
    }
}

/// Scalar value of a level-0 element.
pub fn vacuum_coefficient<S: Scalar>(x: &OrbElement<S>) -> S {
    debug_assert_eq!(x.n, 0);
    x.terms.values().next().and_then(|t| t.terms.values().next().cloned()).unwrap_or_else(S::zero)
}

/// Concrete realisation of monomials and extraction of coordinates, with
/// per-monomial caching.
pub struct FockSpace<'a, S: Scalar> {
    pub alg: &'a FrobeniusAlgebra,
    realized: Mutex<HashMap<PartitionFunction, Arc<OrbElement<S>>>>,
}

impl<'a, S: Scalar> FockSpace<'a, S> {
    pub fn new(alg: &'a FrobeniusAlgebra) -> Self {
        FockSpace { alg, realized: Mutex::new(HashMap::new()) }
    }

    /// `∏ 𝔭_{−r}(b_c)|0⟩` in canonical factor order.
    pub fn realize(&self, p: &PartitionFunction) -> Arc<OrbElement<S>> {
        if let Some(x) = self.realized.lock().unwrap().get(p) {
            return x.clone();
        }
        let alg = self.alg;
        let x = if p.is_empty() {
            OrbElement::vacuum()
        } else {
            let units = p.factors().iter().filter(|&&(c, r)| c as usize == alg.unit && r == 1).count();
            if units > 0 {
                // the even unit factors move to the front without sign
                let rest: Vec<Factor> =
                    p.factors().iter().copied().filter(|&(c, r)| !(c as usize == alg.unit && r == 1)).collect();
                let inner = self.realize(&PartitionFunction::from_sorted(rest));
                unit_create(alg, units, &inner).scale(&S::from_q(&factorial(units as u64)))
            } else {
                let (c, r) = p.factors()[0];
                let inner = self.realize(&p.remove_at(0));
                create(alg, r as usize, &alg.element(c as usize), &inner)
            }
        };
        let x = Arc::new(x);
        self.realized.lock().unwrap().insert(p.clone(), x.clone());
        x
    }

    /// `Σ c_ρ 𝔭_ρ` realised at level `n` (coordinates of other norms are ignored).
    pub fn realize_coords(&self, v: &CoordVector<S>, n: usize) -> OrbElement<S> {
        let mut r = OrbElement::zero(n);
        for (p, c) in &v.terms {
            if p.norm() == n {
                r.add_assign(&self.realize(p).scale(c));
            }
        }
        r
    }

    /// `𝔭_ρ(n) = 𝟏_{−(n−‖ρ‖)} 𝔭_ρ|0⟩`, zero when `n < ‖ρ‖`.
    pub fn p_rho(&self, rho: &PartitionFunction, n: usize) -> OrbElement<S> {
        if n < rho.norm() {
            return OrbElement::zero(n);
        }
        unit_create(self.alg, n - rho.norm(), &self.realize(rho))
    }

    /// `𝔭_ρ(n)` as monomial coordinates.
    pub fn p_rho_coords(&self, rho: &PartitionFunction, n: usize) -> CoordVector<S> {
        if n < rho.norm() {
            return CoordVector::zero();
        }
        let k = n - rho.norm();
        let mut p = rho.clone();
        for _ in 0..k {
            p = p.insert(self.alg, (self.alg.unit as u16, 1)).expect("unit is even").0;
        }
        CoordVector::single(p, S::one() / S::from_q(&factorial(k as u64)))
    }

    /// Coordinates of a level-`n` invariant element by successive dual
    /// annihilations; the result is checked by reconstruction when `check`.
    pub fn coordinates(&self, v: &OrbElement<S>, check: bool) -> Result<CoordVector<S>> {
        let alg = self.alg;
        let n = v.n;
        let mut types: Vec<Factor> = Vec::new();
        for c in 0..alg.dim() {
            for r in (1..=n as u32).rev() {
                types.push((c as u16, r));
            }
        }
        let mut out = CoordVector::zero();
        let mut chosen = Vec::new();
        self.dfs(v, &types, 0, &mut chosen, &mut out);
        if check && self.realize_coords(&out, n) != *v {
            return Err(Error::Reconstruction(n));
        }
        Ok(out)
    }

    fn dfs(&self, u: &OrbElement<S>, types: &[Factor], start: usize, chosen: &mut Vec<Factor>, out: &mut CoordVector<S>) {
        if u.n == 0 {
            let val = vacuum_coefficient(u);
            // the same annihilation word applied to the monomial itself
            let mut sorted = chosen.clone();
            sorted.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            let p = PartitionFunction::from_sorted(sorted);
            let mut w = CoordVector::<crate::scalar::Q>::single(p.clone(), crate::scalar::Q::from_integer(1.into()));
            for &(c, r) in chosen.iter() {
                let dual: AlgebraElement<crate::scalar::Q> = self.alg.dual(c as usize);
                w = symbolic::mode(self.alg, r as i64, &dual, &w);
            }
            let norm = w.terms.get(&PartitionFunction::empty()).cloned().expect("dual word pairs to a nonzero scalar");
            out.add_term(p, val / S::from_q(&norm));
            return;
        }
        for t in start..types.len() {
            let (c, r) = types[t];
            if r as usize > u.n {
                continue;
            }
            let next = annihilate_dual(r as usize, c as usize, u);
            if next.is_zero() {
                continue;
            }
            let nstart = if self.alg.is_odd(c as usize) { t + 1 } else { t };
            chosen.push((c, r));
            self.dfs(&next, types, nstart, chosen, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn creation_from_vacuum() {
        let a = FrobeniusAlgebra::builtin("P2").unwrap();
        let x = a.element::<Q>(1);
        let v = create(&a, 2, &x, &OrbElement::vacuum());
        let mut t = TensorElement::zero(1);
        t.add_term(vec![1], q(2));
        let mut expect = OrbElement::zero(2);
        expect.add_component(Permutation::from_one_line(&[2, 1]).unwrap(), t);
        assert_eq!(v, expect);
        let u = create(&a, 1, &a.unit_element::<Q>(), &OrbElement::vacuum());
        assert_eq!(u, OrbElement::unit(&a, 1));
    }

    #[test]
    fn unit_power_is_unit() {
        let a = FrobeniusAlgebra::builtin("P2").unwrap();
        let one = a.unit_element::<Q>();
        let mut v = OrbElement::vacuum();
        for _ in 0..3 {
            v = create(&a, 1, &one, &v);
        }
        assert_eq!(v.scale(&Q::new(1.into(), 6.into())), OrbElement::unit(&a, 3));
    }

    #[test]
    fn pairing_on_level_one() {
        let a = FrobeniusAlgebra::builtin("P2").unwrap();
        let x = a.element::<Q>(1);
        let v = annihilate(&a, 1, &x, &create(&a, 1, &x, &OrbElement::vacuum()));
        assert_eq!(vacuum_coefficient(&v), q(1));
        assert!(annihilate(&a, 2, &x, &OrbElement::unit(&a, 1)).is_zero());
    }

    #[test]
    fn coordinates_round_trip() {
        for name in ["P2", "odd"] {
            let a = FrobeniusAlgebra::builtin(name).unwrap();
            let f = FockSpace::<Q>::new(&a);
            for n in 0..=3 {
                for p in enumerate(&a, n) {
                    let v = f.realize(&p);
                    let c = f.coordinates(&v, true).unwrap();
                    assert_eq!(c, CoordVector::single(p.clone(), q(1)), "{name} {p}");
                }
            }
        }
    }

    #[test]
    fn omega_three_coordinates() {
        let a = FrobeniusAlgebra::builtin("point").unwrap();
        let f = FockSpace::<Q>::new(&a);
        let w = omega(&a, 3, &a.unit_element::<Q>());
        let c = f.coordinates(&w, true).unwrap();
        assert_eq!(c, CoordVector::single(PartitionFunction::new(&a, vec![(0, 3)]).unwrap(), q(1)));
    }

    #[test]
    fn concrete_heisenberg_small() {
        for name in ["P2", "odd"] {
            let a = FrobeniusAlgebra::builtin(name).unwrap();
            let f = FockSpace::<Q>::new(&a);
            for l in 0..=2 {
                for p in enumerate(&a, l) {
                    let v = (*f.realize(&p)).clone();
                    for m in -2i64..=2 {
                        for n in -2i64..=2 {
                            for i in 0..a.dim() {
                                for j in 0..a.dim() {
                                    let (x, y) = (a.element::<Q>(i), a.element::<Q>(j));
                                    let ab = mode(&a, m, &x, &mode(&a, n, &y, &v));
                                    let ba = mode(&a, n, &y, &mode(&a, m, &x, &v));
                                    let br = if a.is_odd(i) && a.is_odd(j) { ab.add(&ba) } else { ab.sub(&ba) };
                                    let expect = if m == -n && m != 0 { v.scale(&(a.gram_entry(i, j) * q(m))) } else { OrbElement::zero(br.n) };
                                    let ok = if br.is_zero() { expect.is_zero() } else { br == expect };
                                    assert!(ok, "{name} m={m} n={n} i={i} j={j} p={p}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
