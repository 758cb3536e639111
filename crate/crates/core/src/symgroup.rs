//! Permutations, orbits, conjugacy classes, Jucys–Murphy elements and the
//! power-sum Frobenius characteristic.
//!
//! Points are 0-based internally; composition is `(στ)(i) = σ(τ(i))`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar, Q};

/// Largest `n` for which `S_n` is enumerated.
pub const MAX_ENUMERATED: usize = 8;

/// Weakly decreasing list of positive parts.
pub type Partition = Vec<usize>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u8).collect() }
    }

    /// From 0-based images; panics if not a bijection.
    pub fn from_images(images: Vec<u8>) -> Self {
        let p = Permutation { images };
        assert!(p.is_bijection(), "not a permutation: {:?}", p.images);
        p
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut v = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            v.push((i - 1) as u8);
        }
        let p = Permutation { images: v };
        if !p.is_bijection() {
            return Err(Error::Parse(format!("{images:?} is not a permutation")));
        }
        Ok(p)
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        for &i in &self.images {
            let i = i as usize;
            if i >= seen.len() || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    /// Transposition of 0-based points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    /// The cycle `c[0] → c[1] → ... → c[0]` on 0-based points.
    pub fn cycle(n: usize, c: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for (k, &a) in c.iter().enumerate() {
            p.images[a] = c[(k + 1) % c.len()] as u8;
        }
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), other.n());
        Permutation { images: other.images.iter().map(|&j| self.images[j as usize]).collect() }
    }

    pub fn try_compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `h σ h⁻¹`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        let mut r = vec![0u8; self.n()];
        for i in 0..self.n() {
            r[h.apply(i)] = h.images[self.apply(i)];
        }
        Permutation { images: r }
    }

    /// Cycles in canonical order (ascending minimum), each listed from its minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                c.push(i);
                i = self.apply(i);
            }
            out.push(c);
        }
        out
    }

    /// For each point, the index of its orbit in canonical order.
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n()];
        for (k, o) in self.orbits().iter().enumerate() {
            for &i in o {
                idx[i] = k;
            }
        }
        idx
    }

    pub fn num_cycles(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut c = 0;
        for start in 0..n {
            if !seen[start] {
                c += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = self.apply(i);
                }
            }
        }
        c
    }

    /// `d(σ) = n − #cycles`.
    pub fn defect(&self) -> usize {
        self.n() - self.num_cycles()
    }

    pub fn cycle_type(&self) -> Partition {
        let mut t: Vec<usize> = self.orbits().iter().map(|o| o.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Embeds into `S_{n+k}` acting on the points shifted up by `offset`,
    /// fixing everything else.
    pub fn embed(&self, total: usize, offset: usize) -> Permutation {
        let mut p = Self::identity(total);
        for i in 0..self.n() {
            p.images[i + offset] = (self.apply(i) + offset) as u8;
        }
        p
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, 1-based, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.orbits().into_iter().filter(|o| o.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "id{}", self.n());
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

/// Orbits of `⟨σ, τ⟩`, canonical order, each sorted ascending.
pub fn joint_orbits(sigma: &Permutation, tau: &Permutation) -> Vec<Vec<usize>> {
    let n = sigma.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in [sigma.apply(i), tau.apply(i)] {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|o| o[0]);
    out
}

fn enumerate_all(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if cur.len() == n {
            out.push(Permutation { images: cur.clone() });
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

static GROUPS: [OnceLock<Vec<Permutation>>; MAX_ENUMERATED + 1] = [const { OnceLock::new() }; MAX_ENUMERATED + 1];

/// All of `S_n` in lexicographic one-line order (cached, `n ≤ 8`).
pub fn symmetric_group(n: usize) -> &'static [Permutation] {
    assert!(n <= MAX_ENUMERATED, "S_{n} exceeds the enumeration cap");
    GROUPS[n].get_or_init(|| enumerate_all(n))
}

/// Partitions of `n`, each weakly decreasing, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` with exactly `k` parts.
pub fn partitions_with_length(n: usize, k: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if slots == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rem < slots {
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            if p * slots < rem {
                break;
            }
            cur.push(p);
            rec(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, k, &mut Vec::new(), &mut out);
    out
}

/// Product of disjoint cycles of the given lengths on consecutive points.
pub fn class_representative(lambda: &[usize]) -> Permutation {
    let n: usize = lambda.iter().sum();
    let mut p = Permutation::identity(n);
    let mut start = 0;
    for &l in lambda {
        let c: Vec<usize> = (start..start + l).collect();
        p = p.compose(&Permutation::cycle(n, &c));
        start += l;
    }
    p
}

/// Centralizer order `z_λ = ∏ i^{m_i} m_i!`.
pub fn z_lambda(lambda: &[usize]) -> Q {
    let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
    for &p in lambda {
        *mult.entry(p).or_default() += 1;
    }
    let mut z = Q::from_integer(BigInt::from(1));
    for (i, m) in mult {
        z *= Q::from_integer(BigInt::from(i).pow(m as u32)) * factorial(m);
    }
    z
}

/// Sparse element of the group algebra `S[S_n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement<S> {
    pub n: usize,
    pub terms: BTreeMap<Permutation, S>,
}

impl<S: Scalar> GroupAlgebraElement<S> {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::single(Permutation::identity(n), S::one())
    }

    pub fn single(p: Permutation, c: S) -> Self {
        let mut r = Self::zero(p.n());
        r.add_term(p, c);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Permutation, c: S) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert_with(S::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (p, c) in &other.terms {
            r.add_term(p.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut r = Self::zero(self.n);
        for (p, c) in &self.terms {
            r.add_term(p.clone(), c.mul_ref(s));
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero(self.n);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                r.add_term(p.compose(q), a.mul_ref(b));
            }
        }
        r
    }

    /// Coefficient function on cycle types; only meaningful for central elements.
    pub fn class_function(&self) -> BTreeMap<Partition, S> {
        let mut f = BTreeMap::new();
        for lambda in partitions(self.n) {
            let rep = class_representative(&lambda);
            let c = self.terms.get(&rep).cloned().unwrap_or_else(S::zero);
            if !c.is_zero() {
                f.insert(lambda, c);
            }
        }
        f
    }

    pub fn is_central(&self) -> bool {
        (1..self.n).all(|i| {
            let h = Permutation::transposition(self.n, i - 1, i);
            let mut conj = Self::zero(self.n);
            for (p, c) in &self.terms {
                conj.add_term(p.conjugate_by(&h), c.clone());
            }
            conj == *self
        })
    }
}

/// `ξ_j = Σ_{i<j} (i j)` for 1-based `j`.
pub fn jm_element<S: Scalar>(j: usize, n: usize) -> Result<GroupAlgebraElement<S>> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let mut r = GroupAlgebraElement::zero(n);
    for i in 0..j - 1 {
        r.add_term(Permutation::transposition(n, i, j - 1), S::one());
    }
    Ok(r)
}

/// `e_0, ..., e_n` evaluated at `ξ_1, ..., ξ_n`.
pub fn jm_elementary<S: Scalar>(n: usize) -> Vec<GroupAlgebraElement<S>> {
    let mut e: Vec<GroupAlgebraElement<S>> = vec![GroupAlgebraElement::one(n)];
    for j in 1..=n {
        let xi = jm_element::<S>(j, n).expect("in range");
        let mut next = e.clone();
        next.push(GroupAlgebraElement::zero(n));
        for k in 1..next.len() {
            next[k] = next[k].add(&e[k - 1].mul(&xi));
        }
        e = next;
    }
    e
}

/// Sum of all permutations with exactly `c` cycles.
pub fn cycle_count_sum<S: Scalar>(n: usize, c: usize) -> GroupAlgebraElement<S> {
    let mut r = GroupAlgebraElement::zero(n);
    for p in symmetric_group(n) {
        if p.num_cycles() == c {
            r.add_term(p.clone(), S::one());
        }
    }
    r
}

static CLASS_SUMS: [OnceLock<Vec<(Partition, GroupAlgebraElement<Q>)>>; MAX_ENUMERATED + 1] =
    [const { OnceLock::new() }; MAX_ENUMERATED + 1];

/// Conjugacy class sums of `S_n`, keyed by cycle type (cached).
pub fn class_sums(n: usize) -> &'static [(Partition, GroupAlgebraElement<Q>)] {
    CLASS_SUMS[n].get_or_init(|| {
        let mut by_type: BTreeMap<Partition, GroupAlgebraElement<Q>> = BTreeMap::new();
        for p in symmetric_group(n) {
            by_type
                .entry(p.cycle_type())
                .or_insert_with(|| GroupAlgebraElement::zero(n))
                .add_term(p.clone(), Q::from_integer(BigInt::from(1)));
        }
        let mut v: Vec<_> = by_type.into_iter().collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v
    })
}

/// Linear combination of power sums `p_λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymFunc<S> {
    pub terms: BTreeMap<Partition, S>,
}

impl<S: Scalar> SymFunc<S> {
    pub fn zero() -> Self {
        SymFunc { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::power(&[], S::one())
    }

    pub fn power(lambda: &[usize], c: S) -> Self {
        let mut l = lambda.to_vec();
        l.sort_unstable_by(|a, b| b.cmp(a));
        let mut r = Self::zero();
        r.add_term(l, c);
        r
    }

    pub fn add_term(&mut self, lambda: Partition, c: S) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(lambda.clone()).or_insert_with(S::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (l, c) in &other.terms {
            r.add_term(l.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut r = Self::zero();
        for (l, c) in &self.terms {
            r.add_term(l.clone(), c.mul_ref(s));
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut l = a.clone();
                l.extend_from_slice(b);
                l.sort_unstable_by(|p, q| q.cmp(p));
                r.add_term(l, x.mul_ref(y));
            }
        }
        r
    }

    /// Hall inner product, `⟨p_λ, p_μ⟩ = δ_{λμ} z_λ`.
    pub fn inner(&self, other: &Self) -> S {
        let mut r = S::zero();
        for (l, x) in &self.terms {
            if let Some(y) = other.terms.get(l) {
                r += &x.mul_ref(y).mul_ref(&S::from_q(&z_lambda(l)));
            }
        }
        r
    }
}

/// `ch(f) = Σ_λ f(λ) p_λ / z_λ`.
pub fn frobenius_ch<S: Scalar>(f: &BTreeMap<Partition, S>) -> SymFunc<S> {
    let mut r = SymFunc::zero();
    for (l, c) in f {
        let z = S::from_q(&z_lambda(l));
        r.add_term(l.clone(), c.clone() / z);
    }
    r
}

/// Class-function inner product `(1/n!) Σ_σ f(σ) g(σ)` on cycle types.
pub fn class_inner<S: Scalar>(n: usize, f: &BTreeMap<Partition, S>, g: &BTreeMap<Partition, S>) -> S {
    let mut r = S::zero();
    for (l, x) in f {
        if let Some(y) = g.get(l) {
            let size = factorial(n as u64) / z_lambda(l);
            r += &x.mul_ref(y).mul_ref(&S::from_q(&size));
        }
    }
    r / S::from_q(&factorial(n as u64))
}

/// True when `d(στ) ≤ d(σ) + d(τ)` with even difference.
pub fn defect_triangle(sigma: &Permutation, tau: &Permutation) -> bool {
    let (a, b, c) = (sigma.defect(), tau.defect(), sigma.compose(tau).defect());
    c <= a + b && (a + b - c) % 2 == 0
}

/// Sign character value `(-1)^{d(σ)}`.
pub fn sign_of(p: &Permutation) -> i64 {
    if p.defect().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qfrac};

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    #[test]
    fn composition_convention() {
        let t12 = perm(&[2, 1, 3]);
        let t13 = perm(&[3, 2, 1]);
        assert!(t12.compose(&t12).is_identity());
        // 1 → 3 → 2 → 1
        assert_eq!(t12.compose(&t13), perm(&[3, 1, 2]));
    }

    #[test]
    fn orbits_and_joint_orbits() {
        assert_eq!(Permutation::identity(3).orbits(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(perm(&[2, 3, 1]).orbits(), vec![vec![0, 1, 2]]);
        let a = perm(&[2, 1, 3, 4]);
        let b = perm(&[1, 2, 4, 3]);
        assert_eq!(joint_orbits(&a, &b), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn jucys_murphy_small() {
        assert!(jm_element::<Q>(1, 4).unwrap().is_zero());
        let x = jm_element::<Q>(3, 3).unwrap();
        let mut expect = GroupAlgebraElement::zero(3);
        expect.add_term(perm(&[3, 2, 1]), q(1));
        expect.add_term(perm(&[1, 3, 2]), q(1));
        assert_eq!(x, expect);
        assert!(jm_element::<Q>(4, 3).is_err());
        let e = jm_elementary::<Q>(5);
        assert_eq!(e[2], cycle_count_sum(5, 3));
    }

    #[test]
    fn characteristic_of_s2_characters() {
        let triv: BTreeMap<Partition, Q> = [(vec![1, 1], q(1)), (vec![2], q(1))].into();
        let sgn: BTreeMap<Partition, Q> = [(vec![1, 1], q(1)), (vec![2], q(-1))].into();
        let h2 = SymFunc::power(&[1, 1], qfrac(1, 2)).add(&SymFunc::power(&[2], qfrac(1, 2)));
        let e2 = SymFunc::power(&[1, 1], qfrac(1, 2)).add(&SymFunc::power(&[2], qfrac(-1, 2)));
        assert_eq!(frobenius_ch(&triv), h2);
        assert_eq!(frobenius_ch(&sgn), e2);
    }

    #[test]
    fn group_sizes_and_classes() {
        assert_eq!(symmetric_group(5).len(), 120);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions_with_length(6, 3), vec![vec![4, 1, 1], vec![3, 2, 1], vec![2, 2, 2]]);
        let total: Q = partitions(6).iter().map(|l| factorial(6) / z_lambda(l)).sum();
        assert_eq!(total, q(720));
        assert_eq!(class_representative(&[3, 2]).cycle_type(), vec![3, 2]);
        assert!(class_sums(4).iter().all(|(_, c)| c.is_central()));
    }

    #[test]
    fn conjugation_matches_composition() {
        for h in symmetric_group(4) {
            for s in symmetric_group(4).iter().step_by(5) {
                assert_eq!(s.conjugate_by(h), h.compose(s).compose(&h.inverse()));
            }
        }
    }
}
