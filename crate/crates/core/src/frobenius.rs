//! Graded super-commutative Frobenius algebras, the model of `H*(X)`.
//!
//! Structure constants and the integral are stored over [`Q`]; elements and
//! tensors are generic over the scalar field.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{parse_q, Scalar, Q};

/// Largest arity for which transfer tensors are cached.
const TRANSFER_CACHE: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: u32,
}

/// Dense coefficient vector over the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero(dim: usize) -> Self {
        AlgebraElement { coeffs: vec![S::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[i] = S::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &S) -> Self {
        AlgebraElement { coeffs: self.coeffs.iter().map(|c| c.mul_ref(s)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (a, b) in r.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        r
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &S)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> AlgebraElement<T> {
        AlgebraElement { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl AlgebraElement<Q> {
    pub fn lift<S: Scalar>(&self) -> AlgebraElement<S> {
        self.convert(S::from_q)
    }
}

/// Sparse element of `A^{⊗k}`; keys are basis-index tuples of length `arity`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement<S> {
    pub arity: usize,
    pub terms: BTreeMap<Vec<u16>, S>,
}

impl<S: Scalar> TensorElement<S> {
    pub fn zero(arity: usize) -> Self {
        TensorElement { arity, terms: BTreeMap::new() }
    }

    pub fn scalar(s: S) -> Self {
        let mut t = Self::zero(0);
        t.add_term(Vec::new(), s);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Vec<u16>, c: S) {
        debug_assert_eq!(key.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut r = Self::zero(self.arity);
        if s.is_zero() {
            return r;
        }
        r.terms = self.terms.iter().map(|(k, c)| (k.clone(), c.mul_ref(s))).collect();
        r
    }

    /// `self ⊗ other` with no sign (factors are simply concatenated).
    pub fn concat(&self, other: &Self) -> Self {
        let mut r = Self::zero(self.arity + other.arity);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut k = a.clone();
                k.extend_from_slice(b);
                r.add_term(k, x.mul_ref(y));
            }
        }
        r
    }

    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TensorElement<T> {
        let mut r = TensorElement::zero(self.arity);
        for (k, c) in &self.terms {
            r.add_term(k.clone(), f(c));
        }
        r
    }
}

impl TensorElement<Q> {
    pub fn lift<S: Scalar>(&self) -> TensorElement<S> {
        TensorElement {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), S::from_q(c))).collect(),
        }
    }
}

/// On-disk format of an algebra definition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub complex_dim: u32,
    pub basis: Vec<BasisElement>,
    pub unit: usize,
    pub mult: Vec<(usize, usize, usize, String)>,
    pub integral: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<Vec<String>>,
}

#[derive(Debug)]
pub struct FrobeniusAlgebra {
    pub name: String,
    /// Complex dimension `d`; the integral has degree `2d`.
    pub d: u32,
    pub basis: Vec<BasisElement>,
    pub unit: usize,
    mult: Vec<Vec<Vec<(usize, Q)>>>,
    integral: Vec<Q>,
    gram: Vec<Vec<Q>>,
    gram_inv: Vec<Vec<Q>>,
    euler: AlgebraElement<Q>,
    has_odd: bool,
    transfer: Vec<OnceLock<Vec<TensorElement<Q>>>>,
    source: AlgebraFile,
}

const POINT_JSON: &str = include_str!("../data/point.json");
const P2_JSON: &str = include_str!("../data/p2.json");
const K3_JSON: &str = include_str!("../data/k3.json");
const ODD_JSON: &str = include_str!("../data/odd.json");

impl FrobeniusAlgebra {
    /// Built-in models: `point`, `P2`, `K3`, `odd`.
    pub fn builtin(name: &str) -> Option<FrobeniusAlgebra> {
        let src = match name.to_ascii_lowercase().as_str() {
            "point" | "pt" => POINT_JSON,
            "p2" => P2_JSON,
            "k3" => K3_JSON,
            "odd" => ODD_JSON,
            _ => return None,
        };
        Some(Self::from_json(src).expect("built-in algebra is valid"))
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["point", "P2", "K3", "odd"]
    }

    pub fn from_json(src: &str) -> Result<FrobeniusAlgebra> {
        let file: AlgebraFile =
            serde_json::from_str(src).map_err(|e| Error::InvalidAlgebra(format!("parse: {e}")))?;
        Self::from_file(file)
    }

    pub fn from_file(file: AlgebraFile) -> Result<FrobeniusAlgebra> {
        let bad = |m: String| Error::InvalidAlgebra(m);
        let dim = file.basis.len();
        if dim == 0 {
            return Err(bad("empty basis".into()));
        }
        if file.complex_dim % 2 == 1 {
            return Err(bad(format!("complex dimension {} must be even", file.complex_dim)));
        }
        if file.unit >= dim {
            return Err(bad("unit index out of range".into()));
        }
        if file.integral.len() != dim {
            return Err(bad("integral has wrong length".into()));
        }
        let top = 2 * file.complex_dim;
        for b in &file.basis {
            if b.degree > top {
                return Err(bad(format!("degree of {} exceeds 2d", b.label)));
            }
        }
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for (i, j, k, c) in &file.mult {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(bad(format!("mult entry ({i},{j},{k}) out of range")));
            }
            let c = parse_q(c).ok_or_else(|| bad(format!("bad rational {c:?}")))?;
            if c.is_zero() {
                continue;
            }
            let slot: &mut Vec<(usize, Q)> = &mut mult[*i][*j];
            if slot.iter().any(|(kk, _)| kk == k) {
                return Err(bad(format!("duplicate mult entry ({i},{j},{k})")));
            }
            slot.push((*k, c));
        }
        for row in mult.iter_mut() {
            for slot in row.iter_mut() {
                slot.sort_by_key(|(k, _)| *k);
            }
        }
        let integral = file
            .integral
            .iter()
            .map(|s| parse_q(s).ok_or_else(|| bad(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let has_odd = file.basis.iter().any(|b| b.degree % 2 == 1);
        let mut alg = FrobeniusAlgebra {
            name: file.name.clone(),
            d: file.complex_dim,
            basis: file.basis.clone(),
            unit: file.unit,
            mult,
            integral,
            gram: Vec::new(),
            gram_inv: Vec::new(),
            euler: AlgebraElement::zero(dim),
            has_odd,
            transfer: (0..=TRANSFER_CACHE).map(|_| OnceLock::new()).collect(),
            source: file.clone(),
        };
        alg.validate_structure()?;
        alg.gram = (0..dim)
            .map(|i| (0..dim).map(|j| alg.pairing_basis(i, j)).collect())
            .collect();
        alg.gram_inv = linalg::invert(&alg.gram).ok_or_else(|| bad("pairing is degenerate".into()))?;
        let derived = alg.derive_euler();
        if let Some(supplied) = &file.euler {
            if supplied.len() != dim {
                return Err(bad("euler has wrong length".into()));
            }
            let supplied = supplied
                .iter()
                .map(|s| parse_q(s).ok_or_else(|| bad(format!("bad rational {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if supplied != derived.coeffs {
                return Err(bad("supplied euler class differs from m(τ₂(1))".into()));
            }
        }
        if alg.d > 0 && !alg.multiply(&derived, &derived).is_zero() {
            return Err(bad("e·e ≠ 0".into()));
        }
        alg.euler = derived;
        Ok(alg)
    }

    fn validate_structure(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidAlgebra(m));
        let dim = self.dim();
        let top = 2 * self.d;
        for i in 0..dim {
            for j in 0..dim {
                for (k, _) in &self.mult[i][j] {
                    if self.degree(*k) != self.degree(i) + self.degree(j) {
                        return bad(format!("b{i}·b{j} has a component of the wrong degree"));
                    }
                }
                let ij = self.multiply_basis::<Q>(i, j);
                let ji = self.multiply_basis::<Q>(j, i);
                let s = if self.is_odd(i) && self.is_odd(j) { -Q::one() } else { Q::one() };
                if ij != ji.scale(&s) {
                    return bad(format!("b{i}, b{j} do not super-commute"));
                }
            }
            let u = self.multiply_basis::<Q>(self.unit, i);
            if u != AlgebraElement::basis(dim, i) {
                return bad(format!("unit does not act trivially on b{i}"));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.multiply_basis::<Q>(i, j);
                for k in 0..dim {
                    let bk = AlgebraElement::basis(dim, k);
                    let l = self.multiply(&ij, &bk);
                    let r = self.multiply(&AlgebraElement::basis(dim, i), &self.multiply_basis(j, k));
                    if l != r {
                        return bad(format!("associativity fails on (b{i},b{j},b{k})"));
                    }
                }
            }
        }
        for (i, c) in self.integral.iter().enumerate() {
            if !c.is_zero() && self.degree(i) != top {
                return bad(format!("integral of b{i} nonzero outside degree 2d"));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.basis[i].degree
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.basis[i].degree % 2 == 1
    }

    pub fn has_odd(&self) -> bool {
        self.has_odd
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn source(&self) -> &AlgebraFile {
        &self.source
    }

    /// Stable content hash of the definition (hex sha256 of its canonical JSON).
    pub fn content_hash(&self) -> String {
        let v = serde_json::to_value(&self.source).expect("serializable");
        let mut h = Sha256::new();
        h.update(v.to_string().as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn unit_element<S: Scalar>(&self) -> AlgebraElement<S> {
        AlgebraElement::basis(self.dim(), self.unit)
    }

    pub fn element<S: Scalar>(&self, i: usize) -> AlgebraElement<S> {
        AlgebraElement::basis(self.dim(), i)
    }

    pub fn zero_element<S: Scalar>(&self) -> AlgebraElement<S> {
        AlgebraElement::zero(self.dim())
    }

    /// Degree of a homogeneous element (`None` for zero or inhomogeneous).
    pub fn degree_of<S: Scalar>(&self, x: &AlgebraElement<S>) -> Option<u32> {
        let mut degs = x.support().map(|(i, _)| self.degree(i));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn mult_table(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.mult[i][j]
    }

    pub fn multiply_basis<S: Scalar>(&self, i: usize, j: usize) -> AlgebraElement<S> {
        let mut r = AlgebraElement::zero(self.dim());
        for (k, c) in &self.mult[i][j] {
            r.coeffs[*k] += &S::from_q(c);
        }
        r
    }

    pub fn multiply<S: Scalar>(&self, x: &AlgebraElement<S>, y: &AlgebraElement<S>) -> AlgebraElement<S> {
        let mut r = AlgebraElement::zero(self.dim());
        for (i, a) in x.support() {
            for (j, b) in y.support() {
                let ab = a.mul_ref(b);
                for (k, c) in &self.mult[i][j] {
                    r.coeffs[*k] += &ab.mul_ref(&S::from_q(c));
                }
            }
        }
        r
    }

    /// `x · b_j` for a basis element.
    pub fn multiply_by_basis<S: Scalar>(&self, x: &AlgebraElement<S>, j: usize) -> AlgebraElement<S> {
        let mut r = AlgebraElement::zero(self.dim());
        for (i, a) in x.support() {
            for (k, c) in &self.mult[i][j] {
                r.coeffs[*k] += &a.mul_ref(&S::from_q(c));
            }
        }
        r
    }

    pub fn integral<S: Scalar>(&self, x: &AlgebraElement<S>) -> S {
        let mut r = S::zero();
        for (i, a) in x.support() {
            if !self.integral[i].is_zero() {
                r += &a.mul_ref(&S::from_q(&self.integral[i]));
            }
        }
        r
    }

    pub fn integral_basis(&self, i: usize) -> &Q {
        &self.integral[i]
    }

    fn pairing_basis(&self, i: usize, j: usize) -> Q {
        self.integral(&self.multiply_basis::<Q>(i, j))
    }

    /// `(x, y) = ∫ x y`.
    pub fn pairing<S: Scalar>(&self, x: &AlgebraElement<S>, y: &AlgebraElement<S>) -> S {
        self.integral(&self.multiply(x, y))
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn gram_entry(&self, i: usize, j: usize) -> &Q {
        &self.gram[i][j]
    }

    /// Left dual basis element `b^c` with `(b^c, b_j) = δ_{cj}`.
    pub fn dual<S: Scalar>(&self, c: usize) -> AlgebraElement<S> {
        AlgebraElement { coeffs: (0..self.dim()).map(|j| S::from_q(&self.gram_inv[c][j])).collect() }
    }

    pub fn euler(&self) -> &AlgebraElement<Q> {
        &self.euler
    }

    fn derive_euler(&self) -> AlgebraElement<Q> {
        let t = self.compute_transfer(2, self.unit);
        let mut e = AlgebraElement::zero(self.dim());
        for (k, c) in &t.terms {
            e.add_assign(&self.multiply_basis::<Q>(k[0] as usize, k[1] as usize).scale(c));
        }
        e
    }

    /// Koszul sign of a pure tensor `b_{k0} ⊗ b_{k1} ⊗ ...` paired against itself
    /// factorwise: `(-1)^{Σ_{r<s} |k_r||k_s|}`.
    fn self_pair_sign(&self, key: &[u16]) -> bool {
        let mut odd_seen = 0usize;
        let mut flips = 0usize;
        for &k in key {
            if self.is_odd(k as usize) {
                flips += odd_seen;
                odd_seen += 1;
            }
        }
        flips % 2 == 1
    }

    /// Transfer `τ_{k*}(b_i)`, defined by `⟨τ_{k*}α, x_1⊗⋯⊗x_k⟩ = ∫ α x_1⋯x_k`
    /// for the Koszul tensor pairing.
    fn compute_transfer(&self, k: usize, i: usize) -> TensorElement<Q> {
        assert!(k >= 1);
        let dim = self.dim();
        // R_J = ∫ b_i b_{j1} ... b_{jk}, enumerated along nonzero partial products
        let mut r: BTreeMap<Vec<u16>, Q> = BTreeMap::new();
        let mut stack: Vec<(Vec<u16>, AlgebraElement<Q>)> = vec![(Vec::new(), AlgebraElement::basis(dim, i))];
        while let Some((key, x)) = stack.pop() {
            if key.len() == k {
                let v = self.integral(&x);
                if !v.is_zero() {
                    r.insert(key, v);
                }
                continue;
            }
            for j in 0..dim {
                let y = self.multiply_by_basis(&x, j);
                if !y.is_zero() {
                    let mut kk = key.clone();
                    kk.push(j as u16);
                    stack.push((kk, y));
                }
            }
        }
        // contract each slot with the inverse Gram matrix: t'_I = Σ_J R_J ∏ Ginv[j_r][i_r]
        let mut cur = r;
        for slot in 0..k {
            let mut next: BTreeMap<Vec<u16>, Q> = BTreeMap::new();
            for (key, v) in &cur {
                let j = key[slot] as usize;
                for (ii, h) in self.gram_inv[j].iter().enumerate() {
                    if h.is_zero() {
                        continue;
                    }
                    let mut nk = key.clone();
                    nk[slot] = ii as u16;
                    let e = next.entry(nk).or_insert_with(Q::zero);
                    *e += v * h;
                }
            }
            next.retain(|_, v| !v.is_zero());
            cur = next;
        }
        let mut t = TensorElement::zero(k);
        for (key, v) in cur {
            let v = if self.self_pair_sign(&key) { -v } else { v };
            t.add_term(key, v);
        }
        t
    }

    /// Cached `τ_{k*}(b_i)`.
    pub fn transfer_basis(&self, k: usize, i: usize) -> std::borrow::Cow<'_, TensorElement<Q>> {
        if k < self.transfer.len() {
            let all = self.transfer[k].get_or_init(|| (0..self.dim()).map(|i| self.compute_transfer(k, i)).collect());
            std::borrow::Cow::Borrowed(&all[i])
        } else {
            std::borrow::Cow::Owned(self.compute_transfer(k, i))
        }
    }

    /// `τ_{k*}(α)`.
    pub fn tau_push<S: Scalar>(&self, k: usize, alpha: &AlgebraElement<S>) -> TensorElement<S> {
        let mut r = TensorElement::zero(k);
        for (i, a) in alpha.support() {
            for (key, c) in &self.transfer_basis(k, i).terms {
                r.add_term(key.clone(), a.mul_ref(&S::from_q(c)));
            }
        }
        r
    }

    /// Componentwise product `(a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd`.
    pub fn kunneth_mult<S: Scalar>(&self, u: &TensorElement<S>, v: &TensorElement<S>) -> Result<TensorElement<S>> {
        if u.arity != v.arity {
            return Err(Error::ArityMismatch(u.arity, v.arity));
        }
        let k = u.arity;
        let mut r = TensorElement::zero(k);
        for (a, x) in &u.terms {
            for (b, y) in &v.terms {
                // sign from moving each b_s left past a_r for r > s
                let mut odd = false;
                for s in 0..k {
                    if !self.is_odd(b[s] as usize) {
                        continue;
                    }
                    for r in (s + 1)..k {
                        if self.is_odd(a[r] as usize) {
                            odd = !odd;
                        }
                    }
                }
                // expand the product of each slot
                let mut partial: Vec<(Vec<u16>, S)> = vec![(Vec::new(), x.mul_ref(y))];
                for s in 0..k {
                    let prods = &self.mult[a[s] as usize][b[s] as usize];
                    let mut next = Vec::new();
                    for (key, c) in &partial {
                        for (kk, m) in prods {
                            let mut nk = key.clone();
                            nk.push(*kk as u16);
                            next.push((nk, c.mul_ref(&S::from_q(m))));
                        }
                    }
                    partial = next;
                }
                for (key, c) in partial {
                    r.add_term(key, if odd { -c } else { c });
                }
            }
        }
        Ok(r)
    }

    /// `∫^{⊗k}` of a tensor: product of the factor integrals.
    pub fn tensor_integral<S: Scalar>(&self, t: &TensorElement<S>) -> S {
        let mut r = S::zero();
        for (key, c) in &t.terms {
            let mut v = c.clone();
            for &k in key {
                v *= &S::from_q(&self.integral[k as usize]);
            }
            r += &v;
        }
        r
    }

    /// Koszul sign of reordering factors with the given basis indices: the
    /// factor at old position `order[p]` moves to new position `p`.
    pub fn reorder_sign(&self, indices: &[u16], order: &[usize]) -> bool {
        if !self.has_odd {
            return false;
        }
        let mut odd = false;
        for p in 0..order.len() {
            if !self.is_odd(indices[order[p]] as usize) {
                continue;
            }
            for q in (p + 1)..order.len() {
                if order[q] < order[p] && self.is_odd(indices[order[q]] as usize) {
                    odd = !odd;
                }
            }
        }
        odd
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn key(v: &[u16]) -> Vec<u16> {
        v.to_vec()
    }

    #[test]
    fn p2_multiplication() {
        let a = FrobeniusAlgebra::builtin("P2").unwrap();
        let x = a.element::<Q>(1);
        assert_eq!(a.multiply(&a.unit_element(), &x), x);
        assert_eq!(a.multiply(&x, &x), a.element(2));
        assert!(a.multiply(&x, &a.element(2)).is_zero());
    }

    #[test]
    fn p2_transfer_and_euler() {
        let a = FrobeniusAlgebra::builtin("P2").unwrap();
        let t = a.tau_push(2, &a.unit_element::<Q>());
        let mut expect = TensorElement::zero(2);
        expect.add_term(key(&[0, 2]), q(1));
        expect.add_term(key(&[1, 1]), q(1));
        expect.add_term(key(&[2, 0]), q(1));
        assert_eq!(t, expect);
        let tp = a.tau_push(2, &a.element::<Q>(2));
        assert_eq!(tp.terms.len(), 1);
        assert_eq!(tp.terms[&key(&[2, 2])], q(1));
        assert_eq!(a.euler().coeffs, vec![q(0), q(0), q(3)]);
        assert_eq!(a.tau_push(1, &a.element::<Q>(1)).terms[&key(&[1])], q(1));
    }

    #[test]
    fn euler_numbers() {
        let pt = FrobeniusAlgebra::builtin("point").unwrap();
        assert_eq!(pt.euler().coeffs, vec![q(1)]);
        let k3 = FrobeniusAlgebra::builtin("K3").unwrap();
        assert_eq!(k3.integral(k3.euler()), q(24));
        let odd = FrobeniusAlgebra::builtin("odd").unwrap();
        assert_eq!(odd.integral(odd.euler()), q(0));
    }

    #[test]
    fn kunneth_signs() {
        let a = FrobeniusAlgebra::builtin("odd").unwrap();
        let (one, oa, ob) = (0u16, 1u16, 2u16);
        let t = |k: [u16; 2]| {
            let mut t = TensorElement::<Q>::zero(2);
            t.add_term(k.to_vec(), q(1));
            t
        };
        let l = a.kunneth_mult(&t([oa, one]), &t([one, ob])).unwrap();
        let r = a.kunneth_mult(&t([one, ob]), &t([oa, one])).unwrap();
        assert_eq!(l, r.scale(&q(-1)));
        let p2 = FrobeniusAlgebra::builtin("P2").unwrap();
        let l = p2.kunneth_mult(&t([1, 1]), &t([1, 0])).unwrap();
        assert_eq!(l, t([2, 1]));
        assert!(p2.kunneth_mult(&t([1, 1]), &TensorElement::zero(3)).is_err());
    }

    #[test]
    fn rejects_bad_files() {
        let mut f: AlgebraFile = serde_json::from_str(P2_JSON).unwrap();
        f.integral[1] = "1".into();
        assert!(FrobeniusAlgebra::from_file(f).is_err());
        let mut f: AlgebraFile = serde_json::from_str(P2_JSON).unwrap();
        f.euler = Some(vec!["0".into(), "0".into(), "2".into()]);
        assert!(FrobeniusAlgebra::from_file(f).is_err());
        let mut f: AlgebraFile = serde_json::from_str(P2_JSON).unwrap();
        f.complex_dim = 3;
        assert!(FrobeniusAlgebra::from_file(f).is_err());
    }
}
