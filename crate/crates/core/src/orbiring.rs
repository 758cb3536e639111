//! The ring `H*(Xⁿ, Sₙ) = ⊕_σ A^{⊗orbits(σ)}`, its `Sₙ`-action and the
//! family of orbifold products `∘_t`.
//!
//! The product of a `σ`-component with a `τ`-component is the graph-defect
//! convolution: on each joint orbit `B` of `⟨σ, τ⟩` all factors are multiplied
//! together, multiplied by `e^{g(B)}`, and pushed back out over the orbits of
//! `στ` in `B` by the transfer `τ_{k*}`.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{AlgebraElement, FrobeniusAlgebra, TensorElement};
use crate::scalar::{factorial, parse_q, powi, Scalar, Q};
use crate::symgroup::{class_representative, joint_orbits, partitions, symmetric_group, Permutation};

/// Sign convention for the transfer and Euler class inside a joint orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransferSign {
    /// `τ_{k*}` and `e` as defined by the Frobenius pairing.
    Geometric,
    /// `(-1)^{k-1} τ_{k*}` and `-e`, i.e. the structure of the negated integral.
    Negated,
}

/// `x ∘ y = twist^{ε(σ,τ)} · m(x, y)` with `m` the convolution under `transfer`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductRule {
    pub twist: Q,
    pub transfer: TransferSign,
}

impl ProductRule {
    /// The deformed product `∘_t`; `t = 1` is the default orbifold product.
    pub fn deformed(t: Q) -> Self {
        ProductRule { twist: t, transfer: TransferSign::Geometric }
    }

    pub fn standard() -> Self {
        Self::deformed(Q::one())
    }

    /// `∘_t := (−t)^ε · m(sign)`, the parametrisation with a global transfer sign.
    pub fn candidate(t: Q, transfer: TransferSign) -> Self {
        ProductRule { twist: -t, transfer }
    }
}

/// Element of `H*(Xⁿ, Sₙ)`; payload factors follow the canonical orbit order.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbElement<S> {
    pub n: usize,
    pub terms: BTreeMap<Permutation, TensorElement<S>>,
}

impl<S: Scalar> OrbElement<S> {
    pub fn zero(n: usize) -> Self {
        OrbElement { n, terms: BTreeMap::new() }
    }

    /// Level-0 unit (the vacuum).
    pub fn vacuum() -> Self {
        let mut r = Self::zero(0);
        r.add_component(Permutation::identity(0), TensorElement::scalar(S::one()));
        r
    }

    /// Unit of `H*(Xⁿ, Sₙ)`: `1⊗…⊗1` on the identity.
    pub fn unit(alg: &FrobeniusAlgebra, n: usize) -> Self {
        Self::on_identity(alg, &vec![alg.unit_element(); n])
    }

    /// Pure tensor `x_1⊗…⊗x_n` on the identity key.
    pub fn on_identity(alg: &FrobeniusAlgebra, factors: &[AlgebraElement<S>]) -> Self {
        let n = factors.len();
        let mut t = TensorElement::scalar(S::one());
        for f in factors {
            let mut ft = TensorElement::zero(1);
            for (i, c) in f.support() {
                ft.add_term(vec![i as u16], c.clone());
            }
            t = t.concat(&ft);
        }
        let _ = alg;
        let mut r = Self::zero(n);
        r.add_component(Permutation::identity(n), t);
        r
    }

    /// `γ^{(i)}`: `γ` in slot `i` (0-based), units elsewhere.
    pub fn slot(alg: &FrobeniusAlgebra, gamma: &AlgebraElement<S>, i: usize, n: usize) -> Self {
        let mut f = vec![alg.unit_element(); n];
        f[i] = gamma.clone();
        Self::on_identity(alg, &f)
    }

    /// Key `σ` with payload `1` on every orbit.
    pub fn group_element(alg: &FrobeniusAlgebra, sigma: &Permutation, c: S) -> Self {
        let l = sigma.orbits().len();
        let mut t = TensorElement::zero(l);
        t.add_term(vec![alg.unit as u16; l], c);
        let mut r = Self::zero(sigma.n());
        r.add_component(sigma.clone(), t);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_component(&mut self, sigma: Permutation, t: TensorElement<S>) {
        if t.is_zero() {
            return;
        }
        match self.terms.entry(sigma) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(t);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&t);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `other`; a zero `self` takes over the level of `other`.
    pub fn add_assign(&mut self, other: &Self) {
        if self.terms.is_empty() && !other.terms.is_empty() {
            self.n = other.n;
        }
        for (k, t) in &other.terms {
            self.add_component(k.clone(), t.clone());
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
        let mut r = Self::zero(self.n);
        if s.is_zero() {
            return r;
        }
        for (k, t) in &self.terms {
            r.terms.insert(k.clone(), t.scale(s));
        }
        r
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(|t| t.terms.len()).sum()
    }

    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> OrbElement<T> {
        let mut r = OrbElement::zero(self.n);
        for (k, t) in &self.terms {
            r.add_component(k.clone(), t.convert(f));
        }
        r
    }

    /// Shifted degree `Σ|payload| + d·d(σ)` if homogeneous.
    pub fn degree(&self, alg: &FrobeniusAlgebra) -> Option<u32> {
        let mut deg = None;
        for (sigma, t) in &self.terms {
            for key in t.terms.keys() {
                let d = key.iter().map(|&i| alg.degree(i as usize)).sum::<u32>() + alg.d * sigma.defect() as u32;
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    /// Parity of a homogeneous element (payload degree mod 2).
    pub fn parity(&self, alg: &FrobeniusAlgebra) -> bool {
        self.degree(alg).map(|d| d % 2 == 1).unwrap_or(false)
    }

    /// `ad h`: transports `σ ↦ hσh⁻¹` and orbit factors along `h`.
    pub fn ad(&self, alg: &FrobeniusAlgebra, h: &Permutation) -> Self {
        let mut r = Self::zero(self.n);
        for (sigma, t) in &self.terms {
            let (s2, t2) = ad_component(alg, h, sigma, t);
            r.add_component(s2, t2);
        }
        r
    }

    /// True when fixed by all adjacent transpositions.
    pub fn is_invariant(&self, alg: &FrobeniusAlgebra) -> bool {
        (1..self.n).all(|i| self.ad(alg, &Permutation::transposition(self.n, i - 1, i)) == *self)
    }

    /// Projection onto invariants, `(1/n!) Σ_h ad h`.
    pub fn symmetrize(&self, alg: &FrobeniusAlgebra) -> Self {
        let mut r = Self::zero(self.n);
        for h in symmetric_group(self.n) {
            r.add_assign(&self.ad(alg, h));
        }
        r.scale(&(S::one() / S::from_q(&factorial(self.n as u64))))
    }

    /// Components whose key lies in `S_k × S_{n−k}`.
    pub fn restrict(&self, k: usize) -> Result<Self> {
        if k > self.n {
            return Err(Error::IndexOutOfRange { index: k, n: self.n });
        }
        let mut r = Self::zero(self.n);
        for (sigma, t) in &self.terms {
            if (0..k).all(|i| sigma.apply(i) < k) {
                r.terms.insert(sigma.clone(), t.clone());
            }
        }
        Ok(r)
    }

    /// Splits an element supported on `S_k × S_{n−k}` into pairs of components.
    pub fn split_young(&self, k: usize) -> Vec<((Permutation, Permutation), TensorElement<S>)> {
        let mut out = Vec::new();
        for (sigma, t) in &self.terms {
            let (a, b) = split_perm(sigma, k);
            out.push(((a, b), t.clone()));
        }
        out
    }

    /// `Ind` from `S_k × S_{n−k}`: `(1/|K|) Σ_{g ∈ Sₙ} ad g`.
    pub fn induce(&self, alg: &FrobeniusAlgebra, k: usize) -> Result<Self> {
        if k > self.n {
            return Err(Error::IndexOutOfRange { index: k, n: self.n });
        }
        let mut r = Self::zero(self.n);
        for h in symmetric_group(self.n) {
            r.add_assign(&self.ad(alg, h));
        }
        let order = factorial(k as u64) * factorial((self.n - k) as u64);
        Ok(r.scale(&(S::one() / S::from_q(&order))))
    }

    /// `Ind` of a `S_k × S_{n−k}`-invariant element as a sum over coset representatives.
    pub fn induce_cosets(&self, alg: &FrobeniusAlgebra, k: usize) -> Self {
        let mut r = Self::zero(self.n);
        for g in young_coset_reps(self.n, k) {
            r.add_assign(&self.ad(alg, &g));
        }
        r
    }

    /// `x ⊗ y` on `S_a × S_b ⊂ S_{a+b}`.
    pub fn tensor(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut r = Self::zero(n);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let key = s.embed(n, 0).compose(&t.embed(n, self.n));
                r.add_component(key, a.concat(b));
            }
        }
        r
    }
}

fn split_perm(sigma: &Permutation, k: usize) -> (Permutation, Permutation) {
    let a: Vec<u8> = (0..k).map(|i| sigma.apply(i) as u8).collect();
    let b: Vec<u8> = (k..sigma.n()).map(|i| (sigma.apply(i) - k) as u8).collect();
    (Permutation::from_images(a), Permutation::from_images(b))
}

/// Order-preserving shuffles: `g` maps `0..k` onto a `k`-subset and `k..n`
/// onto its complement, both increasingly.
pub fn young_coset_reps(n: usize, k: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut subset = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, subset: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if subset.len() == k {
            let mut images = Vec::with_capacity(n);
            images.extend(subset.iter().map(|&i| i as u8));
            images.extend((0..n).filter(|i| !subset.contains(i)).map(|i| i as u8));
            out.push(Permutation::from_images(images));
            return;
        }
        for i in start..n {
            if n - i < k - subset.len() {
                break;
            }
            subset.push(i);
            rec(n, k, i + 1, subset, out);
            subset.pop();
        }
    }
    rec(n, k, 0, &mut subset, &mut out);
    out
}

fn ad_component<S: Scalar>(
    alg: &FrobeniusAlgebra,
    h: &Permutation,
    sigma: &Permutation,
    t: &TensorElement<S>,
) -> (Permutation, TensorElement<S>) {
    let s2 = sigma.conjugate_by(h);
    let orbits = sigma.orbits();
    let idx2 = s2.orbit_index();
    // pos[j]: canonical index of h(O_j)
    let pos: Vec<usize> = orbits.iter().map(|o| idx2[h.apply(o[0])]).collect();
    let mut order = vec![0usize; pos.len()];
    for (j, &p) in pos.iter().enumerate() {
        order[p] = j;
    }
    let identity_order = order.iter().enumerate().all(|(a, &b)| a == b);
    let mut t2 = TensorElement::zero(t.arity);
    for (key, c) in &t.terms {
        if identity_order {
            t2.add_term(key.clone(), c.clone());
            continue;
        }
        let nk: Vec<u16> = order.iter().map(|&j| key[j]).collect();
        let c = if alg.reorder_sign(key, &order) { -c.clone() } else { c.clone() };
        t2.add_term(nk, c);
    }
    (s2, t2)
}

/// Combinatorial data of one `(σ, τ)` pair.
struct PairPlan {
    st: Permutation,
    /// concatenated input positions in block-grouped order
    gather: Vec<usize>,
    /// (inputs, defect, outputs) per joint orbit
    blocks: Vec<(usize, usize, usize)>,
    /// for the concatenated block outputs, the inverse of the target orbit order
    out_order: Vec<usize>,
    out_identity: bool,
    /// `(d(σ) + d(τ) − d(στ)) / 2`
    half_defect: usize,
}

fn plan_pair(sigma: &Permutation, tau: &Permutation) -> Result<PairPlan> {
    let st = sigma.compose(tau);
    let os = sigma.orbit_index();
    let ot = tau.orbit_index();
    let ost = st.orbit_index();
    let ls = sigma.num_cycles();
    let lt = tau.num_cycles();
    let lst = st.num_cycles();
    let blocks = joint_orbits(sigma, tau);
    let mut gather = Vec::with_capacity(ls + lt);
    let mut out_concat = Vec::with_capacity(lst);
    let mut plans = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let mut s_orbs: Vec<usize> = b.iter().map(|&i| os[i]).collect();
        s_orbs.sort_unstable();
        s_orbs.dedup();
        let mut t_orbs: Vec<usize> = b.iter().map(|&i| ot[i]).collect();
        t_orbs.sort_unstable();
        t_orbs.dedup();
        let mut st_orbs: Vec<usize> = b.iter().map(|&i| ost[i]).collect();
        st_orbs.sort_unstable();
        st_orbs.dedup();
        let twice = (b.len() + 2) as i64 - (s_orbs.len() + t_orbs.len() + st_orbs.len()) as i64;
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::BadDefect(format!("{twice}/2")));
        }
        gather.extend(s_orbs.iter().copied());
        gather.extend(t_orbs.iter().map(|&j| ls + j));
        plans.push((s_orbs.len() + t_orbs.len(), (twice / 2) as usize, st_orbs.len()));
        out_concat.extend(st_orbs);
    }
    // block outputs are concatenated; position p holds orbit out_concat[p]
    let mut out_order = vec![0usize; lst];
    for (p, &o) in out_concat.iter().enumerate() {
        out_order[o] = p;
    }
    let out_identity = out_order.iter().enumerate().all(|(a, &b)| a == b);
    let ds = sigma.defect();
    let dt = tau.defect();
    let dst = st.defect();
    Ok(PairPlan { st, gather, blocks: plans, out_order, out_identity, half_defect: (ds + dt - dst) / 2 })
}

type BlockMemo = HashMap<(Vec<u16>, usize, usize), Vec<(Vec<u16>, Q)>>;

fn block_value(
    alg: &FrobeniusAlgebra,
    inputs: &[u16],
    defect: usize,
    k: usize,
    transfer: TransferSign,
    memo: &mut BlockMemo,
) -> Vec<(Vec<u16>, Q)> {
    let key = (inputs.to_vec(), defect, k);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut x: AlgebraElement<Q> = alg.element(inputs[0] as usize);
    for &i in &inputs[1..] {
        if x.is_zero() {
            break;
        }
        x = alg.multiply_by_basis(&x, i as usize);
    }
    let e = alg.euler();
    for _ in 0..defect {
        if x.is_zero() {
            break;
        }
        x = alg.multiply(&x, e);
    }
    let mut flip = false;
    if transfer == TransferSign::Negated {
        flip = (defect + k - 1) % 2 == 1;
    }
    let mut out = Vec::new();
    if !x.is_zero() {
        let t = alg.tau_push(k, &x);
        for (kk, c) in t.terms {
            out.push((kk, if flip { -c } else { c }));
        }
    }
    memo.insert(key, out.clone());
    out
}

fn pair_product<S: Scalar>(
    alg: &FrobeniusAlgebra,
    plan: &PairPlan,
    a: &TensorElement<S>,
    b: &TensorElement<S>,
    rule: &ProductRule,
    memo: &mut BlockMemo,
) -> TensorElement<S> {
    let mut out = TensorElement::zero(plan.st.num_cycles());
    let eps = plan.half_defect as i64 * (alg.d as i64 / 2);
    let factor = S::from_q(&powi(&rule.twist, eps));
    if factor.is_zero() {
        return out;
    }
    let mut concat: Vec<u16> = Vec::with_capacity(plan.gather.len());
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            concat.clear();
            concat.extend_from_slice(ka);
            concat.extend_from_slice(kb);
            let grouped: Vec<u16> = plan.gather.iter().map(|&p| concat[p]).collect();
            let sign_in = alg.reorder_sign(&concat, &plan.gather);
            // expand block by block
            let mut partial: Vec<(Vec<u16>, Q)> = vec![(Vec::new(), if sign_in { -Q::one() } else { Q::one() })];
            let mut offset = 0;
            for &(ni, g, k) in &plan.blocks {
                let vals = block_value(alg, &grouped[offset..offset + ni], g, k, rule.transfer, memo);
                offset += ni;
                if vals.is_empty() {
                    partial.clear();
                    break;
                }
                let mut next = Vec::with_capacity(partial.len() * vals.len());
                for (pk, pc) in &partial {
                    for (vk, vc) in &vals {
                        let mut nk = pk.clone();
                        nk.extend_from_slice(vk);
                        next.push((nk, pc * vc));
                    }
                }
                partial = next;
            }
            if partial.is_empty() {
                continue;
            }
            let cab = ca.mul_ref(cb).mul_ref(&factor);
            for (ok, oc) in partial {
                let (fk, neg) = if plan.out_identity {
                    (ok, false)
                } else {
                    let fk: Vec<u16> = plan.out_order.iter().map(|&p| ok[p]).collect();
                    let neg = alg.reorder_sign(&ok, &plan.out_order);
                    (fk, neg)
                };
                let c = cab.mul_ref(&S::from_q(&oc));
                out.add_term(fk, if neg { -c } else { c });
            }
        }
    }
    out
}

/// Product of single components `(σ, a) ∘ (τ, b)`.
pub fn product_components<S: Scalar>(
    alg: &FrobeniusAlgebra,
    sigma: &Permutation,
    a: &TensorElement<S>,
    tau: &Permutation,
    b: &TensorElement<S>,
    rule: &ProductRule,
) -> Result<(Permutation, TensorElement<S>)> {
    let plan = plan_pair(sigma, tau)?;
    let mut memo = BlockMemo::new();
    let t = pair_product(alg, &plan, a, b, rule, &mut memo);
    Ok((plan.st, t))
}

/// General product over the full supports.
pub fn product<S: Scalar>(alg: &FrobeniusAlgebra, x: &OrbElement<S>, y: &OrbElement<S>, rule: &ProductRule) -> Result<OrbElement<S>> {
    if x.n != y.n {
        return Err(Error::SizeMismatch(x.n, y.n));
    }
    let xs: Vec<_> = x.terms.iter().collect();
    let parts: Vec<Result<OrbElement<S>>> = xs
        .par_iter()
        .map(|(sigma, a)| {
            let mut memo = BlockMemo::new();
            let mut acc = OrbElement::zero(x.n);
            for (tau, b) in &y.terms {
                let plan = plan_pair(sigma, tau)?;
                let t = pair_product(alg, &plan, a, b, rule, &mut memo);
                acc.add_component(plan.st, t);
            }
            Ok(acc)
        })
        .collect();
    let mut r = OrbElement::zero(x.n);
    for p in parts {
        r.add_assign(&p?);
    }
    Ok(r)
}

/// Components of the product of two invariant elements at the canonical
/// conjugacy class representatives only.
pub fn product_on_classes<S: Scalar>(
    alg: &FrobeniusAlgebra,
    x: &OrbElement<S>,
    y: &OrbElement<S>,
    rule: &ProductRule,
) -> Result<Vec<(Permutation, TensorElement<S>)>> {
    if x.n != y.n {
        return Err(Error::SizeMismatch(x.n, y.n));
    }
    if x.is_zero() || y.is_zero() {
        return Ok(Vec::new());
    }
    let reps: Vec<Permutation> = partitions(x.n).iter().map(|l| class_representative(l)).collect();
    let comps: Vec<Result<(Permutation, TensorElement<S>)>> = reps
        .par_iter()
        .map(|pi| {
            let mut memo = BlockMemo::new();
            let mut acc = TensorElement::zero(pi.num_cycles());
            for (sigma, a) in &x.terms {
                let tau = sigma.inverse().compose(pi);
                if let Some(b) = y.terms.get(&tau) {
                    let plan = plan_pair(sigma, &tau)?;
                    acc.add_assign(&pair_product(alg, &plan, a, b, rule, &mut memo));
                }
            }
            Ok((pi.clone(), acc))
        })
        .collect();
    let mut out = Vec::new();
    for c in comps {
        let (pi, t) = c?;
        if !t.is_zero() {
            out.push((pi, t));
        }
    }
    Ok(out)
}

/// Product of two invariant elements: only one component per conjugacy class
/// is convolved, the rest follows by `ad`.
pub fn product_invariant<S: Scalar>(
    alg: &FrobeniusAlgebra,
    x: &OrbElement<S>,
    y: &OrbElement<S>,
    rule: &ProductRule,
) -> Result<OrbElement<S>> {
    let n = x.n;
    let mut r = OrbElement::zero(n);
    for (pi, t) in product_on_classes(alg, x, y, rule)? {
        for g in symmetric_group(n) {
            let target = pi.conjugate_by(g);
            if r.terms.contains_key(&target) {
                continue;
            }
            let (s2, t2) = ad_component(alg, g, &pi, &t);
            r.terms.insert(s2, t2);
        }
    }
    Ok(r)
}

/// `ε(σ, τ) = (d/2)·(d(σ) + d(τ) − d(στ))/2`.
pub fn epsilon(alg: &FrobeniusAlgebra, sigma: &Permutation, tau: &Permutation) -> i64 {
    let h = (sigma.defect() + tau.defect() - sigma.compose(tau).defect()) / 2;
    h as i64 * alg.d as i64 / 2
}

/// JSON form: `[{perm: [1-based one-line], payload: [{indices, coeff}]}]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComponentJson {
    pub perm: Vec<usize>,
    pub payload: Vec<PayloadTermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PayloadTermJson {
    /// 0-based basis indices, one per orbit
    pub indices: Vec<u16>,
    pub coeff: String,
}

impl OrbElement<Q> {
    pub fn to_json(&self) -> Vec<ComponentJson> {
        self.terms
            .iter()
            .map(|(p, t)| ComponentJson {
                perm: p.one_line(),
                payload: t
                    .terms
                    .iter()
                    .map(|(k, c)| PayloadTermJson { indices: k.clone(), coeff: c.exact_repr() })
                    .collect(),
            })
            .collect()
    }

    pub fn from_json(alg: &FrobeniusAlgebra, n: usize, comps: &[ComponentJson]) -> Result<Self> {
        let mut r = Self::zero(n);
        for c in comps {
            if c.perm.len() != n {
                return Err(Error::SizeMismatch(c.perm.len(), n));
            }
            let p = Permutation::from_one_line(&c.perm)?;
            let arity = p.num_cycles();
            let mut t = TensorElement::zero(arity);
            for term in &c.payload {
                if term.indices.len() != arity {
                    return Err(Error::ArityMismatch(term.indices.len(), arity));
                }
                if term.indices.iter().any(|&i| i as usize >= alg.dim()) {
                    return Err(Error::Parse(format!("basis index out of range in {:?}", term.indices)));
                }
                let v = parse_q(&term.coeff).ok_or_else(|| Error::Parse(format!("bad rational {:?}", term.coeff)))?;
                t.add_term(term.indices.clone(), v);
            }
            r.add_component(p, t);
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    #[test]
    fn transposition_squares_to_identity_on_point() {
        let a = FrobeniusAlgebra::builtin("point").unwrap();
        let t = OrbElement::<Q>::group_element(&a, &perm(&[2, 1]), q(1));
        let p = product(&a, &t, &t, &ProductRule::standard()).unwrap();
        assert_eq!(p, OrbElement::group_element(&a, &Permutation::identity(2), q(1)));
    }

    #[test]
    fn three_cycle_square_carries_euler_class() {
        let a = FrobeniusAlgebra::builtin("P2").unwrap();
        let c = perm(&[2, 3, 1]);
        let x = OrbElement::<Q>::group_element(&a, &c, q(1));
        for t in [q(1), q(-1), q(64)] {
            let p = product(&a, &x, &x, &ProductRule::deformed(t.clone())).unwrap();
            let mut expect = OrbElement::zero(3);
            let mut payload = TensorElement::zero(1);
            payload.add_term(vec![2], q(3) * &t);
            expect.add_component(perm(&[3, 1, 2]), payload);
            assert_eq!(p, expect);
        }
    }

    #[test]
    fn ad_transports_orbits() {
        let a = FrobeniusAlgebra::builtin("P2").unwrap();
        let mut x = OrbElement::<Q>::zero(3);
        let mut t = TensorElement::zero(2);
        t.add_term(vec![1, 2], q(1));
        x.add_component(perm(&[2, 1, 3]), t);
        let y = x.ad(&a, &perm(&[1, 3, 2]));
        let mut t2 = TensorElement::zero(2);
        t2.add_term(vec![1, 2], q(1));
        let mut expect = OrbElement::zero(3);
        expect.add_component(perm(&[3, 2, 1]), t2);
        assert_eq!(y, expect);
    }

    #[test]
    fn coset_reps_count() {
        assert_eq!(young_coset_reps(5, 2).len(), 10);
        assert_eq!(young_coset_reps(4, 0).len(), 1);
    }

    #[test]
    fn restrict_drops_long_cycles() {
        let a = FrobeniusAlgebra::builtin("point").unwrap();
        let x = OrbElement::<Q>::group_element(&a, &perm(&[2, 3, 1]), q(1));
        assert!(x.restrict(1).unwrap().is_zero());
        assert!(x.restrict(5).is_err());
    }
}

#[cfg(test)]
mod assoc_tests {
    use super::*;
    use crate::scalar::q;

    // deterministic pseudo-random homogeneous-ish element
    fn sample(alg: &FrobeniusAlgebra, n: usize, seed: u64) -> OrbElement<Q> {
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) as usize
        };
        let mut x = OrbElement::zero(n);
        let g = symmetric_group(n);
        for _ in 0..3 {
            let sigma = g[next() % g.len()].clone();
            let l = sigma.num_cycles();
            let mut t = TensorElement::zero(l);
            let key: Vec<u16> = (0..l).map(|_| (next() % alg.dim()) as u16).collect();
            t.add_term(key, q((next() % 5) as i64 + 1));
            x.add_component(sigma, t);
        }
        x
    }

    #[test]
    fn associative_on_samples() {
        for name in ["P2", "odd", "point"] {
            let a = FrobeniusAlgebra::builtin(name).unwrap();
            for t in [q(1), q(-1), q(2)] {
                let rule = ProductRule::deformed(t);
                for seed in 0..6 {
                    let x = sample(&a, 3, seed);
                    let y = sample(&a, 3, seed + 100);
                    let z = sample(&a, 3, seed + 200);
                    let l = product(&a, &product(&a, &x, &y, &rule).unwrap(), &z, &rule).unwrap();
                    let r = product(&a, &x, &product(&a, &y, &z, &rule).unwrap(), &rule).unwrap();
                    assert_eq!(l, r, "{name} seed {seed}");
                }
            }
        }
    }
}
