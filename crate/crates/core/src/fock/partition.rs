//! Partition-valued functions `ρ = (ρ(c))_c` on the basis of `A`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::FrobeniusAlgebra;
use crate::scalar::Q;
use crate::symgroup::{partitions, z_lambda};

/// One creation factor `𝔭_{-part}(b_class)`.
pub type Factor = (u16, u32);

fn canonical_cmp(a: &Factor, b: &Factor) -> std::cmp::Ordering {
    a.0.cmp(&b.0).then(b.1.cmp(&a.1))
}

/// A partition-valued function, stored as its factors in canonical order:
/// classes in basis order, parts weakly decreasing within a class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct PartitionFunction {
    factors: Vec<Factor>,
}

impl PartitionFunction {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts the factors; rejects repeated parts on odd classes.
    pub fn new(alg: &FrobeniusAlgebra, mut factors: Vec<Factor>) -> Result<Self> {
        factors.sort_by(canonical_cmp);
        for w in factors.windows(2) {
            if w[0] == w[1] && alg.is_odd(w[0].0 as usize) {
                return Err(Error::NotStrict(alg.label(w[0].0 as usize).to_string()));
            }
        }
        if let Some(f) = factors.iter().find(|f| f.1 == 0 || f.0 as usize >= alg.dim()) {
            return Err(Error::Parse(format!("bad factor {f:?}")));
        }
        Ok(PartitionFunction { factors })
    }

    /// From factors already in canonical order.
    pub(crate) fn from_sorted(factors: Vec<Factor>) -> Self {
        debug_assert!(factors.windows(2).all(|w| canonical_cmp(&w[0], &w[1]) != std::cmp::Ordering::Greater));
        PartitionFunction { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `‖ρ‖ = Σ_c |ρ(c)|`.
    pub fn norm(&self) -> usize {
        self.factors.iter().map(|f| f.1 as usize).sum()
    }

    /// `ℓ(ρ) = Σ_c ℓ(ρ(c))`.
    pub fn length(&self) -> usize {
        self.factors.len()
    }

    pub fn parts(&self, class: u16) -> Vec<u32> {
        self.factors.iter().filter(|f| f.0 == class).map(|f| f.1).collect()
    }

    /// Degree `Σ (|c| + d(r−1))` of `∏ 𝔭_{−r}(c)|0⟩`.
    pub fn degree(&self, alg: &FrobeniusAlgebra) -> u32 {
        self.factors.iter().map(|&(c, r)| alg.degree(c as usize) + alg.d * (r - 1)).sum()
    }

    pub fn is_odd(&self, alg: &FrobeniusAlgebra) -> bool {
        self.factors.iter().filter(|f| alg.is_odd(f.0 as usize)).count() % 2 == 1
    }

    /// `𝔭_{−r}(b_c)` applied on the left: inserts the factor at its canonical
    /// position. Returns the sign of moving it there.
    pub fn insert(&self, alg: &FrobeniusAlgebra, f: Factor) -> Option<(Self, bool)> {
        let pos = self.factors.partition_point(|g| canonical_cmp(g, &f) == std::cmp::Ordering::Less);
        let odd_f = alg.is_odd(f.0 as usize);
        if odd_f && self.factors.get(pos) == Some(&f) {
            return None;
        }
        let neg = odd_f && self.factors[..pos].iter().filter(|g| alg.is_odd(g.0 as usize)).count() % 2 == 1;
        let mut v = self.factors.clone();
        v.insert(pos, f);
        Some((PartitionFunction { factors: v }, neg))
    }

    pub fn remove_at(&self, j: usize) -> Self {
        let mut v = self.factors.clone();
        v.remove(j);
        PartitionFunction { factors: v }
    }

    /// Human-readable form, e.g. `1:1.1 x:2`; `()` for the empty function.
    pub fn display(&self, alg: &FrobeniusAlgebra) -> String {
        if self.factors.is_empty() {
            return "()".into();
        }
        let mut by: BTreeMap<u16, Vec<u32>> = BTreeMap::new();
        for &(c, r) in &self.factors {
            by.entry(c).or_default().push(r);
        }
        by.iter()
            .map(|(c, ps)| {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                format!("{}:{}", alg.label(*c as usize), parts.join("."))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(alg: &FrobeniusAlgebra, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "()" || s.is_empty() {
            return Ok(Self::empty());
        }
        let mut factors = Vec::new();
        for tok in s.split_whitespace() {
            let (label, parts) = tok.rsplit_once(':').ok_or_else(|| Error::Parse(format!("expected label:parts, got {tok:?}")))?;
            let c = alg.index_of(label).ok_or_else(|| Error::Parse(format!("unknown basis label {label:?}")))?;
            for p in parts.split('.') {
                let r: u32 = p.parse().map_err(|_| Error::Parse(format!("bad part {p:?}")))?;
                factors.push((c as u16, r));
            }
        }
        Self::new(alg, factors)
    }
}

impl fmt::Display for PartitionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.factors.iter().map(|(c, r)| format!("{c}:{r}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// All partition functions with `‖ρ‖ = n`, in canonical order.
pub fn enumerate(alg: &FrobeniusAlgebra, n: usize) -> Vec<PartitionFunction> {
    let mut types: Vec<Factor> = Vec::new();
    for c in 0..alg.dim() {
        for r in (1..=n as u32).rev() {
            types.push((c as u16, r));
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(alg: &FrobeniusAlgebra, types: &[Factor], start: usize, rem: usize, cur: &mut Vec<Factor>, out: &mut Vec<PartitionFunction>) {
        if rem == 0 {
            out.push(PartitionFunction { factors: cur.clone() });
            return;
        }
        for t in start..types.len() {
            let f = types[t];
            if f.1 as usize > rem {
                continue;
            }
            let next = if alg.is_odd(f.0 as usize) { t + 1 } else { t };
            cur.push(f);
            rec(alg, types, next, rem - f.1 as usize, cur, out);
            cur.pop();
        }
    }
    rec(alg, &types, 0, n, &mut cur, &mut out);
    out
}

/// All partition functions with `‖ρ‖ ≤ n`.
pub fn enumerate_up_to(alg: &FrobeniusAlgebra, n: usize) -> Vec<PartitionFunction> {
    (0..=n).flat_map(|k| enumerate(alg, k)).collect()
}

/// `dim H*_orb(Xⁿ/Sₙ)` from conjugacy classes: a class of cycle type
/// `1^{m_1} 2^{m_2} ⋯` contributes `∏_k dim Sym^{m_k}(A)` (super-symmetric
/// powers), each computed as the average trace of `S_{m_k}` on `A^{⊗m_k}`.
pub fn orbifold_dimension(alg: &FrobeniusAlgebra, n: usize) -> u64 {
    let a1 = (0..alg.dim()).filter(|&i| alg.is_odd(i)).count() as i64;
    let a0 = alg.dim() as i64 - a1;
    let sym_dim = |m: usize| -> Q {
        let mut s = Q::zero();
        for mu in partitions(m) {
            let mut tr = Q::one();
            for &c in &mu {
                let v = if c % 2 == 1 { a0 + a1 } else { a0 - a1 };
                tr *= Q::from_integer(v.into());
            }
            s += tr / z_lambda(&mu);
        }
        s
    };
    let mut total = Q::zero();
    for lambda in partitions(n) {
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in &lambda {
            *mult.entry(p).or_default() += 1;
        }
        let mut d = Q::one();
        for &m in mult.values() {
            d *= sym_dim(m);
        }
        total += d;
    }
    assert!(total.is_integer());
    total.to_integer().try_into().expect("dimension overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_dimension() {
        for name in ["point", "P2", "odd"] {
            let a = FrobeniusAlgebra::builtin(name).unwrap();
            for n in 0..=5 {
                assert_eq!(enumerate(&a, n).len() as u64, orbifold_dimension(&a, n), "{name} n={n}");
            }
        }
    }

    #[test]
    fn p2_counts() {
        let a = FrobeniusAlgebra::builtin("P2").unwrap();
        let c: Vec<usize> = (0..=5).map(|n| enumerate(&a, n).len()).collect();
        assert_eq!(c, vec![1, 3, 9, 22, 51, 108]);
    }

    #[test]
    fn parse_roundtrip() {
        let a = FrobeniusAlgebra::builtin("P2").unwrap();
        let p = PartitionFunction::parse(&a, "x:2 1:1.1").unwrap();
        assert_eq!(p.display(&a), "1:1.1 x:2");
        assert_eq!(p.norm(), 4);
        assert_eq!(p.length(), 3);
        assert_eq!(PartitionFunction::parse(&a, "()").unwrap(), PartitionFunction::empty());
        let o = FrobeniusAlgebra::builtin("odd").unwrap();
        assert!(matches!(PartitionFunction::parse(&o, "a:1.1"), Err(Error::NotStrict(_))));
    }
}
