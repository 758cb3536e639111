//! The deformation parameter `t`, the deformed Heisenberg modes, `ζ_t`, the
//! maps `Θ`, `Θ̃`, and the Hilbert-scheme side structures transported to the
//! symmetric-product Fock space.

use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{enumerate, enumerate_up_to, mode, symbolic, CoordVector, FockSpace, PartitionFunction};
use crate::frobenius::{AlgebraElement, FrobeniusAlgebra};
use crate::jucys::{eta_class, xi_class, Classes, HbarSeries};
use crate::orbiring::{product_invariant, OrbElement, ProductRule};
use crate::report::{coord_diff, orb_diff, Case};
use crate::scalar::{powi, q, GaussQ, Scalar, Q};
use crate::symgroup::{partitions, z_lambda};
use crate::vertexw::{normal_mode, GeneralizedPartition, OperatorExpr};

/// `t` together with a fixed rational cube root `c = t^{1/3}`, and optionally
/// a sixth root `s` (needed by `ζ_t`).
#[derive(Clone, Debug, PartialEq)]
pub struct DeformParam {
    cube_root: Q,
    sixth_root: Option<Q>,
}

impl DeformParam {
    pub fn from_cube_root(c: Q) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(DeformParam { cube_root: c, sixth_root: None })
    }

    pub fn from_sixth_root(s: Q) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(DeformParam { cube_root: &s * &s, sixth_root: Some(s) })
    }

    /// `t = 1`.
    pub fn one() -> Self {
        DeformParam { cube_root: Q::one(), sixth_root: Some(Q::one()) }
    }

    /// `t = −1` with `t^{1/3} = −1`.
    pub fn minus_one() -> Self {
        DeformParam { cube_root: -Q::one(), sixth_root: None }
    }

    pub fn t(&self) -> Q {
        powi(&self.cube_root, 3)
    }

    pub fn cube_root(&self) -> &Q {
        &self.cube_root
    }

    pub fn sixth_root(&self) -> Option<&Q> {
        self.sixth_root.as_ref()
    }

    pub fn rule(&self) -> ProductRule {
        ProductRule::deformed(self.t())
    }

    /// `ᵗ𝔭ₙ = t^{d/3} 𝔭ₙ` for `n ≤ 0`, `t^{−d/6} 𝔭ₙ` for `n > 0`.
    pub fn mode_scale(&self, d: u32, n: i64) -> Q {
        if n <= 0 {
            powi(&self.cube_root, d as i64)
        } else {
            powi(&self.cube_root, -(d as i64) / 2)
        }
    }

    /// `t^{d/6}`, the central charge of the deformed modes.
    pub fn central(&self, d: u32) -> Q {
        powi(&self.cube_root, d as i64 / 2)
    }
}

impl DeformParam {
    /// `t^{F^σ/2} = s^{3d·d(σ)/2}`, the scaling of `ζ_t` on a component of
    /// defect `d(σ)`; needs the sixth root.
    pub fn zeta_scale(&self, d: u32, defect: usize) -> Result<Q> {
        let s = self.sixth_root.as_ref().ok_or_else(|| Error::Unsupported("ζ_t needs a rational sixth root of t".into()))?;
        Ok(powi(s, (3 * d as i64 / 2) * defect as i64))
    }

    /// `t^{d/2}`.
    pub fn half_power(&self, d: u32) -> Q {
        powi(&self.cube_root, 3 * d as i64 / 2)
    }
}

/// `ζ_t`: scales the `σ`-component by `t^{F^σ/2}`, turning `∘_t` into `∘`.
pub fn zeta(param: &DeformParam, alg: &FrobeniusAlgebra, x: &OrbElement<Q>) -> Result<OrbElement<Q>> {
    let mut out = OrbElement::zero(x.n);
    for (sigma, t) in &x.terms {
        out.add_component(sigma.clone(), t.scale(&param.zeta_scale(alg.d, sigma.defect())?));
    }
    Ok(out)
}

/// `Θ`: a `𝔭`-monomial goes to the `a`-monomial with the same indices, so on
/// coordinates it is the identity.
pub fn theta(v: &CoordVector<Q>) -> CoordVector<Q> {
    v.clone()
}

/// `√−1^{−e}` for the exponent `e = Σ nₐ − k` of a monomial.
fn i_power(e: i64) -> GaussQ {
    match e.rem_euclid(4) {
        0 => GaussQ::new(Q::one(), Q::zero()),
        1 => GaussQ::new(Q::zero(), -Q::one()),
        2 => GaussQ::new(-Q::one(), Q::zero()),
        _ => GaussQ::new(Q::zero(), Q::one()),
    }
}

fn monomial_exponent(p: &PartitionFunction) -> i64 {
    p.factors().iter().map(|&(_, r)| r as i64 - 1).sum()
}

/// `Θ̃`: scales `𝔭_{−n₁}⋯𝔭_{−n_k}|0⟩` by `√−1^{−(Σ nₐ − k)}` before `Θ`.
pub fn theta_tilde(v: &CoordVector<Q>) -> CoordVector<GaussQ> {
    let mut out = CoordVector::zero();
    for (p, c) in &v.terms {
        out.add_term(p.clone(), i_power(monomial_exponent(p)) * GaussQ::new(c.clone(), Q::zero()));
    }
    out
}

/// `Θ̃⁻¹` on Gaussian coordinates.
pub fn theta_tilde_inverse(v: &CoordVector<GaussQ>) -> CoordVector<GaussQ> {
    let mut out = CoordVector::zero();
    for (p, c) in &v.terms {
        out.add_term(p.clone(), i_power(-monomial_exponent(p)) * c.clone());
    }
    out
}

/// The product on `ℋ_X` forced by requiring `Θ` to be a ring isomorphism
/// from `∘₋₁`: `Θ(Θ⁻¹x ∘₋₁ Θ⁻¹y)` on level-`n` coordinates. No geometric
/// Hilbert scheme data enters.
pub fn hilbert_product<S: Scalar>(fs: &FockSpace<S>, x: &CoordVector<S>, y: &CoordVector<S>, n: usize) -> Result<CoordVector<S>> {
    let rule = DeformParam::minus_one().rule();
    let z = product_invariant(fs.alg, &fs.realize_coords(x, n), &fs.realize_coords(y, n), &rule)?;
    if z.is_zero() {
        return Ok(CoordVector::zero());
    }
    fs.coordinates(&z, false)
}

/// `aₘ(α) = Θ ∘ ᵗ𝔭ₘ(α) ∘ Θ⁻¹` at `t = −1`.
pub fn hilbert_mode(alg: &FrobeniusAlgebra, m: i64, alpha: &AlgebraElement<Q>, v: &CoordVector<Q>) -> CoordVector<Q> {
    symbolic::mode(alg, m, alpha, v).scale(&DeformParam::minus_one().mode_scale(alg.d, m))
}

/// `−½ Σ_{n,m>0} (𝔭_{−n−m}𝔭_n𝔭_m + t^{d/2} 𝔭_{−n}𝔭_{−m}𝔭_{n+m})(τ_{3*}1_X)`
/// with undeformed modes.
pub fn cubic_expanded(alg: &FrobeniusAlgebra, param: &DeformParam) -> OperatorExpr {
    let twist = param.half_power(alg.d);
    OperatorExpr::single(
        3,
        0,
        alg.tau_push(3, &alg.unit_element()),
        Arc::new(move |l: &GeneralizedPartition| {
            if l.parts().contains(&0) {
                return Q::zero();
            }
            let base = -Q::one() / l.mult_factorial();
            match l.num_creation() {
                1 => base,
                2 => base * &twist,
                _ => Q::zero(),
            }
        }),
    )
}

/// Coefficients `[n][k]` of `zⁿħᵏ` in
/// `exp(Σ_r (−ħ)^{r−1}/r · 𝔭_{−r}(1 + ħL) z^r)|0⟩`, through `z^z_order`, `ħ^hbar_order`.
pub fn chern_generating(alg: &FrobeniusAlgebra, l_class: &AlgebraElement<Q>, hbar_order: usize, z_order: usize) -> Vec<Vec<CoordVector<Q>>> {
    let unit = alg.unit_element::<Q>();
    let mut out = Vec::new();
    for n in 0..=z_order {
        let mut level = vec![CoordVector::zero(); hbar_order + 1];
        for lambda in partitions(n) {
            let mut state = vec![CoordVector::zero(); hbar_order + 1];
            state[0] = CoordVector::vacuum();
            for &r in &lambda {
                let sign = if (r - 1) % 2 == 1 { -Q::one() } else { Q::one() };
                let mut next = vec![CoordVector::zero(); hbar_order + 1];
                for (k, v) in state.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    if k + r - 1 <= hbar_order {
                        next[k + r - 1].add_assign(&symbolic::mode(alg, -(r as i64), &unit, v).scale(&sign));
                    }
                    if k + r <= hbar_order {
                        next[k + r].add_assign(&symbolic::mode(alg, -(r as i64), l_class, v).scale(&sign));
                    }
                }
                state = next;
            }
            let z = Q::one() / z_lambda(&lambda);
            for (k, v) in state.iter().enumerate() {
                level[k].add_assign(&v.scale(&z));
            }
        }
        out.push(level);
    }
    out
}

/// `ε_n(1 + ħL, ħ) = ∏ᵢ (1 + ħ(L^{(i)} − ξᵢ))` under the rule of `classes`.
pub fn epsilon_of_chern(classes: &Classes<Q>, l_class: &AlgebraElement<Q>, n: usize, order: usize) -> Result<HbarSeries<Q>> {
    let alg = classes.alg;
    let mut r = HbarSeries::constant(OrbElement::unit(alg, n), order);
    for i in 1..=n {
        let lin = OrbElement::slot(alg, l_class, i - 1, n).sub(&xi_class(alg, i, n)?);
        r = r.mul(alg, &HbarSeries::linear(OrbElement::unit(alg, n), lin, order), &classes.rule)?;
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Checks

fn parity_sign(alg: &FrobeniusAlgebra, a: usize, b: usize) -> Q {
    if alg.is_odd(a) && alg.is_odd(b) {
        -Q::one()
    } else {
        Q::one()
    }
}

/// `[ᵗ𝔭ₘ(a), ᵗ𝔭ₙ(b)] = t^{d/6} m δ_{m,−n} (a, b)` (super bracket) on every
/// monomial whose intermediate levels all stay `≤ max_level`, with the
/// concrete induction/restriction operators.
pub fn verify_deformed_heisenberg(fs: &FockSpace<Q>, param: &DeformParam, max_mode: i64, max_level: usize) -> Vec<Case> {
    let alg = fs.alg;
    let d = alg.d;
    let modes: Vec<i64> = (-max_mode..=max_mode).filter(|&m| m != 0).collect();
    let mut jobs = Vec::new();
    for &m in &modes {
        for &n in &modes {
            for a in 0..alg.dim() {
                for b in 0..alg.dim() {
                    jobs.push((m, n, a, b));
                }
            }
        }
    }
    jobs.par_iter()
        .flat_map_iter(|&(m, n, a, b)| {
            let (x, y) = (alg.element::<Q>(a), alg.element::<Q>(b));
            let (sm, sn) = (param.mode_scale(d, m), param.mode_scale(d, n));
            let expect = if m + n == 0 { param.central(d) * q(m) * alg.pairing(&x, &y) } else { Q::zero() };
            let top = max_level as i64 + m.min(n).min(0).min(m + n);
            let levels = if top < 0 { 0..0 } else { 0..(top as usize + 1) };
            levels.flat_map(|lv| enumerate(alg, lv)).map(move |rho| {
                let v = fs.realize(&rho);
                let xy = mode(alg, m, &x, &mode(alg, n, &y, &v)).scale(&(&sm * &sn));
                let yx = mode(alg, n, &y, &mode(alg, m, &x, &v)).scale(&(&sm * &sn * parity_sign(alg, a, b)));
                let lhs = xy.sub(&yx);
                let rhs = v.scale(&expect);
                Case::check(
                    format!("[tp_{m}({}), tp_{n}({})] on {}", alg.label(a), alg.label(b), rho.display(alg)),
                    orb_diff(alg, &lhs, &rhs),
                )
            }).collect::<Vec<_>>()
        })
        .collect()
}

/// Sample of basis pairs at level `n`: all pairs up to `limit`, otherwise
/// every `stride`-th pair in canonical order.
fn pairs_at(alg: &FrobeniusAlgebra, n: usize, limit: usize) -> Vec<(PartitionFunction, PartitionFunction)> {
    let basis = enumerate(alg, n);
    let all: Vec<_> = basis.iter().flat_map(|a| basis.iter().map(move |b| (a.clone(), b.clone()))).collect();
    if all.len() <= limit {
        return all;
    }
    let stride = all.len().div_ceil(limit);
    all.into_iter().step_by(stride).collect()
}

/// `ζ_t(x ∘_t y) = ζ_t(x) ∘ ζ_t(y)` on basis pairs, `n ≤ max_n`.
pub fn verify_zeta(fs: &FockSpace<Q>, param: &DeformParam, max_n: usize, max_pairs: usize) -> Result<Vec<Case>> {
    let alg = fs.alg;
    let rule_t = param.rule();
    let rule_1 = ProductRule::standard();
    let jobs: Vec<(PartitionFunction, PartitionFunction)> = (1..=max_n).flat_map(|n| pairs_at(alg, n, max_pairs)).collect();
    jobs.par_iter()
        .map(|(a, b)| {
            let (x, y) = (fs.realize(a), fs.realize(b));
            let lhs = zeta(param, alg, &product_invariant(alg, &x, &y, &rule_t)?)?;
            let rhs = product_invariant(alg, &zeta(param, alg, &x)?, &zeta(param, alg, &y)?, &rule_1)?;
            Ok(Case::check(format!("zeta t={} on {} * {}", param.t(), a.display(alg), b.display(alg)), orb_diff(alg, &lhs, &rhs)))
        })
        .collect()
}

/// The expanded cubic form against `∘_t`-multiplication by `O¹(1_X)` and
/// against `−(1/6):ᵗ𝔭³:₀(τ_*1_X)`, monomial by monomial.
pub fn verify_cubic_expanded(classes: &Classes<Q>, fs: &FockSpace<Q>, param: &DeformParam, max_n: usize) -> Vec<Case> {
    let alg = classes.alg;
    let expanded = cubic_expanded(alg, param);
    let normal = normal_mode(alg, 3, 0, &alg.unit_element()).scale(&(-Q::one() / q(6))).deformed(param, alg.d);
    let basis: Vec<PartitionFunction> = (0..=max_n).flat_map(|n| enumerate(alg, n)).collect();
    basis
        .par_iter()
        .flat_map_iter(|rho| {
            let e = expanded.apply_monomial(alg, rho);
            let nf = normal.apply_monomial(alg, rho);
            let b = classes.b_apply(&fs.realize(rho));
            let t = param.t();
            [
                Case::check(format!("t={t} expanded vs normal ordered on {}", rho.display(alg)), coord_diff(alg, &e, &nf)),
                Case::check(
                    format!("t={t} expanded vs product on {}", rho.display(alg)),
                    orb_diff(alg, &fs.realize_coords(&e, rho.norm()), &b),
                ),
            ]
        })
        .collect()
}

/// `[aₘ(α), aₙ(β)] = (−1)^{d/2} m δ_{m,−n} (α, β)` for the transported
/// operators; the surface case `d = 2` gives the minus sign.
pub fn verify_hilbert_heisenberg(alg: &FrobeniusAlgebra, max_mode: i64, max_level: usize) -> Vec<Case> {
    let central = DeformParam::minus_one().central(alg.d);
    let modes: Vec<i64> = (-max_mode..=max_mode).filter(|&m| m != 0).collect();
    let mut cases = Vec::new();
    for &m in &modes {
        for &n in &modes {
            for a in 0..alg.dim() {
                for b in 0..alg.dim() {
                    let (x, y) = (alg.element::<Q>(a), alg.element::<Q>(b));
                    let expect = if m + n == 0 { &central * q(m) * alg.pairing(&x, &y) } else { Q::zero() };
                    let mut residual = None;
                    for rho in enumerate_up_to(alg, max_level) {
                        let v = CoordVector::single(rho.clone(), Q::one());
                        let xy = hilbert_mode(alg, m, &x, &hilbert_mode(alg, n, &y, &v));
                        let yx = hilbert_mode(alg, n, &y, &hilbert_mode(alg, m, &x, &v)).scale(&parity_sign(alg, a, b));
                        let r = coord_diff(alg, &xy.sub(&yx), &v.scale(&expect));
                        if r.is_some() {
                            residual = r.map(|r| format!("on {}: {r}", rho.display(alg)));
                            break;
                        }
                    }
                    cases.push(Case::check(format!("[a_{m}({}), a_{n}({})]", alg.label(a), alg.label(b)), residual));
                }
            }
        }
    }
    cases
}

/// `Θ̃(x ∘ y) = Θ̃x ⋆ Θ̃y` with `⋆` the transported Hilbert product, over
/// Gaussian rationals, on basis pairs at levels `≤ max_n`. Only meaningful
/// for surfaces (`d = 2`), where `∘₋₁` differs from `∘` by `√−1` powers.
pub fn verify_theta_tilde(alg: &FrobeniusAlgebra, max_n: usize, max_pairs: usize) -> Result<Vec<Case>> {
    let fs = FockSpace::<Q>::new(alg);
    let gs = FockSpace::<GaussQ>::new(alg);
    let rule = ProductRule::standard();
    let jobs: Vec<(PartitionFunction, PartitionFunction)> = (1..=max_n).flat_map(|n| pairs_at(alg, n, max_pairs)).collect();
    jobs.par_iter()
        .map(|(a, b)| {
            let n = a.norm();
            let xy = product_invariant(alg, &fs.realize(a), &fs.realize(b), &rule)?;
            let xy = if xy.is_zero() { CoordVector::zero() } else { fs.coordinates(&xy, false)? };
            let lhs = theta_tilde(&xy);
            let ta = theta_tilde(&CoordVector::single(a.clone(), Q::one()));
            let tb = theta_tilde(&CoordVector::single(b.clone(), Q::one()));
            let rhs = hilbert_product(&gs, &ta, &tb, n)?;
            Ok(Case::check(format!("theta~ on {} * {}", a.display(alg), b.display(alg)), coord_diff(alg, &lhs, &rhs)))
        })
        .collect()
}

/// Unit, commutativity and associativity of the transported Hilbert product
/// on monomials built from the classes `subset`, levels `≤ max_n`.
pub fn verify_hilbert_ring(alg: &FrobeniusAlgebra, subset: &[usize], max_n: usize, max_triples: usize) -> Result<Vec<Case>> {
    let fs = FockSpace::<Q>::new(alg);
    let mut jobs = Vec::new();
    for n in 1..=max_n {
        let basis: Vec<PartitionFunction> =
            enumerate(alg, n).into_iter().filter(|p| p.factors().iter().all(|f| subset.contains(&(f.0 as usize)))).collect();
        let mut triples = Vec::new();
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    triples.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
        let stride = triples.len().div_ceil(max_triples).max(1);
        jobs.extend(triples.into_iter().step_by(stride));
    }
    jobs.par_iter()
        .map(|(a, b, c)| {
            let n = a.norm();
            let (x, y, z) = (
                CoordVector::single(a.clone(), Q::one()),
                CoordVector::single(b.clone(), Q::one()),
                CoordVector::single(c.clone(), Q::one()),
            );
            let unit = fs.p_rho_coords(&PartitionFunction::empty(), n);
            let xy = hilbert_product(&fs, &x, &y, n)?;
            let mut residual = coord_diff(alg, &hilbert_product(&fs, &unit, &x, n)?, &x).map(|r| format!("unit: {r}"));
            if residual.is_none() {
                let sign = if a.is_odd(alg) && b.is_odd(alg) { -Q::one() } else { Q::one() };
                residual = coord_diff(alg, &xy, &hilbert_product(&fs, &y, &x, n)?.scale(&sign)).map(|r| format!("commutative: {r}"));
            }
            if residual.is_none() {
                let left = hilbert_product(&fs, &xy, &z, n)?;
                let right = hilbert_product(&fs, &x, &hilbert_product(&fs, &y, &z, n)?, n)?;
                residual = coord_diff(alg, &left, &right).map(|r| format!("associative: {r}"));
            }
            Ok(Case::check(format!("hilbert ({})({})({})", a.display(alg), b.display(alg), c.display(alg)), residual))
        })
        .collect()
}

/// The generating function of the total Chern classes of tautological
/// bundles against `ε_n(1 + ħL, ħ)` in the ring of `classes`, through
/// `z^z_order`, `ħ^hbar_order`; and its `ħ = −1` specialisation against
/// `η_n(1 − L)`.
pub fn verify_chern(classes: &Classes<Q>, fs: &FockSpace<Q>, l_class: &AlgebraElement<Q>, hbar_order: usize, z_order: usize) -> Result<Vec<Case>> {
    let alg = classes.alg;
    let gen = chern_generating(alg, l_class, hbar_order, z_order);
    let mut cases = Vec::new();
    for (n, level) in gen.iter().enumerate() {
        if n == 0 {
            let r = coord_diff(alg, &level[0], &CoordVector::vacuum());
            cases.push(Case::check("chern z^0", r));
            continue;
        }
        let series = epsilon_of_chern(classes, l_class, n, n)?;
        for (k, expect) in level.iter().enumerate() {
            let c = series.coefficient(k);
            let got = if c.is_zero() { CoordVector::zero() } else { fs.coordinates(&c, false)? };
            cases.push(Case::check(format!("chern z^{n} hbar^{k}"), coord_diff(alg, &got, expect)));
        }
        let dual = series.evaluate(&-Q::one());
        let one_minus_l = alg.unit_element::<Q>().sub(l_class);
        cases.push(Case::check(format!("dual chern z^{n}"), orb_diff(alg, &dual, &eta_class(&one_minus_l, n))));
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_tilde_factors() {
        let alg = FrobeniusAlgebra::builtin("P2").unwrap();
        let p = PartitionFunction::parse(&alg, "1:1 x:3").unwrap();
        let v = theta_tilde(&CoordVector::single(p.clone(), Q::one()));
        assert_eq!(v.terms[&p], GaussQ::new(-Q::one(), Q::zero()));
        let one = PartitionFunction::parse(&alg, "x:1").unwrap();
        assert_eq!(theta_tilde(&CoordVector::single(one.clone(), Q::one())).terms[&one], GaussQ::new(Q::one(), Q::zero()));
        let w = theta_tilde_inverse(&theta_tilde(&CoordVector::single(p.clone(), q(3))));
        assert_eq!(w.terms[&p], GaussQ::new(q(3), Q::zero()));
    }

    #[test]
    fn deformed_bracket_with_s_two() {
        // [ᵗ𝔭₁(x), ᵗ𝔭₋₁(x)] = t^{d/6}(x, x) = s² = 4 on P2
        let alg = FrobeniusAlgebra::builtin("P2").unwrap();
        let p = DeformParam::from_sixth_root(q(2)).unwrap();
        assert_eq!(p.central(alg.d), q(4));
        let fs = FockSpace::new(&alg);
        assert!(verify_deformed_heisenberg(&fs, &p, 1, 2).iter().all(|c| c.pass));
    }

    #[test]
    fn hilbert_bracket_sign() {
        let alg = FrobeniusAlgebra::builtin("P2").unwrap();
        let x = alg.element::<Q>(1);
        let v = CoordVector::vacuum();
        let r = hilbert_mode(&alg, 1, &x, &hilbert_mode(&alg, -1, &x, &v));
        assert_eq!(r, CoordVector::single(PartitionFunction::empty(), -Q::one()));
    }

    #[test]
    fn chern_low_orders() {
        let alg = FrobeniusAlgebra::builtin("P2").unwrap();
        let x = alg.element::<Q>(1);
        let g = chern_generating(&alg, &x, 3, 2);
        assert_eq!(g[0][0], CoordVector::vacuum());
        // n = 1: 𝔭₋₁(1) + ħ 𝔭₋₁(x)
        let one = PartitionFunction::parse(&alg, "1:1").unwrap();
        let xs = PartitionFunction::parse(&alg, "x:1").unwrap();
        assert_eq!(g[1][0], CoordVector::single(one, Q::one()));
        assert_eq!(g[1][1], CoordVector::single(xs, Q::one()));
        // n = 2, ħ¹: 𝔭₋₁(1)𝔭₋₁(x) − ½𝔭₋₂(1)
        let mut e = CoordVector::single(PartitionFunction::parse(&alg, "1:1 x:1").unwrap(), Q::one());
        e.add_term(PartitionFunction::parse(&alg, "1:2").unwrap(), -Q::one() / q(2));
        assert_eq!(g[2][1], e);
    }
}
