//! Named verification suites over one algebra, with bound caps.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dictionary::*;
use crate::error::{Error, Result};
use crate::fock::FockSpace;
use crate::frobenius::{AlgebraElement, FrobeniusAlgebra};
use crate::jucys::*;
use crate::orbiring::ProductRule;
use crate::report::{Case, Report};
use crate::scalar::{parse_q, q, Q};
use crate::stablering::*;
use crate::symgroup::MAX_ENUMERATED;
use crate::vertexw::{omega, verify_field_forms, verify_walgebra};

pub const SUITES: &[&str] = &[
    "heisenberg",
    "jucys",
    "goulden",
    "comm",
    "eta",
    "zeromode",
    "walg",
    "universality",
    "stability",
    "generators",
    "deform",
    "dictionary",
    "chern",
];

/// Level cap for the point.
pub const CAP_POINT: usize = 8;
/// Level cap for algebras of dimension `≤ SMALL_DIM`.
pub const CAP_SMALL: usize = 6;
/// Level cap for everything else.
pub const CAP_LARGE: usize = 4;
pub const SMALL_DIM: usize = 4;

pub fn level_cap(alg: &FrobeniusAlgebra) -> usize {
    if alg.dim() == 1 {
        CAP_POINT
    } else if alg.dim() <= SMALL_DIM {
        CAP_SMALL
    } else {
        CAP_LARGE
    }
}

/// `t = s⁶` for a rational `s`, or the special value `t = −1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Deform {
    Sixth(Q),
    MinusOne,
}

impl Deform {
    pub fn param(&self) -> Result<DeformParam> {
        match self {
            Deform::Sixth(s) => DeformParam::from_sixth_root(s.clone()),
            Deform::MinusOne => Ok(DeformParam::minus_one()),
        }
    }

    /// The three values every deformed check runs at: `t ∈ {1, −1, 64}`.
    pub fn standard_set() -> Vec<Deform> {
        vec![Deform::Sixth(Q::one()), Deform::MinusOne, Deform::Sixth(q(2))]
    }
}

impl std::str::FromStr for Deform {
    type Err = Error;
    /// `t=-1`, or `s=<num/den>`, or a bare rational read as `s`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "t=-1" {
            return Ok(Deform::MinusOne);
        }
        let body = s.strip_prefix("s=").unwrap_or(s);
        parse_q(body).map(Deform::Sixth).ok_or_else(|| Error::Parse(format!("deformation `{s}`: expected `t=-1` or `s=<rational>`")))
    }
}

impl TryFrom<String> for Deform {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Deform> for String {
    fn from(d: Deform) -> String {
        match d {
            Deform::MinusOne => "t=-1".into(),
            Deform::Sixth(s) => format!("s={s}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite: String,
    /// Built-in name or path to an algebra JSON file.
    pub algebra: String,
    pub max_n: Option<usize>,
    pub max_k: Option<usize>,
    pub max_m: Option<i64>,
    pub max_pq: Option<usize>,
    pub deform: Option<Deform>,
    /// Shape-check reading for the universality suite (`literal` by default).
    pub reading: Option<String>,
    pub output: Option<String>,
    pub threads: Option<usize>,
    pub unsafe_caps: bool,
}

pub fn load_algebra(name_or_path: &str) -> Result<FrobeniusAlgebra> {
    if let Some(a) = FrobeniusAlgebra::builtin(name_or_path) {
        return Ok(a);
    }
    let src = std::fs::read_to_string(name_or_path)
        .map_err(|e| Error::InvalidAlgebra(format!("`{name_or_path}` is neither built-in ({:?}) nor readable: {e}", FrobeniusAlgebra::builtin_names())))?;
    FrobeniusAlgebra::from_json(&src)
}

struct Bounds<'a> {
    cfg: &'a SuiteConfig,
    cap: usize,
    /// Defaults shrink for algebras above `SMALL_DIM`; explicit bounds win.
    large: bool,
}

impl Bounds<'_> {
    fn n(&self, default: usize) -> Result<usize> {
        let default = if self.large { default.min(2) } else { default };
        let n = self.cfg.max_n.unwrap_or(default.min(self.cap));
        if n > self.cap && !self.cfg.unsafe_caps {
            return Err(Error::Unsupported(format!("max n {n} exceeds the cap {} for this algebra (pass --unsafe-caps to override)", self.cap)));
        }
        Ok(n)
    }

    fn k(&self, default: usize) -> usize {
        self.cfg.max_k.unwrap_or(default)
    }

    fn m(&self, default: i64) -> i64 {
        self.cfg.max_m.unwrap_or(if self.large { default.min(1) } else { default })
    }

    fn deforms(&self) -> Vec<Deform> {
        self.cfg.deform.clone().map(|d| vec![d]).unwrap_or_else(Deform::standard_set)
    }
}

fn prefixed(prefix: &str, cases: Vec<Case>) -> impl Iterator<Item = Case> + '_ {
    cases.into_iter().map(move |mut c| {
        c.id = format!("{prefix}: {}", c.id);
        c
    })
}

fn basis(alg: &FrobeniusAlgebra) -> Vec<AlgebraElement<Q>> {
    (0..alg.dim()).map(|i| alg.element(i)).collect()
}

fn even_basis(alg: &FrobeniusAlgebra) -> Vec<AlgebraElement<Q>> {
    (0..alg.dim()).filter(|&i| !alg.is_odd(i)).map(|i| alg.element(i)).collect()
}

/// Runs one suite; wall time goes to stderr only, so reports are byte-stable.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let alg = load_algebra(&cfg.algebra)?;
    let go = || run_on(cfg, &alg);
    let started = Instant::now();
    let report = match cfg.threads {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?
            .install(go),
        None => go(),
    }?;
    eprintln!("suite {} on {}: {} cases in {:.2?}", cfg.suite, alg.name, report.cases.len(), started.elapsed());
    Ok(report)
}

pub fn run_on(cfg: &SuiteConfig, alg: &FrobeniusAlgebra) -> Result<Report> {
    let b = Bounds { cfg, cap: level_cap(alg), large: alg.dim() > SMALL_DIM };
    let fs = FockSpace::<Q>::new(alg);
    let name = alg.name.as_str();
    let mut r;
    match cfg.suite.as_str() {
        "heisenberg" => {
            r = Report::new("heisenberg", "Heisenberg (super)algebra relations [p_m(a), p_n(b)] = m delta_{m,-n} (a,b) Id for the induction/restriction operators", name);
            let n = b.n(if alg.dim() <= 3 { 5 } else { 4 })?;
            r.extend(verify_deformed_heisenberg(&fs, &DeformParam::one(), b.m(3), n));
        }
        "jucys" => {
            r = Report::new("jucys", "Jucys identity for elementary symmetric functions of Jucys-Murphy elements, and the Frobenius-characteristic generating function of epsilon_n(hbar)", name);
            let n = cfg.max_n.unwrap_or(7);
            if n > MAX_ENUMERATED && !cfg.unsafe_caps {
                return Err(Error::Unsupported(format!("S_n enumeration is capped at n = {MAX_ENUMERATED}")));
            }
            r.extend(prefixed("jucys", verify_jucys_identity(n)));
            r.extend(prefixed("frobenius", verify_frobenius_generating(5)));
        }
        "goulden" => {
            r = Report::new("goulden", "Generalized Goulden cubic formula: product with O^1(1_X) equals -(1/6) times the normally ordered cubic zero mode of tau_*(1_X), for the t-deformed product", name);
            let n = b.n(if alg.dim() == 1 { 5 } else { 4 })?;
            for d in b.deforms() {
                let p = d.param()?;
                let classes = Classes::<Q>::new(alg, p.rule());
                let t = p.t();
                r.extend(prefixed(&format!("t={t} cubic"), verify_cubic(&classes, &fs, &p, n)));
                r.extend(prefixed(&format!("t={t} expanded"), verify_cubic_expanded(&classes, &fs, &p, n)));
            }
            if alg.dim() == 1 {
                r.extend(prefixed("group algebra", vec![cubic_point_oracle()]));
            }
        }
        "comm" => {
            r = Report::new("comm", "Commutator [O^k(gamma), p_{-1}(alpha)] = (ad b)^k p_{-1}(gamma alpha) for the t-deformed product", name);
            let n = b.n(if alg.dim() == 1 { 5 } else { 4 })?;
            for d in b.deforms() {
                let p = d.param()?;
                let classes = Classes::<Q>::new(alg, p.rule());
                for k in 0..=b.k(3) {
                    for g in basis(alg) {
                        for a in basis(alg) {
                            r.extend(prefixed(&format!("t={}", p.t()), verify_comm(&classes, &fs, k, &g, &a, n)));
                        }
                    }
                }
            }
        }
        "eta" => {
            r = Report::new("eta", "eta_n(gamma) as the product of xi_i(gamma), the exponential generating functions of eta and epsilon, and their commutation with p_{-1}", name);
            let n = b.n(5)?;
            let classes = Classes::<Q>::new(alg, ProductRule::standard());
            for g in even_basis(alg) {
                r.extend(prefixed("product", verify_eta_product(&classes, &g, n)?));
                r.extend(prefixed(&format!("generating gamma={}", key(alg, &g)), verify_generating(&classes, &g, n)?));
                for a in basis(alg) {
                    r.extend(prefixed("commutation", verify_eta_comm(&classes, &fs, &g, &a, n.min(4))));
                }
            }
        }
        "zeromode" => {
            r = Report::new("zeromode", "Zero modes: O^k(alpha) = ((-1)^k/(k+1)) J^{k+1}_0(alpha), the bracket [O^p(alpha), p_n(beta)], and commutativity of the O operators", name);
            let n = b.n(4)?;
            let classes = Classes::<Q>::new(alg, ProductRule::standard());
            for k in 0..=b.k(2) {
                for a in basis(alg) {
                    r.extend(prefixed("zero mode", verify_zeromode(&classes, &fs, k, &a, n)?));
                }
            }
            let one = alg.unit_element::<Q>();
            for p in 0..=b.k(2) {
                for beta in basis(alg) {
                    for m in [-2i64, -1, 1, 2] {
                        r.extend(prefixed(
                            &format!("bracket p={p} n={m}"),
                            verify_o_mode_bracket(&classes, &fs, p, &one, &beta, m, n.min(3), BracketSign::Alternating)?,
                        ));
                    }
                }
            }
            let x = alg.element::<Q>(alg.dim() - 1);
            r.extend(prefixed("commute", verify_o_commute(&classes, &fs, 1, &one, 2, &x, n.min(3))));
        }
        "walg" => {
            if alg.d == 0 {
                return Err(Error::Unsupported(
                    "the W-algebra bracket table assumes even complex dimension d > 0 (so that e^2 = 0); refusing for d = 0".into(),
                ));
            }
            r = Report::new("walg", "W-algebra bracket table for J^p_m with the Omega/12 correction and the four exceptional cases, plus the vertex-operator field forms of J", name);
            let level = b.n(3)?;
            r.extend(prefixed("bracket", verify_walgebra(alg, cfg.max_pq.unwrap_or(4), b.m(2), level)));
            r.extend(prefixed("fields", verify_field_forms(alg, 3, b.m(2), level)));
            r.extend(omega_checks());
        }
        "universality" => {
            let reading = match cfg.reading.as_deref().unwrap_or("literal") {
                "literal" => ShapeReading::Literal,
                "euler-twice" => ShapeReading::EulerTwice,
                other => return Err(Error::Parse(format!("shape reading `{other}`: expected literal or euler-twice"))),
            };
            r = Report::new("universality", "Universal expansion of products of O^k classes in the p_nu basis: n-independence of coefficients and the degree/length shape constraints on every nonzero coordinate", name);
            let n = b.n(4)?;
            let classes = Classes::<Q>::new(alg, ProductRule::standard());
            r.extend(prefixed(&format!("{reading:?}"), verify_shapes(&classes, &fs, b.k(2), n, reading)?));
            let u = (0..alg.dim()).min_by_key(|&i| alg.degree(i)).unwrap_or(0);
            for (ks, al) in [(vec![1, 0], vec![u, alg.dim() - 1]), (vec![1, 1], vec![u, u])] {
                let top = ks.iter().map(|k| k + 1).sum::<usize>() + 2;
                r.cases.push(verify_o_product_stability(&classes, &fs, &ks, &al, top.min(b.cap).max(n))?);
            }
        }
        "stability" => {
            r = Report::new("stability", "Stability of the structure constants d^nu_{rho sigma} of the p_rho(n) basis and the stable ring they define", name);
            // max_k bounds ‖ρ‖ + ‖σ‖ here
            let norm = b.k(if b.large { 2 } else { 4 });
            let ring = StableRing::new(alg, ProductRule::standard());
            r.extend(prefixed("window", verify_stability(&ring, norm)?));
            r.extend(prefixed("associative", verify_associativity(&ring, norm)?));
            if alg.dim() == 1 {
                r.extend(prefixed("class functions", verify_point_oracle(&ring, norm, b.n(6)?)?));
            }
            r.cases.push(verify_freeness(&ring, norm.max(1))?);
        }
        "generators" => {
            r = Report::new("generators", "The O^k(alpha) classes, and separately the P_i(gamma) classes, generate the orbifold cohomology ring", name);
            let n = b.n(if alg.dim() == 1 { 5 } else { 3 })?;
            let classes = Classes::<Q>::new(alg, ProductRule::standard());
            for lv in 1..=n {
                r.extend(verify_generators(&classes, lv)?);
            }
        }
        "deform" => {
            r = Report::new("deform", "t-deformed products: cubic formula, commutator formula, deformed Heisenberg relations and the zeta_t isomorphism", name);
            let n = b.n(if alg.dim() == 1 { 5 } else { 4 })?;
            for d in b.deforms() {
                let p = d.param()?;
                let t = p.t();
                let classes = Classes::<Q>::new(alg, p.rule());
                r.extend(prefixed(&format!("t={t} cubic"), verify_cubic(&classes, &fs, &p, n)));
                let one = alg.unit_element::<Q>();
                for k in 0..=b.k(3) {
                    r.extend(prefixed(&format!("t={t} comm"), verify_comm(&classes, &fs, k, &one, &alg.element(alg.dim() - 1), n)));
                }
                r.extend(prefixed(&format!("t={t} heisenberg"), verify_deformed_heisenberg(&fs, &p, b.m(2), n.min(4))));
                if p.sixth_root().is_some() {
                    r.extend(prefixed(&format!("t={t}"), verify_zeta(&fs, &p, n.min(4), 400)?));
                }
            }
        }
        "dictionary" => {
            r = Report::new("dictionary", "Dictionary to the Hilbert scheme side: deformed Heisenberg relations, zeta_t, the transported Hilbert axioms at t = -1, the Theta-tilde intertwiner and the Hilbert ring laws", name);
            dictionary_checks(&mut r, alg, &fs, &b)?;
        }
        "chern" => {
            r = Report::new("chern", "Generating function of total Chern classes of tautological bundles against epsilon_n(1 + hbar L, hbar), and its hbar = -1 specialization against eta_n(1 - L)", name);
            let n = b.n(4)?;
            for d in [Deform::Sixth(Q::one()), Deform::MinusOne] {
                let p = d.param()?;
                let classes = Classes::<Q>::new(alg, p.rule());
                for l in even_basis(alg) {
                    r.extend(prefixed(&format!("t={} L={}", p.t(), key(alg, &l)), verify_chern(&classes, &fs, &l, 3, n)?));
                }
            }
        }
        other => return Err(Error::Unsupported(format!("unknown suite `{other}`; known: {}", SUITES.join(", ")))),
    }
    if let Some(note) = cfg.deform.as_ref().filter(|_| matches!(cfg.suite.as_str(), "goulden" | "comm" | "deform")) {
        r.notes.push(format!("deformation {}", String::from(note.clone())));
    }
    Ok(r)
}

fn key(alg: &FrobeniusAlgebra, x: &AlgebraElement<Q>) -> String {
    x.support().map(|(i, c)| if c.is_one() { alg.label(i).to_string() } else { format!("{c}*{}", alg.label(i)) }).collect::<Vec<_>>().join("+")
}

/// Antisymmetry `Ω^{p,q}_{m,n} = −Ω^{q,p}_{n,m}` on 200 seeded quadruples,
/// vanishing at `p = q = 0`, and one value against an exceptional bracket.
pub fn omega_checks() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cases = Vec::new();
    for i in 0..200 {
        let (m, n, p, qq): (i64, i64, i64, i64) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(0..=9), rng.gen_range(0..=9));
        let s = omega(m, n, p, qq) + omega(n, m, qq, p);
        let r = (s != 0).then(|| format!("sum {s}"));
        cases.push(Case::check(format!("omega antisymmetry #{i:03} ({m},{n},{p},{qq})"), r));
    }
    for m in -3..=3 {
        let r = (omega(m, -m, 0, 0) != 0).then(|| format!("{}", omega(m, -m, 0, 0)));
        cases.push(Case::check(format!("omega p=q=0 m={m}"), r));
    }
    // Ω^{2,0}_{1,−1} against the central term (m³ − m)/6 of the exceptional
    // bracket [𝔍², 𝔍⁰] at m = 1.
    let (w, c) = (q(omega(1, -1, 2, 0)), q(0));
    cases.push(Case::check("omega exceptional p=2 q=0 m=1", (w != c).then(|| format!("Omega = {w} vs {c}"))));
    cases
}

fn dictionary_checks(r: &mut Report, alg: &FrobeniusAlgebra, fs: &FockSpace<Q>, b: &Bounds) -> Result<()> {
    let n = b.n(if alg.dim() == 1 { 5 } else { 3 })?;
    // deformed Heisenberg at several cube roots of t, including t = −1
    for p in [DeformParam::one(), DeformParam::from_sixth_root(q(2))?, DeformParam::from_sixth_root(-q(1))?, DeformParam::minus_one()] {
        r.extend(prefixed(&format!("deformed heisenberg c={}", p.cube_root()), verify_deformed_heisenberg(fs, &p, b.m(2), n.min(4))));
    }
    for s in [q(2), -q(1)] {
        let p = DeformParam::from_sixth_root(s.clone())?;
        r.extend(prefixed(&format!("zeta s={s}"), verify_zeta(fs, &p, n.min(4), 400)?));
    }
    // transported Hilbert axioms at t = −1
    let minus = DeformParam::minus_one();
    let classes = Classes::<Q>::new(alg, minus.rule());
    r.extend(prefixed("hilbert heisenberg", verify_hilbert_heisenberg(alg, b.m(2), n.min(4))));
    for k in 0..=b.k(3) {
        for g in basis(alg) {
            r.extend(prefixed("hilbert comm", verify_comm(&classes, fs, k, &g, &alg.element(alg.dim() - 1), n)));
        }
    }
    r.extend(prefixed("hilbert cubic", verify_cubic(&classes, fs, &minus, n)));
    r.extend(prefixed("hilbert cubic expanded", verify_cubic_expanded(&classes, fs, &minus, n)));
    if alg.d == 2 {
        r.extend(prefixed("theta~", verify_theta_tilde(alg, n.min(3), 10_000)?));
    } else {
        r.notes.push(format!("theta-tilde intertwiner skipped: it concerns surfaces (d = 2), this algebra has d = {}", alg.d));
    }
    let subset = hilbert_ring_classes(alg);
    r.extend(prefixed("hilbert ring", verify_hilbert_ring(alg, &subset, n.min(3), 2000)?));
    Ok(())
}

/// Basis classes spanning a subring used for the Hilbert ring laws: all of
/// them for small algebras, otherwise `1`, one hyperbolic pair and the point.
pub fn hilbert_ring_classes(alg: &FrobeniusAlgebra) -> Vec<usize> {
    if alg.dim() <= SMALL_DIM {
        return (0..alg.dim()).collect();
    }
    let top = (0..alg.dim()).max_by_key(|&i| alg.degree(i)).unwrap_or(0);
    let unit = (0..alg.dim()).min_by_key(|&i| alg.degree(i)).unwrap_or(0);
    let mut out = vec![unit];
    'pairs: for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            if i != j && alg.degree(i) == alg.d && alg.degree(j) == alg.d && !alg.gram_entry(i, j).is_zero() {
                out.extend([i, j]);
                break 'pairs;
            }
        }
    }
    out.push(top);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deform_strings_round_trip() {
        for s in ["t=-1", "s=2", "s=-1", "s=1/2"] {
            let d: Deform = s.parse().unwrap();
            assert_eq!(String::from(d), s);
        }
        assert_eq!("3".parse::<Deform>().unwrap(), Deform::Sixth(q(3)));
        assert!("t=2".parse::<Deform>().is_err());
    }

    #[test]
    fn caps_by_algebra_size() {
        let cap = |n: &str| level_cap(&FrobeniusAlgebra::builtin(n).unwrap());
        assert_eq!((cap("point"), cap("P2"), cap("odd"), cap("K3")), (8, 6, 6, 4));
        let cfg = SuiteConfig { suite: "generators".into(), algebra: "K3".into(), max_n: Some(5), ..Default::default() };
        assert!(matches!(run_suite(&cfg), Err(Error::Unsupported(_))));
    }

    #[test]
    fn unknown_suite_is_an_error() {
        let cfg = SuiteConfig { suite: "nope".into(), algebra: "point".into(), ..Default::default() };
        assert!(run_suite(&cfg).is_err());
    }

    #[test]
    fn k3_ring_classes_pick_a_hyperbolic_pair() {
        let k3 = FrobeniusAlgebra::builtin("K3").unwrap();
        let labels: Vec<&str> = hilbert_ring_classes(&k3).iter().map(|&i| k3.label(i)).collect();
        assert_eq!(labels, ["1", "x1", "x2", "pt"]);
    }

    #[test]
    fn omega_checks_pass() {
        assert!(omega_checks().iter().all(|c| c.pass));
    }
}
