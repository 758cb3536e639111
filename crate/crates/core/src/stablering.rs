//! Structure constants of `𝔭_ρ(n) ∘ 𝔭_σ(n) = Σ_ν d^ν_{ρσ} 𝔭_ν(n)`,
//! extracted level by level and checked to be independent of `n`; shape
//! checks for products of `O`-classes; ring generator closure.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fock::{enumerate_up_to, orbifold_dimension, CoordVector, FockSpace, PartitionFunction};
use crate::frobenius::{FrobeniusAlgebra, TensorElement};
use crate::jucys::{p_class, Classes};
use crate::linalg::SpanBasis;
use crate::orbiring::{product_invariant, product_on_classes, OrbElement, ProductRule};
use crate::report::Case;
use crate::scalar::{factorial, parse_q, Scalar, Q};
use crate::symgroup::{class_representative, partitions, symmetric_group, z_lambda, Partition, Permutation};

pub type Constants = BTreeMap<PartitionFunction, Q>;

/// `Σ_ν d^ν 𝔭_ν(n)` in monomial coordinates.
pub fn expand(fs: &FockSpace<Q>, d: &Constants, n: usize) -> CoordVector<Q> {
    let mut v = CoordVector::zero();
    for (nu, c) in d {
        v.add_assign(&fs.p_rho_coords(nu, n).scale(c));
    }
    v
}

/// Constants of a family `x(v)` of invariant level-`v` elements that is a
/// fixed combination of `𝔭_ν(v)` with `‖ν‖ ≤ bound`. At level `v` the
/// norm-`v` part of the coordinates, minus what lower constants already
/// predict, is exactly `Σ_{‖ν‖ = v} d^ν 𝔭_ν`.
pub fn extract_stable(
    fs: &FockSpace<Q>,
    bound: usize,
    level: impl Fn(usize) -> Result<OrbElement<Q>>,
) -> Result<Constants> {
    let mut d = Constants::new();
    for v in 0..=bound {
        let x = level(v)?;
        let coords = if x.is_zero() { CoordVector::zero() } else { fs.coordinates(&x, false)? };
        let rest = coords.sub(&expand(fs, &d, v));
        for (mu, c) in rest.terms {
            d.insert(mu, c);
        }
    }
    Ok(d)
}

/// Compares `Σ d^ν 𝔭_ν(n)` with an invariant element given by its components
/// at the class representatives; the first mismatch is returned.
fn compare_on_classes(
    fs: &FockSpace<Q>,
    d: &Constants,
    n: usize,
    actual: &[(Permutation, TensorElement<Q>)],
) -> Option<String> {
    let expected = fs.realize_coords(&expand(fs, d, n), n);
    let actual: HashMap<&Permutation, &TensorElement<Q>> = actual.iter().map(|(p, t)| (p, t)).collect();
    let zero = TensorElement::zero(0);
    for lambda in partitions(n) {
        let rep = class_representative(&lambda);
        let e = expected.terms.get(&rep).unwrap_or(&zero);
        let a = actual.get(&rep).copied().unwrap_or(&zero);
        let mut diff = a.clone();
        diff.add_assign(&e.scale(&-Q::one()));
        if let Some((key, c)) = diff.terms.iter().next() {
            return Some(format!("n={n} class {lambda:?} payload {key:?} off by {}", c.exact_repr()));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub struct StableEntry {
    pub rho: PartitionFunction,
    pub sigma: PartitionFunction,
    pub constants: Constants,
    /// Levels at which the constants were checked against the product.
    pub window: Vec<usize>,
    pub stable: bool,
    /// First disagreement, when not stable.
    pub residual: Option<String>,
}

impl StableEntry {
    pub fn bound(&self) -> usize {
        self.rho.norm() + self.sigma.norm()
    }
}

/// Products in the `𝔭_ρ(n)` basis under a fixed product rule, memoised per
/// `(ρ, σ)`.
pub struct StableRing<'a> {
    pub alg: &'a FrobeniusAlgebra,
    pub rule: ProductRule,
    pub fs: FockSpace<'a, Q>,
    /// How many levels past `‖ρ‖+‖σ‖` are compared.
    pub extra: usize,
    entries: Mutex<HashMap<(PartitionFunction, PartitionFunction), Arc<StableEntry>>>,
}

impl<'a> StableRing<'a> {
    /// Window `{‖ρ‖+‖σ‖, +1, +2}`.
    pub fn new(alg: &'a FrobeniusAlgebra, rule: ProductRule) -> Self {
        Self::with_window(alg, rule, 2)
    }

    pub fn with_window(alg: &'a FrobeniusAlgebra, rule: ProductRule, extra: usize) -> Self {
        StableRing { alg, rule, fs: FockSpace::new(alg), extra, entries: Mutex::new(HashMap::new()) }
    }

    pub fn product_at(&self, rho: &PartitionFunction, sigma: &PartitionFunction, n: usize) -> Result<OrbElement<Q>> {
        product_invariant(self.alg, &self.fs.p_rho(rho, n), &self.fs.p_rho(sigma, n), &self.rule)
    }

    /// Constants and window check; instability is recorded in the entry.
    pub fn entry(&self, rho: &PartitionFunction, sigma: &PartitionFunction) -> Result<Arc<StableEntry>> {
        let key = (rho.clone(), sigma.clone());
        if let Some(e) = self.entries.lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let k = rho.norm() + sigma.norm();
        let constants = extract_stable(&self.fs, k, |v| self.product_at(rho, sigma, v))?;
        let window: Vec<usize> = (k..=k + self.extra).collect();
        let mut residual = None;
        for &n in &window {
            let actual = product_on_classes(self.alg, &self.fs.p_rho(rho, n), &self.fs.p_rho(sigma, n), &self.rule)?;
            if let Some(r) = compare_on_classes(&self.fs, &constants, n, &actual) {
                residual = Some(r);
                break;
            }
        }
        let e = Arc::new(StableEntry {
            rho: rho.clone(),
            sigma: sigma.clone(),
            constants,
            window,
            stable: residual.is_none(),
            residual,
        });
        self.entries.lock().unwrap().insert(key, e.clone());
        Ok(e)
    }

    /// As [`Self::entry`], failing with [`Error::Unstable`] on disagreement.
    pub fn structure_constants(&self, rho: &PartitionFunction, sigma: &PartitionFunction) -> Result<Arc<StableEntry>> {
        let e = self.entry(rho, sigma)?;
        match &e.residual {
            None => Ok(e),
            Some(r) => Err(Error::Unstable(format!("{} * {}: {r}", rho.display(self.alg), sigma.display(self.alg)))),
        }
    }

    /// Product of two elements of the stable ring, given in the `𝔭_ν` basis.
    pub fn multiply(&self, x: &Constants, y: &Constants) -> Result<Constants> {
        let mut out = Constants::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let e = self.structure_constants(a, b)?;
                let f = ca * cb;
                for (nu, c) in &e.constants {
                    let slot = out.entry(nu.clone()).or_insert_with(Q::zero);
                    *slot += &f * c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// All entries with `‖ρ‖ + ‖σ‖ ≤ max_norm`, ordered by `(ρ, σ)`.
    pub fn tabulate(&self, max_norm: usize) -> Result<StableTable> {
        let basis = enumerate_up_to(self.alg, max_norm);
        let pairs: Vec<(&PartitionFunction, &PartitionFunction)> = basis
            .iter()
            .flat_map(|r| basis.iter().filter(move |s| r.norm() + s.norm() <= max_norm).map(move |s| (r, s)))
            .collect();
        let entries: Result<Vec<Arc<StableEntry>>> = pairs.par_iter().map(|(r, s)| self.entry(r, s)).collect();
        let mut entries: Vec<StableEntry> = entries?.iter().map(|e| (**e).clone()).collect();
        entries.sort_by(|a, b| (&a.rho, &a.sigma).cmp(&(&b.rho, &b.sigma)));
        Ok(StableTable {
            algebra: self.alg.name.clone(),
            algebra_hash: self.alg.content_hash(),
            basis_order: (0..self.alg.dim()).map(|i| self.alg.label(i).to_string()).collect(),
            entries,
        })
    }
}

// ---------------------------------------------------------------------------
// Tables, persistence and export

pub struct StableTable {
    pub algebra: String,
    pub algebra_hash: String,
    /// Basis labels in the order fixing the sign conventions of odd classes.
    pub basis_order: Vec<String>,
    pub entries: Vec<StableEntry>,
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl StableTable {
    /// Rows `rho,sigma,nu,coeff` with exact rationals.
    pub fn to_csv(&self, alg: &FrobeniusAlgebra) -> String {
        let mut out = String::from("rho,sigma,nu,coeff\n");
        for e in &self.entries {
            for (nu, c) in &e.constants {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    csv_field(&e.rho.display(alg)),
                    csv_field(&e.sigma.display(alg)),
                    csv_field(&nu.display(alg)),
                    c.exact_repr()
                ));
            }
        }
        out
    }
}

/// Serialized table; every number an exact `num/den` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub algebra: String,
    pub algebra_hash: String,
    pub basis_order: Vec<String>,
    pub entries: Vec<EntryJson>,
}

impl TableJson {
    pub fn from_table(alg: &FrobeniusAlgebra, t: &StableTable) -> Self {
        TableJson {
            algebra: t.algebra.clone(),
            algebra_hash: t.algebra_hash.clone(),
            basis_order: t.basis_order.clone(),
            entries: t.entries.iter().map(|e| EntryJson::from_entry(alg, e)).collect(),
        }
    }

    /// Canonical JSON: sorted keys, entries in table order.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("table serialises");
        serde_json::to_string_pretty(&v).expect("table serialises") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("rho,sigma,nu,coeff\n");
        for e in &self.entries {
            for (nu, c) in &e.constants {
                out.push_str(&format!("{},{},{},{}\n", csv_field(&e.rho), csv_field(&e.sigma), csv_field(nu), c));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub algebra_hash: String,
    pub basis_order: Vec<String>,
    pub rho: String,
    pub sigma: String,
    pub window: Vec<usize>,
    pub stable: bool,
    pub constants: Vec<(String, String)>,
}

impl EntryJson {
    pub fn from_entry(alg: &FrobeniusAlgebra, e: &StableEntry) -> Self {
        EntryJson {
            algebra_hash: alg.content_hash(),
            basis_order: (0..alg.dim()).map(|i| alg.label(i).to_string()).collect(),
            rho: e.rho.display(alg),
            sigma: e.sigma.display(alg),
            window: e.window.clone(),
            stable: e.stable,
            constants: e.constants.iter().map(|(nu, c)| (nu.display(alg), c.exact_repr())).collect(),
        }
    }

    pub fn to_entry(&self, alg: &FrobeniusAlgebra) -> Result<StableEntry> {
        let mut constants = Constants::new();
        for (nu, c) in &self.constants {
            let c = parse_q(c).ok_or_else(|| Error::Parse(format!("bad rational {c:?}")))?;
            constants.insert(PartitionFunction::parse(alg, nu)?, c);
        }
        Ok(StableEntry {
            rho: PartitionFunction::parse(alg, &self.rho)?,
            sigma: PartitionFunction::parse(alg, &self.sigma)?,
            constants,
            window: self.window.clone(),
            stable: self.stable,
            residual: None,
        })
    }
}

/// Directory of entries, one JSON file per `(algebra, ρ, σ)` named by the
/// sha256 of that key.
pub struct TableStore {
    dir: PathBuf,
}

impl TableStore {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(TableStore { dir: dir.as_ref().to_path_buf() })
    }

    pub fn key(alg: &FrobeniusAlgebra, rho: &PartitionFunction, sigma: &PartitionFunction) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}|{}|{}", alg.content_hash(), rho, sigma).as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, alg: &FrobeniusAlgebra, rho: &PartitionFunction, sigma: &PartitionFunction) -> Result<Option<StableEntry>> {
        let p = self.path(&Self::key(alg, rho, sigma));
        if !p.exists() {
            return Ok(None);
        }
        let j: EntryJson = serde_json::from_str(&fs::read_to_string(p)?).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Some(j.to_entry(alg)?))
    }

    /// Writes through a temporary file and a rename, so concurrent writers of
    /// distinct keys never see partial files. Rewriting an existing key must
    /// reproduce it byte for byte.
    pub fn put(&self, alg: &FrobeniusAlgebra, e: &StableEntry) -> Result<()> {
        let key = Self::key(alg, &e.rho, &e.sigma);
        let body = serde_json::to_string_pretty(&EntryJson::from_entry(alg, e)).expect("entry serialises") + "\n";
        let p = self.path(&key);
        if p.exists() {
            let old = fs::read_to_string(&p)?;
            if old != body {
                return Err(Error::Unsupported(format!("store entry {key} differs from recomputed value")));
            }
            return Ok(());
        }
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, &body)?;
        fs::rename(&tmp, &p)?;
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Checks on tables

/// Window agreement, the support bound `‖ν‖ ≤ ‖ρ‖+‖σ‖` and graded
/// commutativity for every entry with `‖ρ‖+‖σ‖ ≤ max_norm`.
pub fn verify_stability(ring: &StableRing, max_norm: usize) -> Result<Vec<Case>> {
    let alg = ring.alg;
    let table = ring.tabulate(max_norm)?;
    let mut cases = Vec::new();
    for e in &table.entries {
        let id = format!("{} * {}", e.rho.display(alg), e.sigma.display(alg));
        cases.push(Case::check(format!("stable {id} window {:?}", e.window), e.residual.clone()));
        let over = e.constants.keys().find(|nu| nu.norm() > e.bound());
        cases.push(Case::check(format!("support {id}"), over.map(|nu| format!("nu = {} exceeds bound", nu.display(alg)))));
        if e.rho < e.sigma {
            let other = ring.entry(&e.sigma, &e.rho)?;
            let odd = e.rho.is_odd(alg) && e.sigma.is_odd(alg);
            let flipped: Constants =
                other.constants.iter().map(|(k, c)| (k.clone(), if odd { -c.clone() } else { c.clone() })).collect();
            let r = (flipped != e.constants).then(|| "d_{rho sigma} != ±d_{sigma rho}".to_string());
            cases.push(Case::check(format!("commutative {id}"), r));
        }
    }
    Ok(cases)
}

/// `(x y) z = x (y z)` for basis triples of total norm `≤ max_norm`.
pub fn verify_associativity(ring: &StableRing, max_norm: usize) -> Result<Vec<Case>> {
    let alg = ring.alg;
    let basis: Vec<PartitionFunction> = enumerate_up_to(alg, max_norm).into_iter().filter(|p| !p.is_empty()).collect();
    let mut triples = Vec::new();
    for a in &basis {
        for b in &basis {
            for c in &basis {
                if a.norm() + b.norm() + c.norm() <= max_norm {
                    triples.push((a, b, c));
                }
            }
        }
    }
    let one = |p: &PartitionFunction| Constants::from([(p.clone(), Q::one())]);
    triples
        .par_iter()
        .map(|(a, b, c)| {
            let left = ring.multiply(&ring.multiply(&one(a), &one(b))?, &one(c))?;
            let right = ring.multiply(&one(a), &ring.multiply(&one(b), &one(c))?)?;
            let id = format!("({})({})({})", a.display(alg), b.display(alg), c.display(alg));
            Ok(Case::check(format!("associative {id}"), (left != right).then(|| "products differ".to_string())))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Point algebra against class functions on Sₙ

/// `𝔭_ν(n)` over the point as a class function: its value at `σ` is
/// `z_ν · #{V ⊆ [n] : |V| = |ν|, V ⊇ supp σ, σ|_V of type ν}`.
pub fn point_class_function(nu: &[usize], n: usize) -> BTreeMap<Partition, Q> {
    let size: usize = nu.iter().sum();
    let mut target = nu.to_vec();
    target.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = BTreeMap::new();
    if size > n {
        return out;
    }
    for lambda in partitions(n) {
        let rep = class_representative(&lambda);
        let moved: usize = (0..n).filter(|&i| rep.apply(i) != i).count();
        let fixed = n - moved;
        let nontrivial: Vec<usize> = lambda.iter().copied().filter(|&c| c > 1).collect();
        // V holds the support and `size − moved` of the fixed points
        if size < moved || size - moved > fixed {
            continue;
        }
        let ones = size - moved;
        let mut ty = nontrivial;
        ty.extend(std::iter::repeat_n(1, ones));
        if ty != target {
            continue;
        }
        let count = crate::scalar::binomial(fixed as u64, ones as u64);
        out.insert(lambda, z_lambda(&target) * Q::from_integer(count.into()));
    }
    out
}

/// Product of class functions by direct convolution over `Sₙ`, evaluated at
/// each class representative.
pub fn class_function_product(f: &BTreeMap<Partition, Q>, g: &BTreeMap<Partition, Q>, n: usize) -> BTreeMap<Partition, Q> {
    let group = symmetric_group(n);
    let types: HashMap<&Permutation, Partition> = group.iter().map(|p| (p, p.cycle_type())).collect();
    let mut out = BTreeMap::new();
    for lambda in partitions(n) {
        let pi = class_representative(&lambda);
        let mut acc = Q::zero();
        for s in group {
            let Some(a) = f.get(&types[s]) else { continue };
            let t = s.inverse().compose(&pi);
            if let Some(b) = g.get(&t.cycle_type()) {
                acc += a * b;
            }
        }
        if !acc.is_zero() {
            out.insert(lambda, acc);
        }
    }
    out
}

fn point_parts(p: &PartitionFunction) -> Vec<usize> {
    p.factors().iter().map(|&(_, r)| r as usize).collect()
}

/// Point-algebra constants against brute-force convolution in `ℚ[Sₙ]`, for
/// `‖ρ‖+‖σ‖ ≤ max_norm` and `‖ρ‖+‖σ‖ ≤ n ≤ max_n`.
pub fn verify_point_oracle(ring: &StableRing, max_norm: usize, max_n: usize) -> Result<Vec<Case>> {
    let alg = ring.alg;
    if alg.dim() != 1 {
        return Err(Error::Unsupported("the class-function oracle needs the point algebra".into()));
    }
    let basis = enumerate_up_to(alg, max_norm);
    let mut jobs = Vec::new();
    for r in &basis {
        for s in &basis {
            let k = r.norm() + s.norm();
            if k <= max_norm {
                for n in k.max(1)..=max_n {
                    jobs.push((r, s, n));
                }
            }
        }
    }
    jobs.par_iter()
        .map(|(r, s, n)| {
            let e = ring.entry(r, s)?;
            let mut lhs: BTreeMap<Partition, Q> = BTreeMap::new();
            for (nu, c) in &e.constants {
                for (l, v) in point_class_function(&point_parts(nu), *n) {
                    let slot = lhs.entry(l).or_insert_with(Q::zero);
                    *slot += c * &v;
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            let rhs = class_function_product(&point_class_function(&point_parts(r), *n), &point_class_function(&point_parts(s), *n), *n);
            let residual = lhs
                .keys()
                .chain(rhs.keys())
                .find(|l| lhs.get(*l) != rhs.get(*l))
                .map(|l| format!("class {l:?}: table {:?} vs group {:?}", lhs.get(l).map(|x| x.exact_repr()), rhs.get(l).map(|x| x.exact_repr())));
            Ok(Case::check(format!("point {} * {} at n={n}", r.display(alg), s.display(alg)), residual))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Freeness on even classes

/// Products of the single-row generators `𝔭_{(r)}(b_c)` over even classes
/// with total norm `≤ max_norm` are linearly independent in the stable ring,
/// as they would be in a polynomial algebra.
pub fn verify_freeness(ring: &StableRing, max_norm: usize) -> Result<Case> {
    let alg = ring.alg;
    let even = |p: &PartitionFunction| p.factors().iter().all(|&(c, _)| !alg.is_odd(c as usize));
    let monomials: Vec<PartitionFunction> = enumerate_up_to(alg, max_norm).into_iter().filter(|p| even(p)).collect();
    let memo: Mutex<HashMap<(PartitionFunction, usize), Arc<OrbElement<Q>>>> = Mutex::new(HashMap::new());
    // ∏ 𝔭_{(r)}(b_c)(v) over the factors of `p`, built from the product without the last factor
    fn level_of(
        ring: &StableRing,
        memo: &Mutex<HashMap<(PartitionFunction, usize), Arc<OrbElement<Q>>>>,
        p: &PartitionFunction,
        v: usize,
    ) -> Result<Arc<OrbElement<Q>>> {
        if let Some(x) = memo.lock().unwrap().get(&(p.clone(), v)) {
            return Ok(x.clone());
        }
        let x = if p.is_empty() {
            OrbElement::unit(ring.alg, v)
        } else {
            let last = p.length() - 1;
            let single = PartitionFunction::new(ring.alg, vec![p.factors()[last]])?;
            let prev = level_of(ring, memo, &p.remove_at(last), v)?;
            product_invariant(ring.alg, &prev, &ring.fs.p_rho(&single, v), &ring.rule)?
        };
        let x = Arc::new(x);
        memo.lock().unwrap().insert((p.clone(), v), x.clone());
        Ok(x)
    }
    let mut basis: SpanBasis<PartitionFunction, Q> = SpanBasis::new();
    for norm in 0..=max_norm {
        let layer: Vec<&PartitionFunction> = monomials.iter().filter(|p| p.norm() == norm).collect();
        let consts: Result<Vec<Constants>> = layer
            .par_iter()
            .map(|p| extract_stable(&ring.fs, norm, |v| Ok((*level_of(ring, &memo, p, v)?).clone())))
            .collect();
        for (p, c) in layer.iter().zip(consts?) {
            if !basis.insert(&c) {
                return Ok(Case::fail(
                    format!("free on even classes up to norm {max_norm}"),
                    format!("monomial {} depends on smaller ones", p.display(alg)),
                ));
            }
        }
    }
    Ok(Case::ok(format!("free on even classes up to norm {max_norm}: {} monomials independent", monomials.len())))
}

// ---------------------------------------------------------------------------
// Generators

fn flatten(x: &OrbElement<Q>) -> BTreeMap<(Permutation, Vec<u16>), Q> {
    let mut out = BTreeMap::new();
    for (s, t) in &x.terms {
        for (k, c) in &t.terms {
            out.insert((s.clone(), k.clone()), c.clone());
        }
    }
    out
}

/// Dimension of the `∘`-subring generated by `gens` (with the unit).
pub fn closure_dimension(alg: &FrobeniusAlgebra, gens: &[OrbElement<Q>], rule: &ProductRule, n: usize, target: usize) -> Result<usize> {
    let mut span = SpanBasis::new();
    let unit = OrbElement::unit(alg, n);
    span.insert(&flatten(&unit));
    let mut queue = vec![unit];
    while let Some(x) = queue.pop() {
        if span.rank() >= target {
            break;
        }
        let prods: Result<Vec<OrbElement<Q>>> = gens.par_iter().map(|g| product_invariant(alg, g, &x, rule)).collect();
        for y in prods? {
            if span.insert(&flatten(&y)) {
                queue.push(y);
            }
        }
    }
    Ok(span.rank())
}

/// The classes `O^i(b_c, n)` and separately `P_i(b_c, n)`, `0 ≤ i < n`, each
/// generate a subring of full dimension.
pub fn verify_generators(classes: &Classes<Q>, n: usize) -> Result<Vec<Case>> {
    let alg = classes.alg;
    let target = orbifold_dimension(alg, n) as usize;
    let mut o_gens = Vec::new();
    let mut p_gens = Vec::new();
    for i in 0..n {
        for c in 0..alg.dim() {
            o_gens.push((*classes.o_class(i, &alg.element(c), n)).clone());
            p_gens.push(p_class(alg, i, &alg.element(c), n)?);
        }
    }
    let mut cases = Vec::new();
    for (name, gens) in [("O", &o_gens), ("P", &p_gens)] {
        let dim = closure_dimension(alg, gens, &classes.rule, n, target)?;
        let r = (dim != target).then(|| format!("closure has dimension {dim}, ring has {target}"));
        cases.push(Case::check(format!("{name}-classes generate at n={n} (dim {target})"), r));
    }
    Ok(cases)
}

// ---------------------------------------------------------------------------
// Shapes of O-class products

/// `O^{k₁}(α₁, n) ∘ ⋯ ∘ O^{k_s}(α_s, n)` with `αⱼ` basis elements.
pub fn o_product(classes: &Classes<Q>, ks: &[usize], alphas: &[usize], n: usize) -> OrbElement<Q> {
    let alg = classes.alg;
    let mut x = (*classes.o_class(ks[0], &alg.element(alphas[0]), n)).clone();
    for j in 1..ks.len() {
        x = classes.mul_invariant(&x, &classes.o_class(ks[j], &alg.element(alphas[j]), n));
    }
    x
}

/// Set partitions of `{0, …, s−1}`.
fn set_partitions(s: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for i in 0..s {
        let mut next = Vec::new();
        for p in &out {
            for b in 0..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                q[b].push(i);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![i]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// How many modes a block carries when `d > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeReading {
    /// `m_i − r_i` modes, `r_i ≤ m_i`.
    Literal,
    /// `m_i − 2r_i` modes, `2r_i ≤ m_i`, as in the `d = 0` form; this is the
    /// reading under which the equality is the degree count.
    EulerTwice,
}

/// Whether a monomial can occur in the universal expansion of an `O`-product:
/// its factors split into unit parts `𝔭_{−1}(1_X)` absorbed by `𝟏_{−(…)}`
/// and one group per block `π_i` of a set partition of the factors, each
/// group being a Künneth component of `τ_{M*}(ε_i α_{π_i})` with `M` modes
/// (`d > 0`, `ε_i ∈ {1_X, e}`, `r_i = 1` for `e`) or a product of
/// `m_i − 2r_i` modes (`d = 0`), subject to `m_i ≤ 2 + Σ_{j∈π_i} k_j`,
/// `Σ_j n_{ij} ≤ Σ_{j∈π_i}(k_j+1)` and `Σ_i (m_i − 2 + Σ_j n_{ij}) = Σ k_j`.
pub fn shape_feasible(alg: &FrobeniusAlgebra, ks: &[usize], alphas: &[usize], mu: &PartitionFunction, reading: ShapeReading) -> bool {
    let factors = mu.factors();
    let total_k: usize = ks.iter().sum();
    for pi in set_partitions(ks.len()) {
        let blocks = pi.len();
        // label[j] = blocks means "absorbed unit part"
        let mut label = vec![0usize; factors.len()];
        loop {
            if label.iter().zip(factors).all(|(&l, &(c, r))| l < blocks || (c as usize == alg.unit && r == 1))
                && blocks_feasible(alg, ks, alphas, &pi, factors, &label, total_k, reading)
            {
                return true;
            }
            // next labelling
            let mut j = 0;
            loop {
                if j == label.len() {
                    break;
                }
                label[j] += 1;
                if label[j] <= blocks {
                    break;
                }
                label[j] = 0;
                j += 1;
            }
            if j == label.len() {
                break;
            }
        }
    }
    false
}

fn blocks_feasible(
    alg: &FrobeniusAlgebra,
    ks: &[usize],
    alphas: &[usize],
    pi: &[Vec<usize>],
    factors: &[(u16, u32)],
    label: &[usize],
    total_k: usize,
    reading: ShapeReading,
) -> bool {
    let d = alg.d as i64;
    // per block: (M, Σn, allowed values of the block's contribution m − 2 + Σn)
    let mut options: Vec<Vec<i64>> = Vec::new();
    for (b, block) in pi.iter().enumerate() {
        let members: Vec<&(u16, u32)> = factors.iter().zip(label).filter(|(_, &l)| l == b).map(|(f, _)| f).collect();
        let big_m = members.len() as i64;
        let nsum: i64 = members.iter().map(|f| f.1 as i64).sum();
        let kb: i64 = block.iter().map(|&j| ks[j] as i64).sum();
        if nsum > kb + block.len() as i64 {
            return false;
        }
        let mut opts = Vec::new();
        if d > 0 {
            let class_deg: i64 = members.iter().map(|f| alg.degree(f.0 as usize) as i64).sum();
            let alpha_deg: i64 = block.iter().map(|&j| alg.degree(alphas[j]) as i64).sum();
            for r in 0..=1i64 {
                let m = match reading {
                    ShapeReading::Literal => big_m + r,
                    ShapeReading::EulerTwice => big_m + 2 * r,
                };
                if class_deg == alpha_deg + 2 * d * (big_m - 1 + r) && m <= 2 + kb {
                    opts.push(m - 2 + nsum);
                }
            }
        } else {
            let mut r = 0;
            while big_m + 2 * r <= 2 + kb {
                opts.push(big_m + 2 * r - 2 + nsum);
                r += 1;
            }
        }
        if opts.is_empty() {
            return false;
        }
        options.push(opts);
    }
    // some choice per block summing to Σk
    let mut reach = vec![0i64];
    for opts in &options {
        let mut next: Vec<i64> = reach.iter().flat_map(|a| opts.iter().map(move |o| a + o)).collect();
        next.sort_unstable();
        next.dedup();
        reach = next;
    }
    reach.contains(&(total_k as i64))
}

/// Coordinates of an `O`-product and the monomials violating the shape.
#[derive(Clone, Debug)]
pub struct ShapeReport {
    pub coordinates: CoordVector<Q>,
    pub violations: Vec<PartitionFunction>,
}

pub fn expand_o_product(
    classes: &Classes<Q>,
    fs: &FockSpace<Q>,
    ks: &[usize],
    alphas: &[usize],
    n: usize,
    reading: ShapeReading,
) -> Result<ShapeReport> {
    let x = o_product(classes, ks, alphas, n);
    let coordinates = if x.is_zero() { CoordVector::zero() } else { fs.coordinates(&x, false)? };
    let violations =
        coordinates.terms.keys().filter(|mu| !shape_feasible(classes.alg, ks, alphas, mu, reading)).cloned().collect();
    Ok(ShapeReport { coordinates, violations })
}

/// Shape check for all `s ≤ 2`, `kⱼ ≤ max_k`, basis `αⱼ`, `1 ≤ n ≤ max_n`.
pub fn verify_shapes(
    classes: &Classes<Q>,
    fs: &FockSpace<Q>,
    max_k: usize,
    max_n: usize,
    reading: ShapeReading,
) -> Result<Vec<Case>> {
    let alg = classes.alg;
    let mut jobs: Vec<(Vec<usize>, Vec<usize>, usize)> = Vec::new();
    for n in 1..=max_n {
        for k1 in 0..=max_k {
            for a1 in 0..alg.dim() {
                jobs.push((vec![k1], vec![a1], n));
                for k2 in 0..=max_k {
                    for a2 in 0..alg.dim() {
                        jobs.push((vec![k1, k2], vec![a1, a2], n));
                    }
                }
            }
        }
    }
    jobs.par_iter()
        .map(|(ks, alphas, n)| {
            let rep = expand_o_product(classes, fs, ks, alphas, *n, reading)?;
            let labels: Vec<&str> = alphas.iter().map(|&a| alg.label(a)).collect();
            let id = format!("shape k={ks:?} alpha={labels:?} n={n}");
            let residual = rep.violations.first().map(|mu| {
                format!("monomial {} coeff {}", mu.display(alg), rep.coordinates.terms[mu].exact_repr())
            });
            Ok(Case::check(id, residual))
        })
        .collect()
}

/// The coefficients of an `O`-product in the `𝔭_ν(n)` basis do not depend on
/// `n`: constants extracted from levels `≤ Σ(kⱼ+1)` reproduce every level up
/// to `max_n`.
pub fn verify_o_product_stability(classes: &Classes<Q>, fs: &FockSpace<Q>, ks: &[usize], alphas: &[usize], max_n: usize) -> Result<Case> {
    let alg = classes.alg;
    let bound: usize = ks.iter().map(|k| k + 1).sum();
    let d = extract_stable(fs, bound, |v| Ok(o_product(classes, ks, alphas, v)))?;
    let labels: Vec<&str> = alphas.iter().map(|&a| alg.label(a)).collect();
    let id = format!("n-independent k={ks:?} alpha={labels:?} levels {bound}..={max_n}");
    for n in bound..=max_n {
        let x = o_product(classes, ks, alphas, n);
        let reps: Vec<(Permutation, TensorElement<Q>)> = partitions(n)
            .iter()
            .filter_map(|l| {
                let rep = class_representative(l);
                x.terms.get(&rep).map(|t| (rep, t.clone()))
            })
            .collect();
        if let Some(r) = compare_on_classes(fs, &d, n, &reps) {
            return Ok(Case::fail(id, r));
        }
    }
    Ok(Case::ok(id))
}

/// `𝔭_ρ(n)` over the point is `z_ρ · C(m₁(ρ) + n − |ρ|, n − |ρ|)` times the
/// class sum of type `ρ ∪ 1^{n−|ρ|}`; exposed for tests.
pub fn point_p_rho_value(rho: &[usize], n: usize) -> Q {
    let size: usize = rho.iter().sum();
    let m1 = rho.iter().filter(|&&p| p == 1).count();
    let k = n - size;
    z_lambda(rho) * factorial((m1 + k) as u64) / (factorial(m1 as u64) * factorial(k as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn pf(alg: &FrobeniusAlgebra, s: &str) -> PartitionFunction {
        PartitionFunction::parse(alg, s).unwrap()
    }

    #[test]
    fn unit_times_unit() {
        let alg = FrobeniusAlgebra::builtin("P2").unwrap();
        let ring = StableRing::new(&alg, ProductRule::standard());
        let e = ring.structure_constants(&PartitionFunction::empty(), &PartitionFunction::empty()).unwrap();
        assert_eq!(e.constants, Constants::from([(PartitionFunction::empty(), q(1))]));
    }

    #[test]
    fn point_insertion_counts_the_level() {
        // 𝔭_{(1)}(1_X)(n) = n·1 and n 𝔭_σ(n) = 𝔭_{σ ∪ (1)}(n) + ‖σ‖ 𝔭_σ(n)
        let alg = FrobeniusAlgebra::builtin("P2").unwrap();
        let ring = StableRing::new(&alg, ProductRule::standard());
        let one = pf(&alg, "1:1");
        for s in ["x:2", "pt:1 x:1", "x:1.1"] {
            let sigma = pf(&alg, s);
            let e = ring.structure_constants(&one, &sigma).unwrap();
            let with = sigma.insert(&alg, (alg.unit as u16, 1)).unwrap().0;
            let expect = Constants::from([(with, q(1)), (sigma.clone(), q(sigma.norm() as i64))]);
            assert_eq!(e.constants, expect, "{s}");
        }
    }

    #[test]
    fn transposition_class_squared() {
        // C₂² = C(n,2)·1 + 3 C₃ + 2 C₂₂ in ℚ[Sₙ]; 𝔭_{(2)}(n) = 2 C₂
        let alg = FrobeniusAlgebra::builtin("point").unwrap();
        let ring = StableRing::new(&alg, ProductRule::standard());
        let two = pf(&alg, "1:2");
        let e = ring.structure_constants(&two, &two).unwrap();
        assert_eq!(e.window, vec![4, 5, 6]);
        // 4·C(n,2) = 2·𝔭_{1,1}(n) ; 12 C₃ = 4·𝔭_{3}(n) ; 8 C₂₂ = 𝔭_{2,2}(n)
        let expect = Constants::from([(pf(&alg, "1:1.1"), q(2)), (pf(&alg, "1:3"), q(4)), (pf(&alg, "1:2.2"), q(1))]);
        assert_eq!(e.constants, expect);
    }

    #[test]
    fn point_functions_match_realisation() {
        for (rho, n) in [(vec![2], 4), (vec![1, 1], 3), (vec![3, 1], 5)] {
            let f = point_class_function(&rho, n);
            let mut full = rho.clone();
            full.extend(std::iter::repeat_n(1, n - rho.iter().sum::<usize>()));
            full.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(f.len(), 1);
            assert_eq!(f[&full], point_p_rho_value(&rho, n));
        }
    }

    #[test]
    fn single_o_class_shape() {
        let alg = FrobeniusAlgebra::builtin("P2").unwrap();
        let classes = Classes::<Q>::new(&alg, ProductRule::standard());
        let fs = FockSpace::new(&alg);
        for a in 0..3 {
            let rep = expand_o_product(&classes, &fs, &[0], &[a], 3, ShapeReading::Literal).unwrap();
            assert!(rep.violations.is_empty());
            assert_eq!(rep.coordinates.terms.len(), 1);
        }
    }

    #[test]
    fn set_partitions_count() {
        assert_eq!(set_partitions(1).len(), 1);
        assert_eq!(set_partitions(2).len(), 2);
        assert_eq!(set_partitions(3).len(), 5);
    }
}
