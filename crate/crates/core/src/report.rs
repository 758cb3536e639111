//! Pass/fail cases with exact residual witnesses.

use serde::Serialize;

use crate::fock::CoordVector;
use crate::frobenius::FrobeniusAlgebra;
use crate::orbiring::OrbElement;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub id: String,
    pub pass: bool,
    /// First nonzero coordinate of the difference, when failing.
    pub residual: Option<String>,
}

impl Case {
    pub fn ok(id: impl Into<String>) -> Self {
        Case { id: id.into(), pass: true, residual: None }
    }

    pub fn fail(id: impl Into<String>, residual: impl Into<String>) -> Self {
        Case { id: id.into(), pass: false, residual: Some(residual.into()) }
    }

    pub fn check(id: impl Into<String>, residual: Option<String>) -> Self {
        match residual {
            None => Self::ok(id),
            Some(r) => Self::fail(id, r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    /// What the suite checks, in words.
    pub header: String,
    pub algebra: String,
    pub cases: Vec<Case>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: &str, header: &str, algebra: &str) -> Self {
        Report { suite: suite.into(), header: header.into(), algebra: algebra.into(), cases: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn extend(&mut self, cases: impl IntoIterator<Item = Case>) {
        self.cases.extend(cases);
    }

    /// Canonical JSON: keys sorted, cases sorted by id.
    pub fn to_json(&self) -> String {
        let mut r = self.clone();
        r.cases.sort_by(|a, b| a.id.cmp(&b.id));
        let v = serde_json::to_value(&r).expect("report serialises");
        serde_json::to_string_pretty(&v).expect("report serialises")
    }
}

/// First nonzero term of `x`, or `None` when `x = 0`.
pub fn orb_residual<S: Scalar>(alg: &FrobeniusAlgebra, x: &OrbElement<S>) -> Option<String> {
    let (sigma, t) = x.terms.iter().next()?;
    let (key, c) = t.terms.iter().next()?;
    let labels: Vec<&str> = key.iter().map(|&i| alg.label(i as usize)).collect();
    Some(format!("level {} perm {:?} payload {} coeff {}", x.n, sigma.one_line(), labels.join("⊗"), c.exact_repr()))
}

/// First nonzero coordinate of `v`, or `None`.
pub fn coord_residual<S: Scalar>(alg: &FrobeniusAlgebra, v: &CoordVector<S>) -> Option<String> {
    let (p, c) = v.terms.iter().next()?;
    Some(format!("monomial {} coeff {}", p.display(alg), c.exact_repr()))
}

/// Residual of `a − b`.
pub fn orb_diff<S: Scalar>(alg: &FrobeniusAlgebra, a: &OrbElement<S>, b: &OrbElement<S>) -> Option<String> {
    orb_residual(alg, &a.sub(b))
}

pub fn coord_diff<S: Scalar>(alg: &FrobeniusAlgebra, a: &CoordVector<S>, b: &CoordVector<S>) -> Option<String> {
    coord_residual(alg, &a.sub(b))
}
