//! Four-point WDVV reconstruction over the Jacobi ring of `W^T`.
//!
//! With one leading insertion `xi` the associativity identity reads
//! `<xi,g,d,e*p> = <xi,g,e,d*p> + <xi,g*e,d,p> - <xi,g*d,e,p>`, all
//! insertions reduced in the ring. Correlators are multilinear, so each side
//! expands into basis correlators keyed by sorted index quadruples.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LgError, Result};
use crate::jacobi::{JacobiRing, RingElement};
use crate::monomial::Monomial;
use crate::poly::InvertiblePolynomial;
use crate::selection::passes_axioms;
use crate::{RatMatrix, Rational};

pub type Key = [usize; 4];

pub fn key(mut ids: Key) -> Key {
    ids.sort_unstable();
    ids
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityTerm {
    pub insertions: Vec<Monomial>,
    #[serde(with = "crate::arith::serde_rat")]
    pub coefficient: Rational,
    #[serde(with = "crate::arith::serde_rat_opt")]
    pub value: Option<Rational>,
}

/// `sum coefficient * <insertions> = 0` after expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearIdentity {
    pub terms: Vec<IdentityTerm>,
    /// The correlator this identity determined, if any.
    pub solved: Option<IdentityTerm>,
}

impl LinearIdentity {
    pub fn unknowns(&self) -> usize {
        self.terms.iter().filter(|t| t.value.is_none()).count()
    }

    /// Residual of the identity when every term is known.
    pub fn residual(&self) -> Option<Rational> {
        self.terms.iter().try_fold(Rational::zero(), |acc, t| {
            t.value.as_ref().map(|v| acc + &t.coefficient * v)
        })
    }
}

/// Known four-point values for `W`, working in `Jac(W^T)`.
pub struct CorrelatorTable {
    w: InvertiblePolynomial,
    ring: JacobiRing,
    values: BTreeMap<Key, Rational>,
    gram: RatMatrix,
    gram_inv: RatMatrix,
}

impl CorrelatorTable {
    pub fn new(w: &InvertiblePolynomial) -> Result<Self> {
        let ring = JacobiRing::of_transpose(w);
        let gram = ring.gram_matrix();
        let gram_inv = gram.inverse().ok_or_else(|| LgError::Internal("degenerate residue pairing".into()))?;
        Ok(CorrelatorTable { w: w.clone(), ring, values: BTreeMap::new(), gram, gram_inv })
    }

    pub fn ring(&self) -> &JacobiRing {
        &self.ring
    }

    pub fn polynomial(&self) -> &InvertiblePolynomial {
        &self.w
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &RatMatrix {
        &self.gram_inv
    }

    pub fn values(&self) -> &BTreeMap<Key, Rational> {
        &self.values
    }

    fn monomials(&self, k: &Key) -> Vec<Monomial> {
        k.iter().map(|&i| self.ring.basis()[i].clone()).collect()
    }

    /// Zero by the unit axiom or by a selection rule.
    pub fn vanishes(&self, k: &Key) -> bool {
        let unit = self.ring.unit_index();
        k.contains(&unit) || !passes_axioms(&self.w, &self.monomials(k))
    }

    pub fn get(&self, k: &Key) -> Option<Rational> {
        let k = key(*k);
        if self.vanishes(&k) {
            return Some(Rational::zero());
        }
        self.values.get(&k).cloned()
    }

    pub fn insert(&mut self, k: Key, v: Rational) {
        self.values.insert(key(k), v);
    }

    pub fn basis_key(&self, ms: [&Monomial; 4]) -> Result<Key> {
        let mut k = [0; 4];
        for (slot, m) in k.iter_mut().zip(ms) {
            *slot = self
                .ring
                .basis_index(m)
                .ok_or_else(|| LgError::Malformed(format!("{m} is not a standard basis monomial")))?;
        }
        Ok(key(k))
    }

    fn expand(&self, acc: &mut BTreeMap<Key, Rational>, sign: &Rational, ins: [&RingElement; 4]) {
        for (&i, a) in &ins[0].coeffs {
            for (&j, b) in &ins[1].coeffs {
                for (&k, c) in &ins[2].coeffs {
                    for (&l, d) in &ins[3].coeffs {
                        let e = acc.entry(key([i, j, k, l])).or_insert_with(Rational::zero);
                        *e += sign * a * b * c * d;
                    }
                }
            }
        }
    }

    /// Builds the expanded identity without touching the table.
    pub fn identity(
        &self,
        xi: &RingElement,
        gamma: &RingElement,
        delta: &RingElement,
        eps: &RingElement,
        phi: &RingElement,
    ) -> LinearIdentity {
        let r = &self.ring;
        let one = Rational::one();
        let minus = -Rational::one();
        let mut acc = BTreeMap::new();
        self.expand(&mut acc, &one, [xi, gamma, delta, &r.multiply(eps, phi)]);
        self.expand(&mut acc, &minus, [xi, gamma, eps, &r.multiply(delta, phi)]);
        self.expand(&mut acc, &minus, [xi, &r.multiply(gamma, eps), delta, phi]);
        self.expand(&mut acc, &one, [xi, &r.multiply(gamma, delta), eps, phi]);
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| IdentityTerm { insertions: self.monomials(&k), coefficient: c, value: self.get(&k) })
            .collect();
        LinearIdentity { terms, solved: None }
    }

    /// One WDVV step: solves and records the single unknown, if there is one.
    pub fn wdvv_step(
        &mut self,
        xi: &RingElement,
        gamma: &RingElement,
        delta: &RingElement,
        eps: &RingElement,
        phi: &RingElement,
    ) -> Result<LinearIdentity> {
        let mut id = self.identity(xi, gamma, delta, eps, phi);
        match id.unknowns() {
            0 => {
                let res = id.residual().unwrap();
                if !res.is_zero() {
                    return Err(LgError::InconsistentInput(format!("WDVV identity off by {res}")));
                }
            }
            1 => {
                let (pos, t) = id.terms.iter().enumerate().find(|(_, t)| t.value.is_none()).unwrap();
                let rest = id
                    .terms
                    .iter()
                    .filter_map(|t| t.value.as_ref().map(|v| &t.coefficient * v))
                    .fold(Rational::zero(), |acc, x| acc + x);
                let v = -rest / &t.coefficient;
                let k = self.basis_key([&t.insertions[0], &t.insertions[1], &t.insertions[2], &t.insertions[3]])?;
                self.insert(k, v.clone());
                id.terms[pos].value = Some(v);
                id.solved = Some(id.terms[pos].clone());
            }
            n => return Err(LgError::Underdetermined(n)),
        }
        Ok(id)
    }

    /// Ring element of a standard basis monomial.
    pub fn element(&self, m: &Monomial) -> Result<RingElement> {
        self.ring
            .basis_index(m)
            .map(RingElement::basis)
            .ok_or_else(|| LgError::Malformed(format!("{m} is not a standard basis monomial")))
    }

    /// Basis quadruples allowed by every selection rule.
    pub fn candidates(&self) -> Vec<Key> {
        let mu = self.ring.mu();
        let mut out = Vec::new();
        for i in 0..mu {
            for j in i..mu {
                for k in j..mu {
                    for l in k..mu {
                        let key = [i, j, k, l];
                        if !self.vanishes(&key) {
                            out.push(key);
                        }
                    }
                }
            }
        }
        out
    }
}

/// True when no factorization of `b_idx` into positive-degree factors exists.
pub fn primitivity(ring: &JacobiRing, idx: usize) -> bool {
    let unit = ring.unit_index();
    if idx == unit {
        return false;
    }
    let mu = ring.mu();
    let target_w = ring.basis_weight(idx);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..mu {
        for j in i..mu {
            if i == unit || j == unit || ring.basis_weight(i) + ring.basis_weight(j) != target_w {
                continue;
            }
            let p = ring.multiply_basis(i, j);
            if !p.is_zero() {
                rows.push((0..mu).map(|k| p.coefficient(k)).collect());
            }
        }
    }
    if rows.is_empty() {
        return true;
    }
    let span = RatMatrix::from_rows(rows.clone()).rank();
    rows.push((0..mu).map(|k| if k == idx { Rational::one() } else { Rational::zero() }).collect());
    RatMatrix::from_rows(rows).rank() > span
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub candidates: usize,
    pub determined: usize,
    pub identities: usize,
    pub consistent: bool,
}

impl ClosureReport {
    pub fn complete(&self) -> bool {
        self.consistent && self.determined == self.candidates
    }
}

/// Seeds the table with `<x_i, x_i, x_i^{a_i-2}, x_i^{a_i-2}> = values[i]`
/// for every Fermat variable and propagates by WDVV steps until nothing new
/// is learned.
pub fn fermat_closure(w: &InvertiblePolynomial, values: &[Rational]) -> Result<(CorrelatorTable, ClosureReport)> {
    if w.summands().iter().any(|s| s.kind != crate::poly::AtomicKind::Fermat) {
        return Err(LgError::WrongConfiguration("closure is implemented for Fermat sums".into()));
    }
    let mut table = CorrelatorTable::new(w)?;
    let n = w.nvars();
    for i in 0..n {
        let a = w.exponent_matrix()[i][i];
        let x = Monomial::var(n, i);
        let s = Monomial::one(n).with_exp(i, a - 2);
        let k = table.basis_key([&x, &x, &s, &s])?;
        table.insert(k, values[i].clone());
    }
    let mu = table.ring.mu();
    let firsts: Vec<usize> = (0..mu).filter(|&i| i != table.ring.unit_index()).collect();
    let cands = table.candidates();
    let target = w.central_charge() + Rational::one();
    let mut identities = 0;
    let mut consistent = true;
    loop {
        let before = table.values.len();
        for &x in &firsts {
            for g in 0..mu {
                for d in 0..mu {
                    for e in 0..mu {
                        for p in 0..mu {
                            let deg = [x, g, d, e, p].iter().map(|&b| table.ring.basis_weight(b)).sum::<Rational>();
                            if deg != target {
                                continue;
                            }
                            let ins: Vec<RingElement> = [x, g, d, e, p].iter().map(|&b| RingElement::basis(b)).collect();
                            match table.wdvv_step(&ins[0], &ins[1], &ins[2], &ins[3], &ins[4]) {
                                Ok(_) => identities += 1,
                                Err(LgError::Underdetermined(_)) => {}
                                Err(LgError::InconsistentInput(_)) => consistent = false,
                                Err(e) => return Err(e),
                            }
                        }
                    }
                }
            }
        }
        if table.values.len() == before {
            break;
        }
    }
    let determined = cands.iter().filter(|k| table.values.contains_key(*k)).count();
    let report = ClosureReport { candidates: cands.len(), determined, identities, consistent };
    Ok((table, report))
}
