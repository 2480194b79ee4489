//! Vanishing axioms and `K`-vector bookkeeping for genus-zero correlators.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, is_integral};
use crate::error::{LgError, Result};
use crate::jacobi::JacobiRing;
use crate::mirror::sector_of_monomial;
use crate::monomial::Monomial;
use crate::poly::InvertiblePolynomial;
use crate::symmetry::GroupElement;
use crate::Rational;

/// `l_j = q_j (k - 2) - sum_i Theta_j(gamma_i)`.
pub fn line_bundle_degrees(w: &InvertiblePolynomial, sectors: &[GroupElement]) -> Vec<Rational> {
    let k = int(sectors.len() as i64 - 2);
    (0..w.nvars())
        .map(|j| {
            sectors.iter().fold(&w.weights()[j] * &k, |acc, g| acc - &g.phases[j])
        })
        .collect()
}

/// Dimension axiom `sum wt = c_hat + k - 3` and integrality of every `l_j`,
/// for insertions given as monomials of `Jac(W^T)`.
pub fn passes_axioms(w: &InvertiblePolynomial, insertions: &[Monomial]) -> bool {
    dimension_axiom(w, insertions) && integer_degree_axiom(w, insertions)
}

pub fn dimension_axiom(w: &InvertiblePolynomial, insertions: &[Monomial]) -> bool {
    let qt = transpose_weights(w);
    let total = insertions.iter().fold(Rational::zero(), |acc, m| acc + m.weight(&qt));
    total == w.central_charge() + int(insertions.len() as i64 - 3)
}

pub fn integer_degree_axiom(w: &InvertiblePolynomial, insertions: &[Monomial]) -> bool {
    let sectors: Vec<GroupElement> = insertions.iter().map(|m| sector_of_monomial(w, m)).collect();
    line_bundle_degrees(w, &sectors).iter().all(is_integral)
}

/// Weights of `W^T`: column sums of `E_W^{-1}`.
pub fn transpose_weights(w: &InvertiblePolynomial) -> Vec<Rational> {
    let inv = w.inverse_exponents();
    (0..w.nvars())
        .map(|j| (0..w.nvars()).fold(Rational::zero(), |acc, i| acc + &inv[(i, j)]))
        .collect()
}

/// A correlator `<x_N, ..., x_1, ..., alpha, beta>` with its derived bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelatorSpec {
    pub insertions: Vec<Monomial>,
    pub ell: Vec<u32>,
    pub m: Vec<u32>,
    pub n: Vec<u32>,
    #[serde(with = "crate::arith::serde_rat_vec")]
    pub b: Vec<Rational>,
    #[serde(with = "crate::arith::serde_rat_vec")]
    pub k: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorrelatorType {
    NotXminus1,
    Xminus1,
    X0,
}

impl CorrelatorSpec {
    /// All insertions but the last two must be single variables; they are
    /// sorted by descending index.
    pub fn new(w: &InvertiblePolynomial, insertions: &[Monomial]) -> Result<Self> {
        let nv = w.nvars();
        if insertions.len() < 3 {
            return Err(LgError::Malformed(format!("{} insertions; at least 3 needed", insertions.len())));
        }
        if let Some(m) = insertions.iter().find(|m| m.nvars() != nv) {
            return Err(LgError::Malformed(format!("insertion {m} has the wrong number of variables")));
        }
        let split = insertions.len() - 2;
        let mut prim: Vec<usize> = Vec::with_capacity(split);
        for m in &insertions[..split] {
            if m.degree() != 1 {
                return Err(LgError::Malformed(format!("leading insertion {m} is not a variable")));
            }
            prim.push(m.0.iter().position(|&e| e == 1).unwrap());
        }
        prim.sort_unstable_by(|a, b| b.cmp(a));
        let mut ell = vec![0u32; nv];
        for &v in &prim {
            ell[v] += 1;
        }
        let alpha = insertions[split].clone();
        let beta = insertions[split + 1].clone();
        let v: Vec<Rational> =
            (0..nv).map(|i| int((ell[i] + alpha.exp(i) + beta.exp(i) + 2) as i64)).collect();
        let b = w.inverse_exponents().mul_vec(&v);
        let k = (0..nv).map(|i| int(ell[i] as i64) - &b[i] + Rational::one()).collect();
        let mut ordered: Vec<Monomial> = prim.iter().map(|&v| Monomial::var(nv, v)).collect();
        ordered.push(alpha.clone());
        ordered.push(beta.clone());
        Ok(CorrelatorSpec { insertions: ordered, ell, m: alpha.0, n: beta.0, b, k })
    }

    pub fn len(&self) -> usize {
        self.insertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.insertions.is_empty()
    }

    pub fn k_sum(&self) -> Rational {
        self.k.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn k_integral(&self) -> bool {
        self.k.iter().all(is_integral)
    }

    /// `K` summed over each atomic summand of `W`.
    pub fn summand_k(&self, w: &InvertiblePolynomial) -> Vec<Rational> {
        w.summands()
            .iter()
            .map(|s| s.vars.iter().fold(Rational::zero(), |acc, &v| acc + &self.k[v]))
            .collect()
    }
}

pub fn k_vector(w: &InvertiblePolynomial, insertions: &[Monomial]) -> Result<Vec<Rational>> {
    Ok(CorrelatorSpec::new(w, insertions)?.k)
}

/// Type of a correlator in the reconstruction hierarchy; `ring` is `Jac(W^T)`.
pub fn classify_type(w: &InvertiblePolynomial, ring: &JacobiRing, x: &CorrelatorSpec) -> CorrelatorType {
    let alpha = Monomial(x.m.clone());
    let beta = Monomial(x.n.clone());
    let minus1 = x.len() >= 4
        && ring.is_basis(&alpha)
        && ring.is_basis(&beta)
        && x.k_integral()
        && x.k_sum().is_one();
    if !minus1 {
        return CorrelatorType::NotXminus1;
    }
    let per = x.summand_k(w);
    let ones: Vec<usize> = (0..per.len()).filter(|&j| per[j].is_one()).collect();
    let rest_zero = per.iter().enumerate().all(|(j, k)| ones.contains(&j) || k.is_zero());
    if ones.len() == 1 && rest_zero {
        let s = &w.summands()[ones[0]];
        let prim: u32 = s.vars.iter().map(|&v| x.ell[v]).sum();
        if prim >= 2 {
            return CorrelatorType::X0;
        }
    }
    CorrelatorType::Xminus1
}

pub const MAX_CANDIDATE_POINTS: usize = 6;

/// Every `<x_{i_1}, ..., x_{i_{k-2}}, alpha, beta>` with `3 <= k <= max_k`,
/// `alpha <= beta` standard basis monomials of `ring = Jac(W^T)`, that
/// satisfies the dimension axiom. `max_k` is capped at 6, so the total
/// degree is at most `c_hat + 3`.
pub fn enumerate_candidates(w: &InvertiblePolynomial, ring: &JacobiRing, max_k: usize) -> Vec<CorrelatorSpec> {
    let n = w.nvars();
    let weights: Vec<Rational> = (0..ring.mu()).map(|i| ring.basis_weight(i)).collect();
    let qt = transpose_weights(w);
    let mut out = Vec::new();
    for k in 3..=max_k.min(MAX_CANDIDATE_POINTS) {
        let mut prims: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..k - 2 {
            prims = prims
                .into_iter()
                .flat_map(|p| {
                    let top = p.last().copied().unwrap_or(n - 1);
                    (0..=top).map(move |v| {
                        let mut p = p.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        let target = w.central_charge() + int(k as i64 - 3);
        for p in &prims {
            let rest = p.iter().fold(target.clone(), |acc, &v| acc - &qt[v]);
            let vars: Vec<Monomial> = p.iter().map(|&v| Monomial::var(n, v)).collect();
            for a in 0..ring.mu() {
                for b in a..ring.mu() {
                    if &weights[a] + &weights[b] != rest {
                        continue;
                    }
                    let mut ins = vars.clone();
                    ins.push(ring.basis()[a].clone());
                    ins.push(ring.basis()[b].clone());
                    out.push(CorrelatorSpec::new(w, &ins).expect("well-formed by construction"));
                }
            }
        }
    }
    out
}
