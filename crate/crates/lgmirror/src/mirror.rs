//! Krawitz's mirror map from monomials of `Jac(W^T)` to A-model sectors.
//!
//! A-model classes are represented only by their sector and, for broad
//! sectors, the restriction of the monomial to the fixed locus. Products and
//! pairings are computed in `Jac(W^T)` and transported.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::int;
use crate::error::{LgError, Result};
use crate::jacobi::JacobiRing;
use crate::monomial::Monomial;
use crate::poly::{AtomicKind, InvertiblePolynomial};
use crate::symmetry::{grading_element, GroupElement};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AModelClass {
    pub sector: GroupElement,
    /// Restriction of the monomial to the fixed locus of a broad sector.
    /// Final-type insertions are broad only in the two-variable loop exception.
    pub broad_monomial: Option<Monomial>,
    #[serde(with = "crate::arith::serde_rat")]
    pub degree: Rational,
}

/// `gamma = (prod rho_j^{alpha_j}) J_W`.
pub fn sector_of_monomial(w: &InvertiblePolynomial, m: &Monomial) -> GroupElement {
    let inv = w.inverse_exponents();
    let q = w.weights();
    let phases = (0..w.nvars())
        .map(|i| {
            (0..w.nvars()).fold(q[i].clone(), |acc, j| acc + &inv[(i, j)] * int(m.exp(j) as i64))
        })
        .collect();
    GroupElement::new(phases)
}

/// `deg_W = N_gamma / 2 + sum_j (Theta_j - q_j)`.
pub fn a_degree(w: &InvertiblePolynomial, g: &GroupElement) -> Rational {
    let fixed = int(g.fixed().len() as i64) / int(2);
    g.phases.iter().zip(w.weights()).fold(fixed, |acc, (t, q)| acc + t - q)
}

/// True when `x_var` sits in a two-variable loop summand with exponent 2.
pub fn is_exceptional_variable(w: &InvertiblePolynomial, var: usize) -> bool {
    w.locate(var).is_some_and(|(s, k)| {
        let a = &w.summands()[s];
        a.kind == AtomicKind::Loop && a.len() == 2 && a.exponents[k] == 2
    })
}

pub fn check_hypotheses(w: &InvertiblePolynomial) -> Result<()> {
    match w.weight_half_chain_vars().first() {
        Some(v) => Err(LgError::UnsupportedByTheorem(format!(
            "chain variable x{} has weight 1/2",
            v + 1
        ))),
        None => Ok(()),
    }
}

/// Image of a monomial of `Jac(W^T)` under the mirror map.
pub fn psi(w: &InvertiblePolynomial, m: &Monomial) -> Result<AModelClass> {
    check_hypotheses(w)?;
    if m.nvars() != w.nvars() {
        return Err(LgError::Malformed(format!("monomial {m} has the wrong number of variables")));
    }
    let sector = sector_of_monomial(w, m);
    let fixed = sector.fixed();
    let broad_monomial = if fixed.is_empty() {
        None
    } else {
        let mut r = Monomial::one(w.nvars());
        for &v in &fixed {
            r.0[v] = m.exp(v);
        }
        Some(r)
    };
    let degree = a_degree(w, &sector);
    Ok(AModelClass { sector, broad_monomial, degree })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeViolation {
    pub monomial: Monomial,
    #[serde(with = "crate::arith::serde_rat")]
    pub weight: Rational,
    #[serde(with = "crate::arith::serde_rat")]
    pub degree: Rational,
}

/// Compares `wt(m)` with `deg Psi(m)` over the whole standard basis.
pub fn degree_check(w: &InvertiblePolynomial) -> Result<Vec<DegreeViolation>> {
    let ring = JacobiRing::of_transpose(w);
    let mut out = Vec::new();
    for m in ring.basis() {
        let c = psi(w, m)?;
        let weight = ring.weight(m);
        if weight != c.degree {
            out.push(DegreeViolation { monomial: m.clone(), weight, degree: c.degree });
        }
    }
    Ok(out)
}

/// Basis pairs `(i, j)` for which some monomial of `b_i b_j` lands outside
/// the sector `gamma_i gamma_j J^{-1}`.
pub fn product_law_violations(w: &InvertiblePolynomial, ring: &JacobiRing) -> Vec<(usize, usize)> {
    let j_inv = grading_element(w).inverse();
    let sectors: Vec<GroupElement> = ring.basis().iter().map(|m| sector_of_monomial(w, m)).collect();
    let mut out = Vec::new();
    for i in 0..ring.mu() {
        for j in i..ring.mu() {
            let expect = sectors[i].compose(&sectors[j]).compose(&j_inv);
            let prod = ring.multiply_basis(i, j);
            if prod.coeffs.keys().any(|&k| sectors[k] != expect) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Checks that `Psi` on `W` agrees with the mirror maps of its summands
/// coordinate by coordinate, on every basis monomial.
pub fn tensor_law_holds(w: &InvertiblePolynomial, ring: &JacobiRing) -> Result<bool> {
    let parts: Vec<InvertiblePolynomial> =
        (0..w.summands().len()).map(|s| w.summand_polynomial(s)).collect();
    for m in ring.basis() {
        let whole = psi(w, m)?;
        let mut degree = Rational::zero();
        for (s, part) in parts.iter().enumerate() {
            let vars = &w.summands()[s].vars;
            let local = Monomial(vars.iter().map(|&v| m.exp(v)).collect());
            let c = psi(part, &local)?;
            if vars.iter().enumerate().any(|(k, &v)| whole.sector.phases[v] != c.sector.phases[k]) {
                return Ok(false);
            }
            degree += c.degree;
        }
        if degree != whole.degree {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::parse;

    #[test]
    fn identity_maps_to_grading_sector() {
        let w = parse("x1^3*x2 + x2^4").unwrap();
        let c = psi(&w, &Monomial::one(2)).unwrap();
        assert_eq!(c.sector, grading_element(&w));
        assert!(c.degree.is_zero());
    }

    #[test]
    fn fermat_top() {
        let w = parse("x1^5").unwrap();
        let c = psi(&w, &Monomial(vec![3])).unwrap();
        assert_eq!(c.sector.phases, vec![rat(4, 5)]);
        assert_eq!(c.degree, rat(3, 5));
    }

    #[test]
    fn loop22_broad() {
        let w = parse("x1^2*x2 + x2^2*x1").unwrap();
        let c = psi(&w, &Monomial(vec![1, 0])).unwrap();
        assert!(c.sector.is_identity());
        assert_eq!(c.broad_monomial, Some(Monomial(vec![1, 0])));
        assert_eq!(c.degree, rat(1, 3));
        assert!(degree_check(&w).unwrap().is_empty());
    }

    #[test]
    fn weight_half_chain_refused() {
        let w = parse("x1^2*x2 + x2^2*x3 + x3^2").unwrap();
        assert!(matches!(psi(&w, &Monomial::one(3)), Err(LgError::UnsupportedByTheorem(_))));
    }
}
