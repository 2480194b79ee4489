//! Diagonal symmetries stored additively as phase vectors in `[0, 1)^N`.

use std::collections::HashSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{frac, is_integral};
use crate::error::{LgError, Result};
use crate::poly::InvertiblePolynomial;
use crate::Rational;

pub const DEFAULT_GROUP_CAP: usize = 100_000;
pub const GROUP_CAP_ENV: &str = "LGMIRROR_GROUP_CAP";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    #[serde(with = "crate::arith::serde_rat_vec")]
    pub phases: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectorKind {
    Narrow,
    /// Fixed coordinates (0-based).
    Broad(Vec<usize>),
}

impl GroupElement {
    /// Reduces every phase into `[0, 1)`.
    pub fn new(phases: Vec<Rational>) -> Self {
        GroupElement { phases: phases.iter().map(frac).collect() }
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { phases: vec![Rational::zero(); n] }
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.phases.len(), other.phases.len());
        GroupElement::new(self.phases.iter().zip(&other.phases).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> Self {
        GroupElement::new(self.phases.iter().map(|a| -a.clone()).collect())
    }

    pub fn fixed(&self) -> Vec<usize> {
        (0..self.phases.len()).filter(|&i| self.phases[i].is_zero()).collect()
    }

    pub fn kind(&self) -> SectorKind {
        let fixed = self.fixed();
        if fixed.is_empty() {
            SectorKind::Narrow
        } else {
            SectorKind::Broad(fixed)
        }
    }

    pub fn is_narrow(&self) -> bool {
        self.phases.iter().all(|p| !p.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.phases.iter().all(Zero::is_zero)
    }
}

/// `rho_j`: phases read from column `j` of `E^{-1}`.
pub fn generator_rho(p: &InvertiblePolynomial, j: usize) -> GroupElement {
    GroupElement::new(p.inverse_exponents().column(j))
}

/// The exponential grading element `J`, with phases `q_i`.
pub fn grading_element(p: &InvertiblePolynomial) -> GroupElement {
    GroupElement::new(p.weights().to_vec())
}

/// True when every monomial of `p` is invariant under `g`.
pub fn preserves(p: &InvertiblePolynomial, g: &GroupElement) -> bool {
    p.exponent_matrix().iter().all(|row| {
        let s = row
            .iter()
            .zip(&g.phases)
            .fold(Rational::zero(), |acc, (&e, t)| acc + t * Rational::from_integer(e.into()));
        is_integral(&s)
    })
}

pub fn group_cap() -> usize {
    std::env::var(GROUP_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GROUP_CAP)
}

/// Enumerates the group generated by all `rho_j`, failing beyond `cap` elements.
pub fn enumerate_group(p: &InvertiblePolynomial, cap: usize) -> Result<Vec<GroupElement>> {
    let gens: Vec<GroupElement> = (0..p.nvars()).map(|j| generator_rho(p, j)).collect();
    let id = GroupElement::identity(p.nvars());
    let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
    let mut order = vec![id];
    let mut frontier = 0;
    while frontier < order.len() {
        let g = order[frontier].clone();
        frontier += 1;
        for h in &gens {
            let gh = g.compose(h);
            if seen.insert(gh.clone()) {
                if order.len() >= cap {
                    return Err(LgError::GroupCapExceeded(cap));
                }
                order.push(gh);
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::parse;
    use num_bigint::BigInt;

    #[test]
    fn fermat_generators() {
        let p = parse("x1^5").unwrap();
        assert_eq!(generator_rho(&p, 0).phases, vec![rat(1, 5)]);
        assert_eq!(grading_element(&p).phases, vec![rat(1, 5)]);
    }

    #[test]
    fn loop22_generator() {
        let p = parse("x1^2*x2 + x2^2*x1").unwrap();
        assert_eq!(generator_rho(&p, 0).phases, vec![rat(2, 3), rat(2, 3)]);
    }

    #[test]
    fn grading_is_product_of_generators() {
        let p = parse("x1^3*x2 + x2^4*x3 + x3^2").unwrap();
        let prod = (0..3)
            .map(|j| generator_rho(&p, j))
            .fold(GroupElement::identity(3), |a, b| a.compose(&b));
        assert_eq!(prod, grading_element(&p));
    }

    #[test]
    fn compose_inverse_kinds() {
        let p = parse("x1^3").unwrap();
        let j = grading_element(&p);
        assert!(j.compose(&j.inverse()).is_identity());
        assert_eq!(j.kind(), SectorKind::Narrow);
        assert_eq!(GroupElement::identity(2).kind(), SectorKind::Broad(vec![0, 1]));
    }

    #[test]
    fn group_orders() {
        let p = parse("x1^2*x2 + x2^2*x1").unwrap();
        assert_eq!(p.group_order(), &BigInt::from(3));
        let q = parse("x1^3 + x2^4").unwrap();
        assert_eq!(q.group_order(), &BigInt::from(12));
        assert_eq!(enumerate_group(&q, 100).unwrap().len(), 12);
        assert!(matches!(enumerate_group(&q, 5), Err(LgError::GroupCapExceeded(5))));
    }
}
