//! Brute-force quotient oracle for `Jac(f)`.
//!
//! Each weight-graded piece of `C[x]` is reduced modulo the span of
//! `u * df/dx_i` by exact Gaussian elimination. Columns for non-basis
//! monomials come first, so the reduced rows read off normal forms in the
//! standard basis, and the pivot pattern certifies that the basis is one.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::arith::int;
use crate::error::{LgError, Result};
use crate::jacobi::{JacobiRing, RingElement};
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::Rational;

#[derive(Debug)]
pub struct OracleQuotient {
    pub bound: u32,
    pub normal_forms: HashMap<Monomial, RingElement>,
    /// Quotient dimension of each graded piece touched.
    pub piece_dims: BTreeMap<Rational, usize>,
}

impl OracleQuotient {
    pub fn dimension(&self) -> usize {
        self.piece_dims.values().sum()
    }
}

/// All monomials in `n` variables of weight exactly `w`.
pub fn monomials_of_weight(q: &[Rational], w: &Rational) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; q.len()];
    fill_weight(q, 0, w.clone(), &mut cur, &mut out);
    out
}

fn fill_weight(q: &[Rational], k: usize, rest: Rational, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if k == q.len() {
        if rest.is_zero() {
            out.push(Monomial(cur.clone()));
        }
        return;
    }
    let mut e = 0u32;
    let mut left = rest;
    while left >= Rational::zero() {
        cur[k] = e;
        fill_weight(q, k + 1, left.clone(), cur, out);
        left -= &q[k];
        e += 1;
    }
    cur[k] = 0;
}

/// All monomials of total degree at most `bound`.
pub fn monomials_up_to_degree(n: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fill_degree(0, bound, &mut cur, &mut out);
    out
}

fn fill_degree(k: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if k == cur.len() {
        out.push(Monomial(cur.clone()));
        return;
    }
    for e in 0..=rest {
        cur[k] = e;
        fill_degree(k + 1, rest - e, cur, out);
    }
    cur[k] = 0;
}

/// Builds the oracle for every monomial of total degree `<= bound`.
pub fn oracle_quotient(ring: &JacobiRing, bound: u32) -> Result<OracleQuotient> {
    let top = ring.top().degree();
    if bound < top {
        return Err(LgError::BoundTooSmall { bound, top });
    }
    let f = ring.polynomial();
    let n = f.nvars();
    let q = f.weights().to_vec();
    // Partial derivatives straight from the exponent matrix.
    let partials: Vec<Vec<(Rational, Monomial)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter_map(|r| f.monomial(r).derivative(i).map(|(c, m)| (int(c as i64), m)))
                .collect()
        })
        .collect();
    let mut weights: Vec<Rational> = monomials_up_to_degree(n, bound)
        .iter()
        .map(|m| m.weight(&q))
        .chain(ring.basis().iter().map(|m| m.weight(&q)))
        .collect();
    weights.sort();
    weights.dedup();
    let mut normal_forms = HashMap::new();
    let mut piece_dims = BTreeMap::new();
    for w in weights {
        let (forms, dim) = reduce_piece(ring, &q, &partials, &w)?;
        piece_dims.insert(w, dim);
        for (m, v) in forms {
            if m.degree() <= bound {
                normal_forms.insert(m, v);
            }
        }
    }
    Ok(OracleQuotient { bound, normal_forms, piece_dims })
}

fn reduce_piece(
    ring: &JacobiRing,
    q: &[Rational],
    partials: &[Vec<(Rational, Monomial)>],
    w: &Rational,
) -> Result<(Vec<(Monomial, RingElement)>, usize)> {
    let monos = monomials_of_weight(q, w);
    let (mut cols, basis_cols): (Vec<Monomial>, Vec<Monomial>) =
        monos.into_iter().partition(|m| !ring.is_basis(m));
    let n_nonbasis = cols.len();
    cols.extend(basis_cols);
    let col_of: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (i, d) in partials.iter().enumerate() {
        let uw = w - (Rational::one() - &q[i]);
        if uw < Rational::zero() {
            continue;
        }
        for u in monomials_of_weight(q, &uw) {
            let mut row = vec![Rational::zero(); cols.len()];
            for (c, m) in d {
                let idx = col_of[&u.mul(m)];
                row[idx] += c;
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let ncols = cols.len();
    let mut mat = if rows.is_empty() { Matrix::zeros(0, ncols) } else { Matrix::from_rows(rows) };
    let pivots = mat.rref();
    if pivots.iter().any(|&c| c >= n_nonbasis) || pivots.len() != n_nonbasis {
        return Err(LgError::Internal(format!(
            "standard basis is not a basis of the weight {w} piece"
        )));
    }
    let mut out = Vec::with_capacity(ncols);
    for (r, &c) in pivots.iter().enumerate() {
        let mut e = RingElement::zero();
        for (j, col) in cols.iter().enumerate().skip(n_nonbasis) {
            let v = &mat[(r, j)];
            if !v.is_zero() {
                e.add_term(ring.basis_index(col).unwrap(), -v.clone());
            }
        }
        out.push((cols[c].clone(), e));
    }
    for col in &cols[n_nonbasis..] {
        out.push((col.clone(), RingElement::basis(ring.basis_index(col).unwrap())));
    }
    Ok((out, ncols - n_nonbasis))
}
