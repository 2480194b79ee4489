//! Invertible quasihomogeneous polynomials: parsing, atomic decomposition,
//! transposition, weights and central charge.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, rat};
use crate::error::{LgError, Result};
use crate::linalg::Matrix;
use crate::monomial::Monomial;
use crate::{RatMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AtomicKind {
    Fermat,
    Chain,
    Loop,
}

/// One atomic summand in the local numbering `x_1^{a_1} x_2 + ... `.
///
/// `vars[k]` is the ambient (0-based) index of the local variable `x_{k+1}`.
/// For a chain the row of `x_k` points at `x_{k+1}`; for a loop the last
/// variable points back at the first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AtomicSummand {
    pub kind: AtomicKind,
    pub exponents: Vec<u32>,
    pub vars: Vec<usize>,
}

impl AtomicSummand {
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn local_index(&self, ambient: usize) -> Option<usize> {
        self.vars.iter().position(|&v| v == ambient)
    }

    /// Ambient index that local variable `k` points at, if any.
    pub fn pointer(&self, k: usize) -> Option<usize> {
        let n = self.len();
        match self.kind {
            AtomicKind::Fermat => None,
            AtomicKind::Chain => (k + 1 < n).then(|| self.vars[k + 1]),
            AtomicKind::Loop => Some(self.vars[(k + 1) % n]),
        }
    }

    /// Rows of the exponent matrix contributed by this summand, keyed by the
    /// ambient index of the row's main variable.
    fn rows(&self, n_ambient: usize) -> Vec<(usize, Vec<u32>)> {
        (0..self.len())
            .map(|k| {
                let mut row = vec![0; n_ambient];
                row[self.vars[k]] = self.exponents[k];
                if let Some(p) = self.pointer(k) {
                    row[p] = 1;
                }
                (self.vars[k], row)
            })
            .collect()
    }
}

impl fmt::Display for AtomicSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            AtomicKind::Fermat => "Fermat",
            AtomicKind::Chain => "Chain",
            AtomicKind::Loop => "Loop",
        };
        let exps: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
        let vars: Vec<String> = self.vars.iter().map(|v| format!("x{}", v + 1)).collect();
        write!(f, "{}({}) on [{}]", name, exps.join(","), vars.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct InvertiblePolynomial {
    e: Vec<Vec<u32>>,
    summands: Vec<AtomicSummand>,
    e_inv: RatMatrix,
    q: Vec<Rational>,
    c_hat: Rational,
    det: BigInt,
}

impl PartialEq for InvertiblePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.e == other.e
    }
}

impl Eq for InvertiblePolynomial {}

impl InvertiblePolynomial {
    /// Builds from an exponent matrix (row `i` is monomial `i`).
    pub fn from_matrix(e: Vec<Vec<u32>>) -> Result<Self> {
        let n = e.len();
        if n == 0 {
            return Err(LgError::NonSquare { monomials: 0, variables: 0 });
        }
        if let Some(row) = e.iter().find(|r| r.len() != n) {
            return Err(LgError::NonSquare { monomials: n, variables: row.len() });
        }
        let mut seen = HashSet::new();
        for row in &e {
            if !seen.insert(row.clone()) {
                return Err(LgError::RepeatedMonomial(Monomial(row.clone()).to_string()));
            }
        }
        let summands = classify_matrix(&e)?;
        let em = to_rational_matrix(&e);
        let det_r = em.determinant();
        if det_r.is_zero() {
            return Err(LgError::Singular);
        }
        let e_inv = em.inverse().ok_or(LgError::Singular)?;
        let ones = vec![Rational::one(); n];
        let q = e_inv.mul_vec(&ones);
        let c_hat = q.iter().fold(Rational::zero(), |acc, qi| acc + int(1) - int(2) * qi);
        Ok(InvertiblePolynomial {
            e,
            summands,
            e_inv,
            q,
            c_hat,
            det: det_r.to_integer().abs(),
        })
    }

    pub fn from_summands(n: usize, summands: &[AtomicSummand]) -> Result<Self> {
        Self::from_matrix(reassemble(n, summands))
    }

    pub fn nvars(&self) -> usize {
        self.e.len()
    }

    pub fn exponent_matrix(&self) -> &[Vec<u32>] {
        &self.e
    }

    pub fn summands(&self) -> &[AtomicSummand] {
        &self.summands
    }

    pub fn weights(&self) -> &[Rational] {
        &self.q
    }

    pub fn central_charge(&self) -> &Rational {
        &self.c_hat
    }

    /// `E^{-1}`; entry `(i, j)` is `rho_j^{(i)}`.
    pub fn inverse_exponents(&self) -> &RatMatrix {
        &self.e_inv
    }

    /// `|det E|`, the order of the maximal diagonal symmetry group.
    pub fn group_order(&self) -> &BigInt {
        &self.det
    }

    pub fn transpose(&self) -> Self {
        let n = self.nvars();
        let t = (0..n).map(|i| (0..n).map(|j| self.e[j][i]).collect()).collect();
        Self::from_matrix(t).expect("transpose of an invertible polynomial is invertible")
    }

    /// Monomial `i` as an exponent vector.
    pub fn monomial(&self, i: usize) -> Monomial {
        Monomial(self.e[i].clone())
    }

    /// Locates a variable: `(summand index, local position)`.
    pub fn locate(&self, var: usize) -> Option<(usize, usize)> {
        self.summands
            .iter()
            .enumerate()
            .find_map(|(s, a)| a.local_index(var).map(|k| (s, k)))
    }

    /// Chain variables of weight exactly 1/2 (chain tails with exponent 2).
    pub fn weight_half_chain_vars(&self) -> Vec<usize> {
        self.summands
            .iter()
            .filter(|s| s.kind == AtomicKind::Chain)
            .filter_map(|s| {
                let v = *s.vars.last().unwrap();
                (self.q[v] == rat(1, 2)).then_some(v)
            })
            .collect()
    }

    /// Standalone copy of one summand with variables renumbered to its local order.
    pub fn summand_polynomial(&self, s: usize) -> Self {
        let a = &self.summands[s];
        let local = AtomicSummand {
            kind: a.kind,
            exponents: a.exponents.clone(),
            vars: (0..a.len()).collect(),
        };
        Self::from_summands(a.len(), &[local]).expect("atomic summand is invertible")
    }

    pub fn is_atomic(&self) -> bool {
        self.summands.len() == 1
    }
}

impl fmt::Display for InvertiblePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.e.iter().map(|r| Monomial(r.clone()).to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn to_rational_matrix(e: &[Vec<u32>]) -> RatMatrix {
    Matrix::from_rows(
        e.iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect(),
    )
}

/// Reassembles the exponent matrix, ordering rows by main variable.
pub fn reassemble(n: usize, summands: &[AtomicSummand]) -> Vec<Vec<u32>> {
    let mut rows: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for s in summands {
        for (main, row) in s.rows(n) {
            rows.insert(main, row);
        }
    }
    rows.into_values().collect()
}

/// Decomposes an exponent matrix into atomic summands.
pub fn classify_matrix(e: &[Vec<u32>]) -> Result<Vec<AtomicSummand>> {
    let n = e.len();
    let mut main_of_row = vec![usize::MAX; n];
    let mut pointer_of_row = vec![None; n];
    for (r, row) in e.iter().enumerate() {
        let nz: Vec<usize> = (0..n).filter(|&j| row[j] > 0).collect();
        let shape_err = || {
            LgError::NotInvertibleShape(format!("monomial {} has no atomic shape", Monomial(row.clone())))
        };
        match nz.as_slice() {
            [i] if row[*i] >= 2 => main_of_row[r] = *i,
            [i, j] => {
                let (main, ptr) = match (row[*i], row[*j]) {
                    (a, 1) if a >= 2 => (*i, *j),
                    (1, b) if b >= 2 => (*j, *i),
                    _ => return Err(shape_err()),
                };
                main_of_row[r] = main;
                pointer_of_row[r] = Some(ptr);
            }
            _ => return Err(shape_err()),
        }
    }
    let mut row_of_var = vec![usize::MAX; n];
    for (r, &v) in main_of_row.iter().enumerate() {
        if row_of_var[v] != usize::MAX {
            return Err(LgError::NotInvertibleShape(format!(
                "x{} is the leading variable of two monomials",
                v + 1
            )));
        }
        row_of_var[v] = r;
    }
    let next: Vec<Option<usize>> = (0..n).map(|v| pointer_of_row[row_of_var[v]]).collect();
    let mut indeg = vec![0usize; n];
    for t in next.iter().flatten() {
        indeg[*t] += 1;
    }
    if let Some(v) = (0..n).find(|&v| indeg[v] > 1) {
        return Err(LgError::NotInvertibleShape(format!("x{} is pointed at twice", v + 1)));
    }
    let exp_of = |v: usize| e[row_of_var[v]][v];
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    // Paths start at variables nobody points at.
    for start in 0..n {
        if indeg[start] != 0 {
            continue;
        }
        let mut vars = vec![start];
        assigned[start] = true;
        let mut cur = start;
        while let Some(t) = next[cur] {
            vars.push(t);
            assigned[t] = true;
            cur = t;
        }
        let exponents = vars.iter().map(|&v| exp_of(v)).collect();
        let kind = if vars.len() == 1 { AtomicKind::Fermat } else { AtomicKind::Chain };
        out.push(AtomicSummand { kind, exponents, vars });
    }
    // Whatever remains lies on cycles.
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let mut vars = vec![start];
        assigned[start] = true;
        let mut cur = next[start].expect("cycle member has a pointer");
        while cur != start {
            vars.push(cur);
            assigned[cur] = true;
            cur = next[cur].expect("cycle member has a pointer");
        }
        let exponents: Vec<u32> = vars.iter().map(|&v| exp_of(v)).collect();
        out.push(canonical_loop(vars, exponents));
    }
    out.sort_by_key(|s| *s.vars.iter().min().unwrap());
    Ok(out)
}

/// Rotates a loop so the lexicographically smallest exponent tuple comes first;
/// ties go to the rotation starting at the smallest ambient index.
fn canonical_loop(vars: Vec<usize>, exponents: Vec<u32>) -> AtomicSummand {
    let n = vars.len();
    let best = (0..n)
        .min_by_key(|&r| {
            let exps: Vec<u32> = (0..n).map(|k| exponents[(r + k) % n]).collect();
            (exps, vars[r])
        })
        .unwrap();
    AtomicSummand {
        kind: AtomicKind::Loop,
        exponents: (0..n).map(|k| exponents[(best + k) % n]).collect(),
        vars: (0..n).map(|k| vars[(best + k) % n]).collect(),
    }
}

/// Loop in local numbering rotated so that local position `k` becomes the last variable.
pub fn loop_rotated_to_end(exponents: &[u32], k: usize) -> Vec<u32> {
    let n = exponents.len();
    (0..n).map(|j| exponents[(k + 1 + j) % n]).collect()
}

/// Closed form of `rho_j^{(i)}` for the chain `x_1^{a_1}x_2 + ... + x_N^{a_N}` (1-based).
pub fn chain_rho(a: &[u32], i: usize, j: usize) -> Rational {
    if j < i {
        return Rational::zero();
    }
    let prod: BigInt = (i..=j).map(|k| BigInt::from(a[k - 1])).product();
    let sign = if (j - i).is_multiple_of(2) { 1 } else { -1 };
    Rational::new(BigInt::from(sign), prod)
}

/// Closed form of `rho_j^{(i)}` for the loop `x_1^{a_1}x_2 + ... + x_N^{a_N}x_1` (1-based).
pub fn loop_rho(a: &[u32], i: usize, j: usize) -> Rational {
    let n = a.len();
    let all: BigInt = a.iter().map(|&x| BigInt::from(x)).product();
    let sign_n = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
    let l = Rational::new(BigInt::one(), all + BigInt::from(sign_n));
    let prod = |lo: usize, hi: usize| -> BigInt {
        (lo..=hi).map(|k| BigInt::from(a[k - 1])).product()
    };
    if j >= i {
        let sign = if (j - i).is_multiple_of(2) { 1 } else { -1 };
        let p = prod(j + 1, n) * prod(1, i - 1);
        l * Rational::from_integer(p * sign)
    } else {
        let sign = if (n + j - i).is_multiple_of(2) { 1 } else { -1 };
        l * Rational::from_integer(prod(j + 1, i - 1) * sign)
    }
}

/// Parses either the `x1^a*x2 + ...` grammar or a JSON object `{"E": [[...]]}`.
pub fn parse(text: &str) -> Result<InvertiblePolynomial> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let rows = parse_rows(text)?;
    InvertiblePolynomial::from_matrix(rows)
}

fn parse_json(text: &str) -> Result<InvertiblePolynomial> {
    #[derive(Deserialize)]
    struct Input {
        #[serde(rename = "E")]
        e: Vec<Vec<i64>>,
    }
    let input: Input = serde_json::from_str(text).map_err(|err| LgError::Syntax {
        pos: err.column(),
        msg: err.to_string(),
    })?;
    let mut rows = Vec::new();
    for row in input.e {
        let mut out = Vec::new();
        for x in row {
            if x < 0 {
                return Err(LgError::BadExponent(format!("negative entry {x}")));
            }
            out.push(u32::try_from(x).map_err(|_| LgError::BadExponent(x.to_string()))?);
        }
        rows.push(out);
    }
    InvertiblePolynomial::from_matrix(rows)
}

/// Parses a polynomial string into exponent rows (monomials in input order).
pub fn parse_rows(text: &str) -> Result<Vec<Vec<u32>>> {
    let terms = parse_terms(text)?;
    let n = terms
        .iter()
        .flat_map(|t| t.keys().copied())
        .max()
        .ok_or(LgError::Syntax { pos: 0, msg: "empty polynomial".into() })?;
    for v in 1..=n {
        if !terms.iter().any(|t| t.contains_key(&v)) {
            return Err(LgError::MissingVariable(v));
        }
    }
    let rows: Vec<Vec<u32>> = terms
        .iter()
        .map(|t| (1..=n).map(|v| t.get(&v).copied().unwrap_or(0)).collect())
        .collect();
    let mut seen = HashSet::new();
    for r in &rows {
        if !seen.insert(r.clone()) {
            return Err(LgError::RepeatedMonomial(Monomial(r.clone()).to_string()));
        }
    }
    if terms.len() != n {
        return Err(LgError::NonSquare { monomials: terms.len(), variables: n });
    }
    Ok(rows)
}

/// Parses a single monomial such as `x1^2*x3` or `1` over `n` variables.
pub fn parse_monomial(text: &str, n: usize) -> Result<Monomial> {
    if text.trim() == "1" {
        return Ok(Monomial::one(n));
    }
    let terms = parse_terms(text)?;
    if terms.len() != 1 {
        return Err(LgError::Syntax { pos: 0, msg: "expected a single monomial".into() });
    }
    let mut e = vec![0; n];
    for (&v, &x) in &terms[0] {
        if v > n {
            return Err(LgError::VariableOutOfRange(v));
        }
        e[v - 1] = x;
    }
    Ok(Monomial(e))
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> LgError {
        LgError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large"))
    }
}

fn parse_terms(text: &str) -> Result<Vec<BTreeMap<usize, u32>>> {
    let mut lx = Lexer { bytes: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    loop {
        let mut term: BTreeMap<usize, u32> = BTreeMap::new();
        loop {
            match lx.peek() {
                Some(b'x') => lx.pos += 1,
                Some(b'-') => return Err(LgError::BadExponent("negative values are not allowed".into())),
                _ => return Err(lx.err("expected a factor 'x<index>'")),
            }
            let idx = lx.number()?;
            if idx == 0 {
                return Err(lx.err("variable indices start at 1"));
            }
            let mut exp = 1u64;
            if lx.peek() == Some(b'^') {
                lx.pos += 1;
                if lx.peek() == Some(b'-') {
                    return Err(LgError::BadExponent(format!("negative exponent on x{idx}")));
                }
                exp = lx.number()?;
                if exp == 0 {
                    return Err(LgError::BadExponent(format!("zero exponent on x{idx}")));
                }
            }
            let exp = u32::try_from(exp).map_err(|_| LgError::BadExponent(exp.to_string()))?;
            *term.entry(idx as usize).or_insert(0) += exp;
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        terms.push(term);
        match lx.peek() {
            Some(b'+') => lx.pos += 1,
            None => break,
            Some(_) => return Err(lx.err("expected '+', '*' or end of input")),
        }
    }
    Ok(terms)
}
