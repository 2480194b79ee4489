//! The Jacobi algebra of an invertible polynomial `f` in its standard monomial
//! basis, with a rewriting normal form that can also track the Brieskorn
//! lattice correction terms `[g df/dx_i] = -z [dg/dx_i]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::arith::{int, rat};
use crate::linalg::Matrix;
use crate::monomial::{Monomial, Polynomial};
use crate::poly::{AtomicKind, InvertiblePolynomial};
use crate::{RatMatrix, Rational};

/// Sparse combination of standard-basis monomials, keyed by basis index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    pub coeffs: BTreeMap<usize, Rational>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Rational::one())
    }

    pub fn term(i: usize, c: Rational) -> Self {
        let mut e = RingElement::zero();
        e.add_term(i, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, i: usize) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &RingElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&i, v) in &other.coeffs {
            self.add_term(i, v * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> RingElement {
        let mut out = RingElement::zero();
        out.add_scaled(self, c);
        out
    }
}

/// Normal form in the Brieskorn lattice: z-power to ring element.
pub type ZExpansion = BTreeMap<i32, RingElement>;

pub fn zexp_add_scaled(acc: &mut ZExpansion, other: &ZExpansion, c: &Rational, shift: i32) {
    if c.is_zero() {
        return;
    }
    for (&k, v) in other {
        let slot = acc.entry(k + shift).or_default();
        slot.add_scaled(v, c);
        if slot.is_zero() {
            acc.remove(&(k + shift));
        }
    }
}

/// One atomic piece of `f`, in the local form
/// Fermat `x^a`, chain `x_1^{a_1} + x_1 x_2^{a_2} + ... + x_{n-1} x_n^{a_n}`,
/// loop `x_n x_1^{a_1} + x_1 x_2^{a_2} + ... + x_{n-1} x_n^{a_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPart {
    pub kind: AtomicKind,
    pub a: Vec<u32>,
    pub vars: Vec<usize>,
}

/// `coef * g * df/dx_var`.
#[derive(Clone, Debug)]
struct Cofactor {
    coef: Rational,
    g: Monomial,
    var: usize,
}

enum Step {
    Basis,
    /// `m = coef * next + sum of cofactor terms`.
    Next { coef: Rational, next: Monomial, cof: Vec<Cofactor> },
    /// `m` lies in the Jacobian ideal: `m = sum of cofactor terms`.
    Zero { cof: Vec<Cofactor> },
}

impl RingPart {
    fn r(&self, m: &Monomial, k: usize) -> u32 {
        m.exp(self.vars[k])
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    /// Local exponent tuple of the top element.
    pub fn top(&self) -> Vec<u32> {
        let n = self.n();
        match self.kind {
            AtomicKind::Fermat => vec![self.a[0] - 2],
            AtomicKind::Loop => self.a.iter().map(|a| a - 1).collect(),
            AtomicKind::Chain => (0..n)
                .map(|k| if k + 1 == n { self.a[k] - 2 } else { self.a[k] - 1 })
                .collect(),
        }
    }

    /// Chain exclusion patterns as local exponent lower bounds.
    fn chain_patterns(&self) -> Vec<(Vec<u32>, Vec<usize>)> {
        let n = self.n();
        let mut out = Vec::new();
        // P_l = x_{n-2l-1} * prod_{j=0..l} x_{n-2j}^{a_{n-2j}-1}, 1-based.
        let mut l = 0;
        while n >= 2 * l + 2 {
            let mut pat = vec![0; n];
            pat[n - 2 * l - 2] = 1;
            let mut seq = Vec::new();
            for j in (0..=l).rev() {
                let k = n - 2 * j - 1;
                pat[k] = self.a[k] - 1;
                seq.push(k);
            }
            out.push((pat, seq));
            l += 1;
        }
        if n % 2 == 1 {
            let mut pat = vec![0; n];
            let mut seq = Vec::new();
            for k in (0..n).step_by(2) {
                pat[k] = self.a[k] - 1;
                seq.push(k);
            }
            out.push((pat, seq));
        }
        out
    }

    pub fn local_in_basis(&self, r: &[u32]) -> bool {
        let n = self.n();
        match self.kind {
            AtomicKind::Fermat => r[0] + 2 <= self.a[0],
            AtomicKind::Loop => (0..n).all(|k| r[k] < self.a[k]),
            AtomicKind::Chain => {
                (0..n).all(|k| r[k] < self.a[k])
                    && !self
                        .chain_patterns()
                        .iter()
                        .any(|(p, _)| p.iter().zip(r).all(|(x, y)| x <= y))
            }
        }
    }

    fn in_basis(&self, m: &Monomial) -> bool {
        let r: Vec<u32> = (0..self.n()).map(|k| self.r(m, k)).collect();
        self.local_in_basis(&r)
    }

    fn step(&self, m: &Monomial) -> Step {
        let n = self.n();
        match self.kind {
            AtomicKind::Fermat => {
                let (v, a) = (self.vars[0], self.a[0]);
                if m.exp(v) + 2 <= a {
                    return Step::Basis;
                }
                let g = m.with_exp(v, m.exp(v) - (a - 1));
                Step::Zero { cof: vec![Cofactor { coef: rat(1, a as i64), g, var: v }] }
            }
            AtomicKind::Loop => {
                let Some(j) = (0..n).find(|&k| self.r(m, k) >= self.a[k]) else {
                    return Step::Basis;
                };
                let prev = (j + n - 1) % n;
                let prev2 = (j + n - 2) % n;
                Step::Next {
                    coef: -int(self.a[prev] as i64),
                    next: self.swap_power(m, j, prev, Some(prev2)),
                    cof: vec![Cofactor {
                        coef: Rational::one(),
                        g: m.with_exp(self.vars[j], m.exp(self.vars[j]) - self.a[j]),
                        var: self.vars[prev],
                    }],
                }
            }
            AtomicKind::Chain => {
                if let Some(j) = (1..n).rev().find(|&k| self.r(m, k) >= self.a[k]) {
                    let prev = j - 1;
                    let prev2 = (j >= 2).then(|| j - 2);
                    return Step::Next {
                        coef: -int(self.a[prev] as i64),
                        next: self.swap_power(m, j, prev, prev2),
                        cof: vec![Cofactor {
                            coef: Rational::one(),
                            g: m.with_exp(self.vars[j], m.exp(self.vars[j]) - self.a[j]),
                            var: self.vars[prev],
                        }],
                    };
                }
                if self.r(m, 0) >= self.a[0] {
                    let seq: Vec<usize> = (0..n).collect();
                    return Step::Zero { cof: self.descend(m, &seq) };
                }
                let r: Vec<u32> = (0..n).map(|k| self.r(m, k)).collect();
                for (pat, seq) in self.chain_patterns() {
                    if pat.iter().zip(&r).all(|(x, y)| x <= y) {
                        return Step::Zero { cof: self.descend(m, &seq) };
                    }
                }
                Step::Basis
            }
        }
    }

    /// Replaces `x_j^{a_j}` by `x_{prev2} x_prev^{a_prev - 1}` (coefficient handled by caller).
    fn swap_power(&self, m: &Monomial, j: usize, prev: usize, prev2: Option<usize>) -> Monomial {
        let mut out = m.with_exp(self.vars[j], m.exp(self.vars[j]) - self.a[j]);
        out = out.times_var(self.vars[prev], self.a[prev] - 1);
        if let Some(p2) = prev2 {
            out = out.times_var(self.vars[p2], 1);
        }
        out
    }

    /// Writes a chain monomial lying in the Jacobian ideal as an explicit
    /// combination of partial derivatives, walking the carriers
    /// `x_{j-1} x_j^{a_j - 1}` in the given order up to the last variable.
    fn descend(&self, m: &Monomial, seq: &[usize]) -> Vec<Cofactor> {
        let n = self.n();
        let mut cur = m.clone();
        let mut coef = Rational::one();
        let mut cof = Vec::new();
        for &j in seq {
            let mut carrier = Monomial::one(m.nvars()).times_var(self.vars[j], self.a[j] - 1);
            if j > 0 {
                carrier = carrier.times_var(self.vars[j - 1], 1);
            }
            assert!(carrier.divides(&cur), "chain descent lost its carrier");
            let v = carrier.quotient_of(&cur);
            let aj = int(self.a[j] as i64);
            cof.push(Cofactor { coef: &coef / &aj, g: v.clone(), var: self.vars[j] });
            if j + 1 < n {
                cur = v.times_var(self.vars[j + 1], self.a[j + 1]);
                coef = -coef / aj;
            }
        }
        assert_eq!(seq.last(), Some(&(n - 1)), "chain descent must end at the last variable");
        cof
    }
}

/// Converts a summand of the ring polynomial (classified in the
/// `y_1^{b_1} y_2 + ...` convention) into local ring form.
fn ring_part(s: &crate::poly::AtomicSummand) -> RingPart {
    match s.kind {
        AtomicKind::Fermat => RingPart { kind: s.kind, a: s.exponents.clone(), vars: s.vars.clone() },
        AtomicKind::Chain | AtomicKind::Loop => RingPart {
            kind: s.kind,
            a: s.exponents.iter().rev().copied().collect(),
            vars: s.vars.iter().rev().copied().collect(),
        },
    }
}

pub struct JacobiRing {
    f: InvertiblePolynomial,
    parts: Vec<RingPart>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    top: usize,
    jac_cache: RwLock<HashMap<Monomial, Arc<ZExpansion>>>,
    lat_cache: RwLock<HashMap<Monomial, Arc<ZExpansion>>>,
}

impl std::fmt::Debug for JacobiRing {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("JacobiRing").field("f", &self.f.to_string()).field("mu", &self.mu()).finish()
    }
}

impl JacobiRing {
    /// The Jacobi ring of `f` itself.
    pub fn new(f: &InvertiblePolynomial) -> Self {
        let parts: Vec<RingPart> = f.summands().iter().map(ring_part).collect();
        let n = f.nvars();
        let mut basis = vec![Monomial::one(n)];
        for part in &parts {
            let local = local_basis(part);
            let mut next = Vec::with_capacity(basis.len() * local.len());
            for b in &basis {
                for r in &local {
                    let mut m = b.clone();
                    for (k, &e) in r.iter().enumerate() {
                        m.0[part.vars[k]] = e;
                    }
                    next.push(m);
                }
            }
            basis = next;
        }
        basis.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.0.cmp(&y.0)));
        let mut top = Monomial::one(n);
        for part in &parts {
            for (k, e) in part.top().into_iter().enumerate() {
                top.0[part.vars[k]] = e;
            }
        }
        let index: HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let top = index[&top];
        JacobiRing {
            f: f.clone(),
            parts,
            basis,
            index,
            top,
            jac_cache: RwLock::new(HashMap::new()),
            lat_cache: RwLock::new(HashMap::new()),
        }
    }

    /// The Jacobi ring of the transpose `W^T`.
    pub fn of_transpose(w: &InvertiblePolynomial) -> Self {
        Self::new(&w.transpose())
    }

    pub fn polynomial(&self) -> &InvertiblePolynomial {
        &self.f
    }

    pub fn parts(&self) -> &[RingPart] {
        &self.parts
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn weights(&self) -> &[Rational] {
        self.f.weights()
    }

    pub fn central_charge(&self) -> &Rational {
        self.f.central_charge()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn mu(&self) -> usize {
        self.basis.len()
    }

    pub fn top_index(&self) -> usize {
        self.top
    }

    pub fn top(&self) -> &Monomial {
        &self.basis[self.top]
    }

    pub fn unit_index(&self) -> usize {
        self.index[&Monomial::one(self.nvars())]
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn is_basis(&self, m: &Monomial) -> bool {
        self.index.contains_key(m)
    }

    pub fn weight(&self, m: &Monomial) -> Rational {
        m.weight(self.weights())
    }

    pub fn basis_weight(&self, i: usize) -> Rational {
        self.weight(&self.basis[i])
    }

    /// Partial derivative `df/dx_var` as a polynomial.
    pub fn partial(&self, var: usize) -> Polynomial {
        let mut p = Polynomial::zero();
        for i in 0..self.nvars() {
            if let Some((c, m)) = self.f.monomial(i).derivative(var) {
                p.add_term(m, int(c as i64));
            }
        }
        p
    }

    /// Normal form of a monomial in the standard basis of `Jac(f)`.
    pub fn reduce(&self, m: &Monomial) -> RingElement {
        self.normal_form(m, false).get(&0).cloned().unwrap_or_default()
    }

    pub fn reduce_poly(&self, p: &Polynomial) -> RingElement {
        let mut out = RingElement::zero();
        for (m, c) in &p.terms {
            out.add_scaled(&self.reduce(m), c);
        }
        out
    }

    /// Normal form of `[m d^n x]` in the Brieskorn lattice: z-power to ring element.
    pub fn lattice_reduce(&self, m: &Monomial) -> Arc<ZExpansion> {
        self.normal_form(m, true)
    }

    pub fn to_polynomial(&self, e: &RingElement) -> Polynomial {
        let mut p = Polynomial::zero();
        for (&i, c) in &e.coeffs {
            p.add_term(self.basis[i].clone(), c.clone());
        }
        p
    }

    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (&i, ca) in &a.coeffs {
            for (&j, cb) in &b.coeffs {
                let prod = self.reduce(&self.basis[i].mul(&self.basis[j]));
                out.add_scaled(&prod, &(ca * cb));
            }
        }
        out
    }

    pub fn multiply_basis(&self, i: usize, j: usize) -> RingElement {
        self.reduce(&self.basis[i].mul(&self.basis[j]))
    }

    /// Normalized residue pairing: the top coefficient of `a * b`.
    pub fn residue_pairing(&self, a: &RingElement, b: &RingElement) -> Rational {
        self.multiply(a, b).coefficient(self.top)
    }

    pub fn pairing_basis(&self, i: usize, j: usize) -> Rational {
        self.multiply_basis(i, j).coefficient(self.top)
    }

    /// Three-point function `eta(b_i b_j, b_k)`.
    pub fn three_point(&self, i: usize, j: usize, k: usize) -> Rational {
        self.reduce(&self.basis[i].mul(&self.basis[j]).mul(&self.basis[k])).coefficient(self.top)
    }

    pub fn gram_matrix(&self) -> RatMatrix {
        let mu = self.mu();
        let mut g = Matrix::zeros(mu, mu);
        for i in 0..mu {
            for j in i..mu {
                let v = self.pairing_basis(i, j);
                g[(i, j)] = v.clone();
                g[(j, i)] = v;
            }
        }
        g
    }

    fn step(&self, m: &Monomial) -> Step {
        for part in &self.parts {
            if !part.in_basis(m) {
                return part.step(m);
            }
        }
        Step::Basis
    }

    fn cached(&self, m: &Monomial, track: bool) -> Option<Arc<ZExpansion>> {
        let cache = if track { &self.lat_cache } else { &self.jac_cache };
        cache.read().unwrap().get(m).cloned()
    }

    fn zterms(&self, cof: &[Cofactor], track: bool) -> ZExpansion {
        let mut out = ZExpansion::new();
        if !track {
            return out;
        }
        for c in cof {
            if let Some((e, d)) = c.g.derivative(c.var) {
                let nf = self.normal_form(&d, true);
                zexp_add_scaled(&mut out, &nf, &(-(&c.coef) * int(e as i64)), 1);
            }
        }
        out
    }

    /// Follows the rewrite path from `m`. Each step is affine with a single
    /// successor, so the path ends at a basis monomial, an ideal element, a
    /// cached value, or closes into a cycle that is solved exactly.
    fn normal_form(&self, m: &Monomial, track: bool) -> Arc<ZExpansion> {
        if let Some(v) = self.cached(m, track) {
            return v;
        }
        enum End {
            Known(Arc<ZExpansion>),
            Cycle(usize),
        }
        let mut path: Vec<(Monomial, Rational, ZExpansion)> = Vec::new();
        let mut visited: HashMap<Monomial, usize> = HashMap::new();
        let mut cur = m.clone();
        let end = loop {
            if let Some(v) = self.cached(&cur, track) {
                break End::Known(v);
            }
            if let Some(&pos) = visited.get(&cur) {
                break End::Cycle(pos);
            }
            match self.step(&cur) {
                Step::Basis => {
                    let mut v = ZExpansion::new();
                    v.insert(0, RingElement::basis(self.index[&cur]));
                    break End::Known(Arc::new(v));
                }
                Step::Zero { cof } => {
                    let z = self.zterms(&cof, track);
                    path.push((cur.clone(), Rational::zero(), z));
                    break End::Known(Arc::new(ZExpansion::new()));
                }
                Step::Next { coef, next, cof } => {
                    let z = self.zterms(&cof, track);
                    visited.insert(cur.clone(), path.len());
                    path.push((cur, coef, z));
                    cur = next;
                }
            }
        };
        if path.is_empty() {
            // `m` itself is a basis monomial or was cached meanwhile.
            let v = match end {
                End::Known(v) => v,
                End::Cycle(_) => unreachable!("empty path cannot cycle"),
            };
            self.store(m, &v, track);
            return v;
        }
        let len = path.len();
        let mut vals: Vec<Option<ZExpansion>> = vec![None; len];
        let (mut next, stop) = match end {
            End::Known(v) => ((*v).clone(), len),
            End::Cycle(s) => {
                let mut acc = ZExpansion::new();
                let mut prod = Rational::one();
                for (_, c, z) in &path[s..] {
                    zexp_add_scaled(&mut acc, z, &prod, 0);
                    prod *= c;
                }
                let denom = Rational::one() - prod;
                assert!(!denom.is_zero(), "singular rewrite cycle");
                let mut vs = ZExpansion::new();
                zexp_add_scaled(&mut vs, &acc, &(Rational::one() / denom), 0);
                // Fill the rest of the cycle backwards from its end.
                let mut nx = vs.clone();
                for k in (s + 1..len).rev() {
                    let (_, c, z) = &path[k];
                    let mut v = z.clone();
                    zexp_add_scaled(&mut v, &nx, c, 0);
                    vals[k] = Some(v.clone());
                    nx = v;
                }
                vals[s] = Some(vs.clone());
                (vs, s)
            }
        };
        for k in (0..stop).rev() {
            let (_, c, z) = &path[k];
            let mut v = z.clone();
            zexp_add_scaled(&mut v, &next, c, 0);
            vals[k] = Some(v.clone());
            next = v;
        }
        let mut result = None;
        for (k, (mono, _, _)) in path.iter().enumerate() {
            let v = Arc::new(vals[k].take().expect("every path entry resolved"));
            self.store(mono, &v, track);
            if k == 0 {
                result = Some(v);
            }
        }
        result.unwrap()
    }

    fn store(&self, m: &Monomial, v: &Arc<ZExpansion>, track: bool) {
        let cache = if track { &self.lat_cache } else { &self.jac_cache };
        cache.write().unwrap().insert(m.clone(), v.clone());
    }
}

/// Top element of `Jac(f)` without building the ring.
pub fn top_monomial(f: &InvertiblePolynomial) -> Monomial {
    let mut top = Monomial::one(f.nvars());
    for part in f.summands().iter().map(ring_part) {
        for (k, e) in part.top().into_iter().enumerate() {
            top.0[part.vars[k]] = e;
        }
    }
    top
}

/// Local standard basis exponent tuples of one atomic piece.
pub fn local_basis(part: &RingPart) -> Vec<Vec<u32>> {
    let n = part.a.len();
    let mut out = Vec::new();
    let mut r = vec![0u32; n];
    loop {
        if part.local_in_basis(&r) {
            out.push(r.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            r[k] += 1;
            if r[k] < part.a[k] {
                break;
            }
            r[k] = 0;
            k += 1;
        }
    }
}
