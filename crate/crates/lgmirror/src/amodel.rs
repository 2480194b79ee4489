//! FJRW four-point correlators `<Psi(x_i), Psi(x_i), Psi(M_i/x_i^2), Psi(phi)>`.
//!
//! Concave configurations are evaluated with Chiodo's formula on the
//! four-pointed genus-zero moduli space, where `kappa_1`, `psi_i` and every
//! boundary divisor integrate to 1. Loops with a two at the target use
//! Guere's formula, and the two-variable loops are reconstructed by WDVV.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{bernoulli2, exact_root, floor_int, frac, int, rat};
use crate::error::{LgError, Result};
use crate::jacobi::top_monomial;
use crate::mirror::{psi, sector_of_monomial};
use crate::monomial::Monomial;
use crate::poly::{loop_rotated_to_end, AtomicKind, AtomicSummand, InvertiblePolynomial};
use crate::selection::line_bundle_degrees;
use crate::symmetry::GroupElement;
use crate::wdvv::{CorrelatorTable, LinearIdentity};
use crate::Rational;

/// Seven-point `D_4` correlator that seeds the two-by-two loop system; taken as input.
pub fn d4_seven_point() -> Rational {
    rat(2, 27)
}

/// The three splittings of marks `{0,1,2,3}` into two pairs.
pub const SPLITTINGS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Concave,
    Guere,
    Wdvv1,
    Wdvv2,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Concave => "concave",
            Method::Guere => "guere",
            Method::Wdvv1 => "wdvv1",
            Method::Wdvv2 => "wdvv2",
        }
    }
}

/// One boundary stratum with the degrees of every `L_j` on both components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryDecoration {
    pub splitting: [[usize; 2]; 2],
    pub gamma_plus: GroupElement,
    pub gamma_minus: GroupElement,
    pub ell_plus: Vec<i64>,
    pub ell_minus: Vec<i64>,
}

impl BoundaryDecoration {
    /// `l_+ + l_- = l - 1` at a narrow node, `l` at a trivial one.
    pub fn sum_rule_holds(&self, line_degrees: &[Rational]) -> bool {
        (0..self.ell_plus.len()).all(|j| {
            let loss = if self.gamma_plus.phases[j].is_zero() { 0 } else { 1 };
            int(self.ell_plus[j] + self.ell_minus[j] + loss) == line_degrees[j]
        })
    }

    /// Whether `L_j` has no sections on this stratum.
    pub fn concave_at(&self, j: usize) -> bool {
        let (p, m) = (self.ell_plus[j], self.ell_minus[j]);
        if self.gamma_plus.phases[j].is_zero() {
            (p < 0 && m < 0) || (p == 0 && m < 0) || (p < 0 && m == 0)
        } else {
            p < 0 && m < 0
        }
    }
}

pub fn decorations(w: &InvertiblePolynomial, sectors: &[GroupElement; 4]) -> Vec<BoundaryDecoration> {
    let q = w.weights();
    SPLITTINGS
        .iter()
        .map(|sp| {
            let [a, b] = sp[0];
            let [c, d] = sp[1];
            let mut gp = Vec::new();
            let mut ell_plus = Vec::new();
            let mut ell_minus = Vec::new();
            for j in 0..w.nvars() {
                let h = &q[j] - &sectors[a].phases[j] - &sectors[b].phases[j];
                let g = frac(&h);
                let gm = frac(&-g.clone());
                let hm = &q[j] - &sectors[c].phases[j] - &sectors[d].phases[j] - &gm;
                ell_plus.push(small(&(h - &g)));
                ell_minus.push(small(&hm));
                gp.push(g);
            }
            let gamma_plus = GroupElement::new(gp);
            let gamma_minus = gamma_plus.inverse();
            BoundaryDecoration { splitting: *sp, gamma_plus, gamma_minus, ell_plus, ell_minus }
        })
        .collect()
}

fn small(x: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    floor_int(x).to_i64().expect("line bundle degree fits in i64")
}

/// `C_j = 1/2 [B2(q_j) - sum_marks B2(Theta_j) + sum_splittings B2(gamma_j)]`,
/// the degree of `Ch_1(R pi_* L_j)`.
pub fn chern_degrees(w: &InvertiblePolynomial, sectors: &[GroupElement; 4], decs: &[BoundaryDecoration]) -> Vec<Rational> {
    let half = rat(1, 2);
    (0..w.nvars())
        .map(|j| {
            let mut t = bernoulli2(&w.weights()[j]);
            for s in sectors {
                t -= bernoulli2(&s.phases[j]);
            }
            for d in decs {
                let bp = bernoulli2(&d.gamma_plus.phases[j]);
                debug_assert_eq!(bp, bernoulli2(&d.gamma_minus.phases[j]));
                t += bp;
            }
            &half * t
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Concavity {
    #[serde(with = "crate::arith::serde_rat_vec")]
    pub line_degrees: Vec<Rational>,
    pub narrow: bool,
    /// Indices `j` whose bundle has sections on some stratum.
    pub nonconcave: Vec<usize>,
    pub decorations: Vec<BoundaryDecoration>,
}

pub fn concavity(w: &InvertiblePolynomial, sectors: &[GroupElement; 4]) -> Concavity {
    let line_degrees = line_bundle_degrees(w, sectors);
    let decorations = decorations(w, sectors);
    let narrow = sectors.iter().all(GroupElement::is_narrow);
    let nonconcave = (0..w.nvars())
        .filter(|&j| line_degrees[j] >= Rational::zero() || decorations.iter().any(|d| !d.concave_at(j)))
        .collect();
    Concavity { line_degrees, narrow, nonconcave, decorations }
}

fn degree_pattern_ok(c: &Concavity, target: usize) -> bool {
    c.line_degrees
        .iter()
        .enumerate()
        .all(|(j, l)| *l == if j == target { int(-2) } else { int(-1) })
}

/// Concave four-point correlator with target bundle `L_target` of degree -2.
pub fn b2_correlator(w: &InvertiblePolynomial, sectors: &[GroupElement; 4], target: usize) -> Result<Rational> {
    let c = concavity(w, sectors);
    if !c.narrow {
        return Err(LgError::ConcavityViolated("broad insertion".into()));
    }
    if !degree_pattern_ok(&c, target) {
        return Err(LgError::ConcavityViolated(format!("line bundle degrees {:?}", fmt_all(&c.line_degrees))));
    }
    if let Some(j) = c.nonconcave.first() {
        return Err(LgError::ConcavityViolated(format!("L_{} has sections on a boundary stratum", j + 1)));
    }
    let ch = chern_degrees(w, sectors, &c.decorations);
    if let Some(j) = (0..w.nvars()).find(|&j| j != target && !ch[j].is_zero()) {
        return Err(LgError::Internal(format!("concave L_{} with nonzero Chern degree", j + 1)));
    }
    Ok(ch[target].clone())
}

fn fmt_all(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(crate::arith::fmt_rat).collect()
}

/// `M_i / x_i^2` where `M_i` is column `i` of `E_W`, a monomial of `Jac(W^T)`.
pub fn third_insertion(w: &InvertiblePolynomial, i: usize) -> Result<Monomial> {
    let col: Vec<u32> = (0..w.nvars()).map(|r| w.exponent_matrix()[r][i]).collect();
    if col[i] < 2 {
        return Err(LgError::NotFinalType(i + 1));
    }
    Ok(Monomial(col).with_exp(i, w.exponent_matrix()[i][i] - 2))
}

/// Sectors of the final-type insertions for variable `i`.
pub fn final_type_sectors(w: &InvertiblePolynomial, i: usize) -> Result<[GroupElement; 4]> {
    let n = w.nvars();
    let x = psi(w, &Monomial::var(n, i))?.sector;
    let s = sector_of_monomial(w, &third_insertion(w, i)?);
    let h = psi(w, &top_monomial(&w.transpose()))?.sector;
    Ok([x.clone(), x, s, h])
}

fn local_loop(a: &[u32]) -> InvertiblePolynomial {
    let s = AtomicSummand { kind: AtomicKind::Loop, exponents: a.to_vec(), vars: (0..a.len()).collect() };
    InvertiblePolynomial::from_summands(a.len(), &[s]).expect("loop is invertible")
}

/// Guere's formula for a loop `x_1^{a_1} x_2 + ... + x_N^{a_N} x_1` with
/// `a_N = 2`, `N >= 3`, target `x_N`: `X = C_N - a_{N-1} C_{N-1}`.
pub fn guere_correlator(w: &InvertiblePolynomial) -> Result<(Rational, Concavity)> {
    let n = w.nvars();
    let e = w.exponent_matrix();
    let shaped = n >= 3
        && w.is_atomic()
        && w.summands()[0].kind == AtomicKind::Loop
        && (0..n).all(|j| e[j][(j + 1) % n] == 1)
        && e[n - 1][n - 1] == 2;
    if !shaped {
        return Err(LgError::WrongConfiguration(format!("{w} is not a loop ending in x_N^2 x_1 with N >= 3")));
    }
    let sectors = final_type_sectors(w, n - 1)?;
    let c = concavity(w, &sectors);
    if !c.narrow || !degree_pattern_ok(&c, n - 1) || c.nonconcave.iter().any(|&j| j + 2 < n) {
        return Err(LgError::WrongConfiguration("bundles other than L_{N-1}, L_N must be concave".into()));
    }
    if !c.nonconcave.contains(&(n - 2)) {
        return Err(LgError::WrongConfiguration("L_{N-1} is concave; use the concave formula".into()));
    }
    let ch = chern_degrees(w, &sectors, &c.decorations);
    if let Some(j) = (0..n - 2).find(|&j| !ch[j].is_zero()) {
        return Err(LgError::Internal(format!("concave L_{} with nonzero Chern degree", j + 1)));
    }
    let a = int(e[n - 2][n - 2] as i64);
    Ok((&ch[n - 1] - a * &ch[n - 2], c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case1Solution {
    #[serde(with = "crate::arith::serde_rat")]
    pub x: Rational,
    #[serde(with = "crate::arith::serde_rat")]
    pub x1: Rational,
    #[serde(with = "crate::arith::serde_rat")]
    pub x2: Rational,
    #[serde(with = "crate::arith::serde_rat")]
    pub x3: Rational,
}

/// Solves `X1 = -2X, X2 = 2X^2, X3 = -X^2, X0 = 6X^4` for
/// `x_1^2 x_2 + x_1 x_2^2`, taking the positive fourth root.
pub fn wdvv_case1(x0: &Rational) -> Result<Case1Solution> {
    let t = x0 / int(6);
    let x = exact_root(&t, 4).ok_or_else(|| {
        LgError::InconsistentInput(format!("X0/6 = {t} is not the fourth power of a rational"))
    })?;
    let x2 = &x * &x;
    Ok(Case1Solution { x1: int(-2) * &x, x2: int(2) * &x2, x3: -x2, x })
}

/// `x_1^a x_2 + x_2^2 x_1` for `a > 2`: starts from the concave correlator
/// `<x1, x1, x1^{a-2} x2, x1^{a-1} x2> = q_1` and runs three WDVV steps with
/// `xi = x1` up to `<x2, x2, x1, x1^{a-1} x2>`.
pub fn wdvv_case2(a: u32) -> Result<(Rational, Vec<LinearIdentity>)> {
    if a <= 2 {
        return Err(LgError::WrongConfiguration(format!("a = {a}; the two-by-two loop is the other case")));
    }
    let w = InvertiblePolynomial::from_matrix(vec![vec![a, 1], vec![1, 2]])?;
    let th = |e1: u32, e2: u32| Monomial(vec![e1, e2]);
    let base = b2_correlator(&w, &final_type_sectors(&w, 0)?, 0)?;
    let mut table = CorrelatorTable::new(&w)?;
    let b_key = table.basis_key([&th(1, 0), &th(1, 0), &th(a - 2, 1), &th(a - 1, 1)])?;
    table.insert(b_key, base);
    let el = |t: &CorrelatorTable, m: Monomial| t.element(&m);
    let xi = el(&table, th(1, 0))?;
    let t2 = el(&table, th(0, 1))?;
    let mut trail = Vec::new();
    // <x1, x1^{a-1} x2, x2, x1^{a-1}>
    let (g, e, p) = (el(&table, th(a - 1, 1))?, el(&table, th(1, 0))?, el(&table, th(a - 2, 0))?);
    trail.push(table.wdvv_step(&xi, &g, &t2, &e, &p)?);
    // <x1, x1^{a-2} x2, x2, x1^a> with x1^a = -2 x1 x2
    let (g, p) = (el(&table, th(a - 2, 1))?, el(&table, th(a - 1, 0))?);
    trail.push(table.wdvv_step(&xi, &g, &t2, &e, &p)?);
    // <x1, x2, x2, x1^{a-1} x2>
    let p = el(&table, th(a - 2, 1))?;
    trail.push(table.wdvv_step(&xi, &t2, &t2, &e, &p)?);
    let target = table.basis_key([&th(0, 1), &th(0, 1), &th(1, 0), &th(a - 1, 1)])?;
    let x = table
        .get(&target)
        .ok_or_else(|| LgError::Internal("reconstruction did not reach the target".into()))?;
    Ok((x, trail))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AResult {
    #[serde(with = "crate::arith::serde_rat")]
    pub value: Rational,
    pub method: Method,
    pub decorations: Vec<BoundaryDecoration>,
    pub wdvv_trail: Vec<LinearIdentity>,
    pub case1: Option<Case1Solution>,
}

impl AResult {
    fn plain(value: Rational, method: Method, decorations: Vec<BoundaryDecoration>) -> Self {
        AResult { value, method, decorations, wdvv_trail: Vec::new(), case1: None }
    }
}

/// Final-type FJRW correlator for variable `i` of `W`, computed on the
/// atomic summand containing `x_i`.
pub fn fjrw_four_point(w: &InvertiblePolynomial, i: usize) -> Result<AResult> {
    if i >= w.nvars() {
        return Err(LgError::VariableOutOfRange(i + 1));
    }
    crate::mirror::check_hypotheses(w)?;
    let (s, k) = w.locate(i).expect("every variable lies in a summand");
    let summand = &w.summands()[s];
    let a = &summand.exponents;
    let n = a.len();
    match summand.kind {
        AtomicKind::Fermat => {
            if a[0] == 2 {
                return Err(LgError::Stabilization);
            }
            concave(&w.summand_polynomial(s), 0)
        }
        AtomicKind::Chain => {
            if k + 1 != n {
                return Err(LgError::NotFinalType(i + 1));
            }
            if a[n - 1] == 2 {
                return Err(LgError::UnsupportedByTheorem(format!("chain tail x{} has weight 1/2", i + 1)));
            }
            concave(&w.summand_polynomial(s), n - 1)
        }
        AtomicKind::Loop => {
            let b = loop_rotated_to_end(a, k);
            let local = local_loop(&b);
            if b[n - 1] >= 3 {
                return concave(&local, n - 1);
            }
            if n >= 3 {
                let (value, c) = guere_correlator(&local)?;
                return Ok(AResult::plain(value, Method::Guere, c.decorations));
            }
            if b[0] == 2 {
                let sol = wdvv_case1(&d4_seven_point())?;
                let mut r = AResult::plain(sol.x.clone(), Method::Wdvv1, Vec::new());
                r.case1 = Some(sol);
                Ok(r)
            } else {
                let (value, trail) = wdvv_case2(b[0])?;
                let mut r = AResult::plain(value, Method::Wdvv2, Vec::new());
                r.wdvv_trail = trail;
                Ok(r)
            }
        }
    }
}

fn concave(w: &InvertiblePolynomial, target: usize) -> Result<AResult> {
    let sectors = final_type_sectors(w, target)?;
    let value = b2_correlator(w, &sectors, target)?;
    Ok(AResult::plain(value, Method::Concave, decorations(w, &sectors)))
}

/// Convenience: the expected value `q_i`.
pub fn expected(w: &InvertiblePolynomial, i: usize) -> Rational {
    w.weights()[i].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn fermat_values() {
        for a in 3..=9u32 {
            let w = InvertiblePolynomial::from_matrix(vec![vec![a]]).unwrap();
            let r = fjrw_four_point(&w, 0).unwrap();
            assert_eq!(r.value, rat(1, a as i64));
            assert_eq!(r.method, Method::Concave);
        }
    }

    #[test]
    fn factorized() {
        let w = parse("x1^3 + x2^5").unwrap();
        assert_eq!(fjrw_four_point(&w, 0).unwrap().value, rat(1, 3));
        assert_eq!(fjrw_four_point(&w, 1).unwrap().value, rat(1, 5));
    }

    #[test]
    fn chain_and_loops() {
        let w = parse("x1^3*x2 + x2^4").unwrap();
        assert_eq!(fjrw_four_point(&w, 1).unwrap().value, rat(1, 4));
        let l = parse("x1^2*x2 + x2^3*x3 + x3^2*x1").unwrap();
        let r = fjrw_four_point(&l, 2).unwrap();
        assert_eq!(r.method, Method::Guere);
        assert_eq!(r.value, l.weights()[2]);
    }

    #[test]
    fn case1() {
        let s = wdvv_case1(&rat(2, 27)).unwrap();
        assert_eq!((s.x, s.x1, s.x2, s.x3), (rat(1, 3), rat(-2, 3), rat(2, 9), rat(-1, 9)));
        assert!(wdvv_case1(&Rational::zero()).unwrap().x.is_zero());
        assert!(matches!(wdvv_case1(&rat(1, 27)), Err(LgError::InconsistentInput(_))));
    }

    #[test]
    fn case2() {
        assert_eq!(wdvv_case2(3).unwrap().0, rat(2, 5));
        assert_eq!(wdvv_case2(4).unwrap().0, rat(3, 7));
    }

    #[test]
    fn refusals() {
        let c = parse("x1^2*x2 + x2^2*x3 + x3^2").unwrap();
        assert!(matches!(fjrw_four_point(&c, 2), Err(LgError::UnsupportedByTheorem(_))));
        let c = parse("x1^2*x2 + x2^3").unwrap();
        assert!(matches!(fjrw_four_point(&c, 0), Err(LgError::NotFinalType(1))));
        assert!(matches!(fjrw_four_point(&parse("x1^2").unwrap(), 0), Err(LgError::Stabilization)));
    }
}
