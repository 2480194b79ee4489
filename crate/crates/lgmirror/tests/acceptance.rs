//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use lgmirror::amodel::{d4_seven_point, fjrw_four_point, wdvv_case1, Method};
use lgmirror::arith::{fmt_rat, int, lcm_of_denominators, rat, to_i64};
use lgmirror::bmodel::{good_basis_check, sg_four_point, BResult};
use lgmirror::mirror::{degree_check, product_law_violations, tensor_law_holds};
use lgmirror::oracle::{monomials_up_to_degree, oracle_quotient};
use lgmirror::selection::{passes_axioms, CorrelatorSpec};
use lgmirror::{AtomicKind, AtomicSummand, InvertiblePolynomial, JacobiRing, Monomial, Rational};
use num_traits::One;

fn build(parts: &[(AtomicKind, &[u32])]) -> InvertiblePolynomial {
    let mut offset = 0;
    let mut summands = Vec::new();
    for (kind, a) in parts {
        summands.push(AtomicSummand { kind: *kind, exponents: a.to_vec(), vars: (offset..offset + a.len()).collect() });
        offset += a.len();
    }
    InvertiblePolynomial::from_summands(offset, &summands).unwrap()
}

fn tuples(n: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| (lo..=hi).map(move |a| { let mut t = t.clone(); t.push(a); t }))
            .collect();
    }
    out
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], detail: String) -> Self {
        let mut detail = detail;
        if !failures.is_empty() {
            detail.push_str(&format!("; {} failures, first: {}", failures.len(), failures[..failures.len().min(3)].join(" | ")));
        }
        Outcome { pass: failures.is_empty(), detail }
    }
}

/// Checks A = q_i and B = -q_i, and an expected A-side method.
fn check_pair(
    w: &InvertiblePolynomial,
    i: usize,
    method: Option<Method>,
    failures: &mut Vec<String>,
    b_results: &mut Vec<(String, BResult)>,
) {
    let q = w.weights()[i].clone();
    let label = format!("{w} x{}", i + 1);
    match fjrw_four_point(w, i) {
        Ok(a) if a.value == q && method.is_none_or(|m| m == a.method) => {}
        Ok(a) => failures.push(format!("{label}: A = {} via {}", fmt_rat(&a.value), a.method.name())),
        Err(e) => failures.push(format!("{label}: A error {e}")),
    }
    match sg_four_point(w, i, false) {
        Ok(b) => {
            if b.value != -q.clone() || !b.brieskorn_check {
                failures.push(format!("{label}: B = {}", fmt_rat(&b.value)));
            }
            b_results.push((label, b));
        }
        Err(e) => failures.push(format!("{label}: B error {e}")),
    }
}

fn timed(bound: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail.push_str(&format!(" [{:.0?}", elapsed));
    if let Some(b) = bound {
        out.detail.push_str(&format!(", bound {b:?}"));
        if elapsed >= b {
            out.pass = false;
            out.detail.push_str(", over time");
        }
    }
    out.detail.push(']');
    out
}

fn criterion1(b_results: &mut Vec<(String, BResult)>) -> Outcome {
    let mut failures = Vec::new();
    for a in 3..=9u32 {
        let w = build(&[(AtomicKind::Fermat, &[a])]);
        if w.weights()[0] != rat(1, a as i64) {
            failures.push(format!("x^{a}: q = {}", fmt_rat(&w.weights()[0])));
        }
        check_pair(&w, 0, None, &mut failures, b_results);
    }
    Outcome::new(&failures, "7 Fermat polynomials".into())
}

fn criterion2(b_results: &mut Vec<(String, BResult)>) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=4 {
        for a in tuples(n, 2, 5).into_iter().filter(|a| a[n - 1] >= 3) {
            let w = build(&[(AtomicKind::Chain, &a)]);
            if w.weights()[n - 1] != rat(1, a[n - 1] as i64) {
                failures.push(format!("{w}: q_N = {}", fmt_rat(&w.weights()[n - 1])));
            }
            check_pair(&w, n - 1, Some(Method::Concave), &mut failures, b_results);
            count += 1;
        }
    }
    Outcome::new(&failures, format!("{count} chains"))
}

fn loop_method(a: &[u32], i: usize) -> Method {
    let n = a.len();
    match (a[i], n) {
        (b, _) if b >= 3 => Method::Concave,
        (_, n) if n >= 3 => Method::Guere,
        _ if a[1 - i] == 2 => Method::Wdvv1,
        _ => Method::Wdvv2,
    }
}

fn criterion3(b_results: &mut Vec<(String, BResult)>) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    let mut by_method = [0usize; 4];
    for n in 2..=4 {
        for a in tuples(n, 2, 5) {
            let w = build(&[(AtomicKind::Loop, &a)]);
            for i in 0..n {
                let m = loop_method(&a, i);
                by_method[m as usize] += 1;
                check_pair(&w, i, Some(m), &mut failures, b_results);
            }
            count += 1;
        }
    }
    let detail = format!(
        "{count} loops, every variable; concave {}, guere {}, wdvv1 {}, wdvv2 {}",
        by_method[Method::Concave as usize],
        by_method[Method::Guere as usize],
        by_method[Method::Wdvv1 as usize],
        by_method[Method::Wdvv2 as usize]
    );
    Outcome::new(&failures, detail)
}

fn criterion4() -> Outcome {
    let x0 = d4_seven_point();
    let mut failures = Vec::new();
    match wdvv_case1(&x0) {
        Ok(s) => {
            let got = [&s.x, &s.x1, &s.x2, &s.x3];
            let want = [rat(1, 3), rat(-2, 3), rat(2, 9), rat(-1, 9)];
            if got.iter().zip(&want).any(|(g, w)| *g != w) {
                failures.push(format!("got {:?}", got.map(fmt_rat)));
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    Outcome::new(&failures, format!("X0 = {}", fmt_rat(&x0)))
}

/// Test polynomials `W`; the rings are `Jac(W^T)`.
fn test_polynomials() -> Vec<InvertiblePolynomial> {
    use AtomicKind::*;
    let mut out: Vec<InvertiblePolynomial> = (3..=9).map(|a| build(&[(Fermat, &[a])])).collect();
    let atomics: [(AtomicKind, &[u32]); 18] = [
        (Chain, &[2, 3]),
        (Chain, &[3, 3]),
        (Chain, &[3, 4]),
        (Chain, &[4, 5]),
        (Chain, &[4, 2]),
        (Chain, &[3, 2, 4]),
        (Chain, &[3, 3, 3]),
        (Chain, &[2, 2, 2, 3]),
        (Loop, &[2, 2]),
        (Loop, &[2, 3]),
        (Loop, &[3, 3]),
        (Loop, &[4, 5]),
        (Loop, &[2, 2, 2]),
        (Loop, &[3, 2, 4]),
        (Loop, &[2, 3, 2, 2]),
        (Loop, &[5, 5, 5]),
        (Loop, &[3, 3, 3, 3]),
        (Chain, &[4, 4, 4]),
    ];
    for p in atomics {
        out.push(build(&[p]));
    }
    out.push(build(&[(Fermat, &[3]), (Fermat, &[4])]));
    out.push(build(&[(Fermat, &[3]), (Chain, &[2, 3])]));
    out.push(build(&[(Loop, &[2, 2]), (Fermat, &[3])]));
    out.push(build(&[(Fermat, &[4]), (Fermat, &[4]), (Fermat, &[3])]));
    out.push(build(&[(Chain, &[3, 3]), (Loop, &[2, 3])]));
    out.push(build(&[(Fermat, &[5]), (Fermat, &[5]), (Fermat, &[6])]));
    out
}

fn criterion5() -> Outcome {
    let mut failures = Vec::new();
    let mut rings = 0;
    let mut checked = 0;
    let mut max_mu = 0;
    for w in test_polynomials() {
        let ring = JacobiRing::of_transpose(&w);
        let f = w.transpose();
        if ring.mu() > 125 {
            continue;
        }
        rings += 1;
        max_mu = max_mu.max(ring.mu());
        let expected_mu: usize = f
            .summands()
            .iter()
            .map(|s| match s.kind {
                AtomicKind::Fermat => s.exponents[0] as usize - 1,
                AtomicKind::Loop => s.exponents.iter().map(|&a| a as usize).product(),
                AtomicKind::Chain => chain_mu(&s.exponents),
            })
            .product();
        if ring.mu() != expected_mu {
            failures.push(format!("{f}: mu {} vs {expected_mu}", ring.mu()));
        }
        let bound = ring.top().degree() + 2;
        let oracle = match oracle_quotient(&ring, bound) {
            Ok(o) => o,
            Err(e) => {
                failures.push(format!("{f}: {e}"));
                continue;
            }
        };
        if oracle.dimension() != ring.mu() {
            failures.push(format!("{f}: oracle dimension {}", oracle.dimension()));
        }
        for m in monomials_up_to_degree(f.nvars(), bound) {
            checked += 1;
            match oracle.normal_forms.get(&m) {
                Some(v) if *v == ring.reduce(&m) => {}
                _ => failures.push(format!("{f}: {m}")),
            }
        }
    }
    if rings < 20 {
        failures.push(format!("only {rings} rings"));
    }
    Outcome::new(&failures, format!("{rings} rings, max mu {max_mu}, {checked} monomials"))
}

/// Milnor number of `x_1^{a_1} + x_1 x_2^{a_2} + ... + x_{n-1} x_n^{a_n}`:
/// the alternating sum `a_n...a_1 - a_n...a_2 + ... +- 1`.
fn chain_mu(a: &[u32]) -> usize {
    let n = a.len();
    let mut total: i64 = 0;
    for k in 0..=n {
        let p: i64 = a[k..].iter().map(|&x| x as i64).product();
        total += if k % 2 == 0 { p } else { -p };
    }
    total as usize
}

fn criterion6() -> Outcome {
    let mut failures = Vec::new();
    let mut rings = 0;
    let mut admissible = 0;
    let mut solutions = 0;
    for n in 2..=4 {
        for a in tuples(n, 2, 5) {
            for kind in [AtomicKind::Chain, AtomicKind::Loop] {
                let w = build(&[(kind, &a)]);
                let ring = JacobiRing::of_transpose(&w);
                match good_basis_check(&ring) {
                    Ok(rep) => {
                        rings += 1;
                        admissible += rep.admissible_pairs;
                        solutions += rep.solutions.len();
                        if !rep.passed() {
                            failures.push(format!(
                                "{}: unexpected {:?}, degree failures {}",
                                ring.polynomial(),
                                rep.unexpected().iter().map(|s| &s.k).collect::<Vec<_>>(),
                                rep.degree_failures.len()
                            ));
                        }
                    }
                    Err(e) => failures.push(format!("{}: {e}", ring.polynomial())),
                }
            }
        }
    }
    Outcome::new(&failures, format!("{rings} rings, {solutions} integral solutions, {admissible} admissible pairs"))
}

fn criterion7() -> Outcome {
    let mut failures = Vec::new();
    let mut nonzero = 0;
    let mut lifted = 0;
    for w in test_polynomials() {
        let ring = JacobiRing::of_transpose(&w);
        let mu = ring.mu();
        let den = lcm_of_denominators(ring.weights());
        let scale = Rational::from_integer(den);
        let wt: Vec<i64> = (0..mu).map(|i| to_i64(&(ring.basis_weight(i) * &scale)).unwrap()).collect();
        let chat = to_i64(&(ring.central_charge() * &scale)).unwrap();
        let n = w.nvars();
        let is_var = |i: usize| ring.basis()[i].degree() == 1;
        for i in 0..mu {
            for j in i..mu {
                for k in j..mu {
                    if wt[i] + wt[j] + wt[k] != chat || ring.three_point(i, j, k) == int(0) {
                        continue;
                    }
                    nonzero += 1;
                    let b = ring.basis();
                    let ins = [b[i].clone(), b[j].clone(), b[k].clone()];
                    if !passes_axioms(&w, &ins) {
                        failures.push(format!("{w}: <{}, {}, {}> fails the axioms", ins[0], ins[1], ins[2]));
                    }
                    for (x, rest) in [(i, [j, k]), (j, [i, k]), (k, [i, j])] {
                        if !is_var(x) {
                            continue;
                        }
                        lifted += 1;
                        let var = ring.basis()[x].0.iter().position(|&e| e == 1).unwrap();
                        let spec = CorrelatorSpec::new(&w, &[Monomial::var(n, var), b[rest[0]].clone(), b[rest[1]].clone()])
                            .expect("well-formed");
                        if !spec.k_integral() || !spec.k_sum().is_one() {
                            failures.push(format!("{w}: K = {:?} for {:?}", spec.k.iter().map(fmt_rat).collect::<Vec<_>>(), spec.insertions));
                        }
                        break;
                    }
                }
            }
        }
    }
    Outcome::new(&failures, format!("{nonzero} nonzero 3-point constants, {lifted} with a variable insertion"))
}

fn criterion8() -> Outcome {
    let mut failures = Vec::new();
    let mut polys = 0;
    let mut monomials = 0;
    for w in test_polynomials() {
        if !w.weight_half_chain_vars().is_empty() {
            continue;
        }
        polys += 1;
        let ring = JacobiRing::of_transpose(&w);
        monomials += ring.mu();
        match degree_check(&w) {
            Ok(v) if v.is_empty() => {}
            Ok(v) => failures.push(format!("{w}: {} degree violations", v.len())),
            Err(e) => failures.push(format!("{w}: {e}")),
        }
        let p = product_law_violations(&w, &ring);
        if !p.is_empty() {
            failures.push(format!("{w}: product law fails on {} pairs", p.len()));
        }
        match tensor_law_holds(&w, &ring) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("{w}: tensor law fails")),
            Err(e) => failures.push(format!("{w}: {e}")),
        }
    }
    Outcome::new(&failures, format!("{polys} admissible polynomials, {monomials} basis monomials"))
}

fn criterion9(b_results: &[(String, BResult)]) -> Outcome {
    let failures: Vec<String> = b_results
        .iter()
        .filter(|(_, b)| !(b.zeta_first_order_trivial && b.flat_linear && b.quadratic_corrections_vanish))
        .map(|(l, b)| {
            format!(
                "{l}: zeta1 {}, linear {}, quadratic {}",
                b.zeta_first_order_trivial, b.flat_linear, b.quadratic_corrections_vanish
            )
        })
        .collect();
    Outcome::new(&failures, format!("{} B-side expansions", b_results.len()))
}

fn main() {
    let mut b_results = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("Fermat suite", timed(Some(Duration::from_secs(1)), || criterion1(&mut b_results))),
        ("chain suite", timed(Some(Duration::from_secs(10)), || criterion2(&mut b_results))),
        ("loop suite", timed(Some(Duration::from_secs(30)), || criterion3(&mut b_results))),
        ("Case-1 system", timed(None, criterion4)),
        ("Jacobi-ring oracle", timed(None, criterion5)),
        ("good basis", timed(None, criterion6)),
        ("selection rules", timed(None, criterion7)),
        ("mirror map", timed(None, criterion8)),
        ("perturbative solver", timed(None, || criterion9(&b_results))),
    ];
    let mut all = true;
    for (k, (name, out)) in results.iter().enumerate() {
        all &= out.pass;
        println!("{} criterion {}: {name}: {}", if out.pass { "PASS" } else { "FAIL" }, k + 1, out.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
