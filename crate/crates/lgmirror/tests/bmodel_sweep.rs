use lgmirror::bmodel::{good_basis_check, sg_four_point};
use lgmirror::{AtomicKind, AtomicSummand, InvertiblePolynomial, JacobiRing};

fn atomic(kind: AtomicKind, a: &[u32]) -> InvertiblePolynomial {
    let s = AtomicSummand { kind, exponents: a.to_vec(), vars: (0..a.len()).collect() };
    InvertiblePolynomial::from_summands(a.len(), &[s]).unwrap()
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

#[test]
fn sweep() {
    let mut bad = Vec::new();
    for n in 2..=4 {
        for a in tuples(n, 2, 5) {
            let mut cases = vec![(AtomicKind::Loop, (0..n).collect::<Vec<_>>())];
            if a[n - 1] >= 3 {
                cases.push((AtomicKind::Chain, vec![n - 1]));
            }
            for (kind, vars) in cases {
                let w = atomic(kind, &a);
                for i in vars {
                    match sg_four_point(&w, i, false) {
                        Ok(r) if r.value == -w.weights()[i].clone()
                            && r.brieskorn_check
                            && r.zeta_first_order_trivial
                            && r.flat_linear
                            && r.quadratic_corrections_vanish => {}
                        other => bad.push(format!("{kind:?} {a:?} i={i}: {:?}", other.map(|r| r.value))),
                    }
                }
            }
        }
    }
    assert!(bad.is_empty(), "{} failures:\n{}", bad.len(), bad[..bad.len().min(40)].join("\n"));
}

#[test]
fn good_basis() {
    let mut bad = Vec::new();
    for n in 2..=4 {
        for a in tuples(n, 2, 5) {
            for kind in [AtomicKind::Chain, AtomicKind::Loop] {
                let w = atomic(kind, &a);
                let rep = good_basis_check(&JacobiRing::of_transpose(&w)).unwrap();
                if !rep.passed() {
                    bad.push(format!("{kind:?} {a:?}: {:?} {:?}", rep.unexpected(), rep.degree_failures));
                }
            }
        }
    }
    assert!(bad.is_empty(), "{} failures:\n{}", bad.len(), bad[..bad.len().min(20)].join("\n"));
}
