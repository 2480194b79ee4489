use lgmirror::oracle::oracle_quotient;
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
fn sweep_transposes() {
    let mut count = 0;
    for n in 1..=3 {
        for a in tuples(n, 2, 4) {
            for kind in [AtomicKind::Chain, AtomicKind::Loop] {
                let kind = if n == 1 { AtomicKind::Fermat } else { kind };
                if n == 1 && a[0] < 2 { continue; }
                let w = atomic(kind, &a);
                let ring = JacobiRing::of_transpose(&w);
                let o = oracle_quotient(&ring, ring.top().degree() + 2)
                    .unwrap_or_else(|e| panic!("{w}: {e}"));
                assert_eq!(o.dimension(), ring.mu(), "{w}");
                for (m, v) in &o.normal_forms {
                    assert_eq!(&ring.reduce(m), v, "{w}: {m}");
                }
                count += 1;
            }
        }
    }
    assert!(count > 20);
}
