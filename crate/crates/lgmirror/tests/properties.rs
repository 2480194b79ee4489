use lgmirror::amodel::{decorations, final_type_sectors, fjrw_four_point};
use lgmirror::arith::is_integral;
use lgmirror::bmodel::{brieskorn_reduce, sg_four_point, LatticeElement};
use lgmirror::mirror::sector_of_monomial;
use lgmirror::poly::{chain_rho, loop_rho};
use lgmirror::selection::{classify_type, enumerate_candidates, line_bundle_degrees, CorrelatorType};
use lgmirror::symmetry::{enumerate_group, grading_element, preserves};
use lgmirror::verify::{verify, VerificationReport};
use lgmirror::{AtomicKind, AtomicSummand, GroupElement, InvertiblePolynomial, JacobiRing, Monomial, RingElement};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn atomic(kind: AtomicKind, a: &[u32], offset: usize) -> AtomicSummand {
    AtomicSummand { kind, exponents: a.to_vec(), vars: (offset..offset + a.len()).collect() }
}

fn build(parts: &[(AtomicKind, Vec<u32>)]) -> InvertiblePolynomial {
    let mut offset = 0;
    let mut summands = Vec::new();
    for (kind, a) in parts {
        summands.push(atomic(*kind, a, offset));
        offset += a.len();
    }
    InvertiblePolynomial::from_summands(offset, &summands).unwrap()
}

fn kind_strategy() -> impl Strategy<Value = AtomicKind> {
    prop_oneof![Just(AtomicKind::Fermat), Just(AtomicKind::Chain), Just(AtomicKind::Loop)]
}

fn part(max_len: usize, max_a: u32) -> impl Strategy<Value = (AtomicKind, Vec<u32>)> {
    (kind_strategy(), 2..=max_len).prop_flat_map(move |(kind, n)| {
        let n = if kind == AtomicKind::Fermat { 1 } else { n };
        (Just(kind), proptest::collection::vec(2..=max_a, n))
    })
}

fn atomic_poly(max_len: usize, max_a: u32) -> impl Strategy<Value = InvertiblePolynomial> {
    part(max_len, max_a).prop_map(|p| build(&[p]))
}

fn small_poly() -> impl Strategy<Value = InvertiblePolynomial> {
    proptest::collection::vec(part(2, 4), 1..=2).prop_map(|ps| build(&ps))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rho_closed_forms(a in proptest::collection::vec(2u32..=6, 2..=4), is_loop in any::<bool>()) {
        let kind = if is_loop { AtomicKind::Loop } else { AtomicKind::Chain };
        let w = build(&[(kind, a.clone())]);
        let inv = w.inverse_exponents();
        let n = a.len();
        for i in 1..=n {
            for j in 1..=n {
                let closed = if is_loop { loop_rho(&a, i, j) } else { chain_rho(&a, i, j) };
                prop_assert_eq!(&inv[(i - 1, j - 1)], &closed);
            }
        }
    }

    #[test]
    fn transpose_is_involution(w in small_poly()) {
        let t = w.transpose();
        let tt = t.transpose();
        prop_assert_eq!(tt.exponent_matrix(), w.exponent_matrix());
        prop_assert_eq!(t.central_charge(), w.central_charge());
    }

    #[test]
    fn group_is_closed(w in small_poly()) {
        let g = enumerate_group(&w, 5_000).unwrap();
        prop_assert_eq!(num_bigint::BigInt::from(g.len()), w.group_order().clone());
        let set: std::collections::HashSet<GroupElement> = g.iter().cloned().collect();
        prop_assert!(set.contains(&grading_element(&w)));
        for x in g.iter().take(12) {
            prop_assert!(preserves(&w, x));
            prop_assert!(set.contains(&x.inverse()));
            for y in g.iter().take(12) {
                prop_assert!(set.contains(&x.compose(y)));
            }
        }
    }

    #[test]
    fn ring_is_frobenius(w in atomic_poly(3, 4), picks in proptest::collection::vec(any::<prop::sample::Index>(), 3)) {
        let ring = JacobiRing::new(&w);
        let mu = ring.mu();
        let [i, j, k] = [picks[0].index(mu), picks[1].index(mu), picks[2].index(mu)];
        let left = ring.multiply(&ring.multiply_basis(i, j), &RingElement::basis(k));
        let right = ring.multiply(&RingElement::basis(i), &ring.multiply_basis(j, k));
        prop_assert_eq!(&left, &right);
        let top = ring.top_index();
        prop_assert_eq!(left.coefficient(top), ring.three_point(i, j, k));
        prop_assert_eq!(ring.pairing_basis(i, j), ring.pairing_basis(j, i));
        prop_assert!(!ring.gram_matrix().determinant().is_zero());
    }

    #[test]
    fn lattice_reduction_is_homogeneous(w in atomic_poly(3, 4), e in proptest::collection::vec(0u32..=7, 3)) {
        let ring = JacobiRing::new(&w);
        let m = Monomial(e[..w.nvars()].to_vec());
        let wt = ring.weight(&m);
        let r = brieskorn_reduce(&ring, &LatticeElement::monomial(0, m, One::one()));
        if !r.is_zero() {
            prop_assert_eq!(r.weight(ring.weights()), Some(wt));
        }
    }

    #[test]
    fn final_type_decorations_obey_sum_rule(a in proptest::collection::vec(3u32..=5, 2..=4), is_loop in any::<bool>()) {
        let kind = if is_loop { AtomicKind::Loop } else { AtomicKind::Chain };
        let w = build(&[(kind, a.clone())]);
        let n = a.len();
        let sectors = final_type_sectors(&w, n - 1).unwrap();
        let l = line_bundle_degrees(&w, &sectors);
        for d in decorations(&w, &sectors) {
            prop_assert!(d.sum_rule_holds(&l));
        }
    }

    #[test]
    fn mirror_values_are_opposite(w in atomic_poly(3, 4)) {
        for i in 0..w.nvars() {
            if let (Ok(a), Ok(b)) = (fjrw_four_point(&w, i), sg_four_point(&w, i, false)) {
                prop_assert_eq!(a.value.clone(), -b.value);
                prop_assert_eq!(&a.value, &w.weights()[i]);
            }
        }
    }

    #[test]
    fn report_round_trips(w in small_poly()) {
        let report = verify(&w);
        let text = serde_json::to_string(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &report);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

fn test_rings() -> Vec<InvertiblePolynomial> {
    let mut out = Vec::new();
    for a in 3..=6 {
        out.push(build(&[(AtomicKind::Fermat, vec![a])]));
    }
    for a in [[2, 3], [3, 3], [3, 4], [4, 2]] {
        out.push(build(&[(AtomicKind::Chain, a.to_vec())]));
        out.push(build(&[(AtomicKind::Loop, a.to_vec())]));
    }
    out.push(build(&[(AtomicKind::Fermat, vec![3]), (AtomicKind::Fermat, vec![4])]));
    out.push(build(&[(AtomicKind::Fermat, vec![3]), (AtomicKind::Chain, vec![2, 3])]));
    out
}

#[test]
fn k_integrality_matches_line_degrees() {
    for w in test_rings() {
        let ring = JacobiRing::of_transpose(&w);
        for x in enumerate_candidates(&w, &ring, 5) {
            let sectors: Vec<GroupElement> = x.insertions.iter().map(|m| sector_of_monomial(&w, m)).collect();
            let l_integral = line_bundle_degrees(&w, &sectors).iter().all(is_integral);
            assert_eq!(x.k_integral(), l_integral, "{w}: {:?}", x.insertions);
        }
    }
}

#[test]
fn fermat_splitting() {
    for w in [
        build(&[(AtomicKind::Fermat, vec![3]), (AtomicKind::Fermat, vec![4])]),
        build(&[(AtomicKind::Fermat, vec![5]), (AtomicKind::Fermat, vec![3]), (AtomicKind::Fermat, vec![3])]),
    ] {
        let ring = JacobiRing::of_transpose(&w);
        let mut seen = 0;
        for x in enumerate_candidates(&w, &ring, 4) {
            if classify_type(&w, &ring, &x) == CorrelatorType::NotXminus1 {
                continue;
            }
            seen += 1;
            let a: Vec<u32> = (0..w.nvars()).map(|j| w.exponent_matrix()[j][j]).collect();
            let hits: Vec<usize> = (0..w.nvars())
                .filter(|&j| x.ell[j] == 2 && x.m[j] + x.n[j] == 2 * a[j] - 4)
                .collect();
            assert_eq!(hits.len(), 1, "{w}: {:?}", x.insertions);
            assert!(x.k_sum().is_one());
        }
        assert!(seen > 0);
    }
}
