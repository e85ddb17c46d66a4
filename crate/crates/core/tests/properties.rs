use proptest::prelude::*;

use tautrel::equiv::decompose_sq;
use tautrel::foundations::{fmt_q, parse_q, qf, Partition};
use tautrel::pairing::{epsilon_table, faber_roundtrip, rank_report, RankReport};
use tautrel::series::{ionel_coefficient, FormalSeries, Space, Var};
use tautrel::{Family, KappaPoly, Relation};

fn series_from(terms: &[(i32, i32, i64, i64)], lowest_x: i32) -> FormalSeries {
    let sp = Space::new(&[(Var::T, 5), (Var::X, 5)]);
    let mut s = FormalSeries::zero(&sp);
    for &(t, x, n, d) in terms {
        let x = x.max(lowest_x);
        let t = t.max(-x);
        s.add_term(&[(Var::T, t), (Var::X, x)], KappaPoly::constant(qf(n, d))).unwrap();
    }
    s
}

fn term() -> impl Strategy<Value = (i32, i32, i64, i64)> {
    (-3i32..=5, 0i32..=5, -9i64..=9, 1i64..=6)
}

fn partition(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(|v| Partition::new(v).unwrap())
}

fn kappa_poly() -> impl Strategy<Value = KappaPoly> {
    prop::collection::vec((prop::collection::vec(-1i32..=4, 0..=3), -20i64..=20, 1i64..=9), 0..=5)
        .prop_map(|ts| KappaPoly::from_terms(ts.into_iter().map(|(m, n, d)| (tautrel::kappa::monomial(m), qf(n, d)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn log_inverts_exp(terms in prop::collection::vec(term(), 1..6)) {
        // no constant term, and x-degree >= 1 keeps t-exponents admissible
        let s = series_from(&terms, 1);
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn exp_is_a_homomorphism(a in prop::collection::vec(term(), 1..4), b in prop::collection::vec(term(), 1..4)) {
        let (a, b) = (series_from(&a, 1), series_from(&b, 1));
        prop_assert_eq!(a.add(&b).unwrap().exp().unwrap(), a.exp().unwrap().mul(&b.exp().unwrap()).unwrap());
    }

    #[test]
    fn ionel_lemma_matches_extraction(terms in prop::collection::vec(term(), 1..8), r in -3i32..=5, d in 0i32..=5) {
        prop_assume!(r >= -d);
        let s = series_from(&terms, 0);
        prop_assert_eq!(ionel_coefficient(&s, r, d).unwrap(), s.coeff(&[(Var::T, r), (Var::X, d)]));
    }

    #[test]
    fn dilation_by_sum_is_composite(x in 0i32..=3, a in -3i64..=3, b in -3i64..=3) {
        let sp = Space::new(&[(Var::T, 4), (Var::X, 3)]);
        let mono = FormalSeries::monomial(&sp, &[(Var::X, x)], KappaPoly::one()).unwrap();
        let la = FormalSeries::monomial(&sp, &[(Var::T, 1)], KappaPoly::constant(qf(a, 1))).unwrap();
        let lb = FormalSeries::monomial(&sp, &[(Var::T, 2)], KappaPoly::constant(qf(b, 1))).unwrap();
        let both = mono.dilate(&la.add(&lb).unwrap()).unwrap();
        prop_assert_eq!(both, mono.dilate(&la).unwrap().dilate(&lb).unwrap());
    }

    #[test]
    fn rationals_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = qf(n, d);
        prop_assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x);
    }

    #[test]
    fn partitions_roundtrip(p in partition(9, 6)) {
        let s: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
        prop_assert_eq!(Partition::parse(&s.join(",")).unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), p);
    }

    #[test]
    fn relation_json_roundtrip(g in 2i64..30, r in 0i32..12, sigma in partition(7, 4), poly in kappa_poly()) {
        let rel = Relation::new(g, r, sigma, Family::SqExtended, poly).with_degree(3);
        prop_assert_eq!(Relation::from_json(&rel.to_json()).unwrap(), rel);
    }

    #[test]
    fn specialize_is_idempotent(poly in kappa_poly(), g in 2i64..20) {
        let once = poly.specialize(g);
        prop_assert!(once.terms().all(|(m, _)| m.iter().all(|&i| i >= 1)));
        prop_assert_eq!(once.specialize(g), once);
    }

    #[test]
    fn faber_roundtrip_holds(g in 2u32..=9, extra in prop::collection::vec(0usize..5, 0..=7), n in 1usize..=5) {
        let mut alpha = vec![1u32; n];
        for (i, e) in extra.iter().take((g - 2) as usize).enumerate() {
            alpha[(e + i) % n] += 1;
        }
        let missing = (g - 2) as usize - extra.len().min((g - 2) as usize);
        alpha[0] += missing as u32;
        let t = epsilon_table(g, None).unwrap();
        let (sum, expected) = faber_roundtrip(&t, &alpha).unwrap();
        prop_assert_eq!(sum, expected);
    }
}

#[test]
fn decomposition_and_report_json_roundtrip() {
    for s in [&[1u32][..], &[2, 1], &[1, 1, 1], &[3, 1, 1]] {
        let d = decompose_sq(&Partition::from_slice(s)).unwrap();
        assert_eq!(tautrel::equiv::Decomposition::from_json(&d.to_json()).unwrap(), d);
    }
    let rep = rank_report(6, None).unwrap();
    assert_eq!(RankReport::from_json(&rep.to_json()).unwrap(), rep);
}
