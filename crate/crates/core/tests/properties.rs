use capelli_core::arith::{divisors, split_two_power};
use capelli_core::capelli::{
    decide_rational, factor_deep, factor_once, reduce_to_integer, verify_certificate,
    CertificateDocument,
};
use capelli_core::polyring::scaled_cyclotomic;
use capelli_core::{decide, BigInt, BigRational, IntPoly};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-50i64..=50, 0..7).prop_map(|c| IntPoly::from_i64s(&c))
}

fn nonzero_poly() -> impl Strategy<Value = IntPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_laws(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f - &g) + &g, f.clone());
        prop_assert_eq!(&f * &IntPoly::one(), f.clone());
        prop_assert!((&f + &(-&f)).is_zero());
    }

    #[test]
    fn product_divides_exactly(f in poly(), g in nonzero_poly()) {
        let fg = &f * &g;
        prop_assert_eq!(fg.div_exact(&g).unwrap(), Some(f));
    }

    #[test]
    fn non_multiples_are_rejected(f in poly(), g in nonzero_poly(), c in 1i64..5) {
        // fg + c is a multiple of g only when g divides c.
        let shifted = &(&f * &g) + &IntPoly::constant(BigInt::from(c));
        if g.degree().unwrap() > 0 {
            prop_assert_eq!(shifted.div_exact(&g).unwrap(), None);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in poly(), g in poly(), x in -20i64..=20) {
        let x = BigInt::from(x);
        prop_assert_eq!((&f * &g).eval(&x), f.eval(&x) * g.eval(&x));
        prop_assert_eq!((&f + &g).eval(&x), f.eval(&x) + g.eval(&x));
    }

    #[test]
    fn text_round_trip(f in poly()) {
        let text = f.to_string();
        prop_assert_eq!(text.parse::<IntPoly>().unwrap(), f);
    }

    #[test]
    fn rational_decisions_match_reduction(n in 2u32..=10, num in -60i64..=60, den in 1i64..=30) {
        let a = BigRational::new(BigInt::from(num), BigInt::from(den));
        let over_q = decide_rational(n, &a).unwrap().decision;
        let over_z = decide(n, &reduce_to_integer(n, &a)).unwrap().decision;
        prop_assert_eq!(over_q, over_z);
    }

    #[test]
    fn reducible_instances_certify(n in 2u32..=30, base in -30i64..=30, t_index in 0usize..4) {
        // Build a = base^t for a divisor t of n so reducible cases are common.
        let ts: Vec<u32> = divisors(n).into_iter().filter(|&t| t > 1).collect();
        let t = ts[t_index % ts.len()];
        let a = BigInt::from(base).pow(t);
        let verdict = decide(n, &a).unwrap();
        prop_assert!(verdict.is_reducible());
        let once = factor_once(n, &a, &verdict).unwrap();
        prop_assert!(verify_certificate(&once));
        let deep = factor_deep(n, &a).unwrap();
        prop_assert!(verify_certificate(&deep));
        prop_assert!(deep.factors.len() >= once.factors.len());
    }

    #[test]
    fn documents_round_trip(n in 2u32..=12, base in -12i64..=12, t_index in 0usize..4) {
        let ts: Vec<u32> = divisors(n).into_iter().filter(|&t| t > 1).collect();
        let a = BigInt::from(base).pow(ts[t_index % ts.len()]);
        let verdict = decide(n, &a).unwrap();
        let doc = CertificateDocument {
            n,
            a: BigRational::from_integer(a.clone()),
            certificate: factor_once(n, &a, &verdict).unwrap(),
            witnesses: verdict.witnesses,
        };
        let text = doc.to_json_string();
        let back = CertificateDocument::from_json_str(&text).unwrap();
        prop_assert!(back.verify());
        prop_assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn scaled_cyclotomic_product(n in 2u32..=24, m_index in 0usize..8, b in 2i64..=9, neg in any::<bool>()) {
        let ms: Vec<u32> = divisors(n).into_iter().filter(|&m| m > 1).collect();
        let m = ms[m_index % ms.len()];
        let (r, m1) = split_two_power(m);
        let b = BigInt::from(if neg { -b } else { b });
        let factors: Vec<IntPoly> = divisors(m1)
            .into_iter()
            .map(|d| scaled_cyclotomic(d, &b, n / m, r).unwrap())
            .collect();
        prop_assert_eq!(IntPoly::product(&factors), IntPoly::binomial(n as usize, &-b.pow(m)));
    }
}
