use gtmono::analysis::{fischer_inner, l2_inner, reconstruct, taylor_expand, TaylorContext, TaylorKind};
use gtmono::bases::{harmonic_element, harmonic_labels, monogenic_element, monogenic_labels, spinor_element};
use gtmono::cli::{parse_poly, parse_poly_in};
use gtmono::clifford::{BladeIndex, Multivector, SpinorSpace};
use gtmono::poly::{CliffPoly, ExponentVector};
use gtmono::scalars::{GaussianRational, Rational};
use gtmono::Sign;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rational(), small_rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn poly(nvars: usize, alg: usize, max_deg: u32) -> impl Strategy<Value = CliffPoly> {
    let term = (prop::collection::vec(0..=max_deg, nvars), 0u32..(1 << alg), gaussian());
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        let mut p = CliffPoly::zero(nvars, alg);
        for (exp, bits, c) in terms {
            let mut mv = Multivector::zero(alg);
            mv.add_term(BladeIndex::from_bits(bits), c);
            p.add_term(ExponentVector(exp), mv);
        }
        p
    })
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_print_round_trip(p in poly(3, 3, 3)) {
        let printed = p.to_string();
        let parsed = parse_poly(&printed, 3).unwrap();
        prop_assert_eq!(&parsed, &p);
        prop_assert_eq!(parsed.to_string(), printed);
    }

    #[test]
    fn parse_print_round_trip_wide_algebra(p in poly(2, 11, 2)) {
        prop_assert_eq!(parse_poly_in(&p.to_string(), 2, 11).unwrap(), p);
    }

    #[test]
    fn l2_is_hermitian(p in poly(3, 3, 2), q in poly(3, 3, 2)) {
        let pq = l2_inner(&p, &q).unwrap().coeff.scalar_part();
        let qp = l2_inner(&q, &p).unwrap().coeff.scalar_part();
        prop_assert_eq!(pq, qp.conj());
    }

    #[test]
    fn fischer_is_positive(p in poly(3, 3, 3)) {
        let s = fischer_inner(&p, &p).unwrap().scalar_part();
        prop_assert!(s.im.is_zero());
        prop_assert_eq!(s.re > Rational::zero(), !p.is_zero());
        let l = l2_inner(&p, &p).unwrap().coeff.scalar_part();
        prop_assert_eq!(l.re > Rational::zero(), !p.is_zero());
    }

    #[test]
    fn harmonic_round_trip(c in coeffs(30)) {
        let m = 4;
        let mut g = CliffPoly::zero(m, m);
        let mut it = c.iter();
        for k in 0..=3 {
            for mu in harmonic_labels(m, k) {
                if let Some(r) = it.next() {
                    g = &g + &harmonic_element(m, k, &mu).unwrap().scale_rational(r);
                }
            }
        }
        let t = taylor_expand(&g, &TaylorContext::new(TaylorKind::Harmonic, m)).unwrap();
        prop_assert_eq!(reconstruct(&t).unwrap(), g);
    }

    #[test]
    fn clifford_round_trip(c in prop::collection::vec(gaussian(), 20), bits in prop::collection::vec(0u32..16, 20)) {
        let m = 4;
        let mut g = CliffPoly::zero(m, m);
        let mut i = 0;
        for k in 0..=3 {
            for mu in monogenic_labels(m, k) {
                let mut coeff = Multivector::zero(m);
                coeff.add_term(BladeIndex::from_bits(bits[i]), c[i].clone());
                g = &g + &monogenic_element(m, k, &mu).unwrap().right_mul(&coeff);
                i += 1;
            }
        }
        let t = taylor_expand(&g, &TaylorContext::new(TaylorKind::Clifford, m)).unwrap();
        prop_assert_eq!(reconstruct(&t).unwrap(), g);
    }

    #[test]
    fn spinor_round_trip(c in prop::collection::vec(gaussian(), 20), minus in any::<bool>()) {
        let m = 4;
        let chirality = if minus { Sign::Minus } else { Sign::Plus };
        let space = SpinorSpace::new(m, chirality).unwrap();
        let mut g = CliffPoly::zero(m, space.algebra_dim());
        let mut i = 0;
        for k in 0..=3 {
            for mu in monogenic_labels(m, k) {
                for nu in space.generators.keys() {
                    if i < c.len() {
                        g = &g + &spinor_element(&space, k, &mu, nu).unwrap().scale(&c[i]);
                    }
                    i += 1;
                }
            }
        }
        let t = taylor_expand(&g, &TaylorContext::spinor(m, chirality)).unwrap();
        prop_assert_eq!(reconstruct(&t).unwrap(), g);
    }
}

#[test]
fn spinor_generators_are_independent() {
    for m in 3..=6 {
        for chirality in [Sign::Plus, Sign::Minus] {
            let Ok(space) = SpinorSpace::new(m, chirality) else { continue };
            let consts: Vec<CliffPoly> = space.generators.values().map(|v| CliffPoly::constant(1, v.clone())).collect();
            assert_eq!(gtmono::analysis::poly_rank(&consts), consts.len(), "m = {m}");
        }
    }
}
