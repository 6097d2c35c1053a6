use mgslope_core::exactalg::{
    factor_sign_eval, Factor, FactorList, Monomial, MultiPoly, Point, RatFunc, Rational, Shift,
    Sign, Var,
};
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..=3, 0u32..=3, 0u32..=3), rational()), 0..6).prop_map(|terms| {
        MultiPoly::from_terms(
            terms
                .into_iter()
                .map(|((a, b, c), q)| (Monomial([a, b, c]), q)),
        )
    })
}

fn nonnegative_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_map(|p| {
        MultiPoly::from_terms(p.terms().map(|(m, c)| (*m, c.abs())))
    })
}

fn point() -> impl Strategy<Value = (i64, i64, i64)> {
    (-6i64..=6, -6i64..=6, -6i64..=6)
}

fn p(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn no_zero_coefficients_stored(a in poly(), b in poly()) {
        for q in [&a + &b, &a * &b, &a - &b] {
            prop_assert!(q.terms().all(|(_, c)| !c.is_zero()));
        }
    }

    #[test]
    fn shift_composes(a in poly(), x in 0u32..5, y in 0u32..5) {
        let once = a.shift(&Shift::new(0, x, 0)).shift(&Shift::new(0, y, 0));
        prop_assert_eq!(once, a.shift(&Shift::new(0, x + y, 0)));
    }

    #[test]
    fn eval_commutes_with_shift(a in poly(), k in (0u32..4, 0u32..4, 0u32..4), (m, r, s) in point()) {
        let shifted = a.shift(&Shift::new(k.0, k.1, k.2));
        let here = shifted.eval(&Point::mrs(m, r, s)).unwrap();
        let there = a
            .eval(&Point::mrs(m + k.0 as i64, r + k.1 as i64, s + k.2 as i64))
            .unwrap();
        prop_assert_eq!(here, there);
    }

    #[test]
    fn nonnegative_coefficients_give_nonnegative_values(a in nonnegative_poly(), m in 0i64..8, r in 0i64..8, s in 0i64..8) {
        prop_assert!(a.coeffs_all_nonnegative());
        prop_assert!(!a.eval(&Point::mrs(m, r, s)).unwrap().is_negative());
    }

    #[test]
    fn text_roundtrip(a in poly()) {
        let text = a.to_string();
        let back: MultiPoly = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn json_roundtrip(a in poly(), b in poly()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: MultiPoly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &a);
        if !b.is_zero() {
            let f = RatFunc::new(a, b).unwrap();
            let back: RatFunc = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
            prop_assert!(back.equivalent(&f));
        }
    }

    #[test]
    fn rationals_stay_reduced(a in rational(), b in rational(), c in rational()) {
        for q in [&a + &b, &a * &c, &a - &c, &(&a * &b) + &c] {
            prop_assert!(q.denom().is_positive());
            prop_assert!(q.numer().gcd(q.denom()).is_one());
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn integer_fast_path_matches_exact(a in poly(), (m, r, s) in point()) {
        prop_assert_eq!(a.eval_integer([m, r, s]), a.eval(&Point::mrs(m, r, s)).unwrap());
    }

    #[test]
    fn factor_signs_match_value(
        fs in prop::collection::vec((poly(), any::<bool>()), 1..4),
        (m, r, s) in point(),
    ) {
        let list = FactorList::new(
            fs.into_iter()
                .map(|(q, den)| if den { Factor::den(q) } else { Factor::num(q) })
                .collect(),
        );
        let at = Point::mrs(m, r, s);
        match (factor_sign_eval(&list, &at), list.eval(&at)) {
            (Ok(sign), Ok(value)) => prop_assert_eq!(sign, value.sign()),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "sign {:?} but value {:?}", x, y),
        }
    }

    #[test]
    fn ratfunc_field_ops(a in poly(), b in poly(), c in poly(), d in poly()) {
        prop_assume!(!b.is_zero() && !d.is_zero());
        let x = RatFunc::new(a.clone(), b.clone()).unwrap();
        let y = RatFunc::new(c.clone(), d.clone()).unwrap();
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, RatFunc::new(&a * &c, &b * &d).unwrap());
    }
}

#[test]
fn distributivity_example() {
    assert_eq!(&p("r+1") * &p("s"), p("r*s+s"));
    assert_eq!(
        &p("r*s+s-2") * &p("r*s+s-1"),
        p("r^2*s^2+2*r*s^2-3*r*s+s^2-3*s+2")
    );
}

#[test]
fn shift_examples() {
    assert_eq!(p("r^2").shift(&Shift::new(0, 4, 0)), p("r^2+8*r+16"));
    let q = p("1+r^2+s-3*r*s");
    assert!(q.shift(&Shift::new(0, 0, 0)) == q);
    assert_eq!(q.shift(&Shift::new(0, 4, 1)), p("6+5*r+r^2-11*s-3*r*s"));
}

#[test]
fn coefficient_inspection() {
    assert!(p("156+120*m+24*m^2").coeffs_all_nonnegative());
    assert!(!p("11+15*r+4*r^2-11*s-r*s+r^2*s").coeffs_all_nonnegative());
    assert!(MultiPoly::zero().coeffs_all_nonnegative());
}

#[test]
fn serialization_order_is_graded_lex() {
    assert_eq!(p("1+s+r+m+m*s+r^2").to_string(), "m*s+r^2+m+r+s+1");
    assert_eq!(MultiPoly::var(Var::M).to_string(), "m");
}

#[test]
fn sign_of_single_factor() {
    let list = FactorList::new(vec![Factor::num(p("r"))]);
    assert_eq!(
        factor_sign_eval(&list, &Point::new().with(Var::R, 3)).unwrap(),
        Sign::Positive
    );
}
