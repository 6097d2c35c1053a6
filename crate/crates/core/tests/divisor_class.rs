use mgslope_core::appendix::Appendix;
use mgslope_core::divisor_class::{
    assemble_class, assemble_class_per_unit_n, pushforward_classes, ClassRecord, ClosedForm,
    Threshold,
};
use mgslope_core::enumeration::{admissible_triple_list, Grid};
use mgslope_core::{make_params, slope_s0, DivisorClass, Rational, Slope};
use proptest::prelude::*;

fn closed() -> ClosedForm {
    ClosedForm::new(&Appendix::embedded()).unwrap()
}

#[test]
fn both_paths_agree_on_grid() {
    let cf = closed();
    for (m, r, s) in admissible_triple_list(&Grid::new(6, 20)) {
        let p = make_params(m, r, s).unwrap();
        let unit = assemble_class_per_unit_n(&p).unwrap();
        let (a, b0) = cf.eval(m, r, s).unwrap();
        assert_eq!((&unit.a, &unit.b0), (&a, &b0), "({m},{r},{s})");
        assert!(unit.c.is_zero());
        assert!(unit.a.is_positive() && unit.b0.is_negative(), "({m},{r},{s})");
    }
}

#[test]
fn class_with_exact_n() {
    let cf = closed();
    for (m, r, s) in [(2, 4, 2), (2, 8, 3), (3, 3, 2), (5, 9, 7)] {
        let p = make_params(m, r, s).unwrap();
        let class = assemble_class(&p).unwrap();
        assert_eq!(class, cf.class_at(&p).unwrap());
        let n = Rational::from(p.castelnuovo());
        assert_eq!(class.a, &cf.eval(m, r, s).unwrap().0 * &n);
    }
}

#[test]
fn pushforwards_carry_n() {
    let p = make_params(2, 4, 2).unwrap();
    let push = pushforward_classes(&p);
    assert_eq!(push.beta.a, Rational::from(336));
    assert_eq!(push.gamma.a, Rational::new(-816 * 42, 144));
}

#[test]
fn genus_10_slope_between_thresholds() {
    let p = make_params(2, 4, 2).unwrap();
    let s = slope_s0(&p).unwrap();
    assert_eq!(s, Slope::Finite(Rational::from(7)));
    let q = s.finite().unwrap();
    assert!(q > &Threshold::Eight.at_genus(10) && q < &Threshold::Twelve.at_genus(10));
}

#[test]
fn record_serialization() {
    let p = make_params(3, 3, 2).unwrap();
    let class = assemble_class(&p).unwrap();
    let json = serde_json::to_value(ClassRecord::new(&p, &class)).unwrap();
    assert_eq!(json["slope"], "22/3");
    assert_eq!(json["c"], "0");
    let a: Rational = json["a"].as_str().unwrap().parse().unwrap();
    assert_eq!(a, class.a);
}

proptest! {
    #[test]
    fn slope_is_scale_invariant(m in 2u32..6, r in 3u32..25, s in 1u32..10, k in (1i64..50, 1i64..50)) {
        prop_assume!(mgslope_core::nh_holds(m, r, s));
        let p = make_params(m, r, s).unwrap();
        let class = assemble_class_per_unit_n(&p).unwrap();
        let k = Rational::new(k.0, k.1);
        prop_assert_eq!(Slope::of_class(&class.scale(&k)), Slope::of_class(&class));
    }

    #[test]
    fn classes_form_a_vector_space(a in -9i64..9, b in -9i64..9, c in -9i64..9) {
        let x = DivisorClass::new(Rational::from(a), Rational::from(b), Rational::from(c));
        let y = DivisorClass::<Rational>::lambda();
        prop_assert_eq!(x.plus(&y).minus(&y), x.clone());
        prop_assert_eq!(x.scale(&Rational::from(2)), x.plus(&x));
    }
}
