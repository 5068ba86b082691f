use qpartition::bivariate::qbinomial_lhs_in_base;
use qpartition::series::poch_infinite;
use qpartition::verify::{verify_sides, Divergence};
use qpartition::{
    verify_identity, ClassSpec, Enumerator, IdentityId, IdentityParams, QSeries, Sides,
    SignedMonomial,
};

fn lhs(id: IdentityId, order: u32) -> QSeries {
    id.left_side(order).unwrap()
}

fn rhs(id: IdentityId, order: u32) -> QSeries {
    match id.build_sides(order).unwrap() {
        Sides::Univariate(_, r) => r,
        Sides::Bivariate(..) => panic!("{id}"),
    }
}

#[test]
fn every_grid_passes_at_moderate_order() {
    for tag in IdentityId::tags() {
        for id in IdentityId::grid(tag).unwrap() {
            let report = verify_identity(&id, 40).unwrap();
            assert!(report.passed(), "{report}");
        }
    }
}

#[test]
fn left_sides_agree_within_each_triple() {
    let o = 60;
    assert_eq!(lhs(IdentityId::S14, o), lhs(IdentityId::S16, o));
    assert_eq!(lhs(IdentityId::S14, o), lhs(IdentityId::S94, o));
    assert_eq!(lhs(IdentityId::S18, o), lhs(IdentityId::S20, o));
    assert_eq!(lhs(IdentityId::S18, o), lhs(IdentityId::S99, o));
}

#[test]
fn rskeq_is_the_folded_binomial_theorem() {
    // z = q^{r+k}, a = -q^s, in base q^k
    for (r, s, k) in [(1, 2, 4), (1, 3, 5), (2, 3, 7)] {
        let z_order = 12;
        let biv =
            qbinomial_lhs_in_base(SignedMonomial::neg_q_pow(s as i64), k, z_order, 60).unwrap();
        let folded = biv.fold_z(SignedMonomial::q_pow((r + k) as i64)).unwrap();
        let o = folded.order();
        let id = IdentityId::Rskeq { r, s, k };
        assert_eq!(folded, lhs(id, o));
        assert_eq!(folded, rhs(id, o));
    }
}

#[test]
fn class_generating_functions_are_identity_sides() {
    let en = Enumerator::default();
    let o = 36;
    let gf = |spec: ClassSpec| spec.generating_function(o, &en).unwrap();
    for (r, s, k) in [(1, 2, 4), (1, 3, 5), (2, 3, 6)] {
        let hhk = IdentityId::Hhk { r, s, k };
        assert_eq!(gf(ClassSpec::T2B { r, s, k }), lhs(hhk, o));
        let mut a = QSeries::zero(o);
        for n in 0..8 {
            a = &a + &gf(ClassSpec::T2A { n, r, s, k });
        }
        assert_eq!(a, lhs(hhk, o));
    }
    for (r, k) in [(1, 2), (1, 3), (2, 5)] {
        assert_eq!(
            gf(ClassSpec::T3B { r, k }),
            lhs(IdentityId::E151ak { r, k }, o)
        );
    }
    for (r, s, k) in [(1, 2, 3), (1, 3, 4)] {
        let mut left = QSeries::zero(o);
        let mut right = QSeries::zero(o);
        for n in 0..10 {
            left = &left + &gf(ClassSpec::T4Left { n, r, s, k });
            right = &right + &gf(ClassSpec::T4Right { n, r, s, k });
        }
        let id = IdentityId::Symeqk { r, s, k };
        assert_eq!(left, lhs(id, o));
        assert_eq!(right, rhs(id, o));
    }
}

#[test]
fn s94_factors_through_the_shifted_product() {
    // (-q;q^2)_inf / (-q;q^2)_{n+1} = (-q^3;q^2)_inf / (-q^3;q^2)_n
    let o = 40;
    let expected = IdentityId::S94.left_side(o).unwrap();
    let mut sum = QSeries::zero(o);
    for n in 0..7u32 {
        let e = n * n + n;
        if e >= o {
            break;
        }
        let t = &qpartition::series::poch_finite_inv(SignedMonomial::q_pow(2), 2, n, o).unwrap()
            * &qpartition::series::poch_finite_inv(SignedMonomial::neg_q_pow(3), 2, n, o).unwrap();
        sum = &sum + &t.shift(e);
    }
    let got = &poch_infinite(SignedMonomial::neg_q_pow(3), 2, o).unwrap() * &sum;
    assert_eq!(got, expected);
}

#[test]
fn perturbation_is_caught() {
    let id = IdentityId::from_tag("HHK", IdentityParams::default()).unwrap();
    let Sides::Univariate(l, r) = id.build_sides(30).unwrap() else {
        panic!()
    };
    let bad = &r - &QSeries::monomial(3, 22, 30);
    let report = verify_sides("HHK", &Sides::Univariate(l, bad), 30).unwrap();
    assert!(!report.passed());
    assert!(matches!(
        report.first_divergence,
        Some(Divergence::Series { exponent: 22, .. })
    ));
}
