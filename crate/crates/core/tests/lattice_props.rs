use liaison_core::catalog::{Catalog, SurfaceModel};
use liaison_core::curves::{rao_after_biliaison, CurveRecord, RaoKind, RaoTag};
use liaison_core::lattice::{self, Basis, DivisorClass};
use liaison_core::liaison;
use proptest::prelude::*;

fn surfaces() -> Vec<&'static SurfaceModel> {
    let c = Catalog::builtin();
    c.ids().iter().map(|id| c.surface(id).unwrap()).collect()
}

fn class_on(s: &SurfaceModel, coeffs: &[i64]) -> DivisorClass {
    let rank = s.basis.rank();
    DivisorClass::new(s.basis, coeffs[..rank].to_vec()).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 11)
}

fn rao() -> impl Strategy<Value = RaoTag> {
    (0u8..4, -5i64..=5, any::<bool>()).prop_map(|(k, shift, dual)| {
        let kind = match k {
            0 => RaoKind::Zero,
            1 => RaoKind::SimpleK,
            2 => RaoKind::MA(2),
            _ => RaoKind::Unknown,
        };
        RaoTag::new(kind, shift, dual)
    })
}

fn cases() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn pairing_is_symmetric_and_bilinear(
        n in 0usize..=10,
        x in coeffs(), y in coeffs(), z in coeffs(),
        a in -5i64..=5, b in -5i64..=5,
    ) {
        let basis = Basis::BlownUpPlane(n);
        let r = basis.rank();
        let mk = |v: &[i64]| DivisorClass::new(basis, v[..r].to_vec()).unwrap();
        let (x, y, z) = (mk(&x), mk(&y), mk(&z));
        prop_assert_eq!(lattice::intersect(&x, &y).unwrap(), lattice::intersect(&y, &x).unwrap());
        let ax_by = x.try_scale(a).unwrap().try_add(&y.try_scale(b).unwrap()).unwrap();
        let lhs = lattice::intersect(&ax_by, &z).unwrap();
        let rhs = a * lattice::intersect(&x, &z).unwrap() + b * lattice::intersect(&y, &z).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quadric_pairing_is_symmetric_and_bilinear(
        x in (-9i64..=9, -9i64..=9), y in (-9i64..=9, -9i64..=9), z in (-9i64..=9, -9i64..=9),
        a in -5i64..=5,
    ) {
        let q = |p: (i64, i64)| DivisorClass::quadric(p.0, p.1);
        let (x, y, z) = (q(x), q(y), q(z));
        prop_assert_eq!(lattice::intersect(&x, &y).unwrap(), lattice::intersect(&y, &x).unwrap());
        let s = x.plus_multiple(a, &y).unwrap();
        prop_assert_eq!(
            lattice::intersect(&s, &z).unwrap(),
            lattice::intersect(&x, &z).unwrap() + a * lattice::intersect(&y, &z).unwrap()
        );
    }

    #[test]
    fn adjunction_numerator_is_even(idx in 0usize..7, v in coeffs()) {
        let s = surfaces()[idx];
        let c = class_on(s, &v);
        let c2 = lattice::self_intersection(&c).unwrap();
        let ck = lattice::intersect(&c, &s.canonical).unwrap();
        prop_assert_eq!((c2 + ck).rem_euclid(2), 0);
        let g = lattice::arithmetic_genus(&c, s).unwrap();
        prop_assert_eq!(2 * g - 2, c2 + ck);
    }

    #[test]
    fn biliaison_update_agrees_with_adjunction(idx in 0usize..7, v in coeffs(), h in -4i64..=4, tag in rao()) {
        let catalog = Catalog::builtin();
        let s = surfaces()[idx];
        let curve = CurveRecord::on_surface(s, class_on(s, &v), tag, "random").unwrap();
        let out = liaison::elementary_biliaison(&curve, h, catalog).unwrap();
        let class = class_on(s, &v).plus_multiple(h, &s.hyperplane).unwrap();
        prop_assert_eq!(out.degree, lattice::degree(&class, s).unwrap());
        prop_assert_eq!(out.genus, lattice::arithmetic_genus(&class, s).unwrap());
        prop_assert_eq!(
            out.numbers(),
            liaison::biliaison_numbers(curve.degree, curve.genus, h, s.degree, s.hk())
        );
        prop_assert_eq!(out.rao, rao_after_biliaison(tag, h));
    }

    #[test]
    fn g_link_is_an_involution_and_two_links_are_a_biliaison(
        idx in 0usize..7, v in coeffs(), m in -4i64..=4, m2 in -4i64..=4, tag in rao(),
    ) {
        let catalog = Catalog::builtin();
        let s = surfaces()[idx];
        let curve = CurveRecord::on_surface(s, class_on(s, &v), tag, "random").unwrap();
        let once = liaison::g_link_on_surface(&curve, m, catalog).unwrap();
        let back = liaison::g_link_on_surface(&once, m, catalog).unwrap();
        prop_assert_eq!(back.witness.as_ref(), curve.witness.as_ref());
        prop_assert_eq!(back.numbers(), curve.numbers());
        prop_assert_eq!(back.rao, curve.rao);

        let twice = liaison::g_link_on_surface(&once, m2, catalog).unwrap();
        let bil = liaison::elementary_biliaison(&curve, m2 - m, catalog).unwrap();
        prop_assert_eq!(twice.witness.as_ref(), bil.witness.as_ref());
        prop_assert_eq!(twice.numbers(), bil.numbers());
        prop_assert_eq!(twice.rao, bil.rao);
    }

    #[test]
    fn ci_link_is_an_involution(k in 0i64..1000, g in -10i64..=60, f1 in 1i64..=8, f2 in 1i64..=8, tag in rao()) {
        let d = 1 + k % (f1 * f2);
        let c = CurveRecord::abstract_curve(d, g, tag, "random");
        let once = liaison::ci_link_p3(&c, f1, f2).unwrap();
        prop_assert_eq!(once.degree, f1 * f2 - d);
        let back = liaison::ci_link_p3(&once, f1, f2).unwrap();
        prop_assert_eq!(back.numbers(), c.numbers());
        prop_assert_eq!(back.rao, c.rao);
    }

    #[test]
    fn notation_round_trips(idx in 0usize..7, v in coeffs()) {
        let s = surfaces()[idx];
        let c = class_on(s, &v);
        prop_assert_eq!(lattice::parse_for_basis(&c.notation(), s.basis).unwrap(), c);
    }
}

#[test]
fn ci_link_rejects_too_small_intersections() {
    let c = CurveRecord::abstract_curve(5, 0, RaoTag::zero(), "x");
    assert!(liaison::ci_link_p3(&c, 2, 2).is_err());
}
