use num_rational::BigRational;

use super::*;
use crate::z2core::Parity;

type Q = BigRational;

#[test]
fn names_roundtrip_and_reject_unknown() {
    for name in CatalogName::ALL {
        assert_eq!(name.as_str().parse::<CatalogName>().unwrap(), name);
    }
    assert!(matches!("O".parse::<CatalogName>(), Err(CatalogError::IllegalName(_))));
    assert!(CatalogName::new(Base::O, Twist::None).is_err());
    assert!(CatalogName::new(Base::R, Twist::Minus).is_err());
    assert_eq!(CatalogName::new(Base::H, Twist::Minus).unwrap(), CatalogName::H_2);
}

#[test]
fn dimensions() {
    let dims: Vec<usize> = CatalogName::ALL.iter().map(|&n| catalog_def(n).dim).collect();
    assert_eq!(dims, vec![1, 2, 4, 2, 4, 4, 8, 8, 16, 16]);
}

#[test]
fn octonion_spot_entries() {
    let plus = catalog_algebra(CatalogName::O2);
    let e = |i| Element::<Q>::basis(&plus, i);
    // e05 e02 = -e06
    assert_eq!(&e(4) * &e(1), -e(5));
    let minus = catalog_algebra(CatalogName::O_2);
    let f = |i| Element::<Q>::basis(&minus, i);
    // e15 e05 = -λ e11 = e11 for λ = -1
    assert_eq!(&f(12) * &f(4), f(8));
}

#[test]
fn real_is_one_dimensional_unit() {
    let def = catalog_def(CatalogName::R);
    assert_eq!(def.dim, 1);
    assert_eq!(def.unit, vec![q(1, 1)]);
}

#[test]
fn transcription_integrity() {
    let alg = catalog_algebra(CatalogName::O2);
    let e = |i| Element::<Q>::basis(&alg, i);
    for j in 0..8 {
        assert_eq!(&e(0) * &e(j), e(j));
        assert_eq!(&e(j) * &e(0), e(j));
    }
    for j in 1..8 {
        assert_eq!(&e(j) * &e(j), -e(0));
        // imaginary units anticommute
        for k in 1..8 {
            if j != k {
                assert_eq!(&e(j) * &e(k), -(&e(k) * &e(j)));
            }
        }
    }
    // the even-odd table is the even table shifted onto the odd copy
    let def = catalog_def(CatalogName::O2);
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                assert_eq!(def.get(i, j, k), def.get(i, j + 8, k + 8));
            }
        }
    }
}

#[test]
fn lambda_difference_is_confined_to_columns_five_to_eight() {
    let diff = table_diff(&catalog_def(CatalogName::O2), &catalog_def(CatalogName::O_2));
    let expected: Vec<(usize, usize)> = (8..16).flat_map(|i| (4..8).map(move |j| (i, j))).collect();
    assert_eq!(diff, expected);
}

#[test]
fn restriction_pieces() {
    for lambda in [1, -1] {
        let o = octonion_z2(lambda);
        let r2 = subalgebra_restrict(&o, &R2_EVEN, &R2_ODD).unwrap();
        assert_eq!(r2.dim, 2);
        let r2 = r2.validate().unwrap();
        assert!(r2.is_commutative());
        assert!(r2.is_associative());

        let c2 = subalgebra_restrict(&o, &C2_EVEN, &C2_ODD).unwrap().validate().unwrap();
        assert_eq!(c2.dim(), 4);
        assert!(c2.is_associative());
        // complex even part: i^2 = -1
        let i = Element::<Q>::basis(&c2, 1);
        assert_eq!(&i * &i, -Element::unit(&c2));

        let h2 = subalgebra_restrict(&o, &H2_EVEN, &H2_ODD).unwrap().validate().unwrap();
        assert_eq!(h2.dim(), 8);
        assert!(h2.is_associative());
    }
    // λ vanishes at the dual-number level
    let plus = subalgebra_restrict(&octonion_z2(1), &R2_EVEN, &R2_ODD).unwrap();
    let minus = subalgebra_restrict(&octonion_z2(-1), &R2_EVEN, &R2_ODD).unwrap();
    assert_eq!(plus.structconst, minus.structconst);
    assert_eq!(plus.unit, minus.unit);
}

#[test]
fn twisted_complex_conjugation() {
    // for λ = -1 the odd unit anticommutes with i: v z = conj(z) v
    let c = catalog_algebra(CatalogName::C_2);
    let (i, v) = (Element::<Q>::basis(&c, 1), Element::<Q>::basis(&c, 2));
    assert_eq!(&v * &i, -(&i * &v));
    let c = catalog_algebra(CatalogName::C2);
    let (i, v) = (Element::<Q>::basis(&c, 1), Element::<Q>::basis(&c, 2));
    assert_eq!(&v * &i, &i * &v);
}

#[test]
fn restriction_errors() {
    let o = octonion_z2(1);
    // e02 e03 = e04 leaves {e01, e02, e03}
    assert_eq!(
        subalgebra_restrict(&o, &[0, 1, 2], &[]).unwrap_err(),
        CatalogError::NotClosed { i: 1, j: 2, k: 3 }
    );
    assert_eq!(subalgebra_restrict(&o, &[8], &[]).unwrap_err(), CatalogError::BadIndex { index: 8 });
    assert_eq!(subalgebra_restrict(&o, &[0], &[40]).unwrap_err(), CatalogError::BadIndex { index: 40 });
    // unit outside the span
    assert!(matches!(subalgebra_restrict(&o, &[], &[8]), Err(CatalogError::NotClosed { .. })));
}

#[test]
fn norms() {
    let o = catalog_algebra(CatalogName::O2);
    let e = |i| Element::<Q>::basis(&o, i);
    assert_eq!(norm(&e(0)), 1.0);
    assert_eq!(norm(&(&e(0) + &e(8))), 2.0);
    assert_eq!(norm(&(&e(1).scale(&q(3, 1)) + &e(2).scale(&q(4, 1)))), 5.0);
    let ne = NormedElement::new(Element::<Q>::zero(&o));
    assert_eq!(ne.norm_value, 0.0);
}

#[test]
fn closed_form_inverse_cross_check() {
    let h = catalog_algebra(CatalogName::H_2);
    let x = Element::new(&h, [1, 2, -1, 3, 5, -2, 1, 1].iter().map(|&n| q(n, 2)).collect()).unwrap();
    assert_eq!(closed_form_inverse(&x).unwrap(), x.invert().unwrap());
    assert!(closed_form_inverse(&Element::basis(&h, 4)).is_none());
}

#[test]
fn composition_suite_small() {
    for name in CatalogName::ALL {
        let alg = catalog_algebra(name);
        let report = composition_check(&alg, 40, 7);
        assert!(report.all_passed(), "{name}: {}", report.to_json());
    }
}

#[test]
fn division_suite_small() {
    for name in CatalogName::ALL {
        let alg = catalog_algebra(name);
        let report = division_check(&alg, 40, 11);
        assert!(report.claims_hold(), "{name}: {}", report.to_json());
        if name != CatalogName::O_2 {
            assert!(report.all_passed(), "{name}: {}", report.to_json());
        }
    }
    let o_2 = division_check(&catalog_algebra(CatalogName::O_2), 40, 11);
    assert!(o_2.checks.iter().all(|c| !c.claimed));
    assert!(!o_2.check("nonzero even part => invertible").unwrap().passed());
}

#[test]
fn dual_number_witness() {
    let r2 = catalog_algebra(CatalogName::R2);
    let eps = Element::<Q>::basis(&r2, 1);
    assert!(eps.invert().is_err());
    assert!((&eps * &eps).is_zero());
    assert_eq!(r2.indices_of(Parity::Odd), vec![1]);
}
