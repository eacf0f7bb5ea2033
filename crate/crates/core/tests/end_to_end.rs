use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use z2lie::catalog::{catalog_algebra, catalog_def, q, CatalogName};
use z2lie::freebch::{bracket_basis_fit, extended_bch, Generator, GradedWord};
use z2lie::huliu::{angle, square};
use z2lie::liecorr::{bch_residual, evaluate_series, mat_exp, random_quadruple, xi_product, BlockShape};
use z2lie::z2core::{json, Element};
use z2lie::{ExactElement, Rational};

#[test]
fn catalog_survives_json_round_trip() {
    for name in CatalogName::ALL {
        let text = json::to_json(&catalog_def(name));
        let back = json::from_json(&text).unwrap();
        assert_eq!(json::to_json(&back), text, "{name}");
        back.validate().unwrap();
    }
}

#[test]
fn exact_inverse_in_every_catalog_algebra() {
    for name in CatalogName::ASSOCIATIVE {
        let alg = catalog_algebra(name);
        let coeffs: Vec<Rational> = (0..alg.dim()).map(|i| q(i as i64 + 1, 3)).collect();
        let x = ExactElement::new(&alg, coeffs).unwrap();
        let y = x.invert().unwrap();
        assert_eq!(x.try_mul(&y).unwrap(), Element::unit(&alg), "{name}");
        assert_eq!(y.try_mul(&x).unwrap(), Element::unit(&alg), "{name}");
    }
}

#[test]
fn odd_elements_annihilate_each_other() {
    let alg = catalog_algebra(CatalogName::O2);
    for i in alg.indices_of(z2lie::z2core::Parity::Odd) {
        for j in alg.indices_of(z2lie::z2core::Parity::Odd) {
            let p = ExactElement::basis(&alg, i).try_mul(&ExactElement::basis(&alg, j)).unwrap();
            assert!(p.is_zero());
        }
    }
}

#[test]
fn angle_bracket_of_even_elements_is_commutator() {
    let alg = catalog_algebra(CatalogName::H2);
    let a = ExactElement::basis(&alg, 1);
    let b = ExactElement::basis(&alg, 2);
    assert_eq!(angle(&a, &b).unwrap(), square(&a, &b).unwrap());
}

#[test]
fn fitted_brackets_reproduce_series() {
    let n = 4;
    let z = extended_bch(n).unwrap();
    let fit = bracket_basis_fit(n).unwrap();
    let mut rebuilt = z2lie::RationalSeries::zero(n);
    for t in &fit {
        rebuilt = rebuilt.add(&t.term.expand::<Rational>(n).scale(&t.value));
    }
    assert_eq!(rebuilt, z);
}

#[test]
fn series_without_exponents_has_no_mixed_words() {
    let z = extended_bch(4).unwrap();
    let only_u = z.specialize_zero(&[Generator::X, Generator::Y, Generator::W]);
    assert!(only_u.is_empty());
    let x0 = GradedWord::from_letters(vec![Generator::X.even()]);
    assert_eq!(z.coefficient(&x0), Rational::one());
}

#[test]
fn numeric_series_tracks_matrix_product() {
    let shape = BlockShape::new(2, 2).unwrap();
    let args = random_quadruple(shape, &mut ChaCha8Rng::seed_from_u64(0)).scale(0.05);
    let z = extended_bch(5).unwrap();
    let approx = mat_exp(&evaluate_series(&z, &args));
    let exact = xi_product(&args).unwrap();
    let gap = (approx.matrix() - exact.matrix()).norm();
    assert!(gap < 1e-6, "gap {gap}");
    assert!(bch_residual(&args.x, &args.y, &args.u, &args.w, 5).unwrap() < 1e-6);
}
