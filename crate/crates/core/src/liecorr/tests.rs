use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::freebch::{classical_bch, Generator};
use crate::huliu::{generate_subalgebra, verify_identities};
use crate::z2core::Element;

type M = BlockMatElement<f64>;

fn shape(p: usize, q: usize) -> BlockShape {
    BlockShape::new(p, q).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dist(a: &M, b: &M) -> f64 {
    a.try_sub(b).unwrap().op_norm()
}

#[test]
fn shape_and_structure_errors() {
    assert_eq!(BlockShape::new(0, 2).unwrap_err(), LieCorrError::EmptyBlock { p: 0, q: 2 });
    let s = shape(1, 1);
    let bad = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 1.0]);
    assert_eq!(M::new(s, bad).unwrap_err(), LieCorrError::LowerLeftNonzero { row: 1, col: 0 });
    assert!(matches!(M::new(s, DMatrix::zeros(3, 3)), Err(LieCorrError::ShapeMismatch { .. })));
    let other = M::identity(shape(2, 1));
    assert!(matches!(M::identity(s).try_mul(&other), Err(LieCorrError::BlockShapeMismatch { .. })));
    assert_eq!(s.dim(), 3);
    assert_eq!(shape(2, 2).positions().len(), 12);
}

#[test]
fn exp_of_zero_and_of_odd() {
    let s = shape(2, 2);
    assert_eq!(mat_exp(&M::zero(s)), M::identity(s));
    let odd = random_direction(s, &mut rng(1)).odd_part().scale(3.0);
    assert!((&odd * &odd).op_norm() == 0.0);
    assert!(dist(&mat_exp(&odd), &(&M::identity(s) + &odd)) <= 1e-15);
}

#[test]
fn log_inverts_exp_on_small_inputs() {
    let s = shape(2, 2);
    let mut r = rng(2);
    for _ in 0..20 {
        let a = random_direction(s, &mut r).scale(0.1);
        let back = mat_log(&mat_exp(&a)).unwrap();
        assert!(dist(&back, &a) <= 1e-10);
        assert!(back.lower_left_is_zero());
    }
}

#[test]
fn log_domain_is_enforced() {
    let s = shape(1, 1);
    let far = M::identity(s).scale(3.0);
    assert!(matches!(mat_log(&far), Err(LieCorrError::LogOutOfDomain { .. })));
}

#[test]
fn exp_handles_large_norms() {
    let s = shape(1, 1);
    let a = M::from_coords(s, &[2.0, 5.0, -1.0]).unwrap();
    let e = mat_exp(&a);
    // exp of upper-triangular [[a, b], [0, c]]
    let expected = (2f64.exp() - (-1f64).exp()) / 3.0 * 5.0;
    assert!((e.matrix()[(0, 0)] - 2f64.exp()).abs() < 1e-12);
    assert!((e.matrix()[(0, 1)] - expected).abs() < 1e-11);
    assert!(e.lower_left_is_zero());
}

#[test]
fn single_precision_shares_the_code_path() {
    let s = shape(1, 1);
    let a = BlockMatElement::<f32>::from_coords(s, &[0.1, 0.2, -0.1]).unwrap();
    let back = mat_log(&mat_exp(&a)).unwrap();
    assert!((back.matrix() - a.matrix()).abs().max() < 1e-5);
}

#[test]
fn even_inverse_and_singularity() {
    let s = shape(2, 1);
    let g = mat_exp(&random_direction(s, &mut rng(3)));
    let g0 = g.even_part();
    assert!(dist(&(&g0 * &g0.even_inverse().unwrap()), &M::identity(s)) < 1e-14);
    assert_eq!(M::zero(s).even_inverse().unwrap_err(), LieCorrError::SingularEvenPart);
}

#[test]
fn commuting_even_inputs_give_exact_first_order() {
    let s = shape(2, 2);
    let x = M::from_closed(s, DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.1, -0.05, 0.2, 0.0])));
    let y = M::from_closed(s, DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.03, 0.1, -0.1, 0.07])));
    let z = M::zero(s);
    assert!(bch_residual(&x, &y, &z, &z, 1).unwrap() <= 1e-12);
}

#[test]
fn classical_residual_matches_direct_log() {
    let s = shape(2, 2);
    let mut r = rng(4);
    let (x, y) = (random_direction(s, &mut r).scale(0.1), random_direction(s, &mut r).scale(0.1));
    let zero = M::zero(s);
    let args = Quadruple {
        x: x.clone(),
        y: y.clone(),
        u: zero.clone(),
        w: zero.clone(),
    };
    let truncated = evaluate_series(&classical_bch(4).unwrap(), &args);
    let direct = mat_log(&(&mat_exp(&x) * &mat_exp(&y))).unwrap();
    let log_err = dist(&truncated, &direct);
    let residual = bch_residual(&x, &y, &zero, &zero, 4).unwrap();
    assert!(residual > 0.0);
    assert!(residual <= 2.0 * log_err && log_err <= 2.0 * residual, "{residual} vs {log_err}");
}

#[test]
fn convergence_order() {
    for n in 1..=4 {
        let fit = convergence_fit(shape(2, 2), n, &NORM_LADDER, 0).unwrap();
        assert!(fit.exponent >= n as f64 + 0.5, "N={n}: {}", fit.exponent);
        for pair in fit.residuals.windows(2) {
            assert!(pair[1] <= pair[0] * 2f64.powi(-(n as i32 + 1)) * 1.5, "N={n}: {pair:?}");
        }
    }
}

#[test]
fn formal_numeric_agreement() {
    let report = formal_numeric_consistency(shape(2, 2), 4, 0.1, 3, 0).unwrap();
    assert!(report.all_passed(), "{}", report.to_json());
}

#[test]
fn even_part_of_exp_is_exp_of_even_part() {
    let s = shape(2, 2);
    let a = random_direction(s, &mut rng(5)).scale(0.7);
    assert!(dist(&mat_exp(&a).even_part(), &mat_exp(&a.even_part())) <= 1e-14);
}

#[test]
fn block_algebra_shadow() {
    for (p, q) in [(1, 1), (2, 1), (2, 2)] {
        let s = shape(p, q);
        let alg = block_algebra(s).validate().unwrap();
        assert_eq!(alg.dim(), s.dim());
        assert!(alg.is_associative());
        let report = verify_identities(&alg, 10, 0);
        assert!(report.all_passed());
    }
    let s = shape(2, 2);
    let alg = block_algebra(s).validate().unwrap();
    // E13 is odd; it is isolated under both brackets
    let odd = Element::<crate::Rational>::basis(&alg, 2);
    assert_eq!(generate_subalgebra(&alg, &[odd]).unwrap().dim(), 1);
    // shadow products agree with matrix products
    let (a, b) = (Element::<crate::Rational>::basis(&alg, 1), Element::basis(&alg, 5));
    let lhs = shadow_to_block(s, &(&a * &b)).unwrap();
    let rhs = &shadow_to_block(s, &a).unwrap() * &shadow_to_block(s, &b).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn tangent_of_trivial_and_one_parameter_samples() {
    let s = shape(2, 2);
    let trivial = XiGroupSample {
        shape: s,
        generators: Vec::new(),
        elements: vec![M::identity(s)],
    };
    assert!(tangent_basis(&trivial, DEFAULT_TOL).unwrap().is_empty());

    let v = random_direction(s, &mut rng(6));
    let curve = XiGroupSample {
        shape: s,
        generators: vec![v.clone()],
        elements: [-0.1, -0.05, 0.02, 0.08].iter().map(|&t| mat_exp(&v.scale(t))).collect(),
    };
    let basis = tangent_basis(&curve, DEFAULT_TOL).unwrap();
    assert_eq!(basis.len(), 1);
    let angles = principal_angles(s, &basis, &[v], DEFAULT_TOL);
    assert!(angles[0] <= 1e-8, "{angles:?}");
}

#[test]
fn principal_angles_of_orthogonal_lines() {
    let s = shape(1, 1);
    let a = M::unit(s, 0, 0).unwrap();
    let b = M::unit(s, 0, 1).unwrap();
    let angles = principal_angles(s, std::slice::from_ref(&a), &[b], DEFAULT_TOL);
    assert!((angles[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    assert_eq!(principal_angles(s, std::slice::from_ref(&a), std::slice::from_ref(&a), DEFAULT_TOL), vec![0.0]);
}

#[test]
fn suites_have_expected_dimensions() {
    let s = shape(1, 1);
    let dims: Vec<usize> = Suite::ALL.iter().map(|&k| suite_generators(s, k).unwrap().len()).collect();
    assert_eq!(dims, vec![0, 1, 2, 3, 2]);
    let s = shape(2, 2);
    let dims: Vec<usize> = Suite::ALL.iter().map(|&k| suite_generators(s, k).unwrap().len()).collect();
    assert_eq!(&dims[..4], &[0, 1, 8, 12]);
}

#[test]
fn roundtrip_small_suite() {
    let config = RoundtripConfig {
        budget: 20,
        trials: 20,
        ..RoundtripConfig::default()
    };
    let report = correspondence_suite(shape(1, 1), &config).unwrap();
    assert!(report.all_passed(), "{}", report.to_json());
}

#[test]
fn even_only_closure() {
    let s = shape(2, 2);
    let gens = suite_generators(s, Suite::EvenOnly).unwrap();
    let sample = generate_sample(s, &gens, 20, 3).unwrap();
    let report = xi_closure_check(&sample, 30, DEFAULT_TOL, 0);
    assert!(report.all_passed(), "{}", report.to_json());
}

#[test]
fn closure_detects_a_non_subalgebra() {
    // E12 alone in shape (2, 1): exp-products stay on a line, but
    // conjugation by the even part of a generic element leaves it
    let s = shape(2, 1);
    let mut sample = generate_sample(s, &[M::unit(s, 0, 1).unwrap()], 10, 0).unwrap();
    sample.elements.push(mat_exp(&random_direction(s, &mut rng(7)).scale(0.1)));
    let report = xi_closure_check(&sample, 60, DEFAULT_TOL, 0);
    assert!(!report.all_passed());
}

#[test]
fn roundtrip_is_deterministic() {
    let config = RoundtripConfig::default();
    let s = shape(2, 2);
    let gens = suite_generators(s, Suite::Generated).unwrap();
    let a = correspondence_roundtrip(s, &gens, &config).unwrap().to_json();
    let b = correspondence_roundtrip(s, &gens, &config).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn evaluate_series_reads_parts() {
    let s = shape(1, 1);
    let x = M::from_coords(s, &[0.5, 2.0, 0.25]).unwrap();
    let args = Quadruple {
        x: x.clone(),
        y: M::zero(s),
        u: M::zero(s),
        w: M::zero(s),
    };
    let series = crate::freebch::Series::letter(2, Generator::X.odd());
    assert_eq!(evaluate_series(&series, &args), x.odd_part());
}

fn arb_block(s: BlockShape) -> impl Strategy<Value = M> {
    prop::collection::vec(-1.0f64..1.0, s.dim()).prop_map(move |c| M::from_coords(s, &c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn even_part_is_multiplicative(g in arb_block(shape(2, 2)), h in arb_block(shape(2, 2))) {
        let lhs = (&g * &h).even_part();
        let rhs = &g.even_part() * &h.even_part();
        prop_assert!(dist(&lhs, &rhs) <= 1e-15);
        prop_assert!((&g * &h).lower_left_is_zero());
    }

    #[test]
    fn exp_commutes_with_even_projection(a in arb_block(shape(2, 1))) {
        prop_assert!(dist(&mat_exp(&a).even_part(), &mat_exp(&a.even_part())) <= 1e-13);
    }

    #[test]
    fn odd_parts_multiply_to_zero(g in arb_block(shape(1, 2)), h in arb_block(shape(1, 2))) {
        prop_assert!((&g.odd_part() * &h.odd_part()).op_norm() == 0.0);
    }
}
