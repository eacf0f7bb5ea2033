use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::huliu::generate_subalgebra;
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;
use crate::z2core::{Algebra, AlgebraDef, Element, Parity};

use super::block::{BlockMatElement, BlockShape};
use super::expm::{mat_exp, mat_log};
use super::LieCorrError;

type BlockMat = BlockMatElement<f64>;

/// Span and membership tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Largest principal angle accepted between recovered and expected spans.
pub const ANGLE_TOL: f64 = 1e-6;
/// Samples further than this from the identity are discarded.
const SAMPLE_RADIUS: f64 = 0.5;

/// Exact structure-constant model of the block algebra on matrix units
/// `E_ij`, indexed in [`BlockShape::positions`] order.
pub fn block_algebra(shape: BlockShape) -> AlgebraDef {
    let positions = shape.positions();
    let parity = positions
        .iter()
        .map(|&(i, j)| if shape.is_odd_entry(i, j) { Parity::Odd } else { Parity::Even })
        .collect();
    let labels = positions.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    let mut def = AlgebraDef::new(format!("block({shape})"), parity).with_labels(labels);
    for (a, &(i, j)) in positions.iter().enumerate() {
        for (b, &(k, l)) in positions.iter().enumerate() {
            if j == k {
                let c = positions.iter().position(|&pos| pos == (i, l)).expect("product stays admissible");
                def.set_product(a, b, c, 1);
            }
        }
        if i == j {
            def.unit[a] = BigRational::from_integer(1.into());
        }
    }
    def
}

pub fn shadow_to_block(shape: BlockShape, e: &Element<BigRational>) -> Result<BlockMat, LieCorrError> {
    let coords: Vec<f64> = e.coeffs().iter().map(Scalar::to_f64).collect();
    BlockMatElement::from_coords(shape, &coords)
}

/// Finite sample of the group generated by `exp` of the span of
/// `generators` and ξ-conjugations `g ↦ a_0 g a_0^{-1}`.
#[derive(Clone, Debug)]
pub struct XiGroupSample {
    pub shape: BlockShape,
    pub generators: Vec<BlockMat>,
    pub elements: Vec<BlockMat>,
}

fn coord_matrix(shape: BlockShape, vs: &[BlockMat]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(shape.dim(), vs.len());
    for (c, v) in vs.iter().enumerate() {
        m.set_column(c, &DVector::from_vec(v.coords()));
    }
    m
}

/// Orthonormal basis (as columns) of the span of `vs`, keeping singular
/// directions above `tol`.
pub fn orthonormal_span(shape: BlockShape, vs: &[BlockMat], tol: f64) -> DMatrix<f64> {
    if vs.is_empty() {
        return DMatrix::zeros(shape.dim(), 0);
    }
    let svd = coord_matrix(shape, vs).svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > tol)
        .collect();
    let mut out = DMatrix::zeros(shape.dim(), keep.len());
    for (c, &k) in keep.iter().enumerate() {
        out.set_column(c, &u.column(k));
    }
    out
}

/// Distance from `v` to the column span of the orthonormal `q`.
fn span_residual(q: &DMatrix<f64>, v: &DVector<f64>) -> f64 {
    if q.ncols() == 0 {
        return v.norm();
    }
    (v - q * (q.transpose() * v)).norm()
}

/// `a_0 g a_0^{-1}`.
pub fn xi_conjugate(a: &BlockMat, g: &BlockMat) -> Result<BlockMat, LieCorrError> {
    let a0 = a.even_part();
    a0.try_mul(g)?.try_mul(&a0.even_inverse()?)
}

/// Random products of exponentials and ξ-conjugates near the identity,
/// seeded with `exp(t l)` for every generator `l`.
pub fn generate_sample(
    shape: BlockShape,
    generators: &[BlockMat],
    budget: usize,
    seed: u64,
) -> Result<XiGroupSample, LieCorrError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs: Vec<BlockMat> = generators
        .iter()
        .filter(|g| g.op_norm() > 0.0)
        .map(|g| g.scale(1.0 / g.op_norm()))
        .collect();
    let mut elements = vec![BlockMatElement::identity(shape)];
    for d in &dirs {
        let t: f64 = rng.random_range(0.05..0.15);
        elements.push(mat_exp(&d.scale(t)));
    }
    if !dirs.is_empty() {
        let mut attempts = 0;
        while elements.len() < budget && attempts < 50 * budget {
            attempts += 1;
            let candidate = match rng.random_range(0..3) {
                0 => {
                    let mut a = BlockMatElement::zero(shape);
                    for d in &dirs {
                        let c: f64 = rng.random_range(-0.1..0.1);
                        a = a.try_add(&d.scale(c))?;
                    }
                    mat_exp(&a)
                }
                1 => {
                    let a = &elements[rng.random_range(0..elements.len())];
                    let b = &elements[rng.random_range(0..elements.len())];
                    a.try_mul(b)?
                }
                _ => {
                    let a = &elements[rng.random_range(0..elements.len())];
                    let b = &elements[rng.random_range(0..elements.len())];
                    xi_conjugate(a, b)?
                }
            };
            if candidate.distance_to_identity() < SAMPLE_RADIUS {
                elements.push(candidate);
            }
        }
    }
    Ok(XiGroupSample {
        shape,
        generators: generators.to_vec(),
        elements,
    })
}

/// Orthonormalized span of the logarithms of the sample.
pub fn tangent_basis(sample: &XiGroupSample, tol: f64) -> Result<Vec<BlockMat>, LieCorrError> {
    let logs = sample.elements.iter().map(mat_log).collect::<Result<Vec<_>, _>>()?;
    let q = orthonormal_span(sample.shape, &logs, tol);
    q.column_iter()
        .map(|c| BlockMatElement::from_coords(sample.shape, c.as_slice()))
        .collect()
}

/// Principal angles between two spans, smallest first; only `min(dim)`
/// angles exist. Computed from sines to keep small angles accurate.
pub fn principal_angles(shape: BlockShape, a: &[BlockMat], b: &[BlockMat], tol: f64) -> Vec<f64> {
    let (qa, qb) = (orthonormal_span(shape, a, tol), orthonormal_span(shape, b, tol));
    let (small, large) = if qa.ncols() <= qb.ncols() { (qa, qb) } else { (qb, qa) };
    if small.ncols() == 0 {
        return Vec::new();
    }
    let residual = &small - &large * (large.transpose() * &small);
    let mut angles: Vec<f64> = residual
        .singular_values()
        .iter()
        .map(|s| s.min(1.0).asin())
        .collect();
    angles.sort_by(f64::total_cmp);
    angles
}

/// Tests that `g_0 h g_0^{-1}` stays in the group, via its logarithm lying
/// in the span of the generators.
pub fn xi_closure_check(sample: &XiGroupSample, trials: usize, tol: f64, seed: u64) -> VerificationReport {
    let shape = sample.shape;
    let q = orthonormal_span(shape, &sample.generators, tol.min(DEFAULT_TOL));
    let mut report = VerificationReport::new("xi-closure", format!("block {shape}, dim L = {}", q.ncols()));

    let mut identity = Check::new("conjugation by the identity is trivial", true);
    let one = BlockMatElement::identity(shape);
    for (i, h) in sample.elements.iter().enumerate() {
        match xi_conjugate(&one, h) {
            Ok(c) => identity.record(c == *h, || [("element", i.to_string())], || "changed".to_string()),
            Err(e) => identity.fail([("element", i.to_string())], e.to_string()),
        }
    }
    report.push(identity);

    let mut members = Check::new("sample logs lie in span(L)", true);
    for (i, h) in sample.elements.iter().enumerate() {
        match mat_log(h) {
            Ok(l) => {
                let r = span_residual(&q, &DVector::from_vec(l.coords()));
                members.observe(r);
                members.record(r <= tol, || [("element", i.to_string())], || format!("{r:e}"));
            }
            Err(e) => members.fail([("element", i.to_string())], e.to_string()),
        }
    }
    report.push(members);

    let mut closure = Check::new("log(g_0 h g_0^-1) lies in span(L)", true);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = sample.elements.len();
    for _ in 0..trials {
        let (a, b) = (rng.random_range(0..m), rng.random_range(0..m));
        let inputs = || [("g", a.to_string()), ("h", b.to_string())];
        match xi_conjugate(&sample.elements[a], &sample.elements[b]).and_then(|c| mat_log(&c)) {
            Ok(l) => {
                let r = span_residual(&q, &DVector::from_vec(l.coords()));
                closure.observe(r);
                closure.record(r <= tol, inputs, || format!("{r:e}"));
            }
            Err(e) => closure.fail(inputs(), e.to_string()),
        }
    }
    report.push(closure);
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RoundtripConfig {
    pub budget: usize,
    pub trials: usize,
    /// Membership tolerance for the closure checks.
    pub tol: f64,
    pub angle_tol: f64,
    pub seed: u64,
}

impl Default for RoundtripConfig {
    fn default() -> Self {
        Self {
            budget: 40,
            trials: 100,
            tol: DEFAULT_TOL,
            angle_tol: ANGLE_TOL,
            seed: 0,
        }
    }
}

/// Samples the group generated by `exp L`, recovers its tangent space and
/// compares it with `span(L)`.
pub fn correspondence_roundtrip(
    shape: BlockShape,
    generators: &[BlockMat],
    config: &RoundtripConfig,
) -> Result<VerificationReport, LieCorrError> {
    let sample = generate_sample(shape, generators, config.budget, config.seed)?;
    let rank_tol = config.tol.min(DEFAULT_TOL);
    let expected = orthonormal_span(shape, generators, rank_tol).ncols();
    let tangent = tangent_basis(&sample, rank_tol)?;
    let mut report = VerificationReport::new(
        "correspondence",
        format!(
            "block {shape}, dim L = {expected}, tangent dim = {}, {} samples",
            tangent.len(),
            sample.elements.len()
        ),
    );

    let mut bounded = Check::new("tangent dim <= dim L", true);
    bounded.record(
        tangent.len() <= expected,
        || [("dim L", expected.to_string())],
        || tangent.len().to_string(),
    );
    report.push(bounded);

    let mut equal = Check::new("tangent dim = dim L", true);
    equal.record(
        tangent.len() == expected,
        || [("dim L", expected.to_string())],
        || tangent.len().to_string(),
    );
    report.push(equal);

    let mut angles = Check::new("principal angles to span(L)", true);
    for (k, a) in principal_angles(shape, &tangent, generators, rank_tol).into_iter().enumerate() {
        angles.observe(a);
        angles.record(a <= config.angle_tol, || [("index", k.to_string())], || format!("{a:e}"));
    }
    report.push(angles);

    report.extend(xi_closure_check(&sample, config.trials, config.tol, config.seed.wrapping_add(1)));
    Ok(report)
}

/// Subalgebras exercised by [`correspondence_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Trivial,
    OneEven,
    EvenOnly,
    Full,
    Generated,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Trivial, Suite::OneEven, Suite::EvenOnly, Suite::Full, Suite::Generated];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Trivial => "trivial",
            Suite::OneEven => "one-even",
            Suite::EvenOnly => "even-only",
            Suite::Full => "full",
            Suite::Generated => "generated",
        }
    }
}

fn shadow_basis(shape: BlockShape, alg: &Arc<Algebra>, pred: impl Fn(usize, usize) -> bool) -> Vec<Element<BigRational>> {
    shape
        .positions()
        .into_iter()
        .enumerate()
        .filter(|&(_, (i, j))| pred(i, j))
        .map(|(k, _)| Element::basis(alg, k))
        .collect()
}

/// Basis of the suite's subalgebra, closed under both brackets by
/// construction on the exact model.
pub fn suite_generators(shape: BlockShape, suite: Suite) -> Result<Vec<BlockMat>, LieCorrError> {
    let alg = block_algebra(shape).validate()?;
    let seeds = match suite {
        Suite::Trivial => Vec::new(),
        Suite::OneEven => shadow_basis(shape, &alg, |i, j| i == 0 && j == 0),
        Suite::EvenOnly => shadow_basis(shape, &alg, |i, j| !shape.is_odd_entry(i, j)),
        Suite::Full => shadow_basis(shape, &alg, |_, _| true),
        Suite::Generated => {
            // strictly upper-triangular sum together with E11
            let upper = shadow_basis(shape, &alg, |i, j| i < j)
                .into_iter()
                .reduce(|a, b| &a + &b)
                .unwrap_or_else(|| Element::zero(&alg));
            vec![upper, Element::basis(&alg, 0)]
        }
    };
    let closed = generate_subalgebra(&alg, &seeds)?;
    closed.vectors().iter().map(|e| shadow_to_block(shape, e)).collect()
}

/// Round trip on every [`Suite`], with check names prefixed by the suite.
pub fn correspondence_suite(shape: BlockShape, config: &RoundtripConfig) -> Result<VerificationReport, LieCorrError> {
    let mut report = VerificationReport::new("correspondence", format!("block {shape}"));
    for suite in Suite::ALL {
        let gens = suite_generators(shape, suite)?;
        let sub = correspondence_roundtrip(shape, &gens, config)?;
        for mut check in sub.checks {
            check.name = format!("{}: {}", suite.name(), check.name);
            let note = format!("dim L = {}", gens.len());
            check.note = Some(match check.note {
                Some(n) => format!("{n}; {note}"),
                None => note,
            });
            report.push(check);
        }
    }
    Ok(report)
}
