use nalgebra::{DMatrix, RealField};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::freebch::{extended_bch, Generator, Series};
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;

use super::block::{BlockMatElement, BlockShape};
use super::expm::{mat_exp, mat_log};
use super::LieCorrError;

/// Input norms used to fit the order of convergence.
pub const NORM_LADDER: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// The four arguments `x, y, u, w` of the extended series.
#[derive(Clone, Debug)]
pub struct Quadruple<T: RealField + Copy> {
    pub x: BlockMatElement<T>,
    pub y: BlockMatElement<T>,
    pub u: BlockMatElement<T>,
    pub w: BlockMatElement<T>,
}

impl<T: RealField + Copy> Quadruple<T> {
    pub fn get(&self, g: Generator) -> &BlockMatElement<T> {
        match g {
            Generator::X => &self.x,
            Generator::Y => &self.y,
            Generator::U => &self.u,
            Generator::W => &self.w,
        }
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            x: self.x.scale(s),
            y: self.y.scale(s),
            u: self.u.scale(s),
            w: self.w.scale(s),
        }
    }
}

/// Random admissible matrix of operator norm one.
pub fn random_direction(shape: BlockShape, rng: &mut ChaCha8Rng) -> BlockMatElement<f64> {
    let coords: Vec<f64> = (0..shape.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
    let m = BlockMatElement::from_coords(shape, &coords).expect("coordinate count matches shape");
    let norm = m.op_norm();
    m.scale(1.0 / norm)
}

pub fn random_quadruple(shape: BlockShape, rng: &mut ChaCha8Rng) -> Quadruple<f64> {
    Quadruple {
        x: random_direction(shape, rng),
        y: random_direction(shape, rng),
        u: random_direction(shape, rng),
        w: random_direction(shape, rng),
    }
}

/// Substitutes `g_0`, `g_1` (even and odd parts of the concrete matrices)
/// for the letters of `series`.
pub fn evaluate_series<T: RealField + Copy>(
    series: &Series<BigRational>,
    args: &Quadruple<T>,
) -> BlockMatElement<T> {
    let shape = args.x.shape();
    let n = shape.n();
    let value = series.evaluate(
        &DMatrix::<T>::zeros(n, n),
        &DMatrix::<T>::identity(n, n),
        |l| {
            let m = args.get(l.generator());
            if l.is_odd() {
                m.odd_part().into_matrix()
            } else {
                m.even_part().into_matrix()
            }
        },
        |a, b| a * b,
        |out, c, m| *out += m * nalgebra::convert::<f64, T>(c.to_f64()),
    );
    BlockMatElement::from_closed(shape, value)
}

/// `(exp u)_0 (exp x) (exp u)_0^{-1} (exp w)_0 (exp y) (exp w)_0^{-1}`.
pub fn xi_product<T: RealField + Copy>(args: &Quadruple<T>) -> Result<BlockMatElement<T>, LieCorrError> {
    let eu = mat_exp(&args.u).even_part();
    let ew = mat_exp(&args.w).even_part();
    let factors = [
        eu.clone(),
        mat_exp(&args.x),
        eu.even_inverse()?,
        ew.clone(),
        mat_exp(&args.y),
        ew.even_inverse()?,
    ];
    let mut out = BlockMatElement::identity(args.x.shape());
    for f in &factors {
        out = out.try_mul(f)?;
    }
    Ok(out)
}

/// `‖exp(C_N(x, y, u, w)) - product‖` for a precomputed truncated series.
pub fn bch_residual_with(series: &Series<BigRational>, args: &Quadruple<f64>) -> Result<f64, LieCorrError> {
    let z = evaluate_series(series, args);
    Ok(mat_exp(&z).try_sub(&xi_product(args)?)?.op_norm())
}

/// Residual of the degree-`n` truncation of the extended series.
pub fn bch_residual(
    x: &BlockMatElement<f64>,
    y: &BlockMatElement<f64>,
    u: &BlockMatElement<f64>,
    w: &BlockMatElement<f64>,
    n: usize,
) -> Result<f64, LieCorrError> {
    let series = extended_bch(n)?;
    let args = Quadruple {
        x: x.clone(),
        y: y.clone(),
        u: u.clone(),
        w: w.clone(),
    };
    bch_residual_with(&series, &args)
}

/// Least-squares line through `(ln s, ln r)`: `r ≈ constant · s^exponent`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceFit {
    pub degree: usize,
    pub norms: Vec<f64>,
    pub residuals: Vec<f64>,
    pub exponent: f64,
    pub constant: f64,
}

impl ConvergenceFit {
    pub fn from_points(degree: usize, norms: &[f64], residuals: &[f64]) -> Self {
        let xs: Vec<f64> = norms.iter().map(|s| s.ln()).collect();
        let ys: Vec<f64> = residuals.iter().map(|r| r.ln()).collect();
        let k = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / k;
        let my = ys.iter().sum::<f64>() / k;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let exponent = sxy / sxx;
        Self {
            degree,
            norms: norms.to_vec(),
            residuals: residuals.to_vec(),
            exponent,
            constant: (my - exponent * mx).exp(),
        }
    }

    /// Fitted truncation error at input norm `s`.
    pub fn bound_at(&self, s: f64) -> f64 {
        self.constant * s.powf(self.exponent)
    }
}

fn ladder_fit(
    series: &Series<BigRational>,
    degree: usize,
    direction: &Quadruple<f64>,
    ladder: &[f64],
) -> Result<ConvergenceFit, LieCorrError> {
    let residuals = ladder
        .iter()
        .map(|&s| bch_residual_with(series, &direction.scale(s)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConvergenceFit::from_points(degree, ladder, &residuals))
}

/// Scales one seeded random quadruple along `ladder` and fits the decay of
/// the degree-`n` residual.
pub fn convergence_fit(shape: BlockShape, n: usize, ladder: &[f64], seed: u64) -> Result<ConvergenceFit, LieCorrError> {
    let series = extended_bch(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ladder_fit(&series, n, &random_quadruple(shape, &mut rng), ladder)
}

/// Compares the truncated series evaluated at inputs of norm `norm` with
/// the logarithm of the group product, against five times the fitted
/// truncation error for the same directions.
pub fn formal_numeric_consistency(
    shape: BlockShape,
    n: usize,
    norm: f64,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, LieCorrError> {
    let series = extended_bch(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = Check::new("series agrees with log of the product within 5x fitted bound", true);
    let mut fits = Check::new(format!("fitted exponent >= {}", n as f64 + 0.5), true);
    for trial in 0..trials {
        let dir = random_quadruple(shape, &mut rng);
        let fit = ladder_fit(&series, n, &dir, &NORM_LADDER)?;
        let args = dir.scale(norm);
        let formal = evaluate_series(&series, &args);
        let numeric = mat_log(&xi_product(&args)?)?;
        let err = formal.try_sub(&numeric)?.op_norm();
        let bound = fit.bound_at(norm);
        check.observe(err / bound);
        check.record(
            err <= 5.0 * bound,
            || [("trial", trial.to_string()), ("bound", format!("{bound:e}"))],
            || format!("{err:e}"),
        );
        fits.record(
            fit.exponent >= n as f64 + 0.5,
            || [("trial", trial.to_string())],
            || format!("{}", fit.exponent),
        );
    }
    let mut report = VerificationReport::new("formal-numeric", format!("block {shape}, degree {n}, norm {norm}"));
    report.push(check.with_note("max_residual is the worst ratio error / bound"));
    report.push(fits);
    Ok(report)
}
