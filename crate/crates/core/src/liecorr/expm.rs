use nalgebra::{DMatrix, RealField};

use super::block::BlockMatElement;
use super::LieCorrError;

/// Tail bound at which [`mat_log`] stops summing.
pub const SERIES_TOL: f64 = 1e-14;

const MAX_TERMS: usize = 4000;

fn inf_norm<T: RealField + Copy>(m: &DMatrix<T>) -> T {
    m.row_iter()
        .map(|r| r.iter().fold(T::zero(), |acc, &v| acc + v.abs()))
        .fold(T::zero(), |acc, v| if v > acc { v } else { acc })
}

/// Matrix exponential by scaling and squaring around a Taylor kernel.
pub fn mat_exp<T: RealField + Copy>(a: &BlockMatElement<T>) -> BlockMatElement<T> {
    let shape = a.shape();
    let n = shape.n();
    let half: T = nalgebra::convert(0.5);
    let mut squarings = 0;
    let mut scaled = a.matrix().clone();
    while inf_norm(&scaled) > half {
        scaled *= half;
        squarings += 1;
    }
    let mut sum = DMatrix::<T>::identity(n, n);
    let mut term = DMatrix::<T>::identity(n, n);
    for k in 1..MAX_TERMS {
        term = &term * &scaled * (T::one() / nalgebra::convert::<f64, T>(k as f64));
        sum += &term;
        if inf_norm(&term) <= T::default_epsilon() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    BlockMatElement::from_closed(shape, sum)
}

/// Principal logarithm by the Mercator series in `g - I`; requires
/// `‖g - I‖ < 1` in operator norm.
pub fn mat_log<T: RealField + Copy>(g: &BlockMatElement<T>) -> Result<BlockMatElement<T>, LieCorrError> {
    mat_log_with(g, nalgebra::convert(SERIES_TOL))
}

/// [`mat_log`] with an explicit truncation tolerance.
pub fn mat_log_with<T: RealField + Copy>(
    g: &BlockMatElement<T>,
    tol: T,
) -> Result<BlockMatElement<T>, LieCorrError> {
    let shape = g.shape();
    let n = shape.n();
    let x = g.matrix() - DMatrix::<T>::identity(n, n);
    let radius = BlockMatElement::from_closed(shape, x.clone()).op_norm();
    if radius >= T::one() {
        return Err(LieCorrError::LogOutOfDomain {
            norm: nalgebra::try_convert(radius).unwrap_or(f64::NAN),
        });
    }
    let mut sum = DMatrix::<T>::zeros(n, n);
    let mut power = DMatrix::<T>::identity(n, n);
    // ‖xᵏ‖/k bounds the tail once radius^k is below tolerance
    let mut bound = T::one();
    for k in 1..MAX_TERMS {
        power = &power * &x;
        bound *= radius;
        let kf: T = nalgebra::convert(k as f64);
        let sign = if k % 2 == 1 { T::one() } else { -T::one() };
        sum += &power * (sign / kf);
        if bound / kf <= tol * (T::one() - radius) {
            break;
        }
    }
    Ok(BlockMatElement::from_closed(shape, sum))
}
