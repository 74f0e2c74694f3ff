//! Adaptive Dormand-Prince 5(4) for linear matrix ODEs `Y' = A(t) Y`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const MIN_STEP: f64 = 1e-12;
const MAX_STEPS: usize = 200_000;

/// Result of one adaptive run.
#[derive(Clone, Debug)]
pub struct Solution {
    pub y: CMat,
    pub steps: usize,
    pub rejected: usize,
}

/// Solve `Y' = a(t) Y` on `[0, 1]` from `Y(0) = y0` with mixed tolerance `tol`.
pub fn solve_linear_ode(a: &dyn Fn(f64) -> Result<CMat>, y0: &CMat, tol: f64) -> Result<Solution> {
    if tol <= 0.0 {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let mut t = 0.0;
    let mut y = y0.clone();
    let mut h: f64 = 1e-2;
    let mut steps = 0;
    let mut rejected = 0;
    let mut k: Vec<CMat> = Vec::with_capacity(7);
    let mut first = a(0.0)? * &y;
    while t < 1.0 {
        if steps + rejected > MAX_STEPS {
            return Err(Error::Convergence("too many integration steps".into()));
        }
        h = h.min(1.0 - t);
        k.clear();
        k.push(first.clone());
        for s in 1..7 {
            let mut ys = y.clone();
            for (j, kj) in k.iter().enumerate() {
                if A[s][j] != 0.0 {
                    ys += kj * Complex64::new(h * A[s][j], 0.0);
                }
            }
            k.push(a(t + C[s] * h)? * ys);
        }
        let mut y5 = y.clone();
        let mut y4 = y.clone();
        for s in 0..7 {
            if B5[s] != 0.0 {
                y5 += &k[s] * Complex64::new(h * B5[s], 0.0);
            }
            if B4[s] != 0.0 {
                y4 += &k[s] * Complex64::new(h * B4[s], 0.0);
            }
        }
        let mut err: f64 = 0.0;
        for (e5, e4) in y5.iter().zip(y4.iter()) {
            let scale = tol * (1.0 + e5.norm());
            err = err.max((e5 - e4).norm() / scale);
        }
        if err <= 1.0 {
            t += h;
            y = y5;
            // first-same-as-last
            first = k[6].clone();
            steps += 1;
        } else {
            rejected += 1;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h < MIN_STEP && t < 1.0 {
            return Err(Error::Convergence(format!("step size underflow at t = {t:.6}")));
        }
    }
    Ok(Solution { y, steps, rejected })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_exponential() {
        // y' = 2 pi i y gives e^{2 pi i} = 1
        let a = |_t: f64| Ok(CMat::from_element(1, 1, Complex64::new(0.0, 2.0 * std::f64::consts::PI)));
        let s = solve_linear_ode(&a, &CMat::identity(1, 1), 1e-10).unwrap();
        assert!((s.y[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn time_dependent_nilpotent() {
        // Y' = [[0, t], [0, 0]] Y has Y(1) = [[1, 1/2], [0, 1]]
        let a = |t: f64| {
            let mut m = CMat::zeros(2, 2);
            m[(0, 1)] = Complex64::new(t, 0.0);
            Ok(m)
        };
        let s = solve_linear_ode(&a, &CMat::identity(2, 2), 1e-12).unwrap();
        assert!((s.y[(0, 1)] - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_connection_is_identity() {
        let a = |_t: f64| Ok(CMat::zeros(3, 3));
        let s = solve_linear_ode(&a, &CMat::identity(3, 3), 1e-10).unwrap();
        assert_eq!(s.y, CMat::identity(3, 3));
    }
}
