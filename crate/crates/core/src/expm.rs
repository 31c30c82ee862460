//! Matrix exponential by scaling and squaring.
//!
//! Double precision follows Higham (2005): diagonal Padé approximants of
//! degree 3, 5, 7, 9 or 13 chosen from the 1-norm, with squaring for larger
//! norms. Extended precision scales harder and sums a Taylor series until the
//! terms fall below the 256-bit roundoff; the Padé thresholds are tuned to
//! double precision only.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Precision, Real};

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068;
const THETA_13: f64 = 5.371920351148152;

const PADE_3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE_5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE_7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const PADE_9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Taylor path: norm after scaling.
const TAYLOR_THETA: f64 = 1.0 / 256.0;

/// `e^A` for a real square matrix.
pub fn matrix_exp<T: Real>(a: &Mat<T>) -> Result<Mat<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    if !a.is_finite() {
        return Err(Error::Numerical("non-finite entry in exponent".into()));
    }
    let out = match T::PRECISION {
        Precision::Double => pade_exp(a)?,
        Precision::Extended => taylor_exp(a)?,
    };
    if !out.is_finite() {
        return Err(Error::Numerical("matrix exponential overflowed".into()));
    }
    Ok(out)
}

fn pade_exp<T: Real>(a: &Mat<T>) -> Result<Mat<T>> {
    let n = a.rows();
    let norm = a.norm1();
    let ident = Mat::<T>::identity(n);
    let (u, v, squarings) = if norm <= THETA_3 {
        let (u, v) = pade_low(a, &ident, &PADE_3);
        (u, v, 0)
    } else if norm <= THETA_5 {
        let (u, v) = pade_low(a, &ident, &PADE_5);
        (u, v, 0)
    } else if norm <= THETA_7 {
        let (u, v) = pade_low(a, &ident, &PADE_7);
        (u, v, 0)
    } else if norm <= THETA_9 {
        let (u, v) = pade_low(a, &ident, &PADE_9);
        (u, v, 0)
    } else {
        let s = (norm / THETA_13).log2().ceil().max(0.0) as i32;
        let scaled = a.scale(&T::from_f64(2f64.powi(-s)));
        let (u, v) = pade_13(&scaled, &ident);
        (u, v, s)
    };
    // r = (V - U)^{-1} (V + U)
    let mut r = v.sub(&u).solve(&v.add(&u))?;
    for _ in 0..squarings {
        r = r.mul(&r);
        if !r.is_finite() {
            return Err(Error::Numerical("overflow while squaring".into()));
        }
    }
    Ok(r)
}

/// Odd/even split for degrees 3..9: U = A·Σ b_{2k+1} A^{2k}, V = Σ b_{2k} A^{2k}.
fn pade_low<T: Real>(a: &Mat<T>, ident: &Mat<T>, b: &[f64]) -> (Mat<T>, Mat<T>) {
    let a2 = a.mul(a);
    let mut power = ident.clone();
    let mut odd = Mat::<T>::zeros(a.rows(), a.cols());
    let mut even = Mat::<T>::zeros(a.rows(), a.cols());
    for k in 0..b.len() / 2 {
        even = even.add(&power.scale(&T::from_f64(b[2 * k])));
        odd = odd.add(&power.scale(&T::from_f64(b[2 * k + 1])));
        power = power.mul(&a2);
    }
    (a.mul(&odd), even)
}

fn pade_13<T: Real>(a: &Mat<T>, ident: &Mat<T>) -> (Mat<T>, Mat<T>) {
    let b = |k: usize| T::from_f64(PADE_13[k]);
    let a2 = a.mul(a);
    let a4 = a2.mul(&a2);
    let a6 = a4.mul(&a2);
    let inner_u = a6
        .scale(&b(13))
        .add(&a4.scale(&b(11)))
        .add(&a2.scale(&b(9)));
    let u = a.mul(
        &a6.mul(&inner_u)
            .add(&a6.scale(&b(7)))
            .add(&a4.scale(&b(5)))
            .add(&a2.scale(&b(3)))
            .add(&ident.scale(&b(1))),
    );
    let inner_v = a6
        .scale(&b(12))
        .add(&a4.scale(&b(10)))
        .add(&a2.scale(&b(8)));
    let v = a6
        .mul(&inner_v)
        .add(&a6.scale(&b(6)))
        .add(&a4.scale(&b(4)))
        .add(&a2.scale(&b(2)))
        .add(&ident.scale(&b(0)));
    (u, v)
}

fn taylor_exp<T: Real>(a: &Mat<T>) -> Result<Mat<T>> {
    let n = a.rows();
    let norm = a.norm1();
    let s = if norm > TAYLOR_THETA {
        (norm / TAYLOR_THETA).log2().ceil() as i32
    } else {
        0
    };
    let x = a.scale(&T::from_f64(2f64.powi(-s)));
    let mut sum = Mat::<T>::identity(n);
    let mut term = Mat::<T>::identity(n);
    let eps = T::epsilon();
    let mut k = 1usize;
    loop {
        term = term.mul(&x).scale(&(T::one() / T::from_f64(k as f64)));
        sum = sum.add(&term);
        if term.max_abs() <= eps * sum.max_abs() || term.max_abs() == 0.0 {
            break;
        }
        k += 1;
        if k > 400 {
            return Err(Error::Numerical("taylor series failed to converge".into()));
        }
    }
    for _ in 0..s {
        sum = sum.mul(&sum);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Extended;

    fn rot(theta: f64) -> Mat {
        Mat::from_rows(&[
            vec![theta.cos(), theta.sin()],
            vec![-theta.sin(), theta.cos()],
        ])
    }

    #[test]
    fn zero_gives_identity() {
        let z = Mat::<f64>::zeros(4, 4);
        assert_eq!(matrix_exp(&z).unwrap(), Mat::identity(4));
    }

    #[test]
    fn nilpotent_series_terminates() {
        let a: Mat = Mat::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        let e = matrix_exp(&a).unwrap();
        let want: Mat = Mat::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
        assert!(e.sub(&want).max_abs() < 1e-15);
    }

    #[test]
    fn diagonal_matches_scalar_exp() {
        for (a, b) in [(0.3, -1.2), (4.0, 2.5), (-20.0, 11.0)] {
            let m: Mat = Mat::from_rows(&[vec![a, 0.0], vec![0.0, b]]);
            let e = matrix_exp(&m).unwrap();
            assert!((e[(0, 0)] / a.exp() - 1.0).abs() < 1e-13);
            assert!((e[(1, 1)] / b.exp() - 1.0).abs() < 1e-13);
            assert_eq!(e[(0, 1)], 0.0);
        }
    }

    #[test]
    fn generator_of_rotation_every_pade_degree() {
        // Norms straddle every threshold, including scaled Padé-13.
        for theta in [1e-3, 0.1, 0.5, 1.5, 3.0, 40.0] {
            let gen: Mat = Mat::from_rows(&[vec![0.0, theta], vec![-theta, 0.0]]);
            let e = matrix_exp(&gen).unwrap();
            assert!(e.sub(&rot(theta)).max_abs() < 1e-13, "theta={theta}");
        }
    }

    #[test]
    fn extended_taylor_agrees_with_closed_form() {
        for theta in [1e-3, 0.7, 9.0] {
            let gen: Mat<Extended> = Mat::from_rows(&[vec![0.0, theta], vec![-theta, 0.0]]);
            let e = matrix_exp(&gen).unwrap();
            assert!(e.to_f64().sub(&rot(theta)).max_abs() < 1e-15, "theta={theta}");
            // cos² + sin² = 1 to far beyond double precision
            let det = e.det() - Extended::one();
            assert!(det.to_f64().abs() < 1e-60);
        }
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let a: Mat = Mat::from_rows(&[vec![f64::NAN, 0.0], vec![0.0, 1.0]]);
        assert!(matches!(matrix_exp(&a), Err(Error::Numerical(_))));
        let big: Mat = Mat::from_rows(&[vec![800.0, 0.0], vec![0.0, 1.0]]);
        assert!(matches!(matrix_exp(&big), Err(Error::Numerical(_))));
    }
}
