//! Symplectic spectra, partial transposition and Gaussian negativity.
//!
//! The smallest symplectic eigenvalue `ν̃₋` of the partially transposed
//! two-mode covariance is obtained twice: from the closed-form invariants
//! `det A + det B − 2 det C` and `det σ`, and from the spectrum of `J σ̃`.
//! The two must agree before a negativity is reported.

use crate::eigen::eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Real;
use crate::symplectic::{symplectic_form, GaussianState};

/// Required agreement between the two `ν̃₋` routes.
pub const ROUTE_TOLERANCE: f64 = 1e-10;

/// Negative discriminants down to this (relative) size are rounding noise.
pub const DISCRIMINANT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeInvariants {
    pub det_a: f64,
    pub det_b: f64,
    pub det_c: f64,
    pub delta_tilde: f64,
    pub det_sigma: f64,
    pub nu_tilde_minus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementResult {
    pub negativity: f64,
    pub log_negativity: f64,
    pub separable: bool,
    pub nu_tilde_minus: f64,
    /// `|ν̃₋(invariants) − ν̃₋(spectrum)|`.
    pub route_defect: f64,
}

impl EntanglementResult {
    fn from_nu(nu: f64, route_defect: f64) -> Self {
        EntanglementResult {
            negativity: ((1.0 - nu) / (2.0 * nu)).max(0.0),
            log_negativity: (-nu.ln()).max(0.0),
            separable: nu >= 1.0,
            nu_tilde_minus: nu,
            route_defect,
        }
    }
}

/// Symplectic eigenvalues of `σ`, ascending: the moduli of the `±iν` pairs
/// in the spectrum of `J σ`.
pub fn symplectic_eigenvalues<T: Real>(sigma: &Mat<T>) -> Result<Vec<T>> {
    if !sigma.is_square() || sigma.rows() % 2 != 0 || sigma.rows() == 0 {
        return Err(Error::InvalidInput(
            "covariance must be square with even, non-zero size".into(),
        ));
    }
    let n = sigma.rows() / 2;
    let js = symplectic_form::<T>(n).mul(sigma);
    let spectrum = eigenvalues(&js)?;

    let scale = spectrum
        .iter()
        .map(|(re, im)| re.to_f64().hypot(im.to_f64()))
        .fold(1.0, f64::max);
    let tol = 100.0 * T::epsilon().sqrt() * scale;

    let mut up = Vec::with_capacity(n);
    let mut down = Vec::with_capacity(n);
    for (re, im) in spectrum {
        if re.to_f64().abs() > tol {
            return Err(Error::Numerical(format!(
                "J·σ has eigenvalue with real part {:e}; not a positive covariance",
                re.to_f64()
            )));
        }
        if im.to_f64() > 0.0 {
            up.push(im);
        } else {
            down.push(-im);
        }
    }
    if up.len() != n || down.len() != n {
        return Err(Error::Numerical(
            "J·σ spectrum does not split into ±iν pairs".into(),
        ));
    }
    let by_value = |a: &T, b: &T| a.partial_cmp(b).expect("finite spectrum");
    up.sort_by(by_value);
    down.sort_by(by_value);
    for (a, b) in up.iter().zip(&down) {
        if (a.clone() - b).to_f64().abs() > tol {
            return Err(Error::Numerical(format!(
                "unpaired symplectic eigenvalues {:e} and {:e}",
                a.to_f64(),
                b.to_f64()
            )));
        }
    }
    Ok(up)
}

/// Flips the momentum of `mode` (0 or 1) of a two-mode covariance.
pub fn partial_transpose<T: Real>(sigma: &Mat<T>, mode: usize) -> Result<Mat<T>> {
    check_two_mode(sigma)?;
    if mode > 1 {
        return Err(Error::InvalidInput(format!(
            "partial transpose mode must be 0 or 1, got {mode}"
        )));
    }
    let p = 2 * mode + 1;
    let mut out = sigma.clone();
    for k in 0..4 {
        if k != p {
            out[(p, k)] = -sigma[(p, k)].clone();
            out[(k, p)] = -sigma[(k, p)].clone();
        }
    }
    Ok(out)
}

fn check_two_mode<T: Real>(sigma: &Mat<T>) -> Result<()> {
    if sigma.rows() != 4 || sigma.cols() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: sigma.rows().max(sigma.cols()),
        });
    }
    Ok(())
}

fn det2<T: Real>(sigma: &Mat<T>, r: usize, c: usize) -> T {
    sigma[(r, c)].clone() * &sigma[(r + 1, c + 1)]
        - sigma[(r, c + 1)].clone() * &sigma[(r + 1, c)]
}

/// `ν̃₋` and the invariants it is built from, in the working precision.
fn invariants_in<T: Real>(sigma: &Mat<T>) -> Result<(T, T, T, T, T, T)> {
    check_two_mode(sigma)?;
    let det_a = det2(sigma, 0, 0);
    let det_b = det2(sigma, 2, 2);
    let det_c = det2(sigma, 0, 2);
    let det_sigma = sigma.det();
    let two = T::from_f64(2.0);
    let delta = det_a.clone() + &det_b - two.clone() * &det_c;
    let disc = delta.clone() * &delta - T::from_f64(4.0) * &det_sigma;
    let slack = DISCRIMINANT_SLACK * delta.to_f64().powi(2).max(1.0);
    let disc = if disc < T::zero() {
        if disc.to_f64() < -slack {
            return Err(Error::Numerical(format!(
                "negative discriminant {:e} in two-mode invariants",
                disc.to_f64()
            )));
        }
        T::zero()
    } else {
        disc
    };
    // (Δ̃ − √disc)/2 without the cancellation
    let denom = delta.clone() + disc.sqrt();
    if !(denom > T::zero()) {
        return Err(Error::Numerical("non-positive Δ̃ in two-mode invariants".into()));
    }
    let nu_sq = two * &det_sigma / denom;
    if nu_sq < T::zero() {
        return Err(Error::Numerical("negative ν̃₋² from invariants".into()));
    }
    let nu = nu_sq.sqrt();
    Ok((det_a, det_b, det_c, delta, det_sigma, nu))
}

pub fn two_mode_invariants<T: Real>(sigma: &Mat<T>) -> Result<TwoModeInvariants> {
    let (det_a, det_b, det_c, delta, det_sigma, nu) = invariants_in(sigma)?;
    Ok(TwoModeInvariants {
        det_a: det_a.to_f64(),
        det_b: det_b.to_f64(),
        det_c: det_c.to_f64(),
        delta_tilde: delta.to_f64(),
        det_sigma: det_sigma.to_f64(),
        nu_tilde_minus: nu.to_f64(),
    })
}

/// Gaussian negativity of a two-mode covariance, checked by both routes.
pub fn negativity<T: Real>(sigma: &Mat<T>) -> Result<EntanglementResult> {
    let (.., nu) = invariants_in(sigma)?;
    let transposed = partial_transpose(sigma, 1)?;
    let spectral = symplectic_eigenvalues(&transposed)?
        .into_iter()
        .next()
        .expect("two symplectic eigenvalues");
    let defect = (nu.clone() - &spectral).abs().to_f64();
    if !(defect <= ROUTE_TOLERANCE) {
        return Err(Error::Numerical(format!(
            "ν̃₋ routes disagree: invariants {:.16e}, spectrum {:.16e}",
            nu.to_f64(),
            spectral.to_f64()
        )));
    }
    Ok(EntanglementResult::from_nu(nu.to_f64(), defect))
}

/// Mean excitation number of one mode, `(σ_qq + σ_pp − 2)/4 + (⟨q⟩² + ⟨p⟩²)/2`.
pub fn mean_excitations<T: Real>(state: &GaussianState<T>, mode: usize) -> Result<f64> {
    if mode >= state.n_modes() {
        return Err(Error::InvalidInput(format!(
            "mode {mode} out of range for {} modes",
            state.n_modes()
        )));
    }
    let (q, p) = (2 * mode, 2 * mode + 1);
    let c = state.covariance();
    let m = state.mean();
    let two = T::from_f64(2.0);
    let moments = c[(q, q)].clone() + &c[(p, p)] - two.clone();
    let displacement = m[q].clone() * &m[q] + m[p].clone() * &m[p];
    Ok((moments / T::from_f64(4.0) + displacement / two).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Extended;
    use crate::symplectic::{apply, two_mode_squeeze, vacuum_state, SymplecticTransform};
    use approx::assert_abs_diff_eq;

    fn tmsv(r: f64) -> Mat {
        let s: SymplecticTransform = two_mode_squeeze(r, 0, 1, 2).unwrap();
        apply(&s, &vacuum_state(2).unwrap()).unwrap().covariance().clone()
    }

    #[test]
    fn vacuum_spectrum() {
        let nus = symplectic_eigenvalues(&Mat::<f64>::identity(6)).unwrap();
        assert_eq!(nus.len(), 3);
        for nu in nus {
            assert_abs_diff_eq!(nu, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn thermal_and_pure_spectra() {
        let r = 0.7;
        let thermal = Mat::<f64>::identity(2).scale(&(2.0 * r).cosh());
        let nus = symplectic_eigenvalues(&thermal).unwrap();
        assert_abs_diff_eq!(nus[0], (2.0 * r).cosh(), epsilon = 1e-13);

        let nus = symplectic_eigenvalues(&tmsv(1.3)).unwrap();
        assert_abs_diff_eq!(nus[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(nus[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn unphysical_matrix_is_rejected() {
        let indefinite: Mat = Mat::from_diagonal(&[1.0, -1.0]);
        assert!(matches!(
            symplectic_eigenvalues(&indefinite),
            Err(Error::Numerical(_))
        ));
        assert!(symplectic_eigenvalues(&Mat::<f64>::identity(3)).is_err());
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let s = tmsv(0.4);
        let once = partial_transpose(&s, 1).unwrap();
        assert_eq!(partial_transpose(&once, 1).unwrap(), s);
        assert_eq!(
            partial_transpose(&Mat::<f64>::identity(4), 0).unwrap(),
            Mat::identity(4)
        );
        assert_eq!(once[(1, 3)], -s[(1, 3)]);
        assert_eq!(once[(3, 3)], s[(3, 3)]);
        assert!(partial_transpose(&s, 2).is_err());
    }

    #[test]
    fn invariants_of_vacuum_and_tmsv() {
        let v = two_mode_invariants(&Mat::<f64>::identity(4)).unwrap();
        assert_eq!((v.det_a, v.det_b, v.det_c), (1.0, 1.0, 0.0));
        assert_abs_diff_eq!(v.nu_tilde_minus, 1.0, epsilon = 1e-15);

        let t = two_mode_invariants(&tmsv(1.0)).unwrap();
        assert_abs_diff_eq!(t.nu_tilde_minus, (-2f64).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(t.nu_tilde_minus, 0.1353352832366127, epsilon = 1e-12);
    }

    #[test]
    fn product_of_thermal_states() {
        let (ra, rb) = (0.3, 0.8);
        let a = (2.0 * ra as f64).cosh();
        let b = (2.0 * rb as f64).cosh();
        let s: Mat = Mat::from_diagonal(&[a, a, b, b]);
        let inv = two_mode_invariants(&s).unwrap();
        assert_abs_diff_eq!(inv.nu_tilde_minus, a.min(b), epsilon = 1e-13);
        let n = negativity(&s).unwrap();
        assert_eq!(n.negativity, 0.0);
        assert!(n.separable);
    }

    #[test]
    fn tmsv_negativity_closed_form() {
        let n = negativity(&tmsv(1.0)).unwrap();
        assert_abs_diff_eq!(n.negativity, 3.194528049465325, epsilon = 1e-10);
        assert_abs_diff_eq!(n.log_negativity, 2.0, epsilon = 1e-11);
        assert!(!n.separable);

        let vac = negativity(&Mat::<f64>::identity(4)).unwrap();
        assert_eq!(vac.negativity, 0.0);
        assert_eq!(vac.log_negativity, 0.0);
        assert!(vac.separable);
    }

    #[test]
    fn negativity_increases_with_squeezing() {
        let mut last = -1.0;
        for k in 0..=20 {
            let n = negativity(&tmsv(0.1 * k as f64)).unwrap().negativity;
            assert!(n > last);
            last = n;
        }
    }

    #[test]
    fn extended_routes_agree_on_strong_squeezing() {
        let s: SymplecticTransform<Extended> = two_mode_squeeze(9.0, 0, 1, 2).unwrap();
        let st = apply(&s, &vacuum_state(2).unwrap()).unwrap();
        let n = negativity(st.covariance()).unwrap();
        assert!((n.nu_tilde_minus / (-18f64).exp() - 1.0).abs() < 1e-14);
        assert!(n.route_defect < 1e-30);
    }

    #[test]
    fn excitations() {
        let vac = vacuum_state::<f64>(2).unwrap();
        assert_eq!(mean_excitations(&vac, 1).unwrap(), 0.0);
        let r = 0.9;
        let st = GaussianState::new(tmsv(r), vec![0.0; 4], vec!["a".into(), "b".into()]).unwrap();
        assert_abs_diff_eq!(mean_excitations(&st, 0).unwrap(), r.sinh().powi(2), epsilon = 1e-13);
        assert!(mean_excitations(&st, 2).is_err());

        // coherent state: ⟨q⟩ = √2 Re α, so ⟨q⟩ = 2 means |α|² = 2
        let shifted =
            GaussianState::new(Mat::identity(2), vec![2.0, 0.0], vec!["c".into()]).unwrap();
        assert_abs_diff_eq!(mean_excitations(&shifted, 0).unwrap(), 2.0);
    }
}
