//! Quadratic detector–field Hamiltonians and their symplectic evolution.
//!
//! Quadratures are ordered mode by mode, detectors first:
//! `(q_1, p_1, …, q_n, p_n, Q_1, P_1, …, Q_m, P_m)`. A quadratic Hamiltonian
//! `H = ½ Xᵀ W X` drives the Heisenberg equation `dX/dt = J W X`, so a segment
//! of constant couplings evolves by `S = exp(J W t)` and a Gaussian state by
//! `σ → S σ Sᵀ`, `mean → S mean`.
//!
//! Covariances use `σ_ij = ⟨X_i X_j + X_j X_i⟩ − 2⟨X_i⟩⟨X_j⟩`, under which the
//! vacuum is the identity.

use crate::error::{Error, Result};
use crate::expm::matrix_exp;
use crate::matrix::Mat;
use crate::scalar::Real;

/// Detectors and field modes of a 1+1 dimensional setup (ħ = c = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemLayout {
    detector_freqs: Vec<f64>,
    field_freqs: Vec<f64>,
    detector_positions: Vec<f64>,
    /// `couplings[i][j]`: detector `i` to field mode `j`.
    couplings: Vec<Vec<f64>>,
}

impl SystemLayout {
    pub fn new(
        detector_freqs: Vec<f64>,
        field_freqs: Vec<f64>,
        detector_positions: Vec<f64>,
        couplings: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = detector_freqs.len();
        let m = field_freqs.len();
        if n == 0 || m == 0 {
            return Err(Error::InvalidInput(
                "a layout needs at least one detector and one field mode".into(),
            ));
        }
        if let Some(w) = detector_freqs
            .iter()
            .chain(&field_freqs)
            .find(|w| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::InvalidInput(format!(
                "frequencies must be positive, got {w}"
            )));
        }
        if detector_positions.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: detector_positions.len(),
            });
        }
        if couplings.len() != n || couplings.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidInput(format!(
                "coupling matrix must be {n}x{m}"
            )));
        }
        if detector_positions
            .iter()
            .chain(couplings.iter().flatten())
            .any(|x| !x.is_finite())
        {
            return Err(Error::InvalidInput(
                "positions and couplings must be finite".into(),
            ));
        }
        Ok(SystemLayout {
            detector_freqs,
            field_freqs,
            detector_positions,
            couplings,
        })
    }

    pub fn n_detectors(&self) -> usize {
        self.detector_freqs.len()
    }

    pub fn n_fields(&self) -> usize {
        self.field_freqs.len()
    }

    pub fn n_modes(&self) -> usize {
        self.n_detectors() + self.n_fields()
    }

    /// Mode index of field mode `j`.
    pub fn field_mode(&self, j: usize) -> usize {
        self.n_detectors() + j
    }

    pub fn detector_freqs(&self) -> &[f64] {
        &self.detector_freqs
    }

    pub fn field_freqs(&self) -> &[f64] {
        &self.field_freqs
    }

    pub fn detector_positions(&self) -> &[f64] {
        &self.detector_positions
    }

    pub fn coupling(&self, detector: usize, field: usize) -> f64 {
        self.couplings[detector][field]
    }

    /// Frequency of every mode in quadrature order.
    pub fn mode_freqs(&self) -> Vec<f64> {
        self.detector_freqs
            .iter()
            .chain(&self.field_freqs)
            .copied()
            .collect()
    }

    pub fn mode_labels(&self) -> Vec<String> {
        (1..=self.n_detectors())
            .map(|i| format!("d{i}"))
            .chain((1..=self.n_fields()).map(|j| format!("f{j}")))
            .collect()
    }
}

/// `H = ½ Xᵀ W X` for one switching configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    w: Mat<f64>,
    active: Vec<usize>,
}

impl QuadraticHamiltonian {
    pub fn w(&self) -> &Mat<f64> {
        &self.w
    }

    pub fn n_modes(&self) -> usize {
        self.w.rows() / 2
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    /// Whether `W` is positive definite, i.e. the dynamics is oscillatory.
    /// Indefinite `W` (e.g. one detector with λ ≥ ω/2) gives hyperbolic growth.
    pub fn is_stable(&self) -> bool {
        self.w.to_nalgebra().cholesky().is_some()
    }
}

/// Block-diagonal symplectic form with per-mode blocks `[[0, 1], [-1, 0]]`.
pub fn symplectic_form<T: Real>(n_modes: usize) -> Mat<T> {
    let mut j = Mat::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        j[(2 * k, 2 * k + 1)] = T::one();
        j[(2 * k + 1, 2 * k)] = -T::one();
    }
    j
}

/// Quadratic form of the detector–field Hamiltonian with the given detectors
/// switched on. Inactive detectors keep only their free term.
pub fn build_hamiltonian(layout: &SystemLayout, active: &[usize]) -> Result<QuadraticHamiltonian> {
    let n = layout.n_detectors();
    if let Some(&bad) = active.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidInput(format!(
            "detector index {bad} out of range for {n} detectors"
        )));
    }
    let dim = 2 * layout.n_modes();
    let mut w = Mat::zeros(dim, dim);
    for (k, freq) in layout.mode_freqs().into_iter().enumerate() {
        w[(2 * k, 2 * k)] = freq;
        w[(2 * k + 1, 2 * k + 1)] = freq;
    }
    let mut active: Vec<usize> = active.to_vec();
    active.sort_unstable();
    active.dedup();
    for &i in &active {
        let x = layout.detector_positions[i];
        for (j, &big_omega) in layout.field_freqs.iter().enumerate() {
            let lambda = layout.couplings[i][j];
            if lambda == 0.0 {
                continue;
            }
            // 2λ q_i (Q_j cos Ωx − P_j sin Ωx)
            let phase = big_omega * x;
            let q = 2 * i;
            let big_q = 2 * layout.field_mode(j);
            let big_p = big_q + 1;
            let cq = 2.0 * lambda * phase.cos();
            let cp = -2.0 * lambda * phase.sin();
            w[(q, big_q)] = cq;
            w[(big_q, q)] = cq;
            w[(q, big_p)] = cp;
            w[(big_p, q)] = cp;
        }
    }
    Ok(QuadraticHamiltonian { w, active })
}

/// Linear map `X → S X` on quadratures, with the time span it covers.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticTransform<T: Real = f64> {
    matrix: Mat<T>,
    duration: f64,
}

impl<T: Real> SymplecticTransform<T> {
    pub fn identity(n_modes: usize) -> Self {
        SymplecticTransform {
            matrix: Mat::identity(2 * n_modes),
            duration: 0.0,
        }
    }

    /// Wraps a matrix without checking symplecticity.
    pub fn from_matrix(matrix: Mat<T>, duration: f64) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "transform must be square of even size, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(SymplecticTransform { matrix, duration })
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.matrix
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.rows() / 2
    }

    /// `max |S J Sᵀ − J|`.
    pub fn symplectic_defect(&self) -> f64 {
        let j = symplectic_form::<T>(self.n_modes());
        self.matrix
            .mul(&j)
            .mul(&self.matrix.transpose())
            .sub(&j)
            .max_abs()
    }

    pub fn det(&self) -> T {
        self.matrix.det()
    }
}

/// `S = exp(J W t)`: forward Heisenberg evolution over `duration`.
pub fn evolve_segment<T: Real>(
    h: &QuadraticHamiltonian,
    duration: f64,
) -> Result<SymplecticTransform<T>> {
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "segment duration must be non-negative, got {duration}"
        )));
    }
    let n = h.n_modes();
    if duration == 0.0 {
        return Ok(SymplecticTransform::identity(n));
    }
    let j = symplectic_form::<T>(n);
    let generator = j.mul(&h.w.cast::<T>()).scale(&T::from_f64(duration));
    Ok(SymplecticTransform {
        matrix: matrix_exp(&generator)?,
        duration,
    })
}

/// `later · earlier`: apply `earlier` first.
pub fn compose<T: Real>(
    later: &SymplecticTransform<T>,
    earlier: &SymplecticTransform<T>,
) -> Result<SymplecticTransform<T>> {
    Ok(SymplecticTransform {
        matrix: later.matrix.matmul(&earlier.matrix)?,
        duration: later.duration + earlier.duration,
    })
}

/// Two-mode squeezer acting on modes `mode_a`, `mode_b` of an `n_modes` system.
///
/// `q_a → q_a cosh r + q_b sinh r`, `p_a → p_a cosh r − p_b sinh r` and
/// symmetrically for `b`; on the vacuum this gives diagonal blocks
/// `cosh 2r · I` and cross block `sinh 2r · diag(1, −1)`.
pub fn two_mode_squeeze<T: Real>(
    r: f64,
    mode_a: usize,
    mode_b: usize,
    n_modes: usize,
) -> Result<SymplecticTransform<T>> {
    if mode_a == mode_b {
        return Err(Error::InvalidInput(
            "two-mode squeezing needs two distinct modes".into(),
        ));
    }
    if mode_a >= n_modes || mode_b >= n_modes {
        return Err(Error::InvalidInput(format!(
            "mode index out of range for {n_modes} modes"
        )));
    }
    if !r.is_finite() {
        return Err(Error::InvalidInput(format!("squeezing must be finite, got {r}")));
    }
    let rr = T::from_f64(r);
    let (ch, sh) = (rr.cosh(), rr.sinh());
    let mut s = Mat::identity(2 * n_modes);
    let (qa, pa, qb, pb) = (2 * mode_a, 2 * mode_a + 1, 2 * mode_b, 2 * mode_b + 1);
    s[(qa, qa)] = ch.clone();
    s[(qa, qb)] = sh.clone();
    s[(pa, pa)] = ch.clone();
    s[(pa, pb)] = -sh.clone();
    s[(qb, qa)] = sh.clone();
    s[(qb, qb)] = ch.clone();
    s[(pb, pa)] = -sh;
    s[(pb, pb)] = ch;
    Ok(SymplecticTransform {
        matrix: s,
        duration: 0.0,
    })
}

/// Gaussian state: covariance, mean and a label per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState<T: Real = f64> {
    covariance: Mat<T>,
    mean: Vec<T>,
    labels: Vec<String>,
}

impl<T: Real> GaussianState<T> {
    pub fn new(covariance: Mat<T>, mean: Vec<T>, labels: Vec<String>) -> Result<Self> {
        let dim = covariance.rows();
        if !covariance.is_square() || dim % 2 != 0 || dim == 0 {
            return Err(Error::InvalidInput(
                "covariance must be square with even, non-zero size".into(),
            ));
        }
        if mean.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: mean.len(),
            });
        }
        if labels.len() != dim / 2 {
            return Err(Error::DimensionMismatch {
                expected: dim / 2,
                found: labels.len(),
            });
        }
        Ok(GaussianState {
            covariance,
            mean,
            labels,
        })
    }

    pub fn vacuum(labels: Vec<String>) -> Self {
        let dim = 2 * labels.len();
        GaussianState {
            covariance: Mat::identity(dim),
            mean: vec![T::zero(); dim],
            labels,
        }
    }

    pub fn covariance(&self) -> &Mat<T> {
        &self.covariance
    }

    pub fn mean(&self) -> &[T] {
        &self.mean
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n_modes(&self) -> usize {
        self.labels.len()
    }

    /// Symmetry defect `max |σ − σᵀ|`.
    pub fn asymmetry(&self) -> f64 {
        self.covariance.sub(&self.covariance.transpose()).max_abs()
    }

    pub fn to_f64(&self) -> GaussianState<f64> {
        GaussianState {
            covariance: self.covariance.to_f64(),
            mean: self.mean.iter().map(Real::to_f64).collect(),
            labels: self.labels.clone(),
        }
    }
}

impl GaussianState<f64> {
    /// Smallest eigenvalue of the Hermitian matrix `σ + iJ`; the state is
    /// physical when this is non-negative.
    pub fn uncertainty_margin(&self) -> f64 {
        use nalgebra::DMatrix;
        use num_complex::Complex64;
        let dim = self.covariance.rows();
        let j = symplectic_form::<f64>(dim / 2);
        let m = DMatrix::from_fn(dim, dim, |a, b| {
            Complex64::new(self.covariance[(a, b)], j[(a, b)])
        });
        m.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn cast<U: Real>(&self) -> GaussianState<U> {
        GaussianState {
            covariance: self.covariance.cast(),
            mean: self.mean.iter().map(|&x| U::from_f64(x)).collect(),
            labels: self.labels.clone(),
        }
    }
}

/// Vacuum on `n_modes` modes: `σ = I`, zero mean.
pub fn vacuum_state<T: Real>(n_modes: usize) -> Result<GaussianState<T>> {
    if n_modes == 0 {
        return Err(Error::InvalidInput("vacuum needs at least one mode".into()));
    }
    Ok(GaussianState::vacuum(
        (1..=n_modes).map(|k| format!("m{k}")).collect(),
    ))
}

/// `σ' = S σ Sᵀ`, `mean' = S mean`.
pub fn apply<T: Real>(s: &SymplecticTransform<T>, state: &GaussianState<T>) -> Result<GaussianState<T>> {
    let dim = state.covariance.rows();
    if s.matrix.rows() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: s.matrix.rows(),
        });
    }
    let covariance = s.matrix.mul(&state.covariance).mul(&s.matrix.transpose());
    let mean = (0..dim)
        .map(|i| {
            (0..dim).fold(T::zero(), |acc, k| {
                acc + s.matrix[(i, k)].clone() * &state.mean[k]
            })
        })
        .collect();
    Ok(GaussianState {
        covariance,
        mean,
        labels: state.labels.clone(),
    })
}

/// Gaussian reduction onto `keep` (in the given order).
pub fn partial_trace<T: Real>(state: &GaussianState<T>, keep: &[usize]) -> Result<GaussianState<T>> {
    if keep.is_empty() {
        return Err(Error::InvalidInput("partial trace must keep at least one mode".into()));
    }
    let n = state.n_modes();
    for (pos, &k) in keep.iter().enumerate() {
        if k >= n {
            return Err(Error::InvalidInput(format!(
                "mode {k} out of range for {n} modes"
            )));
        }
        if keep[..pos].contains(&k) {
            return Err(Error::InvalidInput(format!("mode {k} listed twice")));
        }
    }
    let idx: Vec<usize> = keep.iter().flat_map(|&k| [2 * k, 2 * k + 1]).collect();
    Ok(GaussianState {
        covariance: state.covariance.select(&idx),
        mean: idx.iter().map(|&i| state.mean[i].clone()).collect(),
        labels: keep.iter().map(|&k| state.labels[k].clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Extended;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn single(omega: f64, x: f64, lambda: f64) -> SystemLayout {
        SystemLayout::new(vec![omega], vec![omega], vec![x], vec![vec![lambda]]).unwrap()
    }

    #[test]
    fn form_blocks() {
        let j1 = symplectic_form::<f64>(1);
        assert_eq!(j1, Mat::from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]));
        let j3 = symplectic_form::<f64>(3);
        assert_eq!(j3.mul(&j3), Mat::identity(6).scale(&-1.0));
        for a in 0..6 {
            for b in 0..6 {
                if a / 2 != b / 2 {
                    assert_eq!(j3[(a, b)], 0.0);
                }
            }
        }
    }

    #[test]
    fn free_hamiltonian_is_diagonal() {
        let layout = SystemLayout::new(
            vec![1.0, 2.0],
            vec![3.0],
            vec![0.0, 1.0],
            vec![vec![0.5], vec![0.7]],
        )
        .unwrap();
        let h = build_hamiltonian(&layout, &[]).unwrap();
        let want = Mat::from_diagonal(&[1.0, 1.0, 2.0, 2.0, 3.0, 3.0]);
        assert_eq!(h.w(), &want);
        assert!(h.is_stable());
    }

    #[test]
    fn coupling_coefficients() {
        let lambda = 0.3;
        let h = build_hamiltonian(&single(2.0, 0.0, lambda), &[0]).unwrap();
        assert_eq!(h.w()[(0, 2)], 2.0 * lambda);
        assert_eq!(h.w()[(0, 3)], 0.0);

        // Ωx = π/2
        let h = build_hamiltonian(&single(2.0, PI / 4.0, lambda), &[0]).unwrap();
        assert_abs_diff_eq!(h.w()[(0, 2)], 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(h.w()[(0, 3)], -2.0 * lambda, epsilon = 1e-16);
        assert_eq!(h.w(), &h.w().transpose());
    }

    #[test]
    fn inactive_index_out_of_range() {
        assert!(build_hamiltonian(&single(1.0, 0.0, 0.1), &[1]).is_err());
    }

    #[test]
    fn stability_threshold_single_detector() {
        assert!(build_hamiltonian(&single(2.0, 0.0, 0.99), &[0]).unwrap().is_stable());
        assert!(!build_hamiltonian(&single(2.0, 0.0, 1.01), &[0]).unwrap().is_stable());
    }

    #[test]
    fn free_rotation_direction_and_period() {
        let omega = 1.7;
        let layout = single(omega, 0.0, 0.0);
        let h = build_hamiltonian(&layout, &[]).unwrap();

        let quarter: SymplecticTransform = evolve_segment(&h, PI / (2.0 * omega)).unwrap();
        // q → p, p → −q on every mode
        for k in 0..2 {
            assert_abs_diff_eq!(quarter.matrix()[(2 * k, 2 * k + 1)], 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(quarter.matrix()[(2 * k + 1, 2 * k)], -1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(quarter.matrix()[(2 * k, 2 * k)], 0.0, epsilon = 1e-14);
        }

        let full: SymplecticTransform = evolve_segment(&h, 2.0 * PI / omega).unwrap();
        assert!(full.matrix().sub(&Mat::identity(4)).max_abs() < 1e-13);

        let t = 0.37;
        let s: SymplecticTransform = evolve_segment(&h, t).unwrap();
        assert_abs_diff_eq!(s.matrix()[(0, 0)], (omega * t).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(s.matrix()[(0, 1)], (omega * t).sin(), epsilon = 1e-15);
    }

    #[test]
    fn zero_duration_is_identity() {
        let h = build_hamiltonian(&single(1.0, 0.3, 0.4), &[0]).unwrap();
        let s: SymplecticTransform = evolve_segment(&h, 0.0).unwrap();
        assert_eq!(s.matrix(), &Mat::identity(4));
        assert!(evolve_segment::<f64>(&h, -1.0).is_err());
    }

    #[test]
    fn composition_of_rotations() {
        let h = build_hamiltonian(&single(1.3, 0.0, 0.0), &[]).unwrap();
        let a: SymplecticTransform = evolve_segment(&h, 0.4).unwrap();
        let b: SymplecticTransform = evolve_segment(&h, 1.1).unwrap();
        let ab = compose(&b, &a).unwrap();
        let direct: SymplecticTransform = evolve_segment(&h, 1.5).unwrap();
        assert!(ab.matrix().sub(direct.matrix()).max_abs() < 1e-14);
        assert_abs_diff_eq!(ab.duration(), 1.5);

        let id = SymplecticTransform::<f64>::identity(2);
        assert_eq!(compose(&id, &a).unwrap().matrix(), a.matrix());

        let wrong = SymplecticTransform::<f64>::identity(3);
        assert!(compose(&wrong, &a).is_err());
    }

    #[test]
    fn squeezer_on_vacuum() {
        let s: SymplecticTransform = two_mode_squeeze(1.0, 0, 1, 2).unwrap();
        assert!(s.symplectic_defect() < 1e-14);
        let out = apply(&s, &vacuum_state(2).unwrap()).unwrap();
        let c = out.covariance();
        assert_abs_diff_eq!(c[(0, 0)], 2f64.cosh(), epsilon = 1e-13);
        assert_abs_diff_eq!(c[(0, 0)], 3.762195691083631, epsilon = 1e-13);
        assert_abs_diff_eq!(c[(1, 1)], 2f64.cosh(), epsilon = 1e-13);
        assert_abs_diff_eq!(c[(0, 2)], 2f64.sinh(), epsilon = 1e-13);
        assert_abs_diff_eq!(c[(1, 3)], -2f64.sinh(), epsilon = 1e-13);
        assert_abs_diff_eq!(c[(0, 1)], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.det(), 1.0, epsilon = 1e-12);

        let zero: SymplecticTransform = two_mode_squeeze(0.0, 0, 1, 3).unwrap();
        assert_eq!(zero.matrix(), &Mat::identity(6));
        assert!(two_mode_squeeze::<f64>(0.5, 1, 1, 2).is_err());
    }

    #[test]
    fn reductions() {
        let vac = vacuum_state::<f64>(3).unwrap();
        let kept = partial_trace(&vac, &[2, 0]).unwrap();
        assert_eq!(kept.covariance(), &Mat::identity(4));
        assert_eq!(kept.labels(), &["m3".to_string(), "m1".to_string()]);
        assert_eq!(partial_trace(&vac, &[0, 1, 2]).unwrap(), vac);

        let tmsv = apply(&two_mode_squeeze(0.6, 0, 1, 2).unwrap(), &vacuum_state(2).unwrap()).unwrap();
        let one = partial_trace(&tmsv, &[1]).unwrap();
        assert!(one.covariance().sub(&Mat::identity(2).scale(&1.2f64.cosh())).max_abs() < 1e-14);

        assert!(partial_trace(&vac, &[]).is_err());
        assert!(partial_trace(&vac, &[3]).is_err());
        assert!(partial_trace(&vac, &[1, 1]).is_err());
    }

    #[test]
    fn vacuum_is_minimal_uncertainty() {
        let v = vacuum_state::<f64>(1).unwrap();
        assert_eq!(v.covariance(), &Mat::identity(2));
        assert!(v.uncertainty_margin().abs() < 1e-14);
        assert!(vacuum_state::<f64>(0).is_err());
    }

    #[test]
    fn extended_evolution_stays_symplectic_under_strong_growth() {
        // λ far above ω/2: entries reach ~e^{12}
        let layout = single(1.0, 0.0, 4.0);
        let h = build_hamiltonian(&layout, &[0]).unwrap();
        assert!(!h.is_stable());
        let s: SymplecticTransform<Extended> = evolve_segment(&h, 4.5).unwrap();
        assert!(s.matrix().max_abs() > 1e4);
        assert!(s.symplectic_defect() < 1e-40);
        assert!((s.det() - Extended::one()).to_f64().abs() < 1e-40);
    }

    #[test]
    fn layout_validation() {
        assert!(SystemLayout::new(vec![], vec![1.0], vec![], vec![]).is_err());
        assert!(SystemLayout::new(vec![1.0], vec![-1.0], vec![0.0], vec![vec![0.1]]).is_err());
        assert!(SystemLayout::new(vec![1.0], vec![1.0], vec![0.0, 1.0], vec![vec![0.1]]).is_err());
        assert!(SystemLayout::new(vec![1.0], vec![1.0], vec![0.0], vec![vec![0.1, 0.2]]).is_err());
        let l = SystemLayout::new(vec![1.0, 1.0], vec![2.0], vec![0.0, 1.0], vec![vec![0.1], vec![0.2]])
            .unwrap();
        assert_eq!(l.mode_labels(), vec!["d1", "d2", "f1"]);
        assert_eq!(l.field_mode(0), 2);
    }
}
