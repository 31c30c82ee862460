//! Brute-force reference: the same detector–field Hamiltonian in a truncated
//! number basis, with no Gaussian machinery anywhere.
//!
//! `H = Σ_k ω_k (n_k + ½) + Σ λ_ij (d_i + d_i†)(f_j e^{iΩ_j x_i} + f_j† e^{−iΩ_j x_i})`
//! is applied matrix-free. Segments with couplings are propagated by a
//! Chebyshev expansion of `e^{−iHτ}` (Bessel coefficients, spectrum bounded by
//! Gershgorin discs); free segments are diagonal and exact. Covariances come
//! from ladder-operator moments, negativity from the partially transposed
//! reduced density matrix of a mode pair.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scenarios::SwitchingSchedule;
use crate::symplectic::SystemLayout;

/// Largest number of amplitudes the oracle will allocate.
pub const MAX_AMPLITUDES: usize = 1 << 20;
/// Largest reduced density matrix (pair dimension) diagonalised.
pub const MAX_PAIR_DIM: usize = 2048;
/// Allowed `|‖ψ‖² − 1|` after one segment.
pub const NORM_TOLERANCE: f64 = 1e-9;
/// Allowed population in the top level of any mode.
pub const BOUNDARY_TOLERANCE: f64 = 1e-6;

const CHEBYSHEV_CUTOFF: f64 = 1e-18;

#[derive(Debug, Clone, PartialEq)]
pub struct FockBasis {
    cutoffs: Vec<usize>,
    strides: Vec<usize>,
    dim: usize,
}

impl FockBasis {
    pub fn new(cutoffs: &[usize]) -> Result<Self> {
        if cutoffs.is_empty() {
            return Err(Error::Cutoff("need at least one mode".into()));
        }
        if let Some(c) = cutoffs.iter().find(|&&c| c < 2) {
            return Err(Error::Cutoff(format!("cutoff must be at least 2, got {c}")));
        }
        let dim = cutoffs
            .iter()
            .try_fold(1usize, |acc, &c| acc.checked_mul(c))
            .filter(|&d| d <= MAX_AMPLITUDES)
            .ok_or_else(|| {
                Error::Cutoff(format!(
                    "basis {cutoffs:?} exceeds {MAX_AMPLITUDES} amplitudes"
                ))
            })?;
        let mut strides = vec![1; cutoffs.len()];
        for k in (0..cutoffs.len() - 1).rev() {
            strides[k] = strides[k + 1] * cutoffs[k + 1];
        }
        Ok(FockBasis {
            cutoffs: cutoffs.to_vec(),
            strides,
            dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_modes(&self) -> usize {
        self.cutoffs.len()
    }

    pub fn cutoffs(&self) -> &[usize] {
        &self.cutoffs
    }

    pub fn index(&self, occupations: &[usize]) -> usize {
        occupations
            .iter()
            .zip(&self.strides)
            .map(|(n, s)| n * s)
            .sum()
    }

    pub fn occupation(&self, index: usize, mode: usize) -> usize {
        (index / self.strides[mode]) % self.cutoffs[mode]
    }

    /// Occupations of every basis state, mode-major.
    fn occupation_table(&self) -> Vec<Vec<u16>> {
        (0..self.n_modes())
            .map(|k| (0..self.dim).map(|x| self.occupation(x, k) as u16).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    basis: FockBasis,
    amplitudes: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FockInitial {
    Vacuum,
    /// Two-mode squeezed vacuum on `modes`, other modes empty.
    Tmsv { r: f64, modes: (usize, usize) },
}

impl FockState {
    pub fn vacuum(basis: FockBasis) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); basis.dim()];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        FockState { basis, amplitudes }
    }

    /// `Σ tanhⁿ r / cosh r |n, n⟩`, cut at the smaller cutoff and renormalised.
    pub fn tmsv(basis: FockBasis, r: f64, modes: (usize, usize)) -> Result<Self> {
        let (a, b) = modes;
        if a == b || a >= basis.n_modes() || b >= basis.n_modes() {
            return Err(Error::InvalidInput(format!(
                "invalid squeezed mode pair {modes:?}"
            )));
        }
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidInput(format!("squeezing must be non-negative, got {r}")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); basis.dim()];
        let top = basis.cutoffs[a].min(basis.cutoffs[b]);
        let mut occ = vec![0; basis.n_modes()];
        let th = r.tanh();
        for n in 0..top {
            occ[a] = n;
            occ[b] = n;
            amplitudes[basis.index(&occ)] = Complex64::new(th.powi(n as i32) / r.cosh(), 0.0);
        }
        let mut state = FockState { basis, amplitudes };
        let norm = state.norm_sqr().sqrt();
        state.amplitudes.iter_mut().for_each(|z| *z /= norm);
        Ok(state)
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Largest population found in the top level of any single mode.
    pub fn boundary_population(&self) -> f64 {
        (0..self.basis.n_modes())
            .map(|k| {
                let top = self.basis.cutoffs[k] - 1;
                self.amplitudes
                    .iter()
                    .enumerate()
                    .filter(|(x, _)| self.basis.occupation(*x, k) == top)
                    .map(|(_, z)| z.norm_sqr())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

// ─── Hamiltonian ───────────────────────────────────────────────────────────

struct Coupling {
    detector: usize,
    field: usize,
    /// `λ e^{iΩx}`
    coeff: Complex64,
}

struct FockHamiltonian<'a> {
    basis: &'a FockBasis,
    occ: &'a [Vec<u16>],
    diagonal: Vec<f64>,
    couplings: Vec<Coupling>,
    sqrt: Vec<f64>,
}

impl<'a> FockHamiltonian<'a> {
    fn new(
        layout: &SystemLayout,
        active: &[usize],
        basis: &'a FockBasis,
        occ: &'a [Vec<u16>],
    ) -> Self {
        let freqs = layout.mode_freqs();
        let diagonal = (0..basis.dim())
            .map(|x| {
                freqs
                    .iter()
                    .enumerate()
                    .map(|(k, w)| w * (occ[k][x] as f64 + 0.5))
                    .sum()
            })
            .collect();
        let mut couplings = Vec::new();
        for &i in active {
            for (j, &big_omega) in layout.field_freqs().iter().enumerate() {
                let lambda = layout.coupling(i, j);
                if lambda != 0.0 {
                    let phase = big_omega * layout.detector_positions()[i];
                    couplings.push(Coupling {
                        detector: i,
                        field: layout.field_mode(j),
                        coeff: Complex64::from_polar(lambda, phase),
                    });
                }
            }
        }
        let top = basis.cutoffs().iter().copied().max().unwrap_or(1);
        FockHamiltonian {
            basis,
            occ,
            diagonal,
            couplings,
            sqrt: (0..=top).map(|n| (n as f64).sqrt()).collect(),
        }
    }

    fn is_diagonal(&self) -> bool {
        self.couplings.is_empty()
    }

    /// Bounds on the spectrum from Gershgorin discs.
    fn spectral_bounds(&self) -> (f64, f64) {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for x in 0..self.basis.dim() {
            let radius: f64 = self
                .couplings
                .iter()
                .map(|c| {
                    let nd = self.occ[c.detector][x] as usize;
                    let nf = self.occ[c.field][x] as usize;
                    c.coeff.norm()
                        * (self.sqrt[nd] + self.sqrt[nd + 1])
                        * (self.sqrt[nf] + self.sqrt[nf + 1])
                })
                .sum();
            lo = lo.min(self.diagonal[x] - radius);
            hi = hi.max(self.diagonal[x] + radius);
        }
        (lo, hi)
    }

    /// `out = (H v − shift v) / scale`.
    fn apply(&self, v: &[Complex64], out: &mut [Complex64], shift: f64, scale: f64) {
        let b = self.basis;
        for x in 0..b.dim() {
            let mut acc = v[x] * (self.diagonal[x] - shift);
            for c in &self.couplings {
                let (sd, sf) = (b.strides[c.detector], b.strides[c.field]);
                let (cd, cf) = (b.cutoffs[c.detector], b.cutoffs[c.field]);
                let nd = self.occ[c.detector][x] as usize;
                let nf = self.occ[c.field][x] as usize;
                let conj = c.coeff.conj();
                if nd + 1 < cd {
                    let up_d = self.sqrt[nd + 1];
                    // d f
                    if nf + 1 < cf {
                        acc += c.coeff * (up_d * self.sqrt[nf + 1]) * v[x + sd + sf];
                    }
                    // d f†
                    if nf > 0 {
                        acc += conj * (up_d * self.sqrt[nf]) * v[x + sd - sf];
                    }
                }
                if nd > 0 {
                    let down_d = self.sqrt[nd];
                    // d† f
                    if nf + 1 < cf {
                        acc += c.coeff * (down_d * self.sqrt[nf + 1]) * v[x - sd + sf];
                    }
                    // d† f†
                    if nf > 0 {
                        acc += conj * (down_d * self.sqrt[nf]) * v[x - sd - sf];
                    }
                }
            }
            out[x] = acc / scale;
        }
    }
}

/// `J_k(z)` for `k = 0..` until the terms fall below [`CHEBYSHEV_CUTOFF`],
/// by Miller's backward recurrence normalised with `J₀ + 2ΣJ₂ₖ = 1`.
fn bessel_j_sequence(z: f64) -> Vec<f64> {
    if z == 0.0 {
        return vec![1.0];
    }
    let start = (z + 30.0 + 10.0 * z.sqrt()).ceil() as usize + 20;
    let mut f = vec![0.0; start + 2];
    f[start] = 1e-300;
    for k in (1..=start).rev() {
        f[k - 1] = 2.0 * k as f64 / z * f[k] - f[k + 1];
        if f[k - 1].abs() > 1e250 {
            f.iter_mut().for_each(|v| *v *= 1e-250);
        }
    }
    let norm = f[0] + 2.0 * f.iter().skip(2).step_by(2).sum::<f64>();
    f.iter_mut().for_each(|v| *v /= norm);
    let last = (0..f.len())
        .rev()
        .find(|&k| f[k].abs() > CHEBYSHEV_CUTOFF)
        .unwrap_or(0);
    f.truncate(last + 1);
    f
}

fn propagate(h: &FockHamiltonian<'_>, psi: &mut Vec<Complex64>, tau: f64) {
    if tau == 0.0 {
        return;
    }
    if h.is_diagonal() {
        for (z, e) in psi.iter_mut().zip(&h.diagonal) {
            *z *= Complex64::from_polar(1.0, -e * tau);
        }
        return;
    }
    let (lo, hi) = h.spectral_bounds();
    let center = 0.5 * (hi + lo);
    let half = (0.5 * (hi - lo)).max(1e-12);
    let bessel = bessel_j_sequence(half * tau);

    let n = psi.len();
    let mut prev = psi.clone();
    let mut cur = vec![Complex64::new(0.0, 0.0); n];
    let mut next = vec![Complex64::new(0.0, 0.0); n];
    let mut acc: Vec<Complex64> = prev.iter().map(|z| z * bessel[0]).collect();
    if bessel.len() > 1 {
        h.apply(&prev, &mut cur, center, half);
        let c1 = Complex64::new(0.0, -2.0 * bessel[1]);
        acc.iter_mut().zip(&cur).for_each(|(a, t)| *a += c1 * t);
    }
    let mut phase = Complex64::new(0.0, -1.0);
    for (k, jk) in bessel.iter().enumerate().skip(2) {
        h.apply(&cur, &mut next, center, half);
        next.iter_mut().zip(&prev).for_each(|(nx, p)| *nx = 2.0 * *nx - p);
        phase *= Complex64::new(0.0, -1.0);
        let ck = phase * (2.0 * jk);
        acc.iter_mut().zip(&next).for_each(|(a, t)| *a += ck * t);
        debug_assert!(k < bessel.len());
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
    }
    let global = Complex64::from_polar(1.0, -center * tau);
    psi.iter_mut().zip(acc).for_each(|(z, a)| *z = a * global);
}

/// Evolves a truncated Fock state through `schedule`.
pub fn oracle_evolve(
    layout: &SystemLayout,
    schedule: &SwitchingSchedule,
    cutoffs: &[usize],
    initial: FockInitial,
) -> Result<FockState> {
    if cutoffs.len() != layout.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: layout.n_modes(),
            found: cutoffs.len(),
        });
    }
    let basis = FockBasis::new(cutoffs)?;
    let occ = basis.occupation_table();
    let mut state = match initial {
        FockInitial::Vacuum => FockState::vacuum(basis.clone()),
        FockInitial::Tmsv { r, modes } => FockState::tmsv(basis.clone(), r, modes)?,
    };
    for s in schedule.segments() {
        if let Some(&bad) = s.active.iter().find(|&&i| i >= layout.n_detectors()) {
            return Err(Error::InvalidInput(format!("detector index {bad} out of range")));
        }
        let h = FockHamiltonian::new(layout, &s.active, &basis, &occ);
        let before = state.norm_sqr();
        propagate(&h, &mut state.amplitudes, s.duration);
        let drift = (state.norm_sqr() - before).abs();
        if drift > NORM_TOLERANCE {
            return Err(Error::Numerical(format!(
                "norm drift {drift:e} in a segment of length {}",
                s.duration
            )));
        }
    }
    let boundary = state.boundary_population();
    if boundary > BOUNDARY_TOLERANCE {
        return Err(Error::Cutoff(format!(
            "top-level population {boundary:e} with cutoffs {cutoffs:?}"
        )));
    }
    Ok(state)
}

// ─── observables ───────────────────────────────────────────────────────────

/// `(a v)(x) = √(n_k(x)+1) v(x + e_k)` inside the truncated space.
fn lower(basis: &FockBasis, mode: usize, v: &[Complex64]) -> Vec<Complex64> {
    let s = basis.strides[mode];
    let c = basis.cutoffs[mode];
    (0..basis.dim())
        .map(|x| {
            let n = basis.occupation(x, mode);
            if n + 1 < c {
                v[x + s] * ((n + 1) as f64).sqrt()
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect()
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Quadrature covariance, with `σ_ij = ⟨X_iX_j + X_jX_i⟩ − 2⟨X_i⟩⟨X_j⟩`.
///
/// Moments `⟨a_k⟩`, `⟨a_k a_l⟩`, `⟨a_k† a_l⟩` are taken in the truncated
/// space; `a a† = a† a + 1` is used as in the untruncated algebra.
pub fn oracle_covariance(state: &FockState) -> Result<Mat<f64>> {
    let basis = &state.basis;
    let n = basis.n_modes();
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidInput(format!("state not normalised: ‖ψ‖² = {norm}")));
    }
    let psi = &state.amplitudes;
    let lowered: Vec<Vec<Complex64>> = (0..n).map(|k| lower(basis, k, psi)).collect();
    let first: Vec<Complex64> = lowered.iter().map(|al| inner(psi, al) / norm).collect();
    let mut pair = vec![vec![Complex64::new(0.0, 0.0); n]; n]; // ⟨a_k a_l⟩
    let mut number = vec![vec![Complex64::new(0.0, 0.0); n]; n]; // ⟨a_k† a_l⟩
    for k in 0..n {
        for l in 0..n {
            number[k][l] = inner(&lowered[k], &lowered[l]) / norm;
            if l >= k {
                pair[k][l] = inner(psi, &lower(basis, k, &lowered[l])) / norm;
                pair[l][k] = pair[k][l];
            }
        }
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let alpha = |i: usize| {
        if i % 2 == 0 {
            Complex64::new(s, 0.0)
        } else {
            Complex64::new(0.0, -s)
        }
    };
    let dim = 2 * n;
    let mean: Vec<f64> = (0..dim).map(|i| 2.0 * (alpha(i) * first[i / 2]).re).collect();
    Ok(Mat::from_fn(dim, dim, |i, j| {
        let (k, l) = (i / 2, j / 2);
        let (ai, aj) = (alpha(i), alpha(j));
        let delta = if k == l { 1.0 } else { 0.0 };
        let xx = ai * aj * pair[k][l]
            + ai * aj.conj() * (number[l][k] + delta)
            + ai.conj() * aj * number[k][l]
            + ai.conj() * aj.conj() * pair[k][l].conj();
        2.0 * xx.re - 2.0 * mean[i] * mean[j]
    }))
}

/// Reduced density matrix of modes `(a, b)`, indexed by `n_a · c_b + n_b`.
pub fn reduced_pair(state: &FockState, modes: (usize, usize)) -> Result<DMatrix<Complex64>> {
    let basis = &state.basis;
    let (a, b) = modes;
    if a == b || a >= basis.n_modes() || b >= basis.n_modes() {
        return Err(Error::InvalidInput(format!("invalid mode pair {modes:?}")));
    }
    let (ca, cb) = (basis.cutoffs[a], basis.cutoffs[b]);
    let pair_dim = ca * cb;
    if pair_dim > MAX_PAIR_DIM {
        return Err(Error::Cutoff(format!(
            "pair dimension {pair_dim} exceeds {MAX_PAIR_DIM}"
        )));
    }
    let rest = basis.dim() / pair_dim;
    // Ψ[(n_a, n_b), rest], rest enumerated in basis order of the other modes
    let mut psi = DMatrix::<Complex64>::zeros(pair_dim, rest);
    let mut counters = vec![0usize; pair_dim];
    for (x, z) in state.amplitudes.iter().enumerate() {
        let p = basis.occupation(x, a) * cb + basis.occupation(x, b);
        psi[(p, counters[p])] = *z;
        counters[p] += 1;
    }
    let norm = state.norm_sqr();
    Ok(&psi * psi.adjoint() / Complex64::new(norm, 0.0))
}

/// `Σ |negative eigenvalues|` of the reduced pair density matrix transposed
/// on the second mode.
pub fn oracle_negativity(state: &FockState, modes: (usize, usize)) -> Result<f64> {
    let rho = reduced_pair(state, modes)?;
    let cb = state.basis.cutoffs[modes.1];
    let dim = rho.nrows();
    let pt = DMatrix::from_fn(dim, dim, |i, j| {
        let (ia, ib) = (i / cb, i % cb);
        let (ja, jb) = (j / cb, j % cb);
        rho[(ia * cb + jb, ja * cb + ib)]
    });
    Ok(pt
        .symmetric_eigenvalues()
        .iter()
        .filter(|&&v| v < 0.0)
        .map(|v| -v)
        .sum())
}

// ─── certified runs ────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedResult {
    /// Covariance at the doubled cutoff.
    pub covariance: Mat<f64>,
    /// Negativity of the certified pair at the doubled cutoff.
    pub negativity: f64,
    pub cutoff: usize,
    /// Largest covariance change on doubling the cutoff.
    pub covariance_change: f64,
    pub negativity_change: f64,
}

/// Runs at `base_cutoff` and `2·base_cutoff` and accepts the larger run only
/// if doubling moved the covariance by at most `cov_tolerance` and the
/// negativity of `pair` by at most `neg_tolerance`.
pub fn certified_run(
    layout: &SystemLayout,
    schedule: &SwitchingSchedule,
    initial: FockInitial,
    pair: (usize, usize),
    base_cutoff: usize,
    cov_tolerance: f64,
    neg_tolerance: f64,
) -> Result<CertifiedResult> {
    let run = |cutoff: usize| -> Result<(Mat<f64>, f64)> {
        let state = oracle_evolve(layout, schedule, &vec![cutoff; layout.n_modes()], initial)?;
        Ok((oracle_covariance(&state)?, oracle_negativity(&state, pair)?))
    };
    let (cov_small, neg_small) = run(base_cutoff)?;
    let cutoff = 2 * base_cutoff;
    let (covariance, negativity) = run(cutoff)?;
    let covariance_change = covariance.sub(&cov_small).max_abs();
    let negativity_change = (negativity - neg_small).abs();
    if covariance_change > cov_tolerance || negativity_change > neg_tolerance {
        return Err(Error::Cutoff(format!(
            "doubling the cutoff to {cutoff} moved covariance by {covariance_change:e} \
             and negativity by {negativity_change:e}"
        )));
    }
    Ok(CertifiedResult {
        covariance,
        negativity,
        cutoff,
        covariance_change,
        negativity_change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::Segment;
    use approx::assert_abs_diff_eq;

    fn one_segment(active: &[usize], duration: f64) -> SwitchingSchedule {
        SwitchingSchedule::new(vec![Segment {
            active: active.to_vec(),
            duration,
        }])
        .unwrap()
    }

    fn pair_layout(lambda: f64, x: f64) -> SystemLayout {
        SystemLayout::new(vec![1.3], vec![1.1], vec![x], vec![vec![lambda]]).unwrap()
    }

    #[test]
    fn bessel_values() {
        let j = bessel_j_sequence(1.0);
        assert_abs_diff_eq!(j[0], 0.7651976865579666, epsilon = 1e-15);
        assert_abs_diff_eq!(j[1], 0.4400505857449335, epsilon = 1e-15);
        assert_abs_diff_eq!(j[5], 2.497577302112344e-4, epsilon = 1e-17);
        let j = bessel_j_sequence(200.0);
        assert_abs_diff_eq!(j[0], -0.015437439930565088, epsilon = 1e-13);
        assert!(j.len() > 200 && j.len() < 300);
    }

    #[test]
    fn basis_indexing() {
        let b = FockBasis::new(&[3, 4, 2]).unwrap();
        assert_eq!(b.dim(), 24);
        let x = b.index(&[2, 1, 1]);
        assert_eq!((b.occupation(x, 0), b.occupation(x, 1), b.occupation(x, 2)), (2, 1, 1));
        assert!(FockBasis::new(&[1, 4]).is_err());
        assert!(matches!(FockBasis::new(&[64; 4]), Err(Error::Cutoff(_))));
    }

    #[test]
    fn uncoupled_vacuum_stays_put() {
        let s = oracle_evolve(&pair_layout(0.0, 0.0), &one_segment(&[0], 2.7), &[6, 6], FockInitial::Vacuum)
            .unwrap();
        assert_abs_diff_eq!(s.amplitudes()[0].norm(), 1.0, epsilon = 1e-14);
        assert!(oracle_covariance(&s).unwrap().sub(&Mat::identity(4)).max_abs() < 1e-13);
    }

    #[test]
    fn zero_duration_is_identity() {
        let st = oracle_evolve(&pair_layout(0.4, 0.2), &one_segment(&[0], 0.0), &[5, 5], FockInitial::Vacuum)
            .unwrap();
        assert_eq!(st, FockState::vacuum(FockBasis::new(&[5, 5]).unwrap()));
    }

    #[test]
    fn single_photon_covariance() {
        let basis = FockBasis::new(&[4]).unwrap();
        let mut st = FockState::vacuum(basis);
        st.amplitudes = vec![0.0, 1.0, 0.0, 0.0].into_iter().map(|v| Complex64::new(v, 0.0)).collect();
        let c = oracle_covariance(&st).unwrap();
        assert!(c.sub(&Mat::identity(2).scale(&3.0)).max_abs() < 1e-14);
    }

    #[test]
    fn truncated_tmsv_covariance() {
        let r: f64 = 0.5;
        let st = FockState::tmsv(FockBasis::new(&[40, 40]).unwrap(), r, (0, 1)).unwrap();
        let c = oracle_covariance(&st).unwrap();
        let (ch, sh) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        let want = Mat::from_rows(&[
            vec![ch, 0.0, sh, 0.0],
            vec![0.0, ch, 0.0, -sh],
            vec![sh, 0.0, ch, 0.0],
            vec![0.0, -sh, 0.0, ch],
        ]);
        assert!(c.sub(&want).max_abs() < 1e-6);
    }

    #[test]
    fn truncated_tmsv_negativity() {
        let st = FockState::tmsv(FockBasis::new(&[30, 30]).unwrap(), 0.3, (0, 1)).unwrap();
        let n = oracle_negativity(&st, (0, 1)).unwrap();
        assert_abs_diff_eq!(n, (0.6f64.exp() - 1.0) / 2.0, epsilon = 1e-4);
        assert_abs_diff_eq!(n, 0.411059, epsilon = 1e-4);
        let vac = FockState::vacuum(FockBasis::new(&[5, 5, 3]).unwrap());
        assert_eq!(oracle_negativity(&vac, (0, 1)).unwrap(), 0.0);
    }

    /// Chebyshev propagation against a dense Hermitian eigendecomposition.
    #[test]
    fn chebyshev_matches_dense_eigendecomposition() {
        let layout = pair_layout(0.45, 0.3);
        let basis = FockBasis::new(&[5, 6]).unwrap();
        let occ = basis.occupation_table();
        let h = FockHamiltonian::new(&layout, &[0], &basis, &occ);
        let dim = basis.dim();
        let mut dense = DMatrix::<Complex64>::zeros(dim, dim);
        let mut col = vec![Complex64::new(0.0, 0.0); dim];
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        for j in 0..dim {
            e.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            e[j] = Complex64::new(1.0, 0.0);
            h.apply(&e, &mut col, 0.0, 1.0);
            for i in 0..dim {
                dense[(i, j)] = col[i];
            }
        }
        assert!((&dense - dense.adjoint()).norm() < 1e-13);

        let tau = 2.3;
        let eig = dense.clone().symmetric_eigen();
        let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -l * tau)));
        let u = &eig.eigenvectors * phases * eig.eigenvectors.adjoint();

        let mut psi: Vec<Complex64> = (0..dim)
            .map(|k| Complex64::new((k as f64 * 0.7).sin(), (k as f64 * 0.3).cos()))
            .collect();
        let norm = psi.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        psi.iter_mut().for_each(|z| *z /= norm);
        let want = &u * nalgebra::DVector::from_vec(psi.clone());
        propagate(&h, &mut psi, tau);
        let err = psi.iter().zip(want.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-12, "err = {err}");
    }

    #[test]
    fn cutoff_too_small_is_reported() {
        let layout = pair_layout(2.0, 0.0);
        let r = oracle_evolve(&layout, &one_segment(&[0], 3.0), &[3, 3], FockInitial::Vacuum);
        assert!(matches!(r, Err(Error::Cutoff(_))));
    }
}
