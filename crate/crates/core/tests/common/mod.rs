//! Helpers shared by the integration tests. Everything here is computed
//! independently of the library's own eigen and invariant code.
#![allow(dead_code)]

use nalgebra::{DMatrix, Matrix2};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vacent::Mat;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn embed(n_modes: usize, blocks: &[(usize, usize, f64)]) -> DMatrix<f64> {
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    for &(i, j, v) in blocks {
        m[(i, j)] = v;
    }
    m
}

/// Phase rotation of one mode.
pub fn rotation(theta: f64, mode: usize, n_modes: usize) -> DMatrix<f64> {
    let (c, s) = (theta.cos(), theta.sin());
    let (q, p) = (2 * mode, 2 * mode + 1);
    embed(n_modes, &[(q, q, c), (q, p, s), (p, q, -s), (p, p, c)])
}

fn single_squeeze(r: f64, mode: usize, n_modes: usize) -> DMatrix<f64> {
    let (q, p) = (2 * mode, 2 * mode + 1);
    embed(n_modes, &[(q, q, (-r).exp()), (p, p, r.exp())])
}

fn beam_splitter(theta: f64, a: usize, b: usize, n_modes: usize) -> DMatrix<f64> {
    let (c, s) = (theta.cos(), theta.sin());
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    for k in 0..2 {
        let (i, j) = (2 * a + k, 2 * b + k);
        m[(i, i)] = c;
        m[(i, j)] = s;
        m[(j, i)] = -s;
        m[(j, j)] = c;
    }
    m
}

/// A random two-mode symplectic matrix built from elementary gates.
pub fn random_symplectic(rng: &mut impl Rng) -> DMatrix<f64> {
    let mut s = DMatrix::identity(4, 4);
    for _ in 0..3 {
        s = rotation(rng.gen_range(0.0..6.3), 0, 2) * s;
        s = rotation(rng.gen_range(0.0..6.3), 1, 2) * s;
        s = single_squeeze(rng.gen_range(-0.8..0.8), rng.gen_range(0..2), 2) * s;
        s = beam_splitter(rng.gen_range(0.0..6.3), 0, 1, 2) * s;
    }
    s
}

/// `S diag(ν₁,ν₁,ν₂,ν₂) Sᵀ` with thermal symplectic eigenvalues `νᵢ ≥ 1`.
pub fn random_physical_covariance(rng: &mut impl Rng) -> Mat<f64> {
    let s = random_symplectic(rng);
    let (n1, n2) = (1.0 + rng.gen_range(0.0..2.0), 1.0 + rng.gen_range(0.0..2.0));
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![n1, n1, n2, n2]));
    let sigma = &s * d * s.transpose();
    // symmetrize away rounding
    let sigma = (&sigma + sigma.transpose()) * 0.5;
    Mat::from_fn(4, 4, |i, j| sigma[(i, j)])
}

pub fn to_dmatrix(m: &Mat<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Smallest PT symplectic eigenvalue from nalgebra's general eigensolver.
pub fn nu_tilde_minus_oracle(sigma: &Mat<f64>) -> f64 {
    let mut s = to_dmatrix(sigma);
    for k in 0..4 {
        s[(3, k)] = -s[(3, k)];
        s[(k, 3)] = -s[(k, 3)];
    }
    let j = DMatrix::from_fn(4, 4, |i, k| match (i, k) {
        (0, 1) | (2, 3) => 1.0,
        (1, 0) | (3, 2) => -1.0,
        _ => 0.0,
    });
    (j * s)
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min)
}

/// Simon's separability polynomial `det σ − Δ̃ + 1` (≥ 0 iff separable).
pub fn simon_polynomial(sigma: &Mat<f64>) -> f64 {
    let s = to_dmatrix(sigma);
    let block = |r: usize, c: usize| Matrix2::new(s[(r, c)], s[(r, c + 1)], s[(r + 1, c)], s[(r + 1, c + 1)]);
    let (a, b, c) = (block(0, 0).determinant(), block(2, 2).determinant(), block(0, 2).determinant());
    s.determinant() - (a + b - 2.0 * c) + 1.0
}

/// Two-mode reduced negativity from an explicit covariance via the oracle.
pub fn negativity_oracle(sigma: &Mat<f64>) -> f64 {
    let nu = nu_tilde_minus_oracle(sigma);
    ((1.0 - nu) / (2.0 * nu)).max(0.0)
}

pub fn apply_dense(s: &DMatrix<f64>, sigma: &Mat<f64>) -> Mat<f64> {
    let out = s * to_dmatrix(sigma) * s.transpose();
    Mat::from_fn(out.nrows(), out.ncols(), |i, j| out[(i, j)])
}

/// Negativity of `spec` with detector labels exchanged: detector 0 at the
/// other position and every segment switching the other detector.
pub fn relabeled_negativity(spec: &vacent::scenarios::InertialSpec) -> f64 {
    use vacent::scenarios::{schedule_for, schedule_transform, Segment, SwitchingSchedule};
    use vacent::symplectic::{apply, partial_trace, GaussianState, SystemLayout};
    use vacent::Extended;

    let [x0, x1] = spec.positions();
    let layout = SystemLayout::new(
        vec![spec.omega; 2],
        vec![spec.omega],
        vec![x1, x0],
        vec![vec![spec.lambda]; 2],
    )
    .unwrap();
    let swapped = schedule_for(spec)
        .unwrap()
        .segments()
        .iter()
        .map(|s| Segment {
            active: s.active.iter().map(|&i| 1 - i).collect(),
            duration: s.duration,
        })
        .collect();
    let schedule = SwitchingSchedule::new(swapped).unwrap();
    let (s, _) = schedule_transform::<Extended>(&layout, &schedule).unwrap();
    let state = apply(&s, &GaussianState::vacuum(layout.mode_labels())).unwrap();
    let pair = partial_trace(&state, &[1, 0]).unwrap();
    vacent::entanglement::negativity(pair.covariance()).unwrap().negativity
}
