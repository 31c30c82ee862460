//! Eigenvalues of small real non-symmetric matrices.
//!
//! Householder reduction to upper Hessenberg form followed by the Francis
//! double-shift QR iteration, after the EISPACK routines `orthes` and `hqr`.
//! Only eigenvalues are produced. Written over [`Real`] so that spectra of
//! strongly amplified covariances can be taken in extended precision.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Real;

/// Complex eigenvalue as `(re, im)`. Conjugate pairs come out adjacent.
pub type Eigenvalue<T> = (T, T);

pub fn eigenvalues<T: Real>(a: &Mat<T>) -> Result<Vec<Eigenvalue<T>>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = a.clone();
    hessenberg(&mut h);
    hqr(h)
}

fn hessenberg<T: Real>(h: &mut Mat<T>) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    let high = n - 1;
    let mut ort = vec![T::zero(); n];
    for m in 1..high {
        let mut scale = T::zero();
        for i in m..=high {
            scale = scale + h[(i, m - 1)].abs();
        }
        if scale.is_zero() {
            continue;
        }
        let mut hh = T::zero();
        for i in (m..=high).rev() {
            ort[i] = h[(i, m - 1)].clone() / &scale;
            hh = hh + ort[i].clone() * &ort[i];
        }
        let mut g = hh.sqrt();
        if ort[m] > T::zero() {
            g = -g;
        }
        hh = hh - ort[m].clone() * &g;
        ort[m] = ort[m].clone() - &g;

        for j in m..n {
            let mut f = T::zero();
            for i in (m..=high).rev() {
                f = f + ort[i].clone() * &h[(i, j)];
            }
            f = f / &hh;
            for i in m..=high {
                h[(i, j)] = h[(i, j)].clone() - f.clone() * &ort[i];
            }
        }
        for i in 0..=high {
            let mut f = T::zero();
            for j in (m..=high).rev() {
                f = f + ort[j].clone() * &h[(i, j)];
            }
            f = f / &hh;
            for j in m..=high {
                h[(i, j)] = h[(i, j)].clone() - f.clone() * &ort[j];
            }
        }
        ort[m] = scale.clone() * &ort[m];
        h[(m, m - 1)] = scale * g;
    }
}

fn hqr<T: Real>(mut h: Mat<T>) -> Result<Vec<Eigenvalue<T>>> {
    let nn = h.rows() as isize;
    let at = |i: isize, j: isize| (i as usize, j as usize);
    let c = T::from_f64;
    let eps = c(2.0 * T::epsilon());
    let low: isize = 0;
    let mut n = nn - 1;
    let mut exshift = T::zero();
    let (mut p, mut q, mut r) = (T::zero(), T::zero(), T::zero());
    let (mut s, mut z);
    let (mut w, mut x, mut y);
    let mut re = vec![T::zero(); nn as usize];
    let mut im = vec![T::zero(); nn as usize];

    let mut norm = T::zero();
    for i in 0..nn {
        for j in (i - 1).max(0)..nn {
            norm = norm + h[at(i, j)].abs();
        }
    }

    let mut iter = 0usize;
    let mut total = 0usize;
    let max_total = 60 * nn as usize;
    while n >= low {
        let mut l = n;
        while l > low {
            s = h[at(l - 1, l - 1)].abs() + h[at(l, l)].abs();
            if s.is_zero() {
                s = norm.clone();
            }
            if h[at(l, l - 1)].abs() < eps.clone() * &s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // one root
            h[at(n, n)] = h[at(n, n)].clone() + &exshift;
            re[n as usize] = h[at(n, n)].clone();
            im[n as usize] = T::zero();
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // two roots
            w = h[at(n, n - 1)].clone() * &h[at(n - 1, n)];
            p = (h[at(n - 1, n - 1)].clone() - &h[at(n, n)]) / c(2.0);
            q = p.clone() * &p + &w;
            z = q.abs().sqrt();
            h[at(n, n)] = h[at(n, n)].clone() + &exshift;
            h[at(n - 1, n - 1)] = h[at(n - 1, n - 1)].clone() + &exshift;
            x = h[at(n, n)].clone();
            if q >= T::zero() {
                z = if p >= T::zero() {
                    p.clone() + &z
                } else {
                    p.clone() - &z
                };
                re[(n - 1) as usize] = x.clone() + &z;
                re[n as usize] = re[(n - 1) as usize].clone();
                if !z.is_zero() {
                    re[n as usize] = x.clone() - w.clone() / &z;
                }
                im[(n - 1) as usize] = T::zero();
                im[n as usize] = T::zero();
                x = h[at(n, n - 1)].clone();
                s = x.abs() + z.abs();
                p = x.clone() / &s;
                q = z.clone() / &s;
                r = (p.clone() * &p + q.clone() * &q).sqrt();
                p = p / &r;
                q = q / &r;
                for j in (n - 1)..nn {
                    z = h[at(n - 1, j)].clone();
                    h[at(n - 1, j)] = q.clone() * &z + p.clone() * &h[at(n, j)];
                    h[at(n, j)] = q.clone() * &h[at(n, j)] - p.clone() * &z;
                }
                for i in 0..=n {
                    z = h[at(i, n - 1)].clone();
                    h[at(i, n - 1)] = q.clone() * &z + p.clone() * &h[at(i, n)];
                    h[at(i, n)] = q.clone() * &h[at(i, n)] - p.clone() * &z;
                }
            } else {
                re[(n - 1) as usize] = x.clone() + &p;
                re[n as usize] = x + &p;
                im[(n - 1) as usize] = z.clone();
                im[n as usize] = -z.clone();
            }
            n -= 2;
            iter = 0;
        } else {
            total += 1;
            if total > max_total {
                return Err(Error::Numerical("QR iteration did not converge".into()));
            }
            x = h[at(n, n)].clone();
            y = T::zero();
            w = T::zero();
            if l < n {
                y = h[at(n - 1, n - 1)].clone();
                w = h[at(n, n - 1)].clone() * &h[at(n - 1, n)];
            }
            // exceptional shifts
            if iter == 10 {
                exshift = exshift + &x;
                for i in low..=n {
                    h[at(i, i)] = h[at(i, i)].clone() - &x;
                }
                s = h[at(n, n - 1)].abs() + h[at(n - 1, n - 2)].abs();
                x = c(0.75) * &s;
                y = x.clone();
                w = c(-0.4375) * &s * &s;
            }
            if iter == 30 {
                s = (y.clone() - &x) / c(2.0);
                s = s.clone() * &s + &w;
                if s > T::zero() {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x.clone() - w.clone() / ((y.clone() - &x) / c(2.0) + &s);
                    for i in low..=n {
                        h[at(i, i)] = h[at(i, i)].clone() - &s;
                    }
                    exshift = exshift + &s;
                    x = c(0.964);
                    y = x.clone();
                    w = x.clone();
                }
            }
            iter += 1;

            let mut m = n - 2;
            while m >= l {
                z = h[at(m, m)].clone();
                r = x.clone() - &z;
                s = y.clone() - &z;
                p = (r.clone() * &s - &w) / &h[at(m + 1, m)] + &h[at(m, m + 1)];
                q = h[at(m + 1, m + 1)].clone() - &z - &r - &s;
                r = h[at(m + 2, m + 1)].clone();
                s = p.abs() + q.abs() + r.abs();
                p = p / &s;
                q = q / &s;
                r = r / &s;
                if m == l {
                    break;
                }
                let lhs = h[at(m, m - 1)].abs() * (q.abs() + r.abs());
                let rhs = eps.clone()
                    * (p.abs()
                        * (h[at(m - 1, m - 1)].abs() + z.abs() + h[at(m + 1, m + 1)].abs()));
                if lhs < rhs {
                    break;
                }
                m -= 1;
            }

            for i in (m + 2)..=n {
                h[at(i, i - 2)] = T::zero();
                if i > m + 2 {
                    h[at(i, i - 3)] = T::zero();
                }
            }

            // double QR step on rows l..=n, columns m..=n
            for k in m..n {
                let notlast = k != n - 1;
                if k != m {
                    p = h[at(k, k - 1)].clone();
                    q = h[at(k + 1, k - 1)].clone();
                    r = if notlast {
                        h[at(k + 2, k - 1)].clone()
                    } else {
                        T::zero()
                    };
                    x = p.abs() + q.abs() + r.abs();
                    if x.is_zero() {
                        continue;
                    }
                    p = p / &x;
                    q = q / &x;
                    r = r / &x;
                }
                s = (p.clone() * &p + q.clone() * &q + r.clone() * &r).sqrt();
                if p < T::zero() {
                    s = -s;
                }
                if s.is_zero() {
                    continue;
                }
                if k != m {
                    h[at(k, k - 1)] = -s.clone() * &x;
                } else if l != m {
                    h[at(k, k - 1)] = -h[at(k, k - 1)].clone();
                }
                p = p + &s;
                x = p.clone() / &s;
                y = q.clone() / &s;
                z = r.clone() / &s;
                q = q / &p;
                r = r / &p;

                for j in k..nn {
                    p = h[at(k, j)].clone() + q.clone() * &h[at(k + 1, j)];
                    if notlast {
                        p = p + r.clone() * &h[at(k + 2, j)];
                        h[at(k + 2, j)] = h[at(k + 2, j)].clone() - p.clone() * &z;
                    }
                    h[at(k, j)] = h[at(k, j)].clone() - p.clone() * &x;
                    h[at(k + 1, j)] = h[at(k + 1, j)].clone() - p.clone() * &y;
                }
                for i in 0..=n.min(k + 3) {
                    p = x.clone() * &h[at(i, k)] + y.clone() * &h[at(i, k + 1)];
                    if notlast {
                        p = p + z.clone() * &h[at(i, k + 2)];
                        h[at(i, k + 2)] = h[at(i, k + 2)].clone() - p.clone() * &r;
                    }
                    h[at(i, k)] = h[at(i, k)].clone() - &p;
                    h[at(i, k + 1)] = h[at(i, k + 1)].clone() - p.clone() * &q;
                }
            }
        }
    }
    Ok(re.into_iter().zip(im).collect())
}
