//! Sparse five-point systems and a DILU-preconditioned BiCGSTAB solver.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;

pub(crate) const NONE: usize = usize::MAX;

/// Neighbour slots; unknowns are numbered row by row so `W` and `S` precede the row.
pub(crate) const W: usize = 0;
pub(crate) const S: usize = 1;
pub(crate) const E: usize = 2;
pub(crate) const N: usize = 3;

/// Row-scaled five-point operator with unit diagonal.
#[derive(Clone, Debug)]
pub(crate) struct StencilMatrix {
    /// `(column, coefficient)` per slot; column is [`NONE`] for an absent neighbour.
    pub nbr: Vec<[(usize, f64); 4]>,
}

impl StencilMatrix {
    pub fn len(&self) -> usize {
        self.nbr.len()
    }

    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, row) in self.nbr.iter().enumerate() {
            let mut acc = x[i];
            for &(j, a) in row {
                if j != NONE {
                    acc += a * x[j];
                }
            }
            y[i] = acc;
        }
    }

    /// `max_i |b_i - (A x)_i|`.
    pub fn residual_inf(&self, x: &[f64], b: &[f64]) -> f64 {
        let mut r = vec![0.0; x.len()];
        self.apply(x, &mut r);
        r.iter().zip(b).map(|(ax, bi)| math::abs(bi - ax)).fold(0.0, f64::max)
    }
}

/// Diagonal ILU for the five-point pattern: `M = (D + L) D⁻¹ (D + U)` with `diag(M) = diag(A)`.
struct Dilu {
    d: Vec<f64>,
}

impl Dilu {
    fn new(a: &StencilMatrix) -> Self {
        let n = a.len();
        let mut d = vec![1.0; n];
        for i in 0..n {
            let mut di = 1.0;
            for (slot, back) in [(W, E), (S, N)] {
                let (j, aij) = a.nbr[i][slot];
                if j != NONE {
                    let (k, aji) = a.nbr[j][back];
                    if k == i {
                        di -= aij * aji / d[j];
                    }
                }
            }
            d[i] = di;
        }
        Self { d }
    }

    fn solve(&self, a: &StencilMatrix, r: &[f64], z: &mut [f64]) {
        let n = r.len();
        for i in 0..n {
            let mut acc = r[i];
            for slot in [W, S] {
                let (j, aij) = a.nbr[i][slot];
                if j != NONE {
                    acc -= aij * z[j];
                }
            }
            z[i] = acc / self.d[i];
        }
        for i in (0..n).rev() {
            let mut acc = 0.0;
            for slot in [E, N] {
                let (k, aik) = a.nbr[i][slot];
                if k != NONE {
                    acc += aik * z[k];
                }
            }
            z[i] -= acc / self.d[i];
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn inf_norm(a: &[f64]) -> f64 {
    a.iter().map(|x| math::abs(*x)).fold(0.0, f64::max)
}

pub(crate) struct SolveStats {
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
}

/// Right-preconditioned BiCGSTAB, restarted on breakdown, stopping on the true
/// infinity-norm residual.
pub(crate) fn bicgstab(a: &StencilMatrix, b: &[f64], x: &mut [f64], tol: f64, max_iter: usize) -> SolveStats {
    let n = a.len();
    if n == 0 {
        return SolveStats { iterations: 0, residual: 0.0, converged: true };
    }
    let m = Dilu::new(a);
    let mut r = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut ph = vec![0.0; n];
    let mut sh = vec![0.0; n];
    let mut t = vec![0.0; n];
    let mut s = vec![0.0; n];
    let mut it = 0;
    let mut residual = a.residual_inf(x, b);
    while it < max_iter && residual > tol {
        // (re)start
        a.apply(x, &mut r);
        for i in 0..n {
            r[i] = b[i] - r[i];
        }
        let r0 = r.clone();
        let (mut rho, mut alpha, mut omega) = (1.0, 1.0, 1.0);
        v.iter_mut().for_each(|e| *e = 0.0);
        p.iter_mut().for_each(|e| *e = 0.0);
        let mut stalled = false;
        while it < max_iter {
            it += 1;
            let rho_new = dot(&r0, &r);
            if rho_new == 0.0 || !rho_new.is_finite() {
                stalled = true;
                break;
            }
            let beta = (rho_new / rho) * (alpha / omega);
            rho = rho_new;
            for i in 0..n {
                p[i] = r[i] + beta * (p[i] - omega * v[i]);
            }
            m.solve(a, &p, &mut ph);
            a.apply(&ph, &mut v);
            let denom = dot(&r0, &v);
            if denom == 0.0 || !denom.is_finite() {
                stalled = true;
                break;
            }
            alpha = rho / denom;
            for i in 0..n {
                s[i] = r[i] - alpha * v[i];
            }
            if inf_norm(&s) <= 0.5 * tol {
                for i in 0..n {
                    x[i] += alpha * ph[i];
                }
                break;
            }
            m.solve(a, &s, &mut sh);
            a.apply(&sh, &mut t);
            let tt = dot(&t, &t);
            omega = if tt > 0.0 { dot(&t, &s) / tt } else { 0.0 };
            for i in 0..n {
                x[i] += alpha * ph[i] + omega * sh[i];
                r[i] = s[i] - omega * t[i];
            }
            if omega == 0.0 {
                stalled = true;
                break;
            }
            if inf_norm(&r) <= 0.5 * tol {
                break;
            }
        }
        let new_residual = a.residual_inf(x, b);
        if stalled && new_residual >= residual {
            residual = new_residual;
            break;
        }
        residual = new_residual;
    }
    SolveStats { iterations: it, residual, converged: residual <= tol }
}
