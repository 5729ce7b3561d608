//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::TAU;

use active_flux::state::{PrimState, GAMMA};

/// Direct 3×3 Simpson sum over `f` on `[x0, x0+dx] × [y0, y0+dy]`.
pub fn simpson_cell(f: impl Fn(f64, f64) -> [f64; 4], x0: f64, y0: f64, dx: f64, dy: f64) -> [f64; 4] {
    let w = [1.0, 4.0, 1.0];
    let mut acc = [0.0; 4];
    for (b, wy) in w.iter().enumerate() {
        for (a, wx) in w.iter().enumerate() {
            let v = f(x0 + 0.5 * a as f64 * dx, y0 + 0.5 * b as f64 * dy);
            for n in 0..4 {
                acc[n] += wx * wy * v[n] / 36.0;
            }
        }
    }
    acc
}

pub fn total_variation(values: &[f64]) -> f64 {
    values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

/// First location where `values` (sampled at `xs`) crosses `level`, by
/// linear interpolation.
pub fn first_crossing(xs: &[f64], values: &[f64], level: f64) -> Option<f64> {
    (1..values.len()).find_map(|k| {
        let (a, b) = (values[k - 1] - level, values[k] - level);
        (a * b <= 0.0 && a != b).then(|| xs[k - 1] + (xs[k] - xs[k - 1]) * a / (a - b))
    })
}

/// Exact solution of the one-dimensional Riemann problem for the ideal gas,
/// sampled density in the self-similar variable `x/t`.
pub struct ExactRiemann {
    pub left: PrimState,
    pub right: PrimState,
    pub p_star: f64,
    pub u_star: f64,
}

fn wave_function(p: f64, rho: f64, pk: f64) -> f64 {
    let c = (GAMMA * pk / rho).sqrt();
    if p > pk {
        let a = 2.0 / ((GAMMA + 1.0) * rho);
        let b = (GAMMA - 1.0) / (GAMMA + 1.0) * pk;
        (p - pk) * (a / (p + b)).sqrt()
    } else {
        2.0 * c / (GAMMA - 1.0) * ((p / pk).powf((GAMMA - 1.0) / (2.0 * GAMMA)) - 1.0)
    }
}

impl ExactRiemann {
    pub fn new(left: PrimState, right: PrimState) -> Self {
        let g = |p: f64| wave_function(p, left.rho, left.p) + wave_function(p, right.rho, right.p) + right.u - left.u;
        let (mut lo, mut hi) = (1e-12, 1e3);
        assert!(g(lo) < 0.0 && g(hi) > 0.0, "no pressure root bracketed");
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let p_star = 0.5 * (lo + hi);
        let u_star = 0.5 * (left.u + right.u)
            + 0.5 * (wave_function(p_star, right.rho, right.p) - wave_function(p_star, left.rho, left.p));
        Self {
            left,
            right,
            p_star,
            u_star,
        }
    }

    /// Speeds `(head, tail)` of the right-facing rarefaction, if the right
    /// wave is one.
    pub fn right_fan(&self) -> Option<(f64, f64)> {
        let r = self.right;
        if self.p_star > r.p {
            return None;
        }
        let c = r.sound_speed();
        let c_star = c * (self.p_star / r.p).powf((GAMMA - 1.0) / (2.0 * GAMMA));
        Some((self.u_star + c_star, r.u + c))
    }

    pub fn density(&self, xi: f64) -> f64 {
        let (l, r) = (self.left, self.right);
        let gm = (GAMMA - 1.0) / (GAMMA + 1.0);
        if xi < self.u_star {
            let c = l.sound_speed();
            let ratio = self.p_star / l.p;
            if ratio > 1.0 {
                let s = l.u - c * ((GAMMA + 1.0) / (2.0 * GAMMA) * ratio + (GAMMA - 1.0) / (2.0 * GAMMA)).sqrt();
                if xi < s {
                    l.rho
                } else {
                    l.rho * (ratio + gm) / (gm * ratio + 1.0)
                }
            } else {
                let c_star = c * ratio.powf((GAMMA - 1.0) / (2.0 * GAMMA));
                if xi < l.u - c {
                    l.rho
                } else if xi > self.u_star - c_star {
                    l.rho * ratio.powf(1.0 / GAMMA)
                } else {
                    l.rho * (2.0 / (GAMMA + 1.0) + gm / c * (l.u - xi)).powf(2.0 / (GAMMA - 1.0))
                }
            }
        } else {
            let c = r.sound_speed();
            let ratio = self.p_star / r.p;
            if ratio > 1.0 {
                let s = r.u + c * ((GAMMA + 1.0) / (2.0 * GAMMA) * ratio + (GAMMA - 1.0) / (2.0 * GAMMA)).sqrt();
                if xi > s {
                    r.rho
                } else {
                    r.rho * (ratio + gm) / (gm * ratio + 1.0)
                }
            } else {
                let c_star = c * ratio.powf((GAMMA - 1.0) / (2.0 * GAMMA));
                if xi > r.u + c {
                    r.rho
                } else if xi < self.u_star + c_star {
                    r.rho * ratio.powf(1.0 / GAMMA)
                } else {
                    r.rho * (2.0 / (GAMMA + 1.0) - gm / c * (r.u - xi)).powf(2.0 / (GAMMA - 1.0))
                }
            }
        }
    }
}

type Mat = [[f64; 4]; 4];

fn matmul(x: &Mat, y: &Mat) -> Mat {
    let mut z = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                z[i][j] += x[i][k] * y[k][j];
            }
        }
    }
    z
}

fn matvec(x: &Mat, v: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| (0..4).map(|k| x[i][k] * v[k]).sum())
}

fn jac_x(w: PrimState) -> Mat {
    [
        [w.u, w.rho, 0.0, 0.0],
        [0.0, w.u, 0.0, 1.0 / w.rho],
        [0.0, 0.0, w.u, 0.0],
        [0.0, GAMMA * w.p, 0.0, w.u],
    ]
}

fn jac_y(w: PrimState) -> Mat {
    [
        [w.v, 0.0, w.rho, 0.0],
        [0.0, w.v, 0.0, 0.0],
        [0.0, 0.0, w.v, 1.0 / w.rho],
        [0.0, 0.0, GAMMA * w.p, w.v],
    ]
}

/// Plane-wave data `mean + a·cos(k·x) + b·sin(k·x)` for the acoustics system
/// linearised about a constant state, with its exact evolution from Taylor
/// series of `cos(Mt)` and `sin(Mt)`, `M = kx·A + ky·B`.
pub struct PlaneWave {
    pub k: (f64, f64),
    pub a: [f64; 4],
    pub b: [f64; 4],
    pub mean: [f64; 4],
}

impl PlaneWave {
    pub fn standard() -> Self {
        Self {
            k: (TAU, 2.0 * TAU),
            a: [0.05, 0.03, -0.02, 0.04],
            b: [-0.02, 0.01, 0.03, 0.05],
            mean: [1.0, 0.0, 0.0, 1.0],
        }
    }

    pub fn initial(&self, x: f64, y: f64) -> PrimState {
        let ph = self.k.0 * x + self.k.1 * y;
        PrimState::from_array(std::array::from_fn(|n| {
            self.mean[n] + self.a[n] * ph.cos() + self.b[n] * ph.sin()
        }))
    }

    pub fn exact(&self, lin: PrimState, x: f64, y: f64, t: f64) -> PrimState {
        let (ax, by) = (jac_x(lin), jac_y(lin));
        let m: Mat = std::array::from_fn(|i| std::array::from_fn(|j| (self.k.0 * ax[i][j] + self.k.1 * by[i][j]) * t));
        let mut cos_m = [[0.0; 4]; 4];
        let mut sin_m = [[0.0; 4]; 4];
        let mut term: Mat = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 }));
        for n in 0..60 {
            let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let target = if n % 2 == 0 { &mut cos_m } else { &mut sin_m };
            for i in 0..4 {
                for j in 0..4 {
                    target[i][j] += sign * term[i][j];
                }
            }
            term = matmul(&term, &m);
            for row in term.iter_mut() {
                for e in row.iter_mut() {
                    *e /= (n + 1) as f64;
                }
            }
        }
        let ca = matvec(&cos_m, &self.a);
        let sa = matvec(&sin_m, &self.a);
        let cb = matvec(&cos_m, &self.b);
        let sb = matvec(&sin_m, &self.b);
        let re: [f64; 4] = std::array::from_fn(|n| ca[n] - sb[n]);
        let im: [f64; 4] = std::array::from_fn(|n| -cb[n] - sa[n]);
        let ph = self.k.0 * x + self.k.1 * y;
        PrimState::from_array(std::array::from_fn(|n| {
            self.mean[n] + re[n] * ph.cos() - im[n] * ph.sin()
        }))
    }
}
