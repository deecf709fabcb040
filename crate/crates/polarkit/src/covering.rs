//! SL(2,C) -> Lorentz covering map and the fixed similarity transforms.

use crate::algebra::{r_alpha, r_beta, QuadParam};
use crate::{Error, Matrix4C, Matrix4R, Result, C64, I, ONE, ZERO};
use std::f64::consts::FRAC_1_SQRT_2;

/// Determinant deviation still accepted (and normalized away) by `covering_map`.
pub const NORMALIZE_WINDOW: f64 = 1e-6;

/// k = (k0, k1, k2, k3), B(k) = k0 + k_j sigma^j.
///
/// Real split: k0 = n0 + i m0, k_j = -i n_j + m_j.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorParams {
    pub k: [C64; 4],
}

impl SpinorParams {
    pub fn new(k: [C64; 4]) -> Self {
        SpinorParams { k }
    }

    pub fn identity() -> Self {
        SpinorParams::new([ONE, ZERO, ZERO, ZERO])
    }

    pub fn from_split(n0: f64, n: [f64; 3], m0: f64, m: [f64; 3]) -> Self {
        SpinorParams::new([
            C64::new(n0, m0),
            C64::new(m[0], -n[0]),
            C64::new(m[1], -n[1]),
            C64::new(m[2], -n[2]),
        ])
    }

    /// (n0, n, m0, m)
    pub fn split(&self) -> (f64, [f64; 3], f64, [f64; 3]) {
        let k = &self.k;
        (
            k[0].re,
            [-k[1].im, -k[2].im, -k[3].im],
            k[0].im,
            [k[1].re, k[2].re, k[3].re],
        )
    }

    pub fn det(&self) -> C64 {
        let k = &self.k;
        k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3]
    }

    pub fn scale(&self, s: C64) -> Self {
        SpinorParams::new(self.k.map(|x| x * s))
    }

    pub fn neg(&self) -> Self {
        self.scale(-ONE)
    }

    /// Divides by sqrt(det) if det is within `NORMALIZE_WINDOW` of 1.
    pub fn normalized(&self) -> Result<Self> {
        let d = self.det();
        if (d - ONE).norm() > NORMALIZE_WINDOW {
            return Err(Error::Normalization { re: d.re, im: d.im });
        }
        Ok(self.scale(ONE / d.sqrt()))
    }

    /// Divides by sqrt(det) whatever its size; fails only on det = 0.
    pub fn unit(&self, tol: f64) -> Result<Self> {
        let d = self.det();
        if d.norm() <= tol {
            return Err(Error::Singular(d.norm()));
        }
        Ok(self.scale(ONE / d.sqrt()))
    }

    /// Spinor-matrix product pulled back to parameters.
    pub fn compose(&self, other: &SpinorParams) -> SpinorParams {
        spinor_matrix(self).mul(&spinor_matrix(other)).params()
    }
}

/// 2x2 complex matrix laid out as (a, d; c, b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorMatrix {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl SpinorMatrix {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        SpinorMatrix { a, b, c, d }
    }

    /// From rows [[m00, m01], [m10, m11]].
    pub fn from_rows(m: [[C64; 2]; 2]) -> Self {
        SpinorMatrix::new(m[0][0], m[1][1], m[1][0], m[0][1])
    }

    pub fn rows(&self) -> [[C64; 2]; 2] {
        [[self.a, self.d], [self.c, self.b]]
    }

    pub fn identity() -> Self {
        SpinorMatrix::new(ONE, ONE, ZERO, ZERO)
    }

    pub fn det(&self) -> C64 {
        self.a * self.b - self.c * self.d
    }

    pub fn mul(&self, o: &SpinorMatrix) -> SpinorMatrix {
        let (x, y) = (self.rows(), o.rows());
        let mut r = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        SpinorMatrix::from_rows(r)
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [self.a * v[0] + self.d * v[1], self.c * v[0] + self.b * v[1]]
    }

    pub fn adjoint(&self) -> SpinorMatrix {
        SpinorMatrix::new(self.a.conj(), self.b.conj(), self.d.conj(), self.c.conj())
    }

    pub fn scale(&self, s: C64) -> SpinorMatrix {
        SpinorMatrix::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn inverse(&self, tol: f64) -> Result<SpinorMatrix> {
        let det = self.det();
        if det.norm() <= tol {
            return Err(Error::Singular(det.norm()));
        }
        Ok(SpinorMatrix::new(self.b, self.a, -self.c, -self.d).scale(ONE / det))
    }

    pub fn max_diff(&self, o: &SpinorMatrix) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Pull back to k: a = k0+k3, b = k0-k3, c = k1+ik2, d = k1-ik2.
    pub fn params(&self) -> SpinorParams {
        SpinorParams::new([
            (self.a + self.b) / 2.0,
            (self.c + self.d) / 2.0,
            (self.c - self.d) / (2.0 * I),
            (self.a - self.b) / 2.0,
        ])
    }
}

pub fn spinor_matrix(k: &SpinorParams) -> SpinorMatrix {
    let [k0, k1, k2, k3] = k.k;
    SpinorMatrix::new(k0 + k3, k0 - k3, k1 + I * k2, k1 - I * k2)
}

/// The matrix A-hat whose product with its own conjugate is L.
pub fn a_hat(k: &SpinorParams) -> Matrix4C {
    let [k0, k1, k2, k3] = k.k;
    Matrix4C::new(
        k0, -k1, -k2, -k3, //
        -k1, k0, -I * k3, I * k2, //
        -k2, I * k3, k0, -I * k1, //
        -k3, -I * k2, I * k1, k0,
    )
}

fn real_part(m: &Matrix4C) -> Result<Matrix4R> {
    let resid = m.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if resid > 1e-10 * m.iter().map(|z| z.norm()).fold(1.0, f64::max) {
        return Err(Error::Internal(format!("imaginary residue {resid:e} in Lorentz matrix")));
    }
    Ok(m.map(|z| z.re))
}

/// L = A-hat(k) * conj(A-hat(k)), after normalizing det B(k) to 1.
pub fn covering_map(k: &SpinorParams) -> Result<Matrix4R> {
    let k = k.normalized()?;
    let a = a_hat(&k);
    real_part(&(a * a.map(|z| z.conj())))
}

/// The same map via L[b][a] = 1/2 tr(tau_b B tau_a B^dagger),
/// tau = (1, -sigma1, -sigma2, -sigma3).
pub fn covering_map_trace(k: &SpinorParams) -> Result<Matrix4R> {
    let k = k.normalized()?;
    let b = spinor_matrix(&k);
    let bd = b.adjoint();
    let tau = taus();
    Ok(Matrix4R::from_fn(|r, c| {
        let t = tau[r].mul(&b).mul(&tau[c]).mul(&bd);
        ((t.a + t.b) / 2.0).re
    }))
}

fn taus() -> [SpinorMatrix; 4] {
    [
        SpinorMatrix::identity(),
        SpinorMatrix::new(ZERO, ZERO, -ONE, -ONE),
        SpinorMatrix::new(ZERO, ZERO, -I, I),
        SpinorMatrix::new(-ONE, ONE, ZERO, ZERO),
    ]
}

/// 1 (+) R for the SU(2) element n0 - i n.sigma.
pub fn su2_rotation(n: [f64; 4], tol: f64) -> Result<Matrix4R> {
    let norm2: f64 = n.iter().map(|x| x * x).sum();
    if (norm2 - 1.0).abs() > tol.max(NORMALIZE_WINDOW) {
        return Err(Error::Normalization { re: norm2, im: 0.0 });
    }
    let s = norm2.sqrt();
    let [n0, n1, n2, n3] = n.map(|x| x / s);
    let q = n0 * n0 - n1 * n1 - n2 * n2 - n3 * n3;
    Ok(Matrix4R::new(
        1.0, 0.0, 0.0, 0.0, //
        0.0, q + 2.0 * n1 * n1, 2.0 * (n1 * n2 - n0 * n3), 2.0 * (n1 * n3 + n0 * n2), //
        0.0, 2.0 * (n2 * n1 + n0 * n3), q + 2.0 * n2 * n2, 2.0 * (n2 * n3 - n0 * n1), //
        0.0, 2.0 * (n3 * n1 - n0 * n2), 2.0 * (n3 * n2 + n0 * n1), q + 2.0 * n3 * n3,
    ))
}

fn unit_axis(e: [f64; 3]) -> Result<[f64; 3]> {
    let len = (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt();
    if !len.is_finite() || len <= 1e-12 {
        return Err(Error::Domain("axis must be a nonzero finite vector".into()));
    }
    Ok(e.map(|x| x / len))
}

/// ch(beta/2) + sh(beta/2) e.sigma. Non-unit axes are normalized.
pub fn boost(beta: f64, e: [f64; 3]) -> Result<SpinorParams> {
    let e = unit_axis(e)?;
    let (c, s) = ((beta / 2.0).cosh(), (beta / 2.0).sinh());
    Ok(SpinorParams::new([
        c.into(),
        (s * e[0]).into(),
        (s * e[1]).into(),
        (s * e[2]).into(),
    ]))
}

/// cos(phi/2) - i sin(phi/2) e.sigma.
pub fn rotation(phi: f64, e: [f64; 3]) -> Result<SpinorParams> {
    let e = unit_axis(e)?;
    let (c, s) = ((phi / 2.0).cos(), (phi / 2.0).sin());
    Ok(SpinorParams::new([
        c.into(),
        C64::new(0.0, -s * e[0]),
        C64::new(0.0, -s * e[1]),
        C64::new(0.0, -s * e[2]),
    ]))
}

/// Pi = diag(1, i, i, i).
pub fn pi_matrix() -> Matrix4C {
    Matrix4C::from_diagonal(&nalgebra::Vector4::new(ONE, I, I, I))
}

/// Pi^-1 R Pi.
pub fn pi_conjugate(r: &Matrix4C) -> Matrix4C {
    let mut out = *r;
    for i in 0..4 {
        for j in 0..4 {
            let f = match (i == 0, j == 0) {
                (true, true) | (false, false) => ONE,
                (true, false) => I,
                (false, true) => -I,
            };
            out[(i, j)] *= f;
        }
    }
    out
}

/// R(A, A-bar*) = R_alpha(A) R_beta(A0*, -A*): the mixed-signature form
/// whose Pi-conjugate is a real Lorentz matrix.
pub fn mixed_form(q: &QuadParam) -> Matrix4C {
    let conj = QuadParam::new(q.a0.conj(), q.a.map(|x| -x.conj()));
    r_alpha(q) * r_beta(&conj)
}

/// A = (k0, i k) is the quad parameter whose mixed form conjugates to L(k).
pub fn quad_from_spinor(k: &SpinorParams) -> QuadParam {
    QuadParam::new(k.k[0], [I * k.k[1], I * k.k[2], I * k.k[3]])
}

const H: f64 = FRAC_1_SQRT_2;

fn scaled(rows: [[C64; 4]; 4]) -> Matrix4C {
    Matrix4C::from_fn(|i, j| rows[i][j] * H)
}

pub fn u_matrix() -> Matrix4C {
    let (o, z) = (ONE, ZERO);
    scaled([[z, -o, I, z], [I, z, z, o], [-o, z, z, -I], [z, -I, o, z]])
}

pub fn u_inverse() -> Matrix4C {
    let (o, z) = (ONE, ZERO);
    scaled([[z, -I, -o, z], [-o, z, z, I], [-I, z, z, o], [z, o, I, z]])
}

pub fn v_matrix() -> Matrix4C {
    let (o, z) = (ONE, ZERO);
    scaled([[z, -o, -I, z], [I, z, z, o], [-o, z, z, -I], [z, -I, -o, z]])
}

pub fn v_inverse() -> Matrix4C {
    let (o, z) = (ONE, ZERO);
    scaled([[z, -I, -o, z], [-o, z, z, I], [I, z, z, -o], [z, o, I, z]])
}
