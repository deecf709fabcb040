//! Jones spinors, the two spinor models, and bi-spinor tensor maps.

use crate::covering::{spinor_matrix, SpinorMatrix, SpinorParams};
use crate::stokes::StokesVector;
use crate::{Error, Matrix4C, Result, C64, I, ZERO};
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesSpinor {
    pub psi: [C64; 2],
}

impl JonesSpinor {
    pub fn new(psi: [C64; 2]) -> Self {
        JonesSpinor { psi }
    }

    /// (N e^{i alpha}, M e^{i beta})
    pub fn from_polar(n: f64, m: f64, alpha: f64, beta: f64) -> Result<Self> {
        if n < 0.0 || m < 0.0 {
            return Err(Error::Domain("amplitudes must be nonnegative".into()));
        }
        Ok(JonesSpinor::new([C64::from_polar(n, alpha), C64::from_polar(m, beta)]))
    }

    pub fn intensity(&self) -> f64 {
        self.psi[0].norm_sqr() + self.psi[1].norm_sqr()
    }

    fn scale(&self, s: f64) -> Self {
        JonesSpinor::new(self.psi.map(|z| z * s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JonesFlag {
    /// S1 = S2 = 0: the relative phase is undefined and set by the caller.
    Axis,
    /// Delta = pi: the half-angle phase sits on the double-cover seam.
    Seam,
}

/// (N^2 + M^2, 2NM cos(beta - alpha), 2NM sin(beta - alpha), N^2 - M^2).
pub fn stokes_from_jones(j: &JonesSpinor) -> StokesVector {
    let [p, q] = j.psi;
    let x = p.conj() * q;
    StokesVector::raw([p.norm_sqr() + q.norm_sqr(), 2.0 * x.re, 2.0 * x.im, p.norm_sqr() - q.norm_sqr()])
}

fn check_isotropic(s: &StokesVector, tol: f64) -> Result<()> {
    if s.s[0] <= tol {
        return Err(Error::Domain("Jones spinor needs positive intensity".into()));
    }
    if !s.is_isotropic(tol.max(1e-12) * 1e2) {
        return Err(Error::Domain("Stokes vector is not isotropic".into()));
    }
    Ok(())
}

/// e^{i gamma/2} (sqrt((S+S3)/2) e^{-i Delta/2}, sqrt((S-S3)/2) e^{i Delta/2}).
///
/// On the S3 axis the limit spinor is returned with `gamma` playing the
/// part of the free phase.
pub fn jones_from_stokes(s: &StokesVector, gamma: f64, tol: f64) -> Result<(JonesSpinor, Option<JonesFlag>)> {
    check_isotropic(s, tol)?;
    let [s0, s1, s2, s3] = s.s;
    if s1.hypot(s2) <= tol * s0 {
        let psi = if s3 > 0.0 {
            [C64::from_polar(s3.sqrt(), -gamma / 2.0), ZERO]
        } else {
            [ZERO, C64::from_polar((-s3).sqrt(), gamma / 2.0)]
        };
        return Ok((JonesSpinor::new(psi), Some(JonesFlag::Axis)));
    }
    let delta = s2.atan2(s1);
    let flag = if delta == PI { Some(JonesFlag::Seam) } else { None };
    let g = C64::from_polar(1.0, gamma / 2.0);
    let up = ((s0 + s3) / 2.0).max(0.0).sqrt();
    let down = ((s0 - s3) / 2.0).max(0.0).sqrt();
    Ok((
        JonesSpinor::new([g * C64::from_polar(up, -delta / 2.0), g * C64::from_polar(down, delta / 2.0)]),
        flag,
    ))
}

/// (B^dagger)^-1: the spinor action under which Stokes vectors transform
/// contravariantly, stokes(J psi) = L stokes(psi).
pub fn jones_action(k: &SpinorParams) -> Result<SpinorMatrix> {
    spinor_matrix(&k.normalized()?).adjoint().inverse(1e-300)
}

/// C psi = -i sigma2 psi* = (-psi2*, psi1*); C^2 = -1.
pub fn charge_conjugate(j: &JonesSpinor) -> JonesSpinor {
    JonesSpinor::new([-j.psi[1].conj(), j.psi[0].conj()])
}

/// psi' = (psi + C psi)/sqrt 2.
pub fn convert_models(j: &JonesSpinor) -> JonesSpinor {
    let c = charge_conjugate(j);
    JonesSpinor::new([(j.psi[0] + c.psi[0]) * FRAC_1_SQRT_2, (j.psi[1] + c.psi[1]) * FRAC_1_SQRT_2])
}

/// psi = (psi' - C psi')/sqrt 2, the inverse of `convert_models`.
pub fn invert_models(j: &JonesSpinor) -> JonesSpinor {
    let c = charge_conjugate(j);
    JonesSpinor::new([(j.psi[0] - c.psi[0]) * FRAC_1_SQRT_2, (j.psi[1] - c.psi[1]) * FRAC_1_SQRT_2])
}

/// Spinor of the second model, normalized to |psi'|^2 = 2 S0.
pub fn alt_spinor_model(s: &StokesVector, tol: f64) -> Result<(JonesSpinor, Option<JonesFlag>)> {
    let (j, flag) = jones_from_stokes(s, 0.0, tol)?;
    Ok((convert_models(&j.scale(SQRT_2)), flag))
}

/// Chart formulas of the second model, rho = sqrt(S1^2 + S2^2):
/// S3 > 0: (sqrt(S-rho) e^{-iD/2}, sqrt(S+rho) e^{iD/2}),
/// S3 < 0: the first component changes sign.
pub fn alt_chart(s: &StokesVector) -> JonesSpinor {
    let [s0, s1, s2, s3] = s.s;
    let rho = s1.hypot(s2);
    let delta = s2.atan2(s1);
    let first = C64::from_polar((s0 - rho).max(0.0).sqrt(), -delta / 2.0);
    let second = C64::from_polar((s0 + rho).max(0.0).sqrt(), delta / 2.0);
    JonesSpinor::new([if s3 < 0.0 { -first } else { first }, second])
}

/// Stokes vector of a second-model spinor, through the model inverse.
pub fn stokes_from_alt(j: &JonesSpinor) -> StokesVector {
    stokes_from_jones(&invert_models(j).scale(FRAC_1_SQRT_2))
}

/// Stokes vector of a second-model spinor from its moduli N', M' and the
/// known half-space: S0 = (N'^2 + M'^2)/2, rho = (M'^2 - N'^2)/2, S3 = +-N'M'.
pub fn stokes_from_alt_moduli(j: &JonesSpinor, upper: bool) -> StokesVector {
    let (n, m) = (j.psi[0].norm(), j.psi[1].norm());
    let rho = (m * m - n * n) / 2.0;
    let s3 = if upper { n * m } else { -n * m };
    let mut rel = j.psi[1] * j.psi[0].conj();
    if !upper {
        rel = -rel;
    }
    let delta = rel.arg();
    StokesVector::raw([(n * n + m * m) / 2.0, rho * delta.cos(), rho * delta.sin(), s3])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesBiSpinor {
    pub xi: [C64; 2],
    pub eta: [C64; 2],
}

impl JonesBiSpinor {
    pub fn new(xi: [C64; 2], eta: [C64; 2]) -> Self {
        JonesBiSpinor { xi, eta }
    }

    /// xi = (N1 e^{i n1}, N2 e^{i n2}), eta = (M1 e^{i m1}, M2 e^{i m2}).
    pub fn from_polar(amp: [f64; 4], ph: [f64; 4]) -> Self {
        JonesBiSpinor::new(
            [C64::from_polar(amp[0], ph[0]), C64::from_polar(amp[1], ph[1])],
            [C64::from_polar(amp[2], ph[2]), C64::from_polar(amp[3], ph[3])],
        )
    }

    /// eta = -i sigma2 xi*, the completely polarized case.
    pub fn polarized(xi: [C64; 2]) -> Self {
        JonesBiSpinor::new(xi, [-xi[1].conj(), xi[0].conj()])
    }

    pub fn column(&self) -> [C64; 4] {
        [self.xi[0], self.xi[1], self.eta[0], self.eta[1]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiSpinorParts {
    pub scalar: C64,
    pub pseudoscalar: C64,
    pub vector: [C64; 4],
    pub pseudovector: [C64; 4],
    /// antisymmetric, upper indices
    pub tensor: [[C64; 4]; 4],
}

/// Scalar, vector and tensor pieces of U = Psi (x) X, from the 2x2 blocks
/// xi = U[0..2][0..2], Delta = U[0..2][2..4], H = U[2..4][0..2], eta = U[2..4][2..4].
pub fn decompose_matrix(u: &Matrix4C) -> BiSpinorParts {
    let x = |a: usize, b: usize| u[(a - 1, b - 1)];
    let e = |a: usize, b: usize| u[(a + 1, b + 1)];
    let h = |a: usize, b: usize| u[(a + 1, b - 1)];
    let d = |a: usize, b: usize| u[(a - 1, b + 1)];
    // H_{a dot}^{b} = U[2+a][b], Delta^{a}_{b dot} = U[a][2+b]; first index is the dotted one for H
    let (h21, h12, h11, h22) = (h(2, 1), h(1, 2), h(1, 1), h(2, 2));
    let (d21, d12, d11, d22) = (d(2, 1), d(1, 2), d(1, 1), d(2, 2));
    let half = C64::from(0.5);
    let vec_with = |hs: f64| {
        let hs = C64::from(hs);
        [
            half * (hs * (h21 - h12) - (d21 - d12)),
            half * (hs * (h11 - h22) + (d11 - d22)),
            half * I * (hs * (h11 + h22) + (d11 + d22)),
            -half * (hs * (h21 + h12) + (d21 + d12)),
        ]
    };
    let q = C64::from(0.25);
    let (xa, xs) = (x(2, 1) - x(1, 2), x(2, 1) + x(1, 2));
    let (ea, es) = (e(1, 2) - e(2, 1), e(2, 1) + e(1, 2));
    let (xd, xt) = (x(1, 1) - x(2, 2), x(1, 1) + x(2, 2));
    let (ed, et) = (e(1, 1) - e(2, 2), e(1, 1) + e(2, 2));
    let t01 = q * I * (xd + ed);
    let t23 = q * (xd - ed);
    let t02 = -q * (xt + et);
    let t31 = -(xt - et) / (4.0 * I);
    let t03 = -q * I * (xs + es);
    let t12 = -q * (xs - es);
    let mut t = [[ZERO; 4]; 4];
    for (i, j, v) in [(0, 1, t01), (0, 2, t02), (0, 3, t03), (2, 3, t23), (3, 1, t31), (1, 2, t12)] {
        t[i][j] = v;
        t[j][i] = -v;
    }
    BiSpinorParts {
        scalar: q * I * (xa + ea),
        pseudoscalar: q * (ea - xa),
        vector: vec_with(1.0),
        pseudovector: vec_with(-1.0),
        tensor: t,
    }
}

fn outer(p: [C64; 4], x: [C64; 4]) -> Matrix4C {
    Matrix4C::from_fn(|i, j| p[i] * x[j])
}

/// Irreducible pieces of Psi (x) Psi.
pub fn bispinor_decompose(b: &JonesBiSpinor) -> BiSpinorParts {
    let p = b.column();
    decompose_matrix(&outer(p, p))
}

/// Minkowski square Phi_a Phi^a of a complex 4-vector.
pub fn minkowski_square(v: &[C64; 4]) -> C64 {
    v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3]
}

/// a = (S01, S02, S03), b = (S23, S31, S12).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesTensor {
    pub a: [f64; 3],
    pub b: [f64; 3],
}

impl StokesTensor {
    /// s = a + i b
    pub fn complex(&self) -> [C64; 3] {
        std::array::from_fn(|i| C64::new(self.a[i], self.b[i]))
    }

    /// I1 = a^2 - b^2, I2 = 2 a.b.
    pub fn invariants(&self) -> (f64, f64) {
        let (a, b) = (self.a, self.b);
        (crate::dot(a, a) - crate::dot(b, b), 2.0 * crate::dot(a, b))
    }
}

fn real_or_internal(z: C64, scale: f64) -> Result<f64> {
    if z.im.abs() > 1e-10 * scale.max(1.0) {
        return Err(Error::Internal(format!("expected a real component, got {z}")));
    }
    Ok(z.re)
}

/// Stokes vector and Stokes tensor of completely polarized light with
/// eta = -i sigma2 xi*.
pub fn polarized_stokes_tensor(xi: [C64; 2]) -> Result<(StokesVector, StokesTensor)> {
    let parts = bispinor_decompose(&JonesBiSpinor::polarized(xi));
    let scale = xi[0].norm_sqr() + xi[1].norm_sqr();
    let mut s = [0.0; 4];
    for (o, &z) in s.iter_mut().zip(&parts.vector) {
        *o = real_or_internal(z, scale)?;
    }
    let t = parts.tensor;
    let a = [t[0][1], t[0][2], t[0][3]];
    let b = [t[2][3], t[3][1], t[1][2]];
    let mut ta = [0.0; 3];
    let mut tb = [0.0; 3];
    for i in 0..3 {
        ta[i] = real_or_internal(a[i], scale)?;
        tb[i] = real_or_internal(b[i], scale)?;
    }
    Ok((StokesVector::raw(s), StokesTensor { a: ta, b: tb }))
}

/// Time-like (or isotropic) Stokes vector of the vector part of
/// Psi (x) (-i Psi^c), with -i Psi^c = (eta2*, -eta1*, -xi2*, xi1*).
pub fn partly_polarized_stokes(b: &JonesBiSpinor) -> Result<StokesVector> {
    let p = b.column();
    let scale: f64 = p.iter().map(|z| z.norm_sqr()).sum();
    if scale == 0.0 {
        return Err(Error::Domain("zero bi-spinor".into()));
    }
    let x = [b.eta[1].conj(), -b.eta[0].conj(), -b.xi[1].conj(), b.xi[0].conj()];
    let v = decompose_matrix(&outer(p, x)).vector;
    let mut s = [0.0; 4];
    for i in 0..4 {
        s[i] = real_or_internal(v[i], scale)?;
    }
    Ok(StokesVector::raw(s))
}

/// Closed form of S0^2 - |S|^2 for the partly polarized construction.
pub fn partly_polarized_invariant(b: &JonesBiSpinor) -> f64 {
    let [x1, x2] = b.xi;
    let [e1, e2] = b.eta;
    x1.norm_sqr() * e1.norm_sqr() + x2.norm_sqr() * e2.norm_sqr() + 2.0 * (e1 * e2.conj() * x2 * x1.conj()).re
}

/// [(N1 M1 - N2 M2)^2, (N1 M1 + N2 M2)^2]
pub fn partly_polarized_bounds(b: &JonesBiSpinor) -> (f64, f64) {
    let (n1, n2) = (b.xi[0].norm(), b.xi[1].norm());
    let (m1, m2) = (b.eta[0].norm(), b.eta[1].norm());
    ((n1 * m1 - n2 * m2).powi(2), (n1 * m1 + n2 * m2).powi(2))
}
