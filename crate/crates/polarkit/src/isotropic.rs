//! Newman-Penrose isotropic basis: Lorentz matrices as U = S L S^-1 and
//! recovery of the spinor matrix (a, d; c, b) from U.

use crate::covering::SpinorMatrix;
use crate::stokes::StokesVector;
use crate::{max_abs, Error, Matrix4C, Result, C64, I, ONE, ZERO};
use std::f64::consts::FRAC_1_SQRT_2 as H;

/// Residual above which a matrix is reported as outside the image.
pub const IMAGE_TOL: f64 = 1e-7;

pub fn s_matrix() -> Matrix4C {
    let (o, z) = (ONE, ZERO);
    Matrix4C::from_fn(|i, j| {
        [[o, z, z, o], [o, z, z, -o], [z, o, -I, z], [z, o, I, z]][i][j] * H
    })
}

pub fn s_inverse() -> Matrix4C {
    let (o, z) = (ONE, ZERO);
    Matrix4C::from_fn(|i, j| {
        [[o, o, z, z], [z, z, o, o], [z, z, I, -I], [o, -o, z, z]][i][j] * H
    })
}

pub fn to_isotropic(l: &Matrix4C) -> Matrix4C {
    s_matrix() * l * s_inverse()
}

pub fn from_isotropic(u: &Matrix4C) -> Matrix4C {
    s_inverse() * u * s_matrix()
}

/// Bilinear form of the Lorentz matrix in the isotropic basis.
pub fn isotropic_from_spinor(m: &SpinorMatrix, tol: f64) -> Result<Matrix4C> {
    let det = m.det();
    if (det - ONE).norm() > tol.max(1e-9) {
        return Err(Error::Normalization { re: det.re, im: det.im });
    }
    Ok(bilinear(m))
}

fn bilinear(m: &SpinorMatrix) -> Matrix4C {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    let (ac, bc, cc, dc) = (a.conj(), b.conj(), c.conj(), d.conj());
    Matrix4C::new(
        b * bc, c * cc, -c * bc, -b * cc, //
        d * dc, a * ac, -a * dc, -d * ac, //
        -d * bc, -a * cc, a * bc, d * cc, //
        -b * dc, -c * ac, c * dc, b * ac,
    )
}

/// Which recovery path produced the spinor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Generic,
    /// c = d = 0
    Diagonal,
    /// a = b = 0
    AntiDiagonal,
    /// mixed or badly conditioned: rebuilt from the Gram products y z*
    Pivot,
}

/// Moduli and phases: a = A alpha, b = B beta, c = C s, d = D t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicFactors {
    pub a_mod: f64,
    pub b_mod: f64,
    pub c_mod: f64,
    pub d_mod: f64,
    pub alpha: C64,
    pub beta: C64,
    pub s: C64,
    pub t: C64,
}

fn phase(z: C64) -> C64 {
    if z.norm() == 0.0 {
        ONE
    } else {
        z / z.norm()
    }
}

impl IsotropicFactors {
    pub fn from_spinor(m: &SpinorMatrix) -> Self {
        IsotropicFactors {
            a_mod: m.a.norm(),
            b_mod: m.b.norm(),
            c_mod: m.c.norm(),
            d_mod: m.d.norm(),
            alpha: phase(m.a),
            beta: phase(m.b),
            s: phase(m.c),
            t: phase(m.d),
        }
    }

    /// (AB, CD) predicted from the phases by det = 1.
    pub fn coupled_moduli(&self) -> (C64, C64) {
        let st2 = (self.s * self.t).powi(2);
        let ab2 = (self.alpha * self.beta).powi(2);
        let den = st2 - ab2;
        (self.alpha * self.beta * (st2 - ONE) / den, self.s * self.t * (ab2 - ONE) / den)
    }
}

/// Global-sign convention: Re(a) >= 0, ties broken by Re(c), then the
/// imaginary parts, then b and d.
fn canonical_sign(m: SpinorMatrix) -> SpinorMatrix {
    let keys = [m.a.re, m.c.re, m.a.im, m.c.im, m.b.re, m.d.re, m.b.im, m.d.im];
    let scale = keys.iter().fold(0.0f64, |x, y| x.max(y.abs()));
    for k in keys {
        if k.abs() > 1e-12 * scale {
            return if k < 0.0 { m.scale(-ONE) } else { m };
        }
    }
    m
}

pub fn recover_spinor(u: &Matrix4C, tol: f64) -> Result<(SpinorMatrix, Branch)> {
    let scale = max_abs(u).max(1e-300);
    let small = |z: C64| z.norm() <= tol * scale;
    let attempt = if small(u[(0, 1)]) && small(u[(1, 0)]) {
        diagonal(u).map(|m| (m, Branch::Diagonal))
    } else if small(u[(0, 0)]) && small(u[(1, 1)]) {
        anti_diagonal(u).map(|m| (m, Branch::AntiDiagonal))
    } else {
        generic(u, scale).map(|m| (m, Branch::Generic))
    };
    let residual = |m: &SpinorMatrix| max_abs(&(bilinear(m) - u)) / scale;
    if let Some((m, br)) = attempt {
        if residual(&m) <= IMAGE_TOL {
            return Ok((canonical_sign(m), br));
        }
    }
    let m = pivot(u)?;
    let r = residual(&m);
    if r > IMAGE_TOL {
        return Err(Error::Residual(r));
    }
    Ok((canonical_sign(m), Branch::Pivot))
}

fn diagonal(u: &Matrix4C) -> Option<SpinorMatrix> {
    // a b* = a / a* = alpha^2 when b = 1/a
    let alpha = u[(2, 2)].sqrt();
    let a = alpha * u[(1, 1)].re.max(0.0).sqrt();
    if a.norm() == 0.0 {
        return None;
    }
    Some(SpinorMatrix::new(a, ONE / a, ZERO, ZERO))
}

fn anti_diagonal(u: &Matrix4C) -> Option<SpinorMatrix> {
    // c d* = -c / c* = -s^2 when d = -1/c
    let s = (-u[(3, 2)]).sqrt();
    let c = s * u[(0, 1)].re.max(0.0).sqrt();
    if c.norm() == 0.0 {
        return None;
    }
    Some(SpinorMatrix::new(ZERO, ZERO, c, -ONE / c))
}

fn generic(u: &Matrix4C, scale: f64) -> Option<SpinorMatrix> {
    let u13 = u[(1, 3)];
    if u13.norm() <= 1e-6 * scale || u[(1, 1)].re <= 1e-6 * scale {
        return None;
    }
    // alpha^2 = a / a*
    let alpha = (u[(2, 2)] - u[(1, 2)] * u[(2, 3)] / u13).sqrt();
    let a = alpha * u[(1, 1)].re.sqrt();
    let b = (u[(2, 2)] / a).conj();
    let c = (-u[(2, 1)] / a).conj();
    let d = (-u[(1, 2)] / a).conj();
    Some(SpinorMatrix::new(a, b, c, d))
}

/// Reads every product y z* of v = (a, b, c, d) off U, takes the largest
/// modulus as a real pivot, and fixes the remaining phase by det = 1.
fn pivot(u: &Matrix4C) -> Result<SpinorMatrix> {
    let mut g = [[ZERO; 4]; 4];
    g[0][0] = u[(1, 1)];
    g[1][1] = u[(0, 0)];
    g[2][2] = u[(0, 1)];
    g[3][3] = u[(1, 0)];
    g[0][1] = u[(2, 2)];
    g[1][0] = u[(3, 3)];
    g[0][2] = -u[(2, 1)];
    g[2][0] = -u[(3, 1)];
    g[0][3] = -u[(1, 2)];
    g[3][0] = -u[(1, 3)];
    g[1][2] = -u[(0, 3)];
    g[2][1] = -u[(0, 2)];
    g[1][3] = -u[(3, 0)];
    g[3][1] = -u[(2, 0)];
    g[2][3] = u[(3, 2)];
    g[3][2] = u[(2, 3)];
    let p = (0..4).max_by(|&i, &j| g[i][i].re.total_cmp(&g[j][j].re)).unwrap_or(0);
    let piv = g[p][p].re;
    if piv <= 0.0 {
        return Err(Error::Residual(f64::INFINITY));
    }
    let r = piv.sqrt();
    let v: [C64; 4] = std::array::from_fn(|y| g[y][p] / r);
    let m = SpinorMatrix::new(v[0], v[1], v[2], v[3]);
    let det = m.det();
    if det.norm() == 0.0 {
        return Err(Error::Residual(f64::INFINITY));
    }
    Ok(m.scale(ONE / det.sqrt()))
}

/// Z = S Stokes, with Z0, Z1 real and Z3 = conj(Z2) for real input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicStokes {
    pub z: [C64; 4],
}

pub fn stokes_to_isotropic(s: &StokesVector) -> IsotropicStokes {
    let v = s_matrix() * nalgebra::Vector4::from(s.s.map(C64::from));
    IsotropicStokes { z: [v[0], v[1], v[2], v[3]] }
}

pub fn isotropic_to_stokes(z: &IsotropicStokes, tol: f64) -> Result<StokesVector> {
    let v = s_inverse() * nalgebra::Vector4::from(z.z);
    let scale = v.iter().map(|x| x.norm()).fold(1.0, f64::max);
    if v.iter().any(|x| x.im.abs() > tol * scale) {
        return Err(Error::Domain("isotropic vector lacks the reality structure".into()));
    }
    Ok(StokesVector::raw([v[0].re, v[1].re, v[2].re, v[3].re]))
}

/// Generator labels for the six elementary one-parameter subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    P01,
    P02,
    P03,
    P23,
    P31,
    P12,
}

/// SpinorParams of the elementary transformation: boosts (0-j) take a
/// rapidity, rotations (i-j) an angle about the remaining axis.
pub fn elementary(plane: Plane, x: f64) -> crate::covering::SpinorParams {
    use crate::covering::{boost, rotation};
    let r = match plane {
        Plane::P01 => boost(x, [1.0, 0.0, 0.0]),
        Plane::P02 => boost(x, [0.0, 1.0, 0.0]),
        Plane::P03 => boost(x, [0.0, 0.0, 1.0]),
        Plane::P23 => rotation(x, [1.0, 0.0, 0.0]),
        Plane::P31 => rotation(x, [0.0, 1.0, 0.0]),
        Plane::P12 => rotation(x, [0.0, 0.0, 1.0]),
    };
    r.expect("fixed unit axis")
}
