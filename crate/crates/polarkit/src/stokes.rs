//! Stokes 4-vectors and their Lorentz (Mueller) transformations.

use crate::{dot, Error, Matrix4C, Matrix4R, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesVector {
    pub s: [f64; 4],
}

impl StokesVector {
    /// Unchecked 4-vector, for intermediate Lorentz algebra.
    pub fn raw(s: [f64; 4]) -> Self {
        StokesVector { s }
    }

    /// Physical light: S0 >= 0 and degree of polarization at most 1.
    pub fn physical(s: [f64; 4], tol: f64) -> Result<Self> {
        let v = StokesVector { s };
        if s.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("non-finite Stokes component".into()));
        }
        if s[0] < 0.0 {
            return Err(Error::Domain(format!("negative intensity {}", s[0])));
        }
        if v.spatial_norm() > s[0] * (1.0 + tol) + tol {
            return Err(Error::Domain("degree of polarization exceeds 1".into()));
        }
        Ok(v)
    }

    pub fn intensity(&self) -> f64 {
        self.s[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.s[1], self.s[2], self.s[3]]
    }

    pub fn spatial_norm(&self) -> f64 {
        dot(self.spatial(), self.spatial()).sqrt()
    }

    /// S_a S^a = S0^2 - |S|^2.
    pub fn invariant(&self) -> f64 {
        self.s[0] * self.s[0] - dot(self.spatial(), self.spatial())
    }

    pub fn degree(&self, tol: f64) -> Result<f64> {
        if self.s[0] < tol {
            return Err(Error::Domain("degree of polarization undefined at zero intensity".into()));
        }
        Ok(self.spatial_norm() / self.s[0])
    }

    /// p = S / S0 as a 3-vector.
    pub fn polarization(&self, tol: f64) -> Result<[f64; 3]> {
        self.degree(tol)?;
        Ok(self.spatial().map(|x| x / self.s[0]))
    }

    pub fn is_isotropic(&self, tol: f64) -> bool {
        self.invariant().abs() <= tol * self.s[0] * self.s[0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveParams {
    pub n: f64,
    pub m: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostSpec {
    pub beta: f64,
    pub e: [f64; 3],
}

impl BoostSpec {
    pub fn new(beta: f64, e: [f64; 3]) -> Result<Self> {
        let len = dot(e, e).sqrt();
        if !len.is_finite() || len <= 1e-12 {
            return Err(Error::Domain("boost axis must be nonzero".into()));
        }
        Ok(BoostSpec { beta, e: e.map(|x| x / len) })
    }

    pub fn identity() -> Self {
        BoostSpec { beta: 0.0, e: [0.0, 0.0, 1.0] }
    }
}

pub fn stokes_from_wave(w: &WaveParams) -> StokesVector {
    let (n, m) = (w.n, w.m);
    StokesVector::raw([
        n * n + m * m,
        2.0 * n * m * w.delta.cos(),
        2.0 * n * m * w.delta.sin(),
        n * n - m * m,
    ])
}

/// Incoherent sum of a completely polarized beam and natural light.
pub fn mix_with_natural(pol: &StokesVector, i_nat: f64, tol: f64) -> Result<StokesVector> {
    if i_nat < 0.0 || pol.s[0] < 0.0 {
        return Err(Error::Domain("intensities must be nonnegative".into()));
    }
    if !pol.is_isotropic(tol) {
        return Err(Error::Domain("polarized component is not isotropic".into()));
    }
    let mut s = pol.s;
    s[0] += i_nat;
    Ok(StokesVector::raw(s))
}

/// I' = I(ch b - sh b e.p), I'p' = I(p - e sh b + (ch b - 1) e (e.p)).
///
/// Written with S = I p so that zero intensity needs no special case.
pub fn boost_stokes(s: &StokesVector, b: &BoostSpec) -> StokesVector {
    let (ch, sh) = (b.beta.cosh(), b.beta.sinh());
    let e = b.e;
    let v = s.spatial();
    let ev = dot(e, v);
    let i = s.s[0];
    StokesVector::raw([
        i * ch - sh * ev,
        v[0] - e[0] * sh * i + (ch - 1.0) * e[0] * ev,
        v[1] - e[1] * sh * i + (ch - 1.0) * e[1] * ev,
        v[2] - e[2] * sh * i + (ch - 1.0) * e[2] * ev,
    ])
}

/// Boost taking partly polarized light to its natural-light frame.
pub fn rest_frame(s: &StokesVector, tol: f64) -> Result<BoostSpec> {
    let p = s.degree(tol)?;
    if p <= tol {
        return Ok(BoostSpec::identity());
    }
    if p >= 1.0 - tol {
        return Err(Error::NoRestFrame(p));
    }
    let n = s.spatial().map(|x| x / (p * s.s[0]));
    Ok(BoostSpec { beta: p.atanh(), e: n })
}

/// 1 - p'^2 - (1 - p^2)(ch b + sh b e.p')^2; zero on the boosted ellipsoid.
pub fn ellipsoid_residual(p: f64, boosted: &StokesVector, b: &BoostSpec) -> f64 {
    let i = boosted.s[0];
    let pp = boosted.spatial().map(|x| x / i);
    let k = b.beta.cosh() + b.beta.sinh() * dot(b.e, pp);
    1.0 - dot(pp, pp) - (1.0 - p * p) * k * k
}

/// Centre offset of the ellipsoid for a boost along the third axis.
pub fn ellipsoid_gamma(p: f64, beta: f64) -> f64 {
    let (ch, sh) = (beta.cosh(), beta.sinh());
    (1.0 - p * p) * sh * ch / (ch * ch - p * p * sh * sh)
}

/// Canonical form for a boost along e3:
/// p1'^2 + p2'^2 + (ch^2 - p^2 sh^2)(p3' + gamma)^2 - p^2/(ch^2 - p^2 sh^2).
pub fn ellipsoid_axis_residual(p: f64, beta: f64, boosted: &StokesVector) -> f64 {
    let (ch, sh) = (beta.cosh(), beta.sinh());
    let k = ch * ch - p * p * sh * sh;
    let pp = boosted.spatial().map(|x| x / boosted.s[0]);
    let g = ellipsoid_gamma(p, beta);
    pp[0] * pp[0] + pp[1] * pp[1] + k * (pp[2] + g).powi(2) - p * p / k
}

pub fn mueller_apply_real(l: &Matrix4R, s: &StokesVector) -> StokesVector {
    let v = l * nalgebra::Vector4::from(s.s);
    StokesVector::raw([v[0], v[1], v[2], v[3]])
}

/// Componentwise L S for a complex-typed matrix that must be real.
pub fn mueller_apply(l: &Matrix4C, s: &StokesVector, tol: f64) -> Result<StokesVector> {
    let scale = l.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if l.iter().any(|z| z.im.abs() > tol * scale) {
        return Err(Error::Domain("Mueller matrix has imaginary entries".into()));
    }
    Ok(mueller_apply_real(&l.map(|z| z.re), s))
}
