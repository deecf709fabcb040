//! Lorentz-group numerics for polarization optics.
//!
//! Stokes 4-vectors transform under the proper orthochronous Lorentz group,
//! Jones spinors under its double cover SL(2,C). The modules here build
//! both sides explicitly and move between them.

pub mod algebra;
pub mod covering;
pub mod decomp;
pub mod error;
pub mod isotropic;
pub mod jones;
pub mod json;
pub mod small_group;
pub mod stokes;
pub mod su2;

pub use error::{Error, ErrorKind, Result};
pub use num_complex::Complex64 as C64;

/// Library-wide default tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

pub type Matrix4C = nalgebra::Matrix4<C64>;
pub type Matrix4R = nalgebra::Matrix4<f64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Minkowski metric diag(1,-1,-1,-1).
pub fn metric() -> Matrix4R {
    Matrix4R::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, -1.0))
}

pub fn is_finite(m: &Matrix4C) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Rejects matrices carrying NaN or infinities.
pub fn checked_matrix(m: Matrix4C) -> Result<Matrix4C> {
    if is_finite(&m) {
        Ok(m)
    } else {
        Err(Error::Domain("matrix has non-finite entries".into()))
    }
}

pub(crate) fn max_abs(m: &Matrix4C) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
