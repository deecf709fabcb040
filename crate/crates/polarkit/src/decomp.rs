//! Closed-form polar decomposition of SL(2,C) elements and the Thomas
//! rotation of two composed boosts.

use crate::covering::{SpinorMatrix, SpinorParams};
use crate::{cross, dot, Error, Result, C64, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// B(k) = R H
    RotationFirst,
    /// B(k) = H R
    BoostFirst,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarDecomposition {
    /// unit quaternion (n0, n); the factor is n0 - i n.sigma
    pub rotation: [f64; 4],
    /// B with |B| < 1; the factor is (1 + B.sigma)/sqrt(1 - B^2)
    pub velocity: [f64; 3],
    pub order: Order,
}

impl PolarDecomposition {
    pub fn rotation_factor(&self) -> SpinorMatrix {
        let [n0, n1, n2, n3] = self.rotation;
        crate::covering::spinor_matrix(&SpinorParams::from_split(n0, [n1, n2, n3], 0.0, [0.0; 3]))
    }

    pub fn boost_factor(&self) -> SpinorMatrix {
        let b = self.velocity;
        let g = 1.0 / (1.0 - dot(b, b)).sqrt();
        let [b1, b2, b3] = b.map(|x| C64::from(x * g));
        SpinorMatrix::new(g + b3, g - b3, b1 + I * b2, b1 - I * b2)
    }

    pub fn reconstruct(&self) -> SpinorMatrix {
        match self.order {
            Order::RotationFirst => self.rotation_factor().mul(&self.boost_factor()),
            Order::BoostFirst => self.boost_factor().mul(&self.rotation_factor()),
        }
    }

    /// Rapidity of the boost factor: |B| = th(beta/2).
    pub fn rapidity(&self) -> f64 {
        2.0 * dot(self.velocity, self.velocity).sqrt().atanh()
    }
}

fn split_polar(k: &SpinorParams, order: Order, tol: f64) -> Result<PolarDecomposition> {
    let k = k.normalized()?;
    let (n0, n, m0, m) = k.split();
    let den = n0 * n0 + dot(n, n);
    if den <= tol {
        return Err(Error::Degenerate(format!("n0^2 + n^2 = {den:e}")));
    }
    let x = cross(m, n);
    let sgn = match order {
        Order::RotationFirst => 1.0,
        Order::BoostFirst => -1.0,
    };
    let v: [f64; 3] = std::array::from_fn(|i| (n0 * m[i] - m0 * n[i] + sgn * x[i]) / den);
    if dot(v, v) >= 1.0 {
        return Err(Error::Internal("polar velocity reached 1".into()));
    }
    let s = den.sqrt();
    Ok(PolarDecomposition { rotation: [n0 / s, n[0] / s, n[1] / s, n[2] / s], velocity: v, order })
}

pub fn polar_rotation_boost(k: &SpinorParams, tol: f64) -> Result<PolarDecomposition> {
    split_polar(k, Order::RotationFirst, tol)
}

pub fn polar_boost_rotation(k: &SpinorParams, tol: f64) -> Result<PolarDecomposition> {
    split_polar(k, Order::BoostFirst, tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostComposition {
    pub k: SpinorParams,
    pub thomas: PolarDecomposition,
    /// sqrt(det) divided out of the raw product
    pub scale: C64,
}

/// Boost (b0, b) followed by boost (b0', b'), i.e. B(b') B(b):
/// n0 = b0' b0 + b'.b, n = b x b', m0 = 0, m = b0' b + b0 b'.
pub fn compose_boosts(first: [f64; 4], second: [f64; 4], tol: f64) -> Result<BoostComposition> {
    for q in [first, second] {
        let d = q[0] * q[0] - q[1] * q[1] - q[2] * q[2] - q[3] * q[3];
        if (d - 1.0).abs() > tol.max(1e-9) || q[0] <= 0.0 {
            return Err(Error::Domain(format!("not a unit boost: b0^2 - b^2 = {d}")));
        }
    }
    let (b0, b) = (first[0], [first[1], first[2], first[3]]);
    let (c0, c) = (second[0], [second[1], second[2], second[3]]);
    let n0 = c0 * b0 + dot(c, b);
    let n = cross(b, c);
    let m: [f64; 3] = std::array::from_fn(|i| c0 * b[i] + b0 * c[i]);
    // det is real here, so keep m0 exactly zero by scaling with a real root
    let det = n0 * n0 + dot(n, n) - dot(m, m);
    if det <= tol {
        return Err(Error::Singular(det));
    }
    let s = det.sqrt();
    let k = SpinorParams::from_split(n0 / s, n.map(|x| x / s), 0.0, m.map(|x| x / s));
    let scale = C64::from(s);
    let thomas = polar_rotation_boost(&k, tol)?;
    Ok(BoostComposition { k, thomas, scale })
}

/// (ch(beta/2), sh(beta/2) e) as a real 4-tuple for `compose_boosts`.
pub fn boost_quad(beta: f64, e: [f64; 3]) -> Result<[f64; 4]> {
    let k = crate::covering::boost(beta, e)?;
    Ok([k.k[0].re, k.k[1].re, k.k[2].re, k.k[3].re])
}

