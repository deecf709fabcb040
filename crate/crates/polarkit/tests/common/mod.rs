#![allow(dead_code)]

use nalgebra::Matrix4;
use polarkit::covering::{SpinorMatrix, SpinorParams};
use polarkit::stokes::StokesVector;
use polarkit::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gauss(r: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; plenty for test inputs
    let u: f64 = r.gen_range(1e-12..1.0);
    let v: f64 = r.gen_range(0.0..1.0);
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

pub fn complex(r: &mut ChaCha8Rng) -> C64 {
    C64::new(gauss(r), gauss(r))
}

pub fn unit_vec(r: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v = [gauss(r), gauss(r), gauss(r)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 {
            return v.map(|x| x / n);
        }
    }
}

pub fn unit_quaternion(r: &mut ChaCha8Rng) -> [f64; 4] {
    loop {
        let v = [gauss(r), gauss(r), gauss(r), gauss(r)];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.map(|x| x / n);
        }
    }
}

/// Unit-determinant k with moderate boost content.
pub fn unit_spinor(r: &mut ChaCha8Rng) -> SpinorParams {
    loop {
        let k = SpinorParams::new([complex(r), complex(r), complex(r), complex(r)].map(|z| z * 0.7));
        let d = k.det();
        if d.norm() > 0.05 {
            return k.scale(C64::from(1.0) / d.sqrt());
        }
    }
}

pub fn unimodular(r: &mut ChaCha8Rng) -> SpinorMatrix {
    polarkit::covering::spinor_matrix(&unit_spinor(r))
}

/// Stokes vector of intensity i and degree p in a random direction.
pub fn stokes(r: &mut ChaCha8Rng, i: f64, p: f64) -> StokesVector {
    let n = unit_vec(r);
    StokesVector::raw([i, i * p * n[0], i * p * n[1], i * p * n[2]])
}

pub fn max_diff_r(a: &Matrix4<f64>, b: &Matrix4<f64>) -> f64 {
    (a - b).abs().max()
}

pub fn max_diff_c(a: &Matrix4<C64>, b: &Matrix4<C64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn vec_diff(a: &StokesVector, b: &StokesVector) -> f64 {
    (0..4).map(|i| (a.s[i] - b.s[i]).abs()).fold(0.0, f64::max)
}

pub fn sign_blind(a: &SpinorMatrix, b: &SpinorMatrix) -> f64 {
    a.max_diff(b).min(a.max_diff(&b.scale(C64::from(-1.0))))
}
