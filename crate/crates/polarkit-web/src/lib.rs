//! Browser demo: the Poincaré sphere under boosts, and the twelve SU(2)
//! factorizations of one rotation.
//!
//! The plain functions are ordinary Rust and are tested natively; the
//! `#[wasm_bindgen]` wrappers at the bottom only flatten their arguments
//! and serialize the result to a JSON string.

use polarkit::covering::su2_rotation;
use polarkit::json::{matrix_r, real_array};
use polarkit::stokes::{boost_stokes, BoostSpec, StokesVector};
use polarkit::su2::{self, Degeneracy, FactorAngles, Scheme, UnitQuaternion, THREE_ELEMENT, TWO_ELEMENT};
use polarkit::DEFAULT_TOL;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn err(e: polarkit::Error) -> String {
    e.to_string()
}

fn polarization(s: &StokesVector) -> [f64; 3] {
    if s.s[0] > 0.0 {
        s.spatial().map(|x| x / s.s[0])
    } else {
        [0.0; 3]
    }
}

/// A Stokes vector and its image under a boost, with the normalized
/// polarization vectors that are drawn inside the unit ball.
pub fn sphere_state(s: [f64; 4], beta: f64, axis: [f64; 3]) -> Result<Value, String> {
    let s = StokesVector::physical(s, DEFAULT_TOL).map_err(err)?;
    let b = BoostSpec::new(beta, axis).map_err(err)?;
    let t = boost_stokes(&s, &b);
    let l = polarkit::covering::covering_map(&polarkit::covering::boost(b.beta, b.e).map_err(err)?).map_err(err)?;
    let degree = |v: &StokesVector| v.spatial_norm() / v.s[0];
    Ok(json!({
        "stokes": real_array(&s.s),
        "boosted": real_array(&t.s),
        "p": real_array(&polarization(&s)),
        "p_boosted": real_array(&polarization(&t)),
        "degree": degree(&s),
        "degree_boosted": degree(&t),
        "invariant": s.invariant(),
        "invariant_boosted": t.invariant(),
        "mueller": matrix_r(&l),
    }))
}

/// Image under the boost of the sphere |p| = `degree`, sampled on a
/// latitude/longitude grid; flat (x, y, z) triples, row by row.
pub fn ellipsoid(degree: f64, beta: f64, axis: [f64; 3], n_lat: usize, n_lon: usize) -> Result<Vec<f64>, String> {
    if !(0.0..=1.0).contains(&degree) {
        return Err("degree of polarization must lie in [0, 1]".into());
    }
    let b = BoostSpec::new(beta, axis).map_err(err)?;
    let (n_lat, n_lon) = (n_lat.max(2), n_lon.max(3));
    let mut out = Vec::with_capacity(3 * (n_lat + 1) * n_lon);
    for i in 0..=n_lat {
        let th = std::f64::consts::PI * i as f64 / n_lat as f64;
        for j in 0..n_lon {
            let ph = std::f64::consts::TAU * j as f64 / n_lon as f64;
            let d = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
            let s = StokesVector::raw([1.0, degree * d[0], degree * d[1], degree * d[2]]);
            out.extend(polarization(&boost_stokes(&s, &b)));
        }
    }
    Ok(out)
}

fn flag_name(f: Option<Degeneracy>) -> Value {
    match f {
        None => Value::Null,
        Some(Degeneracy::FreeOuterAngle) => json!("free-outer-angle"),
        Some(Degeneracy::GimbalLock) => json!("gimbal-lock"),
    }
}

/// Every factorization of `q`, plus the 3x3 rotation it induces on the sphere.
pub fn factor_all(q: UnitQuaternion) -> Result<Value, String> {
    let r = su2_rotation(q, 1e-9).map_err(err)?;
    let mut rows = Vec::new();
    for scheme in TWO_ELEMENT.iter().chain(THREE_ELEMENT.iter()) {
        let f = if scheme.is_two_element() {
            su2::factor_2element(q, *scheme, 1e-9)
        } else {
            su2::factor_3element(q, *scheme, 1e-9)
        }
        .map_err(err)?;
        rows.push(json!({
            "scheme": scheme.label(),
            "two_axis": scheme.is_two_element(),
            "angles": real_array(&[f.a, f.b, f.c]),
            "flag": flag_name(f.flag),
            "error": su2::sign_blind_distance(su2::product_of_factors(&f), q),
        }));
    }
    let spatial: Vec<Value> = (1..4).map(|i| real_array(&[r[(i, 1)], r[(i, 2)], r[(i, 3)]])).collect();
    Ok(json!({ "quaternion": real_array(&q), "rotation": spatial, "factorizations": rows }))
}

/// The quaternion U_i(a) U_j(b) U_k(c) for a scheme label, then `factor_all`.
pub fn factor_from_angles(scheme: &str, a: f64, b: f64, c: f64) -> Result<Value, String> {
    let scheme: Scheme = scheme.parse().map_err(err)?;
    let q = su2::product_of_factors(&FactorAngles { a, b, c, scheme, flag: None });
    factor_all(q)
}

fn to_json(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn sphere_state_json(s0: f64, s1: f64, s2: f64, s3: f64, beta: f64, ex: f64, ey: f64, ez: f64) -> String {
    to_json(sphere_state([s0, s1, s2, s3], beta, [ex, ey, ez]))
}

/// Empty on invalid input.
#[wasm_bindgen]
pub fn ellipsoid_points(degree: f64, beta: f64, ex: f64, ey: f64, ez: f64, n_lat: usize, n_lon: usize) -> Vec<f64> {
    ellipsoid(degree, beta, [ex, ey, ez], n_lat, n_lon).unwrap_or_default()
}

#[wasm_bindgen]
pub fn factor_quaternion_json(q0: f64, q1: f64, q2: f64, q3: f64) -> String {
    let n = (q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3).sqrt();
    if !n.is_finite() || n == 0.0 {
        return to_json(Err("quaternion must be nonzero".into()));
    }
    to_json(factor_all([q0 / n, q1 / n, q2 / n, q3 / n]))
}

#[wasm_bindgen]
pub fn factor_angles_json(scheme: &str, a: f64, b: f64, c: f64) -> String {
    to_json(factor_from_angles(scheme, a, b, c))
}
