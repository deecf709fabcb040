//! Seeded invariant checks across the library.

use crate::CliError;
use polarkit::covering::{covering_map, spinor_matrix, SpinorMatrix, SpinorParams};
use polarkit::stokes::{boost_stokes, BoostSpec, StokesVector};
use polarkit::su2::{self, THREE_ELEMENT, TWO_ELEMENT};
use polarkit::{decomp, isotropic, jones, metric, small_group, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

struct Check {
    name: &'static str,
    bound: f64,
    worst: f64,
}

impl Check {
    fn new(name: &'static str, bound: f64) -> Self {
        Check { name, bound, worst: 0.0 }
    }

    fn see(&mut self, e: polarkit::Result<f64>) {
        // a library error on valid random input counts as a failure
        self.worst = self.worst.max(e.unwrap_or(f64::INFINITY));
    }

    fn doc(&self) -> Value {
        json!({ "name": self.name, "max_error": self.worst, "bound": self.bound, "pass": self.worst <= self.bound })
    }
}

fn size(m: &SpinorMatrix) -> f64 {
    [m.a, m.b, m.c, m.d].iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn params(r: &mut ChaCha8Rng, tol: f64) -> polarkit::Result<SpinorParams> {
    let k: [C64; 4] = std::array::from_fn(|_| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
    SpinorParams::new(k).unit(tol)
}

fn unit_quaternion(r: &mut ChaCha8Rng) -> [f64; 4] {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| r.gen_range(-1.0..1.0));
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return q.map(|x| x / n);
        }
    }
}

fn stokes(r: &mut ChaCha8Rng, isotropic: bool) -> StokesVector {
    let mut v: [f64; 3] = std::array::from_fn(|_| r.gen_range(-1.0..1.0));
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
    let p = if isotropic { 1.0 } else { r.gen_range(0.0..0.95) };
    let i0 = r.gen_range(0.5..2.0);
    v = v.map(|x| x / n * p * i0);
    StokesVector::raw([i0, v[0], v[1], v[2]])
}

pub fn run(seed: u64, samples: usize, tol: f64) -> Result<Value, CliError> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut hom = Check::new("covering homomorphism", 1e-9);
    let mut met = Check::new("covering preserves the metric", 1e-9);
    let mut fac = Check::new("factorization roundtrip", 1e-9);
    let mut inv = Check::new("boost preserves the Stokes invariant", 1e-9);
    let mut pol = Check::new("polar reconstruction", 1e-9);
    let mut iso = Check::new("isotropic recovery", 1e-7);
    let mut tra = Check::new("pure-boost transitivity", 1e-8);
    let mut jon = Check::new("Jones roundtrip", 1e-9);
    let g = metric();
    for _ in 0..samples {
        let (k1, k2) = (params(&mut r, tol), params(&mut r, tol));
        hom.see(k1.clone().and_then(|a| {
            let b = k2.clone()?;
            let lhs = covering_map(&a.compose(&b))?;
            Ok((lhs - covering_map(&a)? * covering_map(&b)?).abs().max() / lhs.abs().max())
        }));
        met.see(k1.clone().and_then(|a| {
            let l = covering_map(&a)?;
            Ok((l.transpose() * g * l - g).abs().max() / l.abs().max().powi(2))
        }));
        let q = unit_quaternion(&mut r);
        for scheme in TWO_ELEMENT.iter().chain(THREE_ELEMENT.iter()) {
            let f = if scheme.is_two_element() {
                su2::factor_2element(q, *scheme, tol)
            } else {
                su2::factor_3element(q, *scheme, tol)
            };
            fac.see(f.map(|f| su2::sign_blind_distance(su2::product_of_factors(&f), q)));
        }
        let s = stokes(&mut r, false);
        let b = BoostSpec::new(r.gen_range(-3.0..3.0), std::array::from_fn(|_| r.gen_range(-1.0..1.0)));
        inv.see(b.clone().map(|b| (boost_stokes(&s, &b).invariant() - s.invariant()).abs() / (s.s[0] * s.s[0] * (2.0 * b.beta).cosh())));
        pol.see(k1.clone().and_then(|k| {
            let m = spinor_matrix(&k);
            let a = decomp::polar_rotation_boost(&k, tol)?.reconstruct().max_diff(&m);
            let b = decomp::polar_boost_rotation(&k, tol)?.reconstruct().max_diff(&m);
            Ok(a.max(b) / size(&m))
        }));
        iso.see(k2.clone().and_then(|k| {
            let m = spinor_matrix(&k);
            let u = isotropic::isotropic_from_spinor(&m, tol.max(1e-9))?;
            let (rec, _) = isotropic::recover_spinor(&u, tol)?;
            Ok(rec.max_diff(&m).min(rec.scale(C64::from(-1.0)).max_diff(&m)) / size(&m))
        }));
        let t = b.map(|b| boost_stokes(&s, &b));
        tra.see(t.and_then(|t| {
            let p = small_group::pure_boost_params(&s, &t, tol)?;
            let k = small_group::transitivity_general(&s, &t, &p, tol)?;
            let moved = small_group::maps_to(&k, &s)?;
            Ok((0..4).map(|i| (moved.s[i] - t.s[i]).abs()).fold(0.0, f64::max) / t.s[0])
        }));
        let iso_s = stokes(&mut r, true);
        jon.see(jones::jones_from_stokes(&iso_s, r.gen_range(-3.0..3.0), tol).map(|(j, _)| {
            let back = jones::stokes_from_jones(&j);
            (0..4).map(|i| (back.s[i] - iso_s.s[i]).abs()).fold(0.0, f64::max) / iso_s.s[0]
        }));
    }
    let checks = [hom, met, fac, inv, pol, iso, tra, jon];
    let pass = checks.iter().all(|c| c.worst <= c.bound);
    let doc = json!({
        "seed": seed,
        "samples": samples,
        "checks": checks.iter().map(Check::doc).collect::<Vec<_>>(),
        "pass": pass,
    });
    if pass {
        Ok(doc)
    } else {
        Err(CliError::SelfTest(doc))
    }
}
