//! One function per subcommand; each returns the document to emit.

use crate::input::{self, json_arg, real_n, ParseError};
use crate::{Basis, CliError, Model, PolarOrder, TransitMode};
use polarkit::covering::{self, SpinorMatrix, SpinorParams};
use polarkit::json::{c64, complex_array, matrix_c, matrix_r, real_array, spinor_params};
use polarkit::stokes::{self, BoostSpec, StokesVector};
use polarkit::su2::{self, Scheme};
use polarkit::{decomp, isotropic, jones, small_group, ErrorKind, Matrix4C, Matrix4R, C64};
use serde_json::{json, Map, Value};

type Out = Result<Value, CliError>;

fn max_diff(a: &StokesVector, b: &StokesVector) -> f64 {
    (0..4).map(|i| (a.s[i] - b.s[i]).abs()).fold(0.0, f64::max)
}

fn stokes_inputs(one: Option<&str>, csv: Option<&str>, tol: f64) -> Result<Vec<StokesVector>, CliError> {
    let raw: Vec<[f64; 4]> = match (one, csv) {
        (Some(s), _) => vec![real_n::<4>(s)?],
        (None, Some(path)) => input::csv_rows(path, 4)?.into_iter().map(|r| [r[0], r[1], r[2], r[3]]).collect(),
        (None, None) => return Err(ParseError("give --stokes or --csv".into()).into()),
    };
    Ok(raw.into_iter().map(|s| StokesVector::physical(s, tol)).collect::<polarkit::Result<_>>()?)
}

fn apply_all(l: &Matrix4R, v: &[StokesVector], single: bool) -> Value {
    let out: Vec<Value> = v.iter().map(|s| real_array(&stokes::mueller_apply_real(l, s).s)).collect();
    if single {
        out.into_iter().next().unwrap_or(Value::Null)
    } else {
        Value::Array(out)
    }
}

pub fn factor(label: &str, quaternion: &str, two: Option<bool>, tol: f64) -> Out {
    let scheme: Scheme = label.parse().map_err(|e: polarkit::Error| ParseError(e.to_string()))?;
    match two {
        Some(true) if !scheme.is_two_element() => {
            return Err(ParseError(format!("'{label}' is not a two-axis scheme")).into())
        }
        Some(false) if scheme.is_two_element() => {
            return Err(ParseError(format!("'{label}' is not a three-axis order")).into())
        }
        _ => {}
    }
    let q = real_n::<4>(quaternion)?;
    let f = if scheme.is_two_element() {
        su2::factor_2element(q, scheme, tol)?
    } else {
        su2::factor_3element(q, scheme, tol)?
    };
    let err = su2::sign_blind_distance(su2::product_of_factors(&f), q);
    let flag = match f.flag {
        None => Value::Null,
        Some(su2::Degeneracy::FreeOuterAngle) => json!("free-outer-angle"),
        Some(su2::Degeneracy::GimbalLock) => json!("gimbal-lock"),
    };
    Ok(json!({
        "scheme": scheme.label(),
        "angles": real_array(&[f.a, f.b, f.c]),
        "flag": flag,
        "reconstruction_error": err,
    }))
}

pub fn boost(beta: f64, axis: &str, one: Option<&str>, csv: Option<&str>, tol: f64) -> Out {
    let spec = BoostSpec::new(beta, real_n::<3>(axis)?)?;
    let l = covering::covering_map(&covering::boost(spec.beta, spec.e)?)?;
    let v = stokes_inputs(one, csv, tol)?;
    Ok(json!({
        "rapidity": spec.beta,
        "axis": real_array(&spec.e),
        "mueller": matrix_r(&l),
        "stokes": apply_all(&l, &v, one.is_some()),
    }))
}

pub fn rotate(phi: f64, axis: &str, one: Option<&str>, csv: Option<&str>, tol: f64) -> Out {
    let k = covering::rotation(phi, real_n::<3>(axis)?)?;
    let l = covering::covering_map(&k)?;
    let v = stokes_inputs(one, csv, tol)?;
    Ok(json!({
        "angle": phi,
        "k": spinor_params(&k),
        "mueller": matrix_r(&l),
        "stokes": apply_all(&l, &v, one.is_some()),
    }))
}

fn polar_doc(p: &decomp::PolarDecomposition, k: &SpinorParams) -> Value {
    let target = covering::spinor_matrix(k);
    let r = p.reconstruct();
    // sign-blind: k and -k give the same Lorentz matrix
    let err = r.max_diff(&target).min(r.scale(C64::from(-1.0)).max_diff(&target));
    json!({
        "rotation": real_array(&p.rotation),
        "velocity": real_array(&p.velocity),
        "rapidity": p.rapidity(),
        "reconstruction_error": err,
    })
}

pub fn decompose(k: &str, order: PolarOrder, tol: f64) -> Out {
    let k = SpinorParams::new(polarkit::json::parse_complex_n::<4>(&json_arg(k)?).map_err(ParseError::from)?);
    let k = k.unit(tol)?;
    let mut doc = Map::new();
    if matches!(order, PolarOrder::RotationFirst | PolarOrder::Both) {
        doc.insert("rotation_first".into(), polar_doc(&decomp::polar_rotation_boost(&k, tol)?, &k));
    }
    if matches!(order, PolarOrder::BoostFirst | PolarOrder::Both) {
        doc.insert("boost_first".into(), polar_doc(&decomp::polar_boost_rotation(&k, tol)?, &k));
    }
    Ok(Value::Object(doc))
}

pub fn thomas(beta1: f64, axis1: &str, beta2: f64, axis2: &str, tol: f64) -> Out {
    let first = decomp::boost_quad(beta1, real_n::<3>(axis1)?)?;
    let second = decomp::boost_quad(beta2, real_n::<3>(axis2)?)?;
    let c = decomp::compose_boosts(first, second, tol)?;
    let [n0, n1, n2, n3] = c.thomas.rotation;
    let s = (n1 * n1 + n2 * n2 + n3 * n3).sqrt();
    let axis = if s > 0.0 { [n1 / s, n2 / s, n3 / s] } else { [0.0; 3] };
    Ok(json!({
        "k": spinor_params(&c.k),
        "scale": c64(c.scale),
        "thomas_rotation": real_array(&c.thomas.rotation),
        "thomas_angle": 2.0 * s.atan2(n0),
        "thomas_axis": real_array(&axis),
        "velocity": real_array(&c.thomas.velocity),
        "rapidity": c.thomas.rapidity(),
    }))
}

pub fn stationary(s: &str, n: &str, scale: f64, tol: f64) -> Out {
    let s = StokesVector::physical(real_n::<4>(s)?, tol)?;
    let k = small_group::stationary_element(&s, real_n::<3>(n)?, scale, tol)?;
    let l = covering::covering_map(&k)?;
    let moved = stokes::mueller_apply_real(&l, &s);
    Ok(json!({
        "k": spinor_params(&k),
        "mueller": matrix_r(&l),
        "residual": max_diff(&moved, &s),
    }))
}

fn transit_one(
    s: &StokesVector,
    t: &StokesVector,
    mode: TransitMode,
    params: Option<&small_group::TransitivityParams>,
    project: bool,
    alpha: f64,
    tol: f64,
) -> polarkit::Result<Value> {
    let family = |p: small_group::TransitivityParams| -> polarkit::Result<Value> {
        let k = small_group::transitivity_general(s, t, &p, tol)?;
        let moved = small_group::maps_to(&k, s)?;
        Ok(json!({
            "params": real_array(&[p.m_plus, p.m_minus, p.n_plus, p.n_minus]),
            "k": spinor_params(&k),
            "constraint_residual": small_group::constraint_residual(s, t, &p, tol)?,
            "orthogonality_residual": small_group::orthogonality_residual(s, t, &p),
            "map_residual": max_diff(&moved, t),
        }))
    };
    match mode {
        TransitMode::PureBoost => family(small_group::pure_boost_params(s, t, tol)?),
        TransitMode::BoostRotation => family(small_group::boost_rotation_params(s, t, tol)?),
        TransitMode::General => {
            let p = *params.ok_or_else(|| polarkit::Error::Domain("general mode needs --params".into()))?;
            family(if project { small_group::project_to_surface(s, t, &p, tol)? } else { p })
        }
        TransitMode::Rotation => {
            let k = small_group::transitivity_rotation(s, t, alpha, tol)?;
            let moved = small_group::maps_to(&k, s)?;
            Ok(json!({ "k": spinor_params(&k), "map_residual": max_diff(&moved, t) }))
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn transit(
    pairs: Option<&str>,
    from: Option<&str>,
    to: Option<&str>,
    mode: TransitMode,
    params: Option<&str>,
    project: bool,
    alpha: f64,
    tol: f64,
) -> Out {
    let params = match params {
        Some(p) => {
            let [m_plus, m_minus, n_plus, n_minus] = real_n::<4>(p)?;
            Some(small_group::TransitivityParams { m_plus, m_minus, n_plus, n_minus })
        }
        None if matches!(mode, TransitMode::General) => {
            return Err(ParseError("general mode needs --params [M+, M-, N+, N-]".into()).into())
        }
        None => None,
    };
    let single = pairs.is_none();
    let list = match (pairs, from, to) {
        (Some(path), _, _) => input::stokes_pairs(path)?,
        (None, Some(a), Some(b)) => vec![(input::stokes(a)?, input::stokes(b)?)],
        _ => return Err(ParseError("give --pairs, or --from with --to".into()).into()),
    };
    if single {
        let (s, t) = &list[0];
        return Ok(transit_one(s, t, mode, params.as_ref(), project, alpha, tol)?);
    }
    let mut worst: Option<ErrorKind> = None;
    let rows: Vec<Value> = list
        .iter()
        .enumerate()
        .map(|(i, (s, t))| match transit_one(s, t, mode, params.as_ref(), project, alpha, tol) {
            Ok(Value::Object(mut m)) => {
                m.insert("row".into(), json!(i + 1));
                Value::Object(m)
            }
            Ok(v) => v,
            Err(e) => {
                // constraint failures outrank domain failures in the exit status
                worst = match (worst, e.kind()) {
                    (Some(ErrorKind::Constraint), _) | (_, ErrorKind::Constraint) => Some(ErrorKind::Constraint),
                    _ => Some(ErrorKind::Domain),
                };
                json!({ "row": i + 1, "error": e.to_string() })
            }
        })
        .collect();
    let doc = json!({ "results": rows });
    match worst {
        None => Ok(doc),
        Some(kind) => Err(CliError::Partial(doc, kind)),
    }
}

pub fn fit(pairs: &str, tol: f64) -> Out {
    let list = input::stokes_pairs(pairs)?;
    let f = small_group::fit_mueller(&list, tol)?;
    Ok(json!({
        "mueller": matrix_r(&f.l),
        "lorentz_deviation": f.lorentz_deviation,
        "rms_residual": f.rms_residual,
    }))
}

fn matrix_arg(arg: &str) -> Result<Matrix4C, CliError> {
    Ok(polarkit::json::parse_matrix(&json_arg(arg)?).map_err(ParseError::from)?)
}

fn spinor_doc(m: &SpinorMatrix) -> Value {
    json!({ "a": c64(m.a), "b": c64(m.b), "c": c64(m.c), "d": c64(m.d) })
}

/// Real-basis matrices are emitted as reals when the imaginary parts vanish.
fn real_or_complex(m: &Matrix4C, tol: f64) -> Value {
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if m.iter().all(|z| z.im.abs() <= tol * scale) {
        matrix_r(&m.map(|z| z.re))
    } else {
        matrix_c(m)
    }
}

pub fn convert(
    basis: Basis,
    lorentz: Option<&str>,
    iso: Option<&str>,
    spinor: Option<&str>,
    recover: bool,
    tol: f64,
) -> Out {
    // everything is routed through the isotropic form U
    let (u, given) = match (lorentz, iso, spinor) {
        (Some(l), _, _) => (isotropic::to_isotropic(&matrix_arg(l)?), None),
        (None, Some(u), _) => (matrix_arg(u)?, None),
        (None, None, Some(k)) => {
            let k = SpinorParams::new(polarkit::json::parse_complex_n::<4>(&json_arg(k)?).map_err(ParseError::from)?);
            let m = covering::spinor_matrix(&k.unit(tol)?);
            (isotropic::isotropic_from_spinor(&m, tol)?, Some(m))
        }
        _ => return Err(ParseError("give one of --lorentz, --isotropic or --spinor".into()).into()),
    };
    let mut doc = Map::new();
    match basis {
        Basis::Isotropic => {
            doc.insert("basis".into(), json!("isotropic"));
            doc.insert("matrix".into(), matrix_c(&u));
        }
        Basis::Real => {
            doc.insert("basis".into(), json!("real"));
            doc.insert("matrix".into(), real_or_complex(&isotropic::from_isotropic(&u), tol));
        }
    }
    if recover || given.is_some() {
        let (m, branch) = isotropic::recover_spinor(&u, tol)?;
        doc.insert("spinor".into(), spinor_doc(&m));
        doc.insert("branch".into(), json!(format!("{branch:?}").to_lowercase()));
        if let Some(g) = given {
            let err = m.max_diff(&g).min(m.scale(C64::from(-1.0)).max_diff(&g));
            doc.insert("recovery_error".into(), json!(err));
        }
    }
    Ok(Value::Object(doc))
}

fn flag_value(f: Option<jones::JonesFlag>) -> Value {
    match f {
        None => Value::Null,
        Some(jones::JonesFlag::Axis) => json!("axis"),
        Some(jones::JonesFlag::Seam) => json!("seam"),
    }
}

fn bispinor_arg(arg: &str) -> Result<jones::JonesBiSpinor, CliError> {
    let v = json_arg(arg)?;
    let part = |key: &str| -> Result<[C64; 2], ParseError> {
        let x = v.get(key).ok_or_else(|| ParseError(format!("bi-spinor needs \"{key}\"")))?;
        Ok(polarkit::json::parse_complex_n::<2>(x)?)
    };
    Ok(jones::JonesBiSpinor::new(part("xi")?, part("eta")?))
}

pub fn jones(
    s: Option<&str>,
    spinor: Option<&str>,
    bispinor: Option<&str>,
    gamma: f64,
    model: Model,
    tol: f64,
) -> Out {
    if let Some(s) = s {
        let s = StokesVector::physical(real_n::<4>(s)?, tol)?;
        let (j, flag) = match model {
            Model::Standard => jones::jones_from_stokes(&s, gamma, tol)?,
            Model::Alt => jones::alt_spinor_model(&s, tol)?,
        };
        return Ok(json!({ "spinor": complex_array(&j.psi), "flag": flag_value(flag) }));
    }
    if let Some(p) = spinor {
        let psi = polarkit::json::parse_complex_n::<2>(&json_arg(p)?).map_err(ParseError::from)?;
        let j = jones::JonesSpinor::new(psi);
        let s = match model {
            Model::Standard => jones::stokes_from_jones(&j),
            Model::Alt => jones::stokes_from_alt(&j),
        };
        let mut doc = json!({ "stokes": real_array(&s.s) });
        if matches!(model, Model::Standard) {
            let (_, t) = jones::polarized_stokes_tensor(psi)?;
            let (i1, i2) = t.invariants();
            doc["tensor"] = json!({ "a": real_array(&t.a), "b": real_array(&t.b), "invariants": real_array(&[i1, i2]) });
        }
        return Ok(doc);
    }
    if let Some(b) = bispinor {
        let b = bispinor_arg(b)?;
        let s = jones::partly_polarized_stokes(&b)?;
        let (lo, hi) = jones::partly_polarized_bounds(&b);
        return Ok(json!({
            "stokes": real_array(&s.s),
            "invariant": jones::partly_polarized_invariant(&b),
            "invariant_bounds": real_array(&[lo, hi]),
        }));
    }
    Err(ParseError("give one of --stokes, --spinor or --bispinor".into()).into())
}
