//! Euler-type factorizations of SU(2) elements U = n0 + i n.sigma into
//! single-axis factors U_j(t) = cos(t/2) + i sin(t/2) sigma_j.
//!
//! Each scheme is solved by relabeling the quaternion onto a canonical
//! scheme (121 for the two-axis family, 123 for the three-axis family),
//! extracting angles there, and mapping the angles back.

use crate::{Error, Result};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

pub type UnitQuaternion = [f64; 4];

/// Below this conditioning the last angle is recovered from the residual
/// quaternion instead of the closed-form quotient.
const REFINE_BELOW: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    S121,
    S212,
    S131,
    S313,
    S232,
    S323,
    O123,
    O132,
    O231,
    O213,
    O312,
    O321,
}

pub const TWO_ELEMENT: [Scheme; 6] =
    [Scheme::S121, Scheme::S212, Scheme::S131, Scheme::S313, Scheme::S232, Scheme::S323];
pub const THREE_ELEMENT: [Scheme; 6] =
    [Scheme::O123, Scheme::O132, Scheme::O231, Scheme::O213, Scheme::O312, Scheme::O321];

struct Relabel {
    perm: [usize; 3],
    sign: [f64; 3],
    angle_sign: [f64; 3],
}

impl Scheme {
    pub fn label(self) -> &'static str {
        match self {
            Scheme::S121 => "121",
            Scheme::S212 => "212",
            Scheme::S131 => "131",
            Scheme::S313 => "313",
            Scheme::S232 => "232",
            Scheme::S323 => "323",
            Scheme::O123 => "123",
            Scheme::O132 => "132",
            Scheme::O231 => "231",
            Scheme::O213 => "213",
            Scheme::O312 => "312",
            Scheme::O321 => "321",
        }
    }

    /// Rotation axes of the three factors, left to right.
    pub fn axes(self) -> [usize; 3] {
        let d = self.label().as_bytes();
        [(d[0] - b'0') as usize, (d[1] - b'0') as usize, (d[2] - b'0') as usize]
    }

    pub fn is_two_element(self) -> bool {
        TWO_ELEMENT.contains(&self)
    }

    // m_i = sign_i * n_{perm_i}; canonical angles = angle_sign * angles.
    // Odd permutations of the three-axis family need one sign flip, which
    // carries over to the first angle.
    fn relabel(self) -> Relabel {
        let (p, s, a): ([usize; 3], [f64; 3], [f64; 3]) = match self {
            Scheme::S121 => ([1, 2, 3], [1., 1., 1.], [1., 1., 1.]),
            Scheme::S212 => ([2, 1, 3], [1., 1., -1.], [1., 1., 1.]),
            Scheme::S131 => ([1, 3, 2], [1., 1., -1.], [1., 1., 1.]),
            Scheme::S313 => ([3, 1, 2], [1., 1., 1.], [1., 1., 1.]),
            Scheme::S232 => ([2, 3, 1], [1., 1., 1.], [1., 1., 1.]),
            Scheme::S323 => ([3, 2, 1], [1., 1., -1.], [1., 1., 1.]),
            Scheme::O123 => ([1, 2, 3], [1., 1., 1.], [1., 1., 1.]),
            Scheme::O231 => ([2, 3, 1], [1., 1., 1.], [1., 1., 1.]),
            Scheme::O312 => ([3, 1, 2], [1., 1., 1.], [1., 1., 1.]),
            Scheme::O132 => ([1, 3, 2], [-1., 1., 1.], [-1., 1., 1.]),
            Scheme::O213 => ([2, 1, 3], [-1., 1., 1.], [-1., 1., 1.]),
            Scheme::O321 => ([3, 2, 1], [-1., 1., 1.], [-1., 1., 1.]),
        };
        Relabel { perm: p, sign: s, angle_sign: a }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TWO_ELEMENT
            .iter()
            .chain(THREE_ELEMENT.iter())
            .find(|x| x.label() == s)
            .copied()
            .ok_or_else(|| Error::Domain(format!("unknown factorization scheme '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// Two-axis scheme with a vanishing denominator: the second outer angle is set to 0.
    FreeOuterAngle,
    /// Three-axis scheme at |sin b| = 1: only one combination of a and c is fixed, c := 0.
    GimbalLock,
}

/// Angles (a, b, c) of U_i(a) U_j(b) U_k(c), axes given by `scheme`.
/// For two-axis schemes c is the second outer angle a'.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorAngles {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub scheme: Scheme,
    pub flag: Option<Degeneracy>,
}

// Quaternion algebra in the U = n0 + i n.sigma convention:
// (a0, a)(b0, b) = (a0 b0 - a.b, a0 b + b0 a - a x b).
pub fn qmul(p: UnitQuaternion, q: UnitQuaternion) -> UnitQuaternion {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + q[0] * p[1] - (p[2] * q[3] - p[3] * q[2]),
        p[0] * q[2] + q[0] * p[2] - (p[3] * q[1] - p[1] * q[3]),
        p[0] * q[3] + q[0] * p[3] - (p[1] * q[2] - p[2] * q[1]),
    ]
}

pub fn qconj(q: UnitQuaternion) -> UnitQuaternion {
    [q[0], -q[1], -q[2], -q[3]]
}

pub fn axis_factor(axis: usize, t: f64) -> UnitQuaternion {
    let mut q = [(t / 2.0).cos(), 0.0, 0.0, 0.0];
    q[axis] = (t / 2.0).sin();
    q
}

/// Largest component difference to the nearer of +q and -q.
pub fn sign_blind_distance(p: UnitQuaternion, q: UnitQuaternion) -> f64 {
    let plus = (0..4).map(|i| (p[i] - q[i]).abs()).fold(0.0, f64::max);
    let minus = (0..4).map(|i| (p[i] + q[i]).abs()).fold(0.0, f64::max);
    plus.min(minus)
}

fn wrap(t: f64) -> f64 {
    let mut t = t % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Angle of the single-axis element closest to q along `axis`.
fn axis_angle(q: UnitQuaternion, axis: usize) -> f64 {
    2.0 * q[axis].atan2(q[0])
}

fn check_unit(n: UnitQuaternion, tol: f64) -> Result<UnitQuaternion> {
    let s: f64 = n.iter().map(|x| x * x).sum();
    if !s.is_finite() || (s - 1.0).abs() > tol.max(1e-6) {
        return Err(Error::Domain(format!("quaternion norm^2 {s} is not 1")));
    }
    let s = s.sqrt();
    Ok(n.map(|x| x / s))
}

fn to_canonical(n: UnitQuaternion, r: &Relabel) -> UnitQuaternion {
    [n[0], r.sign[0] * n[r.perm[0]], r.sign[1] * n[r.perm[1]], r.sign[2] * n[r.perm[2]]]
}

fn from_canonical(m: UnitQuaternion, r: &Relabel) -> UnitQuaternion {
    let mut n = [m[0], 0.0, 0.0, 0.0];
    for i in 0..3 {
        n[r.perm[i]] = r.sign[i] * m[i + 1];
    }
    n
}

/// Scheme 121 on an already relabeled quaternion.
fn canonical_121(m: UnitQuaternion, tol: f64) -> (f64, f64, f64, Option<Degeneracy>) {
    let y0 = m[0].hypot(m[1]);
    let y2 = m[2].hypot(m[3]);
    let den = y0 * y2;
    let b = (2.0 * den).atan2(y0 * y0 - y2 * y2);
    let head = |a: f64| qmul(axis_factor(1, a), axis_factor(2, b));
    if den <= tol {
        // pure outer-axis or pure middle-axis element; a' is free
        let a = axis_angle(qmul(m, axis_factor(2, -b)), 1);
        return (a, b, 0.0, Some(Degeneracy::FreeOuterAngle));
    }
    let a = (m[1] * m[2] - m[0] * m[3]).atan2(m[0] * m[2] + m[1] * m[3]);
    let a2 = if den < REFINE_BELOW {
        axis_angle(qmul(qconj(head(a)), m), 1)
    } else {
        (m[0] * m[3] + m[1] * m[2]).atan2(m[0] * m[2] - m[1] * m[3])
    };
    (a, b, a2, None)
}

/// Scheme 123 on an already relabeled quaternion.
fn canonical_123(m: UnitQuaternion, tol: f64) -> (f64, f64, f64, Option<Degeneracy>) {
    let [n0, n1, n2, n3] = m;
    let sb = 2.0 * (n0 * n2 - n1 * n3);
    let p = 2.0 * (n2 * n3 + n0 * n1);
    let q = n0 * n0 + n3 * n3 - n1 * n1 - n2 * n2;
    let cb = p.hypot(q);
    let b = sb.atan2(cb);
    if cb <= tol {
        let a = axis_angle(qmul(m, axis_factor(2, -b)), 1);
        return (a, b, 0.0, Some(Degeneracy::GimbalLock));
    }
    let a = p.atan2(q);
    let c = if cb < REFINE_BELOW {
        let head = qmul(axis_factor(1, a), axis_factor(2, b));
        axis_angle(qmul(qconj(head), m), 3)
    } else {
        (2.0 * (n0 * n3 + n1 * n2)).atan2(n0 * n0 - n3 * n3 + n1 * n1 - n2 * n2)
    };
    (a, b, c, None)
}

fn factor(n: UnitQuaternion, scheme: Scheme, tol: f64) -> Result<FactorAngles> {
    let n = check_unit(n, tol)?;
    let r = scheme.relabel();
    let m = to_canonical(n, &r);
    let (a, b, c, flag) =
        if scheme.is_two_element() { canonical_121(m, tol) } else { canonical_123(m, tol) };
    let s = r.angle_sign;
    Ok(FactorAngles { a: wrap(s[0] * a), b: s[1] * b, c: wrap(s[2] * c), scheme, flag })
}

pub fn factor_2element(n: UnitQuaternion, scheme: Scheme, tol: f64) -> Result<FactorAngles> {
    if !scheme.is_two_element() {
        return Err(Error::Domain(format!("{scheme} is not a two-element scheme")));
    }
    factor(n, scheme, tol)
}

pub fn factor_3element(n: UnitQuaternion, order: Scheme, tol: f64) -> Result<FactorAngles> {
    if order.is_two_element() {
        return Err(Error::Domain(format!("{order} is not a three-element order")));
    }
    factor(n, order, tol)
}

/// U_1(a) U_2(b) U_1(a') written out in half-angle components.
pub fn closed_form_121(a: f64, b: f64, a2: f64) -> UnitQuaternion {
    let (x0, x1) = ((a / 2.0).cos(), (a / 2.0).sin());
    let (y0, y2) = ((b / 2.0).cos(), (b / 2.0).sin());
    let (u0, u1) = ((a2 / 2.0).cos(), (a2 / 2.0).sin());
    [
        y0 * (x0 * u0 - x1 * u1),
        y0 * (x1 * u0 + x0 * u1),
        y2 * (x0 * u0 + x1 * u1),
        y2 * (-x1 * u0 + x0 * u1),
    ]
}

/// U_1(a) U_2(b) U_3(c) written out in half-angle components.
pub fn closed_form_123(a: f64, b: f64, c: f64) -> UnitQuaternion {
    let (x0, x1) = ((a / 2.0).cos(), (a / 2.0).sin());
    let (y0, y2) = ((b / 2.0).cos(), (b / 2.0).sin());
    let (z0, z3) = ((c / 2.0).cos(), (c / 2.0).sin());
    [
        x0 * y0 * z0 + x1 * y2 * z3,
        x1 * y0 * z0 - x0 * y2 * z3,
        x0 * y2 * z0 + x1 * y0 * z3,
        x0 * y0 * z3 - x1 * y2 * z0,
    ]
}

pub fn compose_axis_rotations(angles: &FactorAngles) -> UnitQuaternion {
    let r = angles.scheme.relabel();
    let s = r.angle_sign;
    let (a, b, c) = (s[0] * angles.a, s[1] * angles.b, s[2] * angles.c);
    let m = if angles.scheme.is_two_element() {
        closed_form_121(a, b, c)
    } else {
        closed_form_123(a, b, c)
    };
    from_canonical(m, &r)
}

/// Direct product of the three axis factors, independent of the relabel tables.
pub fn product_of_factors(angles: &FactorAngles) -> UnitQuaternion {
    let ax = angles.scheme.axes();
    let t = [angles.a, angles.b, angles.c];
    (0..3).fold([1.0, 0.0, 0.0, 0.0], |acc, i| qmul(acc, axis_factor(ax[i], t[i])))
}

/// Scheme 121 system I: given a', solve the first outer angle a from the
/// first row of the linear system in (x0, x1).
pub fn system_i_first_angle(n: UnitQuaternion, a2: f64) -> f64 {
    let (u0, u1) = ((a2 / 2.0).cos(), (a2 / 2.0).sin());
    // each row alone fixes (x0, x1) up to scale; take the better conditioned one
    let top = (n[0] * u0 + n[1] * u1, n[1] * u0 - n[0] * u1);
    let bottom = (n[2] * u0 + n[3] * u1, n[2] * u1 - n[3] * u0);
    let (x0, x1) = if top.0.hypot(top.1) >= bottom.0.hypot(bottom.1) { top } else { bottom };
    2.0 * x1.atan2(x0)
}

/// Scheme 121 system II: given a, solve a' from the rows in (x0', x1').
pub fn system_ii_second_angle(n: UnitQuaternion, a: f64) -> f64 {
    let (x0, x1) = ((a / 2.0).cos(), (a / 2.0).sin());
    let top = (n[0] * x0 + n[1] * x1, n[1] * x0 - n[0] * x1);
    let bottom = (n[2] * x0 - n[3] * x1, n[2] * x1 + n[3] * x0);
    let (u0, u1) = if top.0.hypot(top.1) >= bottom.0.hypot(bottom.1) { top } else { bottom };
    2.0 * u1.atan2(u0)
}
