//! Stationary subgroups of Stokes vectors and the transitivity problem
//! L S = S'.

use crate::covering::{covering_map, SpinorParams};
use crate::stokes::StokesVector;
use crate::{cross, dot, metric, Error, Matrix4R, Result, C64};
use nalgebra::{DMatrix, DVector};

/// Element of the little group of S: k0 = n0, k = -i n + n x p.
pub fn stationary_element(s: &StokesVector, n: [f64; 3], scale: f64, tol: f64) -> Result<SpinorParams> {
    if s.s[0] <= tol {
        return Err(Error::Domain("stationary subgroup needs positive intensity".into()));
    }
    let p = s.spatial().map(|x| x / s.s[0]);
    let m = cross(n, p);
    let det = scale * scale + dot(n, n) - dot(m, m);
    if det <= tol {
        return Err(Error::Degenerate(format!("no unit element: n0^2 + n^2 - m^2 = {det:e}")));
    }
    let k = SpinorParams::from_split(scale, n, 0.0, m);
    Ok(k.scale(C64::from(1.0 / det.sqrt())))
}

/// Free parameters of the transitivity solution family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitivityParams {
    pub m_plus: f64,
    pub m_minus: f64,
    pub n_plus: f64,
    pub n_minus: f64,
}

struct Sums {
    s0p: f64,
    s0m: f64,
    sp: [f64; 3],
    sm: [f64; 3],
}

fn sums(s: &StokesVector, t: &StokesVector) -> Sums {
    let (a, b) = (s.spatial(), t.spatial());
    Sums {
        s0p: s.s[0] + t.s[0],
        s0m: s.s[0] - t.s[0],
        sp: [a[0] + b[0], a[1] + b[1], a[2] + b[2]],
        sm: [a[0] - b[0], a[1] - b[1], a[2] - b[2]],
    }
}

fn check_pair(s: &StokesVector, t: &StokesVector, tol: f64) -> Result<Sums> {
    let scale = s.s[0].abs().max(t.s[0].abs()).max(1e-300);
    let (ia, ib) = (s.invariant(), t.invariant());
    if (ia - ib).abs() > tol * scale * scale {
        return Err(Error::Incompatible(ia, ib));
    }
    let sm = sums(s, t);
    if sm.s0m.abs() <= tol * scale {
        return Err(Error::NonRelativistic);
    }
    Ok(sm)
}

/// (n0, n, m0, m) of the general solution, no constraint applied.
fn assemble(sm: &Sums, p: &TransitivityParams) -> (f64, [f64; 3], f64, [f64; 3]) {
    let x = cross(sm.sm, sm.sp);
    let mut n = [0.0; 3];
    let mut m = [0.0; 3];
    for i in 0..3 {
        n[i] = p.n_plus * sm.sp[i] + p.n_minus * sm.sm[i] + p.m_plus / sm.s0m * x[i];
        m[i] = p.m_plus * sm.sp[i] + p.m_minus * sm.sm[i] + p.n_minus / sm.s0p * x[i];
    }
    let n0 = (p.m_plus * dot(sm.sp, sm.sp) + p.m_minus * dot(sm.sm, sm.sp)) / sm.s0m;
    let m0 = -(p.n_plus * dot(sm.sp, sm.sm) + p.n_minus * dot(sm.sm, sm.sm)) / sm.s0p;
    (n0, n, m0, m)
}

fn surface(sm: &Sums, p: &TransitivityParams) -> f64 {
    let (n0, n, m0, m) = assemble(sm, p);
    n0 * n0 + dot(n, n) - m0 * m0 - dot(m, m)
}

/// F - 1, where F = n0^2 + n^2 - m0^2 - m^2 is det B(k) of the assembled element.
pub fn constraint_residual(
    s: &StokesVector,
    t: &StokesVector,
    p: &TransitivityParams,
    tol: f64,
) -> Result<f64> {
    let sm = check_pair(s, t, tol)?;
    Ok(surface(&sm, p) - 1.0)
}

/// n0 m0 + n.m, which vanishes for every member of the family.
pub fn orthogonality_residual(s: &StokesVector, t: &StokesVector, p: &TransitivityParams) -> f64 {
    let (n0, n, m0, m) = assemble(&sums(s, t), p);
    n0 * m0 + dot(n, m)
}

/// The family member with the given parameters, which must lie on F = 1.
pub fn transitivity_general(
    s: &StokesVector,
    t: &StokesVector,
    p: &TransitivityParams,
    tol: f64,
) -> Result<SpinorParams> {
    let sm = check_pair(s, t, tol)?;
    let r = surface(&sm, p) - 1.0;
    // the residual is renormalized away, so allow some slack over tol
    if r.abs() > 1e2 * tol {
        return Err(Error::OffSurface(r));
    }
    let (n0, n, m0, m) = assemble(&sm, p);
    let k = SpinorParams::from_split(n0, n, m0, m);
    Ok(k.scale(C64::from(1.0 / (r + 1.0).sqrt())))
}

/// Pure boost member: only M- nonzero, k = M-(S0+, S-).
pub fn pure_boost_params(s: &StokesVector, t: &StokesVector, tol: f64) -> Result<TransitivityParams> {
    let sm = check_pair(s, t, tol)?;
    let d = sm.s0p * sm.s0p - dot(sm.sm, sm.sm);
    if d <= 0.0 {
        return Err(Error::Degenerate("pure boost needs (S0+)^2 > |S-|^2".into()));
    }
    Ok(TransitivityParams { m_plus: 0.0, m_minus: 1.0 / d.sqrt(), n_plus: 0.0, n_minus: 0.0 })
}

/// Boost-plus-rotation member: only N+ nonzero, k = -i N+ (S0-, S+).
pub fn boost_rotation_params(s: &StokesVector, t: &StokesVector, tol: f64) -> Result<TransitivityParams> {
    let sm = check_pair(s, t, tol)?;
    let d = dot(sm.sp, sm.sp) - sm.s0m * sm.s0m;
    if d <= 0.0 {
        return Err(Error::Degenerate("needs |S+|^2 > (S0-)^2".into()));
    }
    Ok(TransitivityParams { m_plus: 0.0, m_minus: 0.0, n_plus: 1.0 / d.sqrt(), n_minus: 0.0 })
}

/// Roots of F(x) = 1 along one parameter; F is quadratic in each of them.
fn solve_along(sm: &Sums, p: &TransitivityParams, set: fn(&mut TransitivityParams, f64), x0: f64) -> Option<f64> {
    let at = |x: f64| {
        let mut q = *p;
        set(&mut q, x);
        surface(sm, &q)
    };
    let (f0, f1, fm) = (at(0.0), at(1.0), at(-1.0));
    let a = (f1 + fm) / 2.0 - f0;
    let b = (f1 - fm) / 2.0;
    let c = f0 - 1.0;
    let roots = if a.abs() < 1e-14 * (b.abs() + c.abs()).max(1.0) {
        if b == 0.0 {
            return None;
        }
        vec![-c / b]
    } else {
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return None;
        }
        // stable quadratic roots
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        let mut r = vec![q / a];
        if q != 0.0 {
            r.push(c / q);
        }
        r
    };
    let mut x = roots.into_iter().min_by(|u, v| (u - x0).abs().total_cmp(&(v - x0).abs()))?;
    // the coefficients came from differences of large values; polish on F itself
    for _ in 0..3 {
        let slope = 2.0 * a * x + b;
        if slope == 0.0 {
            break;
        }
        x -= (at(x) - 1.0) / slope;
    }
    Some(x)
}

/// Moves off-surface parameters onto F = 1 by re-solving M- (falling back to N+),
/// keeping the other three parameters fixed.
pub fn project_to_surface(
    s: &StokesVector,
    t: &StokesVector,
    p: &TransitivityParams,
    tol: f64,
) -> Result<TransitivityParams> {
    let sm = check_pair(s, t, tol)?;
    let mut q = *p;
    if let Some(x) = solve_along(&sm, p, |q, x| q.m_minus = x, p.m_minus) {
        q.m_minus = x;
        return Ok(q);
    }
    if let Some(x) = solve_along(&sm, p, |q, x| q.n_plus = x, p.n_plus) {
        q.n_plus = x;
        return Ok(q);
    }
    Err(Error::OffSurface(surface(&sm, p) - 1.0))
}

/// Rotation carrying S to S' when S0 = S0':
/// n = alpha (S + S') + (S x S')/(S^2 + S.S'), n0 = 1, then normalized.
pub fn transitivity_rotation(s: &StokesVector, t: &StokesVector, alpha: f64, tol: f64) -> Result<SpinorParams> {
    let scale = s.s[0].abs().max(t.s[0].abs()).max(1e-300);
    if (s.s[0] - t.s[0]).abs() > tol * scale {
        return Err(Error::Domain("rotation needs equal intensities".into()));
    }
    let (a, b) = (s.spatial(), t.spatial());
    let (la, lb) = (dot(a, a).sqrt(), dot(b, b).sqrt());
    if (la - lb).abs() > tol * scale {
        return Err(Error::Domain("rotation needs equal polarization lengths".into()));
    }
    if la <= tol * scale {
        return Ok(SpinorParams::identity());
    }
    let den = dot(a, a) + dot(a, b);
    if den <= tol * la * la {
        return Err(Error::Degenerate("antipodal polarization vectors".into()));
    }
    let x = cross(a, b);
    let n: [f64; 3] = std::array::from_fn(|i| alpha * (a[i] + b[i]) + x[i] / den);
    let norm = (1.0 + dot(n, n)).sqrt();
    Ok(SpinorParams::from_split(1.0 / norm, n.map(|v| v / norm), 0.0, [0.0; 3]))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MuellerFit {
    pub l: Matrix4R,
    /// max |L^T g L - g|
    pub lorentz_deviation: f64,
    /// root-mean-square of L S - S' over all components
    pub rms_residual: f64,
}

/// Unconstrained least-squares Mueller matrix from (S, S') pairs.
pub fn fit_mueller(pairs: &[(StokesVector, StokesVector)], tol: f64) -> Result<MuellerFit> {
    if pairs.len() < 4 {
        let (rank, null_directions) = stacked_null_space(pairs);
        return Err(Error::UnderDetermined { rank, null_directions });
    }
    for (s, t) in pairs {
        let scale = s.s[0].abs().max(t.s[0].abs()).max(1e-300);
        if (s.invariant() - t.invariant()).abs() > tol * scale * scale {
            return Err(Error::Incompatible(s.invariant(), t.invariant()));
        }
    }
    let (a, y) = stacked(pairs);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let rank = svd.singular_values.iter().filter(|&&x| x > 1e-12 * smax).count();
    if rank < 16 {
        let (rank, null_directions) = stacked_null_space(pairs);
        return Err(Error::UnderDetermined { rank, null_directions });
    }
    let x = svd
        .solve(&y, 1e-12 * smax)
        .map_err(|e| Error::Internal(e.to_string()))?;
    let l = Matrix4R::from_fn(|i, j| x[4 * i + j]);
    let g = metric();
    let dev = (l.transpose() * g * l - g).abs().max();
    let r = &a * &x - &y;
    Ok(MuellerFit { l, lorentz_deviation: dev, rms_residual: (r.norm_squared() / r.len() as f64).sqrt() })
}

// Unknown x[4i + j] = L_ij; row 4p + i reads sum_j L_ij S_j = S'_i.
fn stacked(pairs: &[(StokesVector, StokesVector)]) -> (DMatrix<f64>, DVector<f64>) {
    let mut a = DMatrix::zeros(4 * pairs.len(), 16);
    let mut y = DVector::zeros(4 * pairs.len());
    for (p, (s, t)) in pairs.iter().enumerate() {
        for i in 0..4 {
            for j in 0..4 {
                a[(4 * p + i, 4 * i + j)] = s.s[j];
            }
            y[4 * p + i] = t.s[i];
        }
    }
    (a, y)
}

fn stacked_null_space(pairs: &[(StokesVector, StokesVector)]) -> (usize, Vec<[f64; 16]>) {
    let (a, _) = stacked(pairs);
    // Gram matrix keeps the SVD square even with fewer than 16 rows.
    let gram = a.transpose() * &a;
    let eig = gram.symmetric_eigen();
    let emax = eig.eigenvalues.max().max(1e-300);
    let mut null = Vec::new();
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam <= 1e-12 * emax {
            null.push(std::array::from_fn(|i| eig.eigenvectors[(i, k)]));
        }
    }
    (16 - null.len(), null)
}

/// L S for convenience in solver checks.
pub fn maps_to(k: &SpinorParams, s: &StokesVector) -> Result<StokesVector> {
    Ok(crate::stokes::mueller_apply_real(&covering_map(k)?, s))
}
