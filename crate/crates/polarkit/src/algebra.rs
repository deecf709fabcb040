//! The alpha/beta matrix basis of GL(4,C) and its two commuting
//! four-parameter subgroups.

use crate::{Error, Matrix4C, Result, C64, ONE, ZERO};

pub type IntMat = [[i8; 4]; 4];

pub const ALPHA: [IntMat; 3] = [
    [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
    [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
    [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
];

pub const BETA: [IntMat; 3] = [
    [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
    [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]],
    [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
];

/// Exact integer product, used by the algebra checks.
pub fn int_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let mut out = [[0i8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn int_identity() -> IntMat {
    let mut out = [[0i8; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = 1;
    }
    out
}

fn to_complex(m: &IntMat) -> Matrix4C {
    Matrix4C::from_fn(|i, j| C64::new(m[i][j] as f64, 0.0))
}

fn axis(i: usize) -> Result<usize> {
    if (1..=3).contains(&i) {
        Ok(i - 1)
    } else {
        Err(Error::Domain(format!("axis index {i} outside 1..3")))
    }
}

pub fn alpha_basis(i: usize) -> Result<Matrix4C> {
    Ok(to_complex(&ALPHA[axis(i)?]))
}

pub fn beta_basis(i: usize) -> Result<Matrix4C> {
    Ok(to_complex(&BETA[axis(i)?]))
}

/// 16 complex coordinates: R = E + A_i a^i + B_i b^i + C_ij a^i b^j.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElementParams {
    pub e: C64,
    pub a: [C64; 3],
    pub b: [C64; 3],
    pub c: [[C64; 3]; 3],
}

impl GroupElementParams {
    pub fn identity() -> Self {
        Self::zero().with(0, 0, ONE)
    }

    pub fn zero() -> Self {
        GroupElementParams { e: ZERO, a: [ZERO; 3], b: [ZERO; 3], c: [[ZERO; 3]; 3] }
    }

    /// Coefficient of a^mu b^nu, with index 0 meaning the identity factor.
    pub fn get(&self, mu: usize, nu: usize) -> C64 {
        match (mu, nu) {
            (0, 0) => self.e,
            (i, 0) => self.a[i - 1],
            (0, j) => self.b[j - 1],
            (i, j) => self.c[i - 1][j - 1],
        }
    }

    pub fn set(&mut self, mu: usize, nu: usize, v: C64) {
        match (mu, nu) {
            (0, 0) => self.e = v,
            (i, 0) => self.a[i - 1] = v,
            (0, j) => self.b[j - 1] = v,
            (i, j) => self.c[i - 1][j - 1] = v,
        }
    }

    fn with(mut self, mu: usize, nu: usize, v: C64) -> Self {
        self.set(mu, nu, v);
        self
    }
}

/// Basis element a^mu b^nu as an exact integer matrix.
pub fn basis_element(mu: usize, nu: usize) -> IntMat {
    let a = if mu == 0 { int_identity() } else { ALPHA[mu - 1] };
    let b = if nu == 0 { int_identity() } else { BETA[nu - 1] };
    int_mul(&a, &b)
}

pub fn assemble(p: &GroupElementParams) -> Matrix4C {
    let mut m = Matrix4C::zeros();
    for mu in 0..4 {
        for nu in 0..4 {
            let coef = p.get(mu, nu);
            if coef == ZERO {
                continue;
            }
            let e = basis_element(mu, nu);
            for i in 0..4 {
                for j in 0..4 {
                    if e[i][j] != 0 {
                        m[(i, j)] += coef * e[i][j] as f64;
                    }
                }
            }
        }
    }
    m
}

/// Inverse of `assemble` through trace inner products. Every basis element
/// is a signed permutation, so <b,b> = tr(b^T b) = 4.
pub fn project(m: &Matrix4C) -> GroupElementParams {
    let mut p = GroupElementParams::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            let e = basis_element(mu, nu);
            let mut acc = ZERO;
            for i in 0..4 {
                for j in 0..4 {
                    acc += m[(i, j)] * e[i][j] as f64;
                }
            }
            p.set(mu, nu, acc / 4.0);
        }
    }
    p
}

/// Product of two generators of one family as (sign, index), index 0 = identity.
/// `eps_sign` is +1 for alpha and -1 for beta.
fn unit_product(i: usize, j: usize, eps_sign: f64) -> (f64, usize) {
    match (i, j) {
        (0, j) => (1.0, j),
        (i, 0) => (1.0, i),
        (i, j) if i == j => (-1.0, 0),
        (i, j) => {
            let k = 6 - i - j;
            let cyclic = (i % 3) + 1 == j;
            (if cyclic { eps_sign } else { -eps_sign }, k)
        }
    }
}

/// Closed-form composition: since the families commute,
/// (a^mu b^nu)(a^rho b^sigma) = (a^mu a^rho)(b^nu b^sigma).
pub fn compose_params(p1: &GroupElementParams, p2: &GroupElementParams) -> GroupElementParams {
    let mut out = GroupElementParams::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            let x = p1.get(mu, nu);
            if x == ZERO {
                continue;
            }
            for rho in 0..4 {
                let (sa, lam) = unit_product(mu, rho, 1.0);
                for sigma in 0..4 {
                    let (sb, kap) = unit_product(nu, sigma, -1.0);
                    let v = out.get(lam, kap) + x * p2.get(rho, sigma) * (sa * sb);
                    out.set(lam, kap, v);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Alpha,
    Beta,
}

/// (A0, A1, A2, A3) for R_alpha or R_beta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadParam {
    pub a0: C64,
    pub a: [C64; 3],
}

impl QuadParam {
    pub fn new(a0: C64, a: [C64; 3]) -> Self {
        QuadParam { a0, a }
    }

    pub fn real(q: [f64; 4]) -> Self {
        QuadParam::new(q[0].into(), [q[1].into(), q[2].into(), q[3].into()])
    }

    pub fn identity() -> Self {
        QuadParam::new(ONE, [ZERO; 3])
    }

    pub fn norm2(&self) -> C64 {
        self.a0 * self.a0 + self.a.iter().map(|x| x * x).sum::<C64>()
    }

    pub fn as_array(&self) -> [C64; 4] {
        [self.a0, self.a[0], self.a[1], self.a[2]]
    }

    /// (A0, -A), the relabeling under which the two families are isomorphic.
    pub fn reflect(&self) -> Self {
        QuadParam::new(self.a0, [-self.a[0], -self.a[1], -self.a[2]])
    }
}

pub fn r_alpha(q: &QuadParam) -> Matrix4C {
    let [a0, a1, a2, a3] = q.as_array();
    Matrix4C::new(
        a0, a1, a2, a3, //
        -a1, a0, -a3, a2, //
        -a2, a3, a0, -a1, //
        -a3, -a2, a1, a0,
    )
}

pub fn r_beta(q: &QuadParam) -> Matrix4C {
    let [b0, b1, b2, b3] = q.as_array();
    Matrix4C::new(
        b0, b1, b2, b3, //
        -b1, b0, b3, -b2, //
        -b2, -b3, b0, b1, //
        -b3, b2, -b1, b0,
    )
}

pub fn r_family(q: &QuadParam, family: Family) -> Matrix4C {
    match family {
        Family::Alpha => r_alpha(q),
        Family::Beta => r_beta(q),
    }
}

/// Quaternion-style product; the beta family flips the epsilon term.
pub fn compose_quad(q1: &QuadParam, q2: &QuadParam, family: Family) -> QuadParam {
    let s = match family {
        Family::Alpha => 1.0,
        Family::Beta => -1.0,
    };
    let (x, y) = (q1.a, q2.a);
    let dot: C64 = (0..3).map(|i| x[i] * y[i]).sum();
    let cr = [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ];
    let mut a = [ZERO; 3];
    for i in 0..3 {
        a[i] = q1.a0 * y[i] + q2.a0 * x[i] + cr[i] * s;
    }
    QuadParam::new(q1.a0 * q2.a0 - dot, a)
}

pub fn quad_inverse(q: &QuadParam, tol: f64) -> Result<QuadParam> {
    let n2 = q.norm2();
    if n2.norm() <= tol {
        return Err(Error::Singular(n2.norm()));
    }
    let r = q.reflect();
    Ok(QuadParam::new(r.a0 / n2, r.a.map(|x| x / n2)))
}

/// diag(1,-1,-1,-1), which intertwines R_alpha(B0,-B) with R_beta(B0,B).
pub fn delta() -> Matrix4C {
    Matrix4C::from_diagonal(&nalgebra::Vector4::new(ONE, -ONE, -ONE, -ONE))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_are_minus_identity() {
        let minus: IntMat = {
            let mut m = int_identity();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = -1;
            }
            m
        };
        for k in 0..3 {
            assert_eq!(int_mul(&ALPHA[k], &ALPHA[k]), minus);
            assert_eq!(int_mul(&BETA[k], &BETA[k]), minus);
        }
    }

    #[test]
    fn unit_product_matches_matrices() {
        for i in 0..4 {
            for j in 0..4 {
                for (eps, fam) in [(1.0, &ALPHA), (-1.0, &BETA)] {
                    let g = |k: usize| if k == 0 { int_identity() } else { fam[k - 1] };
                    let (s, k) = unit_product(i, j, eps);
                    let mut want = g(k);
                    for row in want.iter_mut() {
                        for x in row.iter_mut() {
                            *x *= s as i8;
                        }
                    }
                    assert_eq!(int_mul(&g(i), &g(j)), want, "{i}{j}");
                }
            }
        }
    }

    #[test]
    fn first_row_of_r_alpha() {
        let q = QuadParam::new(C64::new(1.0, 2.0), [C64::new(3.0, 0.0), C64::new(0.0, 4.0), C64::new(5.0, -1.0)]);
        let m = r_alpha(&q);
        assert_eq!([m[(0, 0)], m[(0, 1)], m[(0, 2)], m[(0, 3)]], q.as_array());
    }

    #[test]
    fn bad_axis() {
        assert!(alpha_basis(0).is_err());
        assert!(beta_basis(4).is_err());
    }
}
