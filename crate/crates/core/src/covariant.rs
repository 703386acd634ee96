//! The quadratic covariant `Q_n = (F, F)_{2n}` of the generic binary form
//! `F = sum_j f_j x^{2n+1-j} z^j`, and its discriminant.
//!
//! Two constructions are provided. [`q_closed`] assembles `A_n`, `B_n`,
//! `C_n` from the factorial sums and is the production path.
//! [`q_transvectant`] differentiates `F` formally and evaluates the
//! transvectant sum directly; it exists to check the first one.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{binomial, Factorials};
use crate::error::{check_range, Error, Result};
use crate::polyring::{IntPoly, Monomial, Specialization};

/// Size parameters of the generic form of degree `2n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormParams {
    pub n: usize,
    /// `N = 2n`, the transvectant order.
    pub order: usize,
    /// `M = 2n + 1`, the degree of `F`.
    pub degree: usize,
    /// `m = n + 2`.
    pub m: usize,
}

impl FormParams {
    pub fn new(n: usize) -> Result<Self> {
        check_range("n", n as i128, 1, u32::MAX as i128 / 4)?;
        Ok(FormParams {
            n,
            order: 2 * n,
            degree: 2 * n + 1,
            m: n + 2,
        })
    }
}

/// `A x^2 + B xz + C z^2` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuadForm {
    pub a: IntPoly,
    pub b: IntPoly,
    pub c: IntPoly,
}

impl QuadForm {
    pub fn discriminant(&self) -> IntPoly {
        discriminant(self)
    }

    pub fn scale(&self, k: &BigInt) -> QuadForm {
        QuadForm {
            a: self.a.scale(k),
            b: self.b.scale(k),
            c: self.c.scale(k),
        }
    }

    pub fn divide_exact_by_int(&self, d: &BigInt) -> Result<QuadForm> {
        Ok(QuadForm {
            a: self.a.divide_exact_by_int(d)?,
            b: self.b.divide_exact_by_int(d)?,
            c: self.c.divide_exact_by_int(d)?,
        })
    }

    pub fn reduce_mod(&self, modulus: &BigInt) -> QuadForm {
        QuadForm {
            a: self.a.reduce_mod(modulus),
            b: self.b.reduce_mod(modulus),
            c: self.c.reduce_mod(modulus),
        }
    }

    /// `(A(s), B(s), C(s))`.
    pub fn evaluate(&self, s: &Specialization) -> [BigInt; 3] {
        [self.a.evaluate(s), self.b.evaluate(s), self.c.evaluate(s)]
    }

    pub fn parts(&self) -> [&IntPoly; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// The reduced fraction `num/den` with `self = (num/den)·other`, if one
    /// exists. Both forms must be nonzero.
    pub fn ratio_to(&self, other: &QuadForm) -> Option<(BigInt, BigInt)> {
        let (part, m, mut den) = other
            .parts()
            .into_iter()
            .enumerate()
            .find_map(|(i, p)| p.terms().next().map(|(m, c)| (i, m.clone(), c.clone())))?;
        let mut num = self.parts()[part].coefficient_of(&m);
        let g = num.gcd(&den);
        num /= &g;
        den /= &g;
        if den < BigInt::zero() {
            num = -num;
            den = -den;
        }
        let lhs = self.scale(&den);
        let rhs = other.scale(&num);
        (lhs == rhs).then_some((num, den))
    }
}

/// `B^2 - 4AC`.
pub fn discriminant(q: &QuadForm) -> IntPoly {
    let four_ac = (&q.a * &q.c).scale(&BigInt::from(4));
    &q.b.square() - &four_ac
}

fn sign(i: usize) -> BigInt {
    if i % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn alpha_with(fac: &Factorials, p: &FormParams, i: usize) -> BigUint {
    fac.get(p.degree - i) * fac.get(i)
}

fn beta_with(fac: &Factorials, p: &FormParams, i: usize) -> BigUint {
    fac.get(p.order - i) * fac.get(i + 1)
}

/// `alpha_i = (2n+1-i)!·i!` for `0 <= i <= 2n`.
pub fn alpha(n: usize, i: usize) -> Result<BigUint> {
    let p = FormParams::new(n)?;
    check_range("i", i as i128, 0, p.order as i128)?;
    Ok(alpha_with(&Factorials::up_to(p.degree), &p, i))
}

/// `beta_i = (2n-i)!·(i+1)!` for `0 <= i <= 2n`.
pub fn beta(n: usize, i: usize) -> Result<BigUint> {
    let p = FormParams::new(n)?;
    check_range("i", i as i128, 0, p.order as i128)?;
    Ok(beta_with(&Factorials::up_to(p.degree), &p, i))
}

fn pair(i: usize, j: usize) -> Monomial {
    Monomial::product_of(&[i as u32, j as u32])
}

/// `Q_n` from the closed sums over `0 <= i <= 2n`:
///
/// ```text
/// A = sum (-1)^i C(N,i) a_i b_i f_i f_{N-i}
/// B = sum (-1)^i C(N,i) (a_i^2 f_i f_{N+1-i} + b_i^2 f_{i+1} f_{N-i})
/// C = sum (-1)^i C(N,i) a_i b_i f_{i+1} f_{N+1-i}
/// ```
pub fn q_closed(n: usize) -> Result<QuadForm> {
    let p = FormParams::new(n)?;
    let fac = Factorials::up_to(p.degree);
    let big_n = p.order;
    let mut q = QuadForm::default();
    for i in 0..=big_n {
        let w = sign(i) * BigInt::from(binomial(big_n as u64, i as u64));
        let a_i = BigInt::from(alpha_with(&fac, &p, i));
        let b_i = BigInt::from(beta_with(&fac, &p, i));
        let ab = &w * &a_i * &b_i;
        q.a.add_term(pair(i, big_n - i), ab.clone());
        q.c.add_term(pair(i + 1, big_n + 1 - i), ab);
        q.b.add_term(pair(i, big_n + 1 - i), &w * &a_i * &a_i);
        q.b.add_term(pair(i + 1, big_n - i), &w * &b_i * &b_i);
    }
    Ok(q)
}

/// A linear form `X x + Z z` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearForm {
    pub x: IntPoly,
    pub z: IntPoly,
}

impl LinearForm {
    pub fn mul(&self, other: &LinearForm) -> QuadForm {
        QuadForm {
            a: &self.x * &other.x,
            b: &(&self.x * &other.z) + &(&self.z * &other.x),
            c: &self.z * &other.z,
        }
    }
}

fn falling(top: u64, count: u64) -> BigUint {
    (0..count).fold(BigUint::one(), |acc, i| acc * (top - i))
}

/// `d^{dx+dz} F / dx^{dx} dz^{dz}` of the generic form of the given degree.
///
/// Only defined when `dx + dz = degree - 1`, so the result is linear in
/// `x, z`; anything else is reported as an integrity error.
pub fn generic_partial(degree: usize, dx: usize, dz: usize) -> Result<LinearForm> {
    let mut out = LinearForm::default();
    for j in 0..=degree {
        let (xe, ze) = (degree - j, j);
        if xe < dx || ze < dz {
            continue;
        }
        let coeff = BigInt::from(falling(xe as u64, dx as u64) * falling(ze as u64, dz as u64));
        let m = Monomial::var(j as u32);
        match (xe - dx, ze - dz) {
            (1, 0) => out.x.add_term(m, coeff),
            (0, 1) => out.z.add_term(m, coeff),
            rest => {
                return Err(Error::integrity(format!(
                    "partial d^{dx}/dx d^{dz}/dz of degree-{degree} form leaves x^{} z^{}",
                    rest.0, rest.1
                )))
            }
        }
    }
    Ok(out)
}

/// `Q_n` as the literal transvectant
/// `sum_i (-1)^i C(N,i) d^N F/dx^{N-i}dz^i · d^N F/dx^i dz^{N-i}`.
pub fn q_transvectant(n: usize) -> Result<QuadForm> {
    let p = FormParams::new(n)?;
    let big_n = p.order;
    let mut q = QuadForm::default();
    for i in 0..=big_n {
        let left = generic_partial(p.degree, big_n - i, i)?;
        let right = generic_partial(p.degree, i, big_n - i)?;
        let w = sign(i) * BigInt::from(binomial(big_n as u64, i as u64));
        let prod = left.mul(&right).scale(&w);
        q.a = &q.a + &prod.a;
        q.b = &q.b + &prod.b;
        q.c = &q.c + &prod.c;
    }
    Ok(q)
}

/// The Hessian `H(F) = det(Hess F)/4` of the generic cubic, built from its
/// second partials.
pub fn cubic_hessian() -> QuadForm {
    let fxx = generic_partial(3, 2, 0).expect("linear");
    let fxz = generic_partial(3, 1, 1).expect("linear");
    let fzz = generic_partial(3, 0, 2).expect("linear");
    let det = {
        let p = fxx.mul(&fzz);
        let q = fxz.mul(&fxz);
        QuadForm {
            a: &p.a - &q.a,
            b: &p.b - &q.b,
            c: &p.c - &q.c,
        }
    };
    det.divide_exact_by_int(&BigInt::from(4))
        .expect("Hessian determinant is divisible by 4")
}

/// Discriminant of `f_0 x^3 + f_1 x^2 z + f_2 x z^2 + f_3 z^3`:
/// `f1^2 f2^2 - 4 f0 f2^3 - 4 f1^3 f3 - 27 f0^2 f3^2 + 18 f0 f1 f2 f3`.
pub fn cubic_disc() -> IntPoly {
    let t = |c: i64, pairs: &[(u32, u32)]| {
        (Monomial::from_pairs(pairs.iter().copied()), BigInt::from(c))
    };
    IntPoly::from_terms([
        t(1, &[(1, 2), (2, 2)]),
        t(-4, &[(0, 1), (2, 3)]),
        t(-4, &[(1, 3), (3, 1)]),
        t(-27, &[(0, 2), (3, 2)]),
        t(18, &[(0, 1), (1, 1), (2, 1), (3, 1)]),
    ])
}

/// `Q_n` together with its discriminant, computed once and shared by the
/// verification routines.
#[derive(Debug, Clone)]
pub struct Covariant {
    pub params: FormParams,
    pub q: QuadForm,
    pub delta: IntPoly,
}

impl Covariant {
    pub fn new(n: usize) -> Result<Self> {
        let params = FormParams::new(n)?;
        let q = q_closed(n)?;
        let delta = discriminant(&q);
        Ok(Covariant { params, q, delta })
    }

    pub fn n(&self) -> usize {
        self.params.n
    }
}
