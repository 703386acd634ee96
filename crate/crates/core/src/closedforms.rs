//! Closed-form coefficients of `Q_n` and `Delta_n`.
//!
//! Every formula here is plain exact integer evaluation. The covariant
//! module supplies the polynomials these values are checked against.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{binomial, Factorials};
use crate::covariant::FormParams;
use crate::error::{check_range, Error, Result};
use crate::polyring::Monomial;

fn signed(j: usize, x: BigInt) -> BigInt {
    if j % 2 == 0 {
        x
    } else {
        -x
    }
}

/// Factorial table sized for everything the closed forms at `n` need.
pub(crate) fn table(p: &FormParams) -> Factorials {
    Factorials::up_to(p.degree)
}

pub(crate) fn b_diag_with(fac: &Factorials, p: &FormParams, j: usize) -> BigInt {
    let linear = p.degree as i64 - 2 * j as i64;
    let mag = fac.get(p.order) * fac.get(p.degree - j) * fac.get(j);
    signed(j, BigInt::from(mag) * linear * 2)
}

/// Coefficient of `f_j f_{M-j}` in `B_n`, `M = 2n+1`:
/// `2 (-1)^j N! (M - 2j) (M - j)! j!`, for `0 <= j <= M`.
pub fn b_diag(n: usize, j: usize) -> Result<BigInt> {
    let p = FormParams::new(n)?;
    check_range("j", j as i128, 0, p.degree as i128)?;
    Ok(b_diag_with(&table(&p), &p, j))
}

/// The same coefficient as `2 (-1)^k (N!)^2 (N+1-k)(N+1-2k) / C(N,k)` for
/// `1 <= k <= N`, with the division checked for exactness.
pub fn b_diag_via_binomial(n: usize, k: usize) -> Result<BigInt> {
    let p = FormParams::new(n)?;
    check_range("k", k as i128, 1, p.order as i128)?;
    let fac = table(&p);
    let nf = BigInt::from(fac.get(p.order).clone());
    let linear = (p.order as i64 + 1 - k as i64) * (p.order as i64 + 1 - 2 * k as i64);
    let numer: BigInt = &nf * &nf * linear * 2;
    let denom = BigInt::from(binomial(p.order as u64, k as u64));
    let (q, r) = numer.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::integrity(format!(
            "C({}, {k}) does not divide the b_k numerator",
            p.order
        )));
    }
    Ok(signed(k, q))
}

pub(crate) fn scalar_ab_with(fac: &Factorials, p: &FormParams, i: usize) -> BigUint {
    fac.get(p.order) * fac.get(p.degree - i) * fac.get(i + 1)
}

/// `C(N,i) alpha_i beta_i = N! (M-i)! (i+1)!`, the scalar attached to the
/// `A_n`/`C_n` summand at index `i`.
pub fn scalar_ab(n: usize, i: usize) -> Result<BigUint> {
    let p = FormParams::new(n)?;
    check_range("i", i as i128, 0, p.order as i128)?;
    Ok(scalar_ab_with(&table(&p), &p, i))
}

/// `C(N,i) alpha_i beta_i` evaluated literally from the factorial weights.
pub fn scalar_ab_from_weights(n: usize, i: usize) -> Result<BigUint> {
    let p = FormParams::new(n)?;
    check_range("i", i as i128, 0, p.order as i128)?;
    let fac = table(&p);
    let alpha = fac.get(p.degree - i) * fac.get(i);
    let beta = fac.get(p.order - i) * fac.get(i + 1);
    Ok(binomial(p.order as u64, i as u64) * alpha * beta)
}

pub(crate) fn scalar_alpha_sq_with(fac: &Factorials, p: &FormParams, i: usize) -> BigUint {
    let alpha = fac.get(p.degree - i) * fac.get(i);
    binomial(p.order as u64, i as u64) * &alpha * &alpha
}

pub(crate) fn scalar_beta_sq_with(fac: &Factorials, p: &FormParams, i: usize) -> BigUint {
    let beta = fac.get(p.order - i) * fac.get(i + 1);
    binomial(p.order as u64, i as u64) * &beta * &beta
}

/// The test monomial `f_a f_{a+1} f_b f_{b+1}` with `a = n+1-r`,
/// `b = n-1+r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TestMonomialSpec {
    pub n: usize,
    pub r: usize,
    pub a: usize,
    pub b: usize,
}

impl TestMonomialSpec {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        FormParams::new(n)?;
        check_range("r", r as i128, 2, n as i128 + 1)?;
        Ok(TestMonomialSpec {
            n,
            r,
            a: n + 1 - r,
            b: n - 1 + r,
        })
    }

    pub fn monomial(&self) -> Monomial {
        let (a, b) = (self.a as u32, self.b as u32);
        Monomial::product_of(&[a, a + 1, b, b + 1])
    }
}

pub fn test_monomial(n: usize, r: usize) -> Result<Monomial> {
    Ok(TestMonomialSpec::new(n, r)?.monomial())
}

/// Coefficient of the test monomial in `Delta_n`:
/// `-8 (N!)^2 (n+r)! (n+r-1)! (n-r+2)! (n-r+1)! (2n^2 + 4n + 2r^2 - 4r + 3)`.
pub fn coeff_cnr(n: usize, r: usize) -> Result<BigInt> {
    let spec = TestMonomialSpec::new(n, r)?;
    let p = FormParams::new(n)?;
    let fac = table(&p);
    let nf = fac.get(p.order);
    let facts = fac.get(n + r) * fac.get(n + r - 1) * fac.get(n + 2 - r) * fac.get(n + 1 - r);
    let (ni, ri) = (spec.n as i128, spec.r as i128);
    let quad = 2 * ni * ni + 4 * ni + 2 * ri * ri - 4 * ri + 3;
    Ok(-BigInt::from(nf * nf * facts) * BigInt::from(quad) * 8)
}

/// The same coefficient as `-8 [N! (m+r-3)! (m-r-1)!]^2 E_m(r)`, `m = n+2`.
pub fn coeff_cnr_factored(n: usize, r: usize) -> Result<BigInt> {
    TestMonomialSpec::new(n, r)?;
    let p = FormParams::new(n)?;
    let fac = table(&p);
    let m = p.m;
    let base = BigInt::from(fac.get(p.order) * fac.get(m + r - 3) * fac.get(m - r - 1));
    Ok(-(&base * &base) * e_m(m, r)? * 8)
}

/// `E_m(r) = (m-r)(m+r-2)(2(m-1)^2 + 2(r-1)^2 - 1)` for `2 <= r <= m-1`.
pub fn e_m(m: usize, r: usize) -> Result<BigInt> {
    check_range("r", r as i128, 2, m as i128 - 1)?;
    let (m, r) = (m as i128, r as i128);
    let q = 2 * (m - 1) * (m - 1) + 2 * (r - 1) * (r - 1) - 1;
    Ok(BigInt::from(m - r) * BigInt::from(m + r - 2) * BigInt::from(q))
}
