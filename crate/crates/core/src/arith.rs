//! Exact integer and p-adic combinatorics.
//!
//! Valuations, base-p digit sums, Kummer's theorem in digit-sum and carry
//! form, the gcd of a binomial row, bounded squarefree kernels, and the
//! base-3 scores `F_N(k) = v_3 C(N, k)` and `G_A(a) = F_A(a) + v_3(A - a)`
//! together with the recursive maximizer constructions built on them.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{check_range, Error, Result};

/// A prime power `p^k` with `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
}

impl PrimePower {
    pub fn value(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.p), self.k as usize)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes `<= bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is not prime")))
    }
}

/// `v_p(x)` for a nonzero integer `x`.
pub fn vp(p: u64, x: &BigInt) -> Result<u32> {
    require_prime(p)?;
    if x.is_zero() {
        return Err(Error::domain("valuation of zero undefined"));
    }
    Ok(vp_magnitude(p, x.magnitude()))
}

/// `v_p(x)` for a nonzero natural number.
pub fn vp_nat(p: u64, x: &BigUint) -> Result<u32> {
    require_prime(p)?;
    if x.is_zero() {
        return Err(Error::domain("valuation of zero undefined"));
    }
    Ok(vp_magnitude(p, x))
}

/// `v_p(x)` for a nonzero machine integer.
pub fn vp_u64(p: u64, x: u64) -> Result<u32> {
    require_prime(p)?;
    if x == 0 {
        return Err(Error::domain("valuation of zero undefined"));
    }
    let mut x = x;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Ok(v)
}

// Strips the largest power of p that fits in a u64 at a time, then single p's.
fn vp_magnitude(p: u64, x: &BigUint) -> u32 {
    let mut chunk = p;
    let mut chunk_exp = 1u32;
    while let Some(next) = chunk.checked_mul(p) {
        chunk = next;
        chunk_exp += 1;
    }
    let mut x = x.clone();
    let mut v = 0u32;
    while (&x % chunk).is_zero() {
        x /= chunk;
        v += chunk_exp;
    }
    while (&x % p).is_zero() {
        x /= p;
        v += 1;
    }
    v
}

/// Sum of the base-`p` digits of `n`.
pub fn digit_sum(p: u64, n: &BigUint) -> u64 {
    assert!(p >= 2, "digit base must be at least 2");
    if p <= 256 {
        return n.to_radix_le(p as u32).iter().map(|&d| d as u64).sum();
    }
    let mut n = n.clone();
    let mut s = 0u64;
    while !n.is_zero() {
        let (q, r) = n.div_rem(&BigUint::from(p));
        s += r.to_u64().expect("digit below base");
        n = q;
    }
    s
}

pub fn digit_sum_u64(p: u64, mut n: u64) -> u64 {
    assert!(p >= 2, "digit base must be at least 2");
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// `v_p C(n, k)` by Kummer's digit-sum formula
/// `(s_p(k) + s_p(n - k) - s_p(n)) / (p - 1)`.
pub fn vp_binomial(p: u64, n: u64, k: u64) -> Result<u32> {
    require_prime(p)?;
    check_range("k", k as i128, 0, n as i128)?;
    let num = digit_sum_u64(p, k) + digit_sum_u64(p, n - k) - digit_sum_u64(p, n);
    debug_assert_eq!(num % (p - 1), 0);
    Ok((num / (p - 1)) as u32)
}

/// Arbitrary-precision form of [`vp_binomial`].
pub fn vp_binomial_big(p: u64, n: &BigUint, k: &BigUint) -> Result<u64> {
    require_prime(p)?;
    if k > n {
        return Err(Error::domain("binomial index exceeds top"));
    }
    let num = digit_sum(p, k) + digit_sum(p, &(n - k)) - digit_sum(p, n);
    Ok(num / (p - 1))
}

/// Number of carries when adding `k` and `n - k` in base `p`.
pub fn binomial_carries(p: u64, n: u64, k: u64) -> Result<u32> {
    require_prime(p)?;
    check_range("k", k as i128, 0, n as i128)?;
    let (mut a, mut b) = (k, n - k);
    let mut carry = 0u64;
    let mut count = 0u32;
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = u64::from(s >= p);
        count += carry as u32;
        a /= p;
        b /= p;
    }
    Ok(count)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Table of `0!, 1!, ..., top!`.
#[derive(Debug, Clone)]
pub struct Factorials {
    table: Vec<BigUint>,
}

impl Factorials {
    pub fn up_to(top: usize) -> Self {
        let mut table = Vec::with_capacity(top + 1);
        table.push(BigUint::one());
        for i in 1..=top {
            let next = &table[i - 1] * BigUint::from(i);
            table.push(next);
        }
        Factorials { table }
    }

    pub fn top(&self) -> usize {
        self.table.len() - 1
    }

    /// `k!`. Panics if `k` exceeds the table.
    pub fn get(&self, k: usize) -> &BigUint {
        &self.table[k]
    }
}

/// `Some(p^k)` iff `m = p^k` for a prime `p` and `k >= 1`.
pub fn is_prime_power(m: u64) -> Option<PrimePower> {
    if m < 2 {
        return None;
    }
    let p = smallest_prime_factor(m);
    let mut rest = m;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some(PrimePower { p, k })
}

fn smallest_prime_factor(m: u64) -> u64 {
    if m % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= m {
        if m % d == 0 {
            return d;
        }
        d += 2;
    }
    m
}

/// `gcd_{1 <= r <= m-1} C(m, r)`: `p` when `m = p^k`, else 1.
pub fn binomial_gcd(m: u64) -> Result<u64> {
    check_range("m", m as i128, 2, u64::MAX as i128)?;
    Ok(is_prime_power(m).map_or(1, |pp| pp.p))
}

/// `p` if `m` is a power of an odd prime `p`, otherwise 1.
pub fn a_of(m: u64) -> u64 {
    match is_prime_power(m) {
        Some(PrimePower { p, .. }) if p != 2 => p,
        _ => 1,
    }
}

/// Factorization of a nonzero integer over the primes `<= prime_bound`.
///
/// Fails with an integrity error if a cofactor other than 1 remains, i.e. if
/// `|x|` has a prime factor above the bound.
pub fn factor_bounded(x: &BigInt, prime_bound: u64) -> Result<BTreeMap<u64, u32>> {
    if x.is_zero() {
        return Err(Error::domain("cannot factor zero"));
    }
    let mut rest = x.magnitude().clone();
    let mut out = BTreeMap::new();
    for p in primes_up_to(prime_bound) {
        if rest.is_one() {
            break;
        }
        if !(&rest % p).is_zero() {
            continue;
        }
        let v = vp_magnitude(p, &rest);
        rest /= num_traits::pow(BigUint::from(p), v as usize);
        out.insert(p, v);
    }
    if !rest.is_one() {
        return Err(Error::integrity(format!(
            "cofactor {rest} has a prime factor above the bound {prime_bound}"
        )));
    }
    Ok(out)
}

/// Product of the primes dividing `x` to an odd power.
pub fn squarefree_kernel(x: &BigInt, prime_bound: u64) -> Result<BigUint> {
    let factors = factor_bounded(x, prime_bound)?;
    Ok(kernel_of(&factors))
}

pub(crate) fn kernel_of(factors: &BTreeMap<u64, u32>) -> BigUint {
    factors
        .iter()
        .filter(|(_, &v)| v % 2 == 1)
        .fold(BigUint::one(), |acc, (&p, _)| acc * p)
}

// ---------------------------------------------------------------------------
// Base-3 scores

/// `F_N(k) = v_3 C(N, k)` via ternary digit sums.
pub fn ternary_f(top: u64, k: u64) -> Result<u32> {
    check_range("k", k as i128, 0, top as i128)?;
    let num = digit_sum_u64(3, k) + digit_sum_u64(3, top - k) - digit_sum_u64(3, top);
    Ok((num / 2) as u32)
}

/// `G_A(a) = F_A(a) + v_3(A - a)` for `0 <= a <= A - 1`.
pub fn ternary_g(top: u64, a: u64) -> Result<u32> {
    if top == a {
        return Err(Error::domain("G_A(A) needs v_3(0), which is undefined"));
    }
    check_range("a", a as i128, 0, top as i128 - 1)?;
    Ok(ternary_f(top, a)? + vp_u64(3, top - a)?)
}

/// Both scores at one index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TernaryScore {
    pub top: u64,
    pub index: u64,
    pub f: u32,
    /// `None` at `index == top`, where `G` is undefined.
    pub g: Option<u32>,
}

impl TernaryScore {
    pub fn new(top: u64, index: u64) -> Result<Self> {
        let f = ternary_f(top, index)?;
        let g = if index < top {
            Some(ternary_g(top, index)?)
        } else {
            None
        };
        Ok(TernaryScore { top, index, f, g })
    }
}

/// `B = 2·3^t - 1` for some `t >= 0`.
pub fn is_exceptional_odd(b: u64) -> bool {
    let mut x = b + 1;
    if x % 2 != 0 {
        return false;
    }
    x /= 2;
    while x % 3 == 0 {
        x /= 3;
    }
    x == 1
}

/// `A = 2·3^t - 2` for some `t >= 1`.
pub fn is_exceptional_even(a: u64) -> bool {
    a >= 4 && is_exceptional_odd(a + 1)
}

/// The smallest maximizer of `G_A` on `0..A`, built by the base-3 recursion
/// (`A = 3B`, `3B + 1`, `3B + 2`). The result always satisfies `2a < A`.
pub fn lower_half_g_maximizer(top: u64) -> Result<u64> {
    check_range("A", top as i128, 1, u64::MAX as i128)?;
    Ok(lower_half_rec(top))
}

fn lower_half_rec(top: u64) -> u64 {
    match top {
        1 | 2 => 0,
        _ => {
            let (b, r) = (top / 3, top % 3);
            3 * lower_half_rec(b) + r
        }
    }
}

/// Maximizer of `G_B` for odd `B`.
///
/// Returns `((B-1)/2, true)` when `B = 2·3^t - 1` (the maximizer is then
/// unique), otherwise the smallest maximizer, which lies below `(B-1)/2`,
/// with `false`.
pub fn odd_g_maximizer(b: u64) -> Result<(u64, bool)> {
    if b == 0 || b % 2 == 0 {
        return Err(Error::domain(format!("expected odd B >= 1, got {b}")));
    }
    Ok(odd_g_rec(b))
}

fn odd_g_rec(b: u64) -> (u64, bool) {
    if b == 1 {
        return (0, true);
    }
    let a = b / 3;
    match b % 3 {
        0 => (3 * lower_half_rec(a), false),
        1 => (3 * lower_half_rec(a) + 1, false),
        _ => {
            let (idx, exceptional) = odd_g_rec(a);
            (3 * idx + 2, exceptional)
        }
    }
}

/// Maximizer of `F_A` for even `A >= 2`.
///
/// Returns `(A/2, true)` when `A = 2·3^t - 2` (unique maximizer), otherwise
/// the smallest maximizer, which lies below `A/2`, with `false`.
pub fn even_f_maximizer(top: u64) -> Result<(u64, bool)> {
    if top < 2 || top % 2 == 1 {
        return Err(Error::domain(format!("expected even A >= 2, got {top}")));
    }
    Ok(even_f_rec(top))
}

fn even_f_rec(top: u64) -> (u64, bool) {
    if top == 2 {
        return (0, false);
    }
    let b = top / 3;
    match top % 3 {
        0 => (3 * lower_half_rec(b) + 1, false),
        1 => {
            let (idx, exceptional) = odd_g_rec(b);
            (3 * idx + 2, exceptional)
        }
        _ => (3 * even_f_rec(b).0, false),
    }
}
