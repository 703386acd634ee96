use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use quartic_core::arith::{
    binomial, binomial_carries, digit_sum_u64, is_prime_power, vp, vp_binomial,
};
use quartic_core::closedforms::b_diag;

fn pascal(top: usize) -> Vec<Vec<BigUint>> {
    let mut rows = vec![vec![BigUint::one()]];
    for n in 1..=top {
        let prev = &rows[n - 1];
        let mut row = vec![BigUint::one(); n + 1];
        for k in 1..n {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

fn v_direct(p: u64, x: &BigUint) -> u32 {
    let (mut x, mut v) = (x.clone(), 0);
    while (&x % p).is_zero() {
        x /= p;
        v += 1;
    }
    v
}

#[test]
fn kummer_and_carries_agree_with_pascal() {
    let rows = pascal(500);
    for p in [2u64, 3, 5, 7] {
        for n in 0..=500u64 {
            for k in 0..=n {
                let direct = v_direct(p, &rows[n as usize][k as usize]);
                assert_eq!(vp_binomial(p, n, k).unwrap(), direct, "p={p} n={n} k={k}");
                assert_eq!(
                    binomial_carries(p, n, k).unwrap(),
                    direct,
                    "p={p} n={n} k={k}"
                );
            }
        }
    }
    for n in 0..=60u64 {
        for k in 0..=n {
            assert_eq!(binomial(n, k), rows[n as usize][k as usize]);
        }
    }
}

#[test]
fn legendre_via_digit_sums() {
    for p in [2u64, 3, 5, 7, 11] {
        let mut fact = BigUint::one();
        for n in 1..=200u64 {
            fact *= n;
            let legendre = ((n - digit_sum_u64(p, n)) / (p - 1)) as u32;
            assert_eq!(v_direct(p, &fact), legendre);
        }
    }
}

#[test]
fn prime_power_detection() {
    for m in 2..=3000u64 {
        let factors: Vec<u64> = (2..=m)
            .filter(|&d| m % d == 0 && (2..d).all(|e| d % e != 0))
            .collect();
        assert_eq!(
            is_prime_power(m).map(|pp| pp.p),
            (factors.len() == 1).then(|| factors[0]),
            "m={m}"
        );
        if let Some(pp) = is_prime_power(m) {
            assert_eq!(pp.p.pow(pp.k), m);
        }
    }
}

// v_p(b_{n-1}) - v_p(b_n) = v_p(m) - v_p(n) + v_p(3) for odd p.
#[test]
fn valuation_shift_at_centre() {
    for n in 2..=40usize {
        for p in [3u64, 5, 7, 11, 13] {
            let lhs = vp(p, &b_diag(n, n - 1).unwrap()).unwrap() as i64
                - vp(p, &b_diag(n, n).unwrap()).unwrap() as i64;
            let vv = |x: u64| vp(p, &BigInt::from(x)).unwrap() as i64;
            assert_eq!(lhs, vv(n as u64 + 2) - vv(n as u64) + vv(3), "n={n} p={p}");
        }
    }
}

// b_{n-1} / b_n = -3(n+2)/n.
#[test]
fn centre_ratio() {
    for n in 1..=40usize {
        let lhs = b_diag(n, n - 1).unwrap() * BigInt::from(n);
        let rhs = b_diag(n, n).unwrap() * BigInt::from(-3 * (n as i64 + 2));
        assert_eq!(lhs, rhs, "n={n}");
    }
}
