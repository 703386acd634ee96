//! Acceptance criteria 1-11. Runs as a plain binary so that every criterion
//! prints its own line; exits nonzero if any criterion fails.

use std::process::ExitCode;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use quartic_core::arith::{
    binomial_gcd, even_f_maximizer, is_exceptional_even, is_exceptional_odd,
    lower_half_g_maximizer, odd_g_maximizer, ternary_f, ternary_g, vp,
};
use quartic_core::closedforms::{b_diag, coeff_cnr, coeff_cnr_factored, e_m, test_monomial};
use quartic_core::covariant::{
    cubic_disc, cubic_hessian, discriminant, q_closed, q_transvectant, Covariant,
};
use quartic_core::padic::{
    content_report, deformation_of, offcentre_of, offcentre_valuation_check, p2_of, profile_of,
    rank1_of, ContentReport, P2Case,
};
use quartic_core::polyring::Monomial;

const N_MAX: usize = 30;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn trial_primes(limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&q| (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0))
        .collect()
}

// a(m): p if m is a power of an odd prime p, else 1.
fn a_oracle(m: u64) -> u64 {
    let ps: Vec<u64> = trial_primes(m).into_iter().filter(|p| m % p == 0).collect();
    match ps.as_slice() {
        [p] if *p != 2 => *p,
        _ => 1,
    }
}

fn odd_part_of_power(m: u64, p: u64) -> bool {
    let mut x = m;
    while x % p == 0 {
        x /= p;
    }
    x == 1 && m > 1
}

fn v(p: u64, x: &BigInt) -> u32 {
    let (mut x, p) = (x.clone(), BigInt::from(p));
    let mut k = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        k += 1;
    }
    k
}

struct Data {
    covs: Vec<Covariant>,
    reports: Vec<ContentReport>,
}

impl Data {
    fn build() -> Data {
        let covs: Vec<Covariant> = (1..=N_MAX).map(|n| Covariant::new(n).unwrap()).collect();
        let reports = covs.iter().map(|c| content_report(c).unwrap()).collect();
        Data { covs, reports }
    }

    fn cov(&self, n: usize) -> &Covariant {
        &self.covs[n - 1]
    }

    fn s(&self, n: usize) -> BigInt {
        BigInt::from(self.reports[n - 1].content.clone())
    }
}

fn criterion_1(d: &Data) -> Outcome {
    let mut prefix = Vec::new();
    for n in 1..=N_MAX {
        let s = d.s(n);
        let mut sqf = 1u64;
        for p in trial_primes(2 * n as u64 + 1) {
            if v(p, &s) % 2 == 1 {
                sqf *= p;
            }
        }
        let mut rest = s.clone();
        for p in trial_primes(2 * n as u64 + 1) {
            while (&rest % p).is_zero() {
                rest /= p;
            }
        }
        ensure(rest.is_one(), || {
            format!("n = {n}: cofactor {rest} above 2n+1")
        })?;
        ensure(sqf == a_oracle(n as u64 + 2), || {
            format!(
                "n = {n}: sqf {sqf} != a({}) = {}",
                n + 2,
                a_oracle(n as u64 + 2)
            )
        })?;
        ensure(d.reports[n - 1].sqf == BigUint::from(sqf), || {
            format!("n = {n}: report sqf")
        })?;
        if n <= 11 {
            prefix.push(sqf);
        }
    }
    ensure(prefix == [3, 1, 5, 1, 7, 1, 3, 1, 11, 1, 13], || {
        format!("prefix {prefix:?}")
    })
}

fn criterion_2(d: &Data) -> Outcome {
    let s = d.s(1);
    ensure(s == BigInt::from(192), || format!("S(1) = {s}"))?;
    ensure(v(2, &s) == 6 && v(3, &s) == 1, || {
        "valuations of S(1)".into()
    })
}

fn criterion_3(d: &Data) -> Outcome {
    let got = v(3, &d.s(2));
    ensure(got == 4, || format!("v_3(S(2)) = {got}"))
}

fn criterion_4(_: &Data) -> Outcome {
    for n in 1..=8 {
        let t = q_transvectant(n).map_err(|e| e.to_string())?;
        ensure(t == q_closed(n).unwrap(), || {
            format!("n = {n}: constructions differ")
        })?;
    }
    Ok(())
}

fn criterion_5(d: &Data) -> Outcome {
    let h = cubic_hessian();
    let disc = cubic_disc();
    let lhs = discriminant(&h);
    ensure(lhs == disc.scale(&BigInt::from(-3)), || {
        "disc(H) != -3 disc(F)".into()
    })?;
    let ratio = d.cov(1).q.ratio_to(&h);
    ensure(ratio == Some((BigInt::from(8), BigInt::one())), || {
        format!("Q_1 / H = {ratio:?}")
    })?;
    println!("    Q_1 = 8 * H(F)");
    Ok(())
}

fn criterion_6(d: &Data) -> Outcome {
    for n in 1..=15 {
        let cov = if n <= N_MAX {
            d.cov(n).clone()
        } else {
            unreachable!()
        };
        let top = 2 * n + 1;
        for k in 0..=top {
            let m = Monomial::product_of(&[k as u32, (top - k) as u32]);
            ensure(cov.q.b.coefficient_of(&m) == b_diag(n, k).unwrap(), || {
                format!("b: n = {n}, k = {k}")
            })?;
        }
        if n <= 12 {
            for r in 2..=n + 1 {
                let c = coeff_cnr(n, r).unwrap();
                let found = cov.delta.coefficient_of(&test_monomial(n, r).unwrap());
                ensure(c == found, || format!("C_nr extraction: n = {n}, r = {r}"))?;
                ensure(c == coeff_cnr_factored(n, r).unwrap(), || {
                    format!("C_nr forms: n = {n}, r = {r}")
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_7(d: &Data) -> Outcome {
    let mut failures = Vec::new();
    for n in 1..=N_MAX {
        let cov = d.cov(n);
        let s = d.s(n);
        let m = n as u64 + 2;
        for p in trial_primes(2 * n as u64 + 1)
            .into_iter()
            .filter(|&p| p != 2)
        {
            let vs = v(p, &s);
            if odd_part_of_power(m, p) {
                let rank1 = rank1_of(cov, p).map_err(|e| e.to_string())?;
                let e = profile_of(cov, p).unwrap().e_min_q;
                let w = deformation_of(cov).map_err(|e| e.to_string())?;
                let got = v(p, &w.delta);
                if !rank1.pass || got != 2 * e + 1 || vs != got {
                    failures.push(format!(
                        "n = {n}, p = {p}: rank1 {}, deformation v = {got}, e = {e}",
                        rank1.pass
                    ));
                }
                continue;
            }
            let bv: Vec<u32> = (1..=2 * n).map(|k| v(p, &b_diag(n, k).unwrap())).collect();
            let e = *bv.iter().min().unwrap();
            if vs != 2 * e {
                failures.push(format!("n = {n}, p = {p}: v_p(S) = {vs} != 2 * {e}"));
            }
            match offcentre_of(cov, p) {
                Ok(w) if w.k0 != n && w.k0 != n + 1 && bv[w.k0 - 1] == e => {}
                Ok(w) => failures.push(format!(
                    "n = {n}, p = {p}: k0 = {} not an off-centre minimizer",
                    w.k0
                )),
                Err(err) => failures.push(format!("n = {n}, p = {p}: {err}; v_p(b_k) = {bv:?}")),
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("\n    "))
}

fn criterion_8(d: &Data) -> Outcome {
    for n in 1..=N_MAX {
        let r = p2_of(d.cov(n)).map_err(|e| e.to_string())?;
        let vs = v(2, &d.s(n));
        let two_power = (n + 2).is_power_of_two();
        ensure(vs % 2 == 0 && vs == r.v2_s, || {
            format!("n = {n}: v_2(S) = {vs}")
        })?;
        ensure(vs == 2 + r.v2_inner, || format!("n = {n}: decomposition"))?;
        ensure((r.case == P2Case::B) == two_power, || {
            format!("n = {n}: case {:?}", r.case)
        })?;
        if two_power {
            let b = r
                .case_b
                .as_ref()
                .ok_or_else(|| format!("n = {n}: no case B detail"))?;
            ensure(b.v2_reduced == 2 && b.witness_v2 == 2, || {
                format!("n = {n}: {b:?}")
            })?;
        }
        if n % 2 == 0 && !two_power {
            let c = r
                .centre
                .as_ref()
                .ok_or_else(|| format!("n = {n}: no centre data"))?;
            let top = 2 * n as u64 + 1;
            let lead = (n as u64 + 2).trailing_zeros() as u64;
            let rr = ((n as u64 + 2) >> lead) / 2;
            let j0 = 2 * ((1u64 << lead) * rr - 1);
            let vb = |j: u64| v(2, &BigInt::from(quartic_core::arith::binomial(top, j)));
            ensure(c.j0 as u64 == j0 && vb(j0) > vb(n as u64), || {
                format!("n = {n}: j0 = {j0}")
            })?;
        }
        ensure(r.pass, || format!("n = {n}: {r:?}"))?;
    }
    for n in [2, 6, 14, 30] {
        ensure(p2_of(d.cov(n)).unwrap().case == P2Case::B, || {
            format!("n = {n} not case B")
        })?;
    }
    Ok(())
}

fn v3_direct(top: u64, k: u64) -> u32 {
    v(3, &BigInt::from(quartic_core::arith::binomial(top, k)))
}

fn g_direct(top: u64, a: u64) -> u32 {
    v3_direct(top, a) + v(3, &BigInt::from(top - a))
}

fn criterion_9(_: &Data) -> Outcome {
    for n in 0..=729u64 {
        for k in 0..=n {
            ensure(ternary_f(n, k).unwrap() == v3_direct(n, k), || {
                format!("F_{n}({k})")
            })?;
        }
    }
    for a_top in 1..=200u64 {
        for a in 0..=a_top {
            let f = ternary_f(a_top, a).unwrap();
            ensure(ternary_f(3 * a_top, 3 * a).unwrap() == f, || {
                format!("F_3A(3a), A = {a_top}")
            })?;
            ensure(ternary_f(3 * a_top + 1, 3 * a).unwrap() == f, || {
                format!("F_3A+1(3a), A = {a_top}")
            })?;
            ensure(ternary_f(3 * a_top + 2, 3 * a + 1).unwrap() == f, || {
                format!("F_3A+2(3a+1), A = {a_top}")
            })?;
            if a < a_top {
                let g = ternary_g(a_top, a).unwrap();
                ensure(g == g_direct(a_top, a), || format!("G_{a_top}({a})"))?;
                for r in 0..3 {
                    let big = 3 * a_top + r;
                    ensure(ternary_g(big, 3 * a + r).unwrap() == g + 1, || {
                        format!("G_3A+{r}, A = {a_top}")
                    })?;
                }
            }
        }
    }
    for top in 1..=400u64 {
        let best = (0..top).map(|a| g_direct(top, a)).max().unwrap();
        let lower: Vec<u64> = (0..top)
            .filter(|&a| 2 * a < top && g_direct(top, a) == best)
            .collect();
        let lh = lower_half_g_maximizer(top).unwrap();
        ensure(lower.first() == Some(&lh), || {
            format!("lower-half G maximizer, A = {top}")
        })?;
        if top % 2 == 1 {
            let all: Vec<u64> = (0..top).filter(|&a| g_direct(top, a) == best).collect();
            let (idx, exc) = odd_g_maximizer(top).unwrap();
            ensure(exc == is_exceptional_odd(top), || {
                format!("odd flag, B = {top}")
            })?;
            if exc {
                ensure(all == [(top - 1) / 2], || {
                    format!("odd uniqueness, B = {top}")
                })?;
            } else {
                ensure(all[0] == idx && 2 * idx + 1 < top, || {
                    format!("odd maximizer, B = {top}")
                })?;
            }
        } else {
            let fbest = (0..=top).map(|a| v3_direct(top, a)).max().unwrap();
            let all: Vec<u64> = (0..=top / 2)
                .filter(|&a| v3_direct(top, a) == fbest)
                .collect();
            let (idx, exc) = even_f_maximizer(top).unwrap();
            ensure(exc == is_exceptional_even(top), || {
                format!("even flag, A = {top}")
            })?;
            if exc {
                ensure(all == [top / 2], || format!("even uniqueness, A = {top}"))?;
            } else {
                ensure(all[0] == idx && 2 * idx < top, || {
                    format!("even maximizer, A = {top}")
                })?;
            }
        }
    }
    let odd: Vec<u64> = (1..=400).filter(|&b| is_exceptional_odd(b)).collect();
    let even: Vec<u64> = (1..=400).filter(|&a| is_exceptional_even(a)).collect();
    ensure(
        odd == [1, 5, 17, 53, 161] && even == [4, 16, 52, 160],
        || format!("{odd:?} {even:?}"),
    )
}

fn criterion_10(_: &Data) -> Outcome {
    let mut row = vec![BigUint::one()];
    for m in 1..=1000u64 {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
        if m < 2 {
            continue;
        }
        let g = row[1..m as usize]
            .iter()
            .fold(BigUint::zero(), |acc, x| acc.gcd(x));
        let got = binomial_gcd(m).unwrap();
        ensure(g == BigUint::from(got), || format!("m = {m}: {g} vs {got}"))?;
    }
    Ok(())
}

fn criterion_11(d: &Data) -> Outcome {
    for (p, n) in [(3u64, 3usize), (3, 6), (3, 9), (5, 5), (5, 10), (7, 7)] {
        let p2 = BigInt::from(p * p);
        let ok = d
            .cov(n)
            .q
            .parts()
            .into_iter()
            .flat_map(|x| x.coefficients())
            .all(|c| (c % &p2).is_zero());
        ensure(ok, || format!("p^2 does not divide Q_{n} for p = {p}"))?;
    }
    for m in 7..=60usize {
        let g = (2..m).fold(BigInt::zero(), |acc, r| acc.gcd(&e_m(m, r).unwrap()));
        let mut odd = g.clone();
        while odd.is_even() && !odd.is_zero() {
            odd /= 2;
        }
        ensure(odd.is_one(), || format!("m = {m}: gcd E_m = {g}"))?;
    }
    for n in [7usize, 23, 25] {
        let r = offcentre_valuation_check(n).map_err(|e| e.to_string())?;
        let p = r.p;
        let bv: Vec<u32> = (1..=2 * n)
            .map(|k| vp(p, &b_diag(n, k).unwrap()).unwrap())
            .collect();
        let e = *bv.iter().min().unwrap();
        ensure(r.pass && bv[r.index - 1] == e + 1, || {
            format!("m = {}: {r:?}", n + 2)
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let data = Data::build();
    let criteria: [(&str, fn(&Data) -> Outcome); 11] = [
        ("sqf(S(n)) = a(n+2) for n <= 30", criterion_1),
        ("S(1) = 192", criterion_2),
        ("v_3(S(2)) = 4", criterion_3),
        ("transvectant = closed form, n <= 8", criterion_4),
        ("cubic identities", criterion_5),
        ("closed-form extraction", criterion_6),
        ("odd-prime parity pinching", criterion_7),
        ("2-adic analysis", criterion_8),
        ("ternary machinery", criterion_9),
        ("binomial row gcd", criterion_10),
        ("divisibility identities", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check(&data) {
            Ok(()) => println!("criterion {:>2} PASS  {name}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}\n    {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
