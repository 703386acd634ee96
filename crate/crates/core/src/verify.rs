//! Per-`n` verification battery.
//!
//! Each check is recorded with its outcome and a short detail string; an
//! error raised by an individual check is recorded as a failure rather than
//! aborting the remaining checks.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{is_prime_power, primes_up_to};
use crate::closedforms::{
    b_diag_via_binomial, b_diag_with, coeff_cnr, coeff_cnr_factored, table, test_monomial,
};
use crate::covariant::{q_transvectant, Covariant};
use crate::error::Result;
use crate::padic::{
    content_report, deformation_of, offcentre_valuation_of, p2_of, p2_witness, profile_of,
    rank1_of, witness_for_prime, ContentReport,
};
use crate::polyring::Monomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct NReport {
    pub n: usize,
    pub content: ContentReport,
    pub checks: Vec<Check>,
}

impl NReport {
    pub fn pass(&self) -> bool {
        self.content.theorem_holds && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Default)]
struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: impl Into<String>, outcome: Result<(bool, String)>) {
        let (pass, detail) = outcome.unwrap_or_else(|e| (false, e.to_string()));
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail,
        });
    }
}

/// Runs every check at `n`. Fails only if `S(n)` itself cannot be formed.
pub fn verify_n(n: usize) -> Result<NReport> {
    let cov = Covariant::new(n)?;
    let content = content_report(&cov)?;
    let mut rec = Recorder::default();
    let params = &cov.params;

    rec.record(
        "theorem",
        Ok((
            content.theorem_holds,
            format!(
                "sqf = {}, predicted = {}",
                content.sqf, content.predicted_sqf
            ),
        )),
    );
    rec.record(
        "cross-construction",
        q_transvectant(n).map(|q| (q == cov.q, String::new())),
    );
    rec.record("homogeneity", Ok(homogeneity(&cov)));
    rec.record("b-extraction", b_extraction(&cov));
    rec.record("cnr-extraction", cnr_extraction(&cov));

    for p in primes_up_to(params.degree as u64) {
        if p == 2 {
            rec.record(
                "p2-analysis",
                p2_of(&cov).map(|r| (r.pass, format!("{r:?}"))),
            );
            if n >= 2 {
                let v = content.valuation(2);
                rec.record(
                    "p2-witness",
                    p2_witness(&cov)
                        .map(|w| (w.pass && w.expected == v, format!("v_2(S) = {v}, {w:?}"))),
                );
            }
            continue;
        }
        odd_prime_checks(&cov, &content, p, &mut rec);
    }
    Ok(NReport {
        n,
        content,
        checks: rec.checks,
    })
}

fn odd_prime_checks(cov: &Covariant, content: &ContentReport, p: u64, rec: &mut Recorder) {
    let n = cov.n();
    let v = content.valuation(p);
    let profile = profile_of(cov, p);
    rec.record(
        format!("profile p={p}"),
        profile.clone().map(|x| (x.consistent(), format!("{x:?}"))),
    );
    if n % p as usize == 0 {
        let p2 = BigInt::from(p * p);
        let divisible = cov
            .q
            .parts()
            .into_iter()
            .flat_map(|poly| poly.coefficients())
            .all(|c| (c % &p2).is_zero());
        rec.record(
            format!("p^2 divides Q p={p}"),
            Ok((divisible, String::new())),
        );
    }

    let power = is_prime_power(cov.params.m as u64).filter(|pp| pp.p == p);
    if let Some(pp) = power {
        rec.record(
            format!("attainers p={p}"),
            profile.map(|x| {
                (
                    x.attainers_match == Some(true),
                    format!("{:?}", x.attainers),
                )
            }),
        );
        rec.record(
            format!("rank1 p={p}"),
            rank1_of(cov, p).map(|r| (r.pass, format!("{r:?}"))),
        );
        rec.record(
            format!("deformation p={p}"),
            deformation_of(cov)
                .map(|w| (w.pass && w.expected == v, format!("v_p(S) = {v}, {w:?}"))),
        );
        if pp.k >= 2 {
            rec.record(
                format!("offcentre-valuation p={p}"),
                offcentre_valuation_of(cov).map(|r| (r.pass, format!("{r:?}"))),
            );
        }
    } else {
        rec.record(
            format!("witness p={p}"),
            witness_for_prime(cov, p)
                .map(|w| (w.pass && w.expected == v, format!("v_p(S) = {v}, {w:?}"))),
        );
    }
}

fn homogeneity(cov: &Covariant) -> (bool, String) {
    let order = cov.params.order as u64;
    let weights = cov.q.parts().map(|poly| poly.isobaric_weight());
    let degrees = cov.q.parts().map(|poly| poly.homogeneous_degree());
    let pass = weights == [Some(order), Some(order + 1), Some(order + 2)]
        && degrees.iter().all(|&d| d == Some(2));
    (pass, format!("weights {weights:?}, degrees {degrees:?}"))
}

fn b_extraction(cov: &Covariant) -> Result<(bool, String)> {
    let params = &cov.params;
    let fac = table(params);
    for j in 0..=params.degree {
        let m = Monomial::product_of(&[j as u32, (params.degree - j) as u32]);
        let closed = b_diag_with(&fac, params, j);
        let found = cov.q.b.coefficient_of(&m);
        if closed != found {
            return Ok((
                false,
                format!("j = {j}: closed {closed}, extracted {found}"),
            ));
        }
        if (1..=params.order).contains(&j) && b_diag_via_binomial(params.n, j)? != closed {
            return Ok((false, format!("j = {j}: binomial form disagrees")));
        }
    }
    Ok((true, String::new()))
}

fn cnr_extraction(cov: &Covariant) -> Result<(bool, String)> {
    let n = cov.n();
    for r in 2..=n + 1 {
        let closed = coeff_cnr(n, r)?;
        let found = cov.delta.coefficient_of(&test_monomial(n, r)?);
        if closed != found || coeff_cnr_factored(n, r)? != closed {
            return Ok((
                false,
                format!("r = {r}: closed {closed}, extracted {found}"),
            ));
        }
    }
    Ok((true, String::new()))
}

/// `verify_n` for `1..=n_max`, in order.
pub fn verify_range(n_max: usize) -> Vec<(usize, Result<NReport>)> {
    (1..=n_max).map(|n| (n, verify_n(n))).collect()
}
