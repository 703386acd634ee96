//! Valuations of the content `S(n)` and the specializations that pin them.
//!
//! For an odd prime `p` the exponent `v_p(S(n))` is squeezed between a lower
//! bound read off the scalar coefficients of `Q_n` and an upper bound given
//! by evaluating `Delta_n` at a sparse integer point. The point is either a
//! pair `f_k = f_{N+1-k} = 1` (even exponent) or a four-point deformation
//! around the centre (odd exponent, prime-power case). The prime 2 goes
//! through `G = B/2` instead.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{
    a_of, even_f_maximizer, factor_bounded, is_prime, is_prime_power, kernel_of, primes_up_to,
    ternary_f, vp, vp_binomial, vp_nat, vp_u64, PrimePower,
};
use crate::closedforms::{
    b_diag_with, scalar_ab_with, scalar_alpha_sq_with, scalar_beta_sq_with, table,
};
use crate::covariant::{Covariant, QuadForm};
use crate::error::{check_range, Error, Result};
use crate::polyring::{IntPoly, Monomial, Specialization};

/// Parity of `v_p(S(n))` against the prediction for one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeParity {
    pub p: u64,
    pub valuation: u32,
    pub odd: bool,
    pub predicted_odd: bool,
    pub pass: bool,
}

/// `S(n) = content(Delta_n)`, its factorization and squarefree kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentReport {
    pub n: usize,
    pub content: BigUint,
    /// Every prime `<= 2n+1`, including those with valuation 0.
    pub factors: BTreeMap<u64, u32>,
    pub sqf: BigUint,
    pub predicted_sqf: u64,
    pub parity: Vec<PrimeParity>,
    pub theorem_holds: bool,
}

impl ContentReport {
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }
}

fn bound_for(n: usize) -> u64 {
    2 * n as u64 + 1
}

/// Content report for `Delta_n`.
pub fn content_s(n: usize) -> Result<ContentReport> {
    content_report(&Covariant::new(n)?)
}

pub fn content_report(cov: &Covariant) -> Result<ContentReport> {
    let n = cov.n();
    let content = cov.delta.content()?;
    let bound = bound_for(n);
    let found = factor_bounded(&BigInt::from(content.clone()), bound)?;
    let mut factors: BTreeMap<u64, u32> = primes_up_to(bound).into_iter().map(|p| (p, 0)).collect();
    factors.extend(found.iter().map(|(&p, &v)| (p, v)));

    let m = cov.params.m as u64;
    let power = is_prime_power(m);
    let parity: Vec<PrimeParity> = factors
        .iter()
        .map(|(&p, &valuation)| {
            let odd = valuation % 2 == 1;
            let predicted_odd = p != 2 && power.is_some_and(|pp| pp.p == p);
            PrimeParity {
                p,
                valuation,
                odd,
                predicted_odd,
                pass: odd == predicted_odd,
            }
        })
        .collect();

    let sqf = kernel_of(
        &found
            .iter()
            .filter(|(_, &v)| v % 2 == 1)
            .map(|(&p, _)| (p, 1))
            .collect(),
    );
    let predicted_sqf = a_of(m);
    let theorem_holds = sqf == BigUint::from(predicted_sqf) && parity.iter().all(|x| x.pass);
    Ok(ContentReport {
        n,
        content,
        factors,
        sqf,
        predicted_sqf,
        parity,
        theorem_holds,
    })
}

/// Per-prime parity flags only.
pub fn parity_theorem_check(n: usize) -> Result<Vec<PrimeParity>> {
    Ok(content_s(n)?.parity)
}

/// Which scalar family a summand of `Q_n` belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SummandFamily {
    /// `C(N,i) alpha_i beta_i`, in `A_n` and `C_n`.
    AlphaBeta,
    /// `C(N,i) alpha_i^2`, in `B_n`.
    AlphaSquared,
    /// `C(N,i) beta_i^2`, in `B_n`.
    BetaSquared,
}

impl SummandFamily {
    pub fn label(self) -> &'static str {
        match self {
            SummandFamily::AlphaBeta => "alpha-beta",
            SummandFamily::AlphaSquared => "alpha^2",
            SummandFamily::BetaSquared => "beta^2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub family: SummandFamily,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationProfile {
    pub n: usize,
    pub p: u64,
    /// `min_{1 <= k <= N} v_p(b_k)`.
    pub e_min_bk: u32,
    /// Minimum of `v_p` over the collected coefficients of `A_n, B_n, C_n`.
    pub e_min_q: u32,
    /// Minimum of `v_p` over the individual summand scalars.
    pub e_min_summands: u32,
    /// Summands attaining `e_min_summands`, sorted.
    pub attainers: Vec<Summand>,
    /// Comparison with the expected attainer list, when `n + 2` is a power
    /// of `p`.
    pub attainers_match: Option<bool>,
}

impl ValuationProfile {
    /// `e_min_q <= e_min_bk`, with equality for odd `p`.
    pub fn consistent(&self) -> bool {
        self.e_min_q == self.e_min_bk
    }
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::domain(format!("expected an odd prime, got {p}")));
    }
    Ok(())
}

fn prime_power_of(cov: &Covariant) -> Option<PrimePower> {
    is_prime_power(cov.params.m as u64)
}

fn odd_prime_power_of(cov: &Covariant) -> Result<PrimePower> {
    match prime_power_of(cov) {
        Some(pp) if pp.p != 2 => Ok(pp),
        _ => Err(Error::domain(format!(
            "m = {} is not a power of an odd prime",
            cov.params.m
        ))),
    }
}

fn min_valuation<'a>(p: u64, xs: impl Iterator<Item = &'a BigInt>) -> Result<u32> {
    let mut best: Option<u32> = None;
    for x in xs {
        let v = vp(p, x)?;
        best = Some(best.map_or(v, |b| b.min(v)));
    }
    best.ok_or_else(|| Error::integrity("no coefficients to take a minimum over"))
}

/// `v_p(b_k)` for `k = 0..=M`.
pub fn b_valuations(cov: &Covariant, p: u64) -> Result<Vec<u32>> {
    let fac = table(&cov.params);
    (0..=cov.params.degree)
        .map(|j| vp(p, &b_diag_with(&fac, &cov.params, j)))
        .collect()
}

pub fn valuation_profile(n: usize, p: u64) -> Result<ValuationProfile> {
    profile_of(&Covariant::new(n)?, p)
}

pub fn profile_of(cov: &Covariant, p: u64) -> Result<ValuationProfile> {
    require_odd_prime(p)?;
    let params = &cov.params;
    let n = params.n;
    let bvals = b_valuations(cov, p)?;
    let e_min_bk = *bvals[1..=params.order].iter().min().expect("N >= 2");

    let coeffs = cov
        .q
        .parts()
        .into_iter()
        .flat_map(|poly| poly.coefficients());
    let e_min_q = min_valuation(p, coeffs)?;

    let fac = table(params);
    let mut scored = Vec::new();
    for i in 0..=params.order {
        scored.push((SummandFamily::AlphaBeta, i, scalar_ab_with(&fac, params, i)));
        scored.push((
            SummandFamily::AlphaSquared,
            i,
            scalar_alpha_sq_with(&fac, params, i),
        ));
        scored.push((
            SummandFamily::BetaSquared,
            i,
            scalar_beta_sq_with(&fac, params, i),
        ));
    }
    let mut valued = Vec::with_capacity(scored.len());
    for (family, index, s) in scored {
        valued.push((Summand { family, index }, vp_nat(p, &s)?));
    }
    let e_min_summands = valued.iter().map(|&(_, v)| v).min().expect("nonempty");
    let mut attainers: Vec<Summand> = valued
        .into_iter()
        .filter(|&(_, v)| v == e_min_summands)
        .map(|(s, _)| s)
        .collect();
    attainers.sort();

    let attainers_match = prime_power_of(cov)
        .filter(|pp| pp.p == p)
        .map(|_| attainers == expected_attainers(n));
    Ok(ValuationProfile {
        n,
        p,
        e_min_bk,
        e_min_q,
        e_min_summands,
        attainers,
        attainers_match,
    })
}

/// The minimal summands when `n + 2` is a power of `p`.
pub fn expected_attainers(n: usize) -> Vec<Summand> {
    use SummandFamily::*;
    let mut out = vec![
        Summand {
            family: AlphaBeta,
            index: n,
        },
        Summand {
            family: BetaSquared,
            index: n - 1,
        },
        Summand {
            family: AlphaSquared,
            index: n,
        },
        Summand {
            family: BetaSquared,
            index: n,
        },
        Summand {
            family: AlphaSquared,
            index: n + 1,
        },
    ];
    out.sort();
    out
}

/// Residue data of `Q_n / p^e` modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank1Report {
    pub n: usize,
    pub p: u64,
    pub e: u32,
    /// Coefficient of `f_n^2` in the reduced `A`, in `[0, p)`.
    pub lambda: BigInt,
    pub a_matches: bool,
    pub b_matches: bool,
    pub c_matches: bool,
    pub disc_vanishes: bool,
    pub pass: bool,
}

pub fn rank1_check(n: usize, p: u64) -> Result<Rank1Report> {
    rank1_of(&Covariant::new(n)?, p)
}

pub fn rank1_of(cov: &Covariant, p: u64) -> Result<Rank1Report> {
    let pp = odd_prime_power_of(cov)?;
    if pp.p != p {
        return Err(Error::domain(format!(
            "m = {} is not a power of {p}",
            cov.params.m
        )));
    }
    let n = cov.n();
    let e = profile_of(cov, p)?.e_min_q;
    let modulus = BigInt::from(p);
    let scaled = cov
        .q
        .divide_exact_by_int(&num_traits::pow(modulus.clone(), e as usize))?;
    let reduced = scaled.reduce_mod(&modulus);

    let (fc, fd) = (n as u32, n as u32 + 1);
    let lambda = reduced.a.coefficient_of(&Monomial::from_pairs([(fc, 2)]));
    let target = |c: BigInt, m: Monomial| IntPoly::term(c, m).reduce_mod(&modulus);
    let a_matches = reduced.a == target(lambda.clone(), Monomial::from_pairs([(fc, 2)]));
    let c_matches = reduced.c == target(lambda.clone(), Monomial::from_pairs([(fd, 2)]));
    let b_matches = reduced.b == target(-(&lambda) * 2, Monomial::product_of(&[fc, fd]));
    let disc_vanishes = scaled.discriminant().reduce_mod(&modulus).is_zero();
    let pass = !lambda.is_zero() && a_matches && b_matches && c_matches && disc_vanishes;
    Ok(Rank1Report {
        n,
        p,
        e,
        lambda,
        a_matches,
        b_matches,
        c_matches,
        disc_vanishes,
        pass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    Pair,
    Deformation,
    P3Ternary,
    P2Pair,
}

impl WitnessKind {
    pub fn label(self) -> &'static str {
        match self {
            WitnessKind::Pair => "pair",
            WitnessKind::Deformation => "deformation",
            WitnessKind::P3Ternary => "p3-ternary",
            WitnessKind::P2Pair => "p2-pair",
        }
    }
}

/// `Delta_n` at an integer point, with the valuation it is meant to hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessResult {
    pub kind: WitnessKind,
    pub n: usize,
    pub p: u64,
    /// Pair index for pair-type witnesses.
    pub k: Option<usize>,
    pub specialization: Specialization,
    pub delta: BigInt,
    /// `None` when `delta` is zero.
    pub valuation: Option<u32>,
    pub expected: u32,
    pub pass: bool,
}

fn witness(
    kind: WitnessKind,
    cov: &Covariant,
    p: u64,
    k: Option<usize>,
    specialization: Specialization,
    expected: u32,
) -> Result<WitnessResult> {
    let delta = cov.delta.evaluate(&specialization);
    let valuation = if delta.is_zero() {
        None
    } else {
        Some(vp(p, &delta)?)
    };
    Ok(WitnessResult {
        kind,
        n: cov.n(),
        p,
        k,
        specialization,
        delta,
        valuation,
        expected,
        pass: valuation == Some(expected),
    })
}

/// Values of `A, B, C, Delta` at `f_k = f_{N+1-k} = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub n: usize,
    pub k: usize,
    pub specialization: Specialization,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub delta: BigInt,
    pub b_expected: BigInt,
    pub pass: bool,
}

pub fn pair_specialization(n: usize, k: usize) -> Specialization {
    let top = 2 * n as u32 + 1;
    Specialization::new()
        .with(k as u32, 1)
        .with(top - k as u32, 1)
}

pub fn pair_witness(n: usize, k: usize) -> Result<PairWitness> {
    pair_of(&Covariant::new(n)?, k)
}

pub fn pair_of(cov: &Covariant, k: usize) -> Result<PairWitness> {
    let params = &cov.params;
    check_range("k", k as i128, 1, params.order as i128)?;
    let n = params.n;
    if k == n || k == n + 1 {
        return Err(Error::domain(format!("pair index k = {k} is centred")));
    }
    let specialization = pair_specialization(n, k);
    let [a, b, c] = cov.q.evaluate(&specialization);
    let delta = cov.delta.evaluate(&specialization);
    let b_expected = b_diag_with(&table(params), params, k);
    let pass = a.is_zero() && c.is_zero() && b == b_expected && delta == &b * &b;
    Ok(PairWitness {
        n,
        k,
        specialization,
        a,
        b,
        c,
        delta,
        b_expected,
        pass,
    })
}

impl PairWitness {
    fn into_result(
        self,
        cov: &Covariant,
        kind: WitnessKind,
        p: u64,
        expected: u32,
    ) -> Result<WitnessResult> {
        let mut w = witness(kind, cov, p, Some(self.k), self.specialization, expected)?;
        w.pass &= self.pass;
        Ok(w)
    }
}

/// How an off-centre minimizer of `v_p(b_k)` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffcentreConstruction {
    /// `k = n - 1`.
    ShiftDown,
    /// `k = n - p^a` with `a = v_p(n+2)`.
    ResidueShift,
    /// `k = 3a + 1` from the base-3 maximizer.
    Ternary,
    /// Smallest off-centre minimizer found by scanning, used when the
    /// constructive index is not minimal and `p` does not divide `n + 2`.
    Search,
}

impl OffcentreConstruction {
    pub fn label(self) -> &'static str {
        match self {
            OffcentreConstruction::ShiftDown => "n-1",
            OffcentreConstruction::ResidueShift => "n-p^a",
            OffcentreConstruction::Ternary => "3a+1",
            OffcentreConstruction::Search => "search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffcentreWitness {
    pub n: usize,
    pub p: u64,
    pub k0: usize,
    pub construction: OffcentreConstruction,
    pub valuation: u32,
    pub e_min_bk: u32,
}

pub fn offcentre_witness(n: usize, p: u64) -> Result<OffcentreWitness> {
    offcentre_of(&Covariant::new(n)?, p)
}

pub fn offcentre_of(cov: &Covariant, p: u64) -> Result<OffcentreWitness> {
    require_odd_prime(p)?;
    let params = &cov.params;
    let (n, m) = (params.n, params.m as u64);
    if prime_power_of(cov).is_some_and(|pp| pp.p == p) {
        return Err(Error::domain(format!("m = {m} is a power of {p}")));
    }
    if n < 2 {
        return Err(Error::domain("n = 1 has no off-centre index"));
    }
    let bvals = b_valuations(cov, p)?;
    let e_min_bk = *bvals[1..=params.order].iter().min().expect("N >= 2");
    let divides = m % p == 0;

    let (k0, construction) = if p == 3 && divides {
        (
            ternary_index(params.order as u64)?,
            OffcentreConstruction::Ternary,
        )
    } else if divides {
        let a = vp_u64(p, m)?;
        let shift = p.pow(a) as usize;
        if shift > n {
            return Err(Error::integrity(format!(
                "n - p^a negative for n = {n}, p = {p}"
            )));
        }
        (n - shift, OffcentreConstruction::ResidueShift)
    } else {
        (n - 1, OffcentreConstruction::ShiftDown)
    };
    if construction == OffcentreConstruction::Ternary {
        check_ternary(cov, k0, &bvals)?;
    }

    let (k0, construction) = if k0 >= 1 && bvals[k0] == e_min_bk {
        (k0, construction)
    } else if !divides {
        let found = (1..=params.order)
            .find(|&k| k != n && k != n + 1 && bvals[k] == e_min_bk)
            .ok_or_else(|| {
                Error::integrity(format!("no off-centre minimizer of v_{p}(b_k) at n = {n}"))
            })?;
        (found, OffcentreConstruction::Search)
    } else {
        return Err(Error::integrity(format!(
            "constructive index {k0} ({}) is not minimal for v_{p}(b_k) at n = {n}: {} > {e_min_bk}",
            construction.label(),
            bvals[k0]
        )));
    };
    Ok(OffcentreWitness {
        n,
        p,
        k0,
        construction,
        valuation: bvals[k0],
        e_min_bk,
    })
}

fn ternary_index(order: u64) -> Result<usize> {
    let top = (order - 2) / 3;
    let (a, _) = even_f_maximizer(top)?;
    Ok(3 * a as usize + 1)
}

fn check_ternary(cov: &Covariant, k0: usize, bvals: &[u32]) -> Result<()> {
    let params = &cov.params;
    let order = params.order as u64;
    if k0 % 3 == 0 || k0 + 1 > params.n {
        return Err(Error::integrity(format!(
            "ternary index {k0} must satisfy 3 ∤ k and k <= n - 1"
        )));
    }
    let best = ternary_f(order, k0 as u64)?;
    for k in (0..=order).filter(|k| k % 3 != 0) {
        if ternary_f(order, k)? > best {
            return Err(Error::integrity(format!(
                "v_3 C({order}, {k}) exceeds the value at the ternary index {k0}"
            )));
        }
    }
    for j in (0..=params.order).step_by(3) {
        if j < params.degree && bvals[j] < bvals[j + 1] + 2 {
            return Err(Error::integrity(format!(
                "v_3(b_{j}) = {} < v_3(b_{}) + 2 = {}",
                bvals[j],
                j + 1,
                bvals[j + 1] + 2
            )));
        }
    }
    Ok(())
}

/// The four-point specialization around the centre for `n + 2 = p^k`:
/// `f_n = 1, f_{n+1} = -1, f_{n-t} = s, f_{n+t+1} = 1`, `t = p^{k-1}`.
pub fn deformation_specialization(n: usize, t: usize, s: i64) -> Specialization {
    let n32 = n as u32;
    let t32 = t as u32;
    Specialization::new()
        .with(n32, 1)
        .with(n32 + 1, -1)
        .with(n32 - t32, s)
        .with(n32 + t32 + 1, 1)
}

pub fn deformation_witness(n: usize) -> Result<WitnessResult> {
    deformation_of(&Covariant::new(n)?)
}

pub fn deformation_of(cov: &Covariant) -> Result<WitnessResult> {
    let pp = odd_prime_power_of(cov)?;
    let t = pp.p.pow(pp.k - 1) as usize;
    let e = profile_of(cov, pp.p)?.e_min_q;
    let spec = deformation_specialization(cov.n(), t, 1);
    witness(WitnessKind::Deformation, cov, pp.p, None, spec, 2 * e + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffcentreValuationReport {
    pub n: usize,
    pub p: u64,
    pub t: usize,
    pub index: usize,
    pub valuation: u32,
    pub e_min_bk: u32,
    pub pass: bool,
}

/// `v_p(b_{n-t}) = e_p + 1` for `n + 2 = p^k`, `k >= 2`, `t = p^{k-1}`.
pub fn offcentre_valuation_check(n: usize) -> Result<OffcentreValuationReport> {
    offcentre_valuation_of(&Covariant::new(n)?)
}

pub fn offcentre_valuation_of(cov: &Covariant) -> Result<OffcentreValuationReport> {
    let pp = odd_prime_power_of(cov)?;
    if pp.k < 2 {
        return Err(Error::domain(format!(
            "m = {} is a first power",
            cov.params.m
        )));
    }
    let n = cov.n();
    let t = pp.p.pow(pp.k - 1) as usize;
    let bvals = b_valuations(cov, pp.p)?;
    let e_min_bk = *bvals[1..=cov.params.order].iter().min().expect("N >= 2");
    let index = n - t;
    let valuation = bvals[index];
    Ok(OffcentreValuationReport {
        n,
        p: pp.p,
        t,
        index,
        valuation,
        e_min_bk,
        pass: valuation == e_min_bk + 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P2Case {
    /// `v_2(cont G) != v_2(cont A)`.
    A,
    /// `v_2(cont G) = v_2(cont A)`.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseBDetail {
    pub d: u32,
    /// `v_2 cont(G'^2 - A'C')` after dividing out `2^d`.
    pub v2_reduced: u32,
    pub witness_k0: usize,
    /// `v_2` of `(G'^2 - A'C')` at the pair point `k0`.
    pub witness_v2: u32,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentreNotMaximal {
    pub j0: usize,
    pub v2_j0: u32,
    pub v2_centre: u32,
    pub v2_max: u32,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P2Report {
    pub n: usize,
    pub cont_g: BigUint,
    pub cont_a: BigUint,
    pub cont_c: BigUint,
    pub v2_cont_g: u32,
    pub v2_cont_a: u32,
    pub case: P2Case,
    pub m_is_power_of_two: bool,
    pub case_matches: bool,
    /// `v_2(cont A) = v_2(cont G) + 1`, checked in case A.
    pub case_a_gap: Option<bool>,
    pub case_b: Option<CaseBDetail>,
    pub v2_inner: u32,
    pub v2_s: u32,
    /// Present for even `n` when `n + 2` is not a power of 2.
    pub centre: Option<CentreNotMaximal>,
    pub pass: bool,
}

pub fn p2_analysis(n: usize) -> Result<P2Report> {
    p2_of(&Covariant::new(n)?)
}

pub fn p2_of(cov: &Covariant) -> Result<P2Report> {
    let n = cov.n();
    let two = BigInt::from(2);
    let QuadForm { a, b, c } = &cov.q;
    let g = b.divide_exact_by_int(&two)?;
    let (cont_g, cont_a, cont_c) = (g.content()?, a.content()?, c.content()?);
    if cont_a != cont_c {
        return Err(Error::integrity(format!(
            "cont A = {cont_a} differs from cont C = {cont_c} at n = {n}"
        )));
    }
    let v2_cont_g = vp_nat(2, &cont_g)?;
    let v2_cont_a = vp_nat(2, &cont_a)?;
    let case = if v2_cont_g == v2_cont_a {
        P2Case::B
    } else {
        P2Case::A
    };
    let power = prime_power_of(cov).filter(|pp| pp.p == 2);
    let m_is_power_of_two = power.is_some();
    let case_matches = (case == P2Case::B) == m_is_power_of_two;

    let inner = &g.square() - &(a * c);
    let v2_inner = vp_nat(2, &inner.content()?)?;
    let v2_s = vp_nat(2, &cov.delta.content()?)?;

    let case_a_gap = (case == P2Case::A).then_some(v2_cont_a == v2_cont_g + 1);
    let case_b = match (case, power) {
        (P2Case::B, Some(pp)) => Some(case_b_detail(cov, &g, v2_cont_g, pp.k)?),
        _ => None,
    };
    let centre = if n % 2 == 0 && !m_is_power_of_two {
        Some(centre_not_maximal(n)?)
    } else {
        None
    };

    let pass = case_matches
        && case_a_gap.unwrap_or(true)
        && case_b.as_ref().is_none_or(|x| x.pass)
        && centre.as_ref().is_none_or(|x| x.pass)
        && v2_s % 2 == 0
        && v2_s == 2 + v2_inner;
    Ok(P2Report {
        n,
        cont_g,
        cont_a,
        cont_c,
        v2_cont_g,
        v2_cont_a,
        case,
        m_is_power_of_two,
        case_matches,
        case_a_gap,
        case_b,
        v2_inner,
        v2_s,
        centre,
        pass,
    })
}

fn case_b_detail(cov: &Covariant, g: &IntPoly, d: u32, k: u32) -> Result<CaseBDetail> {
    let n = cov.n();
    let scale = BigInt::one() << d;
    let gr = g.divide_exact_by_int(&scale)?;
    let ar = cov.q.a.divide_exact_by_int(&scale)?;
    let cr = cov.q.c.divide_exact_by_int(&scale)?;
    let reduced = &gr.square() - &(&ar * &cr);
    let v2_reduced = vp_nat(2, &reduced.content()?)?;
    let witness_k0 = n + (1usize << (k - 1));
    let at = reduced.evaluate(&pair_specialization(n, witness_k0));
    if at.is_zero() {
        return Err(Error::integrity(format!(
            "case B witness vanishes at n = {n}"
        )));
    }
    let witness_v2 = vp(2, &at)?;
    Ok(CaseBDetail {
        d,
        v2_reduced,
        witness_k0,
        witness_v2,
        pass: v2_reduced == 2 && witness_v2 == 2,
    })
}

/// For even `n` with `n + 2 = 2^{a+1}(2r+1)`, `r >= 1`, the index
/// `j0 = 2(2^{a+1} r - 1)` beats the centre: `v_2 C(M, j0) > v_2 C(M, n)`.
pub fn centre_not_maximal(n: usize) -> Result<CentreNotMaximal> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::domain(format!("expected even n >= 2, got {n}")));
    }
    let m = n as u64 + 2;
    let lead = vp_u64(2, m)?;
    let r = (m >> lead) / 2;
    if r == 0 {
        return Err(Error::domain(format!("m = {m} is a power of 2")));
    }
    let j0 = (2 * ((1u64 << lead) * r - 1)) as usize;
    let top = 2 * n as u64 + 1;
    let v2_j0 = vp_binomial(2, top, j0 as u64)?;
    let v2_centre = vp_binomial(2, top, n as u64)?;
    let mut v2_max = 0;
    for j in 0..=top {
        v2_max = v2_max.max(vp_binomial(2, top, j)?);
    }
    Ok(CentreNotMaximal {
        j0,
        v2_j0,
        v2_centre,
        v2_max,
        pass: j0 < n && v2_j0 > v2_centre && v2_max >= v2_j0,
    })
}

/// Pair witness for `p = 2`; its expected valuation is the value of
/// `v_2(S(n))` implied by the case analysis.
pub fn p2_witness(cov: &Covariant) -> Result<WitnessResult> {
    let params = &cov.params;
    let n = params.n;
    if n < 2 {
        return Err(Error::domain("n = 1 has no off-centre index"));
    }
    let report = p2_of(cov)?;
    let (k0, expected) = match &report.case_b {
        Some(b) => (b.witness_k0, 2 * (b.d + 2)),
        None => {
            let bvals = b_valuations(cov, 2)?;
            let e = *bvals[1..=params.order].iter().min().expect("N >= 2");
            let k0 = (1..=params.order)
                .find(|&k| k != n && k != n + 1 && bvals[k] == e)
                .ok_or_else(|| {
                    Error::integrity(format!("no off-centre minimizer of v_2(b_k) at n = {n}"))
                })?;
            (k0, 2 * e)
        }
    };
    pair_of(cov, k0)?.into_result(cov, WitnessKind::P2Pair, 2, expected)
}

/// The witness appropriate to the class of `p` relative to `m = n + 2`.
pub fn witness_for_prime(cov: &Covariant, p: u64) -> Result<WitnessResult> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if p == 2 {
        return p2_witness(cov);
    }
    if prime_power_of(cov).is_some_and(|pp| pp.p == p) {
        return deformation_of(cov);
    }
    let n = cov.n();
    let divides = cov.params.m as u64 % p == 0;
    if !divides && n >= 2 {
        let bvals = b_valuations(cov, p)?;
        let e = *bvals[1..=cov.params.order].iter().min().expect("N >= 2");
        let off_centre = (1..=cov.params.order).any(|k| k != n && k != n + 1 && bvals[k] == e);
        if !off_centre {
            return centred_witness(cov, p, 2 * e);
        }
    }
    let off = offcentre_of(cov, p)?;
    let kind = if off.construction == OffcentreConstruction::Ternary {
        WitnessKind::P3Ternary
    } else {
        WitnessKind::Pair
    };
    pair_of(cov, off.k0)?.into_result(cov, kind, p, 2 * off.e_min_bk)
}

/// `Delta_n` at `f_n = f_{n+1} = 1`. Used when the minimum of `v_p(b_k)`
/// is attained only at the centre, where `A_n` and `C_n` do not vanish.
pub fn centred_witness(cov: &Covariant, p: u64, expected: u32) -> Result<WitnessResult> {
    let n = cov.n();
    witness(
        WitnessKind::Pair,
        cov,
        p,
        Some(n),
        pair_specialization(n, n),
        expected,
    )
}

/// Witnesses for every prime `<= 2n+1` that admits one (all of them once
/// `n >= 2`).
pub fn witnesses(cov: &Covariant) -> Result<Vec<WitnessResult>> {
    let mut out = Vec::new();
    for p in primes_up_to(bound_for(cov.n())) {
        if cov.n() < 2 && p == 2 {
            continue;
        }
        out.push(witness_for_prime(cov, p)?);
    }
    Ok(out)
}
