//! Sparse multivariate polynomials over the integers in the variables
//! `f_0, f_1, ...`.
//!
//! Terms live in a `BTreeMap<Monomial, BigInt>`, so iteration order is the
//! canonical monomial order and equality is structural. Zero coefficients
//! are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A monomial `f_{i1}^{e1} f_{i2}^{e2} ...` stored as `(index, exponent)`
/// pairs sorted by index, exponents strictly positive.
///
/// The derived ordering is lexicographic on those pairs and is the
/// canonical serialization order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: u32) -> Self {
        Monomial(vec![(index, 1)])
    }

    /// Builds a monomial from arbitrary `(index, exponent)` pairs, merging
    /// repeated indices and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, e) in pairs {
            *map.entry(i).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// Product of the given variables, with multiplicity.
    pub fn product_of(indices: &[u32]) -> Self {
        Self::from_pairs(indices.iter().map(|&i| (i, 1)))
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn exponent(&self, index: u32) -> u32 {
        self.0
            .binary_search_by_key(&index, |&(i, _)| i)
            .map_or(0, |pos| self.0[pos].1)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Sum of variable indices counted with multiplicity (the isobaric weight).
    pub fn index_sum(&self) -> u64 {
        self.0.iter().map(|&(i, e)| i as u64 * e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (pos, &(i, e)) in self.0.iter().enumerate() {
            if pos > 0 {
                f.write_str(" ")?;
            }
            if e == 1 {
                write!(f, "f_{i}")?;
            } else {
                write!(f, "f_{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Integer assignments to the variables; anything unassigned reads as 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Specialization {
    values: BTreeMap<u32, BigInt>,
}

impl Specialization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `f_index = value`; assigning 0 clears the entry.
    pub fn set(&mut self, index: u32, value: impl Into<BigInt>) -> &mut Self {
        let value = value.into();
        if value.is_zero() {
            self.values.remove(&index);
        } else {
            self.values.insert(index, value);
        }
        self
    }

    pub fn with(mut self, index: u32, value: impl Into<BigInt>) -> Self {
        self.set(index, value);
        self
    }

    pub fn get(&self, index: u32) -> Option<&BigInt> {
        self.values.get(&index)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.values.iter().map(|(&i, v)| (i, v))
    }
}

/// Sparse polynomial with arbitrary-precision integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(index: u32) -> Self {
        Self::term(1, Monomial::var(index))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place, keeping the zero-free invariant.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &BigInt> {
        self.terms.values()
    }

    pub fn coefficient_of(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Gcd of the absolute values of all coefficients.
    pub fn content(&self) -> Result<BigUint> {
        if self.is_zero() {
            return Err(Error::domain("content of the zero polynomial"));
        }
        let mut g = BigUint::zero();
        for c in self.terms.values() {
            g = g.gcd(c.magnitude());
            if g.is_one() {
                break;
            }
        }
        Ok(g)
    }

    /// `self / d`, requiring `d` to divide every coefficient.
    pub fn divide_exact_by_int(&self, d: &BigInt) -> Result<IntPoly> {
        if d.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::integrity(format!(
                    "coefficient {c} of {m} is not divisible by {d}"
                )));
            }
            terms.insert(m.clone(), q);
        }
        Ok(IntPoly { terms })
    }

    /// Coefficients reduced into `0..modulus`; vanishing terms dropped.
    pub fn reduce_mod(&self, modulus: &BigInt) -> IntPoly {
        IntPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mod_floor(modulus))),
        )
    }

    pub fn evaluate(&self, s: &Specialization) -> BigInt {
        let mut total = BigInt::zero();
        'terms: for (m, c) in &self.terms {
            let mut value = c.clone();
            for &(i, e) in m.pairs() {
                match s.get(i) {
                    Some(x) => value *= num_traits::pow(x.clone(), e as usize),
                    None => continue 'terms,
                }
            }
            total += value;
        }
        total
    }

    /// `Some(d)` if every monomial has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// `Some(w)` if every monomial has index sum `w`.
    pub fn isobaric_weight(&self) -> Option<u64> {
        let mut weights = self.terms.keys().map(Monomial::index_sum);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn square(&self) -> IntPoly {
        self * self
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// One term per line: `coeff * f_i^e f_j ...`, canonical order, decimal
/// coefficients. Constant terms are written as the bare coefficient and the
/// zero polynomial as `0`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        for (m, c) in &self.terms {
            if m.is_one() {
                writeln!(f, "{c}")?;
            } else {
                writeln!(f, "{c} * {m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<IntPoly> {
        let mut p = IntPoly::zero();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (coeff, mono) = match line.split_once('*') {
                Some((c, m)) => (c.trim(), m.trim()),
                None => (line, ""),
            };
            let c: BigInt = coeff
                .parse()
                .map_err(|_| Error::domain(format!("bad coefficient `{coeff}`")))?;
            let mut pairs = Vec::new();
            for factor in mono.split_whitespace() {
                let body = factor
                    .strip_prefix("f_")
                    .ok_or_else(|| Error::domain(format!("bad factor `{factor}`")))?;
                let (idx, exp) = body.split_once('^').unwrap_or((body, "1"));
                let parse = |t: &str| {
                    t.parse::<u32>()
                        .map_err(|_| Error::domain(format!("bad factor `{factor}`")))
                };
                pairs.push((parse(idx)?, parse(exp)?));
            }
            p.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(p)
    }
}
