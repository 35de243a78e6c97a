//! Exact Laurent polynomials over ℤ in variables indexed by (site, shift, layer).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Layer {
    #[serde(rename = "mut")]
    Mutable,
    #[serde(rename = "frozen")]
    Frozen,
}

/// A variable: `site` within a fundamental domain, `shift` the copy index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarKey {
    pub site: i64,
    pub shift: i64,
    pub layer: Layer,
}

impl VarKey {
    pub fn new(site: i64, shift: i64, layer: Layer) -> Self {
        Self { site, shift, layer }
    }

    pub fn mutable(site: i64) -> Self {
        Self::new(site, 0, Layer::Mutable)
    }

    pub fn frozen(site: i64) -> Self {
        Self::new(site, 0, Layer::Frozen)
    }

    pub fn is_frozen(&self) -> bool {
        self.layer == Layer::Frozen
    }
}

impl Ord for VarKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.layer, self.site, self.shift).cmp(&(other.layer, other.site, other.shift))
    }
}

impl PartialOrd for VarKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.layer {
            Layer::Mutable => 'x',
            Layer::Frozen => 'f',
        };
        write!(f, "{letter}{}", self.site)?;
        if self.shift != 0 {
            write!(f, "@{}", self.shift)?;
        }
        Ok(())
    }
}

/// A Laurent monomial: sorted variables with nonzero exponents.
///
/// Ordered lexicographically by exponent vector, which is a total order
/// compatible with multiplication.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(VarKey, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(key: VarKey) -> Self {
        Self(vec![(key, 1)])
    }

    /// Builds a monomial from possibly repeated, unsorted factors.
    pub fn from_exponents(factors: impl IntoIterator<Item = (VarKey, i32)>) -> Self {
        let mut acc: BTreeMap<VarKey, i32> = BTreeMap::new();
        for (k, e) in factors {
            *acc.entry(k).or_insert(0) += e;
        }
        Self(acc.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, key: &VarKey) -> i32 {
        self.0
            .binary_search_by(|(k, _)| k.cmp(key))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(VarKey, i32)] {
        &self.0
    }

    fn combine(&self, other: &Self, sign: i32) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn pow(&self, e: i32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Self(self.0.iter().map(|(k, x)| (*k, x * e)).collect())
    }

    pub fn map_vars(&self, f: impl Fn(VarKey) -> VarKey) -> Self {
        Self::from_exponents(self.0.iter().map(|(k, e)| (f(*k), *e)))
    }

    /// True when every variable is frozen with a nonnegative exponent.
    pub fn is_frozen_polynomial(&self) -> bool {
        self.0.iter().all(|(k, e)| k.is_frozen() && *e > 0)
    }

    /// The factors of the given layer.
    pub fn restrict(&self, layer: Layer) -> Self {
        Self(self.0.iter().copied().filter(|(k, _)| k.layer == layer).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some((_, e)), None) => return e.cmp(&0),
                (None, Some((_, e))) => return 0.cmp(e),
                (Some((ka, ea)), Some((kb, eb))) => match ka.cmp(kb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (k, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{k}")?;
            } else {
                write!(f, "{k}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division, remainder {remainder}")]
    Inexact { remainder: LaurentPoly },
    #[error("invalid coefficient {0:?}")]
    Coefficient(String),
}

static DIVISIONS: AtomicU64 = AtomicU64::new(0);
static INEXACT: AtomicU64 = AtomicU64::new(0);

/// Process-wide counters of calls to [`LaurentPoly::exact_div`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisionStats {
    pub divisions: u64,
    pub inexact: u64,
}

pub fn division_stats() -> DivisionStats {
    DivisionStats {
        divisions: DIVISIONS.load(AtomicOrdering::Relaxed),
        inexact: INEXACT.load(AtomicOrdering::Relaxed),
    }
}

/// A Laurent polynomial with integer coefficients, zero terms never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Monomial::one(), BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(), c.into())
    }

    pub fn var(key: VarKey) -> Self {
        Self::term(Monomial::var(key), BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
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

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.last_key_value()
    }

    /// The single term, if there is exactly one.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.first_key_value()
        } else {
            None
        }
    }

    pub fn variables(&self) -> BTreeSet<VarKey> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(k, _)| *k))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · m · other`.
    fn add_scaled(&mut self, c: &BigInt, m: &Monomial, other: &Self) {
        for (om, oc) in &other.terms {
            self.add_term(m.mul(om), c * oc);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`; a nonzero remainder is an error
    /// carrying the remainder at the point the division got stuck.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        DIVISIONS.fetch_add(1, AtomicOrdering::Relaxed);
        let result = self.exact_div_inner(divisor);
        if result.is_err() {
            INEXACT.fetch_add(1, AtomicOrdering::Relaxed);
        }
        result
    }

    fn exact_div_inner(&self, divisor: &Self) -> Result<Self, LaurentError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((dm, dc)) = divisor.as_term() {
            let mut q = BTreeMap::new();
            for (m, c) in &self.terms {
                let (quot, rem) = c.div_rem(dc);
                if !rem.is_zero() {
                    return Err(LaurentError::Inexact {
                        remainder: Self::term(m.clone(), c.clone()),
                    });
                }
                q.insert(m.div(dm), quot);
            }
            return Ok(Self { terms: q });
        }

        let (lo_a, hi_a) = self.degree_box();
        let (lo_b, hi_b) = divisor.degree_box();
        let mut vars: BTreeSet<VarKey> = lo_a.keys().copied().collect();
        vars.extend(lo_b.keys().copied());
        let get = |m: &BTreeMap<VarKey, i32>, k: &VarKey| m.get(k).copied().unwrap_or(0);
        let mut bounds = BTreeMap::new();
        for k in &vars {
            let lo = get(&lo_a, k) - get(&lo_b, k);
            let hi = get(&hi_a, k) - get(&hi_b, k);
            if lo > hi {
                return Err(LaurentError::Inexact {
                    remainder: self.clone(),
                });
            }
            bounds.insert(*k, (lo, hi));
        }
        let in_box = |m: &Monomial| {
            m.factors().iter().all(|(k, e)| match bounds.get(k) {
                Some((lo, hi)) => lo <= e && e <= hi,
                None => false,
            }) && bounds
                .iter()
                .all(|(k, (lo, hi))| *lo <= m.exponent(k) && m.exponent(k) <= *hi)
        };
        let lowest_q = self
            .terms
            .first_key_value()
            .unwrap()
            .0
            .div(divisor.terms.first_key_value().unwrap().0);
        let (lead_m, lead_c) = divisor.leading().unwrap();
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());

        let mut rem = self.clone();
        let mut quotient = BTreeMap::new();
        while let Some((m, c)) = rem.leading() {
            let (qc, r) = c.div_rem(&lead_c);
            let qm = m.div(&lead_m);
            if !r.is_zero() || qm < lowest_q || !in_box(&qm) {
                return Err(LaurentError::Inexact { remainder: rem });
            }
            rem.add_scaled(&-qc.clone(), &qm, divisor);
            quotient.insert(qm, qc);
        }
        Ok(Self { terms: quotient })
    }

    /// Per-variable minimum and maximum exponents, absent variables counting as 0.
    fn degree_box(&self) -> (BTreeMap<VarKey, i32>, BTreeMap<VarKey, i32>) {
        let vars = self.variables();
        let mut lo = BTreeMap::new();
        let mut hi = BTreeMap::new();
        for k in vars {
            let exps = self.terms.keys().map(|m| m.exponent(&k));
            let (mn, mx) = exps.fold((i32::MAX, i32::MIN), |(a, b), e| (a.min(e), b.max(e)));
            lo.insert(k, mn);
            hi.insert(k, mx);
        }
        (lo, hi)
    }

    /// Ring homomorphism renaming variables.
    pub fn map_vars(&self, f: impl Fn(VarKey) -> VarKey) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.map_vars(&f), c.clone());
        }
        out
    }

    /// Moves every variable `delta` copies along.
    pub fn shift_substitute(&self, delta: i64) -> Self {
        if delta == 0 {
            return self.clone();
        }
        self.map_vars(|k| VarKey { shift: k.shift + delta, ..k })
    }

    /// Identifies all copies of a site with copy 0.
    pub fn fold_substitute(&self) -> Self {
        self.map_vars(|k| VarKey { shift: 0, ..k })
    }

    /// Minimum exponent of `key` over all terms (0 when absent from some term).
    pub fn min_exponent(&self, key: &VarKey) -> i32 {
        self.terms
            .keys()
            .map(|m| m.exponent(key))
            .min()
            .unwrap_or(0)
    }

    /// Denominator vector with respect to the given initial variables:
    /// entry `k` is minus the smallest exponent of `k`. Frozen keys are skipped.
    pub fn denominator_vector<'a>(
        &self,
        initial: impl IntoIterator<Item = &'a VarKey>,
    ) -> BTreeMap<VarKey, i64> {
        initial
            .into_iter()
            .filter(|k| !k.is_frozen())
            .map(|k| (*k, -(self.min_exponent(k) as i64)))
            .collect()
    }

    /// Terms grouped by the mutable part of their monomial.
    pub fn split_by_mutable_part(&self) -> BTreeMap<Monomial, LaurentPoly> {
        let mut out: BTreeMap<Monomial, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.restrict(Layer::Mutable))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Evaluates all coefficients positive.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        for (m, c) in &small.terms {
            out.add_scaled(c, m, big);
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: Vec<ExpJson>,
}

#[derive(Serialize, Deserialize)]
struct ExpJson {
    site: i64,
    shift: i64,
    layer: Layer,
    e: i32,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    exps: m
                        .factors()
                        .iter()
                        .map(|(k, e)| ExpJson {
                            site: k.site,
                            shift: k.shift,
                            layer: k.layer,
                            e: *e,
                        })
                        .collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for t in raw.terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| D::Error::custom(LaurentError::Coefficient(t.coeff.clone())))?;
            let m = Monomial::from_exponents(
                t.exps
                    .into_iter()
                    .map(|x| (VarKey::new(x.site, x.shift, x.layer), x.e)),
            );
            p.add_term(m, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(site: i64) -> LaurentPoly {
        LaurentPoly::var(VarKey::mutable(site))
    }

    fn xs(site: i64, shift: i64) -> LaurentPoly {
        LaurentPoly::var(VarKey::new(site, shift, Layer::Mutable))
    }

    fn c(v: i64) -> LaurentPoly {
        LaurentPoly::constant(v)
    }

    fn inv(p: &LaurentPoly) -> LaurentPoly {
        let (m, _) = p.as_term().unwrap();
        LaurentPoly::term(m.pow(-1), BigInt::one())
    }

    #[test]
    fn difference_of_squares() {
        let a = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let b = &x(0) - &x(1);
        assert_eq!(a.exact_div(&b).unwrap(), &x(0) + &x(1));
    }

    #[test]
    fn division_by_variable_gives_laurent_terms() {
        let a = &(&x(0) * &x(0)) + &c(1);
        let q = a.exact_div(&x(0)).unwrap();
        assert_eq!(q, &x(0) + &inv(&x(0)));
    }

    #[test]
    fn inexact_division_reports_remainder() {
        let a = &x(0) + &c(1);
        let b = &x(0) - &c(1);
        match a.exact_div(&b) {
            Err(LaurentError::Inexact { remainder }) => assert!(!remainder.is_zero()),
            other => panic!("expected inexact, got {other:?}"),
        }
        assert_eq!(a.exact_div(&LaurentPoly::zero()), Err(LaurentError::DivisionByZero));
        assert!(matches!(c(3).exact_div(&c(2)), Err(LaurentError::Inexact { .. })));
    }

    #[test]
    fn zero_dividend() {
        assert!(LaurentPoly::zero().exact_div(&(&x(0) + &c(1))).unwrap().is_zero());
    }

    #[test]
    fn shift_and_fold_substitution() {
        let p = &xs(3, 0) * &inv(&xs(4, -1));
        assert_eq!(p.shift_substitute(2), &xs(3, 2) * &inv(&xs(4, 1)));
        let q = &xs(3, 2) + &xs(3, -1);
        assert_eq!(q.fold_substitute(), &c(2) * &x(3));
    }

    #[test]
    fn denominator_vector_of_exchange_ratio() {
        // (x1 + f0) / x0 has d-vector 1 at x0; x0 itself gives -1.
        let f0 = LaurentPoly::var(VarKey::frozen(0));
        let p = (&x(1) + &f0).exact_div(&x(0)).unwrap();
        let keys = [VarKey::mutable(0), VarKey::mutable(1), VarKey::frozen(0)];
        let d = p.denominator_vector(&keys);
        assert_eq!(d.len(), 2);
        assert_eq!(d[&VarKey::mutable(0)], 1);
        assert_eq!(d[&VarKey::mutable(1)], 0);
        let d0 = x(0).denominator_vector(&keys);
        assert_eq!(d0[&VarKey::mutable(0)], -1);
    }

    #[test]
    fn monomial_order_is_lexicographic_on_exponents() {
        let a = Monomial::var(VarKey::mutable(0));
        let b = Monomial::var(VarKey::mutable(1)).pow(5);
        assert!(a > b);
        assert!(Monomial::one() > a.pow(-1));
        assert!(a.mul(&b) > b);
    }

    #[test]
    fn display_and_json() {
        let p = &(&c(12) * &inv(&(&x(1) * &x(1)))) - &xs(2, -1);
        let text = serde_json::to_string(&p).unwrap();
        assert!(text.contains(r#"{"coeff":"12","exps":[{"site":1,"shift":0,"layer":"mut","e":-2}]}"#), "{text}");
        let back: LaurentPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(p.to_string(), "-x2@-1 + 12*x1^-2");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        let term = (-3i64..=3, prop::collection::vec((0i64..3, -1i64..=1, any::<bool>(), -2i32..=2), 0..3));
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(c, fs)| {
                let m = Monomial::from_exponents(fs.into_iter().map(|(s, sh, fz, e)| {
                    let layer = if fz { Layer::Frozen } else { Layer::Mutable };
                    (VarKey::new(s, sh, layer), e)
                }));
                (m, BigInt::from(c))
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), d in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
            prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn exact_division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
        }

        #[test]
        fn perturbed_product_is_inexact(a in arb_poly(), b in arb_poly()) {
            prop_assume!(b.len() >= 2);
            let prod = &(&a * &b) + &x(7);
            prop_assert!(prod.exact_div(&b).is_err());
        }

        #[test]
        fn substitutions_are_homomorphisms(a in arb_poly(), b in arb_poly(), delta in -3i64..=3) {
            prop_assert_eq!((&a * &b).shift_substitute(delta), &a.shift_substitute(delta) * &b.shift_substitute(delta));
            prop_assert_eq!((&a * &b).fold_substitute(), &a.fold_substitute() * &b.fold_substitute());
            prop_assert_eq!((&a + &b).fold_substitute(), &a.fold_substitute() + &b.fold_substitute());
            prop_assert_eq!(a.shift_substitute(delta).fold_substitute(), a.fold_substitute());
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            let text = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&text).unwrap(), a);
        }

        #[test]
        fn pow_matches_repeated_product(a in arb_poly(), e in 0u64..4) {
            let mut acc = LaurentPoly::one();
            for _ in 0..e { acc = &acc * &a; }
            prop_assert_eq!(a.pow(e), acc);
        }
    }
}
