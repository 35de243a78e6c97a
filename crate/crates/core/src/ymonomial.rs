//! Monomials in the variables `Y_{i,q^k}`: the folding map `φ_2n`, the
//! Nakajima order, root and Kirillov-Reshetikhin monomials, and the
//! d-grading.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster::RootInterval;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum YError {
    #[error("cannot combine monomials over {0} and {1}")]
    FamilyMismatch(Family, Family),
    #[error("expected infinite sites, got {0}")]
    NotInfinite(Family),
    #[error("toroidal modulus must be even and positive, got {0}")]
    Modulus(i64),
    #[error("negative length {0}")]
    NegativeLength(i64),
    #[error("{0} lies outside the graded subgroup")]
    Ungraded(String),
}

/// Index set of the sites: `ℤ`, or `ℤ/2nℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Infinite,
    Toroidal { modulus: i64 },
}

impl Family {
    pub fn toroidal(modulus: i64) -> Result<Self, YError> {
        if modulus <= 0 || modulus % 2 != 0 {
            return Err(YError::Modulus(modulus));
        }
        Ok(Self::Toroidal { modulus })
    }

    fn reduce(&self, i: i64) -> i64 {
        match self {
            Self::Infinite => i,
            Self::Toroidal { modulus } => i.rem_euclid(*modulus),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinite => f.write_str("infinite sites"),
            Self::Toroidal { modulus } => write!(f, "sites mod {modulus}"),
        }
    }
}

/// A site in one of the two families; toroidal residues are kept in `0..modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SiteIndex {
    family: Family,
    index: i64,
}

impl SiteIndex {
    pub fn infinite(i: i64) -> Self {
        Self {
            family: Family::Infinite,
            index: i,
        }
    }

    pub fn toroidal(i: i64, modulus: i64) -> Result<Self, YError> {
        let family = Family::toroidal(modulus)?;
        Ok(Self {
            family,
            index: family.reduce(i),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    /// The site `index + d`, wrapping on the torus.
    pub fn offset(&self, d: i64) -> Self {
        Self {
            family: self.family,
            index: self.family.reduce(self.index + d),
        }
    }
}

/// `ξ(i)`: 0 for even sites, 1 for odd.
pub fn xi(i: i64) -> i64 {
    i.rem_euclid(2)
}

/// A Laurent monomial `Π Y_{i,q^k}^{e}` over one site family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "YMonomialJson", into = "YMonomialJson")]
pub struct YMonomial {
    family: Family,
    exps: BTreeMap<(i64, i64), i64>,
}

impl YMonomial {
    pub fn one(family: Family) -> Self {
        Self {
            family,
            exps: BTreeMap::new(),
        }
    }

    /// `Y_{site,q^k}`.
    pub fn y(site: SiteIndex, k: i64) -> Self {
        Self::from_exponents(site.family, [((site.index, k), 1)])
    }

    pub fn from_exponents(family: Family, exps: impl IntoIterator<Item = ((i64, i64), i64)>) -> Self {
        let mut m = Self::one(family);
        for ((i, k), e) in exps {
            m.add_exponent(family.reduce(i), k, e);
        }
        m
    }

    fn add_exponent(&mut self, i: i64, k: i64, e: i64) {
        let slot = self.exps.entry((i, k)).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&(i, k));
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, i: i64, k: i64) -> i64 {
        self.exps
            .get(&(self.family.reduce(i), k))
            .copied()
            .unwrap_or(0)
    }

    /// Nonzero exponents keyed by `(site, qpower)`.
    pub fn exponents(&self) -> &BTreeMap<(i64, i64), i64> {
        &self.exps
    }

    /// All exponents nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.exps.values().all(|e| *e >= 0)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, YError> {
        if self.family != other.family {
            return Err(YError::FamilyMismatch(self.family, other.family));
        }
        let mut out = self.clone();
        for (&(i, k), &e) in &other.exps {
            out.add_exponent(i, k, e);
        }
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Self {
        Self {
            family: self.family,
            exps: if e == 0 {
                BTreeMap::new()
            } else {
                self.exps.iter().map(|(key, x)| (*key, x * e)).collect()
            },
        }
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// Weight `Σ e·ω_i`, as a map from site to coefficient.
    pub fn weight(&self) -> BTreeMap<i64, i64> {
        let mut w = BTreeMap::new();
        for (&(i, _), &e) in &self.exps {
            *w.entry(i).or_insert(0) += e;
        }
        w.retain(|_, v| *v != 0);
        w
    }

    fn q_range(&self) -> Option<(i64, i64)> {
        let lo = self.exps.keys().map(|(_, k)| *k).min()?;
        let hi = self.exps.keys().map(|(_, k)| *k).max()?;
        Some((lo, hi))
    }
}

/// # Panics
/// If the two monomials use different site families.
impl Mul for &YMonomial {
    type Output = YMonomial;

    fn mul(self, rhs: &YMonomial) -> YMonomial {
        self.checked_mul(rhs).expect("monomials of one family")
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(&(i, k), &e)| power("Y", i, k, e))
            .collect();
        f.write_str(&parts.join("*"))
    }
}

fn power(letter: &str, i: i64, k: i64, e: i64) -> String {
    if e == 1 {
        format!("{letter}[{i},{k}]")
    } else {
        format!("{letter}[{i},{k}]^{e}")
    }
}

#[derive(Serialize, Deserialize)]
struct YExponentJson {
    site: i64,
    q: i64,
    e: i64,
}

#[derive(Serialize, Deserialize)]
struct YMonomialJson {
    #[serde(flatten)]
    family: Family,
    exps: Vec<YExponentJson>,
}

impl TryFrom<YMonomialJson> for YMonomial {
    type Error = YError;

    fn try_from(j: YMonomialJson) -> Result<Self, YError> {
        if let Family::Toroidal { modulus } = j.family {
            Family::toroidal(modulus)?;
        }
        Ok(Self::from_exponents(
            j.family,
            j.exps.into_iter().map(|x| ((x.site, x.q), x.e)),
        ))
    }
}

impl From<YMonomial> for YMonomialJson {
    fn from(m: YMonomial) -> Self {
        Self {
            family: m.family,
            exps: m
                .exps
                .into_iter()
                .map(|((site, q), e)| YExponentJson { site, q, e })
                .collect(),
        }
    }
}

/// `A_{i,q^k} = Y_{i,q^{k-1}} Y_{i,q^{k+1}} Y_{i-1,q^k}^{-1} Y_{i+1,q^k}^{-1}`.
pub fn a_monomial(site: SiteIndex, k: i64) -> YMonomial {
    let i = site.index;
    YMonomial::from_exponents(
        site.family,
        [((i, k - 1), 1), ((i, k + 1), 1), ((i - 1, k), -1), ((i + 1, k), -1)],
    )
}

/// `φ_2n`: reduces every site modulo `2n`.
pub fn phi_fold(m: &YMonomial, n: usize) -> Result<YMonomial, YError> {
    if m.family != Family::Infinite {
        return Err(YError::NotInfinite(m.family));
    }
    let family = Family::toroidal(2 * n as i64)?;
    Ok(YMonomial::from_exponents(family, m.exps.iter().map(|(k, e)| (*k, *e))))
}

/// Exponents `c(i,k) ≥ 0` with `m1 = m2 · Π A_{i,q^k}^{-c(i,k)}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Certificate(BTreeMap<(i64, i64), u64>);

impl Certificate {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: i64, k: i64) -> u64 {
        self.0.get(&(i, k)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(i64, i64), u64> {
        &self.0
    }

    /// `Π A_{i,q^k}^{-c(i,k)}` over `family`.
    pub fn monomial(&self, family: Family) -> YMonomial {
        self.0.iter().fold(YMonomial::one(family), |acc, (&(i, k), &c)| {
            let a = a_monomial(SiteIndex { family, index: family.reduce(i) }, k);
            &acc * &a.pow(-(c as i64))
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(&(i, k), &c)| power("A", i, k, -(c as i64)))
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Decides `m1 ≤ m2` in the Nakajima order, returning the certificate.
///
/// The quotient `m2 · m1^{-1}` must be `Π A^{c}`. Its lowest q-level only
/// receives the factors `Y_{i,q^{k-1}}` of the `A_{i,q^k}` with smallest
/// `k`, so the exponents there fix those `c(i,k)`; dividing them out and
/// repeating decides the question. Past the top level minus two nothing
/// can cancel any more.
pub fn nakajima_leq(m1: &YMonomial, m2: &YMonomial) -> Result<Option<Certificate>, YError> {
    let mut rest = m2.checked_mul(&m1.inverse())?;
    let family = rest.family;
    let Some((_, top)) = rest.q_range() else {
        return Ok(Some(Certificate::default()));
    };
    let mut cert = BTreeMap::new();
    while let Some((low, _)) = rest.q_range() {
        if low > top - 2 {
            return Ok(None);
        }
        let level: Vec<(i64, i64)> = rest
            .exps
            .iter()
            .filter(|((_, k), _)| *k == low)
            .map(|(&(i, _), &e)| (i, e))
            .collect();
        for (i, e) in level {
            if e < 0 {
                return Ok(None);
            }
            let a = a_monomial(SiteIndex { family, index: i }, low + 1);
            rest = &rest * &a.pow(-e);
            *cert.entry((i, low + 1)).or_insert(0) += e as u64;
        }
    }
    Ok(Some(Certificate(cert)))
}

/// The monomial `m_α` of an almost positive root on infinite sites.
pub fn m_alpha(root: &RootInterval) -> YMonomial {
    let fam = Family::Infinite;
    match *root {
        RootInterval::NegativeSimple { i } => {
            let k = if xi(i) == 0 { 2 } else { 1 };
            YMonomial::from_exponents(fam, [((i, k), 1)])
        }
        RootInterval::Positive { i, j } => YMonomial::from_exponents(
            fam,
            (i..=j).map(|s| ((s, if xi(s) == 0 { 0 } else { 3 }), 1)),
        ),
    }
}

/// `Π_{j=1}^{k} Y_{i,q^{a+2(j-1)}}`.
pub fn kr_monomial(site: SiteIndex, a: i64, k: i64) -> Result<YMonomial, YError> {
    if k < 0 {
        return Err(YError::NegativeLength(k));
    }
    Ok(YMonomial::from_exponents(
        site.family,
        (0..k).map(|j| ((site.index, a + 2 * j), 1)),
    ))
}

/// The partner pair `Y_{i,q^{ξ(i)}} Y_{i,q^{ξ(i)+2}}`.
pub fn partner_pair(site: SiteIndex) -> YMonomial {
    let i = site.index;
    YMonomial::from_exponents(site.family, [((i, xi(i)), 1), ((i, xi(i) + 2), 1)])
}

/// Grade of a monomial in the subgroup generated by the `Y_{i,q^{ξ(i)}}`
/// and `Y_{i,q^{ξ(i)+2}}`.
///
/// `Y_{i,q^{ξ(i)}}` has degree `+1` on even sites and `-1` on odd ones,
/// its partner the opposite, so that every `A_{i,q^{ξ(i)+1}}^{-1}` has
/// degree `-2`.
pub fn d_grade(m: &YMonomial) -> Result<i64, YError> {
    let mut d = 0;
    for (&(i, k), &e) in &m.exps {
        let sign = if xi(i) == 0 { 1 } else { -1 };
        let g = if k == xi(i) {
            sign
        } else if k == xi(i) + 2 {
            -sign
        } else {
            return Err(YError::Ungraded(power("Y", i, k, 1)));
        };
        d += g * e;
    }
    Ok(d)
}

/// Outcome of the μ-dominance check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum MuDominance {
    Dominated { weight: YMonomial },
    NotDominated { reason: String },
}

/// Checks that a finite formal sum has a dominant monomial `m` of
/// coefficient 1 bounding every term in the Nakajima order, and that no
/// `m · (Y_{i,q^{ξ(i)}} Y_{i,q^{ξ(i)+2}})^{-1}` is dominant.
pub fn is_mu_dominated(sum: &[(YMonomial, i64)]) -> Result<MuDominance, YError> {
    let mut terms: Vec<(YMonomial, i64)> = Vec::new();
    for (m, c) in sum {
        if let Some(first) = terms.first() {
            if first.0.family != m.family {
                return Err(YError::FamilyMismatch(first.0.family, m.family));
            }
        }
        match terms.iter_mut().find(|(x, _)| x == m) {
            Some(slot) => slot.1 += c,
            None => terms.push((m.clone(), *c)),
        }
    }
    terms.retain(|(_, c)| *c != 0);
    let not = |reason: String| Ok(MuDominance::NotDominated { reason });

    let mut top = None;
    for (m, c) in &terms {
        if *c != 1 || !m.is_dominant() {
            continue;
        }
        let mut bounds_all = true;
        for (x, _) in &terms {
            if nakajima_leq(x, m)?.is_none() {
                bounds_all = false;
                break;
            }
        }
        if bounds_all {
            top = Some(m.clone());
            break;
        }
    }
    let Some(m) = top else {
        return not("no dominant monomial of coefficient 1 bounds every term".into());
    };
    let sites: std::collections::BTreeSet<i64> = m.exps.keys().map(|(i, _)| *i).collect();
    for i in sites {
        let pair = partner_pair(SiteIndex { family: m.family, index: i });
        if (&m * &pair.inverse()).is_dominant() {
            return not(format!("{m} stays dominant after removing {pair}"));
        }
    }
    Ok(MuDominance::Dominated { weight: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inf(entries: &[((i64, i64), i64)]) -> YMonomial {
        YMonomial::from_exponents(Family::Infinite, entries.iter().copied())
    }

    #[test]
    fn a_monomials() {
        let a = a_monomial(SiteIndex::infinite(1), 2);
        assert_eq!(a, inf(&[((1, 1), 1), ((1, 3), 1), ((0, 2), -1), ((2, 2), -1)]));
        assert_eq!(a.to_string(), "Y[0,2]^-1*Y[1,1]*Y[1,3]*Y[2,2]^-1");
        let t = a_monomial(SiteIndex::toroidal(0, 2).unwrap(), 1);
        assert_eq!(t.exponent(1, 1), -2);
        assert_eq!(t.exponent(0, 0), 1);
        assert_eq!(t.exponent(0, 2), 1);
        assert!((&a * &a.inverse()).is_one());
    }

    #[test]
    fn folding() {
        let y5 = YMonomial::y(SiteIndex::infinite(5), 1);
        assert_eq!(phi_fold(&y5, 2).unwrap(), YMonomial::y(SiteIndex::toroidal(1, 4).unwrap(), 1));
        assert!(phi_fold(&YMonomial::one(Family::Infinite), 2).unwrap().is_one());
        let t = phi_fold(&y5, 2).unwrap();
        assert_eq!(phi_fold(&t, 2), Err(YError::NotInfinite(t.family())));
        assert!(Family::toroidal(3).is_err());
    }

    #[test]
    fn nakajima_examples() {
        let m1 = inf(&[((0, 2), 1), ((2, 2), 1)]);
        let m2 = inf(&[((1, 1), 1), ((1, 3), 1)]);
        let c = nakajima_leq(&m1, &m2).unwrap().unwrap();
        assert_eq!(c.get(1, 2), 1);
        assert_eq!(c.entries().len(), 1);
        assert_eq!(c.to_string(), "A[1,2]^-1");
        assert_eq!(&m2 * &c.monomial(Family::Infinite), m1);
        assert!(nakajima_leq(&m2, &m1).unwrap().is_none());
        assert!(nakajima_leq(&m1, &m1).unwrap().unwrap().is_empty());
        let y11 = inf(&[((1, 1), 1)]);
        let y21 = inf(&[((2, 1), 1)]);
        assert!(nakajima_leq(&y11, &y21).unwrap().is_none());
        assert!(nakajima_leq(&y11, &YMonomial::y(SiteIndex::toroidal(1, 4).unwrap(), 1)).is_err());
    }

    #[test]
    fn root_and_kr_monomials() {
        assert_eq!(m_alpha(&RootInterval::simple(1)).to_string(), "Y[1,3]");
        assert_eq!(m_alpha(&RootInterval::positive(1, 2)).to_string(), "Y[1,3]*Y[2,0]");
        assert_eq!(m_alpha(&RootInterval::negative(0)).to_string(), "Y[0,2]");
        assert_eq!(m_alpha(&RootInterval::negative(3)).to_string(), "Y[3,1]");
        let s = SiteIndex::infinite(4);
        assert_eq!(kr_monomial(s, 0, 1).unwrap(), YMonomial::y(s, 0));
        assert_eq!(kr_monomial(s, 1, 3).unwrap().to_string(), "Y[4,1]*Y[4,3]*Y[4,5]");
        assert!(kr_monomial(s, 0, 0).unwrap().is_one());
        assert_eq!(kr_monomial(s, 0, -1), Err(YError::NegativeLength(-1)));
    }

    #[test]
    fn grading() {
        let t = |i| SiteIndex::toroidal(i, 4).unwrap();
        // Even sites carry +1 on Y_{i,q^0}; see the sign convention on d_grade.
        assert_eq!(d_grade(&YMonomial::y(t(0), 0)).unwrap(), 1);
        assert_eq!(d_grade(&YMonomial::y(t(1), 1)).unwrap(), -1);
        for i in 0..4 {
            assert_eq!(d_grade(&partner_pair(t(i))).unwrap(), 0);
            let a = a_monomial(t(i), xi(i) + 1);
            assert_eq!(d_grade(&a.inverse()).unwrap(), -2);
        }
        assert!(matches!(d_grade(&YMonomial::y(t(0), 1)), Err(YError::Ungraded(_))));
    }

    #[test]
    fn mu_dominance() {
        let t = |i| SiteIndex::toroidal(i, 4).unwrap();
        let m = YMonomial::y(t(0), 0);
        assert!(matches!(is_mu_dominated(&[(m.clone(), 1)]).unwrap(), MuDominance::Dominated { .. }));
        let lower = &m * &a_monomial(t(0), 1).inverse();
        assert!(matches!(
            is_mu_dominated(&[(m.clone(), 1), (lower, 3)]).unwrap(),
            MuDominance::Dominated { .. }
        ));
        let unrelated = YMonomial::y(t(1), 1);
        assert!(matches!(
            is_mu_dominated(&[(m.clone(), 1), (unrelated, 1)]).unwrap(),
            MuDominance::NotDominated { .. }
        ));
        assert!(matches!(
            is_mu_dominated(&[(partner_pair(t(2)), 1)]).unwrap(),
            MuDominance::NotDominated { .. }
        ));
        assert!(matches!(is_mu_dominated(&[(m, 2)]).unwrap(), MuDominance::NotDominated { .. }));
    }

    #[test]
    fn json_round_trip() {
        let m = &a_monomial(SiteIndex::toroidal(1, 6).unwrap(), 2) * &YMonomial::y(SiteIndex::toroidal(3, 6).unwrap(), 0);
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with(r#"{"family":"toroidal","modulus":6,"exps":["#), "{s}");
        assert_eq!(serde_json::from_str::<YMonomial>(&s).unwrap(), m);
        let bad = r#"{"family":"toroidal","modulus":5,"exps":[]}"#;
        assert!(serde_json::from_str::<YMonomial>(bad).is_err());
    }

    fn family() -> impl Strategy<Value = Family> {
        prop_oneof![Just(Family::Infinite), (1i64..4).prop_map(|n| Family::Toroidal { modulus: 2 * n })]
    }

    fn certificate() -> impl Strategy<Value = BTreeMap<(i64, i64), u64>> {
        prop::collection::btree_map((-6i64..6, -6i64..6), 1u64..4, 1..6)
    }

    fn monomial(family: Family) -> impl Strategy<Value = YMonomial> {
        prop::collection::vec(((-6i64..6, -4i64..6), -2i64..3), 0..6)
            .prop_map(move |v| YMonomial::from_exponents(family, v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn nonzero_certificates_give_nontrivial_monomials(fam in family(), c in certificate()) {
            let c: BTreeMap<(i64, i64), u64> = c.into_iter().map(|((i, k), v)| ((fam.reduce(i), k), v)).collect();
            let m = Certificate(c).monomial(fam);
            prop_assert!(!m.is_one());
        }

        #[test]
        fn certificates_are_recovered(fam in family(), c in certificate(), m2 in monomial(Family::Infinite)) {
            let m2 = YMonomial::from_exponents(fam, m2.exps.clone());
            let c: BTreeMap<(i64, i64), u64> = c.into_iter().map(|((i, k), v)| ((fam.reduce(i), k), v)).collect();
            let cert = Certificate(c);
            let m1 = &m2 * &cert.monomial(fam);
            prop_assert_eq!(nakajima_leq(&m1, &m2).unwrap(), Some(cert));
            prop_assert!(nakajima_leq(&m2, &m1).unwrap().is_none());
        }

        #[test]
        fn order_is_reflexive_and_antisymmetric(a in monomial(Family::Infinite), b in monomial(Family::Infinite)) {
            prop_assert!(nakajima_leq(&a, &a).unwrap().unwrap().is_empty());
            let ab = nakajima_leq(&a, &b).unwrap().is_some();
            let ba = nakajima_leq(&b, &a).unwrap().is_some();
            prop_assert!(!(ab && ba) || a == b);
        }

        #[test]
        fn equal_weight_below_means_equal(c in certificate(), m in monomial(Family::Infinite)) {
            let lower = &m * &Certificate(c).monomial(Family::Infinite);
            prop_assert_ne!(lower.weight(), m.weight());
        }

        #[test]
        fn fold_is_a_homomorphism(a in monomial(Family::Infinite), b in monomial(Family::Infinite), n in 1usize..4) {
            prop_assert_eq!(phi_fold(&(&a * &b), n).unwrap(), &phi_fold(&a, n).unwrap() * &phi_fold(&b, n).unwrap());
        }
    }
}
