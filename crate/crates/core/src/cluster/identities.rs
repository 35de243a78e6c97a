//! Symbolic verification of exchange relations with unknown frozen factors.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AInfinityWindow, ClusterError, GammaCoordinates, RootInterval, VariableFinder};
use crate::laurent::{LaurentPoly, Monomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscoveryError {
    #[error("no mutable monomial singles out one of the remaining terms {0:?}")]
    Undetermined(Vec<usize>),
    #[error("term {term} is not a frozen monomial multiple of the left side")]
    NotMonomial { term: usize },
    #[error("nonzero residual {0}")]
    Residual(LaurentPoly),
}

/// Finds frozen monomials `f_k` with `lhs = Σ candidates[k] · f_k`.
///
/// Terms are grouped by their mutable part. A group that occurs in exactly
/// one undetermined candidate fixes that candidate's factor as a monomial
/// quotient; its contribution is subtracted and the search repeats. The
/// final residual must vanish.
pub fn discover_frozen_factors(
    lhs: &LaurentPoly,
    candidates: &[LaurentPoly],
) -> Result<Vec<Monomial>, DiscoveryError> {
    let parts: Vec<_> = candidates.iter().map(|c| c.split_by_mutable_part()).collect();
    let mut remaining = lhs.clone();
    let mut unknown: BTreeSet<usize> = (0..candidates.len()).collect();
    let mut found: Vec<Option<Monomial>> = vec![None; candidates.len()];
    while !unknown.is_empty() {
        let rem_parts = remaining.split_by_mutable_part();
        let pick = unknown.iter().find_map(|&k| {
            parts[k]
                .iter()
                .find(|(mu, _)| unknown.iter().all(|&l| l == k || !parts[l].contains_key(*mu)))
                .map(|(mu, c_mu)| (k, mu.clone(), c_mu.clone()))
        });
        let Some((k, mu, c_mu)) = pick else {
            return Err(DiscoveryError::Undetermined(unknown.into_iter().collect()));
        };
        let r_mu = rem_parts.get(&mu).cloned().unwrap_or_default();
        let factor = monomial_quotient(&r_mu, &c_mu).ok_or(DiscoveryError::NotMonomial { term: k })?;
        if !(factor.is_one() || factor.is_frozen_polynomial()) {
            return Err(DiscoveryError::NotMonomial { term: k });
        }
        remaining = &remaining - &candidates[k].mul_monomial(&factor);
        unknown.remove(&k);
        found[k] = Some(factor);
    }
    if !remaining.is_zero() {
        return Err(DiscoveryError::Residual(remaining));
    }
    Ok(found.into_iter().map(Option::unwrap).collect())
}

/// `m` with `a = b · m`, if `a` is a monomial multiple of `b` with unit coefficient.
fn monomial_quotient(a: &LaurentPoly, b: &LaurentPoly) -> Option<Monomial> {
    if a.len() != b.len() || a.is_zero() {
        return None;
    }
    let (ma, ca) = a.leading()?;
    let (mb, cb) = b.leading()?;
    if ca != cb {
        return None;
    }
    let m = ma.div(mb);
    (b.mul_monomial(&m) == *a).then_some(m)
}

/// The four families of exchange relations between type A∞ cluster
/// variables `x[α_{i,j}]` with `i + 2 ≤ j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExchangeKind {
    Exc1,
    Exc2,
    Exc3,
    Exc4,
}

impl ExchangeKind {
    pub const ALL: [ExchangeKind; 4] = [Self::Exc1, Self::Exc2, Self::Exc3, Self::Exc4];

    /// Factors of the left side and of each right-hand term.
    pub fn terms(&self, i: i64, j: i64) -> (Vec<RootInterval>, Vec<Vec<RootInterval>>) {
        use RootInterval as R;
        match self {
            Self::Exc1 => (
                vec![R::positive(i, j), R::simple(j + 1)],
                vec![
                    vec![R::positive(i, j + 1)],
                    vec![R::positive(i, j - 2), R::negative(j + 2)],
                ],
            ),
            Self::Exc2 => (
                vec![R::simple(i - 1), R::positive(i, j)],
                vec![
                    vec![R::positive(i - 1, j)],
                    vec![R::positive(i + 2, j), R::negative(i - 2)],
                ],
            ),
            Self::Exc3 => (
                vec![R::positive(i, j), R::negative(j)],
                vec![
                    vec![R::positive(i, j - 1)],
                    vec![R::positive(i, j - 2), R::negative(j + 1)],
                ],
            ),
            Self::Exc4 => (
                vec![R::negative(i), R::positive(i, j)],
                vec![
                    vec![R::positive(i + 1, j)],
                    vec![R::positive(i + 2, j), R::negative(i - 1)],
                ],
            ),
        }
    }
}

impl fmt::Display for ExchangeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Exc1 => "exc1",
            Self::Exc2 => "exc2",
            Self::Exc3 => "exc3",
            Self::Exc4 => "exc4",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityStatus {
    Verified,
    Falsified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub relation: String,
    pub status: IdentityStatus,
    /// Discovered frozen factor of each right-hand term.
    pub frozen_factors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn product_text(roots: &[RootInterval]) -> String {
    roots
        .iter()
        .map(|r| format!("x[{r}]"))
        .collect::<Vec<_>>()
        .join("*")
}

fn relation_text(lhs: &str, rhs: &[String]) -> String {
    let terms: Vec<String> = rhs.iter().map(|t| format!("{t}*f")).collect();
    format!("{lhs} = {}", terms.join(" + "))
}

fn report(
    identity: String,
    relation: String,
    lhs: &LaurentPoly,
    candidates: &[LaurentPoly],
    extra: Option<String>,
) -> IdentityReport {
    match discover_frozen_factors(lhs, candidates) {
        Ok(fs) => IdentityReport {
            identity,
            relation,
            status: if extra.is_none() {
                IdentityStatus::Verified
            } else {
                IdentityStatus::Falsified
            },
            frozen_factors: fs.iter().map(|m| m.to_string()).collect(),
            detail: extra,
        },
        Err(e) => IdentityReport {
            identity,
            relation,
            status: IdentityStatus::Falsified,
            frozen_factors: Vec::new(),
            detail: Some(match extra {
                Some(x) => format!("{e}; {x}"),
                None => e.to_string(),
            }),
        },
    }
}

/// Checks one exchange relation in the A∞ window around `i..=j`.
pub fn verify_exchange_relation(
    kind: ExchangeKind,
    i: i64,
    j: i64,
) -> Result<IdentityReport, ClusterError> {
    assert!(i + 2 <= j, "exchange relations need i + 2 <= j");
    let (lhs_roots, rhs_roots) = kind.terms(i, j);
    let mut finder = VariableFinder::new(AInfinityWindow::new(i - 4, j + 4));
    let lhs = finder.product(&lhs_roots)?;
    let candidates = rhs_roots
        .iter()
        .map(|t| finder.product(t))
        .collect::<Result<Vec<_>, _>>()?;
    let rhs_text: Vec<String> = rhs_roots.iter().map(|t| product_text(t)).collect();
    Ok(report(
        format!("{kind}(i={i},j={j})"),
        relation_text(&product_text(&lhs_roots), &rhs_text),
        &lhs,
        &candidates,
        None,
    ))
}

/// Checks the three-term relation on the torus of circumference `2n`:
///
/// `ψ(x[α_{1,2n}]) · x̄[−α_1] = x̄[α_{2,2n}] f + x̄[α_{3,2n−1}] f + x̄[α_{3,2n−2}] x̄[−α_1] f`
///
/// where `ψ` folds the A∞ window onto the torus. Each `x̄` is also checked
/// to be a cluster variable of the torus seed.
pub fn verify_imaginary_relation(n: usize) -> Result<IdentityReport, ClusterError> {
    assert!(n >= 3, "the relation needs circumference at least 6");
    let coords = GammaCoordinates::new(n);
    let p = coords.circumference();
    let mut finder = VariableFinder::new(AInfinityWindow::new(1 - 4, p + 4));
    let psi = |poly: LaurentPoly| coords.window_to_torus(&poly);
    let x1 = psi(finder.get(RootInterval::negative(1))?);
    let lhs = &psi(finder.get(RootInterval::positive(1, p))?) * &x1;
    let roots = [
        RootInterval::positive(2, p),
        RootInterval::positive(3, p - 1),
        RootInterval::positive(3, p - 2),
    ];
    let folded: Vec<LaurentPoly> = roots
        .iter()
        .map(|r| finder.get(*r).map(psi))
        .collect::<Result<_, _>>()?;
    let candidates = vec![folded[0].clone(), folded[1].clone(), &folded[2] * &x1];

    let torus = coords.torus_seed();
    let mut missing = Vec::new();
    for (r, poly) in roots.iter().zip(&folded) {
        let (i, j) = r.support();
        let seq: Vec<_> = (i..=j).map(|q| coords.torus_vertex(q)).collect();
        let seed = torus.mutate_sequence(&seq)?;
        if !seed.cluster().values().any(|v| v == poly) {
            missing.push(r.to_string());
        }
    }
    let extra = (!missing.is_empty())
        .then(|| format!("not cluster variables of the torus seed: {}", missing.join(", ")));
    let relation = format!(
        "psi(x[{}])*xbar[{}] = xbar[{}]*f + xbar[{}]*f + xbar[{}]*xbar[{}]*f",
        RootInterval::positive(1, p),
        RootInterval::negative(1),
        roots[0],
        roots[1],
        roots[2],
        RootInterval::negative(1)
    );
    Ok(report(
        format!("imaginary(2n={p})"),
        relation,
        &lhs,
        &candidates,
        extra,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::VarKey;

    fn x(i: i64) -> LaurentPoly {
        LaurentPoly::var(VarKey::mutable(i))
    }

    fn f(i: i64) -> LaurentPoly {
        LaurentPoly::var(VarKey::frozen(i))
    }

    #[test]
    fn discovery_on_a_constructed_identity() {
        let a = &x(1) + &x(2);
        let b = &x(3) * &x(3);
        let lhs = &(&a * &f(0)) + &(&b * &(&f(1) * &f(2)));
        let fs = discover_frozen_factors(&lhs, &[a, b]).unwrap();
        assert_eq!(fs[0].to_string(), "f0");
        assert_eq!(fs[1].to_string(), "f1*f2");
    }

    #[test]
    fn discovery_rejects_false_identity() {
        let lhs = &x(1) + &(&x(2) * &LaurentPoly::constant(2));
        assert!(discover_frozen_factors(&lhs, &[x(1), x(2)]).is_err());
        let lhs = &x(1) + &x(5);
        assert!(matches!(
            discover_frozen_factors(&lhs, &[x(1), x(2)]),
            Err(DiscoveryError::NotMonomial { term: 1 })
        ));
        // Negative frozen exponents are not allowed.
        let lhs = &x(1) + &x(2).mul_monomial(&Monomial::var(VarKey::frozen(0)).pow(-1));
        assert!(discover_frozen_factors(&lhs, &[x(1), x(2)]).is_err());
    }

    #[test]
    fn first_exchange_relation_smallest_case() {
        let r = verify_exchange_relation(ExchangeKind::Exc1, 0, 2).unwrap();
        assert_eq!(r.status, IdentityStatus::Verified, "{r:?}");
        assert_eq!(r.frozen_factors.len(), 2);
    }
}
