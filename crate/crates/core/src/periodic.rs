//! ℤ-periodic ice quivers stored on a fundamental domain.
//!
//! A stored arrow `(from, to, shift, mult)` stands for `mult` arrows from
//! copy `k` of `from` to copy `k + shift` of `to`, for every integer `k`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{IceQuiver, QuiverError, VertexId};

/// Index of a site in the fundamental domain; also names its orbit.
pub type SiteId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    /// Arrows between two copies of one site.
    #[serde(rename = "virtual-loop")]
    VirtualLoop,
    /// Arrows in both directions between an orbit and a vertex.
    #[serde(rename = "virtual-2-cycle")]
    VirtualTwoCycle,
}

/// A failed admissibility condition and the sites involved.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub sites: (SiteId, SiteId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.condition {
            Condition::VirtualLoop => "virtual loop",
            Condition::VirtualTwoCycle => "virtual 2-cycle",
        };
        write!(f, "{name} on {{{}, {}}}", self.sites.0, self.sites.1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeriodicError {
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("site ids must be 0..{0} without repetition")]
    SiteIds(usize),
    #[error("unknown site {0}")]
    UnknownSite(SiteId),
    #[error("loop at site {0}")]
    Loop(SiteId),
    #[error("2-cycle between site {0} and copy {2} of site {1}")]
    TwoCycle(SiteId, SiteId, i64),
    #[error("arrow between frozen sites {0} and {1}")]
    FrozenArrow(SiteId, SiteId),
    #[error("cannot mutate frozen orbit {0}")]
    FrozenOrbit(SiteId),
    #[error("arrow multiplicity overflow between sites {0} and {1}")]
    Overflow(SiteId, SiteId),
    #[error("quiver is not admissible: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotAdmissible(Vec<Violation>),
    #[error("not a cyclic quiver: {0}")]
    NotCycle(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// A periodic ice quiver: sites `0..m` with frozen flags, and arrows
/// canonicalized with source in copy 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PeriodicJson", into = "PeriodicJson")]
pub struct PeriodicQuiver {
    period: u64,
    frozen: Vec<bool>,
    arrows: BTreeMap<(SiteId, SiteId, i64), u64>,
}

/// Canonical key of an arrow class and the sign of `(u, v, s)` relative to it.
fn canonical(u: SiteId, v: SiteId, s: i64) -> ((SiteId, SiteId, i64), i128) {
    let fwd = (u, v, s);
    let rev = (v, u, -s);
    if fwd <= rev {
        (fwd, 1)
    } else {
        (rev, -1)
    }
}

impl PeriodicQuiver {
    /// Builds a periodic quiver, merging repeated arrows. Rejects loops,
    /// 2-cycles and frozen–frozen arrows of the underlying infinite quiver.
    pub fn new(
        period: u64,
        frozen: Vec<bool>,
        arrows: impl IntoIterator<Item = (SiteId, SiteId, i64, u64)>,
    ) -> Result<Self, PeriodicError> {
        if period == 0 {
            return Err(PeriodicError::ZeroPeriod);
        }
        let mut merged: BTreeMap<(SiteId, SiteId, i64), u64> = BTreeMap::new();
        for (u, v, s, m) in arrows {
            for x in [u, v] {
                if x >= frozen.len() {
                    return Err(PeriodicError::UnknownSite(x));
                }
            }
            if m == 0 {
                continue;
            }
            if u == v && s == 0 {
                return Err(PeriodicError::Loop(u));
            }
            if frozen[u] && frozen[v] {
                return Err(PeriodicError::FrozenArrow(u, v));
            }
            let slot = merged.entry((u, v, s)).or_insert(0);
            *slot = slot.checked_add(m).ok_or(PeriodicError::Overflow(u, v))?;
        }
        for &(u, v, s) in merged.keys() {
            if merged.contains_key(&(v, u, -s)) {
                return Err(PeriodicError::TwoCycle(u, v, s));
            }
        }
        Ok(Self {
            period,
            frozen,
            arrows: merged,
        })
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn site_count(&self) -> usize {
        self.frozen.len()
    }

    pub fn is_frozen(&self, site: SiteId) -> bool {
        self.frozen[site]
    }

    pub fn frozen_flags(&self) -> &[bool] {
        &self.frozen
    }

    pub fn mutable_sites(&self) -> Vec<SiteId> {
        (0..self.frozen.len()).filter(|s| !self.frozen[*s]).collect()
    }

    /// Arrows as `(from, to, shift, mult)` in sorted order.
    pub fn arrows(&self) -> impl Iterator<Item = (SiteId, SiteId, i64, u64)> + '_ {
        self.arrows.iter().map(|(&(u, v, s), &m)| (u, v, s, m))
    }

    /// Arrows from copy 0 of `u` to copy `s` of `v`.
    pub fn mult(&self, u: SiteId, v: SiteId, s: i64) -> u64 {
        self.arrows.get(&(u, v, s)).copied().unwrap_or(0)
    }

    /// Violations of the no-virtual-loop and no-virtual-2-cycle conditions.
    pub fn admissibility_check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut loops: Vec<SiteId> = self
            .arrows
            .keys()
            .filter(|(u, v, _)| u == v)
            .map(|(u, _, _)| *u)
            .collect();
        loops.dedup();
        out.extend(loops.into_iter().map(|u| Violation {
            condition: Condition::VirtualLoop,
            sites: (u, u),
        }));
        let mut directed: HashSet<(SiteId, SiteId)> = HashSet::new();
        for &(u, v, _) in self.arrows.keys() {
            if u != v {
                directed.insert((u, v));
            }
        }
        let mut pairs: Vec<(SiteId, SiteId)> = directed
            .iter()
            .filter(|(u, v)| u < v && directed.contains(&(*v, *u)))
            .copied()
            .collect();
        pairs.sort_unstable();
        out.extend(pairs.into_iter().map(|p| Violation {
            condition: Condition::VirtualTwoCycle,
            sites: p,
        }));
        out
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility_check().is_empty()
    }

    fn require_admissible(&self) -> Result<(), PeriodicError> {
        let v = self.admissibility_check();
        if v.is_empty() {
            Ok(())
        } else {
            Err(PeriodicError::NotAdmissible(v))
        }
    }

    /// Simultaneous mutation at every copy of the mutable orbit `k`.
    ///
    /// The input must be admissible. The result is returned even when it is
    /// not; inspect it with [`PeriodicQuiver::admissibility_check`].
    pub fn orbit_mutate(&self, k: SiteId) -> Result<Self, PeriodicError> {
        if k >= self.frozen.len() {
            return Err(PeriodicError::UnknownSite(k));
        }
        if self.frozen[k] {
            return Err(PeriodicError::FrozenOrbit(k));
        }
        self.require_admissible()?;

        let mut signed: BTreeMap<(SiteId, SiteId, i64), i128> = BTreeMap::new();
        let mut add = |u: SiteId, v: SiteId, s: i64, m: i128| {
            let (key, sign) = canonical(u, v, s);
            *signed.entry(key).or_insert(0) += sign * m;
        };
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        for (&(u, v, s), &m) in &self.arrows {
            let m = m as i128;
            if u == k {
                outs.push((v, s, m));
                add(v, u, -s, m);
            } else if v == k {
                ins.push((u, s, m));
                add(v, u, -s, m);
            } else {
                add(u, v, s, m);
            }
        }
        for &(u, s1, a) in &ins {
            for &(v, s2, b) in &outs {
                if self.frozen[u] && self.frozen[v] {
                    continue;
                }
                let m = a.checked_mul(b).ok_or(PeriodicError::Overflow(u, v))?;
                add(u, v, s1 + s2, m);
            }
        }
        let mut arrows = BTreeMap::new();
        for ((u, v, s), val) in signed {
            if val == 0 {
                continue;
            }
            let key = if val > 0 { (u, v, s) } else { (v, u, -s) };
            let m = u64::try_from(val.unsigned_abs()).map_err(|_| PeriodicError::Overflow(u, v))?;
            arrows.insert(key, m);
        }
        Ok(Self {
            period: self.period,
            frozen: self.frozen.clone(),
            arrows,
        })
    }

    /// Mutates along `seq`, failing at the first step whose input is not admissible.
    pub fn orbit_mutate_sequence(&self, seq: &[SiteId]) -> Result<Self, PeriodicError> {
        seq.iter().try_fold(self.clone(), |q, &k| q.orbit_mutate(k))
    }

    /// The orbit quiver: one vertex per site, labelled by its index, with
    /// multiplicities summed over shifts.
    pub fn fold(&self) -> Result<IceQuiver, PeriodicError> {
        self.require_admissible()?;
        let mut summed: BTreeMap<(SiteId, SiteId), u64> = BTreeMap::new();
        for (&(u, v, _), &m) in &self.arrows {
            let slot = summed.entry((u, v)).or_insert(0);
            *slot = slot.checked_add(m).ok_or(PeriodicError::Overflow(u, v))?;
        }
        Ok(IceQuiver::new(
            self.frozen
                .iter()
                .enumerate()
                .map(|(i, f)| (VertexId::from(i), *f)),
            summed
                .into_iter()
                .map(|((u, v), m)| (VertexId::from(u), VertexId::from(v), m)),
        )?)
    }

    /// Arrows of the infinite quiver between vertices `(site, copy)` with
    /// copies in `lo..=hi`, as an ice quiver with labels `site@copy`.
    pub fn unfold_window(&self, lo: i64, hi: i64) -> Result<IceQuiver, PeriodicError> {
        let label = |site: SiteId, copy: i64| VertexId::new(format!("{site}@{copy}"));
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        for copy in lo..=hi {
            for (site, &f) in self.frozen.iter().enumerate() {
                vertices.push((label(site, copy), f));
            }
            for (&(u, v, s), &m) in &self.arrows {
                let target = copy + s;
                if (lo..=hi).contains(&target) {
                    arrows.push((label(u, copy), label(v, target), m));
                }
            }
        }
        Ok(IceQuiver::new(vertices, arrows)?)
    }
}

impl fmt::Display for PeriodicQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .arrows()
            .map(|(u, v, s, m)| {
                let mult = if m == 1 { String::new() } else { format!("x{m}") };
                format!("{u}->{v}[{s:+}]{mult}")
            })
            .collect();
        write!(f, "period {} {{{}}}", self.period, arrows.join(", "))
    }
}

/// Wire format for [`PeriodicQuiver`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicJson {
    pub period: u64,
    pub sites: Vec<SiteJson>,
    pub arrows: Vec<PeriodicArrowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteJson {
    pub id: SiteId,
    #[serde(default)]
    pub frozen: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicArrowJson {
    pub from: SiteId,
    pub to: SiteId,
    #[serde(default)]
    pub shift: i64,
    #[serde(default = "one")]
    pub mult: u64,
}

fn one() -> u64 {
    1
}

impl TryFrom<PeriodicJson> for PeriodicQuiver {
    type Error = PeriodicError;

    fn try_from(j: PeriodicJson) -> Result<Self, Self::Error> {
        let m = j.sites.len();
        let mut frozen = vec![None; m];
        for s in &j.sites {
            match frozen.get_mut(s.id) {
                Some(slot @ None) => *slot = Some(s.frozen),
                _ => return Err(PeriodicError::SiteIds(m)),
            }
        }
        let frozen = frozen.into_iter().map(|f| f.unwrap()).collect();
        PeriodicQuiver::new(
            j.period,
            frozen,
            j.arrows.into_iter().map(|a| (a.from, a.to, a.shift, a.mult)),
        )
    }
}

impl From<PeriodicQuiver> for PeriodicJson {
    fn from(q: PeriodicQuiver) -> Self {
        PeriodicJson {
            period: q.period,
            sites: q
                .frozen
                .iter()
                .enumerate()
                .map(|(id, &frozen)| SiteJson { id, frozen })
                .collect(),
            arrows: q
                .arrows()
                .map(|(from, to, shift, mult)| PeriodicArrowJson {
                    from,
                    to,
                    shift,
                    mult,
                })
                .collect(),
        }
    }
}

/// Orientation of an `n`-cycle: entry `i` is true when the edge between
/// `i` and `i + 1 (mod n)` points from `i` to `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleOrientation(Vec<bool>);

impl CycleOrientation {
    pub fn new(forward: Vec<bool>) -> Result<Self, PeriodicError> {
        let o = Self(forward);
        if o.0.len() < 2 {
            return Err(PeriodicError::NotCycle("a cycle needs at least two vertices".into()));
        }
        if o.0.len() == 2 && o.is_cyclic() {
            return Err(PeriodicError::NotCycle("an oriented 2-cycle is not a quiver".into()));
        }
        Ok(o)
    }

    /// Every orientation of the `n`-cycle that is a valid quiver.
    pub fn all(n: usize) -> Vec<Self> {
        (0u64..1 << n)
            .filter_map(|bits| Self::new((0..n).map(|i| bits >> i & 1 == 1).collect()).ok())
            .collect()
    }

    pub fn cyclic(n: usize) -> Self {
        Self(vec![true; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn forward(&self) -> &[bool] {
        &self.0
    }

    /// Number of edges pointing from `i` to `i + 1`.
    pub fn forward_count(&self) -> usize {
        self.0.iter().filter(|f| **f).count()
    }

    pub fn is_cyclic(&self) -> bool {
        self.0.iter().all(|f| *f) || self.0.iter().all(|f| !*f)
    }

    /// Reads the orientation of a quiver on vertices `0..n` whose
    /// underlying graph is the `n`-cycle.
    pub fn from_quiver(q: &IceQuiver) -> Result<Self, PeriodicError> {
        let n = q.vertex_count();
        for (v, frozen) in q.vertices() {
            match v.numeric() {
                Some((i, 0)) if (0..n as i64).contains(&i) => {}
                _ => return Err(PeriodicError::NotCycle(format!("vertex {v} is not in 0..{n}"))),
            }
            if frozen {
                return Err(PeriodicError::NotCycle(format!("vertex {v} is frozen")));
            }
        }
        let id = |i: usize| VertexId::from(i % n);
        let total: u64 = q.arrows().map(|(_, _, m)| m).sum();
        if total != n as u64 {
            return Err(PeriodicError::NotCycle(format!("{total} arrows on {n} vertices")));
        }
        if n == 2 {
            return match (q.arr(&id(0), &id(1)), q.arr(&id(1), &id(0))) {
                (2, 0) => Self::new(vec![true, false]),
                (0, 2) => Self::new(vec![false, true]),
                _ => Err(PeriodicError::NotCycle("expected a double arrow".into())),
            };
        }
        let mut forward = Vec::with_capacity(n);
        for i in 0..n {
            match (q.arr(&id(i), &id(i + 1)), q.arr(&id(i + 1), &id(i))) {
                (1, 0) => forward.push(true),
                (0, 1) => forward.push(false),
                _ => {
                    return Err(PeriodicError::NotCycle(format!(
                        "edge {i}-{} is not a single arrow",
                        (i + 1) % n
                    )))
                }
            }
        }
        Self::new(forward)
    }

    pub fn to_quiver(&self) -> IceQuiver {
        let n = self.0.len();
        let arrows = self.0.iter().enumerate().map(|(i, &f)| {
            let (a, b) = (VertexId::from(i), VertexId::from((i + 1) % n));
            if f {
                (a, b, 1)
            } else {
                (b, a, 1)
            }
        });
        IceQuiver::new((0..n).map(|i| (VertexId::from(i), false)), arrows)
            .expect("a non-degenerate orientation is a valid quiver")
    }
}

/// The periodic quiver of type A∞ obtained by unrolling an oriented cycle.
pub fn build_aq(cycle: &IceQuiver) -> Result<PeriodicQuiver, PeriodicError> {
    Ok(build_aq_from_orientation(&CycleOrientation::from_quiver(cycle)?))
}

pub fn build_aq_from_orientation(o: &CycleOrientation) -> PeriodicQuiver {
    let n = o.len();
    let arrows = o.forward().iter().enumerate().map(|(i, &f)| {
        let last = i == n - 1;
        match (f, last) {
            (true, false) => (i, i + 1, 0, 1),
            (true, true) => (n - 1, 0, 1, 1),
            (false, false) => (i + 1, i, 0, 1),
            (false, true) => (0, n - 1, -1, 1),
        }
    });
    PeriodicQuiver::new(n as u64, vec![false; n], arrows).expect("unrolled cycle is valid")
}

/// The alternating A∞ quiver with one frozen vertex per mutable vertex,
/// as a periodic quiver of period `2n`.
///
/// Sites `0..2n` are the mutable vertices; site `2n + i` is the frozen
/// vertex attached to `i`. Even vertices are sources among the mutable
/// ones, odd vertices sinks.
pub fn build_gamma_infinity(n: usize) -> Result<PeriodicQuiver, PeriodicError> {
    if n == 0 {
        return Err(PeriodicError::ZeroPeriod);
    }
    let p = 2 * n;
    let mut arrows = Vec::new();
    for i in 0..p {
        if i % 2 == 0 {
            arrows.push((i, i + 1, 0, 1));
            if i == 0 {
                arrows.push((0, p - 1, -1, 1));
            } else {
                arrows.push((i, i - 1, 0, 1));
            }
            arrows.push((p + i, i, 0, 1));
        } else {
            arrows.push((i, p + i, 0, 1));
        }
    }
    let frozen = (0..2 * p).map(|s| s >= p).collect();
    PeriodicQuiver::new(p as u64, frozen, arrows)
}

/// Result of a breadth-first search over orbit mutation sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SearchOutcome {
    /// A shortest, lexicographically first sequence whose result is not admissible.
    Violation {
        witness: Vec<SiteId>,
        violations: Vec<Violation>,
    },
    /// Every sequence up to `depth` stays admissible.
    Exhausted {
        depth: usize,
        explored: usize,
        distinct: usize,
    },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&[SiteId]> {
        match self {
            SearchOutcome::Violation { witness, .. } => Some(witness),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

/// Breadth-first search for an orbit sequence of length at most
/// `max_depth` that leaves the admissible class. Sequences never repeat an
/// orbit immediately; quivers already seen at a smaller depth are not
/// expanded again.
pub fn foldability_search(
    pq: &PeriodicQuiver,
    max_depth: usize,
) -> Result<SearchOutcome, PeriodicError> {
    let initial = pq.admissibility_check();
    if !initial.is_empty() {
        return Ok(SearchOutcome::Violation {
            witness: Vec::new(),
            violations: initial,
        });
    }
    let orbits = pq.mutable_sites();
    let mut seen: HashSet<PeriodicQuiver> = HashSet::from([pq.clone()]);
    let mut frontier: Vec<(Vec<SiteId>, PeriodicQuiver)> = vec![(Vec::new(), pq.clone())];
    let mut explored = 0;
    for _ in 0..max_depth {
        let expanded: Vec<Vec<(Vec<SiteId>, PeriodicQuiver)>> = frontier
            .par_iter()
            .map(|(seq, q)| {
                orbits
                    .iter()
                    .filter(|&&k| seq.last() != Some(&k))
                    .map(|&k| {
                        let mut s = seq.clone();
                        s.push(k);
                        q.orbit_mutate(k).map(|r| (s, r))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for (seq, q) in expanded.into_iter().flatten() {
            explored += 1;
            let violations = q.admissibility_check();
            if !violations.is_empty() {
                return Ok(SearchOutcome::Violation {
                    witness: seq,
                    violations,
                });
            }
            if seen.insert(q.clone()) {
                next.push((seq, q));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(SearchOutcome::Exhausted {
        depth: max_depth,
        explored,
        distinct: seen.len(),
    })
}
