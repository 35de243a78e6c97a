//! Σ-stable triangulations of the marked infinite ribbon, the universal
//! cover of an annulus with `k1` marks on the top boundary and `k2` on the
//! bottom. Arcs live on the strip with integer endpoints and Σ moves top
//! indices by `k1` and bottom indices by `k2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::periodic::{
    Condition, CycleOrientation, PeriodicError, PeriodicQuiver, SiteId, Violation,
};
use crate::quiver::IceQuiver;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("ribbon needs at least one mark on each boundary, got ({0}, {1})")]
    Ribbon(i64, i64),
    #[error("arc endpoints {0} and {1} coincide or are neighbors")]
    BadArc(Mark, Mark),
    #[error("arcs {0} and {1} cross")]
    Crossing(Arc, Arc),
    #[error("arcs {0} and {1} are translates of each other")]
    Duplicate(Arc, Arc),
    #[error("expected {expected} arc orbits, found {found}")]
    Count { expected: usize, found: usize },
    #[error("unknown arc orbit {0}")]
    UnknownOrbit(SiteId),
    #[error("arc {0} cannot be flipped")]
    Unflippable(Arc),
    #[error("a cyclically oriented cycle has no annulus model")]
    CyclicOrientation,
    #[error(transparent)]
    Periodic(#[from] PeriodicError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Top,
    Bottom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mark {
    pub side: Side,
    pub index: i64,
}

impl Mark {
    pub fn top(index: i64) -> Self {
        Self { side: Side::Top, index }
    }

    pub fn bottom(index: i64) -> Self {
        Self { side: Side::Bottom, index }
    }

    fn step(&self, d: i64) -> Self {
        Self {
            side: self.side,
            index: self.index + d,
        }
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Top => write!(f, "T{}", self.index),
            Side::Bottom => write!(f, "B{}", self.index),
        }
    }
}

/// An arc of the strip. Bridging arcs are stored top first, boundary arcs
/// with the smaller index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[Mark; 2]", into = "[Mark; 2]")]
pub struct Arc {
    a: Mark,
    b: Mark,
}

impl Arc {
    pub fn new(p: Mark, q: Mark) -> Result<Self, SurfaceError> {
        let (a, b) = if p <= q { (p, q) } else { (q, p) };
        if a.side == b.side && b.index - a.index < 2 {
            return Err(SurfaceError::BadArc(p, q));
        }
        Ok(Self { a, b })
    }

    pub fn bridging(top: i64, bottom: i64) -> Self {
        Self {
            a: Mark::top(top),
            b: Mark::bottom(bottom),
        }
    }

    pub fn endpoints(&self) -> (Mark, Mark) {
        (self.a, self.b)
    }

    pub fn is_bridging(&self) -> bool {
        self.a.side != self.b.side
    }

    /// The endpoint other than `p`.
    pub fn other(&self, p: Mark) -> Mark {
        if self.a == p {
            self.b
        } else {
            self.a
        }
    }

    fn translate(&self, s: i64, k1: i64, k2: i64) -> Self {
        let mv = |m: Mark| match m.side {
            Side::Top => m.step(s * k1),
            Side::Bottom => m.step(s * k2),
        };
        Self {
            a: mv(self.a),
            b: mv(self.b),
        }
    }
}

impl TryFrom<[Mark; 2]> for Arc {
    type Error = SurfaceError;

    fn try_from(m: [Mark; 2]) -> Result<Self, SurfaceError> {
        Self::new(m[0], m[1])
    }
}

impl From<Arc> for [Mark; 2] {
    fn from(a: Arc) -> Self {
        [a.a, a.b]
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Whether two arcs of the strip intersect in their interiors.
pub fn crosses(x: &Arc, y: &Arc) -> bool {
    let inside = |lo: i64, hi: i64, p: i64| lo < p && p < hi;
    match (x.is_bridging(), y.is_bridging()) {
        (true, true) => (x.a.index - y.a.index) * (x.b.index - y.b.index) < 0,
        (false, false) => {
            x.a.side == y.a.side && {
                let (a1, a2, b1, b2) = (x.a.index, x.b.index, y.a.index, y.b.index);
                (a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2)
            }
        }
        (false, true) | (true, false) => {
            let (arc, bridge) = if x.is_bridging() { (y, x) } else { (x, y) };
            let end = if arc.a.side == Side::Top { bridge.a } else { bridge.b };
            inside(arc.a.index, arc.b.index, end.index)
        }
    }
}

/// A set of arc orbits given by representatives; orbit `i` is a site of
/// the quiver and `Σ^s` of its representative is copy `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TriangulationJson")]
pub struct SigmaTriangulation {
    k1: i64,
    k2: i64,
    arcs: Vec<Arc>,
}

#[derive(Deserialize)]
struct TriangulationJson {
    k1: i64,
    k2: i64,
    arcs: Vec<Arc>,
}

impl TryFrom<TriangulationJson> for SigmaTriangulation {
    type Error = SurfaceError;

    fn try_from(j: TriangulationJson) -> Result<Self, SurfaceError> {
        Self::new(j.k1, j.k2, j.arcs)
    }
}

/// Entry of the angular order around a marked point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Spoke {
    /// `(site, copy)`, or `None` for a boundary segment.
    arc: Option<(SiteId, i64)>,
    far: Mark,
}

/// Outcome of the two virtual-2-cycle detectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub quiver: Vec<Violation>,
    pub geometric: Vec<Violation>,
}

impl GeometryReport {
    pub fn agree(&self) -> bool {
        self.quiver == self.geometric
    }

    pub fn is_clean(&self) -> bool {
        self.quiver.is_empty() && self.geometric.is_empty()
    }
}

/// One arc copy with drawing coordinates; top marks at height 1, bottom at 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotArc {
    pub site: SiteId,
    pub copy: i64,
    pub from: [f64; 2],
    pub to: [f64; 2],
}

impl SigmaTriangulation {
    /// Validates the representatives: proper arcs, no two in one orbit,
    /// no crossings among any translates, and `k1 + k2` orbits.
    pub fn new(k1: i64, k2: i64, arcs: Vec<Arc>) -> Result<Self, SurfaceError> {
        let t = Self { k1, k2, arcs };
        t.validate()?;
        Ok(t)
    }

    pub fn k1(&self) -> i64 {
        self.k1
    }

    pub fn k2(&self) -> i64 {
        self.k2
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn orbit_count(&self) -> usize {
        self.arcs.len()
    }

    /// Copy `s` of orbit `site`.
    pub fn arc(&self, site: SiteId, s: i64) -> Arc {
        self.arcs[site].translate(s, self.k1, self.k2)
    }

    /// Copies to compare against when testing two representatives.
    fn reach(&self) -> i64 {
        let idx: Vec<(i64, i64)> = self
            .arcs
            .iter()
            .flat_map(|a| [a.a, a.b])
            .map(|m| match m.side {
                Side::Top => (m.index, self.k1),
                Side::Bottom => (m.index, self.k2),
            })
            .collect();
        let lo = idx.iter().map(|(i, _)| *i).min().unwrap_or(0);
        let hi = idx.iter().map(|(i, _)| *i).max().unwrap_or(0);
        (hi - lo) / self.k1.min(self.k2) + 2
    }

    pub fn validate(&self) -> Result<(), SurfaceError> {
        if self.k1 < 1 || self.k2 < 1 {
            return Err(SurfaceError::Ribbon(self.k1, self.k2));
        }
        for a in &self.arcs {
            Arc::new(a.a, a.b)?;
        }
        let r = self.reach();
        for (i, x) in self.arcs.iter().enumerate() {
            for (j, _) in self.arcs.iter().enumerate().skip(i) {
                for s in -r..=r {
                    let y = self.arc(j, s);
                    if crosses(x, &y) {
                        return Err(SurfaceError::Crossing(*x, y));
                    }
                    if *x == y && (i != j || s != 0) {
                        return Err(SurfaceError::Duplicate(*x, self.arcs[j]));
                    }
                }
            }
        }
        let expected = (self.k1 + self.k2) as usize;
        if self.arcs.len() != expected {
            return Err(SurfaceError::Count {
                expected,
                found: self.arcs.len(),
            });
        }
        Ok(())
    }

    /// Arc copies and boundary segments at `p`, in order from the left
    /// boundary segment to the right one through the interior.
    fn spokes(&self, p: Mark) -> Vec<Spoke> {
        let k = match p.side {
            Side::Top => self.k1,
            Side::Bottom => self.k2,
        };
        let mut keyed: Vec<((i64, i64), Spoke)> = Vec::new();
        for (site, rep) in self.arcs.iter().enumerate() {
            for end in [rep.a, rep.b] {
                if end.side != p.side || (p.index - end.index).rem_euclid(k) != 0 {
                    continue;
                }
                let s = (p.index - end.index) / k;
                let arc = self.arc(site, s);
                let far = arc.other(p);
                let key = if far.side != p.side {
                    (1, far.index)
                } else if far.index < p.index {
                    (0, p.index - far.index)
                } else {
                    (2, p.index - far.index)
                };
                keyed.push((key, Spoke { arc: Some((site, s)), far }));
            }
        }
        keyed.sort_by_key(|(key, _)| *key);
        let mut out = vec![Spoke { arc: None, far: p.step(-1) }];
        out.extend(keyed.into_iter().map(|(_, s)| s));
        out.push(Spoke { arc: None, far: p.step(1) });
        out
    }

    /// Marks of one fundamental domain.
    fn domain(&self) -> impl Iterator<Item = Mark> {
        (0..self.k1)
            .map(Mark::top)
            .chain((0..self.k2).map(Mark::bottom))
    }

    /// Signed arrow counts `(u, v, s)` from every triangle corner of one period.
    ///
    /// Consecutive sides `a` then `b` at a bottom mark give `a → b`; at a
    /// top mark the sweep runs the other way round and gives `b → a`.
    fn corner_arrows(&self) -> Vec<(SiteId, SiteId, i64)> {
        let mut out = Vec::new();
        for p in self.domain() {
            for w in self.spokes(p).windows(2) {
                let (Some(a), Some(b)) = (w[0].arc, w[1].arc) else {
                    continue;
                };
                let (from, to) = match p.side {
                    Side::Bottom => (a, b),
                    Side::Top => (b, a),
                };
                out.push((from.0, to.0, to.1 - from.1));
            }
        }
        out
    }

    /// The periodic quiver of the triangulation: one arrow per corner,
    /// opposite arrows between the same two arc copies cancelling.
    pub fn quiver(&self) -> PeriodicQuiver {
        let mut signed: BTreeMap<(SiteId, SiteId, i64), i64> = BTreeMap::new();
        for (u, v, s) in self.corner_arrows() {
            let (key, sign) = if (u, v, s) <= (v, u, -s) {
                ((u, v, s), 1)
            } else {
                ((v, u, -s), -1)
            };
            *signed.entry(key).or_insert(0) += sign;
        }
        let arrows = signed.into_iter().filter(|(_, c)| *c != 0).map(|((u, v, s), c)| {
            if c > 0 {
                (u, v, s, c as u64)
            } else {
                (v, u, -s, (-c) as u64)
            }
        });
        PeriodicQuiver::new(self.arcs.len() as u64, vec![false; self.arcs.len()], arrows)
            .expect("triangulation quivers have no loops")
    }

    /// Replaces every arc of orbit `site` by the other diagonal of its quadrilateral.
    pub fn flip(&self, site: SiteId) -> Result<Self, SurfaceError> {
        let gamma = *self.arcs.get(site).ok_or(SurfaceError::UnknownOrbit(site))?;
        let p = gamma.a;
        let spokes = self.spokes(p);
        let at = spokes
            .iter()
            .position(|s| s.arc == Some((site, 0)))
            .expect("arc is incident to its endpoint");
        let new = Arc::new(spokes[at - 1].far, spokes[at + 1].far)
            .map_err(|_| SurfaceError::Unflippable(gamma))?;
        let mut arcs = self.arcs.clone();
        arcs[site] = new;
        Self::new(self.k1, self.k2, arcs).map_err(|_| SurfaceError::Unflippable(gamma))
    }

    pub fn flip_sequence(&self, seq: &[SiteId]) -> Result<Self, SurfaceError> {
        seq.iter().try_fold(self.clone(), |t, &s| t.flip(s))
    }

    /// Runs `admissibility_check` on the quiver, and separately scans each
    /// arc's quadrilateral for a side orbit that meets it with arrows in
    /// both directions, or for a side in its own orbit.
    pub fn check_virtual_two_cycles(&self) -> GeometryReport {
        let mut quiver = self.quiver().admissibility_check();
        quiver.sort();
        let mut found = BTreeSet::new();
        for (site, gamma) in self.arcs.iter().enumerate() {
            // Net arrows out of copy 0 of `site`, keyed by (other orbit, copy).
            let mut net: BTreeMap<(SiteId, i64), i64> = BTreeMap::new();
            for p in [gamma.a, gamma.b] {
                let spokes = self.spokes(p);
                let at = spokes
                    .iter()
                    .position(|s| s.arc == Some((site, 0)))
                    .expect("arc is incident to its endpoint");
                let out_sign = if p.side == Side::Bottom { 1 } else { -1 };
                for (nb, sign) in [(spokes[at - 1].arc, -out_sign), (spokes[at + 1].arc, out_sign)] {
                    if let Some(other) = nb {
                        *net.entry(other).or_insert(0) += sign;
                    }
                }
            }
            let mut dirs: BTreeMap<SiteId, (bool, bool)> = BTreeMap::new();
            for ((other, _), c) in net {
                if c == 0 {
                    continue;
                }
                if other == site {
                    found.insert(Violation {
                        condition: Condition::VirtualLoop,
                        sites: (site, site),
                    });
                    continue;
                }
                let e = dirs.entry(other).or_default();
                if c > 0 {
                    e.0 = true;
                } else {
                    e.1 = true;
                }
            }
            for (other, (o, i)) in dirs {
                if o && i {
                    found.insert(Violation {
                        condition: Condition::VirtualTwoCycle,
                        sites: (site.min(other), site.max(other)),
                    });
                }
            }
        }
        GeometryReport {
            quiver,
            geometric: found.into_iter().collect(),
        }
    }

    /// Drawing coordinates of copies `lo..=hi` of every orbit.
    pub fn plot(&self, lo: i64, hi: i64) -> Vec<PlotArc> {
        let xy = |m: Mark| match m.side {
            Side::Top => [m.index as f64 / self.k1 as f64, 1.0],
            Side::Bottom => [m.index as f64 / self.k2 as f64, 0.0],
        };
        let mut out = Vec::new();
        for site in 0..self.arcs.len() {
            for copy in lo..=hi {
                let a = self.arc(site, copy);
                out.push(PlotArc {
                    site,
                    copy,
                    from: xy(a.a),
                    to: xy(a.b),
                });
            }
        }
        out
    }
}

/// The fan triangulation realizing an orientation of a cycle: arc `i + 1`
/// moves the top end of arc `i` one step right when edge `i` points
/// forward, the bottom end otherwise.
pub fn default_triangulation_for(o: &CycleOrientation) -> Result<SigmaTriangulation, SurfaceError> {
    if o.is_cyclic() {
        return Err(SurfaceError::CyclicOrientation);
    }
    let (mut t, mut b) = (0, 0);
    let mut arcs = Vec::with_capacity(o.len());
    for &f in o.forward() {
        arcs.push(Arc::bridging(t, b));
        if f {
            t += 1;
        } else {
            b += 1;
        }
    }
    SigmaTriangulation::new(t, b, arcs)
}

pub fn default_triangulation(cycle: &IceQuiver) -> Result<SigmaTriangulation, SurfaceError> {
    let o = CycleOrientation::from_quiver(cycle)?;
    default_triangulation_for(&o)
}
