//! Finite ice quivers and Fomin–Zelevinsky mutation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Opaque vertex label.
///
/// Labels of the form `-?\d+'*` sort numerically (unprimed before primed),
/// everything else sorts lexicographically after them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Self {
        Self(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Integer value and number of trailing primes, if the label is numeric.
    pub fn numeric(&self) -> Option<(i64, usize)> {
        let trimmed = self.0.trim_end_matches('\'');
        let primes = self.0.len() - trimmed.len();
        trimmed.parse::<i64>().ok().map(|v| (v, primes))
    }
}

impl Ord for VertexId {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric(), other.numeric()) {
            (Some((a, pa)), Some((b, pb))) => (pa, a).cmp(&(pb, b)).then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for VertexId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        Self(s.to_string())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

impl From<i64> for VertexId {
    fn from(v: i64) -> Self {
        Self(v.to_string())
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        Self(v.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("2-cycle between {0} and {1}")]
    TwoCycle(VertexId, VertexId),
    #[error("arrow between frozen vertices {0} and {1}")]
    FrozenArrow(VertexId, VertexId),
    #[error("cannot mutate at frozen vertex {0}")]
    FrozenMutation(VertexId),
    #[error("arrow multiplicity overflow between {0} and {1}")]
    Overflow(VertexId, VertexId),
}

/// A quiver without loops or 2-cycles whose vertices are split into mutable
/// and frozen ones, with no arrows between two frozen vertices.
///
/// The representation is canonical: arrows with equal endpoints are merged
/// and zero multiplicities are dropped, so structural equality is quiver
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson", into = "QuiverJson")]
pub struct IceQuiver {
    vertices: BTreeMap<VertexId, bool>,
    arrows: BTreeMap<(VertexId, VertexId), u64>,
}

impl IceQuiver {
    /// Builds a quiver, merging repeated arrows.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator<Item = (VertexId, bool)>,
        A: IntoIterator<Item = (VertexId, VertexId, u64)>,
    {
        let mut vs = BTreeMap::new();
        for (id, frozen) in vertices {
            if vs.insert(id.clone(), frozen).is_some() {
                return Err(QuiverError::DuplicateVertex(id));
            }
        }
        let mut merged: BTreeMap<(VertexId, VertexId), u64> = BTreeMap::new();
        for (from, to, mult) in arrows {
            for v in [&from, &to] {
                if !vs.contains_key(v) {
                    return Err(QuiverError::UnknownVertex(v.clone()));
                }
            }
            if mult == 0 {
                continue;
            }
            if from == to {
                return Err(QuiverError::Loop(from));
            }
            if vs[&from] && vs[&to] {
                return Err(QuiverError::FrozenArrow(from, to));
            }
            let slot = merged.entry((from.clone(), to.clone())).or_insert(0);
            *slot = slot
                .checked_add(mult)
                .ok_or(QuiverError::Overflow(from, to))?;
        }
        for (from, to) in merged.keys() {
            if merged.contains_key(&(to.clone(), from.clone())) {
                let (a, b) = if from < to { (from, to) } else { (to, from) };
                return Err(QuiverError::TwoCycle(a.clone(), b.clone()));
            }
        }
        Ok(Self { vertices: vs, arrows: merged })
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&VertexId, bool)> {
        self.vertices.iter().map(|(v, f)| (v, *f))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.vertices.contains_key(v)
    }

    pub fn is_frozen(&self, v: &VertexId) -> Option<bool> {
        self.vertices.get(v).copied()
    }

    pub fn mutable_vertices(&self) -> Vec<VertexId> {
        self.vertices
            .iter()
            .filter(|(_, f)| !**f)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Arrows as `(from, to, multiplicity)` in sorted order.
    pub fn arrows(&self) -> impl Iterator<Item = (&VertexId, &VertexId, u64)> {
        self.arrows.iter().map(|((a, b), m)| (a, b, *m))
    }

    /// Number of arrows from `x` to `y`.
    pub fn arr(&self, x: &VertexId, y: &VertexId) -> u64 {
        self.arrows
            .get(&(x.clone(), y.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Total number of arrows from a vertex of `xs` to a vertex of `ys`.
    pub fn arr_count(
        &self,
        xs: &BTreeSet<VertexId>,
        ys: &BTreeSet<VertexId>,
    ) -> Result<u64, QuiverError> {
        for v in xs.iter().chain(ys) {
            if !self.contains(v) {
                return Err(QuiverError::UnknownVertex(v.clone()));
            }
        }
        let mut total: u64 = 0;
        for ((a, b), m) in &self.arrows {
            if xs.contains(a) && ys.contains(b) {
                total = total
                    .checked_add(*m)
                    .ok_or_else(|| QuiverError::Overflow(a.clone(), b.clone()))?;
            }
        }
        Ok(total)
    }

    /// True when some arrow joins `x` and `y` in either direction.
    pub fn adjacent(&self, x: &VertexId, y: &VertexId) -> bool {
        self.arr(x, y) > 0 || self.arr(y, x) > 0
    }

    /// Mutation at the mutable vertex `z`.
    pub fn mutate(&self, z: &VertexId) -> Result<Self, QuiverError> {
        match self.is_frozen(z) {
            None => return Err(QuiverError::UnknownVertex(z.clone())),
            Some(true) => return Err(QuiverError::FrozenMutation(z.clone())),
            Some(false) => {}
        }
        let mut signed: BTreeMap<(VertexId, VertexId), i128> = BTreeMap::new();
        let mut add = |x: &VertexId, y: &VertexId, m: i128| {
            if x < y {
                *signed.entry((x.clone(), y.clone())).or_insert(0) += m;
            } else {
                *signed.entry((y.clone(), x.clone())).or_insert(0) -= m;
            }
        };
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        for ((x, y), m) in &self.arrows {
            let m = *m as i128;
            if x == z {
                outs.push((y, m));
                add(y, x, m);
            } else if y == z {
                ins.push((x, m));
                add(y, x, m);
            } else {
                add(x, y, m);
            }
        }
        for (x, a) in &ins {
            for (y, b) in &outs {
                if self.vertices[*x] && self.vertices[*y] {
                    continue;
                }
                let m = a
                    .checked_mul(*b)
                    .ok_or_else(|| QuiverError::Overflow((*x).clone(), (*y).clone()))?;
                add(x, y, m);
            }
        }
        let mut arrows = BTreeMap::new();
        for ((a, b), v) in signed {
            if v == 0 {
                continue;
            }
            let (from, to) = if v > 0 { (a, b) } else { (b, a) };
            let m = u64::try_from(v.unsigned_abs())
                .map_err(|_| QuiverError::Overflow(from.clone(), to.clone()))?;
            arrows.insert((from, to), m);
        }
        Ok(Self {
            vertices: self.vertices.clone(),
            arrows,
        })
    }

    /// Mutates along `seq` from left to right.
    pub fn mutate_sequence(&self, seq: &[VertexId]) -> Result<Self, QuiverError> {
        seq.iter().try_fold(self.clone(), |q, z| q.mutate(z))
    }

    /// Canonical copy. The internal representation is already canonical.
    pub fn normalize(&self) -> Self {
        self.clone()
    }

    pub fn to_json(&self) -> QuiverJson {
        self.clone().into()
    }
}

impl fmt::Display for IceQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .arrows()
            .map(|(a, b, m)| {
                if m == 1 {
                    format!("{a}->{b}")
                } else {
                    format!("{a}-{m}->{b}")
                }
            })
            .collect();
        write!(f, "[{}]", arrows.join(", "))
    }
}

/// Wire format for [`IceQuiver`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<VertexJson>,
    pub arrows: Vec<ArrowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: VertexId,
    #[serde(default)]
    pub frozen: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub from: VertexId,
    pub to: VertexId,
    #[serde(default = "one")]
    pub mult: u64,
}

fn one() -> u64 {
    1
}

impl TryFrom<QuiverJson> for IceQuiver {
    type Error = QuiverError;

    fn try_from(j: QuiverJson) -> Result<Self, Self::Error> {
        IceQuiver::new(
            j.vertices.into_iter().map(|v| (v.id, v.frozen)),
            j.arrows.into_iter().map(|a| (a.from, a.to, a.mult)),
        )
    }
}

impl From<IceQuiver> for QuiverJson {
    fn from(q: IceQuiver) -> Self {
        QuiverJson {
            vertices: q
                .vertices
                .iter()
                .map(|(id, frozen)| VertexJson {
                    id: id.clone(),
                    frozen: *frozen,
                })
                .collect(),
            arrows: q
                .arrows
                .iter()
                .map(|((from, to), mult)| ArrowJson {
                    from: from.clone(),
                    to: to.clone(),
                    mult: *mult,
                })
                .collect(),
        }
    }
}

/// Random ice quiver on `vertices` vertices labelled `0..vertices`.
///
/// Each vertex is frozen with probability 1/4 (vertex 0 always mutable).
/// Each unordered pair carries an arrow with probability `density`, with a
/// uniformly random direction and multiplicity in `1..=max_mult`.
pub fn random_ice_quiver<R: Rng + ?Sized>(
    rng: &mut R,
    vertices: usize,
    max_mult: u64,
    density: f64,
) -> IceQuiver {
    let frozen: Vec<bool> = (0..vertices)
        .map(|i| i > 0 && rng.random_bool(0.25))
        .collect();
    let mut arrows = Vec::new();
    for a in 0..vertices {
        for b in a + 1..vertices {
            if frozen[a] && frozen[b] {
                continue;
            }
            if rng.random_bool(density) {
                let m = rng.random_range(1..=max_mult);
                let (x, y) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
                arrows.push((VertexId::from(x), VertexId::from(y), m));
            }
        }
    }
    IceQuiver::new(
        frozen.iter().enumerate().map(|(i, f)| (VertexId::from(i), *f)),
        arrows,
    )
    .expect("random quiver is valid by construction")
}
