//! Seeds of finite ice quivers, orbit seeds of periodic quivers, and the
//! folding map between them.

mod identities;
mod roots;
mod window;

pub use identities::{
    discover_frozen_factors, verify_exchange_relation, verify_imaginary_relation, DiscoveryError,
    ExchangeKind, IdentityReport, IdentityStatus,
};
pub use roots::{is_orbit_cluster_root, RootInterval};
pub use window::{find_cluster_variable, AInfinityWindow, GammaCoordinates, VariableFinder};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{Layer, LaurentError, LaurentPoly, VarKey};
use crate::periodic::{PeriodicError, PeriodicQuiver, SiteId, Violation};
use crate::quiver::{IceQuiver, QuiverError, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Periodic(#[from] PeriodicError),
    #[error("exchange at {at}: {source}")]
    Division {
        at: String,
        #[source]
        source: LaurentError,
    },
    #[error("orbit sequence {witness:?} leaves the admissible class: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Inadmissible {
        witness: Vec<SiteId>,
        violations: Vec<Violation>,
    },
    #[error("window {lo}..={hi} is too small for {root}")]
    OutsideWindow { root: RootInterval, lo: i64, hi: i64 },
    #[error("no cluster variable with denominator vector {0} within {1} mutations")]
    NotFound(RootInterval, usize),
}

fn layer(frozen: bool) -> Layer {
    if frozen {
        Layer::Frozen
    } else {
        Layer::Mutable
    }
}

/// Initial variable of every vertex. Numeric labels (with at most one
/// trailing prime) become sites; otherwise vertices are numbered in order.
fn initial_keys(q: &IceQuiver) -> BTreeMap<VertexId, VarKey> {
    let numeric: Option<BTreeMap<VertexId, VarKey>> = q
        .vertices()
        .map(|(v, f)| match v.numeric() {
            Some((i, p)) if p <= 1 => Some((v.clone(), VarKey::new(i, 0, layer(f)))),
            _ => None,
        })
        .collect();
    if let Some(keys) = numeric {
        let distinct: BTreeSet<&VarKey> = keys.values().collect();
        if distinct.len() == keys.len() {
            return keys;
        }
    }
    q.vertices()
        .enumerate()
        .map(|(i, (v, f))| (v.clone(), VarKey::new(i as i64, 0, layer(f))))
        .collect()
}

/// A labelled seed: quiver, one Laurent polynomial per vertex in the
/// initial variables, and the mutation history.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    quiver: IceQuiver,
    initial: BTreeMap<VertexId, VarKey>,
    cluster: BTreeMap<VertexId, LaurentPoly>,
    history: Vec<VertexId>,
}

impl Seed {
    pub fn initial(quiver: IceQuiver) -> Self {
        let initial = initial_keys(&quiver);
        let cluster = initial
            .iter()
            .map(|(v, k)| (v.clone(), LaurentPoly::var(*k)))
            .collect();
        Self {
            quiver,
            initial,
            cluster,
            history: Vec::new(),
        }
    }

    pub fn quiver(&self) -> &IceQuiver {
        &self.quiver
    }

    pub fn history(&self) -> &[VertexId] {
        &self.history
    }

    pub fn cluster(&self) -> &BTreeMap<VertexId, LaurentPoly> {
        &self.cluster
    }

    pub fn variable(&self, v: &VertexId) -> Option<&LaurentPoly> {
        self.cluster.get(v)
    }

    pub fn initial_keys(&self) -> &BTreeMap<VertexId, VarKey> {
        &self.initial
    }

    /// Initial keys of the mutable vertices.
    pub fn mutable_keys(&self) -> Vec<VarKey> {
        self.initial.values().filter(|k| !k.is_frozen()).copied().collect()
    }

    /// Seed mutation at the mutable vertex `z`.
    pub fn mutate(&self, z: &VertexId) -> Result<Self, ClusterError> {
        let quiver = self.quiver.mutate(z)?;
        let mut out = LaurentPoly::one();
        let mut inn = LaurentPoly::one();
        for (a, b, m) in self.quiver.arrows() {
            if a == z {
                out = &out * &self.cluster[b].pow(m);
            } else if b == z {
                inn = &inn * &self.cluster[a].pow(m);
            }
        }
        let fresh = (&out + &inn)
            .exact_div(&self.cluster[z])
            .map_err(|source| ClusterError::Division {
                at: format!("vertex {z} after {:?}", self.history),
                source,
            })?;
        let mut cluster = self.cluster.clone();
        cluster.insert(z.clone(), fresh);
        let mut history = self.history.clone();
        history.push(z.clone());
        Ok(Self {
            quiver,
            initial: self.initial.clone(),
            cluster,
            history,
        })
    }

    pub fn mutate_sequence(&self, seq: &[VertexId]) -> Result<Self, ClusterError> {
        seq.iter().try_fold(self.clone(), |s, z| s.mutate(z))
    }

    /// Quiver and cluster, ignoring history.
    pub fn same_state(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.cluster == other.cluster && self.initial == other.initial
    }
}

/// A seed of a periodic quiver: one variable per site, standing for copy 0
/// of its orbit. Copy `k` carries the same polynomial shifted by `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSeed {
    quiver: PeriodicQuiver,
    cluster: Vec<LaurentPoly>,
    history: Vec<SiteId>,
}

impl OrbitSeed {
    pub fn initial(quiver: PeriodicQuiver) -> Self {
        let cluster = (0..quiver.site_count())
            .map(|s| LaurentPoly::var(VarKey::new(s as i64, 0, layer(quiver.is_frozen(s)))))
            .collect();
        Self {
            quiver,
            cluster,
            history: Vec::new(),
        }
    }

    pub fn quiver(&self) -> &PeriodicQuiver {
        &self.quiver
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn history(&self) -> &[SiteId] {
        &self.history
    }

    /// Variable at copy `shift` of `site`.
    pub fn variable(&self, site: SiteId, shift: i64) -> LaurentPoly {
        self.cluster[site].shift_substitute(shift)
    }

    /// Mutation at every copy of orbit `k`. Fails if the resulting quiver
    /// is not admissible, reporting the sequence that led there.
    pub fn mutate(&self, k: SiteId) -> Result<Self, ClusterError> {
        let quiver = self.quiver.orbit_mutate(k)?;
        let violations = quiver.admissibility_check();
        if !violations.is_empty() {
            let mut witness = self.history.clone();
            witness.push(k);
            return Err(ClusterError::Inadmissible {
                witness,
                violations,
            });
        }
        let mut out = LaurentPoly::one();
        let mut inn = LaurentPoly::one();
        for (u, v, s, m) in self.quiver.arrows() {
            if u == k {
                out = &out * &self.variable(v, s).pow(m);
            } else if v == k {
                inn = &inn * &self.variable(u, -s).pow(m);
            }
        }
        let fresh = (&out + &inn)
            .exact_div(&self.cluster[k])
            .map_err(|source| ClusterError::Division {
                at: format!("orbit {k} after {:?}", self.history),
                source,
            })?;
        let mut cluster = self.cluster.clone();
        cluster[k] = fresh;
        let mut history = self.history.clone();
        history.push(k);
        Ok(Self {
            quiver,
            cluster,
            history,
        })
    }

    pub fn mutate_sequence(&self, seq: &[SiteId]) -> Result<Self, ClusterError> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// The seed of the folded quiver obtained by identifying all copies of
    /// each variable.
    pub fn fold(&self) -> Result<Seed, ClusterError> {
        let quiver = self.quiver.fold()?;
        let initial = (0..self.quiver.site_count())
            .map(|s| {
                let key = VarKey::new(s as i64, 0, layer(self.quiver.is_frozen(s)));
                (VertexId::from(s), key)
            })
            .collect();
        let cluster = self
            .cluster
            .iter()
            .enumerate()
            .map(|(s, p)| (VertexId::from(s), p.fold_substitute()))
            .collect();
        let history = self.history.iter().map(|&s| VertexId::from(s)).collect();
        Ok(Seed {
            quiver,
            initial,
            cluster,
            history,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::build_gamma_infinity;

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    fn x(i: i64) -> LaurentPoly {
        LaurentPoly::var(VarKey::mutable(i))
    }

    #[test]
    fn isolated_vertex_exchange() {
        let q = IceQuiver::new([(v("0"), false)], []).unwrap();
        let s = Seed::initial(q).mutate(&v("0")).unwrap();
        let expected = LaurentPoly::constant(2).exact_div(&x(0)).unwrap();
        assert_eq!(s.variable(&v("0")).unwrap(), &expected);
    }

    #[test]
    fn a2_pentagon() {
        // Five alternating mutations of A2 return the initial cluster, swapped.
        let q = IceQuiver::new([(v("1"), false), (v("2"), false)], [(v("1"), v("2"), 1)]).unwrap();
        let s0 = Seed::initial(q);
        let seq: Vec<VertexId> = ["1", "2", "1", "2", "1"].iter().map(|s| v(s)).collect();
        let s5 = s0.mutate_sequence(&seq).unwrap();
        assert_eq!(s5.variable(&v("1")).unwrap(), &x(2));
        assert_eq!(s5.variable(&v("2")).unwrap(), &x(1));
        let after_one = s0.mutate(&v("1")).unwrap();
        let expected = (&x(2) + &LaurentPoly::one()).exact_div(&x(1)).unwrap();
        assert_eq!(after_one.variable(&v("1")).unwrap(), &expected);
    }

    #[test]
    fn frozen_labels_share_site_numbers() {
        let q = IceQuiver::new(
            [(v("3"), false), (v("3'"), true)],
            [(v("3'"), v("3"), 1)],
        )
        .unwrap();
        let s = Seed::initial(q);
        assert_eq!(s.initial_keys()[&v("3")], VarKey::mutable(3));
        assert_eq!(s.initial_keys()[&v("3'")], VarKey::frozen(3));
    }

    #[test]
    fn kronecker_orbit_seed_exchange() {
        let os = OrbitSeed::initial(build_gamma_infinity(1).unwrap());
        let m = os.mutate(0).unwrap();
        let x1 = LaurentPoly::var(VarKey::mutable(1));
        let x1m = LaurentPoly::var(VarKey::new(1, -1, Layer::Mutable));
        let f0 = LaurentPoly::var(VarKey::new(2, 0, Layer::Frozen));
        let expected = (&(&x1 * &x1m) + &f0).exact_div(&x(0)).unwrap();
        assert_eq!(m.cluster()[0], expected);
        let folded = m.fold().unwrap();
        let direct = Seed::initial(os.quiver().fold().unwrap()).mutate(&v("0")).unwrap();
        assert!(folded.same_state(&direct));
    }

    #[test]
    fn orbit_seed_reports_witness() {
        let pq = crate::periodic::build_aq_from_orientation(&crate::periodic::CycleOrientation::cyclic(3));
        match OrbitSeed::initial(pq).mutate(0) {
            Err(ClusterError::Inadmissible { witness, violations }) => {
                assert_eq!(witness, vec![0]);
                assert_eq!(violations[0].sites, (1, 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn seed_json_round_trip() {
        let s = OrbitSeed::initial(build_gamma_infinity(1).unwrap()).mutate(1).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<OrbitSeed>(&text).unwrap(), s);
        let f = s.fold().unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<Seed>(&text).unwrap(), f);
    }
}
