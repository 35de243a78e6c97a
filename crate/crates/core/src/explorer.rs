//! In-memory sessions for interactive orbit mutation.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster::{ClusterError, OrbitSeed, Seed};
use crate::periodic::{
    build_aq_from_orientation, build_gamma_infinity, CycleOrientation, PeriodicError,
    PeriodicQuiver, SiteId, Violation,
};
use crate::quiver::IceQuiver;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExplorerError {
    #[error("unknown session {0}")]
    UnknownSession(String),
    #[error("initial quiver is not admissible")]
    Inadmissible(Vec<Violation>),
    #[error("mutation leaves the admissible class")]
    Violation {
        witness: Vec<SiteId>,
        violations: Vec<Violation>,
    },
    #[error("orbit {0} is frozen")]
    FrozenOrbit(SiteId),
    #[error("unknown orbit {0}")]
    UnknownOrbit(SiteId),
    #[error("nothing to undo")]
    EmptyHistory,
    #[error("bad preset: {0}")]
    Preset(String),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
}

/// Named starting quivers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "camelCase")]
pub enum Preset {
    GammaInfinity { n: usize },
    Cyclic3,
    Aq { forward: Vec<bool> },
}

impl Preset {
    pub fn quiver(&self) -> Result<PeriodicQuiver, ExplorerError> {
        let bad = |e: PeriodicError| ExplorerError::Preset(e.to_string());
        match self {
            Self::GammaInfinity { n } => build_gamma_infinity(*n).map_err(bad),
            Self::Cyclic3 => Ok(build_aq_from_orientation(&CycleOrientation::cyclic(3))),
            Self::Aq { forward } => Ok(build_aq_from_orientation(
                &CycleOrientation::new(forward.clone()).map_err(bad)?,
            )),
        }
    }
}

/// Description of a preset for clients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetInfo {
    pub preset: String,
    pub params: Vec<String>,
    pub description: String,
}

pub fn presets() -> Vec<PresetInfo> {
    let info = |p: &str, params: &[&str], d: &str| PresetInfo {
        preset: p.into(),
        params: params.iter().map(|s| s.to_string()).collect(),
        description: d.into(),
    };
    vec![
        info(
            "gammaInfinity",
            &["n"],
            "alternating A-infinity quiver with frozen vertices, period 2n",
        ),
        info("cyclic3", &[], "unrolled cyclically oriented triangle"),
        info(
            "aq",
            &["forward"],
            "unrolled cycle; forward[i] orients the edge i -> i+1",
        ),
    ]
}

/// Body of a session creation request: a preset or an explicit quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CreateRequest {
    Preset(Preset),
    Quiver { quiver: PeriodicQuiver },
}

/// One site of the current cluster, rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteView {
    pub site: SiteId,
    pub frozen: bool,
    pub variable: String,
    pub terms: usize,
}

/// What a client sees of a session.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionView {
    pub id: String,
    pub seed: OrbitSeed,
    pub admissible: bool,
    pub violations: Vec<Violation>,
    pub folded: IceQuiver,
    pub sites: Vec<SiteView>,
    pub can_undo: bool,
}

#[derive(Debug)]
struct Session {
    /// Every reached state, the current one last.
    states: Vec<OrbitSeed>,
    folded: Option<Seed>,
}

impl Session {
    fn current(&self) -> &OrbitSeed {
        self.states.last().expect("a session has a state")
    }

    fn folded(&mut self) -> Result<&Seed, ExplorerError> {
        if self.folded.is_none() {
            self.folded = Some(self.current().fold()?);
        }
        Ok(self.folded.as_ref().expect("just filled"))
    }

    fn view(&mut self, id: &str) -> Result<SessionView, ExplorerError> {
        let folded = self.folded()?.quiver().clone();
        let seed = self.current().clone();
        let q = seed.quiver();
        let violations = q.admissibility_check();
        let sites = seed
            .cluster()
            .iter()
            .enumerate()
            .map(|(site, p)| SiteView {
                site,
                frozen: q.is_frozen(site),
                variable: p.to_string(),
                terms: p.len(),
            })
            .collect();
        Ok(SessionView {
            id: id.to_string(),
            admissible: violations.is_empty(),
            violations,
            folded,
            sites,
            can_undo: self.states.len() > 1,
            seed,
        })
    }
}

/// Thread-safe session registry. Requests on one session are serialized
/// by its own lock; distinct sessions proceed independently.
#[derive(Debug, Default)]
pub struct SessionStore {
    next: AtomicU64,
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
}

impl SessionStore {
    pub fn new() -> Self {
        Self::default()
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ExplorerError> {
        self.sessions
            .lock()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ExplorerError::UnknownSession(id.to_string()))
    }

    pub fn create(&self, req: CreateRequest) -> Result<SessionView, ExplorerError> {
        let quiver = match req {
            CreateRequest::Preset(p) => p.quiver()?,
            CreateRequest::Quiver { quiver } => quiver,
        };
        let violations = quiver.admissibility_check();
        if !violations.is_empty() {
            return Err(ExplorerError::Inadmissible(violations));
        }
        let id = format!("s{}", self.next.fetch_add(1, Ordering::Relaxed) + 1);
        let mut session = Session {
            states: vec![OrbitSeed::initial(quiver)],
            folded: None,
        };
        let view = session.view(&id)?;
        self.sessions
            .lock()
            .expect("session map lock")
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(view)
    }

    pub fn view(&self, id: &str) -> Result<SessionView, ExplorerError> {
        let s = self.get(id)?;
        let mut s = s.lock().expect("session lock");
        s.view(id)
    }

    /// Mutates the current state at `orbit`. A violation leaves the state unchanged.
    pub fn mutate(&self, id: &str, orbit: SiteId) -> Result<SessionView, ExplorerError> {
        let s = self.get(id)?;
        let mut s = s.lock().expect("session lock");
        let current = s.current();
        if orbit >= current.quiver().site_count() {
            return Err(ExplorerError::UnknownOrbit(orbit));
        }
        if current.quiver().is_frozen(orbit) {
            return Err(ExplorerError::FrozenOrbit(orbit));
        }
        let next = match current.mutate(orbit) {
            Ok(next) => next,
            Err(ClusterError::Inadmissible {
                witness,
                violations,
            }) => {
                return Err(ExplorerError::Violation {
                    witness,
                    violations,
                })
            }
            Err(e) => return Err(e.into()),
        };
        s.states.push(next);
        s.folded = None;
        s.view(id)
    }

    pub fn undo(&self, id: &str) -> Result<SessionView, ExplorerError> {
        let s = self.get(id)?;
        let mut s = s.lock().expect("session lock");
        if s.states.len() < 2 {
            return Err(ExplorerError::EmptyHistory);
        }
        s.states.pop();
        s.folded = None;
        s.view(id)
    }

    pub fn fold(&self, id: &str) -> Result<Seed, ExplorerError> {
        let s = self.get(id)?;
        let mut s = s.lock().expect("session lock");
        Ok(s.folded()?.clone())
    }
}
