//! Exact algorithms for folding ℤ-periodic cluster structures onto tori.

pub mod cluster;
pub mod explorer;
pub mod laurent;
pub mod periodic;
pub mod quiver;
pub mod surface;
pub mod verify;
pub mod ymonomial;

pub use cluster::{
    find_cluster_variable, is_orbit_cluster_root, verify_exchange_relation,
    verify_imaginary_relation, AInfinityWindow, ClusterError, ExchangeKind, GammaCoordinates,
    IdentityReport, IdentityStatus, OrbitSeed, RootInterval, Seed,
};
pub use explorer::{CreateRequest, ExplorerError, Preset, SessionStore, SessionView};
pub use laurent::{Layer, LaurentError, LaurentPoly, Monomial, VarKey};
pub use periodic::{
    build_aq, build_gamma_infinity, foldability_search, Condition, CycleOrientation,
    PeriodicError, PeriodicQuiver, SearchOutcome, SiteId, Violation,
};
pub use quiver::{IceQuiver, QuiverError, VertexId};
pub use ymonomial::{
    a_monomial, d_grade, is_mu_dominated, kr_monomial, m_alpha, nakajima_leq, phi_fold,
    Certificate, Family, MuDominance, SiteIndex, YError, YMonomial,
};
pub use surface::{
    crosses, default_triangulation, default_triangulation_for, Arc, GeometryReport, Mark, Side,
    SigmaTriangulation, SurfaceError,
};
pub use verify::{run_suite, Check, Suite, SuiteConfig, SuiteError, SuiteReport};
