//! Finite windows of the alternating A∞ quiver and coordinates relating
//! them to the periodic quiver and its torus folding.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::{ClusterError, RootInterval, Seed};
use crate::laurent::{Layer, LaurentPoly, VarKey};
use crate::periodic::build_gamma_infinity;
use crate::quiver::{IceQuiver, VertexId};

/// The alternating A∞ ice quiver on positions `lo..=hi`, each position `p`
/// carrying a frozen vertex `p'`.
///
/// Only positions strictly inside the window are mutated, so every variable
/// computed here equals the variable of the infinite quiver reached by the
/// same sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AInfinityWindow {
    lo: i64,
    hi: i64,
}

impl AInfinityWindow {
    /// # Panics
    /// If the window has no interior position.
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(hi - lo >= 2, "window {lo}..={hi} has no interior");
        Self { lo, hi }
    }

    /// The window containing the support of `root` padded by `pad` on each side.
    pub fn around(root: &RootInterval, pad: i64) -> Self {
        let (i, j) = root.support();
        Self::new(i - pad, j + pad)
    }

    pub fn bounds(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn vertex(p: i64) -> VertexId {
        VertexId::from(p)
    }

    pub fn frozen_vertex(p: i64) -> VertexId {
        VertexId::new(format!("{p}'"))
    }

    pub fn quiver(&self) -> IceQuiver {
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        for p in self.lo..=self.hi {
            vertices.push((Self::vertex(p), false));
            vertices.push((Self::frozen_vertex(p), true));
            if p.rem_euclid(2) == 0 {
                arrows.push((Self::frozen_vertex(p), Self::vertex(p), 1));
                for q in [p - 1, p + 1] {
                    if (self.lo..=self.hi).contains(&q) {
                        arrows.push((Self::vertex(p), Self::vertex(q), 1));
                    }
                }
            } else {
                arrows.push((Self::vertex(p), Self::frozen_vertex(p), 1));
            }
        }
        IceQuiver::new(vertices, arrows).expect("window quiver is valid")
    }

    pub fn seed(&self) -> Seed {
        Seed::initial(self.quiver())
    }

    /// True when the support of `root` lies strictly inside the window.
    pub fn holds(&self, root: &RootInterval) -> bool {
        let (i, j) = root.support();
        match root {
            RootInterval::Positive { .. } => self.lo < i && j < self.hi,
            RootInterval::NegativeSimple { .. } => self.lo <= i && i <= self.hi,
        }
    }
}

/// Root read off the denominator vector of `p` over its mutable variables,
/// indexed by site.
pub(crate) fn root_of(p: &LaurentPoly) -> Option<RootInterval> {
    let keys: Vec<VarKey> = p.variables().into_iter().filter(|k| !k.is_frozen()).collect();
    let d: BTreeMap<i64, i64> = p
        .denominator_vector(&keys)
        .into_iter()
        .map(|(k, v)| (k.site, v))
        .collect();
    RootInterval::from_denominator_vector(&d)
}

/// The cluster variable of the window with denominator vector `root`.
///
/// Tries mutating the support left to right, then right to left, then a
/// breadth-first search over mutations inside the support of length at
/// most `budget`.
pub fn find_cluster_variable(
    window: &AInfinityWindow,
    root: RootInterval,
    budget: usize,
) -> Result<LaurentPoly, ClusterError> {
    if !window.holds(&root) {
        return Err(ClusterError::OutsideWindow {
            root,
            lo: window.lo,
            hi: window.hi,
        });
    }
    let (i, j) = match root {
        RootInterval::NegativeSimple { i } => return Ok(LaurentPoly::var(VarKey::mutable(i))),
        RootInterval::Positive { i, j } => (i, j),
    };
    let seed = window.seed();
    let pick = |s: &Seed| s.cluster().values().find(|p| root_of(p) == Some(root)).cloned();
    let forward: Vec<VertexId> = (i..=j).map(AInfinityWindow::vertex).collect();
    let backward: Vec<VertexId> = forward.iter().rev().cloned().collect();
    for seq in [forward.clone(), backward] {
        if let Some(p) = pick(&seed.mutate_sequence(&seq)?) {
            return Ok(p);
        }
    }
    let mut seen: HashSet<Vec<LaurentPoly>> = HashSet::new();
    let mut frontier = vec![seed];
    for _ in 0..budget {
        let mut next = Vec::new();
        for s in &frontier {
            for z in &forward {
                if s.history().last() == Some(z) {
                    continue;
                }
                let t = s.mutate(z)?;
                if let Some(p) = pick(&t) {
                    return Ok(p);
                }
                if seen.insert(t.cluster().values().cloned().collect()) {
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    Err(ClusterError::NotFound(root, budget))
}

/// Memoizing lookup of cluster variables in one window.
#[derive(Clone, Debug)]
pub struct VariableFinder {
    window: AInfinityWindow,
    budget: usize,
    cache: HashMap<RootInterval, LaurentPoly>,
}

impl VariableFinder {
    pub fn new(window: AInfinityWindow) -> Self {
        Self {
            window,
            budget: 8,
            cache: HashMap::new(),
        }
    }

    pub fn window(&self) -> &AInfinityWindow {
        &self.window
    }

    pub fn get(&mut self, root: RootInterval) -> Result<LaurentPoly, ClusterError> {
        if let Some(p) = self.cache.get(&root) {
            return Ok(p.clone());
        }
        let p = find_cluster_variable(&self.window, root, self.budget)?;
        self.cache.insert(root, p.clone());
        Ok(p)
    }

    /// Product of the variables of `roots`.
    pub fn product(&mut self, roots: &[RootInterval]) -> Result<LaurentPoly, ClusterError> {
        roots
            .iter()
            .try_fold(LaurentPoly::one(), |acc, r| Ok(&acc * &self.get(*r)?))
    }
}

/// Coordinates for the alternating A∞ quiver of period `2n` and its torus
/// folding.
///
/// * orbit coordinates: keys of [`super::OrbitSeed`] over
///   [`build_gamma_infinity`], mutable site `i` and frozen site `2n + i`;
/// * window coordinates: site = position in ℤ, shift 0;
/// * torus coordinates: keys of the folded seed, site `i mod 2n` or
///   `2n + (i mod 2n)`, shift 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaCoordinates {
    n: usize,
}

impl GammaCoordinates {
    pub fn new(n: usize) -> Self {
        assert!(n > 0);
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn circumference(&self) -> i64 {
        2 * self.n as i64
    }

    pub fn orbit_to_window_key(&self, k: VarKey) -> VarKey {
        let p = self.circumference();
        let base = match k.layer {
            Layer::Mutable => k.site,
            Layer::Frozen => k.site - p,
        };
        VarKey::new(base + p * k.shift, 0, k.layer)
    }

    pub fn window_to_torus_key(&self, k: VarKey) -> VarKey {
        let p = self.circumference();
        let r = k.site.rem_euclid(p);
        match k.layer {
            Layer::Mutable => VarKey::new(r, 0, Layer::Mutable),
            Layer::Frozen => VarKey::new(p + r, 0, Layer::Frozen),
        }
    }

    pub fn orbit_to_window(&self, poly: &LaurentPoly) -> LaurentPoly {
        poly.map_vars(|k| self.orbit_to_window_key(k))
    }

    /// The folding substitution on window coordinates.
    pub fn window_to_torus(&self, poly: &LaurentPoly) -> LaurentPoly {
        poly.map_vars(|k| self.window_to_torus_key(k))
    }

    /// Root of an orbit-seed variable, in window coordinates.
    pub fn orbit_variable_root(&self, poly: &LaurentPoly) -> Option<RootInterval> {
        root_of(&self.orbit_to_window(poly))
    }

    /// Initial seed of the folded torus quiver.
    pub fn torus_seed(&self) -> Seed {
        let q = build_gamma_infinity(self.n)
            .and_then(|pq| pq.fold())
            .expect("alternating quiver folds");
        Seed::initial(q)
    }

    /// Torus vertex of a mutable position.
    pub fn torus_vertex(&self, position: i64) -> VertexId {
        VertexId::from(position.rem_euclid(self.circumference()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::OrbitSeed;

    fn x(i: i64) -> LaurentPoly {
        LaurentPoly::var(VarKey::mutable(i))
    }

    fn f(i: i64) -> LaurentPoly {
        LaurentPoly::var(VarKey::frozen(i))
    }

    #[test]
    fn simple_roots_at_sources_and_sinks() {
        let w = AInfinityWindow::new(-3, 4);
        // Even positions are sources: x0' = (x_{-1} x_1 + f_0) / x_0.
        let even = find_cluster_variable(&w, RootInterval::simple(0), 4).unwrap();
        let expected = (&(&x(-1) * &x(1)) + &f(0)).exact_div(&x(0)).unwrap();
        assert_eq!(even, expected);
        // Odd positions are sinks: x1' = (f_1 + x_0 x_2) / x_1.
        let odd = find_cluster_variable(&w, RootInterval::simple(1), 4).unwrap();
        let expected = (&(&x(0) * &x(2)) + &f(1)).exact_div(&x(1)).unwrap();
        assert_eq!(odd, expected);
    }

    #[test]
    fn every_short_root_is_found_with_its_denominator() {
        let w = AInfinityWindow::new(-4, 6);
        for i in -2..=2 {
            for len in 1..=4 {
                let r = RootInterval::positive(i, i + len - 1);
                let p = find_cluster_variable(&w, r, 6).unwrap();
                assert_eq!(root_of(&p), Some(r));
                assert!(p.has_positive_coefficients());
            }
        }
    }

    #[test]
    fn outside_window_is_an_error() {
        let w = AInfinityWindow::new(0, 4);
        assert!(matches!(
            find_cluster_variable(&w, RootInterval::positive(0, 2), 4),
            Err(ClusterError::OutsideWindow { .. })
        ));
    }

    #[test]
    fn variables_do_not_depend_on_window_size() {
        let r = RootInterval::positive(1, 3);
        let a = find_cluster_variable(&AInfinityWindow::around(&r, 1), r, 6).unwrap();
        let b = find_cluster_variable(&AInfinityWindow::around(&r, 4), r, 6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn orbit_coordinates_agree_with_window() {
        // Mutating orbit 1 of the period-4 quiver yields, at copy 0, the
        // window variable of alpha[1].
        let g = GammaCoordinates::new(2);
        let os = OrbitSeed::initial(build_gamma_infinity(2).unwrap()).mutate(1).unwrap();
        let w = AInfinityWindow::new(-3, 5);
        let expected = find_cluster_variable(&w, RootInterval::simple(1), 4).unwrap();
        assert_eq!(g.orbit_to_window(&os.cluster()[1]), expected);
        assert_eq!(g.orbit_variable_root(&os.cluster()[1]), Some(RootInterval::simple(1)));
        // Folding commutes with the coordinate changes.
        assert_eq!(g.window_to_torus(&expected), os.cluster()[1].fold_substitute());
    }
}
