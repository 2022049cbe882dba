//! Finite partial dynamical systems.
//!
//! A system is a finite set of points together with an injective partial
//! self-map `theta`. Everything downstream — measure polytopes, matrix
//! models, orbit-breaking — is computed from this structure. Because the
//! space is finite and discrete, every topological notion specializes to
//! something decidable: closed sets are arbitrary subsets and "dense"
//! means "equal to the whole point set".

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a point in a [`FiniteSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub usize);

impl Point {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of the points of a system.
pub type PointSet = BTreeSet<Point>;

/// Compact bitset over point indices, used internally for subset work.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct Mask {
    words: Vec<u64>,
    len: usize,
}

impl Mask {
    pub fn empty(len: usize) -> Self {
        Mask {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut m = Mask::empty(len);
        for i in 0..len {
            m.insert(i);
        }
        m
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, other: &Mask) -> Mask {
        Mask {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            len: self.len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    pub fn to_set(&self) -> PointSet {
        self.iter().map(Point).collect()
    }

    pub fn from_set(len: usize, set: &PointSet) -> Mask {
        let mut m = Mask::empty(len);
        for p in set {
            m.insert(p.0);
        }
        m
    }
}

/// A finite set of named points with an injective partial self-map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSystem {
    labels: Vec<String>,
    theta: Vec<Option<usize>>,
    inverse: Vec<Option<usize>>,
}

impl FiniteSystem {
    /// Builds a system from point labels and per-point images.
    ///
    /// Fails if labels repeat, an image index is out of range, or two
    /// points share an image.
    pub fn new(labels: Vec<String>, images: Vec<Option<usize>>) -> Result<Self> {
        if labels.len() != images.len() {
            return Err(Error::BadFile(format!(
                "{} labels but {} image entries",
                labels.len(),
                images.len()
            )));
        }
        let n = labels.len();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::DuplicatePoint(l.clone()));
            }
        }
        let mut inverse = vec![None; n];
        for (i, img) in images.iter().enumerate() {
            if let Some(j) = *img {
                if j >= n {
                    return Err(Error::PointOutOfRange { index: j, size: n });
                }
                if let Some(prev) = inverse[j] {
                    return Err(Error::NotInjective {
                        first: labels[prev].clone(),
                        second: labels[i].clone(),
                        image: labels[j].clone(),
                    });
                }
                inverse[j] = Some(i);
            }
        }
        Ok(FiniteSystem {
            labels,
            theta: images,
            inverse,
        })
    }

    /// Builds a system on `n` points labeled `p0..p{n-1}`.
    pub fn from_images(images: Vec<Option<usize>>) -> Result<Self> {
        let labels = (0..images.len()).map(|i| format!("p{i}")).collect();
        FiniteSystem::new(labels, images)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(Point)
    }

    pub fn all_points(&self) -> PointSet {
        self.points().collect()
    }

    pub fn label(&self, p: Point) -> &str {
        &self.labels[p.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Looks a point up by name.
    pub fn point_named(&self, name: &str) -> Result<Point> {
        self.labels
            .iter()
            .position(|l| l == name)
            .map(Point)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    fn check(&self, p: Point) -> Result<()> {
        if p.0 < self.len() {
            Ok(())
        } else {
            Err(Error::PointOutOfRange {
                index: p.0,
                size: self.len(),
            })
        }
    }

    /// `theta(p)`, if `p` is in the domain.
    pub fn theta(&self, p: Point) -> Option<Point> {
        self.theta[p.0].map(Point)
    }

    /// `theta^{-1}(p)`, if `p` is in the range.
    pub fn theta_inv(&self, p: Point) -> Option<Point> {
        self.inverse[p.0].map(Point)
    }

    /// Iterated application: `theta^n(p)` for any integer `n`.
    pub fn theta_pow(&self, p: Point, n: i64) -> Option<Point> {
        let mut cur = p;
        for _ in 0..n.unsigned_abs() {
            cur = if n > 0 {
                self.theta(cur)?
            } else {
                self.theta_inv(cur)?
            };
        }
        Some(cur)
    }

    /// The domain of `theta`.
    pub fn domain(&self) -> PointSet {
        self.points().filter(|p| self.theta[p.0].is_some()).collect()
    }

    /// The range of `theta`.
    pub fn range(&self) -> PointSet {
        self.points().filter(|p| self.inverse[p.0].is_some()).collect()
    }

    pub(crate) fn domain_mask(&self) -> Mask {
        let mut m = Mask::empty(self.len());
        for (i, img) in self.theta.iter().enumerate() {
            if img.is_some() {
                m.insert(i);
            }
        }
        m
    }

    pub(crate) fn range_mask(&self) -> Mask {
        let mut m = Mask::empty(self.len());
        for (i, pre) in self.inverse.iter().enumerate() {
            if pre.is_some() {
                m.insert(i);
            }
        }
        m
    }

    /// Image of a set under `theta` (only the part inside the domain moves).
    pub(crate) fn apply_theta(&self, m: &Mask) -> Mask {
        let mut out = Mask::empty(self.len());
        for i in m.iter() {
            if let Some(j) = self.theta[i] {
                out.insert(j);
            }
        }
        out
    }

    pub(crate) fn apply_theta_inv(&self, m: &Mask) -> Mask {
        let mut out = Mask::empty(self.len());
        for i in m.iter() {
            if let Some(j) = self.inverse[i] {
                out.insert(j);
            }
        }
        out
    }

    /// Domain table with the default horizon `max(1, |points|)`, which is
    /// always enough to stabilize.
    pub fn domain_table(&self) -> DomainTable {
        self.compute_domains(self.len().max(1))
    }

    /// The sets `D_n` for `|n| <= horizon`.
    ///
    /// `D_n` is the codomain of `theta^n` (so `D_{-n}` is its maximal
    /// domain); `D_0` is the whole point set. The table records whether
    /// the sets have stabilized at the horizon, which is guaranteed once
    /// `horizon >= |points|`.
    pub fn compute_domains(&self, horizon: usize) -> DomainTable {
        assert!(horizon >= 1, "horizon must be at least 1");
        let n = self.len();
        let mut fwd = Vec::with_capacity(horizon + 2);
        let mut bwd = Vec::with_capacity(horizon + 2);
        fwd.push(Mask::full(n)); // D_0
        bwd.push(Mask::full(n));
        let dom = self.domain_mask();
        let ran = self.range_mask();
        // D_{k+1} = theta(D_k ∩ D_{-1}); D_{-(k+1)} = theta^{-1}(D_{-k} ∩ D_1).
        for k in 0..=horizon {
            let next_fwd = self.apply_theta(&fwd[k].and(&dom));
            let next_bwd = self.apply_theta_inv(&bwd[k].and(&ran));
            fwd.push(next_fwd);
            bwd.push(next_bwd);
        }
        let stabilized = fwd[horizon] == fwd[horizon + 1] && bwd[horizon] == bwd[horizon + 1];
        fwd.truncate(horizon + 1);
        bwd.truncate(horizon + 1);
        DomainTable {
            horizon,
            fwd,
            bwd,
            stabilized,
        }
    }

    /// The full orbit `{theta^n(x) : n in Z, defined}` of `x` (includes `x`).
    pub fn orbit(&self, x: Point) -> Result<PointSet> {
        self.check(x)?;
        let mut set = self.forward_orbit(x)?;
        set.extend(self.backward_orbit(x)?);
        set.insert(x);
        Ok(set)
    }

    /// `{theta^n(x) : n >= 1, defined}`.
    pub fn forward_orbit(&self, x: Point) -> Result<PointSet> {
        self.check(x)?;
        let mut set = PointSet::new();
        let mut cur = x;
        while let Some(next) = self.theta(cur) {
            if !set.insert(next) {
                break; // closed a cycle
            }
            cur = next;
        }
        Ok(set)
    }

    /// `{theta^{-n}(x) : n >= 1, defined}`.
    pub fn backward_orbit(&self, x: Point) -> Result<PointSet> {
        self.check(x)?;
        let mut set = PointSet::new();
        let mut cur = x;
        while let Some(prev) = self.theta_inv(cur) {
            if !set.insert(prev) {
                break;
            }
            cur = prev;
        }
        Ok(set)
    }

    /// Classifies every point by its itinerary type.
    ///
    /// The class is read off domain membership after stabilization: points
    /// admitting arbitrarily many forward (resp. backward) applications of
    /// `theta` lie in every `D_{-n}` (resp. `D_n`). On a finite system an
    /// infinite one-sided itinerary forces a revisit and hence a cycle, so
    /// only `Fin` and `Glob` can occur.
    pub fn orbit_decomposition(&self) -> OrbitDecomposition {
        let n = self.len();
        let table = self.domain_table();
        let fwd_inf = &table.bwd[table.horizon.min(n.max(1))]; // in every D_{-n}
        let bwd_inf = &table.fwd[table.horizon.min(n.max(1))]; // in every D_n
        let classes = (0..n)
            .map(|i| match (fwd_inf.contains(i), bwd_inf.contains(i)) {
                (false, false) => OrbitClass::Fin,
                (true, false) => OrbitClass::Plus,
                (false, true) => OrbitClass::Minus,
                (true, true) => OrbitClass::Glob,
            })
            .collect::<Vec<_>>();
        debug_assert!(
            classes.iter().all(|c| matches!(c, OrbitClass::Fin | OrbitClass::Glob)),
            "one-sided infinite itineraries are impossible on finite systems"
        );
        OrbitDecomposition { classes }
    }

    /// Splits the points into maximal chains and cycles.
    ///
    /// Injectivity makes both in- and out-degree at most one, so the
    /// functional graph is a disjoint union of paths and cycles. Chains are
    /// listed by their starting point's index, cycles by their smallest
    /// member, each rotated to start at it.
    pub fn chain_decomposition(&self) -> ChainDecomposition {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut chains = Vec::new();
        // Chain starts: points with no predecessor.
        for i in 0..n {
            if self.inverse[i].is_none() {
                let mut chain = vec![Point(i)];
                seen[i] = true;
                let mut cur = i;
                while let Some(next) = self.theta[cur] {
                    chain.push(Point(next));
                    seen[next] = true;
                    cur = next;
                }
                chains.push(chain);
            }
        }
        // Everything else lies on a cycle.
        let mut cycles = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut cycle = vec![Point(i)];
            seen[i] = true;
            let mut cur = self.theta[i].expect("cycle point must be in the domain");
            while cur != i {
                cycle.push(Point(cur));
                seen[cur] = true;
                cur = self.theta[cur].expect("cycle point must be in the domain");
            }
            cycles.push(cycle);
        }
        ChainDecomposition { chains, cycles }
    }

    /// Whether `Y` is invariant: `theta(Y ∩ U) ⊆ Y` and `theta^{-1}(Y ∩ V) ⊆ Y`.
    pub fn is_invariant(&self, set: &PointSet) -> Result<bool> {
        for p in set {
            self.check(*p)?;
        }
        let mask = Mask::from_set(self.len(), set);
        Ok(self.is_invariant_mask(&mask))
    }

    pub(crate) fn is_invariant_mask(&self, mask: &Mask) -> bool {
        for i in mask.iter() {
            if let Some(j) = self.theta[i] {
                if !mask.contains(j) {
                    return false;
                }
            }
            if let Some(j) = self.inverse[i] {
                if !mask.contains(j) {
                    return false;
                }
            }
        }
        true
    }

    /// Minimality: every orbit is the whole point set.
    pub fn is_minimal(&self) -> bool {
        let comp = self.chain_decomposition();
        comp.chains.len() + comp.cycles.len() <= 1
    }

    /// Freeness: `theta^n(x) = x` only for `n = 0`, i.e. no cycles.
    pub fn is_free(&self) -> bool {
        self.chain_decomposition().cycles.is_empty()
    }

    /// Evaluates the minimality statements literally on the finite model.
    pub fn minimality_report(&self) -> MinimalityReport {
        self.minimality_report_with_limit(MINIMALITY_ENUMERATION_LIMIT)
    }

    /// As [`minimality_report`](Self::minimality_report), with an explicit
    /// bound on the size at which full subset enumeration is attempted.
    pub fn minimality_report_with_limit(&self, limit: usize) -> MinimalityReport {
        let n = self.len();
        let comp = self.chain_decomposition();
        let dec = self.orbit_decomposition();
        let glob = dec.points_in(OrbitClass::Glob);
        let glob_mask = Mask::from_set(n, &glob);

        let all = self.all_points();
        let all_orbits_dense = self
            .points()
            .all(|p| self.orbit(p).expect("point in range") == all);

        let exhaustive = n <= limit;
        let (no_proper_invariant_subset, glob_invariant_trivial, glob_forward_trivial, glob_backward_trivial);
        if exhaustive && n > 0 {
            let mut s1 = true;
            let mut s6 = true;
            let mut s7 = true;
            let mut s8 = true;
            for bits in 1..((1u64 << n) - 1) {
                let mut mask = Mask::empty(n);
                for i in 0..n {
                    if bits >> i & 1 == 1 {
                        mask.insert(i);
                    }
                }
                let meets_glob = !mask.and(&glob_mask).is_empty();
                let fwd_ok = mask.iter().all(|i| match self.theta[i] {
                    Some(j) => mask.contains(j),
                    None => true,
                });
                let bwd_ok = mask.iter().all(|i| match self.inverse[i] {
                    Some(j) => mask.contains(j),
                    None => true,
                });
                if fwd_ok && bwd_ok {
                    s1 = false;
                    if meets_glob {
                        s6 = false;
                    }
                }
                if fwd_ok && meets_glob {
                    s7 = false;
                }
                if bwd_ok && meets_glob {
                    s8 = false;
                }
            }
            no_proper_invariant_subset = s1;
            glob_invariant_trivial = s6;
            glob_forward_trivial = s7;
            glob_backward_trivial = s8;
        } else {
            // Invariant sets are exactly unions of orbits, and any forward-
            // (or backward-) invariant set meeting the global part contains
            // a full cycle, so the statements reduce to component counts.
            no_proper_invariant_subset = comp.chains.len() + comp.cycles.len() <= 1;
            let proper_cycle = comp.cycles.iter().any(|c| c.len() < n);
            glob_invariant_trivial = !proper_cycle;
            glob_forward_trivial = !proper_cycle;
            glob_backward_trivial = !proper_cycle;
        }

        let glob_statements = if glob.is_empty() {
            None
        } else {
            let orbit_of = |p: Point| self.orbit(p).expect("point in range");
            let dense_fwd = glob.iter().all(|&p| {
                let mut s = self.forward_orbit(p).expect("point in range");
                s.insert(p);
                s == all
            });
            let dense_bwd = glob.iter().all(|&p| {
                let mut s = self.backward_orbit(p).expect("point in range");
                s.insert(p);
                s == all
            });
            Some(GlobOrbitStatements {
                orbits_dense: glob.iter().all(|&p| orbit_of(p) == all),
                forward_orbits_dense: dense_fwd,
                backward_orbits_dense: dense_bwd,
            })
        };

        MinimalityReport {
            no_proper_invariant_subset,
            all_orbits_dense,
            glob_invariant_trivial,
            glob_forward_trivial,
            glob_backward_trivial,
            glob_statements,
            exhaustive,
        }
    }

    /// Restricts `theta` to the domain `W ⊆ U`, keeping all points.
    pub fn restrict_domain(&self, w: &PointSet) -> Result<FiniteSystem> {
        for p in w {
            self.check(*p)?;
            if self.theta[p.0].is_none() {
                return Err(Error::NotInDomain(self.labels[p.0].clone()));
            }
        }
        let images = (0..self.len())
            .map(|i| if w.contains(&Point(i)) { self.theta[i] } else { None })
            .collect();
        FiniteSystem::new(self.labels.clone(), images)
    }

    /// Restricts the whole system to an invariant subset `Y`.
    pub fn restrict_to_invariant(&self, y: &PointSet) -> Result<FiniteSystem> {
        for p in y {
            self.check(*p)?;
        }
        let mask = Mask::from_set(self.len(), y);
        for i in mask.iter() {
            if let Some(j) = self.theta[i] {
                if !mask.contains(j) {
                    return Err(Error::NotInvariant(self.labels[i].clone()));
                }
            }
            if let Some(j) = self.inverse[i] {
                if !mask.contains(j) {
                    return Err(Error::NotInvariant(self.labels[i].clone()));
                }
            }
        }
        let kept: Vec<usize> = y.iter().map(|p| p.0).collect();
        let mut new_index = vec![usize::MAX; self.len()];
        for (ni, &oi) in kept.iter().enumerate() {
            new_index[oi] = ni;
        }
        let labels = kept.iter().map(|&i| self.labels[i].clone()).collect();
        let images = kept
            .iter()
            .map(|&i| self.theta[i].map(|j| new_index[j]))
            .collect();
        FiniteSystem::new(labels, images)
    }

    /// The orbit space: one class per orbit, with the restricted subsystem.
    pub fn orbit_space(&self) -> Vec<OrbitClassData> {
        let comp = self.chain_decomposition();
        let mut orbits: Vec<Vec<Point>> = comp.chains.clone();
        orbits.extend(comp.cycles.clone());
        orbits.sort_by_key(|orbit| orbit.iter().map(|p| p.0).min().unwrap_or(usize::MAX));
        orbits
            .into_iter()
            .map(|points| {
                let set: PointSet = points.iter().copied().collect();
                let subsystem = self
                    .restrict_to_invariant(&set)
                    .expect("orbits are invariant");
                OrbitClassData { points, subsystem }
            })
            .collect()
    }
}

/// Full subset enumeration in [`FiniteSystem::minimality_report`] is
/// attempted up to this many points; beyond it the component-based
/// characterization (provably equal on finite systems) is used.
pub const MINIMALITY_ENUMERATION_LIMIT: usize = 20;

/// The sets `D_n` for `n` in `[-horizon, horizon]`.
#[derive(Debug, Clone)]
pub struct DomainTable {
    horizon: usize,
    fwd: Vec<Mask>, // fwd[k] = D_k
    bwd: Vec<Mask>, // bwd[k] = D_{-k}
    stabilized: bool,
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl DomainTable {
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Whether `D_{±horizon}` already equal `D_{±(horizon+1)}`.
    pub fn stabilized(&self) -> bool {
        self.stabilized
    }

    /// The set `D_n`. Panics if `|n| > horizon`.
    pub fn set(&self, n: i64) -> PointSet {
        self.mask(n).to_set()
    }

    pub fn contains(&self, n: i64, p: Point) -> bool {
        self.mask(n).contains(p.0)
    }

    pub(crate) fn mask(&self, n: i64) -> &Mask {
        let k = n.unsigned_abs() as usize;
        assert!(k <= self.horizon, "|n| exceeds the table horizon");
        if n >= 0 {
            &self.fwd[k]
        } else {
            &self.bwd[k]
        }
    }
}

/// Itinerary class of a single point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum OrbitClass {
    /// Both directions terminate.
    Fin,
    /// Forward itinerary infinite, backward finite (impossible here).
    Plus,
    /// Backward itinerary infinite, forward finite (impossible here).
    Minus,
    /// Both directions continue forever.
    Glob,
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrbitClass::Fin => "Fin",
            OrbitClass::Plus => "Plus",
            OrbitClass::Minus => "Minus",
            OrbitClass::Glob => "Glob",
        };
        f.write_str(s)
    }
}

/// Per-point itinerary classes; a partition of the point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    classes: Vec<OrbitClass>,
}

impl OrbitDecomposition {
    pub fn class(&self, p: Point) -> OrbitClass {
        self.classes[p.0]
    }

    pub fn classes(&self) -> &[OrbitClass] {
        &self.classes
    }

    pub fn points_in(&self, class: OrbitClass) -> PointSet {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == class)
            .map(|(i, _)| Point(i))
            .collect()
    }
}

/// Maximal chains and cycles of the functional graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    /// Paths `x_1 -> ... -> x_N` with `x_1` not in the range and `x_N` not
    /// in the domain. Isolated points are chains of length one.
    pub chains: Vec<Vec<Point>>,
    /// Cycles, each rotated to start at its smallest point index.
    pub cycles: Vec<Vec<Point>>,
}

impl ChainDecomposition {
    pub fn component_count(&self) -> usize {
        self.chains.len() + self.cycles.len()
    }
}

/// Statements about orbits of global points, reported only when the
/// global part is nonempty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GlobOrbitStatements {
    pub orbits_dense: bool,
    pub forward_orbits_dense: bool,
    pub backward_orbits_dense: bool,
}

/// Literal evaluation of the minimality statements on a finite system.
///
/// `no_proper_invariant_subset` and the three `glob_*_trivial` fields are
/// decided by full subset enumeration when the system is small enough
/// (see `exhaustive`); `all_orbits_dense` checks each orbit against the
/// whole point set. The two main statements are equivalent, but this type
/// reports them independently so the equivalence can be tested.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MinimalityReport {
    /// (1) The only invariant subsets are empty and everything.
    pub no_proper_invariant_subset: bool,
    /// (2) Every orbit equals the whole point set.
    pub all_orbits_dense: bool,
    /// (6) Invariant sets meeting the global part are trivial.
    pub glob_invariant_trivial: bool,
    /// (7) Forward-invariant sets meeting the global part are trivial.
    pub glob_forward_trivial: bool,
    /// (8) Backward-invariant sets meeting the global part are trivial.
    pub glob_backward_trivial: bool,
    /// (3)–(5), present only when the global part is nonempty.
    pub glob_statements: Option<GlobOrbitStatements>,
    /// Whether subset statements were decided by full enumeration.
    pub exhaustive: bool,
}

/// One orbit together with the system restricted to it.
#[derive(Debug, Clone)]
pub struct OrbitClassData {
    pub points: Vec<Point>,
    pub subsystem: FiniteSystem,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn chain(n: usize) -> FiniteSystem {
        generate::chain(n).unwrap()
    }

    fn cycle(n: usize) -> FiniteSystem {
        generate::cycle(n).unwrap()
    }

    fn set(indices: &[usize]) -> PointSet {
        indices.iter().map(|&i| Point(i)).collect()
    }

    #[test]
    fn rejects_non_injective() {
        let err = FiniteSystem::from_images(vec![Some(2), Some(2), None]).unwrap_err();
        assert!(matches!(err, Error::NotInjective { .. }));
    }

    #[test]
    fn rejects_out_of_range_image() {
        let err = FiniteSystem::from_images(vec![Some(5)]).unwrap_err();
        assert!(matches!(err, Error::PointOutOfRange { .. }));
    }

    #[test]
    fn domains_of_chain_of_three() {
        let sys = chain(3);
        let table = sys.compute_domains(3);
        assert_eq!(table.set(0), set(&[0, 1, 2]));
        assert_eq!(table.set(1), set(&[1, 2]));
        assert_eq!(table.set(2), set(&[2]));
        assert_eq!(table.set(3), set(&[]));
        assert_eq!(table.set(-1), set(&[0, 1]));
        assert_eq!(table.set(-2), set(&[0]));
        assert_eq!(table.set(-3), set(&[]));
        assert!(table.stabilized());
    }

    #[test]
    fn domains_of_four_cycle() {
        let sys = cycle(4);
        let table = sys.compute_domains(5);
        for n in -5i64..=5 {
            assert_eq!(table.set(n), sys.all_points(), "D_{n}");
        }
        assert!(table.stabilized());
    }

    #[test]
    fn domains_of_empty_map() {
        let sys = FiniteSystem::from_images(vec![None, None]).unwrap();
        let table = sys.compute_domains(2);
        assert_eq!(table.set(0), sys.all_points());
        for n in [-2i64, -1, 1, 2] {
            assert!(table.set(n).is_empty());
        }
    }

    #[test]
    fn stabilizes_at_point_count() {
        for seed in 0..20 {
            let sys = generate::random_system(9, seed);
            assert!(sys.compute_domains(sys.len()).stabilized());
        }
    }

    #[test]
    fn orbits_of_chain() {
        let sys = chain(3);
        assert_eq!(sys.orbit(Point(1)).unwrap(), set(&[0, 1, 2]));
        assert_eq!(sys.forward_orbit(Point(1)).unwrap(), set(&[2]));
        assert_eq!(sys.backward_orbit(Point(1)).unwrap(), set(&[0]));
    }

    #[test]
    fn orbits_of_cycle_and_isolated() {
        let sys = cycle(3);
        for p in sys.points() {
            assert_eq!(sys.forward_orbit(p).unwrap(), sys.all_points());
        }
        let isolated = FiniteSystem::from_images(vec![None]).unwrap();
        assert_eq!(isolated.orbit(Point(0)).unwrap(), set(&[0]));
        assert!(isolated.orbit(Point(1)).is_err());
    }

    #[test]
    fn orbit_types() {
        let sys = chain(3);
        let dec = sys.orbit_decomposition();
        assert!(sys.points().all(|p| dec.class(p) == OrbitClass::Fin));

        let sys = generate::disjoint_union(&[cycle(3), chain(2)]);
        let dec = sys.orbit_decomposition();
        assert_eq!(dec.points_in(OrbitClass::Glob).len(), 3);
        assert_eq!(dec.points_in(OrbitClass::Fin).len(), 2);

        let perm = FiniteSystem::from_images(vec![Some(1), Some(0), Some(2)]).unwrap();
        let dec = perm.orbit_decomposition();
        assert!(perm.points().all(|p| dec.class(p) == OrbitClass::Glob));
    }

    #[test]
    fn invariance_examples() {
        let sys = chain(3);
        assert!(!sys.is_invariant(&set(&[1])).unwrap());
        assert!(sys.is_invariant(&set(&[])).unwrap());
        assert!(sys.is_invariant(&sys.all_points()).unwrap());

        let sys = generate::disjoint_union(&[cycle(3), chain(2)]);
        assert!(sys.is_invariant(&set(&[0, 1, 2])).unwrap());
        assert!(!sys.is_invariant(&set(&[0, 1])).unwrap());
    }

    #[test]
    fn minimal_and_free() {
        let sys = chain(4);
        assert!(sys.is_minimal() && sys.is_free());
        let sys = cycle(4);
        assert!(sys.is_minimal() && !sys.is_free());
        let sys = generate::disjoint_union(&[chain(2), chain(3)]);
        assert!(!sys.is_minimal() && sys.is_free());
    }

    #[test]
    fn minimality_report_chain() {
        let rep = chain(3).minimality_report();
        assert!(rep.no_proper_invariant_subset);
        assert!(rep.all_orbits_dense);
        // No global points: (6)-(8) hold vacuously, (3)-(5) are not reported.
        assert!(rep.glob_invariant_trivial && rep.glob_forward_trivial && rep.glob_backward_trivial);
        assert!(rep.glob_statements.is_none());
        assert!(rep.exhaustive);
    }

    #[test]
    fn minimality_report_cycle() {
        let rep = cycle(4).minimality_report();
        assert!(rep.no_proper_invariant_subset);
        assert!(rep.all_orbits_dense);
        assert!(rep.glob_invariant_trivial && rep.glob_forward_trivial && rep.glob_backward_trivial);
        let glob = rep.glob_statements.unwrap();
        assert!(glob.orbits_dense && glob.forward_orbits_dense && glob.backward_orbits_dense);
    }

    #[test]
    fn minimality_report_two_cycles() {
        let sys = generate::disjoint_union(&[cycle(3), cycle(3)]);
        let rep = sys.minimality_report();
        assert!(!rep.no_proper_invariant_subset);
        assert!(!rep.all_orbits_dense);
        assert!(!rep.glob_invariant_trivial);
        assert!(!rep.glob_forward_trivial);
        assert!(!rep.glob_backward_trivial);
    }

    #[test]
    fn enumerated_and_structural_reports_agree() {
        for n in 1..=5 {
            for sys in generate::enumerate_partial_injections(n).unwrap() {
                let a = sys.minimality_report_with_limit(usize::MAX);
                let b = sys.minimality_report_with_limit(0);
                assert_eq!(a.no_proper_invariant_subset, b.no_proper_invariant_subset, "{sys:?}");
                assert_eq!(a.glob_invariant_trivial, b.glob_invariant_trivial, "{sys:?}");
                assert_eq!(a.glob_forward_trivial, b.glob_forward_trivial, "{sys:?}");
                assert_eq!(a.glob_backward_trivial, b.glob_backward_trivial, "{sys:?}");
            }
        }
    }

    #[test]
    fn restrict_domain_examples() {
        let sys = chain(3);
        let r = sys.restrict_domain(&set(&[1])).unwrap();
        assert_eq!(r.theta(Point(0)), None);
        assert_eq!(r.theta(Point(1)), Some(Point(2)));
        assert_eq!(r.len(), 3);

        let full = sys.restrict_domain(&sys.domain()).unwrap();
        assert_eq!(full, sys);

        let err = sys.restrict_domain(&set(&[2])).unwrap_err();
        assert!(matches!(err, Error::NotInDomain(_)));

        // Removing one domain point of a 4-cycle leaves a 4-point chain.
        let sys = cycle(4);
        let mut w = sys.domain();
        w.remove(&Point(3));
        let r = sys.restrict_domain(&w).unwrap();
        let comp = r.chain_decomposition();
        assert_eq!(comp.chains.len(), 1);
        assert!(comp.cycles.is_empty());
        assert_eq!(comp.chains[0].len(), 4);
    }

    #[test]
    fn restrict_to_invariant_examples() {
        let sys = generate::disjoint_union(&[cycle(3), chain(2)]);
        let sub = sys.restrict_to_invariant(&set(&[0, 1, 2])).unwrap();
        assert_eq!(sub.len(), 3);
        assert!(!sub.is_free());

        assert_eq!(sys.restrict_to_invariant(&sys.all_points()).unwrap().labels(), sys.labels());
        assert!(sys.restrict_to_invariant(&set(&[])).unwrap().is_empty());
        assert!(sys.restrict_to_invariant(&set(&[0])).is_err());
    }

    #[test]
    fn orbit_space_examples() {
        let sys = generate::disjoint_union(&[chain(2), chain(3)]);
        let orbits = sys.orbit_space();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0].points.len(), 2);
        assert_eq!(orbits[1].points.len(), 3);

        assert_eq!(cycle(5).orbit_space().len(), 1);

        let isolated = FiniteSystem::from_images(vec![None; 5]).unwrap();
        assert_eq!(isolated.orbit_space().len(), 5);
    }

    #[test]
    fn orbit_space_round_trip() {
        // The disjoint union of the per-orbit subsystems is the original
        // system up to the induced relabeling.
        for seed in 0..40 {
            let sys = generate::random_system(8, seed);
            let parts: Vec<FiniteSystem> =
                sys.orbit_space().into_iter().map(|o| o.subsystem).collect();
            let rebuilt = generate::disjoint_union_relabeled(&parts);
            // Compare by label-indexed transition maps.
            let mut expected: Vec<(String, Option<String>)> = sys
                .points()
                .map(|p| {
                    (
                        sys.label(p).to_string(),
                        sys.theta(p).map(|q| sys.label(q).to_string()),
                    )
                })
                .collect();
            let mut got: Vec<(String, Option<String>)> = rebuilt
                .points()
                .map(|p| {
                    (
                        rebuilt.label(p).to_string(),
                        rebuilt.theta(p).map(|q| rebuilt.label(q).to_string()),
                    )
                })
                .collect();
            expected.sort();
            got.sort();
            assert_eq!(expected, got);
        }
    }

    #[test]
    fn domain_identity_on_random_systems() {
        // theta^n(D_{-n} ∩ D_k) = D_n ∩ D_{k+n} for |n|, |k| <= 6.
        for seed in 0..60 {
            let sys = generate::random_system(1 + (seed as usize % 12), seed);
            let table = sys.compute_domains(13);
            for n in -6i64..=6 {
                for k in -6i64..=6 {
                    let lhs_src = table.mask(-n).and(table.mask(k));
                    let mut lhs = lhs_src;
                    for _ in 0..n.unsigned_abs() {
                        lhs = if n >= 0 {
                            sys.apply_theta(&lhs)
                        } else {
                            sys.apply_theta_inv(&lhs)
                        };
                    }
                    let rhs = table.mask(n).and(table.mask(k + n));
                    assert!(lhs == rhs, "identity failed: seed {seed}, n={n}, k={k}");
                }
            }
        }
    }
}
