//! Dynkin quivers, repetition quivers and their automorphisms.
//!
//! Vertices of the repetition quiver are `(i, p)`; the frozen copy `σ(i, p)`
//! is written `(i', p - 1)`. Internally every non-frozen vertex also has a
//! *slope coordinate* `2p + h(i)` where `h` is a height function on the
//! quiver (`h(j) = h(i) + 1` along each arrow `i -> j`). Arrows of the
//! repetition quiver raise the slope coordinate by one, which makes the
//! translation, the Nakayama functor and the shift plain affine maps.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::D(n) => n,
            DynkinType::E6 => 6,
            DynkinType::E7 => 7,
            DynkinType::E8 => 8,
        }
    }

    pub fn coxeter_number(&self) -> i32 {
        match *self {
            DynkinType::A(n) => n as i32 + 1,
            DynkinType::D(n) => 2 * n as i32 - 2,
            DynkinType::E6 => 12,
            DynkinType::E7 => 18,
            DynkinType::E8 => 30,
        }
    }

    pub fn from_parts(letter: &str, rank: usize) -> Result<DynkinType> {
        match (letter, rank) {
            ("A", n) if n >= 1 => Ok(DynkinType::A(n)),
            ("D", n) if n >= 4 => Ok(DynkinType::D(n)),
            ("E", 6) => Ok(DynkinType::E6),
            ("E", 7) => Ok(DynkinType::E7),
            ("E", 8) => Ok(DynkinType::E8),
            _ => Err(Error::UnsupportedType(format!("{letter}{rank}"))),
        }
    }

    pub fn letter(&self) -> &'static str {
        match self {
            DynkinType::A(_) => "A",
            DynkinType::D(_) => "D",
            _ => "E",
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter(), self.rank())
    }
}

/// An orientation of an ADE diagram. Vertices are `0..rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinQuiver {
    kind: DynkinType,
    arrows: Vec<(usize, usize)>,
    height: Vec<i32>,
    /// Diagram involution induced by the Nakayama functor.
    serre_perm: Vec<usize>,
}

impl DynkinQuiver {
    pub fn new(kind: DynkinType, arrows: Vec<(usize, usize)>) -> Result<DynkinQuiver> {
        let n = kind.rank();
        if arrows.len() + 1 != n {
            return Err(Error::InvalidQuiver(format!("{} arrows for {} vertices", arrows.len(), n)));
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(s, t) in &arrows {
            if s >= n || t >= n || s == t {
                return Err(Error::InvalidQuiver(format!("bad arrow {}->{}", s + 1, t + 1)));
            }
            if !seen.insert((s.min(t), s.max(t))) {
                return Err(Error::InvalidQuiver("repeated edge".into()));
            }
            adj[s].push(t);
            adj[t].push(s);
        }
        // connected + n-1 edges => tree, hence acyclic
        let mut height = vec![i32::MIN; n];
        height[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &(s, t) in &arrows {
                let (w, h) = if s == v { (t, height[v] + 1) } else if t == v { (s, height[v] - 1) } else { continue };
                if height[w] == i32::MIN {
                    height[w] = h;
                    queue.push_back(w);
                }
            }
        }
        if height.contains(&i32::MIN) {
            return Err(Error::InvalidQuiver("not connected".into()));
        }
        let lo = *height.iter().min().unwrap();
        height.iter_mut().for_each(|h| *h -= lo);
        let serre_perm = diagram_involution(kind, &adj)?;
        Ok(DynkinQuiver { kind, arrows, height, serre_perm })
    }

    /// Linear orientation `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> DynkinQuiver {
        DynkinQuiver::new(DynkinType::A(n), (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect())
            .expect("linear A_n is valid")
    }

    /// `D_n` with the branch at vertex `n-3`: arms `n-2` and `n-1`, all arrows pointing up the chain.
    pub fn standard_d(n: usize) -> DynkinQuiver {
        let mut arrows: Vec<(usize, usize)> = (0..n - 3).map(|i| (i, i + 1)).collect();
        arrows.push((n - 3, n - 2));
        arrows.push((n - 3, n - 1));
        DynkinQuiver::new(DynkinType::D(n), arrows).expect("standard D_n is valid")
    }

    /// `E_n` as a chain `0..n-2` with vertex `n-1` attached to vertex 2.
    pub fn standard_e(n: usize) -> DynkinQuiver {
        let kind = match n {
            6 => DynkinType::E6,
            7 => DynkinType::E7,
            8 => DynkinType::E8,
            _ => panic!("E{n} is not Dynkin"),
        };
        let mut arrows: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
        arrows.push((2, n - 1));
        DynkinQuiver::new(kind, arrows).expect("standard E_n is valid")
    }

    pub fn kind(&self) -> DynkinType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn coxeter_number(&self) -> i32 {
        self.kind.coxeter_number()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn height(&self, i: usize) -> i32 {
        self.height[i]
    }

    pub fn serre_perm(&self) -> &[usize] {
        &self.serre_perm
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter_map(move |&(s, t)| {
            if s == i {
                Some(t)
            } else if t == i {
                Some(s)
            } else {
                None
            }
        })
    }

    pub fn is_graph_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.rank();
        if perm.len() != n || perm.iter().collect::<BTreeSet<_>>().len() != n || perm.iter().any(|&x| x >= n) {
            return false;
        }
        let edges: BTreeSet<(usize, usize)> = self.arrows.iter().map(|&(s, t)| (s.min(t), s.max(t))).collect();
        self.arrows.iter().all(|&(s, t)| {
            let (a, b) = (perm[s], perm[t]);
            edges.contains(&(a.min(b), a.max(b)))
        })
    }
}

/// Walk an arm away from the branch vertex.
fn arm(adj: &[Vec<usize>], branch: usize, start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let (mut prev, mut cur) = (branch, start);
    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
        out.push(next);
        prev = cur;
        cur = next;
    }
    out
}

fn diagram_involution(kind: DynkinType, adj: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = adj.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let branches: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let mismatch = || Error::InvalidQuiver(format!("underlying graph is not {kind}"));
    match kind {
        DynkinType::A(_) => {
            if !branches.is_empty() {
                return Err(mismatch());
            }
            let end = (0..n).find(|&v| adj[v].len() <= 1).ok_or_else(mismatch)?;
            let mut path = vec![end];
            let mut prev = usize::MAX;
            let mut cur = end;
            while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                path.push(next);
                prev = cur;
                cur = next;
            }
            for (k, &v) in path.iter().enumerate() {
                perm[v] = path[n - 1 - k];
            }
        }
        _ => {
            if branches.len() != 1 || adj[branches[0]].len() != 3 {
                return Err(mismatch());
            }
            let b = branches[0];
            let mut arms: Vec<Vec<usize>> = adj[b].iter().map(|&s| arm(adj, b, s)).collect();
            arms.sort_by_key(|a| a.len());
            let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
            let expected = match kind {
                DynkinType::D(m) => vec![1, 1, m - 3],
                DynkinType::E6 => vec![1, 2, 2],
                DynkinType::E7 => vec![1, 2, 3],
                DynkinType::E8 => vec![1, 2, 4],
                DynkinType::A(_) => unreachable!(),
            };
            let mut exp_sorted = expected.clone();
            exp_sorted.sort();
            if lens != exp_sorted {
                return Err(mismatch());
            }
            let swap = match kind {
                DynkinType::D(m) if m % 2 == 1 => Some((0, 1)),
                DynkinType::E6 => Some((1, 2)),
                _ => None,
            };
            if let Some((x, y)) = swap {
                for (&u, &v) in arms[x].iter().zip(&arms[y]) {
                    perm[u] = v;
                    perm[v] = u;
                }
            }
        }
    }
    Ok(perm)
}

/// Build the framed quiver: vertex `i + n` is the frozen copy `i'`.
pub fn build_framed(q: &DynkinQuiver) -> (usize, Vec<(usize, usize)>) {
    let n = q.rank();
    let mut arrows = q.arrows().to_vec();
    arrows.extend((0..n).map(|i| (i, i + n)));
    (2 * n, arrows)
}

/// A vertex of the framed repetition quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZVertex {
    pub base: usize,
    pub level: i32,
    pub frozen: bool,
}

impl ZVertex {
    pub fn new(base: usize, level: i32) -> ZVertex {
        ZVertex { base, level, frozen: false }
    }

    pub fn frozen(base: usize, level: i32) -> ZVertex {
        ZVertex { base, level, frozen: true }
    }

    pub fn tau(self) -> ZVertex {
        ZVertex { level: self.level - 1, ..self }
    }

    pub fn tau_inv(self) -> ZVertex {
        ZVertex { level: self.level + 1, ..self }
    }

    pub fn tau_pow(self, k: i32) -> ZVertex {
        ZVertex { level: self.level - k, ..self }
    }

    pub fn sigma(self) -> ZVertex {
        if self.frozen {
            ZVertex::new(self.base, self.level)
        } else {
            ZVertex::frozen(self.base, self.level - 1)
        }
    }

    pub fn sigma_inv(self) -> ZVertex {
        if self.frozen {
            ZVertex::new(self.base, self.level + 1)
        } else {
            ZVertex::frozen(self.base, self.level)
        }
    }

    /// The non-frozen vertex `c` with `σ(c) = self` (identity on non-frozen vertices).
    pub fn partner(self) -> ZVertex {
        if self.frozen {
            self.sigma_inv()
        } else {
            self
        }
    }

    pub fn label(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for ZVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.frozen {
            write!(f, "({}',{})", self.base + 1, self.level)
        } else {
            write!(f, "({},{})", self.base + 1, self.level)
        }
    }
}

pub fn tau(v: ZVertex) -> ZVertex {
    v.tau()
}

pub fn sigma(v: ZVertex) -> ZVertex {
    v.sigma()
}

pub fn sigma_inv(v: ZVertex) -> ZVertex {
    v.sigma_inv()
}

/// An affine map `(i, m) -> (perm[i], m + shift)` in slope coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlopeMap {
    pub perm: Vec<usize>,
    pub shift: i32,
}

impl SlopeMap {
    pub fn identity(n: usize) -> SlopeMap {
        SlopeMap { perm: (0..n).collect(), shift: 0 }
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &SlopeMap) -> SlopeMap {
        SlopeMap { perm: other.perm.iter().map(|&i| self.perm[i]).collect(), shift: self.shift + other.shift }
    }

    pub fn inverse(&self) -> SlopeMap {
        let mut perm = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j] = i;
        }
        SlopeMap { perm, shift: -self.shift }
    }

    pub fn pow(&self, k: i32) -> SlopeMap {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = SlopeMap::identity(self.perm.len());
        for _ in 0..k.unsigned_abs() {
            out = base.after(&out);
        }
        out
    }

    pub fn is_valid_on(&self, q: &DynkinQuiver) -> bool {
        q.is_graph_automorphism(&self.perm)
            && (0..q.rank()).all(|i| (q.height(i) + self.shift - q.height(self.perm[i])).rem_euclid(2) == 0)
    }

    /// Apply to a vertex; frozen vertices follow their partner (`φσ(c) = σφ(c)`).
    pub fn apply(&self, q: &DynkinQuiver, v: ZVertex) -> ZVertex {
        if v.frozen {
            return self.apply(q, v.partner()).sigma();
        }
        let m = 2 * v.level + q.height(v.base) + self.shift;
        let b = self.perm[v.base];
        let p2 = m - q.height(b);
        debug_assert!(p2 % 2 == 0, "slope map does not preserve parity");
        ZVertex::new(b, p2.div_euclid(2))
    }
}

/// Slope coordinate of a non-frozen vertex; frozen `σ(c)` sits half way below `c`.
pub fn slope(q: &DynkinQuiver, v: ZVertex) -> i32 {
    if v.frozen {
        slope(q, v.partner()) - 1
    } else {
        2 * v.level + q.height(v.base)
    }
}

/// The Nakayama functor on vertices: diagram involution and `h - 2` slope steps.
pub fn nakayama_map(q: &DynkinQuiver) -> SlopeMap {
    SlopeMap { perm: q.serre_perm().to_vec(), shift: q.coxeter_number() - 2 }
}

pub fn tau_map(q: &DynkinQuiver) -> SlopeMap {
    SlopeMap { perm: (0..q.rank()).collect(), shift: -2 }
}

/// The shift `Σ = τ^{-1} ν`.
pub fn shift_map(q: &DynkinQuiver) -> SlopeMap {
    tau_map(q).inverse().after(&nakayama_map(q))
}

pub fn nakayama_nu(q: &DynkinQuiver, v: ZVertex) -> Result<ZVertex> {
    if v.frozen {
        return Err(Error::Input(format!("{v} is frozen")));
    }
    Ok(nakayama_map(q).apply(q, v))
}

pub fn sigma_shift(q: &DynkinQuiver, v: ZVertex) -> Result<ZVertex> {
    if v.frozen {
        return Err(Error::Input(format!("{v} is frozen")));
    }
    Ok(shift_map(q).apply(q, v))
}

/// `F = τ^t Σ^s g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutoSpec {
    pub tau_power: i32,
    pub sigma_shift_power: i32,
    /// Permutation of the quiver vertices; empty means identity.
    pub diagram_auto: Vec<usize>,
}

impl AutoSpec {
    pub fn tau() -> AutoSpec {
        AutoSpec { tau_power: 1, sigma_shift_power: 0, diagram_auto: Vec::new() }
    }

    pub fn new(tau_power: i32, sigma_shift_power: i32) -> AutoSpec {
        AutoSpec { tau_power, sigma_shift_power, diagram_auto: Vec::new() }
    }

    /// The cluster-category automorphism `Σ τ^{-1}`.
    pub fn cluster() -> AutoSpec {
        AutoSpec::new(-1, 1)
    }

    pub fn slope_map(&self, q: &DynkinQuiver) -> Result<SlopeMap> {
        let n = q.rank();
        let g = if self.diagram_auto.is_empty() {
            SlopeMap::identity(n)
        } else {
            SlopeMap { perm: self.diagram_auto.clone(), shift: 0 }
        };
        if !q.is_graph_automorphism(&g.perm) {
            return Err(Error::InvalidAuto("diagram_auto is not a diagram automorphism".into()));
        }
        let f = tau_map(q).pow(self.tau_power).after(&shift_map(q).pow(self.sigma_shift_power)).after(&g);
        if !f.is_valid_on(q) {
            return Err(Error::InvalidAuto("diagram_auto does not respect the height parity".into()));
        }
        if f.shift == 0 {
            return Err(Error::FiniteOrder);
        }
        Ok(f)
    }
}

/// An automorphism checked against a quiver.
#[derive(Clone, Debug)]
pub struct Automorphism {
    pub spec: AutoSpec,
    pub map: SlopeMap,
    inverse: SlopeMap,
}

impl Automorphism {
    pub fn new(q: &DynkinQuiver, spec: AutoSpec) -> Result<Automorphism> {
        let map = spec.slope_map(q)?;
        let inverse = map.inverse();
        Ok(Automorphism { spec, map, inverse })
    }

    pub fn apply(&self, q: &DynkinQuiver, v: ZVertex) -> ZVertex {
        self.map.apply(q, v)
    }

    pub fn apply_pow(&self, q: &DynkinQuiver, v: ZVertex, k: i32) -> ZVertex {
        let step = if k >= 0 { &self.map } else { &self.inverse };
        (0..k.unsigned_abs()).fold(v, |x, _| step.apply(q, x))
    }

    /// Slope steps per application; nonzero by construction.
    pub fn period(&self) -> i32 {
        self.map.shift
    }

    /// The `k` with `F^k(from) = to`, if any.
    pub fn orbit_index(&self, q: &DynkinQuiver, from: ZVertex, to: ZVertex) -> Option<i32> {
        if from.frozen != to.frozen {
            return None;
        }
        let d = slope(q, to) - slope(q, from);
        if d % self.period() != 0 {
            return None;
        }
        let k = d / self.period();
        (self.apply_pow(q, from, k) == to).then_some(k)
    }

    /// Representative of the orbit of `v` with slope in `[0, |period|)` (shifted by one for frozen).
    pub fn orbit_rep(&self, q: &DynkinQuiver, v: ZVertex) -> (ZVertex, i32) {
        let s = slope(q, v.partner());
        let p = self.period();
        let k = -s.div_euclid(p.abs()) * p.signum();
        let r = self.apply_pow(q, v, k);
        (r, k)
    }
}

pub fn apply_f(q: &DynkinQuiver, f: &Automorphism, v: ZVertex) -> ZVertex {
    f.apply(q, v)
}

pub fn apply_f_arrow(q: &DynkinQuiver, f: &Automorphism, a: (ZVertex, ZVertex)) -> (ZVertex, ZVertex) {
    (f.apply(q, a.0), f.apply(q, a.1))
}

/// F-stable set of non-frozen vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Configuration {
    All,
    OrbitReps(Vec<ZVertex>),
}

impl Configuration {
    pub fn contains(&self, q: &DynkinQuiver, f: &Automorphism, v: ZVertex) -> bool {
        if v.frozen {
            return false;
        }
        match self {
            Configuration::All => true,
            Configuration::OrbitReps(reps) => reps.iter().any(|&r| f.orbit_index(q, r, v).is_some()),
        }
    }
}

/// The infinite quiver `ZQ_C` together with the automorphism used to saturate `C`.
#[derive(Clone, Debug)]
pub struct FramedRepetition {
    pub quiver: DynkinQuiver,
    pub auto: Automorphism,
    pub config: Configuration,
}

impl FramedRepetition {
    pub fn new(quiver: DynkinQuiver, auto: AutoSpec, config: Configuration) -> Result<FramedRepetition> {
        let auto = Automorphism::new(&quiver, auto)?;
        if let Configuration::OrbitReps(reps) = &config {
            if let Some(r) = reps.iter().find(|r| r.frozen || r.base >= quiver.rank()) {
                return Err(Error::Input(format!("configuration vertex {r} is not a vertex of ZQ")));
            }
        }
        Ok(FramedRepetition { quiver, auto, config })
    }

    pub fn in_config(&self, v: ZVertex) -> bool {
        self.config.contains(&self.quiver, &self.auto, v)
    }

    pub fn is_vertex(&self, v: ZVertex) -> bool {
        v.base < self.quiver.rank() && (!v.frozen || self.in_config(v.partner()))
    }

    pub fn slope(&self, v: ZVertex) -> i32 {
        slope(&self.quiver, v)
    }

    /// Sort key compatible with all arrows.
    pub fn order_key(&self, v: ZVertex) -> (i32, bool, usize) {
        (self.slope(v), v.frozen, v.base)
    }

    /// Arrows ending at `v`, listed by source.
    pub fn predecessors(&self, v: ZVertex) -> Vec<ZVertex> {
        if v.frozen {
            return vec![v.partner().tau()];
        }
        let mut out = Vec::new();
        for &(s, t) in self.quiver.arrows() {
            if t == v.base {
                out.push(ZVertex::new(s, v.level));
            }
            if s == v.base {
                out.push(ZVertex::new(t, v.level - 1));
            }
        }
        if self.in_config(v) {
            out.push(v.sigma());
        }
        out.sort_by_key(|&w| self.order_key(w));
        out
    }

    pub fn successors(&self, v: ZVertex) -> Vec<ZVertex> {
        if v.frozen {
            return vec![v.partner()];
        }
        let mut out = Vec::new();
        for &(s, t) in self.quiver.arrows() {
            if s == v.base {
                out.push(ZVertex::new(t, v.level));
            }
            if t == v.base {
                out.push(ZVertex::new(s, v.level + 1));
            }
        }
        let c = v.tau_inv();
        if self.in_config(c) {
            out.push(c.sigma());
        }
        out.sort_by_key(|&w| self.order_key(w));
        out
    }

    /// All vertices with the given slope coordinate, in order.
    pub fn vertices_at_slope(&self, s: i32) -> Vec<ZVertex> {
        let q = &self.quiver;
        let mut out = Vec::new();
        for i in 0..q.rank() {
            let p2 = s - q.height(i);
            if p2.rem_euclid(2) == 0 {
                out.push(ZVertex::new(i, p2.div_euclid(2)));
            }
        }
        for i in 0..q.rank() {
            let p2 = s + 1 - q.height(i);
            if p2.rem_euclid(2) == 0 {
                let c = ZVertex::new(i, p2.div_euclid(2));
                if self.in_config(c) {
                    out.push(c.sigma());
                }
            }
        }
        out
    }

    pub fn nu(&self, v: ZVertex) -> ZVertex {
        nakayama_map(&self.quiver).apply(&self.quiver, v)
    }

    pub fn shift(&self, v: ZVertex) -> ZVertex {
        shift_map(&self.quiver).apply(&self.quiver, v)
    }

    pub fn apply_f(&self, v: ZVertex) -> ZVertex {
        self.auto.apply(&self.quiver, v)
    }

    /// Orbit representatives of the non-frozen vertices, ordered by slope.
    pub fn fundamental_domain(&self) -> Vec<ZVertex> {
        let p = self.auto.period().abs();
        (0..p).flat_map(|s| self.vertices_at_slope(s).into_iter().filter(|v| !v.frozen)).collect()
    }
}

/// A finite slice `p_min <= level <= p_max` of `ZQ_C`.
#[derive(Clone, Debug)]
pub struct Window {
    pub zq: FramedRepetition,
    pub level_range: (i32, i32),
}

impl Window {
    pub fn new(zq: FramedRepetition, level_range: (i32, i32)) -> Window {
        Window { zq, level_range }
    }

    /// Default slice of width `2h + 4` centred at level `centre`.
    pub fn around(zq: FramedRepetition, centre: i32) -> Window {
        let h = zq.quiver.coxeter_number();
        Window { zq, level_range: (centre - h - 2, centre + h + 2) }
    }

    pub fn contains(&self, v: ZVertex) -> bool {
        let c = v.partner();
        self.zq.is_vertex(v) && c.level >= self.level_range.0 && c.level <= self.level_range.1
    }

    /// Whether the full mesh ending at the non-frozen `v` lies in the window.
    pub fn is_interior(&self, v: ZVertex) -> bool {
        !v.frozen && self.contains(v) && self.contains(v.tau())
    }

    pub fn vertices(&self) -> Vec<ZVertex> {
        let q = &self.zq.quiver;
        let mut out = Vec::new();
        for p in self.level_range.0..=self.level_range.1 {
            for i in 0..q.rank() {
                let v = ZVertex::new(i, p);
                out.push(v);
                if self.zq.in_config(v) {
                    out.push(v.sigma());
                }
            }
        }
        out.sort_by_key(|&v| self.zq.order_key(v));
        out
    }

    pub fn arrows(&self) -> Vec<(ZVertex, ZVertex)> {
        self.vertices()
            .into_iter()
            .flat_map(|v| {
                self.zq.successors(v).into_iter().filter(|&w| self.contains(w)).map(move |w| (v, w))
            })
            .collect()
    }

    pub fn extend(&self, by: i32) -> Window {
        Window { zq: self.zq.clone(), level_range: (self.level_range.0 - by, self.level_range.1 + by) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> DynkinQuiver {
        DynkinQuiver::linear_a(2)
    }

    #[test]
    fn framed_counts() {
        let (n, arrows) = build_framed(&a2());
        assert_eq!((n, arrows.len()), (4, 3));
        let (n, arrows) = build_framed(&DynkinQuiver::linear_a(1));
        assert_eq!((n, arrows.len()), (2, 1));
        let (n, arrows) = build_framed(&DynkinQuiver::standard_d(4));
        assert_eq!((n, arrows.len()), (8, 7));
    }

    #[test]
    fn tau_sigma_rules() {
        let v = ZVertex::new(1, 5);
        assert_eq!(v.tau(), ZVertex::new(1, 4));
        assert_eq!(v.sigma().sigma(), v.tau());
        assert_eq!(ZVertex::new(0, 0).sigma().sigma_inv(), ZVertex::new(0, 0));
    }

    #[test]
    fn rejects_wrong_type() {
        let e = DynkinQuiver::new(DynkinType::D(4), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(e.is_err());
        let e = DynkinQuiver::new(DynkinType::A(3), vec![(0, 1), (1, 0)]);
        assert!(e.is_err());
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(DynkinType::A(4).coxeter_number(), 5);
        assert_eq!(DynkinType::D(5).coxeter_number(), 8);
        assert_eq!(DynkinType::E8.coxeter_number(), 30);
    }

    #[test]
    fn fixed_point_automorphism_is_finite_order() {
        let e = Automorphism::new(&a2(), AutoSpec::new(0, 0)).unwrap_err();
        assert_eq!(e, Error::FiniteOrder);
    }

    #[test]
    fn cluster_fundamental_domain_has_five_vertices() {
        let zq = FramedRepetition::new(a2(), AutoSpec::cluster(), Configuration::All).unwrap();
        assert_eq!(zq.fundamental_domain().len(), 5);
        let zq = FramedRepetition::new(a2(), AutoSpec::tau(), Configuration::All).unwrap();
        assert_eq!(zq.fundamental_domain().len(), 2);
    }

    #[test]
    fn mesh_arrows_are_consistent() {
        let zq = FramedRepetition::new(DynkinQuiver::standard_d(4), AutoSpec::tau(), Configuration::All).unwrap();
        let w = Window::around(zq.clone(), 0);
        for v in w.vertices() {
            for s in zq.successors(v) {
                assert!(zq.predecessors(s).contains(&v));
                assert!(zq.order_key(s) > zq.order_key(v));
            }
        }
    }

    #[test]
    fn orbit_representatives() {
        let q = a2();
        let f = Automorphism::new(&q, AutoSpec::cluster()).unwrap();
        let v = ZVertex::new(1, 7);
        let (r, k) = f.orbit_rep(&q, v);
        assert_eq!(f.apply_pow(&q, v, k), r);
        assert!((0..5).contains(&slope(&q, r)));
        assert_eq!(f.orbit_index(&q, r, v), Some(-k));
    }
}
