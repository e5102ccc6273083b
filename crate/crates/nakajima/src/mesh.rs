//! Hom spaces of the mesh category of `ZQ_C`.
//!
//! `Hom(x, -)` is built slope by slope: the space at `y` is the direct sum
//! of the spaces at the predecessors of `y`, divided by the image of
//! `Hom(x, τy)` under the mesh relation at `y` (all-plus sign convention).
//! Frozen vertices carry no relation.

pub mod oracle;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use serde::Serialize;

use crate::quiver::{AutoSpec, Configuration, DynkinQuiver, FramedRepetition, Window, ZVertex};

/// Sign convention recorded in reports.
pub const MESH_SIGN_CONVENTION: &str = "all-plus";

pub type Path = Vec<ZVertex>;

#[derive(Clone, Debug)]
pub struct Space<F> {
    pub dim: usize,
    /// One representative path per basis element.
    pub paths: Vec<Path>,
    /// For each predecessor `z` with nonzero space: the map `Hom(x, z) -> Hom(x, y)`.
    pub incoming: Vec<(ZVertex, Matrix<F>)>,
}

impl<F: Field> Space<F> {
    fn arrow_from(&self, z: ZVertex) -> Option<&Matrix<F>> {
        self.incoming.iter().find(|(w, _)| *w == z).map(|(_, m)| m)
    }
}

/// The covariant functor `Hom(source, -)`, stored on vertices at most `depth`
/// slope steps above the source.
#[derive(Clone, Debug)]
pub struct Knit<F> {
    pub source: ZVertex,
    spaces: HashMap<ZVertex, Space<F>>,
    /// Largest slope distance knitted so far.
    pub depth: i32,
    /// Set when the support ended before `depth`.
    pub complete: bool,
    size: usize,
}

impl<F: Field> Knit<F> {
    pub fn dim(&self, y: ZVertex) -> usize {
        self.spaces.get(&y).map_or(0, |s| s.dim)
    }

    pub fn space(&self, y: ZVertex) -> Option<&Space<F>> {
        self.spaces.get(&y)
    }

    pub fn support(&self) -> impl Iterator<Item = (&ZVertex, &Space<F>)> {
        self.spaces.iter()
    }

    /// Whether `Hom(source, y)` is known, i.e. `y` lies within the knitted range.
    pub fn covers(&self, y_slope_distance: i32) -> bool {
        self.complete || y_slope_distance <= self.depth
    }

    /// Push `f` in `Hom(source, path[0])` along the arrows of `path`.
    pub fn act(&self, path: &[ZVertex], f: &[F]) -> Vec<F> {
        let mut cur = f.to_vec();
        for w in path.windows(2) {
            let target_dim = self.dim(w[1]);
            cur = match self.spaces.get(&w[1]).and_then(|s| s.arrow_from(w[0])) {
                Some(m) if !cur.is_empty() => m.mul_vec(&cur),
                _ => vec![F::zero(); target_dim],
            };
        }
        cur
    }

    /// Class of a path starting at the source.
    pub fn reduce_path(&self, path: &[ZVertex]) -> Vec<F> {
        assert_eq!(path.first(), Some(&self.source), "path does not start at the source");
        self.act(path, &[F::one()])
    }
}

/// Memoized knitting over an infinite framed repetition quiver.
pub struct MeshCategory<F> {
    pub zq: FramedRepetition,
    cache: RwLock<HashMap<ZVertex, Arc<Knit<F>>>>,
    /// Slope distance after which a knit that is required to be complete gives up.
    pub slope_guard: i32,
    /// Upper bound on the summed dimension of a single knit.
    pub size_guard: usize,
}

impl<F: Field> MeshCategory<F> {
    pub fn new(zq: FramedRepetition) -> MeshCategory<F> {
        let h = zq.quiver.coxeter_number();
        MeshCategory { zq, cache: RwLock::new(HashMap::new()), slope_guard: 8 * h + 8, size_guard: 400_000 }
    }

    /// `Hom(x, -)` on its whole support; fails if the support is not finite within the guard.
    pub fn knit(&self, x: ZVertex) -> Result<Arc<Knit<F>>> {
        let k = self.knit_to(x, self.slope_guard)?;
        if !k.complete {
            return Err(Error::ResourceGuard(format!("Hom({x}, -) not finitely supported within {} slope steps", self.slope_guard)));
        }
        Ok(k)
    }

    /// `Hom(x, -)` on all vertices at most `depth` slope steps above `x`.
    pub fn knit_to(&self, x: ZVertex, depth: i32) -> Result<Arc<Knit<F>>> {
        let cached = self.cache.read().expect("knit cache poisoned").get(&x).cloned();
        if let Some(k) = &cached {
            if k.complete || k.depth >= depth {
                return Ok(k.clone());
            }
        }
        let k = match cached {
            Some(k) => {
                let mut k = (*k).clone();
                let target = depth.max(k.depth + 2);
                self.extend(&mut k, target)?;
                k
            }
            None => {
                if !self.zq.is_vertex(x) {
                    return Err(Error::Input(format!("{x} is not a vertex of the framed repetition quiver")));
                }
                let mut spaces = HashMap::new();
                spaces.insert(x, Space { dim: 1, paths: vec![vec![x]], incoming: Vec::new() });
                let mut k = Knit { source: x, spaces, depth: 0, complete: false, size: 1 };
                self.extend(&mut k, depth.max(4))?;
                k
            }
        };
        let k = Arc::new(k);
        // Racing writers store identical values.
        self.cache.write().expect("knit cache poisoned").insert(x, k.clone());
        Ok(k)
    }

    /// Knit `Hom(x, -)` up to `max_dist`, uncached. The flag says whether the support
    /// ended inside that range.
    pub fn knit_upto(&self, x: ZVertex, max_dist: i32) -> Result<(Knit<F>, bool)> {
        let k = self.knit_to(x, max_dist)?;
        let complete = k.complete;
        Ok(((*k).clone(), complete))
    }

    fn extend(&self, k: &mut Knit<F>, depth: i32) -> Result<()> {
        let start = self.zq.slope(k.source);
        while !k.complete && k.depth < depth {
            let s = start + k.depth + 1;
            let mut any = false;
            for y in self.zq.vertices_at_slope(s) {
                if let Some(space) = self.knit_step(&k.spaces, y) {
                    any = true;
                    k.size += space.dim;
                    k.spaces.insert(y, space);
                }
            }
            k.depth += 1;
            if !any {
                // Every arrow raises the slope by one, so an empty slope ends the support.
                k.complete = true;
            }
            if k.size > self.size_guard {
                return Err(Error::ResourceGuard(format!(
                    "Hom({}, -) exceeds {} basis elements at slope distance {}",
                    k.source, self.size_guard, k.depth
                )));
            }
        }
        Ok(())
    }

    fn knit_step(&self, spaces: &HashMap<ZVertex, Space<F>>, y: ZVertex) -> Option<Space<F>> {
        let blocks: Vec<(ZVertex, usize)> = self
            .zq
            .predecessors(y)
            .into_iter()
            .filter_map(|z| spaces.get(&z).map(|sp| (z, sp.dim)))
            .collect();
        let n: usize = blocks.iter().map(|b| b.1).sum();
        if n == 0 {
            return None;
        }
        let mut relations = Vec::new();
        if !y.frozen {
            let t = y.tau();
            if let Some(ts) = spaces.get(&t) {
                for u in 0..ts.dim {
                    let mut v = Vec::with_capacity(n);
                    for &(z, d) in &blocks {
                        let image = match spaces[&z].arrow_from(t) {
                            Some(m) => m.column(u),
                            None => vec![F::zero(); d],
                        };
                        v.extend(image);
                    }
                    relations.push(v);
                }
            }
        }
        let w = Subspace::span(n, relations);
        let dim = n - w.dim();
        if dim == 0 {
            return None;
        }
        let proj = w.quotient_matrix();
        let mut incoming = Vec::new();
        let mut owner = Vec::with_capacity(n);
        let mut off = 0;
        for &(z, d) in &blocks {
            incoming.push((z, proj.submatrix(0..dim, off..off + d)));
            owner.extend((0..d).map(|j| (z, j)));
            off += d;
        }
        let paths = w
            .free_positions()
            .into_iter()
            .map(|pos| {
                let (z, j) = owner[pos];
                let mut p = spaces[&z].paths[j].clone();
                p.push(y);
                p
            })
            .collect();
        Some(Space { dim, paths, incoming })
    }

    fn distance(&self, x: ZVertex, y: ZVertex) -> i32 {
        self.zq.slope(y) - self.zq.slope(x)
    }

    /// `dim Hom(x, y)`; finite even when `Hom(x, -)` has infinite support.
    pub fn dim_hom(&self, x: ZVertex, y: ZVertex) -> Result<usize> {
        let d = self.distance(x, y);
        if d < 0 {
            return Ok(0);
        }
        Ok(self.knit_to(x, d)?.dim(y))
    }

    /// Representative paths of the basis of `Hom(x, y)`.
    pub fn basis_paths(&self, x: ZVertex, y: ZVertex) -> Result<Vec<Path>> {
        let d = self.distance(x, y);
        if d < 0 {
            return Ok(Vec::new());
        }
        Ok(self.knit_to(x, d)?.space(y).map(|s| s.paths.clone()).unwrap_or_default())
    }

    /// Class of a path in `Hom(path[0], path.last())`.
    pub fn path_class(&self, path: &[ZVertex]) -> Result<Vec<F>> {
        let (Some(&x), Some(&y)) = (path.first(), path.last()) else {
            return Err(Error::Input("empty path".into()));
        };
        let k = self.knit_to(x, self.distance(x, y))?;
        Ok(k.reduce_path(path))
    }

    /// `g ∘ f` for `f ∈ Hom(x, y)`, `g ∈ Hom(y, z)`.
    pub fn compose(&self, x: ZVertex, y: ZVertex, z: ZVertex, f: &[F], g: &[F]) -> Result<Vec<F>> {
        self.compose_mapped(x, y, z, f, g, |v| v)
    }

    /// `φ(g) ∘ f` for `f ∈ Hom(x, φ(y))`, `g ∈ Hom(y, z)`, with `φ` a vertex automorphism
    /// that maps paths to paths (as every automorphism supported here does).
    pub fn compose_mapped(
        &self,
        x: ZVertex,
        y: ZVertex,
        z: ZVertex,
        f: &[F],
        g: &[F],
        phi: impl Fn(ZVertex) -> ZVertex,
    ) -> Result<Vec<F>> {
        let target = phi(z);
        let dxz = self.distance(x, target);
        let dyz = self.distance(y, z);
        if dxz < 0 || dyz < 0 {
            return Ok(Vec::new());
        }
        let kx = self.knit_to(x, dxz)?;
        let mut out = vec![F::zero(); kx.dim(target)];
        if f.iter().all(|c| c.is_zero()) || out.is_empty() {
            return Ok(out);
        }
        let ky = self.knit_to(y, dyz)?;
        let Some(space) = ky.space(z) else { return Ok(out) };
        for (b, c) in g.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mapped: Path = space.paths[b].iter().map(|&v| phi(v)).collect();
            let img = kx.act(&mapped, f);
            for (o, v) in out.iter_mut().zip(&img) {
                *o = o.add(&c.mul(v));
            }
        }
        Ok(out)
    }
}

/// Basis of a Hom space, as representative paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSpace {
    pub source: ZVertex,
    pub target: ZVertex,
    pub basis: Vec<Path>,
    pub dim: usize,
}

/// A morphism written in the basis of its Hom space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshMorphism<F> {
    pub source: ZVertex,
    pub target: ZVertex,
    pub coeffs: Vec<F>,
}

/// Hom basis inside a window; the window grows by `h` levels (at most three times)
/// if the paths leave it.
pub fn hom_basis<F: Field>(mesh: &MeshCategory<F>, w: &Window, x: ZVertex, y: ZVertex) -> Result<PathSpace> {
    if !w.contains(x) || !w.contains(y) {
        return Err(Error::Input(format!("{x} or {y} outside the window")));
    }
    let basis = mesh.basis_paths(x, y)?;
    let h = w.zq.quiver.coxeter_number();
    let mut win = w.clone();
    for _ in 0..=3 {
        if basis.iter().flatten().all(|&v| win.contains(v)) {
            return Ok(PathSpace { source: x, target: y, dim: basis.len(), basis });
        }
        win = win.extend(h);
    }
    Err(Error::WindowExhausted(3))
}

pub fn compose<F: Field>(mesh: &MeshCategory<F>, f: &MeshMorphism<F>, g: &MeshMorphism<F>) -> Result<MeshMorphism<F>> {
    if f.target != g.source {
        return Err(Error::Mismatch(format!("cannot compose {} -> {} with {} -> {}", f.source, f.target, g.source, g.target)));
    }
    let coeffs = mesh.compose(f.source, f.target, g.target, &f.coeffs, &g.coeffs)?;
    Ok(MeshMorphism { source: f.source, target: g.target, coeffs })
}

/// Total dimension of `⊕_i Hom(x, F^i y)` and the contributing `i`.
/// Needs `Hom(x, -)` to be finitely supported; otherwise the guard error is returned.
pub fn orbit_hom_dim<F: Field>(mesh: &MeshCategory<F>, x: ZVertex, y: ZVertex) -> Result<(usize, Vec<i32>)> {
    let k = mesh.knit(x)?;
    let q = &mesh.zq.quiver;
    let mut parts: Vec<(i32, usize)> = k
        .support()
        .filter_map(|(&v, s)| mesh.zq.auto.orbit_index(q, y, v).map(|i| (i, s.dim)))
        .collect();
    parts.sort();
    Ok((parts.iter().map(|p| p.1).sum(), parts.into_iter().map(|p| p.0).collect()))
}

/// Result of [`check_admissible`]: pass, or the first counterexample found.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AdmissibleReport {
    pub admissible: bool,
    /// Number of (vertex, test object) pairs checked.
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl AdmissibleReport {
    fn fail(checked: usize, why: String) -> Self {
        AdmissibleReport { admissible: false, checked, counterexample: Some(why) }
    }
}

/// Check on a window of levels that `F` has no fixed vertex and preserves `C`, and that
/// for every interior non-frozen `x` and every window object `w` the maps
/// `Hom(w, x) -> ⊕_{x -> y} Hom(w, y)` and `Hom(x, w) -> ⊕_{y -> x} Hom(y, w)` are injective.
pub fn check_admissible<F: Field>(q: &DynkinQuiver, config: Configuration, auto: AutoSpec, level_range: (i32, i32)) -> Result<AdmissibleReport> {
    let zq = match FramedRepetition::new(q.clone(), auto, config) {
        Ok(zq) => zq,
        Err(Error::FiniteOrder) => return Ok(AdmissibleReport::fail(0, "finite order".into())),
        Err(e) => return Err(e),
    };
    let win = Window::new(zq.clone(), level_range);
    let objects = win.vertices();
    for &v in &objects {
        let fv = zq.apply_f(v);
        if fv == v {
            return Ok(AdmissibleReport::fail(0, format!("{v} is fixed by F")));
        }
        if !v.frozen && zq.in_config(v) != zq.in_config(fv) {
            return Ok(AdmissibleReport::fail(0, format!("F moves {v} out of the configuration")));
        }
    }
    let interior: Vec<ZVertex> = objects.iter().copied().filter(|&x| win.is_interior(x) && win.is_interior(x.tau_inv())).collect();
    if interior.is_empty() {
        return Err(Error::Input("window too small: no complete mesh".into()));
    }
    let mesh: MeshCategory<F> = MeshCategory::new(zq.clone());
    // knit each object once to the top of the window instead of growing it step by step
    let top = objects.iter().map(|&v| zq.slope(v)).max().unwrap_or(0) + 1;
    for &w in &objects {
        mesh.knit_to(w, top - zq.slope(w))?;
    }
    let mut checked = 0;
    for &x in &interior {
        let after: Vec<(ZVertex, Vec<F>)> = zq.successors(x).into_iter().map(|y| Ok((y, mesh.path_class(&[x, y])?))).collect::<Result<_>>()?;
        let before: Vec<(ZVertex, Vec<F>)> = zq.predecessors(x).into_iter().map(|y| Ok((y, mesh.path_class(&[y, x])?))).collect::<Result<_>>()?;
        for &w in &objects {
            checked += 1;
            let n = mesh.dim_hom(w, x)?;
            let mut cols = Vec::with_capacity(n);
            for i in 0..n {
                let e = crate::linalg::unit(n, i);
                let mut col = Vec::new();
                for (y, a) in &after {
                    col.extend(mesh.compose(w, x, *y, &e, a)?);
                }
                cols.push(col);
            }
            if n > 0 && Matrix::from_columns(cols[0].len(), &cols).rank() < n {
                return Ok(AdmissibleReport::fail(checked, format!("Hom({w}, {x}) does not embed into the sum over arrows out of {x}")));
            }
            let n = mesh.dim_hom(x, w)?;
            let mut cols = Vec::with_capacity(n);
            for i in 0..n {
                let e = crate::linalg::unit(n, i);
                let mut col = Vec::new();
                for (y, a) in &before {
                    col.extend(mesh.compose(*y, x, w, a, &e)?);
                }
                cols.push(col);
            }
            if n > 0 && Matrix::from_columns(cols[0].len(), &cols).rank() < n {
                return Ok(AdmissibleReport::fail(checked, format!("Hom({x}, {w}) does not embed into the sum over arrows into {x}")));
            }
        }
    }
    Ok(AdmissibleReport { admissible: true, checked, counterexample: None })
}
