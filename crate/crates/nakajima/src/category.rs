//! Graded linear categories given lazily: Hom spaces are produced degree by
//! degree, so categories with infinite-dimensional Hom spaces are usable as
//! long as every single graded piece is finite.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mesh::MeshCategory;
use crate::quiver::ZVertex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Object {
    pub label: String,
    pub frozen: bool,
}

/// A homogeneous morphism `source -> target`, in the basis of the graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<F> {
    pub source: usize,
    pub target: usize,
    pub degree: u32,
    pub coeffs: Vec<F>,
}

impl<F: Field> Morphism<F> {
    pub fn zero(source: usize, target: usize, degree: u32, dim: usize) -> Self {
        Morphism { source, target, degree, coeffs: vec![F::zero(); dim] }
    }

    pub fn basis(source: usize, target: usize, degree: u32, dim: usize, k: usize) -> Self {
        let mut m = Morphism::zero(source, target, degree, dim);
        m.coeffs[k] = F::one();
        m
    }

    pub fn identity(a: usize) -> Self {
        Morphism { source: a, target: a, degree: 0, coeffs: vec![F::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// A k-linear category graded by non-negative degrees with `C(a, a)_0 = k`.
pub trait Graded<F: Field>: Send + Sync {
    fn name(&self) -> String;
    fn objects(&self) -> &[Object];
    fn dim(&self, a: usize, b: usize, d: u32) -> Result<usize>;
    /// `g ∘ f`.
    fn compose(&self, f: &Morphism<F>, g: &Morphism<F>) -> Result<Morphism<F>>;
    /// A degree above which every Hom space vanishes, when one is known.
    fn top_degree(&self) -> Option<u32>;
    /// Human-readable name of a basis element.
    fn basis_label(&self, a: usize, b: usize, d: u32, k: usize) -> String {
        format!("{}->{}[{d}]#{k}", self.objects()[a].label, self.objects()[b].label)
    }

    /// A degree bound for generating morphisms, when one is known.
    fn generator_bound(&self) -> Option<u32> {
        None
    }

    fn len(&self) -> usize {
        self.objects().len()
    }

    /// Total dimension of `C(a, b)` up to degree `n`.
    fn dim_upto(&self, a: usize, b: usize, n: u32) -> Result<usize> {
        (0..=n).map(|d| self.dim(a, b, d)).sum()
    }
}

pub type Cat<F> = Arc<dyn Graded<F>>;

pub fn check_composable<F>(f: &Morphism<F>, g: &Morphism<F>) -> Result<()> {
    if f.target != g.source {
        return Err(Error::Mismatch(format!("cannot compose {}->{} with {}->{}", f.source, f.target, g.source, g.target)));
    }
    Ok(())
}

/// The orbit category `k(ZQ_C)/F` restricted to chosen orbit representatives.
/// `C(a, b)_d = Hom(a, F^i b)` for the unique `i` putting `F^i b` at slope distance `d`.
pub struct OrbitCategory<F> {
    pub mesh: Arc<MeshCategory<F>>,
    pub reps: Vec<ZVertex>,
    objects: Vec<Object>,
    top: Option<u32>,
    name: String,
}

impl<F: Field> OrbitCategory<F> {
    /// Objects are the orbit representatives of the fundamental domain, non-frozen
    /// ones first, followed by `σ(c)` for each representative `c` in the configuration
    /// when `with_frozen` is set.
    pub fn new(mesh: Arc<MeshCategory<F>>, with_frozen: bool, name: &str) -> Result<Self> {
        let zq = &mesh.zq;
        let domain = zq.fundamental_domain();
        let mut reps = domain.clone();
        if with_frozen {
            reps.extend(domain.iter().filter(|&&c| zq.in_config(c)).map(|c| c.sigma()));
        }
        let objects = reps.iter().map(|v| Object { label: v.label(), frozen: v.frozen }).collect();
        let h = zq.quiver.coxeter_number();
        // Bounded support shows up well within a few Coxeter numbers.
        let probe = 4 * h + 4;
        let mut top = Some(0u32);
        for &x in &reps {
            let k = mesh.knit_to(x, probe)?;
            if !k.complete {
                top = None;
                break;
            }
            let far = k.support().map(|(y, _)| zq.slope(*y) - zq.slope(x)).max().unwrap_or(0);
            top = top.map(|t| t.max(far as u32));
        }
        Ok(OrbitCategory { mesh, reps, objects, top, name: name.to_string() })
    }

    fn zq(&self) -> &crate::quiver::FramedRepetition {
        &self.mesh.zq
    }

    /// The vertex `F^i b` at slope distance `d` above `a`, if any.
    pub fn lift(&self, a: usize, b: usize, d: u32) -> Option<(i32, ZVertex)> {
        let zq = self.zq();
        let (x, y) = (self.reps[a], self.reps[b]);
        let want = zq.slope(x) + d as i32;
        let diff = want - zq.slope(y);
        let p = zq.auto.period();
        if diff % p != 0 {
            return None;
        }
        let i = diff / p;
        Some((i, zq.auto.apply_pow(&zq.quiver, y, i)))
    }

    /// Representative path (in `ZQ_C`) of a basis element.
    pub fn basis_path(&self, a: usize, b: usize, d: u32, k: usize) -> Result<Vec<ZVertex>> {
        let Some((_, y)) = self.lift(a, b, d) else {
            return Err(Error::Input("empty Hom space".into()));
        };
        let paths = self.mesh.basis_paths(self.reps[a], y)?;
        paths.get(k).cloned().ok_or_else(|| Error::Input("basis index out of range".into()))
    }

    /// Index of the object whose orbit contains `v`, with the power `i` such that `F^i(rep) = v`.
    pub fn locate(&self, v: ZVertex) -> Option<(usize, i32)> {
        let zq = self.zq();
        self.reps.iter().enumerate().find_map(|(j, &r)| zq.auto.orbit_index(&zq.quiver, r, v).map(|i| (j, i)))
    }

    /// Class of a path of `ZQ_C` starting at a representative, as a morphism of the orbit category.
    pub fn path_morphism(&self, path: &[ZVertex]) -> Result<Morphism<F>> {
        let (Some(&x), Some(&y)) = (path.first(), path.last()) else {
            return Err(Error::Input("empty path".into()));
        };
        let a = self.reps.iter().position(|&r| r == x).ok_or_else(|| Error::Input(format!("{x} is not a representative")))?;
        let (b, _) = self.locate(y).ok_or_else(|| Error::Input(format!("{y} is not in an object orbit")))?;
        let d = (self.zq().slope(y) - self.zq().slope(x)) as u32;
        Ok(Morphism { source: a, target: b, degree: d, coeffs: self.mesh.path_class(path)? })
    }
}

impl<F: Field> Graded<F> for OrbitCategory<F> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn objects(&self) -> &[Object] {
        &self.objects
    }

    fn dim(&self, a: usize, b: usize, d: u32) -> Result<usize> {
        if let Some(t) = self.top {
            if d > t {
                return Ok(0);
            }
        }
        match self.lift(a, b, d) {
            Some((_, y)) if self.zq().is_vertex(y) => self.mesh.dim_hom(self.reps[a], y),
            _ => Ok(0),
        }
    }

    fn compose(&self, f: &Morphism<F>, g: &Morphism<F>) -> Result<Morphism<F>> {
        check_composable(f, g)?;
        let degree = f.degree + g.degree;
        let (a, b, c) = (f.source, f.target, g.target);
        let dim = self.dim(a, c, degree)?;
        if dim == 0 || f.is_zero() || g.is_zero() {
            return Ok(Morphism::zero(a, c, degree, dim));
        }
        let (i, _) = self.lift(a, b, f.degree).expect("nonzero morphism has a lift");
        let (_, z) = self.lift(b, c, g.degree).expect("nonzero morphism has a lift");
        let zq = self.zq();
        let coeffs = self.mesh.compose_mapped(self.reps[a], self.reps[b], z, &f.coeffs, &g.coeffs, |v| {
            zq.auto.apply_pow(&zq.quiver, v, i)
        })?;
        Ok(Morphism { source: a, target: c, degree, coeffs })
    }

    fn top_degree(&self) -> Option<u32> {
        self.top
    }

    fn generator_bound(&self) -> Option<u32> {
        Some(1)
    }

    fn basis_label(&self, a: usize, b: usize, d: u32, k: usize) -> String {
        match self.basis_path(a, b, d, k) {
            Ok(p) => p.iter().map(|v| v.label()).collect::<Vec<_>>().join("→"),
            Err(_) => format!("?{a}{b}{d}{k}"),
        }
    }
}

type BlockKey = (usize, usize, usize, u32, u32);

/// Memoizes dimensions and basis-by-basis composition tables of another category.
pub struct Cached<F> {
    pub inner: Cat<F>,
    dims: RwLock<HashMap<(usize, usize, u32), usize>>,
    /// `table[i * dim2 + j]` is `basis_j ∘ basis_i`.
    blocks: RwLock<HashMap<BlockKey, Arc<Vec<Vec<F>>>>>,
}

impl<F: Field> Cached<F> {
    pub fn new(inner: Cat<F>) -> Self {
        Cached { inner, dims: RwLock::new(HashMap::new()), blocks: RwLock::new(HashMap::new()) }
    }

    pub fn wrap(inner: Cat<F>) -> Cat<F> {
        Arc::new(Cached::new(inner))
    }

    fn block(&self, key: BlockKey) -> Result<Arc<Vec<Vec<F>>>> {
        if let Some(b) = self.blocks.read().expect("cache poisoned").get(&key) {
            return Ok(b.clone());
        }
        let (a, b, c, d1, d2) = key;
        let (n1, n2) = (self.dim(a, b, d1)?, self.dim(b, c, d2)?);
        let mut table = Vec::with_capacity(n1 * n2);
        for i in 0..n1 {
            for j in 0..n2 {
                let h = self.inner.compose(&Morphism::basis(a, b, d1, n1, i), &Morphism::basis(b, c, d2, n2, j))?;
                table.push(h.coeffs);
            }
        }
        let table = Arc::new(table);
        self.blocks.write().expect("cache poisoned").insert(key, table.clone());
        Ok(table)
    }
}

impl<F: Field> Graded<F> for Cached<F> {
    fn name(&self) -> String {
        self.inner.name()
    }
    fn objects(&self) -> &[Object] {
        self.inner.objects()
    }
    fn dim(&self, a: usize, b: usize, d: u32) -> Result<usize> {
        if let Some(&n) = self.dims.read().expect("cache poisoned").get(&(a, b, d)) {
            return Ok(n);
        }
        let n = self.inner.dim(a, b, d)?;
        self.dims.write().expect("cache poisoned").insert((a, b, d), n);
        Ok(n)
    }
    fn compose(&self, f: &Morphism<F>, g: &Morphism<F>) -> Result<Morphism<F>> {
        check_composable(f, g)?;
        let degree = f.degree + g.degree;
        let n = self.dim(f.source, g.target, degree)?;
        let mut out = vec![F::zero(); n];
        if n == 0 || f.is_zero() || g.is_zero() {
            return Ok(Morphism { source: f.source, target: g.target, degree, coeffs: out });
        }
        let table = self.block((f.source, f.target, g.target, f.degree, g.degree))?;
        let n2 = g.coeffs.len();
        for (i, x) in f.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in g.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x.mul(y);
                for (o, t) in out.iter_mut().zip(&table[i * n2 + j]) {
                    if !t.is_zero() {
                        *o = o.add(&c.mul(t));
                    }
                }
            }
        }
        Ok(Morphism { source: f.source, target: g.target, degree, coeffs: out })
    }
    fn top_degree(&self) -> Option<u32> {
        self.inner.top_degree()
    }
    fn basis_label(&self, a: usize, b: usize, d: u32, k: usize) -> String {
        self.inner.basis_label(a, b, d, k)
    }
    fn generator_bound(&self) -> Option<u32> {
        self.inner.generator_bound()
    }
}

/// The opposite category.
pub struct Opposite<F> {
    pub inner: Cat<F>,
}

impl<F: Field> Graded<F> for Opposite<F> {
    fn name(&self) -> String {
        format!("{}^op", self.inner.name())
    }
    fn objects(&self) -> &[Object] {
        self.inner.objects()
    }
    fn dim(&self, a: usize, b: usize, d: u32) -> Result<usize> {
        self.inner.dim(b, a, d)
    }
    fn compose(&self, f: &Morphism<F>, g: &Morphism<F>) -> Result<Morphism<F>> {
        check_composable(f, g)?;
        let flip = |m: &Morphism<F>| Morphism { source: m.target, target: m.source, degree: m.degree, coeffs: m.coeffs.clone() };
        let h = self.inner.compose(&flip(g), &flip(f))?;
        Ok(flip(&h))
    }
    fn top_degree(&self) -> Option<u32> {
        self.inner.top_degree()
    }
    fn basis_label(&self, a: usize, b: usize, d: u32, k: usize) -> String {
        format!("op({})", self.inner.basis_label(b, a, d, k))
    }
}

/// A full subcategory on a subset of objects.
pub struct FullSub<F> {
    pub inner: Cat<F>,
    /// Object `j` here is object `embed[j]` of `inner`.
    pub embed: Vec<usize>,
    objects: Vec<Object>,
    name: String,
}

impl<F: Field> FullSub<F> {
    pub fn new(inner: Cat<F>, embed: Vec<usize>, name: &str) -> Self {
        let objects = embed.iter().map(|&i| inner.objects()[i].clone()).collect();
        FullSub { inner, embed, objects, name: name.to_string() }
    }

    pub fn to_inner(&self, m: &Morphism<F>) -> Morphism<F> {
        Morphism { source: self.embed[m.source], target: self.embed[m.target], degree: m.degree, coeffs: m.coeffs.clone() }
    }

    pub fn from_inner(&self, m: &Morphism<F>) -> Option<Morphism<F>> {
        let s = self.embed.iter().position(|&i| i == m.source)?;
        let t = self.embed.iter().position(|&i| i == m.target)?;
        Some(Morphism { source: s, target: t, degree: m.degree, coeffs: m.coeffs.clone() })
    }
}

impl<F: Field> Graded<F> for FullSub<F> {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn objects(&self) -> &[Object] {
        &self.objects
    }
    fn dim(&self, a: usize, b: usize, d: u32) -> Result<usize> {
        self.inner.dim(self.embed[a], self.embed[b], d)
    }
    fn compose(&self, f: &Morphism<F>, g: &Morphism<F>) -> Result<Morphism<F>> {
        check_composable(f, g)?;
        let h = self.inner.compose(&self.to_inner(f), &self.to_inner(g))?;
        Ok(Morphism { source: f.source, target: g.target, degree: h.degree, coeffs: h.coeffs })
    }
    fn top_degree(&self) -> Option<u32> {
        self.inner.top_degree()
    }
    fn basis_label(&self, a: usize, b: usize, d: u32, k: usize) -> String {
        self.inner.basis_label(self.embed[a], self.embed[b], d, k)
    }
}

/// The path category of a finite acyclic quiver, graded by path length.
pub struct PathCategory {
    objects: Vec<Object>,
    arrows: Vec<(usize, usize)>,
    /// Paths as arrow sequences, keyed by (source, target, length).
    paths: HashMap<(usize, usize, u32), Vec<Vec<usize>>>,
    top: u32,
}

impl PathCategory {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let mut paths: HashMap<(usize, usize, u32), Vec<Vec<usize>>> = HashMap::new();
        for a in 0..n {
            paths.insert((a, a, 0), vec![Vec::new()]);
        }
        let mut frontier: Vec<(usize, Vec<usize>)> = (0..n).map(|a| (a, Vec::new())).collect();
        let mut len = 0;
        while !frontier.is_empty() {
            len += 1;
            if len > n as u32 {
                return Err(Error::InvalidQuiver("path category needs an acyclic quiver".into()));
            }
            let mut next = Vec::new();
            for (a, p) in frontier {
                let end = p.last().map_or(a, |&e| arrows[e].1);
                for (e, &(s, t)) in arrows.iter().enumerate() {
                    if s == end {
                        let mut q = p.clone();
                        q.push(e);
                        paths.entry((a, t, len)).or_default().push(q.clone());
                        next.push((a, q));
                    }
                }
            }
            frontier = next;
        }
        let top = paths.keys().map(|k| k.2).max().unwrap_or(0);
        let objects = (0..n).map(|i| Object { label: format!("{}", i + 1), frozen: false }).collect();
        Ok(PathCategory { objects, arrows, paths, top })
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }
}

impl<F: Field> Graded<F> for PathCategory {
    fn name(&self) -> String {
        "path".into()
    }
    fn objects(&self) -> &[Object] {
        &self.objects
    }
    fn dim(&self, a: usize, b: usize, d: u32) -> Result<usize> {
        Ok(self.paths.get(&(a, b, d)).map_or(0, |v| v.len()))
    }
    fn compose(&self, f: &Morphism<F>, g: &Morphism<F>) -> Result<Morphism<F>> {
        check_composable(f, g)?;
        let degree = f.degree + g.degree;
        let empty = Vec::new();
        let target = self.paths.get(&(f.source, g.target, degree)).unwrap_or(&empty);
        let fp = self.paths.get(&(f.source, f.target, f.degree)).unwrap_or(&empty);
        let gp = self.paths.get(&(g.source, g.target, g.degree)).unwrap_or(&empty);
        let mut coeffs = vec![F::zero(); target.len()];
        for (i, cf) in f.coeffs.iter().enumerate() {
            for (j, cg) in g.coeffs.iter().enumerate() {
                if cf.is_zero() || cg.is_zero() {
                    continue;
                }
                let mut p = fp[i].clone();
                p.extend(&gp[j]);
                let k = target.iter().position(|q| *q == p).expect("concatenated path exists");
                coeffs[k] = coeffs[k].add(&cf.mul(cg));
            }
        }
        Ok(Morphism { source: f.source, target: g.target, degree, coeffs })
    }
    fn top_degree(&self) -> Option<u32> {
        Some(self.top)
    }
}
