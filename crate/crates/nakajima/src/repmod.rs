//! Finite-dimensional modules over a presented category.
//!
//! A module assigns a space to each object and to each arrow `α: a -> b` a
//! matrix `M(α): M(b) -> M(a)` of shape `dims[a] × dims[b]`. A word
//! `α_1 … α_k` acts by the product `M(α_1) ⋯ M(α_k)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use crate::category::Morphism;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::present::Presentation;

pub mod enumerate;
pub mod random;

#[derive(Clone)]
pub struct Module<F> {
    pub pres: Arc<Presentation<F>>,
    pub dims: Vec<usize>,
    pub mats: Vec<Matrix<F>>,
}

impl<F: Field> std::fmt::Debug for Module<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module{:?}", self.dims)
    }
}

/// Per-object matrices `M(x) -> N(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap<F> {
    pub mats: Vec<Matrix<F>>,
}

/// Cheap isomorphism invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Fingerprint {
    pub dims: Vec<usize>,
    pub top: Vec<usize>,
    pub socle: Vec<usize>,
    pub end: usize,
}

fn product<F: Field>(mats: &[&Matrix<F>], rows: usize) -> Matrix<F> {
    let mut it = mats.iter();
    match it.next() {
        None => Matrix::identity(rows),
        Some(first) => it.fold((*first).clone(), |acc, m| acc.mul(m)),
    }
}

impl<F: Field> Module<F> {
    pub fn new(pres: Arc<Presentation<F>>, dims: Vec<usize>, mats: Vec<Matrix<F>>) -> Result<Self> {
        let m = Module { pres, dims, mats };
        m.check_shapes()?;
        m.check_relations()?;
        Ok(m)
    }

    /// Skips the relation check; for modules produced by constructions that guarantee it.
    pub fn new_unchecked(pres: Arc<Presentation<F>>, dims: Vec<usize>, mats: Vec<Matrix<F>>) -> Self {
        Module { pres, dims, mats }
    }

    pub fn zero(pres: Arc<Presentation<F>>) -> Self {
        let n = pres.cat.len();
        let mats = pres.arrows.iter().map(|_| Matrix::zeros(0, 0)).collect();
        Module { pres, dims: vec![0; n], mats }
    }

    pub fn simple(pres: Arc<Presentation<F>>, x: usize) -> Self {
        let n = pres.cat.len();
        let mut dims = vec![0; n];
        dims[x] = 1;
        let mats = pres.arrows.iter().map(|a| Matrix::zeros(dims[a.source], dims[a.target])).collect();
        Module { pres, dims, mats }
    }

    pub fn check_shapes(&self) -> Result<()> {
        if self.dims.len() != self.pres.cat.len() || self.mats.len() != self.pres.arrows.len() {
            return Err(Error::Mismatch("module does not fit its presentation".into()));
        }
        for (a, m) in self.pres.arrows.iter().zip(&self.mats) {
            if m.rows() != self.dims[a.source] || m.cols() != self.dims[a.target] {
                return Err(Error::Mismatch(format!("matrix for {} has shape {}x{}", a.label, m.rows(), m.cols())));
            }
        }
        Ok(())
    }

    pub fn check_relations(&self) -> Result<()> {
        for r in &self.pres.relations {
            let mut acc = Matrix::zeros(self.dims[r.source], self.dims[r.target]);
            for (c, w) in &r.terms {
                acc.axpy(c, &self.word(w, r.source));
            }
            if !acc.is_zero() {
                return Err(Error::Input(format!("relation {} does not hold", self.pres.relation_label(r))));
            }
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Action of a word starting at `source`.
    pub fn word(&self, w: &[usize], source: usize) -> Matrix<F> {
        let mats: Vec<&Matrix<F>> = w.iter().map(|&i| &self.mats[i]).collect();
        product(&mats, self.dims[source])
    }

    /// Action of a morphism `f: a -> b`, a matrix `M(b) -> M(a)`.
    pub fn eval(&self, f: &Morphism<F>) -> Result<Matrix<F>> {
        let mut acc = Matrix::zeros(self.dims[f.source], self.dims[f.target]);
        if acc.rows() == 0 || acc.cols() == 0 {
            return Ok(acc);
        }
        for (c, w) in self.pres.express(f)? {
            acc.axpy(&c, &self.word(&w, f.source));
        }
        Ok(acc)
    }

    pub fn direct_sum(&self, other: &Module<F>) -> Module<F> {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect::<Vec<_>>();
        let mats = self
            .pres
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let mut m = Matrix::zeros(dims[a.source], dims[a.target]);
                m.paste(0, 0, &self.mats[i]);
                m.paste(self.dims[a.source], self.dims[a.target], &other.mats[i]);
                m
            })
            .collect();
        Module { pres: self.pres.clone(), dims, mats }
    }

    pub fn power(&self, k: usize) -> Module<F> {
        (0..k).fold(Module::zero(self.pres.clone()), |acc, _| acc.direct_sum(self))
    }

    /// The dual module over the opposite presentation.
    pub fn dual(&self, op: Arc<Presentation<F>>) -> Module<F> {
        Module { pres: op, dims: self.dims.clone(), mats: self.mats.iter().map(|m| m.transpose()).collect() }
    }

    /// Change of basis `g_x: M(x) -> M'(x)`.
    pub fn transport(&self, g: &ModuleMap<F>) -> Result<Module<F>> {
        let inv: Vec<Matrix<F>> = g.mats.iter().map(|m| m.inverse().ok_or_else(|| Error::Input("not invertible".into()))).collect::<Result<_>>()?;
        let mats = self.pres.arrows.iter().zip(&self.mats).map(|(a, m)| g.mats[a.source].mul(m).mul(&inv[a.target])).collect();
        Ok(Module { pres: self.pres.clone(), dims: self.dims.clone(), mats })
    }

    /// Smallest submodule containing the given subspaces.
    pub fn closure(&self, mut spaces: Vec<Subspace<F>>) -> Vec<Subspace<F>> {
        loop {
            let mut grew = false;
            for (a, m) in self.pres.arrows.iter().zip(&self.mats) {
                let img: Vec<Vec<F>> = spaces[a.target].basis().iter().map(|v| m.mul_vec(v)).collect();
                for v in img {
                    if spaces[a.source].insert(&v) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return spaces;
            }
        }
    }

    pub fn is_submodule(&self, spaces: &[Subspace<F>]) -> bool {
        self.pres.arrows.iter().zip(&self.mats).all(|(a, m)| spaces[a.target].basis().iter().all(|v| spaces[a.source].contains(&m.mul_vec(v))))
    }

    /// Submodule on the given (arrow-stable) subspaces, with its inclusion.
    pub fn submodule(&self, spaces: &[Subspace<F>]) -> Result<(Module<F>, ModuleMap<F>)> {
        let incl: Vec<Matrix<F>> = spaces.iter().map(|s| s.basis_matrix()).collect();
        let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        let mut mats = Vec::new();
        for (a, m) in self.pres.arrows.iter().zip(&self.mats) {
            let mut out = Matrix::zeros(dims[a.source], dims[a.target]);
            for (j, v) in spaces[a.target].basis().iter().enumerate() {
                let img = m.mul_vec(v);
                let c = spaces[a.source].coords(&img).ok_or_else(|| Error::Input("subspaces are not arrow-stable".into()))?;
                for (i, x) in c.into_iter().enumerate() {
                    out.set(i, j, x);
                }
            }
            mats.push(out);
        }
        Ok((Module { pres: self.pres.clone(), dims, mats }, ModuleMap { mats: incl }))
    }

    /// Quotient by an arrow-stable family of subspaces, with the projection.
    pub fn quotient(&self, spaces: &[Subspace<F>]) -> Result<(Module<F>, ModuleMap<F>)> {
        if !self.is_submodule(spaces) {
            return Err(Error::Input("subspaces are not arrow-stable".into()));
        }
        let proj: Vec<Matrix<F>> = spaces.iter().map(|s| s.quotient_matrix()).collect();
        let lifts: Vec<Matrix<F>> = spaces
            .iter()
            .map(|s| {
                let free = s.free_positions();
                let mut l = Matrix::zeros(s.ambient(), free.len());
                for (j, &p) in free.iter().enumerate() {
                    l.set(p, j, F::one());
                }
                l
            })
            .collect();
        let dims: Vec<usize> = proj.iter().map(|p| p.rows()).collect();
        let mats = self.pres.arrows.iter().zip(&self.mats).map(|(a, m)| proj[a.source].mul(m).mul(&lifts[a.target])).collect();
        Ok((Module { pres: self.pres.clone(), dims, mats }, ModuleMap { mats: proj }))
    }

    /// `rad M(x) = Σ_{α: x -> b} im M(α)`.
    pub fn radical(&self) -> Vec<Subspace<F>> {
        let mut out: Vec<Subspace<F>> = self.dims.iter().map(|&d| Subspace::zero(d)).collect();
        for (a, m) in self.pres.arrows.iter().zip(&self.mats) {
            for j in 0..m.cols() {
                out[a.source].insert(&m.column(j));
            }
        }
        out
    }

    pub fn socle(&self) -> Vec<Subspace<F>> {
        (0..self.dims.len())
            .map(|x| {
                let blocks: Vec<&Matrix<F>> = self.pres.arrows.iter().zip(&self.mats).filter(|(a, _)| a.target == x).map(|(_, m)| m).collect();
                let rows: usize = blocks.iter().map(|m| m.rows()).sum();
                let stacked = Matrix::vstack(self.dims[x], &blocks);
                debug_assert_eq!(stacked.rows(), rows);
                Subspace::span(self.dims[x], stacked.kernel())
            })
            .collect()
    }

    pub fn top_dims(&self) -> Vec<usize> {
        self.radical().iter().zip(&self.dims).map(|(r, d)| d - r.dim()).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle().iter().map(|s| s.dim()).collect()
    }

    /// All sufficiently long words act by zero.
    pub fn is_nilpotent(&self) -> bool {
        let mut cur: Vec<Subspace<F>> = self.dims.iter().map(|&d| Subspace::full(d)).collect();
        for _ in 0..=self.total_dim() {
            if cur.iter().all(|s| s.dim() == 0) {
                return true;
            }
            let mut next: Vec<Subspace<F>> = self.dims.iter().map(|&d| Subspace::zero(d)).collect();
            for (a, m) in self.pres.arrows.iter().zip(&self.mats) {
                for v in cur[a.target].basis() {
                    next[a.source].insert(&m.mul_vec(v));
                }
            }
            cur = next;
        }
        cur.iter().all(|s| s.dim() == 0)
    }

    /// Supported only on objects with the given flag.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&x| self.dims[x] > 0).collect()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint { dims: self.dims.clone(), top: self.top_dims(), socle: self.socle_dims(), end: hom_dim(self, self) }
    }

    /// `{ "field", "dims": {object: n}, "matrices": {arrow: rows} }`. A matrix for
    /// `α: a -> b` has `dims[a]` rows and `dims[b]` columns.
    pub fn to_json(&self) -> Value {
        let objs = self.pres.cat.objects();
        let dims: BTreeMap<String, usize> = objs.iter().zip(&self.dims).map(|(o, &d)| (o.label.clone(), d)).collect();
        let mats: serde_json::Map<String, Value> = self
            .pres
            .arrows
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| {
                let rows: Vec<Vec<Value>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_json()).collect()).collect();
                (a.label.clone(), json!(rows))
            })
            .collect();
        json!({ "field": F::tag().label(), "dims": dims, "matrices": mats })
    }

    /// Reads the format written by `to_json`. Missing objects have dimension 0 and
    /// missing arrows act by zero; `matrices` may also be a list in arrow order.
    pub fn from_json(pres: Arc<Presentation<F>>, v: &Value) -> Result<Module<F>> {
        let objs = pres.cat.objects();
        if let Some(tag) = v.get("field").and_then(Value::as_str) {
            if tag != F::tag().label() {
                return Err(Error::Input(format!("module is over {tag}, expected {}", F::tag().label())));
            }
        }
        let dmap = v.get("dims").and_then(|d| d.as_object()).ok_or_else(|| Error::Input("missing dims".into()))?;
        let mut dims = vec![0; objs.len()];
        for (k, val) in dmap {
            let i = objs.iter().position(|o| &o.label == k).ok_or_else(|| Error::Input(format!("unknown object {k}")))?;
            dims[i] = val.as_u64().ok_or_else(|| Error::Input("dimension must be a non-negative integer".into()))? as usize;
        }
        let entries: Vec<Option<&Value>> = match v.get("matrices") {
            None => vec![None; pres.arrows.len()],
            Some(Value::Object(map)) => {
                if let Some(k) = map.keys().find(|k| !pres.arrows.iter().any(|a| &a.label == *k)) {
                    return Err(Error::Input(format!("unknown arrow {k}")));
                }
                pres.arrows.iter().map(|a| map.get(&a.label)).collect()
            }
            Some(Value::Array(list)) => {
                if list.len() != pres.arrows.len() {
                    return Err(Error::Input(format!("expected {} matrices, found {}", pres.arrows.len(), list.len())));
                }
                list.iter().map(|e| Some(e.get("matrix").unwrap_or(e))).collect()
            }
            Some(_) => return Err(Error::Input("matrices must be an object or a list".into())),
        };
        let mut mats = Vec::new();
        for (a, entry) in pres.arrows.iter().zip(entries) {
            let (r, c) = (dims[a.source], dims[a.target]);
            let mut m = Matrix::zeros(r, c);
            if let Some(entry) = entry {
                let rows = entry.as_array().ok_or_else(|| Error::Input(format!("matrix for {} must be a list of rows", a.label)))?;
                // an empty list stands for any matrix with a zero dimension
                if rows.len() != r && !(rows.is_empty() && r * c == 0) {
                    return Err(Error::Input(format!("matrix for {} must have {r} rows", a.label)));
                }
                for (i, row) in rows.iter().enumerate() {
                    let row = row.as_array().ok_or_else(|| Error::Input("matrix rows must be arrays".into()))?;
                    if row.len() != c {
                        return Err(Error::Input(format!("matrix for {} must have {c} columns", a.label)));
                    }
                    for (j, x) in row.iter().enumerate() {
                        m.set(i, j, F::from_json(x).ok_or_else(|| Error::Input(format!("bad scalar {x}")))?);
                    }
                }
            }
            mats.push(m);
        }
        Module::new(pres, dims, mats)
    }
}

impl<F: Field> ModuleMap<F> {
    pub fn identity(m: &Module<F>) -> Self {
        ModuleMap { mats: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    pub fn is_module_map(&self, m: &Module<F>, n: &Module<F>) -> bool {
        m.pres.arrows.iter().enumerate().all(|(i, a)| self.mats[a.source].mul(&m.mats[i]) == n.mats[i].mul(&self.mats[a.target]))
    }

    pub fn compose(&self, after: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap { mats: self.mats.iter().zip(&after.mats).map(|(f, g)| g.mul(f)).collect() }
    }

    pub fn kernel(&self) -> Vec<Subspace<F>> {
        self.mats.iter().map(|m| Subspace::span(m.cols(), m.kernel())).collect()
    }

    pub fn image(&self) -> Vec<Subspace<F>> {
        self.mats.iter().map(|m| m.image()).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Linear map `(φ_x) ↦ (φ_a M(α) - N(α) φ_b)_α`, unknowns ordered by object then row-major.
fn intertwiner_system<F: Field>(m: &Module<F>, n: &Module<F>) -> (Matrix<F>, Vec<usize>) {
    let offs: Vec<usize> = m.dims.iter().zip(&n.dims).scan(0, |acc, (a, b)| {
        let o = *acc;
        *acc += a * b;
        Some(o)
    }).collect();
    let unknowns: usize = m.dims.iter().zip(&n.dims).map(|(a, b)| a * b).sum();
    let rows: usize = m.pres.arrows.iter().map(|a| n.dims[a.source] * m.dims[a.target]).sum();
    let mut sys = Matrix::zeros(rows, unknowns);
    let mut r0 = 0;
    for (i, a) in m.pres.arrows.iter().enumerate() {
        let (x, y) = (a.source, a.target);
        // entry (p, q), p < n[x], q < m[y]
        for p in 0..n.dims[x] {
            for q in 0..m.dims[y] {
                let row = r0 + p * m.dims[y] + q;
                for k in 0..m.dims[x] {
                    let c = m.mats[i].get(k, q);
                    if !c.is_zero() {
                        sys.add_at(row, offs[x] + p * m.dims[x] + k, c);
                    }
                }
                for k in 0..n.dims[y] {
                    let c = n.mats[i].get(p, k);
                    if !c.is_zero() {
                        sys.add_at(row, offs[y] + k * m.dims[y] + q, &c.neg());
                    }
                }
            }
        }
        r0 += n.dims[x] * m.dims[y];
    }
    (sys, offs)
}

fn unpack<F: Field>(v: &[F], m: &Module<F>, n: &Module<F>, offs: &[usize]) -> ModuleMap<F> {
    let mats = (0..m.dims.len())
        .map(|x| {
            let mut a = Matrix::zeros(n.dims[x], m.dims[x]);
            for p in 0..n.dims[x] {
                for q in 0..m.dims[x] {
                    a.set(p, q, v[offs[x] + p * m.dims[x] + q].clone());
                }
            }
            a
        })
        .collect();
    ModuleMap { mats }
}

pub fn hom<F: Field>(m: &Module<F>, n: &Module<F>) -> Vec<ModuleMap<F>> {
    let (sys, offs) = intertwiner_system(m, n);
    sys.kernel().iter().map(|v| unpack(v, m, n, &offs)).collect()
}

pub fn hom_dim<F: Field>(m: &Module<F>, n: &Module<F>) -> usize {
    let (sys, _) = intertwiner_system(m, n);
    sys.cols() - sys.rank()
}

/// `dim Ext¹(M, N)` as derivations modulo inner derivations.
pub fn ext1<F: Field>(m: &Module<F>, n: &Module<F>) -> usize {
    let pres = &m.pres;
    let offs: Vec<usize> = pres
        .arrows
        .iter()
        .scan(0, |acc, a| {
            let o = *acc;
            *acc += n.dims[a.source] * m.dims[a.target];
            Some(o)
        })
        .collect();
    let unknowns: usize = pres.arrows.iter().map(|a| n.dims[a.source] * m.dims[a.target]).sum();
    let mut rows: Vec<Vec<F>> = Vec::new();
    for r in &pres.relations {
        let (ra, rb) = (n.dims[r.source], m.dims[r.target]);
        let mut block = vec![vec![F::zero(); unknowns]; ra * rb];
        for (c, w) in &r.terms {
            for k in 0..w.len() {
                let al = &pres.arrows[w[k]];
                let left = n.word(&w[..k], r.source);
                let right = m.word(&w[k + 1..], al.target);
                // Σ_{i,j} left[p,i] δ[i,j] right[j,q]
                for p in 0..ra {
                    for q in 0..rb {
                        for i in 0..n.dims[al.source] {
                            let l = left.get(p, i);
                            if l.is_zero() {
                                continue;
                            }
                            for j in 0..m.dims[al.target] {
                                let rr = right.get(j, q);
                                if rr.is_zero() {
                                    continue;
                                }
                                let col = offs[w[k]] + i * m.dims[al.target] + j;
                                let x = &mut block[p * rb + q][col];
                                *x = x.add(&c.mul(&l.mul(rr)));
                            }
                        }
                    }
                }
            }
        }
        rows.extend(block);
    }
    let z = unknowns - Matrix::from_rows(rows.len(), unknowns, rows).rank();
    let (sys, _) = intertwiner_system(m, n);
    let b = sys.rank();
    z - b
}

/// Randomized search for an isomorphism, exact once found.
pub fn find_iso<F: Field, R: Rng>(m: &Module<F>, n: &Module<F>, rng: &mut R) -> Option<ModuleMap<F>> {
    if m.dims != n.dims {
        return None;
    }
    let basis = hom(m, n);
    if basis.is_empty() {
        return if m.is_zero() { Some(ModuleMap::identity(m)) } else { None };
    }
    let tries = match F::elements() {
        Some(e) if (e.len() as f64).powi(basis.len() as i32) <= 4096.0 => {
            // exhaustive over small fields
            let q = e.len();
            let total = q.pow(basis.len() as u32);
            for idx in 0..total {
                let mut k = idx;
                let coeffs: Vec<F> = (0..basis.len()).map(|_| {
                    let c = e[k % q].clone();
                    k /= q;
                    c
                }).collect();
                let f = combine_maps(&basis, &coeffs);
                if f.is_iso() {
                    return Some(f);
                }
            }
            return None;
        }
        _ => 64,
    };
    for _ in 0..tries {
        let coeffs: Vec<F> = (0..basis.len()).map(|_| F::random(rng)).collect();
        let f = combine_maps(&basis, &coeffs);
        if f.is_iso() {
            return Some(f);
        }
    }
    None
}

pub fn combine_maps<F: Field>(basis: &[ModuleMap<F>], coeffs: &[F]) -> ModuleMap<F> {
    let mut mats: Vec<Matrix<F>> = basis[0].mats.iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
    for (b, c) in basis.iter().zip(coeffs) {
        for (acc, m) in mats.iter_mut().zip(&b.mats) {
            acc.axpy(c, m);
        }
    }
    ModuleMap { mats }
}

pub fn is_iso<F: Field, R: Rng>(m: &Module<F>, n: &Module<F>, rng: &mut R) -> bool {
    m.dims == n.dims && (m.is_zero() || (m.fingerprint() == n.fingerprint() && find_iso(m, n, rng).is_some()))
}

/// `x^∧` truncated above degree `top` (exact when `top` reaches the top degree).
pub fn free_module<F: Field>(pres: Arc<Presentation<F>>, x: usize, top: u32) -> Result<Module<F>> {
    let cat = pres.cat.clone();
    let n = cat.len();
    // basis of x^∧(y): pairs (degree, index)
    let basis: Vec<Vec<(u32, usize)>> =
        (0..n).map(|y| Ok((0..=top).flat_map(|d| (0..cat.dim(y, x, d).unwrap_or(0)).map(move |i| (d, i))).collect())).collect::<Result<_>>()?;
    let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
    let mut mats = Vec::new();
    for al in &pres.arrows {
        let (a, b) = (al.source, al.target);
        let mut m = Matrix::zeros(dims[a], dims[b]);
        for (j, &(d, i)) in basis[b].iter().enumerate() {
            if d + al.degree > top {
                continue;
            }
            let f = Morphism::basis(b, x, d, cat.dim(b, x, d)?, i);
            let g = cat.compose(&al.morphism, &f)?;
            for (k, c) in g.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let row = basis[a].iter().position(|&p| p == (g.degree, k)).expect("basis element present");
                    m.set(row, j, c.clone());
                }
            }
        }
        mats.push(m);
    }
    Ok(Module { pres, dims, mats })
}

/// `x^∨ = D C(x, ?)`, truncated to degrees `<= top`.
pub fn cofree_module<F: Field>(pres: Arc<Presentation<F>>, x: usize, top: u32) -> Result<Module<F>> {
    let cat = pres.cat.clone();
    let n = cat.len();
    let basis: Vec<Vec<(u32, usize)>> = (0..n).map(|y| (0..=top).flat_map(|d| (0..cat.dim(x, y, d).unwrap_or(0)).map(move |i| (d, i))).collect()).collect();
    let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
    let mut mats = Vec::new();
    for al in &pres.arrows {
        let (a, b) = (al.source, al.target);
        // C(x, a) -> C(x, b), g ↦ α ∘ g; the module map is its transpose
        let mut fwd = Matrix::zeros(dims[b], dims[a]);
        for (j, &(d, i)) in basis[a].iter().enumerate() {
            if d + al.degree > top {
                continue;
            }
            let g = Morphism::basis(x, a, d, cat.dim(x, a, d)?, i);
            let h = cat.compose(&g, &al.morphism)?;
            for (k, c) in h.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let row = basis[b].iter().position(|&p| p == (h.degree, k)).expect("basis element present");
                    fwd.set(row, j, c.clone());
                }
            }
        }
        mats.push(fwd.transpose());
    }
    Ok(Module { pres, dims, mats })
}

/// Restriction along a full embedding: `target` presents the subcategory on objects
/// `embed` of the module's category, with arrows given as morphisms of the big one.
pub fn restrict<F: Field>(m: &Module<F>, target: Arc<Presentation<F>>, embed: &[usize]) -> Result<Module<F>> {
    let dims: Vec<usize> = embed.iter().map(|&x| m.dims[x]).collect();
    let mut mats = Vec::new();
    for al in &target.arrows {
        let f = Morphism { source: embed[al.source], target: embed[al.target], degree: al.degree, coeffs: al.morphism.coeffs.clone() };
        mats.push(m.eval(&f)?);
    }
    Ok(Module { pres: target, dims, mats })
}
