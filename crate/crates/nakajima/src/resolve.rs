//! Graded free modules over a graded category, minimal generators of
//! submodules and minimal free resolutions, all computed degree by degree up
//! to a bound.
//!
//! Modules here are right modules (contravariant functors). A free module is
//! a sum of shifted representables `t^∧[e]`; it may be built over a larger
//! category and evaluated only on a full subcategory, which is how restrictions
//! of representables are handled.

use crate::category::{Cat, Morphism};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

/// `⊕_j big(embed ?, t_j)_{· - e_j}` as a module over the full subcategory on `embed`.
#[derive(Clone)]
pub struct Free<F> {
    pub cat: Cat<F>,
    pub embed: Vec<usize>,
    /// `(object of cat, degree shift)`.
    pub summands: Vec<(usize, u32)>,
}

/// A homogeneous element of a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<F> {
    pub obj: usize,
    pub degree: u32,
    pub coords: Vec<F>,
}

impl<F: Field> Free<F> {
    pub fn new(cat: Cat<F>, embed: Vec<usize>, summands: Vec<(usize, u32)>) -> Self {
        Free { cat, embed, summands }
    }

    /// Blocks `(summand, offset, len)` of the graded piece at `(s, d)`.
    pub fn layout(&self, s: usize, d: u32) -> Result<Vec<(usize, usize, usize)>> {
        let mut out = Vec::new();
        let mut off = 0;
        for (j, &(t, e)) in self.summands.iter().enumerate() {
            if d < e {
                continue;
            }
            let n = self.cat.dim(self.embed[s], t, d - e)?;
            if n > 0 {
                out.push((j, off, n));
                off += n;
            }
        }
        Ok(out)
    }

    pub fn dim(&self, s: usize, d: u32) -> Result<usize> {
        Ok(self.layout(s, d)?.iter().map(|b| b.2).sum())
    }

    /// Component of an element in summand `j`, as a morphism of `cat`.
    pub fn component(&self, x: &Element<F>, j: usize) -> Result<Option<Morphism<F>>> {
        let (t, e) = self.summands[j];
        for (k, off, n) in self.layout(x.obj, x.degree)? {
            if k == j {
                let coeffs = x.coords[off..off + n].to_vec();
                return Ok(Some(Morphism { source: self.embed[x.obj], target: t, degree: x.degree - e, coeffs }));
            }
        }
        Ok(None)
    }

    /// `x · u` for `u: embed[s2] -> embed[x.obj]`.
    pub fn act(&self, x: &Element<F>, s2: usize, u: &Morphism<F>) -> Result<Element<F>> {
        let degree = x.degree + u.degree;
        let lay = self.layout(s2, degree)?;
        let mut coords = vec![F::zero(); lay.iter().map(|b| b.2).sum()];
        for (j, off, n) in lay {
            if let Some(c) = self.component(x, j)? {
                let h = self.cat.compose(u, &c)?;
                debug_assert_eq!(h.coeffs.len(), n);
                coords[off..off + n].clone_from_slice(&h.coeffs);
            }
        }
        Ok(Element { obj: s2, degree, coords })
    }

    /// The generator of summand `j`, when it is an object of the subcategory.
    pub fn generator(&self, j: usize) -> Result<Element<F>> {
        let (t, e) = self.summands[j];
        let s = self.embed.iter().position(|&o| o == t).ok_or_else(|| Error::Inconsistent("summand outside the subcategory".into()))?;
        let lay = self.layout(s, e)?;
        let mut coords = vec![F::zero(); lay.iter().map(|b| b.2).sum()];
        let (_, off, _) = lay.iter().find(|b| b.0 == j).ok_or_else(|| Error::Inconsistent("missing identity".into()))?;
        coords[*off] = F::one();
        Ok(Element { obj: s, degree: e, coords })
    }
}

/// A map of free modules given by the images of the generators of the domain.
#[derive(Clone)]
pub struct FreeMap<F> {
    pub domain: Free<F>,
    pub codomain: Free<F>,
    pub images: Vec<Element<F>>,
}

impl<F: Field> FreeMap<F> {
    /// Matrix of the map on the graded piece at `(s, d)`.
    pub fn matrix(&self, s: usize, d: u32) -> Result<Matrix<F>> {
        let rows = self.codomain.dim(s, d)?;
        let mut cols = Vec::new();
        for (j, _, n) in self.domain.layout(s, d)? {
            let (t, e) = self.domain.summands[j];
            for i in 0..n {
                let u = Morphism::basis(self.domain.embed[s], t, d - e, n, i);
                cols.push(self.codomain.act(&self.images[j], s, &u)?.coords);
            }
        }
        Ok(Matrix::from_columns(rows, &cols))
    }

    pub fn apply(&self, x: &Element<F>) -> Result<Element<F>> {
        let coords = self.matrix(x.obj, x.degree)?.mul_vec(&x.coords);
        Ok(Element { obj: x.obj, degree: x.degree, coords })
    }
}

fn check_degree_zero<F: Field>(cat: &Cat<F>, embed: &[usize]) -> Result<()> {
    for (i, &a) in embed.iter().enumerate() {
        for (j, &b) in embed.iter().enumerate() {
            let n = cat.dim(a, b, 0)?;
            if n != usize::from(i == j) {
                return Err(Error::Input(format!("degree-zero part is not semisimple at {a},{b}")));
            }
        }
    }
    Ok(())
}

/// Minimal homogeneous generators of a submodule of `m`, degrees `0..=max_deg`.
/// `sub(s, d)` gives the graded piece of the submodule.
pub fn min_generators<F: Field>(
    m: &Free<F>,
    max_deg: u32,
    mut sub: impl FnMut(usize, u32) -> Result<Subspace<F>>,
) -> Result<Vec<Element<F>>> {
    check_degree_zero(&m.cat, &m.embed)?;
    let n = m.embed.len();
    let mut gens: Vec<Element<F>> = Vec::new();
    for d in 0..=max_deg {
        let mut fresh = Vec::new();
        for s in 0..n {
            let piece = sub(s, d)?;
            if piece.dim() == 0 {
                continue;
            }
            let mut span = Subspace::zero(piece.ambient());
            for g in &gens {
                let e = d - g.degree;
                let k = m.cat.dim(m.embed[s], m.embed[g.obj], e)?;
                for i in 0..k {
                    let u = Morphism::basis(m.embed[s], m.embed[g.obj], e, k, i);
                    span.insert(&m.act(g, s, &u)?.coords);
                }
            }
            if span.dim() == piece.dim() {
                continue;
            }
            for v in piece.basis() {
                if span.insert(v) {
                    fresh.push(Element { obj: s, degree: d, coords: v.clone() });
                }
            }
        }
        gens.extend(fresh);
    }
    Ok(gens)
}

/// The free module on a list of generators, with its map onto their span.
pub fn cover<F: Field>(m: &Free<F>, gens: Vec<Element<F>>) -> FreeMap<F> {
    let domain = Free::new(m.cat.clone(), m.embed.clone(), gens.iter().map(|g| (m.embed[g.obj], g.degree)).collect());
    FreeMap { domain, codomain: m.clone(), images: gens }
}

/// A minimal free resolution `... -> F_1 -> F_0 -> U` of a submodule `U` of a
/// free module, correct in internal degrees `<= max_deg`.
pub struct Resolution<F> {
    pub max_deg: u32,
    /// `maps[0]: F_0 -> ambient`, `maps[k]: F_k -> F_{k-1}`.
    pub maps: Vec<FreeMap<F>>,
}

impl<F: Field> Resolution<F> {
    pub fn term(&self, k: usize) -> &Free<F> {
        &self.maps[k].domain
    }

    /// Number of generators of `F_k` at each object, summed over degrees.
    pub fn multiplicities(&self, k: usize) -> Vec<usize> {
        let n = self.maps[0].codomain.embed.len();
        let mut out = vec![0; n];
        if let Some(m) = self.maps.get(k) {
            for g in &m.images {
                out[g.obj] += 1;
            }
        }
        out
    }

    /// Kernel of the last map in degree `d` at object `s`.
    pub fn last_kernel(&self, s: usize, d: u32) -> Result<Subspace<F>> {
        let m = self.maps.last().expect("nonempty resolution");
        let a = m.matrix(s, d)?;
        Ok(Subspace::span(a.cols(), a.kernel()))
    }
}

impl<F: Field> Resolution<F> {
    /// Rank check, in every object and degree up to the bound, that consecutive maps
    /// compose to zero and that the sequence is exact at `F_1, ..., F_{k-1}`. For a
    /// resolution from [`resolve_simple`] also checks that `F_0 / im F_1` is the simple at `top`.
    pub fn is_exact(&self, top: Option<usize>) -> Result<bool> {
        let n = self.maps[0].codomain.embed.len();
        for s in 0..n {
            for d in 0..=self.max_deg {
                let mats = self.maps.iter().map(|m| m.matrix(s, d)).collect::<Result<Vec<_>>>()?;
                // with `top`, maps[0] is the identity of F_0 and is not part of the complex
                let first = if top.is_some() { 2 } else { 1 };
                for k in first..mats.len() {
                    let (outer, inner) = (&mats[k - 1], &mats[k]);
                    if inner.rows() > 0 && inner.cols() > 0 && outer.rows() > 0 && !outer.mul(inner).is_zero() {
                        return Ok(false);
                    }
                    let dim = self.term(k - 1).dim(s, d)?;
                    if dim - outer.rank() != inner.rank() {
                        return Ok(false);
                    }
                }
                if let (Some(x), Some(m1)) = (top, mats.get(1)) {
                    let quotient = self.term(0).dim(s, d)? - m1.rank();
                    if quotient != usize::from(s == x && d == 0) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Total dimension of the kernel of the last map, summed over objects and degrees.
    pub fn last_kernel_dim(&self) -> Result<usize> {
        let n = self.maps[0].codomain.embed.len();
        let mut total = 0;
        for s in 0..n {
            for d in 0..=self.max_deg {
                total += self.last_kernel(s, d)?.dim();
            }
        }
        Ok(total)
    }
}

pub fn kernel_piece<F: Field>(f: &FreeMap<F>, s: usize, d: u32) -> Result<Subspace<F>> {
    let a = f.matrix(s, d)?;
    Ok(Subspace::span(a.cols(), a.kernel()))
}

/// Resolve `U ⊆ ambient` through `steps` free terms.
pub fn resolve<F: Field>(
    ambient: &Free<F>,
    max_deg: u32,
    steps: usize,
    sub: impl FnMut(usize, u32) -> Result<Subspace<F>>,
) -> Result<Resolution<F>> {
    let gens = min_generators(ambient, max_deg, sub)?;
    let mut maps = vec![cover(ambient, gens)];
    while maps.len() < steps {
        let prev = maps.last().expect("nonempty").clone();
        let gens = min_generators(&prev.domain, max_deg, |s, d| kernel_piece(&prev, s, d))?;
        maps.push(cover(&prev.domain, gens));
    }
    Ok(Resolution { max_deg, maps })
}

/// Minimal resolution of the simple module at object `s` of the category
/// (restricted to `embed`): `F_0 = s^∧` and the rest resolves its radical.
pub fn resolve_simple<F: Field>(cat: Cat<F>, embed: Vec<usize>, s: usize, max_deg: u32, steps: usize) -> Result<Resolution<F>> {
    let top = Free::new(cat.clone(), embed.clone(), vec![(embed[s], 0)]);
    let first = cover(&top, vec![top.generator(0)?]);
    let mut res = resolve(&first.domain, max_deg, steps.saturating_sub(1), |t, d| {
        let n = first.domain.dim(t, d)?;
        Ok(if d == 0 { Subspace::zero(n) } else { Subspace::full(n) })
    })?;
    res.maps.insert(0, first);
    Ok(res)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::{Cached, OrbitCategory, PathCategory};
    use crate::field::Q;
    use crate::mesh::MeshCategory;
    use crate::quiver::{AutoSpec, Configuration, DynkinQuiver, FramedRepetition};

    #[test]
    fn hereditary_simple_has_projective_dimension_one() {
        let p: Cat<Q> = Arc::new(PathCategory::new(3, vec![(0, 1), (1, 2)]).unwrap());
        let res = resolve_simple(p, vec![0, 1, 2], 2, 4, 4).unwrap();
        assert_eq!(res.multiplicities(0), vec![0, 0, 1]);
        assert_eq!(res.multiplicities(1), vec![0, 1, 0]);
        assert_eq!(res.multiplicities(2), vec![0, 0, 0]);
    }

    #[test]
    fn preprojective_a2_is_periodic() {
        let zq = FramedRepetition::new(DynkinQuiver::linear_a(2), AutoSpec::tau(), Configuration::OrbitReps(vec![])).unwrap();
        let p: Cat<Q> = Cached::wrap(Arc::new(OrbitCategory::new(Arc::new(MeshCategory::new(zq)), false, "P").unwrap()));
        assert_eq!(p.len(), 2);
        let res = resolve_simple(p, vec![0, 1], 0, 8, 4).unwrap();
        assert_eq!(res.multiplicities(0), vec![1, 0]);
        assert_eq!(res.multiplicities(1), vec![0, 1]);
        assert_eq!(res.multiplicities(2), vec![1, 0]);
        assert_eq!(res.multiplicities(3), vec![0, 1]);
    }
}
