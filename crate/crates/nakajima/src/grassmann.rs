//! Quiver Grassmannians over finite fields by exhaustive enumeration, and the
//! constructions that realise fibers and ℒ-varieties as Grassmannians.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::kan::{KanResult, Recollement};
use crate::linalg::{Matrix, Subspace};
use crate::orbitcat::Nakajima;
use crate::repmod::{cofree_module, is_iso, Module};

/// Largest number of candidate subspace tuples an enumeration may visit.
pub const SIZE_GUARD: u128 = 10_000_000;

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num = num.saturating_mul(q.pow((n - i) as u32) - 1);
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

fn field_size<F: Field>() -> Result<(Vec<F>, u128)> {
    let elems = F::elements().ok_or_else(|| Error::Input(format!("enumeration needs a finite field, not {}", F::tag().label())))?;
    let q = elems.len() as u128;
    Ok((elems, q))
}

/// All `k`-dimensional subspaces of `F^n`, each in reduced echelon form.
pub fn subspaces<F: Field>(n: usize, k: usize) -> Result<Vec<Subspace<F>>> {
    let (elems, q) = field_size::<F>()?;
    if gaussian_binomial(n, k, q) > SIZE_GUARD {
        return Err(Error::ResourceGuard(format!("too many {k}-subspaces of a {n}-dimensional space")));
    }
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(n, k, 0, &mut pivots, &mut |piv| {
        // free slots: row i, column j > piv[i] that is not a pivot
        let slots: Vec<(usize, usize)> = (0..k).flat_map(|i| ((piv[i] + 1)..n).filter(|j| !piv.contains(j)).map(move |j| (i, j))).collect();
        let mut digits = vec![0usize; slots.len()];
        loop {
            let mut rows = vec![vec![F::zero(); n]; k];
            for (i, &p) in piv.iter().enumerate() {
                rows[i][p] = F::one();
            }
            for (s, &(i, j)) in slots.iter().enumerate() {
                rows[i][j] = elems[digits[s]].clone();
            }
            out.push(Subspace::from_rref(n, rows, piv.to_vec()));
            // next assignment of the free slots, odometer style
            let mut s = 0;
            while s < digits.len() {
                digits[s] += 1;
                if digits[s] < elems.len() {
                    break;
                }
                digits[s] = 0;
                s += 1;
            }
            if s == digits.len() {
                break;
            }
        }
    });
    Ok(out)
}

fn choose_pivots(n: usize, k: usize, from: usize, acc: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if acc.len() == k {
        visit(acc);
        return;
    }
    for p in from..n {
        if n - p < k - acc.len() {
            break;
        }
        acc.push(p);
        choose_pivots(n, k, p + 1, acc, visit);
        acc.pop();
    }
}

/// Submodules of one module with a fixed dimension vector.
#[derive(Clone, Debug)]
pub struct SubrepList<F> {
    pub dims: Vec<usize>,
    pub subreps: Vec<Vec<Subspace<F>>>,
}

impl<F> SubrepList<F> {
    pub fn count(&self) -> usize {
        self.subreps.len()
    }
}

/// Every submodule of `m` with dimension vector `d`, by choosing a subspace per
/// object and discarding choices that some arrow does not preserve.
pub fn enumerate_subreps<F: Field>(m: &Module<F>, d: &[usize]) -> Result<SubrepList<F>> {
    let n = m.dims.len();
    if d.len() != n {
        return Err(Error::Mismatch(format!("dimension vector of length {} for {n} objects", d.len())));
    }
    if d.iter().zip(&m.dims).any(|(a, b)| a > b) {
        return Ok(SubrepList { dims: d.to_vec(), subreps: Vec::new() });
    }
    let (_, q) = field_size::<F>()?;
    let mut size = 1u128;
    for x in 0..n {
        size = size.saturating_mul(gaussian_binomial(m.dims[x], d[x], q));
    }
    if size > SIZE_GUARD {
        return Err(Error::ResourceGuard(format!("Grassmannian of {:?} in {:?} has up to {size} candidates", d, m.dims)));
    }
    let choices = (0..n).map(|x| subspaces::<F>(m.dims[x], d[x])).collect::<Result<Vec<_>>>()?;
    // arrows checked once both ends are chosen
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, a) in m.pres.arrows.iter().enumerate() {
        ready[a.source.max(a.target)].push(i);
    }
    let mut found = Vec::new();
    let mut current: Vec<Subspace<F>> = Vec::with_capacity(n);
    extend_choice(m, &choices, &ready, &mut current, &mut found);
    Ok(SubrepList { dims: d.to_vec(), subreps: found })
}

fn extend_choice<F: Field>(
    m: &Module<F>,
    choices: &[Vec<Subspace<F>>],
    ready: &[Vec<usize>],
    current: &mut Vec<Subspace<F>>,
    found: &mut Vec<Vec<Subspace<F>>>,
) {
    let x = current.len();
    if x == choices.len() {
        found.push(current.clone());
        return;
    }
    for u in &choices[x] {
        current.push(u.clone());
        let stable = ready[x].iter().all(|&i| {
            let a = &m.pres.arrows[i];
            current[a.target].basis().iter().all(|v| current[a.source].contains(&m.mats[i].mul_vec(v)))
        });
        if stable {
            extend_choice(m, choices, ready, current, found);
        }
        current.pop();
    }
}

pub fn gr_count<F: Field>(m: &Module<F>, d: &[usize]) -> Result<usize> {
    Ok(enumerate_subreps(m, d)?.count())
}

/// Submodules with dimension vector `d` on which every arrow acts nilpotently.
pub fn gr_nil_count<F: Field>(m: &Module<F>, d: &[usize]) -> Result<usize> {
    let list = enumerate_subreps(m, d)?;
    let mut count = 0;
    for spaces in &list.subreps {
        if m.submodule(spaces)?.0.is_nilpotent() {
            count += 1;
        }
    }
    Ok(count)
}

/// All dimension vectors `d <= dims`, in lexicographic order.
pub fn dimension_vectors_below(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in dims {
        out = out.into_iter().flat_map(|p| (0..=n).map(move |k| {
            let mut q = p.clone();
            q.push(k);
            q
        })).collect();
    }
    out
}

/// The preimage `N` of `X ⊆ CK M` in `K_R M`. Checks that `N` is stable, restricts
/// to `M`, and has dimension vector `dims K_LR M + dims X`.
pub fn fiber_pullback<F: Field, R: Rng>(rc: &Recollement<F>, m: &Module<F>, k: &KanResult<F>, x: &[Subspace<F>], rng: &mut R) -> Result<Module<F>> {
    if !k.ck.is_submodule(x) {
        return Err(Error::Input("X is not a submodule of CK(M)".into()));
    }
    let pre: Vec<Subspace<F>> = x.iter().zip(&k.ck_projection.mats).map(|(u, p)| u.preimage(p)).collect();
    let (n, _) = k.right.submodule(&pre)?;
    for (o, u) in x.iter().enumerate() {
        if n.dims[o] != k.klr.dims[o] + u.dim() {
            return Err(Error::Inconsistent(format!("pullback has the wrong dimension at object {o}")));
        }
    }
    if !rc.is_stable(&n)? {
        return Err(Error::Inconsistent("pullback is not stable".into()));
    }
    if !is_iso(&rc.restrict(&n)?, m, rng) {
        return Err(Error::Inconsistent("pullback does not restrict to M".into()));
    }
    Ok(n)
}

fn on_r_objects<F: Field>(nk: &Nakajima<F>, v: &[usize]) -> Vec<usize> {
    let mut d = vec![0; nk.r.len()];
    for (i, &x) in nk.unfrozen.iter().enumerate() {
        d[x] = v[i];
    }
    d
}

/// Points of the fiber over `M` in the stratum `v` (indexed by objects of P):
/// submodules of `CK M` of dimension `v - v0`, each certified through [`fiber_pullback`].
/// Returns 0 when `v` is not above the stratum `v0` of `M`.
pub fn fiber_count<F: Field, R: Rng>(nk: &Nakajima<F>, rc: &Recollement<F>, m: &Module<F>, v: &[usize], rng: &mut R) -> Result<usize> {
    let k = rc.kan(m)?;
    let v0: Vec<usize> = nk.unfrozen.iter().map(|&x| k.klr.dims[x]).collect();
    if v.len() != v0.len() {
        return Err(Error::Mismatch(format!("stratum vector of length {} for {} objects", v.len(), v0.len())));
    }
    if v.iter().zip(&v0).any(|(a, b)| a < b) {
        return Ok(0);
    }
    let diff: Vec<usize> = v.iter().zip(&v0).map(|(a, b)| a - b).collect();
    let list = enumerate_subreps(&k.ck, &on_r_objects(nk, &diff))?;
    for x in &list.subreps {
        fiber_pullback(rc, m, &k, x, rng)?;
    }
    Ok(list.count())
}

/// The same fiber counted without `CK`: stable submodules of `K_R M` that are all of
/// `M` on frozen objects and have dimension `v` elsewhere.
pub fn direct_fiber_count<F: Field>(nk: &Nakajima<F>, rc: &Recollement<F>, m: &Module<F>, v: &[usize]) -> Result<usize> {
    let k = rc.kan(m)?;
    let mut d = on_r_objects(nk, v);
    for &f in &nk.frozen {
        d[f] = k.right.dims[f];
    }
    let list = enumerate_subreps(&k.right, &d)?;
    let mut count = 0;
    for spaces in &list.subreps {
        if rc.is_stable(&k.right.submodule(spaces)?.0)? {
            count += 1;
        }
    }
    Ok(count)
}

/// `I_w = ⊕_x (x^∨)^{w(σx)}` over P, for `w` indexed by objects of S.
pub fn injective_hull<F: Field>(nk: &Nakajima<F>, w: &[usize]) -> Result<Module<F>> {
    let mut out = Module::zero(nk.p_pres.clone());
    for (s, &k) in w.iter().enumerate() {
        if k > 0 {
            let x = nk.config_object(s)?;
            out = out.direct_sum(&cofree_module(nk.p_pres.clone(), x, nk.p_top())?.power(k));
        }
    }
    Ok(out)
}

/// Points of the ℒ-variety `ℒ(v, w)`, counted as `Gr_v(I_w)`. Each point is also
/// realised as a pullback over the semisimple S-module `s_w` and checked: nilpotent,
/// and every arrow into a frozen object acts by zero. The two counts must agree.
pub fn l_variety_count<F: Field, R: Rng>(nk: &Nakajima<F>, rc: &Recollement<F>, v: &[usize], w: &[usize], rng: &mut R) -> Result<usize> {
    let count = gr_count(&injective_hull(nk, w)?, v)?;
    let mats = nk.s_pres.arrows.iter().map(|a| Matrix::zeros(w[a.source], w[a.target])).collect();
    let sw = Module::new(nk.s_pres.clone(), w.to_vec(), mats)?;
    let k = rc.kan(&sw)?;
    let list = enumerate_subreps(&k.ck, &on_r_objects(nk, v))?;
    for x in &list.subreps {
        let n = fiber_pullback(rc, &sw, &k, x, rng)?;
        if !n.is_nilpotent() {
            return Err(Error::Inconsistent("ℒ-variety point is not nilpotent".into()));
        }
        if rc.restrict(&n)?.mats.iter().any(|m| !m.is_zero()) {
            return Err(Error::Inconsistent("ℒ-variety point does not restrict to a semisimple module".into()));
        }
        for (a, m) in nk.r_pres.arrows.iter().zip(&n.mats) {
            if nk.frozen.contains(&a.target) && !m.is_zero() {
                return Err(Error::Inconsistent(format!("arrow {} into a frozen object acts nontrivially", a.label)));
            }
        }
    }
    if list.count() != count {
        return Err(Error::Inconsistent(format!("Gr_v(I_w) has {count} points but the pullback side has {}", list.count())));
    }
    Ok(count)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TangentReport {
    pub stable: bool,
    pub rank: usize,
    pub codomain_dim: usize,
    pub surjective: bool,
}

/// Rank of the differential at `N` of the map sending a representation of the quiver of R
/// to the values of the relations of R. Surjectivity means `N` is a smooth point.
pub fn tangent_surjectivity_check<F: Field>(rc: &Recollement<F>, n: &Module<F>) -> Result<TangentReport> {
    let pres = &n.pres;
    let dims = &n.dims;
    let mut col_of = Vec::new();
    let mut domain = 0;
    for a in &pres.arrows {
        col_of.push(domain);
        domain += dims[a.source] * dims[a.target];
    }
    let mut row_of = Vec::new();
    let mut codomain = 0;
    for r in &pres.relations {
        row_of.push(codomain);
        codomain += dims[r.source] * dims[r.target];
    }
    let mut jac = Matrix::zeros(codomain, domain);
    for (ri, r) in pres.relations.iter().enumerate() {
        let cols_r = dims[r.target];
        for (c, word) in &r.terms {
            let mut at = r.source;
            for (pos, &ai) in word.iter().enumerate() {
                let a = &pres.arrows[ai];
                let left = n.word(&word[..pos], r.source);
                let right = n.word(&word[pos + 1..], a.target);
                // d(word) at E_{ij} in arrow `ai` is c * left[:, i] * right[j, :]
                for i in 0..dims[a.source] {
                    for j in 0..dims[a.target] {
                        let col = col_of[ai] + i * dims[a.target] + j;
                        for p in 0..dims[r.source] {
                            let l = left.get(p, i);
                            if l.is_zero() {
                                continue;
                            }
                            for q in 0..cols_r {
                                let rv = right.get(j, q);
                                if !rv.is_zero() {
                                    jac.add_at(row_of[ri] + p * cols_r + q, col, &c.mul(&l.mul(rv)));
                                }
                            }
                        }
                    }
                }
                at = a.target;
            }
            debug_assert_eq!(at, r.target);
        }
    }
    let rank = jac.rank();
    Ok(TangentReport { stable: rc.is_stable(n)?, rank, codomain_dim: codomain, surjective: rank == codomain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::PathCategory;
    use crate::field::Fp;
    use crate::present::Presentation;
    use std::sync::Arc;

    type F2 = Fp<2>;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1, 2), 3);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 0, 5), 1);
        assert_eq!(subspaces::<F2>(4, 2).unwrap().len(), 35);
        assert_eq!(subspaces::<Fp<3>>(3, 1).unwrap().len(), 13);
    }

    #[test]
    fn lines_in_a_plane() {
        let cat = Arc::new(PathCategory::new(1, vec![]).unwrap());
        let pres = Arc::new(Presentation::<F2>::new(cat, 1).unwrap());
        let m = Module::new(pres, vec![2], vec![]).unwrap();
        assert_eq!(gr_count(&m, &[1]).unwrap(), 3);
        assert_eq!(gr_count(&m, &[0]).unwrap(), 1);
        assert_eq!(gr_count(&m, &[2]).unwrap(), 1);
    }

    #[test]
    fn arrows_prune_subspaces() {
        // 0 -> 1 with an isomorphism k^2 -> k^2: submodules are pairs (U, U') with M(α)U' ⊆ U
        let cat = Arc::new(PathCategory::new(2, vec![(0, 1)]).unwrap());
        let pres = Arc::new(Presentation::<F2>::new(cat, 1).unwrap());
        let m = Module::new(pres, vec![2, 2], vec![Matrix::identity(2)]).unwrap();
        // U' = 0 and U a line: 3; U' a line contained in U a line: 3
        assert_eq!(gr_count(&m, &[1, 0]).unwrap(), 3);
        assert_eq!(gr_count(&m, &[1, 1]).unwrap(), 3);
        assert_eq!(gr_count(&m, &[0, 1]).unwrap(), 0);
        assert_eq!(dimension_vectors_below(&m.dims).len(), 9);
    }
}
