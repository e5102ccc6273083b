//! Seeded random modules: truncated projectives and injectives, their
//! quotients and submodules, direct sums, and a random change of basis.

use std::sync::Arc;

use rand::Rng;

use super::{cofree_module, free_module, Module, ModuleMap};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::present::Presentation;

fn random_vector<F: Field, R: Rng>(n: usize, rng: &mut R) -> Vec<F> {
    (0..n).map(|_| F::random(rng)).collect()
}

/// Random invertible matrix.
pub fn random_invertible<F: Field, R: Rng>(n: usize, rng: &mut R) -> Matrix<F> {
    loop {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, F::random(rng));
            }
        }
        if m.is_invertible() {
            return m;
        }
    }
}

/// Submodule generated by `count` random elements.
pub fn random_submodule<F: Field, R: Rng>(m: &Module<F>, count: usize, rng: &mut R) -> Vec<Subspace<F>> {
    let mut spaces: Vec<Subspace<F>> = m.dims.iter().map(|&d| Subspace::zero(d)).collect();
    let support = m.support();
    for _ in 0..count {
        if support.is_empty() {
            break;
        }
        let x = support[rng.gen_range(0..support.len())];
        spaces[x].insert(&random_vector(m.dims[x], rng));
    }
    m.closure(spaces)
}

/// One indecomposable-looking piece: a truncated projective or injective, cut down.
fn piece<F: Field, R: Rng>(pres: &Arc<Presentation<F>>, max_total: usize, rng: &mut R) -> Result<Module<F>> {
    let n = pres.cat.len();
    for _ in 0..64 {
        let x = rng.gen_range(0..n);
        let top = rng.gen_range(0..=pres.bound.min(8));
        let base = if rng.gen_bool(0.5) { free_module(pres.clone(), x, top)? } else { cofree_module(pres.clone(), x, top)? };
        let cut = if rng.gen_bool(0.6) {
            let sub = random_submodule(&base, rng.gen_range(1..=2), rng);
            if rng.gen_bool(0.7) {
                base.quotient(&sub)?.0
            } else {
                base.submodule(&sub)?.0
            }
        } else {
            base
        };
        if !cut.is_zero() && cut.total_dim() <= max_total {
            return Ok(cut);
        }
    }
    Ok(Module::simple(pres.clone(), rng.gen_range(0..n)))
}

/// A random nonzero module of total dimension at most `max_total`.
pub fn random_module<F: Field, R: Rng>(pres: &Arc<Presentation<F>>, max_total: usize, rng: &mut R) -> Result<Module<F>> {
    let mut m = piece(pres, max_total, rng)?;
    while m.total_dim() < max_total && rng.gen_bool(0.4) {
        let extra = piece(pres, max_total - m.total_dim(), rng)?;
        if m.total_dim() + extra.total_dim() > max_total {
            break;
        }
        m = m.direct_sum(&extra);
    }
    let g = ModuleMap { mats: m.dims.iter().map(|&d| random_invertible(d, rng)).collect() };
    m.transport(&g)
}
