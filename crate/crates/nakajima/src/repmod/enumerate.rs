//! All modules with a given dimension vector over a small finite field, one per
//! isomorphism class, by sweeping the orbits of the base-change group.

use std::sync::Arc;

use super::Module;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::present::Presentation;

/// Largest number of arrow-matrix tuples that may be swept.
pub const TUPLE_GUARD: usize = 1 << 24;

fn invertible_matrices<F: Field>(n: usize, elems: &[F]) -> Vec<(Matrix<F>, Matrix<F>)> {
    let q = elems.len();
    let total = q.pow((n * n) as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let m = decode_matrix(code, n, n, elems);
        if let Some(inv) = m.inverse() {
            out.push((m, inv));
        }
    }
    out
}

fn decode_matrix<F: Field>(mut code: usize, rows: usize, cols: usize, elems: &[F]) -> Matrix<F> {
    let q = elems.len();
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, elems[code % q].clone());
            code /= q;
        }
    }
    m
}

/// Isomorphism class representatives of modules with dimension vector `dims`.
pub fn iso_classes<F: Field>(pres: &Arc<Presentation<F>>, dims: &[usize]) -> Result<Vec<Module<F>>> {
    let elems = F::elements().ok_or_else(|| Error::Input("module enumeration needs a finite field".into()))?;
    let q = elems.len();
    let shapes: Vec<(usize, usize)> = pres.arrows.iter().map(|a| (dims[a.source], dims[a.target])).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let total = q.checked_pow(entries as u32).filter(|&t| t <= TUPLE_GUARD).ok_or_else(|| {
        Error::ResourceGuard(format!("{q}^{entries} arrow-matrix tuples for dimension vector {dims:?}"))
    })?;
    let index = |x: &F| elems.iter().position(|e| e == x).expect("element of the field");
    let encode = |mats: &[Matrix<F>]| -> usize {
        let mut code = 0;
        let mut scale = 1;
        for m in mats {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    code += scale * index(m.get(i, j));
                    scale *= q;
                }
            }
        }
        code
    };
    let decode = |mut code: usize| -> Vec<Matrix<F>> {
        shapes
            .iter()
            .map(|&(r, c)| {
                let m = decode_matrix(code, r, c, &elems);
                code /= q.pow((r * c) as u32);
                m
            })
            .collect()
    };
    let groups: Vec<Vec<(Matrix<F>, Matrix<F>)>> = dims.iter().map(|&n| invertible_matrices(n, &elems)).collect();
    let mut seen = vec![false; total];
    let mut reps = Vec::new();
    for code in 0..total {
        if seen[code] {
            continue;
        }
        let mats = decode(code);
        let Ok(m) = Module::new(pres.clone(), dims.to_vec(), mats) else {
            seen[code] = true;
            continue;
        };
        // mark the whole orbit
        let mut pick = vec![0usize; dims.len()];
        loop {
            let moved: Vec<Matrix<F>> = pres
                .arrows
                .iter()
                .zip(&m.mats)
                .map(|(a, x)| groups[a.source][pick[a.source]].0.mul(x).mul(&groups[a.target][pick[a.target]].1))
                .collect();
            seen[encode(&moved)] = true;
            let mut i = 0;
            while i < pick.len() {
                pick[i] += 1;
                if pick[i] < groups[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
        reps.push(m);
    }
    Ok(reps)
}

/// Representatives of all nonzero modules of total dimension at most `max_total`.
pub fn iso_classes_upto<F: Field>(pres: &Arc<Presentation<F>>, max_total: usize) -> Result<Vec<Module<F>>> {
    let n = pres.cat.len();
    let mut out = Vec::new();
    let mut dims = vec![0; n];
    loop {
        let t: usize = dims.iter().sum();
        if t > 0 && t <= max_total {
            out.extend(iso_classes(pres, &dims)?);
        }
        // next dimension vector with entries <= max_total
        let mut i = 0;
        while i < n {
            dims[i] += 1;
            if dims[i] <= max_total {
                break;
            }
            dims[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(out);
        }
    }
}
