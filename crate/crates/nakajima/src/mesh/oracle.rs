//! Hom dimensions in the derived category of a Dynkin quiver, computed from
//! explicit representations.
//!
//! Indecomposables are placed on the repetition quiver by walking
//! τ-orbits from the projectives with the Coxeter transformation, jumping to
//! `Σ P_j` after the injective `I_j`. Each indecomposable is realised as a
//! random representation with its dimension vector that is certified to be a
//! brick. Hom and Ext¹ come from the standard two-term complex.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Q};
use crate::linalg::Matrix;
use crate::quiver::{DynkinQuiver, ZVertex};

type Dims = Vec<i64>;

/// A representation of the opposite quiver (so projectives sit at level 0 of `ZQ`).
#[derive(Clone, Debug)]
struct Rep {
    dims: Vec<usize>,
    /// Keyed by arrow index of the opposite quiver.
    maps: Vec<Matrix<Q>>,
}

pub struct DerivedOracle {
    n: usize,
    /// Arrows `u -> v` of the opposite quiver.
    arrows: Vec<(usize, usize)>,
    projective: Vec<Dims>,
    injective: Vec<Dims>,
    coxeter: Matrix<Q>,
    coxeter_inv: Matrix<Q>,
    bricks: Mutex<HashMap<Dims, Rep>>,
}

fn reach(n: usize, arrows: &[(usize, usize)], from: usize) -> Vec<i64> {
    let mut seen = vec![0; n];
    let mut stack = vec![from];
    seen[from] = 1;
    while let Some(v) = stack.pop() {
        for &(s, t) in arrows {
            if s == v && seen[t] == 0 {
                seen[t] = 1;
                stack.push(t);
            }
        }
    }
    seen
}

impl DerivedOracle {
    pub fn new(q: &DynkinQuiver) -> DerivedOracle {
        let n = q.rank();
        let arrows: Vec<(usize, usize)> = q.arrows().iter().map(|&(s, t)| (t, s)).collect();
        let projective = (0..n).map(|i| reach(n, &arrows, i)).collect();
        let reversed: Vec<(usize, usize)> = arrows.iter().map(|&(s, t)| (t, s)).collect();
        let injective = (0..n).map(|i| reach(n, &reversed, i)).collect();
        // Euler form matrix E = I - A; Coxeter Φ = -E^{-1} E^T.
        let mut e = Matrix::<Q>::identity(n);
        for &(s, t) in &arrows {
            e.add_at(s, t, &Q::from_i64(-1));
        }
        let e_inv = e.inverse().expect("Euler matrix of a tree quiver is unimodular");
        let coxeter = e_inv.mul(&e.transpose()).scale(&Q::from_i64(-1));
        let coxeter_inv = coxeter.inverse().expect("Coxeter matrix invertible");
        DerivedOracle { n, arrows, projective, injective, coxeter, coxeter_inv, bricks: Mutex::new(HashMap::new()) }
    }

    fn apply(&self, m: &Matrix<Q>, d: &Dims) -> Dims {
        let v: Vec<Q> = d.iter().map(|&x| Q::from_i64(x)).collect();
        m.mul_vec(&v)
            .into_iter()
            .map(|x| {
                x.to_i64().expect("Coxeter image is a small integer")
            })
            .collect()
    }

    pub fn projective_dims(&self, i: usize) -> &[i64] {
        &self.projective[i]
    }

    pub fn injective_dims(&self, i: usize) -> &[i64] {
        &self.injective[i]
    }

    pub fn coxeter_apply(&self, d: &[i64]) -> Vec<i64> {
        self.apply(&self.coxeter, &d.to_vec())
    }

    /// `(shift, dimension vector)` of the complex at a non-frozen vertex.
    pub fn place(&self, v: ZVertex) -> (i32, Dims) {
        let mut shift = 0;
        let mut d = self.projective[v.base].clone();
        if v.level >= 0 {
            for _ in 0..v.level {
                match self.injective.iter().position(|x| *x == d) {
                    Some(j) => {
                        shift += 1;
                        d = self.projective[j].clone();
                    }
                    None => d = self.apply(&self.coxeter_inv, &d),
                }
            }
        } else {
            for _ in 0..(-v.level) {
                match self.projective.iter().position(|x| *x == d) {
                    Some(j) => {
                        shift -= 1;
                        d = self.injective[j].clone();
                    }
                    None => d = self.apply(&self.coxeter, &d),
                }
            }
        }
        assert!(d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0), "knitting left the positive roots");
        (shift, d)
    }

    fn complex(&self, m: &Rep, n: &Rep) -> Matrix<Q> {
        // δ(φ) = (N_a φ_u - φ_v M_a)_a
        let offs: Vec<usize> = (0..self.n)
            .scan(0, |acc, i| {
                let o = *acc;
                *acc += m.dims[i] * n.dims[i];
                Some(o)
            })
            .collect();
        let unknowns: usize = (0..self.n).map(|i| m.dims[i] * n.dims[i]).sum();
        let rows: usize = self.arrows.iter().map(|&(u, v)| m.dims[u] * n.dims[v]).sum();
        let mut delta = Matrix::zeros(rows, unknowns);
        let mut r0 = 0;
        for (a, &(u, v)) in self.arrows.iter().enumerate() {
            // entry (p, q) of Hom(M_u, N_v): p < n_v, q < m_u
            for p in 0..n.dims[v] {
                for qq in 0..m.dims[u] {
                    let row = r0 + p * m.dims[u] + qq;
                    // (N_a φ_u)_{p q} = Σ_k N_a[p,k] φ_u[k,q]
                    for k in 0..n.dims[u] {
                        let c = n.maps[a].get(p, k);
                        if !c.is_zero() {
                            delta.add_at(row, offs[u] + k * m.dims[u] + qq, c);
                        }
                    }
                    // (φ_v M_a)_{p q} = Σ_k φ_v[p,k] M_a[k,q]
                    for k in 0..m.dims[v] {
                        let c = m.maps[a].get(k, qq);
                        if !c.is_zero() {
                            delta.add_at(row, offs[v] + p * m.dims[v] + k, &c.neg());
                        }
                    }
                }
            }
            r0 += m.dims[u] * n.dims[v];
        }
        delta
    }

    fn hom_ext(&self, m: &Rep, n: &Rep) -> (usize, usize) {
        let delta = self.complex(m, n);
        let r = delta.rank();
        (delta.cols() - r, delta.rows() - r)
    }

    fn brick(&self, d: &Dims) -> Rep {
        if let Some(r) = self.bricks.lock().expect("oracle cache poisoned").get(d) {
            return r.clone();
        }
        let dims: Vec<usize> = d.iter().map(|&x| x as usize).collect();
        let seed = d.iter().fold(17u64, |acc, &x| acc.wrapping_mul(31).wrapping_add(x as u64));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let maps = self
                .arrows
                .iter()
                .map(|&(u, v)| {
                    let mut m = Matrix::zeros(dims[v], dims[u]);
                    for i in 0..dims[v] {
                        for j in 0..dims[u] {
                            m.set(i, j, Q::random(&mut rng));
                        }
                    }
                    m
                })
                .collect();
            let rep = Rep { dims: dims.clone(), maps };
            if self.hom_ext(&rep, &rep).0 == 1 {
                self.bricks.lock().expect("oracle cache poisoned").insert(d.clone(), rep.clone());
                return rep;
            }
        }
        panic!("no brick found with dimension vector {d:?}");
    }

    /// `dim Hom(Σ^a M, Σ^b N)` for the complexes at `x` and `y`.
    pub fn dim_hom(&self, x: ZVertex, y: ZVertex) -> usize {
        let (a, dm) = self.place(x);
        let (b, dn) = self.place(y);
        let (m, n) = (self.brick(&dm), self.brick(&dn));
        match b - a {
            0 => self.hom_ext(&m, &n).0,
            1 => self.hom_ext(&m, &n).1,
            _ => 0,
        }
    }
}

/// Hom dimension in the derived category between the objects at two non-frozen vertices.
pub fn oracle_dim_hom(q: &DynkinQuiver, x: ZVertex, y: ZVertex) -> usize {
    DerivedOracle::new(q).dim_hom(x, y)
}
