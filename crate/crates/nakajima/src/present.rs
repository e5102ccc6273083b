//! Quivers with relations for graded categories: arrows as the complement of
//! the square of the radical, a basis of monomials for every graded piece,
//! and minimal relations read off from the second term of the minimal
//! resolutions of the simples.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::category::{Cat, Morphism, Opposite};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::resolve::{kernel_piece, min_generators, Element, Free, FreeMap};

#[derive(Clone, Debug)]
pub struct Arrow<F> {
    pub source: usize,
    pub target: usize,
    pub degree: u32,
    pub morphism: Morphism<F>,
    pub label: String,
}

/// A word is a list of arrow indices in travel order.
pub type Word = Vec<usize>;

/// `Σ c · word = 0` in the category; every word runs `source -> target`.
#[derive(Clone, Debug)]
pub struct Relation<F> {
    pub source: usize,
    pub target: usize,
    pub degree: u32,
    pub terms: Vec<(F, Word)>,
}

/// Monomial basis of one graded piece.
pub struct WordBlock<F> {
    pub words: Vec<Word>,
    /// Value of each word in the basis of the Hom space.
    pub values: Vec<Vec<F>>,
    /// Column `k` expresses basis element `k` of the Hom space in `words`.
    pub to_words: Matrix<F>,
}

pub struct Presentation<F> {
    pub cat: Cat<F>,
    pub arrows: Vec<Arrow<F>>,
    pub relations: Vec<Relation<F>>,
    /// Degree up to which arrows and relations were searched.
    pub bound: u32,
    blocks: RwLock<HashMap<(usize, usize, u32), Arc<WordBlock<F>>>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counts {
    /// `arrows[a][b]`: number of arrows `a -> b`.
    pub arrows: Vec<Vec<usize>>,
    pub relations: Vec<Vec<usize>>,
    pub arrow_degrees: Vec<u32>,
    pub relation_degrees: Vec<u32>,
}

/// Arrows of `cat` in degrees `1..=bound`.
pub fn find_arrows<F: Field>(cat: &Cat<F>, bound: u32) -> Result<Vec<Arrow<F>>> {
    let n = cat.len();
    let bound = cat.generator_bound().map_or(bound, |g| g.min(bound));
    let mut arrows: Vec<Arrow<F>> = Vec::new();
    for d in 1..=bound {
        let mut fresh = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let dim = cat.dim(a, b, d)?;
                if dim == 0 {
                    continue;
                }
                let mut rad2 = Subspace::zero(dim);
                for al in &arrows {
                    if al.target != b || al.degree >= d {
                        continue;
                    }
                    let k = cat.dim(a, al.source, d - al.degree)?;
                    for i in 0..k {
                        let f = Morphism::basis(a, al.source, d - al.degree, k, i);
                        rad2.insert(&cat.compose(&f, &al.morphism)?.coeffs);
                    }
                }
                for (k, pos) in rad2.free_positions().into_iter().enumerate() {
                    let label = format!("{}{}", cat.basis_label(a, b, d, pos), if k > 0 { format!("#{k}") } else { String::new() });
                    fresh.push(Arrow { source: a, target: b, degree: d, morphism: Morphism::basis(a, b, d, dim, pos), label });
                }
            }
        }
        arrows.extend(fresh);
    }
    Ok(arrows)
}

impl<F: Field> Presentation<F> {
    pub fn new(cat: Cat<F>, bound: u32) -> Result<Self> {
        let arrows = find_arrows(&cat, bound)?;
        Self::with_arrows(cat, arrows, bound)
    }

    /// Uses the given arrows; they must generate the category.
    pub fn with_arrows(cat: Cat<F>, arrows: Vec<Arrow<F>>, bound: u32) -> Result<Self> {
        let mut p = Presentation { cat, arrows, relations: Vec::new(), bound, blocks: RwLock::new(HashMap::new()) };
        let n = p.cat.len();
        let mut rels = Vec::new();
        for b in 0..n {
            rels.extend(p.relations_into(b)?);
        }
        rels.sort_by_key(|r| (r.degree, r.source, r.target));
        p.relations = rels;
        // every graded piece must be spanned by words
        for a in 0..n {
            for b in 0..n {
                for d in 0..=bound {
                    p.block(a, b, d)?;
                }
            }
        }
        Ok(p)
    }

    /// The free module on the arrows ending at `b`, with its map onto the radical of `b^∧`.
    pub fn arrow_cover(&self, b: usize) -> (Vec<usize>, FreeMap<F>) {
        let all: Vec<usize> = (0..self.cat.len()).collect();
        let into: Vec<usize> = (0..self.arrows.len()).filter(|&i| self.arrows[i].target == b).collect();
        let top = Free::new(self.cat.clone(), all.clone(), vec![(b, 0)]);
        let dom = Free::new(self.cat.clone(), all, into.iter().map(|&i| (self.arrows[i].source, self.arrows[i].degree)).collect());
        let images = into
            .iter()
            .map(|&i| {
                let al = &self.arrows[i];
                Element { obj: al.source, degree: al.degree, coords: al.morphism.coeffs.clone() }
            })
            .collect();
        (into, FreeMap { domain: dom, codomain: top, images })
    }

    fn relations_into(&self, b: usize) -> Result<Vec<Relation<F>>> {
        let (into, cover) = self.arrow_cover(b);
        let gens = min_generators(&cover.domain, self.bound, |s, d| kernel_piece(&cover, s, d))?;
        let mut out = Vec::new();
        for g in gens {
            let mut terms: Vec<(F, Word)> = Vec::new();
            for (j, &ai) in into.iter().enumerate() {
                if let Some(r) = cover.domain.component(&g, j)? {
                    for (c, mut w) in self.express(&r)? {
                        w.push(ai);
                        terms.push((c, w));
                    }
                }
            }
            out.push(Relation { source: g.obj, target: b, degree: g.degree, terms });
        }
        Ok(out)
    }

    /// Monomial basis of `C(a, b)_d`.
    pub fn block(&self, a: usize, b: usize, d: u32) -> Result<Arc<WordBlock<F>>> {
        if let Some(bl) = self.blocks.read().expect("cache poisoned").get(&(a, b, d)) {
            return Ok(bl.clone());
        }
        let dim = self.cat.dim(a, b, d)?;
        let mut words = Vec::new();
        let mut values: Vec<Vec<F>> = Vec::new();
        if dim > 0 {
            if d == 0 {
                words.push(Vec::new());
                values.push(vec![F::one()]);
            } else {
                let mut span = Subspace::zero(dim);
                'outer: for (ai, al) in self.arrows.iter().enumerate() {
                    if al.target != b || al.degree > d {
                        continue;
                    }
                    let lower = self.block(a, al.source, d - al.degree)?;
                    for (k, w) in lower.words.iter().enumerate() {
                        let m = Morphism { source: a, target: al.source, degree: d - al.degree, coeffs: lower.values[k].clone() };
                        let v = self.cat.compose(&m, &al.morphism)?.coeffs;
                        if span.insert(&v) {
                            let mut w = w.clone();
                            w.push(ai);
                            words.push(w);
                            values.push(v);
                            if span.dim() == dim {
                                break 'outer;
                            }
                        }
                    }
                }
                if span.dim() < dim {
                    return Err(Error::Inconsistent(format!("arrows do not generate C({a},{b}) in degree {d}; raise the bound")));
                }
            }
        }
        let to_words = if dim == 0 {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_columns(dim, &values).inverse().ok_or_else(|| Error::Inconsistent("monomials dependent".into()))?
        };
        let bl = Arc::new(WordBlock { words, values, to_words });
        self.blocks.write().expect("cache poisoned").insert((a, b, d), bl.clone());
        Ok(bl)
    }

    /// A morphism written as a combination of words.
    pub fn express(&self, f: &Morphism<F>) -> Result<Vec<(F, Word)>> {
        let bl = self.block(f.source, f.target, f.degree)?;
        if bl.words.is_empty() {
            return Ok(Vec::new());
        }
        let c = bl.to_words.mul_vec(&f.coeffs);
        Ok(c.into_iter().zip(bl.words.iter().cloned()).filter(|(x, _)| !x.is_zero()).collect())
    }

    /// Value of a word in the category.
    pub fn evaluate(&self, w: &[usize], source: usize) -> Result<Morphism<F>> {
        let mut cur = Morphism::identity(source);
        for &i in w {
            cur = self.cat.compose(&cur, &self.arrows[i].morphism)?;
        }
        Ok(cur)
    }

    pub fn counts(&self) -> Counts {
        let n = self.cat.len();
        let mut arrows = vec![vec![0; n]; n];
        let mut relations = vec![vec![0; n]; n];
        for a in &self.arrows {
            arrows[a.source][a.target] += 1;
        }
        for r in &self.relations {
            relations[r.source][r.target] += 1;
        }
        Counts {
            arrows,
            relations,
            arrow_degrees: self.arrows.iter().map(|a| a.degree).collect(),
            relation_degrees: self.relations.iter().map(|r| r.degree).collect(),
        }
    }

    /// `table[a][b][d] = dim C(a, b)_d` for `d <= max_deg`.
    pub fn hilbert(&self, max_deg: u32) -> Result<Vec<Vec<Vec<usize>>>> {
        let n = self.cat.len();
        (0..n).map(|a| (0..n).map(|b| (0..=max_deg).map(|d| self.cat.dim(a, b, d)).collect()).collect()).collect()
    }

    /// The same presentation for the opposite category, arrows reversed.
    pub fn opposite(&self) -> Result<Presentation<F>> {
        let cat: Cat<F> = Arc::new(Opposite { inner: self.cat.clone() });
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                source: a.target,
                target: a.source,
                degree: a.degree,
                morphism: Morphism { source: a.target, target: a.source, degree: a.degree, coeffs: a.morphism.coeffs.clone() },
                label: format!("{}*", a.label),
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                source: r.target,
                target: r.source,
                degree: r.degree,
                terms: r.terms.iter().map(|(c, w)| (c.clone(), w.iter().rev().copied().collect())).collect(),
            })
            .collect();
        Ok(Presentation { cat, arrows, relations, bound: self.bound, blocks: RwLock::new(HashMap::new()) })
    }

    /// Highest degree in which an arrow or a relation was found.
    pub fn last_generator_degree(&self) -> u32 {
        let a = self.arrows.iter().map(|a| a.degree).max().unwrap_or(0);
        let r = self.relations.iter().map(|r| r.degree).max().unwrap_or(0);
        a.max(r)
    }

    pub fn relation_label(&self, r: &Relation<F>) -> String {
        let word = |w: &Word| -> String {
            if w.is_empty() {
                "1".into()
            } else {
                w.iter().map(|&i| self.arrows[i].label.clone()).collect::<Vec<_>>().join("·")
            }
        };
        r.terms.iter().map(|(c, w)| format!("{c}·{}", word(w))).collect::<Vec<_>>().join(" + ")
    }
}
