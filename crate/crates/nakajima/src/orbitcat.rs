//! The categories R, S and P of an admissible pair, with their presentations
//! and the structural checks run on them.

use std::sync::Arc;

use serde::Serialize;

use crate::category::{Cached, Cat, FullSub, Morphism, Opposite, OrbitCategory};
use crate::resolve::resolve_simple;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::mesh::MeshCategory;
use crate::present::{Counts, Presentation};
use crate::quiver::{Configuration, FramedRepetition, ZVertex};
use crate::repmod::{cofree_module, free_module, is_iso, Module};
use rand::Rng;

/// R, S and P for one pair `(C, F)`.
pub struct Nakajima<F> {
    pub zq: FramedRepetition,
    pub mesh: Arc<MeshCategory<F>>,
    pub r_orbit: Arc<OrbitCategory<F>>,
    pub p_orbit: Arc<OrbitCategory<F>>,
    pub r: Cat<F>,
    pub s: Cat<F>,
    pub p: Cat<F>,
    pub r_pres: Arc<Presentation<F>>,
    pub s_pres: Arc<Presentation<F>>,
    pub p_pres: Arc<Presentation<F>>,
    /// Objects of R that make up S, in S order.
    pub frozen: Vec<usize>,
    /// Objects of R that make up P, in P order.
    pub unfrozen: Vec<usize>,
    /// Degree up to which presentations over S were searched.
    pub bound: u32,
}

/// Degree bound that has been enough for every example tried: `3h + 3`.
pub fn default_bound(h: i32) -> u32 {
    (3 * h + 3) as u32
}

impl<F: Field> Nakajima<F> {
    pub fn build(zq: FramedRepetition, bound: Option<u32>) -> Result<Self> {
        let h = zq.quiver.coxeter_number();
        let bound = bound.unwrap_or_else(|| default_bound(h));
        let mesh = Arc::new(MeshCategory::new(zq.clone()));
        let r_orbit = Arc::new(OrbitCategory::new(mesh.clone(), true, "R")?);
        let r: Cat<F> = Cached::wrap(r_orbit.clone());
        let objs = r.objects();
        let frozen: Vec<usize> = (0..objs.len()).filter(|&i| objs[i].frozen).collect();
        let unfrozen: Vec<usize> = (0..objs.len()).filter(|&i| !objs[i].frozen).collect();
        let s: Cat<F> = Arc::new(FullSub::new(r.clone(), frozen.clone(), "S"));

        let plain = FramedRepetition { config: Configuration::OrbitReps(Vec::new()), ..zq.clone() };
        let p_mesh = Arc::new(MeshCategory::new(plain));
        let p_orbit = Arc::new(OrbitCategory::new(p_mesh, false, "P")?);
        let p: Cat<F> = Cached::wrap(p_orbit.clone());
        if p.len() != unfrozen.len() {
            return Err(Error::Inconsistent("P and the non-frozen part of R disagree".into()));
        }
        let p_top = p.top_degree().ok_or_else(|| Error::ResourceGuard("P is not finite-dimensional".into()))?;

        let r_pres = Arc::new(Presentation::new(r.clone(), 3)?);
        let s_pres = Arc::new(Presentation::new(s.clone(), bound)?);
        let p_pres = Arc::new(Presentation::new(p.clone(), p_top + 1)?);
        Ok(Nakajima { zq, mesh, r_orbit, p_orbit, r, s, p, r_pres, s_pres, p_pres, frozen, unfrozen, bound })
    }

    pub fn coxeter_number(&self) -> i32 {
        self.zq.quiver.coxeter_number()
    }

    /// Top degree of P.
    pub fn p_top(&self) -> u32 {
        self.p.top_degree().unwrap_or(0)
    }

    pub fn presentation(&self, target: Target) -> &Arc<Presentation<F>> {
        match target {
            Target::R => &self.r_pres,
            Target::S => &self.s_pres,
            Target::P => &self.p_pres,
        }
    }

    /// The vertex of ZQ representing object `i` of P.
    pub fn p_vertex(&self, i: usize) -> ZVertex {
        self.p_orbit.reps[i]
    }

    /// Object of P whose orbit contains the non-frozen vertex `v`.
    pub fn p_object(&self, v: ZVertex) -> Result<usize> {
        self.p_orbit.locate(v).map(|(i, _)| i).ok_or_else(|| Error::Input(format!("{v} is not an object of P")))
    }

    /// Object of S equal to `σ` of the P object `i`, if `i` lies in the configuration.
    pub fn sigma_object(&self, i: usize) -> Option<usize> {
        let v = self.p_vertex(i).sigma();
        let (j, _) = self.r_orbit.locate(v)?;
        self.frozen.iter().position(|&f| f == j)
    }

    /// The shift `Σ` on objects of P.
    pub fn shift_object(&self, i: usize) -> Result<usize> {
        self.p_object(self.zq.shift(self.p_vertex(i)))
    }

    /// Object `c` of P with `σ(c)` equal to the S object `s`.
    pub fn config_object(&self, s: usize) -> Result<usize> {
        self.p_object(self.r_orbit.reps[self.frozen[s]].sigma_inv())
    }

    /// `τ` on objects of P.
    pub fn tau_object(&self, i: usize) -> Result<usize> {
        self.p_object(self.p_vertex(i).tau())
    }

    /// Reinterpret an R-module that vanishes on frozen objects as a P-module.
    pub fn to_p_module(&self, n: &Module<F>) -> Result<Module<F>> {
        if self.frozen.iter().any(|&f| n.dims[f] > 0) {
            return Err(Error::Input("module does not vanish on frozen objects".into()));
        }
        let dims: Vec<usize> = self.unfrozen.iter().map(|&x| n.dims[x]).collect();
        let mut mats = Vec::new();
        for al in &self.p_pres.arrows {
            let path = self.p_orbit.basis_path(al.source, al.target, al.degree, arrow_index(&al.morphism))?;
            let m = self.r_orbit.path_morphism(&path)?;
            let m = Morphism { source: self.unfrozen[al.source], target: self.unfrozen[al.target], ..m };
            mats.push(n.eval(&m)?);
        }
        Module::new(self.p_pres.clone(), dims, mats)
    }

    /// Arrow and relation counts predicted from P: arrows `x -> y` number
    /// `dim P(y, Σx)` and relations `dim P(y, Σ²x)`, indexed by S objects.
    pub fn predicted_qs_counts(&self) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
        let n = self.frozen.len();
        let mut arrows = vec![vec![0; n]; n];
        let mut relations = vec![vec![0; n]; n];
        let p_of = |sx: usize| self.config_object(sx);
        for a in 0..n {
            let x = p_of(a)?;
            let sx = self.shift_object(x)?;
            let ssx = self.shift_object(sx)?;
            for b in 0..n {
                let y = p_of(b)?;
                arrows[a][b] = self.p.dim_upto(y, sx, self.p_top())?;
                relations[a][b] = self.p.dim_upto(y, ssx, self.p_top())?;
            }
        }
        Ok((arrows, relations))
    }

    /// Stable Hom dimensions of proj R on non-frozen objects, summed over
    /// degrees up to `max_deg`: morphisms modulo those factoring through a frozen object.
    pub fn stable_dims(&self, max_deg: u32) -> Result<Vec<Vec<usize>>> {
        let r = &self.r;
        let k = self.unfrozen.len();
        let mut out = vec![vec![0; k]; k];
        for (i, &x) in self.unfrozen.iter().enumerate() {
            for (j, &y) in self.unfrozen.iter().enumerate() {
                let mut total = 0;
                for d in 0..=max_deg {
                    let n = r.dim(x, y, d)?;
                    if n == 0 {
                        continue;
                    }
                    let mut through = crate::linalg::Subspace::zero(n);
                    for &s in &self.frozen {
                        for d1 in 1..d {
                            let (n1, n2) = (r.dim(x, s, d1)?, r.dim(s, y, d - d1)?);
                            for a in 0..n1 {
                                for b in 0..n2 {
                                    let f = Morphism::basis(x, s, d1, n1, a);
                                    let g = Morphism::basis(s, y, d - d1, n2, b);
                                    through.insert(&r.compose(&f, &g)?.coeffs);
                                }
                            }
                        }
                    }
                    total += n - through.dim();
                }
                out[i][j] = total;
            }
        }
        Ok(out)
    }

    /// Hilbert table of P, summed over degrees.
    pub fn p_table(&self) -> Result<Vec<Vec<usize>>> {
        let k = self.p.len();
        (0..k).map(|a| (0..k).map(|b| self.p.dim_upto(a, b, self.p_top())).collect()).collect()
    }

    fn r_object(&self, v: ZVertex) -> Result<usize> {
        self.r_orbit.locate(v).map(|(i, _)| i).ok_or_else(|| Error::Input(format!("{v} is not an object of R")))
    }

    /// Minimal projective (or, through the opposite category, injective) resolutions
    /// of all simple R-modules, compared with the short sequences built from the
    /// arrows of the framed quiver. Exactness is checked in degrees `<= max_deg`.
    pub fn check_r_resolutions(&self, max_deg: u32) -> Result<Vec<ResolutionCheck>> {
        let all: Vec<usize> = (0..self.r.len()).collect();
        let op: Cat<F> = Cached::wrap(Arc::new(Opposite { inner: self.r.clone() }));
        let mut out = Vec::new();
        for x in 0..self.r.len() {
            let v = self.r_orbit.reps[x];
            for injective in [false, true] {
                let mut expected = Vec::new();
                let one = |objs: Vec<ZVertex>| -> Result<Vec<usize>> {
                    let mut m = vec![0; all.len()];
                    for o in objs {
                        m[self.r_object(o)?] += 1;
                    }
                    Ok(m)
                };
                expected.push(one(vec![v])?);
                if v.frozen {
                    let c = v.partner();
                    expected.push(one(vec![if injective { c } else { c.tau() }])?);
                } else if injective {
                    expected.push(one(self.zq.successors(v))?);
                    expected.push(one(vec![v.tau_inv()])?);
                } else {
                    expected.push(one(self.zq.predecessors(v))?);
                    expected.push(one(vec![v.tau()])?);
                }
                while expected.len() < 4 {
                    expected.push(vec![0; all.len()]);
                }
                let cat = if injective { op.clone() } else { self.r.clone() };
                let res = resolve_simple(cat, all.clone(), x, max_deg, 4)?;
                let actual: Vec<Vec<usize>> = (0..4).map(|k| res.multiplicities(k)).collect();
                let exact = res.is_exact(Some(x))? && res.last_kernel_dim()? == 0;
                out.push(ResolutionCheck {
                    object: self.r.objects()[x].label.clone(),
                    side: if injective { "injective" } else { "projective" }.into(),
                    expected,
                    actual,
                    exact,
                });
            }
        }
        Ok(out)
    }

    /// Minimal projective resolution of the simple S-module at S object `x`, with
    /// `terms` free terms, compared with `σ(x)^∧ <- P(τc) <- P(Στc) <- ...` where
    /// `σ(c)` is `x` and `P(z)` has `dim P(y, z)` copies of `σ(y)^∧`.
    pub fn check_s_resolution(&self, x: usize, terms: usize, max_deg: u32) -> Result<(ResolutionCheck, usize)> {
        let n = self.frozen.len();
        let all: Vec<usize> = (0..n).collect();
        let c_of = |sx: usize| self.config_object(sx);
        let mut expected = vec![{
            let mut m = vec![0; n];
            m[x] = 1;
            m
        }];
        let mut z = self.tau_object(c_of(x)?)?;
        for _ in 1..terms {
            let mut m = vec![0; n];
            for (y, slot) in m.iter_mut().enumerate() {
                *slot = self.p.dim_upto(c_of(y)?, z, self.p_top())?;
            }
            expected.push(m);
            z = self.shift_object(z)?;
        }
        let res = resolve_simple(self.s.clone(), all, x, max_deg, terms)?;
        let actual: Vec<Vec<usize>> = (0..terms).map(|k| res.multiplicities(k)).collect();
        let exact = res.is_exact(Some(x))?;
        let syzygy = res.last_kernel_dim()?;
        let check = ResolutionCheck { object: self.s.objects()[x].label.clone(), side: "projective".into(), expected, actual, exact };
        Ok((check, syzygy))
    }

    pub fn summary(&self) -> Summary {
        let objects = |c: &Cat<F>| c.objects().iter().map(|o| o.label.clone()).collect();
        Summary {
            quiver: format!("{}", self.zq.quiver.kind()),
            r_objects: objects(&self.r),
            s_objects: objects(&self.s),
            p_objects: objects(&self.p),
            s_counts: self.s_pres.counts(),
            p_counts: self.p_pres.counts(),
            bound: self.bound,
        }
    }
}

/// A computed resolution next to the expected terms (multiplicity of each object per term).
#[derive(Clone, Debug, Serialize)]
pub struct ResolutionCheck {
    pub object: String,
    pub side: String,
    pub expected: Vec<Vec<usize>>,
    pub actual: Vec<Vec<usize>>,
    pub exact: bool,
}

impl ResolutionCheck {
    pub fn passed(&self) -> bool {
        self.exact && self.expected == self.actual
    }
}

/// Outcome of [`selfinjective_check`]. `nakayama[x] = y` means `x^∨ ≅ y^∧`.
#[derive(Clone, Debug, Serialize)]
pub struct SelfInjectiveReport {
    pub self_injective: bool,
    pub nakayama: Option<Vec<usize>>,
    pub witness: Option<String>,
}

impl SelfInjectiveReport {
    fn failure(witness: String) -> Self {
        SelfInjectiveReport { self_injective: false, nakayama: None, witness: Some(witness) }
    }
}

/// Match every indecomposable injective `x^∨` with a projective by isomorphism testing.
/// A category that is not finite-dimensional fails, with a nonzero endomorphism
/// space in a degree beyond the presentation bound as witness.
pub fn selfinjective_check<F: Field, R: Rng>(pres: &Arc<Presentation<F>>, rng: &mut R) -> Result<SelfInjectiveReport> {
    let cat = &pres.cat;
    let n = cat.len();
    let labels: Vec<String> = cat.objects().iter().map(|o| o.label.clone()).collect();
    let Some(top) = cat.top_degree() else {
        // first nonzero endomorphism degree past the bound, searched lowest first
        for d in pres.bound + 1..=2 * pres.bound.max(1) {
            for x in 0..n {
                let k = cat.dim(x, x, d)?;
                if k > 0 {
                    return Ok(SelfInjectiveReport::failure(format!(
                        "not finite-dimensional: End({}) has dimension {k} in degree {d}",
                        labels[x]
                    )));
                }
            }
        }
        return Ok(SelfInjectiveReport::failure("no top degree known".into()));
    };
    let frees = (0..n).map(|x| free_module(pres.clone(), x, top)).collect::<Result<Vec<_>>>()?;
    let mut perm = Vec::with_capacity(n);
    for x in 0..n {
        let inj = cofree_module(pres.clone(), x, top)?;
        match (0..n).find(|&y| is_iso(&frees[y], &inj, rng)) {
            Some(y) => perm.push(y),
            None => {
                return Ok(SelfInjectiveReport::failure(format!(
                    "injective at {} (dims {:?}) is not isomorphic to any indecomposable projective",
                    labels[x], inj.dims
                )))
            }
        }
    }
    let mut seen = vec![false; n];
    for &y in &perm {
        if std::mem::replace(&mut seen[y], true) {
            return Ok(SelfInjectiveReport::failure(format!("two injectives match the projective at {}", labels[y])));
        }
    }
    Ok(SelfInjectiveReport { self_injective: true, nakayama: Some(perm), witness: None })
}

fn arrow_index<F: Field>(m: &Morphism<F>) -> usize {
    m.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    R,
    S,
    P,
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Target> {
        match s {
            "R" | "r" => Ok(Target::R),
            "S" | "s" => Ok(Target::S),
            "P" | "p" => Ok(Target::P),
            _ => Err(Error::Input(format!("unknown target {s}; expected R, S or P"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub quiver: String,
    pub r_objects: Vec<String>,
    pub s_objects: Vec<String>,
    pub p_objects: Vec<String>,
    pub s_counts: Counts,
    pub p_counts: Counts,
    pub bound: u32,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::PathCategory;
    use crate::field::Q;
    use crate::quiver::{AutoSpec, DynkinQuiver};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a2(auto: AutoSpec) -> Nakajima<Q> {
        let zq = FramedRepetition::new(DynkinQuiver::linear_a(2), auto, Configuration::All).unwrap();
        Nakajima::build(zq, None).unwrap()
    }

    #[test]
    fn preprojective_is_selfinjective_but_path_algebra_is_not() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let nk = a2(AutoSpec::tau());
        let rep = selfinjective_check(&nk.p_pres, &mut rng).unwrap();
        assert!(rep.self_injective);
        assert_eq!(rep.nakayama, Some(vec![1, 0]));
        let path: Cat<Q> = Arc::new(PathCategory::new(2, vec![(0, 1)]).unwrap());
        let pres = Arc::new(Presentation::new(path, 2).unwrap());
        assert!(!selfinjective_check(&pres, &mut rng).unwrap().self_injective);
    }

    #[test]
    fn s_with_all_vertices_is_infinite() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let rep = selfinjective_check(&a2(AutoSpec::tau()).s_pres, &mut rng).unwrap();
        assert!(!rep.self_injective);
        assert!(rep.witness.unwrap().contains("not finite-dimensional"));
    }

    #[test]
    fn a2_resolutions() {
        let nk = a2(AutoSpec::tau());
        for c in nk.check_r_resolutions(8).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
        let (c, syzygy) = nk.check_s_resolution(0, 4, 14).unwrap();
        assert!(c.passed(), "{c:?}");
        assert!(syzygy > 0);
    }

    #[test]
    fn cluster_counts_match_prediction() {
        let nk = a2(AutoSpec::cluster());
        let (arrows, relations) = nk.predicted_qs_counts().unwrap();
        let c = nk.s_pres.counts();
        assert_eq!(c.arrows, arrows);
        assert_eq!(c.relations, relations);
        assert!(arrows.iter().all(|row| row.iter().sum::<usize>() == 2));
    }
}
