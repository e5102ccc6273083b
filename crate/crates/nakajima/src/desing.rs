//! Desingularization of quiver Grassmannians `Gr_e(M)` of S-modules through
//! bistable submodules of `K_LR M`.
//!
//! Components are identified with isomorphism classes of submodules over the
//! finite field. Point counts see only the bistable open locus; closures are not
//! tested.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grassmann::{enumerate_subreps, SubrepList};
use crate::kan::Recollement;
use crate::linalg::{Matrix, Subspace};
use crate::orbitcat::selfinjective_check;
use crate::repmod::{ext1, find_iso, is_iso, Fingerprint, Module};

/// One isomorphism class of submodules of `M` with dimension vector `e`.
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub fingerprint: Fingerprint,
    /// `dims K_LR N` for a representative `N`, indexed by objects of R.
    pub d: Vec<usize>,
    /// Number of submodules of `M` in this class.
    pub points: usize,
    /// `Ext¹_R(K_LR N, K_LR N) = 0` over the working field.
    pub rigid: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BistableCount {
    pub d: Vec<usize>,
    /// Bistable submodules of `K_LR M` with dimension vector `d`.
    pub bistable: usize,
    /// Submodules `N ⊆ M` with `dims K_LR N = d`.
    pub submodules: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DesingReport {
    pub field: String,
    pub dims: Vec<usize>,
    pub e: Vec<usize>,
    /// Outcome of the self-injectivity test on S. The pipeline runs either way.
    pub self_injective: bool,
    pub self_injective_witness: Option<String>,
    pub components: Vec<Component>,
    /// The distinct `d` over all components.
    pub v_set: Vec<Vec<usize>>,
    pub bistable_counts: Vec<BistableCount>,
    /// Submodules of `M` with dimension vector `e`.
    pub points: usize,
    /// Submodules `N` for which `K_LR N ⊆ K_LR M` was certified.
    pub covered: usize,
    pub passed: bool,
    pub witness: Option<String>,
    pub component_model: &'static str,
}

fn push_forward<F: Field>(spaces: &[Subspace<F>], map: &[Matrix<F>]) -> Vec<Subspace<F>> {
    spaces
        .iter()
        .zip(map)
        .map(|(u, a)| Subspace::span(a.rows(), u.basis().iter().map(|v| a.mul_vec(v))))
        .collect()
}

/// Bistable submodules of `k` with dimension vector `d`.
pub fn bistable_subreps<F: Field>(rc: &Recollement<F>, k: &Module<F>, d: &[usize]) -> Result<SubrepList<F>> {
    let all = enumerate_subreps(k, d)?;
    let mut subreps = Vec::new();
    for spaces in all.subreps {
        if rc.is_bistable(&k.submodule(&spaces)?.0)? {
            subreps.push(spaces);
        }
    }
    Ok(SubrepList { dims: d.to_vec(), subreps })
}

/// Submodules of `m` with dimension vector `e`, grouped into isomorphism classes.
/// Returns the classes with the class index of every submodule.
pub fn components<F: Field, R: Rng>(rc: &Recollement<F>, m: &Module<F>, e: &[usize], rng: &mut R) -> Result<(Vec<Component>, SubrepList<F>, Vec<usize>)> {
    let list = enumerate_subreps(m, e)?;
    let mut reps: Vec<Module<F>> = Vec::new();
    let mut comps: Vec<Component> = Vec::new();
    let mut class_of = Vec::with_capacity(list.subreps.len());
    for spaces in &list.subreps {
        let n = m.submodule(spaces)?.0;
        let fp = n.fingerprint();
        let hit = (0..reps.len()).find(|&i| comps[i].fingerprint == fp && is_iso(&reps[i], &n, rng));
        let i = match hit {
            Some(i) => i,
            None => {
                let klr = rc.klr(&n)?;
                comps.push(Component { fingerprint: fp, d: klr.dims.clone(), points: 0, rigid: ext1(&klr, &klr) == 0 });
                reps.push(n);
                comps.len() - 1
            }
        };
        comps[i].points += 1;
        class_of.push(i);
    }
    Ok((comps, list, class_of))
}

/// For every `N ⊆ M` with dimension vector `e`, realise `K_LR N` as the submodule of
/// `K_LR M` generated by `N`, and check it is bistable, restricts to `N` and has
/// the dimension vector of an independently computed `K_LR N`. Then check that the
/// bistable submodules of `K_LR M` at each `d` are in bijection, by restriction,
/// with the submodules `N` having `dims K_LR N = d`.
pub fn check_desing_surjective<F: Field, R: Rng>(rc: &Recollement<F>, m: &Module<F>, e: &[usize], rng: &mut R) -> Result<DesingReport> {
    if e.len() != m.dims.len() {
        return Err(Error::Mismatch(format!("dimension vector of length {} for {} objects", e.len(), m.dims.len())));
    }
    let si = selfinjective_check(&rc.s_pres, rng)?;
    let k = rc.kan(m)?;
    let klr = k.klr;
    let top = rc.restrict(&klr)?;
    let iso = find_iso(m, &top, rng).ok_or_else(|| Error::Inconsistent("K_LR M does not restrict to M".into()))?;
    let back: Vec<Matrix<F>> = iso.mats.iter().map(|a| a.inverse().expect("isomorphism")).collect();

    let (comps, list, class_of) = components(rc, m, e, rng)?;
    let mut report = DesingReport {
        field: F::tag().label(),
        dims: m.dims.clone(),
        e: e.to_vec(),
        self_injective: si.self_injective,
        self_injective_witness: si.witness,
        components: Vec::new(),
        v_set: Vec::new(),
        bistable_counts: Vec::new(),
        points: list.count(),
        covered: 0,
        passed: false,
        witness: None,
        component_model: "isomorphism classes of submodules over the working field",
    };

    let r_objects = klr.dims.len();
    let mut by_d: BTreeMap<Vec<usize>, HashSet<Vec<Subspace<F>>>> = BTreeMap::new();
    for (spaces, &class) in list.subreps.iter().zip(&class_of) {
        let mut gens: Vec<Subspace<F>> = (0..r_objects).map(|x| Subspace::zero(klr.dims[x])).collect();
        let image = push_forward(spaces, &iso.mats);
        for (s, &x) in rc.embed.iter().enumerate() {
            gens[x] = image[s].clone();
        }
        let closure = klr.closure(gens);
        let fail = |why: String| Some(format!("submodule {:?} of class {class}: {why}", spaces.iter().map(|u| u.basis().to_vec()).collect::<Vec<_>>()));
        let mut witness = None;
        if rc.embed.iter().enumerate().any(|(s, &x)| closure[x] != image[s]) {
            witness = fail("generated submodule of K_LR M is larger than N on S".into());
        } else {
            let l = klr.submodule(&closure)?.0;
            if l.dims != comps[class].d {
                witness = fail(format!("generated submodule has dims {:?}, K_LR N has {:?}", l.dims, comps[class].d));
            } else if !rc.is_bistable(&l)? {
                witness = fail("generated submodule is not bistable".into());
            }
        }
        if witness.is_some() {
            report.components = comps;
            report.witness = witness;
            return Ok(report);
        }
        report.covered += 1;
        by_d.entry(comps[class].d.clone()).or_default().insert(spaces.clone());
    }

    for (d, subs) in &by_d {
        let bs = bistable_subreps(rc, &klr, d)?;
        let mut hit: HashMap<Vec<Subspace<F>>, usize> = HashMap::new();
        for l in &bs.subreps {
            let on_s: Vec<Subspace<F>> = rc.embed.iter().map(|&x| l[x].clone()).collect();
            let n = push_forward(&on_s, &back);
            *hit.entry(n).or_default() += 1;
        }
        let bijective = hit.len() == subs.len() && hit.iter().all(|(n, &c)| c == 1 && subs.contains(n));
        report.bistable_counts.push(BistableCount { d: d.clone(), bistable: bs.count(), submodules: subs.len() });
        if !bijective && report.witness.is_none() {
            report.witness = Some(format!("at d = {d:?}: {} bistable submodules, {} submodules of M", bs.count(), subs.len()));
        }
    }
    report.v_set = by_d.keys().cloned().collect();
    report.components = comps;
    report.passed = report.witness.is_none() && report.covered == report.points;
    Ok(report)
}
