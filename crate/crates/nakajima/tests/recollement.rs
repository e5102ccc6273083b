//! Modules over the presented categories and the functors between them.

use std::sync::Arc;

use nakajima::field::{Fp, Q};
use nakajima::kan::Recollement;
use nakajima::linalg::Matrix;
use nakajima::orbitcat::Nakajima;
use nakajima::quiver::{AutoSpec, Configuration, DynkinQuiver, FramedRepetition};
use nakajima::repmod::random::random_module;
use nakajima::repmod::{ext1, free_module, hom_dim, is_iso, Module};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn build<F: nakajima::field::Field>(rank: usize, auto: AutoSpec) -> Nakajima<F> {
    Nakajima::build(FramedRepetition::new(DynkinQuiver::linear_a(rank), auto, Configuration::All).unwrap(), None).unwrap()
}

#[test]
fn relations_are_checked_on_construction() {
    let nk: Nakajima<Q> = build(2, AutoSpec::tau());
    // with the all-plus convention d³ + fg = 0: loops by -1 and f, g by 1 is a module,
    // every arrow by 1 is not
    let scalars = |loops: i64| -> Vec<Matrix<Q>> {
        nk.s_pres.arrows.iter().map(|a| Matrix::from_i64(1, 1, &[if a.source == a.target { loops } else { 1 }])).collect()
    };
    assert!(Module::new(nk.s_pres.clone(), vec![1, 1], scalars(1)).is_err());
    let m = Module::new(nk.s_pres.clone(), vec![1, 1], scalars(-1)).unwrap();
    assert!(!m.is_nilpotent());
}

#[test]
fn yoneda() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for rank in [2, 3] {
        let nk: Nakajima<Q> = build(rank, AutoSpec::tau());
        for _ in 0..10 {
            let m = random_module(&nk.p_pres, 6, &mut rng).unwrap();
            for x in 0..nk.p.len() {
                let px = free_module(nk.p_pres.clone(), x, nk.p_top()).unwrap();
                assert_eq!(hom_dim(&px, &m), m.dims[x]);
            }
        }
    }
}

#[test]
fn duality_reverses_ext() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let nk: Nakajima<Q> = build(3, AutoSpec::tau());
    let op = Arc::new(nk.p_pres.opposite().unwrap());
    for _ in 0..10 {
        let m = random_module(&nk.p_pres, 5, &mut rng).unwrap();
        let n = random_module(&nk.p_pres, 5, &mut rng).unwrap();
        let (dm, dn) = (m.dual(op.clone()), n.dual(op.clone()));
        assert!(dm.check_relations().is_ok());
        assert_eq!(hom_dim(&m, &n), hom_dim(&dn, &dm));
        assert_eq!(ext1(&m, &n), ext1(&dn, &dm));
    }
}

#[test]
fn resolutions_of_r_are_exact() {
    for rank in [2, 3] {
        let nk: Nakajima<Q> = build(rank, AutoSpec::tau());
        for c in nk.check_r_resolutions(10).unwrap() {
            assert!(c.passed(), "{} resolution of {}: {:?} vs {:?}", c.side, c.object, c.expected, c.actual);
        }
    }
}

#[test]
fn kan_extensions_restrict_to_the_identity() {
    let nk: Nakajima<Q> = build(2, AutoSpec::tau());
    let rc = Recollement::for_nakajima(&nk).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let m = random_module(&nk.s_pres, 6, &mut rng).unwrap();
        let k = rc.kan(&m).unwrap();
        assert!(is_iso(&rc.restrict(&k.left).unwrap(), &m, &mut rng));
        assert!(is_iso(&rc.restrict(&k.right).unwrap(), &m, &mut rng));
        assert!(rc.is_stable(&k.right).unwrap());
        assert!(rc.is_costable(&k.left).unwrap());
        for &f in &nk.frozen {
            assert_eq!(k.kk.dims[f], 0);
            assert_eq!(k.ck.dims[f], 0);
        }
        assert!(nk.ck_is_shifted_kk(&k).unwrap());
    }
}

#[test]
fn intermediate_extension_is_additive() {
    let nk: Nakajima<Q> = build(2, AutoSpec::tau());
    let rc = Recollement::for_nakajima(&nk).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let m = random_module(&nk.s_pres, 4, &mut rng).unwrap();
        let n = random_module(&nk.s_pres, 4, &mut rng).unwrap();
        let sum = rc.klr(&m.direct_sum(&n)).unwrap();
        let parts = rc.klr(&m).unwrap().direct_sum(&rc.klr(&n).unwrap());
        assert_eq!(sum.fingerprint(), parts.fingerprint());
        assert!(is_iso(&sum, &parts, &mut rng));
    }
}

#[test]
fn simples_correspond() {
    for auto in [AutoSpec::tau(), AutoSpec::cluster()] {
        let nk: Nakajima<Q> = build(2, auto);
        let rc = Recollement::for_nakajima(&nk).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for s in 0..nk.s.len() {
            let simple = Module::simple(nk.s_pres.clone(), s);
            let klr = rc.klr(&simple).unwrap();
            let r_simple = Module::simple(nk.r_pres.clone(), nk.frozen[s]);
            assert!(is_iso(&klr, &r_simple, &mut rng));
            assert!(is_iso(&rc.restrict(&r_simple).unwrap(), &simple, &mut rng));
        }
        // simples at non-frozen objects restrict to zero
        for &x in &nk.unfrozen {
            assert!(rc.restrict(&Module::simple(nk.r_pres.clone(), x)).unwrap().is_zero());
        }
    }
}

#[test]
fn cq_is_injective_for_tau() {
    for rank in [2, 3] {
        let nk: Nakajima<Q> = build(rank, AutoSpec::tau());
        let (m, r) = nk.cq_matrix().unwrap();
        assert_eq!(r, m.len());
    }
    let nk: Nakajima<Q> = build(2, AutoSpec::cluster());
    let (m, r) = nk.cq_matrix().unwrap();
    assert!(r <= m.len());
}

#[test]
fn left_exactness_over_f2() {
    let nk: Nakajima<Fp<2>> = build(2, AutoSpec::tau());
    let rc = Recollement::for_nakajima(&nk).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut sequences = 0;
    while sequences < 20 {
        let n = random_module(&nk.s_pres, 4, &mut rng).unwrap();
        let k = rc.klr(&n).unwrap();
        for d in nakajima::grassmann::dimension_vectors_below(&n.dims) {
            for sub in nakajima::grassmann::enumerate_subreps(&n, &d).unwrap().subreps {
                let (y, _) = n.submodule(&sub).unwrap();
                let (l, _) = n.quotient(&sub).unwrap();
                let (ky, kl) = (rc.klr(&y).unwrap(), rc.klr(&l).unwrap());
                assert!((0..k.dims.len()).all(|x| ky.dims[x] + kl.dims[x] <= k.dims[x]));
                sequences += 1;
            }
        }
    }
}

#[test]
fn strata_and_degenerations() {
    let nk: Nakajima<Q> = build(2, AutoSpec::tau());
    let rc = Recollement::for_nakajima(&nk).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let m = random_module(&nk.s_pres, 4, &mut rng).unwrap();
        let semisimple = Module::new(
            nk.s_pres.clone(),
            m.dims.clone(),
            nk.s_pres.arrows.iter().map(|a| Matrix::zeros(m.dims[a.source], m.dims[a.target])).collect(),
        )
        .unwrap();
        // the semisimple module sits in the smallest stratum
        assert!(rc.degeneration_leq(&nk, &semisimple, &m).unwrap());
        assert!(rc.stratum_of(&nk, &semisimple).unwrap().iter().all(|&v| v == 0));
        assert!(rc.degeneration_leq(&nk, &m, &m).unwrap());
        let k = rc.kan(&m).unwrap();
        let point = rc.closed_orbit_normal_form(&nk, &k.right).unwrap();
        assert!(is_iso(&point.s_part, &m, &mut rng));
        let v0 = rc.stratum_of(&nk, &m).unwrap();
        let v: Vec<usize> = nk.unfrozen.iter().map(|&x| k.right.dims[x]).collect();
        let expected: Vec<usize> = v.iter().zip(&v0).map(|(a, b)| a - b).collect();
        assert_eq!(point.ss_part, expected);
    }
}
