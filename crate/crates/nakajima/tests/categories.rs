//! The presented categories R, S and P of the standard examples.

use std::sync::Arc;

use nakajima::category::PathCategory;
use nakajima::field::Q;
use nakajima::orbitcat::{selfinjective_check, Nakajima};
use nakajima::present::Presentation;
use nakajima::quiver::{AutoSpec, Configuration, DynkinQuiver, FramedRepetition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn build(rank: usize, auto: AutoSpec) -> Nakajima<Q> {
    Nakajima::build(FramedRepetition::new(DynkinQuiver::linear_a(rank), auto, Configuration::All).unwrap(), None).unwrap()
}

#[test]
fn p_of_a2_is_preprojective() {
    let nk = build(2, AutoSpec::tau());
    assert_eq!(nk.p.len(), 2);
    assert_eq!(nk.p_table().unwrap(), vec![vec![1, 1], vec![1, 1]]);
    let c = nk.p_pres.counts();
    assert_eq!(c.arrows, vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(c.relations, vec![vec![1, 0], vec![0, 1]]);
    // every relation is a path of length two
    assert!(nk.p_pres.relations.iter().all(|r| r.degree == 2));
}

#[test]
fn r_of_a2_is_the_square() {
    let nk = build(2, AutoSpec::tau());
    assert_eq!(nk.r.len(), 4);
    let c = nk.r_pres.counts();
    let total: usize = c.arrows.iter().flatten().sum();
    assert_eq!(total, 6);
    // each object has one arrow in and one arrow out to each neighbour in the square
    for (i, row) in c.arrows.iter().enumerate() {
        assert_eq!(row[i], 0);
        assert!(row.iter().all(|&n| n <= 1));
    }
}

#[test]
fn s_of_a2() {
    let nk = build(2, AutoSpec::tau());
    let c = nk.s_pres.counts();
    assert_eq!(c.arrows, vec![vec![1, 1], vec![1, 1]]);
    assert_eq!(c.relations, vec![vec![1, 1], vec![1, 1]]);
    let loops: Vec<u32> = nk.s_pres.arrows.iter().filter(|a| a.source == a.target).map(|a| a.degree).collect();
    let between: Vec<u32> = nk.s_pres.arrows.iter().filter(|a| a.source != a.target).map(|a| a.degree).collect();
    assert_eq!(loops, vec![2, 2]);
    assert_eq!(between, vec![3, 3]);
    // relations: cube of a loop against a two-step path, and two commutations
    let mut degrees: Vec<u32> = nk.s_pres.relations.iter().map(|r| r.degree).collect();
    degrees.sort();
    assert_eq!(degrees, vec![5, 5, 6, 6]);
}

#[test]
fn cluster_instance() {
    let nk = build(2, AutoSpec::cluster());
    assert_eq!(nk.p.len(), 5);
    assert_eq!(nk.s.len(), 5);
    let c = nk.s_pres.counts();
    assert!(c.arrows.iter().all(|row| row.iter().sum::<usize>() == 2));
    let (arrows, relations) = nk.predicted_qs_counts().unwrap();
    assert_eq!((arrows, relations), (c.arrows.clone(), c.relations.clone()));
    // from each vertex: one commutation ab = ba and one power relation of word lengths 3 and 2
    assert!(c.relations.iter().all(|row| row.iter().sum::<usize>() == 2));
    let mut shapes: Vec<Vec<usize>> = nk
        .s_pres
        .relations
        .iter()
        .map(|r| {
            let mut lens: Vec<usize> = r.terms.iter().map(|(_, w)| w.len()).collect();
            lens.sort();
            lens
        })
        .collect();
    shapes.sort();
    let expected: Vec<Vec<usize>> = std::iter::repeat(vec![2, 2]).take(5).chain(std::iter::repeat(vec![2, 3]).take(5)).collect();
    assert_eq!(shapes, expected);
}

#[test]
fn predicted_counts_match_a3() {
    let nk = build(3, AutoSpec::tau());
    let c = nk.s_pres.counts();
    assert_eq!(nk.predicted_qs_counts().unwrap(), (c.arrows, c.relations));
}

#[test]
fn relation_counts_are_second_ext_groups() {
    for nk in [build(2, AutoSpec::tau()), build(2, AutoSpec::cluster())] {
        let c = nk.s_pres.counts();
        for x in 0..nk.s.len() {
            let (check, _) = nk.check_s_resolution(x, 3, nk.bound).unwrap();
            assert!(check.exact);
            // modules are contravariant: Ext^k(S_x, S_y) counts arrows and relations y -> x
            let column = |m: &Vec<Vec<usize>>| m.iter().map(|row| row[x]).collect::<Vec<_>>();
            assert_eq!(check.actual[1], column(&c.arrows));
            assert_eq!(check.actual[2], column(&c.relations));
        }
    }
}

#[test]
fn self_injectivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for nk in [build(2, AutoSpec::tau()), build(3, AutoSpec::tau()), build(2, AutoSpec::cluster())] {
        let r = selfinjective_check(&nk.p_pres, &mut rng).unwrap();
        assert!(r.self_injective);
        let mut perm = r.nakayama.unwrap();
        perm.sort();
        assert_eq!(perm, (0..nk.p.len()).collect::<Vec<_>>());
        // with every vertex frozen, S is not finite-dimensional
        let s = selfinjective_check(&nk.s_pres, &mut rng).unwrap();
        assert!(!s.self_injective);
        assert!(s.witness.unwrap().contains("not finite-dimensional"));
    }
    let path = Arc::new(Presentation::<Q>::new(Arc::new(PathCategory::new(2, vec![(0, 1)]).unwrap()), 3).unwrap());
    assert!(!selfinjective_check(&path, &mut rng).unwrap().self_injective);
}

#[test]
fn stable_category_is_p() {
    for rank in [2, 3] {
        let nk = build(rank, AutoSpec::tau());
        assert_eq!(nk.stable_dims(nk.p_top() + 2).unwrap(), nk.p_table().unwrap());
    }
}

#[test]
fn hilbert_totals_match_normal_forms() {
    // P(A3) is the preprojective algebra of A3: dimension 10
    let nk = build(3, AutoSpec::tau());
    let total: usize = nk.p_table().unwrap().iter().flatten().sum();
    assert_eq!(total, 10);
}
