use germcov::dessin::{classify, enumerate_belyi, equivalent, genus, BelyiClass, BelyiTriple};
use germcov::perm::{group_elements, Permutation, DEFAULT_GROUP_CAP};

fn conjugate(t: &BelyiTriple, g: &Permutation) -> BelyiTriple {
    BelyiTriple::new(t.sigma0().conjugate_by(g), t.sigma1().conjugate_by(g)).unwrap()
}

fn monodromy_order(t: &BelyiTriple) -> usize {
    group_elements(
        t.degree(),
        &[t.sigma0().clone(), t.sigma1().clone()],
        DEFAULT_GROUP_CAP,
    )
    .unwrap()
    .len()
}

#[test]
fn invariants_survive_relabelling() {
    for n in 2..=4 {
        let relabel = Permutation::from_images(&(1..=n as u32).rev().collect::<Vec<_>>()).unwrap();
        for class in enumerate_belyi(n, false, false).unwrap() {
            let t = class.canonical;
            let u = conjugate(&t, &relabel);
            assert!(equivalent(&t, &u).unwrap());
            assert_eq!(genus(&t), genus(&u));
            assert_eq!(t.cycle_types(), u.cycle_types());
            assert_eq!(monodromy_order(&t), monodromy_order(&u));
            assert_eq!(u.canonical().unwrap(), t);
        }
    }
}

#[test]
fn strict_genus_zero_classes() {
    for n in 1..=5 {
        for class in enumerate_belyi(n, true, true).unwrap() {
            assert_eq!(class.genus, 0);
            assert_eq!(classify(&class.canonical), BelyiClass::Bel3);
        }
    }
}

#[test]
fn degree_two_has_no_three_point_dessins() {
    assert!(enumerate_belyi(2, false, true).unwrap().is_empty());
}

#[test]
fn enumeration_is_sorted_and_canonical() {
    let classes = enumerate_belyi(4, false, false).unwrap();
    for w in classes.windows(2) {
        assert!(w[0].canonical < w[1].canonical);
    }
    for c in &classes {
        assert_eq!(c.canonical.canonical().unwrap(), c.canonical);
    }
}

#[test]
fn degree_six_counts_are_stable() {
    let a = enumerate_belyi(6, true, true).unwrap();
    let b = enumerate_belyi(6, true, true).unwrap();
    assert_eq!(a, b);
    assert!(a.iter().all(|c| c.genus == 0));
}
