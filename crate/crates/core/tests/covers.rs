use germcov::cover::{
    beta, center_subgroup, check_cover, construct_d4_from_belyi, enumerate_covers, validate_cover,
    verify_theorem2, BetaDescriptor, GermCover,
};
use germcov::dessin::{enumerate_belyi, equivalent};
use germcov::perm::{
    conjugacy_class_representatives, is_semiregular, is_transitive, symmetric_group,
};
use germcov::{Error, SingularityType};

fn ty(s: &str) -> SingularityType {
    s.parse().unwrap()
}

/// A permutation commuting with a transitive group has all its cycles of
/// one length. Exhaustive over pairs generating a transitive group.
#[test]
fn centralizers_of_transitive_groups_are_semiregular() {
    for d in 1..=5 {
        let sym = symmetric_group(d);
        for a in conjugacy_class_representatives(d) {
            for b in &sym {
                let gens = [a.clone(), b.clone()];
                if !is_transitive(d, &gens).unwrap() {
                    continue;
                }
                for z in sym
                    .iter()
                    .filter(|z| z.commutes_with(&a) && z.commutes_with(b))
                {
                    assert!(is_semiregular(z), "{z} centralizes <{a}, {b}>");
                }
            }
        }
    }
}

#[test]
fn rational_filter_is_a_subset_passing_strict_beta() {
    for t in SingularityType::all_up_to(7) {
        for d in 1..=4 {
            let all = enumerate_covers(t, d, false).unwrap();
            let rational = enumerate_covers(t, d, true).unwrap();
            for c in &rational {
                assert!(all.contains(c), "{t} d={d}");
                beta(c, true).unwrap();
            }
        }
    }
}

#[test]
fn every_enumerated_cover_is_valid_and_checks_out() {
    for t in SingularityType::all_up_to(6) {
        for d in 1..=4 {
            for c in enumerate_covers(t, d, false).unwrap() {
                assert!(validate_cover(&c).is_valid(), "{t} d={d}");
                let r = check_cover(&c).unwrap();
                assert!(r.passed(), "{t} d={d}: {:?}", r.failed);
                let z = center_subgroup(&c).unwrap();
                assert_eq!(z.order * z.block_count, d);
            }
        }
    }
}

#[test]
fn full_suite_up_to_degree_four() {
    for t in SingularityType::all_up_to(9) {
        for d in 1..=4 {
            let r = verify_theorem2(t, d).unwrap();
            assert!(r.passed(), "{t} d={d}: {:?}", r.failures);
        }
    }
}

#[test]
fn construct_then_beta_is_the_identity_on_classes() {
    for n in 2..=4 {
        for class in enumerate_belyi(n, true, true).unwrap() {
            let t = class.canonical;
            let c = construct_d4_from_belyi(&t).unwrap();
            assert_eq!(c.degree, n * n);
            match beta(&c, true).unwrap() {
                BetaDescriptor::Triple { triple, genus } => {
                    assert_eq!(genus, 0);
                    assert!(equivalent(&triple, &t).unwrap());
                }
                other => panic!("{other:?}"),
            }
        }
    }
}

#[test]
fn constructed_cover_json() {
    let t = serde_json::from_str(r#"{"degree":3,"sigma0":[2,1,3],"sigma1":[3,2,1]}"#).unwrap();
    let c = construct_d4_from_belyi(&t).unwrap();
    let json = serde_json::to_value(&c).unwrap();
    assert_eq!(json["singularity"], "D4");
    assert_eq!(json["degree"], 9);
    assert_eq!(json["meta"]["construction"], "d4-from-belyi");
    assert_eq!(json["meta"]["cocycle"], "shift-on-b1");
    // b1 sends sheet (1, 0) to (2, 1), that is point 1 to point 5.
    assert_eq!(json["images"]["b1"][0], 5);
    let back: GermCover = serde_json::from_value(json).unwrap();
    assert_eq!(back, c);
}

#[test]
fn a1_power_maps() {
    for d in 2..=6 {
        for c in enumerate_covers(ty("A1"), d, false).unwrap() {
            match beta(&c, false).unwrap() {
                BetaDescriptor::PowerMap { k, .. } => assert_eq!(d % k, 0),
                other => panic!("{other:?}"),
            }
        }
    }
    let counts: Vec<usize> = (1..=4)
        .map(|d| enumerate_covers(ty("A1"), d, false).unwrap().len())
        .collect();
    assert_eq!(counts, [0, 1, 2, 5]);
}

#[test]
fn d4_class_counts() {
    let counts: Vec<usize> = (1..=4)
        .map(|d| enumerate_covers(ty("D4"), d, false).unwrap().len())
        .collect();
    assert_eq!(counts, [0, 1, 7, 42]);
    let orders: Vec<usize> = enumerate_covers(ty("D4"), 3, false)
        .unwrap()
        .iter()
        .map(|c| center_subgroup(c).unwrap().order)
        .collect();
    let mut sorted = orders.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, [1, 1, 1, 1, 3, 3, 3]);
}

#[test]
fn invalid_input_is_reported() {
    let c: GermCover = serde_json::from_str(
        r#"{"singularity":"D4","degree":2,"images":{"b1":[2,1],"b2":[2,1],"b3":[1,2]}}"#,
    )
    .unwrap();
    assert!(!validate_cover(&c).is_valid());
    assert!(matches!(beta(&c, false), Err(Error::InvalidCover(_))));
    assert!(serde_json::from_str::<GermCover>(
        r#"{"singularity":"D4","degree":2,"images":{"b1":[2,2]}}"#
    )
    .is_err());
}
