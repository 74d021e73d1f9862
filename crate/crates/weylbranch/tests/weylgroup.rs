use num_bigint::BigUint;
use proptest::prelude::*;

use weylbranch::checker::candidate_weights;
use weylbranch::rootsys::{build_root_system, Family, LieType, RootSystem, Weight};
use weylbranch::weylgroup::{
    default_cap, dominant_representative, longest_word_image, orbit_enumerate, orbit_size, reflect,
};

const FAMILIES: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

fn rs(f: Family, n: usize) -> RootSystem {
    build_root_system(LieType::new(f, n).unwrap())
}

#[test]
fn spin_orbit_sizes() {
    for n in 2..=8 {
        let b = rs(Family::B, n);
        assert_eq!(
            orbit_size(&b, &Weight::fundamental(n, n)).orbit_size,
            BigUint::from(1u64 << n)
        );
    }
    for n in 4..=8 {
        let d = rs(Family::D, n);
        assert_eq!(
            orbit_size(&d, &Weight::fundamental(n, n - 1)).orbit_size,
            BigUint::from(1u64 << (n - 1))
        );
    }
    let c = rs(Family::C, 3);
    assert_eq!(orbit_size(&c, &Weight::zero(3)).orbit_size, BigUint::from(1u32));
}

#[test]
fn small_orbits() {
    let a2 = rs(Family::A, 2);
    let o = orbit_enumerate(&a2, &Weight::fundamental(2, 1), default_cap()).unwrap();
    let mut want = vec![
        Weight::new(vec![1, 0]),
        Weight::new(vec![-1, 1]),
        Weight::new(vec![0, -1]),
    ];
    want.sort();
    assert_eq!(o, want);

    let c2 = rs(Family::C, 2);
    assert_eq!(
        orbit_enumerate(&c2, &Weight::fundamental(2, 1), default_cap())
            .unwrap()
            .len(),
        4
    );
    assert_eq!(
        orbit_enumerate(&c2, &Weight::zero(2), default_cap()).unwrap(),
        vec![Weight::zero(2)]
    );
}

#[test]
fn orbit_cap_is_enforced() {
    let b = rs(Family::B, 6);
    assert!(orbit_enumerate(&b, &Weight::fundamental(6, 6), 10).is_err());
}

#[test]
fn longest_word_examples() {
    for n in 2..=6 {
        let b = rs(Family::B, n);
        let w = Weight::new((1..=n as i64).collect());
        assert_eq!(longest_word_image(&b, &w), w.neg());
    }
    let a2 = rs(Family::A, 2);
    assert_eq!(
        longest_word_image(&a2, &Weight::fundamental(2, 1)),
        Weight::fundamental(2, 2).neg()
    );
    let d4 = rs(Family::D, 4);
    assert_eq!(
        longest_word_image(&d4, &Weight::fundamental(4, 3)),
        Weight::fundamental(4, 3).neg()
    );
}

#[test]
fn enumeration_matches_orbit_size() {
    for f in FAMILIES {
        for n in 1..=6 {
            let Ok(t) = LieType::new(f, n) else { continue };
            let r = build_root_system(t);
            for w in candidate_weights(n, 0, 3) {
                let o = orbit_enumerate(&r, &w, default_cap()).unwrap();
                assert_eq!(BigUint::from(o.len()), orbit_size(&r, &w).orbit_size, "{t} {w}");
            }
        }
    }
}

#[test]
fn longest_word_maps_dominant_to_antidominant() {
    for f in FAMILIES {
        for n in 2..=6 {
            let Ok(t) = LieType::new(f, n) else { continue };
            let r = build_root_system(t);
            for w in candidate_weights(n, 0, 2) {
                let im = longest_word_image(&r, &w);
                assert!(im.coeffs.iter().all(|&c| c <= 0), "{t} {w}");
                assert_eq!(longest_word_image(&r, &im), w);
            }
        }
    }
}

fn family_rank() -> impl Strategy<Value = (Family, usize)> {
    (0usize..4, 2usize..6).prop_map(|(f, n)| {
        let fam = FAMILIES[f];
        (fam, if fam == Family::D { n.max(3) } else { n })
    })
}

proptest! {
    #[test]
    fn reflections_are_involutions((f, n) in family_rank(), c in prop::collection::vec(-3i64..4, 6), k in 0usize..64) {
        let r = rs(f, n);
        let w = Weight::new(c[..n].to_vec());
        let alpha = &r.positive_roots[k % r.positive_roots.len()];
        let once = reflect(&r, &w, alpha).unwrap();
        prop_assert_eq!(reflect(&r, &once, alpha).unwrap(), w.clone());
        prop_assert_eq!(dominant_representative(&r, &once).0, dominant_representative(&r, &w).0);
    }

    #[test]
    fn dominant_representative_is_dominant((f, n) in family_rank(), c in prop::collection::vec(-3i64..4, 6)) {
        let r = rs(f, n);
        let (d, _) = dominant_representative(&r, &Weight::new(c[..n].to_vec()));
        prop_assert!(d.is_dominant());
        prop_assert_eq!(dominant_representative(&r, &d).1, 0);
    }
}
