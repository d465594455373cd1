use sdgroup_core::field::field_of_order;
use sdgroup_core::sd_maps::*;

fn maps(q: u64, r: u64, mode: SearchMode) -> Vec<Vec<u32>> {
    let (d, c) = (field_of_order(q).unwrap(), field_of_order(r).unwrap());
    brute_force_sd_maps(&d, &c, mode).unwrap().iter().map(|m| m.image_indices()).collect()
}

#[test]
fn oracle_and_pruned_agree() {
    for q in [3, 5, 7, 9] {
        assert_eq!(maps(q, q, SearchMode::Oracle), maps(q, q, SearchMode::Pruned), "q = {q}");
    }
}

#[test]
fn returned_maps_have_all_structural_properties() {
    for q in [3, 5, 7, 9, 11, 13, 25, 27] {
        let f = field_of_order(q).unwrap();
        for m in brute_force_sd_maps(&f, &f, SearchMode::Oracle).unwrap() {
            let r = structural_report(&m);
            assert!(r.all_sd_consequences(), "q = {q}: {r:?}");
            assert!(is_sd_map(&m).holds);
        }
    }
    let (d, c) = (field_of_order(5).unwrap(), field_of_order(13).unwrap());
    for m in brute_force_sd_maps(&d, &c, SearchMode::Oracle).unwrap() {
        assert!(structural_report(&m).all_sd_consequences());
    }
}

#[test]
fn char2_census_is_factorial() {
    for (k, expected) in [(1u32, 1usize), (2, 6), (3, 5040)] {
        let q = 1u64 << k;
        let found = brute_force_sd_maps(&field_of_order(q).unwrap(), &field_of_order(q).unwrap(), SearchMode::Oracle).unwrap();
        assert_eq!(found.len(), expected);
        // every bijection fixing 1 (checked by structure, not by the SD equation)
        let one = field_of_order(q).unwrap().one().index() as usize;
        for m in &found {
            let img = m.image_indices();
            assert_eq!(img[one] as usize, one);
            let mut s = img.clone();
            s.sort();
            s.dedup();
            assert_eq!(s.len(), q as usize);
        }
    }
}

#[test]
fn f5_maps_close_under_composition() {
    let f = field_of_order(5).unwrap();
    let found = brute_force_sd_maps(&f, &f, SearchMode::Oracle).unwrap();
    assert_eq!(found.len(), 2);
    for a in &found {
        for b in &found {
            let c = a.compose(b).unwrap();
            assert!(found.contains(&c));
        }
    }
}

#[test]
fn no_maps_between_distinct_prime_fields() {
    for p in [7, 11, 13] {
        for r in [7, 11, 13] {
            if p != r {
                assert!(maps(p, r, SearchMode::Oracle).is_empty(), "F_{p} -> F_{r}");
            }
        }
    }
}

#[test]
fn fourth_roots_govern_f5_maps() {
    assert_eq!(maps(5, 13, SearchMode::Pruned).len(), 2);
    assert_eq!(maps(5, 11, SearchMode::Pruned).len(), 0);
    assert_eq!(maps(5, 13, SearchMode::Oracle), maps(5, 13, SearchMode::Pruned));
    assert_eq!(maps(5, 11, SearchMode::Oracle), maps(5, 11, SearchMode::Pruned));
}

#[test]
fn power_maps_are_checked_directly() {
    // w -> w^k on F_q satisfies the defining equation iff the scalar identity
    // holds at every (x, y); evaluate it here without the library's checker.
    for q in [5u64, 7, 9, 11] {
        let f = field_of_order(q).unwrap();
        for k in 1..q - 1 {
            let m = MapTable::power_map(&f, k);
            let direct = f.elements().all(|x| {
                f.elements().filter(|y| *y != x).all(|y| {
                    let z = x.add(&y).unwrap().div(&x.sub(&y).unwrap()).unwrap().pow(k);
                    let (fx, fy) = (x.pow(k), y.pow(k));
                    match fx.sub(&fy) {
                        Ok(d) if !d.is_zero() => z == fx.add(&fy).unwrap().div(&d).unwrap(),
                        _ => false,
                    }
                })
            });
            assert_eq!(is_sd_map(&m).holds, direct, "q = {q}, k = {k}");
        }
    }
}
