use std::sync::Arc;

use aglrc::analysis::{self, EnumerationOptions};
use aglrc::bounds::singleton_lrc;
use aglrc::descriptor::CodeDescriptor;
use aglrc::galois::mult_subgroup_cosets;
use aglrc::{gs_tower, hermitian, tamo_barg, Elem, FiniteField, LinearCode};

fn distance(code: &LinearCode) -> usize {
    analysis::min_distance_exhaustive(code, EnumerationOptions::default()).unwrap().min_distance
}

/// Representatives of the cosets of the order-`r+1` subgroup of GF(13)*.
fn coset_reps(f: &FiniteField, r: usize) -> Vec<Elem> {
    let mut reps = Vec::new();
    let mut covered = Vec::new();
    for x in f.nonzero_elements() {
        if !covered.contains(&x) {
            let c = mult_subgroup_cosets(f, r as u32 + 1, &[x]).unwrap();
            covered.extend(c.cosets[0].iter().copied());
            reps.push(x);
        }
    }
    reps
}

#[test]
fn tamo_barg_codes_meet_the_singleton_bound() {
    let f = Arc::new(FiniteField::prime(13).unwrap());
    for r in [1usize, 2, 3, 5] {
        let reps = coset_reps(&f, r);
        for parts in 1..=reps.len() {
            let n = parts * (r + 1);
            if n > 12 {
                continue;
            }
            let gp = tamo_barg::good_poly_multiplicative(f.clone(), r, &reps[..parts]).unwrap();
            for k in (r..=6.min(n - 1)).step_by(r) {
                let Ok(code) = tamo_barg::tb_code(&gp, k) else { continue };
                let bound = singleton_lrc(n as u64, k as u64, r as u64).unwrap() as usize;
                assert_eq!(code.designed_distance() as usize, bound, "designed ({n},{k},{r})");
                assert_eq!(distance(&code), bound, "exhaustive ({n},{k},{r})");
            }
        }
    }
}

#[test]
fn frozen_distances() {
    assert_eq!(distance(&hermitian::code_proj_y(3, 2).unwrap()), 17);
    assert_eq!(distance(&hermitian::code_lrc2(3).unwrap()), 14);
    assert_eq!(distance(&hermitian::code_proj_x(3, 1).unwrap()), 14);
    assert_eq!(distance(&gs_tower::gs2_code_l2(2, 1).unwrap()), 2);
}

#[test]
fn frozen_distance_proj_x_dimension_nine() {
    let code = hermitian::code_proj_x(3, 2).unwrap();
    let opts = EnumerationOptions { workers: 4, ..Default::default() };
    let report = analysis::min_distance_exhaustive(&code, opts).unwrap();
    assert_eq!(report.min_distance, 10);
    assert!(report.min_distance as i64 >= code.designed_distance());
}

#[test]
fn certificates_agree_with_exhaustive_locality() {
    let codes = [
        hermitian::code_proj_y(3, 1).unwrap(),
        hermitian::code_lrc2(3).unwrap(),
        gs_tower::gs2_code_l2(2, 1).unwrap(),
    ];
    for code in &codes {
        for which in 0..code.structure().partitions().len() {
            let sets = analysis::recovering_sets(code, which).unwrap();
            assert!(analysis::verify_locality(code, &sets).is_ok());
            assert_eq!(analysis::verify_locality_exhaustive(code, &sets, 1 << 24).unwrap(), None);
        }
    }
}

#[test]
fn descriptors_round_trip_through_json() {
    let f = Arc::new(FiniteField::prime(13).unwrap());
    let gp = tamo_barg::good_poly_multiplicative(f.clone(), 2, &[Elem::ONE, f.from_int(2)]).unwrap();
    let codes = [
        tamo_barg::tb_code(&gp, 2).unwrap(),
        hermitian::code_proj_y(4, 2).unwrap(),
        hermitian::code_proj_x(4, 1).unwrap(),
        hermitian::code_lrc2(4).unwrap(),
        gs_tower::gs2_code_l2(3, 2).unwrap(),
    ];
    for code in codes {
        let text = serde_json::to_string_pretty(&CodeDescriptor::from_code(&code)).unwrap();
        let back: CodeDescriptor = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_code().unwrap(), code);
    }
}

#[test]
fn designed_distance_never_exceeds_true_distance() {
    for t in 0..=7 {
        let code = hermitian::code_proj_y(3, t).unwrap();
        if code.dimension() <= 8 {
            assert!(distance(&code) as i64 >= code.designed_distance(), "t = {t}");
        }
    }
}
