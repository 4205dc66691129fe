mod common;

use aztec_comb::comb::{comb_column, comb_stages, in_pathfam_nk, uncomb_column, CombError};
use aztec_comb::pathfam::{family_from_bits, is_disjoint, BitTriangle};

#[test]
fn stage_bijections() {
    common::stage_bijectivity(4).unwrap();
}

#[test]
fn stages_move_through_the_filtration() {
    for t in BitTriangle::all(4) {
        let stages = comb_stages(&t);
        assert_eq!(stages[0], family_from_bits(&t));
        for (s, f) in stages.iter().enumerate() {
            // after s columns have been combed the family lies in Pathfam(n, n - s)
            assert!(in_pathfam_nk(f, 4 - s));
        }
        assert!(is_disjoint(&stages[4]));
    }
}

#[test]
fn stage_domain_is_enforced() {
    let cliff = family_from_bits(&BitTriangle::from_rows(3, &[vec![0], vec![1, 0]]).unwrap());
    assert_eq!(uncomb_column(&cliff, 0), Err(CombError::OutsideDomain { k: 0 }));
    assert!(comb_column(&cliff, 3).is_err());
    let once = comb_column(&cliff, 2).unwrap();
    assert_eq!(comb_column(&once, 0), Err(CombError::OutsideDomain { k: 0 }));
    let twice = comb_column(&once, 1).unwrap();
    assert!(in_pathfam_nk(&twice, 1) && in_pathfam_nk(&twice, 0));
    assert!(!in_pathfam_nk(&cliff, 0));
}
