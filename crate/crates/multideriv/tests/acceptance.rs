//! Acceptance suite: runs each criterion at its stated (zero) tolerance
//! and prints one pass/fail line per criterion.

use multideriv::selftest::{self, CriterionReport};

fn check(report: CriterionReport) {
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_1_table3_reproduction() {
    check(selftest::criterion_1_table3());
}

#[test]
fn criterion_2_table4_reproduction() {
    check(selftest::criterion_2_table4());
}

#[test]
fn criterion_3_b2_closed_form_oracle() {
    check(selftest::criterion_3_b2_closed_forms());
}

#[test]
fn criterion_4_phi_determinant_identity() {
    check(selftest::criterion_4_phi_determinant());
}

#[test]
fn criterion_5_inversion_round_trip() {
    check(selftest::criterion_5_inversion_round_trip());
}

#[test]
fn criterion_6_universality_property_suite() {
    check(selftest::criterion_6_universality());
}

#[test]
fn criterion_7_unit_valuation_property() {
    check(selftest::criterion_7_unit_valuation());
}

#[test]
fn criterion_8_duality_involution() {
    check(selftest::criterion_8_duality());
}

#[test]
fn criterion_9_structural_invariant_sweep() {
    check(selftest::criterion_9_structural());
}
