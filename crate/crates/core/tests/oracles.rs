mod common;

use common::*;

#[test]
fn membership_matches_graded_linear_algebra() {
    let run = membership_oracle(120, 2024);
    assert!(run.queries >= 400, "only {} queries", run.queries);
    assert!(run.mismatches.is_empty(), "{:#?}", run.mismatches);
}

#[test]
fn monomial_intersection_is_the_lcm_ideal() {
    let bad = lcm_oracle(60, 7);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn pfaffian_matches_closed_form_and_determinant() {
    let bad = pfaffian_oracle(200, 3);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn span_oracle_sanity() {
    use canring::ring::{parse_poly, Ring};
    let r = Ring::new(fp(), &["x", "y"], &[1, 1]).unwrap();
    let p = |s: &str| parse_poly(s, &r).unwrap();
    let gens = [p("x^2"), p("x*y")];
    assert!(span_contains(&gens, &p("x^3 + x^2*y")));
    assert!(!span_contains(&gens, &p("y^3")));
    assert!(!span_contains(&gens, &p("x*y + y^2")));
}
