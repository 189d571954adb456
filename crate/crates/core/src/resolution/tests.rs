use super::*;
use crate::coeff::{PrimeField, Rationals};
use crate::hilbert;
use crate::ring::{parse_poly, Ring};

fn ideal<F: Field>(r: &RingRef<F>, texts: &[&str]) -> Ideal<F> {
    Ideal::new(r, texts.iter().map(|t| parse_poly(t, r).unwrap()).collect()).unwrap()
}

const FULL: GbOptions = GbOptions { truncation: None, time_budget: None };

#[test]
fn koszul_syzygy_of_two_variables() {
    let r = Ring::new(Rationals, &["x", "y"], &[1, 1]).unwrap();
    let gens = vec![parse_poly("x", &r).unwrap(), parse_poly("y", &r).unwrap()];
    let s = syzygies_of(&r, &gens).unwrap();
    assert_eq!(s.ncols(), 1);
    let col = s.column(0);
    let (y, x) = (parse_poly("y", &r).unwrap(), parse_poly("x", &r).unwrap());
    assert!(col == vec![y.neg(), x.clone()] || col == vec![y.clone(), x.neg()]);
    assert_eq!(s.col_twists(), &[2]);
}

#[test]
fn syzygy_of_monomial_pair() {
    let r = Ring::new(Rationals, &["x", "y"], &[1, 1]).unwrap();
    let gens = vec![parse_poly("x^2", &r).unwrap(), parse_poly("x*y", &r).unwrap()];
    let s = syzygies_of(&r, &gens).unwrap();
    assert_eq!(s.ncols(), 1);
    let col = s.column(0);
    let (y, x) = (parse_poly("y", &r).unwrap(), parse_poly("x", &r).unwrap());
    assert!(col == vec![y.clone(), x.neg()] || col == vec![y.neg(), x.clone()]);
}

#[test]
fn regular_element_has_no_syzygies() {
    let r = Ring::new(Rationals, &["x", "y"], &[1, 2]).unwrap();
    let s = syzygies_of(&r, &[parse_poly("x^2 + y", &r).unwrap()]).unwrap();
    assert_eq!(s.ncols(), 0);
}

#[test]
fn complete_intersection_is_koszul() {
    let r = Ring::new(PrimeField::default(), &["z", "x1", "x2", "y1", "y2"], &[5, 1, 1, 2, 2]).unwrap();
    let i = ideal(&r, &["x1*x2", "z^2 - y1^5 - y2^5 - x1^10 - x2^10 - y1*y2^4"]);
    let res = minimal_resolution(&i, None, &FULL).unwrap();
    let t = res.betti();
    assert_eq!(t.ranks(), vec![1, 2, 1]);
    assert_eq!(t.steps[1].twists, vec![2, 10]);
    assert_eq!(t.steps[2].twists, vec![12]);
    assert_eq!(canonical_twist(&t, r.weights()).unwrap(), 1);
    assert!(res.is_complex().unwrap());
}

#[test]
fn hypersurface_twist() {
    let r = Ring::new(PrimeField::default(), &["x1", "x2", "y", "z"], &[1, 1, 2, 5]).unwrap();
    let i = ideal(&r, &["z^2 - y^5 - x1^10 - x2^10 - x1*x2*y^4"]);
    let t = minimal_resolution(&i, None, &FULL).unwrap().betti();
    assert_eq!(t.ranks(), vec![1, 1]);
    assert_eq!(canonical_twist(&t, r.weights()).unwrap(), 1);
}

#[test]
fn twisted_cubic_resolution() {
    let r = Ring::new(Rationals, &["a", "b", "c", "d"], &[1, 1, 1, 1]).unwrap();
    let i = ideal(&r, &["a*c - b^2", "b*d - c^2", "a*d - b*c"]);
    let res = minimal_resolution(&i, None, &FULL).unwrap();
    let t = res.betti();
    assert_eq!(t.ranks(), vec![1, 3, 2]);
    assert_eq!(t.steps[1].twists, vec![2, 2, 2]);
    assert_eq!(t.steps[2].twists, vec![3, 3]);
    assert!(res.is_complex().unwrap() && res.is_minimal());
    let hs = hilbert::hilbert_series(&i, &FULL).unwrap();
    assert!(t.euler_series(r.weights()).same_function(hs.exact().unwrap()));
    assert!(canonical_twist(&t, r.weights()).is_err());
    assert_eq!(
        t.to_string(),
        "       0 1 2\ntotal: 1 3 2\n    0: 1 . .\n    1: . 3 2\n"
    );
}

#[test]
fn non_minimal_gb_is_pruned() {
    // the GB has more elements than the minimal generators
    let r = Ring::new(PrimeField::default(), &["x", "y", "z", "w"], &[1, 1, 1, 1]).unwrap();
    let i = ideal(&r, &["x*y - z*w", "x^2 - y*w", "y^2*z - x*w^2"]);
    let raw = schreyer_resolution(&i, None, &FULL).unwrap();
    let res = raw.clone().minimize();
    assert!(res.is_complex().unwrap() && res.is_minimal());
    let t = res.betti();
    let hs = hilbert::hilbert_series(&i, &FULL).unwrap();
    assert!(t.euler_series(r.weights()).same_function(hs.exact().unwrap()));
    assert!(raw.betti().ranks().iter().sum::<usize>() >= t.ranks().iter().sum::<usize>());
}

#[test]
fn koszul_on_four_variables_is_self_dual() {
    let r = Ring::new(Rationals, &["a", "b", "c", "d"], &[1, 2, 3, 4]).unwrap();
    let i = ideal(&r, &["a", "b", "c", "d"]);
    let t = minimal_resolution(&i, None, &FULL).unwrap().betti();
    assert_eq!(t.ranks(), vec![1, 4, 6, 4, 1]);
    assert!(t.is_self_dual(10));
    assert_eq!(canonical_twist(&t, r.weights()).unwrap(), 0);
}

#[test]
fn step_limit_reports_partial_table() {
    let r = Ring::new(Rationals, &["a", "b", "c"], &[1, 1, 1]).unwrap();
    let i = ideal(&r, &["a", "b", "c"]);
    let res = schreyer_resolution(&i, Some(1), &FULL).unwrap();
    assert!(!res.complete);
    assert_eq!(res.betti().ranks(), vec![1, 3]);
}
