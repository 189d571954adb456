use super::*;
use crate::coeff::{PrimeField, Rationals};
use crate::hilbert;
use crate::ring::{parse_poly, Ring};

fn ring<F: Field>(field: F, names: &[&str], weights: &[u32]) -> RingRef<F> {
    Ring::new(field, names, weights).unwrap()
}

fn polys<F: Field>(r: &RingRef<F>, texts: &[&str]) -> Vec<Polynomial<F>> {
    texts.iter().map(|t| parse_poly(t, r).unwrap()).collect()
}

fn ideal<F: Field>(r: &RingRef<F>, texts: &[&str]) -> Ideal<F> {
    Ideal::new(r, polys(r, texts)).unwrap()
}

const FULL: GbOptions = GbOptions { truncation: None, time_budget: None };

#[test]
fn normal_form_examples() {
    let r = ring(Rationals, &["x", "y"], &[1, 1]);
    let x = polys(&r, &["x"]);
    assert!(normal_form(&parse_poly("x^2", &r).unwrap(), &x).is_zero());
    assert_eq!(normal_form(&parse_poly("x*y + y^2", &r).unwrap(), &x).to_string(), "y^2");
    let p = parse_poly("x + y", &r).unwrap();
    assert_eq!(normal_form(&p, &[]), p);
}

#[test]
fn invariant_minor_reduces_to_zero() {
    let r = ring(PrimeField::default(), &["a0", "a1", "b", "c"], &[1, 1, 2, 4]);
    // y v - w^2 under y -> a1^2, w -> a1 b, v -> b^2
    let minor = parse_poly("a1^2*b^2 - (a1*b)^2", &r).unwrap();
    let s1 = polys(&r, &["c^2 - b^4 - a0^8"]);
    assert!(normal_form(&minor, &s1).is_zero());
}

#[test]
fn buchberger_examples() {
    let r = ring(Rationals, &["x", "y"], &[1, 2]);
    let gb = ideal(&r, &["x^2 - y"]).groebner(&FULL).unwrap();
    assert_eq!(gb.elements(), polys(&r, &["x^2 - y"]).as_slice());

    let f7 = PrimeField::new(7).unwrap();
    let r = ring(f7, &["x", "y"], &[1, 1]).with_order(MonomialOrder::EliminationBlock { cutoff: 1 });
    let gb = ideal(&r, &["x*y - 1", "y^2 - 1"]).groebner(&FULL).unwrap();
    assert!(gb.elements().contains(&parse_poly("x - y", &r).unwrap()));

    // z first, so that grevlex picks z^2 as the lead term
    let r = ring(PrimeField::default(), &["z", "x1", "x2", "y1", "y2"], &[5, 1, 1, 2, 2]);
    let dd = ideal(&r, &["x1*x2", "z^2 - y1^5 - y2^5 - x1^10 - x2^10 - y1*y2^4"]);
    let gb = dd.groebner(&FULL).unwrap();
    assert_eq!(gb.len(), 2);
    for g in dd.generators() {
        assert!(gb.elements().contains(&g.monic()));
    }
}

#[test]
fn membership() {
    let r = ring(Rationals, &["x", "y"], &[1, 1]);
    let i = ideal(&r, &["x^2"]);
    assert!(!ideal_member(&parse_poly("x", &r).unwrap(), &i, &FULL).unwrap());
    assert!(ideal_member(&parse_poly("x^3*y - x^2", &r).unwrap(), &i, &FULL).unwrap());
    let err = i.contains(&parse_poly("x^5", &r).unwrap(), &GbOptions::truncated(3));
    assert!(matches!(err, Err(Error::TruncationTooLow { available: 3, requested: 5 })));
}

#[test]
fn elimination() {
    let r = ring(Rationals, &["x", "y"], &[2, 1]);
    let e = ideal(&r, &["x - y^2"]).eliminate(&[0], &FULL).unwrap();
    assert!(e.generators().is_empty());
    assert_eq!(e.ring().names(), &["y".to_string()]);

    // twisted cubic: eliminate the parameters
    let r = ring(Rationals, &["s", "t", "a", "b", "c", "d"], &[1, 1, 3, 3, 3, 3]);
    let i = ideal(&r, &["a - s^3", "b - s^2*t", "c - s*t^2", "d - t^3"]);
    let e = i.eliminate(&[0, 1], &FULL).unwrap();
    assert_eq!(e.generators().len(), 3);
    let sub = e.ring().clone();
    for m in ["a*c - b^2", "b*d - c^2", "a*d - b*c"] {
        assert!(e.contains(&parse_poly(m, &sub).unwrap(), &FULL).unwrap());
    }
}

#[test]
fn intersection() {
    let r = ring(Rationals, &["x", "y"], &[1, 1]);
    let i = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"]), &FULL).unwrap();
    assert!(i.equals(&ideal(&r, &["x*y"]), &FULL).unwrap());
    let i = ideal(&r, &["x"]).intersect(&ideal(&r, &["x"]), &FULL).unwrap();
    assert!(i.equals(&ideal(&r, &["x"]), &FULL).unwrap());
    // weighted, non-monomial
    let r = ring(PrimeField::default(), &["x", "y", "z"], &[1, 2, 3]);
    let a = ideal(&r, &["x^2 - y", "z"]);
    let b = ideal(&r, &["y"]);
    let c = a.intersect(&b, &FULL).unwrap();
    for g in c.generators() {
        assert!(a.contains(g, &FULL).unwrap() && b.contains(g, &FULL).unwrap());
    }
    assert!(c.contains(&parse_poly("y*z", &r).unwrap(), &FULL).unwrap());
    assert!(c.contains(&parse_poly("x^2*y - y^2", &r).unwrap(), &FULL).unwrap());
    assert!(!c.contains(&parse_poly("z", &r).unwrap(), &FULL).unwrap());
}

#[test]
fn saturation() {
    let r = ring(Rationals, &["x", "y"], &[1, 1]);
    let x = parse_poly("x", &r).unwrap();
    let s = ideal(&r, &["x^2*y"]).saturate(&x, &FULL).unwrap();
    assert!(s.equals(&ideal(&r, &["y"]), &FULL).unwrap());
    let i = ideal(&r, &["x^2*y", "y^3"]);
    let s = i.saturate(&Polynomial::one(&r), &FULL).unwrap();
    assert!(s.equals(&i, &FULL).unwrap());
    // general element: (x^2 y, x y^2) : (x + y)^∞ contains x y
    let f = parse_poly("x + y", &r).unwrap();
    let s = ideal(&r, &["x^2*y", "x*y^2"]).saturate(&f, &FULL).unwrap();
    assert!(s.equals(&ideal(&r, &["x*y"]), &FULL).unwrap());
    let q = ideal(&r, &["x^2*y", "x*y^2"]).quotient(&x, &FULL).unwrap();
    assert!(q.equals(&ideal(&r, &["x*y", "y^2"]), &FULL).unwrap());
}

#[test]
fn disjointness() {
    let r = ring(Rationals, &["x", "y"], &[1, 1]);
    assert!(!ideal(&r, &["x"]).locus_disjoint(&[1], &FULL).unwrap());
    assert!(ideal(&r, &["x^3 + y^2 * x", "y^2 - x*y"]).locus_disjoint(&[1], &FULL).unwrap());
    assert!(ideal(&r, &["x^2 - y^2", "x*y"]).locus_disjoint(&[0, 1], &FULL).unwrap());
}

#[test]
fn jacobian() {
    let r = ring(PrimeField::default(), &["x", "y", "z", "w"], &[1, 1, 1, 1]);
    let i = ideal(&r, &["x^2 + y^2 + z^2"]);
    let j = jacobian_ideal(&i, 3, &FULL).unwrap();
    assert_eq!(j.codim, 1);
    assert_eq!(hilbert::krull_dimension(&j.singular, &FULL).unwrap(), 0);

    let r = ring(PrimeField::default(), &["x", "y", "z"], &[1, 1, 1]);
    let smooth = ideal(&r, &["x^2 + y^2 + z^2"]);
    let j = jacobian_ideal(&smooth, 2, &FULL).unwrap();
    assert_eq!(hilbert::krull_dimension(&j.singular, &FULL).unwrap(), -1);

    let r = ring(PrimeField::default(), &["x", "y"], &[1, 2]);
    assert!(matches!(jacobian_ideal(&ideal(&r, &["y"]), 1, &FULL), Err(Error::ChartWeight(_))));
}

#[test]
fn minors_closed_form() {
    let r = ring(Rationals, &["a", "b", "c", "d"], &[1, 1, 1, 1]);
    let v = polys(&r, &["a", "b", "c", "d"]);
    let m = vec![vec![v[0].clone(), v[1].clone()], vec![v[2].clone(), v[3].clone()]];
    assert_eq!(maximal_minors(&m, 2), polys(&r, &["a*d - b*c"]));
    assert_eq!(maximal_minors(&m, 1).len(), 4);
}

#[test]
fn truncated_matches_full_in_low_degrees() {
    let r = ring(PrimeField::default(), &["x", "y", "z", "w"], &[1, 1, 2, 3]);
    let i = ideal(&r, &["x*w - z^2", "y*z - x^3", "w^2 - x*y*z^2 + y^6", "x^2*z - y*w"]);
    let full = i.groebner(&FULL).unwrap();
    for d in [3u32, 5, 7] {
        let t = i.groebner(&GbOptions::truncated(d)).unwrap();
        let low = |gb: &GroebnerBasis<PrimeField>| {
            let mut v: Vec<_> = gb.elements().iter().filter(|p| p.degree().unwrap() <= d).cloned().collect();
            v.sort_by_key(|p| p.to_string());
            v
        };
        assert_eq!(low(&t), low(&full), "degree {d}");
        let hs_t = hilbert::series_of_basis(&t).coefficients(d as usize).unwrap();
        let hs_f = hilbert::series_of_basis(&full).coefficients(d as usize).unwrap();
        assert_eq!(hs_t, hs_f);
    }
}

#[test]
fn timeout_is_reported() {
    let r = ring(PrimeField::default(), &["x", "y", "z"], &[1, 1, 1]);
    let i = ideal(&r, &["x^5 + y^5 + z^5", "x^3*y^2 + z^5 - y*z^4", "x*y*z^3 - y^5"]);
    let opts = GbOptions { truncation: None, time_budget: Some(std::time::Duration::ZERO) };
    assert!(matches!(i.groebner(&opts), Err(Error::Timeout(_))));
}
