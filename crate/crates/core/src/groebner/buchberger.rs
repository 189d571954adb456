//! Buchberger's algorithm with the sugar/normal selection strategy and the
//! Gebauer–Möller pair criteria.

use std::cmp::Ordering;
use std::time::Instant;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::ring::{Monomial, Polynomial, Ring, RingRef};

/// Lead-monomial lookup over a set of monic basis elements.
pub(crate) struct Reducer<'a, F: Field> {
    polys: Vec<&'a Polynomial<F>>,
    masks: Vec<u64>,
}

impl<'a, F: Field> Reducer<'a, F> {
    pub(crate) fn new(polys: impl IntoIterator<Item = &'a Polynomial<F>>) -> Self {
        let polys: Vec<_> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        let masks = polys.iter().map(|p| p.lead_monomial().unwrap().support_mask()).collect();
        Reducer { polys, masks }
    }

    #[inline]
    fn find(&self, m: &Monomial) -> Option<&'a Polynomial<F>> {
        let mask = m.support_mask();
        for (p, &pm) in self.polys.iter().zip(&self.masks) {
            if pm & !mask == 0 && p.lead_monomial().unwrap().divides(m) {
                return Some(p);
            }
        }
        None
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// `tail - c * q * g[1..]`, all lists sorted descending.
fn sub_scaled<F: Field>(
    ring: &Ring<F>,
    tail: &[(Monomial, F::Elem)],
    g: &[(Monomial, F::Elem)],
    q: &Monomial,
    c: &F::Elem,
) -> Vec<(Monomial, F::Elem)> {
    let field = ring.field();
    let mut out = Vec::with_capacity(tail.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(m, a)| (m.mul(q), a)).peekable();
    while i < tail.len() {
        let Some((gm, ga)) = gi.peek() else { break };
        match ring.cmp(&tail[i].0, gm) {
            Ordering::Greater => {
                out.push(tail[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.clone(), field.neg(&field.mul(c, ga))));
                gi.next();
            }
            Ordering::Equal => {
                let v = field.sub(&tail[i].1, &field.mul(c, ga));
                if !field.is_zero(&v) {
                    out.push((tail[i].0.clone(), v));
                }
                i += 1;
                gi.next();
            }
        }
    }
    out.extend(tail[i..].iter().cloned());
    for (gm, ga) in gi {
        out.push((gm, field.neg(&field.mul(c, ga))));
    }
    out
}

/// Division algorithm. With `full = false` only the lead term is reduced.
/// Reducers must be monic.
pub(crate) fn reduce<F: Field>(
    p: &Polynomial<F>,
    reducer: &Reducer<'_, F>,
    full: bool,
) -> Polynomial<F> {
    let ring = p.ring().clone();
    if reducer.is_empty() || p.is_zero() {
        return p.clone();
    }
    let mut done: Vec<(Monomial, F::Elem)> = Vec::new();
    let mut cur: Vec<(Monomial, F::Elem)> = p.terms().to_vec();
    let mut pos = 0;
    while pos < cur.len() {
        match reducer.find(&cur[pos].0) {
            Some(g) => {
                let q = g.lead_monomial().unwrap().divide_into(&cur[pos].0).unwrap();
                let next = sub_scaled(&ring, &cur[pos + 1..], &g.terms()[1..], &q, &cur[pos].1);
                let old = std::mem::replace(&mut cur, next);
                done.extend(old.into_iter().take(pos));
                pos = 0;
            }
            None if !full => break,
            None => pos += 1,
        }
    }
    done.extend(cur);
    Polynomial::from_sorted_terms(&ring, done)
}

/// Normal form of `p` with respect to `basis` (need not be a Gröbner basis).
/// All polynomials must share a ring; the result has no term divisible by a
/// lead monomial of `basis`.
pub fn normal_form<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let monic: Vec<Polynomial<F>> = basis.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    reduce(p, &Reducer::new(&monic), true)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Result of a Buchberger run.
#[derive(Clone, Debug)]
pub struct GbRun<F: Field> {
    pub basis: Vec<Polynomial<F>>,
    pub truncation: Option<u32>,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
}

/// Reduced Gröbner basis of the ideal generated by `gens` in their ring's order.
/// With `truncation = Some(d)` the input must be homogeneous and only S-pairs
/// of degree at most `d` are treated.
pub fn buchberger<F: Field>(
    ring: &RingRef<F>,
    gens: &[Polynomial<F>],
    truncation: Option<u32>,
    deadline: Option<Instant>,
) -> Result<GbRun<F>> {
    let started = Instant::now();
    let homogeneous = gens.iter().all(|g| g.is_homogeneous());
    if truncation.is_some() && !homogeneous {
        return Err(Error::NotHomogeneous("degree truncation needs homogeneous generators".into()));
    }
    let mut polys: Vec<Polynomial<F>> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pairs_reduced = 0;
    let mut zero_reductions = 0;

    // input sorted by degree so that low-degree generators reduce the others first
    let mut input: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    input.sort_by(|a, b| {
        a.degree().cmp(&b.degree()).then_with(|| ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()))
    });
    let mut queue: Vec<(Polynomial<F>, u32)> = Vec::new();
    for g in input {
        let s = g.degree().unwrap();
        if truncation.is_some_and(|d| s > d) {
            continue;
        }
        queue.push((g, s));
    }
    queue.reverse();

    loop {
        if let Some(dl) = deadline {
            if Instant::now() > dl {
                return Err(Error::Timeout(started.elapsed().as_millis()));
            }
        }
        // next element to reduce: pending inputs of lowest sugar compete with pairs
        let next_pair = select_pair(ring, &pairs);
        let take_input = match (queue.last(), next_pair) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some((_, s)), Some(k)) => *s <= pairs[k].sugar,
        };
        let (h, s) = if take_input {
            queue.pop().unwrap()
        } else {
            let pair = pairs.swap_remove(next_pair.unwrap());
            pairs_reduced += 1;
            (spoly(ring, &polys[pair.i], &polys[pair.j], &pair.lcm), pair.sugar)
        };
        let reducer = Reducer::new(active.iter().map(|&k| &polys[k]));
        let h = reduce(&h, &reducer, true);
        if h.is_zero() {
            if !take_input {
                zero_reductions += 1;
            }
            continue;
        }
        if h.is_unit() {
            return Ok(GbRun {
                basis: vec![Polynomial::one(ring)],
                truncation,
                pairs_reduced,
                zero_reductions,
            });
        }
        let h = h.monic();
        let k = polys.len();
        let s = s.max(h.degree().unwrap());
        polys.push(h);
        sugar.push(s);
        update(ring, &polys, &sugar, &mut active, &mut pairs, k, truncation);
    }

    let basis = interreduce(ring, active.iter().map(|&k| polys[k].clone()).collect());
    Ok(GbRun { basis, truncation, pairs_reduced, zero_reductions })
}

fn select_pair<F: Field>(ring: &Ring<F>, pairs: &[Pair]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, p) in pairs.iter().enumerate() {
        best = match best {
            None => Some(k),
            Some(b) => {
                let q = &pairs[b];
                let ord = p
                    .sugar
                    .cmp(&q.sugar)
                    .then_with(|| ring.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)));
                if ord == Ordering::Less {
                    Some(k)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

fn spoly<F: Field>(
    ring: &RingRef<F>,
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    lcm: &Monomial,
) -> Polynomial<F> {
    // both monic: S = (lcm/lt f) f - (lcm/lt g) g, lead terms cancel
    let qf = f.lead_monomial().unwrap().divide_into(lcm).unwrap();
    let qg = g.lead_monomial().unwrap().divide_into(lcm).unwrap();
    let one = ring.field().one();
    let terms = sub_scaled(
        ring,
        &f.terms()[1..].iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect::<Vec<_>>(),
        &g.terms()[1..],
        &qg,
        &one,
    );
    Polynomial::from_sorted_terms(ring, terms)
}

/// Gebauer–Möller installation of the new element `k`.
fn update<F: Field>(
    ring: &Ring<F>,
    polys: &[Polynomial<F>],
    sugar: &[u32],
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    k: usize,
    truncation: Option<u32>,
) {
    let weights = ring.weights();
    let lh = polys[k].lead_monomial().unwrap().clone();
    let lead = |i: usize| polys[i].lead_monomial().unwrap();

    let candidates: Vec<(usize, Monomial)> =
        active.iter().map(|&g| (g, lh.lcm(lead(g), weights))).collect();

    // chain criterion among the new pairs: drop (h,g) when some other lcm(h,g') divides it
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (idx, (g, l)) in candidates.iter().enumerate() {
        let coprime = lh.is_coprime(lead(*g));
        let dominated = candidates[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
            || kept.iter().any(|(_, l2)| l2.divides(l));
        if coprime || !dominated {
            kept.push((*g, l.clone()));
        }
    }
    // product criterion
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|(g, _)| !lh.is_coprime(lead(*g)))
        .map(|(g, l)| {
            let s = (sugar[k] + l.degree() - lh.degree())
                .max(sugar[g] + l.degree() - lead(g).degree());
            Pair { i: g, j: k, lcm: l, sugar: s }
        })
        .collect();

    // old pairs made redundant by the new lead
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && lh.lcm(lead(p.i), weights) != p.lcm
            && lh.lcm(lead(p.j), weights) != p.lcm)
    });
    pairs.extend(new_pairs.into_iter().filter(|p| truncation.is_none_or(|d| p.lcm.degree() <= d)));

    active.retain(|&g| !lh.divides(lead(g)));
    active.push(k);
}

/// Minimal, fully reduced, monic basis sorted by ascending lead monomial.
pub(crate) fn interreduce<F: Field>(
    ring: &RingRef<F>,
    mut basis: Vec<Polynomial<F>>,
) -> Vec<Polynomial<F>> {
    basis.retain(|p| !p.is_zero());
    basis.sort_by(|a, b| ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for p in basis {
        let lm = p.lead_monomial().unwrap();
        if !minimal.iter().any(|q| q.lead_monomial().unwrap().divides(lm)) {
            minimal.push(p.monic());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let reducer = Reducer::new(minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q));
        let head = Polynomial::from_sorted_terms(ring, minimal[i].terms()[..1].to_vec());
        let tail = Polynomial::from_sorted_terms(ring, minimal[i].terms()[1..].to_vec());
        out.push(head.add(&reduce(&tail, &reducer, true)));
    }
    out
}
