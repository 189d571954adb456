//! Vectors in graded free modules, the two module orders used here, and the
//! reductions built on them.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::time::Instant;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::ring::{Monomial, Ring};

/// `k * m * e_c`; `key` caches the monomial the order compares first.
#[derive(Clone, Debug)]
pub(crate) struct Term<E> {
    pub m: Monomial,
    pub c: usize,
    pub key: Monomial,
    pub k: E,
}

/// Signatures and lead components of the generators at each level of a
/// Schreyer frame. Level 0 is the ring itself.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub sig: Vec<Vec<Monomial>>,
    pub parent: Vec<Vec<usize>>,
}

impl Frame {
    pub fn new(nvars: usize) -> Self {
        Frame { sig: vec![vec![Monomial::one(nvars)]], parent: vec![vec![0]] }
    }

    /// Ties between terms with equal signature are decided by generator index
    /// at the deepest level where the two chains still differ.
    fn tie(&self, level: usize, i: usize, j: usize) -> Ordering {
        if i == j || level == 0 {
            return Ordering::Equal;
        }
        let (pi, pj) = (self.parent[level][i], self.parent[level][j]);
        if pi == pj {
            j.cmp(&i)
        } else {
            self.tie(level - 1, pi, pj)
        }
    }
}

pub(crate) enum Order<'a> {
    /// Order on the free module at `level` induced by the frame.
    Schreyer { frame: &'a Frame, level: usize },
    /// Components below `cut` dominate; inside each block, degree then
    /// monomial then position.
    Elim { cut: usize, twists: &'a [i64] },
}

impl Order<'_> {
    pub fn key(&self, m: &Monomial, c: usize) -> Monomial {
        match self {
            Order::Schreyer { frame, level } => m.mul(&frame.sig[*level][c]),
            Order::Elim { .. } => m.clone(),
        }
    }

    pub fn cmp<F: Field>(&self, ring: &Ring<F>, a: &Term<F::Elem>, b: &Term<F::Elem>) -> Ordering {
        match self {
            Order::Schreyer { frame, level } => {
                ring.cmp(&a.key, &b.key).then_with(|| frame.tie(*level, a.c, b.c))
            }
            Order::Elim { cut, twists } => (a.c < *cut)
                .cmp(&(b.c < *cut))
                .then_with(|| {
                    (a.m.degree() as i64 + twists[a.c]).cmp(&(b.m.degree() as i64 + twists[b.c]))
                })
                .then_with(|| ring.cmp(&a.m, &b.m))
                .then_with(|| b.c.cmp(&a.c)),
        }
    }

    pub fn term<E>(&self, m: Monomial, c: usize, k: E) -> Term<E> {
        let key = self.key(&m, c);
        Term { m, c, key, k }
    }

    /// Sorts descending and merges like terms.
    pub fn normalize<F: Field>(&self, ring: &Ring<F>, mut terms: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
        terms.sort_by(|a, b| self.cmp(ring, b, a));
        let field = ring.field();
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.c == t.c && last.m == t.m {
                    last.k = field.add(&last.k, &t.k);
                    if field.is_zero(&last.k) {
                        out.pop();
                    }
                    continue;
                }
            }
            if !field.is_zero(&t.k) {
                out.push(t);
            }
        }
        out
    }
}

/// `a - c * q * b`, both sorted descending in `order`.
pub(crate) fn sub_scaled<F: Field>(
    ring: &Ring<F>,
    order: &Order,
    a: &[Term<F::Elem>],
    b: &[Term<F::Elem>],
    q: &Monomial,
    c: &F::Elem,
) -> Vec<Term<F::Elem>> {
    let field = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b
        .iter()
        .map(|t| Term { m: t.m.mul(q), c: t.c, key: t.key.mul(q), k: field.neg(&field.mul(c, &t.k)) })
        .peekable();
    while i < a.len() {
        let Some(bt) = bi.peek() else { break };
        match order.cmp(ring, &a[i], bt) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => out.push(bi.next().unwrap()),
            Ordering::Equal => {
                let bt = bi.next().unwrap();
                let k = field.add(&a[i].k, &bt.k);
                if !field.is_zero(&k) {
                    out.push(Term { k, ..a[i].clone() });
                }
                i += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(bi);
    out
}

/// Lead-term lookup for vectors, bucketed by lead component.
pub(crate) struct Divisors<'a, E> {
    by_comp: Vec<Vec<(usize, &'a Monomial)>>,
    _e: std::marker::PhantomData<E>,
}

impl<'a, E> Divisors<'a, E> {
    pub fn new(vectors: &'a [Vec<Term<E>>], ncomps: usize) -> Self {
        let mut by_comp = vec![Vec::new(); ncomps];
        for (i, v) in vectors.iter().enumerate() {
            if let Some(t) = v.first() {
                by_comp[t.c].push((i, &t.m));
            }
        }
        Divisors { by_comp, _e: std::marker::PhantomData }
    }

    pub fn find(&self, m: &Monomial, c: usize) -> Option<(usize, Monomial)> {
        self.by_comp[c].iter().find_map(|(i, lead)| lead.divide_into(m).map(|q| (*i, q)))
    }
}

/// Reduces `v` until its lead is not divisible by any basis lead; returns the
/// remainder and the quotient terms `(q, basis index, coefficient)`.
pub(crate) fn top_reduce<F: Field>(
    ring: &Ring<F>,
    order: &Order,
    basis: &[Vec<Term<F::Elem>>],
    divisors: &Divisors<F::Elem>,
    mut v: Vec<Term<F::Elem>>,
) -> (Vec<Term<F::Elem>>, Vec<(Monomial, usize, F::Elem)>) {
    let field = ring.field();
    let mut quotient = Vec::new();
    while let Some(lead) = v.first() {
        let Some((l, q)) = divisors.find(&lead.m, lead.c) else { break };
        let c = field.div(&lead.k, &basis[l][0].k).expect("basis leads are nonzero");
        v = sub_scaled(ring, order, &v, &basis[l], &q, &c);
        quotient.push((q, l, c));
    }
    (v, quotient)
}

/// Gröbner basis of the submodule generated by homogeneous `gens`, in the
/// elimination order. Plain Buchberger, processed degree by degree.
pub(crate) fn module_groebner<F: Field>(
    ring: &Ring<F>,
    order: &Order,
    twists: &[i64],
    gens: Vec<Vec<Term<F::Elem>>>,
    deadline: Option<Instant>,
    started: Instant,
) -> Result<Vec<Vec<Term<F::Elem>>>> {
    let ncomps = twists.len();
    let degree = |v: &[Term<F::Elem>]| v[0].m.degree() as i64 + twists[v[0].c];
    let mut basis: Vec<Vec<Term<F::Elem>>> = Vec::new();
    // (degree, item): either an input vector or a pair of basis indices.
    let mut queue: VecDeque<(i64, Option<Vec<Term<F::Elem>>>, usize, usize)> =
        gens.into_iter().filter(|g| !g.is_empty()).map(|g| (degree(&g), Some(g), 0, 0)).collect();
    while !queue.is_empty() {
        if let Some(d) = deadline {
            if Instant::now() > d {
                return Err(Error::Timeout(started.elapsed().as_millis()));
            }
        }
        let best = (0..queue.len()).min_by_key(|&i| queue[i].0).unwrap();
        let (_, item, i, j) = queue.remove(best).unwrap();
        let v = match item {
            Some(v) => v,
            None => {
                let (a, b) = (&basis[i][0], &basis[j][0]);
                let l = a.m.lcm(&b.m, ring.weights());
                let qa = a.m.divide_into(&l).unwrap();
                let qb = b.m.divide_into(&l).unwrap();
                let field = ring.field();
                let inv_a = field.inv(&a.k).unwrap();
                let first: Vec<_> = basis[i]
                    .iter()
                    .map(|t| Term { m: t.m.mul(&qa), c: t.c, key: t.key.mul(&qa), k: field.mul(&t.k, &inv_a) })
                    .collect();
                let cbi = field.inv(&b.k).unwrap();
                sub_scaled(ring, order, &first, &basis[j], &qb, &cbi)
            }
        };
        let divisors = Divisors::new(&basis, ncomps);
        let (r, _) = top_reduce(ring, order, &basis, &divisors, v);
        if r.is_empty() {
            continue;
        }
        let n = basis.len();
        for (k, b) in basis.iter().enumerate() {
            if b[0].c == r[0].c {
                let l = b[0].m.lcm(&r[0].m, ring.weights());
                queue.push_back((l.degree() as i64 + twists[r[0].c], None, k, n));
            }
        }
        basis.push(r);
    }
    Ok(basis)
}
