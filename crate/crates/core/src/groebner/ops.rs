use std::sync::Arc;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::hilbert;
use crate::ring::{MonomialOrder, Polynomial, Ring, RingRef};

use super::{GbOptions, GroebnerBasis, Ideal};

/// Ring with the listed variables moved to the front as an elimination block.
fn block_ring<F: Field>(
    ring: &RingRef<F>,
    front: &[usize],
) -> Result<(RingRef<F>, Vec<usize>, Vec<usize>)> {
    let n = ring.nvars();
    let back: Vec<usize> = (0..n).filter(|i| !front.contains(i)).collect();
    let perm: Vec<usize> = front.iter().chain(&back).copied().collect();
    let names: Vec<&str> = perm.iter().map(|&i| ring.names()[i].as_str()).collect();
    let weights: Vec<u32> = perm.iter().map(|&i| ring.weights()[i]).collect();
    let block = Ring::with_auxiliary(
        ring.field().clone(),
        &names,
        &weights,
        MonomialOrder::EliminationBlock { cutoff: front.len() },
    )?;
    // map[i] = position of source variable i in the block ring
    let mut map = vec![0; n];
    for (pos, &i) in perm.iter().enumerate() {
        map[i] = pos;
    }
    Ok((block, map, back))
}

/// `I ∩ k[variables not in drop]`, as an ideal of the subring (variables in their original order).
pub(crate) fn eliminate<F: Field>(ideal: &Ideal<F>, drop: &[usize], opts: &GbOptions) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    if let Some(&bad) = drop.iter().find(|&&i| i >= ring.nvars()) {
        return Err(Error::Ring(format!("no variable with index {bad}")));
    }
    let (block, map, keep) = block_ring(ring, drop)?;
    let gens: Vec<_> = ideal.generators().iter().map(|g| g.map_vars(&block, &map)).collect();
    let gb = Ideal::new(&block, gens)?.groebner(opts)?;
    let sub = ring.subring(&keep)?;
    let positions: Vec<usize> = (drop.len()..ring.nvars()).collect();
    let kept: Vec<_> = gb.elements().iter().filter_map(|g| g.restrict(&sub, &positions)).collect();
    let mut out = Ideal::new(&sub, kept.clone())?;
    // the second block is ordered by weighted grevlex, which is the subring's order
    if sub.weights().iter().all(|&w| w > 0) {
        let elements = super::buchberger::interreduce(&sub, kept);
        out.gb = Some(Arc::new(GroebnerBasis { ring: sub.clone(), elements, truncation: gb.truncation() }));
    }
    Ok(out)
}

fn fresh_name<F: Field>(ring: &Ring<F>, base: &str) -> String {
    let mut name = base.to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// `I ∩ J` via `t I + (1 - t) J` with a weight-0 auxiliary `t` eliminated first.
pub(crate) fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>, opts: &GbOptions) -> Result<Ideal<F>> {
    let ring = i.ring();
    if j.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let n = ring.nvars();
    let t = fresh_name(ring, "t");
    let mut names = vec![t.as_str()];
    names.extend(ring.names().iter().map(|s| s.as_str()));
    let mut weights = vec![0];
    weights.extend(ring.weights());
    let big = Ring::with_auxiliary(
        ring.field().clone(),
        &names,
        &weights,
        MonomialOrder::EliminationBlock { cutoff: 1 },
    )?;
    let map: Vec<usize> = (1..=n).collect();
    let tv = Polynomial::var(&big, 0);
    let one_minus_t = Polynomial::one(&big).sub(&tv);
    let mut gens = Vec::new();
    for f in i.generators() {
        gens.push(tv.mul(&f.map_vars(&big, &map)));
    }
    for g in j.generators() {
        gens.push(one_minus_t.mul(&g.map_vars(&big, &map)));
    }
    let gb = Ideal::new(&big, gens)?.groebner(opts)?;
    let keep: Vec<usize> = (1..=n).collect();
    let kept: Vec<_> = gb.elements().iter().filter_map(|g| g.restrict(ring, &keep)).collect();
    Ideal::new(ring, kept)
}

/// `I : f`.
pub(crate) fn quotient<F: Field>(ideal: &Ideal<F>, f: &Polynomial<F>, opts: &GbOptions) -> Result<Ideal<F>> {
    if f.is_zero() {
        return Ideal::new(ideal.ring(), vec![Polynomial::one(ideal.ring())]);
    }
    if f.is_unit() {
        return Ideal::new(ideal.ring(), ideal.generators().to_vec());
    }
    let principal = Ideal::new(ideal.ring(), vec![f.clone()])?;
    let both = intersect(ideal, &principal, opts)?;
    let gens = both
        .generators()
        .iter()
        .map(|g| g.divide_exact(f).ok_or_else(|| Error::Check("intersection element not divisible by f".into())))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring(), gens)
}

/// `I : x_k^∞` for homogeneous `I`: a grevlex basis with `x_k` last, divided by powers of `x_k`.
fn saturate_variable<F: Field>(ideal: &Ideal<F>, k: usize, opts: &GbOptions) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let perm: Vec<usize> = (0..n).filter(|&i| i != k).chain([k]).collect();
    let names: Vec<&str> = perm.iter().map(|&i| ring.names()[i].as_str()).collect();
    let weights: Vec<u32> = perm.iter().map(|&i| ring.weights()[i]).collect();
    let last = Ring::with_auxiliary(ring.field().clone(), &names, &weights, MonomialOrder::WeightedGrevlex)?;
    let mut map = vec![0; n];
    for (pos, &i) in perm.iter().enumerate() {
        map[i] = pos;
    }
    let gens: Vec<_> = ideal.generators().iter().map(|g| g.map_vars(&last, &map)).collect();
    let gb = Ideal::new(&last, gens)?.groebner(&GbOptions { truncation: None, ..*opts })?;
    let mut inverse = vec![0; n];
    for (i, &pos) in map.iter().enumerate() {
        inverse[pos] = i;
    }
    let out = gb
        .elements()
        .iter()
        .map(|g| {
            let e = g.content_monomial().exps()[n - 1];
            let mut exps = vec![0u16; n];
            exps[n - 1] = e;
            g.div_monomial(&last.monomial(&exps)).expect("content divides").map_vars(ring, &inverse)
        })
        .collect();
    Ideal::new(ring, out)
}

/// `I : f^∞`. Variables and monomials of homogeneous ideals use the grevlex
/// trick; anything else iterates `I : f` until it stabilizes.
pub(crate) fn saturate<F: Field>(ideal: &Ideal<F>, f: &Polynomial<F>, opts: &GbOptions) -> Result<Ideal<F>> {
    if f.is_unit() {
        return Ideal::new(ideal.ring(), ideal.generators().to_vec());
    }
    if f.is_zero() {
        return Ideal::new(ideal.ring(), vec![Polynomial::one(ideal.ring())]);
    }
    if f.len() == 1 && ideal.is_homogeneous() {
        let mut cur = ideal.clone();
        for (k, &e) in f.lead_monomial().unwrap().exps().iter().enumerate() {
            if e > 0 {
                cur = saturate_variable(&cur, k, opts)?;
            }
        }
        return Ok(cur);
    }
    let full = GbOptions { truncation: None, ..*opts };
    let mut cur = ideal.clone();
    loop {
        let next = quotient(&cur, f, &full)?;
        if cur.contains_ideal(&next, &full)? {
            return Ok(next);
        }
        cur = next;
    }
}

/// Whether `V(I)` misses the coordinate subspace spanned by `kept`: after
/// setting every other variable to zero, the restricted ideal must contain a
/// power of each kept variable (read off the lead monomials of its basis).
pub(crate) fn locus_disjoint<F: Field>(ideal: &Ideal<F>, kept: &[usize], opts: &GbOptions) -> Result<bool> {
    let ring = ideal.ring();
    let others: Vec<usize> = (0..ring.nvars()).filter(|i| !kept.contains(i)).collect();
    let sub = ring.subring(kept)?;
    let gens: Vec<_> = ideal
        .generators()
        .iter()
        .map(|g| g.set_zero(&others).restrict(&sub, kept).expect("other variables were zeroed"))
        .collect();
    let gb = Ideal::new(&sub, gens)?.groebner(&GbOptions { truncation: None, ..*opts })?;
    let leads = gb.lead_monomials();
    Ok((0..kept.len()).all(|v| leads.iter().any(|m| m.pure_power_var() == Some(v))))
}

/// All `k × k` minors of a matrix (rows × columns), rows and columns in lexicographic order.
pub fn maximal_minors<F: Field>(matrix: &[Vec<Polynomial<F>>], k: usize) -> Vec<Polynomial<F>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    if k == 0 || k > rows || k > cols {
        return out;
    }
    for rs in combinations(rows, k) {
        for cs in combinations(cols, k) {
            out.push(determinant(matrix, &rs, &cs));
        }
    }
    out
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Laplace expansion along the first selected row.
fn determinant<F: Field>(m: &[Vec<Polynomial<F>>], rows: &[usize], cols: &[usize]) -> Polynomial<F> {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let ring = m[rows[0]][cols[0]].ring();
    let mut acc = Polynomial::zero(ring);
    for (idx, &c) in cols.iter().enumerate() {
        let entry = &m[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.mul(&determinant(m, &rows[1..], &rest));
        acc = if idx % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Affine singular-locus data for one weight-1 chart.
#[derive(Clone, Debug)]
pub struct JacobianIdeal<F: Field> {
    /// The ideal dehomogenized at the chart variable.
    pub affine: Ideal<F>,
    /// Codimension of the affine piece (number of variables minus its dimension).
    pub codim: usize,
    /// `affine + (codim × codim minors of the Jacobian matrix)`.
    pub singular: Ideal<F>,
}

/// Singular locus of `V(I)` in the chart `x_chart = 1`, which must have weight 1.
pub fn jacobian_ideal<F: Field>(ideal: &Ideal<F>, chart: usize, opts: &GbOptions) -> Result<JacobianIdeal<F>> {
    let ring = ideal.ring();
    if ring.weights().get(chart) != Some(&1) {
        let name = ring.names().get(chart).cloned().unwrap_or_else(|| chart.to_string());
        return Err(Error::ChartWeight(name));
    }
    let keep: Vec<usize> = (0..ring.nvars()).filter(|&i| i != chart).collect();
    let aff = ring.subring(&keep)?;
    let images: Vec<Polynomial<F>> = (0..ring.nvars())
        .map(|i| {
            if i == chart {
                Polynomial::one(&aff)
            } else {
                Polynomial::var(&aff, keep.iter().position(|&k| k == i).unwrap())
            }
        })
        .collect();
    let gens = ideal.generators().iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
    let full = GbOptions { truncation: None, ..*opts };
    let affine = Ideal::new(&aff, gens)?.with_gb(&full)?;
    let gb = affine.cached_gb().unwrap();
    let dim = hilbert::krull_dimension_of_basis(gb);
    if dim < 0 {
        let singular = affine.clone();
        return Ok(JacobianIdeal { affine, codim: aff.nvars() + 1, singular });
    }
    let codim = aff.nvars() - dim as usize;
    let matrix: Vec<Vec<Polynomial<F>>> = affine
        .generators()
        .iter()
        .map(|g| (0..aff.nvars()).map(|v| g.derivative(v)).collect())
        .collect();
    let minors = maximal_minors(&matrix, codim);
    let singular = affine.plus(&minors)?;
    Ok(JacobianIdeal { affine, codim, singular })
}
