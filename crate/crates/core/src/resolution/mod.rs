//! Graded free resolutions by Schreyer's algorithm, pruned to minimal ones,
//! and the Betti tables read off from them.

mod module;

use std::fmt;
use std::time::Instant;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::groebner::{GbOptions, Ideal};
use crate::hilbert::RationalSeries;
use crate::ring::{Monomial, Polynomial, RingRef};

use module::{module_groebner, top_reduce, Divisors, Frame, Order, Term};

/// A graded free module, recorded by the degrees of its basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedFreeModule {
    pub twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(mut twists: Vec<i64>) -> Self {
        twists.sort_unstable();
        GradedFreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// A homogeneous map of graded free modules: entry `(i, j)` has degree
/// `col_twists[j] - row_twists[i]` or is zero.
#[derive(Clone, Debug)]
pub struct SyzygyMatrix<F: Field> {
    ring: RingRef<F>,
    row_twists: Vec<i64>,
    col_twists: Vec<i64>,
    entries: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> SyzygyMatrix<F> {
    pub fn new(
        ring: &RingRef<F>,
        row_twists: Vec<i64>,
        col_twists: Vec<i64>,
        entries: Vec<Vec<Polynomial<F>>>,
    ) -> Result<Self> {
        if entries.len() != row_twists.len() || entries.iter().any(|r| r.len() != col_twists.len()) {
            return Err(Error::Ring("matrix shape does not match its twists".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                if e.is_zero() {
                    continue;
                }
                match e.homogeneous_degree() {
                    Some(d) if d as i64 == col_twists[j] - row_twists[i] => {}
                    _ => {
                        return Err(Error::NotHomogeneous(format!(
                            "entry ({i}, {j}) = {e} should have degree {}",
                            col_twists[j] - row_twists[i]
                        )))
                    }
                }
            }
        }
        Ok(SyzygyMatrix { ring: ring.clone(), row_twists, col_twists, entries })
    }

    /// The 1×n matrix of a generator list (target the ring in degree 0).
    pub fn from_generators(ring: &RingRef<F>, gens: &[Polynomial<F>]) -> Result<Self> {
        let cols = gens.iter().map(|g| g.homogeneous_degree().unwrap_or(0) as i64).collect();
        SyzygyMatrix::new(ring, vec![0], cols, vec![gens.to_vec()])
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.row_twists.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_twists.len()
    }

    pub fn row_twists(&self) -> &[i64] {
        &self.row_twists
    }

    pub fn col_twists(&self) -> &[i64] {
        &self.col_twists
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial<F>> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// `self * other`; `other`'s rows must be `self`'s columns.
    pub fn compose(&self, other: &SyzygyMatrix<F>) -> Result<SyzygyMatrix<F>> {
        if self.col_twists != other.row_twists {
            return Err(Error::Ring("matrices are not composable".into()));
        }
        let zero = Polynomial::zero(&self.ring);
        let mut entries = vec![vec![zero; other.ncols()]; self.nrows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                for k in 0..self.ncols() {
                    let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                    if !a.is_zero() && !b.is_zero() {
                        *out = out.add(&a.mul(b));
                    }
                }
            }
        }
        Ok(SyzygyMatrix {
            ring: self.ring.clone(),
            row_twists: self.row_twists.clone(),
            col_twists: other.col_twists.clone(),
            entries,
        })
    }

    fn remove_row(&mut self, i: usize) {
        self.entries.remove(i);
        self.row_twists.remove(i);
    }

    fn remove_col(&mut self, j: usize) {
        for r in &mut self.entries {
            r.remove(j);
        }
        self.col_twists.remove(j);
    }

    fn unit_entry(&self) -> Option<(usize, usize)> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_unit() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl<F: Field> fmt::Display for SyzygyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "| {} |", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Ranks and twists of a graded free resolution, from the ring (step 0) on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub steps: Vec<GradedFreeModule>,
    /// False when the computation stopped at `max_steps` with a nonzero kernel.
    pub complete: bool,
}

impl BettiTable {
    pub fn ranks(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.rank()).collect()
    }

    pub fn projective_dimension(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    /// `sum_i (-1)^i sum_{d in twists(i)} t^d`, indexed by degree.
    pub fn euler_numerator(&self) -> Vec<i64> {
        let top = self.steps.iter().flat_map(|s| s.twists.iter()).copied().max().unwrap_or(0);
        let mut out = vec![0i64; top.max(0) as usize + 1];
        for (i, s) in self.steps.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &d in &s.twists {
                out[d as usize] += sign;
            }
        }
        out
    }

    /// The Hilbert series the table predicts for the quotient ring.
    pub fn euler_series(&self, weights: &[u32]) -> RationalSeries {
        RationalSeries::new(self.euler_numerator(), weights.to_vec())
    }

    /// Twists at step `i` are `shift - d` for the twists `d` at step `pd - i`.
    pub fn is_self_dual(&self, shift: i64) -> bool {
        let pd = self.projective_dimension();
        (0..=pd).all(|i| {
            let mut mirrored: Vec<i64> = self.steps[pd - i].twists.iter().map(|d| shift - d).collect();
            mirrored.sort_unstable();
            mirrored == self.steps[i].twists
        })
    }

    pub fn last_twists(&self) -> &[i64] {
        self.steps.last().map(|s| s.twists.as_slice()).unwrap_or(&[])
    }
}

/// The usual staircase: column `i`, row `r` holds the number of twists `i + r` at step `i`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.steps.len();
        let rows: Vec<i64> = self
            .steps
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.twists.iter().map(move |d| d - i as i64))
            .collect();
        let (lo, hi) = match (rows.iter().min(), rows.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => return writeln!(f, "total:"),
        };
        let mut grid: Vec<Vec<String>> = Vec::new();
        grid.push((0..n).map(|i| i.to_string()).collect());
        grid.push(self.steps.iter().map(|s| s.rank().to_string()).collect());
        for r in lo..=hi {
            grid.push(
                self.steps
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let c = s.twists.iter().filter(|&&d| d - i as i64 == r).count();
                        if c == 0 { ".".to_string() } else { c.to_string() }
                    })
                    .collect(),
            );
        }
        let mut labels = vec![String::new(), "total:".to_string()];
        labels.extend((lo..=hi).map(|r| format!("{r}:")));
        let lw = labels.iter().map(|l| l.len()).max().unwrap();
        let widths: Vec<usize> = (0..n).map(|i| grid.iter().map(|row| row[i].len()).max().unwrap()).collect();
        for (label, row) in labels.iter().zip(&grid) {
            let cells: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
            writeln!(f, "{label:>lw$} {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A free resolution `F_0 <- F_1 <- ... <- F_n`; `maps[k]` is `F_{k+1} -> F_k`.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub maps: Vec<SyzygyMatrix<F>>,
    pub complete: bool,
}

impl<F: Field> Resolution<F> {
    pub fn betti(&self) -> BettiTable {
        let mut steps = vec![GradedFreeModule::new(vec![0])];
        for m in &self.maps {
            if m.ncols() == 0 {
                break;
            }
            steps.push(GradedFreeModule::new(m.col_twists.clone()));
        }
        BettiTable { steps, complete: self.complete }
    }

    /// Consecutive maps compose to zero.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].compose(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No entry of any map is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.unit_entry().is_none())
    }

    /// Removes unit entries by Gaussian elimination on the complex.
    pub fn minimize(mut self) -> Self {
        for k in 0..self.maps.len() {
            while let Some((r, c)) = self.maps[k].unit_entry() {
                let m = &mut self.maps[k];
                let field = m.ring.field().clone();
                let u = field.inv(m.entries[r][c].lead_coeff().unwrap()).unwrap();
                let col: Vec<Polynomial<F>> = m.column(c);
                let row: Vec<Polynomial<F>> = m.entries[r].iter().map(|e| e.scale(&u)).collect();
                for (i, ci) in col.iter().enumerate() {
                    if ci.is_zero() || i == r {
                        continue;
                    }
                    for (j, rj) in row.iter().enumerate() {
                        if !rj.is_zero() && j != c {
                            m.entries[i][j] = m.entries[i][j].sub(&ci.mul(rj));
                        }
                    }
                }
                m.remove_row(r);
                m.remove_col(c);
                if k + 1 < self.maps.len() {
                    self.maps[k + 1].remove_row(c);
                }
                if k > 0 {
                    self.maps[k - 1].remove_col(r);
                }
            }
        }
        while self.maps.last().is_some_and(|m| m.ncols() == 0) {
            self.maps.pop();
        }
        self
    }
}

fn vector_to_column<F: Field>(ring: &RingRef<F>, v: &[Term<F::Elem>], nrows: usize) -> Vec<Polynomial<F>> {
    let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); nrows];
    for t in v {
        parts[t.c].push((t.m.clone(), t.k.clone()));
    }
    parts.into_iter().map(|terms| Polynomial::from_terms(ring, terms)).collect()
}

fn to_matrix<F: Field>(
    ring: &RingRef<F>,
    vectors: &[Vec<Term<F::Elem>>],
    row_twists: &[i64],
    col_twists: &[i64],
) -> SyzygyMatrix<F> {
    let cols: Vec<Vec<Polynomial<F>>> =
        vectors.iter().map(|v| vector_to_column(ring, v, row_twists.len())).collect();
    let entries = (0..row_twists.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    SyzygyMatrix {
        ring: ring.clone(),
        row_twists: row_twists.to_vec(),
        col_twists: col_twists.to_vec(),
        entries,
    }
}

/// Generators of the kernel of the map whose columns are given.
pub fn syzygies<F: Field>(m: &SyzygyMatrix<F>) -> Result<SyzygyMatrix<F>> {
    let ring = &m.ring;
    let r = m.nrows();
    let twists: Vec<i64> = m.row_twists.iter().chain(&m.col_twists).copied().collect();
    let order = Order::Elim { cut: r, twists: &twists };
    let one = ring.field().one();
    let gens: Vec<Vec<Term<F::Elem>>> = (0..m.ncols())
        .map(|j| {
            let mut terms: Vec<Term<F::Elem>> = Vec::new();
            for i in 0..r {
                for (mono, k) in m.entries[i][j].terms() {
                    terms.push(order.term(mono.clone(), i, k.clone()));
                }
            }
            terms.push(order.term(Monomial::one(ring.nvars()), r + j, one.clone()));
            order.normalize(ring, terms)
        })
        .collect();
    let started = Instant::now();
    let basis = module_groebner(ring, &order, &twists, gens, None, started)?;
    let mut kernel: Vec<Vec<Term<F::Elem>>> = basis.into_iter().filter(|v| v[0].c >= r).collect();
    // keep a minimal set of leads
    let mut keep = vec![true; kernel.len()];
    for i in 0..kernel.len() {
        for j in 0..kernel.len() {
            if i != j && keep[j] && kernel[j][0].c == kernel[i][0].c && kernel[j][0].m.divides(&kernel[i][0].m)
                && (kernel[j][0].m != kernel[i][0].m || j < i) {
                    keep[i] = false;
                    break;
                }
        }
    }
    let mut it = keep.iter();
    kernel.retain(|_| *it.next().unwrap());
    let shifted: Vec<Vec<Term<F::Elem>>> = kernel
        .iter()
        .map(|v| v.iter().map(|t| Term { c: t.c - r, ..t.clone() }).collect())
        .collect();
    let col_twists: Vec<i64> = shifted.iter().map(|v| v[0].m.degree() as i64 + m.col_twists[v[0].c]).collect();
    Ok(to_matrix(ring, &shifted, &m.col_twists, &col_twists))
}

/// Syzygies of a list of homogeneous polynomials.
pub fn syzygies_of<F: Field>(ring: &RingRef<F>, gens: &[Polynomial<F>]) -> Result<SyzygyMatrix<F>> {
    syzygies(&SyzygyMatrix::from_generators(ring, gens)?)
}

/// Schreyer resolution of `ring/I` (not minimal). Each level is sorted so
/// that leads within a component decrease lexicographically, which bounds the
/// length by the number of variables.
pub fn schreyer_resolution<F: Field>(
    ideal: &Ideal<F>,
    max_steps: Option<usize>,
    opts: &GbOptions,
) -> Result<Resolution<F>> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous("resolutions need a homogeneous ideal".into()));
    }
    let ring = ideal.ring().clone();
    let started = Instant::now();
    let deadline = opts.time_budget.map(|b| started + b);
    let max_steps = max_steps.unwrap_or(ring.nvars());
    let gb = ideal.groebner(&GbOptions { truncation: None, ..*opts })?;
    let field = ring.field().clone();

    let mut frame = Frame::new(ring.nvars());
    let mut h: Vec<Vec<Term<F::Elem>>> = {
        let order = Order::Schreyer { frame: &frame, level: 0 };
        gb.elements()
            .iter()
            .map(|p| p.terms().iter().map(|(m, k)| order.term(m.clone(), 0, k.clone())).collect())
            .collect()
    };
    h.sort_by(|a: &Vec<Term<F::Elem>>, b| b[0].m.lex_cmp(&a[0].m));
    let mut maps = Vec::new();
    let mut prev_twists = vec![0i64];
    let mut complete = true;
    for level in 1.. {
        if h.is_empty() {
            break;
        }
        if level > max_steps {
            complete = false;
            break;
        }
        frame.sig.push(h.iter().map(|v| v[0].key.clone()).collect());
        frame.parent.push(h.iter().map(|v| v[0].c).collect());
        let twists: Vec<i64> = frame.sig[level].iter().map(|s| s.degree() as i64).collect();
        maps.push(to_matrix(&ring, &h, &prev_twists, &twists));

        let prev = Order::Schreyer { frame: &frame, level: level - 1 };
        let here = Order::Schreyer { frame: &frame, level };
        let divisors = Divisors::new(&h, prev_twists.len());
        let mut next = Vec::new();
        for i in 0..h.len() {
            if let Some(d) = deadline {
                if Instant::now() > d {
                    return Err(Error::Timeout(started.elapsed().as_millis()));
                }
            }
            let (li, ci) = (&h[i][0].m, h[i][0].c);
            let mut cands: Vec<(Monomial, usize)> = (i + 1..h.len())
                .filter(|&j| h[j][0].c == ci)
                .map(|j| (li.divide_into(&li.lcm(&h[j][0].m, ring.weights())).unwrap(), j))
                .collect();
            let all = cands.clone();
            cands.retain(|(m, j)| {
                !all.iter().any(|(m2, j2)| j2 != j && m2.divides(m) && (m2 != m || j2 < j))
            });
            for (qi, j) in cands {
                let lj = &h[j][0].m;
                let qj = lj.divide_into(&qi.mul(li)).unwrap();
                let ai = field.inv(&h[i][0].k).unwrap();
                let aj = field.inv(&h[j][0].k).unwrap();
                let first: Vec<Term<F::Elem>> = h[i]
                    .iter()
                    .map(|t| Term { m: t.m.mul(&qi), c: t.c, key: t.key.mul(&qi), k: field.mul(&t.k, &ai) })
                    .collect();
                let s = module::sub_scaled(&ring, &prev, &first, &h[j], &qj, &aj);
                let (rest, quotient) = top_reduce(&ring, &prev, &h, &divisors, s);
                if !rest.is_empty() {
                    return Err(Error::Check("S-vector did not reduce to zero in a Schreyer step".into()));
                }
                let mut terms = vec![here.term(qi.clone(), i, ai), here.term(qj, j, field.neg(&aj))];
                for (q, l, c) in quotient {
                    terms.push(here.term(q, l, field.neg(&c)));
                }
                let sigma = here.normalize(&ring, terms);
                debug_assert!(sigma[0].c == i && sigma[0].m == qi);
                next.push(sigma);
            }
        }
        next.sort_by(|a, b| a[0].c.cmp(&b[0].c).then_with(|| b[0].m.lex_cmp(&a[0].m)));
        prev_twists = twists;
        h = next;
    }
    Ok(Resolution { maps, complete })
}

/// Minimal graded free resolution of `ring/I`: Schreyer, then pruning.
pub fn minimal_resolution<F: Field>(
    ideal: &Ideal<F>,
    max_steps: Option<usize>,
    opts: &GbOptions,
) -> Result<Resolution<F>> {
    Ok(schreyer_resolution(ideal, max_steps, opts)?.minimize())
}

/// Last twist minus the sum of the ring weights: `k` means `omega = O(k)`.
pub fn canonical_twist(table: &BettiTable, weights: &[u32]) -> Result<i64> {
    let last = table.last_twists();
    if last.len() != 1 || !table.complete {
        return Err(Error::Check(format!(
            "last module has rank {} (not Gorenstein, or resolution incomplete)",
            last.len()
        )));
    }
    Ok(last[0] - weights.iter().map(|&w| w as i64).sum::<i64>())
}

#[cfg(test)]
mod tests;
