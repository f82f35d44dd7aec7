//! Buchberger's algorithm for submodules of graded free modules.
//!
//! Ideals are the rank-one case. Elements are sparse vectors of terms
//! `c * m * e_i`, kept sorted decreasingly for a [`ModuleOrder`]. Input
//! generators are fed into the pair queue at their sugar degree, so for
//! homogeneous input the generators that survive reduction form a minimal
//! generating set of the module.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::polycore::{Monomial, MonomialOrder, Polynomial, Ring};

/// Default bound on the number of S-pairs created by one computation.
pub const DEFAULT_PAIR_LIMIT: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term<C> {
    pub mono: Monomial,
    pub comp: u32,
    pub coeff: C,
}

/// Order on module terms. Components are grouped into blocks; a term in a
/// lower-numbered block is larger than any term of a higher block. Inside a
/// block terms compare by shifted degree (for graded monomial orders), then
/// by the monomial order, then by component index (lower index larger).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub shifts: Vec<i64>,
    pub blocks: Vec<u32>,
}

impl ModuleOrder {
    pub fn ideal(mono: MonomialOrder) -> Self {
        ModuleOrder { mono, shifts: vec![0], blocks: vec![0] }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn weighted_degree(&self, m: &Monomial, comp: u32) -> i64 {
        m.degree() as i64 + self.shifts[comp as usize]
    }

    #[inline]
    pub fn cmp(&self, a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
        if a.1 != b.1 {
            let (ba, bb) = (self.blocks[a.1 as usize], self.blocks[b.1 as usize]);
            if ba != bb {
                return bb.cmp(&ba);
            }
            if self.mono.is_graded() {
                let (da, db) = (self.weighted_degree(a.0, a.1), self.weighted_degree(b.0, b.1));
                if da != db {
                    return da.cmp(&db);
                }
            }
            match self.mono.cmp(a.0, b.0) {
                Ordering::Equal => b.1.cmp(&a.1),
                o => o,
            }
        } else {
            self.mono.cmp(a.0, b.0)
        }
    }
}

/// Sparse module element; terms sorted decreasingly, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector<C> {
    pub terms: Vec<Term<C>>,
}

impl<C: Field> Vector<C> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_terms(mut terms: Vec<Term<C>>, order: &ModuleOrder) -> Self {
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort_by(|a, b| order.cmp((&b.mono, b.comp), (&a.mono, a.comp)));
        // merge equal terms
        let mut out: Vec<Term<C>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.comp == t.comp => {
                    last.coeff += t.coeff;
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Vector { terms: out }
    }

    pub fn from_poly(p: &Polynomial<C>, comp: u32, order: &ModuleOrder) -> Self {
        Self::from_terms(p.terms().iter().map(|(m, c)| Term { mono: *m, comp, coeff: c.clone() }).collect(), order)
    }

    /// Vector with entry `entries[i]` in component `offset + i`.
    pub fn from_entries(entries: &[Polynomial<C>], offset: u32, order: &ModuleOrder) -> Self {
        let mut terms = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(Term { mono: *m, comp: offset + i as u32, coeff: c.clone() });
            }
        }
        Self::from_terms(terms, order)
    }

    /// Entries of components `range`, as polynomials in `ring`.
    pub fn entries(&self, ring: &Ring, range: std::ops::Range<u32>) -> Vec<Polynomial<C>> {
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); range.len()];
        for t in &self.terms {
            if range.contains(&t.comp) {
                buckets[(t.comp - range.start) as usize].push((t.mono, t.coeff.clone()));
            }
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(ring, b)).collect()
    }

    pub fn to_poly(&self, ring: &Ring) -> Polynomial<C> {
        debug_assert!(self.terms.iter().all(|t| t.comp == 0));
        Polynomial::from_terms(ring, self.terms.iter().map(|t| (t.mono, t.coeff.clone())))
    }

    pub fn lead(&self) -> Option<&Term<C>> {
        self.terms.first()
    }

    pub fn monic(mut self) -> Self {
        if let Some(first) = self.terms.first() {
            if !first.coeff.is_one() {
                let inv = first.coeff.inv();
                for t in &mut self.terms {
                    t.coeff *= inv.clone();
                }
            }
        }
        self
    }

    pub fn max_weighted_degree(&self, order: &ModuleOrder) -> i64 {
        self.terms.iter().map(|t| order.weighted_degree(&t.mono, t.comp)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self, order: &ModuleOrder) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = order.weighted_degree(&t.mono, t.comp);
                self.terms.iter().all(|s| order.weighted_degree(&s.mono, s.comp) == d)
            }
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        Vector { terms: self.terms.iter().map(|t| Term { mono: t.mono.mul(m), comp: t.comp, coeff: t.coeff.clone() * c.clone() }).collect() }
    }

    pub fn add(&self, other: &Self, order: &ModuleOrder) -> Self {
        sub_mul(&self.terms, &-C::one(), &Monomial::ONE, &other.terms, order)
    }
}

/// `a - c * m * b`, with both inputs sorted decreasingly.
pub fn sub_mul<C: Field>(a: &[Term<C>], c: &C, m: &Monomial, b: &[Term<C>], order: &ModuleOrder) -> Vector<C> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<Monomial> = b.first().map(|t| t.mono.mul(m));
    while i < a.len() {
        let Some(bm) = bj else { break };
        let bt = &b[j];
        match order.cmp((&a[i].mono, a[i].comp), (&bm, bt.comp)) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term { mono: bm, comp: bt.comp, coeff: -(bt.coeff.clone() * c.clone()) });
                j += 1;
                bj = b.get(j).map(|t| t.mono.mul(m));
            }
            Ordering::Equal => {
                let v = a[i].coeff.clone() - bt.coeff.clone() * c.clone();
                if !v.is_zero() {
                    out.push(Term { mono: bm, comp: bt.comp, coeff: v });
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| t.mono.mul(m));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for bt in &b[j..] {
        out.push(Term { mono: bt.mono.mul(m), comp: bt.comp, coeff: -(bt.coeff.clone() * c.clone()) });
    }
    Vector { terms: out }
}

#[derive(Debug, Clone)]
struct Elem<C> {
    v: Vector<C>,
    lm: Monomial,
    comp: u32,
    mask: u64,
    sugar: i64,
    redundant: bool,
}

impl<C: Field> Elem<C> {
    fn new(v: Vector<C>, sugar: i64) -> Self {
        let lt = v.lead().expect("nonzero element");
        Elem { lm: lt.mono, comp: lt.comp, mask: lt.mono.mask(), sugar, v, redundant: false }
    }
}

/// Divisibility lookup of leading terms.
fn find_reducer<C: Field>(basis: &[Elem<C>], m: &Monomial, comp: u32, mask: u64) -> Option<usize> {
    let mut fallback = None;
    for (k, e) in basis.iter().enumerate() {
        if e.comp == comp && e.mask & !mask == 0 && e.lm.divides(m) {
            if !e.redundant {
                return Some(k);
            }
            fallback.get_or_insert(k);
        }
    }
    fallback
}

/// Reduces until the leading term is irreducible. Returns the sugar of the result.
fn top_reduce<C: Field>(mut v: Vector<C>, mut sugar: i64, basis: &[Elem<C>], order: &ModuleOrder) -> (Vector<C>, i64) {
    while let Some(lt) = v.lead() {
        let Some(k) = find_reducer(basis, &lt.mono, lt.comp, lt.mono.mask()) else { break };
        let g = &basis[k];
        let q = g.lm.quotient_of(&lt.mono);
        let c = lt.coeff.clone() / g.v.terms[0].coeff.clone();
        sugar = sugar.max(g.sugar + q.degree() as i64);
        v = sub_mul(&v.terms, &c, &q, &g.v.terms, order);
    }
    (v, sugar)
}

/// Full reduction (leading and tail terms) by a list of basis vectors.
pub fn reduce_full<C: Field>(v: Vector<C>, basis: &[Vector<C>], order: &ModuleOrder) -> Vector<C> {
    let lms: Vec<(Monomial, u32, u64)> = basis.iter().map(|b| {
        let t = b.lead().expect("nonzero basis element");
        (t.mono, t.comp, t.mono.mask())
    }).collect();
    let mut done: Vec<Term<C>> = Vec::new();
    let mut rest = v.terms;
    let mut start = 0;
    while start < rest.len() {
        let t = &rest[start];
        let mask = t.mono.mask();
        let hit = lms.iter().position(|(m, c, mk)| *c == t.comp && mk & !mask == 0 && m.divides(&t.mono));
        match hit {
            None => {
                done.push(t.clone());
                start += 1;
            }
            Some(k) => {
                let g = &basis[k];
                let q = lms[k].0.quotient_of(&t.mono);
                let c = t.coeff.clone() / g.terms[0].coeff.clone();
                rest = sub_mul(&rest[start..], &c, &q, &g.terms, order).terms;
                start = 0;
            }
        }
    }
    Vector { terms: done }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Item {
    Pair(usize),
    Gen(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    sugar: i64,
    kind: u8,
    lcm_deg: u32,
    id: usize,
}

struct PairRec {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    alive: bool,
}

/// Result of a Buchberger run.
#[derive(Debug, Clone)]
pub struct GbRun<C> {
    /// Reduced, monic basis sorted increasingly by leading term.
    pub basis: Vec<Vector<C>>,
    /// Indices of the input generators that were not reducible to zero by
    /// the part of the basis available at their degree.
    pub minimal_gens: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_pairs: DEFAULT_PAIR_LIMIT }
    }
}

pub fn buchberger<C: Field>(gens: &[Vector<C>], order: &ModuleOrder, limits: Limits) -> Result<GbRun<C>> {
    let ideal_case = order.rank() == 1;
    let mut basis: Vec<Elem<C>> = Vec::new();
    let mut pairs: Vec<PairRec> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(Key, Item)>> = BinaryHeap::new();
    let mut minimal_gens = Vec::new();

    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let sugar = g.max_weighted_degree(order);
        heap.push(Reverse((Key { sugar, kind: 1, lcm_deg: 0, id: k }, Item::Gen(k))));
    }

    while let Some(Reverse((_, item))) = heap.pop() {
        let (v, sugar) = match item {
            Item::Gen(k) => (gens[k].clone(), gens[k].max_weighted_degree(order)),
            Item::Pair(pid) => {
                let p = &mut pairs[pid];
                if !p.alive {
                    continue;
                }
                p.alive = false;
                let (gi, gj) = (&basis[p.i], &basis[p.j]);
                let qi = gi.lm.quotient_of(&p.lcm);
                let qj = gj.lm.quotient_of(&p.lcm);
                let sugar = (gi.sugar + qi.degree() as i64).max(gj.sugar + qj.degree() as i64);
                let ci = gi.v.terms[0].coeff.clone();
                let cj = gj.v.terms[0].coeff.clone();
                // S = qi*gi/ci - qj*gj/cj, computed without the cancelling leading terms
                let left = gi.v.terms[1..].iter().map(|t| Term { mono: t.mono.mul(&qi), comp: t.comp, coeff: t.coeff.clone() / ci.clone() }).collect::<Vec<_>>();
                let s = sub_mul(&left, &(C::one() / cj), &qj, &gj.v.terms[1..], order);
                (s, sugar)
            }
        };
        let (r, sugar) = top_reduce(v, sugar, &basis, order);
        if r.is_zero() {
            continue;
        }
        if let Item::Gen(k) = item {
            minimal_gens.push(k);
        }
        let r = r.monic();
        let new = Elem::new(r, sugar);
        let k = basis.len();
        update_pairs(&mut basis, &mut pairs, &mut heap, new, ideal_case);
        debug_assert_eq!(basis.len(), k + 1);
        if pairs.len() > limits.max_pairs {
            return Err(Error::ResourceLimit(format!("S-pair count exceeded {}", limits.max_pairs)));
        }
    }

    Ok(GbRun { basis: interreduce(basis, order), minimal_gens })
}

fn update_pairs<C: Field>(
    basis: &mut Vec<Elem<C>>,
    pairs: &mut Vec<PairRec>,
    heap: &mut BinaryHeap<Reverse<(Key, Item)>>,
    new: Elem<C>,
    ideal_case: bool,
) {
    let k = basis.len();
    let (tk, ck) = (new.lm, new.comp);

    // chain criterion on existing pairs
    for p in pairs.iter_mut().filter(|p| p.alive && p.comp == ck) {
        if tk.divides(&p.lcm) {
            let li = basis[p.i].lm.lcm(&tk);
            let lj = basis[p.j].lm.lcm(&tk);
            if li != p.lcm && lj != p.lcm {
                p.alive = false;
            }
        }
    }

    // candidate new pairs
    let mut cands: Vec<(usize, Monomial, bool)> = basis
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.redundant && e.comp == ck)
        .map(|(i, e)| (i, e.lm.lcm(&tk), ideal_case && e.lm.is_coprime(&tk)))
        .collect();

    // M: drop pairs whose lcm is a proper multiple of another candidate's lcm
    let lcms: Vec<Monomial> = cands.iter().map(|c| c.1).collect();
    cands.retain(|(_, l, _)| !lcms.iter().any(|o| o != l && o.divides(l)));

    // F: one pair per lcm; if any pair with that lcm is coprime, drop them all
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut coprime_lcms: HashSet<Monomial> = HashSet::new();
    for c in &cands {
        if c.2 {
            coprime_lcms.insert(c.1);
        }
    }
    let sugar_k = new.sugar;
    for (i, l, _) in cands {
        if coprime_lcms.contains(&l) || !seen.insert(l) {
            continue;
        }
        let ei = &basis[i];
        let sugar = (ei.sugar + (l.degree() - ei.lm.degree()) as i64).max(sugar_k + (l.degree() - tk.degree()) as i64);
        let id = pairs.len();
        pairs.push(PairRec { i, j: k, lcm: l, comp: ck, alive: true });
        heap.push(Reverse((Key { sugar, kind: 0, lcm_deg: l.degree(), id }, Item::Pair(id))));
    }

    for e in basis.iter_mut() {
        if e.comp == ck && tk.divides(&e.lm) {
            e.redundant = true;
        }
    }
    basis.push(new);
}

fn interreduce<C: Field>(basis: Vec<Elem<C>>, order: &ModuleOrder) -> Vec<Vector<C>> {
    // keep elements whose leading term is minimal
    let mut keep: Vec<Elem<C>> = Vec::new();
    for (i, e) in basis.iter().enumerate() {
        let dominated = basis.iter().enumerate().any(|(j, o)| {
            j != i && o.comp == e.comp && o.lm.divides(&e.lm) && (o.lm != e.lm || j < i)
        });
        if !dominated {
            keep.push(e.clone());
        }
    }
    keep.sort_by(|a, b| order.cmp((&a.lm, a.comp), (&b.lm, b.comp)));
    let vecs: Vec<Vector<C>> = keep.into_iter().map(|e| e.v).collect();
    let mut out = Vec::with_capacity(vecs.len());
    for i in 0..vecs.len() {
        let head = Vector { terms: vec![vecs[i].terms[0].clone()] };
        let others: Vec<Vector<C>> = vecs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let tail = reduce_full(Vector { terms: vecs[i].terms[1..].to_vec() }, &others, order);
        let mut terms = head.terms;
        terms.extend(tail.terms);
        out.push(Vector { terms }.monic());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::polycore::parse_polynomial;

    type F = Fp<32003>;

    fn vecs(src: &[&str], ring: &Ring, order: &ModuleOrder) -> Vec<Vector<F>> {
        src.iter().map(|s| Vector::from_poly(&parse_polynomial(s, ring).unwrap(), 0, order)).collect()
    }

    #[test]
    fn twisted_cubic_lex() {
        let ring = Ring::standard(3);
        let order = ModuleOrder::ideal(MonomialOrder::Lex);
        let run = buchberger(&vecs(&["x^2 - y", "x^3 - z"], &ring, &order), &order, Limits::default()).unwrap();
        let polys: Vec<String> = run.basis.iter().map(|v| v.to_poly(&ring).to_string()).collect();
        assert!(polys.contains(&"y^3 - z^2".to_string()), "{polys:?}");
    }

    #[test]
    fn minimal_generators_of_redundant_input() {
        let ring = Ring::standard(3);
        let order = ModuleOrder::ideal(MonomialOrder::GradedReverseLex);
        let run = buchberger(&vecs(&["x", "y", "x*y + x^2", "z"], &ring, &order), &order, Limits::default()).unwrap();
        let mut m = run.minimal_gens.clone();
        m.sort();
        assert_eq!(m, vec![0, 1, 3]);
    }

    #[test]
    fn pair_limit_is_enforced() {
        let ring = Ring::standard(4);
        let order = ModuleOrder::ideal(MonomialOrder::GradedReverseLex);
        let g = vecs(&["x^3 + y*z*w", "y^3 + x*z*w", "z^3 + x*y*w", "w^3 + x*y*z"], &ring, &order);
        assert!(matches!(buchberger(&g, &order, Limits { max_pairs: 3 }), Err(Error::ResourceLimit(_))));
    }
}
