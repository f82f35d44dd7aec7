//! Gröbner bases of ideals and the ideal operations built on them.

pub mod engine;
pub mod syzygy;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert;
use crate::polycore::{Monomial, MonomialOrder, Polynomial, Ring};

use engine::{buchberger, reduce_full, Limits, ModuleOrder, Vector};

pub use engine::DEFAULT_PAIR_LIMIT;
pub use syzygy::{first_syzygies, module_syzygies, minimal_generators, GradedVector};

/// Reduced Gröbner basis of an ideal for a fixed monomial order.
#[derive(Clone)]
pub struct GroebnerBasis<C: Field> {
    ring: Ring,
    order: MonomialOrder,
    vecs: Vec<Vector<C>>,
}

impl<C: Field> GroebnerBasis<C> {
    pub(crate) fn from_vectors(ring: &Ring, order: MonomialOrder, vecs: Vec<Vector<C>>) -> Self {
        GroebnerBasis { ring: ring.clone(), order, vecs }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    /// Basis elements, sorted increasingly by leading monomial.
    pub fn polys(&self) -> Vec<Polynomial<C>> {
        self.vecs.iter().map(|v| v.to_poly(&self.ring)).collect()
    }

    /// Leading monomials for the basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.vecs.iter().map(|v| v.terms[0].mono).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.vecs.iter().any(|v| v.terms[0].mono.degree() == 0)
    }

    pub fn normal_form(&self, g: &Polynomial<C>) -> Polynomial<C> {
        let order = ModuleOrder::ideal(self.order);
        reduce_full(Vector::from_poly(g, 0, &order), &self.vecs, &order).to_poly(&self.ring)
    }

    pub fn contains(&self, g: &Polynomial<C>) -> bool {
        self.normal_form(g).is_zero()
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let order = ModuleOrder::ideal(self.order);
        for i in 0..self.vecs.len() {
            for j in i + 1..self.vecs.len() {
                let (a, b) = (&self.vecs[i], &self.vecs[j]);
                let (la, lb) = (a.terms[0].mono, b.terms[0].mono);
                let l = la.lcm(&lb);
                let sa = a.mul_term(&la.quotient_of(&l), &a.terms[0].coeff.inv());
                let sb = b.mul_term(&lb.quotient_of(&l), &b.terms[0].coeff.inv());
                let s = engine::sub_mul(&sa.terms, &C::one(), &Monomial::ONE, &sb.terms, &order);
                if !reduce_full(s, &self.vecs, &order).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl<C: Field> fmt::Debug for GroebnerBasis<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.polys()).finish()
    }
}

/// Ideal given by generators, with reduced Gröbner bases cached per order.
pub struct Ideal<C: Field> {
    ring: Ring,
    gens: Vec<Polynomial<C>>,
    cache: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis<C>>>>,
    limits: Limits,
}

impl<C: Field> Clone for Ideal<C> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
            limits: self.limits,
        }
    }
}

impl<C: Field> fmt::Debug for Ideal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.gens)
    }
}

impl<C: Field> Ideal<C> {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring, gens: Vec<Polynomial<C>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, cache: RwLock::new(HashMap::new()), limits: Limits::default() }
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Self {
        Self::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect())
    }

    pub fn with_pair_limit(mut self, max_pairs: usize) -> Self {
        self.limits = Limits { max_pairs };
        self.cache.write().expect("cache lock").clear();
        self
    }

    pub(crate) fn from_basis(basis: GroebnerBasis<C>) -> Self {
        let ideal = Self::new(&basis.ring.clone(), basis.polys());
        ideal.cache.write().expect("cache lock").insert(basis.order, Arc::new(basis));
        ideal
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<C>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis<C>>> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(&order) {
            return Ok(gb.clone());
        }
        let morder = ModuleOrder::ideal(order);
        let vecs: Vec<Vector<C>> = self.gens.iter().map(|g| Vector::from_poly(g, 0, &morder)).collect();
        let run = buchberger(&vecs, &morder, self.limits)?;
        let gb = Arc::new(GroebnerBasis::from_vectors(&self.ring, order, run.basis));
        self.cache.write().expect("cache lock").entry(order).or_insert_with(|| gb.clone());
        Ok(gb)
    }

    /// Grevlex basis, the default for every derived computation.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis<C>>> {
        self.groebner_basis(MonomialOrder::GradedReverseLex)
    }

    pub fn contains(&self, g: &Polynomial<C>) -> Result<bool> {
        Ok(self.gb()?.contains(g))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Ideal<C>) -> Result<bool> {
        let gb = other.gb()?;
        Ok(self.gens.iter().all(|g| gb.contains(g)))
    }

    /// Equality by mutual containment of generators.
    pub fn equals(&self, other: &Ideal<C>) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn sum(&self, other: &Ideal<C>) -> Ideal<C> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens).with_pair_limit(self.limits.max_pairs)
    }
}

pub fn groebner_basis<C: Field>(ideal: &Ideal<C>, order: MonomialOrder) -> Result<Vec<Polynomial<C>>> {
    Ok(ideal.groebner_basis(order)?.polys())
}

pub fn normal_form<C: Field>(g: &Polynomial<C>, ideal: &Ideal<C>, order: MonomialOrder) -> Result<Polynomial<C>> {
    Ok(ideal.groebner_basis(order)?.normal_form(g))
}

/// `(I : g) = {h : h g ∈ I}`.
///
/// Computed as the elimination of the first component from the submodule of
/// `S^2` generated by `(g, 1)` and `(f, 0)` for the generators `f` of `I`.
pub fn ideal_quotient<C: Field>(ideal: &Ideal<C>, g: &Polynomial<C>) -> Result<Ideal<C>> {
    if g.is_zero() {
        return Err(Error::Precondition("quotient by the zero polynomial".into()));
    }
    let ring = ideal.ring();
    let dg = g.total_degree().unwrap_or(0) as i64;
    let order = ModuleOrder { mono: MonomialOrder::GradedReverseLex, shifts: vec![0, dg], blocks: vec![0, 1] };
    let mut gens = Vec::with_capacity(ideal.gens.len() + 1);
    let mut lead = Vector::from_poly(g, 0, &order).terms;
    lead.push(engine::Term { mono: Monomial::ONE, comp: 1, coeff: C::one() });
    gens.push(Vector::from_terms(lead, &order));
    for f in &ideal.gens {
        gens.push(Vector::from_poly(f, 0, &order));
    }
    let run = buchberger(&gens, &order, ideal.limits)?;
    eliminated_ideal(ring, run.basis, 1, ideal.limits)
}

/// `(I : J) = {h : h J ⊆ I}` in a single module computation over `S^(m+1)`.
pub fn ideal_quotient_by_ideal<C: Field>(ideal: &Ideal<C>, by: &Ideal<C>) -> Result<Ideal<C>> {
    let js: Vec<&Polynomial<C>> = by.gens.iter().collect();
    if js.is_empty() {
        return Err(Error::Precondition("quotient by the zero ideal".into()));
    }
    if js.len() == 1 {
        return ideal_quotient(ideal, js[0]);
    }
    let ring = ideal.ring();
    let m = js.len();
    let mut shifts: Vec<i64> = js.iter().map(|g| -(g.total_degree().unwrap_or(0) as i64)).collect();
    shifts.push(0);
    let mut blocks = vec![0; m];
    blocks.push(1);
    let order = ModuleOrder { mono: MonomialOrder::GradedReverseLex, shifts, blocks };
    let mut gens = Vec::new();
    let mut lead: Vec<engine::Term<C>> = Vec::new();
    for (j, g) in js.iter().enumerate() {
        lead.extend(Vector::from_poly(g, j as u32, &order).terms);
    }
    lead.push(engine::Term { mono: Monomial::ONE, comp: m as u32, coeff: C::one() });
    gens.push(Vector::from_terms(lead, &order));
    for j in 0..m {
        for f in &ideal.gens {
            gens.push(Vector::from_poly(f, j as u32, &order));
        }
    }
    let run = buchberger(&gens, &order, ideal.limits)?;
    eliminated_ideal(ring, run.basis, m as u32, ideal.limits)
}

fn eliminated_ideal<C: Field>(ring: &Ring, basis: Vec<Vector<C>>, comp: u32, limits: Limits) -> Result<Ideal<C>> {
    let order = ModuleOrder::ideal(MonomialOrder::GradedReverseLex);
    let vecs: Vec<Vector<C>> = basis
        .into_iter()
        .filter(|v| v.terms[0].comp == comp)
        .map(|v| {
            let p = v.entries(ring, comp..comp + 1).remove(0);
            Vector::from_poly(&p, 0, &order)
        })
        .collect();
    // The eliminated part is a Gröbner basis already; reduce it to canonical form.
    let run = buchberger(&vecs, &order, limits)?;
    Ok(Ideal::from_basis(GroebnerBasis::from_vectors(ring, MonomialOrder::GradedReverseLex, run.basis)).with_cached_limits(limits))
}

impl<C: Field> Ideal<C> {
    fn with_cached_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }
}

/// Upper bound on quotient iterations in a saturation.
pub const MAX_SATURATION_STEPS: usize = 256;

/// `(I : J^∞)` by iterated quotients until the chain stabilises.
pub fn saturation<C: Field>(ideal: &Ideal<C>, by: &Ideal<C>) -> Result<Ideal<C>> {
    iterate_quotient(ideal, |cur| ideal_quotient_by_ideal(cur, by))
}

/// `(I : g^∞)` by iterated quotients until the chain stabilises.
pub fn saturation_by_element<C: Field>(ideal: &Ideal<C>, g: &Polynomial<C>) -> Result<Ideal<C>> {
    iterate_quotient(ideal, |cur| ideal_quotient(cur, g))
}

fn iterate_quotient<C: Field>(ideal: &Ideal<C>, step: impl Fn(&Ideal<C>) -> Result<Ideal<C>>) -> Result<Ideal<C>> {
    let mut cur = ideal.clone();
    for _ in 0..MAX_SATURATION_STEPS {
        let next = step(&cur)?;
        // cur ⊆ next always holds
        if next.is_subset_of(&cur)? {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::ResourceLimit(format!("saturation did not stabilise in {MAX_SATURATION_STEPS} steps")))
}

/// Krull-type data of a homogeneous quotient `S/I`, read off its Hilbert polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionDegree {
    /// Projective dimension of `V(I)`; `-1` when empty.
    pub dimension: i64,
    pub degree: i64,
}

pub fn quotient_dimension_degree<C: Field>(ideal: &Ideal<C>) -> Result<DimensionDegree> {
    if !ideal.is_homogeneous() {
        return Err(Error::Precondition("ideal is not homogeneous".into()));
    }
    let data = hilbert::hilbert_data(ideal)?;
    Ok(DimensionDegree { dimension: data.projective_dimension(), degree: data.degree() })
}

/// Dimension and degree of the reduced support of `V(I)`.
///
/// The scheme is cut by `dim` generic hyperplanes and the distinct points of
/// the cut are counted as the degree of the squarefree part of a lex
/// eliminant in generic coordinates. Two independent charts must agree.
pub fn support_degree<C: Field>(ideal: &Ideal<C>, seed: u64) -> Result<DimensionDegree> {
    let dd = quotient_dimension_degree(ideal)?;
    if dd.dimension < 0 {
        return Ok(dd);
    }
    crate::polycore::require_large_field::<C>()?;
    let ring = ideal.ring();
    let n = ring.nvars();
    let r = dd.dimension as usize;
    if r + 2 > n {
        return Err(Error::Precondition("support degree needs codimension at least 2".into()));
    }
    // variables n-r.. are the cutting hyperplanes, n-r-1 is the chart
    let chart = n - r - 1;
    let mut found: Option<i64> = None;
    for attempt in 0..8 {
        let a = crate::polycore::random_invertible_matrix::<C>(n, crate::polycore::derive_seed(seed, attempt))?;
        let moved: Vec<Polynomial<C>> = ideal.gens.iter().map(|g| crate::polycore::linear_change(g, &a)).collect();
        let mut at_infinity = moved.clone();
        at_infinity.extend((chart..n).map(|i| Polynomial::var(ring, i)));
        if quotient_dimension_degree(&Ideal::new(ring, at_infinity))?.dimension >= 0 {
            continue;
        }
        let images: Vec<Polynomial<C>> =
            (0..n).map(|i| if i == chart { Polynomial::one(ring) } else { Polynomial::var(ring, i) }).collect();
        let mut affine: Vec<Polynomial<C>> = moved.iter().map(|g| g.compose(&images)).collect();
        affine.extend((chart..n).map(|i| Polynomial::var(ring, i)));
        let gb = Ideal::new(ring, affine).groebner_basis(MonomialOrder::Lex)?;
        let last = chart - 1;
        let Some(eliminant) = gb.polys().into_iter().find(|p| !p.is_constant() && (0..n).all(|i| i == last || !p.uses_var(i))) else {
            continue;
        };
        let coeffs = univariate_coeffs(&eliminant, last);
        let common = univariate_gcd(coeffs.clone(), univariate_derivative(&coeffs));
        let points = (coeffs.len() - common.len()) as i64;
        match found {
            Some(prev) if prev == points => return Ok(DimensionDegree { dimension: dd.dimension, degree: points }),
            _ => found = Some(points),
        }
    }
    Err(Error::GenericityFailure("support degree did not stabilise over generic charts".into()))
}

fn univariate_coeffs<C: Field>(p: &Polynomial<C>, var: usize) -> Vec<C> {
    let deg = p.terms().iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0) as usize;
    let mut out = vec![C::zero(); deg + 1];
    for (m, c) in p.terms() {
        out[m.exp(var) as usize] += c.clone();
    }
    out
}

fn univariate_derivative<C: Field>(p: &[C]) -> Vec<C> {
    p.iter().enumerate().skip(1).map(|(k, c)| c.clone() * C::from_i64(k as i64)).collect()
}

fn univariate_trim<C: Field>(mut p: Vec<C>) -> Vec<C> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn univariate_gcd<C: Field>(a: Vec<C>, b: Vec<C>) -> Vec<C> {
    let (mut a, mut b) = (univariate_trim(a), univariate_trim(b));
    while !b.is_empty() {
        let inv = b.last().expect("nonzero").inv();
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let factor = a.last().expect("nonzero").clone() * inv.clone();
            for (k, c) in b.iter().enumerate() {
                let v = c.clone() * factor.clone();
                a[k + shift] -= v;
            }
            a = univariate_trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Number of standard monomials (monomials outside the leading ideal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialCount {
    Finite(u64),
    Infinite,
}

pub fn standard_monomial_count<C: Field>(ideal: &Ideal<C>, order: MonomialOrder) -> Result<MonomialCount> {
    let gb = ideal.groebner_basis(order)?;
    let lms = gb.leading_monomials();
    Ok(count_standard_monomials(&lms, ideal.ring().nvars()))
}

pub(crate) fn count_standard_monomials(lms: &[Monomial], nvars: usize) -> MonomialCount {
    if lms.iter().any(|m| m.degree() == 0) {
        return MonomialCount::Finite(0);
    }
    let mut bounds = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let pure = lms.iter().filter(|m| m.degree() == m.exp(i)).map(|m| m.exp(i)).min();
        match pure {
            Some(e) => bounds.push(e),
            None => return MonomialCount::Infinite,
        }
    }
    let mut count = 0u64;
    let mut exps = vec![0u32; nvars];
    fn walk(i: usize, exps: &mut Vec<u32>, bounds: &[u32], lms: &[Monomial], count: &mut u64) {
        if i == exps.len() {
            let m = Monomial::new(exps);
            if !lms.iter().any(|l| l.divides(&m)) {
                *count += 1;
            }
            return;
        }
        for e in 0..bounds[i] {
            exps[i] = e;
            // prune: if the partial monomial is already divisible, so are all extensions
            let partial = Monomial::new(&exps[..=i]);
            if lms.iter().any(|l| l.support_len() <= i + 1 && l.divides(&partial)) {
                break;
            }
            walk(i + 1, exps, bounds, lms, count);
        }
        exps[i] = 0;
    }
    walk(0, &mut exps, &bounds, lms, &mut count);
    MonomialCount::Finite(count)
}
