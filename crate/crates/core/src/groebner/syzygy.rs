//! Syzygies of homogeneous elements of graded free modules.
//!
//! The relations among `g_1..g_m` in `F = ⊕ S(-a_i)` are read off a Gröbner
//! basis of the submodule of `F ⊕ S^m` generated by `(g_j, e_j)`, for an order
//! eliminating the `F` block. Basis elements whose leading term lies in the
//! `S^m` block are syzygies and generate the relation module. A second pass
//! with lazy generator insertion extracts a minimal generating set.

use crate::error::Result;
use crate::field::Field;
use crate::polycore::{MonomialOrder, Polynomial, Ring};

use super::engine::{buchberger, Limits, ModuleOrder, Vector};

/// Homogeneous element of a graded free module, with its absolute degree.
///
/// Entry `i` has degree `degree - a_i`, where `a_i` is the shift of the i-th
/// basis vector of the ambient module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVector<C: Field> {
    pub entries: Vec<Polynomial<C>>,
    pub degree: i64,
}

impl<C: Field> GradedVector<C> {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// `Σ entries[j] * gens[j]`.
    pub fn apply(&self, gens: &[GradedVector<C>]) -> Vec<Polynomial<C>> {
        let ring = self.entries[0].ring();
        let rank = gens.first().map_or(0, |g| g.entries.len());
        let mut out = vec![Polynomial::zero(ring); rank];
        for (a, g) in self.entries.iter().zip(gens) {
            if a.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(&g.entries) {
                *o = &*o + &(a * e);
            }
        }
        out
    }
}

fn ring_of<C: Field>(gens: &[GradedVector<C>]) -> Option<Ring> {
    gens.iter().flat_map(|g| g.entries.iter()).next().map(|p| p.ring().clone())
}

fn order_for(shifts: Vec<i64>, blocks: Vec<u32>) -> ModuleOrder {
    ModuleOrder { mono: MonomialOrder::GradedReverseLex, shifts, blocks }
}

/// Indices of a minimal generating subset of the module generated by `gens`
/// inside `⊕ S(-shifts[i])`.
pub fn minimal_generators<C: Field>(gens: &[GradedVector<C>], shifts: &[i64]) -> Result<Vec<usize>> {
    let order = order_for(shifts.to_vec(), vec![0; shifts.len()]);
    let vecs: Vec<Vector<C>> = gens.iter().map(|g| Vector::from_entries(&g.entries, 0, &order)).collect();
    let mut idx = buchberger(&vecs, &order, Limits::default())?.minimal_gens;
    idx.sort_unstable();
    Ok(idx)
}

/// Minimal generators of the relations among `gens` in `⊕ S(-shifts[i])`.
///
/// The result lives in `⊕_j S(-gens[j].degree)`; zero generators get zero
/// coefficients.
pub fn module_syzygies<C: Field>(gens: &[GradedVector<C>], shifts: &[i64]) -> Result<Vec<GradedVector<C>>> {
    let Some(ring) = ring_of(gens) else {
        // every generator is zero: the relations are free on all of them
        return Ok(Vec::new());
    };
    let r = shifts.len();
    let m = gens.len();
    let mut all_shifts = shifts.to_vec();
    all_shifts.extend(gens.iter().map(|g| g.degree));
    let mut blocks = vec![0; r];
    blocks.extend(std::iter::repeat(1).take(m));
    let order = order_for(all_shifts, blocks);

    let tracked: Vec<Vector<C>> = gens
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut entries = g.entries.clone();
            entries.extend((0..m).map(|k| if k == j { Polynomial::one(&ring) } else { Polynomial::zero(&ring) }));
            Vector::from_entries(&entries, 0, &order)
        })
        .collect();
    let run = buchberger(&tracked, &order, Limits::default())?;

    let syz_order = order_for(gens.iter().map(|g| g.degree).collect(), vec![0; m]);
    let mut candidates: Vec<GradedVector<C>> = run
        .basis
        .iter()
        .filter(|v| v.terms[0].comp as usize >= r)
        .map(|v| {
            let entries = v.entries(&ring, r as u32..(r + m) as u32);
            GradedVector { degree: v.max_weighted_degree(&order), entries }
        })
        .collect();
    candidates.sort_by_key(|g| g.degree);
    let vecs: Vec<Vector<C>> = candidates.iter().map(|g| Vector::from_entries(&g.entries, 0, &syz_order)).collect();
    let keep = buchberger(&vecs, &syz_order, Limits::default())?.minimal_gens;
    let mut out: Vec<GradedVector<C>> = keep.into_iter().map(|k| candidates[k].clone()).collect();
    out.sort_by_key(|g| g.degree);
    Ok(out)
}

/// Minimal relations `Σ a_i gens_i = 0` among homogeneous polynomials.
pub fn first_syzygies<C: Field>(gens: &[Polynomial<C>]) -> Result<Vec<GradedVector<C>>> {
    let as_vectors: Vec<GradedVector<C>> = gens
        .iter()
        .map(|g| GradedVector { entries: vec![g.clone()], degree: g.total_degree().unwrap_or(0) as i64 })
        .collect();
    module_syzygies(&as_vectors, &[0])
}
