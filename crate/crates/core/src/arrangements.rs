//! Central hyperplane arrangements: intersection lattice, Betti numbers of
//! the projective complement, and the comparison of the Hilbert polynomial
//! of the Milnor algebra with closed formulas in the lattice data.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert::milnor_hilbert_data;
use crate::linalg::rank;
use crate::polycore::{Monomial, Polynomial, Ring};

/// Largest number of hyperplanes; flats are stored as bit sets.
pub const MAX_HYPERPLANES: usize = 64;

#[derive(Debug, Clone)]
pub struct Arrangement<C: Field> {
    ring: Ring,
    forms: Vec<Polynomial<C>>,
}

fn normal<C: Field>(form: &Polynomial<C>) -> Vec<C> {
    (0..form.nvars()).map(|i| form.coeff(&Monomial::var(i))).collect()
}

impl<C: Field> Arrangement<C> {
    /// Checks that every form is linear and that no two are proportional.
    pub fn new(forms: Vec<Polynomial<C>>) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::Precondition("an arrangement needs at least one hyperplane".into()));
        };
        if forms.len() > MAX_HYPERPLANES {
            return Err(Error::ResourceLimit(format!("more than {MAX_HYPERPLANES} hyperplanes")));
        }
        let ring = first.ring().clone();
        for (i, h) in forms.iter().enumerate() {
            if h.ring() != &ring {
                return Err(Error::Precondition("forms live in different rings".into()));
            }
            if h.homogeneous_degree() != Some(1) || h.is_zero() {
                return Err(Error::Precondition(format!("form {} is not linear", i + 1)));
            }
            for (j, g) in forms[..i].iter().enumerate() {
                if rank(vec![normal(g), normal(h)]) < 2 {
                    return Err(Error::Precondition(format!("forms {} and {} are proportional", j + 1, i + 1)));
                }
            }
        }
        Ok(Arrangement { ring, forms })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn forms(&self) -> &[Polynomial<C>] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// The defining polynomial, the product of the forms.
    pub fn polynomial(&self) -> Polynomial<C> {
        self.forms.iter().fold(Polynomial::one(&self.ring), |acc, h| &acc * h)
    }
}

/// A flat `X` of the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    /// Bit `i` is set iff form `i` vanishes on `X`.
    pub forms: u64,
    pub codim: usize,
    pub moebius: i64,
}

impl Flat {
    /// Number of hyperplanes through the flat.
    pub fn multiplicity(&self) -> usize {
        self.forms.count_ones() as usize
    }
}

/// Intersection lattice, flats grouped by codimension; `flats[0]` holds the
/// ambient space alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    pub flats: Vec<Vec<Flat>>,
}

impl IntersectionLattice {
    pub fn codim(&self, k: usize) -> &[Flat] {
        self.flats.get(k).map_or(&[], Vec::as_slice)
    }

    /// `Σ_X |μ(X)| t^{codim X}`, the Poincaré polynomial of the central
    /// complement.
    pub fn poincare(&self) -> Vec<i64> {
        self.flats.iter().map(|level| level.iter().map(|x| x.moebius.abs()).sum()).collect()
    }

    /// Counts of codimension `k` flats grouped by multiplicity, ascending.
    pub fn multiplicity_counts(&self, k: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for x in self.codim(k) {
            match out.iter_mut().find(|(m, _)| *m == x.multiplicity()) {
                Some((_, c)) => *c += 1,
                None => out.push((x.multiplicity(), 1)),
            }
        }
        out.sort_unstable();
        out
    }
}

fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

pub fn build_lattice<C: Field>(arr: &Arrangement<C>) -> IntersectionLattice {
    let normals: Vec<Vec<C>> = arr.forms.iter().map(normal).collect();
    let span_rank = |mask: u64| rank(members(mask).map(|i| normals[i].clone()).collect());
    // the set of all forms vanishing on the flat cut out by `mask`
    let closure = |mask: u64, r: usize| -> u64 {
        let mut out = mask;
        for (i, v) in normals.iter().enumerate() {
            if out >> i & 1 == 0 {
                let mut rows: Vec<Vec<C>> = members(mask).map(|j| normals[j].clone()).collect();
                rows.push(v.clone());
                if rank(rows) == r {
                    out |= 1 << i;
                }
            }
        }
        out
    };

    let mut levels: Vec<Vec<u64>> = vec![vec![0]];
    loop {
        let k = levels.len();
        let mut next: Vec<u64> = Vec::new();
        for &x in &levels[k - 1] {
            for i in 0..normals.len() {
                if x >> i & 1 == 1 {
                    continue;
                }
                let y = x | 1 << i;
                if next.iter().any(|&z| z & y == y) {
                    continue;
                }
                next.push(closure(y, span_rank(y)));
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        next.dedup();
        levels.push(next);
    }

    let mut flats: Vec<Vec<Flat>> = Vec::with_capacity(levels.len());
    for (k, level) in levels.iter().enumerate() {
        let mut row = Vec::with_capacity(level.len());
        for &x in level {
            let moebius = if k == 0 {
                1
            } else {
                -flats.iter().flatten().filter(|y: &&Flat| y.forms & x == y.forms).map(|y| y.moebius).sum::<i64>()
            };
            row.push(Flat { forms: x, codim: k, moebius });
        }
        flats.push(row);
    }
    IntersectionLattice { flats }
}

/// Betti numbers `b_0..b_n` of the complement in `ℙ^n`: the central
/// Poincaré polynomial divided by `1 + t`.
pub fn betti_complement(lattice: &IntersectionLattice, nvars: usize) -> Vec<i64> {
    let central = lattice.poincare();
    let mut out = Vec::with_capacity(nvars);
    let mut prev = 0;
    for k in 0..nvars {
        let b = central.get(k).copied().unwrap_or(0) - prev;
        out.push(b);
        prev = b;
    }
    debug_assert_eq!(central.get(nvars).copied().unwrap_or(0), prev);
    out
}

/// Outcome of comparing a Hilbert polynomial coefficient with a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
}

impl FormulaCheck {
    fn new(lhs: BigRational, rhs: BigRational) -> Self {
        let holds = lhs == rhs;
        FormulaCheck { lhs, rhs, holds }
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn require_space<C: Field>(arr: &Arrangement<C>) -> Result<()> {
    if arr.ring.nvars() != 4 {
        return Err(Error::Precondition("formula checks are for arrangements in ℙ^3".into()));
    }
    Ok(())
}

fn hp_coefficient<C: Field>(arr: &Arrangement<C>, k: usize) -> Result<BigRational> {
    let hp = milnor_hilbert_data(&arr.polynomial())?.hp_coeffs;
    Ok(hp.get(k).cloned().unwrap_or_else(BigRational::zero))
}

/// Leading coefficient `a` of the Hilbert polynomial against `Σ_E (k_E - 1)^2`
/// over the lines `E` where at least two planes meet.
pub fn check_formula_a<C: Field>(arr: &Arrangement<C>, lattice: &IntersectionLattice) -> Result<FormulaCheck> {
    require_space(arr)?;
    let rhs: i64 = lattice.codim(2).iter().map(|e| (e.multiplicity() as i64 - 1).pow(2)).sum();
    Ok(FormulaCheck::new(hp_coefficient(arr, 1)?, int(rhs)))
}

/// Constant term `b` of the Hilbert polynomial against
/// `((d-1)^3 - (3d-7) a - b_3) / 2` with `a = (d-1)^2 - b_2`.
pub fn check_formula_b<C: Field>(arr: &Arrangement<C>, lattice: &IntersectionLattice) -> Result<FormulaCheck> {
    require_space(arr)?;
    let d = arr.len() as i64;
    let b = betti_complement(lattice, 4);
    let a = (d - 1).pow(2) - b[2];
    let rhs = int((d - 1).pow(3) - (3 * d - 7) * a - b[3]) / int(2);
    Ok(FormulaCheck::new(hp_coefficient(arr, 0)?, rhs))
}

/// Whether every proper flat of codimension `k` lies on exactly `k`
/// hyperplanes; in ℙ^3 this says no four planes share a point and no three a
/// line.
pub fn is_generic(lattice: &IntersectionLattice, nvars: usize) -> bool {
    lattice.flats.iter().take(nvars).enumerate().all(|(k, level)| level.iter().all(|x| x.multiplicity() == k))
}

/// Constant term of the Hilbert polynomial against the closed formula for a
/// generic arrangement of `d` planes,
/// `((d-1)^3 - (3d-7)(d-1)d/2 - C(d,3) + C(d,2) - d + 1) / 2`.
pub fn check_formula_b1<C: Field>(arr: &Arrangement<C>, lattice: &IntersectionLattice) -> Result<FormulaCheck> {
    require_space(arr)?;
    if !is_generic(lattice, 4) {
        return Err(Error::NotGeneric("some intersection lies on more planes than its codimension".into()));
    }
    let d = arr.len() as i64;
    let twice = (d - 1).pow(3) - (3 * d - 7) * (d - 1) * d / 2 - binom(d, 3) + binom(d, 2) - d + 1;
    Ok(FormulaCheck::new(hp_coefficient(arr, 0)?, int(twice) / int(2)))
}
