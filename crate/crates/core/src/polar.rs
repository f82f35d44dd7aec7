//! Polar degrees, generic sections and mixed multiplicities.
//!
//! The fiber of the gradient map over a point `q` is cut out by the 2x2
//! minors of the matrix with rows `∇f` and `q`. Saturating by a generic
//! element `h` of `J_f` strips the base locus and the irrelevant ideal: at a
//! point of the fiber `∇f = λ q` with `λ ≠ 0`, so `h` does not vanish there.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{saturation_by_element, Ideal};
use crate::hilbert::{hilbert_data, milnor_hilbert_data};
use crate::polycore::{
    derive_seed, hessian_determinant, linear_form, partial_derivatives, require_large_field, seeded_rng,
    Polynomial,
};

/// Attempts per randomized step before giving up.
pub const GENERICITY_ATTEMPTS: u64 = 8;

/// The sequence `(μ^0, ..., μ^n)` with the seeds that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedMultSeq {
    pub mu: Vec<i64>,
    /// Seed used for slot `i`; slot 0 is not random and records the base seed.
    pub seeds: Vec<u64>,
}

impl MixedMultSeq {
    /// Euler number of the complement, `Σ (-1)^i μ^i`.
    pub fn euler(&self) -> i64 {
        self.mu.iter().enumerate().map(|(i, m)| if i % 2 == 0 { *m } else { -*m }).sum()
    }
}

fn degree_of<C: Field>(f: &Polynomial<C>) -> Result<u32> {
    match f.homogeneous_degree() {
        Some(d) if !f.is_zero() => Ok(d),
        _ => Err(Error::Precondition("polynomial is not homogeneous".into())),
    }
}

/// Restriction of `f` to a generic linear subspace `ℙ^m ⊂ ℙ^n`, together
/// with the seed that produced it.
///
/// The subspace is the graph `x_i = Σ_{j<=m} a_ij x_j` for `i > m`; such
/// subspaces form a dense open set, and keeping the first coordinates fixed
/// keeps coefficients small over the rationals.
pub fn generic_section_seeded<C: Field>(f: &Polynomial<C>, m: usize, seed: u64) -> Result<(Polynomial<C>, u64)> {
    let n = f.nvars() - 1;
    if m < 1 || m >= n {
        return Err(Error::Precondition(format!("section dimension {m} must lie in 1..{n}")));
    }
    let d = degree_of(f)?;
    require_large_field::<C>()?;
    let small = f.ring().truncated(m + 1);
    for attempt in 0..GENERICITY_ATTEMPTS {
        let s = derive_seed(seed, attempt);
        let mut rng = seeded_rng(s);
        let images: Vec<Polynomial<C>> = (0..=n)
            .map(|i| {
                if i <= m {
                    Polynomial::var(&small, i)
                } else {
                    let coeffs: Vec<C> = (0..=m).map(|_| C::random(&mut rng)).collect();
                    linear_form(&small, &coeffs)
                }
            })
            .collect();
        let section = f.compose(&images);
        if section.homogeneous_degree() != Some(d) {
            continue;
        }
        // reduced iff the singular locus has codimension at least two in ℙ^m
        let sing = milnor_hilbert_data(&section)?.projective_dimension();
        if sing <= m as i64 - 2 {
            return Ok((section, s));
        }
    }
    Err(Error::GenericityFailure(format!("no reduced section of dimension {m} in {GENERICITY_ATTEMPTS} draws")))
}

pub fn generic_section<C: Field>(f: &Polynomial<C>, m: usize, seed: u64) -> Result<Polynomial<C>> {
    generic_section_seeded(f, m, seed).map(|(g, _)| g)
}

/// Degree of the fiber of the gradient map over `q`, after removing the base
/// locus by saturation with `h = Σ c_i f_i`; needs `Σ c_i q_i ≠ 0`. `None`
/// when the fiber is empty.
pub fn fiber_degree<C: Field>(f: &Polynomial<C>, q: &[C], c: &[C]) -> Result<Option<i64>> {
    let ring = f.ring();
    let grads = partial_derivatives(f);
    let Some(k) = q.iter().position(|x| !x.is_zero()) else {
        return Err(Error::Precondition("target must be nonzero".into()));
    };
    // q_k (q_i f_j - q_j f_i) is a combination of the minors through row k
    let minors: Vec<Polynomial<C>> =
        (0..grads.len()).filter(|&j| j != k).map(|j| &grads[j].scale(&q[k]) - &grads[k].scale(&q[j])).collect();
    let mut h = Polynomial::zero(ring);
    for (g, ci) in grads.iter().zip(c) {
        h = &h + &g.scale(ci);
    }
    if h.is_zero() {
        return Ok(None);
    }
    let sat = saturation_by_element(&Ideal::new(ring, minors), &h)?;
    let data = hilbert_data(&sat)?;
    match data.projective_dimension() {
        -1 => Ok(None),
        0 => Ok(Some(data.degree())),
        _ => Err(Error::NonZeroDimensionalFiber),
    }
}

fn random_vector<C: Field>(n: usize, seed: u64) -> Vec<C> {
    let mut rng = seeded_rng(seed);
    (0..n).map(|_| C::random(&mut rng)).collect()
}

/// One polar degree evaluation at a random target; retries targets whose
/// fiber is not zero-dimensional.
fn polar_degree_once<C: Field>(f: &Polynomial<C>, seed: u64) -> Result<i64> {
    let n = f.nvars();
    for attempt in 0..GENERICITY_ATTEMPTS {
        let s = derive_seed(seed, attempt);
        let q: Vec<C> = random_vector(n, s);
        // on the fiber f_k = λ q_k, so h = f_k only vanishes on the base locus
        let Some(k) = q.iter().position(|x| !x.is_zero()) else { continue };
        let mut c = vec![C::zero(); n];
        c[k] = C::one();
        match fiber_degree(f, &q, &c) {
            Ok(v) => return Ok(v.unwrap_or(0)),
            Err(Error::NonZeroDimensionalFiber) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonZeroDimensionalFiber)
}

/// Degree of the gradient map `x ↦ ∇f(x)`; `0` when it is not dominant.
/// Two independent targets must give the same value.
pub fn polar_degree<C: Field>(f: &Polynomial<C>, seed: u64) -> Result<i64> {
    let d = degree_of(f)?;
    if d < 2 {
        return Err(Error::Precondition("polar degree needs degree at least 2".into()));
    }
    require_large_field::<C>()?;
    let a = polar_degree_once(f, derive_seed(seed, 100))?;
    let b = polar_degree_once(f, derive_seed(seed, 200))?;
    if a != b {
        return Err(Error::GenericityFailure(format!("polar degree draws disagree: {a} vs {b}")));
    }
    Ok(a)
}

/// Total Milnor number of a reduced plane curve with isolated singularities.
///
/// The line `z = 0` is moved to a random line `z = a x + b y`. Once it misses
/// the singular points and is not tangent to the curve, the homogeneous ideal
/// `(g_x, g_y, g^2)` is supported on the singular points. There `g^2` lies in
/// the local Jacobian ideal (Briançon-Skoda), so the degree of the scheme is
/// the sum of the local Milnor numbers.
pub fn total_milnor_plane_curve<C: Field>(f: &Polynomial<C>, seed: u64) -> Result<i64> {
    if f.nvars() != 3 {
        return Err(Error::Precondition("plane curves live in three variables".into()));
    }
    degree_of(f)?;
    let sing = milnor_hilbert_data(f)?;
    if sing.projective_dimension() > 0 {
        return Err(Error::NonIsolatedSingularities(sing.projective_dimension() as usize));
    }
    let ring = f.ring();
    for attempt in 0..GENERICITY_ATTEMPTS {
        let mut rng = seeded_rng(derive_seed(seed, attempt));
        let (a, b) = (C::random(&mut rng), C::random(&mut rng));
        let moved = linear_form(ring, &[a, b, C::one()]);
        let g = f.compose(&[Polynomial::var(ring, 0), Polynomial::var(ring, 1), moved]);
        let grads = partial_derivatives(&g);
        let on_line = vec![grads[0].clone(), grads[1].clone(), g.clone(), Polynomial::var(ring, 2)];
        if hilbert_data(&Ideal::new(ring, on_line))?.projective_dimension() >= 0 {
            continue;
        }
        let local = hilbert_data(&Ideal::new(ring, vec![grads[0].clone(), grads[1].clone(), &g * &g]))?;
        return match local.projective_dimension() {
            -1 => Ok(0),
            0 => Ok(local.degree()),
            _ => Err(Error::NonIsolatedSingularities(local.projective_dimension() as usize)),
        };
    }
    Err(Error::ChartFailure)
}

/// `(μ^0, ..., μ^n)`: `μ^i` is the polar degree of a generic `ℙ^i`-section
/// and `μ^n` the polar degree of `f`. A generic line section is smooth, so
/// `μ^1 = d - 1`.
pub fn mixed_multiplicities<C: Field>(f: &Polynomial<C>, seed: u64) -> Result<MixedMultSeq> {
    let d = degree_of(f)? as i64;
    if d < 2 {
        return Err(Error::Precondition("mixed multiplicities need degree at least 2".into()));
    }
    require_large_field::<C>()?;
    let n = f.nvars() - 1;
    let mut mu = vec![1];
    let mut seeds = vec![seed];
    for i in 1..n {
        let (section, s) = generic_section_seeded(f, i, derive_seed(seed, i as u64))?;
        let value = if i == 1 { d - 1 } else { polar_degree(&section, s)? };
        mu.push(value);
        seeds.push(s);
    }
    let top = derive_seed(seed, n as u64);
    mu.push(polar_degree(f, top)?);
    seeds.push(top);
    Ok(MixedMultSeq { mu, seeds })
}

/// Evidence for the homaloidal verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomaloidalWitness {
    pub verdict: bool,
    /// Nonvanishing Hessian determinant.
    pub dominant: bool,
    pub polar_degree: i64,
    pub seed: u64,
}

pub fn is_homaloidal<C: Field>(f: &Polynomial<C>, seed: u64) -> Result<HomaloidalWitness> {
    let dominant = !hessian_determinant(f).is_zero();
    let pd = polar_degree(f, seed)?;
    Ok(HomaloidalWitness { verdict: dominant && pd == 1, dominant, polar_degree: pd, seed })
}

/// Singular scheme data of a generic plane section of a surface: total
/// Milnor and Tjurina numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionSingularities {
    pub milnor: i64,
    pub tjurina: i64,
}

pub fn plane_section_singularities<C: Field>(f: &Polynomial<C>, seed: u64) -> Result<SectionSingularities> {
    let (c, s) = generic_section_seeded(f, 2, seed)?;
    Ok(SectionSingularities {
        milnor: total_milnor_plane_curve(&c, derive_seed(s, 7))?,
        tjurina: crate::hilbert::total_tjurina(&c)?,
    })
}
