//! Sparse multivariate polynomials over exact fields.

pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod ring;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{CoefficientField, Field};
use crate::linalg;

pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use ring::Ring;

/// Square matrix over the coefficient field, stored by rows.
pub type Matrix<C> = Vec<Vec<C>>;

/// Deterministic generator for every genericity draw in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent sub-seed number `stream` of `seed` (SplitMix64 finaliser).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn partial_derivatives<C: Field>(f: &Polynomial<C>) -> Vec<Polynomial<C>> {
    (0..f.nvars()).map(|i| f.derivative(i)).collect()
}

/// Checks `sum_j x_j * df/dx_j == d * f` for a homogeneous `f` of degree `d`.
pub fn euler_identity_holds<C: Field>(f: &Polynomial<C>) -> bool {
    let Some(d) = f.homogeneous_degree() else { return f.is_zero() };
    let ring = f.ring();
    let mut lhs = Polynomial::zero(ring);
    for (i, fi) in partial_derivatives(f).iter().enumerate() {
        lhs = &lhs + &(fi * &Polynomial::var(ring, i));
    }
    lhs == f.scale(&C::from_i64(d as i64))
}

/// `f(A x)`: the i-th variable is replaced by `sum_j A[i][j] x_j`.
pub fn linear_change<C: Field>(f: &Polynomial<C>, a: &Matrix<C>) -> Polynomial<C> {
    let ring = f.ring();
    let images: Vec<Polynomial<C>> = a.iter().map(|row| linear_form(ring, row)).collect();
    f.compose(&images)
}

pub fn linear_form<C: Field>(ring: &Ring, coeffs: &[C]) -> Polynomial<C> {
    Polynomial::from_terms(ring, coeffs.iter().enumerate().map(|(j, c)| (Monomial::var(j), c.clone())))
}

pub fn identity_matrix<C: Field>(n: usize) -> Matrix<C> {
    (0..n).map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect()).collect()
}

/// Smallest prime accepted for genericity arguments.
pub const MIN_GENERIC_PRIME: u32 = 32003;

pub(crate) fn require_large_field<C: Field>() -> Result<()> {
    match C::descriptor() {
        CoefficientField::PrimeField(p) if p < MIN_GENERIC_PRIME => {
            Err(Error::Precondition(format!("prime {p} is too small for genericity draws (need >= {MIN_GENERIC_PRIME})")))
        }
        _ => Ok(()),
    }
}

/// Random invertible `n x n` matrix; retries singular draws.
pub fn random_invertible_matrix<C: Field>(n: usize, seed: u64) -> Result<Matrix<C>> {
    let mut rng = seeded_rng(seed);
    for _ in 0..16 {
        let a: Matrix<C> = (0..n).map(|_| (0..n).map(|_| C::random(&mut rng)).collect()).collect();
        if !linalg::determinant(a.clone()).is_zero() {
            return Ok(a);
        }
    }
    Err(Error::GenericityFailure("sampled 16 singular matrices".into()))
}

/// Generic coordinate change `g = f o A` with `A` drawn from `seed`.
pub fn random_linear_change<C: Field>(f: &Polynomial<C>, seed: u64) -> Result<(Polynomial<C>, Matrix<C>)> {
    require_large_field::<C>()?;
    let a = random_invertible_matrix::<C>(f.nvars(), seed)?;
    Ok((linear_change(f, &a), a))
}

/// Determinant of the matrix of second partial derivatives, expanded exactly.
pub fn hessian_determinant<C: Field>(f: &Polynomial<C>) -> Polynomial<C> {
    let n = f.nvars();
    let first = partial_derivatives(f);
    let h: Vec<Vec<Polynomial<C>>> = first.iter().map(|fi| (0..n).map(|j| fi.derivative(j)).collect()).collect();
    let cols: Vec<usize> = (0..n).collect();
    laplace(&h, 0, &cols, f.ring())
}

fn laplace<C: Field>(m: &[Vec<Polynomial<C>>], row: usize, cols: &[usize], ring: &Ring) -> Polynomial<C> {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = Polynomial::zero(ring);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace(m, row + 1, &rest, ring);
        if minor.is_zero() {
            continue;
        }
        let term = entry * &minor;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
