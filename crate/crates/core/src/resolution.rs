//! Minimal graded resolutions of Milnor algebras, freeness, and the
//! exponent dictionary of free divisors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{minimal_generators, module_syzygies, GradedVector};
use crate::polar::MixedMultSeq;
use crate::polycore::{partial_derivatives, Polynomial};

/// Graded Betti numbers of `S / J_f`: `columns[k]` lists the twists `-a` of
/// the summands `S(-a)` in homological position `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub columns: Vec<Vec<i64>>,
}

impl BettiTable {
    /// Index of the last nonzero column.
    pub fn length(&self) -> usize {
        self.columns.iter().rposition(|c| !c.is_empty()).unwrap_or(0)
    }

    pub fn position(&self, k: usize) -> &[i64] {
        self.columns.get(k).map_or(&[], Vec::as_slice)
    }

    /// `Σ_k (-1)^k Σ t^a` over the summands `S(-a)` in position `k`; equals
    /// the Hilbert series numerator of `S / J_f`.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let mut out: Vec<i64> = Vec::new();
        for (k, col) in self.columns.iter().enumerate() {
            for &shift in col {
                let a = (-shift) as usize;
                if out.len() <= a {
                    out.resize(a + 1, 0);
                }
                out[a] += if k % 2 == 0 { 1 } else { -1 };
            }
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

/// Minimal graded free resolution of `S / J_f`, by iterated syzygies.
pub fn betti_table<C: Field>(f: &Polynomial<C>) -> Result<BettiTable> {
    let Some(d) = f.homogeneous_degree().filter(|_| !f.is_zero()) else {
        return Err(Error::Precondition("polynomial is not homogeneous".into()));
    };
    let n = f.nvars();
    let grads: Vec<GradedVector<C>> = partial_derivatives(f)
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| GradedVector { entries: vec![g], degree: d as i64 - 1 })
        .collect();
    let keep = minimal_generators(&grads, &[0])?;
    let mut gens: Vec<GradedVector<C>> = keep.into_iter().map(|k| grads[k].clone()).collect();
    let mut shifts = vec![0i64];
    let mut columns = vec![vec![0i64]];
    while !gens.is_empty() && columns.len() <= n {
        columns.push(gens.iter().map(|g| -g.degree).collect());
        let next = module_syzygies(&gens, &shifts)?;
        shifts = gens.iter().map(|g| g.degree).collect();
        gens = next;
    }
    Ok(BettiTable { columns })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreenessStatus {
    Free,
    NearlyFree,
    Neither,
}

impl std::fmt::Display for FreenessStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FreenessStatus::Free => "free",
            FreenessStatus::NearlyFree => "nearly_free",
            FreenessStatus::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessVerdict {
    pub status: FreenessStatus,
    /// Exponents `d_1 <= ... <= d_n`; empty for `Neither`.
    pub exponents: Vec<i64>,
}

/// Classification read off a Betti table of `S / J_f` for `f` of degree `d`
/// in `n + 1` variables.
///
/// Free: `n + 1` generators, `n` relations, nothing further. Nearly free:
/// `n + 1` generators, relations of degrees `d_1 <= .. <= d_n = d_{n+1}` with
/// `d_1 + .. + d_n = d`, and a single second syzygy in degree `d + d_n`.
pub fn classify_betti(table: &BettiTable, d: i64, nvars: usize) -> FreenessVerdict {
    let n = nvars - 1;
    let neither = FreenessVerdict { status: FreenessStatus::Neither, exponents: Vec::new() };
    let gens = table.position(1);
    if gens.len() != n + 1 {
        return neither;
    }
    let mut exps: Vec<i64> = table.position(2).iter().map(|s| -s - (d - 1)).collect();
    exps.sort_unstable();
    match table.length() {
        2 if exps.len() == n && exps.iter().sum::<i64>() == d - 1 => {
            FreenessVerdict { status: FreenessStatus::Free, exponents: exps }
        }
        3 if exps.len() == n + 1 && table.position(3).len() == 1 => {
            let top = exps[n];
            let second = -table.position(3)[0];
            exps.truncate(n);
            if exps[n - 1] == top && exps.iter().sum::<i64>() == d && second == d + top {
                FreenessVerdict { status: FreenessStatus::NearlyFree, exponents: exps }
            } else {
                neither
            }
        }
        _ => neither,
    }
}

pub fn classify_freeness<C: Field>(f: &Polynomial<C>) -> Result<FreenessVerdict> {
    let table = betti_table(f)?;
    let d = f.homogeneous_degree().expect("checked by betti_table") as i64;
    Ok(classify_betti(&table, d, f.nvars()))
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Product of `(x + a_i)` as coefficients, low degree first.
fn poly_from_roots(negated_roots: &[BigRational]) -> Vec<BigRational> {
    let mut acc = vec![BigRational::one()];
    for a in negated_roots {
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] += c * a;
        }
        acc = next;
    }
    acc
}

fn poly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Coefficients in `x` of `p(x + shift)`.
fn poly_shift(p: &[BigRational], shift: i64) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); p.len().max(1)];
    let lin = [rat(shift), BigRational::one()];
    let mut power = vec![BigRational::one()];
    for c in p {
        for (k, v) in power.iter().enumerate() {
            out[k] += c * v;
        }
        let mut next = vec![BigRational::zero(); power.len() + 1];
        for (k, v) in power.iter().enumerate() {
            next[k] += v * &lin[0];
            next[k + 1] += v * &lin[1];
        }
        power = next;
    }
    out
}

/// `C(x + c, n)` as a polynomial in `x`.
fn binomial_poly(c: i64, n: usize) -> Vec<BigRational> {
    let roots: Vec<BigRational> = (0..n as i64).map(|i| rat(c - i)).collect();
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let scale = BigRational::new(BigInt::one(), fact);
    poly_from_roots(&roots).into_iter().map(|v| v * &scale).collect()
}

/// Exponents of a free divisor recovered from the Hilbert polynomial of its
/// Milnor algebra.
///
/// `Q(x) = hp(x - n - 1 + d) - C(x - 1 + d, n) + (n + 1) C(x, n)` equals
/// `Σ_j C(x - d_j, n)`. Its coefficients determine the power sums of the
/// exponents by a triangular system; Newton's identities turn those into the
/// monic polynomial with roots `d_j`, whose integer roots are returned.
pub fn exponents_from_hilbert_polynomial(hp: &[BigRational], d: i64, n: usize) -> Result<Vec<i64>> {
    if n < 2 || d < 2 || hp.len() > n {
        return Err(Error::Precondition("need n >= 2, d >= 2 and deg hp <= n - 1".into()));
    }
    let mut q = poly_shift(hp, -(n as i64) - 1 + d);
    q.resize(n + 1, BigRational::zero());
    for (k, v) in binomial_poly(d - 1, n).into_iter().enumerate() {
        q[k] -= v;
    }
    for (k, v) in binomial_poly(0, n).into_iter().enumerate() {
        q[k] += v * rat(n as i64 + 1);
    }
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let nq: Vec<BigRational> = q.iter().map(|c| c * BigRational::from_integer(fact.clone())).collect();

    // e_k(a, a+1, ..., a+n-1) as a polynomial in a: coefficient of y^k in Π (1 + (a + i) y)
    let mut e: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for i in 0..n as i64 {
        let mut next: Vec<Vec<BigRational>> = vec![Vec::new(); e.len() + 1];
        for (k, coeffs) in e.iter().enumerate() {
            add_into(&mut next[k], coeffs);
            // (a + i) * coeffs
            let mut shifted = vec![BigRational::zero(); coeffs.len() + 1];
            for (j, c) in coeffs.iter().enumerate() {
                shifted[j + 1] += c;
                shifted[j] += c * rat(i);
            }
            add_into(&mut next[k + 1], &shifted);
        }
        e = next;
    }
    // n! [x^(n-k)] Q = (-1)^k Σ_l c_{k,l} T_l
    let mut power_sums = vec![rat(n as i64)];
    for k in 1..=n {
        let c = &e[k];
        let sign = if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let mut rhs = &nq[n - k] * &sign;
        for (l, t) in power_sums.iter().enumerate() {
            if let Some(cl) = c.get(l) {
                rhs -= cl * t;
            }
        }
        power_sums.push(rhs / &c[k]);
    }
    // Newton: k e_k = Σ_{i=1}^k (-1)^(i-1) e_{k-i} T_i
    let mut elem = vec![BigRational::one()];
    for k in 1..=n {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &elem[k - i] * &power_sums[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        elem.push(acc / rat(k as i64));
    }
    // Π (y - d_j) = Σ_k (-1)^k e_k y^(n-k), stored low degree first
    let mut poly: Vec<BigRational> =
        (0..=n).map(|j| if (n - j) % 2 == 0 { elem[n - j].clone() } else { -elem[n - j].clone() }).collect();
    let mut roots = Vec::new();
    for r in 1..=d {
        while poly.len() > 1 && poly_eval(&poly, &rat(r)).is_zero() {
            poly = synthetic_division(&poly, &rat(r));
            roots.push(r);
        }
    }
    let reason = || Error::NotFreeCompatible(format!("no {n} positive integer exponents summing to {}", d - 1));
    if roots.len() != n || roots.iter().sum::<i64>() != d - 1 {
        return Err(reason());
    }
    Ok(roots)
}

fn add_into(acc: &mut Vec<BigRational>, p: &[BigRational]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigRational::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += b;
    }
}

fn synthetic_division(p: &[BigRational], root: &BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); p.len() - 1];
    let mut carry = BigRational::zero();
    for k in (1..p.len()).rev() {
        carry = &p[k] + carry * root;
        out[k - 1] = carry.clone();
    }
    out
}

/// Data equivalent to the exponents of a free divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeDictionary {
    /// `Π (t + d_i)`, low degree first.
    pub poincare: Vec<i64>,
    /// Elementary symmetric functions `(s_0, ..., s_n)` of the exponents.
    pub mixed: MixedMultSeq,
    /// `a t + b` (low degree first) for surfaces in `ℙ^3`.
    pub hp: Option<Vec<BigRational>>,
}

pub fn free_dictionary(exponents: &[i64], d: i64, n: usize) -> Result<FreeDictionary> {
    if exponents.len() != n || exponents.iter().any(|&e| e < 1) || exponents.iter().sum::<i64>() != d - 1 {
        return Err(Error::Precondition(format!("need {n} positive exponents summing to {}", d - 1)));
    }
    let mut poincare = vec![1i64];
    for &e in exponents {
        let mut next = vec![0i64; poincare.len() + 1];
        for (k, c) in poincare.iter().enumerate() {
            next[k + 1] += c;
            next[k] += c * e;
        }
        poincare = next;
    }
    // s_k is the coefficient of t^(n-k)
    let mu: Vec<i64> = (0..=n).map(|k| poincare[n - k]).collect();
    let hp = (n == 3).then(|| {
        let (s2, s3) = (mu[2], mu[3]);
        let a = (d - 1).pow(2) - s2;
        let b2 = (d - 1).pow(3) - (3 * d - 7) * a - s3;
        vec![BigRational::new(BigInt::from(b2), BigInt::from(2)), rat(a)]
    });
    Ok(FreeDictionary { poincare, mixed: MixedMultSeq { mu, seeds: Vec::new() }, hp })
}

/// Integer Hilbert polynomial coefficients, if all are integers.
pub fn integer_coefficients(hp: &[BigRational]) -> Option<Vec<i64>> {
    hp.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
}
