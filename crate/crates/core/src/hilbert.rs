//! Hilbert functions, series and polynomials of graded quotients `S/I`.
//!
//! Everything is read off the leading-term ideal. The series numerator of a
//! monomial ideal comes from pivot recursion:
//! `N(I) = N(I + (p)) + t^deg(p) N(I : p)` for a monomial pivot `p`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::polycore::{partial_derivatives, Monomial, MonomialOrder, Polynomial};

/// Hilbert data of `S/I` for a homogeneous ideal `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    /// Variable count of `S`.
    pub nvars: usize,
    /// `N(t)` with `HS(t) = N(t) / (1 - t)^nvars`, low degree first.
    pub numerator: Vec<i64>,
    /// Hilbert polynomial, low degree first; empty when it is zero.
    pub hp_coeffs: Vec<BigRational>,
    /// Least `k0` such that the Hilbert function equals the polynomial for all `k >= k0`.
    pub k0: usize,
    /// Hilbert function values for `k = 0..=k0 + 2`.
    pub prefix: Vec<i64>,
}

impl HilbertData {
    /// Coefficient of `t^k` in the Hilbert series.
    pub fn function(&self, k: usize) -> i64 {
        series_coefficient(&self.numerator, self.nvars, k)
    }

    pub fn polynomial_at(&self, k: i64) -> BigRational {
        let t = BigRational::from_integer(BigInt::from(k));
        self.hp_coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &t + c)
    }

    /// Degree of the Hilbert polynomial, i.e. the dimension of the projective
    /// scheme; `-1` when the scheme is empty.
    pub fn projective_dimension(&self) -> i64 {
        self.hp_coeffs.len() as i64 - 1
    }

    /// `(dim)!` times the leading coefficient; `0` for the empty scheme.
    pub fn degree(&self) -> i64 {
        match self.hp_coeffs.last() {
            None => 0,
            Some(lead) => {
                let fact: BigInt = (1..self.hp_coeffs.len()).map(BigInt::from).product();
                (lead * BigRational::from_integer(fact)).to_integer().to_i64().expect("degree fits i64")
            }
        }
    }

    /// Hilbert polynomial with integer coefficients, when it has them.
    pub fn integer_hp(&self) -> Option<Vec<i64>> {
        self.hp_coeffs.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
    }

    /// Text form such as `45t - 189`.
    pub fn hp_string(&self) -> String {
        format_hp(&self.hp_coeffs)
    }
}

/// Renders a polynomial in `t` given low-degree-first coefficients.
pub fn format_hp(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let coeff = if abs.is_one() && k > 0 { String::new() } else { abs.to_string() };
        match k {
            0 => out.push_str(&coeff),
            1 => out.push_str(&format!("{coeff}t")),
            _ => out.push_str(&format!("{coeff}t^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

fn series_coefficient(numerator: &[i64], nvars: usize, k: usize) -> i64 {
    let n = nvars as i64;
    numerator
        .iter()
        .enumerate()
        .filter(|(j, _)| *j <= k)
        .map(|(j, &c)| c * binomial(k as i64 - j as i64 + n - 1, n - 1))
        .sum()
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, sign: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += sign * c;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), *m));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series of `S / (gens)` for a monomial ideal.
pub fn monomial_numerator(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    let mut memo = HashMap::new();
    trim(numerator_rec(minimalize(gens.to_vec()), nvars, &mut memo))
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize, memo: &mut HashMap<Vec<Monomial>, Vec<i64>>) -> Vec<i64> {
    if gens.iter().any(|m| m.degree() == 0) {
        return Vec::new();
    }
    // pairwise coprime generators: product of (1 - t^deg)
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let mut next = acc.clone();
            add_shifted(&mut next, &acc, g.degree() as usize, -1);
            acc = next;
        }
        return acc;
    }
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }
    // pivot: the variable occurring in the most non-linear generators
    let mut best = (0usize, 0usize);
    for v in 0..nvars {
        let count = gens.iter().filter(|m| m.exp(v) > 0 && m.degree() > 1).count();
        if count > best.1 {
            best = (v, count);
        }
    }
    let v = best.0;
    // least exponent of v among mixed generators, so that p lies outside I
    let e = gens.iter().filter(|m| m.exp(v) > 0 && m.degree() > m.exp(v)).map(|m| m.exp(v)).min().expect("shared pivot variable");
    let pivot = Monomial::var_pow(v, e);

    let mut plus = gens.clone();
    plus.push(pivot);
    let plus = minimalize(plus);
    // (m) : (p) = (m / gcd(m, p))
    let colon = minimalize(gens.iter().map(|m| m.gcd(&pivot).quotient_of(m)).collect());

    let mut out = numerator_rec(plus, nvars, memo);
    let tail = numerator_rec(colon, nvars, memo);
    add_shifted(&mut out, &tail, e as usize, 1);
    let out = trim(out);
    memo.insert(gens, out.clone());
    out
}

/// Hilbert data of `S/I` computed from a leading-term ideal.
pub fn hilbert_data_from_leading(lms: &[Monomial], nvars: usize) -> HilbertData {
    let numerator = monomial_numerator(lms, nvars);
    if numerator.is_empty() {
        return HilbertData { nvars, numerator, hp_coeffs: Vec::new(), k0: 0, prefix: vec![0, 0, 0] };
    }
    // strip factors of (1 - t): N = Q (1 - t)^(n - dim)
    let mut q = numerator.clone();
    let mut dim = nvars;
    while dim > 0 && q.iter().sum::<i64>() == 0 {
        let mut quot = vec![0i64; q.len() - 1];
        // synthetic division by (1 - t)
        let mut carry = 0;
        for (i, c) in q.iter().enumerate().take(q.len() - 1) {
            carry += c;
            quot[i] = carry;
        }
        q = trim(quot);
        dim -= 1;
    }
    let hp_coeffs = hilbert_polynomial(&q, dim);
    let hp_at = |k: usize| -> BigRational {
        let t = BigRational::from_integer(BigInt::from(k));
        hp_coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &t + c)
    };
    let bound = q.len() + 1;
    let mut k0 = bound;
    while k0 > 0 {
        let k = k0 - 1;
        if BigRational::from_integer(BigInt::from(series_coefficient(&numerator, nvars, k))) != hp_at(k) {
            break;
        }
        k0 = k;
    }
    let prefix = (0..=k0 + 2).map(|k| series_coefficient(&numerator, nvars, k)).collect();
    HilbertData { nvars, numerator, hp_coeffs, k0, prefix }
}

/// `Σ_j q_j C(t - j + dim - 1, dim - 1)` expanded in powers of `t`.
fn hilbert_polynomial(q: &[i64], dim: usize) -> Vec<BigRational> {
    if dim == 0 {
        return Vec::new();
    }
    let mut acc = vec![BigRational::zero(); dim];
    let fact: BigInt = (1..dim).map(BigInt::from).product();
    for (j, &qj) in q.iter().enumerate() {
        if qj == 0 {
            continue;
        }
        // Π_{i=1}^{dim-1} (t - j + i)
        let mut poly = vec![BigRational::one()];
        for i in 1..dim {
            let root = BigRational::from_integer(BigInt::from(i as i64 - j as i64));
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] += c * &root;
            }
            poly = next;
        }
        let scale = BigRational::new(BigInt::from(qj), fact.clone());
        for (k, c) in poly.into_iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    while acc.last().is_some_and(Zero::is_zero) {
        acc.pop();
    }
    acc
}

fn require_homogeneous<C: Field>(ideal: &Ideal<C>) -> Result<()> {
    if ideal.is_homogeneous() {
        Ok(())
    } else {
        Err(Error::Precondition("ideal is not homogeneous".into()))
    }
}

pub fn hilbert_data<C: Field>(ideal: &Ideal<C>) -> Result<HilbertData> {
    hilbert_data_for_order(ideal, MonomialOrder::GradedReverseLex)
}

/// Hilbert data read from the leading ideal for `order`; the result does not
/// depend on the order.
pub fn hilbert_data_for_order<C: Field>(ideal: &Ideal<C>, order: MonomialOrder) -> Result<HilbertData> {
    require_homogeneous(ideal)?;
    let gb = ideal.groebner_basis(order)?;
    Ok(hilbert_data_from_leading(&gb.leading_monomials(), ideal.ring().nvars()))
}

/// `dim (S/I)_k`.
pub fn hilbert_function<C: Field>(ideal: &Ideal<C>, k: usize) -> Result<i64> {
    require_homogeneous(ideal)?;
    let gb = ideal.gb()?;
    let numerator = monomial_numerator(&gb.leading_monomials(), ideal.ring().nvars());
    Ok(series_coefficient(&numerator, ideal.ring().nvars(), k))
}

/// The Jacobian ideal `J_f`.
pub fn jacobian_ideal<C: Field>(f: &Polynomial<C>) -> Ideal<C> {
    Ideal::new(f.ring(), partial_derivatives(f))
}

/// Hilbert data of the Milnor algebra `S / J_f`.
pub fn milnor_hilbert_data<C: Field>(f: &Polynomial<C>) -> Result<HilbertData> {
    hilbert_data(&jacobian_ideal(f))
}

/// Total Tjurina number: the constant Hilbert polynomial of `S / J_f`.
pub fn total_tjurina<C: Field>(f: &Polynomial<C>) -> Result<i64> {
    if f.homogeneous_degree().is_none() {
        return Err(Error::Precondition("polynomial is not homogeneous".into()));
    }
    let data = milnor_hilbert_data(f)?;
    match data.hp_coeffs.len() {
        0 => Ok(0),
        1 => Ok(data.hp_coeffs[0].to_integer().to_i64().expect("fits i64")),
        len => Err(Error::NonIsolatedSingularities(len - 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::polycore::{parse_polynomial, Ring};

    type F = Fp<32003>;

    fn poly(ring: &Ring, s: &str) -> Polynomial<F> {
        parse_polynomial(s, ring).unwrap()
    }

    #[test]
    fn zero_ideal_counts_all_monomials() {
        let r = Ring::standard(4);
        let zero = Ideal::<F>::new(&r, vec![]);
        assert_eq!(hilbert_function(&zero, 2).unwrap(), 10);
        let data = hilbert_data(&zero).unwrap();
        assert_eq!(data.projective_dimension(), 3);
        assert_eq!(data.degree(), 1);
    }

    #[test]
    fn monomial_jacobian_in_degree_three() {
        let r = Ring::standard(4);
        let j = jacobian_ideal(&poly(&r, "x*y*z*w"));
        assert_eq!(hilbert_function(&j, 3).unwrap(), 16);
        let data = hilbert_data(&j).unwrap();
        assert_eq!(data.hp_string(), "6t - 2");
    }

    #[test]
    fn artinian_milnor_algebra() {
        let r = Ring::standard(4);
        let j = jacobian_ideal(&poly(&r, "x^2 + y^2 + z^2 + w^2"));
        assert_eq!(hilbert_function(&j, 5).unwrap(), 0);
        let data = hilbert_data(&j).unwrap();
        assert!(data.hp_coeffs.is_empty());
        assert_eq!(data.k0, 1);
        assert_eq!(data.prefix, vec![1, 0, 0, 0]);
    }

    #[test]
    fn numerator_of_complete_intersection() {
        let r = Ring::standard(3);
        let lms = [Monomial::var_pow(0, 2), Monomial::var_pow(1, 3)];
        // (1 - t^2)(1 - t^3)
        assert_eq!(monomial_numerator(&lms, r.nvars()), vec![1, 0, -1, -1, 0, 1]);
    }

    #[test]
    fn tjurina_numbers() {
        let r3 = Ring::standard(3);
        assert_eq!(total_tjurina(&poly(&r3, "x^4 + y^4 + z^4")).unwrap(), 0);
        assert_eq!(total_tjurina(&poly(&r3, "z*y^2 - x^2*(x + z)")).unwrap(), 1);
        assert_eq!(total_tjurina(&poly(&r3, "x*y*z")).unwrap(), 3);
        let r4 = Ring::standard(4);
        assert_eq!(total_tjurina(&poly(&r4, "x*y*z*w")), Err(Error::NonIsolatedSingularities(1)));
    }

    #[test]
    fn order_independence() {
        let r = Ring::standard(4);
        let j = jacobian_ideal(&poly(&r, "y^2*z^2 - 4*x*z^3 - 4*y^3*w + 18*x*y*z*w - 27*x^2*w^2"));
        let a = hilbert_data_for_order(&j, MonomialOrder::GradedReverseLex).unwrap();
        let b = hilbert_data_for_order(&j, MonomialOrder::Lex).unwrap();
        assert_eq!(a, b);
        // the twisted cubic with multiplicity two (cuspidal transversal type)
        assert_eq!(a.projective_dimension(), 1);
        assert_eq!(a.degree(), 6);
    }

    #[test]
    fn formatting() {
        let c = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>();
        assert_eq!(format_hp(&c(&[-189, 45])), "45t - 189");
        assert_eq!(format_hp(&c(&[6])), "6");
        assert_eq!(format_hp(&c(&[0, -1, 1])), "t^2 - t");
        assert_eq!(format_hp(&[]), "0");
    }
}
