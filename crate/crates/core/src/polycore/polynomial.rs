use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;
use crate::polycore::monomial::Monomial;
use crate::polycore::ring::Ring;

/// Sparse polynomial. Terms are kept in decreasing graded reverse
/// lexicographic order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C: Field> {
    ring: Ring,
    terms: Vec<(Monomial, C)>,
}

impl<C: Field> Polynomial<C> {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: C) -> Self {
        Self::monomial(ring, Monomial::ONE, c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        assert!(i < ring.nvars());
        Self::monomial(ring, Monomial::var(i), C::one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: C) -> Self {
        debug_assert!(m.support_len() <= ring.nvars());
        if c.is_zero() {
            Self::zero(ring)
        } else {
            Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(ring: &Ring, terms: I) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            debug_assert!(m.support_len() <= ring.nvars());
            if c.is_zero() {
                continue;
            }
            match acc.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect(),
        }
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(i);
            (e > 0).then(|| (m.with_exp(i, e - 1), c.clone() * C::from_i64(e as i64)))
        });
        Self::from_terms(&self.ring, terms)
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars());
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    v *= x.pow(e as u64);
                }
            }
            total += v;
        }
        total
    }

    /// Substitutes `images[i]` for the i-th variable. All images must live
    /// in the same ring, which becomes the ring of the result.
    pub fn compose(&self, images: &[Polynomial<C>]) -> Self {
        assert_eq!(images.len(), self.nvars());
        let target = images[0].ring.clone();
        let maxdeg = self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0) as usize;
        // cache powers of each image
        let mut powers: Vec<Vec<Polynomial<C>>> = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let maxe = self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0) as usize;
            let mut p = vec![Self::one(&target)];
            for k in 1..=maxe.min(maxdeg) {
                let next = &p[k - 1] * img;
                p.push(next);
            }
            powers.push(p);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in &self.terms {
            let mut prod = Self::constant(&target, c.clone());
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    prod = &prod * &pw[e];
                }
            }
            for (t, a) in prod.terms {
                *acc.entry(t).or_insert_with(C::zero) += a;
            }
        }
        Self::from_terms(&target, acc)
    }

    /// Reinterprets the polynomial in another ring with at least as many
    /// variables used by its support.
    pub fn in_ring(&self, ring: &Ring) -> Self {
        assert!(self.terms.iter().all(|(m, _)| m.support_len() <= ring.nvars()));
        Polynomial { ring: ring.clone(), terms: self.terms.clone() }
    }

    /// Highest index of a variable that actually occurs, plus one.
    pub fn support_len(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.support_len()).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(i) > 0)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.ring, other.ring);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.clone() - b[j].1.clone() } else { a[i].1.clone() + b[j].1.clone() };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            out.push((*m, if negate { -c.clone() } else { c.clone() }));
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }
}

impl<C: Field> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.merge(rhs, false)
    }
}

impl<C: Field> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.merge(rhs, true)
    }
}

impl<C: Field> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<C: Field> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        debug_assert_eq!(self.ring, rhs.ring);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(C::zero) += ca.clone() * cb.clone();
            }
        }
        Polynomial::from_terms(&self.ring, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<C: Field> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $f(self, rhs: Self) -> Polynomial<C> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Field> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.signed_parts();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.degree() == 0 {
                factors.push(mag);
            }
            for (i, name) in self.ring.names().iter().enumerate() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    type F = Fp<32003>;

    #[test]
    fn printing_orders_terms_by_grevlex() {
        let r = Ring::standard(3);
        let x = Polynomial::<F>::var(&r, 0);
        let y = Polynomial::<F>::var(&r, 1);
        let z = Polynomial::<F>::var(&r, 2);
        let p = &(&(&x * &z) - &(&y * &y)) + &Polynomial::constant(&r, F::from_i64(-3));
        assert_eq!(p.to_string(), "-y^2 + x*z - 3");
        assert_eq!(Polynomial::<F>::zero(&r).to_string(), "0");
    }

    #[test]
    fn power_and_derivative() {
        let r = Ring::standard(2);
        let x = Polynomial::<F>::var(&r, 0);
        let y = Polynomial::<F>::var(&r, 1);
        let s = (&x + &y).pow(3);
        assert_eq!(s.len(), 4);
        assert_eq!(s.derivative(0), (&x + &y).pow(2).scale(&F::from_i64(3)));
        assert_eq!(s.homogeneous_degree(), Some(3));
    }

    #[test]
    fn compose_substitutes() {
        let r = Ring::standard(2);
        let x = Polynomial::<F>::var(&r, 0);
        let y = Polynomial::<F>::var(&r, 1);
        let p = &(&x * &x) - &(&y * &y);
        let q = p.compose(&[&x + &y, &x - &y]);
        assert_eq!(q, (&x * &y).scale(&F::from_i64(4)));
    }
}
