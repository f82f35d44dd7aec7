use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

/// Largest number of variables a ring may have.
pub const MAX_VARS: usize = 8;

/// Exponent vector, padded with zeros up to [`MAX_VARS`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], deg: 0 };

    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = e as u16;
        m.deg = e;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    /// Highest variable index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m.deg += other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = *other;
        for i in 0..MAX_VARS {
            debug_assert!(m.exps[i] >= self.exps[i]);
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if divisor.divides(self) {
            Some(divisor.quotient_of(self))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u32 + e;
        m.exps[i] = e as u16;
        m
    }

    /// Short divisibility mask: if `a` divides `b` then `a.mask() & !b.mask() == 0`.
    pub fn mask(&self) -> u64 {
        const THRESHOLDS: [u16; 8] = [0, 1, 2, 3, 5, 8, 12, 18];
        let mut bits = 0u64;
        for (v, &e) in self.exps.iter().enumerate() {
            for (j, &t) in THRESHOLDS.iter().enumerate() {
                if e > t {
                    bits |= 1 << (v * 8 + j);
                }
            }
        }
        bits
    }

    fn grevlex_tail(&self, other: &Monomial) -> Ordering {
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }

    #[inline]
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| self.grevlex_tail(other))
    }

    #[inline]
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    /// Block order: graded reverse lexicographic on the first `split`
    /// variables, ties broken by graded reverse lexicographic on the rest.
    pub fn cmp_elimination(&self, other: &Monomial, split: usize) -> Ordering {
        let block = |m: &Monomial, range: std::ops::Range<usize>| {
            let mut b = Monomial::ONE;
            for i in range {
                b.exps[i] = m.exps[i];
                b.deg += m.exps[i] as u32;
            }
            b
        };
        block(self, 0..split)
            .cmp_grevlex(&block(other, 0..split))
            .then_with(|| block(self, split..MAX_VARS).cmp_grevlex(&block(other, split..MAX_VARS)))
    }
}

/// Graded reverse lexicographic order; the canonical order for printing.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grevlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.support_len().max(1);
        write!(f, "{:?}", &self.exps[..n])
    }
}

/// Monomial orders supported by the Gröbner engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MonomialOrder {
    GradedReverseLex,
    Lex,
    /// Eliminates the first `k` variables.
    Elimination(u8),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GradedReverseLex => a.cmp_grevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::Elimination(k) => a.cmp_elimination(b, *k as usize),
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::GradedReverseLex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn grevlex_examples() {
        // y^2 z^2 > x z^3 > y^3 w > x y z w > x^2 w^2
        let seq = [m(&[0, 2, 2, 0]), m(&[1, 0, 3, 0]), m(&[0, 3, 0, 1]), m(&[1, 1, 1, 1]), m(&[2, 0, 0, 2])];
        for w in seq.windows(2) {
            assert_eq!(w[0].cmp_grevlex(&w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn lex_and_elimination() {
        let x = m(&[1, 0, 0]);
        let y3 = m(&[0, 3, 0]);
        assert_eq!(x.cmp_lex(&y3), Ordering::Greater);
        assert_eq!(x.cmp_grevlex(&y3), Ordering::Less);
        assert_eq!(x.cmp_elimination(&y3, 1), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 1])));
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative(a in prop::collection::vec(0u32..6, 4),
                                     b in prop::collection::vec(0u32..6, 4),
                                     c in prop::collection::vec(0u32..6, 4)) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            for ord in [MonomialOrder::GradedReverseLex, MonomialOrder::Lex, MonomialOrder::Elimination(2)] {
                prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&c), &b.mul(&c)));
            }
        }

        #[test]
        fn mask_is_sound(a in prop::collection::vec(0u32..30, 4), b in prop::collection::vec(0u32..30, 4)) {
            let (a, b) = (m(&a), m(&b));
            if a.divides(&b) {
                prop_assert_eq!(a.mask() & !b.mask(), 0);
            }
        }
    }
}
