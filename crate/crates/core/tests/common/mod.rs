#![allow(dead_code)]

use std::collections::HashMap;

use milnor_core::polycore::partial_derivatives;
use milnor_core::{Field, Fp, Monomial, Polynomial};

/// All exponent vectors of total degree `k` in `n` variables.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(k);
            out.push(Monomial::new(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(n, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Plain Gaussian elimination over `Z/p`.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, piv);
        let inv = pow_mod(rows[r][col], p - 2, p);
        let pivot_row: Vec<u64> = rows[r].iter().map(|v| v * inv % p).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[col];
            if f != 0 {
                for (c, v) in row.iter_mut().enumerate().skip(col) {
                    *v = (*v + p - f * pivot_row[c] % p) % p;
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

fn residue<const P: u32>(c: &Fp<P>) -> u64 {
    c.symmetric().rem_euclid(P as i64) as u64
}

/// `dim (S/I)_k` from the rank of the degree-`k` Macaulay matrix of `gens`.
pub fn macaulay_hilbert<const P: u32>(gens: &[Polynomial<Fp<P>>], k: u32) -> i64 {
    let n = gens[0].nvars();
    let cols = monomials_of_degree(n, k);
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.homogeneous_degree().expect("homogeneous generator");
        if dg > k {
            continue;
        }
        for m in monomials_of_degree(n, k - dg) {
            let mut row = vec![0u64; cols.len()];
            for (t, c) in g.terms() {
                row[index[&t.mul(&m)]] = residue(c);
            }
            rows.push(row);
        }
    }
    cols.len() as i64 - rank_mod_p(rows, P as u64) as i64
}

/// Scales a nonzero vector so that its first nonzero entry is one.
pub fn normalize<C: Field>(v: &[C]) -> Option<Vec<C>> {
    let lead = v.iter().find(|c| !c.is_zero())?.inv();
    Some(v.iter().map(|c| c.clone() * lead.clone()).collect())
}

/// For every point of `ℙ^{n-1}(F_P)` outside the base locus, the normalized
/// value of `∇f`; the result maps each image point to its number of
/// preimages.
pub fn gradient_fibers<const P: u32>(f: &Polynomial<Fp<P>>) -> HashMap<Vec<Fp<P>>, usize> {
    let n = f.nvars();
    let grads = partial_derivatives(f);
    let mut fibers = HashMap::new();
    let mut x = vec![Fp::<P>::from_i64(0); n];
    for lead in 0..n {
        let free = (n - lead - 1) as u32;
        for idx in 0..(P as u64).pow(free) {
            x.iter_mut().for_each(|c| *c = Fp::from_i64(0));
            x[lead] = Fp::from_i64(1);
            let mut r = idx;
            for slot in x.iter_mut().skip(lead + 1) {
                *slot = Fp::from_i64((r % P as u64) as i64);
                r /= P as u64;
            }
            let g: Vec<Fp<P>> = grads.iter().map(|d| d.eval(&x)).collect();
            if let Some(key) = normalize(&g) {
                *fibers.entry(key).or_insert(0) += 1;
            }
        }
    }
    fibers
}
