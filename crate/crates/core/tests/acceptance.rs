//! Acceptance criteria 1-10. Randomized values are recomputed for two seeds
//! over two primes and must agree. Prints one line per criterion.

mod common;

use std::fmt::Debug;
use std::time::Instant;

use milnor_core::arrangements::{betti_complement, build_lattice, check_formula_a, check_formula_b, check_formula_b1, Arrangement};
use milnor_core::atlas::{family_arrangement, family_polynomial, FamilyId};
use milnor_core::groebner::{first_syzygies, quotient_dimension_degree, support_degree, Ideal};
use milnor_core::hilbert::{jacobian_ideal, milnor_hilbert_data};
use milnor_core::polar::{generic_section, is_homaloidal, mixed_multiplicities, plane_section_singularities, polar_degree};
use milnor_core::polycore::{euler_identity_holds, partial_derivatives, seeded_rng};
use milnor_core::resolution::{classify_freeness, exponents_from_hilbert_polynomial, FreenessStatus};
use milnor_core::{parse_polynomial, Error, Field, Fp, MonomialOrder, Polynomial, Ring, F32003, F65537};

const SEEDS: [u64; 2] = [1, 2];

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Evaluates a randomized quantity for both seeds over both primes and
/// returns the common value.
fn agreed<T: PartialEq + Debug>(
    what: &str,
    a: impl Fn(u64) -> milnor_core::Result<T>,
    b: impl Fn(u64) -> milnor_core::Result<T>,
) -> Result<T, String> {
    let mut values = Vec::new();
    for s in SEEDS {
        values.push(a(s).map_err(err)?);
        values.push(b(s).map_err(err)?);
    }
    let first = values.remove(0);
    ensure(values.iter().all(|v| *v == first), || format!("{what}: seeds or primes disagree: {first:?} vs {values:?}"))?;
    Ok(first)
}

fn fam<C: Field>(id: FamilyId) -> milnor_core::Result<Polynomial<C>> {
    family_polynomial::<C>(id)
}

fn mu<C: Field>(f: &Polynomial<C>, seed: u64) -> milnor_core::Result<Vec<i64>> {
    Ok(mixed_multiplicities(f, seed)?.mu)
}

fn mu_of(id: FamilyId) -> Result<Vec<i64>, String> {
    agreed(&id.to_string(), |s| mu(&fam::<F32003>(id)?, s), |s| mu(&fam::<F65537>(id)?, s))
}

fn text_poly<C: Field>(vars: &[&str], text: &str) -> milnor_core::Result<Polynomial<C>> {
    parse_polynomial(text, &Ring::new(vars)?)
}

fn family_ranges() -> Vec<FamilyId> {
    let mut ids = Vec::new();
    ids.extend((4..=11).map(FamilyId::D));
    ids.extend((6..=13).map(FamilyId::Dp));
    ids.extend((4..=13).map(FamilyId::Dpp));
    ids.extend((5..=13).map(FamilyId::Dppp));
    ids
}

fn criterion_1() -> Outcome {
    for (id, want) in [
        (FamilyId::PappusLiftW, "45t - 189"),
        (FamilyId::PappusLiftWp, "45t - 190"),
        (FamilyId::PappusConeW, "54t - 261"),
        (FamilyId::PappusConeWp, "54t - 262"),
    ] {
        let got = agreed(
            &id.to_string(),
            |_| Ok(milnor_hilbert_data(&fam::<F32003>(id)?)?.hp_string()),
            |_| Ok(milnor_hilbert_data(&fam::<F65537>(id)?)?.hp_string()),
        )?;
        ensure(got == want, || format!("{id}: hp {got}, expected {want}"))?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let a = milnor_hilbert_data(&fam::<F32003>(FamilyId::Ex33Arrangement).map_err(err)?).map_err(err)?;
    let b = milnor_hilbert_data(&fam::<F32003>(FamilyId::Ex33Surface).map_err(err)?).map_err(err)?;
    for k in 0..=25 {
        ensure(a.function(k) == b.function(k), || format!("Hilbert functions differ at k = {k}"))?;
    }
    let ma = mu_of(FamilyId::Ex33Arrangement)?;
    let mb = mu_of(FamilyId::Ex33Surface)?;
    ensure(ma == [1, 6, 11, 6], || format!("arrangement mu* = {ma:?}"))?;
    ensure(mb == [1, 6, 7, 1], || format!("surface mu* = {mb:?}"))
}

fn criterion_3() -> Outcome {
    for id in family_ranges() {
        let d = id.degree() as i64;
        let m = mu_of(id)?;
        ensure(m == [1, d - 1, d, 1], || format!("{id}: mu* = {m:?}"))?;
    }
    Ok(())
}

fn homaloidal_polar(f32003: Polynomial<F32003>, f65537: Polynomial<F65537>) -> Result<(bool, i64), String> {
    agreed(
        &f32003.to_string(),
        |s| is_homaloidal(&f32003, s).map(|w| (w.verdict, w.polar_degree)),
        |s| is_homaloidal(&f65537, s).map(|w| (w.verdict, w.polar_degree)),
    )
}

fn criterion_4() -> Outcome {
    let mut ids = vec![FamilyId::Delta3];
    ids.extend(family_ranges());
    for id in ids {
        let (v, pd) = homaloidal_polar(fam(id).map_err(err)?, fam(id).map_err(err)?)?;
        ensure(v && pd == 1, || format!("{id}: verdict {v}, polar degree {pd}"))?;
    }
    let vars = ["x", "y", "z", "w"];
    let cases = [
        ("z^3 - 2*y*z*w + x*w^2", Some(true), 1),
        ("x^3 + y^3 + z^3 + w^3", Some(false), 8),
        ("x^3 + y^3 + z^3 + w^3 + x*y*z + 2*y*z*w", None, 8),
        ("x^2 + y^2 + z^2 + w^2", None, 1),
        ("x*y + z^2 + 3*z*w - w^2", None, 1),
    ];
    for (text, verdict, want) in cases {
        let (v, pd) =
            homaloidal_polar(text_poly(&vars, text).map_err(err)?, text_poly(&vars, text).map_err(err)?)?;
        ensure(pd == want, || format!("{text}: polar degree {pd}, expected {want}"))?;
        if let Some(expect) = verdict {
            ensure(v == expect, || format!("{text}: verdict {v}"))?;
        }
    }
    Ok(())
}

fn freeness(id: FamilyId) -> Result<(FreenessStatus, Vec<i64>), String> {
    agreed(
        &id.to_string(),
        |_| classify_freeness(&fam::<F32003>(id)?).map(|v| (v.status, v.exponents)),
        |_| classify_freeness(&fam::<F65537>(id)?).map(|v| (v.status, v.exponents)),
    )
}

fn criterion_5() -> Outcome {
    use FreenessStatus::*;
    for d in 4..=11u32 {
        let (st, ex) = freeness(FamilyId::D(d))?;
        let free = matches!(d, 7 | 8);
        ensure((st == Free) == free, || format!("D({d}): {st} {ex:?}"))?;
        if free {
            ensure(ex.len() == 3 && ex.iter().sum::<i64>() == d as i64 - 1, || format!("D({d}): exponents {ex:?}"))?;
        }
    }
    for d in 6..=13u32 {
        let (st, ex) = freeness(FamilyId::Dp(d))?;
        let i = d as i64;
        let ok = if d >= 10 { st == Free && ex == [1, 4, i - 6] } else { st == NearlyFree };
        ensure(ok, || format!("Dp({d}): {st} {ex:?}"))?;
    }
    for d in 4..=13u32 {
        let (st, ex) = freeness(FamilyId::Dpp(d))?;
        ensure(st == NearlyFree && ex == [1, 1, d as i64 - 2], || format!("Dpp({d}): {st} {ex:?}"))?;
    }
    for d in 5..=13u32 {
        let (st, ex) = freeness(FamilyId::Dppp(d))?;
        ensure(st == NearlyFree && ex == [1, 2, d as i64 - 3], || format!("Dppp({d}): {st} {ex:?}"))?;
    }
    let (st, ex) = freeness(FamilyId::CubicY12)?;
    ensure(st == Neither, || format!("CubicY12: {st} {ex:?}"))
}

fn criterion_6() -> Outcome {
    let mut free_items: Vec<FamilyId> = vec![FamilyId::Delta3, FamilyId::D(7), FamilyId::D(8), FamilyId::Ex33Arrangement];
    free_items.extend((10..=13).map(FamilyId::Dp));
    free_items.push(FamilyId::GenericArr(4));
    for id in free_items {
        let f = fam::<F32003>(id).map_err(err)?;
        let v = classify_freeness(&f).map_err(err)?;
        ensure(v.status == FreenessStatus::Free, || format!("{id} is expected to be free, got {}", v.status))?;
        let hp = milnor_hilbert_data(&f).map_err(err)?.hp_coeffs;
        let rec = exponents_from_hilbert_polynomial(&hp, id.degree() as i64, 3).map_err(err)?;
        ensure(rec == v.exponents, || format!("{id}: recovered {rec:?}, syzygies give {:?}", v.exponents))?;
    }
    for id in [FamilyId::PappusLiftW, FamilyId::PappusLiftWp, FamilyId::PappusConeW, FamilyId::PappusConeWp] {
        let hp = milnor_hilbert_data(&fam::<F32003>(id).map_err(err)?).map_err(err)?.hp_coeffs;
        match exponents_from_hilbert_polynomial(&hp, id.degree() as i64, 3) {
            Err(Error::NotFreeCompatible(_)) => {}
            other => return Err(format!("{id}: expected NotFreeCompatible, got {other:?}")),
        }
    }
    Ok(())
}

/// Poincaré polynomial of a generic arrangement of `d` hyperplanes in
/// `ℙ^{n-1}`, computed as `Σ_k C(d, k) t^k` truncated and corrected at the
/// top degree so that the value at `t = -1` vanishes.
fn generic_betti(d: i64, nvars: usize) -> Vec<i64> {
    let binom = |n: i64, k: i64| (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1));
    let mut p: Vec<i64> = (0..nvars as i64).map(|k| binom(d, k)).collect();
    let alt: i64 = p.iter().enumerate().map(|(k, c)| if k % 2 == 0 { *c } else { -*c }).sum();
    p.push(if nvars % 2 == 0 { alt } else { -alt });
    // the complement of the cone is C^* times the projective complement
    let mut b = vec![0i64; nvars];
    let mut carry = 0;
    for k in 0..nvars {
        carry = p[k] - carry;
        b[k] = carry;
    }
    b
}

fn betti_vs_mu(name: &str, arr32: &Arrangement<F32003>, arr65: &Arrangement<F65537>, oracle: Option<&[i64]>) -> Outcome {
    let lattice = build_lattice(arr32);
    let b = betti_complement(&lattice, arr32.ring().nvars());
    let m = agreed(name, |s| mu(&arr32.polynomial(), s), |s| mu(&arr65.polynomial(), s))?;
    ensure(b == m, || format!("{name}: betti {b:?}, mu* {m:?}"))?;
    if let Some(o) = oracle {
        ensure(b == o, || format!("{name}: betti {b:?}, oracle {o:?}"))?;
    }
    Ok(())
}

fn arrangement_of<C: Field>(vars: &[&str], forms: &[&str]) -> Result<Arrangement<C>, String> {
    let ring = Ring::new(vars).map_err(err)?;
    let polys = forms.iter().map(|t| parse_polynomial(t, &ring)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    Arrangement::new(polys).map_err(err)
}

const XYZW: [&str; 4] = ["x", "y", "z", "w"];
const EX37_D5: [&str; 5] = ["x", "y", "z", "w", "x + y + z + w"];
const EX37_D6: [&str; 6] = ["x", "y", "z", "w", "x + y + z + w", "x + 2*y + 3*z + 4*w"];

fn criterion_7() -> Outcome {
    for (name, forms) in [("xyzw", &XYZW[..]), ("d = 5", &EX37_D5[..]), ("d = 6", &EX37_D6[..])] {
        let oracle = generic_betti(forms.len() as i64, 4);
        betti_vs_mu(name, &arrangement_of(&XYZW, forms)?, &arrangement_of(&XYZW, forms)?, Some(&oracle))?;
    }
    // Pappus: 9 lines with 9 triple and 9 double points, b_2 = 8^2 - 9*4 - 9 = 19
    for id in [FamilyId::PappusW, FamilyId::PappusWp] {
        let a = family_arrangement::<F32003>(id).map_err(err)?.ok_or("not an arrangement")?;
        let b = family_arrangement::<F65537>(id).map_err(err)?.ok_or("not an arrangement")?;
        betti_vs_mu(&id.to_string(), &a, &b, Some(&[1, 8, 19]))?;
    }
    for id in [FamilyId::PappusConeW, FamilyId::PappusConeWp] {
        let a = family_arrangement::<F32003>(id).map_err(err)?.ok_or("not an arrangement")?;
        let b = family_arrangement::<F65537>(id).map_err(err)?.ok_or("not an arrangement")?;
        betti_vs_mu(&id.to_string(), &a, &b, Some(&[1, 9, 27, 19]))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut arrangements: Vec<(String, Arrangement<F32003>)> = Vec::new();
    for id in [
        FamilyId::PappusLiftW,
        FamilyId::PappusLiftWp,
        FamilyId::PappusConeW,
        FamilyId::PappusConeWp,
        FamilyId::Ex33Arrangement,
        FamilyId::GenericArr(4),
        FamilyId::GenericArr(5),
        FamilyId::GenericArr(6),
        FamilyId::GenericArr(7),
    ] {
        arrangements.push((id.to_string(), family_arrangement(id).map_err(err)?.ok_or("not an arrangement")?));
    }
    for arr in &arrangements {
        let c = check_formula_a(&arr.1, &build_lattice(&arr.1)).map_err(err)?;
        ensure(c.holds, || format!("formula a fails on {}: {} vs {}", arr.0, c.lhs, c.rhs))?;
    }
    for id in [FamilyId::PappusConeW, FamilyId::PappusConeWp] {
        let arr = family_arrangement::<F32003>(id).map_err(err)?.ok_or("not an arrangement")?;
        let c = check_formula_b(&arr, &build_lattice(&arr)).map_err(err)?;
        ensure(!c.holds, || format!("formula b holds on {id}"))?;
    }
    // constant terms of the closed formula: d = 4, 5, 6 give -2, -10, -25
    for (forms, want) in [(&XYZW[..], -2), (&EX37_D5[..], -10), (&EX37_D6[..], -25)] {
        let arr = arrangement_of::<F32003>(&XYZW, forms)?;
        let c = check_formula_b1(&arr, &build_lattice(&arr)).map_err(err)?;
        ensure(c.holds && c.lhs.to_string() == want.to_string(), || format!("formula b1 on {forms:?}: {} vs {}", c.lhs, c.rhs))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let (dim, deg) = agreed(
        "Delta3 support",
        |s| support_degree(&jacobian_ideal(&fam::<F32003>(FamilyId::Delta3)?), s).map(|d| (d.dimension, d.degree)),
        |s| support_degree(&jacobian_ideal(&fam::<F65537>(FamilyId::Delta3)?), s).map(|d| (d.dimension, d.degree)),
    )?;
    ensure(dim == 1 && deg == 3, || format!("support of the singular scheme: dimension {dim}, degree {deg}"))?;
    // the scheme itself has degree 6: three cusps of Tjurina number 2 on a plane section
    let scheme = quotient_dimension_degree(&jacobian_ideal(&fam::<F32003>(FamilyId::Delta3).map_err(err)?)).map_err(err)?;
    ensure((scheme.dimension, scheme.degree) == (1, 6), || format!("singular scheme {scheme:?}"))?;
    let sec = agreed(
        "Delta3 section",
        |s| plane_section_singularities(&fam::<F32003>(FamilyId::Delta3)?, s).map(|x| (x.milnor, x.tjurina)),
        |s| plane_section_singularities(&fam::<F65537>(FamilyId::Delta3)?, s).map(|x| (x.milnor, x.tjurina)),
    )?;
    ensure(sec == (6, 6), || format!("section (milnor, tjurina) = {sec:?}"))?;
    let m = mu_of(FamilyId::Delta3)?;
    ensure(m[3] == 1, || format!("mu^3 = {}", m[3]))?;
    let euler: i64 = m.iter().enumerate().map(|(i, v)| if i % 2 == 0 { *v } else { -*v }).sum();
    ensure(euler == 0, || format!("Euler number {euler}"))
}

fn sample_polys<C: Field>() -> Result<Vec<Polynomial<C>>, String> {
    let mut out = Vec::new();
    for id in [FamilyId::Delta3, FamilyId::D(5), FamilyId::D(7), FamilyId::Dpp(6), FamilyId::CubicY12, FamilyId::GenericArr(5)] {
        out.push(fam::<C>(id).map_err(err)?);
    }
    out.push(text_poly(&XYZW, "x^3 + y^3 + z^3 + w^3").map_err(err)?);
    Ok(out)
}

fn property_suites() -> Outcome {
    let polys = sample_polys::<F32003>()?;
    for f in &polys {
        ensure(euler_identity_holds(f), || format!("Euler identity fails for {f}"))?;
        let d = f.homogeneous_degree().unwrap();
        let grads = partial_derivatives(f);
        let h = milnor_hilbert_data(f).map_err(err)?;
        for k in 0..=2 * d {
            let oracle = common::macaulay_hilbert(&grads, k);
            ensure(h.function(k as usize) == oracle, || format!("{f}: HF({k}) = {}, oracle {oracle}", h.function(k as usize)))?;
        }
        let gb = Ideal::new(f.ring(), grads.clone()).groebner_basis(MonomialOrder::GradedReverseLex).map_err(err)?;
        ensure(gb.satisfies_buchberger_criterion(), || format!("{f}: basis fails the S-pair criterion"))?;
        for syz in first_syzygies(&grads).map_err(err)? {
            let sum = syz.entries.iter().zip(&grads).fold(Polynomial::zero(f.ring()), |acc, (a, g)| &acc + &(a * g));
            ensure(sum.is_zero(), || format!("{f}: syzygy does not vanish"))?;
        }
    }

    fiber_oracle::<41>()?;
    fiber_oracle::<101>()?;

    for id in [FamilyId::Delta3, FamilyId::D(5), FamilyId::PappusConeW] {
        let f = fam::<F32003>(id).map_err(err)?;
        let m = mu_of(id)?;
        for seed in SEEDS {
            let g = generic_section(&f, 2, seed + 100).map_err(err)?;
            let ms = mu(&g, seed).map_err(err)?;
            ensure(ms[..] == m[..3], || format!("{id}: section mu* {ms:?} vs {m:?}"))?;
        }
    }
    Ok(())
}

/// Exhaustive count of preimages of random points under the gradient map
/// over `F_P`, compared with the polar degree computed at a large prime.
fn fiber_oracle<const P: u32>() -> Outcome {
    use rand::Rng;
    for id in [FamilyId::Delta3, FamilyId::D(5)] {
        let expected = polar_degree(&fam::<F32003>(id).map_err(err)?, 1).map_err(err)? as usize;
        let fibers = common::gradient_fibers(&fam::<Fp<P>>(id).map_err(err)?);
        let mut rng = seeded_rng(P as u64);
        let mut agree = 0;
        for _ in 0..10 {
            let q: Vec<Fp<P>> = loop {
                let q: Vec<Fp<P>> = (0..4).map(|_| Fp::from_i64(rng.gen_range(0..P as i64))).collect();
                if let Some(q) = common::normalize(&q) {
                    break q;
                }
            };
            if fibers.get(&q).copied().unwrap_or(0) == expected {
                agree += 1;
            }
        }
        ensure(agree >= 7, || format!("{id} over F_{P}: {agree} of 10 fibers have {expected} points"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Pappus Hilbert polynomials", criterion_1),
        ("Hilbert functions and mixed multiplicities of the degree 4 pair", criterion_2),
        ("mixed multiplicities of the surface families", criterion_3),
        ("homaloidal verdicts and polar degrees", criterion_4),
        ("freeness schedule", criterion_5),
        ("exponent recovery from Hilbert polynomials", criterion_6),
        ("arrangement Betti numbers equal mixed multiplicities", criterion_7),
        ("arrangement formula checks", criterion_8),
        ("discriminant surface facts", criterion_9),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
