//! Analysis pipelines, report assembly and the regression corpus.
//!
//! Reports are ordered lists of dotted keys with JSON values. The text form
//! prints one `key: value` per line; the machine form nests the dotted keys
//! into a canonical (sorted) JSON object.

use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::arrangements::{
    betti_complement, build_lattice, check_formula_a, check_formula_b, check_formula_b1, is_generic, Arrangement,
    FormulaCheck, IntersectionLattice,
};
use crate::atlas::{
    family_arrangement, family_polynomial, overlap_table, preimage_witness, FamilyId,
};
use crate::error::{Error, Result};
use crate::field::{dispatch, CoefficientField, Field, FieldTask};
use crate::groebner::{quotient_dimension_degree, support_degree};
use crate::hilbert::{jacobian_ideal, milnor_hilbert_data, total_tjurina, HilbertData};
use crate::polar::{is_homaloidal, mixed_multiplicities, plane_section_singularities, polar_degree, MixedMultSeq};
use crate::polycore::{derive_seed, parse_polynomial, seeded_rng, Polynomial, Ring};
use crate::resolution::{betti_table, classify_betti, exponents_from_hilbert_polynomial, FreenessStatus};

/// Primes of the agreement vote.
pub const VOTE_PRIMES: [u32; 3] = [32003, 65537, 1_000_003];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn insert_dotted(map: &mut Map<String, Value>, key: &str, value: Value) {
    match key.split_once('.') {
        None => {
            map.insert(key.to_string(), value);
        }
        Some((head, rest)) => {
            let slot = map.entry(head.to_string()).or_insert_with(|| Value::Object(Map::new()));
            if !slot.is_object() {
                *slot = Value::Object(Map::new());
            }
            if let Value::Object(inner) = slot {
                insert_dotted(inner, rest, value);
            }
        }
    }
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.entries.push((key.into(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    /// Appends every entry of `other` with `prefix.` prepended.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for (k, v) in other.entries {
            self.entries.push((format!("{prefix}.{k}"), v));
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&render(v));
            out.push('\n');
        }
        out
    }

    pub fn to_value(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.entries {
            insert_dotted(&mut map, k, v.clone());
        }
        Value::Object(map)
    }

    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("report values serialize")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub field: CoefficientField,
    pub seed: u64,
    /// Independent seeds for every randomized invariant; all must agree.
    pub trials: u32,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { field: CoefficientField::PrimeField(crate::field::DEFAULT_PRIME), seed: 1, trials: 2, timings: false }
    }
}

/// Input file contents: optional `vars:` header, `#` comments, body lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Input {
    pub ring: Ring,
    pub lines: Vec<String>,
}

/// Reads an input file. Without a `vars:` line the ring is `x, y, z, w`.
pub fn parse_input(text: &str) -> Result<Input> {
    let mut ring = None;
    let mut lines = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            let names: Vec<&str> = rest.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            ring = Some(Ring::new(&names)?);
            continue;
        }
        lines.push(line.to_string());
    }
    if lines.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "no polynomial in input".into() });
    }
    Ok(Input { ring: ring.unwrap_or_else(|| Ring::standard(4)), lines })
}

fn rational_value(c: &BigRational) -> Value {
    if c.is_integer() {
        match i64::try_from(c.to_integer()) {
            Ok(v) => json!(v),
            Err(_) => json!(c.to_string()),
        }
    } else {
        json!(c.to_string())
    }
}

fn timed<T>(report: &mut Report, opts: &Options, key: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f();
    if opts.timings {
        report.push(format!("timings.{key}_ms"), start.elapsed().as_millis() as u64);
    }
    out
}

/// Mixed multiplicities from `trials` independent seeds; all must agree.
pub fn agreed_mixed_multiplicities<C: Field>(f: &Polynomial<C>, seed: u64, trials: u32) -> Result<MixedMultSeq> {
    let first = mixed_multiplicities(f, seed)?;
    for t in 1..trials.max(1) {
        let other = mixed_multiplicities(f, derive_seed(seed, 1000 + t as u64))?;
        if other.mu != first.mu {
            return Err(Error::GenericityFailure(format!("mixed multiplicities {:?} vs {:?}", first.mu, other.mu)));
        }
    }
    Ok(first)
}

fn hilbert_entries(report: &mut Report, h: &HilbertData, d: i64) {
    report.push("hilbert.numerator", h.numerator.clone());
    report.push("hilbert.polynomial", h.hp_string());
    report.push("hilbert.k0", h.k0);
    let top = (h.k0.max(0) as usize).max(2 * d as usize);
    report.push("hilbert.values", (0..=top).map(|k| h.function(k)).collect::<Vec<_>>());
}

/// Full analysis of a homogeneous polynomial over the field `C`.
pub fn analyze<C: Field>(f: &Polynomial<C>, opts: &Options) -> Result<Report> {
    let d = match f.homogeneous_degree() {
        Some(d) if !f.is_zero() => d as i64,
        _ => return Err(Error::Precondition("input is not a nonzero homogeneous polynomial".into())),
    };
    let n = f.nvars() - 1;
    let mut r = Report::default();
    r.push("input", f.to_string());
    r.push("ring", f.ring().names().join(","));
    r.push("field", C::descriptor().to_string());
    r.push("degree", d);

    let h = timed(&mut r, opts, "hilbert", || milnor_hilbert_data(f))?;
    hilbert_entries(&mut r, &h, d);
    let sing_dim = h.projective_dimension();
    r.push("singular_locus.dimension", sing_dim);
    if sing_dim == 0 {
        r.push("singular_locus.total_tjurina", total_tjurina(f)?);
    } else if sing_dim > 0 {
        let scheme = quotient_dimension_degree(&jacobian_ideal(f))?;
        r.push("singular_locus.scheme_degree", scheme.degree);
        if let Ok(support) = support_degree(&jacobian_ideal(f), derive_seed(opts.seed, 50)) {
            r.push("singular_locus.support_degree", support.degree);
        }
    }

    let table = timed(&mut r, opts, "resolution", || betti_table(f))?;
    r.push("betti", table.columns.clone());
    let verdict = classify_betti(&table, d, f.nvars());
    r.push("freeness.status", verdict.status.to_string());
    r.push("freeness.exponents", verdict.exponents.clone());
    if n >= 2 && h.hp_coeffs.len() <= n && sing_dim >= 0 {
        let from_hp = match exponents_from_hilbert_polynomial(&h.hp_coeffs, d, n) {
            Ok(e) => json!(e),
            Err(_) => json!("incompatible"),
        };
        r.push("freeness.exponents_from_hp", from_hp);
    }

    if n == 3 && sing_dim >= 0 {
        let s = timed(&mut r, opts, "section", || plane_section_singularities(f, derive_seed(opts.seed, 60)))?;
        r.push("generic_section.milnor", s.milnor);
        r.push("generic_section.tjurina", s.tjurina);
    }

    let mixed = timed(&mut r, opts, "mixed", || agreed_mixed_multiplicities(f, opts.seed, opts.trials))?;
    let top = *mixed.mu.last().expect("nonempty sequence");
    r.push("mixed_multiplicities", mixed.mu.clone());
    r.push("euler_complement", mixed.euler());
    r.push("polar_degree", top);
    if top == 0 {
        r.push("polar_degree_note", "generic fiber empty: gradient map not dominant");
    }
    let hom = is_homaloidal(f, *mixed.seeds.last().expect("nonempty"))?;
    r.push("homaloidal.verdict", hom.verdict);
    r.push("homaloidal.dominant", hom.dominant);
    r.push("seeds", mixed.seeds.clone());
    Ok(r)
}

fn formula_value(c: &FormulaCheck) -> Value {
    json!({ "lhs": rational_value(&c.lhs), "rhs": rational_value(&c.rhs), "holds": c.holds })
}

fn lattice_entries(r: &mut Report, lattice: &IntersectionLattice) {
    for k in 1..lattice.flats.len() {
        let counts: Map<String, Value> =
            lattice.multiplicity_counts(k).into_iter().map(|(m, c)| (m.to_string(), json!(c))).collect();
        r.push(format!("lattice.codim_{k}"), Value::Object(counts));
    }
}

/// Lattice data, complement Betti numbers and the formula checks, followed
/// by the analysis of the defining polynomial under `analysis.`.
pub fn analyze_arrangement<C: Field>(arr: &Arrangement<C>, opts: &Options) -> Result<Report> {
    let mut r = Report::default();
    r.push("forms", arr.forms().iter().map(|h| h.to_string()).collect::<Vec<_>>());
    r.push("hyperplanes", arr.len());
    let lattice = build_lattice(arr);
    lattice_entries(&mut r, &lattice);
    let betti = betti_complement(&lattice, arr.ring().nvars());
    r.push("betti_complement", betti.clone());
    let generic = is_generic(&lattice, arr.ring().nvars());
    r.push("generic", generic);
    if arr.ring().nvars() == 4 {
        r.push("formula_a", formula_value(&check_formula_a(arr, &lattice)?));
        r.push("formula_b", formula_value(&check_formula_b(arr, &lattice)?));
        match check_formula_b1(arr, &lattice) {
            Ok(c) => {
                r.push("formula_b1", formula_value(&c));
                r.push("conjecture_b1_evidence", c.holds);
            }
            Err(Error::NotGeneric(_)) => r.push("formula_b1", "not generic"),
            Err(e) => return Err(e),
        }
    }
    let inner = analyze(&arr.polynomial(), opts)?;
    let mu = inner.get("mixed_multiplicities").cloned();
    r.push("mixed_equals_betti", mu == Some(json!(betti)));
    r.extend_prefixed("analysis", inner);
    Ok(r)
}

fn parse_forms<C: Field>(input: &Input) -> Result<Arrangement<C>> {
    Arrangement::new(input.lines.iter().map(|l| parse_polynomial(l, &input.ring)).collect::<Result<Vec<_>>>()?)
}

struct AnalyzeTask<'a> {
    input: &'a Input,
    opts: Options,
    arrangement: bool,
}

impl FieldTask for AnalyzeTask<'_> {
    type Output = Result<Report>;

    fn run<C: Field>(self) -> Result<Report> {
        if self.arrangement {
            analyze_arrangement(&parse_forms::<C>(self.input)?, &self.opts)
        } else {
            let f = parse_polynomial::<C>(&self.input.lines.join(" "), &self.input.ring)?;
            analyze(&f, &self.opts)
        }
    }
}

/// Primes after the requested one, in the order they are consulted.
fn vote_primes(first: u32) -> Vec<u32> {
    let mut primes = vec![first];
    primes.extend(VOTE_PRIMES.iter().copied().filter(|&q| q != first).take(2));
    primes
}

fn retryable(e: &Error) -> bool {
    matches!(e, Error::GenericityFailure(_) | Error::NonZeroDimensionalFiber | Error::ChartFailure)
}

/// Entries that must not depend on the field or the seeds. Input echoes are
/// left out since large coefficients print differently modulo each prime.
fn field_free_view(r: &Report) -> Vec<&(String, Value)> {
    const SKIP: [&str; 6] = ["field", "seeds", "input", "forms", "escalations", "agreement"];
    r.entries()
        .iter()
        .filter(|(k, _)| {
            let mut parts = k.split('.');
            !parts.clone().any(|p| p == "timings") && !SKIP.contains(&parts.next_back().unwrap_or(""))
        })
        .collect()
}

/// Runs an analysis with the multi-prime vote: the requested prime and a
/// second one must agree on every invariant, a third prime breaks a tie, and
/// the rationals are the last resort. Randomized failures on a prime count as
/// a missing vote. Over the rationals the analysis runs once.
pub fn run_analysis(input: &Input, opts: &Options, arrangement: bool) -> Result<Report> {
    let run = |field| dispatch(field, AnalyzeTask { input, opts: Options { field, ..*opts }, arrangement });
    let mut notes: Vec<String> = Vec::new();
    if let CoefficientField::PrimeField(p) = opts.field {
        let mut votes: Vec<(u32, Report)> = Vec::new();
        for q in vote_primes(p) {
            match run(CoefficientField::PrimeField(q))? {
                Ok(r) => {
                    if let Some((first, agreed)) = votes.iter().find(|(_, v)| field_free_view(v) == field_free_view(&r)) {
                        let mut out = agreed.clone();
                        out.push("agreement", vec![*first, q]);
                        if !notes.is_empty() {
                            out.push("escalations", notes);
                        }
                        return Ok(out);
                    }
                    if !votes.is_empty() {
                        let earlier: Vec<String> = votes.iter().map(|(v, _)| format!("GF({v})")).collect();
                        notes.push(format!("GF({q}) disagrees with {}", earlier.join(", ")));
                    }
                    votes.push((q, r));
                }
                Err(e) if retryable(&e) => notes.push(format!("GF({q}): {e}")),
                Err(e) => return Err(e),
            }
        }
    }
    match run(CoefficientField::ExactRational)? {
        Ok(mut r) => {
            if !notes.is_empty() {
                r.push("escalations", notes);
            }
            Ok(r)
        }
        Err(e) if retryable(&e) => {
            notes.push(format!("QQ: {e}"));
            Err(Error::GenericityFailure(notes.join("; ")))
        }
        Err(e) => Err(e),
    }
}

/// One row of the corpus table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRow {
    pub module: &'static str,
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

pub const CORPUS_MODULES: [&str; 5] = ["hilbert", "resolution", "polar", "arrangements", "atlas"];

type Check = (&'static str, String, String, Box<dyn Fn() -> Result<String> + Send + Sync>);

fn fam<C: Field>(id: FamilyId) -> Result<Polynomial<C>> {
    family_polynomial::<C>(id)
}

fn list(v: &[i64]) -> String {
    format!("{v:?}")
}

fn checks<C: Field>(seed: u64) -> Vec<Check> {
    let mut out: Vec<Check> = Vec::new();
    let mut add = |module: &'static str, name: String, expected: String, f: Box<dyn Fn() -> Result<String> + Send + Sync>| {
        out.push((module, name, expected, f));
    };

    for (id, hp) in [
        (FamilyId::PappusLiftW, "45t - 189"),
        (FamilyId::PappusLiftWp, "45t - 190"),
        (FamilyId::PappusConeW, "54t - 261"),
        (FamilyId::PappusConeWp, "54t - 262"),
    ] {
        add("hilbert", format!("{id} hp"), hp.into(), Box::new(move || Ok(milnor_hilbert_data(&fam::<C>(id)?)?.hp_string())));
    }
    add(
        "hilbert",
        "Ex33 Hilbert functions agree, k <= 25".into(),
        "true".into(),
        Box::new(|| {
            let a = milnor_hilbert_data(&fam::<C>(FamilyId::Ex33Arrangement)?)?;
            let b = milnor_hilbert_data(&fam::<C>(FamilyId::Ex33Surface)?)?;
            Ok((0..=25).all(|k| a.function(k) == b.function(k)).to_string())
        }),
    );
    add(
        "hilbert",
        "Delta3 singular scheme (dim, degree, support degree)".into(),
        "(1, 6, 3)".into(),
        Box::new(move || {
            let j = jacobian_ideal(&fam::<C>(FamilyId::Delta3)?);
            let s = quotient_dimension_degree(&j)?;
            let sup = support_degree(&j, seed)?;
            Ok(format!("({}, {}, {})", s.dimension, s.degree, sup.degree))
        }),
    );

    let mut schedule: Vec<(FamilyId, String)> = Vec::new();
    for d in 4..=13u32 {
        let e = match d {
            7 => "free [1, 2, 3]".to_string(),
            8 => "free [1, 3, 3]".to_string(),
            _ => "nearly_free".to_string(),
        };
        schedule.push((FamilyId::D(d), e));
        schedule.push((FamilyId::Dpp(d), format!("nearly_free [1, 1, {}]", d - 2)));
        if d >= 5 {
            schedule.push((FamilyId::Dppp(d), format!("nearly_free [1, 2, {}]", d - 3)));
        }
        if d >= 6 {
            let e = if d >= 10 { format!("free [1, 4, {}]", d - 6) } else { "nearly_free".into() };
            schedule.push((FamilyId::Dp(d), e));
        }
    }
    schedule.push((FamilyId::CubicY12, "neither".into()));
    for (id, expected) in schedule {
        let with_exponents = expected.contains('[');
        add(
            "resolution",
            format!("{id} freeness"),
            expected,
            Box::new(move || {
                let v = crate::resolution::classify_freeness(&fam::<C>(id)?)?;
                Ok(if with_exponents && v.status != FreenessStatus::Neither {
                    format!("{} {:?}", v.status, v.exponents)
                } else {
                    v.status.to_string()
                })
            }),
        );
    }
    let mut free_items: Vec<FamilyId> = vec![FamilyId::Delta3, FamilyId::D(7), FamilyId::D(8), FamilyId::Ex33Arrangement];
    free_items.extend((10..=13).map(FamilyId::Dp));
    free_items.push(FamilyId::GenericArr(4));
    for id in free_items {
        add(
            "resolution",
            format!("{id} exponents from hp"),
            "syzygy exponents".into(),
            Box::new(move || {
                let f = fam::<C>(id)?;
                let v = crate::resolution::classify_freeness(&f)?;
                let hp = milnor_hilbert_data(&f)?.hp_coeffs;
                let e = exponents_from_hilbert_polynomial(&hp, id.degree() as i64, 3)?;
                Ok(if v.status == FreenessStatus::Free && e == v.exponents { "syzygy exponents".into() } else { format!("{e:?} vs {v:?}") })
            }),
        );
    }
    for id in [FamilyId::PappusLiftW, FamilyId::PappusLiftWp, FamilyId::PappusConeW, FamilyId::PappusConeWp] {
        add(
            "resolution",
            format!("{id} exponents from hp"),
            "not free compatible".into(),
            Box::new(move || {
                let hp = milnor_hilbert_data(&fam::<C>(id)?)?.hp_coeffs;
                Ok(match exponents_from_hilbert_polynomial(&hp, id.degree() as i64, 3) {
                    Err(Error::NotFreeCompatible(_)) => "not free compatible".into(),
                    other => format!("{other:?}"),
                })
            }),
        );
    }

    let mut families: Vec<FamilyId> = Vec::new();
    families.extend((4..=11).map(FamilyId::D));
    families.extend((6..=13).map(FamilyId::Dp));
    families.extend((4..=13).map(FamilyId::Dpp));
    families.extend((5..=13).map(FamilyId::Dppp));
    for id in families {
        let d = id.degree() as i64;
        add(
            "polar",
            format!("{id} mixed multiplicities, homaloidal"),
            format!("{} true", list(&[1, d - 1, d, 1])),
            Box::new(move || {
                let f = fam::<C>(id)?;
                let mu = agreed_mixed_multiplicities(&f, seed, 2)?;
                Ok(format!("{} {}", list(&mu.mu), is_homaloidal(&f, seed)?.verdict))
            }),
        );
    }
    for (id, expected) in [(FamilyId::Delta3, "true"), (FamilyId::CubicY12, "true")] {
        add("polar", format!("{id} homaloidal"), expected.into(), Box::new(move || Ok(is_homaloidal(&fam::<C>(id)?, seed)?.verdict.to_string())));
    }
    for (text, nvars, expected) in [("x^3 + y^3 + z^3 + w^3", 4, 8), ("x^2 + y^2 + z^2 + w^2", 4, 1), ("x*y + z*w", 4, 1)] {
        add(
            "polar",
            format!("polar degree of {text}"),
            expected.to_string(),
            Box::new(move || Ok(polar_degree(&parse_polynomial::<C>(text, &Ring::standard(nvars))?, seed)?.to_string())),
        );
    }
    for (id, expected) in [(FamilyId::Ex33Arrangement, [1, 6, 11, 6]), (FamilyId::Ex33Surface, [1, 6, 7, 1])] {
        add(
            "polar",
            format!("{id} mixed multiplicities"),
            list(&expected),
            Box::new(move || Ok(list(&agreed_mixed_multiplicities(&fam::<C>(id)?, seed, 2)?.mu))),
        );
    }
    add(
        "polar",
        "Delta3 (section milnor, section tjurina, mu^3, euler)".into(),
        "(6, 6, 1, 0)".into(),
        Box::new(move || {
            let f = fam::<C>(FamilyId::Delta3)?;
            let s = plane_section_singularities(&f, seed)?;
            let mu = agreed_mixed_multiplicities(&f, seed, 2)?;
            Ok(format!("({}, {}, {}, {})", s.milnor, s.tjurina, mu.mu[3], mu.euler()))
        }),
    );

    let mut arrangements = vec![
        FamilyId::GenericArr(4),
        FamilyId::PappusW,
        FamilyId::PappusWp,
        FamilyId::PappusLiftW,
        FamilyId::PappusLiftWp,
        FamilyId::PappusConeW,
        FamilyId::PappusConeWp,
        FamilyId::Ex33Arrangement,
    ];
    arrangements.extend([5, 6].map(FamilyId::GenericArr));
    for id in arrangements.clone() {
        add(
            "arrangements",
            format!("{id} betti = mixed multiplicities"),
            "equal".into(),
            Box::new(move || {
                let a = family_arrangement::<C>(id)?.expect("arrangement id");
                let b = betti_complement(&build_lattice(&a), a.ring().nvars());
                let mu = agreed_mixed_multiplicities(&a.polynomial(), seed, 2)?.mu;
                Ok(if b == mu { "equal".into() } else { format!("{b:?} vs {mu:?}") })
            }),
        );
    }
    for id in arrangements.into_iter().filter(|id| id.nvars() == 4) {
        let expected_b = match id {
            FamilyId::PappusLiftW | FamilyId::PappusLiftWp | FamilyId::PappusConeW | FamilyId::PappusConeWp => "false",
            _ => "true",
        };
        let generic = matches!(id, FamilyId::GenericArr(_));
        let expected = if generic { format!("a true, b {expected_b}, b1 true") } else { format!("a true, b {expected_b}") };
        add(
            "arrangements",
            format!("{id} formulas"),
            expected,
            Box::new(move || {
                let a = family_arrangement::<C>(id)?.expect("arrangement id");
                let l = build_lattice(&a);
                let fa = check_formula_a(&a, &l)?.holds;
                let fb = check_formula_b(&a, &l)?.holds;
                Ok(if generic {
                    format!("a {fa}, b {fb}, b1 {}", check_formula_b1(&a, &l)?.holds)
                } else {
                    format!("a {fa}, b {fb}")
                })
            }),
        );
    }

    add(
        "atlas",
        "overlap identities consistent".into(),
        "5/5".into(),
        Box::new(move || {
            let t = overlap_table::<C>(seed)?;
            Ok(format!("{}/{}", t.iter().filter(|o| o.consistent).count(), t.len()))
        }),
    );
    for id in [FamilyId::D(5), FamilyId::D(7), FamilyId::Dp(10), FamilyId::Dpp(6), FamilyId::Dppp(8)] {
        add(
            "atlas",
            format!("{id} preimage witness"),
            "unique, verified".into(),
            Box::new(move || {
                let mut rng = seeded_rng(derive_seed(seed, id.degree() as u64));
                let p: Vec<C> = (0..4).map(|_| C::random(&mut rng)).collect();
                let w = preimage_witness(id, &p, seed)?;
                Ok(if w.gradient_matches && w.fiber_degree == 1 {
                    "unique, verified".into()
                } else {
                    format!("matches {}, fiber degree {}", w.gradient_matches, w.fiber_degree)
                })
            }),
        );
    }
    out
}

fn expected_matches(expected: &str, computed: &str) -> bool {
    // "nearly_free" without exponents accepts any exponents
    expected == computed || (expected == "nearly_free" && computed.starts_with("nearly_free"))
}

pub fn run_corpus_in<C: Field>(seed: u64, only: Option<&str>) -> Vec<CorpusRow> {
    let selected: Vec<Check> = checks::<C>(seed).into_iter().filter(|c| only.is_none_or(|m| m == c.0)).collect();
    selected
        .into_par_iter()
        .map(|(module, name, expected, f)| {
            let computed = match f() {
                Ok(s) => s,
                Err(e) => format!("error: {e}"),
            };
            let pass = expected_matches(&expected, &computed);
            CorpusRow { module, name, expected, computed, pass }
        })
        .collect()
}

struct CorpusTask<'a> {
    seed: u64,
    only: Option<&'a str>,
}

impl FieldTask for CorpusTask<'_> {
    type Output = Vec<CorpusRow>;

    fn run<C: Field>(self) -> Vec<CorpusRow> {
        run_corpus_in::<C>(self.seed, self.only)
    }
}

/// Runs the corpus over `field`; `only` restricts to one module.
pub fn run_corpus(field: CoefficientField, seed: u64, only: Option<&str>) -> Result<Vec<CorpusRow>> {
    if let Some(m) = only {
        if !CORPUS_MODULES.contains(&m) {
            return Err(Error::Precondition(format!("unknown module `{m}`")));
        }
    }
    dispatch(field, CorpusTask { seed, only })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dotted_keys_nest() {
        let mut r = Report::default();
        r.push("a.b", 1);
        r.push("a.c", "x");
        r.push("d", vec![1, 2]);
        assert_eq!(r.to_value(), json!({"a": {"b": 1, "c": "x"}, "d": [1, 2]}));
        assert_eq!(r.to_text(), "a.b: 1\na.c: x\nd: [1,2]\n");
    }

    #[test]
    fn input_header_and_comments() {
        let i = parse_input("# pappus\nvars: x, y, z\nx*y*z  # three lines\n").unwrap();
        assert_eq!(i.ring.nvars(), 3);
        assert_eq!(i.lines, vec!["x*y*z"]);
        assert_eq!(parse_input("x*y*z*w").unwrap().ring.nvars(), 4);
        assert!(parse_input("# nothing\n").is_err());
    }

    #[test]
    fn analysis_of_quadric() {
        let input = parse_input("x^2 + y^2 + z^2 + w^2").unwrap();
        let r = run_analysis(&input, &Options::default(), false).unwrap();
        assert_eq!(r.get("mixed_multiplicities"), Some(&json!([1, 1, 1, 1])));
        assert_eq!(r.get("freeness.status"), Some(&json!("neither")));
        assert_eq!(r.get("homaloidal.verdict"), Some(&json!(true)));
    }

    #[test]
    fn deterministic_reports() {
        let input = parse_input(&crate::atlas::family_text(FamilyId::Delta3).unwrap()).unwrap();
        let a = run_analysis(&input, &Options::default(), false).unwrap();
        let b = run_analysis(&input, &Options::default(), false).unwrap();
        assert_eq!(a.to_machine(), b.to_machine());
        assert!(a.get("hilbert.polynomial").unwrap().as_str().unwrap().starts_with("6t"));
    }

    #[test]
    fn bad_reduction_is_outvoted() {
        // modulo 65537 the input degenerates to a cone
        let input = parse_input("x^2 + 65537*y^2 + z^2 + w^2").unwrap();
        let r = run_analysis(&input, &Options::default(), false).unwrap();
        assert_eq!(r.get("agreement"), Some(&json!([32003, 1_000_003])));
        assert_eq!(r.get("mixed_multiplicities"), Some(&json!([1, 1, 1, 1])));
        assert!(r.get("escalations").unwrap().to_string().contains("GF(65537) disagrees"));
    }

    #[test]
    fn vote_primes_skip_the_requested_prime() {
        assert_eq!(vote_primes(65537), vec![65537, 32003, 1_000_003]);
        assert_eq!(vote_primes(2147483647), vec![2147483647, 32003, 65537]);
    }
}
