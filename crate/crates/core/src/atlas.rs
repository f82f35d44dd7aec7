//! Named polynomials and families: the surfaces `D_d`, `D'_d`, `D''_d`,
//! `D'''_d`, the discriminant `Δ_3`, Pappus line arrangements and their
//! lifts, and generic plane arrangements.

use std::fmt;
use std::str::FromStr;

use crate::arrangements::Arrangement;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::polar::{fiber_degree, mixed_multiplicities};
use crate::polycore::{derive_seed, parse_polynomial, partial_derivatives, seeded_rng, Polynomial, Ring};
use crate::resolution::{classify_freeness, FreenessVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Delta3,
    D(u32),
    Dp(u32),
    Dpp(u32),
    Dppp(u32),
    CubicY12,
    /// Pappus line arrangement `W` in ℙ^2.
    PappusW,
    PappusWp,
    /// The same equations read in four variables (non-essential in ℙ^3).
    PappusLiftW,
    PappusLiftWp,
    /// Cones `w·g`.
    PappusConeW,
    PappusConeWp,
    /// Free arrangement `(x^2 - y^2)(x^2 - z^2)(y^2 - z^2)w` of degree 7.
    Ex33Arrangement,
    /// Free surface `D_7`.
    Ex33Surface,
    /// Generic arrangement of `d` planes in ℙ^3.
    GenericArr(u32),
}

const PAPPUS_W: [&str; 9] = ["x", "y", "z", "x - y", "y - z", "x - y - z", "2*x + y + z", "2*x + y - z", "-2*x + 5*y - z"];
const PAPPUS_WP: [&str; 9] =
    ["x", "y", "z", "x + y", "x + 3*z", "y + z", "x + 2*y + z", "x + 2*y + 3*z", "4*x + 6*y + 6*z"];
const EX33_FORMS: [&str; 7] = ["x - y", "x + y", "x - z", "x + z", "y - z", "y + z", "w"];

impl FamilyId {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::Delta3 => "Delta3",
            FamilyId::D(_) => "D",
            FamilyId::Dp(_) => "Dp",
            FamilyId::Dpp(_) => "Dpp",
            FamilyId::Dppp(_) => "Dppp",
            FamilyId::CubicY12 => "CubicY12",
            FamilyId::PappusW => "PappusW",
            FamilyId::PappusWp => "PappusWp",
            FamilyId::PappusLiftW => "PappusLiftW",
            FamilyId::PappusLiftWp => "PappusLiftWp",
            FamilyId::PappusConeW => "PappusConeW",
            FamilyId::PappusConeWp => "PappusConeWp",
            FamilyId::Ex33Arrangement => "Ex33Arrangement",
            FamilyId::Ex33Surface => "Ex33Surface",
            FamilyId::GenericArr(_) => "GenericArr",
        }
    }

    /// Parameter of a family, if any.
    pub fn param(&self) -> Option<u32> {
        match *self {
            FamilyId::D(d) | FamilyId::Dp(d) | FamilyId::Dpp(d) | FamilyId::Dppp(d) | FamilyId::GenericArr(d) => Some(d),
            _ => None,
        }
    }

    /// Builds an id from its name and, for families, the degree.
    pub fn from_parts(name: &str, d: Option<u32>) -> Result<FamilyId> {
        let need = || d.ok_or_else(|| Error::Precondition(format!("{name} needs a degree")));
        let id = match name {
            "Delta3" => FamilyId::Delta3,
            "D" => FamilyId::D(need()?),
            "Dp" => FamilyId::Dp(need()?),
            "Dpp" => FamilyId::Dpp(need()?),
            "Dppp" => FamilyId::Dppp(need()?),
            "CubicY12" => FamilyId::CubicY12,
            "PappusW" => FamilyId::PappusW,
            "PappusWp" => FamilyId::PappusWp,
            "PappusLiftW" => FamilyId::PappusLiftW,
            "PappusLiftWp" => FamilyId::PappusLiftWp,
            "PappusConeW" => FamilyId::PappusConeW,
            "PappusConeWp" => FamilyId::PappusConeWp,
            "Ex33Arrangement" => FamilyId::Ex33Arrangement,
            "Ex33Surface" => FamilyId::Ex33Surface,
            "GenericArr" => FamilyId::GenericArr(need()?),
            _ => return Err(Error::Precondition(format!("unknown family `{name}`"))),
        };
        id.check_range()?;
        Ok(id)
    }

    fn check_range(&self) -> Result<()> {
        let (min, d) = match *self {
            FamilyId::D(d) | FamilyId::Dpp(d) | FamilyId::GenericArr(d) => (4, d),
            FamilyId::Dp(d) | FamilyId::Dppp(d) => (5, d),
            _ => return Ok(()),
        };
        if d < min {
            return Err(Error::DegreeOutOfRange { family: self.name().into(), d });
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        match self {
            FamilyId::PappusW | FamilyId::PappusWp => 3,
            _ => 4,
        }
    }

    pub fn degree(&self) -> u32 {
        match *self {
            FamilyId::Delta3 => 4,
            FamilyId::CubicY12 => 3,
            FamilyId::PappusW | FamilyId::PappusWp | FamilyId::PappusLiftW | FamilyId::PappusLiftWp => 9,
            FamilyId::PappusConeW | FamilyId::PappusConeWp => 10,
            FamilyId::Ex33Arrangement | FamilyId::Ex33Surface => 7,
            FamilyId::D(d) | FamilyId::Dp(d) | FamilyId::Dpp(d) | FamilyId::Dppp(d) | FamilyId::GenericArr(d) => d,
        }
    }

    pub fn is_surface_family(&self) -> bool {
        matches!(self, FamilyId::D(_) | FamilyId::Dp(_) | FamilyId::Dpp(_) | FamilyId::Dppp(_))
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(d) => write!(f, "{}({d})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    /// Accepts `Name` or `Name(d)`.
    fn from_str(s: &str) -> Result<FamilyId> {
        let s = s.trim();
        match s.split_once('(') {
            Some((name, rest)) => {
                let d = rest
                    .strip_suffix(')')
                    .and_then(|v| v.trim().parse().ok())
                    .ok_or_else(|| Error::Precondition(format!("malformed family `{s}`")))?;
                FamilyId::from_parts(name.trim(), Some(d))
            }
            None => FamilyId::from_parts(s, None),
        }
    }
}

fn power(var: char, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    }
}

fn monomial(factors: &[(char, u32)]) -> String {
    let parts: Vec<String> = factors.iter().filter_map(|&(v, e)| power(v, e)).collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn generic_forms(d: u32) -> Vec<String> {
    let mut forms: Vec<String> = ["x", "y", "z", "w", "x + y + z + w", "x + 2*y + 3*z + 4*w"].map(String::from).into();
    let mut t: u64 = 5;
    while forms.len() < d as usize {
        forms.push(format!("x + {t}*y + {}*z + {}*w", t * t, t * t * t));
        t += 1;
    }
    forms.truncate(d as usize);
    forms
}

/// Linear forms of the arrangement ids, `None` for the other ids.
pub fn arrangement_forms(id: FamilyId) -> Result<Option<Vec<String>>> {
    id.check_range()?;
    let owned = |forms: &[&str]| forms.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let cone = |forms: &[&str]| {
        let mut v = owned(forms);
        v.push("w".into());
        v
    };
    Ok(match id {
        FamilyId::PappusW | FamilyId::PappusLiftW => Some(owned(&PAPPUS_W)),
        FamilyId::PappusWp | FamilyId::PappusLiftWp => Some(owned(&PAPPUS_WP)),
        FamilyId::PappusConeW => Some(cone(&PAPPUS_W)),
        FamilyId::PappusConeWp => Some(cone(&PAPPUS_WP)),
        FamilyId::Ex33Arrangement => Some(owned(&EX33_FORMS)),
        FamilyId::GenericArr(d) => Some(generic_forms(d)),
        _ => None,
    })
}

/// Text of the defining polynomial.
pub fn family_text(id: FamilyId) -> Result<String> {
    if let Some(forms) = arrangement_forms(id)? {
        let factors: Vec<String> =
            forms.iter().map(|f| if f.contains(' ') { format!("({f})") } else { f.clone() }).collect();
        return Ok(factors.join("*"));
    }
    let head = |d: u32| {
        format!("{} + {} + {}", monomial(&[('x', d - 1), ('z', 1)]), monomial(&[('y', d)]), monomial(&[('x', d - 2), ('y', 1), ('w', 1)]))
    };
    Ok(match id {
        FamilyId::Delta3 => "y^2*z^2 - 4*x*z^3 - 4*y^3*w + 18*x*y*z*w - 27*x^2*w^2".into(),
        FamilyId::CubicY12 => "z^3 - 2*y*z*w + x*w^2".into(),
        FamilyId::D(d) => format!("{} + {}", head(d), monomial(&[('x', 4), ('y', d - 4)])),
        FamilyId::Ex33Surface => family_text(FamilyId::D(7))?,
        FamilyId::Dp(d) => format!("{} + {}", head(d), monomial(&[('x', d - 5), ('y', 5)])),
        FamilyId::Dpp(d) => head(d),
        FamilyId::Dppp(d) => format!("{} + {}", head(d), monomial(&[('x', 1), ('y', d - 1)])),
        _ => unreachable!("arrangement ids handled above"),
    })
}

pub fn family_ring(id: FamilyId) -> Ring {
    Ring::standard(id.nvars())
}

pub fn family_polynomial<C: Field>(id: FamilyId) -> Result<Polynomial<C>> {
    parse_polynomial(&family_text(id)?, &family_ring(id))
}

pub fn family_arrangement<C: Field>(id: FamilyId) -> Result<Option<Arrangement<C>>> {
    let ring = family_ring(id);
    match arrangement_forms(id)? {
        None => Ok(None),
        Some(forms) => {
            let forms = forms.iter().map(|s| parse_polynomial(s, &ring)).collect::<Result<Vec<_>>>()?;
            Arrangement::new(forms).map(Some)
        }
    }
}

/// Invariants compared across an identity of the overlap table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub degree: u32,
    pub freeness: FreenessVerdict,
    pub mixed: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    pub members: Vec<FamilyId>,
    pub invariants: Vec<Invariants>,
    /// All members share degree, verdict, exponents and `μ*`.
    pub consistent: bool,
}

/// Identities up to projective equivalence among small members of the
/// families.
pub const OVERLAPS: [&[FamilyId]; 5] = [
    &[FamilyId::D(4), FamilyId::Dpp(4)],
    &[FamilyId::D(5), FamilyId::Dp(5), FamilyId::Dpp(5)],
    &[FamilyId::D(6), FamilyId::Dpp(6)],
    &[FamilyId::Dp(6), FamilyId::Dppp(6)],
    &[FamilyId::D(9), FamilyId::Dp(9)],
];

pub fn family_invariants<C: Field>(id: FamilyId, seed: u64) -> Result<Invariants> {
    let f = family_polynomial::<C>(id)?;
    Ok(Invariants {
        degree: id.degree(),
        freeness: classify_freeness(&f)?,
        mixed: mixed_multiplicities(&f, seed)?.mu,
    })
}

/// Each identity of [`OVERLAPS`] checked on necessary conditions for
/// projective equivalence.
pub fn overlap_table<C: Field>(seed: u64) -> Result<Vec<Overlap>> {
    OVERLAPS
        .iter()
        .enumerate()
        .map(|(k, members)| {
            let invariants = members
                .iter()
                .map(|&id| family_invariants::<C>(id, derive_seed(seed, k as u64)))
                .collect::<Result<Vec<_>>>()?;
            let consistent = invariants.windows(2).all(|w| w[0] == w[1]);
            Ok(Overlap { members: members.to_vec(), invariants, consistent })
        })
        .collect()
}

/// A verified point of the fiber of the gradient map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageWitness<C: Field> {
    /// Target normalized to third coordinate 1.
    pub target: Vec<C>,
    /// Preimage normalized to first coordinate 1.
    pub point: Vec<C>,
    /// `∇f(point) = target` by exact evaluation.
    pub gradient_matches: bool,
    /// Degree of the saturated fiber ideal over `target`.
    pub fiber_degree: i64,
}

/// Solves `∇f(x) = p` for the four surface families in the order
/// `f_z` (x = 1), `f_w` (y), `f_y` (w), `f_x` (z), then verifies the point
/// and that the fiber has degree one.
pub fn preimage_witness<C: Field>(id: FamilyId, target: &[C], seed: u64) -> Result<PreimageWitness<C>> {
    if !id.is_surface_family() {
        return Err(Error::Precondition(format!("{id} is not one of the surface families")));
    }
    let f = family_polynomial::<C>(id)?;
    if target.len() != 4 {
        return Err(Error::Precondition("target must have four coordinates".into()));
    }
    let gamma = target[2].clone();
    let Some(inv) = gamma.try_inv() else {
        return Err(Error::DegenerateTarget("third coordinate vanishes".into()));
    };
    let p: Vec<C> = target.iter().map(|c| c.clone() * inv.clone()).collect();
    let grad = partial_derivatives(&f);
    let (fx, fy, fw) = (&grad[0], &grad[1], &grad[3]);

    // with x = 1: f_w = y, f_y = (terms in y) + w, f_x = (d-1) z + (terms in y, w)
    let y = p[3].clone();
    let at = |g: &Polynomial<C>, z: C, w: C| g.eval(&[C::one(), y.clone(), z, w]);
    if at(fw, C::zero(), C::zero()) != y {
        return Err(Error::Precondition("unexpected shape of f_w".into()));
    }
    let w_coeff = at(fy, C::zero(), C::one()) - at(fy, C::zero(), C::zero());
    let Some(w_inv) = w_coeff.try_inv() else {
        return Err(Error::DegenerateTarget("f_y does not determine w".into()));
    };
    let w = (p[1].clone() - at(fy, C::zero(), C::zero())) * w_inv;
    let z_coeff = at(fx, C::one(), w.clone()) - at(fx, C::zero(), w.clone());
    let Some(z_inv) = z_coeff.try_inv() else {
        return Err(Error::DegenerateTarget("f_x does not determine z".into()));
    };
    let z = (p[0].clone() - at(fx, C::zero(), w.clone())) * z_inv;
    let point = vec![C::one(), y, z, w];

    let gradient_matches = grad.iter().zip(&p).all(|(g, c)| g.eval(&point) == *c);
    let mut rng = seeded_rng(seed);
    let c: Vec<C> = (0..4).map(|_| C::random(&mut rng)).collect();
    let degree = fiber_degree(&f, &p, &c)?.ok_or(Error::NonZeroDimensionalFiber)?;
    Ok(PreimageWitness { target: p, point, gradient_matches, fiber_degree: degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::{build_lattice, is_generic};
    use crate::field::Fp;
    use crate::polycore::seeded_rng;

    type F = Fp<32003>;

    #[test]
    fn discriminant_coefficients() {
        let delta = family_polynomial::<F>(FamilyId::Delta3).unwrap();
        assert_eq!(delta.len(), 5);
        assert_eq!(delta.coeff(&crate::polycore::Monomial::new(&[2, 0, 0, 2])), F::from_i64(-27));
        assert_eq!(delta.coeff(&crate::polycore::Monomial::new(&[1, 1, 1, 1])), F::from_i64(18));
    }

    #[test]
    fn family_texts() {
        assert_eq!(family_text(FamilyId::Dpp(5)).unwrap(), "x^4*z + y^5 + x^3*y*w");
        assert_eq!(family_text(FamilyId::D(4)).unwrap(), "x^3*z + y^4 + x^2*y*w + x^4");
        assert_eq!(family_text(FamilyId::Dp(5)).unwrap(), "x^4*z + y^5 + x^3*y*w + y^5");
        assert_eq!(family_text(FamilyId::Dppp(6)).unwrap(), "x^5*z + y^6 + x^4*y*w + x*y^5");
        assert!(family_text(FamilyId::PappusW).unwrap().starts_with("x*y*z*(x - y)*(y - z)"));
    }

    #[test]
    fn degree_bounds() {
        assert!(matches!(FamilyId::from_parts("Dp", Some(4)), Err(Error::DegreeOutOfRange { .. })));
        assert!(matches!(family_polynomial::<F>(FamilyId::Dppp(4)), Err(Error::DegreeOutOfRange { .. })));
        assert!(FamilyId::from_parts("D", Some(4)).is_ok());
        assert_eq!("Dpp(7)".parse::<FamilyId>().unwrap(), FamilyId::Dpp(7));
        assert_eq!("Delta3".parse::<FamilyId>().unwrap(), FamilyId::Delta3);
    }

    #[test]
    fn degrees_match_polynomials() {
        for id in [FamilyId::Delta3, FamilyId::PappusConeWp, FamilyId::Ex33Arrangement, FamilyId::GenericArr(9), FamilyId::Dp(11)] {
            assert_eq!(family_polynomial::<F>(id).unwrap().homogeneous_degree(), Some(id.degree()));
        }
    }

    #[test]
    fn generic_arrangements_are_generic() {
        for d in 4..=10 {
            let a = family_arrangement::<F>(FamilyId::GenericArr(d)).unwrap().unwrap();
            assert!(is_generic(&build_lattice(&a), 4), "d = {d}");
        }
    }

    #[test]
    fn preimage_of_random_target() {
        let mut rng = seeded_rng(3);
        let p: Vec<F> = (0..4).map(|_| F::random(&mut rng)).collect();
        let w = preimage_witness(FamilyId::D(5), &p, 11).unwrap();
        assert!(w.gradient_matches);
        assert_eq!(w.fiber_degree, 1);
    }

    #[test]
    fn preimage_roundtrip() {
        let f = family_polynomial::<F>(FamilyId::Dpp(4)).unwrap();
        let x0 = [F::new(5), F::new(17), F::new(1234), F::new(999)];
        let p: Vec<F> = partial_derivatives(&f).iter().map(|g| g.eval(&x0)).collect();
        let w = preimage_witness(FamilyId::Dpp(4), &p, 2).unwrap();
        let scale = x0[0].inv();
        assert_eq!(w.point, x0.iter().map(|c| *c * scale).collect::<Vec<_>>());
        assert!(w.gradient_matches);
    }

    #[test]
    fn degenerate_target() {
        let p = [F::new(1), F::new(2), F::new(0), F::new(3)];
        assert!(matches!(preimage_witness(FamilyId::D(5), &p, 1), Err(Error::DegenerateTarget(_))));
    }
}
