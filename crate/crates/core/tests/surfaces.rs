use milnor_core::atlas::{family_polynomial, FamilyId};
use milnor_core::polar::{mixed_multiplicities, plane_section_singularities, polar_degree};
use milnor_core::{parse_polynomial, Ring, F32003};

type F = F32003;

fn surfaces() -> Vec<FamilyId> {
    let mut ids = vec![FamilyId::Delta3, FamilyId::CubicY12, FamilyId::Ex33Surface];
    ids.extend([FamilyId::D(5), FamilyId::D(8), FamilyId::Dp(7), FamilyId::Dp(11), FamilyId::Dpp(6), FamilyId::Dppp(9)]);
    ids
}

#[test]
fn surface_identity() {
    for id in surfaces() {
        let f = family_polynomial::<F>(id).unwrap();
        let d = id.degree() as i64;
        let m = mixed_multiplicities(&f, 3).unwrap();
        let c = plane_section_singularities(&f, 4).unwrap().milnor;
        assert_eq!(m.mu[3], 1 + (d - 1) * (d - 2) - c - m.euler(), "{id}: {:?}, μ(C) = {c}", m.mu);
        assert_eq!(m.mu[2], (d - 1).pow(2) - c, "{id}");
    }
}

#[test]
fn smooth_law() {
    let ring = Ring::standard(4);
    for (text, d) in [("x^2 + y^2 + z^2 + w^2", 2i64), ("x^3 + y^3 + z^3 + w^3", 3), ("x^4 + y^4 + z^4 + w^4 + x*y*z*w", 4)] {
        let f = parse_polynomial::<F>(text, &ring).unwrap();
        let m = mixed_multiplicities(&f, 1).unwrap();
        assert_eq!(m.mu, (0..4).map(|i| (d - 1).pow(i)).collect::<Vec<_>>(), "{text}");
        assert_eq!(plane_section_singularities(&f, 2).unwrap().milnor, 0);
    }
}

#[test]
fn seeds_do_not_change_invariants() {
    for id in [FamilyId::Delta3, FamilyId::Dppp(7), FamilyId::PappusConeWp] {
        let f = family_polynomial::<F>(id).unwrap();
        let a = mixed_multiplicities(&f, 11).unwrap();
        let b = mixed_multiplicities(&f, 12).unwrap();
        assert_eq!(a.mu, b.mu, "{id}");
        assert_ne!(a.seeds, b.seeds);
        assert_eq!(polar_degree(&f, 13).unwrap(), a.mu[3]);
    }
}
