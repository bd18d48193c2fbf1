use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steenrod::dual::{DualElement, DualFiltration, DualKind, DualTensor};
use steenrod::filtration::verify::Ranges;
use steenrod::scheme::comodule::{check_comodule, coaction};
use steenrod::scheme::formal::{
    check_theta, theta, ConvolutionOrder, DualAlgebraMap, EpsFormalSeries, GeneratorCoproducts, CONVOLUTION_ORDER,
};
use steenrod::scheme::ring::{GradedTestRing, RingElement};
use steenrod::scheme::unipotent::{theta_n, AlgebraMap, UnipotentMatrix};
use steenrod::scheme::verify::{appendix_ring, unipotent_rings, verify_scheme, SchemeFamily};
use steenrod::scheme::*;
use steenrod::{DualMonomial, Error, PrimeContext, SteenrodAlgebra};

fn ctx(p: u32) -> PrimeContext {
    PrimeContext::with_default_cap(p).unwrap()
}

fn x(i: u32, j: u32) -> UPolyMonomial {
    UPolyMonomial::gen(Gen::new(i, j))
}

fn el(p: u32, m: UPolyMonomial) -> UElement {
    UElement::monomial(p, m)
}

fn ranges(levels: std::ops::RangeInclusive<i64>, max_degree: u32, samples: usize) -> Ranges {
    Ranges {
        levels,
        max_degree,
        seed: 7,
        samples,
    }
}

fn assert_passes(p: u32, family: SchemeFamily, r: &Ranges) {
    let alg = SteenrodAlgebra::with_prime(p).unwrap();
    let rep = verify_scheme(&alg, family, r).unwrap();
    assert!(!rep.is_empty(), "{family} at p = {p} checked nothing");
    let bad: Vec<_> = rep.failures().take(3).collect();
    assert!(bad.is_empty(), "{family} at p = {p}: {bad:?}");
}

#[test]
fn coproduct_and_antipode_examples() {
    for p in [2, 3] {
        let one = UPolyMonomial::unit();
        let c = ctx(p);
        assert_eq!(
            upoly_coproduct(&c, &el(p, x(2, 1))).unwrap(),
            UTensor::from_terms(p, [((x(2, 1), one.clone()), 1), ((one.clone(), x(2, 1)), 1)])
        );
        assert_eq!(
            upoly_coproduct(&c, &el(p, x(3, 1))).unwrap(),
            UTensor::from_terms(
                p,
                [((x(3, 1), one.clone()), 1), ((x(3, 2), x(2, 1)), 1), ((one.clone(), x(3, 1)), 1)]
            )
        );
        assert_eq!(
            upoly_coproduct(&c, &el(p, one.clone())).unwrap(),
            UTensor::monomial(p, (one.clone(), one.clone()))
        );
        assert_eq!(upoly_antipode(&c, &el(p, x(3, 2))).unwrap(), el(p, x(3, 2)).neg());
        let x32x21 = UPolyMonomial::from_exponents([(Gen::new(3, 2), 1), (Gen::new(2, 1), 1)]);
        assert_eq!(
            upoly_antipode(&c, &el(p, x(3, 1))).unwrap(),
            UElement::from_terms(p, [(x(3, 1), p - 1), (x32x21, 1)])
        );
        assert_eq!(upoly_antipode(&c, &el(p, one.clone())).unwrap(), el(p, one));
    }
}

#[test]
fn rho_examples() {
    assert_eq!(rho(&ctx(2), &el(2, x(2, 1))).unwrap(), DualElement::monomial(2, DualMonomial::xi(1)));
    assert_eq!(rho(&ctx(3), &el(3, x(3, 1))).unwrap(), DualElement::term(3, DualMonomial::tau(1), 2));
    assert_eq!(rho(&ctx(3), &el(3, x(3, 2))).unwrap(), DualElement::monomial(3, DualMonomial::xi(1)));
    for p in [2, 3, 5] {
        let gens = rho_kernel_generators(p, 40);
        assert!(!gens.is_empty());
        for k in gens {
            assert!(rho(&ctx(p), &k).unwrap().is_zero(), "{k}");
        }
    }
    // x_43 - x_32^3 at p = 3
    let k = rho_kernel_generators(3, 12);
    assert_eq!(k, vec![UElement::from_terms(3, [(x(4, 3), 1), (UPolyMonomial::power(Gen::new(3, 2), 3), 2)])]);
}

#[test]
fn rho_hopf_examples() {
    let alg = SteenrodAlgebra::with_prime(3).unwrap();
    let c = alg.ctx();
    let m = el(3, x(3, 1));
    let mut lhs = DualTensor::zero(3);
    for ((a, b), k) in upoly_coproduct(c, &m).unwrap().iter() {
        let t = rho_monomial(3, a).bilinear(&rho_monomial(3, b), |u, v| DualTensor::monomial(3, (u.clone(), v.clone())));
        lhs.add_scaled(&t, k);
    }
    let rhs = steenrod::dual::dual_coproduct(&alg, &rho(c, &m).unwrap()).unwrap();
    assert_eq!(lhs, rhs);

    let mut f = DualFiltration::new(&alg, DualKind::Annihilator);
    let f11 = f.get(1, 1).unwrap();
    assert_eq!(f11.dim(), 1);
    assert!(f11.contains(&alg, &DualElement::monomial(3, DualMonomial::tau(0))).unwrap());
    assert_eq!(rho(c, &el(3, x(2, 1))).unwrap(), DualElement::term(3, DualMonomial::tau(0), 2));
    assert_eq!(f.get(-1, 5).unwrap().dim(), 0);
}

#[test]
fn hopf_axioms() {
    for p in [2, 3] {
        assert_passes(p, SchemeFamily::Hopf, &ranges(0..=0, 20, 0));
    }
}

#[test]
fn rho_is_a_hopf_surjection() {
    for p in [2, 3] {
        assert_passes(p, SchemeFamily::RhoHopf, &ranges(0..=0, 20, 0));
    }
    assert_passes(5, SchemeFamily::RhoHopf, &ranges(0..=0, 24, 0));
}

#[test]
fn rho_carries_the_filtration() {
    for p in [2, 3] {
        assert_passes(p, SchemeFamily::RhoFilt, &ranges(-1..=8, 24, 0));
    }
}

#[test]
fn induced_filtration_conditions() {
    for p in [2, 3, 5] {
        assert_passes(p, SchemeFamily::InducedFilt, &ranges(-2..=8, 24, 0));
    }
}

#[test]
fn top_quotient_bases() {
    assert_eq!(top_quotient_monomials(3, 0, 1), vec![x(2, 1)]);
    assert_eq!(top_quotient_monomials(2, 1, 0), vec![x(2, 1)]);
    assert_eq!(top_quotient_monomials(3, 1, 0), vec![x(3, 2)]);
    assert_eq!(top_quotient_monomials(3, 3, 0).len(), 2);
    for p in [2, 3, 5] {
        assert_passes(p, SchemeFamily::InducedFilt2, &ranges(0..=4, 0, 0));
    }
    let alg = SteenrodAlgebra::with_prime(3).unwrap();
    let rep = verify_scheme(&alg, SchemeFamily::InducedFilt2, &ranges(0..=4, 0, 0)).unwrap();
    let notes: Vec<_> = rep.records().iter().filter(|r| r.witness.is_some()).collect();
    assert!(notes.iter().any(|r| r.indices["s"] == 3), "no (E7*) failure noted at s = 3");
}

#[test]
fn unipotent_examples() {
    let ring = GradedTestRing::truncated_polynomial(2, 1, 4).unwrap();
    assert_eq!(theta_n(&ring, &AlgebraMap::trivial(&ring, 3)).unwrap(), UnipotentMatrix::identity(&ring, 3));

    let y = ring.generator(0);
    let mut phi = AlgebraMap::trivial(&ring, 3);
    phi.values.insert(Gen::new(2, 1), y.clone());
    let mut psi = AlgebraMap::trivial(&ring, 3);
    psi.values.insert(Gen::new(3, 2), ring.multiply(&y, &y));
    let conv = theta_n(&ring, &phi.convolve(&psi, &ring).unwrap()).unwrap();
    let prod = theta_n(&ring, &phi).unwrap().multiply(&theta_n(&ring, &psi).unwrap(), &ring).unwrap();
    assert_eq!(conv, prod);
    assert_eq!(*conv.get(2, 1), y);
    assert_eq!(*conv.get(3, 2), ring.multiply(&y, &y));
    assert!(conv.get(3, 1).is_zero());

    let ring = GradedTestRing::truncated_polynomial(3, 2, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = AlgebraMap::random(&ring, 3, &mut rng);
    let a = theta_n(&ring, &f).unwrap();
    let inv = theta_n(&ring, &f.compose_antipode(&ring).unwrap()).unwrap();
    assert_eq!(a.multiply(&inv, &ring).unwrap(), UnipotentMatrix::identity(&ring, 3));

    let mut bad = BTreeMap::new();
    for g in AlgebraMap::generators(3) {
        bad.insert(g, ring.one());
    }
    assert!(matches!(AlgebraMap::new(&ring, 3, bad), Err(Error::DegreeConstraint(_))));
}

#[test]
fn theta_n_is_a_group_isomorphism() {
    for p in [2, 3] {
        assert_passes(p, SchemeFamily::ThetaN, &ranges(0..=0, 0, 100));
        let filled = unipotent_rings(p).unwrap().iter().all(|r| r.degrees().count() > 2);
        assert!(filled);
    }
}

#[test]
fn comodule_examples() {
    let c = coaction(2, 4, 4);
    assert_eq!(c.len(), 1);
    let alg2 = ctx(2);
    for j in 1..=4 {
        for (i, v) in coaction(2, 4, j) {
            let expected = if i == j {
                DualElement::monomial(2, DualMonomial::unit())
            } else {
                let r = steenrod::Seq::unit((i - j) as usize).scale(1 << (j - 1));
                DualElement::monomial(2, DualMonomial::new(steenrod::BSeq::zero(), r))
            };
            assert_eq!(rho(&alg2, &v).unwrap(), expected);
        }
    }
    for (p, top) in [(2, 5), (3, 5), (5, 3)] {
        for n in 1..=top {
            let rep = check_comodule(&ctx(p), n).unwrap();
            assert!(rep.passed(), "p = {p}, n = {n}: {:?}", rep.failures().next());
        }
        assert_passes(p, SchemeFamily::Comodule, &ranges(0..=0, 0, 0));
    }
}

fn series(ring: &GradedTestRing, a: Vec<RingElement>, b: Vec<RingElement>) -> EpsFormalSeries {
    EpsFormalSeries::new(ring, a, b).unwrap()
}

#[test]
fn formal_composition_examples() {
    let ring = appendix_ring(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = theta(&ring, &DualAlgebraMap::random(&ring, 3, &mut rng)).unwrap();
    let id = EpsFormalSeries::identity(&ring, 3);
    assert_eq!(f.compose(&id, &ring).unwrap(), f);
    assert_eq!(id.compose(&f, &ring).unwrap(), f);

    let z = ring.generator(1);
    let zero = ring.zero();
    let a = vec![ring.one(), z.clone(), ring.pow(&z, 4), zero.clone()];
    let c = vec![ring.one(), z.scale(2), zero.clone(), zero.clone()];
    let f = series(&ring, a, vec![zero.clone(); 4]);
    let g = series(&ring, c, vec![zero.clone(); 4]);
    let fg = f.compose(&g, &ring).unwrap();
    // X^3: a_0 c_1 + a_1 c_0^3; X^9: a_0 c_2 + a_1 c_1^3 + a_2 c_0^9
    assert_eq!(*fg.a(1), z.scale(3));
    let expected = ring.multiply(&z, &ring.pow(&z.scale(2), 3)).plus(&ring.pow(&z, 4));
    assert_eq!(*fg.a(2), expected);
    assert!(fg.b(2).is_zero());

    let bad = EpsFormalSeries::new(&ring, vec![zero.clone(); 4], vec![zero.clone(); 4]);
    assert!(matches!(bad, Err(Error::NonStrict)));
    let wrong = EpsFormalSeries::new(&ring, vec![ring.one(), ring.one(), zero.clone(), zero.clone()], vec![zero; 4]);
    assert!(matches!(wrong, Err(Error::DegreeConstraint(_))));
}

#[test]
fn freshmans_dream_matches_substitution() {
    for p in [2, 3] {
        let ring = appendix_ring(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..8 {
            let f = theta(&ring, &DualAlgebraMap::random(&ring, 3, &mut rng)).unwrap();
            let g = theta(&ring, &DualAlgebraMap::random(&ring, 3, &mut rng)).unwrap();
            assert_eq!(f.compose(&g, &ring).unwrap(), f.compose_expanded(&g, &ring).unwrap());
        }
    }
}

#[test]
fn compositional_inverse() {
    for p in [2, 3] {
        let ring = appendix_ring(p).unwrap();
        let id = EpsFormalSeries::identity(&ring, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let f = theta(&ring, &DualAlgebraMap::random(&ring, 3, &mut rng)).unwrap();
            let g = f.inverse(&ring).unwrap();
            assert_eq!(f.compose(&g, &ring).unwrap(), id);
            assert_eq!(g.compose(&f, &ring).unwrap(), id);
        }
    }
}

/// theta sends the antipode to the compositional inverse: phi * (phi ∘ chi) = counit.
#[test]
fn antipode_goes_to_inverse() {
    let alg = SteenrodAlgebra::with_prime(3).unwrap();
    let ring = appendix_ring(3).unwrap();
    let cop = GeneratorCoproducts::new(&alg, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let phi = DualAlgebraMap::random(&ring, 3, &mut rng);
    let f = theta(&ring, &phi).unwrap();
    let g = f.inverse(&ring).unwrap();
    // the map with theta equal to the inverse series
    let psi = DualAlgebraMap {
        tau: (0..=3).map(|i| g.b(i).clone()).collect(),
        xi: (1..=3).map(|i| g.a(i).clone()).collect(),
    };
    let conv = theta(&ring, &cop.convolve(&phi, &psi, &ring).unwrap()).unwrap();
    assert_eq!(conv, EpsFormalSeries::identity(&ring, 3));
}

#[test]
fn convolution_order_is_reversed() {
    assert_eq!(CONVOLUTION_ORDER, ConvolutionOrder::Reversed);
    let alg = SteenrodAlgebra::with_prime(3).unwrap();
    let ring = appendix_ring(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rep = check_theta(&alg, &ring, 3, 50, &mut rng).unwrap();
    assert_eq!(rep.len(), 50);
    assert!(rep.passed());
    let forward_failures = rep.records().iter().filter(|r| r.indices["forward"] == 0).count();
    assert!(forward_failures > 0, "forward order also holds on every sample");
}

#[test]
fn theta_transports_convolution() {
    for p in [2, 3] {
        assert_passes(p, SchemeFamily::ThetaAppendix, &ranges(0..=0, 0, 50));
    }
}

#[test]
fn family_names() {
    for f in SchemeFamily::ALL {
        assert_eq!(f.name().parse::<SchemeFamily>().unwrap(), f);
    }
    assert!("theta".parse::<SchemeFamily>().is_err());
}
