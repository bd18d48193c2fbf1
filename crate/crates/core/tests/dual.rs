use proptest::prelude::*;
use steenrod::dual::verify::{verify_dual, DualFamily};
use steenrod::dual::{
    coproduct_by_pairing, dual_coproduct, dual_filtration_basis, dual_product, pairing, pairing_matrix,
    DualElement, DualKind, DualTensor,
};
use steenrod::filtration::verify::Ranges;
use steenrod::{DualMonomial, MilnorMonomial, SteenrodAlgebra};

fn alg(p: u32) -> SteenrodAlgebra {
    SteenrodAlgebra::with_prime(p).unwrap()
}

fn mono(p: u32, m: DualMonomial) -> DualElement {
    DualElement::monomial(p, m)
}

fn ranges(levels: std::ops::RangeInclusive<i64>, max_degree: u32) -> Ranges {
    Ranges {
        levels,
        max_degree,
        ..Ranges::default()
    }
}

fn run(p: u32, family: DualFamily, kind: DualKind, r: &Ranges) {
    let rep = verify_dual(&alg(p), family, r, kind).unwrap();
    assert!(!rep.is_empty(), "{family} at p={p} checked nothing");
    assert!(rep.passed(), "{family} at p={p} ({kind:?}): {:?}", rep.failures().next());
}

#[test]
fn products() {
    let a = alg(3);
    let t0 = mono(3, DualMonomial::tau(0));
    let t1 = mono(3, DualMonomial::tau(1));
    let x1 = mono(3, DualMonomial::xi(1));
    assert!(dual_product(&a, &t0, &t0).unwrap().is_zero());
    let t0x1 = dual_product(&a, &t0, &x1).unwrap();
    assert_eq!(t0x1, mono(3, DualMonomial::from_parts(vec![1], vec![1])));
    assert_eq!(t0x1.keys().next().unwrap().weight(3), 3);
    let t1t0 = dual_product(&a, &t1, &t0).unwrap();
    assert_eq!(t1t0, dual_product(&a, &t0, &t1).unwrap().neg());
    let small = SteenrodAlgebra::new(steenrod::PrimeContext::new(3, 10).unwrap());
    assert!(dual_product(&small, &x1, &mono(3, DualMonomial::xi(2))).is_err());
}

#[test]
fn pairings() {
    let a = alg(2);
    let r = MilnorMonomial::from_r(vec![2, 1]);
    assert_eq!(pairing(&a.monomial(r.clone()), &mono(2, DualMonomial::from(&r))), 1);
    assert_eq!(pairing(&a.p_power(2), &mono(2, DualMonomial::from_r(vec![2]))), 1);
    assert_eq!(pairing(&a.monomial(MilnorMonomial::from_r(vec![1, 1])), &mono(2, DualMonomial::from_r(vec![2]))), 0);
    let b = alg(3);
    assert_eq!(pairing(&b.monomial(MilnorMonomial::q(1)), &mono(3, DualMonomial::tau(1))), 1);
    for n in 0..=20 {
        assert!(pairing_matrix(&b, n).unwrap().is_identity());
    }
}

#[test]
fn coproducts() {
    let a = alg(2);
    let z1 = mono(2, DualMonomial::xi(1));
    let expected = DualTensor::from_terms(
        2,
        [((DualMonomial::xi(1), DualMonomial::unit()), 1), ((DualMonomial::unit(), DualMonomial::xi(1)), 1)],
    );
    assert_eq!(dual_coproduct(&a, &z1).unwrap(), expected);
    let b = alg(3);
    let x1 = mono(3, DualMonomial::xi(1));
    let primitive = DualTensor::from_terms(
        3,
        [((DualMonomial::xi(1), DualMonomial::unit()), 1), ((DualMonomial::unit(), DualMonomial::xi(1)), 1)],
    );
    assert_eq!(dual_coproduct(&b, &x1).unwrap(), primitive);
    assert_eq!(coproduct_by_pairing(&b, &x1).unwrap(), primitive);
}

#[test]
fn worked_dual_filtration() {
    let b = alg(3);
    let f = dual_filtration_basis(&b, 1, 1, DualKind::Annihilator).unwrap();
    assert_eq!(f.elements(), &[mono(3, DualMonomial::tau(0))]);
    let a = alg(2);
    for kind in [DualKind::Monomial, DualKind::Annihilator] {
        let f = dual_filtration_basis(&a, 1, 3, kind).unwrap();
        assert_eq!(f.elements(), &[mono(2, DualMonomial::xi(2))]);
        assert_eq!(dual_filtration_basis(&a, -1, 5, kind).unwrap().dim(), 0);
    }
    for t in 0..3 {
        let tau = mono(3, DualMonomial::tau(t));
        let n = DualMonomial::tau(t).degree(3);
        assert!(dual_filtration_basis(&b, 1, n, DualKind::Annihilator).unwrap().contains(&b, &tau).unwrap());
        let xi = mono(3, DualMonomial::xi(t + 1));
        let n = DualMonomial::xi(t + 1).degree(3);
        let f2 = dual_filtration_basis(&b, 2, n, DualKind::Annihilator).unwrap();
        let f1 = dual_filtration_basis(&b, 1, n, DualKind::Annihilator).unwrap();
        assert!(f2.contains(&b, &xi).unwrap() && !f1.contains(&b, &xi).unwrap());
    }
}

#[test]
fn conditions_hold_in_both_presentations() {
    for p in [2u32, 3] {
        let r = ranges(-1..=8, 14);
        for kind in [DualKind::Monomial, DualKind::Annihilator] {
            for f in &DualFamily::ALL[..7] {
                run(p, *f, kind, &r);
            }
        }
        run(p, DualFamily::E5, DualKind::Annihilator, &ranges(0..=4, 14));
    }
}

#[test]
fn presentations_agree() {
    for p in [2u32, 3, 5] {
        run(p, DualFamily::Filt3, DualKind::Monomial, &ranges(-2..=12, 30));
        run(p, DualFamily::Pairing, DualKind::Monomial, &ranges(0..=0, 30));
    }
}

#[test]
fn adjointness() {
    for p in [2u32, 3, 5] {
        run(p, DualFamily::Adjoint, DualKind::Monomial, &ranges(0..=0, 16));
    }
}

#[test]
fn primal_and_dual_conditions_agree() {
    for p in [2u32, 3] {
        let rep = verify_dual(&alg(p), DualFamily::Duality, &ranges(0..=6, 10), DualKind::Annihilator).unwrap();
        assert_eq!(rep.len(), 7);
        assert!(rep.passed(), "{:?}", rep.failures().next());
    }
}

#[test]
fn family_names() {
    for f in DualFamily::ALL {
        assert_eq!(f.name().parse::<DualFamily>().unwrap(), f);
    }
    assert!("e8*".parse::<DualFamily>().is_err());
}

fn dual_monomials(p: u32, max: u32) -> Vec<DualMonomial> {
    let a = alg(p);
    (0..=max)
        .flat_map(|n| steenrod::dual::dual_basis(&a, n).unwrap())
        .collect()
}

#[test]
fn product_is_associative_and_graded_commutative() {
    for p in [2u32, 3] {
        let a = alg(p);
        let ms = dual_monomials(p, 16);
        for x in &ms {
            for y in &ms {
                let dxy = x.degree(p) + y.degree(p);
                if dxy > 16 {
                    continue;
                }
                let (ex, ey) = (mono(p, x.clone()), mono(p, y.clone()));
                let xy = dual_product(&a, &ex, &ey).unwrap();
                let yx = dual_product(&a, &ey, &ex).unwrap();
                let odd = x.degree(p) % 2 == 1 && y.degree(p) % 2 == 1;
                assert_eq!(xy, if odd { yx.neg() } else { yx });
                for z in ms.iter().filter(|z| dxy + z.degree(p) <= 16) {
                    let ez = mono(p, z.clone());
                    let l = dual_product(&a, &xy, &ez).unwrap();
                    let r = dual_product(&a, &ex, &dual_product(&a, &ey, &ez).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn coproduct_is_multiplicative(i in 0usize..40, j in 0usize..40) {
        let p = 3;
        let a = alg(p);
        let ms = dual_monomials(p, 20);
        let (x, y) = (mono(p, ms[i % ms.len()].clone()), mono(p, ms[j % ms.len()].clone()));
        let xy = dual_product(&a, &x, &y).unwrap();
        let lhs = dual_coproduct(&a, &xy).unwrap();
        let rhs = steenrod::dual::tensor_product(p, &dual_coproduct(&a, &x).unwrap(), &dual_coproduct(&a, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
