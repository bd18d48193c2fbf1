use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use steenrod::admissible::word_to_milnor;
use steenrod::enumerate::milnor_indices;
use steenrod::field::binomial_mod_p;
use steenrod::milnor::pth_root;
use steenrod::{Element, MilnorMonomial, SteenrodAlgebra, TensorElement, Word};

fn alg(p: u32) -> SteenrodAlgebra {
    SteenrodAlgebra::with_prime(p).unwrap()
}

fn sq(r: &[u32]) -> MilnorMonomial {
    MilnorMonomial::from_r(r.to_vec())
}

fn monomials_up_to(p: u32, top: u32) -> Vec<MilnorMonomial> {
    (0..=top).flat_map(|n| milnor_indices(p, n)).collect()
}

#[test]
fn worked_products() {
    let a = alg(2);
    assert!(a.multiply_monomials(&sq(&[1]), &sq(&[1])).is_zero());
    assert_eq!(a.multiply_monomials(&sq(&[2]), &sq(&[2])), a.monomial(sq(&[1, 1])));
    let b = alg(3);
    let lhs = b.multiply(&b.p_power(1), &b.bockstein()).unwrap();
    let rhs = b
        .monomial(MilnorMonomial::from_parts(vec![1], vec![1]))
        .plus(&b.monomial(MilnorMonomial::q(1)));
    assert_eq!(lhs, rhs);
    for m in monomials_up_to(3, 12) {
        assert_eq!(b.multiply(&b.unit(), &b.monomial(m.clone())).unwrap(), b.monomial(m.clone()));
        assert_eq!(b.multiply(&b.monomial(m.clone()), &b.unit()).unwrap(), b.monomial(m));
    }
}

#[test]
fn associativity_exhaustive() {
    for (p, top) in [(2u32, 20u32), (3, 20), (5, 24)] {
        let a = alg(p);
        let all = monomials_up_to(p, top);
        for x in &all {
            for y in &all {
                let dx = x.degree(p) + y.degree(p);
                if dx > top {
                    continue;
                }
                let xy = a.multiply_monomials(x, y);
                for z in &all {
                    if dx + z.degree(p) > top {
                        continue;
                    }
                    let zm = a.monomial(z.clone());
                    let left = a.multiply(&xy, &zm).unwrap();
                    let yz = a.multiply_monomials(y, z);
                    let right = a.multiply(&a.monomial(x.clone()), &yz).unwrap();
                    assert_eq!(left, right, "p={p} ({x})({y})({z})");
                }
            }
        }
    }
}

#[test]
fn associativity_random_up_to_cap() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for p in [2u32, 3] {
        let a = alg(p);
        let cap = a.ctx().degree_cap().min(if p == 2 { 48 } else { 60 });
        let mut done = 0;
        while done < 500 {
            let d1 = rng.gen_range(0..=cap / 2);
            let d2 = rng.gen_range(0..=cap - d1);
            let d3 = rng.gen_range(0..=cap - d1 - d2);
            let pick = |rng: &mut ChaCha8Rng, d: u32| {
                let b = milnor_indices(p, d);
                if b.is_empty() {
                    None
                } else {
                    Some(b[rng.gen_range(0..b.len())].clone())
                }
            };
            let (Some(x), Some(y), Some(z)) = (pick(&mut rng, d1), pick(&mut rng, d2), pick(&mut rng, d3)) else {
                continue;
            };
            let (x, y, z) = (a.monomial(x), a.monomial(y), a.monomial(z));
            let left = a.multiply(&a.multiply(&x, &y).unwrap(), &z).unwrap();
            let right = a.multiply(&x, &a.multiply(&y, &z).unwrap()).unwrap();
            assert_eq!(left, right);
            done += 1;
        }
    }
}

#[test]
fn products_are_graded() {
    for p in [2u32, 3] {
        let a = alg(p);
        let all = monomials_up_to(p, 18);
        for x in &all {
            for y in &all {
                let d = x.degree(p) + y.degree(p);
                if d > 18 {
                    continue;
                }
                let xy = a.multiply_monomials(x, y);
                assert!(xy.keys().all(|m| m.degree(p) == d));
            }
        }
    }
}

/// Adem relations, evaluated through the Milnor product, as an oracle that
/// does not use Milnor matrices directly on the right-hand side's shape.
#[test]
fn adem_relations_mod_2() {
    let a = alg(2);
    for x in 1..16u32 {
        for y in 1..16u32 {
            if x >= 2 * y {
                continue;
            }
            let lhs = word_to_milnor(&a, &Word::even(vec![x, y])).unwrap();
            let mut rhs = Element::zero(2);
            for c in 0..=x / 2 {
                let coeff = if y < c + 1 { 0 } else { binomial_mod_p(y - c - 1, x - 2 * c, 2) };
                if coeff != 0 {
                    rhs.add_scaled(&word_to_milnor(&a, &Word::even(vec![x + y - c, c])).unwrap(), coeff);
                }
            }
            assert_eq!(lhs, rhs, "Sq^{x} Sq^{y}");
        }
    }
}

#[test]
fn adem_relations_odd() {
    for p in [3u32, 5] {
        let a = alg(p);
        let pp = |i: u32| Word::odd(vec![0, 0], vec![i]);
        for x in 1..8u32 {
            for y in 1..6u32 {
                if x >= p * y || 2 * (p - 1) * (x + y) > a.ctx().degree_cap() {
                    continue;
                }
                let lhs = word_to_milnor(&a, &pp(x).concat(&pp(y))).unwrap();
                let mut rhs = Element::zero(p);
                for t in 0..=x / p {
                    let top = (p - 1) * (y - t);
                    let c = if top < 1 { 0 } else { binomial_mod_p(top - 1, x - p * t, p) };
                    let sign = if (x + t) % 2 == 0 { 1 } else { p - 1 };
                    let w = pp(x + y - t).concat(&pp(t));
                    rhs.add_scaled(&word_to_milnor(&a, &w).unwrap(), c * sign % p);
                }
                assert_eq!(lhs, rhs, "p={p} P^{x} P^{y}");
            }
        }
    }
}

#[test]
fn coproduct_examples() {
    let a = alg(2);
    let d = a.coproduct(&a.monomial(sq(&[1]))).unwrap();
    assert_eq!(
        d,
        TensorElement::from_terms(2, [((sq(&[1]), sq(&[])), 1), ((sq(&[]), sq(&[1])), 1)])
    );
    let d2 = a.coproduct(&a.monomial(sq(&[2]))).unwrap();
    assert_eq!(
        d2,
        TensorElement::from_terms(
            2,
            [((sq(&[2]), sq(&[])), 1), ((sq(&[1]), sq(&[1])), 1), ((sq(&[]), sq(&[2])), 1)]
        )
    );
}

fn coproduct_left(a: &SteenrodAlgebra, t: &TensorElement) -> Vec<((MilnorMonomial, MilnorMonomial, MilnorMonomial), u32)> {
    // (delta ⊗ 1) delta
    let p = a.p();
    let mut out = std::collections::BTreeMap::new();
    for ((x, y), c) in t.iter() {
        for ((u, v), d) in a.coproduct(&a.monomial(x.clone())).unwrap().iter() {
            let e = out.entry((u.clone(), v.clone(), y.clone())).or_insert(0u32);
            *e = (*e + c * d) % p;
        }
    }
    out.into_iter().filter(|(_, c)| *c != 0).collect()
}

fn coproduct_right(a: &SteenrodAlgebra, t: &TensorElement) -> Vec<((MilnorMonomial, MilnorMonomial, MilnorMonomial), u32)> {
    let p = a.p();
    let mut out = std::collections::BTreeMap::new();
    for ((x, y), c) in t.iter() {
        for ((u, v), d) in a.coproduct(&a.monomial(y.clone())).unwrap().iter() {
            let e = out.entry((x.clone(), u.clone(), v.clone())).or_insert(0u32);
            *e = (*e + c * d) % p;
        }
    }
    out.into_iter().filter(|(_, c)| *c != 0).collect()
}

#[test]
fn coassociativity_and_counit() {
    for p in [2u32, 3] {
        let a = alg(p);
        for m in monomials_up_to(p, 20) {
            let d = a.coproduct(&a.monomial(m.clone())).unwrap();
            assert_eq!(coproduct_left(&a, &d), coproduct_right(&a, &d), "{m}");
            let mut left = Element::zero(p);
            let mut right = Element::zero(p);
            for ((x, y), c) in d.iter() {
                if y.is_unit() {
                    left.add_term(x.clone(), c);
                }
                if x.is_unit() {
                    right.add_term(y.clone(), c);
                }
            }
            assert_eq!(left, a.monomial(m.clone()));
            assert_eq!(right, a.monomial(m));
        }
    }
}

#[test]
fn coproduct_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [2u32, 3] {
        let a = alg(p);
        let all = monomials_up_to(p, 14);
        let mut checked = 0;
        while checked < 200 {
            let x = &all[rng.gen_range(0..all.len())];
            let y = &all[rng.gen_range(0..all.len())];
            if x.degree(p) + y.degree(p) > 14 {
                continue;
            }
            let xy = a.multiply_monomials(x, y);
            let lhs = a.coproduct(&xy).unwrap();
            let dx = a.coproduct(&a.monomial(x.clone())).unwrap();
            let dy = a.coproduct(&a.monomial(y.clone())).unwrap();
            let rhs = a.tensor_multiply(&dx, &dy);
            assert_eq!(lhs, rhs, "p={p} {x} * {y}");
            checked += 1;
        }
    }
}

#[test]
fn pth_root_examples() {
    let a = alg(3);
    assert_eq!(pth_root(a.ctx(), &a.p_power(3)).unwrap(), a.p_power(1));
    let q = a.monomial(MilnorMonomial::from_parts(vec![1, 1], vec![2, 1]));
    // degree 1 + 5 + 8 + 16 = 30
    assert!(pth_root(a.ctx(), &q).unwrap().is_zero());
    let b = alg(2);
    assert_eq!(pth_root(b.ctx(), &b.p_power(2)).unwrap(), b.p_power(1));
    let mixed = b.p_power(2).plus(&b.p_power(4));
    assert!(pth_root(b.ctx(), &mixed).is_err());
}

#[test]
fn cap_is_enforced() {
    let a = SteenrodAlgebra::new(steenrod::PrimeContext::new(2, 8).unwrap());
    assert!(a.multiply(&a.p_power(5), &a.p_power(4)).is_err());
    assert!(a.multiply(&a.p_power(4), &a.p_power(4)).is_ok());
    assert!(a.basis(9).is_err());
}
