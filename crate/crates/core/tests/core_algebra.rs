use num_bigint::BigUint;
use proptest::prelude::*;
use steenrod::enumerate::{admissible_words, milnor_indices};
use steenrod::field::{multinomial_mod_p, PrimeContext};
use steenrod::{Error, Word};

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

fn multinomial_by_factorials(parts: &[u32], p: u32) -> u32 {
    let total: u32 = parts.iter().sum();
    let mut q = factorial(total);
    for &x in parts {
        q /= factorial(x);
    }
    (q % BigUint::from(p)).to_u32_digits().first().copied().unwrap_or(0)
}

/// Every admissible word of degree n, found by a direct search over exponent
/// sequences (rejecting a prefix as soon as it breaks admissibility) rather
/// than through the Milnor indices.
fn brute_force_admissible(p: u32, n: u32) -> Vec<Word> {
    let mut out = Vec::new();
    if p == 2 {
        fn go(n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Word>) {
            let used: u32 = prefix.iter().sum();
            if used == n {
                out.push(Word::even(prefix.clone()));
                return;
            }
            let max = prefix.last().map_or(n - used, |&last| (last / 2).min(n - used));
            for j in 1..=max {
                prefix.push(j);
                go(n, prefix, out);
                prefix.pop();
            }
        }
        go(n, &mut Vec::new(), &mut out);
    } else {
        let q = 2 * (p - 1);
        // `flat` is (e_0, i_1, e_1, ..., i_s, e_s)
        fn go(p: u32, q: u32, n: u32, flat: &mut Vec<u32>, out: &mut Vec<Word>) {
            let w = Word::from_flat(p, flat).unwrap();
            let d = w.degree(p);
            if d == n && w.flat() == *flat && w.is_admissible(p) {
                out.push(w);
            }
            if d >= n {
                return;
            }
            let len = flat.len();
            let bound = if len >= 3 {
                (flat[len - 2] - flat[len - 1].min(flat[len - 2])) / p
            } else {
                u32::MAX
            };
            for i in 0..=((n - d) / q).min(bound) {
                for e in 0..=1u32 {
                    if (i == 0 && e == 0) || d + i * q + e > n {
                        continue;
                    }
                    flat.push(i);
                    flat.push(e);
                    go(p, q, n, flat, out);
                    flat.pop();
                    flat.pop();
                }
            }
        }
        for e0 in 0..=1 {
            go(p, q, n, &mut vec![e0], &mut out);
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn multinomial_matches_factorials() {
    for p in [2u32, 3, 5, 7] {
        for a in 0..=15u32 {
            for b in 0..=(30 - a).min(15) {
                for c in 0..=(30 - a - b).min(6) {
                    let parts = [a, b, c];
                    assert_eq!(
                        multinomial_mod_p(&parts, p),
                        multinomial_by_factorials(&parts, p),
                        "p={p} parts={parts:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn worked_multinomials() {
    assert_eq!(multinomial_mod_p(&[1, 1], 2), 0);
    assert_eq!(multinomial_mod_p(&[2, 2], 2), 0);
    assert_eq!(multinomial_mod_p(&[1, 2], 3), 0);
    assert_eq!(multinomial_mod_p(&[9], 3), 1);
}

#[test]
fn enumeration_matches_brute_force() {
    for (p, top) in [(2u32, 40u32), (3, 40), (5, 50)] {
        for n in 0..=top {
            assert_eq!(admissible_words(p, n), brute_force_admissible(p, n), "p={p} n={n}");
        }
    }
}

#[test]
fn counts_agree_and_indices_sorted() {
    for p in [2u32, 3, 5] {
        for n in 0..=60 {
            let m = milnor_indices(p, n);
            assert_eq!(m.len(), admissible_words(p, n).len());
            assert!(m.windows(2).all(|w| w[0] < w[1]));
            assert!(m.iter().all(|x| x.degree(p) == n));
        }
    }
}

#[test]
fn varrho_round_trips_and_degree_formula() {
    for p in [2u32, 3, 5] {
        for n in 0..=40 {
            for m in milnor_indices(p, n) {
                let j = steenrod::enumerate::index_to_preimage(p, &m);
                let i = j.varrho(p);
                assert!(i.is_admissible(p));
                assert_eq!(i.varrho_inv(p).unwrap(), j);
                assert_eq!(i.degree(p), n);
                assert_eq!(i.excess(p), m.weight(p) as i64);
            }
            for w in admissible_words(p, n) {
                assert_eq!(w.varrho_inv(p).unwrap().varrho(p), w);
            }
        }
    }
}

#[test]
fn excess_and_degree_inequalities() {
    for p in [2u32, 3, 5] {
        for n in 0..=40 {
            for w in admissible_words(p, n) {
                let e = w.excess(p);
                let d = w.degree(p) as i64;
                let single = w.len() <= 1;
                if p == 2 {
                    let j1 = w.exp_at(1) as i64;
                    assert!(e <= j1);
                    assert_eq!(e == j1, single, "{w}");
                } else {
                    let e0 = w.eps_at(0) as i64;
                    let bound = 2 * w.exp_at(1) as i64 + e0;
                    let single = w.len() == 0 || (w.len() == 1 && w.eps_at(1) == 0);
                    assert!(e <= bound);
                    assert_eq!(e == bound, single, "{w}");
                    let lower = (p as i64 - 1) * e - e0 * (p as i64 - 2);
                    assert!(d >= lower);
                    assert_eq!(d == lower, single, "{w}");
                }
            }
        }
    }
}

#[test]
fn admissible_degree_bound_by_excess() {
    for p in [3u32, 5] {
        for n in 0..=40 {
            for w in admissible_words(p, n) {
                let e = w.excess(p);
                let d = w.degree(p) as i64;
                for j in 0..=e / 2 {
                    for eps in 0..=1i64 {
                        if e >= 2 * j + eps {
                            assert!(d >= 2 * j * (p as i64 - 1) + eps);
                            if d == 2 * j * (p as i64 - 1) + eps {
                                let expect = Word::odd(vec![eps as u8, 0], vec![j as u32]);
                                assert_eq!(w, expect);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn worked_words() {
    assert_eq!(Word::j_n(3, 2).degree(3), 16);
    assert_eq!(Word::k_n(3).degree(2), 7);
    assert_eq!(Word::empty(2).degree(2), 0);
    assert_eq!(Word::j_n(3, 2).excess(3), 2);
    assert_eq!(Word::j_prime_n(3, 2).excess(3), 1);
    assert_eq!(Word::even(vec![9]).excess(2), 9);
    for n in 1..5 {
        assert_eq!(Word::j_n(5, n).degree(5), 2 * 5u32.pow(n) - 2);
        assert_eq!(Word::j_prime_n(5, n).degree(5), 2 * 5u32.pow(n) - 1);
        assert_eq!(Word::k_n(n).excess(2), 1);
    }
    assert!(Word::odd(vec![1, 0], vec![1]).is_admissible(3));
    assert_eq!(Word::even(vec![1, 1]).varrho(2), Word::even(vec![3, 1]));
    assert!(matches!(
        Word::even(vec![1, 2]).varrho_inv(2),
        Err(Error::NotAdmissible(_))
    ));
}

#[test]
fn enumeration_respects_cap() {
    let ctx = PrimeContext::new(2, 10).unwrap();
    assert!(steenrod::enumerate::enumerate_admissible(&ctx, 11).is_err());
    assert_eq!(steenrod::enumerate::enumerate_admissible(&ctx, 10).unwrap().len(), admissible_words(2, 10).len());
    assert!(matches!(
        steenrod::enumerate::enumerate_milnor_index(&ctx, 12),
        Err(Error::CapExceeded { degree: 12, cap: 10 })
    ));
}

proptest! {
    #[test]
    fn varrho_inverse_on_random_sequences(flat in proptest::collection::vec(0u32..6, 0..8), odd in any::<bool>()) {
        let (p, flat) = if odd {
            (3u32, flat.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x % 2 } else { x }).collect::<Vec<_>>())
        } else {
            (2u32, flat)
        };
        let j = Word::from_flat(p, &flat).unwrap();
        let i = j.varrho(p);
        prop_assert!(i.is_admissible(p));
        prop_assert_eq!(i.varrho_inv(p).unwrap(), j);
    }

    #[test]
    fn multinomial_symmetric(a in 0u32..40, b in 0u32..40, c in 0u32..40) {
        for p in [2u32, 3, 5] {
            prop_assert_eq!(multinomial_mod_p(&[a, b, c], p), multinomial_mod_p(&[c, a, b], p));
        }
    }
}
