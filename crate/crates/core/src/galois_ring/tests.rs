use super::*;
use crate::exact::GaussInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring3() -> GaloisRing {
    GaloisRing::new(3, None).unwrap()
}

#[test]
fn rejects_bad_degrees() {
    assert_eq!(
        GaloisRing::new(4, None).unwrap_err(),
        RingError::EvenDegree(4)
    );
    assert_eq!(
        GaloisRing::new(1, None).unwrap_err(),
        RingError::DegreeTooSmall(1)
    );
    assert_eq!(
        GaloisRing::new(13, None).unwrap_err(),
        RingError::DegreeTooLarge(13)
    );
    assert!(RingError::EvenDegree(4)
        .to_string()
        .contains("e must be odd"));
}

#[test]
fn rejects_non_primitive_phi() {
    // (x + 1)(x^2 + x + 1)
    assert_eq!(
        GaloisRing::new(3, Some(0b1001)).unwrap_err(),
        RingError::NotPrimitive(0b1001)
    );
    assert!(matches!(
        GaloisRing::new(3, Some(0b100101)),
        Err(RingError::WrongDegree { .. })
    ));
}

#[test]
fn lift_matches_brute_force_search() {
    // every monic cubic over Z/4Z congruent to x^3 + x + 1 mod 2, tested against x^7 − 1
    let mut x7m1 = vec![0u8; 8];
    x7m1[0] = 3;
    x7m1[7] = 1;
    let mut found = Vec::new();
    for hi in 0..8u8 {
        let cand: Vec<u8> = [1u8, 1, 0]
            .iter()
            .enumerate()
            .map(|(k, &low)| low + 2 * ((hi >> k) & 1))
            .chain([1])
            .collect();
        if z4poly::rem_monic(&x7m1, &cand) == vec![0] {
            found.push(cand);
        }
    }
    assert_eq!(found, vec![vec![3, 1, 2, 1]]);
    assert_eq!(ring3().phi4(), &[3, 1, 2, 1]);
}

#[test]
fn parameters() {
    let r = ring3();
    assert_eq!((r.n(), r.b()), (64, 4));
    assert_eq!(r.subsets().t.len(), 7);
    let r5 = GaloisRing::new(5, None).unwrap();
    assert_eq!((r5.n(), r5.b()), (1024, 16));
    assert_eq!(r5.subsets().t.len(), 31);
    let s = r.summary();
    assert_eq!(s.phi2, vec![1, 1, 0, 1]);
    let json = serde_json::to_string(&s).unwrap();
    assert_eq!(
        json,
        r#"{"e":3,"b":4,"n":64,"phi2":[1,1,0,1],"Phi4":[3,1,2,1]}"#
    );
}

#[test]
fn basic_arithmetic() {
    let r = ring3();
    let xi = r.xi();
    assert_eq!(r.mul(xi, r.teichmuller(6)), r.one());
    let two = r.from_int(2);
    assert_eq!(r.mul(two, two), r.zero());
    let three = r.add(r.one(), two);
    assert!(r.subsets().e.contains(three));
    assert_eq!(r.mul(three, three), r.one());
    assert_eq!(r.neg(r.one()), r.from_int(3));
    for a in r.elements() {
        assert_eq!(r.add(a, r.neg(a)), r.zero());
        assert_eq!(r.double(a), r.add(a, a));
    }
}

#[test]
fn multiplication_is_a_ring_operation() {
    let r = ring3();
    for a in r.elements() {
        for b in r.elements() {
            assert_eq!(r.mul(a, b), r.mul(b, a));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let (a, b, c) = (
            RingElem(rng.gen_range(0..64)),
            RingElem(rng.gen_range(0..64)),
            RingElem(rng.gen_range(0..64)),
        );
        assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
    }
}

#[test]
fn two_adic_decomposition_round_trips() {
    let r = ring3();
    let tz = r
        .subsets()
        .t
        .union(&ElementSet::from_elements(64, [r.zero()]));
    let mut seen = std::collections::HashSet::new();
    for a in r.elements() {
        let (a0, a1) = r.decompose(a);
        assert!(tz.contains(a0) && tz.contains(a1));
        assert_eq!(r.compose(a0, a1), a);
        assert!(seen.insert((a0, a1)));
    }
}

#[test]
fn frobenius_examples() {
    let r = ring3();
    assert_eq!(r.frobenius(r.xi()), r.mul(r.xi(), r.xi()));
    for c in 0..4 {
        assert_eq!(r.frobenius(r.from_int(c)), r.from_int(c));
    }
}

#[test]
fn frobenius_is_an_automorphism_of_order_e() {
    let r = ring3();
    for a in r.elements() {
        let mut x = a;
        for _ in 0..3 {
            x = r.frobenius(x);
        }
        assert_eq!(x, a);
        for b in r.elements() {
            assert_eq!(
                r.frobenius(r.mul(a, b)),
                r.mul(r.frobenius(a), r.frobenius(b))
            );
            assert_eq!(
                r.frobenius(r.add(a, b)),
                r.add(r.frobenius(a), r.frobenius(b))
            );
        }
    }
    // f itself is not the identity
    assert_ne!(r.frobenius(r.xi()), r.xi());
}

#[test]
fn trace_examples() {
    for e in [3, 5] {
        let r = GaloisRing::new(e, None).unwrap();
        assert_eq!(r.trace(r.zero()), 0);
        assert_eq!(r.trace(r.one()), (e % 4) as u8);
        let mut rng = ChaCha8Rng::seed_from_u64(e as u64);
        for _ in 0..1000 {
            let a = RingElem(rng.gen_range(0..r.n() as u32));
            let b = RingElem(rng.gen_range(0..r.n() as u32));
            assert_eq!(r.trace(r.add(a, b)), (r.trace(a) + r.trace(b)) % 4);
            assert_eq!(r.chi(r.add(a, b)), r.chi(a) * r.chi(b));
        }
    }
}

#[test]
fn character_values_on_distinguished_sets() {
    let r = ring3();
    let s = r.subsets();
    for h in s.h.iter() {
        assert_eq!(r.chi(h), GaussInt::i());
    }
    for a in s.p.iter() {
        let expected = if s.p0.contains(a) { 1 } else { -1 };
        assert_eq!(r.chi(a), GaussInt::from(expected));
    }
    // orthogonality
    let total = r.lambda_sum(r.one(), &ElementSet::from_elements(64, r.elements()));
    assert!(total.is_zero());
}

#[test]
fn character_shortcut_matches_direct_evaluation() {
    let r = ring3();
    for a in r.elements() {
        let ch = r.character(a);
        for b in r.elements() {
            assert_eq!(ch.exponent(b), r.chi_exponent(r.mul(a, b)));
        }
    }
}

#[test]
fn subset_structure() {
    let r = ring3();
    let s = r.subsets();
    let b = r.b() as usize;
    assert_eq!(s.p0.len(), b);
    assert_eq!(s.h.len(), b);
    assert_eq!(s.p.len(), 2 * b);
    assert_eq!(s.t0.len() + s.t1.len(), 7);
    assert!(s.p0.is_subset(&s.p));
    let neg_h = r.negate_set(&s.h);
    assert!(neg_h.is_disjoint(&s.h));
    assert_eq!(neg_h.union(&s.h), s.e);
    // P0 additive subgroup, H multiplicative subgroup
    for x in s.p0.iter() {
        for y in s.p0.iter() {
            assert!(s.p0.contains(r.add(x, y)));
        }
    }
    for x in s.h.iter() {
        for y in s.h.iter() {
            assert!(s.h.contains(r.mul(x, y)));
        }
    }
    // αT = P \ {0} for α ∈ P \ {0}
    let p_star = s.p.difference(&ElementSet::from_elements(64, [r.zero()]));
    for a in p_star.iter() {
        assert_eq!(r.scale_set(a, &s.t), p_star);
    }
}

#[test]
fn lambda_examples() {
    let r = ring3();
    let s = r.subsets();
    let bi = GaussInt::new(0, r.b() as i64);
    assert_eq!(r.lambda_sum(r.one(), &s.h), bi);
    let th = r.product_set(&s.t, &s.h);
    assert_eq!(r.lambda_sum(r.one(), &th), bi);
    for a in s.p.iter().filter(|&a| a != r.zero()) {
        assert_eq!(r.lambda_sum(a, &th), GaussInt::from(-(r.b() as i64)));
    }
}

#[test]
fn alternative_phi_gives_a_valid_ring() {
    let r = GaloisRing::new(3, Some(0b1101)).unwrap();
    assert_eq!(r.phi4()[3], 1);
    assert_eq!(r.subsets().h.len(), 4);
}
