use proptest::prelude::*;

use modlie::field::{find_roots, Fe, Field};
use modlie::linalg::PPolynomial;

fn fields() -> Vec<Field> {
    [(5, 1), (5, 2), (5, 3), (7, 2), (11, 1)].iter().map(|&(p, k)| Field::new(p, k).unwrap()).collect()
}

fn field_and_elems(n: usize) -> impl Strategy<Value = (Field, Vec<Fe>)> {
    (0..5usize, prop::collection::vec(any::<u32>(), n)).prop_map(|(i, raw)| {
        let f = fields().swap_remove(i);
        let q = f.size();
        (f, raw.into_iter().map(|r| Fe(r % q)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn ring_axioms((f, v) in field_and_elems(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            prop_assert_eq!(f.mul(f.div(b, a).unwrap(), a), b);
        }
    }

    #[test]
    fn frobenius_is_a_ring_automorphism((f, v) in field_and_elems(2)) {
        let (a, b) = (v[0], v[1]);
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(a), f.pow(a, f.p() as u64));
        prop_assert_eq!(f.frobenius_inv(f.frobenius(a)), a);
    }

    #[test]
    fn p_polynomial_roots_are_additive((f, v) in field_and_elems(3)) {
        let mut coeffs = v.clone();
        if coeffs.iter().all(|c| c.is_zero()) {
            coeffs[0] = Fe::ONE;
        }
        let poly = PPolynomial::new(&f, coeffs).to_poly();
        let roots = find_roots(&poly).unwrap();
        prop_assert!(roots.contains(&Fe::ZERO));
        for &r in &roots {
            for &s in &roots {
                prop_assert!(roots.contains(&f.add(r, s)));
            }
        }
        let q = (f.p() as usize).pow(roots.len().ilog(f.p() as usize));
        prop_assert_eq!(q, roots.len());
    }
}

#[test]
fn exhaustive_axioms_on_small_fields() {
    for (p, k) in [(5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (11, 1)] {
        let f = Field::new(p, k).unwrap();
        let els: Vec<Fe> = f.elements().collect();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }
}
