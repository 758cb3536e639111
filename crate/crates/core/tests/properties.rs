//! Algebraic invariants on random inputs.

use proptest::prelude::*;
use symorb::dictionary::{theta_tilde, theta_tilde_inverse, zeta, DeformParam};
use symorb::fock::{enumerate, CoordVector, FockSpace, PartitionFunction};
use symorb::orbiring::{product, product_invariant};
use symorb::scalar::{q, GaussQ};
use symorb::symgroup::{defect_triangle, Permutation};
use symorb::{AlgebraElement, FrobeniusAlgebra, OrbElement, ProductRule, Q};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(Permutation::from_images)
}

fn coeff() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| q(a) / q(b))
}

fn element(alg: &FrobeniusAlgebra) -> impl Strategy<Value = AlgebraElement<Q>> {
    let dim = alg.dim();
    proptest::collection::vec(coeff(), dim).prop_map(move |cs| {
        let mut x = AlgebraElement::zero(dim);
        for (i, c) in cs.into_iter().enumerate() {
            x.add_assign(&AlgebraElement::basis(dim, i).scale(&c));
        }
        x
    })
}

/// Random combination of `p_ρ(n)` coordinates at level `n`.
fn coords(alg: &FrobeniusAlgebra, n: usize) -> impl Strategy<Value = CoordVector<Q>> {
    let basis = enumerate(alg, n);
    proptest::collection::vec(coeff(), basis.len()).prop_map(move |cs| {
        let mut v = CoordVector::zero();
        for (p, c) in basis.iter().zip(cs) {
            v.add_term(p.clone(), c);
        }
        v
    })
}

fn p2() -> FrobeniusAlgebra {
    FrobeniusAlgebra::builtin("P2").unwrap()
}

fn odd() -> FrobeniusAlgebra {
    FrobeniusAlgebra::builtin("odd").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(a in perm(6), b in perm(6), c in perm(6)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn defect_is_subadditive_with_even_gap(a in perm(5), b in perm(5)) {
        prop_assert!(defect_triangle(&a, &b));
        let gap = a.defect() + b.defect() - a.compose(&b).defect();
        prop_assert_eq!(gap % 2, 0);
    }

    #[test]
    fn algebra_product_is_associative(x in element(&odd()), y in element(&odd()), z in element(&odd())) {
        let alg = odd();
        let l = alg.multiply(&alg.multiply(&x, &y), &z);
        let r = alg.multiply(&x, &alg.multiply(&y, &z));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn pairing_is_graded_symmetric(i in 0usize..4, j in 0usize..4) {
        let alg = odd();
        let (x, y) = (alg.element::<Q>(i), alg.element::<Q>(j));
        let s = if alg.is_odd(i) && alg.is_odd(j) { -q(1) } else { q(1) };
        prop_assert_eq!(alg.pairing(&x, &y), s * alg.pairing(&y, &x));
    }

    #[test]
    fn coordinates_invert_realisation(v in coords(&p2(), 3)) {
        let alg = p2();
        let fs = FockSpace::<Q>::new(&alg);
        let x = fs.realize_coords(&v, 3);
        prop_assert_eq!(fs.coordinates(&x, true).unwrap(), v);
    }

    #[test]
    fn invariant_product_is_commutative_and_associative(
        x in coords(&p2(), 2), y in coords(&p2(), 2), z in coords(&p2(), 2), s in 1i64..=2
    ) {
        let alg = p2();
        let fs = FockSpace::<Q>::new(&alg);
        let rule = ProductRule::deformed(q(s.pow(6)));
        let (x, y, z) = (fs.realize_coords(&x, 2), fs.realize_coords(&y, 2), fs.realize_coords(&z, 2));
        let xy = product_invariant(&alg, &x, &y, &rule).unwrap();
        prop_assert_eq!(&xy, &product_invariant(&alg, &y, &x, &rule).unwrap());
        let l = product_invariant(&alg, &xy, &z, &rule).unwrap();
        let r = product_invariant(&alg, &x, &product_invariant(&alg, &y, &z, &rule).unwrap(), &rule).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn full_product_is_associative_on_group_elements(a in perm(3), b in perm(3), c in perm(3), t in prop_oneof![Just(1i64), Just(-1), Just(64)]) {
        let alg = p2();
        let rule = ProductRule::deformed(q(t));
        let g = |p: &Permutation| OrbElement::group_element(&alg, p, q(1));
        let (x, y, z) = (g(&a), g(&b), g(&c));
        let l = product(&alg, &product(&alg, &x, &y, &rule).unwrap(), &z, &rule).unwrap();
        let r = product(&alg, &x, &product(&alg, &y, &z, &rule).unwrap(), &rule).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn zeta_is_multiplicative(x in coords(&p2(), 3), y in coords(&p2(), 3), s in prop_oneof![Just(2i64), Just(-1), Just(3)]) {
        let alg = p2();
        let fs = FockSpace::<Q>::new(&alg);
        let p = DeformParam::from_sixth_root(q(s)).unwrap();
        let (x, y) = (fs.realize_coords(&x, 3), fs.realize_coords(&y, 3));
        let lhs = zeta(&p, &alg, &product_invariant(&alg, &x, &y, &p.rule()).unwrap()).unwrap();
        let rhs = product_invariant(&alg, &zeta(&p, &alg, &x).unwrap(), &zeta(&p, &alg, &y).unwrap(), &ProductRule::standard()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_tilde_round_trips(v in coords(&p2(), 4)) {
        let back = theta_tilde_inverse(&theta_tilde(&v));
        let lifted: CoordVector<GaussQ> = v.convert(|c| GaussQ::new(c.clone(), q(0)));
        prop_assert_eq!(back, lifted);
    }

    #[test]
    fn monomials_parse_back(i in 0usize..22) {
        let alg = p2();
        let p: &PartitionFunction = &enumerate(&alg, 4)[i % enumerate(&alg, 4).len()];
        prop_assert_eq!(&PartitionFunction::parse(&alg, &p.display(&alg)).unwrap(), p);
    }
}
