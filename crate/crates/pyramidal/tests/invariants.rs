//! Cross-module invariants, property-tested on randomly generated inputs.

use proptest::prelude::*;

use pyramidal::classify::classify_pyramidal;
use pyramidal::constructions::{cyclic, dihedral, direct_product};
use pyramidal::group::PermGroup;
use pyramidal::linear::{make_field, FqMatrix};
use pyramidal::perm::Permutation;

fn random_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

fn random_group(degree: usize) -> impl Strategy<Value = PermGroup> {
    proptest::collection::vec(random_perm(degree), 1..=2)
        .prop_map(move |gens| PermGroup::close(degree, gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Even-order groups have an odd number of involutions; odd-order
    /// groups have none.
    #[test]
    fn involution_parity(g in random_group(6)) {
        let m = g.involutions().len();
        if g.order() % 2 == 0 {
            prop_assert_eq!(m % 2, 1);
        } else {
            prop_assert_eq!(m, 0);
        }
    }

    /// |class(x)| * |centralizer(x)| = |G| for every element.
    #[test]
    fn orbit_stabilizer(g in random_group(5)) {
        for x in g.elements() {
            let class = g.conjugacy_class(x).unwrap().len();
            let cent = g.centralizer(x).unwrap().order();
            prop_assert_eq!(class * cent, g.order());
        }
    }

    /// Composition of permutations is associative and inverses cancel.
    #[test]
    fn perm_algebra(a in random_perm(7), b in random_perm(7), c in random_perm(7)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
    }

    /// The Sylow 2-subgroup's order is the exact 2-part of the group order.
    #[test]
    fn sylow_two_part(g in random_group(6)) {
        let p = g.sylow2();
        let mut n = g.order();
        let mut two_part = 1usize;
        while n % 2 == 0 { n /= 2; two_part *= 2; }
        prop_assert_eq!(p.order(), two_part);
    }

    /// Quotient orders multiply back: |G/N| * |N| = |G| for N the normal
    /// closure of any element.
    #[test]
    fn quotient_order(g in random_group(5), pick in 0usize..120) {
        let x = &g.elements()[pick % g.order()];
        let n = g.normal_closure(std::slice::from_ref(x)).unwrap();
        let q = g.quotient(&n).unwrap();
        prop_assert_eq!(q.order() * n.order(), g.order());
    }

    /// Field axioms for F_9 and F_8 on random elements.
    #[test]
    fn field_axioms(ai in 0u64..9, bi in 0u64..9, ci in 0u64..9) {
        for (p, e) in [(3u64, 2u32), (2, 3)] {
            let f = make_field(p, e).unwrap();
            let q = f.size();
            let (a, b, c) = (f.element(ai % q), f.element(bi % q), f.element(ci % q));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
            if a != f.zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                prop_assert_eq!(f.pow(a, q - 1), f.one());
            }
        }
    }

    /// det(AB) = det(A) det(B) over F_5.
    #[test]
    fn det_multiplicative(es in proptest::collection::vec(0u64..5, 8)) {
        let f = make_field(5, 1).unwrap();
        let a = FqMatrix::new(2, es[..4].iter().map(|&x| f.element(x)).collect());
        let b = FqMatrix::new(2, es[4..].iter().map(|&x| f.element(x)).collect());
        let lhs = a.mul(&f, &b).det(&f);
        prop_assert_eq!(lhs, f.mul(a.det(&f), b.det(&f)));
    }

    /// Involution counting in direct products: i(GxH) = i(G)i(H) + i(G) + i(H).
    #[test]
    fn product_involutions(n in 2u32..7, m in 3u32..8) {
        let g = cyclic(n).unwrap();
        let h = dihedral(m).unwrap();
        let p = direct_product(&g, &h).unwrap();
        let (ig, ih) = (g.involutions().len(), h.involutions().len());
        prop_assert_eq!(p.involutions().len(), ig * ih + ig + ih);
        prop_assert_eq!(p.order(), g.order() * h.order());
    }

    /// Classification reports are sane for arbitrary small groups: class
    /// sizes sum to m and divide the order.
    #[test]
    fn classification_sanity(g in random_group(5)) {
        prop_assume!(g.order() > 1);
        let r = classify_pyramidal(&g).unwrap();
        prop_assert_eq!(r.class_sizes.iter().sum::<usize>(), r.m);
        for s in &r.class_sizes {
            prop_assert_eq!(r.order % s, 0);
        }
        prop_assert_eq!(r.order % r.k_order, 0);
        prop_assert_eq!(r.order % r.c_order, 0);
    }
}
