//! Explicit permutation models of the pyramidal group families: dihedral
//! groups, C_m ⋊ C_2^a, homocyclic Singer extensions H_{l,n} ⋊ <γ>, affine
//! F_q² ⋊ SL(2,q), general N ⋊ A semidirect products with inversion, and
//! order witnesses for the membership oracle.

use thiserror::Error;

use crate::arith::{self, ArithError, MembershipSet};
use crate::group::{GroupError, PermGroup};
use crate::linear::{self, LinearError};
use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("dihedral groups need m >= 3")]
    DihedralTooSmall,
    #[error("2^{a} does not divide m - 1 = {m} - 1")]
    ExponentTooLarge { m: u64, a: u32 },
    #[error("{n} is not the order of any m-pyramidal group for m = {m}")]
    NotInOrderSet { m: u64, n: u64 },
    #[error("the acting group must be given on the element table of N")]
    ActionDegreeMismatch,
    #[error("N must be abelian of odd order")]
    BadNormalSubgroup,
    #[error("a supplied map is not an automorphism of N")]
    NotAnAutomorphism,
    #[error("the inversion map is not in the generated acting group")]
    InversionMissing,
    #[error("the acting group has more than one involution")]
    ExtraInvolutions,
    #[error("constructed group failed its pyramidality postcondition")]
    PostconditionFailed,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linear(#[from] LinearError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// C_n as the n-cycle on n points.
pub fn cyclic(n: u32) -> Result<PermGroup, ConstructError> {
    if n == 0 {
        return Err(ConstructError::DihedralTooSmall);
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let rotation = Permutation::new((0..n).map(|i| (i + 1) % n).collect())?;
    Ok(PermGroup::close(n as usize, vec![rotation])?)
}

/// D_{2m} on m points: an m-cycle and the reflection i -> -i.
pub fn dihedral(m: u32) -> Result<PermGroup, ConstructError> {
    if m < 3 {
        return Err(ConstructError::DihedralTooSmall);
    }
    let rotation = Permutation::new((0..m).map(|i| (i + 1) % m).collect())?;
    let reflection = Permutation::new((0..m).map(|i| (m - i) % m).collect())?;
    Ok(PermGroup::close(m as usize, vec![rotation, reflection])?)
}

/// G × H on the disjoint union of their point sets.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> Result<PermGroup, ConstructError> {
    let dg = g.degree();
    let degree = dg + h.degree();
    let mut gens = Vec::new();
    for a in g.generators() {
        let mut images: Vec<u32> = a.images().to_vec();
        images.extend(dg as u32..degree as u32);
        gens.push(Permutation::new(images)?);
    }
    for b in h.generators() {
        let mut images: Vec<u32> = (0..dg as u32).collect();
        images.extend(b.images().iter().map(|&y| y + dg as u32));
        gens.push(Permutation::new(images)?);
    }
    Ok(PermGroup::close(degree, gens)?)
}

/// C_m ⋊ C_{2^a} on m points, for m an odd prime and 2^a | m - 1: the cyclic
/// shift together with multiplication by s = g^((m-1)/2^a) for the least
/// primitive root g mod m. The unique involution of the acting group is the
/// inversion x -> -x, so the result is m-pyramidal.
pub fn cm_semidirect_2group(m: u64, a: u32) -> Result<PermGroup, ConstructError> {
    if m < 3 || !arith::is_prime(m) || m % 2 == 0 {
        return Err(ConstructError::Arith(ArithError::MNotOddPrime(m)));
    }
    let (t, _) = arith::two_adic_split(m);
    if a == 0 || a > t {
        return Err(ConstructError::ExponentTooLarge { m, a });
    }
    let g = least_primitive_root(m);
    let s = pow_mod(g, (m - 1) >> a, m);
    let shift = Permutation::new((0..m as u32).map(|i| (i + 1) % m as u32).collect())?;
    let mult = Permutation::new(
        (0..m).map(|i| (i * s % m) as u32).collect(),
    )?;
    Ok(PermGroup::close(m as usize, vec![shift, mult])?)
}

fn pow_mod(mut b: u64, mut n: u64, m: u64) -> u64 {
    let mut r: u64 = 1 % m;
    b %= m;
    while n > 0 {
        if n & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        n >>= 1;
    }
    r
}

fn least_primitive_root(m: u64) -> u64 {
    let factors = arith::factor(m - 1).expect("m >= 3");
    'outer: for g in 2..m {
        for &(f, _) in &factors {
            if pow_mod(g, (m - 1) / f, m) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("primitive roots exist modulo a prime")
}

/// H_{l,n} ⋊ <γ> on the 2^{nl} elements of the homocyclic group
/// H_{l,n} = (Z/2^l)^n, with γ the Singer lift automorphism of order
/// m = 2^n - 1. The result is m-pyramidal of order 2^{nl} · m.
pub fn homocyclic_singer(l: u32, n: u32) -> Result<PermGroup, ConstructError> {
    let gamma = linear::singer_lift(l, n)?;
    let bits = n * l;
    if bits > 20 || (1usize << bits) > 100_000 {
        return Err(ConstructError::Linear(LinearError::SpaceTooLarge));
    }
    let size = 1usize << bits;
    let dim = n as usize;
    let mask = (1u64 << l) - 1;
    let encode = |v: &[u64]| -> usize {
        let mut idx: usize = 0;
        for &c in v.iter().rev() {
            idx = (idx << l) | c as usize;
        }
        idx
    };
    let decode = |mut idx: usize| -> Vec<u64> {
        let mut v = Vec::with_capacity(dim);
        for _ in 0..dim {
            v.push(idx as u64 & mask);
            idx >>= l;
        }
        v
    };
    let mut gens = Vec::new();
    for i in 0..dim {
        let images: Vec<u32> = (0..size)
            .map(|idx| {
                let mut v = decode(idx);
                v[i] = (v[i] + 1) & mask;
                encode(&v) as u32
            })
            .collect();
        gens.push(Permutation::new(images)?);
    }
    let gamma_images: Vec<u32> = (0..size)
        .map(|idx| encode(&gamma.apply_row(&decode(idx))) as u32)
        .collect();
    gens.push(Permutation::new(gamma_images)?);
    Ok(PermGroup::close(size, gens)?)
}

/// F_q² ⋊ SL(2,q) on the q² affine points, for q an odd prime power with
/// q² ≤ 1000. This group is q²-pyramidal of order q³(q² - 1).
pub fn affine_sl2(q: u64) -> Result<PermGroup, ConstructError> {
    if q * q > 1000 {
        return Err(ConstructError::Linear(LinearError::OutOfRange));
    }
    let (field, mats) = linear::sl2(q)?;
    let translations = vec![
        vec![field.one(), field.zero()],
        vec![field.zero(), field.one()],
    ];
    Ok(linear::affine_to_perm(&field, 2, &mats, &translations)?)
}

/// N ⋊ A on the element table of N, where N is abelian of odd order and A
/// is a list of automorphisms of N (permutations of its canonical element
/// table) generating a group whose unique involution is the inversion map.
/// The result is |N|-pyramidal.
pub fn npyr_semidirect(n: &PermGroup, actions: &[Permutation]) -> Result<PermGroup, ConstructError> {
    if n.order() % 2 == 0 {
        return Err(ConstructError::BadNormalSubgroup);
    }
    let gens = n.generators();
    if gens.iter().any(|a| gens.iter().any(|b| !a.commutes_with(b))) {
        return Err(ConstructError::BadNormalSubgroup);
    }
    let size = n.order();
    for alpha in actions {
        if alpha.degree() != size {
            return Err(ConstructError::ActionDegreeMismatch);
        }
        // automorphism test over the full multiplication table
        for (i, x) in n.elements().iter().enumerate() {
            for (j, y) in n.elements().iter().enumerate() {
                let xy = n
                    .element_index(&x.then(y))
                    .expect("closed under products");
                let lhs = alpha.apply(xy as u32);
                let img_x = alpha.apply(i as u32);
                let img_y = alpha.apply(j as u32);
                let rhs = n.element_index(
                    &n.elements()[img_x as usize].then(&n.elements()[img_y as usize]),
                ).expect("closed under products") as u32;
                if lhs != rhs {
                    return Err(ConstructError::NotAnAutomorphism);
                }
            }
        }
    }
    let acting = PermGroup::close(size, actions.to_vec())?;
    let inversion = n.table_perm(|x| x.inverse())?;
    if !acting.contains(&inversion) {
        return Err(ConstructError::InversionMissing);
    }
    let acting_involutions = acting.involutions();
    if acting_involutions.len() != 1 || acting_involutions[0] != inversion {
        return Err(ConstructError::ExtraInvolutions);
    }
    let mut gens: Vec<Permutation> = n
        .generators()
        .iter()
        .map(|g| n.right_translation(g))
        .collect::<Result<Vec<_>, _>>()?;
    gens.extend(actions.iter().cloned());
    Ok(PermGroup::close(size, gens)?)
}

/// An m-pyramidal group of order N, built from the order-set decomposition:
/// a Z_m order 2^a·m·d yields C_d × (C_m ⋊ C_{2^a}); a Y_m order with
/// a = n·l yields C_d × (H_{l,n} ⋊ <γ>). The Z_m route is preferred when
/// both apply. The result is verified m-pyramidal before being returned.
pub fn witness_group(m: u64, order: u64) -> Result<PermGroup, ConstructError> {
    let (member, set) = arith::in_x(m, order)?;
    if !member {
        return Err(ConstructError::NotInOrderSet { m, n: order });
    }
    let (a, odd) = arith::two_adic_valuation(order);
    let d = odd / m;
    let odd_factor = cyclic(d as u32)?;
    let core = match set {
        MembershipSet::Z | MembershipSet::Both => cm_semidirect_2group(m, a)?,
        MembershipSet::Y => {
            let n = arith::mersenne_exponent(m).expect("Y membership requires Mersenne m");
            homocyclic_singer(a / n, n)?
        }
        MembershipSet::None => unreachable!("member implies a set tag"),
    };
    let group = direct_product(&odd_factor, &core)?;
    let report = crate::classify::classify_pyramidal(&group)?;
    if !report.pyramidal || report.m as u64 != m || report.order as u64 != order {
        return Err(ConstructError::PostconditionFailed);
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_pyramidal;

    #[test]
    fn cyclic_and_dihedral() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(cyclic(2).unwrap().involutions().len(), 1);
        let d6 = dihedral(3).unwrap();
        assert_eq!(d6.order(), 6);
        let r = classify_pyramidal(&d6).unwrap();
        assert!(r.pyramidal && r.m == 3);
        let d30 = dihedral(15).unwrap();
        assert_eq!(d30.order(), 30);
        assert_eq!(d30.involutions().len(), 15);
        assert!(dihedral(2).is_err());
    }

    #[test]
    fn direct_products() {
        let d10 = dihedral(5).unwrap();
        let triv = PermGroup::trivial(1);
        assert_eq!(direct_product(&d10, &triv).unwrap().order(), 10);

        let s3 = dihedral(3).unwrap();
        let c7 = cyclic(7).unwrap();
        let g = direct_product(&s3, &c7).unwrap();
        assert_eq!(g.order(), 42);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 3);

        let d6 = dihedral(3).unwrap();
        let gg = direct_product(&d10, &d6).unwrap();
        let rr = classify_pyramidal(&gg).unwrap();
        assert_eq!(rr.m, 23); // 5*3 + 5 + 3
        assert!(!rr.pyramidal);
    }

    #[test]
    fn involution_count_of_products_is_multiplicative_plus_sum() {
        let cases = [
            (dihedral(3).unwrap(), cyclic(4).unwrap()),
            (dihedral(5).unwrap(), dihedral(3).unwrap()),
            (cyclic(6).unwrap(), cyclic(2).unwrap()),
        ];
        for (g, h) in cases {
            let ig = g.involutions().len();
            let ih = h.involutions().len();
            let p = direct_product(&g, &h).unwrap();
            assert_eq!(p.involutions().len(), ig * ih + ig + ih);
        }
    }

    #[test]
    fn cm_semidirect_cases() {
        let g = cm_semidirect_2group(5, 1).unwrap();
        assert_eq!(g.order(), 10);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 5);

        let g = cm_semidirect_2group(5, 2).unwrap();
        assert_eq!(g.order(), 20);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 5);

        let g = cm_semidirect_2group(13, 2).unwrap();
        assert_eq!(g.order(), 52);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 13);

        assert!(matches!(
            cm_semidirect_2group(5, 3),
            Err(ConstructError::ExponentTooLarge { .. })
        ));
        assert!(matches!(
            cm_semidirect_2group(13, 3),
            Err(ConstructError::ExponentTooLarge { .. })
        ));
    }

    #[test]
    fn homocyclic_singer_cases() {
        let g = homocyclic_singer(1, 2).unwrap();
        assert_eq!(g.order(), 12);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 3 && r.class_sizes == vec![3]);

        let g = homocyclic_singer(2, 2).unwrap();
        assert_eq!(g.order(), 48);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 3);

        let g = homocyclic_singer(1, 5).unwrap();
        assert_eq!(g.order(), 992);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 31);
    }

    #[test]
    fn homocyclic_two_part_lemma() {
        // 2-adic valuation of the order is a multiple of n, and the normal
        // 2-subgroup has order 1 mod m
        for (l, n) in [(1u32, 2u32), (2, 2), (3, 2), (1, 5)] {
            let g = homocyclic_singer(l, n).unwrap();
            let m = (1u64 << n) - 1;
            let (a, _) = arith::two_adic_valuation(g.order() as u64);
            assert_eq!(a % n, 0);
            assert_eq!((1u64 << (n * l)) % m, 1);
            // and with an odd cyclic factor attached
            let prod = direct_product(&cyclic(3).unwrap(), &g).unwrap();
            let (a2, _) = arith::two_adic_valuation(prod.order() as u64);
            assert_eq!(a2 % n, 0);
        }
    }

    #[test]
    fn affine_sl2_small() {
        let g = affine_sl2(3).unwrap();
        assert_eq!(g.order(), 216);
        assert_eq!(g.degree(), 9);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 9 && r.solvable);
    }

    #[test]
    fn affine_sl2_seven() {
        let g = affine_sl2(7).unwrap();
        assert_eq!(g.order(), 16464);
        assert_eq!(g.degree(), 49);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 49);
        assert!(affine_sl2(33).is_err());
    }

    #[test]
    fn npyr_involutions_form_the_inversion_coset() {
        // the involutions are exactly the |N| elements n·ι, one conjugacy class
        let n = direct_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap();
        let iota = n.table_perm(|x| x.inverse()).unwrap();
        let g = npyr_semidirect(&n, std::slice::from_ref(&iota)).unwrap();
        let translations = PermGroup::close(
            9,
            n.generators()
                .iter()
                .map(|x| n.right_translation(x).unwrap())
                .collect(),
        )
        .unwrap();
        let mut coset: Vec<Permutation> = translations
            .elements()
            .iter()
            .map(|t| t.then(&iota))
            .collect();
        coset.sort_unstable();
        assert_eq!(g.involutions(), coset);
        let class = g.conjugacy_class(&coset[0]).unwrap();
        assert_eq!(class.len(), 9);
    }

    #[test]
    fn npyr_semidirect_cases() {
        // N = C_5, A = {inversion}: D_10
        let c5 = cyclic(5).unwrap();
        let inv = c5.table_perm(|x| x.inverse()).unwrap();
        let g = npyr_semidirect(&c5, &[inv]).unwrap();
        assert_eq!(g.order(), 10);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 5);

        // N = C_3 x C_3, A = {-I}: order 18, 9-pyramidal
        let n = direct_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap();
        let inv = n.table_perm(|x| x.inverse()).unwrap();
        let g = npyr_semidirect(&n, &[inv]).unwrap();
        assert_eq!(g.order(), 18);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 9);

        // N = C_9, A = {x -> x^2} of order 6 containing inversion
        let c9 = cyclic(9).unwrap();
        let square = c9.table_perm(|x| x.then(x)).unwrap();
        let g = npyr_semidirect(&c9, &[square]).unwrap();
        assert_eq!(g.order(), 54);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 9);
    }

    #[test]
    fn npyr_semidirect_rejects_bad_inputs() {
        // even N
        let c4 = cyclic(4).unwrap();
        let inv = c4.table_perm(|x| x.inverse()).unwrap();
        assert_eq!(
            npyr_semidirect(&c4, &[inv]),
            Err(ConstructError::BadNormalSubgroup)
        );
        // acting group without inversion
        let c5 = cyclic(5).unwrap();
        let id = Permutation::identity(5);
        assert_eq!(
            npyr_semidirect(&c5, &[id]),
            Err(ConstructError::InversionMissing)
        );
        // acting group with several involutions: on N = C_3 x C_5 take the
        // full inversion and the map inverting only the C_5 factor
        let n = direct_product(&cyclic(3).unwrap(), &cyclic(5).unwrap()).unwrap();
        let inv = n.table_perm(|x| x.inverse()).unwrap();
        let half = n
            .table_perm(|x| {
                let xinv = x.inverse();
                let images: Vec<u32> = (0..8u32)
                    .map(|p| if p < 3 { x.apply(p) } else { xinv.apply(p) })
                    .collect();
                Permutation::new(images).unwrap()
            })
            .unwrap();
        assert_eq!(
            npyr_semidirect(&n, &[inv, half]),
            Err(ConstructError::ExtraInvolutions)
        );
    }

    #[test]
    fn witness_groups() {
        let g = witness_group(5, 20).unwrap();
        assert_eq!(g.order(), 20);

        let g = witness_group(3, 48).unwrap();
        assert_eq!(g.order(), 48);
        let r = classify_pyramidal(&g).unwrap();
        assert!(r.pyramidal && r.m == 3);

        assert!(matches!(
            witness_group(5, 40),
            Err(ConstructError::NotInOrderSet { m: 5, n: 40 })
        ));
        assert!(matches!(
            witness_group(7, 14),
            Err(ConstructError::Arith(ArithError::UnsupportedSeven))
        ));
    }
}
