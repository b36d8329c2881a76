//! Pyramidal classification and executable lemma checks.
//!
//! A group is m-pyramidal when it has exactly m involutions forming a single
//! conjugacy class. [`classify_pyramidal`] produces the full structural
//! report; the `check_*` functions turn the structural facts about pyramidal
//! groups into runnable verdicts on concrete instances.

use serde::{Deserialize, Serialize};

use crate::group::{GroupError, PermGroup, Subgroup, Sylow2Shape};
use crate::linear::{self, FiniteField, FqMatrix, LinearError};
use crate::perm::Permutation;

/// Outcome of a hypothesis-driven check. `Violation` is reportable but is
/// expected never to occur on valid inputs: the accompanying statements are
/// theorems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "detail")]
pub enum Verdict {
    HypothesisNotMet(String),
    Verified,
    Violation(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Verdict::Violation(_))
    }
}

/// Classification outcome for one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidalReport {
    pub order: usize,
    /// involution count
    pub m: usize,
    /// conjugacy class sizes of the involutions, descending
    pub class_sizes: Vec<usize>,
    pub pyramidal: bool,
    pub solvable: bool,
    /// order of K = <involutions>
    pub k_order: usize,
    /// order of C = C_G(K)
    pub c_order: usize,
    pub sylow2: Sylow2Shape,
}

/// Full pyramidal classification of a nontrivial group.
pub fn classify_pyramidal(g: &PermGroup) -> Result<PyramidalReport, GroupError> {
    if g.order() <= 1 {
        return Err(GroupError::TrivialGroup);
    }
    let involutions = g.involutions();
    let m = involutions.len();
    let mut class_sizes = Vec::new();
    let mut assigned = vec![false; m];
    for i in 0..m {
        if assigned[i] {
            continue;
        }
        let class = g.conjugacy_class(&involutions[i])?;
        for (j, x) in involutions.iter().enumerate() {
            if class.binary_search(x).is_ok() {
                assigned[j] = true;
            }
        }
        class_sizes.push(class.len());
    }
    class_sizes.sort_unstable_by(|a, b| b.cmp(a));
    let pyramidal = m >= 1 && class_sizes.len() == 1;
    let k = g.subgroup_generated(&involutions)?;
    let c = g.centralizer_of_subgroup(&k);
    Ok(PyramidalReport {
        order: g.order(),
        m,
        class_sizes,
        pyramidal,
        solvable: g.is_solvable(),
        k_order: k.order(),
        c_order: c.order(),
        sylow2: g.sylow2_shape(),
    })
}

/// Supplement check: if H has even order and H·C_G(K) = G then H inherits
/// the full m-pyramidal structure of G.
pub fn check_property_supplement(g: &PermGroup, h: &Subgroup) -> Result<Verdict, GroupError> {
    let report = classify_pyramidal(g)?;
    if !report.pyramidal {
        return Ok(Verdict::HypothesisNotMet("G is not pyramidal".into()));
    }
    if h.order() % 2 != 0 {
        return Ok(Verdict::HypothesisNotMet("|H| is odd".into()));
    }
    let k = g.subgroup_generated(&g.involutions())?;
    let c = g.centralizer_of_subgroup(&k);
    let mut product: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
    for x in h.elements() {
        for y in c.elements() {
            product.insert(x.then(y));
        }
    }
    if product.len() != g.order() {
        return Ok(Verdict::HypothesisNotMet(format!(
            "|HC| = {} < |G| = {}",
            product.len(),
            g.order()
        )));
    }
    let h_report = classify_pyramidal(&h.to_group())?;
    if h_report.pyramidal && h_report.m == report.m {
        Ok(Verdict::Verified)
    } else {
        Ok(Verdict::Violation(format!(
            "H has {} involutions in {} classes, expected {} in one",
            h_report.m,
            h_report.class_sizes.len(),
            report.m
        )))
    }
}

/// Quotient check: for H normal of odd order and an involution ε, counts
/// ℓ = |{h in H : h^ε = h^-1}| and verifies that G/H is (m/ℓ)-pyramidal.
pub fn check_property_quotient(
    g: &PermGroup,
    h: &Subgroup,
    epsilon: &Permutation,
) -> Result<(usize, Verdict), GroupError> {
    if h.order() % 2 == 0 {
        return Err(GroupError::NotNormal);
    }
    if !g.is_normal(h) {
        return Err(GroupError::NotNormal);
    }
    if !epsilon.is_involution() || !g.contains(epsilon) {
        return Err(GroupError::NotAMember);
    }
    let report = classify_pyramidal(g)?;
    let ell = h
        .elements()
        .iter()
        .filter(|x| x.conjugate_by(epsilon) == x.inverse())
        .count();
    if !report.pyramidal {
        return Ok((ell, Verdict::HypothesisNotMet("G is not pyramidal".into())));
    }
    if report.m % ell != 0 {
        return Ok((
            ell,
            Verdict::Violation(format!("l = {ell} does not divide m = {}", report.m)),
        ));
    }
    let quotient = g.quotient(h)?;
    let q_report = classify_pyramidal(&quotient)?;
    let expected = report.m / ell;
    if q_report.pyramidal && q_report.m == expected {
        Ok((ell, Verdict::Verified))
    } else {
        Ok((
            ell,
            Verdict::Violation(format!(
                "G/H has {} involutions in {} classes, expected {} in one",
                q_report.m,
                q_report.class_sizes.len(),
                expected
            )),
        ))
    }
}

/// Normal 2-subgroup check: for G m-pyramidal with m prime and H a normal
/// 2-subgroup, |H| ≡ 1 mod m.
pub fn check_property_2part(g: &PermGroup, h: &Subgroup) -> Result<Verdict, GroupError> {
    let report = classify_pyramidal(g)?;
    if !report.pyramidal || !crate::arith::is_prime(report.m as u64) {
        return Ok(Verdict::HypothesisNotMet(
            "G is not m-pyramidal with m prime".into(),
        ));
    }
    if !h.order().is_power_of_two() {
        return Ok(Verdict::HypothesisNotMet("H is not a 2-group".into()));
    }
    if !g.is_normal(h) {
        return Ok(Verdict::HypothesisNotMet("H is not normal".into()));
    }
    if h.order() % report.m == 1 {
        Ok(Verdict::Verified)
    } else {
        Ok(Verdict::Violation(format!(
            "|H| = {} is {} mod m = {}",
            h.order(),
            h.order() % report.m,
            report.m
        )))
    }
}

/// Report of the dual 2-transitivity computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoTransitiveReport {
    /// H = <mats> acts transitively on the nonzero vectors
    pub h_transitive: bool,
    /// V ⋊ H is 2-transitive on the q^n points
    pub affine_two_transitive: bool,
}

impl TwoTransitiveReport {
    pub fn verdict(&self) -> Verdict {
        if self.h_transitive == self.affine_two_transitive {
            Verdict::Verified
        } else {
            Verdict::Violation(format!(
                "H transitive on V\\{{0}}: {}, V⋊H 2-transitive: {}",
                self.h_transitive, self.affine_two_transitive
            ))
        }
    }
}

/// Computes, by two independent routes, (a) transitivity of H = <mats> on
/// the nonzero vectors of F_q^n and (b) 2-transitivity of V ⋊ H on all q^n
/// points. The two answers must agree.
pub fn check_two_transitive(
    field: &FiniteField,
    n: usize,
    mats: &[FqMatrix],
) -> Result<TwoTransitiveReport, LinearError> {
    let q = field.size();
    let size = (q as usize).pow(n as u32);
    // route (a): orbit of the first nonzero vector under the matrix action
    let h_transitive = {
        if size <= 1 {
            true
        } else {
            let mut seen = vec![false; size];
            seen[1] = true;
            let mut queue = vec![1usize];
            let mut count = 1usize;
            while let Some(idx) = queue.pop() {
                let v = linear::vector_from_index(field, idx, n);
                for a in mats {
                    let mut w = vec![field.zero(); n];
                    for (i, &vi) in v.iter().enumerate() {
                        for (j, wj) in w.iter_mut().enumerate() {
                            *wj = field.add(*wj, field.mul(vi, a.get(i, j)));
                        }
                    }
                    let widx = linear::vector_index(field, &w);
                    if !seen[widx] {
                        seen[widx] = true;
                        count += 1;
                        queue.push(widx);
                    }
                }
            }
            count == size - 1
        }
    };
    // route (b): orbit of the ordered pair (0, 1) in the affine permutation group
    let translations: Vec<Vec<_>> = (0..n)
        .map(|i| {
            let mut t = vec![field.zero(); n];
            t[i] = field.one();
            t
        })
        .collect();
    let affine = linear::affine_to_perm(field, n, mats, &translations)?;
    let affine_two_transitive = {
        if size < 2 {
            false
        } else {
            let mut seen = std::collections::HashSet::new();
            seen.insert((0u32, 1u32));
            let mut queue = vec![(0u32, 1u32)];
            while let Some((x, y)) = queue.pop() {
                for g in affine.generators() {
                    let pair = (g.apply(x), g.apply(y));
                    if seen.insert(pair) {
                        queue.push(pair);
                    }
                }
            }
            seen.len() == size * (size - 1)
        }
    };
    Ok(TwoTransitiveReport {
        h_transitive,
        affine_two_transitive,
    })
}

/// Mersenne structure check: for G m-pyramidal with K = <involutions>
/// elementary abelian of order 2^n and m = 2^n - 1 prime ≠ 7, the quotient
/// Q = G/C_G(K) has order m or m·n and a normal subgroup of order m.
pub fn check_mersenne_structure(g: &PermGroup) -> Result<Verdict, GroupError> {
    let report = classify_pyramidal(g)?;
    if !report.pyramidal {
        return Ok(Verdict::HypothesisNotMet("G is not pyramidal".into()));
    }
    let m = report.m;
    let k = g.subgroup_generated(&g.involutions())?;
    let elementary_abelian = k.order().is_power_of_two()
        && k.elements()
            .iter()
            .all(|x| x.is_identity() || x.is_involution())
        && k.elements()
            .iter()
            .all(|a| k.elements().iter().all(|b| a.commutes_with(b)));
    if !elementary_abelian {
        return Ok(Verdict::HypothesisNotMet(
            "K is not an elementary abelian 2-group".into(),
        ));
    }
    let n = k.order().trailing_zeros() as usize;
    if k.order() != m + 1 || !crate::arith::is_prime(m as u64) || m == 7 {
        return Ok(Verdict::HypothesisNotMet(format!(
            "m = {m} is not a Mersenne prime (≠ 7) matching |K| = {}",
            k.order()
        )));
    }
    let c = g.centralizer_of_subgroup(&k);
    let quotient = g.quotient(&c)?;
    let q_order = quotient.order();
    if q_order != m && q_order != m * n {
        return Ok(Verdict::Violation(format!(
            "|G/C| = {q_order}, expected {m} or {}",
            m * n
        )));
    }
    // a normal subgroup of order m generated by an element of order m
    let has_normal_cm = quotient
        .elements()
        .iter()
        .filter(|x| x.order() as usize == m)
        .any(|x| {
            let s = quotient
                .subgroup_generated(std::slice::from_ref(x))
                .expect("table element");
            quotient.is_normal(&s)
        });
    if has_normal_cm {
        Ok(Verdict::Verified)
    } else {
        Ok(Verdict::Violation(
            "G/C has no normal subgroup of order m".into(),
        ))
    }
}

/// Checkable direction of the dihedral recognition: when no two involutions
/// commute, G is generated by them and m is prime, G must be dihedral of
/// order 2m (a cyclic index-2 subgroup inverted by an outside involution).
pub fn check_dihedral_recognition(g: &PermGroup) -> Result<Verdict, GroupError> {
    let involutions = g.involutions();
    let m = involutions.len();
    if m == 0 || !crate::arith::is_prime(m as u64) {
        return Ok(Verdict::HypothesisNotMet("m is not prime".into()));
    }
    let any_commuting = involutions
        .iter()
        .enumerate()
        .any(|(i, x)| involutions[..i].iter().any(|y| x.commutes_with(y)));
    if any_commuting {
        return Ok(Verdict::HypothesisNotMet("two involutions commute".into()));
    }
    let k = g.subgroup_generated(&involutions)?;
    if k.order() != g.order() {
        return Ok(Verdict::HypothesisNotMet(
            "G is not generated by its involutions".into(),
        ));
    }
    if g.order() != 2 * m {
        return Ok(Verdict::Violation(format!(
            "|G| = {} but 2m = {}",
            g.order(),
            2 * m
        )));
    }
    let has_inverted_cyclic = g
        .elements()
        .iter()
        .filter(|c| c.order() as usize == m)
        .any(|c| {
            involutions
                .iter()
                .any(|t| c.conjugate_by(t) == c.inverse())
        });
    if has_inverted_cyclic {
        Ok(Verdict::Verified)
    } else {
        Ok(Verdict::Violation(
            "no cyclic index-2 subgroup inverted by an involution".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{affine_sl2, cyclic, dihedral, direct_product, homocyclic_singer};
    use crate::linear::{make_field, singer_matrix, sl2, FqMatrix};

    fn s4() -> PermGroup {
        PermGroup::close(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn classify_d10_s4() {
        let r = classify_pyramidal(&dihedral(5).unwrap()).unwrap();
        assert!(r.pyramidal && r.m == 5 && r.solvable && r.order == 10);
        assert_eq!(r.class_sizes, vec![5]);
        assert_eq!(r.k_order, 10);
        assert_eq!(r.c_order, 1);
        assert_eq!(r.sylow2, Sylow2Shape::Cyclic);

        let r = classify_pyramidal(&s4()).unwrap();
        assert!(!r.pyramidal);
        assert_eq!(r.m, 9);
        assert_eq!(r.class_sizes, vec![6, 3]);

        assert_eq!(
            classify_pyramidal(&PermGroup::trivial(1)),
            Err(GroupError::TrivialGroup)
        );
    }

    #[test]
    fn classification_is_isomorphism_sane() {
        let g = dihedral(7).unwrap();
        let r1 = classify_pyramidal(&g).unwrap();
        // conjugate all generators by a fixed permutation
        let c = Permutation::from_cycles(7, &[&[0, 3, 5]]).unwrap();
        let gens: Vec<Permutation> = g
            .generators()
            .iter()
            .map(|x| x.conjugate_by(&c))
            .collect();
        let g2 = PermGroup::close(7, gens).unwrap();
        let r2 = classify_pyramidal(&g2).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn supplement_check_cases() {
        let g = dihedral(5).unwrap();
        let whole = g.subgroup_generated(g.generators()).unwrap();
        assert_eq!(
            check_property_supplement(&g, &whole).unwrap(),
            Verdict::Verified
        );
        // C = 1 for D_10, so a proper reflection subgroup cannot supplement
        let refl = g.subgroup_generated(&g.involutions()[..1]).unwrap();
        assert!(matches!(
            check_property_supplement(&g, &refl).unwrap(),
            Verdict::HypothesisNotMet(_)
        ));
        // affine group: C is trivial, so the point stabilizer fails HC = G too
        let a = affine_sl2(3).unwrap();
        let stab = a.point_stabilizer(0);
        assert_eq!(stab.order(), 24);
        assert!(matches!(
            check_property_supplement(&a, &stab).unwrap(),
            Verdict::HypothesisNotMet(_)
        ));
    }

    #[test]
    fn quotient_check_cases() {
        // trivial H: quotient is G itself
        let g = dihedral(5).unwrap();
        let triv = g.subgroup_generated(&[]).unwrap();
        let eps = g.involutions()[0].clone();
        let (ell, v) = check_property_quotient(&g, &triv, &eps).unwrap();
        assert_eq!(ell, 1);
        assert_eq!(v, Verdict::Verified);

        // D_30 with H = C_15: every rotation is inverted
        let g = dihedral(15).unwrap();
        let rot = g
            .elements()
            .iter()
            .find(|x| x.order() == 15)
            .cloned()
            .unwrap();
        let h = g.subgroup_generated(&[rot]).unwrap();
        let eps = g.involutions()[0].clone();
        let (ell, v) = check_property_quotient(&g, &h, &eps).unwrap();
        assert_eq!(ell, 15);
        assert_eq!(v, Verdict::Verified);

        // errors on a non-normal or even H
        let refl = g.subgroup_generated(&g.involutions()[..1]).unwrap();
        assert!(check_property_quotient(&g, &refl, &eps).is_err());
    }

    #[test]
    fn quotient_check_affine() {
        let g = affine_sl2(3).unwrap();
        let translations = translation_subgroup(&g);
        assert_eq!(translations.order(), 9);
        let eps = g.involutions()[0].clone();
        let (ell, v) = check_property_quotient(&g, &translations, &eps).unwrap();
        assert_eq!(ell, 9);
        assert_eq!(v, Verdict::Verified);
        let q = g.quotient(&translations).unwrap();
        assert_eq!(q.order(), 24);
        assert_eq!(q.involutions().len(), 1);
    }

    fn translation_subgroup(g: &PermGroup) -> Subgroup {
        let field = make_field(3, 1).unwrap();
        let perms = linear::basis_translation_perms(&field, 2).unwrap();
        g.subgroup_generated(&perms).unwrap()
    }

    #[test]
    fn two_part_check_cases() {
        let g = homocyclic_singer(2, 2).unwrap();
        let h = g.sylow2();
        assert_eq!(h.order(), 16);
        assert!(g.is_normal(&h));
        assert_eq!(check_property_2part(&g, &h).unwrap(), Verdict::Verified);

        let g = homocyclic_singer(1, 5).unwrap();
        let h = g.sylow2();
        assert_eq!(h.order(), 32);
        assert_eq!(check_property_2part(&g, &h).unwrap(), Verdict::Verified);

        // trivial H: 1 = 1 mod m
        let d = dihedral(5).unwrap();
        let triv = d.subgroup_generated(&[]).unwrap();
        assert_eq!(check_property_2part(&d, &triv).unwrap(), Verdict::Verified);
    }

    #[test]
    fn two_transitive_checks() {
        // trivial H on F_3^1: both sides false
        let f3 = make_field(3, 1).unwrap();
        let id = FqMatrix::identity(1);
        let r = check_two_transitive(&f3, 1, &[id]).unwrap();
        assert!(!r.h_transitive && !r.affine_two_transitive);
        assert_eq!(r.verdict(), Verdict::Verified);

        // the Singer cycle of F_2^3: both sides true
        let (_f, singer) = singer_matrix(3).unwrap();
        let f2 = crate::linear::binary_field();
        let r = check_two_transitive(&f2, 3, &[singer]).unwrap();
        assert!(r.h_transitive && r.affine_two_transitive);
        assert_eq!(r.verdict(), Verdict::Verified);

        // diagonal subgroup of GL(2,3): both sides false
        let f3 = make_field(3, 1).unwrap();
        let d1 = FqMatrix::from_rows(&[
            vec![f3.element(2), f3.element(0)],
            vec![f3.element(0), f3.element(1)],
        ]);
        let d2 = FqMatrix::from_rows(&[
            vec![f3.element(1), f3.element(0)],
            vec![f3.element(0), f3.element(2)],
        ]);
        let r = check_two_transitive(&f3, 2, &[d1, d2]).unwrap();
        assert!(!r.h_transitive && !r.affine_two_transitive);
        assert_eq!(r.verdict(), Verdict::Verified);

        // full SL(2,3): transitive on the 8 nonzero vectors, so 2-transitive
        let (field, mats) = sl2(3).unwrap();
        let r = check_two_transitive(&field, 2, &mats).unwrap();
        assert!(r.h_transitive && r.affine_two_transitive);
    }

    #[test]
    fn mersenne_structure_checks() {
        assert_eq!(
            check_mersenne_structure(&homocyclic_singer(1, 2).unwrap()).unwrap(),
            Verdict::Verified
        );
        assert_eq!(
            check_mersenne_structure(&homocyclic_singer(1, 5).unwrap()).unwrap(),
            Verdict::Verified
        );
        // D_10: K = D_10 is not an elementary abelian 2-group
        assert!(matches!(
            check_mersenne_structure(&dihedral(5).unwrap()).unwrap(),
            Verdict::HypothesisNotMet(_)
        ));
    }

    #[test]
    fn dihedral_recognition() {
        assert_eq!(
            check_dihedral_recognition(&dihedral(5).unwrap()).unwrap(),
            Verdict::Verified
        );
        assert_eq!(
            check_dihedral_recognition(&dihedral(3).unwrap()).unwrap(),
            Verdict::Verified
        );
        // A_4: involutions commute
        let a4 = PermGroup::close(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(
            check_dihedral_recognition(&a4).unwrap(),
            Verdict::HypothesisNotMet(_)
        ));
        // C_6 x C_2? m = 3 but abelian: commuting involutions
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert!(matches!(
            check_dihedral_recognition(&g).unwrap(),
            Verdict::HypothesisNotMet(_)
        ));
    }

    #[test]
    fn report_json_shape() {
        let r = classify_pyramidal(&dihedral(5).unwrap()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["order"], 10);
        assert_eq!(json["m"], 5);
        assert_eq!(json["class_sizes"], serde_json::json!([5]));
        assert_eq!(json["pyramidal"], true);
        assert_eq!(json["solvable"], true);
        assert_eq!(json["k_order"], 10);
        assert_eq!(json["c_order"], 1);
        assert_eq!(json["sylow2"], "cyclic");
    }
}
