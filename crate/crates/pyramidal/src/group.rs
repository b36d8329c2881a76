//! Finite permutation groups with full element tables.
//!
//! Groups are closed eagerly at construction time and stored as a sorted
//! element table (canonical order = lexicographic on image sequences), so
//! every operation here is an exhaustive, directly auditable computation.
//! This is a desk-scale engine: closures are capped at [`crate::element_cap`]
//! elements and there are no stabilizer chains.

use std::collections::HashSet;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("image table is not a bijection on 0..{degree}")]
    NotABijection { degree: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("group too large for desk scale (element cap {cap} exceeded)")]
    ElementCapExceeded { cap: usize },
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("operation requires a nontrivial group")]
    TrivialGroup,
}

/// A finitely generated permutation group with its full element table.
///
/// Immutable after construction; the table is closed, sorted canonically and
/// always contains the identity.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

/// A subgroup given by its member elements (sorted canonically).
///
/// Carries no back-reference to the parent; operations that need the parent
/// take it explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    degree: usize,
    elements: Vec<Permutation>,
}

/// Two groups are equal when they are the same subgroup of the same
/// symmetric group, whatever their generating sets.
impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

/// Breadth-first closure of a generator set under composition.
fn close_elements(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, GroupError> {
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = vec![identity];
    while let Some(e) = queue.pop() {
        for g in generators {
            let x = e.then(g);
            if !seen.contains(&x) {
                if seen.len() >= cap {
                    return Err(GroupError::ElementCapExceeded { cap });
                }
                seen.insert(x.clone());
                queue.push(x);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(elements)
}

/// Greedy small generating set for a closed element table: scan the table in
/// canonical order and keep every element that enlarges the closure so far.
fn greedy_generators(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current: HashSet<Permutation> = HashSet::new();
    current.insert(Permutation::identity(degree));
    for e in elements {
        if !current.contains(e) {
            gens.push(e.clone());
            let closed = close_elements(degree, &gens, elements.len() + 1)
                .expect("closure of a subset of a closed table cannot exceed it");
            current = closed.into_iter().collect();
            if current.len() == elements.len() {
                break;
            }
        }
    }
    gens
}

impl PermGroup {
    /// Closes a generator list into a full group.
    ///
    /// An empty list yields the trivial group of the given degree.
    pub fn close(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::NotABijection { degree });
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let elements = close_elements(degree, &generators, crate::element_cap())?;
        Ok(PermGroup {
            degree,
            generators,
            elements,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::close(degree, Vec::new()).expect("trivial group")
    }

    /// Wraps an already closed element set as a group, with a greedy small
    /// generating set.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let generators = greedy_generators(degree, &elements);
        debug_assert_eq!(
            close_elements(degree, &generators, elements.len() + 1)
                .map(|e| e.len())
                .unwrap_or(0),
            elements.len(),
            "element set is not closed"
        );
        PermGroup {
            degree,
            generators,
            elements,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// The full element table in canonical order (identity first).
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Position of an element in the canonical table.
    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// The elements `x != 1` with `x^2 = 1`, in canonical order.
    pub fn involutions(&self) -> Vec<Permutation> {
        self.elements
            .iter()
            .filter(|x| x.is_involution())
            .cloned()
            .collect()
    }

    /// Orbit of `x` under conjugation by the whole group.
    pub fn conjugacy_class(&self, x: &Permutation) -> Result<Vec<Permutation>, GroupError> {
        if !self.contains(x) {
            return Err(GroupError::NotAMember);
        }
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(x.clone());
        let mut queue = vec![x.clone()];
        while let Some(y) = queue.pop() {
            for g in &self.generators {
                let z = y.conjugate_by(g);
                if !seen.contains(&z) {
                    seen.insert(z.clone());
                    queue.push(z);
                }
            }
        }
        let mut class: Vec<Permutation> = seen.into_iter().collect();
        class.sort_unstable();
        Ok(class)
    }

    /// `{ g in G : gx = xg }`.
    pub fn centralizer(&self, x: &Permutation) -> Result<Subgroup, GroupError> {
        if !self.contains(x) {
            return Err(GroupError::NotAMember);
        }
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| g.commutes_with(x))
            .cloned()
            .collect();
        Ok(Subgroup {
            degree: self.degree,
            elements,
        })
    }

    /// Smallest subgroup containing the given elements.
    pub fn subgroup_generated(&self, gens: &[Permutation]) -> Result<Subgroup, GroupError> {
        for s in gens {
            if !self.contains(s) {
                return Err(GroupError::NotAMember);
            }
        }
        let elements = close_elements(self.degree, gens, self.order() + 1)?;
        Ok(Subgroup {
            degree: self.degree,
            elements,
        })
    }

    /// `{ g in G : gh = hg for all h in H }`.
    pub fn centralizer_of_subgroup(&self, h: &Subgroup) -> Subgroup {
        let hgens = greedy_generators(h.degree, &h.elements);
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| hgens.iter().all(|s| g.commutes_with(s)))
            .cloned()
            .collect();
        Subgroup {
            degree: self.degree,
            elements,
        }
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let hgens = greedy_generators(h.degree, &h.elements);
        self.generators
            .iter()
            .all(|g| hgens.iter().all(|s| h.contains(&s.conjugate_by(g))))
    }

    /// `< x^g : x in seeds, g in G >`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<Subgroup, GroupError> {
        for s in seeds {
            if !self.contains(s) {
                return Err(GroupError::NotAMember);
            }
        }
        let elements = self.normal_closure_within(&self.generators, seeds)?;
        Ok(Subgroup {
            degree: self.degree,
            elements,
        })
    }

    /// The quotient `G/N` as a permutation group: the right-multiplication
    /// action on the right cosets of `N`, with cosets numbered by ascending
    /// least representative. The kernel of the action is exactly `N`.
    pub fn quotient(&self, n: &Subgroup) -> Result<PermGroup, GroupError> {
        if !self.is_normal(n) || !n.elements.iter().all(|x| self.contains(x)) {
            return Err(GroupError::NotNormal);
        }
        let order = self.order();
        let mut coset_of = vec![usize::MAX; order];
        let mut coset_count = 0usize;
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..order {
            if coset_of[i] != usize::MAX {
                continue;
            }
            reps.push(i);
            for h in &n.elements {
                let member = h.then(&self.elements[i]);
                let j = self
                    .element_index(&member)
                    .expect("coset member must be in the group");
                coset_of[j] = coset_count;
            }
            coset_count += 1;
        }
        let mut images = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut table = vec![0u32; coset_count];
            for (k, &rep) in reps.iter().enumerate() {
                let moved = self.elements[rep].then(g);
                let j = self.element_index(&moved).expect("closed under products");
                table[k] = coset_of[j] as u32;
            }
            images.push(Permutation::new(table)?);
        }
        PermGroup::close(coset_count, images)
    }

    /// Derived subgroup: the normal closure of the commutators of the
    /// generators (which equals the subgroup generated by all commutators).
    pub fn derived_subgroup(&self) -> Subgroup {
        let seeds = commutator_seeds(&self.generators, self.degree);
        self.normal_closure(&seeds)
            .expect("commutators are members")
    }

    /// Whether the derived series reaches the trivial group.
    pub fn is_solvable(&self) -> bool {
        let mut gens = self.generators.clone();
        let mut size = self.order();
        loop {
            if size == 1 {
                return true;
            }
            let seeds = commutator_seeds(&gens, self.degree);
            let derived = self
                .normal_closure_within(&gens, &seeds)
                .expect("derived term stays inside the group");
            if derived.len() == size {
                return false;
            }
            size = derived.len();
            gens = greedy_generators(self.degree, &derived);
        }
    }

    /// Normal closure of `seeds` inside the subgroup generated by `ambient_gens`.
    /// Rounds of conjugation: collect every conjugate of the current
    /// generators that escapes the closure, then re-close once per round.
    fn normal_closure_within(
        &self,
        ambient_gens: &[Permutation],
        seeds: &[Permutation],
    ) -> Result<Vec<Permutation>, GroupError> {
        let mut gens: Vec<Permutation> = seeds.to_vec();
        let mut elements = close_elements(self.degree, &gens, self.order() + 1)?;
        loop {
            let mut escaped: Vec<Permutation> = Vec::new();
            for x in &gens {
                for g in ambient_gens {
                    let c = x.conjugate_by(g);
                    if elements.binary_search(&c).is_err() && !escaped.contains(&c) {
                        escaped.push(c);
                    }
                }
            }
            if escaped.is_empty() {
                return Ok(elements);
            }
            gens.extend(escaped);
            elements = close_elements(self.degree, &gens, self.order() + 1)?;
        }
    }

    /// `O(G)`: the largest normal subgroup of odd order, obtained as the
    /// join of the normal closures of the elements whose normal closure has
    /// odd order.
    pub fn odd_core(&self) -> Subgroup {
        let mut confirmed: HashSet<Permutation> = HashSet::new();
        let mut decided: HashSet<Permutation> = HashSet::new();
        for x in &self.elements {
            if x.order() % 2 == 0 || decided.contains(x) || confirmed.contains(x) {
                continue;
            }
            // the normal closure is conjugation-invariant, so one test
            // settles the whole conjugacy class of x
            let class = self.conjugacy_class(x).expect("table element");
            let ncl = self.normal_closure(std::slice::from_ref(x)).expect("table element");
            if ncl.order() % 2 == 1 {
                confirmed.extend(ncl.elements.iter().cloned());
            } else {
                decided.extend(class);
            }
        }
        let gens: Vec<Permutation> = {
            let mut v: Vec<Permutation> = confirmed.into_iter().collect();
            v.sort_unstable();
            greedy_generators(self.degree, &v)
        };
        self.subgroup_generated(&gens).expect("members confirmed")
    }

    /// A Sylow 2-subgroup: greedily extend a 2-subgroup by 2-elements of its
    /// normalizer until the index is odd. Certified by the final parity check.
    pub fn sylow2(&self) -> Subgroup {
        let two_part = {
            let mut n = self.order();
            let mut t = 1usize;
            while n % 2 == 0 {
                n /= 2;
                t *= 2;
            }
            t
        };
        let trivial = Subgroup {
            degree: self.degree,
            elements: vec![self.identity()],
        };
        if two_part == 1 {
            return trivial;
        }
        let two_elements: Vec<&Permutation> = self
            .elements
            .iter()
            .filter(|x| x.order().is_power_of_two() && !x.is_identity())
            .collect();
        let seed = two_elements
            .iter()
            .max_by_key(|x| x.order())
            .expect("even order group has 2-elements");
        let mut current = self
            .subgroup_generated(std::slice::from_ref(*seed))
            .expect("table element");
        while current.order() < two_part {
            let mut extended = false;
            for &y in &two_elements {
                if current.contains(y) {
                    continue;
                }
                let normalizes = current
                    .elements
                    .iter()
                    .all(|p| current.contains(&p.conjugate_by(y)));
                if normalizes {
                    let mut gens = greedy_generators(self.degree, &current.elements);
                    gens.push(y.clone());
                    let next = self.subgroup_generated(&gens).expect("members");
                    if next.order().is_power_of_two() {
                        current = next;
                        extended = true;
                        break;
                    }
                }
            }
            if !extended {
                // exhaustive fallback: any 2-element keeping the closure a 2-group
                for &y in &two_elements {
                    if current.contains(y) {
                        continue;
                    }
                    let mut gens = greedy_generators(self.degree, &current.elements);
                    gens.push(y.clone());
                    let next = self.subgroup_generated(&gens).expect("members");
                    if next.order().is_power_of_two() {
                        current = next;
                        extended = true;
                        break;
                    }
                }
            }
            assert!(extended, "Sylow extension stalled below the full 2-part");
        }
        assert_eq!(
            self.order() / current.order() % 2,
            1,
            "Sylow 2-subgroup certificate failed"
        );
        current
    }

    /// Shape of a Sylow 2-subgroup of this group.
    pub fn sylow2_shape(&self) -> Sylow2Shape {
        classify_two_group(&self.sylow2())
    }

    /// `{ g in G : g fixes p }`.
    pub fn point_stabilizer(&self, p: u32) -> Subgroup {
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| g.apply(p) == p)
            .cloned()
            .collect();
        Subgroup {
            degree: self.degree,
            elements,
        }
    }

    /// Permutation of the element table induced by an element-wise map,
    /// e.g. inversion or a fixed power. Fails if the map is not a bijection
    /// of the table.
    pub fn table_perm(
        &self,
        f: impl Fn(&Permutation) -> Permutation,
    ) -> Result<Permutation, GroupError> {
        let mut images = Vec::with_capacity(self.order());
        for e in &self.elements {
            let y = f(e);
            let j = self.element_index(&y).ok_or(GroupError::NotAMember)?;
            images.push(j as u32);
        }
        Permutation::new(images)
    }

    /// Right-translation permutation of the element table by `h`.
    pub fn right_translation(&self, h: &Permutation) -> Result<Permutation, GroupError> {
        if !self.contains(h) {
            return Err(GroupError::NotAMember);
        }
        self.table_perm(|e| e.then(h))
    }

    /// The right regular representation: the same abstract group acting on
    /// its own element table.
    pub fn regular_representation(&self) -> Result<PermGroup, GroupError> {
        let gens = self
            .generators
            .iter()
            .map(|g| self.right_translation(g))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::close(self.order(), gens)
    }

    /// All subgroups of order at most `max_order` whose order satisfies
    /// `keep`, by fixed-point closure: start from the cyclic subgroups, then
    /// repeatedly extend every found subgroup by every group element.
    /// Extension closures abort as soon as they exceed `max_order`.
    ///
    /// `keep` must be divisor-closed (accept every divisor of an accepted
    /// order), otherwise the bottom-up enumeration can miss subgroups.
    /// Results are sorted canonically by (order, element list).
    pub fn subgroups_filtered(
        &self,
        max_order: usize,
        keep: impl Fn(usize) -> bool,
    ) -> Vec<Subgroup> {
        let cap = max_order.min(self.order());
        let mut found: HashSet<Vec<Permutation>> = HashSet::new();
        let mut frontier: Vec<Vec<Permutation>> = Vec::new();
        for x in &self.elements {
            if let Ok(h) = close_elements(self.degree, std::slice::from_ref(x), cap) {
                if keep(h.len()) && found.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                let mut gens = greedy_generators(self.degree, h);
                for x in &self.elements {
                    if h.binary_search(x).is_ok() {
                        continue;
                    }
                    gens.push(x.clone());
                    if let Ok(ext) = close_elements(self.degree, &gens, cap) {
                        if keep(ext.len()) && found.insert(ext.clone()) {
                            next.push(ext);
                        }
                    }
                    gens.pop();
                }
            }
            frontier = next;
        }
        let mut out: Vec<Vec<Permutation>> = found.into_iter().collect();
        out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out.into_iter()
            .map(|elements| Subgroup {
                degree: self.degree,
                elements,
            })
            .collect()
    }

    /// Every subgroup, including the trivial one and the group itself.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut subs = self.subgroups_filtered(self.order(), |_| true);
        let trivial = Subgroup {
            degree: self.degree,
            elements: vec![self.identity()],
        };
        if !subs.iter().any(|h| h.order() == 1) {
            subs.insert(0, trivial);
        }
        subs
    }
}

fn commutator_seeds(gens: &[Permutation], degree: usize) -> Vec<Permutation> {
    let mut seeds: Vec<Permutation> = Vec::new();
    for a in gens {
        for b in gens {
            let c = a.commutator(b);
            if !c.is_identity() && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    if seeds.is_empty() {
        seeds.push(Permutation::identity(degree));
    }
    seeds
}

impl Subgroup {
    /// Wraps a sorted, closed element list. Checks closure.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() || !elements[0].is_identity() {
            return Err(GroupError::NotAMember);
        }
        for a in &elements {
            if a.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: a.degree(),
                });
            }
        }
        let gens = greedy_generators(degree, &elements);
        let closed = close_elements(degree, &gens, elements.len() + 1)?;
        if closed.len() != elements.len() {
            return Err(GroupError::NotAMember);
        }
        Ok(Subgroup { degree, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Promotes the subgroup to a standalone group with a small generating set.
    pub fn to_group(&self) -> PermGroup {
        PermGroup::from_elements(self.degree, self.elements.clone())
    }
}

/// Isomorphism type tags for small 2-groups, as recognised by
/// [`PermGroup::sylow2_shape`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sylow2Shape {
    Trivial,
    Cyclic,
    Klein,
    Dihedral,
    Quaternion,
    Other,
}

/// Classifies a 2-group by order, involution count and cyclic-index-2 tests.
pub fn classify_two_group(p: &Subgroup) -> Sylow2Shape {
    let n = p.order();
    if n == 1 {
        return Sylow2Shape::Trivial;
    }
    debug_assert!(n.is_power_of_two());
    let involutions: Vec<&Permutation> =
        p.elements().iter().filter(|x| x.is_involution()).collect();
    if p.elements().iter().any(|x| x.order() as usize == n) {
        return Sylow2Shape::Cyclic;
    }
    if involutions.len() == 1 {
        return Sylow2Shape::Quaternion;
    }
    if n == 4 && involutions.len() == 3 {
        return Sylow2Shape::Klein;
    }
    // dihedral: a cyclic subgroup of index 2 inverted by an outside involution
    if involutions.len() > 2 {
        for c in p.elements() {
            if c.order() as usize != n / 2 {
                continue;
            }
            let cyc: HashSet<Permutation> = {
                let mut acc = Vec::new();
                let mut x = Permutation::identity(p.degree());
                for _ in 0..n / 2 {
                    acc.push(x.clone());
                    x = x.then(c);
                }
                acc.into_iter().collect()
            };
            let inverted = involutions.iter().any(|t| {
                !cyc.contains(*t) && c.conjugate_by(t) == c.inverse()
            });
            if inverted {
                return Sylow2Shape::Dihedral;
            }
        }
    }
    Sylow2Shape::Other
}
