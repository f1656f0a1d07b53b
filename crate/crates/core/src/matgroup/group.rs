//! Breadth-first closure of a generating set into a finite matrix group,
//! with conjugacy-class structure.

use super::matrix::CycMatrix;
use num::integer::lcm;
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

/// Default ceiling on the number of elements a closure may reach. Desk-scale
/// groups are a few thousand elements; exceeding the cap signals a non-finite
/// or runaway generating set rather than a legitimate workload.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// Default ceiling for [`element_order`] iteration on a bare matrix.
pub const DEFAULT_ORDER_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator grid is not square")]
    NotSquare,
    #[error("generators have mixed degrees")]
    DegreeMismatch,
    #[error("generator {index} is singular")]
    SingularGenerator { index: usize },
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("no power up to {bound} reached the identity; input is not of finite order")]
    OrderOverflow { bound: u64 },
    #[error("matrix is not an element of the group")]
    NotAMember,
}

/// A finite subgroup of `GL_d` over a cyclotomic field, closed under products
/// and inverses, with its conjugacy partition. Immutable once built.
#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup {
    degree: usize,
    cyclotomic_order: u64,
    elements: Vec<CycMatrix>,
    index: HashMap<CycMatrix, usize>,
    identity_index: usize,
    class_of: Vec<usize>,
    class_reps: Vec<usize>,
    class_sizes: Vec<usize>,
}

/// Close `generators` under multiplication, then partition into conjugacy
/// classes.
///
/// The element ordering is deterministic: breadth-first insertion order
/// starting from the identity, with the generator list sorted by canonical
/// matrix order. Because every element of a finite group has finite order,
/// closure under products alone already contains all inverses.
pub fn close_group(generators: &[CycMatrix], cap: usize) -> Result<FiniteMatrixGroup, GroupError> {
    if generators.is_empty() {
        return Err(GroupError::EmptyGenerators);
    }
    let degree = generators[0].degree();
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(GroupError::DegreeMismatch);
    }
    let order = generators.iter().fold(1u64, |acc, g| lcm(acc, g.order()));
    let mut gens: Vec<CycMatrix> = generators
        .iter()
        .map(|g| g.embed(order).expect("generator order divides lcm"))
        .collect();
    for (index, g) in gens.iter().enumerate() {
        if g.determinant().is_zero() {
            return Err(GroupError::SingularGenerator { index });
        }
    }
    gens.sort();
    gens.dedup();
    if cap < 1 {
        // even the trivial group holds one element
        return Err(GroupError::CapExceeded { cap });
    }

    let identity = CycMatrix::identity(degree, order);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0usize);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let current = elements[i].clone();
        for g in &gens {
            let product = current.mul(g);
            if index.contains_key(&product) {
                continue;
            }
            if elements.len() >= cap {
                return Err(GroupError::CapExceeded { cap });
            }
            let new_index = elements.len();
            index.insert(product.clone(), new_index);
            elements.push(product);
            queue.push_back(new_index);
        }
    }

    let (class_of, class_reps, class_sizes) = conjugacy_partition(&elements, &index, &gens);
    Ok(FiniteMatrixGroup {
        degree,
        cyclotomic_order: order,
        elements,
        index,
        identity_index: 0,
        class_of,
        class_reps,
        class_sizes,
    })
}

/// Partition by orbits of the conjugation action. Conjugating by the
/// generators alone suffices to sweep out full classes, since inner
/// automorphisms compose. Classes are numbered in order of first appearance
/// along the element list; each representative is the class member with the
/// smallest canonical matrix order.
fn conjugacy_partition(
    elements: &[CycMatrix],
    index: &HashMap<CycMatrix, usize>,
    gens: &[CycMatrix],
) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let gen_pairs: Vec<(CycMatrix, CycMatrix)> = gens
        .iter()
        .map(|g| (g.clone(), invert_by_powering(g)))
        .collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut class_reps = Vec::new();
    let mut class_sizes = Vec::new();
    for start in 0..elements.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let class = class_reps.len();
        let mut members = vec![start];
        class_of[start] = class;
        let mut frontier = vec![start];
        while let Some(i) = frontier.pop() {
            for (g, g_inv) in &gen_pairs {
                let conj = g.mul(&elements[i]).mul(g_inv);
                let j = *index.get(&conj).expect("conjugate stays in the group");
                if class_of[j] == usize::MAX {
                    class_of[j] = class;
                    members.push(j);
                    frontier.push(j);
                }
            }
        }
        let rep = members
            .iter()
            .copied()
            .min_by(|&a, &b| elements[a].cmp(&elements[b]))
            .unwrap();
        class_reps.push(rep);
        class_sizes.push(members.len());
    }
    (class_of, class_reps, class_sizes)
}

fn invert_by_powering(g: &CycMatrix) -> CycMatrix {
    let order =
        element_order_bounded(g, DEFAULT_ORDER_BOUND).expect("group members have finite order");
    g.pow(order - 1)
}

/// Least `l >= 1` with `g^l = I`, by iterated multiplication, with the
/// default search bound.
pub fn element_order(g: &CycMatrix) -> Result<u64, GroupError> {
    element_order_bounded(g, DEFAULT_ORDER_BOUND)
}

/// Least `l >= 1` with `g^l = I`, searching no further than `bound`.
pub fn element_order_bounded(g: &CycMatrix, bound: u64) -> Result<u64, GroupError> {
    let mut power = g.clone();
    let mut l = 1;
    while l <= bound {
        if power.is_identity() {
            return Ok(l);
        }
        power = power.mul(g);
        l += 1;
    }
    Err(GroupError::OrderOverflow { bound })
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cyclotomic_order(&self) -> u64 {
        self.cyclotomic_order
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CycMatrix {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    pub fn index_of(&self, g: &CycMatrix) -> Option<usize> {
        let lifted = g.embed(self.cyclotomic_order).ok()?;
        self.index.get(&lifted).copied()
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    /// The full conjugacy partition as `(class_of, class_reps, class_sizes)`.
    pub fn conjugacy_classes(&self) -> (&[usize], &[usize], &[usize]) {
        (&self.class_of, &self.class_reps, &self.class_sizes)
    }

    /// Class index of element `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Element index of each class representative, in class order.
    pub fn class_reps(&self) -> &[usize] {
        &self.class_reps
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// Element indices of class `c`, ascending.
    pub fn class_members(&self, c: usize) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.class_of[i] == c)
            .collect()
    }

    /// Index of the inverse of element `i`, found by powering.
    pub fn inverse_index(&self, i: usize) -> usize {
        let inv = invert_by_powering(&self.elements[i]);
        self.index[&inv]
    }

    /// `#{h in G : hg = gh}` by a full commutation scan.
    pub fn centralizer_order(&self, g: &CycMatrix) -> Result<usize, GroupError> {
        let i = self.index_of(g).ok_or(GroupError::NotAMember)?;
        let g = &self.elements[i];
        Ok(self
            .elements
            .iter()
            .filter(|h| h.mul(g) == g.mul(h))
            .count())
    }

    /// True when every element has determinant one. Checking generators would
    /// suffice, but the full scan doubles as a closure self-check.
    pub fn is_subgroup_of_sl(&self) -> bool {
        self.elements.iter().all(|g| g.determinant().is_one())
    }

    /// Indices of all non-identity elements fixing a hyperplane pointwise
    /// (eigenvalue-1 multiplicity `degree - 1`).
    pub fn find_reflections(&self) -> Vec<usize> {
        let d = self.degree as u64;
        (0..self.elements.len())
            .filter(|&i| {
                i != self.identity_index && crate::sectors::fixed_dim(&self.elements[i]) == d - 1
            })
            .collect()
    }

    /// Exponent of the group: lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.elements.iter().fold(1u64, |acc, g| {
            lcm(
                acc,
                element_order_bounded(g, DEFAULT_ORDER_BOUND)
                    .expect("group members have finite order"),
            )
        })
    }

    /// Re-embed every element into `Q(zeta_N)` with `N` the lcm of the entry
    /// field order and the group exponent, so that all later per-element
    /// eigenvalue computations stay inside one field.
    pub fn lift_to_exponent_order(&self) -> FiniteMatrixGroup {
        let target = lcm(self.cyclotomic_order, self.exponent());
        if target == self.cyclotomic_order {
            return self.clone();
        }
        let elements: Vec<CycMatrix> = self
            .elements
            .iter()
            .map(|g| g.embed(target).expect("order divides lcm"))
            .collect();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        FiniteMatrixGroup {
            degree: self.degree,
            cyclotomic_order: target,
            elements,
            index,
            identity_index: self.identity_index,
            class_of: self.class_of.clone(),
            class_reps: self.class_reps.clone(),
            class_sizes: self.class_sizes.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_cyclotomic, Cyclotomic};

    fn mat(order: u64, rows: &[&[&str]]) -> CycMatrix {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_cyclotomic(s, order).unwrap())
                    .collect()
            })
            .collect();
        CycMatrix::from_rows(rows).unwrap()
    }

    pub(crate) fn quaternion_group() -> FiniteMatrixGroup {
        let i = mat(4, &[&["z", "0"], &["0", "-z"]]);
        let j = mat(4, &[&["0", "-1"], &["1", "0"]]);
        close_group(&[j, i], DEFAULT_CLOSURE_CAP).unwrap()
    }

    #[test]
    fn closes_small_cyclic_groups() {
        let minus = CycMatrix::diagonal(&[Cyclotomic::zeta(2), Cyclotomic::zeta(2)]);
        let g = close_group(&[minus], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.class_count(), 2);
        assert_eq!(g.class_sizes(), &[1, 1]);

        let trivial = close_group(&[CycMatrix::identity(3, 1)], 10).unwrap();
        assert_eq!(trivial.order(), 1);
    }

    #[test]
    fn quaternion_closure_and_classes() {
        let q8 = quaternion_group();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.class_count(), 5);
        let mut sizes = q8.class_sizes().to_vec();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert!(q8.is_subgroup_of_sl());
        assert!(q8.find_reflections().is_empty());

        // orbit-stabilizer on every class
        for c in 0..q8.class_count() {
            let rep = q8.element(q8.class_reps()[c]);
            let cz = q8.centralizer_order(rep).unwrap();
            assert_eq!(q8.class_sizes()[c] * cz, q8.order());
        }
        // the class of i has centralizer <i> of order 4
        let i = mat(4, &[&["z", "0"], &["0", "-z"]]);
        assert_eq!(q8.centralizer_order(&i).unwrap(), 4);
    }

    #[test]
    fn abelian_groups_have_singleton_classes() {
        let g = close_group(
            &[CycMatrix::diagonal(&[
                Cyclotomic::zeta(6),
                Cyclotomic::zeta_pow(6, 5),
            ])],
            100,
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.class_count(), 6);
        assert!(g.class_sizes().iter().all(|&s| s == 1));
        for i in 0..g.order() {
            assert_eq!(g.centralizer_order(g.element(i)).unwrap(), 6);
        }
    }

    #[test]
    fn element_orders() {
        assert_eq!(element_order(&CycMatrix::identity(4, 3)).unwrap(), 1);
        let minus = CycMatrix::diagonal(&[Cyclotomic::zeta(2), Cyclotomic::zeta(2)]);
        assert_eq!(element_order(&minus).unwrap(), 2);
        let z6 = CycMatrix::diagonal(&[Cyclotomic::zeta(6), Cyclotomic::zeta_pow(6, 5)]);
        assert_eq!(element_order(&z6).unwrap(), 6);
        // 2x2 Jordan-like block of infinite order trips the bound
        let shear = mat(1, &[&["1", "1"], &["0", "1"]]);
        assert_eq!(
            element_order_bounded(&shear, 50),
            Err(GroupError::OrderOverflow { bound: 50 })
        );
    }

    #[test]
    fn cap_and_validation_errors() {
        let q8_gen = mat(4, &[&["0", "-1"], &["1", "0"]]);
        assert_eq!(
            close_group(&[q8_gen], 3).unwrap_err(),
            GroupError::CapExceeded { cap: 3 }
        );
        assert_eq!(
            close_group(&[], 10).unwrap_err(),
            GroupError::EmptyGenerators
        );
        let singular = mat(1, &[&["1", "2"], &["2", "4"]]);
        assert_eq!(
            close_group(&[singular], 10).unwrap_err(),
            GroupError::SingularGenerator { index: 0 }
        );
        let d1 = CycMatrix::identity(1, 1);
        let d2 = CycMatrix::identity(2, 1);
        assert_eq!(
            close_group(&[d1.clone(), d2], 10).unwrap_err(),
            GroupError::DegreeMismatch
        );
        assert_eq!(
            close_group(&[d1], 0).unwrap_err(),
            GroupError::CapExceeded { cap: 0 }
        );
    }

    #[test]
    fn closure_is_idempotent() {
        let q8 = quaternion_group();
        let again = close_group(q8.elements(), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(again.order(), q8.order());
        for g in q8.elements() {
            assert!(again.index_of(g).is_some());
        }
    }

    #[test]
    fn degree_one_groups() {
        let minus_one = CycMatrix::diagonal(&[Cyclotomic::zeta(2)]);
        let g = close_group(&[minus_one], 10).unwrap();
        assert_eq!(g.order(), 2);
        assert!(!g.is_subgroup_of_sl());
        // in dimension one, any non-identity scalar fixes the zero hyperplane
        assert_eq!(g.find_reflections().len(), 1);
    }

    #[test]
    fn reflections_in_degree_two() {
        let refl = CycMatrix::diagonal(&[Cyclotomic::one(2), Cyclotomic::zeta(2)]);
        let g = close_group(&[refl], 10).unwrap();
        assert_eq!(g.find_reflections().len(), 1);
        assert!(!g.is_subgroup_of_sl());
    }

    #[test]
    fn membership_and_inverses() {
        let q8 = quaternion_group();
        let outsider = CycMatrix::diagonal(&[Cyclotomic::zeta(3), Cyclotomic::zeta(3)]);
        assert_eq!(q8.centralizer_order(&outsider), Err(GroupError::NotAMember));
        for i in 0..q8.order() {
            let inv = q8.inverse_index(i);
            assert!(q8.element(i).mul(q8.element(inv)).is_identity());
        }
    }

    #[test]
    fn lift_to_exponent_order_covers_element_orders() {
        // rational entries, but an element of order 4
        let rot = mat(1, &[&["0", "-1"], &["1", "0"]]);
        let g = close_group(&[rot], 10).unwrap();
        assert_eq!((g.order(), g.cyclotomic_order()), (4, 1));
        let lifted = g.lift_to_exponent_order();
        assert_eq!(lifted.cyclotomic_order(), 4);
        assert_eq!(lifted.order(), 4);
        assert_eq!(lifted.class_count(), g.class_count());
        assert!(lifted.element(0).is_identity());
    }
}
