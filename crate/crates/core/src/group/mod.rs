//! Finite permutation groups with full element enumeration.
//!
//! Every group stores its elements sorted lexicographically by image list, so
//! element indices, class representatives and Sylow choices are reproducible.
//! Subgroups are ordinary [`PermGroup`] values on the same point set.

mod builtins;
mod iso;
mod perm;

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use builtins::{named_group, GroupSpec};
pub use iso::{embeds, is_isomorphic, GroupInvariants, DEFAULT_ISO_BOUND};
pub use perm::Perm;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// Groups up to this order get a cached multiplication table.
const TABLE_BOUND: usize = 2048;

#[derive(Debug)]
struct ClassPartition {
    /// Element indices of each class, classes in canonical order.
    members: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

/// A finite group given by permutation generators.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// `(parent, generator)` with `element = parent * generator`; `None` for
    /// the identity.
    tree: Vec<Option<(usize, usize)>>,
    /// Element indices in breadth-first order from the identity.
    bfs: Vec<usize>,
    name: Option<String>,
    classes: OnceLock<ClassPartition>,
    table: OnceLock<Option<Vec<u32>>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            index: self.index.clone(),
            tree: self.tree.clone(),
            bfs: self.bfs.clone(),
            name: self.name.clone(),
            classes: OnceLock::new(),
            table: OnceLock::new(),
        }
    }
}

/// A conjugacy class, with the p-regularity flag for the prime it was asked
/// for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: Perm,
    /// Index of the representative in the group's element list.
    pub rep_index: usize,
    pub size: usize,
    pub element_order: usize,
    pub p_regular: bool,
}

/// The quotient `H/R` acting on the right cosets of `R`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: PermGroup,
    /// `projection[h]` is the quotient element index of the coset of
    /// element `h` of the numerator.
    pub projection: Vec<usize>,
}

impl PermGroup {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_bound(degree, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(degree: usize, generators: Vec<Perm>, bound: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::MalformedPermutation("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::MalformedPermutation(format!(
                    "generator {g} has degree {} instead of {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut found: HashMap<Perm, usize> = HashMap::new();
        let mut raw = vec![id.clone()];
        let mut raw_tree: Vec<Option<(usize, usize)>> = vec![None];
        found.insert(id, 0);
        let mut head = 0;
        while head < raw.len() {
            let e = raw[head].clone();
            for (gi, g) in generators.iter().enumerate() {
                let h = e.then(g);
                if !found.contains_key(&h) {
                    if raw.len() >= bound {
                        return Err(Error::OrderBoundExceeded { bound });
                    }
                    found.insert(h.clone(), raw.len());
                    raw.push(h);
                    raw_tree.push(Some((head, gi)));
                }
            }
            head += 1;
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| raw[a].cmp(&raw[b]));
        let mut new_of_raw = vec![0usize; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_raw[old] = new;
        }
        let elements: Vec<Perm> = order.iter().map(|&old| raw[old].clone()).collect();
        let tree = order
            .iter()
            .map(|&old| raw_tree[old].map(|(par, g)| (new_of_raw[par], g)))
            .collect();
        let bfs = (0..raw.len()).map(|old| new_of_raw[old]).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
            tree,
            bfs,
            name: None,
            classes: OnceLock::new(),
            table: OnceLock::new(),
        })
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree.max(1), vec![]).expect("trivial group")
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// Element indices in breadth-first order; every element comes after its
    /// parent in the generator tree.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs
    }

    /// `(parent, generator)` of element `i` in the generator tree.
    pub fn tree_parent(&self, i: usize) -> Option<(usize, usize)> {
        self.tree[i]
    }

    /// Generator indices whose left-to-right product is element `i`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((par, g)) = self.tree[i] {
            w.push(g);
            i = par;
        }
        w.reverse();
        w
    }

    fn table(&self) -> Option<&Vec<u32>> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                if n > TABLE_BOUND {
                    return None;
                }
                let mut t = vec![0u32; n * n];
                for i in 0..n {
                    for j in 0..n {
                        t[i * n + j] = self.index[&self.elements[i].then(&self.elements[j])] as u32;
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    /// Index of the product `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match self.table() {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.index[&self.elements[i].then(&self.elements[j])],
        }
    }

    pub fn inv(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    /// Index of `g^-1 x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.elements[i].order()
    }

    pub fn exponent(&self) -> usize {
        self.elements
            .iter()
            .fold(1, |acc, e| num_integer::lcm(acc, e.order()))
    }

    /// Membership flags of the subgroup generated by the given element
    /// indices.
    pub fn closure_flags(&self, gens: &[usize]) -> Vec<bool> {
        let mut flags = vec![false; self.order()];
        flags[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let h = self.mul(e, g);
                if !flags[h] {
                    flags[h] = true;
                    queue.push_back(h);
                }
            }
        }
        flags
    }

    /// The subgroup consisting of the given element indices, which must form
    /// a subgroup. Generators are chosen greedily in element order.
    pub fn subgroup_from_indices(&self, members: &[usize]) -> PermGroup {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut gens: Vec<usize> = Vec::new();
        let mut flags = self.closure_flags(&gens);
        for &e in &sorted {
            if !flags[e] {
                gens.push(e);
                flags = self.closure_flags(&gens);
            }
        }
        debug_assert_eq!(flags.iter().filter(|&&f| f).count(), sorted.len());
        PermGroup::from_generators(
            self.degree,
            gens.iter().map(|&g| self.elements[g].clone()).collect(),
        )
        .expect("subgroup of an enumerated group")
    }

    /// The subgroup generated by the given permutations, which must lie in
    /// the group.
    pub fn subgroup_generated(&self, gens: &[Perm]) -> Result<PermGroup> {
        let idx = gens
            .iter()
            .map(|g| self.index_of(g).ok_or(Error::ElementNotInGroup))
            .collect::<Result<Vec<_>>>()?;
        let flags = self.closure_flags(&idx);
        let members: Vec<usize> = (0..self.order()).filter(|&i| flags[i]).collect();
        Ok(self.subgroup_from_indices(&members))
    }

    /// True when every element of `other` is an element of `self` (same
    /// point set).
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    fn partition(&self) -> &ClassPartition {
        self.classes.get_or_init(|| {
            let n = self.order();
            let gens: Vec<usize> = self
                .generators
                .iter()
                .map(|g| self.index[g])
                .collect();
            let mut class_of = vec![usize::MAX; n];
            let mut raw: Vec<Vec<usize>> = Vec::new();
            for start in 0..n {
                if class_of[start] != usize::MAX {
                    continue;
                }
                let id = raw.len();
                let mut members = vec![start];
                class_of[start] = id;
                let mut head = 0;
                while head < members.len() {
                    let x = members[head];
                    head += 1;
                    for &g in &gens {
                        let y = self.conj(x, g);
                        if class_of[y] == usize::MAX {
                            class_of[y] = id;
                            members.push(y);
                        }
                    }
                }
                members.sort_unstable();
                raw.push(members);
            }
            // canonical order: element order, class size, smallest member
            raw.sort_by_key(|m| (self.element_order(m[0]), m.len(), m[0]));
            for (id, m) in raw.iter().enumerate() {
                for &x in m {
                    class_of[x] = id;
                }
            }
            ClassPartition {
                members: raw,
                class_of,
            }
        })
    }

    /// Conjugacy classes in canonical order (element order, then size, then
    /// smallest representative), flagged for p-regularity.
    pub fn conjugacy_classes(&self, p: u64) -> Vec<ConjClass> {
        self.partition()
            .members
            .iter()
            .map(|m| {
                let rep = m[0];
                let element_order = self.element_order(rep);
                ConjClass {
                    representative: self.elements[rep].clone(),
                    rep_index: rep,
                    size: m.len(),
                    element_order,
                    p_regular: !(element_order as u64).is_multiple_of(p),
                }
            })
            .collect()
    }

    pub fn class_count(&self) -> usize {
        self.partition().members.len()
    }

    /// Canonical class index of element `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.partition().class_of[i]
    }

    pub fn class_members(&self, class: usize) -> &[usize] {
        &self.partition().members[class]
    }

    fn centralizer_flags(&self, set: &[usize]) -> Vec<bool> {
        (0..self.order())
            .map(|g| set.iter().all(|&s| self.mul(g, s) == self.mul(s, g)))
            .collect()
    }

    /// Pointwise centralizer of a set of elements.
    pub fn centralizer(&self, set: &[Perm]) -> Result<PermGroup> {
        let idx = set
            .iter()
            .map(|s| self.index_of(s).ok_or(Error::ElementNotInGroup))
            .collect::<Result<Vec<_>>>()?;
        let flags = self.centralizer_flags(&idx);
        let members: Vec<usize> = (0..self.order()).filter(|&i| flags[i]).collect();
        Ok(self.subgroup_from_indices(&members))
    }

    /// Centralizer of a subgroup, which must lie in `self`.
    pub fn centralizer_of_group(&self, h: &PermGroup) -> Result<PermGroup> {
        self.centralizer(h.generators())
    }

    pub fn center(&self) -> PermGroup {
        self.centralizer(&self.generators.clone())
            .expect("generators lie in the group")
    }

    /// Normalizer of a subgroup contained in `self`.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        if !self.contains_group(h) {
            return Err(Error::NotSubgroup);
        }
        let members: Vec<usize> = (0..self.order())
            .filter(|&g| {
                let gp = &self.elements[g];
                h.generators.iter().all(|x| h.contains(&x.conjugate_by(gp)))
            })
            .collect();
        Ok(self.subgroup_from_indices(&members))
    }

    pub fn is_normal(&self, h: &PermGroup) -> bool {
        self.contains_group(h)
            && self.generators.iter().all(|g| {
                h.generators
                    .iter()
                    .all(|x| h.contains(&x.conjugate_by(g)))
            })
    }

    /// The subgroup generated by all commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let n = self.order();
        let mut comms: Vec<usize> = Vec::new();
        let mut flags = self.closure_flags(&comms);
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if !flags[c] {
                    comms.push(c);
                    flags = self.closure_flags(&comms);
                }
            }
        }
        let members: Vec<usize> = (0..n).filter(|&i| flags[i]).collect();
        self.subgroup_from_indices(&members)
    }

    /// A Sylow p-subgroup, grown greedily: at each step the first element (in
    /// element order) of p-power order that normalizes the current subgroup
    /// without lying in it is adjoined.
    pub fn sylow_subgroup(&self, p: u64) -> PermGroup {
        let target = p_part(self.order() as u64, p) as usize;
        let mut gens: Vec<usize> = Vec::new();
        let mut flags = self.closure_flags(&gens);
        let mut size = 1usize;
        while size < target {
            let next = (0..self.order()).find(|&g| {
                !flags[g]
                    && is_p_power(self.element_order(g) as u64, p)
                    && gens.iter().all(|&h| flags[self.conj(h, g)])
            });
            let g = next.expect("a non-Sylow p-subgroup has a normalizing p-element outside it");
            gens.push(g);
            flags = self.closure_flags(&gens);
            size = flags.iter().filter(|&&f| f).count();
        }
        let members: Vec<usize> = (0..self.order()).filter(|&i| flags[i]).collect();
        self.subgroup_from_indices(&members)
    }

    /// `self / r` as a permutation group on the right cosets of `r`.
    pub fn quotient_group(&self, r: &PermGroup) -> Result<Quotient> {
        if !self.contains_group(r) {
            return Err(Error::NotSubgroup);
        }
        if !self.is_normal(r) {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let r_idx: Vec<usize> = r.elements().iter().map(|e| self.index[e]).collect();
        let mut coset = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for h in 0..n {
            if coset[h] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(h);
            for &x in &r_idx {
                coset[self.mul(x, h)] = c;
            }
        }
        let m = reps.len();
        let action = |h: usize| -> Perm {
            Perm::from_images(
                reps.iter()
                    .map(|&rep| coset[self.mul(rep, h)] as u32)
                    .collect(),
            )
            .expect("coset action is a permutation")
        };
        let gens: Vec<Perm> = self
            .generators
            .iter()
            .map(|g| action(self.index[g]))
            .collect();
        let group = PermGroup::from_generators(m, gens)?;
        let projection = (0..n)
            .map(|h| group.index_of(&action(h)).expect("image lies in the quotient"))
            .collect();
        Ok(Quotient { group, projection })
    }

    /// Direct product on disjoint point sets.
    pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
        let total = a.degree + b.degree;
        let mut gens: Vec<Perm> = a.generators.iter().map(|g| g.shifted(0, total)).collect();
        gens.extend(b.generators.iter().map(|g| g.shifted(a.degree, total)));
        let g = PermGroup::from_generators(total, gens)?;
        Ok(match (a.name(), b.name()) {
            (Some(x), Some(y)) => g.named(format!("{x}x{y}")),
            _ => g,
        })
    }
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n.is_multiple_of(p) && n > 0 {
        n /= p;
        r *= p;
    }
    r
}

pub fn is_p_power(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> PermGroup {
        named_group("S4").unwrap()
    }

    /// Brute-force conjugacy classes: orbits of x under g^-1 x g over all g.
    fn brute_classes(g: &PermGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..n).map(|t| g.conj(x, t)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    #[test]
    fn enumerates_s4_and_cyclic() {
        let g = PermGroup::from_generators(
            4,
            vec![
                Perm::from_cycles(4, &[&[1, 2]]).unwrap(),
                Perm::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(PermGroup::from_generators(1, vec![]).unwrap().order(), 1);
        let c3 = PermGroup::from_generators(3, vec![Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap()])
            .unwrap();
        assert_eq!(c3.order(), 3);
    }

    #[test]
    fn order_bound_is_enforced() {
        let gens = vec![
            Perm::from_cycles(5, &[&[1, 2]]).unwrap(),
            Perm::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap(),
        ];
        assert_eq!(
            PermGroup::with_bound(5, gens, 100).unwrap_err(),
            Error::OrderBoundExceeded { bound: 100 }
        );
    }

    #[test]
    fn elements_closed_and_words_reproduce() {
        let g = s4();
        for i in 0..g.order() {
            assert!(g.contains(&g.element(i).inverse()));
            let w = g.word(i);
            let mut acc = Perm::identity(4);
            for k in w {
                acc = acc.then(&g.generators()[k]);
            }
            assert_eq!(&acc, g.element(i));
        }
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn class_counts_match_brute_force() {
        for (name, p, classes, regular) in [
            ("S4", 2, 5, 2),
            ("C3", 3, 3, 1),
            ("A4", 2, 4, 3),
            ("S3", 3, 3, 2),
        ] {
            let g = named_group(name).unwrap();
            let cls = g.conjugacy_classes(p);
            assert_eq!(cls.len(), classes, "{name}");
            assert_eq!(brute_classes(&g).len(), classes, "{name}");
            assert_eq!(cls.iter().filter(|c| c.p_regular).count(), regular, "{name}");
            assert_eq!(cls.iter().map(|c| c.size).sum::<usize>(), g.order());
        }
    }

    #[test]
    fn s4_regular_classes_are_identity_and_three_cycles() {
        let cls = s4().conjugacy_classes(2);
        let reg: Vec<usize> = cls
            .iter()
            .filter(|c| c.p_regular)
            .map(|c| c.element_order)
            .collect();
        assert_eq!(reg, vec![1, 3]);
    }

    #[test]
    fn centralizers() {
        let g = s4();
        let c = g
            .centralizer(&[Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap()])
            .unwrap();
        assert_eq!(c.order(), 3);
        assert_eq!(g.centralizer(&[Perm::identity(4)]).unwrap().order(), 24);
        let d8 = g.sylow_subgroup(2);
        let z = g.centralizer(d8.generators()).unwrap();
        assert_eq!(z.order(), 2);
        assert!(g
            .centralizer(&[Perm::identity(5)])
            .is_err());
    }

    #[test]
    fn sylow_orders() {
        let g = s4();
        let p2 = g.sylow_subgroup(2);
        assert_eq!(p2.order(), 8);
        assert!(p2.elements().iter().all(|e| is_p_power(e.order() as u64, 2)));
        assert_eq!(g.sylow_subgroup(3).order(), 3);
        assert_eq!(named_group("C5").unwrap().sylow_subgroup(2).order(), 1);
    }

    #[test]
    fn quotients() {
        let g = s4();
        let v4 = g
            .subgroup_generated(&[
                Perm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap(),
                Perm::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap(),
            ])
            .unwrap();
        let q = g.quotient_group(&v4).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(is_isomorphic(&q.group, &named_group("S3").unwrap()).unwrap());
        // projection is a homomorphism with kernel v4
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(
                    q.projection[g.mul(a, b)],
                    q.group.mul(q.projection[a], q.projection[b])
                );
            }
            assert_eq!(q.projection[a] == 0, v4.contains(g.element(a)));
        }
        let d8 = named_group("D8").unwrap();
        let z = d8.center();
        let q = d8.quotient_group(&z).unwrap();
        assert!(is_isomorphic(&q.group, &named_group("C2xC2").unwrap()).unwrap());
        let t = PermGroup::trivial(4);
        assert!(is_isomorphic(&g.quotient_group(&t).unwrap().group, &g).unwrap());
        let c2 = g
            .subgroup_generated(&[Perm::from_cycles(4, &[&[1, 2]]).unwrap()])
            .unwrap();
        assert_eq!(g.quotient_group(&c2).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn derived_and_center() {
        assert_eq!(s4().derived_subgroup().order(), 12);
        assert_eq!(s4().center().order(), 1);
        assert_eq!(named_group("Q8").unwrap().center().order(), 2);
    }
}
