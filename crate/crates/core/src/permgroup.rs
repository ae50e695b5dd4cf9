//! Finite permutation groups: Schreier-Sims stabilizer chains, element
//! enumeration, conjugacy classes, centralizers, normalizers of cyclic
//! subgroups, Sylow subgroups and class fusion.
//!
//! Products are written left to right: `a.compose(&b)` first applies `a`,
//! then `b`. Conjugation `x^g` is `g^-1 x g`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::arith::{self, is_prime};
use crate::error::{validation, Error, Result};

/// Default bound on the order of groups whose elements may be listed.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

/// A permutation of `{0, .., degree-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n {
                return Err(validation(format!(
                    "image {x} of point {i} is out of range for degree {n}"
                )));
            }
            if seen[x] {
                return Err(validation(format!("image {x} occurs twice")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Perm> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let a = a as usize;
                if a >= degree {
                    return Err(validation(format!("cycle point {a} exceeds degree {degree}")));
                }
                if touched[a] {
                    return Err(validation(format!("point {a} appears in two cycles")));
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&b);
            }
            b = b.compose(&b);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().compose(self).compose(g)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| arith::lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    // transversal[x] = (u, u^-1) with base^u = x
    transversal: Vec<Option<(Perm, Perm)>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        let mut transversal = vec![None; degree];
        let id = Perm::identity(degree);
        transversal[base] = Some((id.clone(), id));
        Level {
            base,
            gens: Vec::new(),
            transversal,
        }
    }

    fn orbit_len(&self) -> u64 {
        self.transversal.iter().filter(|t| t.is_some()).count() as u64
    }
}

/// A finite permutation group with a cached stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: Vec<Level>,
    order: u64,
    cap: u64,
}

/// Sifts `g` through `chain[start..]`; returns the residue and whether it is trivial.
fn sift(chain: &[Level], start: usize, g: &Perm) -> (Perm, bool) {
    let mut h = g.clone();
    for level in &chain[start..] {
        let x = h.apply(level.base);
        match &level.transversal[x] {
            None => return (h, false),
            Some((_, u_inv)) => h = h.compose(u_inv),
        }
    }
    let trivial = h.is_identity();
    (h, trivial)
}

fn chain_insert(chain: &mut Vec<Level>, i: usize, g: Perm) {
    if i >= chain.len() || sift(chain, i, &g).1 {
        return;
    }
    chain[i].gens.push(g.clone());
    let reps: Vec<Perm> = chain[i].transversal.iter().flatten().map(|(u, _)| u.clone()).collect();
    for u in reps {
        chain_extend(chain, i, u.compose(&g));
    }
}

fn chain_extend(chain: &mut Vec<Level>, i: usize, t: Perm) {
    let x = t.apply(chain[i].base);
    if let Some((_, u_inv)) = &chain[i].transversal[x] {
        let residue = t.compose(u_inv);
        if !residue.is_identity() {
            chain_insert(chain, i + 1, residue);
        }
    } else {
        let t_inv = t.inverse();
        chain[i].transversal[x] = Some((t.clone(), t_inv));
        let gens = chain[i].gens.clone();
        for s in gens {
            chain_extend(chain, i, t.compose(&s));
        }
    }
}

/// Builds the group generated by `gens` on `degree` points.
pub fn group_from_generators(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
    PermGroup::new(degree, gens)
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        if degree == 0 {
            return Err(validation("degree must be at least 1"));
        }
        for (i, g) in gens.iter().enumerate() {
            if g.degree() != degree {
                return Err(validation(format!(
                    "generator {i} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
            // re-validate in case the Perm was built unchecked elsewhere
            Perm::new(g.images.clone()).map_err(|e| validation(format!("generator {i}: {e}")))?;
        }
        let mut chain: Vec<Level> = (0..degree).map(|b| Level::new(b, degree)).collect();
        for g in &gens {
            chain_insert(&mut chain, 0, g.clone());
        }
        let mut order: u64 = 1;
        for level in &chain {
            order = order.checked_mul(level.orbit_len()).ok_or(Error::Resource {
                order: u128::MAX,
                cap: DEFAULT_ENUMERATION_CAP,
            })?;
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            chain,
            order,
            cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("degree >= 1")
    }

    /// Returns a copy using a different enumeration cap.
    pub fn with_cap(mut self, cap: u64) -> PermGroup {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    /// Lengths of the fundamental orbits of the stabilizer chain.
    pub fn orbit_lengths(&self) -> Vec<u64> {
        self.chain.iter().map(Level::orbit_len).collect()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain
            .iter()
            .filter(|l| l.orbit_len() > 1)
            .map(|l| l.base)
            .collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && sift(&self.chain, 0, g).1
    }

    fn check_cap(&self) -> Result<()> {
        if self.order > self.cap {
            Err(Error::Resource {
                order: self.order as u128,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// All elements, each exactly once, in increasing lexicographic order of images.
    pub fn elements(&self) -> Result<Vec<Perm>> {
        self.check_cap()?;
        let mut current = vec![self.identity()];
        for level in self.chain.iter().rev() {
            if level.orbit_len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(current.len() * level.orbit_len() as usize);
            for h in &current {
                for (u, _) in level.transversal.iter().flatten() {
                    next.push(h.compose(u));
                }
            }
            current = next;
        }
        current.sort();
        debug_assert_eq!(current.len() as u64, self.order);
        Ok(current)
    }

    /// Subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        for (i, g) in gens.iter().enumerate() {
            if !self.contains(g) {
                return Err(Error::Membership(format!("generator {i} ({g}) is not in the group")));
            }
        }
        Ok(PermGroup::new(self.degree, gens)?.with_cap(self.cap))
    }

    /// Builds the subgroup consisting of the elements satisfying `pred`. The
    /// predicate must describe a subgroup; generators are picked greedily from
    /// the sorted element list so the result is reproducible.
    pub fn subgroup_where<F: Fn(&Perm) -> bool>(&self, pred: F) -> Result<PermGroup> {
        let mut current = PermGroup::trivial(self.degree).with_cap(self.cap);
        let mut gens = Vec::new();
        for x in self.elements()? {
            if pred(&x) && !current.contains(&x) {
                gens.push(x);
                current = PermGroup::new(self.degree, gens.clone())?.with_cap(self.cap);
            }
        }
        Ok(current)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|a| g.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Same element set.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// `g^-1 H g` for `H = self`.
    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        let gens = self.generators.iter().map(|x| x.conjugate_by(g)).collect();
        PermGroup::new(self.degree, gens)
            .expect("conjugate generators are valid")
            .with_cap(self.cap)
    }

    pub fn is_cyclic(&self) -> Result<bool> {
        if self.order == 1 {
            return Ok(true);
        }
        Ok(self.elements()?.iter().any(|x| x.order() == self.order))
    }

    pub fn conjugacy_classes(&self) -> Result<Classes> {
        Classes::new(self)
    }

    /// Class indices of elements of order `p^d`, `d >= 1`.
    pub fn con_p(&self, p: u64) -> Result<Vec<usize>> {
        self.conjugacy_classes()?.con_p(p)
    }

    pub fn centralizer(&self, g: &Perm) -> Result<PermGroup> {
        self.require_member(g)?;
        self.subgroup_where(|x| x.compose(g) == g.compose(x))
    }

    /// Normalizer of the cyclic subgroup generated by `g`.
    pub fn normalizer_of_cyclic(&self, g: &Perm) -> Result<PermGroup> {
        self.require_member(g)?;
        let n = g.order();
        let powers: Vec<Perm> = (0..n as i64).map(|k| g.pow(k)).collect();
        self.subgroup_where(|x| powers.contains(&g.conjugate_by(x)))
    }

    fn require_member(&self, g: &Perm) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::Membership(format!("{g} is not an element of the group")))
        }
    }

    /// Normalizer of a subgroup `h` of `self`.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        self.subgroup_where(|x| h.generators.iter().all(|s| h.contains(&s.conjugate_by(x))))
    }

    /// A Sylow `p`-subgroup, grown one `p`-element at a time inside normalizers.
    pub fn sylow(&self, p: u64) -> Result<PermGroup> {
        if !is_prime(p) {
            return Err(validation(format!("{p} is not prime")));
        }
        let target = arith::p_part(self.order, p);
        let mut current = PermGroup::trivial(self.degree).with_cap(self.cap);
        while current.order() < target {
            let norm = self.normalizer(&current)?;
            let mut grown = None;
            for x in norm.elements()? {
                let ord = x.order();
                let prime_to_p = ord / arith::p_part(ord, p);
                let y = x.pow(prime_to_p as i64);
                if !current.contains(&y) {
                    let mut gens = current.generators.clone();
                    gens.push(y);
                    grown = Some(PermGroup::new(self.degree, gens)?.with_cap(self.cap));
                    break;
                }
            }
            current = grown.ok_or_else(|| {
                crate::error::consistency(format!(
                    "no p-element found in the normalizer of a {p}-subgroup of order {}",
                    current.order()
                ))
            })?;
            if !arith::is_power_of(current.order(), p) {
                return Err(crate::error::consistency("Sylow growth left the p-subgroups"));
            }
        }
        Ok(current)
    }
}

/// Data attached to one conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub representative: Perm,
    pub size: u64,
    pub element_order: u64,
    pub centralizer_order: u64,
    /// `power_map[k]` is the class of `representative^k`, for `0 <= k < element_order`.
    pub power_map: Vec<usize>,
}

impl ClassData {
    /// Class of `representative^k` for any integer `k`.
    pub fn power(&self, k: i64) -> usize {
        let n = self.element_order as i64;
        self.power_map[k.rem_euclid(n) as usize]
    }
}

/// The conjugacy classes of a group together with an element-to-class lookup.
#[derive(Clone, Debug)]
pub struct Classes {
    group_order: u64,
    classes: Vec<ClassData>,
    elements: Vec<Perm>,
    class_of_element: Vec<usize>,
    index: HashMap<Perm, usize>,
}

impl Classes {
    fn new(group: &PermGroup) -> Result<Classes> {
        let elements = group.elements()?;
        let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let n = elements.len();
        let mut raw_class = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut members = vec![start];
            raw_class[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for s in group.generators() {
                    let y = elements[i].conjugate_by(s);
                    let j = index[&y];
                    if raw_class[j] == usize::MAX {
                        raw_class[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            raw.push(members);
        }
        // elements are sorted, so the first member found is the minimal one
        let mut keyed: Vec<(u64, u64, usize, usize)> = raw
            .iter()
            .enumerate()
            .map(|(id, members)| {
                let rep = *members.iter().min().unwrap();
                (elements[rep].order(), members.len() as u64, rep, id)
            })
            .collect();
        keyed.sort();
        let mut relabel = vec![0usize; raw.len()];
        for (new, &(_, _, _, old)) in keyed.iter().enumerate() {
            relabel[old] = new;
        }
        let class_of_element: Vec<usize> = raw_class.iter().map(|&c| relabel[c]).collect();
        let order = group.order();
        let classes = keyed
            .iter()
            .map(|&(ord, size, rep, _)| {
                let representative = elements[rep].clone();
                let power_map = (0..ord as i64)
                    .map(|k| class_of_element[index[&representative.pow(k)]])
                    .collect();
                ClassData {
                    representative,
                    size,
                    element_order: ord,
                    centralizer_order: order / size,
                    power_map,
                }
            })
            .collect();
        Ok(Classes {
            group_order: order,
            classes,
            elements,
            class_of_element,
            index,
        })
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ClassData> {
        self.classes.iter()
    }

    pub fn as_slice(&self) -> &[ClassData] {
        &self.classes
    }

    /// Sorted list of all group elements.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn class_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).map(|&i| self.class_of_element[i])
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = &Perm> + '_ {
        self.elements
            .iter()
            .zip(&self.class_of_element)
            .filter(move |(_, &c)| c == class)
            .map(|(x, _)| x)
    }

    /// Class containing the inverses of the elements of `class`.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.classes[class].power(-1)
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.classes.iter().fold(1, |acc, c| arith::lcm(acc, c.element_order))
    }

    pub fn con_p(&self, p: u64) -> Result<Vec<usize>> {
        if !is_prime(p) {
            return Err(validation(format!("{p} is not prime")));
        }
        Ok(self
            .classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.element_order > 1 && arith::is_power_of(c.element_order, p))
            .map(|(i, _)| i)
            .collect())
    }
}

impl std::ops::Index<usize> for Classes {
    type Output = ClassData;
    fn index(&self, i: usize) -> &ClassData {
        &self.classes[i]
    }
}

/// For `H <= G`, sends each class of `H` to the class of `G` containing it.
pub fn class_fusion(h: &PermGroup, h_classes: &Classes, g: &PermGroup, g_classes: &Classes) -> Result<Vec<usize>> {
    if !h.is_subgroup_of(g) {
        return Err(Error::Membership("subgroup is not contained in the group".into()));
    }
    h_classes
        .iter()
        .map(|c| {
            g_classes
                .class_of(&c.representative)
                .ok_or_else(|| Error::Membership(format!("{} is not in the group", c.representative)))
        })
        .collect()
}

/// Sorted element list of the conjugate of `h` that is lexicographically least;
/// equal for conjugate subgroups.
fn conjugacy_key(g_elements: &[Perm], h_elements: &[Perm]) -> Vec<Perm> {
    let mut best: Option<Vec<Perm>> = None;
    for x in g_elements {
        let mut conj: Vec<Perm> = h_elements.iter().map(|y| y.conjugate_by(x)).collect();
        conj.sort();
        if best.as_ref().is_none_or(|b| conj < *b) {
            best = Some(conj);
        }
    }
    best.expect("group is nonempty")
}

/// Representatives, up to conjugacy, of all subgroups generated by at most two
/// elements, ordered by (order, key). For groups whose subgroups are all
/// 2-generated (every group of order below 32 except a few) this is the full
/// list of subgroup classes.
pub fn two_generated_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let classes = g.conjugacy_classes()?;
    let elements = classes.elements().to_vec();
    let mut seen_sets: std::collections::HashSet<Vec<Perm>> = std::collections::HashSet::new();
    let mut by_key: std::collections::BTreeMap<(u64, Vec<Perm>), PermGroup> = std::collections::BTreeMap::new();
    for c in classes.iter() {
        let x = &c.representative;
        for y in &elements {
            let h = g.subgroup(vec![x.clone(), y.clone()])?;
            let mut hs = h.elements()?;
            hs.sort();
            if !seen_sets.insert(hs.clone()) {
                continue;
            }
            let key = conjugacy_key(&elements, &hs);
            by_key.entry((h.order(), key)).or_insert(h);
        }
    }
    Ok(by_key.into_values().collect())
}

/// Orbits of `left` x `right` acting on the elements of `g` by
/// `x -> l x r`; returns one representative per double coset `L x R`.
pub fn double_coset_representatives(g_elements: &[Perm], left: &PermGroup, right: &PermGroup) -> Result<Vec<Perm>> {
    let l = left.elements()?;
    let r = right.elements()?;
    let mut seen: std::collections::HashSet<Perm> = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for x in g_elements {
        if seen.contains(x) {
            continue;
        }
        reps.push(x.clone());
        for a in &l {
            let ax = a.compose(x);
            for b in &r {
                seen.insert(ax.compose(b));
            }
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    fn s3() -> PermGroup {
        let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        group_from_generators(3, vec![t, c]).unwrap()
    }

    fn brute_closure(gens: &[Perm], degree: usize) -> usize {
        let mut set = std::collections::HashSet::new();
        set.insert(Perm::identity(degree));
        let mut frontier = vec![Perm::identity(degree)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.compose(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set.len()
    }

    #[test]
    fn orders_match_brute_force_closure() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(brute_closure(g.generators(), 3), 6);
        let c4 = group_from_generators(4, vec![Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()]).unwrap();
        assert_eq!(c4.order(), 4);
        assert_eq!(brute_closure(c4.generators(), 4), 4);
        let t = group_from_generators(1, vec![]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.elements().unwrap().len(), 1);
    }

    #[test]
    fn malformed_generator_is_named() {
        let bad = Perm { images: vec![0, 0, 2] };
        let err = group_from_generators(3, vec![Perm::identity(3), bad]).unwrap_err();
        assert!(
            matches!(err, Error::Validation(ref m) if m.contains("generator 1")),
            "{err}"
        );
        assert!(Perm::new(vec![0, 3, 1]).is_err());
        assert!(Perm::new(vec![1, 1, 0]).is_err());
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let g = groups::symmetric(5).with_cap(100);
        match g.elements() {
            Err(Error::Resource { order, cap }) => {
                assert_eq!(order, 120);
                assert_eq!(cap, 100);
            }
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn s3_classes() {
        let g = s3();
        let cl = g.conjugacy_classes().unwrap();
        let sizes: Vec<u64> = cl.iter().map(|c| c.size).collect();
        let orders: Vec<u64> = cl.iter().map(|c| c.element_order).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(orders, vec![1, 2, 3]);
        assert!(cl[0].representative.is_identity());
        for c in cl.iter() {
            assert_eq!(c.size * c.centralizer_order, 6);
            assert_eq!(c.power(c.element_order as i64), 0);
        }
        assert_eq!(cl[2].power(1), 2);
        assert_eq!(g.con_p(2).unwrap(), vec![1]);
        assert_eq!(g.con_p(3).unwrap(), vec![2]);
        assert!(g.con_p(4).is_err());
    }

    #[test]
    fn q8_classes() {
        let q8 = groups::quaternion();
        let cl = q8.conjugacy_classes().unwrap();
        let mut sizes: Vec<u64> = cl.iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn cyclic_con_p() {
        let c4 = groups::cyclic(4);
        let cl = c4.conjugacy_classes().unwrap();
        let idx = cl.con_p(2).unwrap();
        let orders: Vec<u64> = idx.iter().map(|&i| cl[i].element_order).collect();
        assert_eq!(orders, vec![2, 4, 4]);
        assert!(groups::cyclic(1).con_p(2).unwrap().is_empty());
    }

    #[test]
    fn centralizers_and_normalizers() {
        let g = s3();
        let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        assert_eq!(g.centralizer(&t).unwrap().order(), 2);
        assert_eq!(g.centralizer(&g.identity()).unwrap().order(), 6);
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(g.normalizer_of_cyclic(&c).unwrap().order(), 6);
        assert_eq!(g.centralizer(&c).unwrap().order(), 3);
        let outside = Perm::from_cycles(4, &[&[2, 3]]).unwrap();
        assert!(matches!(g.centralizer(&outside), Err(Error::Membership(_))));

        let q8 = groups::quaternion();
        let minus_one = q8.elements().unwrap().into_iter().find(|x| x.order() == 2).unwrap();
        assert_eq!(q8.centralizer(&minus_one).unwrap().order(), 8);

        let d4 = groups::dihedral(4);
        let rot = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let n = d4.normalizer_of_cyclic(&rot).unwrap();
        let c = d4.centralizer(&rot).unwrap();
        assert_eq!(n.order(), 8);
        assert_eq!(n.order() / c.order(), 2);

        let ab = groups::cyclic(6);
        let x = ab.generators()[0].pow(2);
        assert_eq!(ab.normalizer_of_cyclic(&x).unwrap().order(), 6);
    }

    #[test]
    fn sylow_subgroups() {
        let g = s3();
        assert_eq!(g.sylow(2).unwrap().order(), 2);
        assert_eq!(g.sylow(3).unwrap().order(), 3);
        assert_eq!(g.sylow(5).unwrap().order(), 1);
        assert!(g.sylow(6).is_err());
        let s4 = groups::symmetric(4);
        let p2 = s4.sylow(2).unwrap();
        assert_eq!(p2.order(), 8);
        assert!(p2.is_subgroup_of(&s4));
        // reproducible
        let again = s4.sylow(2).unwrap();
        assert_eq!(p2.generators(), again.generators());
    }

    #[test]
    fn fusion_into_s3() {
        let g = s3();
        let gc = g.conjugacy_classes().unwrap();
        let z2 = g.subgroup(vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        let z2c = z2.conjugacy_classes().unwrap();
        assert_eq!(class_fusion(&z2, &z2c, &g, &gc).unwrap(), vec![0, 1]);
        let z3 = g.subgroup(vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
        let z3c = z3.conjugacy_classes().unwrap();
        assert_eq!(class_fusion(&z3, &z3c, &g, &gc).unwrap(), vec![0, 2, 2]);
        assert_eq!(class_fusion(&g, &gc, &g, &gc).unwrap(), vec![0, 1, 2]);
        let other = groups::cyclic(3);
        let oc = other.conjugacy_classes().unwrap();
        let s4 = groups::symmetric(4);
        let s4c = s4.conjugacy_classes().unwrap();
        assert!(class_fusion(&other, &oc, &s4, &s4c).is_err());
    }

    #[test]
    fn double_cosets_of_s3() {
        let g = s3();
        let h = g.subgroup(vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        let reps = double_coset_representatives(&g.elements().unwrap(), &h, &h).unwrap();
        assert_eq!(reps.len(), 2);
    }

    #[test]
    fn subgroup_classes() {
        let count = |g: &PermGroup| two_generated_subgroups(g).unwrap().len();
        assert_eq!(count(&crate::groups::symmetric(3)), 4);
        assert_eq!(count(&crate::groups::alternating(4)), 5);
        assert_eq!(count(&crate::groups::dihedral(4)), 8);
        assert_eq!(count(&crate::groups::quaternion()), 6);
        assert_eq!(count(&crate::groups::symmetric(4)), 11);
    }
}
