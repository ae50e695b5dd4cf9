//! Small catalog of concrete permutation groups used by tests, the self-check
//! corpus and the command-line tool.

use crate::permgroup::{Perm, PermGroup};

fn cycle(degree: usize, points: &[u32]) -> Perm {
    Perm::from_cycles(degree, &[points]).expect("catalog cycles are valid")
}

fn build(degree: usize, gens: Vec<Perm>) -> PermGroup {
    PermGroup::new(degree, gens).expect("catalog generators are valid")
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    assert!(n >= 1);
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let pts: Vec<u32> = (0..n as u32).collect();
    build(n, vec![cycle(n, &pts)])
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon (`n >= 3`).
pub fn dihedral(n: usize) -> PermGroup {
    assert!(n >= 3);
    let pts: Vec<u32> = (0..n as u32).collect();
    let rot = cycle(n, &pts);
    let refl =
        Perm::new((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect()).expect("reflection is a permutation");
    build(n, vec![rot, refl])
}

pub fn symmetric(n: usize) -> PermGroup {
    assert!(n >= 1);
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let pts: Vec<u32> = (0..n as u32).collect();
    build(n, vec![cycle(n, &[0, 1]), cycle(n, &pts)])
}

pub fn alternating(n: usize) -> PermGroup {
    assert!(n >= 1);
    if n < 3 {
        return PermGroup::trivial(n);
    }
    let gens = (2..n as u32).map(|k| cycle(n, &[0, 1, k])).collect();
    build(n, gens)
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> PermGroup {
    // points: 0=1, 1=i, 2=j, 3=k, 4=-1, 5=-i, 6=-j, 7=-k; right multiplication
    let i = Perm::new(vec![1, 4, 7, 2, 5, 0, 3, 6]).expect("valid");
    let j = Perm::new(vec![2, 3, 4, 5, 6, 7, 0, 1]).expect("valid");
    build(8, vec![i, j])
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let da = a.degree();
    let db = b.degree();
    let degree = da + db;
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<u32> = g.images().to_vec();
        images.extend((da as u32)..(degree as u32));
        gens.push(Perm::new(images).expect("valid"));
    }
    for g in b.generators() {
        let mut images: Vec<u32> = (0..da as u32).collect();
        images.extend(g.images().iter().map(|&x| x + da as u32));
        gens.push(Perm::new(images).expect("valid"));
    }
    build(degree, gens)
}

/// The Klein four-group as a subgroup of `S_4`.
pub fn klein_four() -> PermGroup {
    let a = Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).expect("valid");
    let b = Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).expect("valid");
    build(4, vec![a, b])
}

/// Looks a catalog group up by a short name such as `C4`, `D6`, `S4`, `A4`,
/// `Q8`, `V4` or `C2xC4`.
pub fn by_name(name: &str) -> Option<PermGroup> {
    if let Some((l, r)) = name.split_once('x') {
        return Some(direct_product(&by_name(l)?, &by_name(r)?));
    }
    let (head, tail) = name.split_at(1.min(name.len()));
    let n: Option<usize> = tail.parse().ok();
    match (head, n) {
        ("C", Some(n)) if n >= 1 => Some(cyclic(n)),
        ("D", Some(n)) if n >= 3 => Some(dihedral(n)),
        ("S", Some(n)) if n >= 1 => Some(symmetric(n)),
        ("A", Some(n)) if n >= 1 => Some(alternating(n)),
        ("Q", Some(8)) => Some(quaternion()),
        ("V", Some(4)) => Some(klein_four()),
        _ => None,
    }
}

/// Self-check corpus: groups of order at most `max_order`, smallest first.
pub fn corpus(max_order: u64) -> Vec<(String, PermGroup)> {
    let names = [
        "C1", "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "D4", "Q8", "C2xC4", "C9", "D5", "C10", "C12",
        "D6", "A4", "C16", "S4",
    ];
    names
        .iter()
        .filter_map(|n| by_name(n).map(|g| (n.to_string(), g)))
        .filter(|(_, g)| g.order() <= max_order)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        assert_eq!(cyclic(1).order(), 1);
        assert_eq!(cyclic(7).order(), 7);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(dihedral(6).order(), 12);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(quaternion().order(), 8);
        assert!(!quaternion().is_abelian());
        assert_eq!(klein_four().order(), 4);
        assert_eq!(by_name("C2xC4").unwrap().order(), 8);
        assert!(by_name("Z9").is_none());
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion();
        let involutions = q.elements().unwrap().iter().filter(|x| x.order() == 2).count();
        assert_eq!(involutions, 1);
        assert!(q.elements().unwrap().iter().all(|x| x.order() <= 4));
    }

    #[test]
    fn corpus_respects_bound() {
        let c = corpus(24);
        assert!(c.iter().all(|(_, g)| g.order() <= 24));
        assert!(c.iter().any(|(n, _)| n == "S4"));
        assert!(corpus(8).iter().all(|(n, _)| n != "S4"));
    }
}
