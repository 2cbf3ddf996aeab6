//! Subgroup enumeration and the structural predicates the counting theorems
//! rely on: Sylow and Hall subgroups, the Fitting subgroup, nilpotency,
//! solubility, subnormality, N-constraint and Sylow towers.

use std::collections::HashMap;

use crate::bitset::ElemSet;
use crate::group::{quotient_by_normal, Group, Subgroup};
use crate::{is_prime, p_part, pi_part, prime_divisors, Caps, Error, Result};

/// Every subgroup of a group, deduplicated and sorted by (order, member set).
pub struct SubgroupLattice {
    pub parent: Group,
    pub subgroups: Vec<ElemSet>,
    index: HashMap<ElemSet, usize>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn position(&self, s: &ElemSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn subgroup(&self, i: usize) -> Subgroup {
        Subgroup {
            parent: self.parent.clone(),
            members: self.subgroups[i].clone(),
        }
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.subgroups[i].is_subset(&self.subgroups[j])
    }
}

/// Enumerate all subgroups: seed with the cyclic subgroups, then close under
/// pairwise join. Exhaustive at this scale because every subgroup is a join
/// of cyclic subgroups.
pub fn all_subgroups(g: &Group, caps: &Caps) -> Result<SubgroupLattice> {
    let n = g.order();
    if n > caps.max_lattice_order {
        return Err(Error::ResourceLimit(format!(
            "order {n} exceeds lattice cap {}",
            caps.max_lattice_order
        )));
    }
    let mut subs: Vec<ElemSet> = Vec::new();
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashMap<ElemSet, usize> = HashMap::new();
    let mut push = |s: ElemSet,
                    gs: Vec<usize>,
                    subs: &mut Vec<ElemSet>,
                    gens: &mut Vec<Vec<usize>>|
     -> Result<bool> {
        if seen.contains_key(&s) {
            return Ok(false);
        }
        if subs.len() >= caps.max_subgroups {
            return Err(Error::ResourceLimit(format!(
                "subgroup count exceeds cap {}",
                caps.max_subgroups
            )));
        }
        seen.insert(s.clone(), subs.len());
        subs.push(s);
        gens.push(gs);
        Ok(true)
    };
    push(g.trivial_set(), vec![], &mut subs, &mut gens)?;
    for x in 0..n {
        let c = g.closure_of([x]);
        push(c, vec![x], &mut subs, &mut gens)?;
    }
    let mut i = 0;
    while i < subs.len() {
        for j in 0..i {
            if subs[i].is_subset(&subs[j]) || subs[j].is_subset(&subs[i]) {
                continue;
            }
            let mut seed = gens[i].clone();
            seed.extend_from_slice(&gens[j]);
            let join = g.closure_of(seed.iter().copied());
            seed.sort_unstable();
            seed.dedup();
            push(join, seed, &mut subs, &mut gens)?;
        }
        i += 1;
    }
    subs.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
    let index = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    Ok(SubgroupLattice {
        parent: g.clone(),
        subgroups: subs,
        index,
    })
}

/// True when every element of S has p-power order.
pub fn is_p_subgroup(g: &Group, s: &ElemSet, p: u64) -> bool {
    s.iter().all(|x| {
        let mut o = g.elem_order(x) as u64;
        while o % p == 0 {
            o /= p;
        }
        o == 1
    })
}

pub fn is_pi_subgroup(g: &Group, s: &ElemSet, pi: &[u64]) -> bool {
    s.iter().all(|x| {
        let o = g.elem_order(x) as u64;
        pi_part(o, pi) == o
    })
}

/// A Sylow p-subgroup, grown from a p-element of maximal order by adjoining
/// normalizing p-elements. Returns the trivial subgroup when p ∤ |G|.
pub fn sylow_subgroup(g: &Group, p: u64) -> ElemSet {
    let pp = p_part(g.order() as u64, p) as usize;
    if pp == 1 {
        return g.trivial_set();
    }
    let seed = (0..g.order())
        .filter(|&x| {
            let o = g.elem_order(x) as u64;
            o > 1 && p_part(o, p) == o
        })
        .max_by_key(|&x| (g.elem_order(x), std::cmp::Reverse(x)))
        .expect("p divides |G| so a p-element exists");
    let mut sub = g.closure_of([seed]);
    let mut gens = vec![seed];
    while sub.count() < pp {
        let nm = g.normalizer_of(&sub);
        let ext = nm
            .iter()
            .find(|&x| {
                if sub.contains(x) {
                    return false;
                }
                let o = g.elem_order(x) as u64;
                p_part(o, p) == o
            })
            .expect("a p-subgroup below Sylow order has a larger p-normalizer");
        gens.push(ext);
        sub = g.closure_of(gens.iter().copied());
    }
    sub
}

/// Sylow p-subgroup of a subgroup H ≤ G, expressed in G's element ids.
pub fn sylow_of_subgroup(g: &Group, h: &ElemSet, p: u64) -> ElemSet {
    let (sub, back) = g.materialize(h);
    let s = sylow_subgroup(&sub, p);
    ElemSet::from_iter(g.order(), s.iter().map(|i| back[i]))
}

/// n_p(G, X): Sylow p-subgroups of G containing the p-subgroup X.
pub fn count_sylow_containing(g: &Group, x: &ElemSet, p: u64) -> Result<usize> {
    if !is_p_subgroup(g, x, p) {
        return Err(Error::Domain(format!("subgroup is not a {p}-group")));
    }
    let s = sylow_subgroup(g, p);
    Ok(g.conjugates_of(&s)
        .iter()
        .filter(|c| x.is_subset(c))
        .count())
}

/// All Sylow p-subgroups of G.
pub fn all_sylow(g: &Group, p: u64) -> Vec<ElemSet> {
    g.conjugates_of(&sylow_subgroup(g, p))
}

/// All Hall π-subgroups of a soluble group, by filtering the full lattice.
pub fn hall_subgroups(g: &Group, pi: &[u64], caps: &Caps) -> Result<Vec<ElemSet>> {
    if !is_soluble(g) {
        return Err(Error::Domain(
            "Hall subgroups require a soluble group".into(),
        ));
    }
    let target = pi_part(g.order() as u64, pi) as usize;
    if g.order() <= caps.max_lattice_order {
        let lat = all_subgroups(g, caps)?;
        return Ok(lat
            .subgroups
            .iter()
            .filter(|s| s.count() == target)
            .cloned()
            .collect());
    }
    hall_by_sylow_joins(g, pi, target)
}

/// Alternative Hall construction: search joins of Sylow-subgroup conjugates
/// for the π-order. Used as the independent route in tests and as the
/// fallback when the lattice is over cap.
pub fn hall_by_sylow_joins(g: &Group, pi: &[u64], target: usize) -> Result<Vec<ElemSet>> {
    let order = g.order() as u64;
    let active: Vec<u64> = pi.iter().copied().filter(|&p| order % p == 0).collect();
    let mut partial: Vec<ElemSet> = vec![g.trivial_set()];
    for &p in &active {
        let syls = all_sylow(g, p);
        let mut next: Vec<ElemSet> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for part in &partial {
            for s in &syls {
                let mut seed: Vec<usize> = part.iter().collect();
                seed.extend(s.iter());
                let join = g.closure_of(seed);
                let jn = join.count() as u64;
                if pi_part(jn, pi) == jn && seen.insert(join.clone()) {
                    next.push(join);
                }
            }
        }
        partial = next;
    }
    let mut found: Vec<ElemSet> = partial
        .into_iter()
        .filter(|s| s.count() == target)
        .collect();
    if found.is_empty() {
        return Err(Error::Domain(
            "no Hall subgroup found by Sylow joins".into(),
        ));
    }
    // saturate with conjugates (one conjugacy class in soluble groups)
    let mut seen: std::collections::HashSet<ElemSet> = found.iter().cloned().collect();
    let all = g.conjugates_of(&found[0]);
    for c in all {
        if seen.insert(c.clone()) {
            found.push(c);
        }
    }
    found.sort();
    Ok(found)
}

/// ν_π(G, X): Hall π-subgroups of G containing the π-subgroup X.
pub fn count_hall_containing(g: &Group, x: &ElemSet, pi: &[u64], caps: &Caps) -> Result<usize> {
    if !is_pi_subgroup(g, x, pi) {
        return Err(Error::Domain("subgroup is not a π-group".into()));
    }
    let halls = hall_subgroups(g, pi, caps)?;
    Ok(halls.iter().filter(|h| x.is_subset(h)).count())
}

/// O_p(G): intersection of all Sylow p-subgroups.
pub fn p_core(g: &Group, p: u64) -> ElemSet {
    let s = sylow_subgroup(g, p);
    g.normal_core_of(&s)
}

/// F(G): the product of the p-cores over all primes dividing |G|.
pub fn fitting_subgroup(g: &Group) -> ElemSet {
    let mut seed: Vec<usize> = vec![0];
    for p in prime_divisors(g.order() as u64) {
        seed.extend(p_core(g, p).iter());
    }
    g.closure_of(seed)
}

/// Fitting subgroup of a subgroup H ≤ G, in G's element ids.
pub fn fitting_of_subgroup(g: &Group, h: &ElemSet) -> ElemSet {
    let (sub, back) = g.materialize(h);
    let f = fitting_subgroup(&sub);
    ElemSet::from_iter(g.order(), f.iter().map(|i| back[i]))
}

/// Nilpotency of a subgroup: for each prime, the p-elements must be closed
/// under multiplication (then each primary part is a normal Sylow subgroup).
pub fn is_nilpotent(g: &Group, s: &ElemSet) -> bool {
    let order = s.count() as u64;
    for p in prime_divisors(order) {
        let pelems: Vec<usize> = s
            .iter()
            .filter(|&x| {
                let o = g.elem_order(x) as u64;
                p_part(o, p) == o
            })
            .collect();
        for &x in &pelems {
            for &y in &pelems {
                let o = g.elem_order(g.mul(x, y)) as u64;
                if p_part(o, p) != o {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_soluble(g: &Group) -> bool {
    is_soluble_set(g, &g.full_set())
}

pub fn is_soluble_set(g: &Group, s: &ElemSet) -> bool {
    let mut cur = s.clone();
    loop {
        let next = g.derived_of(&cur);
        if next.count() == 1 {
            return true;
        }
        if next == cur {
            return false;
        }
        cur = next;
    }
}

/// Normal closure of S inside an ambient subgroup A (S ≤ A ≤ G).
fn normal_closure_in(g: &Group, ambient: &ElemSet, s: &ElemSet) -> ElemSet {
    let gens = g.gens_of(s);
    let mut seed: Vec<usize> = Vec::new();
    for a in ambient.iter() {
        for &x in &gens {
            seed.push(g.conj(x, a));
        }
    }
    g.closure_of(seed)
}

/// Subnormality via iterated normal closure.
pub fn is_subnormal(g: &Group, s: &ElemSet) -> bool {
    let mut ambient = g.full_set();
    loop {
        let next = normal_closure_in(g, &ambient, s);
        if next == *s {
            return true;
        }
        if next == ambient {
            return false;
        }
        ambient = next;
    }
}

/// N-constraint: C_G(F(G)) ≤ F(G).
pub fn is_n_constrained(g: &Group) -> bool {
    let f = fitting_subgroup(g);
    g.centralizer_of(&f).is_subset(&f)
}

/// N-constraint of a subgroup, computed in its own right.
pub fn is_n_constrained_set(g: &Group, h: &ElemSet) -> bool {
    let (sub, _) = g.materialize(h);
    is_n_constrained(&sub)
}

/// Sylow tower: some prime has a normal Sylow subgroup whose quotient again
/// has a Sylow tower.
pub fn has_sylow_tower(g: &Group) -> bool {
    if g.order() == 1 {
        return true;
    }
    for p in prime_divisors(g.order() as u64) {
        let s = sylow_subgroup(g, p);
        if g.is_normal(&s) {
            let (q, _) = quotient_by_normal(g, &s).expect("normal Sylow subgroup");
            if has_sylow_tower(&q) {
                return true;
            }
        }
    }
    false
}

/// Sanity guard for prime arguments coming from external surfaces.
pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not prime")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::standard;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn all_subgroups_counts() {
        let s3 = standard("symmetric", &[3]).unwrap();
        assert_eq!(all_subgroups(&s3, &caps()).unwrap().len(), 6);
        let v4 = standard("elementary_abelian", &[2, 2]).unwrap();
        assert_eq!(all_subgroups(&v4, &caps()).unwrap().len(), 5);
        let c5 = standard("cyclic", &[5]).unwrap();
        assert_eq!(all_subgroups(&c5, &caps()).unwrap().len(), 2);
    }

    #[test]
    fn lattice_matches_brute_force_for_small_orders() {
        // independent oracle: all subsets closed under multiplication
        for (name, params) in [
            ("symmetric", vec![3usize]),
            ("cyclic", vec![12]),
            ("dihedral", vec![4]),
            ("elementary_abelian", vec![2, 2]),
        ] {
            let g = standard(name, &params).unwrap();
            let lat = all_subgroups(&g, &caps()).unwrap();
            let brute = brute_force_subgroups(&g);
            assert_eq!(lat.len(), brute.len(), "{name}{params:?}");
        }
    }

    fn brute_force_subgroups(g: &Group) -> Vec<ElemSet> {
        let n = g.order();
        assert!(n <= 24);
        let mut found = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let s = ElemSet::from_iter(n, (0..n).filter(|&i| mask >> i & 1 == 1));
            if g.is_subgroup(&s) {
                found.push(s);
            }
        }
        found
    }

    #[test]
    fn lattice_cap_errors() {
        let g = standard("symmetric", &[4]).unwrap();
        let tight = Caps {
            max_lattice_order: 10,
            ..Caps::default()
        };
        assert!(matches!(
            all_subgroups(&g, &tight),
            Err(Error::ResourceLimit(_))
        ));
        let tight2 = Caps {
            max_subgroups: 5,
            ..Caps::default()
        };
        assert!(matches!(
            all_subgroups(&g, &tight2),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn sylow_examples() {
        let s4 = standard("symmetric", &[4]).unwrap();
        assert_eq!(sylow_subgroup(&s4, 2).count(), 8);
        let f21 = standard("frobenius21", &[]).unwrap();
        let s7 = sylow_subgroup(&f21, 7);
        assert_eq!(s7.count(), 7);
        assert!(f21.is_normal(&s7));
        let d8 = standard("dihedral", &[4]).unwrap();
        assert_eq!(sylow_subgroup(&d8, 2), d8.full_set());
        assert_eq!(sylow_subgroup(&d8, 5).count(), 1);
    }

    #[test]
    fn count_sylow_examples() {
        let s4 = standard("symmetric", &[4]).unwrap();
        // a transposition lies in exactly one of the 3 Sylow 2-subgroups
        let transposition = (0..24)
            .find(|&x| {
                s4.elem_order(x) == 2 && {
                    let pr = s4.permutations().unwrap();
                    let p = pr.perm(x);
                    (0..4).filter(|&i| p.apply(i) != i).count() == 2
                }
            })
            .unwrap();
        let x = s4.closure_of([transposition]);
        assert_eq!(count_sylow_containing(&s4, &x, 2).unwrap(), 1);
        assert_eq!(count_sylow_containing(&s4, &s4.trivial_set(), 2).unwrap(), 3);
        let f21 = standard("frobenius21", &[]).unwrap();
        let s7 = sylow_subgroup(&f21, 7);
        assert_eq!(count_sylow_containing(&f21, &s7, 7).unwrap(), 1);
        // non-p-group input is a domain error
        assert!(count_sylow_containing(&s4, &s4.full_set(), 2).is_err());
    }

    #[test]
    fn hall_examples() {
        let f21 = standard("frobenius21", &[]).unwrap();
        let h37 = hall_subgroups(&f21, &[3, 7], &caps()).unwrap();
        assert_eq!(h37.len(), 1);
        assert_eq!(h37[0].count(), 21);
        let h7 = hall_subgroups(&f21, &[7], &caps()).unwrap();
        assert_eq!(h7.len(), 1);
        assert_eq!(h7[0].count(), 7);
        let h3 = hall_subgroups(&f21, &[3], &caps()).unwrap();
        assert_eq!(h3.len(), 7);

        assert_eq!(count_hall_containing(&f21, &f21.trivial_set(), &[3], &caps()).unwrap(), 7);
        let c3 = h3[0].clone();
        assert_eq!(count_hall_containing(&f21, &c3, &[3], &caps()).unwrap(), 1);

        let a4 = standard("alternating", &[5]).unwrap();
        assert!(hall_subgroups(&a4, &[2], &caps()).is_err());
    }

    #[test]
    fn hall_paths_agree() {
        for (name, params, pi) in [
            ("frobenius21", vec![], vec![3u64]),
            ("symmetric", vec![4usize], vec![3]),
            ("symmetric", vec![4], vec![2]),
            ("small_54_5", vec![], vec![3]),
        ] {
            let g = standard(name, &params).unwrap();
            let a = hall_subgroups(&g, &pi, &caps()).unwrap();
            let target = pi_part(g.order() as u64, &pi) as usize;
            let mut b = hall_by_sylow_joins(&g, &pi, target).unwrap();
            let mut a = a;
            a.sort();
            b.sort();
            assert_eq!(a, b, "{name} π={pi:?}");
        }
    }

    #[test]
    fn fitting_examples() {
        let s4 = standard("symmetric", &[4]).unwrap();
        let f = fitting_subgroup(&s4);
        assert_eq!(f.count(), 4);
        let c12 = standard("cyclic", &[12]).unwrap();
        assert_eq!(fitting_subgroup(&c12), c12.full_set());
        let g = standard("s3xs4", &[]).unwrap();
        assert_eq!(fitting_subgroup(&g).count(), 12);
    }

    #[test]
    fn fitting_contains_every_normal_nilpotent_subgroup() {
        for (name, params) in [
            ("symmetric", vec![4usize]),
            ("dihedral", vec![6]),
            ("frobenius21", vec![]),
            ("small_54_5", vec![]),
        ] {
            let g = standard(name, &params).unwrap();
            let f = fitting_subgroup(&g);
            let lat = all_subgroups(&g, &caps()).unwrap();
            for s in &lat.subgroups {
                if g.is_normal(s) && is_nilpotent(&g, s) {
                    assert!(s.is_subset(&f), "{name}{params:?}");
                }
            }
            assert!(g.is_normal(&f));
            assert!(is_nilpotent(&g, &f));
        }
    }

    #[test]
    fn nilpotency_examples() {
        let d8 = standard("dihedral", &[4]).unwrap();
        assert!(is_nilpotent(&d8, &d8.full_set()));
        let s3 = standard("symmetric", &[3]).unwrap();
        assert!(!is_nilpotent(&s3, &s3.full_set()));
        let c6 = standard("cyclic", &[6]).unwrap();
        assert!(is_nilpotent(&c6, &c6.full_set()));
    }

    #[test]
    fn solubility_examples() {
        assert!(is_soluble(&standard("symmetric", &[4]).unwrap()));
        assert!(!is_soluble(&standard("alternating", &[5]).unwrap()));
        assert!(is_soluble(&standard("dihedral", &[8]).unwrap()));
    }

    #[test]
    fn subnormality_examples() {
        let s4 = standard("symmetric", &[4]).unwrap();
        let f = fitting_subgroup(&s4); // V4, normal
        assert!(is_subnormal(&s4, &f));
        let transposition = (0..24)
            .find(|&x| {
                s4.elem_order(x) == 2 && {
                    let pr = s4.permutations().unwrap();
                    (0..4).filter(|&i| pr.perm(x).apply(i) != i).count() == 2
                }
            })
            .unwrap();
        let t = s4.closure_of([transposition]);
        assert!(!is_subnormal(&s4, &t));
        assert!(is_subnormal(&s4, &s4.full_set()));
    }

    #[test]
    fn n_constraint_examples() {
        assert!(is_n_constrained(&standard("symmetric", &[4]).unwrap()));
        assert!(!is_n_constrained(&standard("alternating", &[5]).unwrap()));
        assert!(is_n_constrained(&standard("dihedral", &[4]).unwrap()));
    }

    #[test]
    fn sylow_tower_examples() {
        assert!(has_sylow_tower(&standard("frobenius21", &[]).unwrap()));
        assert!(!has_sylow_tower(&standard("symmetric", &[4]).unwrap()));
        assert!(has_sylow_tower(&standard("cyclic", &[12]).unwrap()));
        assert!(has_sylow_tower(&standard("dihedral", &[4]).unwrap()));
    }
}
