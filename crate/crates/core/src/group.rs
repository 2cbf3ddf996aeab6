//! Element-indexed finite groups, subgroup handles and the foundational
//! operations: centralizers, normalizers, cores, quotients and products.
//!
//! Element id 0 is always the identity. Multiplication `mul(a, b)` is "a then
//! b" for permutation-realized groups. Groups are immutable after
//! construction and shared through `Arc`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::perm::Permutation;
use crate::{Caps, Error, Result};

/// Orders up to this bound get a full Cayley table; larger groups fall back
/// to permutation composition with an index lookup.
const CAYLEY_TABLE_MAX_ORDER: usize = 8192;

pub type Group = Arc<FiniteGroup>;

pub struct PermRealization {
    pub degree: usize,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl PermRealization {
    pub fn perm(&self, id: usize) -> &Permutation {
        &self.perms[id]
    }

    pub fn id_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }
}

pub struct FiniteGroup {
    order: usize,
    table: Option<Vec<u16>>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    perms: Option<PermRealization>,
    provenance: String,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub(crate) fn set_provenance(&mut self, p: String) {
        self.provenance = p;
    }

    pub fn permutations(&self) -> Option<&PermRealization> {
        self.perms.as_ref()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.table {
            t[a * self.order + b] as usize
        } else {
            let pr = self.perms.as_ref().expect("group without table or perms");
            let p = pr.perms[a].then(&pr.perms[b]);
            pr.index[&p] as usize
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn elem_order(&self, a: usize) -> usize {
        self.elem_order[a] as usize
    }

    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(
            self.mul(self.inv(x), self.inv(y)),
            self.mul(x, y),
        )
    }

    /// Exhaustive group-axiom check, intended for tests on small orders.
    pub fn check_axioms(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return false;
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Closure of a set of element ids under multiplication.
    pub fn closure_of<I: IntoIterator<Item = usize>>(&self, seed: I) -> ElemSet {
        let mut set = ElemSet::singleton(self.order, 0);
        let gens: Vec<usize> = seed.into_iter().collect();
        let mut work: Vec<usize> = vec![0];
        for &g in &gens {
            if !set.contains(g) {
                set.insert(g);
                work.push(g);
            }
        }
        while let Some(x) = work.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    work.push(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, s: &ElemSet) -> bool {
        if !s.contains(0) {
            return false;
        }
        let elems: Vec<usize> = s.iter().collect();
        for &a in &elems {
            if !s.contains(self.inv(a)) {
                return false;
            }
            for &b in &elems {
                if !s.contains(self.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// A small generating set of a subgroup, found greedily in id order.
    pub fn gens_of(&self, s: &ElemSet) -> Vec<usize> {
        let target = s.count();
        let mut gens = Vec::new();
        let mut have = ElemSet::singleton(self.order, 0);
        if target == 1 {
            return gens;
        }
        for x in s.iter() {
            if !have.contains(x) {
                gens.push(x);
                have = self.closure_of(gens.iter().copied());
                if have.count() == target {
                    break;
                }
            }
        }
        gens
    }

    /// C_G(S) = {g : gs = sg for all s in S}.
    pub fn centralizer_of(&self, s: &ElemSet) -> ElemSet {
        let gens = self.gens_of(s);
        let mut c = ElemSet::empty(self.order);
        'outer: for g in 0..self.order {
            for &x in &gens {
                if self.mul(g, x) != self.mul(x, g) {
                    continue 'outer;
                }
            }
            c.insert(g);
        }
        c
    }

    pub fn centralizer_of_elem(&self, x: usize) -> ElemSet {
        let mut c = ElemSet::empty(self.order);
        for g in 0..self.order {
            if self.mul(g, x) == self.mul(x, g) {
                c.insert(g);
            }
        }
        c
    }

    /// N_G(S) = {g : S^g = S}.
    pub fn normalizer_of(&self, s: &ElemSet) -> ElemSet {
        let gens = self.gens_of(s);
        let mut nm = ElemSet::empty(self.order);
        'outer: for g in 0..self.order {
            for &x in &gens {
                if !s.contains(self.conj(x, g)) {
                    continue 'outer;
                }
            }
            nm.insert(g);
        }
        nm
    }

    /// S^g = g⁻¹ S g.
    pub fn conjugate_set(&self, s: &ElemSet, g: usize) -> ElemSet {
        let mut out = ElemSet::empty(self.order);
        for x in s.iter() {
            out.insert(self.conj(x, g));
        }
        out
    }

    /// All distinct conjugates of S, in first-encounter order over ids.
    pub fn conjugates_of(&self, s: &ElemSet) -> Vec<ElemSet> {
        let mut seen: Vec<ElemSet> = Vec::new();
        let mut set: std::collections::HashSet<ElemSet> = std::collections::HashSet::new();
        for g in 0..self.order {
            let c = self.conjugate_set(s, g);
            if set.insert(c.clone()) {
                seen.push(c);
            }
        }
        seen
    }

    pub fn is_normal(&self, s: &ElemSet) -> bool {
        let gens = self.gens_of(s);
        for g in 0..self.order {
            for &x in &gens {
                if !s.contains(self.conj(x, g)) {
                    return false;
                }
            }
        }
        true
    }

    /// Intersection of all conjugates of S: the largest normal subgroup inside S.
    pub fn normal_core_of(&self, s: &ElemSet) -> ElemSet {
        let mut core = s.clone();
        for g in 0..self.order {
            core = core.intersection(&self.conjugate_set(s, g));
            if core.count() == 1 {
                break;
            }
        }
        core
    }

    /// Smallest normal subgroup containing S.
    pub fn normal_closure_of(&self, s: &ElemSet) -> ElemSet {
        let gens = self.gens_of(s);
        let mut seed: Vec<usize> = Vec::new();
        for g in 0..self.order {
            for &x in &gens {
                seed.push(self.conj(x, g));
            }
        }
        self.closure_of(seed)
    }

    /// Derived subgroup of a subgroup: closure of all commutators inside it.
    pub fn derived_of(&self, s: &ElemSet) -> ElemSet {
        let elems: Vec<usize> = s.iter().collect();
        let mut comms = Vec::new();
        for &x in &elems {
            for &y in &elems {
                comms.push(self.commutator(x, y));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.closure_of(comms)
    }

    pub fn derived_subgroup(&self) -> ElemSet {
        self.derived_of(&ElemSet::full(self.order))
    }

    pub fn center(&self) -> ElemSet {
        self.centralizer_of(&ElemSet::full(self.order))
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.order)
    }

    pub fn trivial_set(&self) -> ElemSet {
        ElemSet::singleton(self.order, 0)
    }

    /// Turn a subgroup into a standalone group. Returns the group and the
    /// map from new ids to parent ids (new id 0 is the identity; the rest
    /// follow ascending parent id).
    pub fn materialize(&self, s: &ElemSet) -> (Group, Vec<usize>) {
        let mut elems: Vec<usize> = s.iter().collect();
        elems.sort_unstable();
        debug_assert_eq!(elems[0], 0);
        let mut back = vec![0usize; self.order];
        for (i, &e) in elems.iter().enumerate() {
            back[e] = i;
        }
        let n = elems.len();
        let mut table = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = back[self.mul(elems[i], elems[j])] as u16;
            }
        }
        let g = FiniteGroup::from_table(table, format!("{}[subgroup:{}]", self.provenance, n))
            .expect("subgroup table is a valid group");
        (g, elems)
    }
}

fn orders_from_mul(g: &FiniteGroup) -> Vec<u32> {
    (0..g.order)
        .map(|a| {
            let mut x = a;
            let mut k = 1u32;
            while x != 0 {
                x = g.mul(x, a);
                k += 1;
            }
            k
        })
        .collect()
}

impl FiniteGroup {
    /// Build from a flattened Cayley table (row-major, id 0 the identity).
    pub fn from_table(table: Vec<u16>, provenance: String) -> Result<Group> {
        let n = (table.len() as f64).sqrt() as usize;
        if n * n != table.len() {
            return Err(Error::Domain("Cayley table is not square".into()));
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::Domain("id 0 is not a two-sided identity".into()));
            }
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        if inv.iter().any(|&i| i == u32::MAX) {
            return Err(Error::Domain("some element has no inverse".into()));
        }
        let mut g = FiniteGroup {
            order: n,
            table: Some(table),
            inv,
            elem_order: Vec::new(),
            perms: None,
            provenance,
        };
        g.elem_order = orders_from_mul(&g);
        Ok(Arc::new(g))
    }

    /// Closure of a generator list acting on `degree` points. Element id 0 is
    /// the identity; the remaining ids follow the insertion order of the
    /// breadth-first closure, so ids are reproducible for a fixed list.
    pub fn from_permutations(
        degree: usize,
        gens: &[Permutation],
        caps: &Caps,
        provenance: String,
    ) -> Result<Group> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::Domain(format!(
                    "generator degree {} != stated degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let mut perms: Vec<Permutation> = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        index.insert(perms[0].clone(), 0);
        let mut queue = 0usize;
        for g in gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), perms.len() as u32);
                perms.push(g.clone());
            }
        }
        while queue < perms.len() {
            let cur = perms[queue].clone();
            queue += 1;
            for g in gens {
                let p = cur.then(g);
                if !index.contains_key(&p) {
                    if perms.len() >= caps.max_elements {
                        return Err(Error::ResourceLimit(format!(
                            "closure exceeds element cap {}",
                            caps.max_elements
                        )));
                    }
                    index.insert(p.clone(), perms.len() as u32);
                    perms.push(p);
                }
            }
        }
        let n = perms.len();
        let inv: Vec<u32> = perms.iter().map(|p| index[&p.inverse()]).collect();
        let table = if n <= CAYLEY_TABLE_MAX_ORDER {
            let mut t = vec![0u16; n * n];
            for (i, a) in perms.iter().enumerate() {
                for (j, b) in perms.iter().enumerate() {
                    t[i * n + j] = index[&a.then(b)] as u16;
                }
            }
            Some(t)
        } else {
            None
        };
        let mut g = FiniteGroup {
            order: n,
            table,
            inv,
            elem_order: Vec::new(),
            perms: Some(PermRealization {
                degree,
                perms,
                index,
            }),
            provenance,
        };
        g.elem_order = orders_from_mul(&g);
        Ok(Arc::new(g))
    }

    pub fn trivial() -> Group {
        FiniteGroup::from_table(vec![0], "trivial".into()).unwrap()
    }
}

/// Direct product with a-major pair indexing: id(a, b) = a·|B| + b.
pub fn direct_product(a: &Group, b: &Group, caps: &Caps) -> Result<Group> {
    let (na, nb) = (a.order(), b.order());
    let n = na
        .checked_mul(nb)
        .filter(|&n| n <= caps.max_elements)
        .ok_or_else(|| Error::ResourceLimit("direct product exceeds element cap".into()))?;
    if n > CAYLEY_TABLE_MAX_ORDER {
        return Err(Error::ResourceLimit(format!(
            "direct product order {n} exceeds the Cayley-table bound {CAYLEY_TABLE_MAX_ORDER}"
        )));
    }
    let mut table = vec![0u16; n * n];
    for a1 in 0..na {
        for b1 in 0..nb {
            let x = a1 * nb + b1;
            for a2 in 0..na {
                for b2 in 0..nb {
                    let y = a2 * nb + b2;
                    table[x * n + y] = (a.mul(a1, a2) * nb + b.mul(b1, b2)) as u16;
                }
            }
        }
    }
    FiniteGroup::from_table(
        table,
        format!("({})x({})", a.provenance(), b.provenance()),
    )
}

/// Canonical embeddings of the factors of a direct product.
pub fn product_embeddings(a: &Group, b: &Group, prod: &Group) -> (Homomorphism, Homomorphism) {
    let nb = b.order();
    let ea = Homomorphism {
        source: a.clone(),
        target: prod.clone(),
        map: (0..a.order()).map(|i| (i * nb) as u32).collect(),
    };
    let eb = Homomorphism {
        source: b.clone(),
        target: prod.clone(),
        map: (0..b.order()).map(|i| i as u32).collect(),
    };
    (ea, eb)
}

/// Semidirect product N ⋊ C. `action[c]` gives, for each c ∈ C, the image of
/// each element of N under the automorphism attached to c. The pair (n, c)
/// gets id n·|C| + c, and (n1,c1)(n2,c2) = (n1·action[c1](n2), c1·c2).
pub fn semidirect_product(
    n_grp: &Group,
    c_grp: &Group,
    action: &[Vec<usize>],
    caps: &Caps,
) -> Result<Group> {
    let (nn, nc) = (n_grp.order(), c_grp.order());
    if action.len() != nc || action.iter().any(|a| a.len() != nn) {
        return Err(Error::Domain(
            "action must map every element of C to a permutation of N".into(),
        ));
    }
    for (c, phi) in action.iter().enumerate() {
        // automorphism check: bijection preserving the full table
        let mut seen = vec![false; nn];
        for &img in phi {
            if img >= nn || seen[img] {
                return Err(Error::Domain(format!(
                    "action of element {c} is not a bijection on N"
                )));
            }
            seen[img] = true;
        }
        for x in 0..nn {
            for y in 0..nn {
                if phi[n_grp.mul(x, y)] != n_grp.mul(phi[x], phi[y]) {
                    return Err(Error::Domain(format!(
                        "action of element {c} is not an automorphism of N"
                    )));
                }
            }
        }
    }
    // homomorphism check on the full table of C
    for c1 in 0..nc {
        for c2 in 0..nc {
            let c12 = c_grp.mul(c1, c2);
            for x in 0..nn {
                if action[c12][x] != action[c2][action[c1][x]] {
                    return Err(Error::Domain(
                        "action is not a homomorphism from C to Aut(N)".into(),
                    ));
                }
            }
        }
    }
    let n = nn
        .checked_mul(nc)
        .filter(|&n| n <= caps.max_elements)
        .ok_or_else(|| Error::ResourceLimit("semidirect product exceeds element cap".into()))?;
    if n > CAYLEY_TABLE_MAX_ORDER {
        return Err(Error::ResourceLimit(format!(
            "semidirect product order {n} exceeds the Cayley-table bound {CAYLEY_TABLE_MAX_ORDER}"
        )));
    }
    let mut table = vec![0u16; n * n];
    for n1 in 0..nn {
        for c1 in 0..nc {
            let x = n1 * nc + c1;
            for n2 in 0..nn {
                for c2 in 0..nc {
                    let y = n2 * nc + c2;
                    let nm = n_grp.mul(n1, action[c1][n2]);
                    let cm = c_grp.mul(c1, c2);
                    table[x * n + y] = (nm * nc + cm) as u16;
                }
            }
        }
    }
    FiniteGroup::from_table(
        table,
        format!(
            "({})semidirect({})",
            n_grp.provenance(),
            c_grp.provenance()
        ),
    )
}

/// In a semidirect product built by `semidirect_product`, the embedded copy
/// of N (a normal subgroup) and of C (a complement).
pub fn semidirect_factors(prod: &Group, n_order: usize, c_order: usize) -> (ElemSet, ElemSet) {
    let n_set = ElemSet::from_iter(prod.order(), (0..n_order).map(|i| i * c_order));
    let c_set = ElemSet::from_iter(prod.order(), 0..c_order);
    (n_set, c_set)
}

#[derive(Clone)]
pub struct Homomorphism {
    pub source: Group,
    pub target: Group,
    pub map: Vec<u32>,
}

impl Homomorphism {
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    /// Full multiplicativity check, exhaustive over the source table.
    pub fn verify(&self) -> bool {
        if self.map[0] != 0 {
            return false;
        }
        let n = self.source.order();
        for a in 0..n {
            for b in 0..n {
                if self.apply(self.source.mul(a, b))
                    != self.target.mul(self.apply(a), self.apply(b))
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn image_of_set(&self, s: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.target.order());
        for x in s.iter() {
            out.insert(self.apply(x));
        }
        out
    }
}

/// Quotient G/N by a normal subgroup, with the projection homomorphism.
/// Coset ids are ordered by minimal member id, so the identity coset is 0.
pub fn quotient_by_normal(g: &Group, n: &ElemSet) -> Result<(Group, Homomorphism)> {
    if !g.is_subgroup(n) || !g.is_normal(n) {
        return Err(Error::Domain("quotient requires a normal subgroup".into()));
    }
    let order = g.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for m in n.iter() {
            coset_of[g.mul(m, x)] = id;
        }
    }
    let q = reps.len();
    let mut table = vec![0u16; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * q + j] = coset_of[g.mul(a, b)] as u16;
        }
    }
    let quot = FiniteGroup::from_table(table, format!("({})/N{}", g.provenance(), n.count()))?;
    let hom = Homomorphism {
        source: g.clone(),
        target: quot.clone(),
        map: coset_of.iter().map(|&c| c as u32).collect(),
    };
    Ok((quot, hom))
}

/// A subgroup handle: a bitset of element ids tied to its parent group.
#[derive(Clone)]
pub struct Subgroup {
    pub parent: Group,
    pub members: ElemSet,
}

impl Subgroup {
    pub fn new(parent: Group, members: ElemSet) -> Result<Self> {
        if members.capacity() != parent.order() || !parent.is_subgroup(&members) {
            return Err(Error::Domain("member set is not a subgroup".into()));
        }
        Ok(Subgroup { parent, members })
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    /// Equality is bitset equality within the same parent; comparing
    /// subgroups of different parents is a domain error.
    pub fn eq_checked(&self, other: &Subgroup) -> Result<bool> {
        if !Arc::ptr_eq(&self.parent, &other.parent) {
            return Err(Error::Domain(
                "cannot compare subgroups of different parent groups".into(),
            ));
        }
        Ok(self.members == other.members)
    }
}

/// Abelian invariants (prime-power cyclic factors, sorted) of G/G'.
pub fn abelian_invariants(g: &Group) -> Vec<u64> {
    let derived = g.derived_subgroup();
    let (ab, _) = quotient_by_normal(g, &derived).expect("derived subgroup is normal");
    let n = ab.order() as u64;
    let mut invs = Vec::new();
    for p in crate::prime_divisors(n) {
        // number of elements of order dividing p^k determines the p-type
        let mut counts = vec![1u64];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let c = (0..ab.order())
                .filter(|&x| {
                    let o = ab.elem_order(x) as u64;
                    pk % o == 0
                })
                .count() as u64;
            counts.push(c);
            if c == crate::p_part(n, p) {
                break;
            }
        }
        // parts of the partition: number of parts >= k is log_p(counts[k]/counts[k-1])
        let mut parts_ge = Vec::new();
        for k in 1..counts.len() {
            let ratio = counts[k] / counts[k - 1];
            let mut log = 0u32;
            let mut r = ratio;
            while r > 1 {
                r /= p;
                log += 1;
            }
            parts_ge.push(log);
        }
        let nparts = parts_ge[0];
        for i in 0..nparts {
            let len = parts_ge.iter().take_while(|&&m| m > i).count() as u32;
            invs.push(p.pow(len));
        }
    }
    invs.sort_unstable();
    invs
}

/// Histogram of element orders, a cheap isomorphism fingerprint.
pub fn order_histogram(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut map: std::collections::BTreeMap<usize, usize> = Default::default();
    for x in 0..g.order() {
        *map.entry(g.elem_order(x)).or_insert(0) += 1;
    }
    map.into_iter().collect()
}
