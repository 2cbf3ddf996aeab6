//! Builders for the concrete groups and numbers under verification: standard
//! families, AΓL₁(q) with its labeled subgroups, the JRV groups, Zsigmondy
//! primes, the order-54 search, and the formula-level statistics for the
//! large Carter counterexample family.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bitset::ElemSet;
use crate::field::Gf;
use crate::group::{direct_product, semidirect_product, FiniteGroup, Group};
use crate::lattice::{all_subgroups, is_nilpotent};
use crate::perm::Permutation;
use crate::poset::Poset;
use crate::{Caps, Error, Result};

/// Smallest Zsigmondy prime for (p, n): a prime r dividing p^n − 1 but no
/// p^j − 1 with 1 ≤ j < n. None when no such prime exists.
pub fn zsigmondy_prime(p: u64, n: u32) -> Result<Option<u64>> {
    crate::lattice::require_prime(p)?;
    if n == 0 {
        return Err(Error::Domain("exponent must be positive".into()));
    }
    let pn = (p as u128)
        .checked_pow(n)
        .filter(|&v| v <= 1 << 63)
        .ok_or_else(|| Error::ResourceLimit("p^n exceeds the 2^63 bound".into()))?;
    let target = (pn - 1) as u64;
    let mut divisors = crate::prime_divisors(target);
    divisors.sort_unstable();
    for r in divisors {
        let order_divides_smaller = (1..n).any(|j| (p.pow(j) as u64).wrapping_sub(1) % r == 0);
        if !order_divides_smaller {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// AΓL₁(q) as a permutation group on the q field elements, with its labeled
/// subgroups: J (field automorphisms), M (scalings), V (translations).
pub struct AGammaL1 {
    pub group: Group,
    pub j: ElemSet,
    pub m: ElemSet,
    pub v: ElemSet,
    pub field: Gf,
}

const AGAMMAL1_MAX_Q: usize = 512;

fn field_perm<F: Fn(usize) -> usize>(q: usize, f: F) -> Permutation {
    Permutation::new((0..q).map(|x| f(x) as u16).collect()).expect("field map is a bijection")
}

pub fn agammal1(p: u64, n: u32, caps: &Caps) -> Result<AGammaL1> {
    let field = Gf::new(p, n)?;
    let q = field.q;
    if q > AGAMMAL1_MAX_Q {
        return Err(Error::ResourceLimit(format!(
            "field order {q} exceeds the AΓL₁ cap {AGAMMAL1_MAX_Q}"
        )));
    }
    let frob = field_perm(q, |x| field.frobenius(x));
    let g = field.generator();
    let scale = field_perm(q, |x| field.mul(g, x));
    let translate = field_perm(q, |x| field.add(x, field.one()));
    let group = FiniteGroup::from_permutations(
        q,
        &[frob.clone(), scale.clone(), translate.clone()],
        caps,
        format!("AGammaL1({q})"),
    )?;
    let expected = n as usize * q * (q - 1);
    debug_assert_eq!(group.order(), expected);
    let pr = group.permutations().unwrap();
    let j = group.closure_of([pr.id_of(&frob).unwrap()]);
    let m = group.closure_of([pr.id_of(&scale).unwrap()]);
    let mut v = ElemSet::empty(group.order());
    for b in 0..q {
        let t = field_perm(q, |x| field.add(x, b));
        v.insert(pr.id_of(&t).expect("translations lie in the closure"));
    }
    Ok(AGammaL1 {
        group,
        j,
        m,
        v,
        field,
    })
}

/// The group G = JRV ≤ AΓL₁(p^n) with n = p^a and R the order-r subgroup of
/// M for r the Zsigmondy prime of (p, n). |G| = p^(a+n)·r.
pub struct JrvGroup {
    pub group: Group,
    pub j: ElemSet,
    pub r: ElemSet,
    pub v: ElemSet,
    pub zsigmondy: u64,
    pub field: Gf,
}

pub fn jrv_group(p: u64, a: u32, caps: &Caps) -> Result<JrvGroup> {
    let n = (p as u128)
        .checked_pow(a)
        .filter(|&n| n <= 32)
        .ok_or_else(|| Error::ResourceLimit("p^a too large".into()))? as u32;
    let r = zsigmondy_prime(p, n)?
        .ok_or_else(|| Error::Domain(format!("no Zsigmondy prime for ({p}, {n})")))?;
    let field = Gf::new(p, n)?;
    let q = field.q;
    if q > AGAMMAL1_MAX_Q {
        return Err(Error::ResourceLimit(format!(
            "field order {q} exceeds the AΓL₁ cap {AGAMMAL1_MAX_Q}"
        )));
    }
    let frob = field_perm(q, |x| field.frobenius(x));
    let alpha = field.pow(field.generator(), (q as u64 - 1) / r);
    let scale_alpha = field_perm(q, |x| field.mul(alpha, x));
    let translate = field_perm(q, |x| field.add(x, field.one()));
    let group = FiniteGroup::from_permutations(
        q,
        &[frob.clone(), scale_alpha.clone(), translate],
        caps,
        format!("JRV({p},{a})"),
    )?;
    let expected = (p.pow(a + n) * r) as usize;
    if group.order() != expected {
        return Err(Error::Domain(format!(
            "JRV closure has order {} instead of {expected}",
            group.order()
        )));
    }
    let pr = group.permutations().unwrap();
    let j = group.closure_of([pr.id_of(&frob).unwrap()]);
    let r_sub = group.closure_of([pr.id_of(&scale_alpha).unwrap()]);
    let mut v = ElemSet::empty(group.order());
    for b in 0..q {
        let t = field_perm(q, |x| field.add(x, b));
        v.insert(pr.id_of(&t).expect("translations lie in JRV"));
    }
    // structural facts the construction is supposed to deliver
    let jr = group.closure_of(j.iter().chain(r_sub.iter()));
    debug_assert_eq!(group.normalizer_of(&r_sub), jr);
    debug_assert_eq!(group.centralizer_of(&r_sub), r_sub);
    Ok(JrvGroup {
        group,
        j,
        r: r_sub,
        v,
        zsigmondy: r,
        field,
    })
}

/// The poset of all nilpotent subgroups of G, including the trivial one.
pub fn nilpotent_poset(g: &Group, caps: &Caps) -> Result<Poset> {
    let lat = all_subgroups(g, caps)?;
    let nils: Vec<ElemSet> = lat
        .subgroups
        .iter()
        .filter(|s| is_nilpotent(g, s))
        .cloned()
        .collect();
    Ok(Poset::from_subgroups(
        nils,
        format!("nilpotent subgroups of {}", g.provenance()),
    ))
}

/// θ_𝔑(1) = Σ μ(1, N) over the nilpotent-subgroup poset.
pub fn nilpotent_theta(g: &Group, caps: &Caps) -> Result<BigInt> {
    let poset = nilpotent_poset(g, caps)?;
    let bot = poset
        .position_of(&g.trivial_set())
        .expect("trivial subgroup is nilpotent");
    Ok(poset.theta(bot))
}

/// All automorphisms of a (small) group, as image tables, in a deterministic
/// order.
pub fn automorphisms(g: &Group) -> Vec<Vec<usize>> {
    let gens = g.gens_of(&g.full_set());
    let mut out = Vec::new();
    // candidate images for each generator: elements of the same order
    let mut images: Vec<usize> = vec![0; gens.len()];
    fn rec(
        g: &Group,
        gens: &[usize],
        k: usize,
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = g.order();
        if k == gens.len() {
            // build the map by closing words in the generators
            let mut map = vec![usize::MAX; n];
            map[0] = 0;
            let mut frontier = vec![0usize];
            let mut shadow = vec![0usize; n]; // image of each mapped element
            while let Some(x) = frontier.pop() {
                for (i, &gen) in gens.iter().enumerate() {
                    let y = g.mul(x, gen);
                    let fy = g.mul(shadow[x], images[i]);
                    if map[y] == usize::MAX {
                        map[y] = fy;
                        shadow[y] = fy;
                        frontier.push(y);
                    } else if map[y] != fy {
                        return; // not well-defined
                    }
                }
            }
            if map.iter().any(|&v| v == usize::MAX) {
                return; // images generate a proper subgroup
            }
            let mut seen = vec![false; n];
            for &v in &map {
                if seen[v] {
                    return;
                }
                seen[v] = true;
            }
            for a in 0..n {
                for b in 0..n {
                    if map[g.mul(a, b)] != g.mul(map[a], map[b]) {
                        return;
                    }
                }
            }
            out.push(map);
            return;
        }
        for cand in 0..n {
            if g.elem_order(cand) == g.elem_order(gens[k]) {
                images[k] = cand;
                rec(g, gens, k + 1, images, out);
            }
        }
    }
    rec(g, &gens, 0, &mut images, &mut out);
    debug_assert!(!out.is_empty());
    out
}

/// Search all semidirect products (C₃×C₃) ⋊ C₆ for the one with a core-free
/// cyclic Carter subgroup of order 6. The paper identifies the group only by
/// a library id; the search keeps the construction self-contained.
pub fn small_54_5(caps: &Caps) -> Result<Group> {
    let c3 = cyclic(3, caps)?;
    let base = direct_product(&c3, &c3, caps)?;
    let c6 = cyclic(6, caps)?;
    let auts = automorphisms(&base);
    let mut found: Vec<Group> = Vec::new();
    for (ai, sigma) in auts.iter().enumerate() {
        // the action of the generator must have order dividing 6
        let mut power = sigma.clone();
        let mut ord = 1;
        while power.iter().enumerate().any(|(i, &v)| i != v) {
            power = power.iter().map(|&v| sigma[v]).collect();
            ord += 1;
        }
        if 6 % ord != 0 {
            continue;
        }
        // action[k] = sigma^k, matching c6 where element k is gen^k
        let mut action: Vec<Vec<usize>> = vec![(0..9).collect()];
        for k in 1..6 {
            action.push(action[k - 1].iter().map(|&v| sigma[v]).collect());
        }
        let mut g = semidirect_product(&base, &c6, &action, caps)?;
        if has_corefree_cyclic_carter6(&g, caps)? {
            std::sync::Arc::get_mut(&mut g)
                .expect("freshly built group is unshared")
                .set_provenance(format!("SmallGroup(54,5)[action:{ai}]"));
            found.push(g);
        }
    }
    if found.is_empty() {
        return Err(Error::Domain(
            "no (C3xC3):C6 with a core-free cyclic Carter subgroup of order 6".into(),
        ));
    }
    // uniqueness up to isomorphism, by fingerprint
    let fp0 = crate::group::order_histogram(&found[0]);
    for g in &found[1..] {
        if crate::group::order_histogram(g) != fp0 {
            return Err(Error::Domain(
                "order-54 search found non-isomorphic candidates".into(),
            ));
        }
    }
    Ok(found.remove(0))
}

fn has_corefree_cyclic_carter6(g: &Group, caps: &Caps) -> Result<bool> {
    if g.order() != 54 {
        return Ok(false);
    }
    let lat = all_subgroups(g, caps)?;
    for s in &lat.subgroups {
        if s.count() != 6 {
            continue;
        }
        let cyclic = s.iter().any(|x| g.elem_order(x) == 6);
        if !cyclic || !is_nilpotent(g, s) {
            continue;
        }
        if g.normalizer_of(s) != *s {
            continue;
        }
        if g.normal_core_of(s).count() == 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

fn cyclic(n: usize, caps: &Caps) -> Result<Group> {
    if n == 1 {
        return Ok(FiniteGroup::trivial());
    }
    let cyc: Vec<usize> = (0..n).collect();
    FiniteGroup::from_permutations(
        n,
        &[Permutation::from_cycles(n, &[&cyc])?],
        caps,
        format!("C{n}"),
    )
}

fn symmetric(n: usize, caps: &Caps) -> Result<Group> {
    if n < 2 {
        return Ok(FiniteGroup::trivial());
    }
    let mut gens = vec![Permutation::from_cycles(n, &[&[0, 1]])?];
    if n > 2 {
        let cyc: Vec<usize> = (0..n).collect();
        gens.push(Permutation::from_cycles(n, &[&cyc])?);
    }
    FiniteGroup::from_permutations(n, &gens, caps, format!("S{n}"))
}

fn alternating(n: usize, caps: &Caps) -> Result<Group> {
    if n < 3 {
        return Ok(FiniteGroup::trivial());
    }
    let mut gens = vec![Permutation::from_cycles(n, &[&[0, 1, 2]])?];
    if n > 3 {
        if n % 2 == 1 {
            let cyc: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&cyc])?);
        } else {
            let cyc: Vec<usize> = (1..n).collect();
            gens.push(Permutation::from_cycles(n, &[&cyc])?);
        }
    }
    FiniteGroup::from_permutations(n, &gens, caps, format!("A{n}"))
}

fn dihedral(n: usize, caps: &Caps) -> Result<Group> {
    if n < 3 {
        return Err(Error::Domain("dihedral requires n >= 3".into()));
    }
    let cyc: Vec<usize> = (0..n).collect();
    let rot = Permutation::from_cycles(n, &[&cyc])?;
    let refl = Permutation::new((0..n).map(|i| ((n - i) % n) as u16).collect())?;
    FiniteGroup::from_permutations(n, &[rot, refl], caps, format!("D{}", 2 * n))
}

fn elementary_abelian(p: usize, k: usize, caps: &Caps) -> Result<Group> {
    let mut g = cyclic(p, caps)?;
    for _ in 1..k {
        g = direct_product(&g, &cyclic(p, caps)?, caps)?;
    }
    Ok(g)
}

fn frobenius21(caps: &Caps) -> Result<Group> {
    // C7 ⋊ C3 on 7 points: x ↦ x+1 and x ↦ 2x
    let add = Permutation::new((0..7).map(|x| ((x + 1) % 7) as u16).collect())?;
    let dbl = Permutation::new((0..7).map(|x| (x * 2 % 7) as u16).collect())?;
    FiniteGroup::from_permutations(7, &[add, dbl], caps, "F21".into())
}

/// AGL_n(2) on the 2^n points of F₂ⁿ: translations plus GL_n(2).
fn agl_2(n: usize, caps: &Caps) -> Result<Group> {
    if !(2..=4).contains(&n) {
        return Err(Error::Domain("agl supports dimension 2..4 over F2".into()));
    }
    let pts = 1usize << n;
    let mut gens = Vec::new();
    for b in 0..n {
        gens.push(Permutation::new(
            (0..pts).map(|v| (v ^ (1 << b)) as u16).collect(),
        )?);
    }
    // cyclic coordinate shift and a transvection generate GL_n(2)
    let shift = Permutation::new(
        (0..pts)
            .map(|v| {
                let mut w = 0usize;
                for b in 0..n {
                    if v >> b & 1 == 1 {
                        w |= 1 << ((b + 1) % n);
                    }
                }
                w as u16
            })
            .collect(),
    )?;
    let transvect = Permutation::new(
        (0..pts)
            .map(|v| {
                // e_0 -> e_0 + e_1, others fixed: column op on bit 0
                let w = if v & 1 == 1 { v ^ 2 } else { v };
                w as u16
            })
            .collect(),
    )?;
    gens.push(shift);
    gens.push(transvect);
    FiniteGroup::from_permutations(pts, &gens, caps, format!("AGL{n}(2)"))
}

/// Named deterministic constructions.
pub fn standard_with_caps(name: &str, params: &[usize], caps: &Caps) -> Result<Group> {
    match (name, params) {
        ("symmetric", [n]) => symmetric(*n, caps),
        ("alternating", [n]) => alternating(*n, caps),
        ("cyclic", [n]) => cyclic(*n, caps),
        ("dihedral", [n]) => dihedral(*n, caps),
        ("elementary_abelian", [p, k]) => elementary_abelian(*p, *k, caps),
        ("klein_four", []) => elementary_abelian(2, 2, caps),
        ("frobenius21", []) => frobenius21(caps),
        ("s3xs4", []) => direct_product(&symmetric(3, caps)?, &symmetric(4, caps)?, caps),
        ("agl", [n, 2]) => agl_2(*n, caps),
        ("agammal1", [q]) => {
            let (p, n) = prime_power(*q)?;
            Ok(agammal1(p, n, caps)?.group)
        }
        ("jrv", [p, a]) => Ok(jrv_group(*p as u64, *a as u32, caps)?.group),
        ("small_54_5", []) => small_54_5(caps),
        ("trivial", []) => Ok(FiniteGroup::trivial()),
        _ => Err(Error::Domain(format!(
            "unknown construction {name} with {} parameters",
            params.len()
        ))),
    }
}

pub fn standard(name: &str, params: &[usize]) -> Result<Group> {
    standard_with_caps(name, params, &Caps::default())
}

fn prime_power(q: usize) -> Result<(u64, u32)> {
    for p in crate::prime_divisors(q as u64) {
        let mut n = 0;
        let mut v = q as u64;
        while v % p == 0 {
            v /= p;
            n += 1;
        }
        if v == 1 {
            return Ok((p, n));
        }
    }
    Err(Error::Domain(format!("{q} is not a prime power")))
}

/// Formula-level statistics for the large Carter counterexample family; the
/// ambient group is never materialized, only the small AΓL₁(2^p) action on
/// the field and its subsets is enumerated.
#[derive(Debug)]
pub struct ThmDStatistics {
    pub p: u64,
    pub order_g: BigInt,
    pub order_h: BigInt,
    pub class_size: BigInt,
    pub class_meet_h: BigInt,
    pub stabilizer_order: u64,
    pub centralizer_order: BigInt,
    pub nu: BigInt,
    pub divisor: BigInt,
    /// Field-element indices of the chosen index-2 subgroup containing 1.
    pub chosen_hyperplane: Vec<usize>,
}

pub fn thm_d_statistics(p: u64, caps: &Caps) -> Result<ThmDStatistics> {
    if p != 3 && p != 5 {
        return Err(Error::Domain(
            "the combinatorial enumeration supports p in {3, 5}".into(),
        ));
    }
    let a = agammal1(2, p as u32, caps)?;
    let q = a.field.q; // 2^p
    // hyperplanes of F_q^+ are kernels of nonzero F2-functionals; with the
    // coefficient encoding these are parity masks
    let mut hyperplanes: Vec<Vec<usize>> = Vec::new();
    let mut with_one = 0usize;
    for m in 1..q {
        let h: Vec<usize> = (0..q)
            .filter(|&x| (m & x).count_ones() % 2 == 0)
            .collect();
        debug_assert_eq!(h.len(), q / 2);
        if h.contains(&a.field.one()) {
            with_one += 1;
        }
        hyperplanes.push(h);
    }
    if hyperplanes.len() != q - 1 || with_one != q / 2 - 1 {
        return Err(Error::Domain(
            "hyperplane enumeration disagrees with the closed form".into(),
        ));
    }
    let x: Vec<usize> = hyperplanes
        .iter()
        .find(|h| h.contains(&a.field.one()))
        .cloned()
        .expect("some hyperplane contains 1");

    // stabilizer and orbit of X under the AΓL₁(2^p) action on subsets
    let g = &a.group;
    let pr = g.permutations().unwrap();
    let as_key = |s: &[usize]| -> Vec<usize> {
        let mut k = s.to_vec();
        k.sort_unstable();
        k
    };
    let xkey = as_key(&x);
    let mut stabilizer_order = 0u64;
    let mut orbit: std::collections::HashSet<Vec<usize>> = Default::default();
    for e in 0..g.order() {
        let perm = pr.perm(e);
        let image = as_key(&x.iter().map(|&pt| perm.apply(pt)).collect::<Vec<_>>());
        if image == xkey {
            stabilizer_order += 1;
        }
        orbit.insert(image);
    }
    let class_size = BigInt::from(2 * (q as u64 - 1));
    if BigInt::from(orbit.len() as u64) != class_size {
        return Err(Error::Domain(
            "subset orbit size disagrees with the closed form 2(2^p - 1)".into(),
        ));
    }
    let class_meet_h = BigInt::from(2 * (q as u64 / 2 - 1));
    if (&class_meet_h % BigInt::from(p)) != BigInt::zero() {
        return Err(Error::Domain("p does not divide |cl ∩ H|".into()));
    }

    let w_order = BigInt::from(p).pow(q as u32); // p^(2^p)
    let order_g = BigInt::from(p) * BigInt::from(q as u64 - 1) * BigInt::from(q as u64) * &w_order;
    let half = q as u32 / 2;
    let order_h = BigInt::from(2 * p) * BigInt::from(p).pow(half);
    let centralizer_order = BigInt::from(stabilizer_order) * &w_order;
    // closed-form consistency: |C_G(e_X)| = 2^(p-1) p^(2^p + 1)
    let closed = BigInt::from(1u64 << (p - 1)) * BigInt::from(p).pow(q as u32 + 1);
    if centralizer_order != closed {
        return Err(Error::Domain(
            "centralizer order disagrees with the closed form".into(),
        ));
    }
    let pairs = &centralizer_order * &class_meet_h;
    if (&pairs % &order_h) != BigInt::zero() {
        return Err(Error::Domain("pair count is not divisible by |H|".into()));
    }
    let nu = pairs / &order_h;
    let divisor = BigInt::from(p).pow(half + 1);
    Ok(ThmDStatistics {
        p,
        order_g,
        order_h,
        class_size,
        class_meet_h,
        stabilizer_order,
        centralizer_order,
        nu,
        divisor,
        chosen_hyperplane: x,
    })
}

/// The deterministic family of test groups used by the verification suites:
/// the named constructions of order ≤ 400, plus S₃×S₄ and JRV(2,2).
pub fn verification_family(caps: &Caps) -> Vec<Group> {
    let mut out = Vec::new();
    let mut add = |g: Result<Group>| {
        out.push(g.expect("family construction"));
    };
    add(standard_with_caps("cyclic", &[2], caps));
    add(standard_with_caps("cyclic", &[6], caps));
    add(standard_with_caps("cyclic", &[12], caps));
    add(standard_with_caps("klein_four", &[], caps));
    add(standard_with_caps("elementary_abelian", &[3, 2], caps));
    add(standard_with_caps("dihedral", &[4], caps));
    add(standard_with_caps("dihedral", &[5], caps));
    add(standard_with_caps("dihedral", &[6], caps));
    add(standard_with_caps("symmetric", &[3], caps));
    add(standard_with_caps("symmetric", &[4], caps));
    add(standard_with_caps("frobenius21", &[], caps));
    add(standard_with_caps("agammal1", &[8], caps));
    add(standard_with_caps("small_54_5", &[], caps));
    add(standard_with_caps("jrv", &[2, 1], caps));
    add(standard_with_caps("s3xs4", &[], caps));
    add(standard_with_caps("jrv", &[2, 2], caps));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn zsigmondy_examples() {
        assert_eq!(zsigmondy_prime(2, 2).unwrap(), Some(3));
        assert_eq!(zsigmondy_prime(3, 3).unwrap(), Some(13));
        assert_eq!(zsigmondy_prime(2, 6).unwrap(), None);
        assert_eq!(zsigmondy_prime(2, 1).unwrap(), None); // 2^1 - 1 = 1
        assert_eq!(zsigmondy_prime(2, 4).unwrap(), Some(5));
        assert_eq!(zsigmondy_prime(3, 1).unwrap(), Some(2));
        // independent oracle: exhaustive definition check for small cases
        for (p, n) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let expect = (2..=(p.pow(n) - 1))
                .filter(|&r| crate::is_prime(r))
                .find(|&r| {
                    (p.pow(n) - 1) % r == 0 && (1..n).all(|j| (p.pow(j) - 1) % r != 0)
                });
            assert_eq!(zsigmondy_prime(p, n).unwrap(), expect, "({p},{n})");
        }
    }

    #[test]
    fn agammal1_orders() {
        let a4 = agammal1(2, 2, &caps()).unwrap();
        assert_eq!(a4.group.order(), 24);
        assert_eq!(a4.j.count(), 2);
        assert_eq!(a4.m.count(), 3);
        assert_eq!(a4.v.count(), 4);
        let a8 = agammal1(2, 3, &caps()).unwrap();
        assert_eq!(a8.group.order(), 168);
        assert!(crate::lattice::is_soluble(&a8.group));
    }

    #[test]
    fn agammal1_conjugation_rules() {
        // (ι,1,b)^(ι,a,0) = (ι,1,ab) and (ι,a,b)^(τ,1,0) = (ι,τ(a),τ(b))
        for (p, n) in [(2u64, 2u32), (2, 3), (3, 2), (2, 4), (7, 1)] {
            let a = agammal1(p, n, &caps()).unwrap();
            let f = &a.field;
            let g = &a.group;
            let pr = g.permutations().unwrap();
            let id_of_affine = |aa: usize, b: usize| {
                pr.id_of(&field_perm(f.q, |x| f.add(f.mul(aa, x), b)))
                    .expect("affine map in group")
            };
            for b in 0..f.q {
                for aa in 1..f.q {
                    let t_b = id_of_affine(1, b);
                    let s_a = id_of_affine(aa, 0);
                    assert_eq!(g.conj(t_b, s_a), id_of_affine(1, f.mul(aa, b)));
                }
            }
            let frob = pr
                .id_of(&field_perm(f.q, |x| f.frobenius(x)))
                .unwrap();
            for aa in 1..f.q {
                for b in 0..f.q {
                    let u = id_of_affine(aa, b);
                    assert_eq!(
                        g.conj(u, frob),
                        id_of_affine(f.frobenius(aa), f.frobenius(b))
                    );
                }
            }
        }
    }

    #[test]
    fn jrv_orders_and_structure() {
        let j21 = jrv_group(2, 1, &caps()).unwrap();
        assert_eq!(j21.group.order(), 24);
        assert_eq!(j21.zsigmondy, 3);
        let j22 = jrv_group(2, 2, &caps()).unwrap();
        assert_eq!(j22.group.order(), 320);
        assert_eq!(j22.zsigmondy, 5);
        // N_G(R) = JR and C_G(R) = R
        let g = &j22.group;
        let jr = g.closure_of(j22.j.iter().chain(j22.r.iter()));
        assert_eq!(g.normalizer_of(&j22.r), jr);
        assert_eq!(g.centralizer_of(&j22.r), j22.r);
        // q = 2^(2^4) = 65536 is over the field cap
        assert!(jrv_group(2, 4, &caps()).is_err());
    }

    #[test]
    fn jrv_31_order() {
        let j = jrv_group(3, 1, &caps()).unwrap();
        assert_eq!(j.group.order(), 1053);
        assert_eq!(j.zsigmondy, 13);
    }

    #[test]
    fn jrv_nilpotent_subgroup_shape() {
        // every nilpotent subgroup is a p-group or has order r
        let j = jrv_group(2, 1, &caps()).unwrap();
        let lat = all_subgroups(&j.group, &caps()).unwrap();
        for s in &lat.subgroups {
            if is_nilpotent(&j.group, s) {
                let o = s.count() as u64;
                assert!(crate::p_part(o, 2) == o || o == j.zsigmondy || o == 1);
            }
        }
    }

    #[test]
    fn standard_examples() {
        assert_eq!(standard("symmetric", &[4]).unwrap().order(), 24);
        assert_eq!(standard("frobenius21", &[]).unwrap().order(), 21);
        assert_eq!(standard("agl", &[3, 2]).unwrap().order(), 1344);
        assert_eq!(standard("dihedral", &[6]).unwrap().order(), 12);
        assert_eq!(standard("elementary_abelian", &[3, 2]).unwrap().order(), 9);
        assert!(standard("nonsense", &[]).is_err());
    }

    #[test]
    fn small_54_5_properties() {
        let g = small_54_5(&caps()).unwrap();
        assert_eq!(g.order(), 54);
        assert!(has_corefree_cyclic_carter6(&g, &caps()).unwrap());
    }

    #[test]
    fn nilpotent_theta_small() {
        let cp = standard("cyclic", &[5]).unwrap();
        assert_eq!(nilpotent_theta(&cp, &caps()).unwrap(), BigInt::from(0));
        let s3 = standard("symmetric", &[3]).unwrap();
        assert_eq!(nilpotent_theta(&s3, &caps()).unwrap(), BigInt::from(-3));
    }

    #[test]
    fn thm_d_p3_values() {
        let st = thm_d_statistics(3, &caps()).unwrap();
        assert_eq!(st.order_g, BigInt::from(1_102_248u64));
        assert_eq!(st.order_h, BigInt::from(486u64));
        assert_eq!(st.class_size, BigInt::from(14u64));
        assert_eq!(st.class_meet_h, BigInt::from(6u64));
        assert_eq!(st.stabilizer_order, 12);
        assert_eq!(st.nu, BigInt::from(972u64));
        assert_eq!(st.divisor, BigInt::from(243u64));
        assert!((&st.nu % &st.divisor) == BigInt::from(0));
        assert!(thm_d_statistics(7, &caps()).is_err());
    }

    #[test]
    fn automorphism_count_of_elementary_abelian_9() {
        let c3 = standard("cyclic", &[3]).unwrap();
        let base = direct_product(&c3, &c3, &caps()).unwrap();
        // |GL2(3)| = 48
        assert_eq!(automorphisms(&base).len(), 48);
    }
}
