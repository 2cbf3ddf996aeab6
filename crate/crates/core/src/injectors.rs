//! Nilpotent injectors: Mann's construction, the definitional oracle, the
//! counting function n_I(G,H) with its product formula, the modulus m_G, and
//! the verification routines for the injector counting and divisibility
//! statements.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::bitset::ElemSet;
use crate::group::Group;
use crate::lattice::{
    all_subgroups, all_sylow, fitting_subgroup, hall_subgroups, is_n_constrained, is_nilpotent,
    is_pi_subgroup, is_soluble, is_subnormal, require_prime,
};
use crate::poset::Poset;
use crate::report::{Status, VerificationReport};
use crate::{cong1, gcd_all, lcm0, p_part, prime_divisors, Caps, Error, Result};

/// Per-prime data of Mann's construction: F_{p'}, C_p = C_G(F_{p'}) and the
/// chosen Sylow p-subgroup S_p of C_p.
pub struct PrimeData {
    pub p: u64,
    pub f_coprime: ElemSet,
    pub c_p: ElemSet,
    pub s_p: ElemSet,
}

pub struct InjectorProfile {
    pub group: Group,
    pub fitting: ElemSet,
    pub injector: ElemSet,
    /// The full conjugacy class of the injector.
    pub all_injectors: Vec<ElemSet>,
    pub m_g: u64,
    pub per_prime: Vec<PrimeData>,
}

fn sets_centralize(g: &Group, a: &ElemSet, b: &ElemSet) -> bool {
    let ga = g.gens_of(a);
    let gb = g.gens_of(b);
    ga.iter()
        .all(|&x| gb.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

fn choose_centralizing_family(
    g: &Group,
    candidates: &[Vec<ElemSet>],
    chosen: &mut Vec<ElemSet>,
) -> bool {
    if chosen.len() == candidates.len() {
        return true;
    }
    for c in &candidates[chosen.len()] {
        if chosen.iter().all(|s| sets_centralize(g, s, c)) {
            chosen.push(c.clone());
            if choose_centralizing_family(g, candidates, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Mann's construction of a nilpotent injector: for each p dividing |F(G)|,
/// a Sylow p-subgroup S_p of C_p = C_G(F_{p'}), the family chosen pairwise
/// centralizing; I is the product of the S_p.
pub fn mann_injector(g: &Group) -> Result<InjectorProfile> {
    if g.order() == 1 {
        return Err(Error::Domain("injectors require a nontrivial group".into()));
    }
    if !is_n_constrained(g) {
        return Err(Error::Domain("group is not N-constrained".into()));
    }
    let fitting = fitting_subgroup(g);
    let primes = prime_divisors(fitting.count() as u64);
    let mut pre: Vec<(u64, ElemSet, ElemSet)> = Vec::new();
    for &p in &primes {
        let f_coprime = ElemSet::from_iter(
            g.order(),
            fitting.iter().filter(|&x| g.elem_order(x) as u64 % p != 0),
        );
        let c_p = g.centralizer_of(&f_coprime);
        pre.push((p, f_coprime, c_p));
    }
    // candidate Sylow p-subgroups of each C_p, in G's ids
    let candidates: Vec<Vec<ElemSet>> = pre
        .iter()
        .map(|(p, _, c_p)| {
            let (sub, back) = g.materialize(c_p);
            all_sylow(&sub, *p)
                .iter()
                .map(|s| ElemSet::from_iter(g.order(), s.iter().map(|i| back[i])))
                .collect()
        })
        .collect();
    let mut chosen: Vec<ElemSet> = Vec::new();
    if !choose_centralizing_family(g, &candidates, &mut chosen) {
        return Err(Error::Domain(
            "no pairwise-centralizing Sylow family exists; group is not N-constrained as assumed"
                .into(),
        ));
    }
    let injector = g.closure_of(chosen.iter().flat_map(|s| s.iter()));
    debug_assert!(is_nilpotent(g, &injector));
    debug_assert!(fitting.is_subset(&injector));
    let all_injectors = g.conjugates_of(&injector);
    let per_prime: Vec<PrimeData> = pre
        .into_iter()
        .zip(chosen)
        .map(|((p, f_coprime, c_p), s_p)| PrimeData {
            p,
            f_coprime,
            c_p,
            s_p,
        })
        .collect();
    let mut profile = InjectorProfile {
        group: g.clone(),
        fitting,
        injector,
        all_injectors,
        m_g: 1,
        per_prime,
    };
    profile.m_g = modulus_m(&profile);
    Ok(profile)
}

/// m_G of Theorem A: 1 when G is nilpotent (I = G), otherwise
/// gcd{p − 1 : p prime, p | (G : I)}.
pub fn modulus_m(profile: &InjectorProfile) -> u64 {
    let index = profile.group.order() / profile.injector.count();
    if index == 1 {
        return 1;
    }
    gcd_all(prime_divisors(index as u64).into_iter().map(|p| p - 1))
}

/// The raw gcd form of the modulus, with the empty-set convention 0 instead
/// of the nilpotent-case value 1 (what the monotonicity m_G | m_X needs).
pub fn modulus_gcd_raw(profile: &InjectorProfile) -> u64 {
    let index = profile.group.order() / profile.injector.count();
    gcd_all(prime_divisors(index as u64).into_iter().map(|p| p - 1))
}

/// Brute-force oracle straight from the definition: maximal nilpotent I with
/// S ∩ I maximal nilpotent in S for every subnormal S.
pub fn injectors_definitional(g: &Group, caps: &Caps) -> Result<Vec<ElemSet>> {
    if !is_n_constrained(g) {
        return Err(Error::Domain("group is not N-constrained".into()));
    }
    let lat = all_subgroups(g, caps)?;
    let nilpotent: Vec<bool> = lat.subgroups.iter().map(|s| is_nilpotent(g, s)).collect();
    let maximal_nilpotent: Vec<usize> = (0..lat.len())
        .filter(|&i| {
            nilpotent[i]
                && !(0..lat.len()).any(|j| j != i && nilpotent[j] && lat.leq(i, j))
        })
        .collect();
    let subnormal: Vec<&ElemSet> = lat
        .subgroups
        .iter()
        .filter(|s| is_subnormal(g, s))
        .collect();
    let out: Vec<ElemSet> = maximal_nilpotent
        .par_iter()
        .filter(|&&i| {
            let inj = &lat.subgroups[i];
            subnormal.iter().all(|s| {
                let t = s.intersection(inj);
                // no nilpotent subgroup strictly between t and s
                !(0..lat.len()).any(|j| {
                    nilpotent[j]
                        && lat.subgroups[j].is_subset(s)
                        && t.is_subset(&lat.subgroups[j])
                        && lat.subgroups[j] != t
                })
            })
        })
        .map(|&i| lat.subgroups[i].clone())
        .collect();
    Ok(out)
}

/// n_I(G, H): injectors (conjugates of I) containing H.
pub fn count_injectors_containing(profile: &InjectorProfile, h: &ElemSet) -> usize {
    profile
        .all_injectors
        .iter()
        .filter(|i| h.is_subset(i))
        .count()
}

/// The product formula n_I(G, H) = ∏_p n_p(C_p, H_p) for nilpotent H.
pub fn product_formula_count(profile: &InjectorProfile, h: &ElemSet) -> Result<usize> {
    let g = &profile.group;
    if !is_nilpotent(g, h) {
        return Err(Error::Domain(
            "product formula requires a nilpotent subgroup".into(),
        ));
    }
    // a prime of |H| outside ϖ(F) puts H outside every injector
    let fitting_primes: Vec<u64> = profile.per_prime.iter().map(|d| d.p).collect();
    let horder = h.count() as u64;
    if crate::pi_part(horder, &fitting_primes) != horder {
        return Ok(0);
    }
    let mut total = 1usize;
    for data in &profile.per_prime {
        let h_p = ElemSet::from_iter(
            g.order(),
            h.iter().filter(|&x| {
                let o = g.elem_order(x) as u64;
                p_part(o, data.p) == o
            }),
        );
        if !h_p.is_subset(&data.c_p) {
            return Ok(0);
        }
        let (sub, back) = g.materialize(&data.c_p);
        let mut to_local = vec![usize::MAX; g.order()];
        for (i, &e) in back.iter().enumerate() {
            to_local[e] = i;
        }
        let local = ElemSet::from_iter(sub.order(), h_p.iter().map(|x| to_local[x]));
        total *= crate::lattice::count_sylow_containing(&sub, &local, data.p)?;
    }
    Ok(total)
}

/// 𝒳: the poset (under inclusion) of subgroups lying in some injector.
pub fn injector_poset(profile: &InjectorProfile, caps: &Caps) -> Result<Poset> {
    let g = &profile.group;
    let lat = all_subgroups(g, caps)?;
    let members: Vec<ElemSet> = lat
        .subgroups
        .iter()
        .filter(|s| profile.all_injectors.iter().any(|i| s.is_subset(i)))
        .cloned()
        .collect();
    Ok(Poset::from_subgroups(
        members,
        format!("injector poset of {}", g.provenance()),
    ))
}

fn divisible(value: &BigInt, d: u64) -> bool {
    if d == 0 {
        value.is_zero()
    } else {
        (value % BigInt::from(d)).is_zero()
    }
}

/// Theorem A: n_I(G,H) is 0 or ≡ 1 (mod m_G) for every H ≤ G.
pub fn verify_thm_a(g: &Group, caps: &Caps) -> Result<VerificationReport> {
    let profile = mann_injector(g)?;
    let lat = all_subgroups(g, caps)?;
    let mut rep = VerificationReport::for_group("thm-a", g);
    rep.put("m_g", profile.m_g);
    rep.put("injector_order", profile.injector.count());
    rep.put("injector_count", profile.all_injectors.len());
    let mut violations: Vec<(ElemSet, usize)> = lat
        .subgroups
        .par_iter()
        .filter_map(|s| {
            let n = count_injectors_containing(&profile, s);
            if n != 0 && !cong1(n as u64, profile.m_g) {
                Some((s.clone(), n))
            } else {
                None
            }
        })
        .collect();
    violations.sort_by(|a, b| a.0.count().cmp(&b.0.count()).then_with(|| a.0.cmp(&b.0)));
    if let Some((witness, n)) = violations.first() {
        rep.put("count", *n);
        rep.fail_with(witness);
    }
    Ok(rep)
}

/// θ_𝒳(F) via the per-prime decomposition from the proof of Theorem B:
/// the interval of 𝒳 above F is the product over p of the posets
/// 𝒴_p = {p-subgroups of C_p containing F_p}, so θ factors accordingly.
pub fn theta_at_fitting_by_primes(profile: &InjectorProfile, caps: &Caps) -> Result<BigInt> {
    let g = &profile.group;
    let mut total = BigInt::from(1);
    for data in &profile.per_prime {
        let (sub, back) = g.materialize(&data.c_p);
        let mut to_local = vec![usize::MAX; g.order()];
        for (i, &e) in back.iter().enumerate() {
            to_local[e] = i;
        }
        let f_p = ElemSet::from_iter(
            sub.order(),
            profile.fitting.iter().filter_map(|x| {
                let o = g.elem_order(x) as u64;
                (p_part(o, data.p) == o).then(|| to_local[x])
            }),
        );
        let lat = all_subgroups(&sub, caps)?;
        let members: Vec<ElemSet> = lat
            .subgroups
            .iter()
            .filter(|s| {
                let o = s.count() as u64;
                p_part(o, data.p) == o && f_p.is_subset(s)
            })
            .cloned()
            .collect();
        let poset = Poset::from_subgroups(members, format!("Y_{}", data.p));
        let pos = poset
            .position_of(&f_p)
            .expect("F_p belongs to its own poset");
        total *= poset.theta(pos);
    }
    Ok(total)
}

/// Theorem B: (I : F) divides θ_𝒳(F). Also checks the restriction identity
/// θ_𝒳(F) = θ_𝒴(F) for 𝒴 = {H ∈ 𝒳 : F ≤ H}, the Euler-characteristic
/// form θ_𝒳(F) = −χ̃(Δ𝒳_{>F}), and the per-prime product route.
pub fn verify_thm_b(g: &Group, caps: &Caps) -> Result<VerificationReport> {
    let profile = mann_injector(g)?;
    let poset = injector_poset(&profile, caps)?;
    let fpos = poset
        .position_of(&profile.fitting)
        .expect("F lies in every injector");
    let theta = poset.theta(fpos);
    let n = (profile.injector.count() / profile.fitting.count()) as u64;
    let mut rep = VerificationReport::for_group("thm-b", g);
    rep.put_big("theta_at_fitting", &theta);
    rep.put("index_injector_over_fitting", n);
    let labels = poset.labels.as_ref().expect("subgroup poset has labels");
    let above = poset.filter(
        |i| profile.fitting.is_subset(&labels[i]),
        "restriction Y".into(),
    );
    let theta_above = above.theta(
        above
            .position_of(&profile.fitting)
            .expect("F is in its own up-set"),
    );
    let strict = poset.filter(
        |i| profile.fitting.is_subset(&labels[i]) && labels[i] != profile.fitting,
        "X above F".into(),
    );
    let euler = -strict.reduced_euler_characteristic();
    let product = theta_at_fitting_by_primes(&profile, caps)?;
    rep.put_big("theta_restricted", &theta_above);
    rep.put_big("theta_by_euler", &euler);
    rep.put_big("theta_by_prime_product", &product);
    if theta != theta_above || theta != euler || theta != product {
        rep.status = Status::Fail;
        rep.put("reason", "independent theta routes disagree");
        return Ok(rep);
    }
    if !divisible(&theta, n) {
        rep.fail_with(&profile.fitting);
        return Ok(rep);
    }
    if n == 1 {
        rep.put("boundary", "index_one");
    }
    Ok(rep)
}

/// Corollary on p-subgroup posets: lcm(|G|_p, m_p) divides θ(1), where
/// m_p = gcd{q − 1 : q | |G| prime, q ≠ p}.
pub fn verify_cor_first(g: &Group, p: u64, caps: &Caps) -> Result<VerificationReport> {
    require_prime(p)?;
    if g.order() as u64 % p != 0 {
        return Err(Error::Domain(format!("{p} does not divide the group order")));
    }
    let lat = all_subgroups(g, caps)?;
    let members: Vec<ElemSet> = lat
        .subgroups
        .iter()
        .filter(|s| {
            let o = s.count() as u64;
            p_part(o, p) == o
        })
        .cloned()
        .collect();
    let poset = Poset::from_subgroups(members, format!("{p}-subgroups of {}", g.provenance()));
    let theta = poset.theta(poset.position_of(&g.trivial_set()).unwrap());
    let m_p = gcd_all(
        prime_divisors(g.order() as u64)
            .into_iter()
            .filter(|&q| q != p)
            .map(|q| q - 1),
    );
    let target = lcm0(p_part(g.order() as u64, p), m_p);
    let mut rep = VerificationReport::for_group("cor-first", g);
    rep.put("p", p);
    rep.put_big("theta", &theta);
    rep.put("m_p", m_p);
    rep.put("divisor", target);
    if !divisible(&theta, target) {
        rep.fail_with(&g.trivial_set());
    }
    Ok(rep)
}

/// Corollary on π-subgroup posets: lcm(|K|, m) divides θ(1) for K a Hall
/// π-subgroup, n = (G : N_G(K)) and m = gcd{q − 1 : q | n}.
pub fn verify_cor_second(g: &Group, pi: &[u64], caps: &Caps) -> Result<VerificationReport> {
    for &p in pi {
        require_prime(p)?;
    }
    if !is_soluble(g) {
        return Err(Error::Domain("corollary requires a soluble group".into()));
    }
    let halls = hall_subgroups(g, pi, caps)?;
    let k = &halls[0];
    let n = (g.order() / g.normalizer_of(k).count()) as u64;
    let m = gcd_all(prime_divisors(n).into_iter().map(|q| q - 1));
    let lat = all_subgroups(g, caps)?;
    let members: Vec<ElemSet> = lat
        .subgroups
        .iter()
        .filter(|s| is_pi_subgroup(g, s, pi))
        .cloned()
        .collect();
    let poset = Poset::from_subgroups(members, format!("pi-subgroups of {}", g.provenance()));
    let theta = poset.theta(poset.position_of(&g.trivial_set()).unwrap());
    let target = lcm0(k.count() as u64, m);
    let mut rep = VerificationReport::for_group("cor-second", g);
    rep.put("pi", format!("{pi:?}"));
    rep.put("hall_order", k.count());
    rep.put("n", n);
    rep.put("m", m);
    rep.put_big("theta", &theta);
    rep.put("divisor", target);
    if !divisible(&theta, target) {
        rep.fail_with(k);
    }
    Ok(rep)
}

/// Corollary combining Theorems A and B: with n = (I : F) and m = m_G,
/// if n > 1 then lcm(m, n) divides θ_𝒳(F); n = 1 is the boundary case.
pub fn verify_cor_third(g: &Group, caps: &Caps) -> Result<VerificationReport> {
    let profile = mann_injector(g)?;
    let poset = injector_poset(&profile, caps)?;
    let theta = poset.theta(poset.position_of(&profile.fitting).unwrap());
    let n = (profile.injector.count() / profile.fitting.count()) as u64;
    let m = profile.m_g;
    let mut rep = VerificationReport::for_group("cor-third", g);
    rep.put("n", n);
    rep.put("m", m);
    rep.put_big("theta_at_fitting", &theta);
    if n == 1 {
        rep.status = Status::Boundary;
        rep.put("boundary", "index_one_nothing_asserted");
        return Ok(rep);
    }
    if !divisible(&theta, lcm0(m, n)) {
        rep.fail_with(&profile.fitting);
    }
    Ok(rep)
}

/// The built-in Fitting classes.
#[derive(Debug, Clone)]
pub enum FittingClass {
    Nilpotent,
    PGroups(u64),
    PiGroups(Vec<u64>),
}

impl FittingClass {
    pub fn contains(&self, g: &Group, s: &ElemSet) -> bool {
        match self {
            FittingClass::Nilpotent => is_nilpotent(g, s),
            FittingClass::PGroups(p) => {
                let o = s.count() as u64;
                p_part(o, *p) == o
            }
            FittingClass::PiGroups(pi) => {
                let o = s.count() as u64;
                crate::pi_part(o, pi) == o
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            FittingClass::Nilpotent => "nilpotent".into(),
            FittingClass::PGroups(p) => format!("{p}-groups"),
            FittingClass::PiGroups(pi) => format!("pi-groups{pi:?}"),
        }
    }
}

/// Fitting-class Proposition: |G_𝔉| divides Σ_{H ∈ 𝔉} μ(1, H) over the
/// poset of 𝔉-subgroups.
pub fn fitting_class_sum(
    g: &Group,
    class: &FittingClass,
    caps: &Caps,
) -> Result<VerificationReport> {
    if let FittingClass::PGroups(p) = class {
        require_prime(*p)?;
    }
    if let FittingClass::PiGroups(pi) = class {
        for &p in pi {
            require_prime(p)?;
        }
    }
    if !is_soluble(g) {
        return Err(Error::Domain("proposition requires a soluble group".into()));
    }
    let lat = all_subgroups(g, caps)?;
    let members: Vec<ElemSet> = lat
        .subgroups
        .iter()
        .filter(|s| class.contains(g, s))
        .cloned()
        .collect();
    // radical: product (join) of the normal members
    let radical = g.closure_of(
        members
            .iter()
            .filter(|s| g.is_normal(s))
            .flat_map(|s| s.iter()),
    );
    debug_assert!(class.contains(g, &radical));
    let poset = Poset::from_subgroups(
        members,
        format!("{}-subgroups of {}", class.label(), g.provenance()),
    );
    let sum = poset.theta(poset.position_of(&g.trivial_set()).unwrap());
    let mut rep = VerificationReport::for_group("fitting-class-sum", g);
    rep.put("class", class.label());
    rep.put("radical_order", radical.count());
    rep.put_big("mobius_sum", &sum);
    if !divisible(&sum, radical.count() as u64) {
        rep.fail_with(&radical);
    }
    Ok(rep)
}
