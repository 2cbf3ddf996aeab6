//! Carter subgroups: enumeration, the counting function n_C(G,X), the
//! semidirect counting lemma, Isaacs's decomposition over a normal Hall
//! q′-subgroup, Theorem E's product formula, property (*) and the closing
//! congruence scan.

use rayon::prelude::*;

use crate::bitset::ElemSet;
use crate::group::Group;
use crate::lattice::{
    all_subgroups, count_sylow_containing, is_nilpotent, is_soluble, sylow_of_subgroup,
};
use crate::report::{Status, VerificationReport};
use crate::{cong1, gcd_all, p_part, prime_divisors, Caps, Error, Result};

pub struct CarterProfile {
    pub group: Group,
    pub carters: Vec<ElemSet>,
    /// m̂_G = gcd{p − 1 : p | (G : C)}, with the empty gcd 0 for nilpotent G.
    pub m_hat: u64,
}

/// All Carter subgroups, by the definitional filter: nilpotent and
/// self-normalizing. Verifies they form a single conjugacy class of size
/// (G : C).
pub fn carter_subgroups(g: &Group, caps: &Caps) -> Result<CarterProfile> {
    if !is_soluble(g) {
        return Err(Error::Domain(
            "Carter subgroups require a soluble group".into(),
        ));
    }
    let lat = all_subgroups(g, caps)?;
    let carters: Vec<ElemSet> = lat
        .subgroups
        .iter()
        .filter(|s| g.normalizer_of(s) == **s && is_nilpotent(g, s))
        .cloned()
        .collect();
    assert!(!carters.is_empty(), "soluble groups have Carter subgroups");
    let mut class = g.conjugates_of(&carters[0]);
    class.sort();
    assert_eq!(class, carters, "Carter subgroups form one conjugacy class");
    let index = g.order() / carters[0].count();
    assert_eq!(carters.len(), index, "|Cart(G)| = (G : C)");
    let m_hat = gcd_all(prime_divisors(index as u64).into_iter().map(|p| p - 1));
    Ok(CarterProfile {
        group: g.clone(),
        carters,
        m_hat,
    })
}

/// n_C(G, X): Carter subgroups containing X.
pub fn count_carter_containing(profile: &CarterProfile, x: &ElemSet) -> usize {
    profile.carters.iter().filter(|c| x.is_subset(c)).count()
}

/// For G = N ⋊ C and X ≤ C, the number of conjugates of C containing X is
/// (C_N(X) : C_N(C)). When C is a Carter subgroup this is n_C(G, X) and
/// C_N(C) = 1, so the count is |C_N(X)|.
pub fn lemma_semidirect_count(
    g: &Group,
    n: &ElemSet,
    c: &ElemSet,
    x: &ElemSet,
) -> Result<usize> {
    if !g.is_subgroup(n) || !g.is_normal(n) {
        return Err(Error::Domain("N must be a normal subgroup".into()));
    }
    if !g.is_subgroup(c)
        || n.intersection(c).count() != 1
        || n.count() * c.count() != g.order()
    {
        return Err(Error::Domain("G must factor as N ⋊ C".into()));
    }
    if !x.is_subset(c) || !g.is_subgroup(x) {
        return Err(Error::Domain("X must be a subgroup of C".into()));
    }
    let cn_x = g.centralizer_of(x).intersection(n);
    let cn_c = g.centralizer_of(c).intersection(n);
    debug_assert!(cn_c.is_subset(&cn_x));
    Ok(cn_x.count() / cn_c.count())
}

/// The prime q for a normal Hall q′-subgroup N: (G : N) must be a nontrivial
/// power of a single prime not dividing |N|.
fn hall_complement_prime(g: &Group, n: &ElemSet) -> Result<u64> {
    if !g.is_subgroup(n) || !g.is_normal(n) {
        return Err(Error::Domain("N must be a normal subgroup".into()));
    }
    let index = (g.order() / n.count()) as u64;
    let ps = prime_divisors(index);
    if ps.len() != 1 {
        return Err(Error::Domain(
            "(G : N) must be a power of a single prime".into(),
        ));
    }
    let q = ps[0];
    if n.count() as u64 % q == 0 {
        return Err(Error::Domain(format!("N is not a Hall {q}'-subgroup")));
    }
    Ok(q)
}

fn local_ids(back: &[usize], parent_order: usize) -> Vec<usize> {
    let mut to_local = vec![usize::MAX; parent_order];
    for (i, &e) in back.iter().enumerate() {
        to_local[e] = i;
    }
    to_local
}

/// Isaacs's one-prime decomposition: with N a normal Hall q′-subgroup and
/// Q ∈ Syl_q(G), Cart(G, Q) = {QU : U ∈ Cart(C_N(Q))}. Verifies the equality
/// against direct enumeration and that every Carter subgroup of G has full
/// Sylow q-part.
pub fn isaacs_decomposition(
    g: &Group,
    n: &ElemSet,
    q_sub: &ElemSet,
    caps: &Caps,
) -> Result<Vec<ElemSet>> {
    let q = hall_complement_prime(g, n)?;
    let gq = p_part(g.order() as u64, q) as usize;
    if !g.is_subgroup(q_sub) || q_sub.count() != gq {
        return Err(Error::Domain(format!("Q must be a Sylow {q}-subgroup")));
    }
    let y = g.centralizer_of(q_sub).intersection(n);
    let (sub, back) = g.materialize(&y);
    let inner = carter_subgroups(&sub, caps)?;
    let mut out: Vec<ElemSet> = inner
        .carters
        .iter()
        .map(|u| {
            g.closure_of(
                q_sub
                    .iter()
                    .chain(u.iter().map(|i| back[i])),
            )
        })
        .collect();
    out.sort();
    out.dedup();
    let profile = carter_subgroups(g, caps)?;
    for c in &profile.carters {
        assert_eq!(
            p_part(c.count() as u64, q) as usize,
            gq,
            "every Carter subgroup has full Sylow q-part"
        );
    }
    let mut direct: Vec<ElemSet> = profile
        .carters
        .iter()
        .filter(|c| q_sub.is_subset(c))
        .cloned()
        .collect();
    direct.sort();
    assert_eq!(out, direct, "decomposition must match direct enumeration");
    Ok(out)
}

/// Theorem E: for N a normal Hall q′-subgroup and X inside some Carter
/// subgroup C, with X_{q′} = X ∩ N, X_q ∈ Syl_q(X) and A = C_G(X_{q′}),
///   n_C(G, X) = |Syl_q(A, X_q)| · n_C(C_N(C_q), X_{q′}).
/// Returns 0 when no Carter subgroup contains X.
pub fn thm_e_count(g: &Group, n: &ElemSet, x: &ElemSet, caps: &Caps) -> Result<usize> {
    let profile = carter_subgroups(g, caps)?;
    thm_e_count_with(&profile, n, x, caps)
}

/// Theorem E against an already-computed Carter profile (the profile is the
/// expensive part of repeated sweeps).
pub fn thm_e_count_with(
    profile: &CarterProfile,
    n: &ElemSet,
    x: &ElemSet,
    caps: &Caps,
) -> Result<usize> {
    let g = &profile.group;
    let q = hall_complement_prime(g, n)?;
    if !g.is_subgroup(x) {
        return Err(Error::Domain("X must be a subgroup".into()));
    }
    let Some(c) = profile.carters.iter().find(|c| x.is_subset(c)) else {
        return Ok(0);
    };
    let x_qprime = x.intersection(n);
    let x_q = sylow_of_subgroup(g, x, q);
    // |Syl_q(A, X_q)| with A = C_G(X_{q'})
    let a = g.centralizer_of(&x_qprime);
    let (a_grp, a_back) = g.materialize(&a);
    let a_local = local_ids(&a_back, g.order());
    let x_q_local = ElemSet::from_iter(a_grp.order(), x_q.iter().map(|e| a_local[e]));
    let sylow_factor = count_sylow_containing(&a_grp, &x_q_local, q)?;
    // n_C(C_N(C_q), X_{q'})
    let c_q = sylow_of_subgroup(g, c, q);
    let y = g.centralizer_of(&c_q).intersection(n);
    debug_assert!(x_qprime.is_subset(&y));
    let (y_grp, y_back) = g.materialize(&y);
    let y_local = local_ids(&y_back, g.order());
    let inner = carter_subgroups(&y_grp, caps)?;
    let x_qprime_local =
        ElemSet::from_iter(y_grp.order(), x_qprime.iter().map(|e| y_local[e]));
    let carter_factor = count_carter_containing(&inner, &x_qprime_local);
    let total = sylow_factor * carter_factor;
    debug_assert_eq!(total, count_carter_containing(profile, x));
    Ok(total)
}

/// Property (*): n_C(G, X) divides (G : C) for every X lying in a Carter
/// subgroup. Sylow-tower groups must satisfy it (Cor SylowTower), so the
/// report records `sylow_tower` alongside the verdict.
pub fn property_star_check(g: &Group, caps: &Caps) -> Result<VerificationReport> {
    let profile = carter_subgroups(g, caps)?;
    let lat = all_subgroups(g, caps)?;
    let index = g.order() / profile.carters[0].count();
    let mut rep = VerificationReport::for_group("property-star", g);
    rep.put("carter_index", index);
    rep.put("sylow_tower", crate::lattice::has_sylow_tower(g));
    let mut violations: Vec<(ElemSet, usize)> = lat
        .subgroups
        .par_iter()
        .filter_map(|s| {
            let count = count_carter_containing(&profile, s);
            if count != 0 && index % count != 0 {
                Some((s.clone(), count))
            } else {
                None
            }
        })
        .collect();
    violations.sort_by(|a, b| a.0.count().cmp(&b.0.count()).then_with(|| a.0.cmp(&b.0)));
    if let Some((witness, count)) = violations.first() {
        rep.put("count", *count);
        rep.fail_with(witness);
    }
    Ok(rep)
}

/// The paper's closing Question: is n_C(G, X) ≡ 1 (mod m̂_G) whenever
/// n_C(G, X) ≠ 0? Scans all nilpotent X and reports candidates without
/// asserting — the question is open, so the status is always `Empirical`.
pub fn question_congruence_scan(g: &Group, caps: &Caps) -> Result<VerificationReport> {
    let profile = carter_subgroups(g, caps)?;
    let lat = all_subgroups(g, caps)?;
    let mut rep = VerificationReport::for_group("question-congruence", g);
    rep.status = Status::Empirical;
    rep.put("m_hat", profile.m_hat);
    let mut candidates: Vec<(usize, ElemSet, usize)> = lat
        .subgroups
        .par_iter()
        .enumerate()
        .filter_map(|(i, s)| {
            if !is_nilpotent(g, s) {
                return None;
            }
            let count = count_carter_containing(&profile, s);
            if count != 0 && !cong1(count as u64, profile.m_hat) {
                Some((i, s.clone(), count))
            } else {
                None
            }
        })
        .collect();
    candidates.sort_by_key(|c| c.0);
    rep.put("candidate_count", candidates.len());
    for (i, (_, s, count)) in candidates.iter().enumerate() {
        rep.witness(s);
        rep.put(&format!("candidate_{i}_count"), count);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::standard;
    use crate::group::{quotient_by_normal, FiniteGroup};
    use crate::lattice::{all_sylow, hall_subgroups, sylow_subgroup};
    use crate::perm::Permutation;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn carter_examples() {
        let s4 = standard("symmetric", &[4]).unwrap();
        let p = carter_subgroups(&s4, &caps()).unwrap();
        let mut syl = all_sylow(&s4, 2);
        syl.sort();
        assert_eq!(p.carters, syl);
        assert_eq!(p.m_hat, 2);

        let s3 = standard("symmetric", &[3]).unwrap();
        let p = carter_subgroups(&s3, &caps()).unwrap();
        assert_eq!(p.carters.len(), 3);
        assert!(p.carters.iter().all(|c| c.count() == 2));
        assert_eq!(p.m_hat, 2);

        let c12 = standard("cyclic", &[12]).unwrap();
        let p = carter_subgroups(&c12, &caps()).unwrap();
        assert_eq!(p.carters, vec![c12.full_set()]);
        assert_eq!(p.m_hat, 0);

        assert!(carter_subgroups(&standard("alternating", &[5]).unwrap(), &caps()).is_err());
    }

    #[test]
    fn counting_examples() {
        let s3 = standard("symmetric", &[3]).unwrap();
        let p = carter_subgroups(&s3, &caps()).unwrap();
        assert_eq!(count_carter_containing(&p, &s3.trivial_set()), 3);

        let f21 = standard("frobenius21", &[]).unwrap();
        let p = carter_subgroups(&f21, &caps()).unwrap();
        let c3 = p.carters[0].clone();
        assert_eq!(c3.count(), 3);
        assert_eq!(count_carter_containing(&p, &c3), 1);
        assert_eq!(count_carter_containing(&p, &f21.trivial_set()), 7);

        let d8 = standard("dihedral", &[4]).unwrap();
        let p = carter_subgroups(&d8, &caps()).unwrap();
        assert_eq!(count_carter_containing(&p, &d8.full_set()), 1);
    }

    #[test]
    fn lemma_semidirect_examples() {
        let s3 = standard("symmetric", &[3]).unwrap();
        let a3 = s3.derived_subgroup();
        let c2 = (1..6)
            .map(|x| s3.closure_of([x]))
            .find(|s| s.count() == 2)
            .unwrap();
        assert_eq!(
            lemma_semidirect_count(&s3, &a3, &c2, &s3.trivial_set()).unwrap(),
            3
        );
        assert_eq!(lemma_semidirect_count(&s3, &a3, &c2, &c2).unwrap(), 1);

        let f21 = standard("frobenius21", &[]).unwrap();
        let c7 = sylow_subgroup(&f21, 7);
        let c3 = carter_subgroups(&f21, &caps()).unwrap().carters[0].clone();
        assert_eq!(
            lemma_semidirect_count(&f21, &c7, &c3, &f21.trivial_set()).unwrap(),
            7
        );

        // broken factorizations are rejected
        assert!(lemma_semidirect_count(&s3, &a3, &a3, &s3.trivial_set()).is_err());
        assert!(lemma_semidirect_count(&s3, &c2, &a3, &s3.trivial_set()).is_err());
    }

    #[test]
    fn semidirect_lemma_matches_carter_count() {
        // when C is Carter, the lemma count is n_C(G, X) for every X ≤ C
        for (name, params) in [
            ("frobenius21", vec![]),
            ("symmetric", vec![3usize]),
            ("small_54_5", vec![]),
        ] {
            let g = standard(name, &params).unwrap();
            let p = carter_subgroups(&g, &caps()).unwrap();
            let c = p.carters[0].clone();
            let lat = all_subgroups(&g, &caps()).unwrap();
            let nset = lat
                .subgroups
                .iter()
                .find(|h| {
                    g.is_normal(h)
                        && h.intersection(&c).count() == 1
                        && h.count() * c.count() == g.order()
                })
                .unwrap_or_else(|| panic!("{name}: no normal complement of the Carter subgroup"));
            for x in lat.subgroups.iter().filter(|x| x.is_subset(&c)) {
                let by_lemma = lemma_semidirect_count(&g, nset, &c, x).unwrap();
                assert_eq!(
                    by_lemma,
                    count_carter_containing(&p, x),
                    "{name}{params:?}"
                );
                // Prop SemidirWithCart: the count is |C_N(X)| and divides |N|
                let cn_x = g.centralizer_of(x).intersection(nset);
                assert_eq!(by_lemma, cn_x.count());
                assert_eq!(nset.count() % by_lemma, 0);
            }
        }
    }

    #[test]
    fn isaacs_examples() {
        let f21 = standard("frobenius21", &[]).unwrap();
        let c7 = sylow_subgroup(&f21, 7);
        let q = sylow_subgroup(&f21, 3);
        let dec = isaacs_decomposition(&f21, &c7, &q, &caps()).unwrap();
        assert_eq!(dec, vec![q.clone()]);

        let g54 = standard("small_54_5", &[]).unwrap();
        let n27 = sylow_subgroup(&g54, 3);
        assert!(g54.is_normal(&n27));
        let q2 = sylow_subgroup(&g54, 2);
        // internal assertions compare against direct enumeration
        let dec = isaacs_decomposition(&g54, &n27, &q2, &caps()).unwrap();
        assert!(!dec.is_empty());

        let c12 = standard("cyclic", &[12]).unwrap();
        let n3 = sylow_subgroup(&c12, 3);
        let q4 = sylow_subgroup(&c12, 2);
        assert_eq!(
            isaacs_decomposition(&c12, &n3, &q4, &caps()).unwrap(),
            vec![c12.full_set()]
        );

        // N not a Hall q'-subgroup
        let s4 = standard("symmetric", &[4]).unwrap();
        let v4 = crate::lattice::fitting_subgroup(&s4);
        assert!(isaacs_decomposition(&s4, &v4, &sylow_subgroup(&s4, 2), &caps()).is_err());
    }

    #[test]
    fn thm_e_examples() {
        let f21 = standard("frobenius21", &[]).unwrap();
        let c7 = sylow_subgroup(&f21, 7);
        assert_eq!(thm_e_count(&f21, &c7, &f21.trivial_set(), &caps()).unwrap(), 7);
        let c3 = carter_subgroups(&f21, &caps()).unwrap().carters[0].clone();
        assert_eq!(thm_e_count(&f21, &c7, &c3, &caps()).unwrap(), 1);
        // X = C7 lies in no Carter subgroup
        assert_eq!(thm_e_count(&f21, &c7, &c7, &caps()).unwrap(), 0);

        let c12 = standard("cyclic", &[12]).unwrap();
        let n3 = sylow_subgroup(&c12, 3);
        assert_eq!(thm_e_count(&c12, &n3, &c12.trivial_set(), &caps()).unwrap(), 1);
    }

    #[test]
    fn thm_e_matches_direct_count_everywhere() {
        for (name, params) in [
            ("frobenius21", vec![]),
            ("small_54_5", vec![]),
            ("symmetric", vec![3usize]),
        ] {
            let g = standard(name, &params).unwrap();
            // find a normal Hall q'-subgroup
            let order = g.order() as u64;
            let lat0 = all_subgroups(&g, &caps()).unwrap();
            let n = prime_divisors(order)
                .into_iter()
                .find_map(|q| {
                    let target = (order / p_part(order, q)) as usize;
                    lat0.subgroups
                        .iter()
                        .find(|s| s.count() == target && g.is_normal(s))
                        .cloned()
                })
                .unwrap_or_else(|| panic!("{name}: no normal Hall complement in test family"));
            let profile = carter_subgroups(&g, &caps()).unwrap();
            let lat = all_subgroups(&g, &caps()).unwrap();
            for x in &lat.subgroups {
                // thm_e_count internally debug-asserts agreement; check it
                // release-mode too
                let direct = count_carter_containing(&profile, x);
                assert_eq!(
                    thm_e_count(&g, &n, x, &caps()).unwrap(),
                    direct,
                    "{name}{params:?}"
                );
            }
        }
    }

    #[test]
    fn property_star_examples() {
        for (name, params) in [
            ("symmetric", vec![3usize]),
            ("frobenius21", vec![]),
            ("symmetric", vec![4]),
            ("small_54_5", vec![]),
            ("cyclic", vec![12]),
        ] {
            let g = standard(name, &params).unwrap();
            let rep = property_star_check(&g, &caps()).unwrap();
            assert_eq!(rep.status, Status::Pass, "{name}{params:?}");
        }
        let f21 = standard("frobenius21", &[]).unwrap();
        let rep = property_star_check(&f21, &caps()).unwrap();
        assert_eq!(rep.values["sylow_tower"], "true");
    }

    #[test]
    fn question_scan_examples() {
        let s4 = standard("symmetric", &[4]).unwrap();
        let rep = question_congruence_scan(&s4, &caps()).unwrap();
        assert_eq!(rep.status, Status::Empirical);
        assert_eq!(rep.values["m_hat"], "2");
        assert_eq!(rep.values["candidate_count"], "0");

        let c12 = standard("cyclic", &[12]).unwrap();
        let rep = question_congruence_scan(&c12, &caps()).unwrap();
        assert_eq!(rep.values["m_hat"], "0");
        assert_eq!(rep.values["candidate_count"], "0");
    }

    #[test]
    fn quotient_persistence() {
        for (name, params) in [
            ("symmetric", vec![4usize]),
            ("frobenius21", vec![]),
            ("small_54_5", vec![]),
            ("dihedral", vec![6]),
        ] {
            let g = standard(name, &params).unwrap();
            let p = carter_subgroups(&g, &caps()).unwrap();
            let lat = all_subgroups(&g, &caps()).unwrap();
            for nset in lat.subgroups.iter().filter(|s| g.is_normal(s)) {
                let (quot, hom) = quotient_by_normal(&g, nset).unwrap();
                let pq = carter_subgroups(&quot, &caps()).unwrap();
                for c in &p.carters {
                    let image = hom.image_of_set(c);
                    assert!(
                        pq.carters.contains(&image),
                        "{name}{params:?}: image of Carter not Carter in quotient"
                    );
                }
            }
        }
    }

    #[test]
    fn isaacs_general_pi_form() {
        // AGL(1,7) = C7 ⋊ C6: N normal Hall {7}-subgroup, π' = {2,3},
        // Q = C6 a Hall π'-subgroup, D = Q Carter in Q.
        let f42 = FiniteGroup::from_permutations(
            7,
            &[
                Permutation::new(vec![1, 2, 3, 4, 5, 6, 0]).unwrap(),
                Permutation::new(vec![0, 3, 6, 2, 5, 1, 4]).unwrap(),
            ],
            &caps(),
            "AGL(1,7)".into(),
        )
        .unwrap();
        assert_eq!(f42.order(), 42);
        let n = sylow_subgroup(&f42, 7);
        assert!(f42.is_normal(&n));
        let q = hall_subgroups(&f42, &[2, 3], &caps()).unwrap()[0].clone();
        assert_eq!(q.count(), 6);
        let d = q.clone(); // C6 is nilpotent, so Carter in itself
        let profile = carter_subgroups(&f42, &caps()).unwrap();
        let mut direct: Vec<ElemSet> = profile
            .carters
            .iter()
            .filter(|c| d.is_subset(c))
            .cloned()
            .collect();
        direct.sort();
        // {DU : U ∈ Cart(C_N(D))}
        let y = f42.centralizer_of(&d).intersection(&n);
        let (y_grp, back) = f42.materialize(&y);
        let inner = carter_subgroups(&y_grp, &caps()).unwrap();
        let mut built: Vec<ElemSet> = inner
            .carters
            .iter()
            .map(|u| f42.closure_of(d.iter().chain(u.iter().map(|i| back[i]))))
            .collect();
        built.sort();
        built.dedup();
        assert_eq!(built, direct);
        assert_eq!(direct.len(), 1); // C_{C7}(C6) = 1, so Cart(G, D) = {D}
        assert_eq!(direct[0], d);
    }
}
