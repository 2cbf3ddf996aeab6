//! Verification suites: each suite maps a list of groups (or its own default
//! family) to a deterministic list of reports.

use injcount::carter::{
    carter_subgroups, count_carter_containing, isaacs_decomposition, lemma_semidirect_count,
    property_star_check, question_congruence_scan, thm_e_count_with,
};
use injcount::constructions::{nilpotent_theta, thm_d_statistics};
use injcount::injectors::{
    fitting_class_sum, mann_injector, verify_cor_first, verify_cor_second, verify_cor_third,
    verify_thm_a, verify_thm_b, FittingClass,
};
use injcount::lattice::{all_subgroups, all_sylow};
use injcount::report::{Status, VerificationReport};
use injcount::{p_part, prime_divisors, Caps, ElemSet, Error, Group, Result};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::groupspec::{build, GroupSpec};

pub const SUITE_IDS: [&str; 13] = [
    "thmA",
    "thmB",
    "thmC",
    "thmD",
    "thmE",
    "cor1",
    "cor2",
    "cor3",
    "fitting-class",
    "carter-lemmas",
    "star",
    "question-scan",
    "all",
];

/// The default family: every named construction of order ≤ 400 plus the two
/// larger composites, in a fixed order.
pub fn family_specs() -> Vec<GroupSpec> {
    use GroupSpec::*;
    vec![
        Cyclic { n: 2 },
        Cyclic { n: 6 },
        Cyclic { n: 12 },
        ElementaryAbelian { p: 2, k: 2 },
        ElementaryAbelian { p: 3, k: 2 },
        Dihedral { n: 4 },
        Dihedral { n: 5 },
        Dihedral { n: 6 },
        Symmetric { n: 3 },
        Symmetric { n: 4 },
        Frobenius21 {},
        Agammal1 { q: 8 },
        Small54 {},
        Jrv { p: 2, a: 1 },
        S3xs4 {},
        Jrv { p: 2, a: 2 },
    ]
}

/// `filter`: an order bound applied when trimming the default family; explicit
/// specs pass `None` so an oversized group surfaces as a cap error instead of
/// being silently skipped.
fn build_all(
    specs: &[GroupSpec],
    caps: &Caps,
    filter: Option<usize>,
) -> Result<Vec<(GroupSpec, Group)>> {
    // family members above the bound are skipped, so their construction must
    // not trip the lattice cap
    let build_caps = match filter {
        Some(_) => Caps {
            max_lattice_order: caps.max_elements,
            ..*caps
        },
        None => *caps,
    };
    let mut out = Vec::new();
    for s in specs {
        let g = build(s, &build_caps)?;
        if filter.map_or(true, |bound| g.order() <= bound) {
            out.push((s.clone(), g));
        }
    }
    Ok(out)
}

/// Groups the thmC suite runs on when no explicit spec is given.
fn thm_c_default() -> Vec<GroupSpec> {
    vec![GroupSpec::Jrv { p: 2, a: 1 }, GroupSpec::Jrv { p: 3, a: 1 }]
}

pub fn run_suite(
    check: &str,
    explicit: Option<&GroupSpec>,
    caps: &Caps,
    max_order: usize,
) -> Result<Vec<VerificationReport>> {
    let chosen = |default: Vec<GroupSpec>| -> Vec<GroupSpec> {
        match explicit {
            Some(s) => vec![s.clone()],
            None => default,
        }
    };
    let filter = if explicit.is_some() {
        None
    } else {
        Some(max_order)
    };
    match check {
        "thmA" => per_group(&chosen(family_specs()), caps, filter, |g, caps| {
            verify_thm_a(g, caps)
        }),
        "thmB" => per_group(&chosen(family_specs()), caps, filter, |g, caps| {
            verify_thm_b(g, caps)
        }),
        "thmC" => {
            let specs = chosen(thm_c_default());
            let groups = build_all(&specs, caps, filter)?;
            groups
                .iter()
                .map(|(spec, g)| thm_c_report(spec, g, caps))
                .collect()
        }
        "thmD" => [3u64, 5].iter().map(|&p| thm_d_report(p, caps)).collect(),
        "thmE" => per_group(&chosen(family_specs()), caps, filter, thm_e_report),
        "cor1" => multi_per_group(&chosen(family_specs()), caps, filter, |g, caps| {
            prime_divisors(g.order() as u64)
                .into_iter()
                .map(|p| verify_cor_first(g, p, caps))
                .collect()
        }),
        "cor2" => multi_per_group(&chosen(family_specs()), caps, filter, |g, caps| {
            let ps = prime_divisors(g.order() as u64);
            let mut sets: Vec<Vec<u64>> = ps.iter().map(|&p| vec![p]).collect();
            for i in 0..ps.len() {
                for j in (i + 1)..ps.len() {
                    sets.push(vec![ps[i], ps[j]]);
                }
            }
            sets.into_iter()
                .map(|pi| verify_cor_second(g, &pi, caps))
                .collect()
        }),
        "cor3" => per_group(&chosen(family_specs()), caps, filter, |g, caps| {
            verify_cor_third(g, caps)
        }),
        "fitting-class" => multi_per_group(&chosen(family_specs()), caps, filter, |g, caps| {
            let mut classes = vec![FittingClass::Nilpotent];
            let ps = prime_divisors(g.order() as u64);
            classes.extend(ps.iter().map(|&p| FittingClass::PGroups(p)));
            if ps.len() >= 2 {
                classes.push(FittingClass::PiGroups(ps));
            }
            classes
                .into_iter()
                .map(|c| fitting_class_sum(g, &c, caps))
                .collect()
        }),
        "carter-lemmas" => per_group(&chosen(family_specs()), caps, filter, carter_lemmas_report),
        "star" => per_group(&chosen(family_specs()), caps, filter, |g, caps| {
            property_star_check(g, caps)
        }),
        "question-scan" => per_group(&chosen(family_specs()), caps, filter, |g, caps| {
            question_congruence_scan(g, caps)
        }),
        "all" => {
            let mut out = Vec::new();
            for id in SUITE_IDS.iter().filter(|&&id| id != "all") {
                out.extend(run_suite(id, explicit, caps, max_order)?);
            }
            Ok(out)
        }
        other => Err(Error::Parse(format!(
            "unknown check {other:?}; expected one of {}",
            SUITE_IDS.join(", ")
        ))),
    }
}

fn per_group<F>(
    specs: &[GroupSpec],
    caps: &Caps,
    filter: Option<usize>,
    f: F,
) -> Result<Vec<VerificationReport>>
where
    F: Fn(&Group, &Caps) -> Result<VerificationReport>,
{
    build_all(specs, caps, filter)?
        .iter()
        .map(|(_, g)| f(g, caps))
        .collect()
}

fn multi_per_group<F>(
    specs: &[GroupSpec],
    caps: &Caps,
    filter: Option<usize>,
    f: F,
) -> Result<Vec<VerificationReport>>
where
    F: Fn(&Group, &Caps) -> Vec<Result<VerificationReport>>,
{
    let mut out = Vec::new();
    for (_, g) in build_all(specs, caps, filter)? {
        for r in f(&g, caps) {
            out.push(r?);
        }
    }
    Ok(out)
}

/// θ over the nilpotent-subgroup poset at 1 versus the injector order. For a
/// JRV(p, a) group the ratio must be exactly −p^a; for other groups the
/// values are recorded as empirical evidence.
fn thm_c_report(spec: &GroupSpec, g: &Group, caps: &Caps) -> Result<VerificationReport> {
    let theta = nilpotent_theta(g, caps)?;
    let profile = mann_injector(g)?;
    let injector_order = BigInt::from(profile.injector.count() as u64);
    let mut rep = VerificationReport::for_group("thm-c-ratio", g);
    rep.put_big("theta_nilpotent", &theta);
    rep.put_big("injector_order", &injector_order);
    let ratio = if !theta.is_zero() && (&injector_order % &theta).is_zero() {
        Some(&injector_order / &theta)
    } else {
        None
    };
    if let Some(r) = &ratio {
        rep.put_big("ratio", r);
    }
    if let GroupSpec::Jrv { p, a } = spec {
        let expected = -BigInt::from(*p as u64).pow(*a as u32);
        rep.put_big("expected_ratio", &expected);
        if ratio.as_ref() != Some(&expected) {
            rep.fail_with(&profile.injector);
        }
    } else {
        rep.status = Status::Empirical;
    }
    Ok(rep)
}

fn thm_d_report(p: u64, caps: &Caps) -> Result<VerificationReport> {
    let s = thm_d_statistics(p, caps)?;
    let mut rep = VerificationReport::new("thm-d-statistics", &format!("p={p}"));
    rep.put("p", p);
    rep.put_big("order_g", &s.order_g);
    rep.put_big("order_h", &s.order_h);
    rep.put_big("class_size", &s.class_size);
    rep.put_big("class_meet_h", &s.class_meet_h);
    rep.put("stabilizer_order", s.stabilizer_order);
    rep.put_big("centralizer_order", &s.centralizer_order);
    rep.put_big("nu", &s.nu);
    rep.put_big("divisor", &s.divisor);
    if !(&s.nu % &s.divisor).is_zero() {
        rep.status = Status::Fail;
    }
    Ok(rep)
}

/// A normal Hall q′-subgroup of G, if one exists: for some prime q dividing
/// |G|, a normal subgroup whose order is the q′-part of |G|.
fn normal_hall_complement(g: &Group, subgroups: &[ElemSet]) -> Option<(u64, ElemSet)> {
    for q in prime_divisors(g.order() as u64) {
        let want = g.order() / p_part(g.order() as u64, q) as usize;
        if want == 1 {
            continue;
        }
        if let Some(n) = subgroups
            .iter()
            .find(|s| s.count() == want && g.is_normal(s))
        {
            return Some((q, n.clone()));
        }
    }
    None
}

/// Theorem E's product formula against direct counting, for every subgroup X,
/// over the first available normal Hall q′-subgroup. Boundary when G has none.
fn thm_e_report(g: &Group, caps: &Caps) -> Result<VerificationReport> {
    let lat = all_subgroups(g, caps)?;
    let mut rep = VerificationReport::for_group("thm-e-product", g);
    let Some((q, n)) = normal_hall_complement(g, &lat.subgroups) else {
        rep.status = Status::Boundary;
        rep.put("reason", "no normal Hall q'-subgroup");
        return Ok(rep);
    };
    rep.put("q", q);
    rep.put("hall_order", n.count());
    let profile = carter_subgroups(g, caps)?;
    rep.put("checked_subgroups", lat.subgroups.len());
    for x in &lat.subgroups {
        let formula = thm_e_count_with(&profile, &n, x, caps)?;
        let direct = count_carter_containing(&profile, x);
        if formula != direct {
            rep.put("formula", formula);
            rep.put("direct", direct);
            rep.fail_with(x);
            return Ok(rep);
        }
    }
    Ok(rep)
}

/// The Carter counting lemmas: the semidirect count (C_N(X) : C_N(C)) against
/// direct enumeration whenever the Carter subgroup has a normal complement,
/// and Isaacs's decomposition whenever a normal Hall q′-subgroup exists.
fn carter_lemmas_report(g: &Group, caps: &Caps) -> Result<VerificationReport> {
    let profile = carter_subgroups(g, caps)?;
    let lat = all_subgroups(g, caps)?;
    let c = &profile.carters[0];
    let mut rep = VerificationReport::for_group("carter-lemmas", g);
    let mut applicable = false;

    let complement = lat.subgroups.iter().find(|h| {
        g.is_normal(h) && h.intersection(c).count() == 1 && h.count() * c.count() == g.order()
    });
    if let Some(n) = complement {
        applicable = true;
        rep.put("complement_order", n.count());
        for x in lat.subgroups.iter().filter(|x| x.is_subset(c)) {
            let by_lemma = lemma_semidirect_count(g, n, c, x)?;
            let direct = count_carter_containing(&profile, x);
            if by_lemma != direct || n.count() % by_lemma != 0 {
                rep.put("lemma_count", by_lemma);
                rep.put("direct_count", direct);
                rep.fail_with(x);
                return Ok(rep);
            }
        }
    }

    if let Some((q, n)) = normal_hall_complement(g, &lat.subgroups) {
        applicable = true;
        let q_sub = all_sylow(g, q).into_iter().min().unwrap();
        let parts = isaacs_decomposition(g, &n, &q_sub, caps)?;
        rep.put("isaacs_prime", q);
        rep.put("isaacs_count", parts.len());
    }

    if !applicable {
        rep.status = Status::Boundary;
        rep.put("reason", "no semidirect factorization available");
    }
    Ok(rep)
}
