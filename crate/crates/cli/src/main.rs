//! `injcount`: construct small soluble groups from JSON specs, inspect their
//! subgroup structure, and run the verification suites. Output is
//! deterministic JSON; all integers are decimal strings.
//!
//! Exit codes: 0 — every report passed (boundary/empirical count as pass);
//! 1 — some report failed; 2 — a resource cap was exceeded or the input was
//! invalid.

mod groupspec;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use injcount::carter::carter_subgroups;
use injcount::constructions::nilpotent_theta;
use injcount::group::{abelian_invariants, order_histogram};
use injcount::injectors::mann_injector;
use injcount::lattice::all_subgroups;
use injcount::poset::Poset;
use injcount::report::VerificationReport;
use injcount::{Caps, Error, Group, Result};
use num_traits::Zero;
use serde_json::json;

use groupspec::{build, parse_group_spec, GroupSpec};

#[derive(Parser)]
#[command(name = "injcount", about = "nilpotent injector / Carter subgroup computations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// rayon worker threads (default: one per core)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// largest group order for which subgroup lattices are enumerated; also
    /// trims the default verification family
    #[arg(long, global = true, default_value_t = 5_000)]
    max_order: usize,
    /// cap on the number of subgroups a lattice may hold
    #[arg(long, global = true, default_value_t = 200_000)]
    max_subgroups: usize,
}

#[derive(Args)]
struct SpecArg {
    /// path to a JSON group spec, or `-` for stdin
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a group and print its fingerprint.
    Construct(SpecArg),
    /// Enumerate the full subgroup lattice.
    Lattice(SpecArg),
    /// Nilpotent injectors and the modulus m_G.
    Injectors(SpecArg),
    /// Carter subgroups and the modulus m̂_G.
    Carter(SpecArg),
    /// Möbius sums over the subgroup and nilpotent-subgroup posets.
    Mobius(SpecArg),
    /// Run a verification suite.
    Verify {
        /// suite id (thmA..thmE, cor1..cor3, fitting-class, carter-lemmas,
        /// star, question-scan, all)
        #[arg(long)]
        check: String,
        /// restrict the suite to one group instead of the default family
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Congruence-question scan and injector/θ ratios over the family,
    /// one JSON object per line.
    Survey,
}

fn read_spec(path: &PathBuf) -> Result<GroupSpec> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path)?
    };
    parse_group_spec(&text)
}

fn group_doc(g: &Group) -> serde_json::Value {
    json!({
        "order": g.order().to_string(),
        "abelian_invariants": abelian_invariants(g).iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "provenance": g.provenance(),
    })
}

fn construct_doc(spec: &GroupSpec, caps: &Caps) -> Result<serde_json::Value> {
    let g = build(spec, caps)?;
    let mut doc = group_doc(&g);
    doc["element_order_histogram"] = json!(order_histogram(&g)
        .into_iter()
        .map(|(o, n)| [o.to_string(), n.to_string()])
        .collect::<Vec<_>>());
    Ok(doc)
}

fn lattice_doc(spec: &GroupSpec, caps: &Caps) -> Result<serde_json::Value> {
    let g = build(spec, caps)?;
    let lat = all_subgroups(&g, caps)?;
    let mut by_order: std::collections::BTreeMap<usize, usize> = Default::default();
    for s in &lat.subgroups {
        *by_order.entry(s.count()).or_default() += 1;
    }
    let normal = lat.subgroups.iter().filter(|s| g.is_normal(s)).count();
    let mut doc = group_doc(&g);
    doc["subgroup_count"] = json!(lat.subgroups.len().to_string());
    doc["normal_subgroup_count"] = json!(normal.to_string());
    doc["subgroups_by_order"] = json!(by_order
        .into_iter()
        .map(|(o, n)| [o.to_string(), n.to_string()])
        .collect::<Vec<_>>());
    Ok(doc)
}

fn injectors_doc(spec: &GroupSpec, caps: &Caps) -> Result<serde_json::Value> {
    let g = build(spec, caps)?;
    let p = mann_injector(&g)?;
    let mut doc = group_doc(&g);
    doc["fitting_order"] = json!(p.fitting.count().to_string());
    doc["injector_order"] = json!(p.injector.count().to_string());
    doc["injector_count"] = json!(p.all_injectors.len().to_string());
    doc["m_g"] = json!(p.m_g.to_string());
    doc["per_prime"] = json!(p
        .per_prime
        .iter()
        .map(|d| json!({
            "p": d.p.to_string(),
            "centralizer_order": d.c_p.count().to_string(),
            "sylow_order": d.s_p.count().to_string(),
        }))
        .collect::<Vec<_>>());
    Ok(doc)
}

fn carter_doc(spec: &GroupSpec, caps: &Caps) -> Result<serde_json::Value> {
    let g = build(spec, caps)?;
    let p = carter_subgroups(&g, caps)?;
    let mut doc = group_doc(&g);
    doc["carter_order"] = json!(p.carters[0].count().to_string());
    doc["carter_count"] = json!(p.carters.len().to_string());
    doc["m_hat"] = json!(p.m_hat.to_string());
    Ok(doc)
}

fn mobius_doc(spec: &GroupSpec, caps: &Caps) -> Result<serde_json::Value> {
    let g = build(spec, caps)?;
    let lat = all_subgroups(&g, caps)?;
    let poset = Poset::from_subgroups(lat.subgroups.clone(), g.provenance().to_string());
    let bottom = poset.position_of(&g.trivial_set()).expect("trivial subgroup");
    let mut doc = group_doc(&g);
    doc["theta_all_subgroups"] = json!(poset.theta(bottom).to_string());
    doc["theta_nilpotent"] = json!(nilpotent_theta(&g, caps)?.to_string());
    Ok(doc)
}

fn survey_lines(caps: &Caps, max_order: usize) -> Result<String> {
    // skipped family members must not trip the lattice cap during construction
    let build_caps = Caps {
        max_lattice_order: caps.max_elements,
        ..*caps
    };
    let mut lines = Vec::new();
    for spec in suites::family_specs() {
        let g = build(&spec, &build_caps)?;
        if g.order() > max_order {
            continue;
        }
        let scan = injcount::carter::question_congruence_scan(&g, caps)?;
        let theta = nilpotent_theta(&g, caps)?;
        let inj = mann_injector(&g)?;
        let injector_order = num_bigint::BigInt::from(inj.injector.count() as u64);
        let ratio = if !theta.is_zero() && (&injector_order % &theta).is_zero() {
            (&injector_order / &theta).to_string()
        } else {
            format!("{injector_order}/{theta}")
        };
        lines.push(
            json!({
                "provenance": g.provenance(),
                "order": g.order().to_string(),
                "m_hat": scan.values["m_hat"],
                "congruence_candidates": scan.values["candidate_count"],
                "theta_nilpotent": theta.to_string(),
                "injector_order": injector_order.to_string(),
                "injector_theta_ratio": ratio,
            })
            .to_string(),
        );
    }
    Ok(lines.join("\n") + "\n")
}

fn emit_reports(reports: &[VerificationReport]) -> String {
    let mut text = serde_json::to_string_pretty(reports).expect("reports serialize");
    text.push('\n');
    text
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let caps = Caps {
        max_elements: 250_000,
        max_lattice_order: cli.max_order,
        max_subgroups: cli.max_subgroups,
    };
    let doc = match &cli.cmd {
        Cmd::Construct(a) => construct_doc(&read_spec(&a.spec)?, &caps)?,
        Cmd::Lattice(a) => lattice_doc(&read_spec(&a.spec)?, &caps)?,
        Cmd::Injectors(a) => injectors_doc(&read_spec(&a.spec)?, &caps)?,
        Cmd::Carter(a) => carter_doc(&read_spec(&a.spec)?, &caps)?,
        Cmd::Mobius(a) => mobius_doc(&read_spec(&a.spec)?, &caps)?,
        Cmd::Verify { check, spec } => {
            let explicit = spec.as_ref().map(read_spec).transpose()?;
            let reports = suites::run_suite(check, explicit.as_ref(), &caps, cli.max_order)?;
            let ok = reports.iter().all(VerificationReport::is_pass);
            return Ok((emit_reports(&reports), ok));
        }
        Cmd::Survey => return Ok((survey_lines(&caps, cli.max_order)?, true)),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("doc serializes");
    text.push('\n');
    Ok((text, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("rayon pool");
    }
    match run(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(Error::Io),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
