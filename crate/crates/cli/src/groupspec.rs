//! JSON group specifications. Tagged by `construct`; unknown tags and
//! unknown fields are rejected at parse time.

use injcount::constructions::standard_with_caps;
use injcount::group::{direct_product, semidirect_product, FiniteGroup};
use injcount::perm::Permutation;
use injcount::{Caps, Error, Group, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "construct", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Trivial {},
    Symmetric { n: usize },
    Alternating { n: usize },
    Cyclic { n: usize },
    Dihedral { n: usize },
    ElementaryAbelian { p: usize, k: usize },
    Frobenius21 {},
    S3xs4 {},
    Agl { n: usize, q: usize },
    Agammal1 { q: usize },
    Jrv { p: usize, a: usize },
    #[serde(rename = "small_54_5")]
    Small54 {},
    /// Explicit permutation group from generator images.
    Generators { degree: usize, gens: Vec<Vec<usize>> },
    DirectProduct { factors: Vec<GroupSpec> },
    Semidirect {
        normal: Box<GroupSpec>,
        complement: Box<GroupSpec>,
        /// action[c][x]: image of N-element x under the automorphism of c.
        action: Vec<Vec<usize>>,
    },
}

pub fn parse_group_spec(document: &str) -> Result<GroupSpec> {
    serde_json::from_str(document).map_err(|e| Error::Parse(format!("group spec: {e}")))
}

pub fn build(spec: &GroupSpec, caps: &Caps) -> Result<Group> {
    use GroupSpec::*;
    match spec {
        Trivial {} => standard_with_caps("trivial", &[], caps),
        Symmetric { n } => standard_with_caps("symmetric", &[*n], caps),
        Alternating { n } => standard_with_caps("alternating", &[*n], caps),
        Cyclic { n } => standard_with_caps("cyclic", &[*n], caps),
        Dihedral { n } => standard_with_caps("dihedral", &[*n], caps),
        ElementaryAbelian { p, k } => standard_with_caps("elementary_abelian", &[*p, *k], caps),
        Frobenius21 {} => standard_with_caps("frobenius21", &[], caps),
        S3xs4 {} => standard_with_caps("s3xs4", &[], caps),
        Agl { n, q } => standard_with_caps("agl", &[*n, *q], caps),
        Agammal1 { q } => standard_with_caps("agammal1", &[*q], caps),
        Jrv { p, a } => standard_with_caps("jrv", &[*p, *a], caps),
        Small54 {} => standard_with_caps("small_54_5", &[], caps),
        Generators { degree, gens } => {
            let perms: Result<Vec<Permutation>> = gens
                .iter()
                .map(|g| {
                    if g.iter().any(|&x| x > u16::MAX as usize) {
                        return Err(Error::Parse("generator image out of range".into()));
                    }
                    Permutation::new(g.iter().map(|&x| x as u16).collect())
                })
                .collect();
            FiniteGroup::from_permutations(
                *degree,
                &perms?,
                caps,
                format!("generators(degree {degree})"),
            )
        }
        DirectProduct { factors } => {
            if factors.is_empty() {
                return Err(Error::Parse("direct_product needs at least one factor".into()));
            }
            let mut acc = build(&factors[0], caps)?;
            for f in &factors[1..] {
                acc = direct_product(&acc, &build(f, caps)?, caps)?;
            }
            Ok(acc)
        }
        Semidirect {
            normal,
            complement,
            action,
        } => {
            let n = build(normal, caps)?;
            let c = build(complement, caps)?;
            semidirect_product(&n, &c, action, caps)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let s = parse_group_spec(r#"{"construct":"symmetric","n":4}"#).unwrap();
        assert_eq!(build(&s, &Caps::default()).unwrap().order(), 24);
        let s = parse_group_spec(r#"{"construct":"jrv","p":2,"a":1}"#).unwrap();
        assert_eq!(build(&s, &Caps::default()).unwrap().order(), 24);
        let s =
            parse_group_spec(r#"{"construct":"generators","degree":3,"gens":[[1,0,2],[1,2,0]]}"#)
                .unwrap();
        assert_eq!(build(&s, &Caps::default()).unwrap().order(), 6);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(parse_group_spec(r#"{"construct":"monster"}"#).is_err());
        assert!(parse_group_spec(r#"{"construct":"symmetric"}"#).is_err());
        assert!(parse_group_spec(r#"{"construct":"symmetric","n":4,"extra":1}"#).is_err());
        assert!(parse_group_spec("not json").is_err());
    }

    #[test]
    fn roundtrip() {
        let s = parse_group_spec(r#"{"construct":"small_54_5"}"#).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("small_54_5"));
        let again = parse_group_spec(&text).unwrap();
        assert_eq!(
            build(&s, &Caps::default()).unwrap().order(),
            build(&again, &Caps::default()).unwrap().order()
        );
    }

    #[test]
    fn composite_constructions() {
        let s = parse_group_spec(
            r#"{"construct":"direct_product","factors":[{"construct":"cyclic","n":2},{"construct":"cyclic","n":3}]}"#,
        )
        .unwrap();
        assert_eq!(build(&s, &Caps::default()).unwrap().order(), 6);

        // C7 ⋊ C3, x ↦ 2x
        let action: Vec<Vec<usize>> = (0..3)
            .map(|k| (0..7).map(|x| x * 2usize.pow(k) % 7).collect())
            .collect();
        let doc = serde_json::json!({
            "construct": "semidirect",
            "normal": {"construct": "cyclic", "n": 7},
            "complement": {"construct": "cyclic", "n": 3},
            "action": action,
        });
        let s = parse_group_spec(&doc.to_string()).unwrap();
        assert_eq!(build(&s, &Caps::default()).unwrap().order(), 21);

        // non-automorphism action is rejected at build time
        let bad = serde_json::json!({
            "construct": "semidirect",
            "normal": {"construct": "cyclic", "n": 7},
            "complement": {"construct": "cyclic", "n": 3},
            "action": vec![vec![0usize; 7]; 3],
        });
        let s = parse_group_spec(&bad.to_string()).unwrap();
        assert!(build(&s, &Caps::default()).is_err());
    }
}
