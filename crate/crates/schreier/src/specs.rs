//! Text grammars for family and tree specifications.
//!
//! ```text
//! family := "singletons"
//!         | "schreier(" ordinal ["," rule] ")"      rule := "at-most-min" | "min-in-first"
//!         | "explicit(" [set ("," set)*] ")"         set  := "[" [nat ("," nat)*] "]"
//!         | "file(" path ")"                          family dump
//! tree   := "schreier(" ordinal ")"
//!         | "family(" family ")"
//!         | "L(" tree "," nat ")"
//!         | "box(" tree "," tree ")"
//!         | "boxpow(" [tree ("," tree)*] ")"
//!         | "sum(" tree ")"                           Σ_i ⊞^i T
//!         | "sum-limit(" ordinal ")"                  Σ_i ⊞_{j≤i} S_{α[j]}
//!         | "explicit(" [node ("," node)*] ")"        nodes over + and -
//!         | "file(" path ")"                          explicit tree file
//! ```

use std::fs;

use schreier_core::families::BlockRule;
use schreier_core::trees::{parse_node, ExplicitTree, TreeSeq, TreeSpec};
use schreier_core::FamilySpec;

use crate::formats::{parse_family_dump, parse_finset, parse_ordinal, parse_tree_file, FormatError};

fn err(what: &'static str, msg: impl Into<String>) -> FormatError {
    FormatError { what, msg: msg.into() }
}

/// Splits `name(args)` into the name and the top-level comma-separated
/// arguments. A bare word has no arguments.
fn call(s: &str) -> Result<(&str, Vec<&str>), FormatError> {
    let s = s.trim();
    let Some(open) = s.find('(') else {
        return Ok((s, Vec::new()));
    };
    let body = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| err("spec", format!("unbalanced parentheses in {s:?}")))?;
    let mut args = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in body.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(err("spec", format!("unbalanced parentheses in {s:?}")));
                }
            }
            ',' if depth == 0 => {
                args.push(body[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(err("spec", format!("unbalanced parentheses in {s:?}")));
    }
    if !body.trim().is_empty() {
        args.push(body[start..].trim());
    }
    Ok((s[..open].trim(), args))
}

fn read(path: &str) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|e| err("file", format!("{path}: {e}")))
}

pub fn parse_family(s: &str) -> Result<FamilySpec, FormatError> {
    let (name, args) = call(s)?;
    match (name, args.as_slice()) {
        ("singletons", []) => Ok(FamilySpec::Singletons),
        ("schreier", [alpha]) => Ok(FamilySpec::schreier(parse_ordinal(alpha)?)),
        ("schreier", [alpha, rule]) => {
            let rule = match *rule {
                "at-most-min" => BlockRule::AtMostMin,
                "min-in-first" => BlockRule::MinInFirst,
                other => return Err(err("family spec", format!("unknown block rule {other:?}"))),
            };
            Ok(FamilySpec::Schreier {
                alpha: parse_ordinal(alpha)?,
                rule,
            })
        }
        ("explicit", sets) => Ok(FamilySpec::explicit(
            sets.iter().map(|t| parse_finset(t)).collect::<Result<Vec<_>, _>>()?,
        )),
        ("file", [path]) => parse_family_dump(&read(path)?),
        _ => Err(err("family spec", format!("cannot parse {s:?}"))),
    }
}

pub fn parse_tree(s: &str) -> Result<TreeSpec, FormatError> {
    let (name, args) = call(s)?;
    let nat = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| err("tree spec", format!("bad natural {t:?}")))
    };
    match (name, args.as_slice()) {
        ("schreier", [alpha]) => Ok(TreeSpec::SchreierTree(parse_ordinal(alpha)?)),
        ("family", [f]) => Ok(TreeSpec::FromFamily(parse_family(f)?)),
        ("L", [t, n]) => Ok(TreeSpec::l_sub(parse_tree(t)?, nat(n)?)),
        ("box", [a, b]) => Ok(TreeSpec::box_plus(parse_tree(a)?, parse_tree(b)?)),
        ("boxpow", ts) => Ok(TreeSpec::BoxPower(
            ts.iter().map(|t| parse_tree(t)).collect::<Result<Vec<_>, _>>()?,
        )),
        ("sum", [t]) => Ok(TreeSpec::TreeSum(TreeSeq::Powers(Box::new(parse_tree(t)?)))),
        ("sum-limit", [alpha]) => {
            let alpha = parse_ordinal(alpha)?;
            if !alpha.is_limit() {
                return Err(err("tree spec", format!("{alpha} is not a limit ordinal")));
            }
            Ok(TreeSpec::TreeSum(TreeSeq::SchreierLimit(alpha)))
        }
        ("explicit", nodes) => {
            let nodes = nodes
                .iter()
                .map(|t| parse_node(t).ok_or_else(|| err("tree spec", format!("bad node {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TreeSpec::Explicit(
                ExplicitTree::new(nodes).map_err(|e| err("tree spec", e.to_string()))?,
            ))
        }
        ("file", [path]) => Ok(TreeSpec::Explicit(parse_tree_file(&read(path)?)?)),
        _ => Err(err("tree spec", format!("cannot parse {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use schreier_core::ordinal::ord;
    use schreier_core::trees::delta_order;

    #[test]
    fn families() {
        assert_eq!(parse_family("schreier(w)").unwrap(), FamilySpec::schreier(ord("w")));
        assert_eq!(parse_family(" singletons ").unwrap(), FamilySpec::Singletons);
        assert!(matches!(
            parse_family("schreier(w^(2)+1, min-in-first)").unwrap(),
            FamilySpec::Schreier { rule: BlockRule::MinInFirst, .. }
        ));
        let e = parse_family("explicit([],[1],[2,3])").unwrap();
        assert!(e.member(&parse_finset("[2,3]").unwrap()));
        assert!(parse_family("schreier(").is_err());
        assert!(parse_family("schreier(1,2,3)").is_err());
        assert!(parse_family("tsirelson(1)").is_err());
    }

    #[test]
    fn trees() {
        let t = parse_tree("L(schreier(1),2)").unwrap();
        assert_eq!(delta_order(&t).unwrap(), ord("w+1"));
        let b = parse_tree("boxpow(schreier(0),schreier(1))").unwrap();
        assert_eq!(delta_order(&b).unwrap(), ord("w+2"));
        assert!(parse_tree("explicit(+,+-)").is_ok());
        assert!(parse_tree("explicit(+-)").is_err());
        assert!(parse_tree("sum-limit(3)").is_err());
        assert!(parse_tree("family(schreier(2))").is_ok());
    }
}
