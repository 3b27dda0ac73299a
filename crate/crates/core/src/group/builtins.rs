use serde::{Deserialize, Serialize};

use super::{Perm, PermGroup};
use crate::catalog::bundled_dataset;
use crate::error::{Error, Result};

/// External group description: a builtin name or explicit generators on
/// `{1..degree}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Explicit {
        degree: usize,
        generators: Vec<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
}

impl GroupSpec {
    /// Parses a command-line argument: a JSON object, a path to a JSON file,
    /// or a builtin name.
    pub fn parse(arg: &str) -> Result<Self> {
        let trimmed = arg.trim();
        if trimmed.starts_with('{') || trimmed.starts_with('"') {
            return serde_json::from_str(trimmed)
                .map_err(|e| Error::UnknownGroup(format!("{arg}: {e}")));
        }
        let path = std::path::Path::new(trimmed);
        if path.extension().is_some_and(|e| e == "json") || path.is_file() {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::UnknownGroup(format!("{arg}: {e}")))?;
            return serde_json::from_str(&text)
                .map_err(|e| Error::UnknownGroup(format!("{arg}: {e}")));
        }
        Ok(GroupSpec::Name(trimmed.to_string()))
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpec::Name(n) => n.clone(),
            GroupSpec::Explicit { name: Some(n), .. } => n.clone(),
            GroupSpec::Explicit { degree, .. } => format!("group on {degree} points"),
        }
    }

    pub fn build(&self) -> Result<PermGroup> {
        match self {
            GroupSpec::Name(n) => named_group(n),
            GroupSpec::Explicit {
                degree,
                generators,
                name,
            } => {
                let gens = generators
                    .iter()
                    .map(|g| Perm::from_one_based(g, *degree))
                    .collect::<Result<Vec<_>>>()?;
                let g = PermGroup::from_generators(*degree, gens)?;
                Ok(match name {
                    Some(n) => g.named(n.clone()),
                    None => g,
                })
            }
        }
    }
}

fn cycle(n: usize) -> Perm {
    Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).expect("cycle")
}

fn parse_index(s: &str, prefix: char) -> Option<usize> {
    s.strip_prefix(prefix)?.parse().ok()
}

fn simple_builtin(name: &str) -> Option<Result<PermGroup>> {
    if name == "1" {
        return Some(Ok(PermGroup::trivial(1)));
    }
    if name == "Q8" {
        // right regular representation of <a, b | a^4, b^2 = a^2, b a b^-1 = a^-1>
        let elem = |i: u32, j: u32| (i + 4 * j) as usize;
        let mul = |x: (u32, u32), y: (u32, u32)| -> (u32, u32) {
            let sign = if x.1 == 1 { 3 } else { 1 };
            let e = (x.0 + sign * y.0) % 4;
            if x.1 == 1 && y.1 == 1 {
                ((e + 2) % 4, 0)
            } else {
                (e, (x.1 + y.1) % 2)
            }
        };
        let gens = [(1, 0), (0, 1)].map(|g| {
            let mut images = vec![0u32; 8];
            for i in 0..4 {
                for j in 0..2 {
                    let (a, b) = mul((i, j), g);
                    images[elem(i, j)] = elem(a, b) as u32;
                }
            }
            Perm::from_images(images).expect("regular action")
        });
        return Some(PermGroup::from_generators(8, gens.to_vec()));
    }
    if let Some(n) = parse_index(name, 'C') {
        if n == 0 {
            return None;
        }
        let gens = if n == 1 { vec![] } else { vec![cycle(n)] };
        return Some(PermGroup::from_generators(n, gens));
    }
    if let Some(n) = parse_index(name, 'S') {
        if n == 0 {
            return None;
        }
        let gens = if n == 1 {
            vec![]
        } else {
            vec![
                Perm::from_cycles(n, &[&[1, 2]]).expect("transposition"),
                cycle(n),
            ]
        };
        return Some(PermGroup::from_generators(n, gens));
    }
    if let Some(n) = parse_index(name, 'A') {
        if n == 0 {
            return None;
        }
        let gens = (3..=n as u32)
            .map(|k| Perm::from_cycles(n, &[&[1, 2, k]]).expect("3-cycle"))
            .collect();
        return Some(PermGroup::from_generators(n, gens));
    }
    if let Some(order) = parse_index(name, 'D') {
        if order < 2 || order % 2 != 0 {
            return None;
        }
        let n = order / 2;
        return Some(match n {
            1 => PermGroup::from_generators(2, vec![cycle(2)]),
            2 => PermGroup::from_generators(
                4,
                vec![
                    Perm::from_cycles(4, &[&[1, 2], &[3, 4]]).expect("involution"),
                    Perm::from_cycles(4, &[&[1, 3], &[2, 4]]).expect("involution"),
                ],
            ),
            _ => {
                let reflection =
                    Perm::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())
                        .expect("reflection");
                PermGroup::from_generators(n, vec![cycle(n), reflection])
            }
        });
    }
    None
}

/// Resolves a builtin name: `C<n>`, `S<n>`, `A<n>`, `D<2n>`, `Q8`, direct
/// products written `AxB` (any number of factors), or a label of the bundled
/// p-group dataset.
pub fn named_group(name: &str) -> Result<PermGroup> {
    let name = name.trim();
    if let Some(g) = simple_builtin(name) {
        return Ok(g?.named(name));
    }
    if name.contains('x') {
        let factors: Option<Vec<_>> = name.split('x').map(simple_builtin).collect();
        if let Some(factors) = factors {
            let mut acc: Option<PermGroup> = None;
            for f in factors {
                let f = f?;
                acc = Some(match acc {
                    None => f,
                    Some(a) => PermGroup::direct_product(&a, &f)?,
                });
            }
            if let Some(g) = acc {
                return Ok(g.named(name));
            }
        }
    }
    for entry in bundled_dataset()? {
        if entry.label == name && entry.order > 1 {
            return Ok(entry.build()?.named(name));
        }
    }
    Err(Error::UnknownGroup(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        for (name, order) in [
            ("C1", 1),
            ("C6", 6),
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("A5", 60),
            ("D8", 8),
            ("D4", 4),
            ("D10", 10),
            ("Q8", 8),
            ("C2xC2", 4),
            ("S3xC2", 12),
            ("C3xC3", 9),
            ("C2xC2xC2", 8),
            ("SD16", 16),
            ("He27", 27),
        ] {
            assert_eq!(named_group(name).unwrap().order(), order, "{name}");
        }
        assert!(named_group("X7").is_err());
        assert!(named_group("D7").is_err());
    }

    #[test]
    fn parses_explicit_json() {
        let spec = GroupSpec::parse(r#"{"degree": 3, "generators": [[2, 3, 1]], "name": "C3"}"#)
            .unwrap();
        assert_eq!(spec.build().unwrap().order(), 3);
        assert_eq!(spec.label(), "C3");
        let bad = GroupSpec::parse(r#"{"degree": 3, "generators": [[2, 2, 1]]}"#).unwrap();
        assert!(matches!(bad.build(), Err(Error::MalformedPermutation(_))));
        assert_eq!(GroupSpec::parse("S4").unwrap(), GroupSpec::Name("S4".into()));
    }
}
