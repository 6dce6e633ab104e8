use tsch_core::groupzoo::{agl1, alternating_group, cyclic_group, pgl2, psl2, symmetric_group};
use tsch_core::{Error, PermGroup, Permutation};

/// Named families accepted by `--group name:param`.
pub const FAMILIES: &str = "cyclic:r, sym:r, alt:r, pgl2:q, psl2:q, agl1:q";

/// Parses `name:param`. Unknown names and malformed parameters are usage
/// errors (`Err(String)`); a well-formed spec that names no group, such as
/// `pgl2:6`, is a domain error.
pub fn named_group(spec: &str) -> Result<Result<PermGroup, Error>, String> {
    let (name, param) = spec
        .split_once(':')
        .ok_or_else(|| format!("group spec {spec:?} is not of the form name:param ({FAMILIES})"))?;
    let n: u64 = param
        .trim()
        .parse()
        .map_err(|_| format!("group parameter {param:?} is not a non-negative integer"))?;
    let build = match name.trim() {
        "cyclic" => cyclic_group,
        "sym" => symmetric_group,
        "alt" => alternating_group,
        "pgl2" => pgl2,
        "psl2" => psl2,
        "agl1" => agl1,
        other => {
            return Err(format!(
                "unknown group family {other:?}; expected one of {FAMILIES}"
            ))
        }
    };
    Ok(build(n))
}

/// Generators in cycle notation, `(1 2 3)(4 5)`, or as 1-based image lists,
/// `2,3,1,4`. Cycle notation needs `degree`.
pub fn explicit_group(gens: &[String], degree: Option<usize>) -> Result<PermGroup, Error> {
    let perms = gens
        .iter()
        .map(|g| {
            let g = g.trim();
            if g.starts_with('(') || g.is_empty() {
                let degree = degree.ok_or(Error::InvalidDegree { degree: 0, min: 1 })?;
                Permutation::from_cycles(g, degree)
            } else {
                let p = Permutation::from_image_list(g)?;
                match degree {
                    Some(d) if d != p.degree() => Err(Error::DegreeMismatch {
                        expected: d,
                        found: p.degree(),
                    }),
                    _ => Ok(p),
                }
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::new(perms)
}
