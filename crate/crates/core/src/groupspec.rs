//! JSON group descriptions.
//!
//! ```json
//! {"kind":"perm","degree":3,"generators":[[[1,2,3]]]}
//! {"kind":"named","name":"PGL2","params":[7]}
//! {"kind":"named","name":"DirectProduct","factors":[{"kind":"named","name":"Sym","params":[3]}, ...]}
//! ```
//!
//! Cycles are 1-indexed. Named groups: `Sym [n]`, `Alt [n]`, `Cyclic [n]`,
//! `Dihedral [order]`, `ElemAbelian [p, k]`, `PSL2 [q]`, `PGL2 [q]`,
//! `SL [n, q]`, `DirectProduct` (with `factors`), and the Sylow normalizers
//! `BorelSL [n, q]` and `BorelPSL [n, q]`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::GroupError;
use crate::group::PermGroup;
use crate::matrix::field::{prime_power, FieldTable};
use crate::matrix::lemma4::lemma4_normalizer;
use crate::matrix::projective::{pgl2, psl2, sl};
use crate::named;
use crate::perm::Permutation;

pub const NAMES: [&str; 11] = [
    "Sym",
    "Alt",
    "Cyclic",
    "Dihedral",
    "ElemAbelian",
    "PSL2",
    "PGL2",
    "SL",
    "DirectProduct",
    "BorelSL",
    "BorelPSL",
];

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Perm {
        degree: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
    Named {
        name: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        params: Vec<u64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        factors: Vec<GroupSpec>,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("could not parse group spec: {0}")]
    Syntax(String),
    #[error("unknown group name {0:?}; expected one of {NAMES:?}")]
    UnknownName(String),
    #[error("{name} takes {expected} parameter(s), got {found}")]
    ParamCount {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("generator {index}: {source}")]
    Generator { index: usize, source: GroupError },
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("{0}")]
    Construction(GroupError),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Syntax(e.to_string()))
    }

    pub fn named(name: &str, params: &[u64]) -> Self {
        GroupSpec::Named {
            name: name.to_string(),
            params: params.to_vec(),
            factors: Vec::new(),
        }
    }

    pub fn product(factors: Vec<GroupSpec>) -> Self {
        GroupSpec::Named {
            name: "DirectProduct".into(),
            params: Vec::new(),
            factors,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Short human-readable name, e.g. `PGL2(7)` or `Sym(3) x Cyclic(2)`.
    pub fn label(&self) -> String {
        match self {
            GroupSpec::Perm { degree, generators } => {
                format!(
                    "perm group of degree {degree} with {} generators",
                    generators.len()
                )
            }
            GroupSpec::Named { name, factors, .. } if name == "DirectProduct" => factors
                .iter()
                .map(|f| f.label())
                .collect::<Vec<_>>()
                .join(" x "),
            GroupSpec::Named { name, params, .. } => {
                let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                format!("{name}({})", ps.join(","))
            }
        }
    }

    pub fn build(&self, degree_cap: usize) -> Result<PermGroup, SpecError> {
        let g = match self {
            GroupSpec::Perm { degree, generators } => {
                if *degree > degree_cap {
                    return Err(SpecError::DegreeCap {
                        degree: *degree,
                        cap: degree_cap,
                    });
                }
                let gens = generators
                    .iter()
                    .enumerate()
                    .map(|(index, cycles)| {
                        Permutation::from_one_indexed_cycles(*degree, cycles)
                            .map_err(|source| SpecError::Generator { index, source })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                PermGroup::new((*degree).max(1), gens).map_err(SpecError::Construction)?
            }
            GroupSpec::Named {
                name,
                params,
                factors,
            } => build_named(name, params, factors, degree_cap)?,
        };
        if g.degree() > degree_cap {
            return Err(SpecError::DegreeCap {
                degree: g.degree(),
                cap: degree_cap,
            });
        }
        Ok(g)
    }
}

fn want(name: &str, params: &[u64], n: usize) -> Result<(), SpecError> {
    if params.len() != n {
        return Err(SpecError::ParamCount {
            name: name.to_string(),
            expected: n,
            found: params.len(),
        });
    }
    Ok(())
}

fn field(q: u64) -> Result<Arc<FieldTable>, SpecError> {
    let (p, f) = prime_power(q).ok_or_else(|| {
        SpecError::Construction(GroupError::Unsupported(format!("{q} is not a prime power")))
    })?;
    Ok(Arc::new(
        FieldTable::new(p, f).map_err(SpecError::Construction)?,
    ))
}

fn build_named(
    name: &str,
    params: &[u64],
    factors: &[GroupSpec],
    degree_cap: usize,
) -> Result<PermGroup, SpecError> {
    let c = SpecError::Construction;
    let one = |n: usize| -> Result<(), SpecError> { want(name, params, n) };
    match name {
        "Sym" => {
            one(1)?;
            named::symmetric(params[0] as usize).map_err(c)
        }
        "Alt" => {
            one(1)?;
            named::alternating(params[0] as usize).map_err(c)
        }
        "Cyclic" => {
            one(1)?;
            named::cyclic(params[0] as usize).map_err(c)
        }
        "Dihedral" => {
            one(1)?;
            let order = params[0];
            if !order.is_multiple_of(2) || order < 6 {
                return Err(c(GroupError::Unsupported(format!(
                    "dihedral order must be even and at least 6, got {order}"
                ))));
            }
            named::dihedral(order as usize / 2).map_err(c)
        }
        "ElemAbelian" => {
            one(2)?;
            named::elementary_abelian(params[0], params[1] as usize).map_err(c)
        }
        "PSL2" => {
            one(1)?;
            psl2(params[0]).map_err(c)
        }
        "PGL2" => {
            one(1)?;
            pgl2(params[0]).map_err(c)
        }
        "SL" => {
            one(2)?;
            sl(params[0] as usize, params[1]).map_err(c)
        }
        "BorelSL" | "BorelPSL" => {
            one(2)?;
            let groups = lemma4_normalizer(params[0] as usize, &field(params[1])?).map_err(c)?;
            let side = if name == "BorelSL" {
                groups.linear
            } else {
                groups.projective
            };
            Ok(side.normalizer.into_group())
        }
        "DirectProduct" => {
            if factors.is_empty() {
                return Err(c(GroupError::Unsupported(
                    "DirectProduct needs factors".into(),
                )));
            }
            let groups = factors
                .iter()
                .map(|f| f.build(degree_cap))
                .collect::<Result<Vec<_>, _>>()?;
            named::direct_product(&groups).map_err(c)
        }
        other => Err(SpecError::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(text: &str) -> u64 {
        GroupSpec::parse(text)
            .unwrap()
            .build(5000)
            .unwrap()
            .order_u64()
            .unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(order(r#"{"kind":"named","name":"PGL2","params":[7]}"#), 336);
        assert_eq!(
            order(r#"{"kind":"perm","degree":3,"generators":[[[1,2,3]]]}"#),
            3
        );
        assert_eq!(order(r#"{"kind":"named","name":"Alt","params":[6]}"#), 360);
        assert_eq!(
            order(
                r#"{"kind":"named","name":"DirectProduct","factors":[{"kind":"named","name":"Sym","params":[3]},{"kind":"named","name":"Cyclic","params":[2]}]}"#
            ),
            12
        );
        assert_eq!(
            order(r#"{"kind":"named","name":"BorelPSL","params":[2,9]}"#),
            36
        );
        assert_eq!(
            order(r#"{"kind":"named","name":"Dihedral","params":[8]}"#),
            8
        );
    }

    #[test]
    fn distinct_diagnostics() {
        let err = |text: &str| {
            GroupSpec::parse(text)
                .and_then(|s| s.build(5000))
                .unwrap_err()
        };
        assert!(matches!(err("{"), SpecError::Syntax(_)));
        assert!(matches!(
            err(r#"{"kind":"named","name":"Foo","params":[1]}"#),
            SpecError::UnknownName(_)
        ));
        assert!(matches!(
            err(r#"{"kind":"named","name":"Sym","params":[]}"#),
            SpecError::ParamCount { .. }
        ));
        assert!(matches!(
            err(r#"{"kind":"perm","degree":3,"generators":[[[1,4]]]}"#),
            SpecError::Generator {
                source: GroupError::PointOutOfRange { .. },
                ..
            }
        ));
        assert!(matches!(
            err(r#"{"kind":"perm","degree":3,"generators":[[[1,2,1]]]}"#),
            SpecError::Generator {
                source: GroupError::MalformedCycle(_),
                ..
            }
        ));
        assert!(matches!(
            err(r#"{"kind":"named","name":"Sym","params":[6000]}"#),
            SpecError::Construction(_)
        ));
        assert!(matches!(
            err(r#"{"kind":"perm","degree":9000,"generators":[]}"#),
            SpecError::DegreeCap { .. }
        ));
    }

    #[test]
    fn json_round_trip() {
        let s = GroupSpec::product(vec![
            GroupSpec::named("Sym", &[3]),
            GroupSpec::named("Cyclic", &[2]),
        ]);
        assert_eq!(GroupSpec::parse(&s.to_json()).unwrap(), s);
        assert_eq!(s.label(), "Sym(3) x Cyclic(2)");
    }
}
