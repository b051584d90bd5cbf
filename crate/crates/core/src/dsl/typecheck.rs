use std::fmt;

use indexmap::IndexMap;

use super::ast::{Check, Expr, Pos, Script, Statement};
use super::DslError;
use crate::space::{GroundSet, Partition};

/// The ground space an expression lives on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceTy {
    Named(String),
    Product(Box<SpaceTy>, Box<SpaceTy>),
}

impl SpaceTy {
    pub fn is_product(&self) -> bool {
        matches!(self, SpaceTy::Product(..))
    }

    /// Number of points given a size for every named space.
    pub fn size(&self, sizes: &dyn Fn(&str) -> usize) -> usize {
        match self {
            SpaceTy::Named(n) => sizes(n),
            SpaceTy::Product(a, b) => a.size(sizes).saturating_mul(b.size(sizes)),
        }
    }
}

impl fmt::Display for SpaceTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTy::Named(n) => f.write_str(n),
            SpaceTy::Product(a, b) => {
                if a.is_product() {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                f.write_str("*")?;
                if b.is_product() {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

/// A `let`-pinned variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedVar {
    pub space: String,
    pub atoms: Partition,
}

/// A check together with the space both of its sides live on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedCheck {
    pub check: Check,
    pub space: SpaceTy,
    pub pos: Pos,
}

/// A script whose names resolve and whose expressions are well-typed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypedScript {
    /// Declared sizes, in declaration order.
    pub spaces: IndexMap<String, usize>,
    /// Every variable (free or pinned) and its space, in declaration order.
    pub variables: IndexMap<String, String>,
    /// Variables pinned by `let`.
    pub fixed: IndexMap<String, FixedVar>,
    /// `(lesser, greater)` pairs from `constrain` lines.
    pub constraints: Vec<(String, String)>,
    pub checks: Vec<TypedCheck>,
}

impl TypedScript {
    /// Variables without a `let`, in declaration order.
    pub fn free_variables(&self) -> impl Iterator<Item = (&str, &str)> {
        self.variables
            .iter()
            .filter(|(name, _)| !self.fixed.contains_key(*name))
            .map(|(n, s)| (n.as_str(), s.as_str()))
    }

    /// The space of `expr`, or a type error.
    pub fn infer(&self, expr: &Expr) -> Result<SpaceTy, String> {
        match expr {
            Expr::Var(name) => self
                .variables
                .get(name)
                .map(|s| SpaceTy::Named(s.clone()))
                .ok_or_else(|| format!("unknown variable `{name}`")),
            Expr::Discrete(space) | Expr::Trivial(space) => {
                if self.spaces.contains_key(space) {
                    Ok(SpaceTy::Named(space.clone()))
                } else {
                    Err(format!("unknown space `{space}`"))
                }
            }
            Expr::Product(a, b) => Ok(SpaceTy::Product(
                Box::new(self.infer(a)?),
                Box::new(self.infer(b)?),
            )),
            Expr::Meet(a, b) | Expr::Join(a, b) => {
                let (sa, sb) = (self.infer(a)?, self.infer(b)?);
                if sa == sb {
                    Ok(sa)
                } else {
                    let op = if matches!(expr, Expr::Meet(..)) {
                        "meet"
                    } else {
                        "join"
                    };
                    Err(format!(
                        "{op} requires identical spaces, found {sa} and {sb}"
                    ))
                }
            }
        }
    }
}

fn type_error(pos: Pos, message: impl Into<String>) -> DslError {
    DslError::Type {
        pos,
        message: message.into(),
    }
}

/// Resolves names, validates `let` literals against their spaces and assigns a
/// space to every check.
pub fn typecheck(script: &Script) -> Result<TypedScript, DslError> {
    let mut out = TypedScript::default();
    let taken = |out: &TypedScript, name: &str| {
        out.spaces.contains_key(name) || out.variables.contains_key(name)
    };
    for stmt in &script.statements {
        let pos = stmt.pos;
        match &stmt.node {
            Statement::Space { name, size } => {
                if taken(&out, name) {
                    return Err(type_error(pos, format!("name `{name}` declared twice")));
                }
                GroundSet::new(*size)
                    .map_err(|e| type_error(pos, format!("space `{name}`: {e}")))?;
                out.spaces.insert(name.clone(), *size);
            }
            Statement::Var { name, space } | Statement::Let { name, space, .. } => {
                if taken(&out, name) {
                    return Err(type_error(pos, format!("name `{name}` declared twice")));
                }
                let Some(&size) = out.spaces.get(space) else {
                    return Err(type_error(pos, format!("unknown space `{space}`")));
                };
                if let Statement::Let { blocks, .. } = &stmt.node {
                    let ground = GroundSet::new(size).expect("validated at declaration");
                    let atoms = Partition::from_point_blocks(&ground, blocks).map_err(|e| {
                        type_error(
                            pos,
                            format!(
                                "`{name}` is not a partition of `{space}` ({size} points): {e}"
                            ),
                        )
                    })?;
                    out.fixed.insert(
                        name.clone(),
                        FixedVar {
                            space: space.clone(),
                            atoms,
                        },
                    );
                }
                out.variables.insert(name.clone(), space.clone());
            }
            Statement::Constrain { lesser, greater } => {
                let mut spaces = Vec::new();
                for v in [lesser, greater] {
                    match out.variables.get(v) {
                        Some(s) => spaces.push(s.clone()),
                        None => return Err(type_error(pos, format!("unknown variable `{v}`"))),
                    }
                }
                if spaces[0] != spaces[1] {
                    return Err(type_error(
                        pos,
                        format!(
                            "constraint requires identical spaces, found {} and {}",
                            spaces[0], spaces[1]
                        ),
                    ));
                }
                out.constraints.push((lesser.clone(), greater.clone()));
            }
            Statement::Check(check) => {
                let sl = out.infer(&check.lhs).map_err(|m| type_error(pos, m))?;
                let sr = out.infer(&check.rhs).map_err(|m| type_error(pos, m))?;
                if sl != sr {
                    return Err(type_error(
                        pos,
                        format!(
                            "relation `{}` requires identical spaces, found {sl} and {sr}",
                            check.relation
                        ),
                    ));
                }
                out.checks.push(TypedCheck {
                    check: check.clone(),
                    space: sl,
                    pos,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parser::{parse, parse_expr};

    const DECLS: &str = "space X=2\nspace U=3\nvar A:X\nvar F:U\nvar G:U\n";

    fn typed(extra: &str) -> Result<TypedScript, DslError> {
        typecheck(&parse(&format!("{DECLS}{extra}")).unwrap())
    }

    fn named(n: &str) -> SpaceTy {
        SpaceTy::Named(n.into())
    }

    #[test]
    fn product_spaces() {
        let t = typed("").unwrap();
        let xu = SpaceTy::Product(Box::new(named("X")), Box::new(named("U")));
        assert_eq!(t.infer(&parse_expr("A*F").unwrap()), Ok(xu.clone()));
        assert_eq!(t.infer(&parse_expr("(A*F)^(A*G)").unwrap()), Ok(xu.clone()));
        assert_eq!(xu.to_string(), "X*U");
        let nested = t.infer(&parse_expr("A*(F*G)").unwrap()).unwrap();
        assert_eq!(nested.to_string(), "X*(U*U)");
        assert_eq!(nested.size(&|n| t.spaces[n]), 18);
    }

    #[test]
    fn meet_across_spaces_is_rejected() {
        let t = typed("").unwrap();
        let err = t.infer(&parse_expr("A^F").unwrap()).unwrap_err();
        assert!(err.contains("meet requires identical spaces"), "{err}");
        assert!(err.contains('X') && err.contains('U'));
        let err = typed("check A^F == A").unwrap_err();
        assert!(matches!(
            err,
            DslError::Type {
                pos: Pos { line: 6, col: 1 },
                ..
            }
        ));
        assert!(typed("check A|F == A")
            .unwrap_err()
            .to_string()
            .contains("join requires identical spaces"));
        assert!(typed("check A == F").is_err());
    }

    #[test]
    fn name_resolution_errors() {
        assert!(typed("var A:U")
            .unwrap_err()
            .to_string()
            .contains("declared twice"));
        assert!(typed("var B:V")
            .unwrap_err()
            .to_string()
            .contains("unknown space"));
        assert!(typed("check B == A")
            .unwrap_err()
            .to_string()
            .contains("unknown variable `B`"));
        assert!(typed("check discrete(V) == A").is_err());
        assert!(typed("constrain A <= F").is_err());
        assert!(typed("constrain A <= Z").is_err());
        assert!(typecheck(&parse("space X = 0").unwrap()).is_err());
    }

    #[test]
    fn let_literals_are_validated() {
        let t = typed("let H = {{2},{0,1}} : U\nconstrain F <= H\ncheck F <= H").unwrap();
        assert_eq!(t.fixed["H"].atoms.to_string(), "{{0,1},{2}}");
        assert_eq!(
            t.free_variables().map(|(n, _)| n).collect::<Vec<_>>(),
            ["A", "F", "G"]
        );
        assert_eq!(t.constraints, [("F".to_string(), "H".to_string())]);
        let err = typed("let H = {{0},{0,1,2}} : U").unwrap_err();
        assert!(err.to_string().contains("overlap at point 0"), "{err}");
        assert!(typed("let H = {{0},{1}} : U").is_err());
        assert!(typed("let H = {{0},{1,2,3}} : U").is_err());
    }
}
