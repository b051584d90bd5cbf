use std::collections::HashMap;

use super::ast::{Check, Expr, Relation};
use super::typecheck::TypedScript;
use super::DslError;
use crate::product::product;
use crate::sigma::{is_sub, join, meet, SigmaAlgebra};
use crate::space::GroundSet;

/// Ground sets for named spaces plus values for variables.
#[derive(Clone, Debug, Default)]
pub struct Env {
    spaces: HashMap<String, GroundSet>,
    values: HashMap<String, SigmaAlgebra>,
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declared sizes and `let` values of a script; free variables stay
    /// unassigned.
    pub fn from_script(script: &TypedScript) -> Self {
        let mut env = Env::new();
        for (name, &size) in &script.spaces {
            env.set_space(name, GroundSet::new(size).expect("typechecked size"));
        }
        for (name, fixed) in &script.fixed {
            env.assign(name, SigmaAlgebra::from_atoms(fixed.atoms.clone()));
        }
        env
    }

    pub fn set_space(&mut self, name: &str, space: GroundSet) {
        self.spaces.insert(name.to_string(), space);
    }

    pub fn assign(&mut self, name: &str, value: SigmaAlgebra) {
        self.values.insert(name.to_string(), value);
    }

    pub fn space(&self, name: &str) -> Option<&GroundSet> {
        self.spaces.get(name)
    }

    pub fn value(&self, name: &str) -> Option<&SigmaAlgebra> {
        self.values.get(name)
    }
}

/// Evaluates an expression by structural recursion.
pub fn evaluate(expr: &Expr, env: &Env) -> Result<SigmaAlgebra, DslError> {
    match expr {
        Expr::Var(name) => env
            .value(name)
            .cloned()
            .ok_or_else(|| DslError::Unassigned(name.clone())),
        Expr::Discrete(space) => env
            .space(space)
            .map(SigmaAlgebra::discrete)
            .ok_or_else(|| DslError::UnknownSpace(space.clone())),
        Expr::Trivial(space) => env
            .space(space)
            .map(SigmaAlgebra::trivial)
            .ok_or_else(|| DslError::UnknownSpace(space.clone())),
        Expr::Product(a, b) => Ok(product(&evaluate(a, env)?, &evaluate(b, env)?)?),
        Expr::Meet(a, b) => Ok(meet(&evaluate(a, env)?, &evaluate(b, env)?)?),
        Expr::Join(a, b) => Ok(join(&evaluate(a, env)?, &evaluate(b, env)?)?),
    }
}

/// `==` compares atom partitions, `<=` is the sub-σ-algebra order.
pub fn relation_holds(
    relation: Relation,
    lhs: &SigmaAlgebra,
    rhs: &SigmaAlgebra,
) -> Result<bool, DslError> {
    Ok(match relation {
        Relation::Equal => lhs == rhs,
        Relation::Sub => is_sub(lhs, rhs)?,
    })
}

/// Both evaluated sides of a check and whether the relation holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluated {
    pub lhs: SigmaAlgebra,
    pub rhs: SigmaAlgebra,
    pub holds: bool,
}

pub fn check(check: &Check, env: &Env) -> Result<Evaluated, DslError> {
    let lhs = evaluate(&check.lhs, env)?;
    let rhs = evaluate(&check.rhs, env)?;
    let holds = relation_holds(check.relation, &lhs, &rhs)?;
    Ok(Evaluated { lhs, rhs, holds })
}

/// Runs every check of a script under its `let` assignments only.
pub fn run_checks(script: &TypedScript) -> Result<Vec<Evaluated>, DslError> {
    let env = Env::from_script(script);
    script
        .checks
        .iter()
        .map(|c| check(&c.check, &env))
        .collect()
}
