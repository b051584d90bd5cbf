//! Text and JSON rendering for check, mine and atoms runs.
//!
//! Text output is byte-stable for fixed inputs: it never contains timings.
//! JSON output carries `elapsed_ms`, which consumers comparing goldens must
//! ignore.

use std::fmt::{self, Write};

use serde_json::{json, Map, Value};

use crate::dsl::mine::{literal, Certificate, MineResult, SearchMode};
use crate::dsl::{evaluate, DslError, Env, Evaluated, TypedScript};
use crate::product::is_rectangle;
use crate::sigma::SigmaAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    HoldsAtBound,
    Counterexample,
}

impl Verdict {
    pub fn of(result: &MineResult) -> Verdict {
        if result.witness.is_some() {
            Verdict::Counterexample
        } else {
            Verdict::HoldsAtBound
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsAtBound => "holds-at-bound",
            Verdict::Counterexample => "counterexample",
        })
    }
}

pub fn render_mine_text(results: &[MineResult]) -> String {
    let mut out = String::new();
    for r in results {
        writeln!(out, "check {}: {}", r.index + 1, r.check).unwrap();
        writeln!(out, "  verdict: {}", Verdict::of(r)).unwrap();
        if let Some(w) = &r.witness {
            writeln!(out, "  rank: {}", w.rank).unwrap();
            out.push_str("  witness:\n");
            for line in w.to_script().lines() {
                writeln!(out, "    {line}").unwrap();
            }
            writeln!(out, "  left atoms: {}", w.lhs).unwrap();
            writeln!(out, "  right atoms: {}", w.rhs).unwrap();
        }
        writeln!(out, "  certificate: {}", r.certificate).unwrap();
    }
    out
}

fn certificate_json(c: &Certificate) -> Value {
    let bounds: Map<String, Value> = c
        .bounds
        .iter()
        .map(|(name, lo, hi)| (name.clone(), json!([lo, hi])))
        .collect();
    let (mode, seed) = match c.mode {
        SearchMode::Exhaustive => ("exhaustive", Value::Null),
        SearchMode::Random { seed } => ("random", json!(seed)),
    };
    json!({
        "mode": mode,
        "seed": seed,
        "bounds": bounds,
        "region": c.region,
        "assignments_checked": c.checked,
        "skipped_by_constraints": c.skipped,
        "truncated": c.truncated,
        "summary": c.to_string(),
    })
}

/// One JSON object per check.
pub fn mine_json(r: &MineResult) -> Value {
    let witness = match &r.witness {
        None => Value::Null,
        Some(w) => {
            let sizes: Map<String, Value> =
                w.sizes.iter().map(|(n, s)| (n.clone(), json!(s))).collect();
            let assignment: Map<String, Value> = w
                .assignment
                .iter()
                .map(|(n, _, atoms)| (n.clone(), json!(atoms.to_string())))
                .collect();
            json!({
                "rank": w.rank,
                "sizes": sizes,
                "assignment": assignment,
                "script": w.to_script(),
                "left_atoms": w.lhs.to_string(),
                "right_atoms": w.rhs.to_string(),
            })
        }
    };
    json!({
        "check": r.index + 1,
        "relation": r.check.to_string(),
        "verdict": Verdict::of(r).to_string(),
        "witness": witness,
        "certificate": certificate_json(&r.certificate),
        "elapsed_ms": r.elapsed.as_millis() as u64,
    })
}

/// Verdicts of `check` runs under `let` assignments.
pub fn render_check_text(script: &TypedScript, outcomes: &[Evaluated]) -> String {
    let mut out = String::new();
    for (i, (typed, ev)) in script.checks.iter().zip(outcomes).enumerate() {
        writeln!(out, "check {}: {}", i + 1, typed.check).unwrap();
        if ev.holds {
            out.push_str("  verdict: holds\n");
        } else {
            out.push_str("  verdict: fails\n");
            writeln!(out, "  left atoms: {}", ev.lhs).unwrap();
            writeln!(out, "  right atoms: {}", ev.rhs).unwrap();
        }
    }
    out
}

fn write_atoms(out: &mut String, sigma: &SigmaAlgebra) {
    for atom in sigma.atoms().blocks() {
        match is_rectangle(&atom) {
            Ok(true) => writeln!(out, "    {atom} rectangle").unwrap(),
            Ok(false) => writeln!(out, "    {atom} not a rectangle").unwrap(),
            Err(_) => writeln!(out, "    {atom}").unwrap(),
        }
    }
}

/// Atoms of both sides of every check, evaluated under `let` assignments.
/// Atoms on product spaces carry a rectangle flag.
pub fn render_atoms_text(script: &TypedScript) -> Result<String, DslError> {
    let env = Env::from_script(script);
    let mut out = String::new();
    for (i, typed) in script.checks.iter().enumerate() {
        writeln!(out, "check {}: {}", i + 1, typed.check).unwrap();
        for (side, expr) in [("left", &typed.check.lhs), ("right", &typed.check.rhs)] {
            let sigma = evaluate(expr, &env)?;
            writeln!(
                out,
                "  {side}: {expr} on {}, {} atoms",
                typed.space,
                sigma.num_atoms()
            )
            .unwrap();
            write_atoms(&mut out, &sigma);
        }
    }
    Ok(out)
}

/// A witness's assignment as `name -> literal` pairs.
pub fn witness_literals(r: &MineResult) -> Vec<(String, Vec<Vec<usize>>)> {
    r.witness
        .iter()
        .flat_map(|w| w.assignment.iter())
        .map(|(n, _, atoms)| (n.clone(), literal(atoms)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{load, mine, run_checks, MineOptions};

    const LATTICE: &str =
        "space U = 3\nvar A : U\nvar F : U\nvar G : U\ncheck (A|F)^(A|G) == A|(F^G)\n";

    #[test]
    fn mine_text_golden() {
        let t = load(LATTICE).unwrap();
        let out = mine(&t, &MineOptions::exhaustive(3)).unwrap();
        let text = render_mine_text(&out);
        let expected = "\
check 1: (A|F)^(A|G) == A|(F^G)
  verdict: counterexample
  rank: 47
  witness:
    space U = 3
    let A = {{0,1},{2}} : U
    let F = {{0,2},{1}} : U
    let G = {{0},{1,2}} : U
  left atoms: {{0},{1},{2}}
  right atoms: {{0,1},{2}}
  certificate: 48 assignments checked (exhaustive; U in 1..=3)
";
        assert_eq!(text, expected);
        assert_eq!(
            witness_literals(&out[0])[0],
            ("A".to_string(), vec![vec![0, 1], vec![2]])
        );
    }

    #[test]
    fn json_witness_reparses() {
        let t = load(LATTICE).unwrap();
        let out = mine(&t, &MineOptions::exhaustive(3)).unwrap();
        let v = mine_json(&out[0]);
        assert_eq!(v["verdict"], "counterexample");
        assert_eq!(v["certificate"]["assignments_checked"], 48);
        let script = v["witness"]["script"].as_str().unwrap();
        let again = load(&format!("{script}check (A|F)^(A|G) == A|(F^G)")).unwrap();
        assert!(!run_checks(&again).unwrap()[0].holds);
        assert!(v["elapsed_ms"].is_u64());
    }

    #[test]
    fn atoms_flags_rectangles_only_on_products() {
        let t = load(
            "space X = 2\nspace U = 2\nspace S = 4\n\
             let A = {{0},{1}} : X\nlet F = {{0,1}} : U\nlet D = {{0,3},{1,2}} : S\n\
             check A*F == A*F\ncheck D == D\ncheck trivial(X) <= A",
        )
        .unwrap();
        let text = render_atoms_text(&t).unwrap();
        assert!(text.contains("  left: A*F on X*U, 2 atoms\n    {(0,0),(0,1)} rectangle\n"));
        assert!(text.contains("  left: D on S, 2 atoms\n    {0,3}\n    {1,2}\n"));
        assert!(text.contains("  left: trivial(X) on X, 1 atoms\n    {0,1}\n"));
    }

    #[test]
    fn check_text_lists_atoms_on_failure() {
        let t = load(
            "space U = 3\nlet A = {{0},{1,2}} : U\nlet F = {{1},{0,2}} : U\n\
             let G = {{2},{0,1}} : U\ncheck (A|F)^(A|G) == A|(F^G)\ncheck A <= A|F",
        )
        .unwrap();
        let text = render_check_text(&t, &run_checks(&t).unwrap());
        assert_eq!(
            text,
            "check 1: (A|F)^(A|G) == A|(F^G)\n  verdict: fails\n  \
             left atoms: {{0},{1},{2}}\n  right atoms: {{0},{1,2}}\n\
             check 2: A <= A|F\n  verdict: holds\n"
        );
    }
}
