//! Built-in verification suite: finite-model checks of distributivity of
//! products over meets, its atom criterion, product-form detection, and
//! related lattice identities. Each item reports counts and pass/fail.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsl::{self, load, mine, MineOptions};
use crate::product::{diagonal, distributivity_report, product, product_form};
use crate::report::render_mine_text;
use crate::sigma::{contains, generate, join, meet, separates_points, SigmaAlgebra};
use crate::space::{enumerate_partitions, Bits, GroundSet, Partition, PartitionRanker};

pub const DISTRIBUTIVITY_SCRIPT: &str = "\
space X = 3
space U = 3
var A : X
var F : U
var G : U
check (A*F)^(A*G) == A*(F^G)
";

pub const LATTICE_SCRIPT: &str = "\
space U = 3
var A : U
var F : U
var G : U
check (A|F)^(A|G) == A|(F^G)
";

pub const SUP_SCRIPT: &str = "\
space X = 3
space U = 3
var A : X
var F : U
var G : U
check (A*F)|(A*G) == A*(F|G)
";

pub const CHAIN_SCRIPT: &str = "\
space X = 3
space U = 3
var A1 : X
var A2 : X
var A3 : X
var F : U
constrain A3 <= A2
constrain A2 <= A1
check (A1*F)^((A2*F)^(A3*F)) == (A1^(A2^A3))*F
";

/// Scripts whose parse → print → parse round trip must be exact.
pub const PARSER_CORPUS: &[&str] = &[
    DISTRIBUTIVITY_SCRIPT,
    LATTICE_SCRIPT,
    SUP_SCRIPT,
    CHAIN_SCRIPT,
    "",
    "# only a comment\n",
    "space X = 1",
    "space X=2 space U=3 var A:X var F:U var G:U check A*(F^G) <= (A*F)^(A*G)",
    "space X = 2\nvar A : X\ncheck A == A",
    "space X = 2\nvar A : X\ncheck A^A == A # idempotent\n",
    "space X = 3\nvar A : X\nvar B : X\ncheck A|B == B|A",
    "space X = 3\nvar A : X\nvar B : X\nvar C : X\ncheck A^B^C == A^(B^C)",
    "space X = 3\nvar A : X\nvar B : X\nvar C : X\ncheck A|(B|C) == (A|B)|C",
    "space X = 3\nvar A : X\nvar B : X\ncheck A^(A|B) == A",
    "space X = 2\nspace U = 2\nspace V = 2\nvar A : X\nvar F : U\nvar H : V\ncheck (A*F)*H == A*F*H",
    "space X = 2\nspace U = 2\nvar A : X\nvar F : U\ncheck A*(F|trivial(U)) == A*F",
    "space X = 2\ncheck discrete(X)^trivial(X) == trivial(X)",
    "space X = 3\nlet A = {{0},{1,2}} : X\nlet B = {{1},{0,2}} : X\ncheck A^B <= A",
    "space X = 3\nlet A = {{1,2},{0}} : X\ncheck A == A",
    "space S = 4\nlet D = {{0,3},{1,2}} : S\ncheck D <= discrete(S)",
    "space X=2\nspace U=2\nlet A={{0},{1}}:X\nlet F={{0,1}}:U\nvar G:U\ncheck (A*F)^(A*G)==A*(F^G)",
    "space X = 3\nvar A : X\nvar B : X\nconstrain A <= B\ncheck A|B == B",
    "space X = 4\nvar A : X\nvar B : X\nvar C : X\ncheck ((A|B)^C)|(A^C) <= (A|B)^C",
    "space X = 2\nspace U = 3\nvar A : X\nvar F : U\nvar G : U\ncheck (A|trivial(X))*(F^(G|F)) == A*F",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteItem {
    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn all(n: usize) -> Vec<SigmaAlgebra> {
    enumerate_partitions(n)
        .expect("n >= 1")
        .map(SigmaAlgebra::from_atoms)
        .collect()
}

/// Counts over the reports of a list of `(A, F, G)` instances.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportTally {
    pub instances: usize,
    pub equal: usize,
    pub inclusion_ok: usize,
    pub equivalence_ok: usize,
    pub separated_premise_ok: usize,
}

fn tally<'a>(
    instances: impl Iterator<Item = (&'a SigmaAlgebra, &'a SigmaAlgebra, &'a SigmaAlgebra)>,
) -> ReportTally {
    let mut t = ReportTally::default();
    for (a, f, g) in instances {
        let r = distributivity_report(a, f, g).expect("same right space");
        t.instances += 1;
        t.equal += r.equal as usize;
        t.inclusion_ok += r.inclusion_ok as usize;
        t.equivalence_ok += r.equivalence_ok as usize;
        // a point-separating lhs has singleton, hence rectangular, atoms
        let premise_ok = !r.lhs_separates_points() || (r.atoms_rectangles && r.equal);
        t.separated_premise_ok += premise_ok as usize;
    }
    t
}

/// Every `(A, F, G)` with `|X|, |U|` in `1..=max`.
pub fn exhaustive_instances(max: usize) -> Vec<(SigmaAlgebra, SigmaAlgebra, SigmaAlgebra)> {
    let mut out = Vec::new();
    for nx in 1..=max {
        for nu in 1..=max {
            let xs = all(nx);
            let us = all(nu);
            for a in &xs {
                for f in &us {
                    for g in &us {
                        out.push((a.clone(), f.clone(), g.clone()));
                    }
                }
            }
        }
    }
    out
}

/// Seeded random `(A, F, G)` with `|X| <= max_x`, `|U| <= max_u`.
pub fn random_instances(
    seed: u64,
    count: usize,
    max_x: usize,
    max_u: usize,
) -> Vec<(SigmaAlgebra, SigmaAlgebra, SigmaAlgebra)> {
    let rankers: Vec<PartitionRanker> = (1..=max_x.max(max_u))
        .map(|n| PartitionRanker::new(n).unwrap().expect("small n"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |n: usize, rng: &mut ChaCha8Rng| {
        let r = &rankers[n - 1];
        SigmaAlgebra::from_atoms(r.unrank(rng.gen_range(0..r.count())).unwrap())
    };
    (0..count)
        .map(|_| {
            let nx = rng.gen_range(1..=max_x);
            let nu = rng.gen_range(1..=max_u);
            let a = pick(nx, &mut rng);
            let f = pick(nu, &mut rng);
            let g = pick(nu, &mut rng);
            (a, f, g)
        })
        .collect()
}

pub const RANDOM_SEED: u64 = 0x5eed_0001;

fn finite_distributivity() -> SuiteItem {
    let start = Instant::now();
    let inst = exhaustive_instances(3);
    let t = tally(inst.iter().map(|(a, f, g)| (a, f, g)));
    let fast = start.elapsed() < Duration::from_secs(5);
    SuiteItem {
        name: "finite distributivity",
        passed: t.instances == 240 && t.equal == 240 && t.inclusion_ok == 240 && fast,
        detail: format!("{}/{} hold", t.equal, t.instances),
    }
}

fn inclusion_and_equivalence() -> [SuiteItem; 2] {
    let mut inst = exhaustive_instances(3);
    inst.extend(random_instances(RANDOM_SEED, 1000, 5, 4));
    let t = tally(inst.iter().map(|(a, f, g)| (a, f, g)));
    [
        SuiteItem {
            name: "one-sided inclusion",
            passed: t.instances == 1240 && t.inclusion_ok == t.instances,
            detail: format!("{}/{} reports", t.inclusion_ok, t.instances),
        },
        SuiteItem {
            name: "rectangle-atom equivalence",
            passed: t.instances == 1240
                && t.equivalence_ok == t.instances
                && t.separated_premise_ok == t.instances,
            detail: format!("{}/{} reports", t.equivalence_ok, t.instances),
        },
    ]
}

fn lattice_identity() -> SuiteItem {
    let start = Instant::now();
    let t = load(LATTICE_SCRIPT).expect("built-in script");
    let small = mine(&t, &MineOptions::exhaustive(2)).expect("search runs");
    let full = mine(&t, &MineOptions::exhaustive(3)).expect("search runs");
    let fast = start.elapsed() < Duration::from_secs(1);
    let none_small = small[0].witness.is_none();
    match &full[0].witness {
        Some(w) => {
            let size = w.sizes[0].1;
            let reverified = w.reverify().unwrap_or(false) && w.lhs != w.rhs;
            SuiteItem {
                name: "lattice identity",
                passed: none_small && size == 3 && reverified && fast,
                detail: format!(
                    "counterexample at size {size} (rank {}, {}), none at size <= 2",
                    w.rank,
                    if reverified {
                        "re-verified"
                    } else {
                        "NOT re-verified"
                    }
                ),
            }
        }
        None => SuiteItem {
            name: "lattice identity",
            passed: false,
            detail: "no counterexample at size 3".into(),
        },
    }
}

fn holds_at_bound(name: &'static str, script: &str) -> SuiteItem {
    let t = load(script).expect("built-in script");
    let r = mine(&t, &MineOptions::exhaustive(3)).expect("search runs");
    let c = &r[0].certificate;
    SuiteItem {
        name,
        passed: r[0].witness.is_none(),
        detail: match &r[0].witness {
            None => format!("holds at sizes <= 3, {c}"),
            Some(w) => format!("counterexample at rank {}", w.rank),
        },
    }
}

fn product_form_round_trip() -> SuiteItem {
    let mut pairs = 0;
    let mut round_trips = 0;
    for nx in 1..=3 {
        for nu in 1..=3 {
            for a in all(nx) {
                for f in all(nu) {
                    pairs += 1;
                    let h = product(&a, &f).expect("small");
                    if product_form(&h).expect("product space") == Some((a.clone(), f)) {
                        round_trips += 1;
                    }
                }
            }
        }
    }
    let two = GroundSet::new(2).expect("nonzero");
    let square = GroundSet::product(&two, &two).expect("small");
    let diag = generate(&square, &[diagonal(&two).expect("small")]).expect("same space");
    let rejected = product_form(&diag).expect("product space").is_none();
    let no_factorization = all(2)
        .iter()
        .all(|a| all(2).iter().all(|e| product(a, e).expect("small") != diag));
    SuiteItem {
        name: "product-form round trip",
        passed: pairs == 64 && round_trips == pairs && rejected && no_factorization,
        detail: format!(
            "{round_trips}/{pairs} round trips, diagonal {}",
            if rejected && no_factorization {
                "rejected (no factor pair)"
            } else {
                "NOT rejected"
            }
        ),
    }
}

/// Explicit member family of a σ-algebra.
pub fn members(s: &SigmaAlgebra) -> Vec<Bits> {
    let atoms = s.atoms().block_bits();
    (0u64..1 << atoms.len())
        .map(|code| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| code >> i & 1 == 1)
                .fold(0, |acc, (_, &a)| acc | a)
        })
        .collect()
}

/// Closure of a family under complement and union.
pub fn closure(n: usize, family: &[Bits]) -> Vec<Bits> {
    let full: Bits = (1 << n) - 1;
    let mut set: std::collections::BTreeSet<Bits> = [0, full].into_iter().collect();
    set.extend(family.iter().copied());
    loop {
        let snapshot: Vec<Bits> = set.iter().copied().collect();
        for &a in &snapshot {
            set.insert(full & !a);
            for &b in &snapshot {
                set.insert(a | b);
            }
        }
        if set.len() == snapshot.len() {
            return snapshot;
        }
    }
}

/// Atoms of an explicit σ-algebra: its minimal nonempty members.
pub fn atoms_of_family(space: &GroundSet, family: &[Bits]) -> Partition {
    let minimal: Vec<Bits> = family
        .iter()
        .copied()
        .filter(|&m| m != 0 && !family.iter().any(|&o| o != 0 && o != m && o & !m == 0))
        .collect();
    Partition::from_block_bits(space, &minimal).expect("minimal members partition the space")
}

fn lattice_oracle() -> SuiteItem {
    let mut pairs = 0;
    let mut agree = 0;
    for n in 1..=4 {
        let space = GroundSet::new(n).expect("nonzero");
        let fs = all(n);
        for f in &fs {
            for g in &fs {
                pairs += 1;
                let mf = members(f);
                let mg = members(g);
                let both: Vec<Bits> = mf.iter().copied().filter(|m| mg.contains(m)).collect();
                let meet_ok =
                    meet(f, g).expect("same space").atoms() == &atoms_of_family(&space, &both);
                let mut union = mf.clone();
                union.extend(&mg);
                let joined = closure(n, &union);
                let join_ok =
                    join(f, g).expect("same space").atoms() == &atoms_of_family(&space, &joined);
                agree += (meet_ok && join_ok) as usize;
            }
        }
    }
    SuiteItem {
        name: "lattice-law oracle",
        passed: pairs == 255 && agree == pairs,
        detail: format!("{agree}/{pairs} pairs agree"),
    }
}

fn diagonal_criterion() -> SuiteItem {
    let mut cases = 0;
    let mut ok = 0;
    for n in 1..=4 {
        let space = GroundSet::new(n).expect("nonzero");
        let d = diagonal(&space).expect("small");
        for f in all(n) {
            cases += 1;
            let ff = product(&f, &f).expect("small");
            if contains(&ff, &d).expect("same space") == separates_points(&f) {
                ok += 1;
            }
        }
    }
    SuiteItem {
        name: "diagonal criterion",
        passed: cases == 23 && ok == cases,
        detail: format!("{ok}/{cases} σ-algebras"),
    }
}

fn determinism() -> SuiteItem {
    let mut stable = 0;
    let scripts = [LATTICE_SCRIPT, SUP_SCRIPT];
    for script in scripts {
        let t = load(script).expect("built-in script");
        let one = render_mine_text(&mine(&t, &MineOptions::exhaustive(3)).expect("runs"));
        let many =
            render_mine_text(&mine(&t, &MineOptions::exhaustive(3).with_workers(8)).expect("runs"));
        stable += (one == many) as usize;
    }
    let round_trips = PARSER_CORPUS
        .iter()
        .filter(|text| corpus_round_trips(text))
        .count();
    SuiteItem {
        name: "determinism",
        passed: stable == scripts.len() && round_trips == PARSER_CORPUS.len(),
        detail: format!(
            "{stable}/{} mine outputs identical across 1 and 8 workers, {round_trips}/{} scripts round-trip",
            scripts.len(),
            PARSER_CORPUS.len()
        ),
    }
}

/// `parse ∘ print ∘ parse == parse`, and printing is a fixpoint.
pub fn corpus_round_trips(text: &str) -> bool {
    let Ok(first) = dsl::parse(text) else {
        return false;
    };
    let printed = first.to_string();
    match dsl::parse(&printed) {
        Ok(second) => second == first && second.to_string() == printed,
        Err(_) => false,
    }
}

/// Runs every item in order.
pub fn run_suite() -> Vec<SuiteItem> {
    let mut items = vec![finite_distributivity()];
    items.extend(inclusion_and_equivalence());
    items.push(lattice_identity());
    items.push(holds_at_bound("sup-distributivity", SUP_SCRIPT));
    items.push(product_form_round_trip());
    items.push(lattice_oracle());
    items.push(diagonal_criterion());
    items.push(determinism());
    items.push(holds_at_bound("chain identity", CHAIN_SCRIPT));
    items
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let items = run_suite();
        assert_eq!(items.len(), 10);
        for item in &items {
            assert!(item.passed, "{}", item.line());
        }
        assert_eq!(items[0].line(), "PASS finite distributivity: 240/240 hold");
    }

    #[test]
    fn corpus_is_large_enough_and_parses() {
        assert!(PARSER_CORPUS.len() >= 20);
        for text in PARSER_CORPUS {
            assert!(corpus_round_trips(text), "{text}");
            assert!(load(text).is_ok(), "{text}");
        }
    }

    #[test]
    fn random_instances_are_reproducible() {
        let a = random_instances(9, 50, 5, 4);
        assert_eq!(a, random_instances(9, 50, 5, 4));
        assert!(a.iter().all(|(x, f, g)| x.space().size() <= 5
            && f.space() == g.space()
            && f.space().size() <= 4));
    }
}
