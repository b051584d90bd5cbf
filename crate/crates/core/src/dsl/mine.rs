//! Counterexample search over assignments of partitions to free variables.
//!
//! Exhaustive mode walks every assignment, space sizes first (smallest total
//! size, then lexicographic), then partitions per variable in declaration
//! order, each in restricted-growth-string order. Every assignment has a rank
//! in that walk; workers split the ranks and the smallest violating rank
//! wins, so the result does not depend on the number of workers.
//!
//! Random mode draws `limit` assignments from a seeded generator. Trial `t`
//! uses its own ChaCha stream, so sampling is reproducible and independent of
//! scheduling as well.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ast::{write_literal, Check};
use super::eval::{self, Env};
use super::typecheck::TypedScript;
use super::DslError;
use crate::sigma::{is_sub, SigmaAlgebra};
use crate::space::{GroundSet, Partition, PartitionRanker};

/// Default number of random trials.
pub const DEFAULT_TRIALS: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MineOptions {
    /// Upper bound on the size of every searched space.
    pub max_size: usize,
    pub mode: SearchMode,
    /// Cap on assignments (exhaustive) or number of trials (random).
    pub limit: Option<u64>,
    pub workers: usize,
}

impl MineOptions {
    pub fn exhaustive(max_size: usize) -> Self {
        MineOptions {
            max_size,
            mode: SearchMode::Exhaustive,
            limit: None,
            workers: 1,
        }
    }

    pub fn random(max_size: usize, seed: u64, trials: u64) -> Self {
        MineOptions {
            max_size,
            mode: SearchMode::Random { seed },
            limit: Some(trials),
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

/// What a search covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub mode: SearchMode,
    /// Inclusive size range per declared space.
    pub bounds: Vec<(String, usize, usize)>,
    /// Assignments in the searched region (after `limit`).
    pub region: u64,
    /// Assignments evaluated, up to and including the witness if any.
    pub checked: u64,
    /// Assignments passed over because a `constrain` line failed.
    pub skipped: u64,
    /// `limit` cut the exhaustive region short.
    pub truncated: bool,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} assignments checked", self.checked)?;
        if self.skipped > 0 {
            write!(f, ", {} skipped by constraints", self.skipped)?;
        }
        match self.mode {
            SearchMode::Exhaustive => f.write_str(" (exhaustive")?,
            SearchMode::Random { seed } => {
                write!(f, " (random, seed {seed}, {} trials", self.region)?
            }
        }
        for (name, lo, hi) in &self.bounds {
            if lo == hi {
                write!(f, "; {name} = {lo}")?;
            } else {
                write!(f, "; {name} in {lo}..={hi}")?;
            }
        }
        if self.truncated {
            f.write_str("; truncated by limit")?;
        }
        f.write_str(")")
    }
}

/// An assignment under which a check fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Position in search order (trial number in random mode).
    pub rank: u64,
    /// Size of every declared space.
    pub sizes: Vec<(String, usize)>,
    /// `(variable, space, atoms)` for every variable, in declaration order.
    pub assignment: Vec<(String, String, Partition)>,
    pub check: Check,
    pub lhs: SigmaAlgebra,
    pub rhs: SigmaAlgebra,
}

impl Counterexample {
    /// The witness as `space` and `let` lines.
    pub fn to_script(&self) -> String {
        let mut out = String::new();
        for (name, size) in &self.sizes {
            out.push_str(&format!("space {name} = {size}\n"));
        }
        for (name, space, atoms) in &self.assignment {
            out.push_str(&format!("let {name} = "));
            write_literal(&mut out, &literal(atoms)).expect("string write");
            out.push_str(&format!(" : {space}\n"));
        }
        out
    }

    pub fn env(&self) -> Env {
        let mut env = Env::new();
        for (name, size) in &self.sizes {
            env.set_space(
                name,
                GroundSet::new(*size).expect("sizes validated by search"),
            );
        }
        for (name, _, atoms) in &self.assignment {
            env.assign(name, SigmaAlgebra::from_atoms(atoms.clone()));
        }
        env
    }

    /// Re-evaluates the check under the stored assignment; true when it still
    /// fails.
    pub fn reverify(&self) -> Result<bool, DslError> {
        let ev = eval::check(&self.check, &self.env())?;
        Ok(!ev.holds && ev.lhs == self.lhs && ev.rhs == self.rhs)
    }
}

/// Block lists of a partition, for `let` literals.
pub fn literal(p: &Partition) -> Vec<Vec<usize>> {
    p.blocks().map(|b| b.points().collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MineResult {
    /// 0-based index of the check in the script.
    pub index: usize,
    pub check: Check,
    pub witness: Option<Counterexample>,
    pub certificate: Certificate,
    pub elapsed: Duration,
}

/// One point of the search: a size per space and a partition rank per free
/// variable.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Candidate {
    sizes: Vec<usize>,
    picks: Vec<u128>,
}

struct SizeBlock {
    sizes: Vec<usize>,
    radices: Vec<u128>,
    offset: u64,
}

enum Region {
    Exhaustive { blocks: Vec<SizeBlock>, len: u64 },
    Random { seed: u64, trials: u64 },
}

struct Plan<'a> {
    space_names: Vec<&'a str>,
    /// size per space when not searched
    base_sizes: Vec<usize>,
    free_spaces: Vec<usize>,
    /// (name, space index, fixed atoms)
    vars: Vec<(&'a str, usize, Option<&'a Partition>)>,
    /// index into `vars` of each free variable
    free_vars: Vec<usize>,
    constraints: Vec<(usize, usize)>,
    rankers: Vec<Option<PartitionRanker>>,
    max_size: usize,
}

impl<'a> Plan<'a> {
    fn new(script: &'a TypedScript, max_size: usize) -> Result<Self, DslError> {
        let space_names: Vec<&str> = script.spaces.keys().map(String::as_str).collect();
        let space_index = |name: &str| script.spaces.get_index_of(name).expect("typechecked space");
        let vars: Vec<(&str, usize, Option<&Partition>)> = script
            .variables
            .iter()
            .map(|(name, space)| {
                (
                    name.as_str(),
                    space_index(space),
                    script.fixed.get(name).map(|f| &f.atoms),
                )
            })
            .collect();
        let pinned: Vec<bool> = (0..space_names.len())
            .map(|s| {
                vars.iter()
                    .any(|(_, vs, fixed)| *vs == s && fixed.is_some())
            })
            .collect();
        let free_spaces: Vec<usize> = (0..space_names.len())
            .filter(|&s| !pinned[s] && vars.iter().any(|(_, vs, _)| *vs == s))
            .collect();
        let free_vars = (0..vars.len()).filter(|&i| vars[i].2.is_none()).collect();
        let var_index = |name: &str| {
            script
                .variables
                .get_index_of(name)
                .expect("typechecked variable")
        };
        let constraints = script
            .constraints
            .iter()
            .map(|(l, g)| (var_index(l), var_index(g)))
            .collect();
        let mut rankers = vec![None];
        if !free_spaces.is_empty() {
            for n in 1..=max_size {
                let r = PartitionRanker::new(n)?.ok_or_else(|| {
                    DslError::Usage(format!(
                        "spaces of {n} points have too many partitions to search"
                    ))
                })?;
                rankers.push(Some(r));
            }
        }
        Ok(Plan {
            space_names,
            base_sizes: script.spaces.values().copied().collect(),
            free_spaces,
            vars,
            free_vars,
            constraints,
            rankers,
            max_size,
        })
    }

    fn ranker(&self, size: usize) -> &PartitionRanker {
        self.rankers[size]
            .as_ref()
            .expect("ranker built for every searched size")
    }

    fn exhaustive_region(&self, limit: Option<u64>) -> Result<(Region, bool), DslError> {
        let k = self.free_spaces.len();
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..k {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (1..=self.max_size).map(move |n| {
                        let mut t = t.clone();
                        t.push(n);
                        t
                    })
                })
                .collect();
        }
        // stable: lexicographic within equal total size
        tuples.sort_by_key(|t| t.iter().sum::<usize>());
        let too_big = || DslError::Usage("search region exceeds 2^64 assignments".into());
        let mut blocks = Vec::with_capacity(tuples.len());
        let mut offset: u64 = 0;
        for t in tuples {
            let mut sizes = self.base_sizes.clone();
            for (&s, &n) in self.free_spaces.iter().zip(&t) {
                sizes[s] = n;
            }
            let radices: Vec<u128> = self
                .free_vars
                .iter()
                .map(|&v| self.ranker(sizes[self.vars[v].1]).count())
                .collect();
            let count = radices
                .iter()
                .try_fold(1u128, |acc, &r| acc.checked_mul(r))
                .and_then(|c| u64::try_from(c).ok())
                .ok_or_else(too_big)?;
            blocks.push(SizeBlock {
                sizes,
                radices,
                offset,
            });
            offset = offset.checked_add(count).ok_or_else(too_big)?;
        }
        let len = limit.map_or(offset, |l| l.min(offset));
        Ok((Region::Exhaustive { blocks, len }, len < offset))
    }

    fn candidate(&self, region: &Region, rank: u64) -> Candidate {
        match region {
            Region::Exhaustive { blocks, .. } => {
                let at = blocks.partition_point(|b| b.offset <= rank) - 1;
                let block = &blocks[at];
                let mut local = (rank - block.offset) as u128;
                let mut picks = vec![0; block.radices.len()];
                for (pick, &radix) in picks.iter_mut().zip(&block.radices).rev() {
                    *pick = local % radix;
                    local /= radix;
                }
                Candidate {
                    sizes: block.sizes.clone(),
                    picks,
                }
            }
            Region::Random { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(rank);
                let mut sizes = self.base_sizes.clone();
                for &s in &self.free_spaces {
                    sizes[s] = rng.gen_range(1..=self.max_size);
                }
                let picks = self
                    .free_vars
                    .iter()
                    .map(|&v| rng.gen_range(0..self.ranker(sizes[self.vars[v].1]).count()))
                    .collect();
                Candidate { sizes, picks }
            }
        }
    }

    fn region_len(region: &Region) -> u64 {
        match region {
            Region::Exhaustive { len, .. } => *len,
            Region::Random { trials, .. } => *trials,
        }
    }

    fn values(&self, cand: &Candidate) -> Vec<SigmaAlgebra> {
        let mut picks = cand.picks.iter();
        self.vars
            .iter()
            .map(|(_, space, fixed)| match fixed {
                Some(atoms) => SigmaAlgebra::from_atoms((*atoms).clone()),
                None => {
                    let pick = *picks.next().expect("one pick per free variable");
                    let atoms = self
                        .ranker(cand.sizes[*space])
                        .unrank(pick)
                        .expect("pick below partition count");
                    SigmaAlgebra::from_atoms(atoms)
                }
            })
            .collect()
    }

    fn constraints_hold(&self, values: &[SigmaAlgebra]) -> Result<bool, DslError> {
        for &(l, g) in &self.constraints {
            if !is_sub(&values[l], &values[g])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn env(&self, cand: &Candidate, values: &[SigmaAlgebra]) -> Result<Env, DslError> {
        let mut env = Env::new();
        for (name, &size) in self.space_names.iter().zip(&cand.sizes) {
            env.set_space(name, GroundSet::new(size)?);
        }
        for ((name, _, _), value) in self.vars.iter().zip(values) {
            env.assign(name, value.clone());
        }
        Ok(env)
    }

    /// Some(violated) for candidates passing the constraints, None otherwise.
    fn test(&self, check: &Check, region: &Region, rank: u64) -> Result<Option<bool>, DslError> {
        let cand = self.candidate(region, rank);
        let values = self.values(&cand);
        if !self.constraints_hold(&values)? {
            return Ok(None);
        }
        let env = self.env(&cand, &values)?;
        Ok(Some(!eval::check(check, &env)?.holds))
    }

    fn bounds(&self) -> Vec<(String, usize, usize)> {
        self.space_names
            .iter()
            .enumerate()
            .map(|(s, name)| {
                if self.free_spaces.contains(&s) {
                    (name.to_string(), 1, self.max_size)
                } else {
                    (name.to_string(), self.base_sizes[s], self.base_sizes[s])
                }
            })
            .collect()
    }

    fn witness(
        &self,
        check: &Check,
        region: &Region,
        rank: u64,
    ) -> Result<Counterexample, DslError> {
        let cand = self.candidate(region, rank);
        let values = self.values(&cand);
        let env = self.env(&cand, &values)?;
        let ev = eval::check(check, &env)?;
        debug_assert!(!ev.holds);
        Ok(Counterexample {
            rank,
            sizes: self
                .space_names
                .iter()
                .zip(&cand.sizes)
                .map(|(n, &s)| (n.to_string(), s))
                .collect(),
            assignment: self
                .vars
                .iter()
                .zip(values)
                .map(|((name, space, _), v)| {
                    (
                        name.to_string(),
                        self.space_names[*space].to_string(),
                        v.into_atoms(),
                    )
                })
                .collect(),
            check: check.clone(),
            lhs: ev.lhs,
            rhs: ev.rhs,
        })
    }
}

/// Smallest rank in `0..len` for which `test` reports a violation.
fn first_violation<F>(len: u64, workers: usize, test: F) -> Result<Option<u64>, DslError>
where
    F: Fn(u64) -> Result<bool, DslError> + Sync,
{
    const CHUNK: u64 = 32;
    if workers <= 1 {
        for rank in 0..len {
            if test(rank)? {
                return Ok(Some(rank));
            }
        }
        return Ok(None);
    }
    let next = AtomicU64::new(0);
    let best = AtomicU64::new(u64::MAX);
    let failure: Mutex<Option<(u64, DslError)>> = Mutex::new(None);
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let start = next.fetch_add(CHUNK, Ordering::Relaxed);
                if start >= len || start > best.load(Ordering::Relaxed) {
                    break;
                }
                for rank in start..(start + CHUNK).min(len) {
                    if rank > best.load(Ordering::Relaxed) {
                        break;
                    }
                    match test(rank) {
                        Ok(false) => {}
                        Ok(true) => {
                            best.fetch_min(rank, Ordering::Relaxed);
                            break;
                        }
                        Err(e) => {
                            let mut slot = failure.lock().expect("worker panicked");
                            if slot.as_ref().is_none_or(|(r, _)| rank < *r) {
                                *slot = Some((rank, e));
                            }
                            best.fetch_min(rank, Ordering::Relaxed);
                            break;
                        }
                    }
                }
            });
        }
    });
    let best = best.into_inner();
    if let Some((rank, e)) = failure.into_inner().expect("worker panicked") {
        if rank == best {
            return Err(e);
        }
    }
    Ok((best != u64::MAX).then_some(best))
}

/// Searches for a violation of every check in `script`.
pub fn mine(script: &TypedScript, opts: &MineOptions) -> Result<Vec<MineResult>, DslError> {
    if opts.max_size == 0 {
        return Err(DslError::Usage(
            "maximum ground size must be at least 1".into(),
        ));
    }
    if opts.limit == Some(0) {
        return Err(DslError::Usage("search budget must be positive".into()));
    }
    if opts.workers == 0 {
        return Err(DslError::Usage("worker count must be positive".into()));
    }
    let plan = Plan::new(script, opts.max_size)?;
    let (region, truncated) = match opts.mode {
        SearchMode::Exhaustive => plan.exhaustive_region(opts.limit)?,
        SearchMode::Random { seed } => (
            Region::Random {
                seed,
                trials: opts.limit.unwrap_or(DEFAULT_TRIALS),
            },
            false,
        ),
    };
    let len = Plan::region_len(&region);

    // constraint-only pass results are shared by every check
    let mut admissible_prefix: Option<Vec<bool>> = None;
    let mut results = Vec::with_capacity(script.checks.len());
    for (index, typed) in script.checks.iter().enumerate() {
        let started = Instant::now();
        let check = &typed.check;
        let found = first_violation(len, opts.workers, |rank| {
            Ok(plan.test(check, &region, rank)? == Some(true))
        })?;
        let end = found.map_or(len, |r| r + 1);
        let (checked, skipped) = if plan.constraints.is_empty() {
            (end, 0)
        } else {
            let admissible = match &admissible_prefix {
                Some(a) if a.len() as u64 >= end => a,
                _ => {
                    let mut a = Vec::with_capacity(len as usize);
                    for rank in 0..len {
                        let values = plan.values(&plan.candidate(&region, rank));
                        a.push(plan.constraints_hold(&values)?);
                    }
                    admissible_prefix.insert(a)
                }
            };
            let ok = admissible[..end as usize].iter().filter(|&&b| b).count() as u64;
            (ok, end - ok)
        };
        let witness = found
            .map(|rank| plan.witness(check, &region, rank))
            .transpose()?;
        results.push(MineResult {
            index,
            check: check.clone(),
            witness,
            certificate: Certificate {
                mode: opts.mode,
                bounds: plan.bounds(),
                region: len,
                checked,
                skipped,
                truncated,
            },
            elapsed: started.elapsed(),
        });
    }
    Ok(results)
}

/// Variable sizes searched by default: the largest declared size among the
/// spaces that hold free variables (1 when there are none).
pub fn default_max_size(script: &TypedScript) -> usize {
    script
        .free_variables()
        .map(|(_, space)| script.spaces[space])
        .max()
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parser::parse;
    use crate::dsl::typecheck::typecheck;
    use crate::space::enumerate_partitions;

    fn typed(text: &str) -> TypedScript {
        typecheck(&parse(text).unwrap()).unwrap()
    }

    const LATTICE: &str =
        "space U = 3\nvar A : U\nvar F : U\nvar G : U\ncheck (A|F)^(A|G) == A|(F^G)";
    const EQ1: &str =
        "space X = 3\nspace U = 3\nvar A : X\nvar F : U\nvar G : U\ncheck (A*F)^(A*G) == A*(F^G)";

    #[test]
    fn distributivity_holds_on_240_assignments() {
        let out = mine(&typed(EQ1), &MineOptions::exhaustive(3)).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].witness.is_none());
        assert_eq!(out[0].certificate.checked, 240);
        assert_eq!(out[0].certificate.region, 240);
        assert!(out[0]
            .certificate
            .to_string()
            .starts_with("240 assignments checked"));
    }

    // oracle: plain nested loops over enumerate_partitions at one size
    fn lattice_oracle(n: usize) -> Option<usize> {
        let ps: Vec<SigmaAlgebra> = enumerate_partitions(n)
            .unwrap()
            .map(SigmaAlgebra::from_atoms)
            .collect();
        let mut i = 0;
        for a in &ps {
            for f in &ps {
                for g in &ps {
                    use crate::sigma::{join, meet};
                    let l = meet(&join(a, f).unwrap(), &join(a, g).unwrap()).unwrap();
                    let r = join(a, &meet(f, g).unwrap()).unwrap();
                    if l != r {
                        return Some(i);
                    }
                    i += 1;
                }
            }
        }
        None
    }

    #[test]
    fn lattice_identity_fails_first_at_three_points() {
        assert_eq!(lattice_oracle(1), None);
        assert_eq!(lattice_oracle(2), None);
        let local = lattice_oracle(3).unwrap();
        let out = mine(&typed(LATTICE), &MineOptions::exhaustive(3)).unwrap();
        let w = out[0].witness.as_ref().unwrap();
        // ranks: 1 assignment at size 1, 8 at size 2
        assert_eq!(w.rank, 9 + local as u64);
        assert_eq!(w.sizes, [("U".to_string(), 3)]);
        for (_, _, atoms) in &w.assignment {
            assert_eq!(atoms.num_blocks(), 2);
        }
        assert!(w.reverify().unwrap());
        assert_eq!(out[0].certificate.checked, w.rank + 1);
        assert!(
            mine(&typed(LATTICE), &MineOptions::exhaustive(2)).unwrap()[0]
                .witness
                .is_none()
        );
    }

    #[test]
    fn witness_script_reparses() {
        let out = mine(&typed(LATTICE), &MineOptions::exhaustive(3)).unwrap();
        let w = out[0].witness.as_ref().unwrap();
        let text = format!("{}check {}\n", w.to_script(), w.check);
        let t = typed(&text);
        let ev = eval::run_checks(&t).unwrap();
        assert!(!ev[0].holds);
        assert_eq!(ev[0].lhs, w.lhs);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        for text in [LATTICE, EQ1] {
            let one = mine(&typed(text), &MineOptions::exhaustive(3)).unwrap();
            for workers in [2, 3, 8] {
                let many = mine(
                    &typed(text),
                    &MineOptions::exhaustive(3).with_workers(workers),
                )
                .unwrap();
                for (a, b) in one.iter().zip(&many) {
                    assert_eq!(a.witness, b.witness);
                    assert_eq!(a.certificate, b.certificate);
                }
            }
            let r1 = mine(&typed(text), &MineOptions::random(3, 5, 300)).unwrap();
            let r8 = mine(
                &typed(text),
                &MineOptions::random(3, 5, 300).with_workers(8),
            )
            .unwrap();
            assert_eq!(r1[0].witness, r8[0].witness);
            assert_eq!(r1[0].certificate, r8[0].certificate);
        }
    }

    #[test]
    fn random_mode_is_seeded() {
        let t = typed(LATTICE);
        let a = mine(&t, &MineOptions::random(3, 42, 500)).unwrap();
        let b = mine(&t, &MineOptions::random(3, 42, 500)).unwrap();
        assert_eq!(a[0].witness, b[0].witness);
        let w = a[0]
            .witness
            .as_ref()
            .expect("violations are common at size 3");
        assert!(w.reverify().unwrap());
        assert!(a[0]
            .certificate
            .to_string()
            .contains("random, seed 42, 500 trials"));
    }

    #[test]
    fn trivial_identity_never_fails() {
        let t = typed("space X = 2\nvar A : X\ncheck A == A");
        for opts in [MineOptions::exhaustive(4), MineOptions::random(5, 1, 200)] {
            assert!(mine(&t, &opts).unwrap()[0].witness.is_none());
        }
    }

    #[test]
    fn usage_errors() {
        let t = typed(LATTICE);
        assert!(matches!(
            mine(&t, &MineOptions::exhaustive(0)),
            Err(DslError::Usage(_))
        ));
        let mut o = MineOptions::exhaustive(3);
        o.limit = Some(0);
        assert!(matches!(mine(&t, &o), Err(DslError::Usage(_))));
        assert!(matches!(
            mine(&t, &MineOptions::random(3, 1, 0)),
            Err(DslError::Usage(_))
        ));
    }

    #[test]
    fn limit_truncates_exhaustive_search() {
        let mut o = MineOptions::exhaustive(3);
        o.limit = Some(20);
        let out = mine(&typed(LATTICE), &o).unwrap();
        assert!(out[0].witness.is_none());
        assert!(out[0].certificate.truncated);
        assert_eq!(out[0].certificate.checked, 20);
    }

    #[test]
    fn constraints_filter_assignments() {
        let t = typed(
            "space X = 3\nspace U = 3\nvar A1 : X\nvar A2 : X\nvar A3 : X\nvar F : U\n\
             constrain A3 <= A2\nconstrain A2 <= A1\n\
             check (A1*F)^((A2*F)^(A3*F)) == (A1^(A2^A3))*F\ncheck A1 <= A3",
        );
        let out = mine(&t, &MineOptions::exhaustive(3)).unwrap();
        assert!(out[0].witness.is_none());
        // brute-force count of admissible chains A3 ⊆ A2 ⊆ A1 at each size
        let mut chains = 0u64;
        let mut total = 0u64;
        for nx in 1..=3usize {
            let ps: Vec<SigmaAlgebra> = enumerate_partitions(nx)
                .unwrap()
                .map(SigmaAlgebra::from_atoms)
                .collect();
            let mut per_x = 0u64;
            for a1 in &ps {
                for a2 in &ps {
                    for a3 in &ps {
                        if is_sub(a3, a2).unwrap() && is_sub(a2, a1).unwrap() {
                            per_x += 1;
                        }
                    }
                }
            }
            for nu in 1..=3 {
                let bu = enumerate_partitions(nu).unwrap().count() as u64;
                chains += per_x * bu;
                total += (ps.len() as u64).pow(3) * bu;
            }
        }
        assert_eq!(out[0].certificate.checked, chains);
        assert_eq!(out[0].certificate.skipped, total - chains);
        // A1 <= A3 fails on the first chain with A3 strictly coarser
        let w = out[1].witness.as_ref().unwrap();
        assert!(w.reverify().unwrap());
    }

    #[test]
    fn pinned_spaces_keep_declared_size() {
        let t = typed(
            "space X = 2\nspace U = 3\nlet A = {{0},{1}} : X\nvar F : U\nvar G : U\n\
             check (A*F)^(A*G) == A*(F^G)",
        );
        let out = mine(&t, &MineOptions::exhaustive(3)).unwrap();
        assert!(out[0].witness.is_none());
        assert_eq!(out[0].certificate.checked, 1 + 4 + 25);
        assert_eq!(
            out[0].certificate.bounds,
            [("X".to_string(), 2, 2), ("U".to_string(), 1, 3)]
        );
        assert_eq!(default_max_size(&t), 3);
    }
}
