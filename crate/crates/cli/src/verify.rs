//! Named verification checks and their reports.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::io::Write;
use std::time::Instant;

use num_bigint::BigUint;
use orddec::closure::{exhaustive_maximal_search, find_decomposition, SearchMode};
use orddec::counting::{
    card_g_slice, card_j, card_nilpotent_ord, card_opd, card_ord, card_ord_full, card_rd_star,
    card_rd_star_ord_slice, hat_r, max_reversing_rank, rank_ord, rank_ord_full,
    rothe_hagen_specialized,
};
use orddec::generators::{alpha_beta_pair, c_set, factorize, lambda, minimal_generating_set};
use orddec::maximal::{idempotent_with, l_set};
use orddec::{
    close, count_by_enumeration, enumerate, is_generating, is_maximal_in, is_subsemigroup,
    maximal_descriptors, maximal_descriptors_full, psi_hat, Family, FamilySelector, SemigroupSet,
    Transformation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commands::{require_within, Limits};
use crate::{CliError, CliResult, Format, EXIT_FAILURE, EXIT_OK};

pub const CHECK_IDS: [&str; 16] = [
    "prop1",
    "lemma2",
    "cardinality",
    "opd-card",
    "rothe-hagen",
    "prop4",
    "lemma5",
    "prop6",
    "thm7",
    "prop8",
    "lemma9",
    "lemma10",
    "thm8",
    "thm9",
    "psi-bijection",
    "eq1-constraints",
];

/// Associativity triples drawn per `thm7` cell.
const SPOT_CHECK_TRIPLES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One disagreement found by a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub subject: String,
    pub expected: String,
    pub found: String,
}

/// The outcome of one check at one parameter point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRun {
    pub check_id: String,
    pub n: usize,
    pub r: Option<usize>,
    pub status: Status,
    pub details: Vec<Mismatch>,
    pub elapsed_ms: u64,
}

impl VerificationRun {
    fn new(
        check_id: &str,
        n: usize,
        r: Option<usize>,
        details: Vec<Mismatch>,
        elapsed_ms: u64,
    ) -> Self {
        let status = if details.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            check_id: check_id.to_string(),
            n,
            r,
            status,
            details,
            elapsed_ms,
        }
    }
}

#[derive(Debug, Default)]
struct Findings(Vec<Mismatch>);

impl Findings {
    fn eq<T: PartialEq + Display>(&mut self, subject: impl Into<String>, expected: T, found: T) {
        if expected != found {
            self.0.push(Mismatch {
                subject: subject.into(),
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
    }

    fn holds(
        &mut self,
        subject: impl Into<String>,
        cond: bool,
        expected: &str,
        found: impl Display,
    ) {
        if !cond {
            self.0.push(Mismatch {
                subject: subject.into(),
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ranks {
    None,
    /// `3 ..= ⌈(n+1)/2⌉`
    Reversing,
    /// `3 ..= n-1`
    Proper,
    /// `2 ..= n-1`
    FromTwo,
    /// `1 ..= n`
    All,
}

impl Ranks {
    fn range(self, n: usize) -> Vec<usize> {
        match self {
            Ranks::None => vec![],
            Ranks::Reversing => (3..=max_reversing_rank(n)).collect(),
            Ranks::Proper => (3..n).collect(),
            Ranks::FromTwo => (2..n).collect(),
            Ranks::All => (1..=n).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cost {
    Arithmetic,
    Enumeration,
    Closure,
    Maximality,
}

type CheckFn = fn(usize, usize, u64) -> orddec::Result<Vec<Mismatch>>;

struct Check {
    id: &'static str,
    min_n: usize,
    ranks: Ranks,
    cost: Cost,
    run: CheckFn,
}

const CHECKS: [Check; 16] = [
    Check {
        id: "prop1",
        min_n: 4,
        ranks: Ranks::Reversing,
        cost: Cost::Enumeration,
        run: prop1,
    },
    Check {
        id: "lemma2",
        min_n: 4,
        ranks: Ranks::None,
        cost: Cost::Enumeration,
        run: lemma2,
    },
    Check {
        id: "cardinality",
        min_n: 4,
        ranks: Ranks::Proper,
        cost: Cost::Enumeration,
        run: cardinality,
    },
    Check {
        id: "opd-card",
        min_n: 4,
        ranks: Ranks::All,
        cost: Cost::Enumeration,
        run: opd_card,
    },
    Check {
        id: "rothe-hagen",
        min_n: 4,
        ranks: Ranks::Reversing,
        cost: Cost::Arithmetic,
        run: rothe_hagen,
    },
    Check {
        id: "prop4",
        min_n: 4,
        ranks: Ranks::FromTwo,
        cost: Cost::Closure,
        run: prop4,
    },
    Check {
        id: "lemma5",
        min_n: 4,
        ranks: Ranks::Proper,
        cost: Cost::Enumeration,
        run: lemma5,
    },
    Check {
        id: "prop6",
        min_n: 4,
        ranks: Ranks::Proper,
        cost: Cost::Closure,
        run: prop6,
    },
    Check {
        id: "thm7",
        min_n: 4,
        ranks: Ranks::Proper,
        cost: Cost::Closure,
        run: thm7,
    },
    Check {
        id: "prop8",
        min_n: 4,
        ranks: Ranks::Proper,
        cost: Cost::Closure,
        run: prop8,
    },
    Check {
        id: "lemma9",
        min_n: 4,
        ranks: Ranks::Proper,
        cost: Cost::Closure,
        run: lemma9,
    },
    Check {
        id: "lemma10",
        min_n: 4,
        ranks: Ranks::Proper,
        cost: Cost::Closure,
        run: lemma10,
    },
    Check {
        id: "thm8",
        min_n: 4,
        ranks: Ranks::Proper,
        cost: Cost::Maximality,
        run: thm8,
    },
    Check {
        id: "thm9",
        min_n: 4,
        ranks: Ranks::None,
        cost: Cost::Maximality,
        run: thm9,
    },
    Check {
        id: "psi-bijection",
        min_n: 5,
        ranks: Ranks::None,
        cost: Cost::Enumeration,
        run: psi_bijection,
    },
    Check {
        id: "eq1-constraints",
        min_n: 4,
        ranks: Ranks::None,
        cost: Cost::Enumeration,
        run: eq1_constraints,
    },
];

fn limit_for(cost: Cost, limits: &Limits) -> usize {
    match cost {
        Cost::Arithmetic => usize::MAX,
        Cost::Enumeration => limits.enumeration,
        Cost::Closure => limits.closure,
        Cost::Maximality => limits.maximality,
    }
}

/// What `verify` was asked to do.
#[derive(Debug, Clone)]
pub struct Plan {
    pub check: String,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub max_n: Option<usize>,
    pub seed: u64,
    pub budget: Option<usize>,
}

struct Cell {
    check: &'static Check,
    n: usize,
    r: Option<usize>,
}

fn cells(plan: &Plan, limits: &Limits, err: &mut dyn Write) -> CliResult<Vec<Cell>> {
    let checks: Vec<&'static Check> = if plan.check == "all" {
        CHECKS.iter().collect()
    } else {
        match CHECKS.iter().find(|c| c.id == plan.check) {
            Some(c) => vec![c],
            None => {
                return Err(CliError::usage(format!(
                    "unknown check `{}`; expected one of: all, {}",
                    plan.check,
                    CHECK_IDS.join(", ")
                )))
            }
        }
    };
    let sweep = plan.max_n.is_some();
    let ns: Vec<usize> = match (plan.n, plan.max_n) {
        (Some(n), _) => vec![n],
        (None, Some(k)) => {
            if k < 4 {
                return Err(CliError::usage(format!(
                    "--max-n must be at least 4, got {k}"
                )));
            }
            (4..=k).collect()
        }
        (None, None) => return Err(CliError::usage("verify needs --n or --max-n")),
    };
    let mut out = Vec::new();
    for check in checks {
        for &n in &ns {
            if n < check.min_n {
                if sweep || plan.check == "all" {
                    continue;
                }
                return Err(CliError::usage(format!(
                    "{} needs n >= {}, got n = {n}",
                    check.id, check.min_n
                )));
            }
            let limit = limit_for(check.cost, limits);
            if n > limit {
                if sweep || plan.check == "all" {
                    let _ = writeln!(
                        err,
                        "note: skipping {} at n = {n} (budget n <= {limit})",
                        check.id
                    );
                    continue;
                }
                require_within(check.id, n, limit)?;
            }
            let ranks = check.ranks.range(n);
            match (check.ranks, plan.r) {
                (Ranks::None, Some(_)) if plan.check != "all" => {
                    return Err(CliError::usage(format!("{} does not take --r", check.id)));
                }
                (Ranks::None, _) => out.push(Cell { check, n, r: None }),
                (_, Some(r)) => {
                    if !ranks.contains(&r) {
                        if plan.check == "all" {
                            continue;
                        }
                        return Err(CliError::usage(format!(
                            "{} at n = {n} needs r in {:?}, got r = {r}",
                            check.id,
                            (ranks.first(), ranks.last())
                        )));
                    }
                    out.push(Cell {
                        check,
                        n,
                        r: Some(r),
                    });
                }
                (_, None) => out.extend(ranks.into_iter().map(|r| Cell {
                    check,
                    n,
                    r: Some(r),
                })),
            }
        }
    }
    Ok(out)
}

fn run_cell(cell: &Cell, seed: u64) -> Result<VerificationRun, orddec::Error> {
    let start = Instant::now();
    let details = match (cell.check.run)(cell.n, cell.r.unwrap_or(0), seed) {
        Ok(d) => d,
        Err(e @ orddec::Error::Budget { .. }) => return Err(e),
        Err(e) => vec![Mismatch {
            subject: "internal error".into(),
            expected: "check completes".into(),
            found: e.to_string(),
        }],
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(VerificationRun::new(
        cell.check.id,
        cell.n,
        cell.r,
        details,
        elapsed_ms,
    ))
}

/// Runs every requested (check, n, r) cell and reports in deterministic order.
pub fn run(
    plan: &Plan,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let limits = Limits::with_override(plan.budget, err);
    let cells = cells(plan, &limits, err)?;
    let runs = cells
        .par_iter()
        .map(|c| run_cell(c, plan.seed))
        .collect::<Result<Vec<_>, _>>()?;
    write_runs(&runs, format, out)?;
    let failed = runs.iter().filter(|r| r.status == Status::Fail).count();
    if plan.check == "all" || plan.max_n.is_some() {
        let _ = writeln!(
            err,
            "{} run(s), {} passed, {failed} failed",
            runs.len(),
            runs.len() - failed
        );
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn write_runs(runs: &[VerificationRun], format: Format, out: &mut dyn Write) -> CliResult<()> {
    match format {
        Format::Json => {
            for run in runs {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(run).expect("run serializes")
                )?;
            }
        }
        Format::Pretty => {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(runs).expect("runs serialize")
            )?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["check_id", "n", "r", "status", "mismatches", "elapsed_ms"])?;
            for run in runs {
                w.write_record([
                    run.check_id.clone(),
                    run.n.to_string(),
                    run.r.map(|r| r.to_string()).unwrap_or_default(),
                    if run.status == Status::Pass {
                        "pass"
                    } else {
                        "fail"
                    }
                    .to_string(),
                    run.details.len().to_string(),
                    run.elapsed_ms.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Lines => {
            for run in runs {
                let verdict = if run.status == Status::Pass {
                    "PASS"
                } else {
                    "FAIL"
                };
                let r = run.r.map(|r| format!(" r={r}")).unwrap_or_default();
                writeln!(
                    out,
                    "{verdict} {} n={}{r} ({} ms)",
                    run.check_id, run.n, run.elapsed_ms
                )?;
                for d in &run.details {
                    writeln!(
                        out,
                        "    {}: expected {}, found {}",
                        d.subject, d.expected, d.found
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn members(n: usize, family: Family) -> orddec::Result<SemigroupSet> {
    enumerate(&FamilySelector::new(n, family)?)
}

fn counted(n: usize, family: Family) -> orddec::Result<BigUint> {
    count_by_enumeration(&FamilySelector::new(n, family)?)
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

fn prop1(n: usize, r: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let j = members(n, Family::J { rank: r })?;
    f.eq(format!("|J_{{{n},{r}}}|"), card_j(n, r)?, big(j.len()));
    for m in r..=(n + 2 - r) {
        let slice = j.iter().filter(|a| a.ord_degree() == Ok(m)).count();
        f.eq(
            format!("|G({n},{r},{m})|"),
            card_g_slice(n, r, m)?,
            big(slice),
        );
    }
    if n >= 5 {
        let expected = if r <= max_reversing_rank(n - 1) {
            card_j(n - 1, r)?
        } else {
            big(0)
        };
        f.eq(
            format!("|N(J_{{{n},{r}}})|"),
            expected,
            counted(n, Family::J { rank: r }.nilpotent())?,
        );
    }
    Ok(f.0)
}

fn lemma2(n: usize, _: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let rd = members(n, Family::RdStar { max_rank: None })?;
    f.eq(format!("|RD*_{n}|"), card_rd_star(n)?, big(rd.len()));
    for m in 3..n {
        let slice = rd.iter().filter(|a| a.ord_degree() == Ok(m)).count();
        f.eq(
            format!("|{{α ∈ RD*_{n} : ord(α) = {m}}}|"),
            card_rd_star_ord_slice(n, m)?,
            big(slice),
        );
    }
    if n >= 5 {
        let nil = counted(n, Family::RdStar { max_rank: None }.nilpotent())?;
        f.eq(format!("|N(RD*_{n})|"), card_rd_star(n - 1)?, nil);
    }
    Ok(f.0)
}

fn cardinality(n: usize, r: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    f.eq(
        format!("|ORD({n},{r})|"),
        card_ord(n, r)?,
        counted(n, Family::ord(r))?,
    );
    if n >= 5 {
        let nil = counted(n, Family::ord(r).nilpotent())?;
        f.eq(
            format!("|N(ORD({n},{r}))|"),
            card_nilpotent_ord(n, r)?,
            nil.clone(),
        );
        f.eq(
            format!("|N(ORD({n},{r}))| vs |ORD({},{r})|", n - 1),
            card_ord(n - 1, r)?,
            nil,
        );
    }
    if r == n - 1 {
        let full = counted(n, Family::Ord { max_rank: None })?;
        f.eq(format!("|ORD_{n}|"), card_ord_full(n)?, full);
    }
    Ok(f.0)
}

fn opd_card(n: usize, r: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    f.eq(
        format!("|OPD({n},{r})|"),
        card_opd(n, r)?,
        counted(n, Family::opd(r))?,
    );
    Ok(f.0)
}

fn rothe_hagen(n: usize, r: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let (lhs, rhs) = rothe_hagen_specialized(n, r)?;
    f.eq(format!("convolution sum at n={n}, r={r}"), rhs.clone(), lhs);
    f.eq(
        format!("C({}, {}) vs |J_{{{n},{r}}}|", n + 1, 2 * r - 1),
        rhs,
        card_j(n, r)?,
    );
    Ok(f.0)
}

fn prop4(n: usize, r: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let ord = members(n, Family::ord(r))?;
    for c in c_set(n, r)?.iter() {
        if let Some((u, v)) = find_decomposition(c, &ord, SearchMode::Pruned)? {
            f.0.push(Mismatch {
                subject: format!("{c} in ORD({n},{r})"),
                expected: "undecomposable".into(),
                found: format!("({u}) · ({v})"),
            });
        }
    }
    Ok(f.0)
}

fn lemma5(n: usize, r: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    for a in members(n, Family::rd_star(r))?.iter() {
        match factorize(a, n, r) {
            Ok(w) => {
                if let Err(reason) = w.verify(r) {
                    f.0.push(Mismatch {
                        subject: format!("factorization of {a}"),
                        expected: "verified witness".into(),
                        found: reason,
                    });
                }
            }
            Err(e) => f.0.push(Mismatch {
                subject: format!("factorization of {a}"),
                expected: "a witness".into(),
                found: e.to_string(),
            }),
        }
    }
    Ok(f.0)
}

fn prop6(n: usize, r: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let ord = members(n, Family::ord(r))?;
    let gens = minimal_generating_set(n, r)?;
    for m in 3..n {
        let fixes = |x: &Transformation| x.is_in_rd_star() && x.fix_set() == [1, m];
        let pruned = SemigroupSet::from_elements(n, ord.iter().filter(|x| !fixes(x)).cloned())?;
        f.holds(
            format!("ORD({n},{r}) without fix {{1,{m}}} elements"),
            close(&pruned)? != ord,
            "a proper subsemigroup",
            "generates ORD(n,r)",
        );
        let in_gens = gens.iter().filter(|x| fixes(x)).count();
        f.eq(format!("generators with fix {{1,{m}}}"), 1, in_gens);
    }
    Ok(f.0)
}

fn thm7(n: usize, r: usize, seed: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let ord = members(n, Family::ord(r))?;
    let gens = minimal_generating_set(n, r)?;
    f.eq(
        format!("|C ∪ G| at ({n},{r})"),
        rank_ord(n, r)?,
        big(gens.len()),
    );
    let closure = close(&gens)?;
    f.eq(format!("|⟨C ∪ G⟩| at ({n},{r})"), ord.len(), closure.len());
    f.holds(
        "⟨C ∪ G⟩ = ORD(n,r)",
        closure == ord,
        "equal sets",
        "different sets",
    );
    for g in gens.iter() {
        f.holds(
            format!("C ∪ G without {g}"),
            !is_generating(&gens.without(g), &ord)?,
            "not generating",
            "still generates",
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| &ord.as_slice()[rng.gen_range(0..ord.len())];
    for _ in 0..SPOT_CHECK_TRIPLES {
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        f.holds(
            format!("({a})({b})({c})"),
            a.then(b).then(c) == a.then(&b.then(c)),
            "associative",
            "not associative",
        );
    }
    Ok(f.0)
}

fn prop8(n: usize, r: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let ord = members(n, Family::ord(r))?;
    let rhat = hat_r(n, r)?.value;
    for m in 3..n {
        let lam = lambda(n, rhat, m)?;
        if m + rhat >= n + 2 {
            if let Some((u, v)) = find_decomposition(&lam, &ord, SearchMode::Pruned)? {
                f.0.push(Mismatch {
                    subject: format!("λ_{{{m},{rhat}}} = {lam}"),
                    expected: "undecomposable".into(),
                    found: format!("({u}) · ({v})"),
                });
            }
        } else {
            let (a, b) = alpha_beta_pair(n, rhat, m)?;
            f.eq(format!("α·β for m = {m}"), lam.clone(), a.then(&b));
            f.holds(
                format!("factors of λ_{{{m},{rhat}}}"),
                ord.contains(&a) && ord.contains(&b) && a != lam && b != lam,
                "proper factors in ORD(n,r)",
                format!("({a}) · ({b})"),
            );
        }
    }
    Ok(f.0)
}

fn lemma9(n: usize, r: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let rhat = hat_r(n, r)?.value;
    let opd = members(n, Family::opd(r))?;
    for m in 3..=(n + 1 - rhat) {
        let l = l_set(n, r, m)?;
        let p = m.saturating_sub(rhat);
        let mut transversal = vec![1];
        transversal.extend(m..=(2 * m - p - 2));
        for beta in l.iter() {
            let eps = idempotent_with(&beta.kernel(), &transversal)?;
            f.holds(
                format!("ε for {beta}"),
                opd.contains(&eps) && eps.is_idempotent(),
                "idempotent of OPD(n,r)",
                &eps,
            );
            for alpha in l.iter() {
                f.eq(format!("ε·({alpha})"), beta.clone(), eps.then(alpha));
            }
        }
        for alpha in l.iter() {
            let generated = close(&opd.with(alpha.clone())?)?;
            f.holds(
                format!("L_{{{m},{rhat}}} ⊆ ⟨OPD({n},{r}), {alpha}⟩"),
                l.is_subset(&generated),
                "contained",
                "not contained",
            );
        }
    }
    Ok(f.0)
}

fn lemma10(n: usize, r: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let rhat = hat_r(n, r)?.value;
    let ord = members(n, Family::ord(r))?;
    for m in 3..=(n + 1 - rhat) {
        let rest = ord.difference(&l_set(n, r, m)?)?;
        let subject = format!("ORD({n},{r}) \\ L_{{{m},{rhat}}}");
        f.holds(
            subject.clone(),
            is_subsemigroup(&rest),
            "closed",
            "not closed",
        );
        f.holds(
            subject,
            is_maximal_in(&rest, &ord)?,
            "maximal",
            "not maximal",
        );
    }
    Ok(f.0)
}

fn thm8(n: usize, r: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let ord = members(n, Family::ord(r))?;
    let descriptors = maximal_descriptors(n, r)?;
    f.eq(
        format!("descriptor count at ({n},{r})"),
        rank_ord(n, r)?,
        big(descriptors.len()),
    );
    let mut realized = BTreeSet::new();
    for d in &descriptors {
        let s = d.realize_in(&ord)?;
        f.holds(
            d.to_json(),
            is_maximal_in(&s, &ord)?,
            "maximal",
            "not maximal",
        );
        realized.insert(s);
    }
    f.eq("distinct realized sets", descriptors.len(), realized.len());
    if (n, r) == (4, 3) {
        let searched: BTreeSet<SemigroupSet> =
            exhaustive_maximal_search(&ord)?.into_iter().collect();
        f.eq(
            "maximal subsemigroups found by exhaustive search",
            realized.len(),
            searched.len(),
        );
        f.holds(
            "exhaustive search vs descriptors",
            searched == realized,
            "the same sets",
            "different sets",
        );
    }
    Ok(f.0)
}

fn thm9(n: usize, _: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let whole = members(n, Family::Ord { max_rank: None })?;
    let base = members(n, Family::ord(n - 1))?;
    let descriptors = maximal_descriptors_full(n)?;
    f.eq(
        format!("descriptor count for ORD_{n}"),
        rank_ord(n, n - 1)? + big(1),
        big(descriptors.len()),
    );
    f.eq(
        format!("rank(ORD_{n})"),
        rank_ord_full(n)?,
        big(descriptors.len()),
    );
    for d in &descriptors {
        let s = d.realize_in(&base)?;
        f.holds(
            d.to_json(),
            is_maximal_in(&s, &whole)?,
            "maximal",
            "not maximal",
        );
    }
    Ok(f.0)
}

fn psi_bijection(n: usize, _: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let source = members(n - 1, Family::RdStar { max_rank: None })?;
    let target = members(n, Family::RdStar { max_rank: None }.nilpotent())?;
    let images: BTreeSet<Transformation> = source.iter().map(psi_hat).collect();
    f.eq("distinct images", source.len(), images.len());
    f.holds(
        format!("ψ(RD*_{}) = N(RD*_{n})", n - 1),
        images.iter().eq(target.iter()),
        "equal sets",
        format!("{} images vs {} nilpotents", images.len(), target.len()),
    );
    for a in source.iter() {
        f.eq(format!("rank of ψ({a})"), a.rank(), psi_hat(a).rank());
    }
    Ok(f.0)
}

fn eq1_constraints(n: usize, _: usize, _: u64) -> orddec::Result<Vec<Mismatch>> {
    let mut f = Findings::default();
    let cap = max_reversing_rank(n);
    for a in members(n, Family::RdStar { max_rank: None })?.iter() {
        let r = a.rank();
        let top = *a.image().last().expect("nonempty image");
        let least = (1..=n)
            .find(|&x| a.apply(x) != 1)
            .expect("RD* maps are not constant");
        f.holds(
            format!("{a}"),
            r <= top && top <= least && r <= cap,
            "r <= a_r <= min(X_n \\ 1α⁻¹) and r <= ⌈(n+1)/2⌉",
            format!("r = {r}, a_r = {top}, min = {least}"),
        );
    }
    Ok(f.0)
}
