use std::io::Write;
use std::time::Instant;

use num_bigint::BigUint;
use orddec::counting::{
    card_g_slice, card_j, card_nilpotent_ord, card_opd, card_ord, card_ord_full, card_rd_star,
    card_rd_star_ord_slice, catalan, hat_r, max_reversing_rank, narayana, rank_ord, CountReport,
};
use orddec::enumeration::{for_each, MAX_ENUMERATION_N};
use orddec::generators::{c_set, factorize, g_set};
use orddec::{
    enumerate as enumerate_family, is_maximal_in, maximal_descriptors, maximal_descriptors_full,
    DescriptorKind, Family, FamilySelector, MaximalDescriptor, Transformation,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::{
    CliError, CliResult, FamilyArgs, FamilyName, Format, MaximalArgs, EXIT_FAILURE, EXIT_OK,
};

/// Largest chain sizes the default budgets allow.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Limits {
    pub enumeration: usize,
    pub closure: usize,
    pub maximality: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            enumeration: 10,
            closure: 8,
            maximality: 6,
        }
    }
}

impl Limits {
    /// Defaults, or every limit set to `budget` (with a warning on `err`).
    pub fn with_override(budget: Option<usize>, err: &mut dyn Write) -> Self {
        match budget {
            None => Self::default(),
            Some(b) => {
                let _ = writeln!(err, "warning: budget raised to n <= {b}; runs may be slow");
                Self {
                    enumeration: b,
                    closure: b,
                    maximality: b,
                }
            }
        }
    }
}

pub(crate) fn require_within(what: &str, n: usize, limit: usize) -> CliResult<()> {
    if n > limit {
        return Err(CliError::budget(format!(
            "{what} at n = {n} exceeds the budget n <= {limit}; pass --budget to raise it"
        )));
    }
    Ok(())
}

struct Resolved {
    label: String,
    family: Family,
    ord_slice: Option<usize>,
}

fn resolve(args: &FamilyArgs) -> CliResult<Resolved> {
    let FamilyArgs { n, r, m, family } = *args;
    let needs_m = matches!(family, FamilyName::RdstarOrd | FamilyName::GSlice);
    if m.is_some() && !needs_m {
        return Err(CliError::usage(
            "--m only applies to rdstar-ord and g-slice",
        ));
    }
    let no_r = matches!(
        family,
        FamilyName::AllDecreasing | FamilyName::RdstarOrd | FamilyName::NilpotentRdstar
    );
    if r.is_some() && no_r {
        return Err(CliError::usage(format!(
            "--r does not apply to {}",
            name_of(family)
        )));
    }
    let need_r = || r.ok_or_else(|| CliError::usage(format!("{} needs --r", name_of(family))));
    let need_m = || m.ok_or_else(|| CliError::usage(format!("{} needs --m", name_of(family))));
    let mut label = name_of(family).to_string();
    let mut ord_slice = None;
    let fam = match family {
        FamilyName::Ord => Family::Ord { max_rank: r },
        FamilyName::Opd => Family::Opd { max_rank: r },
        FamilyName::Rdstar => Family::RdStar { max_rank: r },
        FamilyName::RdstarOrd => {
            let m = need_m()?;
            label = format!("{label}:m={m}");
            ord_slice = Some(m);
            Family::RdStar { max_rank: None }
        }
        FamilyName::J => Family::J { rank: need_r()? },
        FamilyName::GSlice => {
            let m = need_m()?;
            label = format!("{label}:m={m}");
            Family::GSlice {
                rank: need_r()?,
                ord: m,
            }
        }
        FamilyName::Chain => Family::Chain { max_rank: r },
        FamilyName::AllDecreasing => Family::AllDecreasing,
        FamilyName::NilpotentOrd => Family::ord(need_r()?).nilpotent(),
        FamilyName::NilpotentRdstar => Family::RdStar { max_rank: None }.nilpotent(),
        FamilyName::NilpotentJ => Family::J { rank: need_r()? }.nilpotent(),
    };
    if n == 0 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    Ok(Resolved {
        label,
        family: fam,
        ord_slice,
    })
}

fn name_of(f: FamilyName) -> &'static str {
    match f {
        FamilyName::Ord => "ord",
        FamilyName::Opd => "opd",
        FamilyName::Rdstar => "rdstar",
        FamilyName::RdstarOrd => "rdstar-ord",
        FamilyName::J => "j",
        FamilyName::GSlice => "g-slice",
        FamilyName::Chain => "chain",
        FamilyName::AllDecreasing => "all-decreasing",
        FamilyName::NilpotentOrd => "nilpotent-ord",
        FamilyName::NilpotentRdstar => "nilpotent-rdstar",
        FamilyName::NilpotentJ => "nilpotent-j",
    }
}

fn closed_form(args: &FamilyArgs) -> CliResult<BigUint> {
    let FamilyArgs { n, r, m, family } = *args;
    let need_n = |min: usize| {
        if n < min {
            Err(CliError::usage(format!(
                "{} needs n >= {min}, got {n}",
                name_of(family)
            )))
        } else {
            Ok(())
        }
    };
    let r_or = |d: usize| r.unwrap_or(d);
    let value = match family {
        FamilyName::Ord => match r {
            Some(r) => card_ord(n, r)?,
            None => card_ord_full(n)?,
        },
        FamilyName::Opd => card_opd(n, r_or(n))?,
        FamilyName::Rdstar => match r {
            None => card_rd_star(n)?,
            Some(r) => {
                need_n(4)?;
                if r < 1 || r > n {
                    return Err(CliError::usage(format!("need 1 <= r <= n, got r = {r}")));
                }
                let top = r.min(max_reversing_rank(n));
                let mut total = BigUint::from(0u32);
                for k in 3..=top {
                    total += card_j(n, k)?;
                }
                total
            }
        },
        FamilyName::RdstarOrd => card_rd_star_ord_slice(n, m.unwrap_or_default())?,
        FamilyName::J => card_j(n, r_or(0))?,
        FamilyName::GSlice => card_g_slice(n, r_or(0), m.unwrap_or_default())?,
        FamilyName::Chain => match r {
            None => catalan(n as i64)?,
            Some(r) => {
                if r < 1 || r > n {
                    return Err(CliError::usage(format!("need 1 <= r <= n, got r = {r}")));
                }
                let mut total = BigUint::from(0u32);
                for k in 1..=r {
                    total += narayana(n as i64, k as i64)?;
                }
                total
            }
        },
        FamilyName::AllDecreasing => (1..=n).map(BigUint::from).product(),
        FamilyName::NilpotentOrd => card_nilpotent_ord(n, r_or(0))?,
        FamilyName::NilpotentRdstar => {
            need_n(5)?;
            card_rd_star(n - 1)?
        }
        FamilyName::NilpotentJ => {
            need_n(5)?;
            let r = r_or(0);
            card_j(n, r)?;
            if r <= max_reversing_rank(n - 1) {
                card_j(n - 1, r)?
            } else {
                BigUint::from(0u32)
            }
        }
    };
    Ok(value)
}

fn selector(n: usize, resolved: &Resolved, limit: usize) -> CliResult<FamilySelector> {
    require_within("enumeration", n, limit)?;
    Ok(FamilySelector::new(n, resolved.family.clone())?)
}

/// A big integer as a bare JSON number.
pub(crate) fn big_json(v: &BigUint) -> serde_json::Value {
    serde_json::from_str(&v.to_string()).expect("decimal digits parse as a JSON number")
}

fn count_members(sel: &FamilySelector, ord_slice: Option<usize>) -> CliResult<BigUint> {
    let mut total: u64 = 0;
    for_each(sel, |t| {
        if ord_slice.is_none_or(|m| t.ord_degree() == Ok(m)) {
            total += 1;
        }
    })?;
    Ok(BigUint::from(total))
}

pub(crate) fn count(
    args: &FamilyArgs,
    enumerate: bool,
    budget: Option<usize>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let resolved = resolve(args)?;
    let closed = closed_form(args)?;
    let mut report = CountReport::closed(args.n, args.r, resolved.label.clone(), closed);
    if enumerate {
        let limits = Limits::with_override(budget, err);
        let sel = selector(args.n, &resolved, limits.enumeration)?;
        report = report.with_enumerated(count_members(&sel, resolved.ord_slice)?);
    }
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        )?,
        Format::Pretty => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(CountReport::CSV_HEADER)?;
            w.write_record(report.csv_record())?;
            w.flush()?;
        }
        Format::Lines => {
            let mut line = format!("{} n={}", report.family, report.n);
            if let Some(r) = report.r {
                line += &format!(" r={r}");
            }
            line += &format!(" closed_form={}", report.closed_form);
            if let (Some(e), Some(m)) = (&report.enumerated, report.matches) {
                line += &format!(" enumerated={e} match={m}");
            }
            writeln!(out, "{line}")?;
        }
    }
    Ok(if report.matches == Some(false) {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

pub(crate) fn enumerate(
    args: &FamilyArgs,
    budget: Option<usize>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let resolved = resolve(args)?;
    let limits = Limits::with_override(budget, err);
    let sel = selector(args.n, &resolved, limits.enumeration)?;
    let members: Vec<Transformation> = enumerate_family(&sel)?
        .into_vec()
        .into_iter()
        .filter(|t| resolved.ord_slice.is_none_or(|m| t.ord_degree() == Ok(m)))
        .collect();
    match format {
        Format::Lines => {
            for t in &members {
                writeln!(out, "{t}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["images", "rank"])?;
            for t in &members {
                w.write_record([t.to_string(), t.rank().to_string()])?;
            }
            w.flush()?;
        }
        Format::Json | Format::Pretty => {
            let doc = serde_json::json!({
                "n": args.n,
                "family": resolved.label,
                "r": args.r,
                "count": members.len(),
                "elements": members,
            });
            let text = if format == Format::Json {
                serde_json::to_string(&doc)
            } else {
                serde_json::to_string_pretty(&doc)
            };
            writeln!(out, "{}", text.expect("json serializes"))?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct TableRow {
    n: usize,
    r: usize,
    #[serde(with = "orddec::counting::big_number")]
    card: BigUint,
    #[serde(with = "orddec::counting::opt_big_number")]
    nilpotent: Option<BigUint>,
    #[serde(with = "orddec::counting::big_number")]
    rank: BigUint,
    maximal: usize,
    #[serde(
        skip_serializing_if = "Option::is_none",
        with = "orddec::counting::opt_big_number"
    )]
    card_enum: Option<BigUint>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        with = "orddec::counting::opt_big_number"
    )]
    nilpotent_enum: Option<BigUint>,
}

impl TableRow {
    fn consistent(&self) -> bool {
        let agrees = |closed: Option<&BigUint>, counted: &Option<BigUint>| match (closed, counted) {
            (Some(c), Some(e)) => c == e,
            _ => true,
        };
        agrees(Some(&self.card), &self.card_enum)
            && agrees(self.nilpotent.as_ref(), &self.nilpotent_enum)
    }
}

fn table_row(n: usize, r: usize, enumerate: bool, limit: usize) -> CliResult<TableRow> {
    let nilpotent = if n >= 5 {
        Some(card_nilpotent_ord(n, r)?)
    } else {
        None
    };
    let mut row = TableRow {
        n,
        r,
        card: card_ord(n, r)?,
        nilpotent,
        rank: rank_ord(n, r)?,
        maximal: maximal_descriptors(n, r)?.len(),
        card_enum: None,
        nilpotent_enum: None,
    };
    if enumerate && n <= limit {
        let ord = FamilySelector::new(n, Family::ord(r))?;
        row.card_enum = Some(orddec::count_by_enumeration(&ord)?);
        if n >= 5 {
            let nil = FamilySelector::new(n, Family::ord(r).nilpotent())?;
            row.nilpotent_enum = Some(orddec::count_by_enumeration(&nil)?);
        }
    }
    Ok(row)
}

pub(crate) fn table(
    max_n: usize,
    enumerate: bool,
    budget: Option<usize>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    if max_n < 4 {
        return Err(CliError::usage(format!(
            "--max-n must be at least 4, got {max_n}"
        )));
    }
    require_within("table", max_n, MAX_ENUMERATION_N)?;
    let limit = if enumerate {
        Limits::with_override(budget, err)
            .enumeration
            .min(MAX_ENUMERATION_N)
    } else {
        0
    };
    let cells: Vec<(usize, usize)> = (4..=max_n)
        .flat_map(|n| (3..n).map(move |r| (n, r)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(n, r)| table_row(n, r, enumerate, limit))
        .collect::<CliResult<Vec<_>>>()?;
    let opt = |v: &Option<BigUint>| v.as_ref().map(|x| x.to_string()).unwrap_or_default();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header = vec!["n", "r", "card", "nilpotent", "rank", "maximal"];
            if enumerate {
                header.extend(["card_enum", "nilpotent_enum"]);
            }
            w.write_record(&header)?;
            for row in &rows {
                let mut rec = vec![
                    row.n.to_string(),
                    row.r.to_string(),
                    row.card.to_string(),
                    opt(&row.nilpotent),
                    row.rank.to_string(),
                    row.maximal.to_string(),
                ];
                if enumerate {
                    rec.extend([opt(&row.card_enum), opt(&row.nilpotent_enum)]);
                }
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
        Format::Json => {
            for row in &rows {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(row).expect("row serializes")
                )?;
            }
        }
        Format::Pretty => {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&rows).expect("rows serialize")
            )?;
        }
        Format::Lines => {
            for row in &rows {
                let mut line = format!(
                    "n={} r={} card={} nilpotent={} rank={} maximal={}",
                    row.n,
                    row.r,
                    row.card,
                    row.nilpotent.as_ref().map_or("-".into(), |v| v.to_string()),
                    row.rank,
                    row.maximal
                );
                if let Some(e) = &row.card_enum {
                    line += &format!(" card_enum={e}");
                }
                if let Some(e) = &row.nilpotent_enum {
                    line += &format!(" nilpotent_enum={e}");
                }
                writeln!(out, "{line}")?;
            }
        }
    }
    if rows.iter().all(TableRow::consistent) {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(
            err,
            "error: enumerated column disagrees with the closed form"
        );
        Ok(EXIT_FAILURE)
    }
}

pub(crate) fn generators(
    n: usize,
    r: usize,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let c = c_set(n, r)?;
    let g = g_set(n, r)?;
    let rhat = hat_r(n, r)?.value;
    let header = serde_json::json!({
        "n": n,
        "r": r,
        "rhat": rhat,
        "size": c.len() + g.len(),
        "rank_formula": big_json(&rank_ord(n, r)?),
    });
    match format {
        Format::Json | Format::Pretty => {
            let text = if format == Format::Json {
                serde_json::to_string(&header)
            } else {
                serde_json::to_string_pretty(&header)
            };
            writeln!(out, "{}", text.expect("header serializes"))?;
            for t in c.iter().chain(g.iter()) {
                writeln!(out, "{t}")?;
            }
        }
        Format::Lines => {
            for t in c.iter().chain(g.iter()) {
                writeln!(out, "{t}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["set", "images"])?;
            for t in c.iter() {
                w.write_record(["C".to_string(), t.to_string()])?;
            }
            for t in g.iter() {
                w.write_record(["G".to_string(), t.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

pub(crate) fn factor(
    n: usize,
    r: usize,
    alpha: &str,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let a = Transformation::parse_with_len(alpha, n)
        .map_err(|e| CliError::usage(format!("--alpha: {e}")))?;
    let witness = factorize(&a, n, r)?;
    let verdict = witness.verify(r);
    match format {
        Format::Json | Format::Pretty => {
            let mut doc = serde_json::to_value(&witness).expect("witness serializes");
            doc["verified"] = serde_json::Value::Bool(verdict.is_ok());
            let text = if format == Format::Json {
                serde_json::to_string(&doc)
            } else {
                serde_json::to_string_pretty(&doc)
            };
            writeln!(out, "{}", text.expect("json serializes"))?;
        }
        Format::Lines => {
            for f in &witness.word {
                let class = serde_json::to_value(f.class).expect("class serializes");
                writeln!(out, "{} {}", class.as_str().unwrap_or_default(), f.map)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["position", "class", "map"])?;
            for (i, f) in witness.word.iter().enumerate() {
                let class = serde_json::to_value(f.class).expect("class serializes");
                w.write_record([
                    (i + 1).to_string(),
                    class.as_str().unwrap_or_default().to_string(),
                    f.map.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    match verdict {
        Ok(()) => Ok(EXIT_OK),
        Err(reason) => Err(CliError {
            code: EXIT_FAILURE,
            message: format!("witness does not verify: {reason}"),
        }),
    }
}

struct Verdict {
    maximal: bool,
    elapsed_ms: u64,
}

pub(crate) fn maximal(
    args: &MaximalArgs,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let n = args.n;
    let descriptors = if args.full_semigroup {
        maximal_descriptors_full(n)?
    } else {
        maximal_descriptors(n, args.r.expect("clap requires --r"))?
    };
    let verdicts = if args.verify {
        let limits = Limits::with_override(args.budget, err);
        require_within("maximality verification", n, limits.maximality)?;
        let r = descriptors.first().map_or(n - 1, |d| d.r);
        let base = enumerate_family(&FamilySelector::new(n, Family::ord(r))?)?;
        let whole = if args.full_semigroup {
            enumerate_family(&FamilySelector::new(n, Family::Ord { max_rank: None })?)?
        } else {
            base.clone()
        };
        descriptors
            .iter()
            .map(|d| {
                let start = Instant::now();
                let s = d.realize_in(&base)?;
                let maximal = is_maximal_in(&s, &whole)?;
                Ok(Some(Verdict {
                    maximal,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                }))
            })
            .collect::<CliResult<Vec<_>>>()?
    } else {
        descriptors.iter().map(|_| None).collect()
    };
    write_descriptors(&descriptors, &verdicts, format, out)?;
    let failures = verdicts.iter().flatten().filter(|v| !v.maximal).count();
    if failures > 0 {
        let _ = writeln!(
            err,
            "error: {failures} descriptor(s) failed the maximality battery"
        );
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_OK)
}

fn write_descriptors(
    descriptors: &[MaximalDescriptor],
    verdicts: &[Option<Verdict>],
    format: Format,
    out: &mut dyn Write,
) -> CliResult<()> {
    if format == Format::Csv {
        let mut w = csv::Writer::from_writer(&mut *out);
        let verified = verdicts.iter().any(Option::is_some);
        let mut header = vec!["kind", "n", "r", "parameter", "with_identity"];
        if verified {
            header.extend(["maximal", "elapsed_ms"]);
        }
        w.write_record(&header)?;
        for (d, v) in descriptors.iter().zip(verdicts) {
            let (kind, parameter) = match &d.kind {
                DescriptorKind::RemoveC { alpha } => ("remove_c", alpha.to_string()),
                DescriptorKind::RemoveLambda { m } => ("remove_lambda", m.to_string()),
                DescriptorKind::RemoveL { m } => ("remove_l", m.to_string()),
                DescriptorKind::DropIdentity => ("drop_identity", String::new()),
            };
            let mut rec = vec![
                kind.to_string(),
                d.n.to_string(),
                d.r.to_string(),
                parameter,
                d.with_identity.to_string(),
            ];
            if let Some(v) = v {
                rec.extend([v.maximal.to_string(), v.elapsed_ms.to_string()]);
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
        return Ok(());
    }
    for (d, v) in descriptors.iter().zip(verdicts) {
        let mut doc = serde_json::to_value(d).expect("descriptor serializes");
        if let Some(v) = v {
            doc["maximal"] = v.maximal.into();
            doc["elapsed_ms"] = v.elapsed_ms.into();
        }
        let text = if format == Format::Pretty {
            serde_json::to_string_pretty(&doc)
        } else {
            serde_json::to_string(&doc)
        };
        writeln!(out, "{}", text.expect("json serializes"))?;
    }
    Ok(())
}
