//! The `count`, `orbits`, `verify` and `tower` subcommands.
//!
//! Each one writes to a caller-supplied sink and returns the process exit
//! code: 0 when every theorem-backed check passes, 1 when one fails.

use std::io::{self, Write};

use markoff_core::analytics::{chen_check, conjecture_check, count_formula, is_generic_level};
use markoff_core::ff::{Fp, PrimeField};
use markoff_core::sl2::{classify_pair, display_signed, tower_witness};
use markoff_core::surface::{
    decompose_level, enumerate_level, exceptional_rows, Budget, LevelReport, Triple,
};
use markoff_core::Error;

use crate::args::UsageError;

/// Either a usage problem (exit 2) or an I/O failure writing output.
#[derive(Debug)]
pub enum CommandError {
    Usage(UsageError),
    Io(io::Error),
}

impl From<UsageError> for CommandError {
    fn from(e: UsageError) -> Self {
        CommandError::Usage(e)
    }
}

impl From<io::Error> for CommandError {
    fn from(e: io::Error) -> Self {
        CommandError::Io(e)
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Usage(e.into())
    }
}

pub type CommandResult = Result<i32, CommandError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OrbitFormat {
    Text,
    Json,
    Csv,
}

pub fn count(out: &mut impl Write, field: &PrimeField, k: Fp, budget: &Budget) -> CommandResult {
    let formula = count_formula(field, k);
    let enumerated = enumerate_level(field, k, budget)?.len() as u64;
    let ok = formula == enumerated;
    writeln!(
        out,
        "formula={formula} enumerated={enumerated} {}",
        if ok { "ok" } else { "MISMATCH" }
    )?;
    Ok(if ok { 0 } else { 1 })
}

pub fn orbits(
    out: &mut impl Write,
    field: &PrimeField,
    k: Fp,
    format: OrbitFormat,
    budget: &Budget,
) -> CommandResult {
    let report = match decompose_level(field, k, budget) {
        Ok(r) => r,
        Err(e @ Error::SizeMismatch { .. }) => {
            writeln!(out, "error: {e}")?;
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    match format {
        OrbitFormat::Text => write_orbits_text(out, &report)?,
        OrbitFormat::Json => {
            serde_json::to_writer(&mut *out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        OrbitFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["class", "size", "x", "y", "z"])
                .map_err(io::Error::from)?;
            for o in &report.orbits {
                let t = o.representative;
                w.serialize((o.class, o.size, t.x.value(), t.y.value(), t.z.value()))
                    .map_err(io::Error::from)?;
            }
            w.flush()?;
        }
    }
    Ok(0)
}

fn write_orbits_text(out: &mut impl Write, report: &LevelReport) -> io::Result<()> {
    writeln!(
        out,
        "p={} k={} total={} count_formula={}",
        report.p,
        report.k,
        report.total,
        if report.count_formula_ok {
            "ok"
        } else {
            "MISMATCH"
        }
    )?;
    for o in &report.orbits {
        writeln!(out, "{}({}) rep={}", o.class, o.size, o.representative)?;
    }
    match report.cage_orbits().count() {
        0 if !report.is_singular() => writeln!(out, "cage: empty")?,
        0 => {}
        n => writeln!(out, "cage: {} in {n} orbit(s)", report.cage_size())?,
    }
    let verdict = match (report.is_singular(), report.strong_approx_ok) {
        (true, _) => "N/A",
        (false, true) => "OK",
        (false, false) => "FAIL",
    };
    writeln!(out, "verdict: {verdict}")
}

/// Outcome of the checks run at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelVerdict {
    pub report: LevelReport,
    pub chen_ok: bool,
    /// `None` at non-generic levels.
    pub conjecture_ok: Option<bool>,
}

impl LevelVerdict {
    /// Count formula and Chen divisibility. The exceptional table was
    /// already checked when the report was built.
    pub fn theorem_checks_pass(&self) -> bool {
        self.report.count_formula_ok && self.chen_ok
    }
}

pub fn check_level(field: &PrimeField, k: Fp, budget: &Budget) -> Result<LevelVerdict, Error> {
    let report = decompose_level(field, k, budget)?;
    let chen_ok = chen_check(&report).iter().all(|v| v.holds);
    let conjecture_ok = if is_generic_level(field, k) {
        Some(conjecture_check(&report)?.iter().all(|v| v.holds))
    } else {
        None
    };
    Ok(LevelVerdict {
        report,
        chen_ok,
        conjecture_ok,
    })
}

pub fn verify(
    out: &mut impl Write,
    field: &PrimeField,
    all_levels: bool,
    budget: &Budget,
) -> CommandResult {
    let levels: Vec<Fp> = if all_levels {
        field.elements().collect()
    } else {
        let mut ks: Vec<Fp> = exceptional_rows(field).iter().map(|r| r.level).collect();
        ks.sort();
        ks.dedup();
        ks
    };
    let mut failures = 0usize;
    for k in levels {
        let (line, fatal) = match check_level(field, k, budget) {
            Ok(v) => {
                let fatal = !v.theorem_checks_pass();
                let r = &v.report;
                let sa = match (r.is_singular(), r.strong_approx_ok) {
                    (true, _) => "na",
                    (false, true) => "ok",
                    (false, false) => "FAIL",
                };
                let conj = match v.conjecture_ok {
                    None => "na",
                    Some(true) => "ok",
                    Some(false) => "FAIL",
                };
                let line = format!(
                    "k={} total={} orbits={} count={} table=ok chen={} strong_approx={sa} conjecture={conj}",
                    r.k,
                    r.total,
                    r.orbits.len(),
                    flag(r.count_formula_ok),
                    flag(v.chen_ok),
                );
                (line, fatal)
            }
            Err(e @ Error::SizeMismatch { .. }) => {
                (format!("k={} table=FAIL ({e})", k.value()), true)
            }
            Err(e) => return Err(e.into()),
        };
        failures += fatal as usize;
        writeln!(out, "{line}")?;
    }
    writeln!(
        out,
        "p={}: {}",
        field.p(),
        if failures == 0 {
            "all theorem-backed checks pass".to_string()
        } else {
            format!("{failures} level(s) failed")
        }
    )?;
    Ok(if failures == 0 { 0 } else { 1 })
}

fn flag(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn tower(out: &mut impl Write, field: &PrimeField, t: Triple) -> CommandResult {
    let pair = tower_witness(field, t.x, t.y, t.z);
    let class = classify_pair(&pair)?;
    let commutator = pair.commutator_trace();
    let level = t.level();
    let fricke = commutator == level && pair.trace_map() == t;
    writeln!(out, "A={}", display_signed(&pair.first))?;
    writeln!(out, "B={}", display_signed(&pair.second))?;
    writeln!(out, "class={}", class.class)?;
    writeln!(
        out,
        "fricke: tr[A,B]={} level={} {}",
        commutator.value(),
        level.value(),
        if fricke { "ok" } else { "FAIL" }
    )?;
    Ok(if fricke { 0 } else { 1 })
}
