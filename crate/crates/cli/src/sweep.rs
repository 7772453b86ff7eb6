//! Every level of every prime in a range, computed on a thread pool and
//! written in `(p, k)` order.

use std::io::{self, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use markoff_core::ff::PrimeField;
use markoff_core::surface::{Budget, OrbitRecord};
use markoff_core::Error;

use crate::commands::check_level;

pub const CSV_HEADER: &str = "p,k,total,n_orbits,cage_size,exceptional_total,strong_approx_ok,count_formula_ok,chen_ok,conjecture_ok_or_na";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepFormat {
    Csv,
    Jsonl,
}

/// One row of a sweep. Booleans serialize as 0/1; the conjecture column is
/// "na" at non-generic levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub p: u32,
    pub k: u32,
    pub total: usize,
    pub n_orbits: usize,
    pub cage_size: usize,
    pub exceptional_total: usize,
    #[serde(serialize_with = "bit")]
    pub strong_approx_ok: bool,
    #[serde(serialize_with = "bit")]
    pub count_formula_ok: bool,
    #[serde(serialize_with = "bit")]
    pub chen_ok: bool,
    pub conjecture_ok_or_na: String,
}

fn bit<S: serde::Serializer>(b: &bool, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u8(*b as u8)
}

/// A JSONL line: the level report with the two verdict columns added.
#[derive(Serialize)]
struct JsonRow<'a> {
    p: u32,
    k: u32,
    total: usize,
    orbits: &'a [OrbitRecord],
    exceptional_total: usize,
    strong_approx_ok: bool,
    count_formula_ok: bool,
    chen_ok: bool,
    /// `true`/`false`, or "na"
    conjecture_ok_or_na: serde_json::Value,
}

/// Full results for one `(p, k)` cell.
pub struct Cell {
    pub row: SweepRow,
    orbits: Vec<OrbitRecord>,
}

fn compute_cell(field: &PrimeField, k: u32, budget: &Budget) -> Result<Cell, Error> {
    let v = check_level(field, field.elem(k as i64), budget)?;
    let r = v.report;
    let row = SweepRow {
        p: r.p,
        k: r.k,
        total: r.total,
        n_orbits: r.orbits.len(),
        cage_size: r.cage_size(),
        exceptional_total: r.exceptional_total,
        strong_approx_ok: r.strong_approx_ok,
        count_formula_ok: r.count_formula_ok,
        chen_ok: v.chen_ok,
        conjecture_ok_or_na: match v.conjecture_ok {
            None => "na".into(),
            Some(ok) => (ok as u8).to_string(),
        },
    };
    Ok(Cell {
        row,
        orbits: r.orbits,
    })
}

/// Computes every cell for `primes` on `jobs` threads. The result is in
/// `(p, k)` order whatever the scheduling.
pub fn run(primes: &[u64], jobs: usize, budget: &Budget) -> Result<Vec<Cell>, Error> {
    let fields = primes
        .iter()
        .map(|&p| PrimeField::new(p))
        .collect::<Result<Vec<_>, _>>()?;
    let cells: Vec<(usize, u32)> = fields
        .iter()
        .enumerate()
        .flat_map(|(i, f)| (0..f.p()).map(move |k| (i, k)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        cells
            .par_iter()
            .map(|&(i, k)| compute_cell(&fields[i], k, budget))
            .collect()
    })
}

pub fn write_rows(out: impl Write, cells: &[Cell], format: SweepFormat) -> io::Result<()> {
    let mut out = BufWriter::new(out);
    match format {
        SweepFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(&mut out);
            w.write_record(CSV_HEADER.split(','))?;
            for c in cells {
                w.serialize(&c.row)?;
            }
            w.flush()?;
        }
        SweepFormat::Jsonl => {
            for c in cells {
                let r = &c.row;
                let line = JsonRow {
                    p: r.p,
                    k: r.k,
                    total: r.total,
                    orbits: &c.orbits,
                    exceptional_total: r.exceptional_total,
                    strong_approx_ok: r.strong_approx_ok,
                    count_formula_ok: r.count_formula_ok,
                    chen_ok: r.chen_ok,
                    conjecture_ok_or_na: match r.conjecture_ok_or_na.as_str() {
                        "na" => "na".into(),
                        bit => (bit == "1").into(),
                    },
                };
                serde_json::to_writer(&mut out, &line)?;
                out.write_all(b"\n")?;
            }
        }
    }
    out.flush()
}

/// Writes to a temporary file beside `path` and renames it into place, so
/// a failed run leaves nothing behind.
pub fn write_atomic(path: &Path, cells: &[Cell], format: SweepFormat) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    write_rows(tmp.as_file_mut(), cells, format)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Convenience for callers that want the bytes.
pub fn render(cells: &[Cell], format: SweepFormat) -> Vec<u8> {
    let mut buf = Vec::new();
    write_rows(&mut buf, cells, format).expect("writing to memory");
    buf
}
