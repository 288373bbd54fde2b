//! Seeded execution of an experiment grid with resumable CSV output.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use agemoa_core::run_until_covered;
use agemoa_core::seed::{derive_seed, stable_hash};
use rayon::prelude::*;

use crate::config::{Cell, ExperimentConfig};
use crate::records::{csv_writer, read_records, RunRecord, CSV_HEADER};
use crate::HarnessError;

/// One pending run.
#[derive(Debug, Clone)]
struct Job {
    cell: usize,
    run: usize,
    seed: u64,
}

/// Textual identity of a cell; hashed into every run seed of that cell.
pub fn cell_key(cell: &Cell) -> String {
    let tau = cell.tau.map(|t| t.to_string()).unwrap_or_default();
    format!(
        "{}|{}|{}|{}|{}|{}|{}",
        cell.algorithm,
        cell.spec.kind(),
        cell.spec.n(),
        cell.spec.m(),
        cell.spec.k(),
        cell.mu,
        tau
    )
}

/// Seed of run `run` in `cell`. Thread count and resume points never change
/// it.
pub fn run_seed(master_seed: u64, cell: &Cell, run: usize) -> u64 {
    derive_seed(
        master_seed,
        &[stable_hash(cell_key(cell).as_bytes()), run as u64],
    )
}

fn record_key(r: &RunRecord) -> String {
    let tau = r.tau.map(|t| t.to_string()).unwrap_or_default();
    format!(
        "{}|{}|{}|{}|{}|{}|{}",
        r.algorithm, r.kind, r.n, r.m, r.k, r.mu, tau
    )
}

fn jobs(config: &ExperimentConfig, cells: &[Cell]) -> Vec<Job> {
    cells
        .iter()
        .enumerate()
        .flat_map(|(c, cell)| {
            (0..config.runs).map(move |run| Job {
                cell: c,
                run,
                seed: run_seed(config.master_seed, cell, run),
            })
        })
        .collect()
}

fn pool(threads: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| HarnessError::Config(format!("cannot start worker pool: {e}")))
}

fn execute(
    cells: &[Cell],
    batch: &[Job],
    pool: &rayon::ThreadPool,
) -> Result<Vec<RunRecord>, HarnessError> {
    pool.install(|| {
        batch
            .par_iter()
            .map(|job| {
                let cell = &cells[job.cell];
                let strategy = cell.algorithm.strategy(cell.tau.unwrap_or(0));
                let result = run_until_covered(
                    &cell.spec,
                    strategy,
                    cell.mu,
                    job.seed,
                    cell.max_iterations,
                )?;
                Ok(RunRecord::new(cell, job.run, &result))
            })
            .collect()
    })
}

/// Runs the whole grid in memory. Results are in cell order, then run order.
pub fn run_experiment(
    config: &ExperimentConfig,
    threads: usize,
) -> Result<Vec<RunRecord>, HarnessError> {
    let cells = config.cells()?;
    let jobs = jobs(config, &cells);
    execute(&cells, &jobs, &pool(threads)?)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Loads the records already present at `path`, dropping a torn final line
/// left by an interrupted write.
fn load_existing(path: &Path) -> Result<Vec<RunRecord>, HarnessError> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io_err(path)(e)),
    };
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let complete = match text.rfind('\n') {
        Some(end) => &text[..=end],
        None => "",
    };
    if complete.len() != text.len() {
        let file = OpenOptions::new()
            .write(true)
            .open(path)
            .map_err(io_err(path))?;
        file.set_len(complete.len() as u64).map_err(io_err(path))?;
    }
    if complete.is_empty() {
        return Ok(Vec::new());
    }
    read_records(complete.as_bytes()).map_err(|message| HarnessError::Csv {
        path: path.to_path_buf(),
        message,
    })
}

fn write_all(path: &Path, records: &[RunRecord]) -> Result<(), HarnessError> {
    let tmp = PathBuf::from(format!("{}.tmp", path.display()));
    {
        let file = File::create(&tmp).map_err(io_err(&tmp))?;
        let mut out = BufWriter::new(file);
        crate::records::write_records(&mut out, records).map_err(|e| HarnessError::Csv {
            path: tmp.clone(),
            message: e.to_string(),
        })?;
        out.flush().map_err(io_err(&tmp))?;
    }
    fs::rename(&tmp, path).map_err(io_err(path))
}

/// Runs the grid and persists every record to `path`.
///
/// Records are appended in cell order, then run order, and flushed after
/// each batch of `threads` runs, so an interrupted experiment resumes where it
/// stopped: rows already in the file are kept and their runs skipped. A row
/// whose seed disagrees with the configuration aborts with
/// [`HarnessError::ResumeMismatch`]. `on_record` sees every new record in
/// commit order.
///
/// Returns all records of the grid, old and new, in canonical order.
pub fn run_experiment_to(
    config: &ExperimentConfig,
    path: &Path,
    threads: usize,
    mut on_record: impl FnMut(&RunRecord),
) -> Result<Vec<RunRecord>, HarnessError> {
    let cells = config.cells()?;
    let all_jobs = jobs(config, &cells);
    let pool = pool(threads)?;

    // Fail on an unwritable destination before spending any compute.
    OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(io_err(path))?;
    let existing = load_existing(path)?;

    let index: BTreeMap<(String, usize), usize> = all_jobs
        .iter()
        .enumerate()
        .map(|(i, job)| ((cell_key(&cells[job.cell]), job.run), i))
        .collect();
    let mut done: Vec<Option<RunRecord>> = vec![None; all_jobs.len()];
    // Kept rows that form a prefix of the grid leave the file in canonical
    // order after appending; anything else is rewritten once at the end.
    let mut in_order = true;
    for (pos, record) in existing.into_iter().enumerate() {
        let key = (record_key(&record), record.run);
        let Some(&i) = index.get(&key) else {
            return Err(HarnessError::ResumeMismatch(format!(
                "row {} ({} run {}) is not part of this experiment",
                pos + 2,
                key.0,
                key.1
            )));
        };
        if record.seed != all_jobs[i].seed {
            return Err(HarnessError::ResumeMismatch(format!(
                "row {} ({} run {}) has seed {}, expected {}",
                pos + 2,
                key.0,
                key.1,
                record.seed,
                all_jobs[i].seed
            )));
        }
        if done[i].replace(record).is_some() {
            return Err(HarnessError::ResumeMismatch(format!(
                "duplicate row for {} run {}",
                key.0, key.1
            )));
        }
        in_order &= i == pos;
    }

    let pending: Vec<Job> = all_jobs
        .iter()
        .enumerate()
        .filter(|(i, _)| done[*i].is_none())
        .map(|(_, job)| job.clone())
        .collect();
    let file = OpenOptions::new()
        .append(true)
        .open(path)
        .map_err(io_err(path))?;
    let fresh = file.metadata().map_err(io_err(path))?.len() == 0;
    let mut writer = csv_writer(BufWriter::new(file), false);
    let csv_err = |e: csv::Error| HarnessError::Csv {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    if fresh {
        writer
            .write_record(CSV_HEADER.split(','))
            .map_err(csv_err)?;
        writer.flush().map_err(io_err(path))?;
    }

    let batch = pool.current_num_threads().max(1);
    for chunk in pending.chunks(batch) {
        let records = execute(&cells, chunk, &pool)?;
        for (job, record) in chunk.iter().zip(records) {
            writer.serialize(&record).map_err(csv_err)?;
            on_record(&record);
            let i = index[&(cell_key(&cells[job.cell]), job.run)];
            done[i] = Some(record);
        }
        writer.flush().map_err(io_err(path))?;
    }
    drop(writer);

    let records: Vec<RunRecord> = done
        .into_iter()
        .map(|r| r.expect("every job completed"))
        .collect();
    if !in_order {
        write_all(path, &records)?;
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(runs: usize) -> ExperimentConfig {
        ExperimentConfig::from_toml_str(&format!(
            "kind = \"ojzj\"\nn = [6, 8]\nk = 2\nruns = {runs}\nmaster_seed = 11\n"
        ))
        .unwrap()
    }

    #[test]
    fn seeds_depend_on_cell_and_run_only() {
        let cfg = tiny(2);
        let cells = cfg.cells().unwrap();
        assert_eq!(cell_key(&cells[0]), "classic|ojzj|6|2|2|12|");
        assert_eq!(cell_key(&cells[2]), "aging|ojzj|6|2|2|12|6");
        let seeds: std::collections::BTreeSet<u64> =
            jobs(&cfg, &cells).iter().map(|j| j.seed).collect();
        assert_eq!(seeds.len(), 12);
        assert_eq!(run_seed(11, &cells[1], 1), run_seed(11, &cells[1], 1));
    }

    #[test]
    fn in_memory_matches_file_and_invariants_hold() {
        let cfg = tiny(3);
        let mem = run_experiment(&cfg, 2).unwrap();
        assert_eq!(mem.len(), 18);
        for r in &mem {
            assert_eq!(r.evaluations, r.mu as u64 + r.iterations);
            assert!(r.covered_all);
            assert_eq!(r.first_hit_k, None);
        }
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let mut seen = 0;
        let written = run_experiment_to(&cfg, &path, 1, |_| seen += 1).unwrap();
        assert_eq!((written, seen), (mem.clone(), 18));
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(read_records(text.as_bytes()).unwrap(), mem);
    }
}
