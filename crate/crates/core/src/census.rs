//! Exhaustive counts of dominant polynomials over coefficient boxes.
//!
//! The general box is every `[a0, .., an]` with `|ai| <= H` and `a0 != 0`;
//! the monic box fixes `a0 = 1`. Only the half with `a0 >= 1` is visited,
//! since `-f` shares its verdict with `f`. With symmetry reduction the map
//! `f -> ±f(-X)`, which flips the sign of every odd-index coefficient, is used
//! as well: a vector whose first nonzero odd-index coefficient is negative is
//! skipped and its partner counted twice. Vectors with no odd-index support
//! are their own partner and count once.

use std::fs::{File, OpenOptions};
use std::hash::{Hash, Hasher};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Mutex, RwLock};
use std::time::Instant;

use fnv::{FnvHashMap, FnvHasher};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dominance::{decide_reporting, DecideOptions};
use crate::exact::{rational_string, round_half_up, serde_rational};
use crate::factor::is_irreducible_primitive_part;
use crate::{Error, IntPolynomial};

/// Full-box vector count above which a census refuses to start.
pub const DEFAULT_CAP: u128 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Monic,
    General,
    Both,
}

impl Family {
    fn wants_monic(self) -> bool {
        matches!(self, Family::Monic | Family::Both)
    }

    fn wants_general(self) -> bool {
        matches!(self, Family::General | Family::Both)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "monic" => Ok(Family::Monic),
            "general" => Ok(Family::General),
            "both" => Ok(Family::Both),
            other => Err(Error::InvalidCensus(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSpec {
    pub degree: usize,
    pub height: u32,
    pub family: Family,
    pub symmetry_reduction: bool,
    pub chunk_count: usize,
    pub filters: bool,
    #[serde(skip)]
    pub allow_large: bool,
    #[serde(skip)]
    pub cap: u128,
}

impl CensusSpec {
    pub fn new(degree: usize, height: u32, family: Family) -> Self {
        CensusSpec {
            degree,
            height,
            family,
            symmetry_reduction: true,
            chunk_count: 1,
            filters: true,
            allow_large: false,
            cap: DEFAULT_CAP,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.degree < 2 {
            return Err(Error::InvalidCensus(format!("degree {} below 2", self.degree)));
        }
        if self.height < 1 {
            return Err(Error::InvalidCensus("height must be at least 1".into()));
        }
        if self.chunk_count < 1 {
            return Err(Error::InvalidCensus("chunk count must be positive".into()));
        }
        if self.degree > 24 || self.height > 1 << 20 {
            return Err(Error::InvalidCensus("box too large to index".into()));
        }
        if self.half_box_len().is_none() {
            return Err(Error::InvalidCensus("box too large to index".into()));
        }
        let estimated = self.estimated_vectors();
        if !self.allow_large && estimated > self.cap {
            return Err(Error::ResourceCap {
                estimated,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Equal in every field that affects the counts.
    fn same_run(&self, other: &CensusSpec) -> bool {
        (self.degree, self.height, self.family, self.symmetry_reduction, self.chunk_count, self.filters)
            == (other.degree, other.height, other.family, other.symmetry_reduction, other.chunk_count, other.filters)
    }

    fn radix(&self) -> u128 {
        2 * self.height as u128 + 1
    }

    /// `(2H+1)^n`, the number of monic vectors.
    pub fn monic_total(&self) -> u128 {
        self.radix().saturating_pow(self.degree as u32)
    }

    /// `2H(2H+1)^n`, the number of general vectors.
    pub fn general_total(&self) -> u128 {
        self.monic_total().saturating_mul(2 * self.height as u128)
    }

    pub fn estimated_vectors(&self) -> u128 {
        if self.family.wants_general() {
            self.general_total()
        } else {
            self.monic_total()
        }
    }

    fn leading_choices(&self) -> u64 {
        if self.family.wants_general() {
            self.height as u64
        } else {
            1
        }
    }

    fn half_box_len(&self) -> Option<u64> {
        let tails = self.radix().checked_pow(self.degree as u32)?;
        u64::try_from(tails * self.leading_choices() as u128).ok()
    }

    fn chunk_range(&self, index: usize) -> (u64, u64) {
        let total = self.half_box_len().expect("validated") as u128;
        let k = self.chunk_count as u128;
        let i = index as u128;
        ((total * i / k) as u64, (total * (i + 1) / k) as u64)
    }
}

/// Partial counts for one slice of the half box. Counts are already
/// weighted for symmetry but not yet doubled for the `a0 <= -1` half.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkCounts {
    pub index: usize,
    pub visited: u64,
    pub decided: u64,
    pub monic_dominant: u64,
    pub monic_irreducible_dominant: u64,
    pub general_dominant: u64,
    pub general_irreducible_dominant: u64,
    pub digest: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub count: u128,
    pub total: u128,
    #[serde(with = "serde_rational")]
    pub exact: BigRational,
    pub rounded: String,
}

impl Tally {
    fn new(count: u128, total: u128) -> Self {
        let exact = BigRational::new(BigInt::from(count), BigInt::from(total));
        let rounded = round_half_up(&exact, 4);
        Tally {
            count,
            total,
            exact,
            rounded,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusReport {
    pub degree: usize,
    pub height: u32,
    pub family: Family,
    /// `M_n(H)`: monic dominant proportion.
    pub monic: Option<Tally>,
    /// `P_n(H)`: general dominant proportion.
    pub general: Option<Tally>,
    /// `Q_n(H)`: general irreducible dominant proportion.
    pub irreducible: Option<Tally>,
    pub decided: u64,
    pub visited: u64,
    pub chunk_digests: Vec<u64>,
    pub digest: u64,
    pub wall_seconds: f64,
}

impl CensusReport {
    /// Counts only; two runs over the same box agree on this regardless of
    /// chunking or symmetry reduction.
    pub fn counts(&self) -> (Option<u128>, Option<u128>, Option<u128>, u64) {
        let c = |t: &Option<Tally>| t.as_ref().map(|t| t.count);
        (c(&self.monic), c(&self.general), c(&self.irreducible), self.digest)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckpointLine {
    Header(CensusSpec),
    Chunk(ChunkCounts),
}

pub fn parse_checkpoint_line(line: &str) -> Result<CheckpointLine, Error> {
    serde_json::from_str(line).map_err(|e| Error::Checkpoint(e.to_string()))
}

fn vector_hash(coeffs: &[i64]) -> u64 {
    let mut h = FnvHasher::default();
    coeffs.hash(&mut h);
    h.finish()
}

/// Sign of the first nonzero odd-index coefficient, 0 if none.
fn odd_orientation(coeffs: &[i64]) -> i64 {
    coeffs
        .iter()
        .skip(1)
        .step_by(2)
        .find(|&&c| c != 0)
        .map_or(0, |c| c.signum())
}

fn flip_odd(coeffs: &[i64]) -> Vec<i64> {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
        .collect()
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Copy)]
struct Outcome {
    dominant: bool,
    irreducible: bool,
}

/// Verdicts keyed by primitive vector, kept only for vectors small enough
/// that a proper multiple of them is still in the box.
struct VerdictMemo {
    table: RwLock<FnvHashMap<Vec<i64>, Outcome>>,
    max_height: i64,
}

impl VerdictMemo {
    fn new(height: u32) -> Self {
        VerdictMemo {
            table: RwLock::new(FnvHashMap::default()),
            max_height: height as i64 / 2,
        }
    }

    fn get(&self, key: &[i64]) -> Option<Outcome> {
        self.table.read().expect("memo lock").get(key).copied()
    }

    fn offer(&self, key: &[i64], outcome: Outcome) {
        if key.iter().all(|c| c.abs() <= self.max_height) {
            self.table
                .write()
                .expect("memo lock")
                .insert(key.to_vec(), outcome);
        }
    }
}

fn evaluate(coeffs: &[i64], options: &DecideOptions) -> Result<Outcome, Error> {
    let f = IntPolynomial::from_i64s(coeffs);
    let (verdict, known) = decide_reporting(&f, options)?;
    if !verdict.dominant {
        return Ok(Outcome {
            dominant: false,
            irreducible: false,
        });
    }
    let irreducible = match known {
        Some(irreducible) => irreducible,
        None if f.constant_term() == &BigInt::from(0) => false,
        None => is_irreducible_primitive_part(&f)?.is_irreducible(),
    };
    Ok(Outcome {
        dominant: true,
        irreducible,
    })
}

struct Worker<'a> {
    spec: &'a CensusSpec,
    options: DecideOptions,
    memo: &'a VerdictMemo,
}

impl Worker<'_> {
    fn outcome(&self, coeffs: &[i64]) -> Result<Outcome, Error> {
        let g = coeffs.iter().fold(0, |g, &c| gcd_i64(g, c));
        if g > 1 {
            let primitive: Vec<i64> = coeffs.iter().map(|c| c / g).collect();
            if let Some(hit) = self.memo.get(&primitive) {
                return Ok(hit);
            }
            return evaluate(coeffs, &self.options);
        }
        let outcome = evaluate(coeffs, &self.options)?;
        self.memo.offer(coeffs, outcome);
        Ok(outcome)
    }

    fn run_chunk(&self, index: usize) -> Result<ChunkCounts, Error> {
        let spec = self.spec;
        let (start, end) = spec.chunk_range(index);
        let h = spec.height as i64;
        let radix = spec.radix() as u64;
        let n = spec.degree;

        // Decode `start` into [a0, a1..an]; tails run in mixed radix with
        // a_n varying fastest.
        let tails = radix.pow(n as u32);
        let mut coeffs = vec![0i64; n + 1];
        coeffs[0] = (start / tails) as i64 + 1;
        let mut rest = start % tails;
        for slot in coeffs[1..].iter_mut().rev() {
            *slot = (rest % radix) as i64 - h;
            rest /= radix;
        }

        let mut counts = ChunkCounts {
            index,
            ..ChunkCounts::default()
        };
        for _ in start..end {
            counts.visited += 1;
            let orientation = if spec.symmetry_reduction {
                odd_orientation(&coeffs)
            } else {
                0
            };
            if orientation >= 0 {
                let weight = if spec.symmetry_reduction && orientation > 0 { 2 } else { 1 };
                counts.decided += 1;
                let outcome = self.outcome(&coeffs)?;
                if outcome.dominant {
                    counts.general_dominant += weight;
                    let irreducible = if outcome.irreducible { weight } else { 0 };
                    counts.general_irreducible_dominant += irreducible;
                    if coeffs[0] == 1 {
                        counts.monic_dominant += weight;
                        counts.monic_irreducible_dominant += irreducible;
                    }
                    let mut digest = vector_hash(&coeffs);
                    if weight == 2 {
                        digest = digest.wrapping_add(vector_hash(&flip_odd(&coeffs)));
                    }
                    counts.digest = counts.digest.wrapping_add(digest);
                }
            }
            // Odometer step.
            for i in (1..=n).rev() {
                if coeffs[i] < h {
                    coeffs[i] += 1;
                    break;
                }
                coeffs[i] = -h;
                if i == 1 {
                    coeffs[0] += 1;
                }
            }
        }
        Ok(counts)
    }
}

/// Runs the census in memory.
pub fn run_census(spec: &CensusSpec) -> Result<CensusReport, Error> {
    run_with(spec, Vec::new(), |_| Ok(()))
}

/// Runs the census, recording each finished chunk as a JSON line in
/// `path`. An existing file for the same spec is resumed: its finished
/// chunks are reused and only the rest are computed. A truncated final line
/// is dropped.
pub fn run_census_checkpointed(spec: &CensusSpec, path: &Path) -> Result<CensusReport, Error> {
    spec.validate()?;
    let io = |e: std::io::Error| Error::Checkpoint(e.to_string());
    let done = if path.exists() {
        read_checkpoint(spec, path)?
    } else {
        Vec::new()
    };
    let mut file = File::create(path).map_err(io)?;
    let mut lines = vec![CheckpointLine::Header(spec.clone())];
    lines.extend(done.iter().cloned().map(CheckpointLine::Chunk));
    for line in &lines {
        writeln!(file, "{}", serde_json::to_string(line).expect("serializable")).map_err(io)?;
    }
    file.flush().map_err(io)?;
    let file = Mutex::new(file);
    run_with(spec, done, |chunk| {
        let line = serde_json::to_string(&CheckpointLine::Chunk(chunk.clone()))
            .expect("serializable");
        let mut file = file.lock().expect("checkpoint lock");
        writeln!(file, "{line}").and_then(|_| file.flush()).map_err(io)
    })
}

fn read_checkpoint(spec: &CensusSpec, path: &Path) -> Result<Vec<ChunkCounts>, Error> {
    let file = OpenOptions::new()
        .read(true)
        .open(path)
        .map_err(|e| Error::Checkpoint(e.to_string()))?;
    let lines: Vec<String> = BufReader::new(file)
        .lines()
        .collect::<Result<_, _>>()
        .map_err(|e| Error::Checkpoint(e.to_string()))?;
    let lines: Vec<&str> = lines
        .iter()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .collect();
    let Some((first, rest)) = lines.split_first() else {
        return Ok(Vec::new());
    };
    match parse_checkpoint_line(first)? {
        CheckpointLine::Header(found) if found.same_run(spec) => {}
        CheckpointLine::Header(_) => {
            return Err(Error::Checkpoint(
                "file was written for a different census".into(),
            ))
        }
        CheckpointLine::Chunk(_) => return Err(Error::Checkpoint("missing header".into())),
    }
    let mut chunks: Vec<Option<ChunkCounts>> = vec![None; spec.chunk_count];
    for (i, line) in rest.iter().enumerate() {
        match parse_checkpoint_line(line) {
            Ok(CheckpointLine::Chunk(c)) if c.index < spec.chunk_count => {
                let index = c.index;
                chunks[index] = Some(c);
            }
            Ok(_) => return Err(Error::Checkpoint(format!("unexpected line {}", i + 2))),
            Err(_) if i + 1 == rest.len() => {}
            Err(e) => return Err(e),
        }
    }
    Ok(chunks.into_iter().flatten().collect())
}

fn run_with<F>(spec: &CensusSpec, done: Vec<ChunkCounts>, on_chunk: F) -> Result<CensusReport, Error>
where
    F: Fn(&ChunkCounts) -> Result<(), Error> + Sync,
{
    spec.validate()?;
    let started = Instant::now();
    let memo = VerdictMemo::new(spec.height);
    let worker = Worker {
        spec,
        options: DecideOptions {
            filters: spec.filters,
            ..DecideOptions::default()
        },
        memo: &memo,
    };
    let mut slots: Vec<Option<ChunkCounts>> = vec![None; spec.chunk_count];
    for chunk in done {
        let index = chunk.index;
        slots[index] = Some(chunk);
    }
    let pending: Vec<usize> = (0..spec.chunk_count).filter(|&i| slots[i].is_none()).collect();
    let computed: Vec<ChunkCounts> = pending
        .par_iter()
        .map(|&i| {
            let counts = worker.run_chunk(i)?;
            on_chunk(&counts)?;
            Ok(counts)
        })
        .collect::<Result<_, Error>>()?;
    for chunk in computed {
        let index = chunk.index;
        slots[index] = Some(chunk);
    }
    let chunks: Vec<ChunkCounts> = slots.into_iter().map(|c| c.expect("every chunk ran")).collect();
    Ok(assemble(spec, &chunks, started.elapsed().as_secs_f64()))
}

fn assemble(spec: &CensusSpec, chunks: &[ChunkCounts], wall_seconds: f64) -> CensusReport {
    let sum = |get: fn(&ChunkCounts) -> u64| chunks.iter().map(|c| get(c) as u128).sum::<u128>();
    let monic = spec
        .family
        .wants_monic()
        .then(|| Tally::new(sum(|c| c.monic_dominant), spec.monic_total()));
    let (general, irreducible) = if spec.family.wants_general() {
        (
            Some(Tally::new(2 * sum(|c| c.general_dominant), spec.general_total())),
            Some(Tally::new(
                2 * sum(|c| c.general_irreducible_dominant),
                spec.general_total(),
            )),
        )
    } else {
        (None, None)
    };
    let chunk_digests: Vec<u64> = chunks.iter().map(|c| c.digest).collect();
    CensusReport {
        degree: spec.degree,
        height: spec.height,
        family: spec.family,
        monic,
        general,
        irreducible,
        decided: chunks.iter().map(|c| c.decided).sum(),
        visited: chunks.iter().map(|c| c.visited).sum(),
        digest: chunk_digests.iter().fold(0u64, |a, &d| a.wrapping_add(d)),
        chunk_digests,
        wall_seconds,
    }
}

const COLUMNS: [&str; 7] = ["quantity", "n", "H", "D", "denominator", "exact", "rounded"];

fn table_rows(reports: &[CensusReport]) -> Vec<[String; 7]> {
    let mut rows = Vec::new();
    for r in reports {
        for (name, tally) in [("M", &r.monic), ("P", &r.general), ("Q", &r.irreducible)] {
            if let Some(t) = tally {
                rows.push([
                    name.to_string(),
                    r.degree.to_string(),
                    r.height.to_string(),
                    t.count.to_string(),
                    t.total.to_string(),
                    rational_string(&t.exact),
                    t.rounded.clone(),
                ]);
            }
        }
    }
    rows
}

pub fn render_csv(reports: &[CensusReport]) -> String {
    let mut out = COLUMNS.join(",");
    out.push('\n');
    for row in table_rows(reports) {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn render_text(reports: &[CensusReport]) -> String {
    let rows = table_rows(reports);
    let mut widths = COLUMNS.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&COLUMNS.map(String::from));
    out.push('\n');
    for row in &rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominance::quick_quadratic;

    fn spec(n: usize, h: u32, family: Family, symmetric: bool, chunks: usize) -> CensusSpec {
        CensusSpec {
            symmetry_reduction: symmetric,
            chunk_count: chunks,
            ..CensusSpec::new(n, h, family)
        }
    }

    #[test]
    fn quadratic_height_one() {
        let r = run_census(&spec(2, 1, Family::Both, true, 1)).unwrap();
        let m = r.monic.unwrap();
        assert_eq!((m.count, m.total), (4, 9));
        let p = r.general.unwrap();
        assert_eq!((p.count, p.total), (8, 18));
        assert_eq!(rational_string(&p.exact), "4/9");
    }

    #[test]
    fn quadratic_counts_match_discriminant_rule() {
        let h = 4i64;
        let mut expected = 0;
        for a in -h..=h {
            for b in -h..=h {
                for c in -h..=h {
                    if a != 0 && quick_quadratic(&IntPolynomial::from_i64s(&[a, b, c])).unwrap() {
                        expected += 1;
                    }
                }
            }
        }
        let r = run_census(&spec(2, h as u32, Family::General, true, 3)).unwrap();
        assert_eq!(r.general.unwrap().count, expected);
    }

    #[test]
    fn symmetric_equals_full_and_chunking_is_invisible() {
        for (n, h) in [(2, 2), (3, 1), (3, 2)] {
            let base = run_census(&spec(n, h, Family::Both, false, 1)).unwrap();
            for (symmetric, chunks) in [(true, 1), (true, 5), (false, 7)] {
                let r = run_census(&spec(n, h, Family::Both, symmetric, chunks)).unwrap();
                assert_eq!(r.counts(), base.counts(), "n={n} H={h}");
            }
        }
    }

    #[test]
    fn irreducible_dominants_never_exceed_dominants() {
        let r = run_census(&spec(3, 2, Family::Both, true, 2)).unwrap();
        assert!(r.irreducible.unwrap().count <= r.general.unwrap().count);
    }

    #[test]
    fn cap_refuses_large_boxes() {
        let mut s = spec(6, 5, Family::General, true, 1);
        assert!(matches!(s.validate(), Err(Error::ResourceCap { .. })));
        s.allow_large = true;
        assert!(s.validate().is_ok());
        assert!(spec(1, 3, Family::General, true, 1).validate().is_err());
        assert!(spec(2, 3, Family::General, true, 0).validate().is_err());
    }

    #[test]
    fn chunk_ranges_tile_the_half_box() {
        let s = spec(3, 2, Family::General, true, 7);
        let mut next = 0;
        for i in 0..7 {
            let (a, b) = s.chunk_range(i);
            assert_eq!(a, next);
            next = b;
        }
        assert_eq!(next, 2 * 125);
    }

    #[test]
    fn checkpoint_resumes_and_drops_truncated_line() {
        let dir = std::env::temp_dir().join(format!("dompoly-ckpt-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.jsonl");
        let _ = std::fs::remove_file(&path);
        let s = spec(3, 1, Family::Both, true, 4);
        let first = run_census_checkpointed(&s, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        lines.truncate(3);
        let partial = format!("{}\n{{\"kind\":\"chu", lines.join("\n"));
        std::fs::write(&path, partial).unwrap();
        let resumed = run_census_checkpointed(&s, &path).unwrap();
        assert_eq!(resumed.counts(), first.counts());
        assert_eq!(resumed.chunk_digests, first.chunk_digests);
        assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 5);

        let other = spec(3, 2, Family::Both, true, 4);
        assert!(matches!(
            run_census_checkpointed(&other, &path),
            Err(Error::Checkpoint(_))
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn rendering() {
        let r = run_census(&spec(2, 1, Family::General, true, 1)).unwrap();
        let csv = render_csv(std::slice::from_ref(&r));
        assert_eq!(
            csv,
            "quantity,n,H,D,denominator,exact,rounded\nP,2,1,8,18,4/9,0.4444\nQ,2,1,4,18,2/9,0.2222\n"
        );
        let text = render_text(&[r]);
        assert!(text.lines().nth(1).unwrap().ends_with("0.4444"));
    }
}
