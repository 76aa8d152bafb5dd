//! Bottom-up search deciding whether a function is constant (k-normality) or
//! affine (weak k-normality) on some k-dimensional affine flat.
//!
//! The engine grows flats dimension by dimension: level s holds every
//! subspace with at least one constant coset; p parallel constant cosets
//! whose representatives form a line merge into an (s+1)-dimensional flat.
//! The final level merges by constant value (constant mode) or by arithmetic
//! progressions of constants (affine mode). Starting from a fully enumerated
//! base level, this reaches every constant/affine k-flat.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::func::PAryFunction;
use crate::subspace::{enumerate_affine_flats, enumerate_subspaces, AffineFlat, Subspace};
use crate::vecspace::VecSpace;

/// What the restriction of f to a flat must look like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// f constant on the flat: k-normality.
    Constant,
    /// f affine (constant included) on the flat: weak k-normality.
    Affine,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "constant" => Ok(Mode::Constant),
            "affine" => Ok(Mode::Affine),
            _ => Err(Error::Format(format!(
                "mode must be `constant` or `affine`, got {s:?}"
            ))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Constant => write!(f, "constant"),
            Mode::Affine => write!(f, "affine"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Normal,
    NotNormal,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Normal => write!(f, "normal"),
            Verdict::NotNormal => write!(f, "not_normal"),
        }
    }
}

/// Tuning knobs for the search. The defaults give the complete algorithm:
/// full level-1 enumeration, no bent shortcut, no timing in reports.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Dimension of the fully enumerated base level. 1 guarantees
    /// completeness; larger values are a heuristic whose `normal` verdicts
    /// are still sound but whose `not_normal` verdicts are not exhaustive.
    pub start_dim: usize,
    /// Maximum number of witnesses embedded in the report. The verdict and
    /// the total count never depend on the cap.
    pub witness_cap: usize,
    /// `None`: shared global pool (or sequential without the `parallel`
    /// feature); `Some(0)`/`Some(1)`: sequential; `Some(w)`: dedicated pool.
    pub workers: Option<usize>,
    /// Answer `not_normal` immediately for bent inputs with 2k > n instead
    /// of searching. Off by default so that verdicts are search-proven.
    pub bent_shortcut: bool,
    /// Record wall time in the report. Off by default so that reports are
    /// byte-identical across runs and worker counts.
    pub record_timing: bool,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            start_dim: 1,
            witness_cap: 64,
            workers: None,
            bent_shortcut: false,
            record_timing: false,
        }
    }
}

/// The constant cosets of one subspace U, grouped by constant value:
/// `reps_with_constant(c)` lists the canonical representatives a (sorted
/// ascending) with f = c everywhere on a + U.
#[derive(Debug, Clone)]
pub struct ConstantFlatRecord {
    space: Subspace,
    by_class: Vec<Vec<u32>>,
}

impl ConstantFlatRecord {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn reps_with_constant(&self, c: u8) -> &[u32] {
        &self.by_class[c as usize]
    }

    /// Total number of constant cosets across all values.
    pub fn len(&self) -> usize {
        self.by_class.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_class.iter().all(Vec::is_empty)
    }
}

/// How f restricts to a witness flat, in the flat's own coordinates
/// (the odometer order of its canonical basis).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum RestrictionValues {
    Constant { constant: u8 },
    Affine { offset: u8, gradient: Vec<u8> },
}

/// A flat on which f is constant/affine, plus the observed restriction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Canonical representative of the flat.
    pub rep: u32,
    /// Canonical (reduced row echelon) basis of the flat's direction space.
    pub basis: Vec<u32>,
    pub values: RestrictionValues,
}

impl Witness {
    /// Rebuilds the witness flat as a geometric object.
    pub fn to_flat(&self, p: u32, n: usize) -> Result<AffineFlat> {
        let space = Subspace::from_spanning(p, n, &self.basis)?;
        if space.dim() != self.basis.len() {
            return Err(Error::Internal("witness basis is dependent".into()));
        }
        Ok(AffineFlat::new(space, self.rep))
    }

    /// Serializes as `rep=<int> basis=[<int>,...]` plus the restriction.
    pub fn to_text(&self) -> String {
        let basis: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        let mut s = format!("rep={} basis=[{}]", self.rep, basis.join(","));
        match &self.values {
            RestrictionValues::Constant { constant } => {
                s.push_str(&format!(" constant={constant}"));
            }
            RestrictionValues::Affine { offset, gradient } => {
                let g: Vec<String> = gradient.iter().map(|d| d.to_string()).collect();
                s.push_str(&format!(" offset={} gradient=[{}]", offset, g.join(",")));
            }
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchStats {
    /// Subspaces scanned at each visited level, starting at `start_dim`.
    pub level_counts: Vec<u64>,
    /// Successful line merges across all levels (before deduplication).
    pub flats_combined: u64,
    /// Wall time, present only when requested in the options.
    pub elapsed_ms: Option<u64>,
    pub start_dim: usize,
    /// Whether the bent shortcut answered instead of the search.
    pub shortcut_used: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalityReport {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub verdict: Verdict,
    /// Deduplicated witnesses sorted by (direction space, representative),
    /// truncated to the witness cap.
    pub witnesses: Vec<Witness>,
    /// Total number of distinct witnesses found (ignores the cap).
    pub witnesses_total: u64,
    pub stats: SearchStats,
}

impl NormalityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "p={} n={} k={} mode={} verdict={}\n",
            self.p, self.n, self.k, self.mode, self.verdict
        );
        s.push_str(&format!(
            "witnesses: {} total, {} listed\n",
            self.witnesses_total,
            self.witnesses.len()
        ));
        for w in &self.witnesses {
            s.push_str("  ");
            s.push_str(&w.to_text());
            s.push('\n');
        }
        let levels: Vec<String> = self
            .stats
            .level_counts
            .iter()
            .enumerate()
            .map(|(i, c)| format!("dim{}={c}", self.stats.start_dim + i))
            .collect();
        s.push_str(&format!("levels: {}\n", levels.join(" ")));
        s.push_str(&format!("flats_combined={}\n", self.stats.flats_combined));
        if self.stats.shortcut_used {
            s.push_str("shortcut_used=true\n");
        }
        if let Some(ms) = self.stats.elapsed_ms {
            s.push_str(&format!("elapsed_ms={ms}\n"));
        }
        s
    }
}

/// Scans all cosets of U in one pass over the domain, recording those on
/// which f is constant.
pub fn constant_cosets(f: &PAryFunction, space: &Subspace) -> Result<ConstantFlatRecord> {
    check_ambient(f, space)?;
    if space.dim() == 0 {
        return Err(Error::BadDimension { what: "subspace dimension", value: 0, limit: 1 });
    }
    let v = VecSpace::new(f.p(), f.n())?;
    Ok(constant_cosets_with(&v, f, space))
}

fn check_ambient(f: &PAryFunction, space: &Subspace) -> Result<()> {
    if f.p() != space.p() || f.n() != space.n() {
        return Err(Error::BadDimension {
            what: "subspace ambient dimension",
            value: space.n(),
            limit: f.n(),
        });
    }
    Ok(())
}

fn constant_cosets_with(v: &VecSpace, f: &PAryFunction, space: &Subspace) -> ConstantFlatRecord {
    let p = f.p() as usize;
    let pts = space.points();
    let mut by_class: Vec<Vec<u32>> = vec![Vec::new(); p];
    'coset: for rep in space.standard_complement() {
        let c = f.value(rep);
        for &q in &pts[1..] {
            if f.value(v.add(rep, q)) != c {
                continue 'coset;
            }
        }
        by_class[c as usize].push(rep);
    }
    ConstantFlatRecord { space: space.clone(), by_class }
}

/// Walks the line a + t*delta for t = 2..p and calls `check` on each point;
/// emission also requires every later point to exceed b, so that each line
/// is reported exactly once — from its two smallest points.
#[inline]
fn line_qualifies<C: FnMut(u32, u32) -> bool>(
    v: &VecSpace,
    p: u32,
    b: u32,
    delta: u32,
    mut check: C,
) -> bool {
    let mut cur = b;
    for t in 2..p {
        cur = v.add(cur, delta);
        if cur < b || !check(cur, t) {
            return false;
        }
    }
    true
}

/// Runs the merge step over one record, invoking `sink(space, anchor)` for
/// every (dim+1)-flat found; returns the number of emissions.
///
/// `cross` = false: pairs within one constant class (constant restriction).
/// `cross` = true: pairs across classes, accepted when the constants along
/// the line form an arithmetic progression c_t = c_0 + t*d (affine
/// restriction; d = 0 recovers the constant case).
fn combine_record<S: FnMut(Subspace, u32)>(
    v: &VecSpace,
    record: &ConstantFlatRecord,
    cross: bool,
    mut sink: S,
) -> u64 {
    let p = v.p();
    let mut emissions = 0u64;
    let mut emit = |a: u32, b: u32, sink: &mut S| {
        let delta = v.sub(b, a);
        match record.space.extend(delta) {
            Ok(bigger) => {
                sink(bigger, a);
            }
            Err(_) => unreachable!("line steps leave the standard complement independent"),
        }
        emissions += 1;
    };

    if cross {
        // rep -> constant lookup over all classes, sorted by rep.
        let mut entries: Vec<(u32, u8)> = Vec::with_capacity(record.len());
        for (c, reps) in record.by_class.iter().enumerate() {
            entries.extend(reps.iter().map(|&r| (r, c as u8)));
        }
        entries.sort_unstable();
        let value_of = |x: u32| -> Option<u8> {
            entries
                .binary_search_by_key(&x, |&(r, _)| r)
                .ok()
                .map(|i| entries[i].1)
        };
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                let (a, ca) = entries[i];
                let (b, cb) = entries[j];
                let d = (u32::from(cb) + p - u32::from(ca)) % p;
                let delta = v.sub(b, a);
                let ok = line_qualifies(v, p, b, delta, |x, t| {
                    value_of(x) == Some(((u32::from(ca) + t * d) % p) as u8)
                });
                if ok {
                    emit(a, b, &mut sink);
                }
            }
        }
    } else {
        for reps in &record.by_class {
            if reps.len() < p as usize {
                continue;
            }
            for i in 0..reps.len() {
                for j in i + 1..reps.len() {
                    let (a, b) = (reps[i], reps[j]);
                    let delta = v.sub(b, a);
                    let ok = line_qualifies(v, p, b, delta, |x, _| {
                        reps.binary_search(&x).is_ok()
                    });
                    if ok {
                        emit(a, b, &mut sink);
                    }
                }
            }
        }
    }
    emissions
}

/// Merges p parallel same-constant cosets whose representatives form a line
/// into constant flats one dimension up. Returns deduplicated
/// (direction space, canonical representative, constant) triples, sorted.
pub fn combine_constant(
    f: &PAryFunction,
    record: &ConstantFlatRecord,
) -> Result<Vec<(Subspace, u32, u8)>> {
    check_ambient(f, record.space())?;
    let v = VecSpace::new(f.p(), f.n())?;
    let mut out = BTreeSet::new();
    combine_record(&v, record, false, |space, anchor| {
        let rep = space.reduce(anchor);
        let c = f.value(anchor);
        out.insert((space, rep, c));
    });
    Ok(out.into_iter().collect())
}

/// Merges p parallel constant cosets whose representatives form a line and
/// whose constants form an arithmetic progression into flats one dimension
/// up on which f is affine. Returns deduplicated canonical flats, sorted.
pub fn combine_affine(f: &PAryFunction, record: &ConstantFlatRecord) -> Result<Vec<AffineFlat>> {
    check_ambient(f, record.space())?;
    let v = VecSpace::new(f.p(), f.n())?;
    let mut out = BTreeSet::new();
    combine_record(&v, record, true, |space, anchor| {
        out.insert(AffineFlat::new(space, anchor));
    });
    Ok(out.into_iter().collect())
}

/// Whether f is constant (resp. affine) on the flat, by direct evaluation.
pub fn check_witness(f: &PAryFunction, flat: &AffineFlat, mode: Mode) -> bool {
    if f.p() != flat.space().p() || f.n() != flat.space().n() {
        return false;
    }
    let pts = flat.points();
    match mode {
        Mode::Constant => {
            let c = f.value(pts[0]);
            pts.iter().all(|&x| f.value(x) == c)
        }
        Mode::Affine => affine_values_on(f, &pts, f.p()).is_some(),
    }
}

/// Fits an affine form to f over the flat's points (given in odometer order
/// over dim basis vectors) and verifies it everywhere. Returns the offset
/// and per-basis-vector gradient on success.
fn affine_values_on(f: &PAryFunction, pts: &[u32], p: u32) -> Option<(u8, Vec<u8>)> {
    let offset = u32::from(f.value(pts[0]));
    let mut dim = 0usize;
    let mut stride = 1usize;
    while stride < pts.len() {
        dim += 1;
        stride *= p as usize;
    }
    let mut gradient = Vec::with_capacity(dim);
    let mut step = 1usize;
    for _ in 0..dim {
        gradient.push((u32::from(f.value(pts[step])) + p - offset) % p);
        step *= p as usize;
    }
    // Odometer walk keeping the predicted value in lockstep.
    let mut digits = vec![0u32; dim];
    let mut predicted = offset;
    for (i, &x) in pts.iter().enumerate() {
        if i > 0 {
            let mut d = 0;
            loop {
                if digits[d] + 1 < p {
                    digits[d] += 1;
                    predicted = (predicted + gradient[d]) % p;
                    break;
                }
                digits[d] = 0;
                predicted = (predicted + p - gradient[d] * (p - 1) % p) % p;
                d += 1;
            }
        }
        if u32::from(f.value(x)) != predicted {
            return None;
        }
    }
    Some((offset as u8, gradient.iter().map(|&g| g as u8).collect()))
}

fn witness_from_flat(f: &PAryFunction, flat: &AffineFlat, mode: Mode) -> Result<Witness> {
    let values = match mode {
        Mode::Constant => {
            if !check_witness(f, flat, Mode::Constant) {
                return Err(Error::Internal("emitted witness is not constant".into()));
            }
            RestrictionValues::Constant { constant: f.value(flat.rep()) }
        }
        Mode::Affine => {
            let (offset, gradient) = affine_values_on(f, &flat.points(), f.p())
                .ok_or_else(|| Error::Internal("emitted witness is not affine".into()))?;
            RestrictionValues::Affine { offset, gradient }
        }
    };
    Ok(Witness { rep: flat.rep(), basis: flat.space().basis().to_vec(), values })
}

/// Scan of one subspace's cosets for affine restrictions, used when the base
/// level already sits at the target dimension.
fn affine_cosets_with(v: &VecSpace, f: &PAryFunction, space: &Subspace) -> Vec<u32> {
    let p = f.p();
    let pts = space.points();
    let mut shifted = vec![0u32; pts.len()];
    let mut out = Vec::new();
    for rep in space.standard_complement() {
        for (dst, &q) in shifted.iter_mut().zip(&pts) {
            *dst = v.add(rep, q);
        }
        if affine_values_on(f, &shifted, p).is_some() {
            out.push(rep);
        }
    }
    out
}

struct Cascade<'a> {
    f: &'a PAryFunction,
    v: VecSpace,
    exec: Executor,
    frontier: Vec<Subspace>,
    level_counts: Vec<u64>,
    flats_combined: u64,
}

impl<'a> Cascade<'a> {
    fn new(f: &'a PAryFunction, start_dim: usize, workers: Option<usize>) -> Result<Cascade<'a>> {
        let v = VecSpace::new(f.p(), f.n())?;
        let exec = Executor::new(workers)?;
        let frontier: Vec<Subspace> =
            enumerate_subspaces(f.p(), f.n(), start_dim)?.collect();
        Ok(Cascade { f, v, exec, frontier, level_counts: Vec::new(), flats_combined: 0 })
    }

    fn scan(&mut self) -> Vec<ConstantFlatRecord> {
        self.level_counts.push(self.frontier.len() as u64);
        let (f, v) = (self.f, &self.v);
        self.exec.map(&self.frontier, |u| constant_cosets_with(v, f, u))
    }

    /// Merge step over all records: returns the deduplicated next frontier,
    /// the merged flats themselves when `collect` is set, and the raw
    /// emission count. Per-record results are produced in parallel and
    /// merged here single-threaded, so the outcome is order-independent.
    fn combine_level(
        &self,
        records: &[ConstantFlatRecord],
        cross: bool,
        collect: bool,
    ) -> (Vec<Subspace>, BTreeSet<AffineFlat>, u64) {
        let per_record: Vec<(BTreeSet<Subspace>, BTreeSet<AffineFlat>, u64)> =
            self.exec.map(records, |record| {
                let mut spaces = BTreeSet::new();
                let mut flats = BTreeSet::new();
                let emissions = combine_record(&self.v, record, cross, |space, anchor| {
                    if collect {
                        flats.insert(AffineFlat::new(space.clone(), anchor));
                    }
                    spaces.insert(space);
                });
                (spaces, flats, emissions)
            });
        let mut next = BTreeSet::new();
        let mut all_flats = BTreeSet::new();
        let mut total = 0u64;
        for (spaces, flats, emissions) in per_record {
            next.extend(spaces);
            all_flats.extend(flats);
            total += emissions;
        }
        (next.into_iter().collect(), all_flats, total)
    }

    /// Witness flats at the current frontier dimension, read directly from
    /// the scan (constant mode) or refitted per coset (affine mode).
    fn direct_witnesses(&self, records: &[ConstantFlatRecord], mode: Mode) -> BTreeSet<AffineFlat> {
        let mut flats = BTreeSet::new();
        match mode {
            Mode::Constant => {
                for record in records {
                    for reps in &record.by_class {
                        for &rep in reps {
                            flats.insert(AffineFlat::new(record.space.clone(), rep));
                        }
                    }
                }
            }
            Mode::Affine => {
                let (f, v) = (self.f, &self.v);
                let found: Vec<Vec<u32>> =
                    self.exec.map(&self.frontier, |u| affine_cosets_with(v, f, u));
                for (space, reps) in self.frontier.iter().zip(found) {
                    for rep in reps {
                        flats.insert(AffineFlat::new(space.clone(), rep));
                    }
                }
            }
        }
        flats
    }
}

/// Per-run totals carried from the search into the report.
struct RunTotals {
    level_counts: Vec<u64>,
    flats_combined: u64,
    shortcut_used: bool,
    started: Instant,
}

fn build_report(
    f: &PAryFunction,
    k: usize,
    mode: Mode,
    flats: BTreeSet<AffineFlat>,
    totals: RunTotals,
    opts: &SearchOptions,
) -> Result<NormalityReport> {
    let witnesses_total = flats.len() as u64;
    let mut witnesses = Vec::with_capacity(flats.len().min(opts.witness_cap));
    for flat in flats.into_iter().take(opts.witness_cap) {
        witnesses.push(witness_from_flat(f, &flat, mode)?);
    }
    let verdict = if witnesses_total > 0 { Verdict::Normal } else { Verdict::NotNormal };
    Ok(NormalityReport {
        p: f.p(),
        n: f.n(),
        k,
        mode,
        verdict,
        witnesses,
        witnesses_total,
        stats: SearchStats {
            level_counts: totals.level_counts,
            flats_combined: totals.flats_combined,
            elapsed_ms: opts
                .record_timing
                .then(|| totals.started.elapsed().as_millis().min(u128::from(u64::MAX)) as u64),
            start_dim: opts.start_dim,
            shortcut_used: totals.shortcut_used,
        },
    })
}

/// Decides k-normality (constant mode) or weak k-normality (affine mode),
/// returning the verdict, witnesses and search statistics.
pub fn test_normality(
    f: &PAryFunction,
    k: usize,
    mode: Mode,
    opts: &SearchOptions,
) -> Result<NormalityReport> {
    let started = Instant::now();
    let n = f.n();
    if k == 0 || k > n {
        return Err(Error::BadDimension { what: "flat dimension", value: k, limit: n });
    }
    if opts.start_dim == 0 || opts.start_dim > k {
        return Err(Error::BadDimension {
            what: "starting dimension",
            value: opts.start_dim,
            limit: k,
        });
    }

    if opts.bent_shortcut && 2 * k > n && crate::spectrum::is_bent(f) {
        let totals = RunTotals {
            level_counts: Vec::new(),
            flats_combined: 0,
            shortcut_used: true,
            started,
        };
        return build_report(f, k, mode, BTreeSet::new(), totals, opts);
    }

    let mut cascade = Cascade::new(f, opts.start_dim, opts.workers)?;
    let flats = if opts.start_dim == k {
        let records = cascade.scan();
        cascade.direct_witnesses(&records, mode)
    } else {
        let mut flats = BTreeSet::new();
        for s in opts.start_dim..k {
            let records = cascade.scan();
            let last = s == k - 1;
            if last {
                let (_, witness_flats, emissions) =
                    cascade.combine_level(&records, mode == Mode::Affine, true);
                cascade.flats_combined += emissions;
                flats = witness_flats;
            } else {
                let (next, _, emissions) = cascade.combine_level(&records, false, false);
                cascade.flats_combined += emissions;
                cascade.frontier = next;
                if cascade.frontier.is_empty() {
                    break;
                }
            }
        }
        flats
    };

    let totals = RunTotals {
        level_counts: cascade.level_counts,
        flats_combined: cascade.flats_combined,
        shortcut_used: false,
        started,
    };
    build_report(f, k, mode, flats, totals, opts)
}

/// The result of climbing to the largest normal dimension.
#[derive(Debug, Clone)]
pub struct MaxNormality {
    /// Largest k with a normal verdict; 0 when even k = start_dim fails.
    pub k_max: usize,
    /// The report for k_max (or the failing base-level report when k_max=0).
    pub report: NormalityReport,
}

/// Finds the largest k for which f is (weakly) k-normal by climbing one
/// dimension at a time, reusing each level's records for the next.
pub fn max_normality(
    f: &PAryFunction,
    mode: Mode,
    opts: &SearchOptions,
) -> Result<MaxNormality> {
    let started = Instant::now();
    let n = f.n();
    if opts.start_dim == 0 || opts.start_dim > n {
        return Err(Error::BadDimension {
            what: "starting dimension",
            value: opts.start_dim,
            limit: n,
        });
    }

    let mut cascade = Cascade::new(f, opts.start_dim, opts.workers)?;
    let mut records = cascade.scan();
    let mut best: Option<(usize, BTreeSet<AffineFlat>)> = None;

    let base = cascade.direct_witnesses(&records, mode);
    if !base.is_empty() {
        best = Some((opts.start_dim, base));
    }

    let mut s = opts.start_dim;
    while s < n {
        // Affine flats at s+1 come from progressions over the level-s
        // records; the frontier itself always follows constant cosets, so
        // affine mode runs the constant merge as well (without counting it).
        let flats_up = match mode {
            Mode::Affine => {
                let (_, flats, emissions) = cascade.combine_level(&records, true, true);
                cascade.flats_combined += emissions;
                let (const_next, _, _) = cascade.combine_level(&records, false, false);
                cascade.frontier = const_next;
                flats
            }
            Mode::Constant => {
                let (next, flats, emissions) = cascade.combine_level(&records, false, true);
                cascade.flats_combined += emissions;
                cascade.frontier = next;
                flats
            }
        };
        if !flats_up.is_empty() {
            best = Some((s + 1, flats_up));
        }
        if cascade.frontier.is_empty() {
            break;
        }
        s += 1;
        if s == n {
            break;
        }
        records = cascade.scan();
    }

    let totals = RunTotals {
        level_counts: cascade.level_counts.clone(),
        flats_combined: cascade.flats_combined,
        shortcut_used: false,
        started,
    };
    match best {
        Some((k_max, flats)) => {
            let report = build_report(f, k_max, mode, flats, totals, opts)?;
            Ok(MaxNormality { k_max, report })
        }
        None => {
            let report = build_report(f, opts.start_dim, mode, BTreeSet::new(), totals, opts)?;
            Ok(MaxNormality { k_max: 0, report })
        }
    }
}

/// Exhaustively checks every k-flat — an independent reference
/// implementation for validating the search. Witnesses are never capped.
pub fn brute_force_oracle(f: &PAryFunction, k: usize, mode: Mode) -> Result<NormalityReport> {
    let n = f.n();
    if k == 0 || k > n {
        return Err(Error::BadDimension { what: "flat dimension", value: k, limit: n });
    }
    let mut flats = BTreeSet::new();
    for flat in enumerate_affine_flats(f.p(), n, k)? {
        if check_witness(f, &flat, mode) {
            flats.insert(flat);
        }
    }
    let opts = SearchOptions { witness_cap: usize::MAX, ..SearchOptions::default() };
    let totals = RunTotals {
        level_counts: Vec::new(),
        flats_combined: 0,
        shortcut_used: false,
        started: Instant::now(),
    };
    build_report(f, k, mode, flats, totals, &opts)
}
