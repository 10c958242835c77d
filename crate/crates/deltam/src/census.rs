//! Exhaustive classification of every set system on a small ground set:
//! axiom verdict, binary verdict, and a bounded search for slide
//! sequences that escape the delta-matroid class.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binary;
use crate::error::{Error, Result};
use crate::gf2::SymmetricBinaryMatrix;
use crate::mask::SubsetMask;
use crate::par;
use crate::system::SetSystem;
use crate::transforms::{MinorOp, SlideInstruction, SlideWitness};
use crate::Relabeling;

/// Escape sequences are searched up to this many slides. Two suffice on
/// every ground set the census covers; the reports record the depth
/// actually needed.
pub const ESCAPE_DEPTH: usize = 2;

/// Largest ground set the full census enumerates (65535 families at 4).
pub const MAX_CENSUS_GROUND: u8 = 4;

/// Classification of one labeled set system.
#[derive(Clone, Debug)]
pub struct CensusRecord {
    pub system: SetSystem,
    pub canonical: SetSystem,
    pub is_delta_matroid: bool,
    /// Present exactly when the system is a delta-matroid.
    pub is_binary: Option<bool>,
    /// Shortest escape found within [`ESCAPE_DEPTH`], lexicographically
    /// first among the shortest.
    pub escape: Option<SlideWitness>,
}

/// Classifies a single system. Ground sets up to [`binary::BinaryCatalog::MAX_GROUND`].
pub fn classify(system: &SetSystem) -> CensusRecord {
    let canonical = system
        .canonical_form()
        .expect("census ground sets stay within the canonical-form cap");
    if !system.is_delta_matroid() {
        return CensusRecord {
            system: system.clone(),
            canonical,
            is_delta_matroid: false,
            is_binary: None,
            escape: None,
        };
    }
    let is_binary = binary::catalog(system.ground_size()).contains(system);
    let escape = escape_search(system, ESCAPE_DEPTH);
    CensusRecord {
        system: system.clone(),
        canonical,
        is_delta_matroid: true,
        is_binary: Some(is_binary),
        escape,
    }
}

/// Breadth-first search for a slide sequence whose result violates the
/// exchange axiom. Sequences are scanned shortest first and in
/// lexicographic instruction order, so the witness is deterministic.
pub fn escape_search(system: &SetSystem, max_len: usize) -> Option<SlideWitness> {
    let n = system.ground_size();
    let mut instructions = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            if a != b {
                instructions.push(SlideInstruction::new(a, b));
            }
        }
    }
    let mut frontier: Vec<(Vec<SlideInstruction>, SetSystem)> =
        vec![(Vec::new(), system.clone())];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * instructions.len());
        for (seq, sys) in &frontier {
            for &ins in &instructions {
                let slid = sys
                    .handle_slide(ins.a, ins.b)
                    .expect("instructions fit the ground set");
                let mut sequence = seq.clone();
                sequence.push(ins);
                if !slid.is_delta_matroid() {
                    return Some(SlideWitness {
                        sequence,
                        result: slid,
                        is_delta_matroid: false,
                    });
                }
                next.push((sequence, slid));
            }
        }
        frontier = next;
    }
    None
}

fn family_count(n: u8) -> u64 {
    1u64 << (1u32 << n)
}

fn check_census_ground(n: u8) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    if n > MAX_CENSUS_GROUND {
        return Err(Error::GroundSetTooLarge {
            n,
            cap: MAX_CENSUS_GROUND,
        });
    }
    Ok(())
}

/// Classifies every nonempty family on `n` elements, in family-bitmap
/// order. The sweep is partitioned across workers; the order-preserving
/// merge makes the output identical to [`enumerate_seq`].
pub fn enumerate(n: u8) -> Result<Vec<CensusRecord>> {
    check_census_ground(n)?;
    binary::catalog(n); // build once, outside the worker loop
    Ok(par::map_range_ordered(1..family_count(n), |bits| {
        classify(&SetSystem::from_family_bits(n, bits).unwrap())
    }))
}

/// Single-threaded reference enumeration of the same census.
pub fn enumerate_seq(n: u8) -> Result<Vec<CensusRecord>> {
    check_census_ground(n)?;
    binary::catalog(n);
    Ok(par::map_range_ordered_seq(1..family_count(n), |bits| {
        classify(&SetSystem::from_family_bits(n, bits).unwrap())
    }))
}

/// Per-class counts for one ground-set size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusSummary {
    pub n: u8,
    pub families: u64,
    pub delta_matroids: u64,
    pub binary: u64,
    pub nonbinary: u64,
    /// `escape_lengths[k]` counts records whose escape uses `k` slides.
    pub escape_lengths: [u64; ESCAPE_DEPTH + 1],
    pub max_escape_len: usize,
}

pub fn summarize(n: u8, records: &[CensusRecord]) -> CensusSummary {
    let mut s = CensusSummary {
        n,
        families: records.len() as u64,
        delta_matroids: 0,
        binary: 0,
        nonbinary: 0,
        escape_lengths: [0; ESCAPE_DEPTH + 1],
        max_escape_len: 0,
    };
    for r in records {
        if r.is_delta_matroid {
            s.delta_matroids += 1;
            match r.is_binary {
                Some(true) => s.binary += 1,
                Some(false) => s.nonbinary += 1,
                None => {}
            }
            if let Some(w) = &r.escape {
                let len = w.sequence.len();
                s.escape_lengths[len] += 1;
                s.max_escape_len = s.max_escape_len.max(len);
            }
        }
    }
    s
}

impl fmt::Display for CensusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={}: families={} delta-matroids={} binary={} non-binary={} \
             escapes(len1={}, len2={}) max-escape-len={}",
            self.n,
            self.families,
            self.delta_matroids,
            self.binary,
            self.nonbinary,
            self.escape_lengths[1],
            self.escape_lengths.get(2).copied().unwrap_or(0),
            self.max_escape_len
        )
    }
}

/// Outcome of checking the slide dichotomy on one ground-set size:
/// binary delta-matroids never escape within the depth bound, non-binary
/// ones always do.
#[derive(Clone, Debug)]
pub struct TheoremSize {
    pub summary: CensusSummary,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub per_size: Vec<TheoremSize>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.per_size.iter().all(|s| s.violations.is_empty())
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for size in &self.per_size {
            writeln!(f, "{}", size.summary)?;
            for v in &size.violations {
                writeln!(f, "  violation: {v}")?;
            }
        }
        write!(
            f,
            "slide dichotomy at depth <= {}: {}",
            ESCAPE_DEPTH,
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

/// Checks the dichotomy against an already-computed census.
pub fn theorem_from_records(n: u8, records: &[CensusRecord]) -> TheoremSize {
    let mut violations = Vec::new();
    for r in records {
        if !r.is_delta_matroid {
            continue;
        }
        match (r.is_binary, &r.escape) {
            (Some(true), Some(w)) => violations.push(format!(
                "binary system {} escapes via {:?}",
                r.system, w.sequence
            )),
            (Some(false), None) => violations.push(format!(
                "non-binary system {} has no escape of length <= {ESCAPE_DEPTH}",
                r.system
            )),
            _ => {}
        }
    }
    TheoremSize {
        summary: summarize(n, records),
        violations,
    }
}

/// Runs the census on every ground-set size up to `n` and checks the
/// slide dichotomy on each.
pub fn verify_theorem(n: u8) -> Result<TheoremReport> {
    check_census_ground(n)?;
    let mut per_size = Vec::new();
    for k in 1..=n {
        let records = enumerate(k)?;
        per_size.push(theorem_from_records(k, &records));
    }
    Ok(TheoremReport { per_size })
}

/// Every binary delta-matroid on up to `n` elements stays binary (and a
/// delta-matroid) under every single handle slide.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub max_ground: u8,
    pub systems: u64,
    pub slides: u64,
    pub counterexamples: Vec<String>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for ClosureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "binary closure under slides, n<={}: {} systems, {} slides, {}",
            self.max_ground,
            self.systems,
            self.slides,
            if self.passed() {
                "pass".to_string()
            } else {
                format!("{} counterexamples", self.counterexamples.len())
            }
        )
    }
}

pub fn verify_binary_closure(n: u8) -> Result<ClosureReport> {
    check_census_ground(n)?;
    let mut systems = 0u64;
    let mut slides = 0u64;
    let mut counterexamples = Vec::new();
    for k in 1..=n {
        let cat = binary::catalog(k);
        let bitmaps = cat.family_bitmaps();
        systems += bitmaps.len() as u64;
        let results = par::map_range_ordered(0..bitmaps.len() as u64, |i| {
            let s = SetSystem::from_family_bits(k, bitmaps[i as usize]).unwrap();
            let mut bad = Vec::new();
            let mut count = 0u64;
            for a in 1..=k {
                for b in 1..=k {
                    if a == b {
                        continue;
                    }
                    count += 1;
                    let slid = s.handle_slide(a, b).unwrap();
                    if !cat.contains(&slid) {
                        bad.push(format!("{s} slid {a} over {b} leaves the binary class"));
                    } else if !slid.is_delta_matroid() {
                        bad.push(format!("{s} slid {a} over {b} violates the axiom"));
                    }
                }
            }
            (count, bad)
        });
        for (count, bad) in results {
            slides += count;
            counterexamples.extend(bad);
        }
    }
    Ok(ClosureReport {
        max_ground: n,
        systems,
        slides,
        counterexamples,
    })
}

/// Slide/minor and slide/twist commutation checks. Exhaustive for ground
/// sets up to 4; for `n = 5` a fixed-seed sample of at least `10^4`
/// parameter choices is used instead.
#[derive(Clone, Debug)]
pub struct CommutationReport {
    pub max_ground: u8,
    pub exhaustive_cases: u64,
    pub sampled_cases: u64,
    pub failures: Vec<String>,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CommutationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "commutation laws, n<={}: {} exhaustive + {} sampled cases, {}",
            self.max_ground,
            self.exhaustive_cases,
            self.sampled_cases,
            if self.passed() {
                "pass".to_string()
            } else {
                format!("{} failures", self.failures.len())
            }
        )
    }
}

fn shift_label(x: u8, removed: u8) -> u8 {
    if x > removed {
        x - 1
    } else {
        x
    }
}

fn apply_minor_op(s: &SetSystem, op: MinorOp, e: u8) -> Result<SetSystem> {
    match op {
        MinorOp::Delete => s.delete(e),
        MinorOp::Contract => s.contract(e),
    }
}

/// Checks every commutation law on one system for one ordered pair. A
/// minor may legally fail on both routes; the failure kinds must agree.
fn commutation_failures(s: &SetSystem, a: u8, b: u8) -> Vec<String> {
    let n = s.ground_size();
    let mut failures = Vec::new();
    let slid = s.handle_slide(a, b).unwrap();

    for e in 1..=n {
        if e == a || e == b {
            continue;
        }
        for op in [MinorOp::Delete, MinorOp::Contract] {
            let left = apply_minor_op(&slid, op, e);
            let right = apply_minor_op(s, op, e)
                .and_then(|m| m.handle_slide(shift_label(a, e), shift_label(b, e)));
            let agree = match (&left, &right) {
                (Ok(l), Ok(r)) => l == r,
                (Err(l), Err(r)) => l == r,
                _ => false,
            };
            if !agree {
                failures.push(format!("{s}: slide ({a},{b}) and {op} {e} do not commute"));
            }
        }
    }

    let rest = SubsetMask::full(n).without(a).without(b);
    let rest_bits = rest.bits();
    let mut sub: u16 = 0;
    loop {
        // disjoint twist commutes with the slide as written
        let outside = SubsetMask::from_bits(sub);
        let lhs = s.twist(outside).unwrap().handle_slide(a, b).unwrap();
        let rhs = slid.twist(outside).unwrap();
        if lhs != rhs {
            failures.push(format!(
                "{s}: twist {outside} and slide ({a},{b}) do not commute"
            ));
        }
        // a twist containing both endpoints swaps the slide direction
        let inside = outside.with(a).with(b);
        let lhs = s.twist(inside).unwrap().handle_slide(b, a).unwrap();
        let rhs = slid.twist(inside).unwrap();
        if lhs != rhs {
            failures.push(format!(
                "{s}: twist {inside} and flipped slide ({b},{a}) do not commute"
            ));
        }
        if sub == rest_bits {
            break;
        }
        sub = sub.wrapping_sub(rest_bits) & rest_bits;
    }
    failures
}

fn ordered_pairs(n: u8) -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            if a != b {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn verify_commutation_laws(n: u8) -> Result<CommutationReport> {
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    if n > 5 {
        return Err(Error::GroundSetTooLarge { n, cap: 5 });
    }
    let mut exhaustive_cases = 0u64;
    let mut sampled_cases = 0u64;
    let mut failures = Vec::new();

    for k in 1..=n.min(MAX_CENSUS_GROUND) {
        let pairs = ordered_pairs(k);
        if pairs.is_empty() {
            continue;
        }
        let results = par::map_range_ordered(1..family_count(k), |bits| {
            let s = SetSystem::from_family_bits(k, bits).unwrap();
            let mut count = 0u64;
            let mut bad = Vec::new();
            for &(a, b) in &pairs {
                count += 1;
                bad.extend(commutation_failures(&s, a, b));
            }
            (count, bad)
        });
        for (count, bad) in results {
            exhaustive_cases += count;
            failures.extend(bad);
        }
    }

    if n == 5 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
        let cases = 10_000u64;
        for _ in 0..cases {
            let bits = rng.gen_range(1..1u64 << 32);
            let s = SetSystem::from_family_bits(5, bits).unwrap();
            let a = rng.gen_range(1..=5u8);
            let b = loop {
                let b = rng.gen_range(1..=5u8);
                if b != a {
                    break b;
                }
            };
            failures.extend(commutation_failures(&s, a, b));
            sampled_cases += 1;
        }
    }

    Ok(CommutationReport {
        max_ground: n,
        exhaustive_cases,
        sampled_cases,
        failures,
    })
}

/// Deterministic sampler of delta-matroids on `n` elements, mixing three
/// generators: random matrix representations (always binary), padded and
/// relabeled delta-matroids from one size down (reaches non-binary
/// systems), and axiom-tested perturbations of binary families.
pub fn sample_delta_matroids(n: u8, count: usize, seed: u64) -> Vec<SetSystem> {
    assert!((2..=5).contains(&n), "sampler covers ground sets 2..=5");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = match out.len() % 3 {
            0 => Some(random_binary(&mut rng, n)),
            1 => padded_sample(&mut rng, n),
            2 => perturbed_sample(&mut rng, n),
            _ => unreachable!(),
        };
        if let Some(c) = candidate {
            debug_assert!(c.is_delta_matroid());
            out.push(c);
        }
    }
    out
}

fn random_binary(rng: &mut ChaCha8Rng, n: u8) -> SetSystem {
    let code = rng.gen_range(0..1u64 << SymmetricBinaryMatrix::encoding_bits(n)) as u32;
    let twist = SubsetMask::from_bits(rng.gen_range(0..1u16 << n));
    SymmetricBinaryMatrix::from_encoding(n, code)
        .delta_matroid()
        .twist(twist)
        .unwrap()
}

fn padded_sample(rng: &mut ChaCha8Rng, n: u8) -> Option<SetSystem> {
    let k = n - 1;
    for _ in 0..64 {
        let bits = rng.gen_range(1..family_count(k));
        let small = SetSystem::from_family_bits(k, bits).unwrap();
        if !small.is_delta_matroid() {
            continue;
        }
        // adding an untouched element preserves the axiom verbatim
        let padded = SetSystem::from_family_bits(n, bits).unwrap();
        let twist = SubsetMask::from_bits(rng.gen_range(0..1u16 << n));
        let mut images: Vec<u8> = (1..=n).collect();
        for i in (1..images.len()).rev() {
            images.swap(i, rng.gen_range(0..=i));
        }
        let p = Relabeling::new(images).unwrap();
        return Some(padded.twist(twist).unwrap().apply_relabeling(&p).unwrap());
    }
    None
}

fn perturbed_sample(rng: &mut ChaCha8Rng, n: u8) -> Option<SetSystem> {
    let base = random_binary(rng, n).family_bits();
    let width = 1u32 << n;
    for _ in 0..32 {
        let mut bits = base;
        for _ in 0..rng.gen_range(1..=3) {
            bits ^= 1u64 << rng.gen_range(0..width);
        }
        if bits == 0 {
            continue;
        }
        let s = SetSystem::from_family_bits(n, bits).unwrap();
        if s.is_delta_matroid() {
            return Some(s);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::ExcludedMinor;

    #[test]
    fn census_on_one_element() {
        let records = enumerate(1).unwrap();
        assert_eq!(records.len(), 3);
        for r in &records {
            assert!(r.is_delta_matroid);
            assert_eq!(r.is_binary, Some(true));
            assert!(r.escape.is_none());
        }
    }

    #[test]
    fn parallel_and_sequential_censuses_are_identical() {
        for n in 1..=3u8 {
            let par = enumerate(n).unwrap();
            let seq = enumerate_seq(n).unwrap();
            assert_eq!(par.len(), seq.len());
            for (a, b) in par.iter().zip(&seq) {
                assert_eq!(a.system, b.system);
                assert_eq!(a.canonical, b.canonical);
                assert_eq!(a.is_delta_matroid, b.is_delta_matroid);
                assert_eq!(a.is_binary, b.is_binary);
                assert_eq!(a.escape, b.escape);
            }
        }
    }

    #[test]
    fn census_rejects_large_ground_sets() {
        assert_eq!(
            enumerate(5).err(),
            Some(Error::GroundSetTooLarge { n: 5, cap: 4 })
        );
    }

    #[test]
    fn minimal_nonbinary_systems_appear_with_escapes() {
        let records = enumerate(3).unwrap();
        for m in [ExcludedMinor::S1, ExcludedMinor::S2, ExcludedMinor::S3] {
            let bits = m.system().family_bits();
            let r = &records[(bits - 1) as usize];
            assert_eq!(r.system, m.system());
            assert!(r.is_delta_matroid);
            assert_eq!(r.is_binary, Some(false));
            let w = r.escape.as_ref().expect("escape must exist");
            assert!(w.sequence.len() <= ESCAPE_DEPTH);
            assert!(w.verify(&r.system));
        }
    }

    #[test]
    fn s4_escapes_with_its_first_slide() {
        let s4 = ExcludedMinor::S4.system();
        let w = escape_search(&s4, ESCAPE_DEPTH).unwrap();
        assert_eq!(w.sequence, vec![SlideInstruction::new(1, 2)]);
        assert!(!w.is_delta_matroid);
    }

    #[test]
    fn twisted_s2_needs_two_slides_to_escape() {
        let start = ExcludedMinor::S2
            .system()
            .twist(SubsetMask::from_elements(&[1, 3]))
            .unwrap();
        let w = escape_search(&start, ESCAPE_DEPTH).unwrap();
        assert_eq!(w.sequence.len(), 2, "no single slide escapes");
        assert!(w.verify(&start));
    }

    #[test]
    fn padding_with_an_unused_element_preserves_classification() {
        let small = enumerate(2).unwrap();
        for r in &small {
            let bits = r.system.family_bits();
            let padded = SetSystem::from_family_bits(3, bits).unwrap();
            let padded_record = classify(&padded);
            assert_eq!(r.is_delta_matroid, padded_record.is_delta_matroid);
            assert_eq!(r.is_binary, padded_record.is_binary);
        }
    }

    #[test]
    fn closure_holds_on_two_elements() {
        let report = verify_binary_closure(2).unwrap();
        assert!(report.passed());
        assert!(report.slides > 0);
    }

    #[test]
    fn commutation_holds_exhaustively_on_three_elements() {
        let report = verify_commutation_laws(3).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.exhaustive_cases > 0);
    }

    #[test]
    fn theorem_holds_on_three_elements() {
        let report = verify_theorem(3).unwrap();
        assert!(report.passed());
        let top = report.per_size.last().unwrap();
        assert!(top.summary.nonbinary > 0);
        assert_eq!(top.summary.max_escape_len, ESCAPE_DEPTH);
    }

    #[test]
    fn sampler_produces_delta_matroids() {
        let samples = sample_delta_matroids(4, 30, 7);
        assert_eq!(samples.len(), 30);
        for s in &samples {
            assert_eq!(s.ground_size(), 4);
            assert!(s.is_delta_matroid());
        }
        // deterministic for a fixed seed
        let again = sample_delta_matroids(4, 30, 7);
        assert_eq!(samples, again);
    }
}
