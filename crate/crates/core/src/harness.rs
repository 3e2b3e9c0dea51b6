//! Instance generation, trial running and machine-readable reports.
//!
//! All randomness is seeded; identical parameters and seed reproduce
//! byte-identical CSV and JSON output.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::BitString;
use crate::classical::{blockwise_recognize, exact_word_distribution, RecognizerKind};
use crate::error::{Error, Result};
use crate::recognizer::{
    bbht_output_zero_probability, exact_output_zero_probability, recognize_ldisj_with_rng, Channel,
    Decision, DisjInstance,
};
use crate::stream::TokenStream;

/// What kind of instance to generate. `WithCollisions(0)` is the same as
/// `Member`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Member,
    WithCollisions(u64),
}

/// Deterministic (x, y) pair with exactly `t` collisions: the first `t`
/// indices carry a 1 on both sides, everything else is 0.
pub fn collision_pattern(k: u32, t: u64) -> (BitString, BitString) {
    let len = 1usize << (2 * k);
    let mut x = BitString::zeros(len);
    let mut y = BitString::zeros(len);
    for i in 0..t as usize {
        x.set(i, true);
        y.set(i, true);
    }
    (x, y)
}

pub fn generate_instance(k: u32, kind: InstanceKind, seed: u64) -> Result<DisjInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate_instance_with(k, kind, &mut rng)
}

/// Samples an instance. Member indices draw uniformly from the three
/// collision-free per-index patterns, which is the uniform distribution over
/// disjoint pairs; a collision target places its colliding set uniformly.
pub fn generate_instance_with(
    k: u32,
    kind: InstanceKind,
    rng: &mut impl Rng,
) -> Result<DisjInstance> {
    let len = 1u64 << (2 * k);
    let t = match kind {
        InstanceKind::Member => 0,
        InstanceKind::WithCollisions(t) => t,
    };
    if t > len {
        return Err(Error::TooManyCollisions { t, len });
    }
    let mut colliding = vec![false; len as usize];
    if t > 0 {
        let mut indices: Vec<usize> = (0..len as usize).collect();
        indices.shuffle(rng);
        for &i in indices.iter().take(t as usize) {
            colliding[i] = true;
        }
    }
    let mut x = BitString::with_capacity(len as usize);
    let mut y = BitString::with_capacity(len as usize);
    for &hit in &colliding {
        if hit {
            x.push(true);
            y.push(true);
        } else {
            // one of 00, 01, 10, uniformly
            match rng.gen_range(0..3) {
                0 => {
                    x.push(false);
                    y.push(false);
                }
                1 => {
                    x.push(false);
                    y.push(true);
                }
                _ => {
                    x.push(true);
                    y.push(false);
                }
            }
        }
    }
    DisjInstance::new(k, x, y)
}

/// Verdict counts over repeated seeded runs of one recognizer on one word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrialTally {
    pub trials: u64,
    pub accepts: u64,
    pub rejects_format: u64,
    pub rejects_consistency: u64,
    pub rejects_decision: u64,
}

impl TrialTally {
    pub fn acceptance_estimate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.accepts as f64 / self.trials as f64
        }
    }
}

pub fn run_trials(word: &str, kind: RecognizerKind, trials: u64, seed: u64) -> Result<TrialTally> {
    let base = TokenStream::from_word(word)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = TrialTally {
        trials,
        ..TrialTally::default()
    };
    for _ in 0..trials {
        let mut stream = base.restarted();
        let verdict = match kind {
            RecognizerKind::Quantum => recognize_ldisj_with_rng(&mut stream, &mut rng)?.verdict,
            RecognizerKind::Blockwise => {
                crate::classical::blockwise_recognize_with_rng(&mut stream, &mut rng)?.verdict
            }
        };
        match (verdict.decision, verdict.channel) {
            (Decision::Accept, _) => tally.accepts += 1,
            (Decision::Reject, Channel::Format) => tally.rejects_format += 1,
            (Decision::Reject, Channel::Consistency) => tally.rejects_consistency += 1,
            (Decision::Reject, Channel::Decision) => tally.rejects_decision += 1,
        }
    }
    Ok(tally)
}

/// One report row. CSV columns and JSON fields carry the same names; see the
/// README for the column glossary. `classical_cells_peak` is the decision
/// procedure's own storage and `frontend_cells_peak` the shared streaming
/// front end, identical for both recognizers on the same word.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub k: Option<u32>,
    pub n: u64,
    pub recognizer: String,
    pub mode: String,
    pub trials: u64,
    pub seed: Option<u64>,
    pub disj_value: Option<u8>,
    pub t: Option<u64>,
    pub accept_ldisj: f64,
    pub accept_complement: f64,
    pub reject_bound_ok: bool,
    pub exhaustive: bool,
    pub frontend_cells_peak: u64,
    pub classical_cells_peak: u64,
    pub qubits_peak: u32,
}

const MEMBER_TOLERANCE: f64 = 1e-12;
const REJECTION_BOUND: f64 = 0.25;
const REJECTION_TOLERANCE: f64 = 1e-9;

/// Report values are rounded to 12 decimals, below every tolerance used in
/// this crate, so CSV and JSON render the same clean numbers.
fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

fn bound_satisfied(member: Option<bool>, acceptance: f64, slack: f64) -> bool {
    match member {
        Some(true) => acceptance >= 1.0 - MEMBER_TOLERANCE - slack,
        // a word that is not a consistent member encoding is outside the
        // language, so the rejection bound applies
        Some(false) | None => 1.0 - acceptance >= REJECTION_BOUND - REJECTION_TOLERANCE - slack,
    }
}

struct WordMeta {
    k: Option<u32>,
    disj_value: Option<u8>,
    t: Option<u64>,
    member: Option<bool>,
}

fn word_meta(word: &str) -> WordMeta {
    match DisjInstance::from_word(word) {
        Some(inst) => {
            let t = inst.collisions();
            WordMeta {
                k: Some(inst.k()),
                disj_value: Some(u8::from(t == 0)),
                t: Some(t),
                member: Some(t == 0),
            }
        }
        None => WordMeta {
            k: None,
            disj_value: None,
            t: None,
            member: None,
        },
    }
}

fn meters_for(word: &str, kind: RecognizerKind) -> Result<(u64, u64, u32)> {
    // peaks depend only on the word, not on the drawn randomness
    let mut stream = TokenStream::from_word(word)?;
    let (frontend, decision) = match kind {
        RecognizerKind::Quantum => {
            let out = crate::recognizer::recognize_ldisj(&mut stream, 0)?;
            (out.frontend, out.decision)
        }
        RecognizerKind::Blockwise => {
            let out = blockwise_recognize(&mut stream, 0)?;
            (out.frontend, out.decision)
        }
    };
    Ok((
        frontend.classical_cells_peak(),
        decision.classical_cells_peak(),
        decision.qubits_peak(),
    ))
}

/// Row for an exact enumeration run.
pub fn exact_row(word: &str, kind: RecognizerKind) -> Result<ReportRow> {
    let dist = exact_word_distribution(word, kind)?;
    let meta = word_meta(word);
    let (frontend, decision, qubits) = meters_for(word, kind)?;
    Ok(ReportRow {
        k: meta.k,
        n: word.len() as u64,
        recognizer: kind.to_string(),
        mode: "exact".into(),
        trials: 0,
        seed: None,
        disj_value: meta.disj_value,
        t: meta.t,
        accept_ldisj: round12(dist.acceptance),
        accept_complement: round12(1.0 - dist.acceptance),
        reject_bound_ok: bound_satisfied(meta.member, dist.acceptance, 0.0),
        exhaustive: dist.exhaustive,
        frontend_cells_peak: frontend,
        classical_cells_peak: decision,
        qubits_peak: qubits,
    })
}

/// Row for a seeded trial run.
pub fn trial_row(word: &str, kind: RecognizerKind, trials: u64, seed: u64) -> Result<ReportRow> {
    let tally = run_trials(word, kind, trials, seed)?;
    let meta = word_meta(word);
    let (frontend, decision, qubits) = meters_for(word, kind)?;
    let estimate = tally.acceptance_estimate();
    // three-sigma slack for a binomial estimate at worst-case variance
    let slack = 3.0 * (0.25 / trials.max(1) as f64).sqrt();
    Ok(ReportRow {
        k: meta.k,
        n: word.len() as u64,
        recognizer: kind.to_string(),
        mode: "trials".into(),
        trials,
        seed: Some(seed),
        disj_value: meta.disj_value,
        t: meta.t,
        accept_ldisj: round12(estimate),
        accept_complement: round12(1.0 - estimate),
        reject_bound_ok: bound_satisfied(meta.member, estimate, slack),
        exhaustive: false,
        frontend_cells_peak: frontend,
        classical_cells_peak: decision,
        qubits_peak: qubits,
    })
}

/// One sweep point: the exact output-0 probability of the streaming search
/// against its closed-form prediction.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub k: u32,
    pub t: u64,
    pub n: u64,
    pub exact_reject: f64,
    pub closed_form: f64,
    pub abs_diff: f64,
}

/// Exact-vs-closed-form table over the given k values. `ts` limits the
/// collision counts; by default every t in [0, 2^{2k}] is swept. Rows come
/// out ordered by (k, t).
pub fn sweep_rows(ks: &[u32], ts: Option<&[u64]>, seed: u64) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    for &k in &ks {
        let side = 1u64 << (2 * k);
        let t_values: Vec<u64> = match ts {
            Some(list) => {
                let mut v = list.to_vec();
                v.sort_unstable();
                v.dedup();
                for &t in &v {
                    if t > side {
                        return Err(Error::TooManyCollisions { t, len: side });
                    }
                }
                v
            }
            None => (0..=side).collect(),
        };
        for t in t_values {
            let inst = generate_instance(k, InstanceKind::WithCollisions(t), seed)?;
            let exact = exact_output_zero_probability(&inst)?;
            let closed = bbht_output_zero_probability(k, t);
            rows.push(SweepRow {
                k,
                t,
                n: inst.word_len(),
                exact_reject: round12(exact),
                closed_form: round12(closed),
                abs_diff: round12((exact - closed).abs()),
            });
        }
    }
    Ok(rows)
}

/// One space-accounting row. `total_classical_cells` is the front end plus
/// the decision storage.
#[derive(Clone, Debug, Serialize)]
pub struct SpaceRow {
    pub k: u32,
    pub n: u64,
    pub recognizer: String,
    pub frontend_cells_peak: u64,
    pub classical_cells_peak: u64,
    pub total_classical_cells: u64,
    pub qubits_peak: u32,
}

/// Runs both recognizers on one generated member instance per k and reports
/// their peaks, ordered by (k, recognizer).
pub fn space_rows(ks: &[u32], seed: u64) -> Result<Vec<SpaceRow>> {
    let mut rows = Vec::new();
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    for &k in &ks {
        let inst = generate_instance(k, InstanceKind::Member, seed)?;
        let word = inst.encode();
        for kind in [RecognizerKind::Blockwise, RecognizerKind::Quantum] {
            let (frontend, decision, qubits) = meters_for(&word, kind)?;
            rows.push(SpaceRow {
                k,
                n: word.len() as u64,
                recognizer: kind.to_string(),
                frontend_cells_peak: frontend,
                classical_cells_peak: decision,
                total_classical_cells: frontend + decision,
                qubits_peak: qubits,
            });
        }
    }
    Ok(rows)
}

fn csv_opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), T::to_string)
}

/// Fixed-column CSV rendering.
pub trait CsvRecord {
    fn csv_header() -> &'static str;
    fn csv_line(&self) -> String;
}

impl CsvRecord for ReportRow {
    fn csv_header() -> &'static str {
        "k,n,recognizer,mode,trials,seed,disj_value,t,accept_ldisj,accept_complement,\
         reject_bound_ok,exhaustive,frontend_cells_peak,classical_cells_peak,qubits_peak"
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            csv_opt(&self.k),
            self.n,
            self.recognizer,
            self.mode,
            self.trials,
            csv_opt(&self.seed),
            csv_opt(&self.disj_value),
            csv_opt(&self.t),
            self.accept_ldisj,
            self.accept_complement,
            self.reject_bound_ok,
            self.exhaustive,
            self.frontend_cells_peak,
            self.classical_cells_peak,
            self.qubits_peak,
        )
    }
}

impl CsvRecord for SweepRow {
    fn csv_header() -> &'static str {
        "k,t,n,exact_reject,closed_form,abs_diff"
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.k, self.t, self.n, self.exact_reject, self.closed_form, self.abs_diff
        )
    }
}

impl CsvRecord for SpaceRow {
    fn csv_header() -> &'static str {
        "k,n,recognizer,frontend_cells_peak,classical_cells_peak,total_classical_cells,qubits_peak"
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.k,
            self.n,
            self.recognizer,
            self.frontend_cells_peak,
            self.classical_cells_peak,
            self.total_classical_cells,
            self.qubits_peak,
        )
    }
}

/// CSV with a header row, comma separators and LF line endings.
pub fn to_csv<R: CsvRecord>(rows: &[R]) -> String {
    let mut out = String::new();
    out.push_str(R::csv_header());
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

/// JSON array mirroring the CSV rows, one object per row.
pub fn to_json<R: Serialize>(rows: &[R]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::disj_oracle;

    #[test]
    fn members_are_disjoint_by_construction() {
        for seed in 0..20 {
            let inst = generate_instance(1, InstanceKind::Member, seed).unwrap();
            assert!(disj_oracle(inst.x(), inst.y()).unwrap().disjoint);
        }
        let inst = generate_instance(3, InstanceKind::Member, 5).unwrap();
        assert!(inst.is_member());
    }

    #[test]
    fn collision_targets_are_exact() {
        // four collisions on four indices force the all-ones pair
        let inst = generate_instance(1, InstanceKind::WithCollisions(4), 9).unwrap();
        assert_eq!(inst.x().to_string(), "1111");
        assert_eq!(inst.y().to_string(), "1111");

        let inst = generate_instance(2, InstanceKind::WithCollisions(3), 42).unwrap();
        assert_eq!(disj_oracle(inst.x(), inst.y()).unwrap().collisions, 3);

        assert!(matches!(
            generate_instance(1, InstanceKind::WithCollisions(5), 0),
            Err(Error::TooManyCollisions { t: 5, len: 4 })
        ));
    }

    #[test]
    fn generation_is_reproducible() {
        let a = generate_instance(2, InstanceKind::WithCollisions(2), 123).unwrap();
        let b = generate_instance(2, InstanceKind::WithCollisions(2), 123).unwrap();
        assert_eq!(a, b);
        let c = generate_instance(2, InstanceKind::WithCollisions(2), 124).unwrap();
        assert_ne!(a, c); // overwhelmingly likely and fixed by the seeds here
    }

    #[test]
    fn trials_on_malformed_words_all_reject_via_format() {
        let tally = run_trials("1#01#", RecognizerKind::Quantum, 50, 1).unwrap();
        assert_eq!(tally.rejects_format, 50);
        assert_eq!(tally.acceptance_estimate(), 0.0);
    }

    #[test]
    fn member_trials_always_accept() {
        let word = generate_instance(1, InstanceKind::Member, 2)
            .unwrap()
            .encode();
        let tally = run_trials(&word, RecognizerKind::Quantum, 200, 3).unwrap();
        assert_eq!(tally.accepts, 200);
    }

    #[test]
    fn report_rows_render_deterministically() {
        let word = generate_instance(1, InstanceKind::WithCollisions(1), 7)
            .unwrap()
            .encode();
        let rows = vec![
            exact_row(&word, RecognizerKind::Quantum).unwrap(),
            exact_row(&word, RecognizerKind::Blockwise).unwrap(),
        ];
        let csv1 = to_csv(&rows);
        let rows2 = vec![
            exact_row(&word, RecognizerKind::Quantum).unwrap(),
            exact_row(&word, RecognizerKind::Blockwise).unwrap(),
        ];
        assert_eq!(csv1, to_csv(&rows2));
        assert!(csv1.starts_with("k,n,recognizer,"));
        assert_eq!(to_json(&rows), to_json(&rows2));
    }

    #[test]
    fn sweep_includes_the_known_five_eighths_point() {
        let rows = sweep_rows(&[1], Some(&[1]), 0).unwrap();
        assert_eq!(rows.len(), 1);
        assert!((rows[0].exact_reject - 0.625).abs() < 1e-12);
        assert!((rows[0].closed_form - 0.625).abs() < 1e-12);
        assert!(rows[0].abs_diff < 1e-9);
    }

    #[test]
    fn space_rows_cover_both_recognizers_in_order() {
        let rows = space_rows(&[1, 2], 0).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].recognizer, "blockwise");
        assert_eq!(rows[1].recognizer, "quantum");
        assert_eq!(rows[1].qubits_peak, 4);
        assert_eq!(rows[3].qubits_peak, 6);
        assert_eq!(rows[0].classical_cells_peak, 2);
        assert_eq!(rows[2].classical_cells_peak, 4);
    }
}
