//! Measurement-schedule runtime.
//!
//! Drives the tableau and the logical presentation round by round, determines
//! establishment, accumulates the detector ledger, computes code parameters
//! and replays runs against injected Pauli errors.

use crate::error::IsgError;
use crate::gf2::Eliminator;
use crate::logical::{min_logical_weight, LogicalPresentation};
use crate::pauli::{parse_literal, PauliLetter, PauliOperator, QubitLabel};
use crate::tableau::{
    Detector, MeasureCase, OutcomeId, OutcomeSet, SignedGenerator, StabilizerTableau,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Period {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Period {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Period::Finite(l) => write!(f, "{l}"),
            Period::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone)]
pub struct MeasurementSchedule {
    n: usize,
    rounds: Vec<Vec<PauliOperator>>,
    period: Period,
    labels: Option<Vec<QubitLabel>>,
}

impl MeasurementSchedule {
    /// A finite-period schedule: the round list is one period.
    pub fn periodic(n: usize, rounds: Vec<Vec<PauliOperator>>) -> Result<Self, IsgError> {
        let s = MeasurementSchedule {
            n,
            period: Period::Finite(rounds.len()),
            rounds,
            labels: None,
        };
        s.validate()?;
        Ok(s)
    }

    /// An explicitly-listed schedule with infinite period.
    pub fn aperiodic(n: usize, rounds: Vec<Vec<PauliOperator>>) -> Result<Self, IsgError> {
        let s = MeasurementSchedule {
            n,
            rounds,
            period: Period::Infinite,
            labels: None,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_labels(mut self, labels: Vec<QubitLabel>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> Period {
        self.period
    }

    pub fn labels(&self) -> Option<&[QubitLabel]> {
        self.labels.as_deref()
    }

    pub fn rounds(&self) -> &[Vec<PauliOperator>] {
        &self.rounds
    }

    /// The measurements of round `t` (mod the period for finite schedules).
    pub fn round_at(&self, t: usize) -> &[PauliOperator] {
        match self.period {
            Period::Finite(l) if l > 0 => &self.rounds[t % l],
            _ => self.rounds.get(t).map(Vec::as_slice).unwrap_or(&[]),
        }
    }

    fn validate(&self) -> Result<(), IsgError> {
        for (t, round) in self.rounds.iter().enumerate() {
            for p in round {
                if p.qubit_count() != self.n {
                    return Err(IsgError::Dimension {
                        expected: self.n,
                        found: p.qubit_count(),
                    });
                }
                if !p.is_hermitian() {
                    return Err(IsgError::NonHermitian(p.to_string()));
                }
            }
            for (i, a) in round.iter().enumerate() {
                for b in &round[i + 1..] {
                    if a.anticommutes(b)? {
                        return Err(IsgError::NonCommutingRound {
                            round: t,
                            a: a.to_string(),
                            b: b.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// All round generators pooled together (one period for finite schedules).
    pub fn all_generators(&self) -> Vec<PauliOperator> {
        self.rounds.iter().flatten().cloned().collect()
    }
}

/// Everything recorded while measuring a measurement sequence.
#[derive(Clone, Copy, Debug)]
pub struct OutcomeInfo {
    pub time: usize,
    pub index_in_round: usize,
}

#[derive(Clone)]
pub struct RunReport {
    pub n: usize,
    pub t_max: usize,
    pub ranks: Vec<usize>,
    /// Establishment time: least t with constant rank through the run end.
    pub establishment: Option<usize>,
    /// True when establishment was not observed across a full period.
    pub provisional: bool,
    pub detectors: Vec<(usize, Detector)>,
    pub outcome_paulis: Vec<PauliOperator>,
    pub outcome_info: Vec<OutcomeInfo>,
    pub snapshots: Vec<(StabilizerTableau, LogicalPresentation)>,
}

impl RunReport {
    pub fn tableau_at(&self, t: usize) -> &StabilizerTableau {
        &self.snapshots[t].0
    }

    pub fn presentation_at(&self, t: usize) -> &LogicalPresentation {
        &self.snapshots[t].1
    }

    pub fn k_at(&self, t: usize) -> usize {
        self.n - self.ranks[t]
    }

    /// One detector per line in the dump format
    /// `D<k> sign=+-1 : m[<pauli>@t<j>] ...`.
    pub fn detector_dump(&self) -> String {
        let mut out = String::new();
        for (k, (_, det)) in self.detectors.iter().enumerate() {
            let sign = if det.expected_sign > 0 { "+1" } else { "-1" };
            out.push_str(&format!("D{k} sign={sign} :"));
            for id in det.outcomes.ids() {
                let p = &self.outcome_paulis[id.0 as usize];
                let info = &self.outcome_info[id.0 as usize];
                out.push_str(&format!(" m[{p}@t{}]", info.time));
            }
            out.push('\n');
        }
        out
    }
}

/// Run the schedule through rounds 0..=t_max.
pub fn run(sched: &MeasurementSchedule, t_max: usize) -> Result<RunReport, IsgError> {
    let n = sched.qubit_count();
    let mut tab = StabilizerTableau::new(n);
    let mut lp = LogicalPresentation::initial(n);
    let mut report = RunReport {
        n,
        t_max,
        ranks: Vec::with_capacity(t_max + 1),
        establishment: None,
        provisional: false,
        detectors: Vec::new(),
        outcome_paulis: Vec::new(),
        outcome_info: Vec::new(),
        snapshots: Vec::with_capacity(t_max + 1),
    };
    for t in 0..=t_max {
        for (idx, p) in sched.round_at(t).iter().enumerate() {
            let id = OutcomeId(report.outcome_paulis.len() as u32);
            report.outcome_paulis.push(p.clone());
            report.outcome_info.push(OutcomeInfo {
                time: t,
                index_in_round: idx,
            });
            let pre = tab.pauli_rows();
            let case = tab.measure(p, id)?;
            if let Some(det) = case.detector() {
                report.detectors.push((t, det.clone()));
            }
            lp.apply_measurement(p, &case, &pre)?;
        }
        debug_assert_eq!(lp.logical_count(), n - tab.rank());
        #[cfg(debug_assertions)]
        lp.validate_against(&tab).expect("presentation invariants");
        report.ranks.push(tab.rank());
        report.snapshots.push((tab.clone(), lp.clone()));
    }
    let final_rank = *report.ranks.last().expect("at least one round");
    let est = report
        .ranks
        .iter()
        .position(|&r| r == final_rank)
        .unwrap_or(0);
    report.establishment = Some(est);
    report.provisional = match sched.period() {
        Period::Finite(l) => t_max + 1 < est + l,
        Period::Infinite => true,
    };
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub period: Period,
    pub establishment: usize,
}

impl std::fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.d {
            Some(d) => write!(f, "[[{},{},{}]]", self.n, self.k, d),
            None => write!(f, "[[{},{},-]]", self.n, self.k),
        }
    }
}

pub struct AnalysisOptions {
    /// Horizon in periods for finite schedules, rounds for infinite ones.
    pub horizon_periods: usize,
    pub horizon_rounds: usize,
    /// Weight bound for the distance search; `None` searches to weight n.
    pub w_max: Option<usize>,
    /// Skip the distance search entirely.
    pub skip_distance: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            horizon_periods: 4,
            horizon_rounds: 50,
            w_max: Some(4),
            skip_distance: false,
        }
    }
}

/// Code parameters [[n, k, d]] plus period and establishment time.
pub fn parameters(
    sched: &MeasurementSchedule,
    opts: &AnalysisOptions,
) -> Result<(CodeParameters, RunReport), IsgError> {
    let horizon = match sched.period() {
        Period::Finite(l) if l > 0 => (opts.horizon_periods * l).max(1) - 1,
        _ => opts.horizon_rounds,
    };
    let report = run(sched, horizon)?;
    let est = report.establishment.unwrap_or(0);
    if let Period::Finite(l) = sched.period() {
        if l > 0 && report.provisional {
            return Err(IsgError::NotEstablished { horizon });
        }
    }
    let k = report.n - report.ranks[est];
    let d = if opts.skip_distance || k == 0 {
        None
    } else {
        let window = match sched.period() {
            Period::Finite(l) if l > 0 => est..(est + l).min(horizon + 1),
            _ => est..horizon + 1,
        };
        let mut best: Option<usize> = None;
        for t in window {
            if let Some(w) = min_logical_weight(report.tableau_at(t), opts.w_max)? {
                best = Some(best.map_or(w, |b: usize| b.min(w)));
            }
        }
        best
    };
    Ok((
        CodeParameters {
            n: report.n,
            k,
            d,
            period: sched.period(),
            establishment: est,
        },
        report,
    ))
}

/// Group equality between the run's ISG at `t` and the group generated by
/// `expected`, with record masks compared as outcome sets modulo the
/// detector group accumulated so far (detector signs fold into phases).
pub fn verify_isg_generators(
    report: &RunReport,
    t: usize,
    expected: &[SignedGenerator],
) -> Result<bool, IsgError> {
    let tab = report.tableau_at(t);
    let detectors: Vec<&Detector> = report
        .detectors
        .iter()
        .filter(|(dt, _)| *dt <= t)
        .map(|(_, d)| d)
        .collect();
    let contains = |gens: &[SignedGenerator], e: &SignedGenerator| -> Result<bool, IsgError> {
        let paulis: Vec<PauliOperator> = gens.iter().map(|g| g.pauli.clone()).collect();
        let Some((sel, c)) = crate::pauli::solve_membership(&e.pauli, &paulis)? else {
            return Ok(false);
        };
        let mut mask = OutcomeSet::empty();
        for &i in &sel {
            mask = mask.xor(&gens[i].record_mask);
        }
        let delta = mask.xor(&e.record_mask);
        // delta must be a product of detectors whose combined expected sign
        // matches the leftover numeric phase.
        let total = report.outcome_paulis.len();
        let mut elim = Eliminator::new(total);
        for d in &detectors {
            elim.push(&d.outcomes.to_bits(total));
        }
        let Some(det_sel) = elim.solve(&delta.to_bits(total)) else {
            return Ok(false);
        };
        let det_sign: i32 = det_sel
            .iter()
            .map(|&i| i32::from(detectors[i].expected_sign))
            .product();
        let needed = if c == 0 { 1 } else { -1 };
        Ok(det_sign == needed)
    };
    for e in expected {
        if !contains(tab.generators(), e)? {
            return Ok(false);
        }
    }
    for g in tab.generators() {
        if !contains(expected, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// If `mask` is a product of detectors emitted up to time `t`, return the
/// combined expected sign of that product.
pub fn detector_reduction(report: &RunReport, t: usize, mask: &OutcomeSet) -> Option<i32> {
    let detectors: Vec<&Detector> = report
        .detectors
        .iter()
        .filter(|(dt, _)| *dt <= t)
        .map(|(_, d)| d)
        .collect();
    let total = report.outcome_paulis.len();
    let mut elim = Eliminator::new(total);
    for d in &detectors {
        elim.push(&d.outcomes.to_bits(total));
    }
    let sel = elim.solve(&mask.to_bits(total))?;
    Some(
        sel.iter()
            .map(|&i| i32::from(detectors[i].expected_sign))
            .product(),
    )
}

// ---------------------------------------------------------------------------
// Pauli-frame error injection
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErrorEvent {
    pub qubit: usize,
    pub letter: PauliLetter,
    /// The error strikes between rounds: after round `after_round`.
    pub after_round: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogicalEffect {
    /// Frame ended inside +-S: no logical action.
    Trivial,
    /// Frame is a nontrivial logical; label in terms of the final
    /// presentation, e.g. "x1*z2".
    Coset(String),
    /// Frame anticommutes with the final ISG: a later round would flip more
    /// detectors, so the run window was too short to classify it.
    Pending,
}

#[derive(Clone, Debug)]
pub struct InjectReport {
    /// Indices into `RunReport::detectors` of violated detectors.
    pub violated: Vec<usize>,
    pub logical: LogicalEffect,
}

/// Replay the run with a Pauli frame built from `errors`; a measurement
/// outcome flips iff the frame anticommutes with the measured Pauli.
pub fn inject(
    sched: &MeasurementSchedule,
    report: &RunReport,
    errors: &[ErrorEvent],
) -> Result<InjectReport, IsgError> {
    let n = sched.qubit_count();
    for e in errors {
        if e.after_round >= report.t_max {
            return Err(IsgError::Contract(format!(
                "error after round {} is outside the run window (t_max {})",
                e.after_round, report.t_max
            )));
        }
        if e.qubit >= n {
            return Err(IsgError::Dimension {
                expected: n,
                found: e.qubit + 1,
            });
        }
    }
    let mut frame = PauliOperator::identity(n);
    let mut flipped = vec![false; report.outcome_paulis.len()];
    let mut next_id = 0usize;
    for t in 0..=report.t_max {
        for p in sched.round_at(t) {
            flipped[next_id] = frame.anticommutes(p)?;
            next_id += 1;
        }
        for e in errors.iter().filter(|e| e.after_round == t) {
            frame = frame.multiply(&PauliOperator::single(n, e.qubit, e.letter))?;
        }
    }
    let violated: Vec<usize> = report
        .detectors
        .iter()
        .enumerate()
        .filter(|(_, (_, det))| {
            det.outcomes
                .ids()
                .filter(|id| flipped[id.0 as usize])
                .count()
                % 2
                == 1
        })
        .map(|(i, _)| i)
        .collect();
    let (tab, lp) = report.snapshots.last().expect("non-empty run");
    let logical = if tab.contains_up_to_phase(&frame) {
        LogicalEffect::Trivial
    } else if tab.commutes_with_all(&frame) {
        let mut label = String::new();
        for (j, (x, z)) in lp.pairs().iter().enumerate() {
            if frame.anticommutes(z)? {
                if !label.is_empty() {
                    label.push('*');
                }
                label.push_str(&format!("x{}", j + 1));
            }
            if frame.anticommutes(x)? {
                if !label.is_empty() {
                    label.push('*');
                }
                label.push_str(&format!("z{}", j + 1));
            }
        }
        if label.is_empty() {
            // commutes with everything but is outside the group: phase-only
            LogicalEffect::Trivial
        } else {
            LogicalEffect::Coset(label)
        }
    } else {
        LogicalEffect::Pending
    };
    Ok(InjectReport { violated, logical })
}

// ---------------------------------------------------------------------------
// Line-oriented schedule files
// ---------------------------------------------------------------------------

/// Parse the schedule file format:
///
/// ```text
/// n=4 period=2
/// round 0:
/// +ZZZZ
/// round 1:
/// +XXXX
/// ```
pub fn parse_schedule(text: &str) -> Result<MeasurementSchedule, IsgError> {
    let mut lines = text.lines().enumerate();
    let (mut n, mut period) = (None, None);
    for (lineno, line) in lines.by_ref() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            if let Some(v) = tok.strip_prefix("n=") {
                n = Some(v.parse::<usize>().map_err(|_| IsgError::Parse {
                    line: lineno + 1,
                    message: format!("bad qubit count '{v}'"),
                })?);
            } else if let Some(v) = tok.strip_prefix("period=") {
                period = Some(if v == "inf" {
                    Period::Infinite
                } else {
                    Period::Finite(v.parse::<usize>().map_err(|_| IsgError::Parse {
                        line: lineno + 1,
                        message: format!("bad period '{v}'"),
                    })?)
                });
            } else {
                return Err(IsgError::Parse {
                    line: lineno + 1,
                    message: format!("unexpected token '{tok}' in header"),
                });
            }
        }
        break;
    }
    let n = n.ok_or(IsgError::Parse {
        line: 1,
        message: "missing n= in header".into(),
    })?;
    let period = period.ok_or(IsgError::Parse {
        line: 1,
        message: "missing period= in header".into(),
    })?;
    let mut rounds: Vec<Vec<PauliOperator>> = Vec::new();
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("round") {
            let idx: usize = rest
                .trim()
                .trim_end_matches(':')
                .trim()
                .parse()
                .map_err(|_| IsgError::Parse {
                    line: lineno + 1,
                    message: format!("bad round header '{line}'"),
                })?;
            if idx != rounds.len() {
                return Err(IsgError::Parse {
                    line: lineno + 1,
                    message: format!("round {idx} out of order, expected {}", rounds.len()),
                });
            }
            rounds.push(Vec::new());
        } else {
            let round = rounds.last_mut().ok_or(IsgError::Parse {
                line: lineno + 1,
                message: "measurement before any round header".into(),
            })?;
            let p = parse_literal(line, n, None).map_err(|e| IsgError::Parse {
                line: lineno + 1,
                message: e.to_string(),
            })?;
            round.push(p);
        }
    }
    match period {
        Period::Finite(l) => {
            if l != rounds.len() {
                return Err(IsgError::Parse {
                    line: 0,
                    message: format!("period {l} but {} rounds listed", rounds.len()),
                });
            }
            MeasurementSchedule::periodic(n, rounds)
        }
        Period::Infinite => MeasurementSchedule::aperiodic(n, rounds),
    }
}

pub fn format_schedule(sched: &MeasurementSchedule) -> String {
    let mut out = format!("n={} period={}\n", sched.qubit_count(), sched.period());
    for (t, round) in sched.rounds.iter().enumerate() {
        out.push_str(&format!("round {t}:\n"));
        for p in round {
            out.push_str(&format!("{p}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_dense_literal;

    fn lit(s: &str) -> PauliOperator {
        parse_dense_literal(s).unwrap()
    }

    fn gauge_schedule() -> MeasurementSchedule {
        MeasurementSchedule::periodic(
            4,
            vec![
                vec![lit("XXII"), lit("IIXX")],
                vec![lit("ZIZI"), lit("IZIZ")],
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_non_abelian_round() {
        let err = MeasurementSchedule::periodic(2, vec![vec![lit("XI"), lit("ZI")]]);
        assert!(matches!(err, Err(IsgError::NonCommutingRound { .. })));
    }

    #[test]
    fn gauge_run_ranks_and_establishment() {
        let report = run(&gauge_schedule(), 5).unwrap();
        assert_eq!(report.ranks, vec![2, 3, 3, 3, 3, 3]);
        assert_eq!(report.establishment, Some(1));
        assert!(!report.provisional);
    }

    #[test]
    fn empty_schedule_is_all_rank_zero() {
        let sched = MeasurementSchedule::aperiodic(3, vec![]).unwrap();
        let report = run(&sched, 4).unwrap();
        assert!(report.ranks.iter().all(|&r| r == 0));
        assert_eq!(report.establishment, Some(0));
    }

    #[test]
    fn detector_cadence_of_gauge_run() {
        let report = run(&gauge_schedule(), 5).unwrap();
        // one detector per round from t=2 on
        let times: Vec<usize> = report.detectors.iter().map(|(t, _)| *t).collect();
        assert_eq!(times, vec![2, 3, 4, 5]);
        for (_, det) in &report.detectors {
            assert_eq!(det.outcomes.len(), 4);
            assert_eq!(det.expected_sign, 1);
        }
    }

    #[test]
    fn zero_error_replay_violates_nothing() {
        let sched = gauge_schedule();
        let report = run(&sched, 5).unwrap();
        let inj = inject(&sched, &report, &[]).unwrap();
        assert!(inj.violated.is_empty());
        assert_eq!(inj.logical, LogicalEffect::Trivial);
    }

    #[test]
    fn repetition_code_detects_bit_flip() {
        let sched = MeasurementSchedule::periodic(2, vec![vec![lit("ZZ")]]).unwrap();
        let report = run(&sched, 3).unwrap();
        let inj = inject(
            &sched,
            &report,
            &[ErrorEvent {
                qubit: 0,
                letter: PauliLetter::X,
                after_round: 0,
            }],
        )
        .unwrap();
        // the error lands between the first two rounds, so the first emitted
        // detector (outcomes of rounds 0 and 1) is violated
        assert!(inj.violated.contains(&0));
        let (_, first) = &report.detectors[0];
        assert_eq!(first.outcomes, OutcomeSet::from_ids(vec![0, 1]));
        // Z error immediately before a Z measurement does nothing.
        let inj = inject(
            &sched,
            &report,
            &[ErrorEvent {
                qubit: 1,
                letter: PauliLetter::Z,
                after_round: 0,
            }],
        )
        .unwrap();
        assert!(inj.violated.is_empty());
        assert_eq!(inj.logical, LogicalEffect::Coset("z1".into()));
    }

    #[test]
    fn parameters_of_simple_codes() {
        let (p, _) = parameters(&gauge_schedule(), &AnalysisOptions::default()).unwrap();
        assert_eq!(p.n, 4);
        assert_eq!(p.k, 1);
        assert_eq!(p.d, Some(2));
        assert_eq!(p.establishment, 1);
    }

    #[test]
    fn schedule_file_round_trip() {
        let text = "n=4 period=2\nround 0:\n+ZZZZ\nround 1:\n+XXXX\n";
        let sched = parse_schedule(text).unwrap();
        assert_eq!(sched.qubit_count(), 4);
        assert_eq!(format_schedule(&sched), text);
        let report = run(&sched, 3).unwrap();
        assert_eq!(report.ranks, vec![1, 2, 2, 2]);
    }

    #[test]
    fn verify_accepts_re_presentations() {
        let report = run(&gauge_schedule(), 5).unwrap();
        // At t=1 the group can be presented either way.
        let direct = vec![
            SignedGenerator::new(lit("ZIZI"), OutcomeSet::from_ids(vec![2])).unwrap(),
            SignedGenerator::new(lit("IZIZ"), OutcomeSet::from_ids(vec![3])).unwrap(),
            SignedGenerator::new(lit("XXXX"), OutcomeSet::from_ids(vec![0, 1])).unwrap(),
        ];
        assert!(verify_isg_generators(&report, 1, &direct).unwrap());
        let re_presented = vec![
            SignedGenerator::new(lit("ZIZI"), OutcomeSet::from_ids(vec![2])).unwrap(),
            SignedGenerator::new(lit("ZZZZ"), OutcomeSet::from_ids(vec![2, 3])).unwrap(),
            SignedGenerator::new(lit("XXXX"), OutcomeSet::from_ids(vec![0, 1])).unwrap(),
        ];
        assert!(verify_isg_generators(&report, 1, &re_presented).unwrap());
        // Wrong record mask is rejected.
        let wrong = vec![
            SignedGenerator::new(lit("ZIZI"), OutcomeSet::from_ids(vec![3])).unwrap(),
            SignedGenerator::new(lit("IZIZ"), OutcomeSet::from_ids(vec![2])).unwrap(),
            SignedGenerator::new(lit("XXXX"), OutcomeSet::from_ids(vec![0, 1])).unwrap(),
        ];
        assert!(!verify_isg_generators(&report, 1, &wrong).unwrap());
    }
}
