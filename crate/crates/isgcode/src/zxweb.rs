//! Clifford CSS ZX-diagrams and unsigned CSS Pauli webs.
//!
//! A schedule of pure-X/pure-Z measurements compiles to a diagram: weight-w
//! Z-type measurements splice w green spiders into the touched wires, joined
//! to one red outcome-tagged collector (colour-swapped for X-type); weight-1
//! measurements cut the wire at a tagged terminal spider and start a fresh
//! wire at the qubit's next touch. Webs are green/red edge highlightings
//! obeying the local parity rules; the web space is the nullspace of a GF(2)
//! system, and webs classify by which boundaries they touch.

use crate::error::IsgError;
use crate::gf2::{nullspace, Bits, Eliminator};
use crate::pauli::{PauliLetter, PauliOperator};
use crate::schedule::MeasurementSchedule;
use crate::tableau::{OutcomeId, OutcomeSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Colour {
    Green,
    Red,
}

impl Colour {
    pub fn swapped(self) -> Colour {
        match self {
            Colour::Green => Colour::Red,
            Colour::Red => Colour::Green,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Node {
    /// Pauli spider; phase restricted to 0 or pi (post-selected diagrams
    /// carry 0 everywhere).
    Spider {
        colour: Colour,
        phase_pi: bool,
        tag: Option<OutcomeId>,
    },
    Hadamard,
    Input(usize),
    Output(usize),
}

#[derive(Clone)]
pub struct ZxDiagram {
    nodes: Vec<Node>,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    /// Total number of outcome ids tagged in the diagram.
    outcome_count: usize,
}

impl ZxDiagram {
    pub fn new() -> Self {
        ZxDiagram {
            nodes: Vec::new(),
            edges: Vec::new(),
            incident: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            outcome_count: 0,
        }
    }

    pub fn add_node(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.incident.push(Vec::new());
        match node {
            Node::Input(_) => self.inputs.push(self.nodes.len() - 1),
            Node::Output(_) => self.outputs.push(self.nodes.len() - 1),
            Node::Spider { tag: Some(id), .. } => {
                self.outcome_count = self.outcome_count.max(id.0 as usize + 1)
            }
            _ => {}
        }
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        let id = self.edges.len();
        self.edges.push((a, b));
        self.incident[a].push(id);
        self.incident[b].push(id);
        id
    }

    pub fn node(&self, i: usize) -> Node {
        self.nodes[i]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn incident_edges(&self, node: usize) -> &[usize] {
        &self.incident[node]
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn outcome_count(&self) -> usize {
        self.outcome_count
    }

    fn check(&self) -> Result<(), IsgError> {
        for (i, n) in self.nodes.iter().enumerate() {
            let deg = self.incident[i].len();
            match n {
                Node::Input(_) | Node::Output(_) => {
                    if deg != 1 {
                        return Err(IsgError::Contract(format!(
                            "boundary node {i} has degree {deg}"
                        )));
                    }
                }
                Node::Hadamard => {
                    if deg != 2 {
                        return Err(IsgError::Contract(format!(
                            "hadamard box {i} has degree {deg}"
                        )));
                    }
                }
                Node::Spider { .. } => {}
            }
        }
        Ok(())
    }
}

impl Default for ZxDiagram {
    fn default() -> Self {
        Self::new()
    }
}

/// Two edge sets: green and red highlightings.
#[derive(Clone, PartialEq, Eq)]
pub struct PauliWeb {
    pub green: Bits,
    pub red: Bits,
}

impl PauliWeb {
    pub fn empty(diagram: &ZxDiagram) -> Self {
        PauliWeb {
            green: Bits::zeros(diagram.edge_count()),
            red: Bits::zeros(diagram.edge_count()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.green.is_zero() && self.red.is_zero()
    }

    /// Both colours on one edge makes the web non-CSS (read off as Y).
    pub fn is_css(&self) -> bool {
        self.green.count_and(&self.red) == 0
    }

    /// Per-colour symmetric difference.
    pub fn multiply(&self, other: &PauliWeb) -> PauliWeb {
        let mut w = self.clone();
        w.green.xor_with(&other.green);
        w.red.xor_with(&other.red);
        w
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WebClass {
    /// No boundary touched: the web is a detector.
    Detecting,
    /// Only outputs touched: the web reads off an ISG element.
    Stabilizing,
    /// Inputs and outputs touched: a logical representative.
    Operating,
    /// Valid but either empty or touching inputs only.
    Other,
}

/// Compile a CSS schedule's first `t_max + 1` rounds into a diagram.
/// Outcome ids follow the same sequential order as `schedule::run`.
pub fn compile(sched: &MeasurementSchedule, t_max: usize) -> Result<ZxDiagram, IsgError> {
    let n = sched.qubit_count();
    let mut d = ZxDiagram::new();
    // open wire end per qubit: node expecting one more edge
    let mut open: Vec<usize> = (0..n).map(|q| d.add_node(Node::Input(q))).collect();
    let mut next_outcome = 0u32;
    for t in 0..=t_max {
        for p in sched.round_at(t) {
            let id = OutcomeId(next_outcome);
            next_outcome += 1;
            let support: Vec<usize> = (0..n).filter(|&q| p.letter(q) != PauliLetter::I).collect();
            let basis = p.letter(support[0]);
            if support.iter().any(|&q| p.letter(q) != basis) || basis == PauliLetter::Y {
                return Err(IsgError::UnsupportedDiagram(format!(
                    "measurement {p} mixes bases"
                )));
            }
            // wire spiders are the measurement basis colour; the collector is
            // the swapped colour
            let wire_colour = match basis {
                PauliLetter::Z => Colour::Green,
                _ => Colour::Red,
            };
            if support.len() == 1 {
                let q = support[0];
                // terminate the wire and start a fresh one; both halves are
                // tagged with the same outcome (collector colour: a Z
                // measurement projects onto a Z eigenstate, drawn red)
                let half = |d: &mut ZxDiagram| {
                    d.add_node(Node::Spider {
                        colour: wire_colour.swapped(),
                        phase_pi: false,
                        tag: Some(id),
                    })
                };
                let end = half(&mut d);
                d.add_edge(open[q], end);
                open[q] = half(&mut d);
            } else {
                let collector = d.add_node(Node::Spider {
                    colour: wire_colour.swapped(),
                    phase_pi: false,
                    tag: Some(id),
                });
                for &q in &support {
                    let s = d.add_node(Node::Spider {
                        colour: wire_colour,
                        phase_pi: false,
                        tag: None,
                    });
                    d.add_edge(open[q], s);
                    d.add_edge(s, collector);
                    open[q] = s;
                }
            }
        }
    }
    for (q, &end) in open.iter().enumerate() {
        let out = d.add_node(Node::Output(q));
        d.add_edge(end, out);
    }
    d.check()?;
    Ok(d)
}

/// Constraint rows of the web space over 2E variables
/// (green bits then red bits, edge-major).
fn web_constraints(d: &ZxDiagram) -> Vec<Bits> {
    let e = d.edge_count();
    let cols = 2 * e;
    let mut rows = Vec::new();
    for (i, node) in d.nodes().iter().enumerate() {
        let inc = d.incident_edges(i);
        match node {
            Node::Spider { colour, .. } => {
                // own-colour highlights: even count; other colour: all equal
                let (own_off, other_off) = match colour {
                    Colour::Green => (0, e),
                    Colour::Red => (e, 0),
                };
                let mut parity = Bits::zeros(cols);
                for &edge in inc {
                    parity.flip(own_off + edge);
                }
                rows.push(parity);
                for w in inc.windows(2) {
                    let mut eq = Bits::zeros(cols);
                    eq.flip(other_off + w[0]);
                    eq.flip(other_off + w[1]);
                    rows.push(eq);
                }
            }
            Node::Hadamard => {
                // green on one leg iff red on the other
                let (a, b) = (inc[0], inc[1]);
                let mut r1 = Bits::zeros(cols);
                r1.flip(a);
                r1.flip(e + b);
                rows.push(r1);
                let mut r2 = Bits::zeros(cols);
                r2.flip(e + a);
                r2.flip(b);
                rows.push(r2);
            }
            Node::Input(_) | Node::Output(_) => {}
        }
    }
    rows
}

/// Check the local web rules.
pub fn validate_web(d: &ZxDiagram, w: &PauliWeb) -> Result<bool, IsgError> {
    if w.green.len() != d.edge_count() || w.red.len() != d.edge_count() {
        return Err(IsgError::Contract(
            "web edge sets do not match the diagram".to_string(),
        ));
    }
    let e = d.edge_count();
    for row in web_constraints(d) {
        let g = row.slice(0, e);
        let r = row.slice(e, e);
        if w.green.dot(&g) ^ w.red.dot(&r) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn touches(d: &ZxDiagram, w: &PauliWeb, boundary: &[usize]) -> bool {
    boundary.iter().any(|&node| {
        d.incident_edges(node)
            .iter()
            .any(|&edge| w.green.get(edge) || w.red.get(edge))
    })
}

/// Classify a (valid) web by boundary incidence. The empty web counts as
/// `Other` so that detecting regions are exactly the nontrivial detectors.
pub fn classify_web(d: &ZxDiagram, w: &PauliWeb) -> Result<WebClass, IsgError> {
    if !validate_web(d, w)? {
        return Err(IsgError::Contract("web violates the local rules".into()));
    }
    if w.is_empty() {
        return Ok(WebClass::Other);
    }
    let ins = touches(d, w, d.inputs());
    let outs = touches(d, w, d.outputs());
    Ok(match (ins, outs) {
        (false, false) => WebClass::Detecting,
        (false, true) => WebClass::Stabilizing,
        (true, true) => WebClass::Operating,
        (true, false) => WebClass::Other,
    })
}

/// Pauli read off the output wires: green -> Z, red -> X, both -> Y.
pub fn web_output_operator(d: &ZxDiagram, w: &PauliWeb) -> Result<PauliOperator, IsgError> {
    let n = d.outputs().len();
    let mut p = PauliOperator::identity(n);
    for &node in d.outputs() {
        let Node::Output(q) = d.node(node) else {
            unreachable!()
        };
        let edge = d.incident_edges(node)[0];
        let letter = match (w.red.get(edge), w.green.get(edge)) {
            (false, false) => continue,
            (true, false) => PauliLetter::X,
            (false, true) => PauliLetter::Z,
            (true, true) => PauliLetter::Y,
        };
        p = p.multiply(&PauliOperator::single(n, q, letter))?;
    }
    Ok(p.canonical_hermitian())
}

/// Outcomes of the detector corresponding to a web: tags of collectors where
/// the opposite colour crosses (a red spider incident to a green highlighted
/// edge or a green spider incident to a red one), XOR-combined per outcome.
pub fn web_detector(d: &ZxDiagram, w: &PauliWeb) -> Result<OutcomeSet, IsgError> {
    let mut ids = Vec::new();
    for (i, node) in d.nodes().iter().enumerate() {
        let Node::Spider {
            colour,
            tag: Some(id),
            ..
        } = node
        else {
            continue;
        };
        let crossing = match colour {
            Colour::Red => &w.green,
            Colour::Green => &w.red,
        };
        if d.incident_edges(i).iter().any(|&e| crossing.get(e)) {
            ids.push(id.0);
        }
    }
    Ok(OutcomeSet::from_ids(ids))
}

/// Basis of the whole web space (2^rank webs in total).
pub fn enumerate_webs(d: &ZxDiagram) -> Vec<PauliWeb> {
    let e = d.edge_count();
    let rows = web_constraints(d);
    nullspace(&rows, 2 * e)
        .into_iter()
        .map(|v| PauliWeb {
            green: v.slice(0, e),
            red: v.slice(e, e),
        })
        .collect()
}

/// Web-space basis restricted to webs with no highlighted boundary edges of
/// the given boundary set.
fn enumerate_webs_avoiding(d: &ZxDiagram, boundary: &[usize]) -> Vec<PauliWeb> {
    let e = d.edge_count();
    let mut rows = web_constraints(d);
    for &node in boundary {
        for &edge in d.incident_edges(node) {
            let mut g = Bits::zeros(2 * e);
            g.flip(edge);
            rows.push(g);
            let mut r = Bits::zeros(2 * e);
            r.flip(e + edge);
            rows.push(r);
        }
    }
    nullspace(&rows, 2 * e)
        .into_iter()
        .map(|v| PauliWeb {
            green: v.slice(0, e),
            red: v.slice(e, e),
        })
        .collect()
}

/// The three web families of a compiled diagram, as bases:
/// all webs, webs avoiding inputs, webs avoiding both boundaries.
pub struct WebSpaces {
    pub all: Vec<PauliWeb>,
    pub no_input: Vec<PauliWeb>,
    pub interior: Vec<PauliWeb>,
}

pub fn web_spaces(d: &ZxDiagram) -> WebSpaces {
    let ins = d.inputs().to_vec();
    let mut both = ins.clone();
    both.extend_from_slice(d.outputs());
    WebSpaces {
        all: enumerate_webs(d),
        no_input: enumerate_webs_avoiding(d, &ins),
        interior: enumerate_webs_avoiding(d, &both),
    }
}

// ---------------------------------------------------------------------------
// Cross-validation against the tableau picture
// ---------------------------------------------------------------------------

/// Result of comparing web-derived objects with the group-theoretic run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    /// stabilizing-region operators span = nontrivial ISG elements mod sign
    pub stabilizers_match: bool,
    /// detecting-region detector group = tableau-emitted detector group
    pub detectors_match: bool,
    /// operating-region operators represent exactly the nontrivial logical
    /// cosets (they span N(S) with the ISG, and no input-touching web reads
    /// off a stabilizer)
    pub logicals_match: bool,
}

impl CrossCheck {
    pub fn all_pass(&self) -> bool {
        self.stabilizers_match && self.detectors_match && self.logicals_match
    }
}

/// Compare the diagram of rounds 0..=t with the tableau run at time t.
pub fn cross_check(
    sched: &MeasurementSchedule,
    report: &crate::schedule::RunReport,
    t: usize,
) -> Result<CrossCheck, IsgError> {
    let d = compile(sched, t)?;
    let spaces = web_spaces(&d);
    let tab = report.tableau_at(t);
    let n = sched.qubit_count();

    // (a) span of stabilizing-region outputs == ISG span mod sign
    let mut isg = Eliminator::new(2 * n);
    for g in tab.generators() {
        isg.push(&g.pauli.symplectic_row());
    }
    let mut joint = Eliminator::new(2 * n);
    let mut web_rank = 0usize;
    for w in &spaces.no_input {
        let row = web_output_operator(&d, w)?.symplectic_row();
        if joint.push(&row) {
            web_rank += 1;
        }
    }
    let stab_rank_match = web_rank == isg.rank();
    let mut covered = true;
    for g in tab.generators() {
        if !joint.contains(&g.pauli.symplectic_row()) {
            covered = false;
        }
    }
    let stabilizers_match = stab_rank_match && covered;

    // (b) detector groups agree (as outcome-set spans)
    let total = report
        .outcome_info
        .iter()
        .take_while(|info| info.time <= t)
        .count();
    let mut web_det = Eliminator::new(total);
    let mut web_det_rank = 0;
    for w in &spaces.interior {
        let det = web_detector(&d, w)?;
        if det.ids().any(|id| id.0 as usize >= total) {
            return Err(IsgError::Contract("detector references future outcome".into()));
        }
        if web_det.push(&det.to_bits(total)) {
            web_det_rank += 1;
        }
    }
    let mut tab_det = Eliminator::new(total);
    let mut tab_det_rank = 0;
    let mut dets_covered = true;
    for (dt, det) in &report.detectors {
        if *dt > t {
            continue;
        }
        if tab_det.push(&det.outcomes.to_bits(total)) {
            tab_det_rank += 1;
        }
        if !web_det.contains(&det.outcomes.to_bits(total)) {
            dets_covered = false;
        }
    }
    let detectors_match = web_det_rank == tab_det_rank && dets_covered;

    // (c) all webs together read off exactly N(S) mod phase. Combined with
    // (a), every nontrivial logical coset is then realized by a web that
    // touches the input boundary, i.e. by an operating region: its read-off
    // is outside the ISG span, so by (a) it cannot avoid the inputs.
    let mut all_span = Eliminator::new(2 * n);
    let mut all_rank = 0;
    for w in &spaces.all {
        if all_span.push(&web_output_operator(&d, w)?.symplectic_row()) {
            all_rank += 1;
        }
    }
    let expected_rank = 2 * n - tab.rank(); // dim of the normalizer mod phase
    let mut logicals_match = all_rank == expected_rank;
    for g in tab.generators() {
        if !all_span.contains(&g.pauli.symplectic_row()) {
            logicals_match = false;
        }
    }
    for (x, z) in report.presentation_at(t).pairs() {
        if !all_span.contains(&x.symplectic_row()) || !all_span.contains(&z.symplectic_row()) {
            logicals_match = false;
        }
    }

    Ok(CrossCheck {
        stabilizers_match,
        detectors_match,
        logicals_match,
    })
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

/// Plain-text graph dump: node list then edge list.
pub fn export_text(d: &ZxDiagram) -> String {
    let mut out = String::new();
    for (i, n) in d.nodes().iter().enumerate() {
        let desc = match n {
            Node::Spider {
                colour,
                phase_pi,
                tag,
            } => {
                let c = match colour {
                    Colour::Green => "green",
                    Colour::Red => "red",
                };
                let phase = if *phase_pi { " phase=pi" } else { "" };
                match tag {
                    Some(id) => format!("spider {c}{phase} tag=m{}", id.0),
                    None => format!("spider {c}{phase}"),
                }
            }
            Node::Hadamard => "hadamard".to_string(),
            Node::Input(q) => format!("input q{q}"),
            Node::Output(q) => format!("output q{q}"),
        };
        out.push_str(&format!("node {i}: {desc}\n"));
    }
    for (e, (a, b)) in d.edges().iter().enumerate() {
        out.push_str(&format!("edge {e}: {a} -- {b}\n"));
    }
    out
}

/// Graphviz dot emitter, optionally highlighting one web.
pub fn export_dot(d: &ZxDiagram, web: Option<&PauliWeb>) -> String {
    let mut out = String::from("graph zx {\n  node [shape=circle];\n");
    for (i, n) in d.nodes().iter().enumerate() {
        let attrs = match n {
            Node::Spider { colour, tag, .. } => {
                let fill = match colour {
                    Colour::Green => "palegreen",
                    Colour::Red => "lightcoral",
                };
                let label = tag.map(|id| format!("m{}", id.0)).unwrap_or_default();
                format!("style=filled fillcolor={fill} label=\"{label}\"")
            }
            Node::Hadamard => "shape=square label=\"H\"".to_string(),
            Node::Input(q) => format!("shape=none label=\"in{q}\""),
            Node::Output(q) => format!("shape=none label=\"out{q}\""),
        };
        out.push_str(&format!("  n{i} [{attrs}];\n"));
    }
    for (e, (a, b)) in d.edges().iter().enumerate() {
        let colour = web.map(|w| (w.green.get(e), w.red.get(e)));
        let attr = match colour {
            Some((true, false)) => " [color=green penwidth=3]",
            Some((false, true)) => " [color=red penwidth=3]",
            Some((true, true)) => " [color=\"green:red\" penwidth=3]",
            _ => "",
        };
        out.push_str(&format!("  n{a} -- n{b}{attr};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::run;
    use crate::zoo::{make_422, make_repetition};

    #[test]
    fn repetition_one_round_diagram() {
        let d = compile(&make_repetition(), 0).unwrap();
        // 2 inputs, 2 outputs, 2 wire spiders, 1 collector
        assert_eq!(d.inputs().len(), 2);
        assert_eq!(d.outputs().len(), 2);
        let spiders = d
            .nodes()
            .iter()
            .filter(|n| matches!(n, Node::Spider { .. }))
            .count();
        assert_eq!(spiders, 3);
        assert_eq!(d.edge_count(), 2 + 2 + 2);
    }

    #[test]
    fn empty_schedule_compiles_to_bare_wires() {
        let sched = crate::schedule::MeasurementSchedule::aperiodic(3, vec![]).unwrap();
        let d = compile(&sched, 0).unwrap();
        assert_eq!(d.edge_count(), 3);
        // each wire supports green and red: nontrivial webs exist
        let webs = enumerate_webs(&d);
        assert_eq!(webs.len(), 6); // 2 colours x 3 edges
    }

    #[test]
    fn single_wire_web_space() {
        let sched = crate::schedule::MeasurementSchedule::aperiodic(1, vec![]).unwrap();
        let d = compile(&sched, 0).unwrap();
        let webs = enumerate_webs(&d);
        // all-green and all-red on the single edge
        assert_eq!(webs.len(), 2);
        for w in &webs {
            assert!(validate_web(&d, w).unwrap());
            assert_eq!(classify_web(&d, w).unwrap(), WebClass::Operating);
        }
    }

    #[test]
    fn repetition_webs_classify_and_read_off() {
        let sched = make_repetition();
        let report = run(&sched, 1).unwrap();
        let d = compile(&sched, 0).unwrap();
        let spaces = web_spaces(&d);
        // stabilizing webs read off exactly <ZZ>
        let mut ops: Vec<String> = spaces
            .no_input
            .iter()
            .map(|w| web_output_operator(&d, w).unwrap().to_string())
            .filter(|s| s != "+II")
            .collect();
        ops.sort();
        ops.dedup();
        assert_eq!(ops, vec!["+ZZ"]);
        // two-round diagram has the detector {m0, m1}
        let d2 = compile(&sched, 1).unwrap();
        let spaces2 = web_spaces(&d2);
        let dets: Vec<OutcomeSet> = spaces2
            .interior
            .iter()
            .map(|w| web_detector(&d2, w).unwrap())
            .filter(|s| !s.is_empty())
            .collect();
        assert_eq!(dets.len(), 1);
        assert_eq!(dets[0], OutcomeSet::from_ids(vec![0, 1]));
        let _ = report;
    }

    #[test]
    fn repetition_operating_regions_at_t1() {
        let sched = make_repetition();
        let d = compile(&sched, 1).unwrap();
        let spaces = web_spaces(&d);
        let mut reads: Vec<String> = Vec::new();
        for w in &spaces.all {
            if classify_web(&d, w).unwrap() == WebClass::Operating {
                reads.push(web_output_operator(&d, w).unwrap().to_string());
            }
        }
        // logical representatives Z1 (green) and X1X2 (red) appear
        assert!(reads.iter().any(|s| s == "+ZI" || s == "+IZ"));
        assert!(reads.iter().any(|s| s == "+XX"));
    }

    #[test]
    fn web_multiplication_is_self_inverse() {
        let d = compile(&make_422(), 1).unwrap();
        let webs = enumerate_webs(&d);
        for w in webs.iter().take(4) {
            let prod = w.multiply(w);
            assert!(prod.is_empty());
        }
    }

    #[test]
    fn cross_check_repetition_and_422() {
        for (sched, t_max) in [(make_repetition(), 3), (make_422(), 3)] {
            let report = run(&sched, t_max).unwrap();
            for t in 0..=t_max {
                let cc = cross_check(&sched, &report, t).unwrap();
                assert!(cc.all_pass(), "t={t}: {cc:?}");
            }
        }
    }
}
