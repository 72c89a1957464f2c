//! Gauge groups and their associated ISG codes: center computation,
//! association checks, bare logicals and the resulting bounds.

use crate::error::IsgError;
use crate::gf2::{nullspace, Bits, Eliminator};
use crate::logical::for_each_weight_w;
use crate::pauli::{PauliOperator, QubitLabel};
use crate::schedule::{run, MeasurementSchedule, Period};

/// A subsystem code's gauge group: a list of Pauli generators with the phase
/// generator i implicit. Need not be Abelian.
#[derive(Clone)]
pub struct GaugeGroup {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl GaugeGroup {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self, IsgError> {
        for g in &generators {
            if g.qubit_count() != n {
                return Err(IsgError::Dimension {
                    expected: n,
                    found: g.qubit_count(),
                });
            }
        }
        Ok(GaugeGroup { n, generators })
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    fn span(&self) -> Eliminator {
        let mut e = Eliminator::new(2 * self.n);
        for g in &self.generators {
            e.push(&g.symplectic_row());
        }
        e
    }

    pub fn rank_mod_phase(&self) -> usize {
        self.span().rank()
    }

    pub fn contains_mod_phase(&self, p: &PauliOperator) -> bool {
        self.span().contains(&p.symplectic_row())
    }
}

/// The gauge group of an ISG code: all round generators pooled, plus i.
pub fn gauge_of_schedule(sched: &MeasurementSchedule) -> GaugeGroup {
    GaugeGroup {
        n: sched.qubit_count(),
        generators: sched.all_generators(),
    }
}

/// Independent generators of the center Z(G) modulo phase: the elements of
/// the group's span fixed by the symplectic form restricted to the group.
pub fn center_mod_phase(g: &GaugeGroup) -> Vec<PauliOperator> {
    let m = g.generators.len();
    if m == 0 {
        return Vec::new();
    }
    // Gram matrix of the symplectic form on the generators.
    let mut gram = Vec::with_capacity(m);
    for a in &g.generators {
        let mut row = Bits::zeros(m);
        for (j, b) in g.generators.iter().enumerate() {
            if a.anticommutes(b).unwrap() {
                row.set(j, true);
            }
        }
        gram.push(row);
    }
    let kernel = nullspace(&gram, m);
    let mut out = Vec::new();
    let mut elim = Eliminator::new(2 * g.n);
    for combo in kernel {
        let mut p = PauliOperator::identity(g.n);
        for j in combo.iter_ones() {
            p = p.multiply(&g.generators[j]).unwrap();
        }
        if !p.is_identity_up_to_phase() && elim.push(&p.symplectic_row()) {
            out.push(p.canonical_hermitian());
        }
    }
    out
}

/// Generators of the centralizer C(G) in the full Pauli group, mod phase.
pub fn centralizer_mod_phase(g: &GaugeGroup) -> Vec<PauliOperator> {
    let n = g.n;
    // Constraint per generator: symplectic product vanishes. Written over
    // (x|z) variables the constraint row for generator h is (z_h | x_h).
    let constraints: Vec<Bits> = g
        .generators
        .iter()
        .map(|h| h.z_bits().concat(h.x_bits()))
        .collect();
    nullspace(&constraints, 2 * n)
        .into_iter()
        .map(|row| {
            let x = row.slice(0, n);
            let z = row.slice(n, n);
            PauliOperator::from_parts(n, 0, x, z)
                .unwrap()
                .canonical_hermitian()
        })
        .collect()
}

/// Coset representatives generating C(G) - G modulo G: the bare logicals.
pub fn bare_logicals(g: &GaugeGroup) -> Vec<PauliOperator> {
    let mut elim = g.span();
    centralizer_mod_phase(g)
        .into_iter()
        .filter(|p| elim.push(&p.symplectic_row()))
        .collect()
}

/// Number of logical qubits of the subsystem code:
/// half the dimension of C(G)/Z(G) mod phase.
pub fn subsystem_k(g: &GaugeGroup) -> usize {
    let c_dim = centralizer_mod_phase(g).len();
    let z_dim = center_mod_phase(g).len();
    (c_dim - z_dim) / 2
}

/// Minimum weight over C(G) - G, searched by increasing weight.
pub fn bare_distance(g: &GaugeGroup, w_max: usize) -> Option<usize> {
    let span = g.span();
    for w in 1..=w_max {
        let mut found = false;
        for_each_weight_w(g.n, w, |q| {
            if found {
                return;
            }
            if g.generators.iter().all(|h| q.commutes(h).unwrap())
                && !span.contains(&q.symplectic_row())
            {
                found = true;
            }
        });
        if found {
            return Some(w);
        }
    }
    None
}

/// Outcome of the association check between a schedule and a gauge group.
pub struct AssociationReport {
    pub associated: bool,
    pub establishment: Option<usize>,
    pub reason: String,
}

/// A schedule is an associated ISG code for G when its pooled generators
/// give exactly G mod phase and, after establishment, the ISG always
/// contains the subsystem stabilizers (the center of G) mod phase.
pub fn is_associated_isg(
    sched: &MeasurementSchedule,
    g: &GaugeGroup,
    horizon_periods: usize,
) -> Result<AssociationReport, IsgError> {
    let pooled = gauge_of_schedule(sched);
    let mut joint = Eliminator::new(2 * g.n);
    for p in pooled.generators() {
        joint.push(&p.symplectic_row());
    }
    let pooled_rank = joint.rank();
    for p in g.generators() {
        joint.push(&p.symplectic_row());
    }
    if joint.rank() != pooled_rank || pooled_rank != g.rank_mod_phase() {
        return Ok(AssociationReport {
            associated: false,
            establishment: None,
            reason: "pooled schedule generators do not generate the gauge group".into(),
        });
    }
    let t_max = match sched.period() {
        Period::Finite(l) if l > 0 => horizon_periods * l - 1,
        _ => 50,
    };
    let report = run(sched, t_max)?;
    let est = report.establishment.unwrap_or(0);
    let window = match sched.period() {
        Period::Finite(l) if l > 0 => est..(est + l).min(t_max + 1),
        _ => est..t_max + 1,
    };
    let center = center_mod_phase(g);
    for t in window {
        let tab = report.tableau_at(t);
        for s in &center {
            if !tab.contains_up_to_phase(s) {
                return Ok(AssociationReport {
                    associated: false,
                    establishment: Some(est),
                    reason: format!(
                        "subsystem stabilizer {s} is missing from the ISG at timestep {t}"
                    ),
                });
            }
        }
    }
    Ok(AssociationReport {
        associated: true,
        establishment: Some(est),
        reason: String::new(),
    })
}

/// The gauge group usually written for the distance-two subsystem code on
/// four qubits: <i, X1X2, X3X4, Z1Z3, Z2Z4>.
pub fn bacon_shor_gauge_group() -> GaugeGroup {
    use crate::pauli::PauliLetter::{X, Z};
    let n = 4;
    GaugeGroup::new(
        n,
        vec![
            PauliOperator::on_support(n, &[0, 1], X),
            PauliOperator::on_support(n, &[2, 3], X),
            PauliOperator::on_support(n, &[0, 2], Z),
            PauliOperator::on_support(n, &[1, 3], Z),
        ],
    )
    .unwrap()
}

/// Per-timestep ISG presentation view over a run: the gauge-fixing trace.
pub fn gauge_fixing_trace(report: &crate::schedule::RunReport) -> Vec<String> {
    let labels: Option<&[QubitLabel]> = None;
    let _ = labels;
    (0..report.ranks.len())
        .map(|t| {
            let tab = report.tableau_at(t);
            let gens: Vec<String> = tab
                .generators()
                .iter()
                .map(|g| format!("{:?}{}", g.record_mask, g.pauli))
                .collect();
            format!("t={t} rank={} <{}>", tab.rank(), gens.join(", "))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_dense_literal;
    use crate::zoo::{make_422, make_bacon_shor, make_bacon_shor_singletons};

    fn lit(s: &str) -> PauliOperator {
        parse_dense_literal(s).unwrap()
    }

    #[test]
    fn gauge_of_two_round_schedule() {
        let g = gauge_of_schedule(&make_bacon_shor());
        assert_eq!(g.generators().len(), 4);
        assert_eq!(g.rank_mod_phase(), 4);
        assert!(g.contains_mod_phase(&lit("XXXX")));
        assert!(!g.contains_mod_phase(&lit("XIXI")));
    }

    #[test]
    fn center_of_gauge_group() {
        let g = bacon_shor_gauge_group();
        let center = center_mod_phase(&g);
        assert_eq!(center.len(), 2);
        let mut e = Eliminator::new(8);
        for p in &center {
            e.push(&p.symplectic_row());
        }
        assert!(e.contains(&lit("XXXX").symplectic_row()));
        assert!(e.contains(&lit("ZZZZ").symplectic_row()));
    }

    #[test]
    fn center_of_abelian_group_is_itself() {
        let g = gauge_of_schedule(&make_422());
        let center = center_mod_phase(&g);
        assert_eq!(center.len(), 2);
    }

    #[test]
    fn full_single_qubit_group_has_trivial_center() {
        let g = GaugeGroup::new(1, vec![lit("X"), lit("Z")]).unwrap();
        assert!(center_mod_phase(&g).is_empty());
    }

    #[test]
    fn bare_logicals_of_gauge_group() {
        let g = bacon_shor_gauge_group();
        let bare = bare_logicals(&g);
        assert_eq!(bare.len(), 2);
        assert_eq!(subsystem_k(&g), 1);
        // X1X3 and Z1Z2 are bare logicals mod G
        let mut e = g.span();
        let mut f = g.span();
        for p in &bare {
            e.push(&p.symplectic_row());
        }
        f.push(&lit("XIXI").symplectic_row());
        f.push(&lit("ZZII").symplectic_row());
        assert_eq!(e.rank(), f.rank());
        assert!(e.contains(&lit("XIXI").symplectic_row()));
        assert!(e.contains(&lit("ZZII").symplectic_row()));
    }

    #[test]
    fn bare_distance_is_two() {
        assert_eq!(bare_distance(&bacon_shor_gauge_group(), 4), Some(2));
    }

    #[test]
    fn association_check() {
        let g = bacon_shor_gauge_group();
        let yes = is_associated_isg(&make_bacon_shor(), &g, 4).unwrap();
        assert!(yes.associated, "{}", yes.reason);
        let no = is_associated_isg(&make_bacon_shor_singletons(), &g, 4).unwrap();
        assert!(!no.associated);
    }

    #[test]
    fn stabilizer_code_is_associated_to_itself() {
        let sched = make_422();
        let g = gauge_of_schedule(&sched);
        let rep = is_associated_isg(&sched, &g, 4).unwrap();
        assert!(rep.associated, "{}", rep.reason);
    }
}
