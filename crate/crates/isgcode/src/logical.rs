//! Logical Pauli group tracking through measurements.
//!
//! A presentation holds coset representatives (x_j, z_j) of the quotient
//! N(S)/S with the standard symplectic pairing. Measurements update it by the
//! same three cases as the tableau: a logical measurement deletes one pair
//! (after a basis change that moves the measured coset into pivot position),
//! a deterministic measurement changes nothing, and an anticommuting
//! measurement re-selects representatives by multiplying with the replaced
//! stabilizer.

use crate::error::IsgError;
use crate::gf2::{rank_of, Eliminator};
use crate::pauli::{solve_membership, PauliLetter, PauliOperator};
use crate::tableau::{MeasureCase, StabilizerTableau};

#[derive(Clone, PartialEq, Eq)]
pub struct LogicalPresentation {
    n: usize,
    pairs: Vec<(PauliOperator, PauliOperator)>,
}

impl LogicalPresentation {
    /// The trivial-ISG presentation: k = n pairs (X_j, Z_j).
    pub fn initial(n: usize) -> Self {
        assert!(n >= 1, "need at least one qubit");
        let pairs = (0..n)
            .map(|j| {
                (
                    PauliOperator::single(n, j, PauliLetter::X),
                    PauliOperator::single(n, j, PauliLetter::Z),
                )
            })
            .collect();
        LogicalPresentation { n, pairs }
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn logical_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(PauliOperator, PauliOperator)] {
        &self.pairs
    }

    fn reps_in_scan_order(&self) -> Vec<PauliOperator> {
        let mut v = Vec::with_capacity(2 * self.pairs.len());
        for (x, z) in &self.pairs {
            v.push(x.clone());
            v.push(z.clone());
        }
        v
    }

    /// Apply the measurement of `p` whose tableau effect was `case`.
    /// `pre_stab` must be the stabilizer generators from before the
    /// measurement (the logical basis change expands `p` over them).
    pub fn apply_measurement(
        &mut self,
        p: &PauliOperator,
        case: &MeasureCase,
        pre_stab: &[PauliOperator],
    ) -> Result<(), IsgError> {
        match case {
            MeasureCase::Deterministic(_) => Ok(()),
            MeasureCase::Replaced { removed } => {
                let s1 = &removed.pauli;
                for (x, z) in &mut self.pairs {
                    if x.anticommutes(p)? {
                        *x = x.multiply(s1)?;
                    }
                    if z.anticommutes(p)? {
                        *z = z.multiply(s1)?;
                    }
                }
                Ok(())
            }
            MeasureCase::Extended => self.delete_measured_pair(p, pre_stab),
        }
    }

    /// Case 1: rewrite the presentation so one generator's coset equals the
    /// coset of `p`, then delete that pair.
    fn delete_measured_pair(
        &mut self,
        p: &PauliOperator,
        pre_stab: &[PauliOperator],
    ) -> Result<(), IsgError> {
        let mut reps = self.reps_in_scan_order();
        // Pivot: lowest-index representative anticommuting with p.
        let pivot = reps
            .iter()
            .position(|r| r.anticommutes(p).unwrap())
            .ok_or_else(|| {
                IsgError::Contract(format!(
                    "measured Pauli {p} is trivial in the logical group; case 1 impossible"
                ))
            })?;
        let g = reps[pivot].clone();
        // Sweep every other representative to commute with p.
        for (i, r) in reps.iter_mut().enumerate() {
            if i != pivot && r.anticommutes(p).unwrap() {
                *r = r.multiply(&g)?;
            }
        }
        // Express p over representatives and old stabilizers; swap p into the
        // first representative slot its expansion uses.
        let mut basis = reps.clone();
        basis.extend_from_slice(pre_stab);
        let Some((selection, _)) = solve_membership(p, &basis)? else {
            return Err(IsgError::Contract(format!(
                "measured Pauli {p} is not in the span of the presentation"
            )));
        };
        let Some(&slot) = selection.iter().find(|&&i| i < reps.len()) else {
            return Err(IsgError::Contract(format!(
                "measured Pauli {p} is a stabilizer; case 1 impossible"
            )));
        };
        debug_assert_ne!(slot, pivot, "pivot cannot appear in the expansion of p");
        reps[slot] = p.clone();

        // Extract the measured pair (p and its partner), sweep the rest clean
        // of both, then re-pair the remainder in scan order.
        let mut remaining = reps;
        let v0 = remaining.remove(slot);
        let w0_pos = remaining
            .iter()
            .position(|r| r.anticommutes(&v0).unwrap())
            .expect("pivot survives the sweep");
        let w0 = remaining.remove(w0_pos);
        for r in &mut remaining {
            if r.anticommutes(&v0).unwrap() {
                *r = r.multiply(&w0)?;
            }
            if r.anticommutes(&w0).unwrap() {
                *r = r.multiply(&v0)?;
            }
        }
        let mut new_pairs = Vec::new();
        while !remaining.is_empty() {
            let v = remaining.remove(0);
            let w_pos = remaining
                .iter()
                .position(|r| r.anticommutes(&v).unwrap())
                .ok_or_else(|| {
                    IsgError::Contract("presentation degenerate: no symplectic partner".to_string())
                })?;
            let w = remaining.remove(w_pos);
            for r in &mut remaining {
                if r.anticommutes(&v).unwrap() {
                    *r = r.multiply(&w)?;
                }
                if r.anticommutes(&w).unwrap() {
                    *r = r.multiply(&v)?;
                }
            }
            new_pairs.push((v, w));
        }
        self.pairs = new_pairs;
        Ok(())
    }

    /// Check the three presentation invariants against a tableau.
    pub fn validate_against(&self, tab: &StabilizerTableau) -> Result<(), IsgError> {
        for (x, z) in &self.pairs {
            if !tab.commutes_with_all(x) || !tab.commutes_with_all(z) {
                return Err(IsgError::Contract(
                    "representative leaves the normalizer".to_string(),
                ));
            }
        }
        for (i, (xi, zi)) in self.pairs.iter().enumerate() {
            if xi.commutes(zi)? {
                return Err(IsgError::Contract(format!(
                    "pair {i} does not anticommute"
                )));
            }
            for (j, (xj, zj)) in self.pairs.iter().enumerate() {
                if i == j {
                    continue;
                }
                if xi.anticommutes(xj)?
                    || xi.anticommutes(zj)?
                    || zi.anticommutes(xj)?
                    || zi.anticommutes(zj)?
                {
                    return Err(IsgError::Contract(format!(
                        "pairs {i} and {j} fail the pairing relations"
                    )));
                }
            }
        }
        let stab_rows: Vec<_> = tab
            .generators()
            .iter()
            .map(|g| g.pauli.symplectic_row())
            .collect();
        let total = stab_rows.len() + 2 * self.pairs.len();
        let all = stab_rows.into_iter().chain(
            self.pairs
                .iter()
                .flat_map(|(x, z)| [x.symplectic_row(), z.symplectic_row()]),
        );
        if rank_of(all) != total {
            return Err(IsgError::Contract(
                "representatives dependent modulo the stabilizer group".to_string(),
            ));
        }
        Ok(())
    }
}

impl std::fmt::Debug for LogicalPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<i")?;
        for (x, z) in &self.pairs {
            write!(f, ", {x}, {z}")?;
        }
        write!(f, ">")
    }
}

/// Minimum weight over the coset p*S.
///
/// Exhausts all 2^r stabilizer subset products when the rank is small enough,
/// otherwise runs a weight-bounded search and reports `None` beyond `w_max`.
pub fn coset_min_weight(
    tab: &StabilizerTableau,
    p: &PauliOperator,
    w_max: usize,
) -> Result<Option<usize>, IsgError> {
    if !tab.commutes_with_all(p) {
        return Err(IsgError::Contract(format!(
            "{p} is outside the normalizer of the tableau"
        )));
    }
    let r = tab.rank();
    if r <= 20 {
        // Gray-code walk over all subset products.
        let mut x = p.x_bits().clone();
        let mut z = p.z_bits().clone();
        let mut best = x.count_or(&z);
        let rows: Vec<_> = tab
            .generators()
            .iter()
            .map(|g| (g.pauli.x_bits().clone(), g.pauli.z_bits().clone()))
            .collect();
        for k in 1u64..(1 << r) {
            let bit = k.trailing_zeros() as usize;
            x.xor_with(&rows[bit].0);
            z.xor_with(&rows[bit].1);
            best = best.min(x.count_or(&z));
        }
        Ok(Some(best))
    } else {
        let mut elim = Eliminator::new(2 * tab.qubit_count());
        for g in tab.generators() {
            elim.push(&g.pauli.symplectic_row());
        }
        let target = p.symplectic_row();
        for w in 0..=w_max {
            let mut found = false;
            for_each_weight_w(tab.qubit_count(), w, |q| {
                if found {
                    return;
                }
                let mut row = q.symplectic_row();
                row.xor_with(&target);
                if elim.contains(&row) {
                    found = true;
                }
            });
            if found {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

/// Least weight of any nontrivial logical operator of `tab`:
/// commutes with every generator but is not (up to sign) in the group.
pub fn min_logical_weight(
    tab: &StabilizerTableau,
    w_max: Option<usize>,
) -> Result<Option<usize>, IsgError> {
    let n = tab.qubit_count();
    if tab.rank() == n {
        return Ok(None); // no logical qubits
    }
    let mut elim = Eliminator::new(2 * n);
    for g in tab.generators() {
        elim.push(&g.pauli.symplectic_row());
    }
    let limit = w_max.unwrap_or(n);
    for w in 1..=limit {
        let mut found = false;
        for_each_weight_w(n, w, |q| {
            if found {
                return;
            }
            if tab.commutes_with_all(q) && !elim.contains(&q.symplectic_row()) {
                found = true;
            }
        });
        if found {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Enumerate Hermitian Paulis of exact weight `w` (canonical sign).
pub(crate) fn for_each_weight_w(n: usize, w: usize, mut f: impl FnMut(&PauliOperator)) {
    if w == 0 {
        f(&PauliOperator::identity(n));
        return;
    }
    let mut support = vec![0usize; w];
    fn rec(
        n: usize,
        w: usize,
        start: usize,
        depth: usize,
        support: &mut Vec<usize>,
        f: &mut impl FnMut(&PauliOperator),
    ) {
        if depth == w {
            let letters = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
            let mut choice = vec![0usize; w];
            loop {
                let mut p = PauliOperator::identity(n);
                for (i, &q) in support.iter().enumerate() {
                    p = p
                        .multiply(&PauliOperator::single(n, q, letters[choice[i]]))
                        .unwrap();
                }
                f(&p.canonical_hermitian());
                // odometer over letter choices
                let mut i = 0;
                loop {
                    if i == w {
                        return;
                    }
                    choice[i] += 1;
                    if choice[i] == 3 {
                        choice[i] = 0;
                        i += 1;
                    } else {
                        break;
                    }
                }
            }
        }
        for q in start..n {
            if n - q < w - depth {
                break;
            }
            support[depth] = q;
            rec(n, w, q + 1, depth + 1, support, f);
        }
    }
    rec(n, w, 0, 0, &mut support, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_dense_literal;
    use crate::tableau::OutcomeId;

    fn lit(s: &str) -> PauliOperator {
        parse_dense_literal(s).unwrap()
    }

    #[test]
    fn initial_presentation_shape() {
        let lp = LogicalPresentation::initial(4);
        assert_eq!(lp.logical_count(), 4);
        assert_eq!(lp.pairs()[0].0, lit("XIII"));
        assert_eq!(lp.pairs()[3].1, lit("IIIZ"));
        let lp1 = LogicalPresentation::initial(1);
        assert_eq!(lp1.pairs(), &[(lit("X"), lit("Z"))]);
    }

    /// Measuring X1X2 then X3X4 from scratch lands on the known
    /// presentation {(X2, Z1Z2), (X4, Z3Z4)}.
    #[test]
    fn two_gauge_measurements() {
        let n = 4;
        let mut tab = StabilizerTableau::new(n);
        let mut lp = LogicalPresentation::initial(n);
        for (i, s) in ["XXII", "IIXX"].iter().enumerate() {
            let pre = tab.pauli_rows();
            let case = tab.measure(&lit(s), OutcomeId(i as u32)).unwrap();
            lp.apply_measurement(&lit(s), &case, &pre).unwrap();
        }
        assert_eq!(lp.logical_count(), 2);
        assert_eq!(
            lp.pairs(),
            &[(lit("IXII"), lit("ZZII")), (lit("IIIX"), lit("IIZZ"))]
        );
        lp.validate_against(&tab).unwrap();
    }

    /// Continue with Z1Z3 (case 3) and Z2Z4 (case 1): one pair remains and
    /// its cosets match (X1X3, Z1Z2) modulo the stabilizer group.
    #[test]
    fn full_round_trip_to_one_logical() {
        let n = 4;
        let mut tab = StabilizerTableau::new(n);
        let mut lp = LogicalPresentation::initial(n);
        for (i, s) in ["XXII", "IIXX", "ZIZI", "IZIZ"].iter().enumerate() {
            let pre = tab.pauli_rows();
            let case = tab.measure(&lit(s), OutcomeId(i as u32)).unwrap();
            lp.apply_measurement(&lit(s), &case, &pre).unwrap();
        }
        assert_eq!(lp.logical_count(), 1);
        lp.validate_against(&tab).unwrap();
        let (x, z) = &lp.pairs()[0];
        // coset equality with the published representatives
        let xr = x.multiply(&lit("XIXI")).unwrap();
        assert!(tab.contains_up_to_phase(&xr));
        let zr = z.multiply(&lit("ZZII")).unwrap();
        assert!(tab.contains_up_to_phase(&zr));
    }

    #[test]
    fn case2_leaves_presentation_unchanged() {
        let n = 2;
        let mut tab = StabilizerTableau::new(n);
        let mut lp = LogicalPresentation::initial(n);
        let pre = tab.pauli_rows();
        let case = tab.measure(&lit("ZZ"), OutcomeId(0)).unwrap();
        lp.apply_measurement(&lit("ZZ"), &case, &pre).unwrap();
        let snapshot = lp.clone();
        let pre = tab.pauli_rows();
        let case = tab.measure(&lit("ZZ"), OutcomeId(1)).unwrap();
        assert_eq!(case.case_number(), 2);
        lp.apply_measurement(&lit("ZZ"), &case, &pre).unwrap();
        assert_eq!(lp, snapshot);
    }

    #[test]
    fn repetition_coset_weight() {
        let mut tab = StabilizerTableau::new(2);
        tab.measure(&lit("ZZ"), OutcomeId(0)).unwrap();
        // X1X2 coset: {X1X2, X1X2*Z1Z2 = -Y1Y2}: weight 2.
        assert_eq!(coset_min_weight(&tab, &lit("XX"), 4).unwrap(), Some(2));
        // Identity coset has weight 0.
        assert_eq!(coset_min_weight(&tab, &lit("II"), 4).unwrap(), Some(0));
        // Z1 is a logical of weight 1.
        assert_eq!(min_logical_weight(&tab, None).unwrap(), Some(1));
    }

    #[test]
    fn coset_weight_requires_normalizer_membership() {
        let mut tab = StabilizerTableau::new(2);
        tab.measure(&lit("ZZ"), OutcomeId(0)).unwrap();
        assert!(coset_min_weight(&tab, &lit("XI"), 4).is_err());
    }
}
