//! Symbolic-sign stabilizer tableau: the ISG engine.
//!
//! Generators carry their numeric sign in the Pauli phase exponent and their
//! symbolic sign as a set of measurement-outcome records. Outcome symbols are
//! never assigned values; deterministic measurements instead emit detectors.

use crate::error::IsgError;
use crate::gf2::Bits;
use crate::pauli::{solve_membership, PauliOperator};

/// Identifier of one measurement record `m_p^{(t)}`: an index into the run's
/// outcome table, unique per (round, intra-round position).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OutcomeId(pub u32);

/// A set of outcome records, XOR-combined (formal products with exponents
/// mod 2). Kept sorted.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct OutcomeSet(Vec<u32>);

impl OutcomeSet {
    pub fn empty() -> Self {
        OutcomeSet(Vec::new())
    }

    pub fn singleton(id: OutcomeId) -> Self {
        OutcomeSet(vec![id.0])
    }

    pub fn from_ids(mut ids: Vec<u32>) -> Self {
        ids.sort_unstable();
        let mut out = Vec::with_capacity(ids.len());
        let mut i = 0;
        while i < ids.len() {
            let mut count = 1;
            while i + count < ids.len() && ids[i + count] == ids[i] {
                count += 1;
            }
            if count % 2 == 1 {
                out.push(ids[i]);
            }
            i += count;
        }
        OutcomeSet(out)
    }

    pub fn xor(&self, other: &OutcomeSet) -> OutcomeSet {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        OutcomeSet(out)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = OutcomeId> + '_ {
        self.0.iter().map(|&i| OutcomeId(i))
    }

    pub fn contains(&self, id: OutcomeId) -> bool {
        self.0.binary_search(&id.0).is_ok()
    }

    /// Bit-vector form over a table of `total` outcomes.
    pub fn to_bits(&self, total: usize) -> Bits {
        let mut b = Bits::zeros(total);
        for &i in &self.0 {
            b.set(i as usize, true);
        }
        b
    }
}

impl std::fmt::Debug for OutcomeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, id) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "m{id}")?;
        }
        write!(f, "}}")
    }
}

/// A Hermitian Pauli with its numeric sign folded into the phase exponent and
/// a symbolic sign given by a product of outcome records.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedGenerator {
    pub pauli: PauliOperator,
    pub record_mask: OutcomeSet,
}

impl SignedGenerator {
    pub fn new(pauli: PauliOperator, record_mask: OutcomeSet) -> Result<Self, IsgError> {
        if !pauli.is_hermitian() {
            return Err(IsgError::NonHermitian(pauli.to_string()));
        }
        Ok(SignedGenerator { pauli, record_mask })
    }

    fn multiply_in_place(&mut self, other: &SignedGenerator) {
        self.pauli = self.pauli.multiply(&other.pauli).expect("same n");
        self.record_mask = self.record_mask.xor(&other.record_mask);
    }
}

/// A set of measurement outcomes whose product is deterministic absent noise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Detector {
    pub outcomes: OutcomeSet,
    pub expected_sign: i8,
}

/// Which branch of the measurement rule fired.
#[derive(Clone, Debug)]
pub enum MeasureCase {
    /// Case 1: independent commuting measurement, rank grew by one.
    Extended,
    /// Case 2: deterministic outcome; tableau unchanged, detector emitted.
    Deterministic(Detector),
    /// Case 3: anticommuting measurement; `removed` is the generator that the
    /// measured Pauli replaced, before any row normalisation.
    Replaced { removed: SignedGenerator },
}

impl MeasureCase {
    pub fn case_number(&self) -> u8 {
        match self {
            MeasureCase::Extended => 1,
            MeasureCase::Deterministic(_) => 2,
            MeasureCase::Replaced { .. } => 3,
        }
    }

    pub fn detector(&self) -> Option<&Detector> {
        match self {
            MeasureCase::Deterministic(d) => Some(d),
            _ => None,
        }
    }
}

/// The instantaneous stabilizer group: independent, pairwise-commuting
/// signed generators.
#[derive(Clone)]
pub struct StabilizerTableau {
    n: usize,
    gens: Vec<SignedGenerator>,
}

impl StabilizerTableau {
    pub fn new(n: usize) -> Self {
        StabilizerTableau {
            n,
            gens: Vec::new(),
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[SignedGenerator] {
        &self.gens
    }

    pub fn pauli_rows(&self) -> Vec<PauliOperator> {
        self.gens.iter().map(|g| g.pauli.clone()).collect()
    }

    /// Measure the Hermitian Pauli `p`, recording outcome `id`.
    pub fn measure(&mut self, p: &PauliOperator, id: OutcomeId) -> Result<MeasureCase, IsgError> {
        if p.qubit_count() != self.n {
            return Err(IsgError::Dimension {
                expected: self.n,
                found: p.qubit_count(),
            });
        }
        if !p.is_hermitian() {
            return Err(IsgError::NonHermitian(p.to_string()));
        }
        let anti: Vec<usize> = self
            .gens
            .iter()
            .enumerate()
            .filter(|(_, g)| p.anticommutes(&g.pauli).unwrap())
            .map(|(i, _)| i)
            .collect();
        let result = if anti.is_empty() {
            match solve_membership(p, &self.pauli_rows())? {
                Some((selection, c)) => {
                    // Case 2: +-p already stabilized; outcome deterministic.
                    let mut outcomes = OutcomeSet::singleton(id);
                    for &i in &selection {
                        outcomes = outcomes.xor(&self.gens[i].record_mask);
                    }
                    debug_assert!(c == 0 || c == 2, "Hermitian membership phase");
                    let expected_sign = if c == 0 { 1 } else { -1 };
                    MeasureCase::Deterministic(Detector {
                        outcomes,
                        expected_sign,
                    })
                }
                None => {
                    // Case 1: new independent stabilizer.
                    self.gens
                        .push(SignedGenerator::new(p.clone(), OutcomeSet::singleton(id))?);
                    MeasureCase::Extended
                }
            }
        } else {
            // Case 3: normalise so only the first anticommuting row remains,
            // multiplying later anticommuting rows by it; then replace it.
            let pivot = anti[0];
            let pivot_gen = self.gens[pivot].clone();
            for &j in &anti[1..] {
                let g = &mut self.gens[j];
                g.multiply_in_place(&pivot_gen);
            }
            self.gens[pivot] = SignedGenerator::new(p.clone(), OutcomeSet::singleton(id))?;
            MeasureCase::Replaced { removed: pivot_gen }
        };
        #[cfg(debug_assertions)]
        self.assert_invariants();
        Ok(result)
    }

    /// Expected sign and record mask of `p` if it is in the group.
    pub fn contains(&self, p: &PauliOperator) -> Result<Option<(OutcomeSet, i8)>, IsgError> {
        match solve_membership(p, &self.pauli_rows())? {
            None => Ok(None),
            Some((selection, c)) => {
                let mut mask = OutcomeSet::empty();
                for &i in &selection {
                    mask = mask.xor(&self.gens[i].record_mask);
                }
                Ok(Some((mask, if c == 0 { 1 } else { -1 })))
            }
        }
    }

    /// Membership of +-p, ignoring signs and records.
    pub fn contains_up_to_phase(&self, p: &PauliOperator) -> bool {
        solve_membership(p, &self.pauli_rows())
            .map(|r| r.is_some())
            .unwrap_or(false)
    }

    pub fn commutes_with_all(&self, p: &PauliOperator) -> bool {
        self.gens
            .iter()
            .all(|g| p.commutes(&g.pauli).unwrap_or(false))
    }

    #[cfg(debug_assertions)]
    fn assert_invariants(&self) {
        for (i, a) in self.gens.iter().enumerate() {
            assert!(a.pauli.is_hermitian(), "generator {i} not Hermitian");
            for b in &self.gens[i + 1..] {
                assert!(
                    a.pauli.commutes(&b.pauli).unwrap(),
                    "generators do not commute"
                );
            }
        }
        let rank = crate::gf2::rank_of(self.gens.iter().map(|g| g.pauli.symplectic_row()));
        assert_eq!(rank, self.gens.len(), "generators dependent");
    }
}

impl std::fmt::Debug for StabilizerTableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "<")?;
        for g in &self.gens {
            writeln!(f, "  {:?} {}", g.record_mask, g.pauli)?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_dense_literal;

    fn lit(s: &str) -> PauliOperator {
        parse_dense_literal(s).unwrap()
    }

    fn id(k: u32) -> OutcomeId {
        OutcomeId(k)
    }

    #[test]
    fn fresh_measurement_extends() {
        let mut tab = StabilizerTableau::new(4);
        let case = tab.measure(&lit("XXII"), id(0)).unwrap();
        assert_eq!(case.case_number(), 1);
        let case = tab.measure(&lit("IIXX"), id(1)).unwrap();
        assert_eq!(case.case_number(), 1);
        assert_eq!(tab.rank(), 2);
    }

    #[test]
    fn remeasurement_is_deterministic() {
        let mut tab = StabilizerTableau::new(1);
        tab.measure(&lit("Z"), id(0)).unwrap();
        let case = tab.measure(&lit("Z"), id(1)).unwrap();
        let det = case.detector().expect("case 2");
        assert_eq!(det.expected_sign, 1);
        assert_eq!(det.outcomes, OutcomeSet::from_ids(vec![0, 1]));
        assert_eq!(tab.rank(), 1);
    }

    #[test]
    fn negated_remeasurement_flips_sign() {
        let mut tab = StabilizerTableau::new(1);
        tab.measure(&lit("Z"), id(0)).unwrap();
        let case = tab.measure(&lit("-Z"), id(1)).unwrap();
        assert_eq!(case.detector().unwrap().expected_sign, -1);
    }

    /// The worked two-round gauge-measurement evolution: measuring X1X2 and
    /// X3X4, then Z1Z3 and Z2Z4, then X1X2 and X3X4 again reproduces known
    /// presentations and the first detector.
    #[test]
    fn gauge_sequence_trace() {
        let mut tab = StabilizerTableau::new(4);
        tab.measure(&lit("XXII"), id(0)).unwrap();
        tab.measure(&lit("IIXX"), id(1)).unwrap();

        // Z1Z3 anticommutes with both X pairs: row normalisation multiplies
        // the later row into... the later anticommuting row picks up the pivot.
        let case = tab.measure(&lit("ZIZI"), id(2)).unwrap();
        assert_eq!(case.case_number(), 3);
        assert_eq!(
            tab.generators()[1].pauli,
            lit("XXXX"),
            "second row became the pair product"
        );
        assert_eq!(
            tab.generators()[1].record_mask,
            OutcomeSet::from_ids(vec![0, 1])
        );

        let case = tab.measure(&lit("IZIZ"), id(3)).unwrap();
        assert_eq!(case.case_number(), 1);
        assert_eq!(tab.rank(), 3);

        // Round 2: X1X2 replaces Z1Z3 and drags Z2Z4 into Z1Z2Z3Z4.
        let case = tab.measure(&lit("XXII"), id(4)).unwrap();
        assert_eq!(case.case_number(), 3);
        let (mask, sign) = tab.contains(&lit("ZZZZ")).unwrap().unwrap();
        assert_eq!(sign, 1);
        assert_eq!(mask, OutcomeSet::from_ids(vec![2, 3]));

        // X3X4 is now deterministic with the four-outcome detector.
        let case = tab.measure(&lit("IIXX"), id(5)).unwrap();
        let det = case.detector().expect("case 2");
        assert_eq!(det.expected_sign, 1);
        assert_eq!(det.outcomes, OutcomeSet::from_ids(vec![0, 1, 4, 5]));
        assert_eq!(tab.rank(), 3);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut tab = StabilizerTableau::new(1);
        let p = lit("X").mul_phase(1);
        assert!(tab.measure(&p, id(0)).is_err());
    }

    #[test]
    fn outcome_set_xor() {
        let a = OutcomeSet::from_ids(vec![0, 2, 5]);
        let b = OutcomeSet::from_ids(vec![2, 3]);
        assert_eq!(a.xor(&b), OutcomeSet::from_ids(vec![0, 3, 5]));
        assert_eq!(a.xor(&a), OutcomeSet::empty());
    }
}
