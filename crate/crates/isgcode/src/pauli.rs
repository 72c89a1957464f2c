//! Phased n-qubit Pauli operators over the GF(2) symplectic representation.
//!
//! An operator is stored as `i^phase * prod_j X_j^{x_j} Z_j^{z_j}` with the
//! X factor ordered before the Z factor on every qubit. Under this convention
//! Hermiticity is the linear predicate `phase = x.z (mod 2)` and
//! multiplication picks up the closed-form phase `2 * (z_left . x_right)`.

use crate::error::IsgError;
use crate::gf2::{Bits, Eliminator};

/// Qubit naming for lattice-defined codes; the flat index is always the
/// authoritative coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum QubitLabel {
    Flat(usize),
    /// (colour, style) pair on the double hexagon, colour mod 6, style mod 2.
    ColourStyle(u8, u8),
    /// Integer coordinates on a square lattice torus.
    Coord(i64, i64),
}

impl std::fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QubitLabel::Flat(i) => write!(f, "{i}"),
            QubitLabel::ColourStyle(i, j) => write!(f, "({i},{j})"),
            QubitLabel::Coord(x, y) => write!(f, "({x},{y})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    phase: u8, // exponent of i, mod 4
    x: Bits,
    z: Bits,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            n,
            phase: 0,
            x: Bits::zeros(n),
            z: Bits::zeros(n),
        }
    }

    /// Single-qubit letter embedded at `qubit`, Hermitian by construction.
    pub fn single(n: usize, qubit: usize, letter: PauliLetter) -> Self {
        let mut p = Self::identity(n);
        match letter {
            PauliLetter::I => {}
            PauliLetter::X => p.x.set(qubit, true),
            PauliLetter::Z => p.z.set(qubit, true),
            PauliLetter::Y => {
                p.x.set(qubit, true);
                p.z.set(qubit, true);
                p.phase = 1; // Y = i XZ
            }
        }
        p
    }

    /// Product of same-basis letters on a support set, e.g. X1X2 or Z1Z3.
    pub fn on_support(n: usize, qubits: &[usize], letter: PauliLetter) -> Self {
        let mut p = Self::identity(n);
        for &q in qubits {
            let s = Self::single(n, q, letter);
            p = p.multiply(&s).expect("same n");
        }
        p
    }

    pub fn from_parts(n: usize, phase: u8, x: Bits, z: Bits) -> Result<Self, IsgError> {
        if x.len() != n || z.len() != n {
            return Err(IsgError::Dimension {
                expected: n,
                found: x.len().max(z.len()),
            });
        }
        Ok(PauliOperator {
            n,
            phase: phase % 4,
            x,
            z,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn x_bits(&self) -> &Bits {
        &self.x
    }

    pub fn z_bits(&self) -> &Bits {
        &self.z
    }

    pub fn letter(&self, qubit: usize) -> PauliLetter {
        match (self.x.get(qubit), self.z.get(qubit)) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (false, true) => PauliLetter::Z,
            (true, true) => PauliLetter::Y,
        }
    }

    pub fn weight(&self) -> usize {
        self.x.count_or(&self.z)
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Hermitian iff the phase exponent matches the Y-count parity.
    pub fn is_hermitian(&self) -> bool {
        (self.phase & 1) as usize == self.x.count_and(&self.z) % 2
    }

    /// Numeric sign of a Hermitian operator relative to the convention that
    /// letters multiply to a + sign (e.g. +YY has phase exponent 2).
    pub fn sign(&self) -> Option<i8> {
        if !self.is_hermitian() {
            return None;
        }
        let canonical = (self.x.count_and(&self.z) % 4) as u8;
        Some(if (self.phase + 4 - canonical) % 4 == 0 {
            1
        } else {
            -1
        })
    }

    /// Exact group product `self * rhs` under the X-before-Z convention.
    pub fn multiply(&self, rhs: &PauliOperator) -> Result<PauliOperator, IsgError> {
        if self.n != rhs.n {
            return Err(IsgError::Dimension {
                expected: self.n,
                found: rhs.n,
            });
        }
        let cross = self.z.dot(&rhs.x); // Z X = -X Z per overlapping qubit
        let mut x = self.x.clone();
        x.xor_with(&rhs.x);
        let mut z = self.z.clone();
        z.xor_with(&rhs.z);
        Ok(PauliOperator {
            n: self.n,
            phase: (self.phase + rhs.phase + if cross { 2 } else { 0 }) % 4,
            x,
            z,
        })
    }

    pub fn commutes(&self, rhs: &PauliOperator) -> Result<bool, IsgError> {
        if self.n != rhs.n {
            return Err(IsgError::Dimension {
                expected: self.n,
                found: rhs.n,
            });
        }
        Ok(self.x.dot(&rhs.z) == self.z.dot(&rhs.x))
    }

    pub fn anticommutes(&self, rhs: &PauliOperator) -> Result<bool, IsgError> {
        self.commutes(rhs).map(|c| !c)
    }

    /// Stacked (x|z) row for GF(2) elimination.
    pub fn symplectic_row(&self) -> Bits {
        self.x.concat(&self.z)
    }

    /// Multiply the global phase by i^k.
    pub fn mul_phase(&self, k: u8) -> PauliOperator {
        let mut p = self.clone();
        p.phase = (p.phase + k) % 4;
        p
    }

    /// Same operator with phase exponent reduced mod <i>, i.e. forgetting sign.
    pub fn unsigned(&self) -> PauliOperator {
        let mut p = self.clone();
        p.phase = 0;
        p
    }

    /// Hermitian representative of the projective class: keeps the letters,
    /// picks the + sign.
    pub fn canonical_hermitian(&self) -> PauliOperator {
        let mut p = self.clone();
        p.phase = (p.x.count_and(&p.z) % 4) as u8;
        p
    }

    pub fn equals_up_to_phase(&self, rhs: &PauliOperator) -> bool {
        self.x == rhs.x && self.z == rhs.z
    }
}

/// Find a subset of `gens` whose product equals `i^c * p`, phase-exact.
///
/// Returns the selected indices and the exponent `c`, or `None` when `p` is
/// not in the span of `gens` modulo phase. Generators need not be
/// independent; the selection re-multiplies exactly so `c` is trustworthy.
pub fn solve_membership(
    p: &PauliOperator,
    gens: &[PauliOperator],
) -> Result<Option<(Vec<usize>, u8)>, IsgError> {
    let n = p.qubit_count();
    let mut elim = Eliminator::new(2 * n);
    for g in gens {
        if g.qubit_count() != n {
            return Err(IsgError::Dimension {
                expected: n,
                found: g.qubit_count(),
            });
        }
        elim.push(&g.symplectic_row());
    }
    let Some(selection) = elim.solve(&p.symplectic_row()) else {
        return Ok(None);
    };
    let mut prod = PauliOperator::identity(n);
    for &i in &selection {
        prod = prod.multiply(&gens[i])?;
    }
    debug_assert!(prod.equals_up_to_phase(p));
    let c = (prod.phase + 4 - p.phase) % 4;
    Ok(Some((selection, c)))
}

// ---------------------------------------------------------------------------
// Literal syntax: `[+|-][i]` then one letter of {I,X,Y,Z} per qubit, or the
// sparse indexed form `X1 Z3` (indices 0-based). Lattice-labelled literals
// like `X(0,0) X(0,1)` resolve through an explicit label table.
// ---------------------------------------------------------------------------

impl std::fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let canonical = (self.x.count_and(&self.z) % 4) as u8;
        let rel = (self.phase + 4 - canonical) % 4;
        let prefix = match rel {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}")?;
        for q in 0..self.n {
            let c = match self.letter(q) {
                PauliLetter::I => 'I',
                PauliLetter::X => 'X',
                PauliLetter::Y => 'Y',
                PauliLetter::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse a dense literal such as `+XXII`, `-iZY`, `XIZ`.
pub fn parse_dense_literal(s: &str) -> Result<PauliOperator, IsgError> {
    let (sign, rest) = parse_phase_prefix(s);
    let mut letters = Vec::new();
    for ch in rest.chars() {
        letters.push(letter_of(ch).ok_or_else(|| IsgError::Parse {
            line: 0,
            message: format!("invalid Pauli letter '{ch}' in literal '{s}'"),
        })?);
    }
    if letters.is_empty() {
        return Err(IsgError::Parse {
            line: 0,
            message: format!("empty Pauli literal '{s}'"),
        });
    }
    let n = letters.len();
    let mut p = PauliOperator::identity(n);
    for (q, l) in letters.into_iter().enumerate() {
        p = p.multiply(&PauliOperator::single(n, q, l)).unwrap();
    }
    Ok(p.mul_phase(sign))
}

/// Parse the sparse form `X0 Z3 Y5` on `n` qubits, or a dense literal.
/// Coordinate labels such as `X(0,1)` are resolved through `labels` when
/// provided.
pub fn parse_literal(
    s: &str,
    n: usize,
    labels: Option<&[QubitLabel]>,
) -> Result<PauliOperator, IsgError> {
    let trimmed = s.trim();
    let (sign, rest) = parse_phase_prefix(trimmed);
    let rest = rest.trim();
    let sparse_like = rest
        .chars()
        .any(|c| c.is_ascii_digit() || c == '(' || c == ' ');
    if !sparse_like {
        let p = parse_dense_literal(trimmed)?;
        if p.qubit_count() != n {
            return Err(IsgError::Dimension {
                expected: n,
                found: p.qubit_count(),
            });
        }
        return Ok(p);
    }
    let mut p = PauliOperator::identity(n);
    for tok in rest.split_whitespace() {
        let mut chars = tok.chars();
        let letter = chars.next().and_then(letter_of).ok_or(IsgError::Parse {
            line: 0,
            message: format!("invalid Pauli factor '{tok}'"),
        })?;
        let site = chars.as_str();
        let q = resolve_site(site, labels).ok_or_else(|| IsgError::Parse {
            line: 0,
            message: format!("unknown qubit '{site}' in factor '{tok}'"),
        })?;
        if q >= n {
            return Err(IsgError::Dimension {
                expected: n,
                found: q + 1,
            });
        }
        p = p.multiply(&PauliOperator::single(n, q, letter)).unwrap();
    }
    Ok(p.mul_phase(sign))
}

fn parse_phase_prefix(s: &str) -> (u8, &str) {
    let mut sign = 0u8;
    let mut rest = s;
    if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    } else if let Some(r) = rest.strip_prefix('-') {
        sign = 2;
        rest = r;
    }
    if let Some(r) = rest.strip_prefix('i') {
        sign = (sign + 1) % 4;
        rest = r;
    }
    (sign, rest)
}

fn letter_of(c: char) -> Option<PauliLetter> {
    match c {
        'I' => Some(PauliLetter::I),
        'X' => Some(PauliLetter::X),
        'Y' => Some(PauliLetter::Y),
        'Z' => Some(PauliLetter::Z),
        _ => None,
    }
}

fn resolve_site(site: &str, labels: Option<&[QubitLabel]>) -> Option<usize> {
    if let Ok(idx) = site.parse::<usize>() {
        return Some(idx);
    }
    let labels = labels?;
    let inner = site.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    let a: i64 = a.trim().parse().ok()?;
    let b: i64 = b.trim().parse().ok()?;
    labels.iter().position(|l| match l {
        QubitLabel::Coord(x, y) => *x == a && *y == b,
        QubitLabel::ColourStyle(i, j) => i64::from(*i) == a && i64::from(*j) == b,
        QubitLabel::Flat(_) => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> PauliOperator {
        parse_dense_literal(s).unwrap()
    }

    #[test]
    fn involution_of_x() {
        let x = lit("XI");
        let p = x.multiply(&x).unwrap();
        assert!(p.is_identity_up_to_phase());
        assert_eq!(p.phase_exp(), 0);
    }

    #[test]
    fn xz_product_keeps_convention_phase() {
        // X * Z = XZ with phase exponent 0 in this convention (equals -iY).
        let p = lit("XI").multiply(&lit("ZI")).unwrap();
        assert_eq!(p.phase_exp(), 0);
        assert!(p.x_bits().get(0) && p.z_bits().get(0));
        // And Z * X = i^2 XZ.
        let q = lit("ZI").multiply(&lit("XI")).unwrap();
        assert_eq!(q.phase_exp(), 2);
    }

    #[test]
    fn gauge_pair_product() {
        let p = lit("XXII").multiply(&lit("XXXX")).unwrap();
        assert_eq!(p, lit("IIXX"));
        assert_eq!(p.phase_exp(), 0);
    }

    #[test]
    fn commutation_cases() {
        assert!(!lit("XXII").commutes(&lit("ZIZI")).unwrap());
        assert!(lit("XXXX").commutes(&lit("ZIZI")).unwrap());
        assert!(lit("YYZI").commutes(&lit("IIII")).unwrap());
    }

    #[test]
    fn hermitian_predicate() {
        assert!(lit("XYZI").is_hermitian());
        assert!(lit("-YY").is_hermitian());
        assert!(!lit("iXI").is_hermitian());
        assert_eq!(lit("YY").sign(), Some(1));
        assert_eq!(lit("-YY").sign(), Some(-1));
    }

    #[test]
    fn membership_finds_exact_phase() {
        let gens = vec![lit("XXII"), lit("XXXX")];
        let (sel, c) = solve_membership(&lit("IIXX"), &gens).unwrap().unwrap();
        assert_eq!(sel, vec![0, 1]);
        assert_eq!(c, 0);
        let (sel, c) = solve_membership(&lit("-IIXX"), &gens).unwrap().unwrap();
        assert_eq!(sel, vec![0, 1]);
        assert_eq!(c, 2);
        assert!(solve_membership(&lit("ZIII"), &gens).unwrap().is_none());
        let (sel, c) = solve_membership(&lit("IIII"), &gens).unwrap().unwrap();
        assert!(sel.is_empty());
        assert_eq!(c, 0);
    }

    #[test]
    fn literal_round_trip() {
        for s in ["+XXII", "-iZY", "+IIII", "-XZYI", "+iYI"] {
            let p = lit(s);
            assert_eq!(format!("{p}"), s.replace("+i", "+i"));
        }
        assert_eq!(format!("{}", lit("XX")), "+XX");
    }

    #[test]
    fn sparse_and_coordinate_literals() {
        let p = parse_literal("X0 X1", 4, None).unwrap();
        assert_eq!(p, lit("XXII"));
        let labels = vec![QubitLabel::Coord(0, 0), QubitLabel::Coord(0, 1)];
        let q = parse_literal("X(0,0) X(0,1)", 2, Some(&labels)).unwrap();
        assert_eq!(q, lit("XX"));
    }

    #[test]
    fn weight_ignores_phase() {
        assert_eq!(lit("-iXYIZ").weight(), 3);
        assert_eq!(lit("IIII").weight(), 0);
    }
}
