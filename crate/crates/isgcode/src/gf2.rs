//! Bit-packed GF(2) vectors and Gaussian elimination.
//!
//! Everything group-theoretic in this crate reduces to row operations over
//! GF(2); rows are packed into `u64` words so that XOR, dot products and
//! popcounts run word-parallel.

/// A fixed-length bit vector packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    /// Grow (zero-padded) to at least `len` bits.
    pub fn ensure_len(&mut self, len: usize) {
        if len > self.len {
            self.words.resize(len.div_ceil(64), 0);
            self.len = len;
        }
    }

    pub fn xor_with(&mut self, other: &Bits) {
        self.ensure_len(other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the AND of two vectors, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Popcount of the pairwise OR (used for Pauli weight).
    pub fn count_or(&self, other: &Bits) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Popcount of the pairwise AND.
    pub fn count_and(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Concatenation, used to stack (x|z) or (x|z|mask) rows.
    pub fn concat(&self, other: &Bits) -> Bits {
        let mut out = Bits::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, len: usize) -> Bits {
        let mut out = Bits::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// Incremental reduced row-echelon form with combination tracking.
///
/// Rows pushed into the eliminator are reduced against the current basis;
/// each stored row remembers which pushed rows it is a sum of, so membership
/// queries report the exact generator selection. The basis is kept fully
/// reduced (no stored row has a one in another stored row's pivot column),
/// which lets `reduce` run as a single pass.
pub struct Eliminator {
    rows: Vec<Row>,
    pushed: usize,
}

struct Row {
    vec: Bits,
    pivot: usize,
    combo: Bits,
}

impl Eliminator {
    pub fn new(_cols: usize) -> Self {
        Eliminator {
            rows: Vec::new(),
            pushed: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pushed(&self) -> usize {
        self.pushed
    }

    /// Reduce `row` against the basis; returns the residue and the
    /// combination of previously pushed rows used to reach it.
    pub fn reduce(&self, row: &Bits) -> (Bits, Bits) {
        let mut r = row.clone();
        let mut combo = Bits::zeros(self.pushed.max(1));
        for stored in &self.rows {
            if r.get(stored.pivot) {
                r.xor_with(&stored.vec);
                combo.xor_with(&stored.combo);
            }
        }
        (r, combo)
    }

    /// Push a row; returns `true` if it was independent of the rows so far.
    pub fn push(&mut self, row: &Bits) -> bool {
        let idx = self.pushed;
        let (r, mut combo) = self.reduce(row);
        self.pushed += 1;
        combo.ensure_len(idx + 1);
        combo.flip(idx);
        let Some(pivot) = r.first_one() else {
            return false;
        };
        // Clear the new pivot column from every stored row to stay in RREF.
        for stored in &mut self.rows {
            if stored.vec.get(pivot) {
                stored.vec.xor_with(&r);
                stored.combo.xor_with(&combo);
            }
        }
        self.rows.push(Row {
            vec: r,
            pivot,
            combo,
        });
        true
    }

    /// Express `row` as a combination of pushed rows, if possible.
    pub fn solve(&self, row: &Bits) -> Option<Vec<usize>> {
        let (r, combo) = self.reduce(row);
        if r.is_zero() {
            Some(combo.iter_ones().collect())
        } else {
            None
        }
    }

    /// Membership without the selection.
    pub fn contains(&self, row: &Bits) -> bool {
        let mut r = row.clone();
        for stored in &self.rows {
            if r.get(stored.pivot) {
                r.xor_with(&stored.vec);
            }
        }
        r.is_zero()
    }
}

/// Rank of a set of rows, without combination tracking.
pub fn rank_of(rows: impl IntoIterator<Item = Bits>) -> usize {
    let mut e = Eliminator::new(0);
    let mut rank = 0;
    for r in rows {
        if e.push(&r) {
            rank += 1;
        }
    }
    rank
}

/// Nullspace basis of a linear system given as constraint rows over `cols`
/// variables. Returns vectors `v` with `A v = 0`.
pub fn nullspace(constraints: &[Bits], cols: usize) -> Vec<Bits> {
    let mut rows: Vec<(Bits, usize)> = Vec::new();
    for c in constraints {
        let mut r = c.clone();
        for (row, p) in &rows {
            if r.get(*p) {
                r.xor_with(row);
            }
        }
        if let Some(p) = r.first_one() {
            for (row, _) in &mut rows {
                if row.get(p) {
                    row.xor_with(&r);
                }
            }
            rows.push((r, p));
        }
    }
    let mut is_pivot = vec![false; cols];
    for (_, p) in &rows {
        is_pivot[*p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = Bits::zeros(cols);
        v.set(free, true);
        for (row, p) in &rows {
            if row.get(free) {
                v.set(*p, true);
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Bits {
        let mut b = Bits::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            b.set(i, c == '1');
        }
        b
    }

    #[test]
    fn eliminator_tracks_combinations() {
        let mut e = Eliminator::new(4);
        assert!(e.push(&bits("1100")));
        assert!(e.push(&bits("0110")));
        assert!(!e.push(&bits("1010"))); // sum of the first two
        assert_eq!(e.rank(), 2);
        let sel = e.solve(&bits("1010")).unwrap();
        assert_eq!(sel, vec![0, 1]);
        assert!(e.solve(&bits("0001")).is_none());
    }

    #[test]
    fn eliminator_handles_out_of_order_pivots() {
        let mut e = Eliminator::new(4);
        assert!(e.push(&bits("0011")));
        assert!(e.push(&bits("1111")));
        assert!(e.push(&bits("0110")));
        // 1010 = 1111 + 0110 + 0011
        let sel = e.solve(&bits("1010")).unwrap();
        assert_eq!(sel, vec![0, 1, 2]);
    }

    #[test]
    fn nullspace_solves_small_system() {
        // x0 + x1 = 0, x1 + x2 = 0 over 3 vars -> basis {111}
        let cons = vec![bits("110"), bits("011")];
        let ns = nullspace(&cons, 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(format!("{:?}", ns[0]), "111");
    }

    #[test]
    fn dot_and_weights() {
        let a = bits("1101");
        let b = bits("1011");
        assert!(!a.dot(&b)); // overlap = 2 bits
        assert_eq!(a.count_or(&b), 4);
        assert_eq!(a.count_and(&b), 2);
        assert_eq!(a.iter_ones().collect::<Vec<_>>(), vec![0, 1, 3]);
    }
}
