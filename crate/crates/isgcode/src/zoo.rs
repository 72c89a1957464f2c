//! Constructors for the built-in code instances: repetition, [[4,2,2]],
//! the two-round gauge schedule, the double hexagon code, the colour code on
//! a torus, and the Floquetified colour code built from a tile data file.

use crate::error::IsgError;
use crate::pauli::{PauliLetter, PauliOperator, QubitLabel};
use crate::schedule::MeasurementSchedule;

/// Distance-two repetition code: M = [<Z1Z2>], period 1.
pub fn make_repetition() -> MeasurementSchedule {
    let zz = PauliOperator::on_support(2, &[0, 1], PauliLetter::Z);
    MeasurementSchedule::periodic(2, vec![vec![zz]])
        .expect("static schedule")
        .with_labels(vec![QubitLabel::Flat(0), QubitLabel::Flat(1)])
}

/// The [[4,2,2]] code: M = [<Z1Z2Z3Z4>, <X1X2X3X4>], period 2.
pub fn make_422() -> MeasurementSchedule {
    let z4 = PauliOperator::on_support(4, &[0, 1, 2, 3], PauliLetter::Z);
    let x4 = PauliOperator::on_support(4, &[0, 1, 2, 3], PauliLetter::X);
    MeasurementSchedule::periodic(4, vec![vec![z4], vec![x4]]).expect("static schedule")
}

/// Two-round gauge-generator schedule of the distance-two subsystem code:
/// M = [<X1X2, X3X4>, <Z1Z3, Z2Z4>], period 2.
pub fn make_bacon_shor() -> MeasurementSchedule {
    let n = 4;
    MeasurementSchedule::periodic(
        n,
        vec![
            vec![
                PauliOperator::on_support(n, &[0, 1], PauliLetter::X),
                PauliOperator::on_support(n, &[2, 3], PauliLetter::X),
            ],
            vec![
                PauliOperator::on_support(n, &[0, 2], PauliLetter::Z),
                PauliOperator::on_support(n, &[1, 3], PauliLetter::Z),
            ],
        ],
    )
    .expect("static schedule")
}

/// The four-round singleton schedule over the same gauge generators,
/// [<X1X2>, <Z2Z4>, <X3X4>, <Z1Z3>]. Measures the gauge group one generator
/// at a time; its ISG never contains the subsystem stabilizers.
pub fn make_bacon_shor_singletons() -> MeasurementSchedule {
    let n = 4;
    MeasurementSchedule::periodic(
        n,
        vec![
            vec![PauliOperator::on_support(n, &[0, 1], PauliLetter::X)],
            vec![PauliOperator::on_support(n, &[1, 3], PauliLetter::Z)],
            vec![PauliOperator::on_support(n, &[2, 3], PauliLetter::X)],
            vec![PauliOperator::on_support(n, &[0, 2], PauliLetter::Z)],
        ],
    )
    .expect("static schedule")
}

// ---------------------------------------------------------------------------
// Double hexagon code
// ---------------------------------------------------------------------------

/// Flat index of double-hexagon qubit (colour i mod 6, style j mod 2).
pub fn hexagon_qubit(i: i64, j: i64) -> usize {
    (2 * i.rem_euclid(6) + j.rem_euclid(2)) as usize
}

/// The period-6 Floquetification of the [[4,2,2]] code on twelve qubits.
/// Round t measures, in basis X for even t and Z for odd t:
/// two weight-one operators on colour t and five weight-two operators.
pub fn make_double_hexagon() -> MeasurementSchedule {
    let n = 12;
    let mut rounds = Vec::with_capacity(6);
    for t in 0i64..6 {
        let b = if t % 2 == 0 {
            PauliLetter::X
        } else {
            PauliLetter::Z
        };
        let single = |i: i64, j: i64| PauliOperator::single(n, hexagon_qubit(i, j), b);
        let pair = |a: (i64, i64), c: (i64, i64)| {
            PauliOperator::on_support(n, &[hexagon_qubit(a.0, a.1), hexagon_qubit(c.0, c.1)], b)
        };
        rounds.push(vec![
            single(t, 0),
            single(t, 1),
            pair((t + 1, 0), (t + 2, 0)),
            pair((t + 1, 1), (t + 2, 1)),
            pair((t + 3, 0), (t + 3, 1)),
            pair((t + 4, 0), (t + 5, 0)),
            pair((t + 4, 1), (t + 5, 1)),
        ]);
    }
    let labels = (0..12)
        .map(|q| QubitLabel::ColourStyle((q / 2) as u8, (q % 2) as u8))
        .collect();
    MeasurementSchedule::periodic(n, rounds)
        .expect("static schedule")
        .with_labels(labels)
}

/// The weight-six operator s_t that, together with the round generators,
/// presents the established double-hexagon ISG: X-type for even t, Z-type
/// for odd t, supported on colours t, t-1, t-2 in both styles.
pub fn double_hexagon_s(t: i64) -> PauliOperator {
    let b = if t.rem_euclid(2) == 0 {
        PauliLetter::X
    } else {
        PauliLetter::Z
    };
    let support: Vec<usize> = (0..3)
        .flat_map(|d| [hexagon_qubit(t - d, 0), hexagon_qubit(t - d, 1)])
        .collect();
    PauliOperator::on_support(12, &support, b)
}

// ---------------------------------------------------------------------------
// Colour code on a torus
// ---------------------------------------------------------------------------

/// 6.6.6 colour code on an a x b torus of hexagons (both multiples of 3 so
/// the face three-colouring closes up). Qubits sit on the 2ab vertices;
/// the schedule alternates all Z-face and all X-face measurements.
pub fn make_colour_code_torus(a: usize, b: usize) -> Result<MeasurementSchedule, IsgError> {
    if a == 0 || b == 0 || a % 3 != 0 || b % 3 != 0 {
        return Err(IsgError::Construction(format!(
            "torus dimensions ({a},{b}) must be positive multiples of 3 \
             so that faces are three-colourable"
        )));
    }
    let n = 2 * a * b;
    let faces = colour_code_faces(a, b);
    let z_round: Vec<PauliOperator> = faces
        .iter()
        .map(|f| PauliOperator::on_support(n, f, PauliLetter::Z))
        .collect();
    let x_round: Vec<PauliOperator> = faces
        .iter()
        .map(|f| PauliOperator::on_support(n, f, PauliLetter::X))
        .collect();
    let labels = (0..n)
        .map(|q| QubitLabel::Coord((q / 2 % a) as i64, (q / 2 / a) as i64))
        .collect();
    Ok(MeasurementSchedule::periodic(n, vec![z_round, x_round])?.with_labels(labels))
}

/// Vertex sets of the hexagonal faces. Vertices are indexed
/// 2*(j*a + i) + u for cell (i, j) and sublattice u in {0, 1}.
pub fn colour_code_faces(a: usize, b: usize) -> Vec<Vec<usize>> {
    let idx = |i: i64, j: i64, u: usize| -> usize {
        let i = i.rem_euclid(a as i64) as usize;
        let j = j.rem_euclid(b as i64) as usize;
        2 * (j * a + i) + u
    };
    let mut faces = Vec::with_capacity(a * b);
    for j in 0..b as i64 {
        for i in 0..a as i64 {
            faces.push(vec![
                idx(i, j, 0),
                idx(i, j, 1),
                idx(i, j + 1, 0),
                idx(i - 1, j + 1, 1),
                idx(i - 1, j + 1, 0),
                idx(i - 1, j, 1),
            ]);
        }
    }
    faces
}

// ---------------------------------------------------------------------------
// Floquetified colour code: tile data, validation, torus builder
// ---------------------------------------------------------------------------

pub const TILE_PERIOD: usize = 13;

/// One measurement of the bulk tile at a given timestep. Positions are
/// square-lattice coordinates; weight-two measurements name a nearest
/// neighbour partner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TileEntry {
    pub t: usize,
    pub pos: (i64, i64),
    pub basis: PauliLetter,
    pub partner: Option<(i64, i64)>,
}

/// The bulk measurement pattern of the Floquetified colour code: one tile of
/// each of the 13 timesteps, plus the tiling vectors that repeat it in space
/// and the per-timestep translation step.
#[derive(Clone, Debug)]
pub struct FloquetTile {
    pub tiling: [(i64, i64); 2],
    pub step: (i64, i64),
    pub entries: Vec<TileEntry>,
}

impl FloquetTile {
    /// Tile area: qubits per fundamental domain.
    pub fn cell_size(&self) -> usize {
        let [u, w] = self.tiling;
        (u.0 * w.1 - u.1 * w.0).unsigned_abs() as usize
    }

    pub fn entries_at(&self, t: usize) -> impl Iterator<Item = &TileEntry> {
        self.entries.iter().filter(move |e| e.t == t)
    }

    /// Residue of a lattice point modulo the tiling lattice, as a flat index
    /// in 0..cell_size().
    pub fn residue(&self, pos: (i64, i64)) -> usize {
        lattice_residue(self.tiling, pos)
    }

    /// Run every structural invariant; an error names the violated relation.
    /// This is the guard against a mis-transcribed tile.
    pub fn validate(&self) -> Result<(), IsgError> {
        let cell = self.cell_size();
        if cell == 0 {
            return Err(IsgError::TileValidation(
                "tiling vectors are dependent".into(),
            ));
        }
        for e in &self.entries {
            if e.t >= TILE_PERIOD {
                return Err(IsgError::TileValidation(format!(
                    "entry timestep {} outside period {TILE_PERIOD}",
                    e.t
                )));
            }
            if !matches!(e.basis, PauliLetter::X | PauliLetter::Z) {
                return Err(IsgError::TileValidation(
                    "entries must be X or Z type".into(),
                ));
            }
            if let Some(p) = e.partner {
                let d = (p.0 - e.pos.0).abs() + (p.1 - e.pos.1).abs();
                if d != 1 {
                    return Err(IsgError::TileValidation(format!(
                        "partner {:?} of {:?} is not a nearest neighbour",
                        p, e.pos
                    )));
                }
            }
        }
        // Each timestep covers every residue class exactly once.
        for t in 0..TILE_PERIOD {
            let mut seen = vec![false; cell];
            let mut count = 0usize;
            for e in self.entries_at(t) {
                let mut sites = vec![e.pos];
                sites.extend(e.partner);
                for s in sites {
                    let r = self.residue(s);
                    if seen[r] {
                        return Err(IsgError::TileValidation(format!(
                            "timestep {t}: residue class of {s:?} measured twice"
                        )));
                    }
                    seen[r] = true;
                    count += 1;
                }
            }
            if count != cell {
                return Err(IsgError::TileValidation(format!(
                    "timestep {t}: {count} qubit slots measured, expected {cell}"
                )));
            }
        }
        // Step relation: timestep t+1 is timestep t translated by `step`
        // (indices mod the period, positions mod the tiling lattice).
        for t in 0..TILE_PERIOD {
            let next = (t + 1) % TILE_PERIOD;
            let translated: Vec<CanonEntry> = self
                .entries_at(t)
                .map(|e| self.canonical(e.shifted(self.step), false))
                .collect();
            if !self.same_entry_set(next, &translated) {
                return Err(IsgError::TileValidation(format!(
                    "step relation broken between timesteps {t} and {next}"
                )));
            }
        }
        // Neighbour relations: translating by (0,1) shifts the pattern to
        // t-2 with X and Z exchanged; translating by (1,0) shifts it to t-8.
        for (shift, dt) in [((0i64, 1i64), 2usize), ((1, 0), 8)] {
            for t in 0..TILE_PERIOD {
                let target = (t + TILE_PERIOD - dt) % TILE_PERIOD;
                let translated: Vec<CanonEntry> = self
                    .entries_at(t)
                    .map(|e| self.canonical(e.shifted(shift), true))
                    .collect();
                if !self.same_entry_set(target, &translated) {
                    return Err(IsgError::TileValidation(format!(
                        "neighbour relation for shift {shift:?} broken at timestep {t}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn canonical(&self, e: TileEntry, swap: bool) -> CanonEntry {
        let basis = if swap {
            match e.basis {
                PauliLetter::X => PauliLetter::Z,
                PauliLetter::Z => PauliLetter::X,
                other => other,
            }
        } else {
            e.basis
        };
        let mut sites = vec![self.residue(e.pos)];
        sites.extend(e.partner.map(|p| self.residue(p)));
        sites.sort_unstable();
        CanonEntry { sites, basis }
    }

    fn same_entry_set(&self, t: usize, translated: &[CanonEntry]) -> bool {
        let mut expect: Vec<CanonEntry> = self
            .entries_at(t)
            .map(|e| self.canonical(*e, false))
            .collect();
        let mut got = translated.to_vec();
        expect.sort();
        got.sort();
        expect == got
    }
}

impl TileEntry {
    fn shifted(&self, d: (i64, i64)) -> TileEntry {
        TileEntry {
            t: self.t,
            pos: (self.pos.0 + d.0, self.pos.1 + d.1),
            basis: self.basis,
            partner: self.partner.map(|p| (p.0 + d.0, p.1 + d.1)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct CanonEntry {
    sites: Vec<usize>,
    basis: PauliLetter,
}

/// Flat residue index of `pos` modulo the lattice spanned by `basis`,
/// via the Hermite form of the basis.
fn lattice_residue(basis: [(i64, i64); 2], pos: (i64, i64)) -> usize {
    let (g, e2, det) = lattice_hermite(basis);
    let x_period = det / g;
    let t2 = pos.1.div_euclid(g);
    let y = pos.1.rem_euclid(g);
    let x = (pos.0 - t2 * e2.0).rem_euclid(x_period);
    (x + x_period * y) as usize
}

/// Returns (g, e2, det): g is the smallest positive y-coordinate in the
/// lattice, e2 a lattice vector realizing it, det the index in Z^2.
fn lattice_hermite(basis: [(i64, i64); 2]) -> (i64, (i64, i64), i64) {
    let [u, w] = basis;
    let det = (u.0 * w.1 - u.1 * w.0).abs();
    assert!(det > 0, "degenerate lattice");
    let (g, a, b) = egcd(u.1, w.1);
    let e2 = (a * u.0 + b * w.0, g);
    (g, e2, det)
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else if a == 0 {
            (0, 0, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Parse the tile file format:
///
/// ```text
/// period=13 tiling=(3,1),(-2,8) step=(-1,-3)
/// t=0 (0,0) X
/// t=0 (1,0) Z partner=(2,0)
/// ```
pub fn parse_floquet_tile(text: &str) -> Result<FloquetTile, IsgError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let l = l.trim();
        !l.is_empty() && !l.starts_with('#')
    });
    let (lineno, header) = lines.next().ok_or(IsgError::Parse {
        line: 1,
        message: "empty tile file".into(),
    })?;
    let mut tiling = None;
    let mut step = None;
    for tok in header.split_whitespace() {
        if let Some(v) = tok.strip_prefix("period=") {
            if v != "13" {
                return Err(IsgError::Parse {
                    line: lineno + 1,
                    message: format!("unsupported tile period '{v}'"),
                });
            }
        } else if let Some(v) = tok.strip_prefix("tiling=") {
            let (a, b) = v.split_once("),(").ok_or(IsgError::Parse {
                line: lineno + 1,
                message: "bad tiling vectors".into(),
            })?;
            tiling = Some([
                parse_vec(a, lineno)?,
                parse_vec(b, lineno)?,
            ]);
        } else if let Some(v) = tok.strip_prefix("step=") {
            step = Some(parse_vec(v, lineno)?);
        } else {
            return Err(IsgError::Parse {
                line: lineno + 1,
                message: format!("unexpected header token '{tok}'"),
            });
        }
    }
    let tiling = tiling.ok_or(IsgError::Parse {
        line: lineno + 1,
        message: "missing tiling= in header".into(),
    })?;
    let step = step.ok_or(IsgError::Parse {
        line: lineno + 1,
        message: "missing step= in header".into(),
    })?;
    let mut entries = Vec::new();
    for (lineno, line) in lines {
        let mut toks = line.split_whitespace();
        let terr = |m: String| IsgError::Parse {
            line: lineno + 1,
            message: m,
        };
        let t: usize = toks
            .next()
            .and_then(|s| s.strip_prefix("t="))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| terr(format!("bad entry line '{line}'")))?;
        let pos = parse_vec(
            toks.next()
                .ok_or_else(|| terr("missing position".into()))?,
            lineno,
        )?;
        let basis = match toks.next() {
            Some("X") => PauliLetter::X,
            Some("Z") => PauliLetter::Z,
            other => return Err(terr(format!("bad basis {other:?}"))),
        };
        let partner = match toks.next() {
            None => None,
            Some(s) => {
                let v = s
                    .strip_prefix("partner=")
                    .ok_or_else(|| terr(format!("unexpected token '{s}'")))?;
                Some(parse_vec(v, lineno)?)
            }
        };
        entries.push(TileEntry {
            t,
            pos,
            basis,
            partner,
        });
    }
    Ok(FloquetTile {
        tiling,
        step,
        entries,
    })
}

fn parse_vec(s: &str, lineno: usize) -> Result<(i64, i64), IsgError> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = inner.split_once(',').ok_or(IsgError::Parse {
        line: lineno + 1,
        message: format!("bad coordinate pair '{s}'"),
    })?;
    let parse = |t: &str| {
        t.trim().parse::<i64>().map_err(|_| IsgError::Parse {
            line: lineno + 1,
            message: format!("bad integer '{t}'"),
        })
    };
    Ok((parse(a)?, parse(b)?))
}

pub fn format_floquet_tile(tile: &FloquetTile) -> String {
    let mut out = format!(
        "period={} tiling=({},{}),({},{}) step=({},{})\n",
        TILE_PERIOD,
        tile.tiling[0].0,
        tile.tiling[0].1,
        tile.tiling[1].0,
        tile.tiling[1].1,
        tile.step.0,
        tile.step.1
    );
    for e in &tile.entries {
        let b = match e.basis {
            PauliLetter::X => "X",
            _ => "Z",
        };
        out.push_str(&format!("t={} ({},{}) {b}", e.t, e.pos.0, e.pos.1));
        if let Some(p) = e.partner {
            out.push_str(&format!(" partner=({},{})", p.0, p.1));
        }
        out.push('\n');
    }
    out
}

/// Load and validate a tile from a file path.
pub fn load_floquet_tile(path: &std::path::Path) -> Result<FloquetTile, IsgError> {
    let text = std::fs::read_to_string(path)?;
    let tile = parse_floquet_tile(&text)?;
    tile.validate()?;
    Ok(tile)
}

/// The tile shipped with the crate.
pub fn builtin_floquet_tile() -> Result<FloquetTile, IsgError> {
    let tile = parse_floquet_tile(include_str!("../data/floquet_tile.txt"))?;
    tile.validate()?;
    Ok(tile)
}

/// Period-13 schedule on a torus of `cols x rows` tiles. Qubits are the
/// residues of the square lattice modulo cols*u and rows*w for tiling
/// vectors u, w; every measurement has weight one or two.
pub fn make_floquetified_colour_code_torus(
    tile: &FloquetTile,
    cols: usize,
    rows: usize,
) -> Result<MeasurementSchedule, IsgError> {
    if cols == 0 || rows == 0 {
        return Err(IsgError::Construction(
            "torus needs at least one tile in each direction".into(),
        ));
    }
    tile.validate()?;
    let [u, w] = tile.tiling;
    let lattice = [
        (u.0 * cols as i64, u.1 * cols as i64),
        (w.0 * rows as i64, w.1 * rows as i64),
    ];
    let n = (lattice[0].0 * lattice[1].1 - lattice[0].1 * lattice[1].0).unsigned_abs() as usize;
    let qubit = |pos: (i64, i64)| lattice_residue(lattice, pos);
    // Coordinates of each residue class, for labels.
    let mut labels = vec![QubitLabel::Flat(0); n];
    {
        let (g, _, det) = lattice_hermite(lattice);
        let x_period = det / g;
        for y in 0..g {
            for x in 0..x_period {
                labels[(x + x_period * y) as usize] = QubitLabel::Coord(x, y);
            }
        }
    }
    let mut rounds = Vec::with_capacity(TILE_PERIOD);
    for t in 0..TILE_PERIOD {
        let mut round = Vec::new();
        for e in tile.entries_at(t) {
            for i in 0..cols as i64 {
                for j in 0..rows as i64 {
                    let shift = (i * u.0 + j * w.0, i * u.1 + j * w.1);
                    let pos = (e.pos.0 + shift.0, e.pos.1 + shift.1);
                    let mut support = vec![qubit(pos)];
                    if let Some(p) = e.partner {
                        support.push(qubit((p.0 + shift.0, p.1 + shift.1)));
                    }
                    round.push(PauliOperator::on_support(n, &support, e.basis));
                }
            }
        }
        rounds.push(round);
    }
    Ok(MeasurementSchedule::periodic(n, rounds)?.with_labels(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_dense_literal;
    use crate::schedule::{parameters, run, AnalysisOptions};

    fn lit(s: &str) -> PauliOperator {
        parse_dense_literal(s).unwrap()
    }

    #[test]
    fn repetition_parameters() {
        let (p, _) = parameters(&make_repetition(), &AnalysisOptions::default()).unwrap();
        assert_eq!((p.n, p.k, p.d), (2, 1, Some(1)));
    }

    #[test]
    fn code_422_parameters() {
        let (p, _) = parameters(&make_422(), &AnalysisOptions::default()).unwrap();
        assert_eq!((p.n, p.k, p.d), (4, 2, Some(2)));
        assert_eq!(p.establishment, 1);
    }

    #[test]
    fn double_hexagon_round_zero_contents() {
        let sched = make_double_hexagon();
        let round = sched.round_at(0);
        assert_eq!(round.len(), 7);
        assert_eq!(round[0], lit("XIIIIIIIIIII")); // X on (0,0)
        assert_eq!(round[1], lit("IXIIIIIIIIII")); // X on (0,1)
        assert_eq!(round[2], lit("IIXIXIIIIIII")); // X(1,0) X(2,0)
        assert_eq!(round[3], lit("IIIXIXIIIIII")); // X(1,1) X(2,1)
        assert_eq!(round[4], lit("IIIIIIXXIIII")); // X(3,0) X(3,1)
        assert_eq!(round[5], lit("IIIIIIIIXIXI")); // X(4,0) X(5,0)
        assert_eq!(round[6], lit("IIIIIIIIIXIX")); // X(4,1) X(5,1)
    }

    #[test]
    fn double_hexagon_neighbour_locality() {
        // qubit (i,j) only ever measured with (i+1,j), (i-1,j), (i,j+1)
        let sched = make_double_hexagon();
        for round in sched.rounds() {
            for p in round {
                let support: Vec<usize> = (0..12)
                    .filter(|&q| p.letter(q) != PauliLetter::I)
                    .collect();
                if support.len() == 2 {
                    let (a, b) = (support[0], support[1]);
                    let (ia, ja) = ((a / 2) as i64, (a % 2) as i64);
                    let (ib, jb) = ((b / 2) as i64, (b % 2) as i64);
                    let di = (ia - ib).rem_euclid(6).min((ib - ia).rem_euclid(6));
                    let dj = (ja - jb).abs();
                    assert!(
                        (di == 1 && dj == 0) || (di == 0 && dj == 1),
                        "{p} spans non-neighbours"
                    );
                }
            }
        }
    }

    #[test]
    fn colour_code_torus_shape() {
        let sched = make_colour_code_torus(3, 3).unwrap();
        assert_eq!(sched.qubit_count(), 18);
        for round in sched.rounds() {
            assert_eq!(round.len(), 9);
            for p in round {
                assert_eq!(p.weight(), 6);
            }
        }
        assert!(make_colour_code_torus(4, 3).is_err());
    }

    #[test]
    fn colour_code_rank_deficit() {
        // Faces of one colour multiply to the all-qubit operator, as do the
        // other two colour classes: rank per basis is ab - 2.
        let report = run(&make_colour_code_torus(3, 3).unwrap(), 3).unwrap();
        assert_eq!(report.ranks, vec![7, 14, 14, 14]);
        assert_eq!(report.establishment, Some(1));
    }

    #[test]
    fn lattice_residue_is_complete() {
        let basis = [(3, 1), (-2, 8)];
        let mut seen = vec![false; 26];
        for x in -10i64..10 {
            for y in -10i64..10 {
                let r = lattice_residue(basis, (x, y));
                assert!(r < 26);
                seen[r] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
        // lattice vectors land on residue of the origin
        let o = lattice_residue(basis, (0, 0));
        assert_eq!(lattice_residue(basis, (3, 1)), o);
        assert_eq!(lattice_residue(basis, (-2, 8)), o);
        assert_eq!(lattice_residue(basis, (1, 9)), o);
    }
}
