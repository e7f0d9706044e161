//! Named complexes with large dual-graph diameter and the parametric
//! families built from them by gluing.

use std::fmt;
use std::str::FromStr;

use crate::complex::SimplicialComplex;
use crate::dual_graph::{complex_diameter, Distance};
use crate::error::{Error, Result};
use crate::glue::{append_facet_chain, glue, GlueSpec};
use crate::serre::is_s2;
use crate::vertex_set::{letters, VertexSet, MAX_VERTICES};

const FIG_A1: &[&str] = &["AB", "BC", "CD", "DE"];

const FIG_A2: &[&str] = &[
    "CDG", "AEG", "CEG", "ADG", "ABD", "BCE", "ABC", "AEF", "CDF", "DEF",
];

const FIG_A5: &[&str] = &[
    "ABC", "BCD", "ACD", "BDI", "CDJ", "ADH", "BEI", "CEJ", "AEH", "BEJ", "AEI", "CEH", "AFI",
    "CFH", "BFJ", "BFH", "CFI", "AFJ", "BGH", "CGI", "AGJ", "GHJ", "GHI", "HIJ",
];

const DIM4: &[&str] = &[
    "ABEG", "BDEG", "ACEG", "ACEF", "BDGH", "CDFH", "BDFH", "CDGH", "ACFH", "CDEF", "BCDE", "ABCD",
    "ABGH", "ABCH", "ABEF", "BEFH", "CEGH", "EFGH",
];

fn from_letters(facets: &[&str]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|s| letters(s)), None)
        .expect("embedded facet list is valid")
}

fn with_extra(base: &[&str], extra: &[&str]) -> SimplicialComplex {
    from_letters(&[base, extra].concat())
}

/// Parameters for the parametric families; unused ones are ignored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub k: Option<usize>,
    pub j: Option<usize>,
    pub d: Option<usize>,
    pub n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    FigA1,
    FigA2,
    FigA4,
    FigA4Ehi,
    FigA5,
    G2,
    Dim4,
    Dim4Efgi,
    Path2 { n: usize },
    GluedD4 { k: usize, j: usize },
    GluedD3 { k: usize, j: usize },
    GluedD3G0 { k: usize, j: usize },
    Table1Witness { d: usize, n: usize },
}

pub const FAMILY_NAMES: &[&str] = &[
    "fig_a1",
    "fig_a2",
    "fig_a4",
    "fig_a4_ehi",
    "fig_a5",
    "g2",
    "dim4",
    "dim4_efgi",
    "path2",
    "glued_d4",
    "glued_d3",
    "glued_d3_g0",
    "table1_witness",
];

impl Family {
    /// Resolves a family name with its parameters; `j` defaults to 0 except
    /// for `glued_d3_g0`, where it is required.
    pub fn from_name(name: &str, p: Params) -> Result<Family> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::BadParams(format!("{name} needs --{what}")))
        };
        let family = match name {
            "fig_a1" => Family::FigA1,
            "fig_a2" => Family::FigA2,
            "fig_a4" => Family::FigA4,
            "fig_a4_ehi" => Family::FigA4Ehi,
            "fig_a5" => Family::FigA5,
            "g2" => Family::G2,
            "dim4" => Family::Dim4,
            "dim4_efgi" => Family::Dim4Efgi,
            "path2" => Family::Path2 { n: need(p.n, "n")? },
            "glued_d4" => Family::GluedD4 {
                k: need(p.k, "k")?,
                j: p.j.unwrap_or(0),
            },
            "glued_d3" => Family::GluedD3 {
                k: need(p.k, "k")?,
                j: p.j.unwrap_or(0),
            },
            "glued_d3_g0" => Family::GluedD3G0 {
                k: need(p.k, "k")?,
                j: need(p.j, "j")?,
            },
            "table1_witness" => Family::Table1Witness {
                d: need(p.d, "d")?,
                n: need(p.n, "n")?,
            },
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        family.validate()?;
        Ok(family)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::FigA1 => "fig_a1",
            Family::FigA2 => "fig_a2",
            Family::FigA4 => "fig_a4",
            Family::FigA4Ehi => "fig_a4_ehi",
            Family::FigA5 => "fig_a5",
            Family::G2 => "g2",
            Family::Dim4 => "dim4",
            Family::Dim4Efgi => "dim4_efgi",
            Family::Path2 { .. } => "path2",
            Family::GluedD4 { .. } => "glued_d4",
            Family::GluedD3 { .. } => "glued_d3",
            Family::GluedD3G0 { .. } => "glued_d3_g0",
            Family::Table1Witness { .. } => "table1_witness",
        }
    }

    /// Vertex count of the built complex.
    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::FigA1 => 5,
            Family::FigA2 => 7,
            Family::FigA4 => 8,
            Family::FigA4Ehi => 9,
            Family::FigA5 => 10,
            Family::G2 => 11,
            Family::Dim4 => 8,
            Family::Dim4Efgi => 9,
            Family::Path2 { n } => n,
            Family::GluedD4 { k, j } => 4 * k + 4 + j,
            Family::GluedD3 { k, j } => 8 * k + 2 + j,
            Family::GluedD3G0 { k, j } => 8 * k + 3 + j,
            Family::Table1Witness { n, .. } => n,
        }
    }

    /// Facet cardinality of the built complex.
    pub fn facet_size(&self) -> usize {
        match *self {
            Family::FigA1 | Family::Path2 { .. } => 2,
            Family::Dim4 | Family::Dim4Efgi | Family::GluedD4 { .. } => 4,
            Family::Table1Witness { d, .. } => d,
            _ => 3,
        }
    }

    /// Diameter the construction is designed to have.
    pub fn expected_diameter(&self) -> usize {
        match *self {
            Family::FigA1 => 3,
            Family::FigA2 => 5,
            Family::FigA4 => 6,
            Family::FigA4Ehi => 7,
            Family::FigA5 => 9,
            Family::G2 => 10,
            Family::Dim4 => 6,
            Family::Dim4Efgi => 7,
            Family::Path2 { n } => n - 2,
            Family::GluedD4 { k, j } => 6 * k + j,
            Family::GluedD3 { k, j } => 10 * k - 1 + j,
            Family::GluedD3G0 { k, j } => 10 * k + j + 1,
            Family::Table1Witness { d, n } => witness_diameter(d, n),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadParams(msg));
        match *self {
            Family::Path2 { n } if n < 3 => return bad(format!("path2 needs n >= 3, got {n}")),
            Family::GluedD4 { k: 0, .. }
            | Family::GluedD3 { k: 0, .. }
            | Family::GluedD3G0 { k: 0, .. } => return bad("k must be at least 1".into()),
            Family::GluedD3G0 { j, .. } if j < 4 => {
                return bad(format!("glued_d3_g0 needs j >= 4, got {j}"))
            }
            Family::Table1Witness { d, n } if d < 2 || n <= d => {
                return bad(format!("table1_witness needs 2 <= d < n, got d={d}, n={n}"))
            }
            _ => {}
        }
        let n = self.vertex_count();
        if n > MAX_VERTICES {
            return Err(Error::UniverseTooLarge {
                requested: n,
                max: MAX_VERTICES,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        match *self {
            Family::Path2 { n } => write!(f, "(n={n})"),
            Family::GluedD4 { k, j } | Family::GluedD3 { k, j } | Family::GluedD3G0 { k, j } => {
                write!(f, "(k={k}, j={j})")
            }
            Family::Table1Witness { d, n } => write!(f, "(d={d}, n={n})"),
            _ => Ok(()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parameterless families only; use [`Family::from_name`] otherwise.
    fn from_str(s: &str) -> Result<Family> {
        Family::from_name(s, Params::default())
    }
}

/// Builds a family member, self-checking (S2) and the diameter in debug
/// builds.
pub fn build(family: Family) -> Result<SimplicialComplex> {
    build_with(family, cfg!(debug_assertions))
}

/// Builds a family member; `self_check` verifies (S2), the vertex count and
/// the expected diameter.
pub fn build_with(family: Family, self_check: bool) -> Result<SimplicialComplex> {
    family.validate()?;
    let cx = match family {
        Family::FigA1 => from_letters(FIG_A1),
        Family::FigA2 => from_letters(FIG_A2),
        Family::FigA4 => with_extra(FIG_A2, &["DEH"]),
        Family::FigA4Ehi => with_extra(FIG_A2, &["DEH", "EHI"]),
        Family::FigA5 => from_letters(FIG_A5),
        Family::G2 => with_extra(FIG_A5, &["IJK"]),
        Family::Dim4 => from_letters(DIM4),
        Family::Dim4Efgi => with_extra(DIM4, &["EFGI"]),
        Family::Path2 { n } => path2(n),
        Family::GluedD4 { k, j } => glued_d4(k, j)?,
        Family::GluedD3 { k, j } => glued_d3(k, j)?,
        Family::GluedD3G0 { k, j } => glued_d3_g0(k, j)?,
        Family::Table1Witness { d, n } => table1_witness(d, n)?,
    };
    if self_check {
        self_check_complex(family, &cx)?;
    }
    Ok(cx)
}

fn self_check_complex(family: Family, cx: &SimplicialComplex) -> Result<()> {
    let fail = |detail: String| {
        Err(Error::SelfCheckFailed {
            family: family.to_string(),
            detail,
        })
    };
    if cx.n() != family.vertex_count() || cx.d() != Some(family.facet_size()) {
        return fail(format!("got n={}, d={:?}", cx.n(), cx.d()));
    }
    let verdict = is_s2(cx)?;
    if !verdict.holds {
        return fail(format!("not (S2): {:?}", verdict.failure));
    }
    let diameter = complex_diameter(cx)?;
    if diameter != Distance::Finite(family.expected_diameter()) {
        return fail(format!(
            "diameter {diameter}, expected {}",
            family.expected_diameter()
        ));
    }
    Ok(())
}

/// Edges `x1x2, x1x3, x3x4, …, x_{n-1}x_n`.
fn path2(n: usize) -> SimplicialComplex {
    let mut facets = vec![VertexSet::from_iter([0, 1])];
    facets.extend((2..n).map(|v| VertexSet::from_iter([if v == 2 { 0 } else { v - 1 }, v])));
    SimplicialComplex::from_facets(facets, Some(n)).expect("path is valid")
}

/// Running result of a left-to-right gluing: the complex so far and the
/// far-end facet where the next piece attaches.
struct Chain {
    cx: SimplicialComplex,
    end: VertexSet,
}

impl Chain {
    fn start(cx: SimplicialComplex, end: &str) -> Chain {
        Chain {
            cx,
            end: letters(end),
        }
    }

    /// Glues `piece` at its facet `near` onto the current end; the new end
    /// is the image of `far`.
    fn attach(self, piece: &SimplicialComplex, near: &str, far: &str) -> Result<Chain> {
        let spec = GlueSpec::along_facets(self.cx, self.end, piece.clone(), letters(near), 2)?;
        let glued = glue(&spec)?;
        let end = letters(far).map(|v| glued.right_map[v]);
        Ok(Chain {
            cx: glued.complex,
            end,
        })
    }

    fn extend(self, steps: usize) -> Result<SimplicialComplex> {
        append_facet_chain(&self.cx, self.end, steps)
    }
}

fn glued_d4(k: usize, j: usize) -> Result<SimplicialComplex> {
    let dim4 = from_letters(DIM4);
    let mut chain = Chain::start(dim4.clone(), "EFGH");
    for _ in 1..k {
        chain = chain.attach(&dim4, "ABCD", "EFGH")?;
    }
    chain.extend(j)
}

fn glued_d3(k: usize, j: usize) -> Result<SimplicialComplex> {
    let g1 = from_letters(FIG_A5);
    let g2 = with_extra(FIG_A5, &["IJK"]);
    if k == 1 {
        return Chain::start(g1, "HIJ").extend(j);
    }
    let mut chain = Chain::start(g2.clone(), "IJK");
    for _ in 2..k {
        chain = chain.attach(&g2, "ABC", "IJK")?;
    }
    chain.attach(&g1, "ABC", "HIJ")?.extend(j)
}

fn glued_d3_g0(k: usize, j: usize) -> Result<SimplicialComplex> {
    let g0 = with_extra(FIG_A2, &["DEH"]);
    let g1 = from_letters(FIG_A5);
    let g2 = with_extra(FIG_A5, &["IJK"]);
    let mut chain = Chain::start(g0, "DEH");
    for _ in 1..k {
        chain = chain.attach(&g2, "ABC", "IJK")?;
    }
    chain.attach(&g1, "ABC", "HIJ")?.extend(j - 4)
}

/// Witness complex for a Table-1 style cell `(d, n)`.
fn table1_witness(d: usize, n: usize) -> Result<SimplicialComplex> {
    let c = n - d;
    if d == 2 {
        return Ok(path2(n));
    }
    if c <= 3 {
        return path2(c + 2).cone(d - 2);
    }
    if d == 3 {
        return Ok(match n {
            7 => from_letters(FIG_A2),
            8 => with_extra(FIG_A2, &["DEH"]),
            9 => with_extra(FIG_A2, &["DEH", "EHI"]),
            _ => append_facet_chain(&from_letters(FIG_A5), letters("HIJ"), n - 10)?,
        });
    }
    let base = match c {
        4 => from_letters(DIM4),
        5 => with_extra(DIM4, &["EFGI"]),
        _ => append_facet_chain(&from_letters(DIM4), letters("EFGH"), c - 4)?,
    };
    if d == 4 {
        Ok(base)
    } else {
        base.cone(d - 4)
    }
}

fn witness_diameter(d: usize, n: usize) -> usize {
    let c = n - d;
    match (d, c) {
        (2, _) => n - 2,
        (_, 0..=3) => c,
        (3, 4) => 5,
        (3, 5) => 6,
        (3, 6) => 7,
        (3, _) => n - 1,
        (_, 4) => 6,
        (_, 5) => 7,
        _ => c + 2,
    }
}

/// A corpus entry with its designed diameter; every entry satisfies (S2).
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub family: Family,
    pub complex: SimplicialComplex,
    pub expected_diameter: usize,
    pub expected_s2: bool,
}

/// Fixed figures plus small parameter sweeps of every family.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut families = vec![
        Family::FigA1,
        Family::FigA2,
        Family::FigA4,
        Family::FigA4Ehi,
        Family::FigA5,
        Family::G2,
        Family::Dim4,
        Family::Dim4Efgi,
    ];
    families.extend((3..=10).map(|n| Family::Path2 { n }));
    for k in 1..=3 {
        for j in 0..=3 {
            families.push(Family::GluedD4 { k, j });
            families.push(Family::GluedD3 { k, j });
        }
    }
    for k in 1..=2 {
        for j in 4..=5 {
            families.push(Family::GluedD3G0 { k, j });
        }
    }
    for (d, n) in table_cells() {
        families.push(Family::Table1Witness { d, n });
    }
    families
        .into_iter()
        .map(|family| CorpusEntry {
            family,
            complex: build_with(family, false).expect("corpus families build"),
            expected_diameter: family.expected_diameter(),
            expected_s2: true,
        })
        .collect()
}

/// A published table value: exact, or a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableValue {
    Exact(usize),
    AtLeast(usize),
}

impl fmt::Display for TableValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableValue::Exact(v) => write!(f, "{v}"),
            TableValue::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// The printed table of `μ(d, n)` for `d ∈ {2, 3, 4}` and `n ≥ 6`; the
/// last row holds for every `n ≥ 10`. The entry for `(3, 6)` is the printed
/// 4, which conflicts with the exact value 3 proved for that cell.
pub fn table1_value(d: usize, n: usize) -> Option<TableValue> {
    use TableValue::*;
    let v = match (d, n) {
        (2, n) if n >= 6 => Exact(n - 2),
        (3, 6) => Exact(4),
        (3, 7) => Exact(5),
        (3, 8) => Exact(6),
        (3, 9) => Exact(7),
        (3, n) if n >= 10 => AtLeast(n - 1),
        (4, 6) => Exact(2),
        (4, 7) => Exact(3),
        (4, 8) => Exact(6),
        (4, 9) => Exact(7),
        (4, n) if n >= 10 => AtLeast(n - 2),
        _ => return None,
    };
    Some(v)
}

/// Cells checked by [`verify_table`]: every printed cell with `n ≤ 10`
/// plus `(2, 4)` and `(2, 5)`.
pub fn table_cells() -> Vec<(usize, usize)> {
    let mut cells = vec![(2, 4), (2, 5)];
    for n in 6..=10 {
        for d in 2..=4 {
            cells.push((d, n));
        }
    }
    cells
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellStatus {
    /// Witness diameter equals the exact value.
    Reproduced,
    /// Witness diameter meets the printed lower bound.
    BoundMet,
    /// Printed value contradicts an exhaustive search, and the witness
    /// attains the searched value instead.
    Conflict { searched: usize },
    /// Witness diameter disagrees with the printed value.
    Mismatch,
}

/// Cells settled by running [`crate::search::enumerate_mu`] to completion
/// whose result differs from the printed table.
pub fn searched_value(d: usize, n: usize) -> Option<usize> {
    match (d, n) {
        (3, 6) => Some(3),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct TableCheck {
    pub d: usize,
    pub n: usize,
    /// `None` for cells outside the printed table (`n < 6`), where the
    /// reference value `n - 2` is used.
    pub printed: Option<TableValue>,
    pub witness_diameter: Distance,
    pub s2: bool,
    pub status: CellStatus,
}

/// Builds each cell's witness and compares its diameter with the table.
pub fn verify_table() -> Result<Vec<TableCheck>> {
    table_cells()
        .into_iter()
        .map(|(d, n)| {
            let cx = build_with(Family::Table1Witness { d, n }, false)?;
            let diameter = complex_diameter(&cx)?;
            let s2 = is_s2(&cx)?.holds;
            let printed = table1_value(d, n);
            let reference = printed.unwrap_or(TableValue::Exact(n - 2));
            let status = match (reference, diameter) {
                (_, _) if !s2 => CellStatus::Mismatch,
                (TableValue::Exact(v), Distance::Finite(x)) if x == v => CellStatus::Reproduced,
                (TableValue::AtLeast(v), Distance::Finite(x)) if x >= v => CellStatus::BoundMet,
                (_, Distance::Finite(x)) if searched_value(d, n) == Some(x) => {
                    CellStatus::Conflict { searched: x }
                }
                _ => CellStatus::Mismatch,
            };
            Ok(TableCheck {
                d,
                n,
                printed,
                witness_diameter: diameter,
                s2,
                status,
            })
        })
        .collect()
}
