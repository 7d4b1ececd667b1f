//! The permutation table of cross ratios, its tri-rapport forms, and the
//! negated rows, each checked against field arithmetic.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ModelError, Point, ProjectiveLine};
use crate::scalar::Field;

/// Indices into a quadruple `[A, B, C, D]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Route {
    Bi([usize; 4]),
    Tri([usize; 6]),
}

/// Field expression in `μ = (A,B;C,D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Expr {
    Mu,
    MuInv,
    OneMinusMu,
    InvOneMinusMu,
    OneMinusMuInv,
    InvOneMinusMuInv,
}

/// One row of the table: a field expression and the rapports that should
/// all evaluate to it.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub name: &'static str,
    expr: Expr,
    negated: bool,
    routes: Vec<Route>,
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

/// The 18 rows: six cross ratios, the same six as tri-rapports, and the six
/// negated values as pairs of tri-rapports.
pub fn classical_rows() -> Vec<TableRow> {
    use Expr::*;
    use Route::*;
    let row = |name, expr, negated, routes| TableRow {
        name,
        expr,
        negated,
        routes,
    };
    vec![
        row("mu = [A B; C D]", Mu, false, vec![Bi([A, B, C, D])]),
        row("1/mu = [A B; D C]", MuInv, false, vec![Bi([A, B, D, C])]),
        row(
            "1-mu = [A C; B D]",
            OneMinusMu,
            false,
            vec![Bi([A, C, B, D])],
        ),
        row(
            "1/(1-mu) = [A C; D B]",
            InvOneMinusMu,
            false,
            vec![Bi([A, C, D, B])],
        ),
        row(
            "1-1/mu = [A D; B C]",
            OneMinusMuInv,
            false,
            vec![Bi([A, D, B, C])],
        ),
        row(
            "1/(1-1/mu) = [A D; C B]",
            InvOneMinusMuInv,
            false,
            vec![Bi([A, D, C, B])],
        ),
        row(
            "mu = [A C D; B A B]",
            Mu,
            false,
            vec![Tri([A, C, D, B, A, B])],
        ),
        row(
            "1/mu = [A D C; B A B]",
            MuInv,
            false,
            vec![Tri([A, D, C, B, A, B])],
        ),
        row(
            "1-mu = [A B D; C A C]",
            OneMinusMu,
            false,
            vec![Tri([A, B, D, C, A, C])],
        ),
        row(
            "1/(1-mu) = [A D B; C A C]",
            InvOneMinusMu,
            false,
            vec![Tri([A, D, B, C, A, C])],
        ),
        row(
            "1-1/mu = [A B C; D A D]",
            OneMinusMuInv,
            false,
            vec![Tri([A, B, C, D, A, D])],
        ),
        row(
            "1/(1-1/mu) = [A C B; D A D]",
            InvOneMinusMuInv,
            false,
            vec![Tri([A, C, B, D, A, D])],
        ),
        row(
            "-mu = [A B D; C A B] = [A C B; B A D]",
            Mu,
            true,
            vec![Tri([A, B, D, C, A, B]), Tri([A, C, B, B, A, D])],
        ),
        row(
            "-1/mu = [A B C; D A B] = [A D B; B A C]",
            MuInv,
            true,
            vec![Tri([A, B, C, D, A, B]), Tri([A, D, B, B, A, C])],
        ),
        row(
            "-(1-mu) = [A C D; B A C] = [A B C; C A D]",
            OneMinusMu,
            true,
            vec![Tri([A, C, D, B, A, C]), Tri([A, B, C, C, A, D])],
        ),
        row(
            "-1/(1-mu) = [A C B; D A C] = [A D C; C A B]",
            InvOneMinusMu,
            true,
            vec![Tri([A, C, B, D, A, C]), Tri([A, D, C, C, A, B])],
        ),
        row(
            "-(1-1/mu) = [A D C; B A D] = [A B D; D A C]",
            OneMinusMuInv,
            true,
            vec![Tri([A, D, C, B, A, D]), Tri([A, B, D, D, A, C])],
        ),
        row(
            "-1/(1-1/mu) = [A D B; C A D] = [A C D; D A B]",
            InvOneMinusMuInv,
            true,
            // [A D B; B A D] has the shape of (-1)_A and is constantly -1.
            vec![Tri([A, D, B, C, A, D]), Tri([A, C, D, D, A, B])],
        ),
    ]
}

impl TableRow {
    /// The value predicted by field arithmetic. `μ ∉ {0, 1}` for four
    /// distinct points, so every inverse exists.
    fn expected<F: Field>(&self, k: &F, mu: &F::Elem) -> Result<F::Elem, ModelError> {
        let value = match self.expr {
            Expr::Mu => mu.clone(),
            Expr::MuInv => k.inv(mu)?,
            Expr::OneMinusMu => k.one_minus(mu),
            Expr::InvOneMinusMu => k.inv(&k.one_minus(mu))?,
            Expr::OneMinusMuInv => k.one_minus(&k.inv(mu)?),
            Expr::InvOneMinusMuInv => k.inv(&k.one_minus(&k.inv(mu)?))?,
        };
        Ok(if self.negated { k.neg(&value) } else { value })
    }

    fn evaluate<F: Field>(
        &self,
        line: &ProjectiveLine<F>,
        quad: [&Point<F::Elem>; 4],
    ) -> Result<Vec<F::Elem>, ModelError> {
        self.routes
            .iter()
            .map(|route| match *route {
                Route::Bi(i) => line.cross_ratio(quad[i[0]], quad[i[1]], quad[i[2]], quad[i[3]]),
                Route::Tri(i) => line.tri_rapport(
                    quad[i[0]], quad[i[1]], quad[i[2]], quad[i[3]], quad[i[4]], quad[i[5]],
                ),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub row: String,
    pub frame: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSummary {
    pub row: String,
    pub checked: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportLevel {
    /// Per-row counts plus the failing entries.
    #[default]
    Summary,
    /// Every entry.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub field: String,
    pub quadruples: u64,
    pub rows: Vec<RowSummary>,
    pub entries: Vec<TableEntry>,
}

impl TableReport {
    pub fn failures(&self) -> u64 {
        self.rows.iter().map(|r| r.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    fn merge(mut self, other: TableReport) -> TableReport {
        self.quadruples += other.quadruples;
        for (mine, theirs) in self.rows.iter_mut().zip(other.rows) {
            mine.checked += theirs.checked;
            mine.failures += theirs.failures;
        }
        self.entries.extend(other.entries);
        self
    }
}

fn row_entry<F: Field>(
    line: &ProjectiveLine<F>,
    row: &TableRow,
    quad: [&Point<F::Elem>; 4],
    mu: &F::Elem,
) -> Result<TableEntry, ModelError> {
    let expected = row.expected(line.field(), mu)?;
    let got = row.evaluate(line, quad)?;
    let pass = got.iter().all(|g| *g == expected);
    let got = if got.iter().all(|g| *g == got[0]) {
        got[0].to_string()
    } else {
        got.iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" | ")
    };
    Ok(TableEntry {
        row: row.name.to_string(),
        frame: quad
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(","),
        expected: expected.to_string(),
        got,
        pass,
    })
}

/// All 18 rows for one quadruple of pairwise distinct points.
pub fn table_for_frame<F: Field>(
    line: &ProjectiveLine<F>,
    quad: [&Point<F::Elem>; 4],
) -> Result<Vec<TableEntry>, ModelError> {
    line.distinct(&quad)?;
    let mu = line.cross_ratio(quad[0], quad[1], quad[2], quad[3])?;
    classical_rows()
        .iter()
        .map(|row| row_entry(line, row, quad, &mu))
        .collect()
}

/// Checks every row on every ordered quadruple of pairwise distinct points.
pub fn verify_classical_tables<F: Field>(
    line: &ProjectiveLine<F>,
    level: ReportLevel,
) -> Result<TableReport, ModelError> {
    let pts = line.points()?;
    let rows = classical_rows();
    let empty = || TableReport {
        field: line.field().id().to_string(),
        quadruples: 0,
        rows: rows
            .iter()
            .map(|r| RowSummary {
                row: r.name.to_string(),
                checked: 0,
                failures: 0,
            })
            .collect(),
        entries: vec![],
    };
    let parts: Vec<Result<TableReport, ModelError>> = (0..pts.len())
        .into_par_iter()
        .map(|ia| {
            let mut part = empty();
            let a = &pts[ia];
            for b in &pts {
                for c in &pts {
                    for d in &pts {
                        let quad = [a, b, c, d];
                        if line.distinct(&quad).is_err() {
                            continue;
                        }
                        part.quadruples += 1;
                        let mu = line.cross_ratio(a, b, c, d)?;
                        for (row, summary) in rows.iter().zip(part.rows.iter_mut()) {
                            let entry = row_entry(line, row, quad, &mu)?;
                            summary.checked += 1;
                            if !entry.pass {
                                summary.failures += 1;
                            }
                            if !entry.pass || level == ReportLevel::Full {
                                part.entries.push(entry);
                            }
                        }
                    }
                }
            }
            Ok(part)
        })
        .collect();
    let mut report = empty();
    for part in parts {
        report = report.merge(part?);
    }
    Ok(report)
}
