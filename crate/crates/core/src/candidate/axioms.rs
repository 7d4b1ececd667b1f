//! The equational axioms of a projective line candidate, plus the
//! cross-ratio exchange property, each checked by exhaustive enumeration.
//!
//! Axioms need a total, well-typed composition table and are skipped
//! without one. They are still evaluated when other groupoid laws fail, so
//! a mutated table reports both the broken law and the broken axiom.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::structure::is_total;
use super::{ArrowId, CandidateError, CandidateTable, ObjectId};
use crate::report::{sweep, CheckOutcome, Report, Tally};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `(A -C-> B -C-> A) = 1_A`
    One,
    /// `(A -C-> B -C-> D) = (A -C-> D)`
    Two,
    /// Commutative vertex groups, also in the form
    /// `f1·f2⁻¹·f3 = f3·f2⁻¹·f1` for parallel `f_i: A -> B`.
    Pappus,
    /// `B: A -> C` conjugates `(A,B;C,D)` to `(C,D;A,B)`.
    Hex1,
    /// `(A,B,C;C,A,B) = (A,B',C';C',A,B')`: the scalar -1 does not depend
    /// on the auxiliary points.
    Hex2,
    /// Equal cross ratios have equal row-swapped cross ratios.
    Exchange,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::One,
        Axiom::Two,
        Axiom::Pappus,
        Axiom::Hex1,
        Axiom::Hex2,
        Axiom::Exchange,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::One => "one",
            Axiom::Two => "two",
            Axiom::Pappus => "pappus",
            Axiom::Hex1 => "hex1",
            Axiom::Hex2 => "hex2",
            Axiom::Exchange => "as",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                format!("unknown axiom {s:?} (expected one of one, two, pappus, hex1, hex2, as)")
            })
    }
}

struct Ctx<'a> {
    t: &'a CandidateTable,
    n: usize,
}

impl Ctx<'_> {
    fn arrow(&self, src: ObjectId, dst: ObjectId, label: ObjectId) -> ArrowId {
        self.t
            .labelled(src, dst, label)
            .expect("caller passes distinct objects")
    }

    fn c(&self, f: ArrowId, g: ArrowId) -> Option<ArrowId> {
        self.t.compose(f, g)
    }

    fn c3(&self, f: ArrowId, g: ArrowId, h: ArrowId) -> Option<ArrowId> {
        self.c(self.c(f, g)?, h)
    }

    fn names(&self, objs: &[ObjectId]) -> String {
        objs.iter()
            .map(|&o| self.t.object_name(o))
            .collect::<Vec<_>>()
            .join(",")
    }

    fn show(&self, a: Option<ArrowId>) -> String {
        a.map_or_else(|| "undefined".to_string(), |a| self.t.arrow_name(a))
    }

    /// Distinct objects other than the ones in `avoid`.
    fn others<'b>(&self, avoid: &'b [ObjectId]) -> impl Iterator<Item = ObjectId> + 'b {
        (0..self.n).filter(move |o| !avoid.contains(o))
    }
}

fn check_one(cx: &Ctx, cap: usize) -> Tally {
    sweep(cx.n, cap, |a, tally| {
        for b in cx.others(&[a]) {
            for c in cx.others(&[a, b]) {
                let got = cx.c(cx.arrow(a, b, c), cx.arrow(b, a, c));
                tally.record(got == Some(cx.t.identity(a)), || {
                    format!("A,B,C={}: got {}", cx.names(&[a, b, c]), cx.show(got))
                });
            }
        }
    })
}

fn check_two(cx: &Ctx, cap: usize) -> Tally {
    sweep(cx.n, cap, |a, tally| {
        for b in cx.others(&[a]) {
            for c in cx.others(&[a, b]) {
                for d in cx.others(&[a, b, c]) {
                    let got = cx.c(cx.arrow(a, b, c), cx.arrow(b, d, c));
                    let want = cx.arrow(a, d, c);
                    tally.record(got == Some(want), || {
                        format!(
                            "A,B,C,D={}: got {}, expected {}",
                            cx.names(&[a, b, c, d]),
                            cx.show(got),
                            cx.t.arrow_name(want)
                        )
                    });
                }
            }
        }
    })
}

fn check_pappus(cx: &Ctx, cap: usize) -> Tally {
    let t = cx.t;
    sweep(cx.n, cap, |a, tally| {
        for s in t.scalars_at(a) {
            for r in t.scalars_at(a) {
                let (sr, rs) = (cx.c(s, r), cx.c(r, s));
                tally.record(sr.is_some() && sr == rs, || {
                    format!(
                        "scalars {} and {} do not commute",
                        t.arrow_name(s),
                        t.arrow_name(r)
                    )
                });
            }
        }
        for b in cx.others(&[a]) {
            let hom: Vec<ArrowId> = cx.others(&[a, b]).map(|l| cx.arrow(a, b, l)).collect();
            for &f2 in &hom {
                let Some(f2_inv) = t.inverse(f2) else {
                    tally.record(false, || format!("{} has no inverse", t.arrow_name(f2)));
                    continue;
                };
                for &f1 in &hom {
                    for &f3 in &hom {
                        let left = cx.c3(f1, f2_inv, f3);
                        let right = cx.c3(f3, f2_inv, f1);
                        tally.record(left.is_some() && left == right, || {
                            format!(
                                "f1,f2,f3={},{},{}: {} vs {}",
                                t.arrow_name(f1),
                                t.arrow_name(f2),
                                t.arrow_name(f3),
                                cx.show(left),
                                cx.show(right)
                            )
                        });
                    }
                }
            }
        }
    })
}

fn check_hex1(cx: &Ctx, cap: usize) -> Tally {
    sweep(cx.n, cap, |a, tally| {
        for b in cx.others(&[a]) {
            for c in cx.others(&[a, b]) {
                for d in cx.others(&[a, b, c]) {
                    let side = cx.arrow(a, c, b);
                    // A -C-> B -D-> A -B-> C  against  A -B-> C -A-> D -B-> C
                    let top = cx.c3(cx.arrow(a, b, c), cx.arrow(b, a, d), side);
                    let bottom = cx.c3(side, cx.arrow(c, d, a), cx.arrow(d, c, b));
                    tally.record(top.is_some() && top == bottom, || {
                        format!(
                            "A,B,C,D={}: {} vs {}",
                            cx.names(&[a, b, c, d]),
                            cx.show(top),
                            cx.show(bottom)
                        )
                    });
                }
            }
        }
    })
}

fn check_hex2(cx: &Ctx, cap: usize) -> Tally {
    sweep(cx.n, cap, |a, tally| {
        for b in cx.others(&[a]) {
            for c in cx.others(&[a, b]) {
                let top = cx.c3(cx.arrow(a, b, c), cx.arrow(b, c, a), cx.arrow(c, a, b));
                for b2 in cx.others(&[a]) {
                    for c2 in cx.others(&[a, b2]) {
                        let bottom = cx.c3(
                            cx.arrow(a, b2, c2),
                            cx.arrow(b2, c2, a),
                            cx.arrow(c2, a, b2),
                        );
                        tally.record(top.is_some() && top == bottom, || {
                            format!(
                                "A,B,C,B',C'={}: {} vs {}",
                                cx.names(&[a, b, c, b2, c2]),
                                cx.show(top),
                                cx.show(bottom)
                            )
                        });
                    }
                }
            }
        }
    })
}

/// Groups all quadruples by the value of `(A,B;C,D)`, moved to object 0 by
/// conjugation, and requires one value of `(A,C;B,D)` per group. This is
/// linear in the number of quadruples instead of quadratic.
fn check_exchange(cx: &Ctx, cap: usize) -> Tally {
    let t = cx.t;
    let canon = |sigma: Option<ArrowId>| sigma.and_then(|s| t.transport(s, 0).ok());
    type Row = ([ObjectId; 4], Option<ArrowId>, Option<ArrowId>);
    let rows: Vec<Row> = (0..cx.n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut out = vec![];
            for b in cx.others(&[a]) {
                for c in cx.others(&[a, b]) {
                    for d in cx.others(&[a, b, c]) {
                        let cr = canon(t.cross_ratio(a, b, c, d).ok());
                        let swapped = canon(t.cross_ratio(a, c, b, d).ok());
                        out.push(([a, b, c, d], cr, swapped));
                    }
                }
            }
            out
        })
        .collect();
    let mut tally = Tally::new(cap);
    let mut first: HashMap<ArrowId, ([ObjectId; 4], Option<ArrowId>)> = HashMap::new();
    for (quad, cr, swapped) in rows {
        let Some(cr) = cr else {
            tally.record(false, || {
                format!("A,B,C,D={}: cross ratio not transportable", cx.names(&quad))
            });
            continue;
        };
        let (q0, s0) = *first.entry(cr).or_insert((quad, swapped));
        tally.record(swapped.is_some() && swapped == s0, || {
            format!(
                "(A,B;C,D) equal at {} and {}, row-swapped {} vs {}",
                cx.names(&q0),
                cx.names(&quad),
                cx.show(s0),
                cx.show(swapped)
            )
        });
    }
    tally
}

/// Runs the selected axioms. Axioms over four distinct objects are
/// reported vacuous on three-object tables.
pub fn check_axioms(t: &CandidateTable, which: &[Axiom], max_witnesses: usize) -> Report {
    let mut report = Report::new(format!("axioms: {t}"));
    let total = is_total(t);
    let cx = Ctx {
        t,
        n: t.object_count(),
    };
    for &axiom in which {
        if !total {
            report.checks.push(CheckOutcome::skipped(
                axiom.name(),
                "composition table is not total",
            ));
            continue;
        }
        let tally = match axiom {
            Axiom::One => check_one(&cx, max_witnesses),
            Axiom::Two => check_two(&cx, max_witnesses),
            Axiom::Pappus => check_pappus(&cx, max_witnesses),
            Axiom::Hex1 => check_hex1(&cx, max_witnesses),
            Axiom::Hex2 => check_hex2(&cx, max_witnesses),
            Axiom::Exchange => check_exchange(&cx, max_witnesses),
        };
        report.checks.push(tally.into_outcome(axiom.name()));
    }
    report
}

/// Parses a comma-separated axiom list such as `one,two,hex1`.
pub fn parse_axioms(list: &str) -> Result<Vec<Axiom>, CandidateError> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse().map_err(CandidateError::Parse))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ProjectiveLine;
    use crate::report::Status;
    use crate::scalar::PrimeField;

    fn model(p: u64) -> CandidateTable {
        CandidateTable::from_model(&ProjectiveLine::new(PrimeField::new(p).unwrap())).unwrap()
    }

    fn status(r: &Report, a: Axiom) -> Status {
        r.get(a.name()).unwrap().status
    }

    #[test]
    fn model_satisfies_all() {
        for p in [2, 3, 5, 7] {
            let r = check_axioms(&model(p), &Axiom::ALL, 5);
            assert!(r.passed(), "{}", r.render_text());
        }
    }

    #[test]
    fn three_objects_are_vacuous_for_four_point_axioms() {
        let r = check_axioms(&model(2), &Axiom::ALL, 5);
        for a in [Axiom::Two, Axiom::Hex1, Axiom::Exchange] {
            assert_eq!(status(&r, a), Status::Vacuous);
        }
        for a in [Axiom::One, Axiom::Pappus, Axiom::Hex2] {
            assert_eq!(status(&r, a), Status::Pass);
        }
        let r = check_axioms(&model(3), &Axiom::ALL, 5);
        assert!(r.checks.iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn subset_selection() {
        let r = check_axioms(&model(2), &parse_axioms("one,two").unwrap(), 5);
        assert_eq!(r.checks.len(), 2);
        assert!(r.get("hex1").is_none());
        assert!(parse_axioms("one,bogus").is_err());
        assert_eq!(
            parse_axioms("AS, hex2").unwrap(),
            [Axiom::Exchange, Axiom::Hex2]
        );
    }

    #[test]
    fn twisted_scalar_breaks_commutativity() {
        let mut t = model(5);
        let s = t.scalars_at(0).start + 1; // the scalar 2
        let r = t.scalars_at(0).start + 2; // the scalar 3
        let wrong = t.scalars_at(0).start + 3;
        t.set_compose(s, r, wrong).unwrap();
        let rep = check_axioms(&t, &[Axiom::Pappus], 5);
        assert_eq!(status(&rep, Axiom::Pappus), Status::Fail);
        assert!(rep.get("pappus").unwrap().witnesses[0].contains("do not commute"));
    }

    #[test]
    fn skipped_without_total_table() {
        let mut t = model(3);
        let f = t.labelled(0, 1, 2).unwrap();
        let g = t.labelled(1, 0, 2).unwrap();
        t.set_compose(f, g, f).unwrap();
        let r = check_axioms(&t, &Axiom::ALL, 5);
        assert!(r.checks.iter().all(|c| c.status == Status::Skipped));
    }
}
