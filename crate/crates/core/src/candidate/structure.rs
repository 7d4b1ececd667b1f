//! Groupoid laws for a candidate table.
//!
//! Checks run in this order and are all reported: totality (every
//! composable pair has a composite with the right endpoints), identities,
//! inverses, associativity, transitivity, equal vertex group sizes. The
//! three-object minimum and the label bijection are enforced when a table
//! is built, so they cannot fail here.

use super::{Arrow, CandidateTable};
use crate::report::{sweep, Report};

pub fn validate_structure(t: &CandidateTable, max_witnesses: usize) -> Report {
    let mut report = Report::new(format!("structure: {t}"));
    let n_arrows = t.arrow_count();
    let name = |a| t.arrow_name(a);

    let totality = sweep(n_arrows, max_witnesses, |f, tally| {
        let a = t.arrow(f);
        for g in t.outgoing(a.dst()) {
            let b = t.arrow(g);
            match t.compose(f, g) {
                None => tally.record(false, || format!("{} then {}: undefined", name(f), name(g))),
                Some(h) => {
                    let c = t.arrow(h);
                    tally.record(c.src() == a.src() && c.dst() == b.dst(), || {
                        format!(
                            "{} then {} = {}: wrong endpoints",
                            name(f),
                            name(g),
                            name(h)
                        )
                    })
                }
            }
        }
    });
    report.checks.push(totality.into_outcome("totality"));

    let identity = sweep(t.object_count(), max_witnesses, |o, tally| {
        let e = t.identity(o);
        for f in 0..n_arrows {
            let a = t.arrow(f);
            if a.src() == o {
                tally.record(t.compose(e, f) == Some(f), || {
                    format!("{} then {} != {}", name(e), name(f), name(f))
                });
            }
            if a.dst() == o {
                tally.record(t.compose(f, e) == Some(f), || {
                    format!("{} then {} != {}", name(f), name(e), name(f))
                });
            }
        }
    });
    report.checks.push(identity.into_outcome("identity"));

    let inverses = sweep(n_arrows, max_witnesses, |f, tally| {
        tally.record(t.inverse(f).is_some(), || {
            format!("{} has no two-sided inverse", name(f))
        });
    });
    report.checks.push(inverses.into_outcome("inverses"));

    let assoc = sweep(n_arrows, max_witnesses, |f, tally| {
        for g in t.outgoing(t.arrow(f).dst()) {
            let Some(fg) = t.compose(f, g) else { continue };
            for h in t.outgoing(t.arrow(g).dst()) {
                let Some(gh) = t.compose(g, h) else { continue };
                let left = t.compose(fg, h);
                let right = t.compose(f, gh);
                tally.record(left.is_some() && left == right, || {
                    format!("({} {} {}) not associative", name(f), name(g), name(h))
                });
            }
        }
    });
    report.checks.push(assoc.into_outcome("associativity"));

    // hom(A, B) is the set of labels, so it is nonempty whenever there is a
    // third object; this counts the pairs for the report.
    let n = t.object_count();
    let transitivity = sweep(n, max_witnesses, |a, tally| {
        for b in (0..n).filter(|&b| b != a) {
            let hom = t
                .outgoing(a)
                .filter(|&f| matches!(t.arrow(f), Arrow::NonEndo { dst, .. } if dst == b))
                .count();
            tally.record(hom == n - 2, || {
                format!("|hom({}, {})| = {hom}", t.object_name(a), t.object_name(b))
            });
        }
    });
    report
        .checks
        .push(transitivity.into_outcome("transitivity"));

    let size0 = t.scalar_names(0).len();
    let vertex = sweep(n, max_witnesses, |o, tally| {
        let size = t.scalar_names(o).len();
        tally.record(size == size0, || {
            format!(
                "|hom({0}, {0})| = {size}, expected {size0}",
                t.object_name(o)
            )
        });
    });
    report.checks.push(vertex.into_outcome("vertex-groups"));
    report
}

/// True when every composable pair has a composite with the right endpoints,
/// the minimum needed to evaluate any axiom.
pub(crate) fn is_total(t: &CandidateTable) -> bool {
    (0..t.arrow_count()).all(|f| {
        let a = t.arrow(f);
        t.outgoing(a.dst()).all(|g| {
            t.compose(f, g).is_some_and(|h| {
                let c = t.arrow(h);
                c.src() == a.src() && c.dst() == t.arrow(g).dst()
            })
        })
    })
}
