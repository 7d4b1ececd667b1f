//! Recovering the field `K = hom(A,A) ∪ {0}` from a candidate.
//!
//! Multiplication is composition of scalars at the base object `A`, with an
//! adjoined absorbing zero. `1 - μ` is the exchange `(A,B;C,D) ↦ (A,C;B,D)`,
//! `-1` is the tri-rapport `(A,B,C;C,A,B)`, and addition is
//! `x + y = x·(1 - (-1)·x⁻¹·y)` with `0 + y = y`. Nothing else is assumed:
//! the result is a pair of tables that [`verify_field`] examines.
//!
//! `1 - μ` is only defined through a cross ratio for `μ ≠ 1`: at `μ = 1` the
//! representing point would be `D = C` and `(A,C;B,C)` has a label equal to
//! an endpoint. It is extended by `Φ(1) = 0` and `Φ(0) = 1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::candidate::{ArrowId, CandidateError, CandidateTable, ObjectId};
use crate::report::{sweep, CheckOutcome, Report, Tally};
use crate::scalar::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error(transparent)]
    Candidate(#[from] CandidateError),
    #[error("no point D represents {0} as a cross ratio (A,B;C,D)")]
    NoRepresentative(String),
    #[error("{0} is represented by {1} different points D")]
    Ambiguous(String, usize),
    #[error("field tables fail verification: {0}")]
    NotAField(String),
    #[error("bad field file: {0}")]
    Parse(String),
}

/// A reconstructed field. Carrier index 0 is the adjoined zero and index
/// `k + 1` is the `k`-th scalar at the base object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    pub base_object: String,
    pub carrier: Vec<String>,
    pub zero: usize,
    pub one: usize,
    pub minus_one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl FieldTable {
    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    /// Multiplicative inverse, read off the table.
    pub fn inv(&self, x: usize) -> Option<usize> {
        (x != self.zero)
            .then(|| (0..self.order()).find(|&y| self.mul[x][y] == self.one))
            .flatten()
    }

    pub fn neg(&self, x: usize) -> usize {
        self.mul[self.minus_one][x]
    }

    /// `"order"`, `"zero"`, `"one"`, `"minus_one"`, `"carrier"` and row-major
    /// `"add"` / `"mul"` tables of carrier ids, one row per line.
    pub fn to_json(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("strings serialize");
        let table = |t: &Vec<Vec<usize>>| {
            t.iter()
                .map(|row| {
                    let cells: Vec<String> = row.iter().map(|&x| q(&self.carrier[x])).collect();
                    format!("    [{}]", cells.join(", "))
                })
                .collect::<Vec<_>>()
                .join(",\n")
        };
        let mut out = String::new();
        let _ = writeln!(out, "{{");
        let _ = writeln!(out, "  \"base\": {},", q(&self.base_object));
        let _ = writeln!(out, "  \"order\": {},", self.order());
        let _ = writeln!(out, "  \"zero\": {},", q(&self.carrier[self.zero]));
        let _ = writeln!(out, "  \"one\": {},", q(&self.carrier[self.one]));
        let _ = writeln!(
            out,
            "  \"minus_one\": {},",
            q(&self.carrier[self.minus_one])
        );
        let carrier: Vec<String> = self.carrier.iter().map(|c| q(c)).collect();
        let _ = writeln!(out, "  \"carrier\": [{}],", carrier.join(", "));
        let _ = writeln!(out, "  \"add\": [\n{}\n  ],", table(&self.add));
        let _ = writeln!(out, "  \"mul\": [\n{}\n  ]\n}}", table(&self.mul));
        out
    }

    pub fn from_json(text: &str) -> Result<Self, ReconstructError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct FieldFile {
            #[serde(default)]
            base: String,
            order: usize,
            zero: String,
            one: String,
            minus_one: String,
            carrier: Vec<String>,
            add: Vec<Vec<String>>,
            mul: Vec<Vec<String>>,
        }
        let bad = |m: &str| ReconstructError::Parse(m.to_string());
        let file: FieldFile =
            serde_json::from_str(text).map_err(|e| ReconstructError::Parse(e.to_string()))?;
        let index: BTreeMap<&str, usize> = file
            .carrier
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_str(), i))
            .collect();
        if index.len() != file.carrier.len() || file.order != file.carrier.len() {
            return Err(bad("carrier must list `order` distinct ids"));
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| bad(&format!("unknown carrier id {s:?}")))
        };
        let table = |rows: &Vec<Vec<String>>| -> Result<Vec<Vec<usize>>, ReconstructError> {
            if rows.len() != file.order || rows.iter().any(|r| r.len() != file.order) {
                return Err(bad("tables must be order × order"));
            }
            rows.iter()
                .map(|r| r.iter().map(|s| lookup(s)).collect())
                .collect()
        };
        Ok(FieldTable {
            base_object: file.base.clone(),
            zero: lookup(&file.zero)?,
            one: lookup(&file.one)?,
            minus_one: lookup(&file.minus_one)?,
            add: table(&file.add)?,
            mul: table(&file.mul)?,
            carrier: file.carrier,
        })
    }
}

/// The field built at one base object, together with the `Φ` table it
/// was built from.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub field: FieldTable,
    /// `Φ(x)` for every carrier index `x`.
    pub phi: Vec<usize>,
    pub base: ObjectId,
}

/// Carrier index of a scalar at `base`.
fn carrier_of(t: &CandidateTable, base: ObjectId, sigma: ArrowId) -> usize {
    sigma - t.scalars_at(base).start + 1
}

/// The two least objects different from `a`.
fn least_pair(t: &CandidateTable, a: ObjectId) -> (ObjectId, ObjectId) {
    let mut others = (0..t.object_count()).filter(|&o| o != a);
    let b = others.next().expect("at least three objects");
    let c = others.next().expect("at least three objects");
    (b, c)
}

/// `Φ(μ)` for a scalar `μ ≠ 1` at `a`, computed with auxiliary points `b`,
/// `c`: the unique `D` with `(a,b;c,D) = μ`, then `(a,c;b,D)`.
pub fn phi_via(
    t: &CandidateTable,
    a: ObjectId,
    b: ObjectId,
    c: ObjectId,
    mu: ArrowId,
) -> Result<ArrowId, ReconstructError> {
    let mut hits = vec![];
    for d in (0..t.object_count()).filter(|&d| d != a && d != b) {
        if t.cross_ratio(a, b, c, d)? == mu {
            hits.push(d);
        }
    }
    match hits[..] {
        [d] if d != c => Ok(t.cross_ratio(a, c, b, d)?),
        [] => Err(ReconstructError::NoRepresentative(t.arrow_name(mu))),
        [_] => Err(ReconstructError::NoRepresentative(format!(
            "{} (only D = C)",
            t.arrow_name(mu)
        ))),
        _ => Err(ReconstructError::Ambiguous(t.arrow_name(mu), hits.len())),
    }
}

/// `Φ = 1 - x` on carrier indices at `base`, with `Φ(0) = 1`, `Φ(1) = 0`.
pub fn phi(t: &CandidateTable, base: ObjectId, x: usize) -> Result<usize, ReconstructError> {
    let one = carrier_of(t, base, t.identity(base));
    if x == 0 {
        return Ok(one);
    }
    if x == one {
        return Ok(0);
    }
    let (b, c) = least_pair(t, base);
    let mu = t.scalars_at(base).start + x - 1;
    Ok(carrier_of(t, base, phi_via(t, base, b, c, mu)?))
}

/// `(-1)_A` from the two least auxiliary objects.
pub fn minus_one(t: &CandidateTable, a: ObjectId) -> Result<ArrowId, ReconstructError> {
    let (b, c) = least_pair(t, a);
    Ok(t.tri_rapport(a, b, c, c, a, b)?)
}

fn zero_name(t: &CandidateTable, base: ObjectId) -> String {
    let mut name = "0".to_string();
    while t.scalar_names(base).contains(&name) {
        name.push('\'');
    }
    name
}

/// Builds the carrier, multiplication, `Φ`, `-1` and the derived addition.
pub fn reconstruct(t: &CandidateTable, base: ObjectId) -> Result<Reconstruction, ReconstructError> {
    let scalars = t.scalars_at(base);
    let order = scalars.len() + 1;
    let mut carrier = vec![zero_name(t, base)];
    carrier.extend(t.scalar_names(base).iter().cloned());

    let mut mul = vec![vec![0; order]; order];
    for (i, s) in scalars.clone().enumerate() {
        for (j, r) in scalars.clone().enumerate() {
            mul[i + 1][j + 1] = carrier_of(t, base, t.try_compose(s, r)?);
        }
    }
    let phi_table: Vec<usize> = (0..order)
        .map(|x| phi(t, base, x))
        .collect::<Result<_, _>>()?;
    let one = carrier_of(t, base, t.identity(base));
    let minus = carrier_of(t, base, minus_one(t, base)?);
    let inv: Vec<Option<usize>> = (0..order)
        .map(|x| {
            (x != 0)
                .then(|| {
                    t.inverse(t.scalars_at(base).start + x - 1)
                        .map(|s| carrier_of(t, base, s))
                })
                .flatten()
        })
        .collect();

    let mut add = vec![vec![0; order]; order];
    for x in 0..order {
        for y in 0..order {
            add[x][y] = if x == 0 {
                y
            } else {
                let x_inv = inv[x].ok_or_else(|| CandidateError::NoInverse(carrier[x].clone()))?;
                // x · Φ((-1) · x⁻¹ · y)
                mul[x][phi_table[mul[mul[minus][x_inv]][y]]]
            };
        }
    }
    Ok(Reconstruction {
        field: FieldTable {
            base_object: t.object_name(base).to_string(),
            carrier,
            zero: 0,
            one,
            minus_one: minus,
            add,
            mul,
        },
        phi: phi_table,
        base,
    })
}

pub fn build_field(t: &CandidateTable, base: ObjectId) -> Result<FieldTable, ReconstructError> {
    Ok(reconstruct(t, base)?.field)
}

/// Exhaustive check of the field axioms on the two tables.
pub fn verify_field(ft: &FieldTable, max_witnesses: usize) -> Report {
    let n = ft.order();
    let (zero, one) = (ft.zero, ft.one);
    let name = |x: usize| ft.carrier[x].as_str();
    let mut report = Report::new(format!("field of order {n} at {}", ft.base_object));
    let push = |report: &mut Report, label: &str, tally: Tally| {
        report.checks.push(tally.into_outcome(label))
    };

    push(
        &mut report,
        "add-identity",
        sweep(n, max_witnesses, |x, t| {
            t.record(ft.add[zero][x] == x && ft.add[x][zero] == x, || {
                format!("0 + {0} or {0} + 0 != {0}", name(x))
            });
        }),
    );
    push(
        &mut report,
        "add-commutative",
        sweep(n, max_witnesses, |x, t| {
            for y in 0..n {
                t.record(ft.add[x][y] == ft.add[y][x], || {
                    format!("{} + {} != {1} + {0}", name(x), name(y))
                });
            }
        }),
    );
    push(
        &mut report,
        "add-associative",
        sweep(n, max_witnesses, |x, t| {
            for y in 0..n {
                for z in 0..n {
                    t.record(ft.add[ft.add[x][y]][z] == ft.add[x][ft.add[y][z]], || {
                        format!(
                            "({} + {}) + {} differs from {0} + ({1} + {2})",
                            name(x),
                            name(y),
                            name(z)
                        )
                    });
                }
            }
        }),
    );
    push(
        &mut report,
        "add-inverse",
        sweep(n, max_witnesses, |x, t| {
            let neg = ft.neg(x);
            t.record(ft.add[x][neg] == zero, || {
                format!("{} + (-1)·{0} = {} != 0", name(x), name(ft.add[x][neg]))
            });
        }),
    );
    push(
        &mut report,
        "mul-zero",
        sweep(n, max_witnesses, |x, t| {
            t.record(ft.mul[zero][x] == zero && ft.mul[x][zero] == zero, || {
                format!("0 does not absorb {}", name(x))
            });
        }),
    );
    push(
        &mut report,
        "mul-group",
        sweep(n, max_witnesses, |x, t| {
            if x == zero {
                return;
            }
            t.record(ft.mul[one][x] == x && ft.mul[x][one] == x, || {
                format!("1 is not a unit for {}", name(x))
            });
            t.record(ft.inv(x).is_some(), || {
                format!("{} has no inverse", name(x))
            });
            for y in (0..n).filter(|&y| y != zero) {
                t.record(ft.mul[x][y] != zero, || {
                    format!("{} · {} = 0", name(x), name(y))
                });
                t.record(ft.mul[x][y] == ft.mul[y][x], || {
                    format!("{} · {} != {1} · {0}", name(x), name(y))
                });
                for z in (0..n).filter(|&z| z != zero) {
                    t.record(ft.mul[ft.mul[x][y]][z] == ft.mul[x][ft.mul[y][z]], || {
                        format!(
                            "({} · {}) · {} differs from {0} · ({1} · {2})",
                            name(x),
                            name(y),
                            name(z)
                        )
                    });
                }
            }
        }),
    );
    push(
        &mut report,
        "distributive",
        sweep(n, max_witnesses, |x, t| {
            for y in 0..n {
                for z in 0..n {
                    let left = ft.mul[x][ft.add[y][z]];
                    let right = ft.add[ft.mul[x][y]][ft.mul[x][z]];
                    t.record(left == right, || {
                        format!(
                            "{} · ({} + {}) = {} but {0}·{1} + {0}·{2} = {}",
                            name(x),
                            name(y),
                            name(z),
                            name(left),
                            name(right)
                        )
                    });
                }
            }
        }),
    );
    report
}

/// Checks that `Φ`, the exchange-defined `1 - x`, agrees with `1 + (-1)·x`
/// computed from the reconstructed tables.
pub fn phi_consistency(rec: &Reconstruction, max_witnesses: usize) -> CheckOutcome {
    let ft = &rec.field;
    let mut tally = Tally::new(max_witnesses);
    for x in 0..ft.order() {
        let field_value = ft.add[ft.one][ft.neg(x)];
        tally.record(rec.phi[x] == field_value, || {
            format!(
                "Φ({}) = {} but 1 - {0} = {}",
                ft.carrier[x], ft.carrier[rec.phi[x]], ft.carrier[field_value]
            )
        });
    }
    tally.into_outcome("phi-consistency")
}

/// `Φ` does not depend on the auxiliary points and commutes with moving
/// scalars between objects.
pub fn phi_independence(t: &CandidateTable, base: ObjectId, max_witnesses: usize) -> Report {
    let n = t.object_count();
    let mut report = Report::new(format!("Φ well-definedness at {}", t.object_name(base)));
    let one = t.identity(base);
    let mut reference = vec![None; t.arrow_count()];
    let mut failed = Tally::new(max_witnesses);
    for mu in t.scalars_at(base).filter(|&m| m != one) {
        match phi(t, base, carrier_of(t, base, mu)) {
            Ok(x) => reference[mu] = Some(t.scalars_at(base).start + x - 1),
            Err(e) => failed.record(false, || e.to_string()),
        }
    }
    let choice = sweep(n, max_witnesses, |b, tally| {
        if b == base {
            return;
        }
        for c in (0..n).filter(|&c| c != base && c != b) {
            for d in (0..n).filter(|&d| d != base && d != b && d != c) {
                let (Ok(mu), Ok(swapped)) =
                    (t.cross_ratio(base, b, c, d), t.cross_ratio(base, c, b, d))
                else {
                    tally.record(false, || "undefined cross ratio".into());
                    continue;
                };
                tally.record(reference[mu] == Some(swapped), || {
                    format!(
                        "B,C,D={},{},{}: Φ({}) = {} vs {}",
                        t.object_name(b),
                        t.object_name(c),
                        t.object_name(d),
                        t.arrow_name(mu),
                        reference[mu].map_or("undefined".into(), |r| t.arrow_name(r)),
                        t.arrow_name(swapped)
                    )
                });
            }
        }
    });
    report
        .checks
        .push(failed.merge(choice).into_outcome("phi-choice"));

    // Φ at another object, transported back, agrees with Φ at the base.
    let uniform = sweep(n, max_witnesses, |a, tally| {
        if a == base {
            return;
        }
        let a_one = t.identity(a);
        for mu in t.scalars_at(base).filter(|&m| m != one) {
            let ok = (|| {
                let moved = t.transport(mu, a).ok()?;
                if moved == a_one {
                    return None;
                }
                let (b, c) = least_pair(t, a);
                let there = phi_via(t, a, b, c, moved).ok()?;
                let back = t.transport(there, base).ok()?;
                Some(Some(back) == reference[mu])
            })();
            tally.record(ok == Some(true), || {
                format!(
                    "Φ at {} disagrees for {}",
                    t.object_name(a),
                    t.arrow_name(mu)
                )
            });
        }
    });
    report.checks.push(uniform.into_outcome("phi-uniform"));
    report
}

/// `-1` squares to one, does not depend on the auxiliary points, and is the
/// same scalar at every object up to conjugation along any arrow.
pub fn minus_one_report(t: &CandidateTable, max_witnesses: usize) -> Report {
    let n = t.object_count();
    let mut report = Report::new("the scalar -1");
    let reference: Vec<Option<ArrowId>> = (0..n).map(|a| minus_one(t, a).ok()).collect();

    let square = sweep(n, max_witnesses, |a, tally| {
        for b in (0..n).filter(|&b| b != a) {
            for c in (0..n).filter(|&c| c != a && c != b) {
                let m = t.tri_rapport(a, b, c, c, a, b).ok();
                let sq = m.and_then(|m| t.compose(m, m));
                tally.record(sq == Some(t.identity(a)), || {
                    format!(
                        "A,B,C={},{},{}: (-1)·(-1) != 1",
                        t.object_name(a),
                        t.object_name(b),
                        t.object_name(c)
                    )
                });
            }
        }
    });
    report.checks.push(square.into_outcome("minus-one-square"));

    let choice = sweep(n, max_witnesses, |a, tally| {
        for b in (0..n).filter(|&b| b != a) {
            for c in (0..n).filter(|&c| c != a && c != b) {
                let m = t.tri_rapport(a, b, c, c, a, b).ok();
                tally.record(m.is_some() && m == reference[a], || {
                    format!(
                        "A,B,C={},{},{}: differs from the least choice",
                        t.object_name(a),
                        t.object_name(b),
                        t.object_name(c)
                    )
                });
            }
        }
    });
    report.checks.push(choice.into_outcome("minus-one-choice"));

    let uniform = sweep(n, max_witnesses, |a, tally| {
        let Some(here) = reference[a] else {
            tally.record(false, || format!("(-1) undefined at {}", t.object_name(a)));
            return;
        };
        for b in (0..n).filter(|&b| b != a) {
            for label in (0..n).filter(|&l| l != a && l != b) {
                let f = t.labelled(a, b, label).expect("distinct");
                let moved = t.conjugate(here, f).ok();
                tally.record(moved.is_some() && moved == reference[b], || {
                    format!(
                        "conjugating (-1) along {} misses (-1) at {}",
                        t.arrow_name(f),
                        t.object_name(b)
                    )
                });
            }
        }
    });
    report
        .checks
        .push(uniform.into_outcome("minus-one-uniform"));
    report
}

/// Identification of a verified finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `residue[x]` is the `n` with `x = 1 + … + 1` (`n` times).
    Prime { p: u64, residue: Vec<u64> },
    /// Order is not prime; no identification is attempted.
    NonPrime { order: usize },
}

/// Identifies a field of prime order `p` with `F_p` by counting: the
/// element `n·1` is sent to `n`.
pub fn classify_prime(ft: &FieldTable) -> Result<Classification, ReconstructError> {
    let report = verify_field(ft, 1);
    if let Some(c) = report.failing().next() {
        return Err(ReconstructError::NotAField(format!(
            "{}: {}",
            c.name,
            c.witnesses.join("; ")
        )));
    }
    let order = ft.order();
    if !is_prime(order as u64) {
        return Ok(Classification::NonPrime { order });
    }
    let mut residue = vec![u64::MAX; order];
    let mut x = ft.zero;
    for n in 0..order as u64 {
        if residue[x] != u64::MAX {
            return Err(ReconstructError::NotAField(format!(
                "1 has additive order {n} < {order}"
            )));
        }
        residue[x] = n;
        x = ft.add[x][ft.one];
    }
    Ok(Classification::Prime {
        p: order as u64,
        residue,
    })
}

/// Under a prime classification, both tables must be arithmetic mod `p`.
pub fn check_mod_p(ft: &FieldTable, residue: &[u64], p: u64, max_witnesses: usize) -> CheckOutcome {
    let n = ft.order();
    let tally = sweep(n, max_witnesses, |x, t| {
        for y in 0..n {
            let (a, b) = (residue[x], residue[y]);
            t.record(residue[ft.add[x][y]] == (a + b) % p, || {
                format!("{a} + {b} mod {p}")
            });
            t.record(residue[ft.mul[x][y]] == a * b % p, || {
                format!("{a} · {b} mod {p}")
            });
        }
    });
    tally.into_outcome("mod-p")
}
