//! Coordinatizing a candidate of prime order by `P(F_p²)`.
//!
//! With the frame `(f0, f1, f2)` sent to `[0:1]`, `[1:0]`, `[1:1]`, a further
//! object `X` goes to `[d:1]` where `d` is the value of `(f1,f0;f2,X)`. In
//! the model that cross ratio of `X = [d:1]` is exactly `d`.
//!
//! Scalars are compared at the base object of the field table; vertex groups
//! are abelian, so moving a scalar there does not depend on the path.

use std::fmt::Write as _;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::candidate::{Arrow, ArrowId, CandidateError, CandidateTable, ObjectId};
use crate::model::{ModelArrow, ModelError, Point, ProjectiveLine};
use crate::reconstruction::{classify_prime, Classification, FieldTable, ReconstructError};
use crate::report::{sweep, CheckOutcome, Report, Tally};
use crate::scalar::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoordError {
    #[error(transparent)]
    Candidate(#[from] CandidateError),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("frame objects must be pairwise distinct")]
    Frame,
    #[error("frame needs three objects, got {0:?}")]
    FrameSyntax(String),
    #[error("carrier of order {0} is not prime")]
    NonPrime(usize),
    #[error("field table belongs to {0:?}, not an object of this candidate")]
    Base(String),
    #[error("uniqueness sweep is limited to {MAX_UNIQUENESS_OBJECTS} objects, got {0}")]
    TooLarge(usize),
    #[error("no label-compatible isomorphism: {0}")]
    NotIsomorphic(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frame {
    pub f0: ObjectId,
    pub f1: ObjectId,
    pub f2: ObjectId,
}

impl Frame {
    pub fn new(f0: ObjectId, f1: ObjectId, f2: ObjectId) -> Result<Self, CoordError> {
        if f0 == f1 || f1 == f2 || f0 == f2 {
            return Err(CoordError::Frame);
        }
        Ok(Frame { f0, f1, f2 })
    }

    /// `"a,b,c"` in object names.
    pub fn parse(t: &CandidateTable, text: &str) -> Result<Self, CoordError> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let [a, b, c] = parts[..] else {
            return Err(CoordError::FrameSyntax(text.to_string()));
        };
        Frame::new(t.object_id(a)?, t.object_id(b)?, t.object_id(c)?)
    }

    fn contains(&self, o: ObjectId) -> bool {
        o == self.f0 || o == self.f1 || o == self.f2
    }
}

/// Maps on objects and on scalars at the base object, into `P(F_p²)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateIso {
    pub p: u64,
    pub base: ObjectId,
    pub object_map: Vec<Point<u64>>,
    /// Indexed by position in `scalars_at(base)`.
    pub scalar_map: Vec<u64>,
}

impl CandidateIso {
    /// Value of any scalar, read at the base object.
    fn scalar_value(&self, t: &CandidateTable, sigma: ArrowId) -> Result<u64, CandidateError> {
        let at = t.transport(sigma, self.base)?;
        Ok(self.scalar_map[at - t.scalars_at(self.base).start])
    }

    /// Image of an arrow. A scalar maps by value; a non-endo `f: X -> Y`
    /// is written `σ · r` with `r` the reference arrow `X -> Y`, and `r`
    /// goes to the model arrow labelled by the image of its label.
    pub fn map_arrow(
        &self,
        t: &CandidateTable,
        line: &ProjectiveLine<PrimeField>,
        f: ArrowId,
    ) -> Result<ModelArrow<u64>, CoordError> {
        match t.arrow(f) {
            Arrow::Endo { obj, .. } => {
                Ok(line.endo(&self.object_map[obj], self.scalar_value(t, f)?)?)
            }
            Arrow::NonEndo { src, dst, .. } => {
                let r = t.reference_arrow(src, dst);
                let Arrow::NonEndo { label, .. } = t.arrow(r) else {
                    unreachable!("reference arrows are non-endo")
                };
                let r_inv = t
                    .inverse(r)
                    .ok_or_else(|| CandidateError::NoInverse(t.arrow_name(r)))?;
                let sigma = t.try_compose(f, r_inv)?;
                let m = &self.object_map;
                let image_r = line.label_to_arrow(&m[src], &m[dst], &m[label])?;
                let image_sigma = line.endo(&m[src], self.scalar_value(t, sigma)?)?;
                Ok(line.compose(&image_sigma, &image_r)?)
            }
        }
    }

    /// `{"objects": {name: "x:y"}, "scalars": {id: value}, "verified": bool}`
    /// in candidate order.
    pub fn to_json(&self, t: &CandidateTable, verified: bool) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("strings serialize");
        let objects: Vec<String> = (0..t.object_count())
            .map(|o| {
                format!(
                    "    {}: {}",
                    q(t.object_name(o)),
                    q(&self.object_map[o].to_string())
                )
            })
            .collect();
        let scalars: Vec<String> = t
            .scalar_names(self.base)
            .iter()
            .zip(&self.scalar_map)
            .map(|(id, v)| format!("    {}: {v}", q(id)))
            .collect();
        let mut out = String::new();
        let _ = writeln!(out, "{{");
        let _ = writeln!(out, "  \"p\": {},", self.p);
        let _ = writeln!(out, "  \"base\": {},", q(t.object_name(self.base)));
        let _ = writeln!(out, "  \"objects\": {{\n{}\n  }},", objects.join(",\n"));
        let _ = writeln!(out, "  \"scalars\": {{\n{}\n  }},", scalars.join(",\n"));
        let _ = writeln!(out, "  \"verified\": {verified}\n}}");
        out
    }
}

/// Base object and the prime identification of its scalars.
fn prime_scalars(
    t: &CandidateTable,
    ft: &FieldTable,
) -> Result<(ObjectId, u64, Vec<u64>), CoordError> {
    let base = t
        .object_id(&ft.base_object)
        .map_err(|_| CoordError::Base(ft.base_object.clone()))?;
    if ft.order() != t.scalar_names(base).len() + 1 {
        return Err(CoordError::Base(ft.base_object.clone()));
    }
    match classify_prime(ft)? {
        Classification::Prime { p, residue } => Ok((base, p, residue[1..].to_vec())),
        Classification::NonPrime { order } => Err(CoordError::NonPrime(order)),
    }
}

/// The frame-pinned maps, before verification.
pub fn coordinate_map(
    t: &CandidateTable,
    ft: &FieldTable,
    frame: Frame,
) -> Result<CandidateIso, CoordError> {
    let (base, p, scalar_map) = prime_scalars(t, ft)?;
    let line = ProjectiveLine::new(PrimeField::new(p).map_err(ModelError::from)?);
    let [zero, inf, one] = line.standard_frame();
    let mut iso = CandidateIso {
        p,
        base,
        object_map: vec![zero.clone(); t.object_count()],
        scalar_map,
    };
    for x in 0..t.object_count() {
        iso.object_map[x] = if x == frame.f0 {
            zero.clone()
        } else if x == frame.f1 {
            inf.clone()
        } else if x == frame.f2 {
            one.clone()
        } else {
            let d = t.cross_ratio(frame.f1, frame.f0, frame.f2, x)?;
            line.affine(iso.scalar_value(t, d)?)
        };
    }
    Ok(iso)
}

/// Coordinatizes and certifies the result; a failed certificate is an error
/// carrying the first witnesses.
pub fn coordinatize(
    t: &CandidateTable,
    ft: &FieldTable,
    frame: Frame,
) -> Result<CandidateIso, CoordError> {
    let iso = coordinate_map(t, ft, frame)?;
    let report = verify_iso(t, &iso, 3);
    if let Some(c) = report.failing().next() {
        return Err(CoordError::NotIsomorphic(format!(
            "{}: {}",
            c.name,
            c.witnesses.join("; ")
        )));
    }
    Ok(iso)
}

/// Bijectivity on objects and scalars, functoriality on every composable
/// pair, and label compatibility on every non-endo arrow.
pub fn verify_iso(t: &CandidateTable, iso: &CandidateIso, max_witnesses: usize) -> Report {
    let mut report = Report::new(format!("isomorphism onto P(F_{}^2)", iso.p));
    let line = match PrimeField::new(iso.p) {
        Ok(k) => ProjectiveLine::new(k),
        Err(e) => {
            report
                .checks
                .push(CheckOutcome::skipped("objects", &e.to_string()));
            return report;
        }
    };
    let n = t.object_count();

    let mut objects = Tally::new(max_witnesses);
    let images: std::collections::HashSet<_> = iso.object_map.iter().collect();
    objects.record(n as u64 == iso.p + 1, || {
        format!("{n} objects but {} points", iso.p + 1)
    });
    objects.record(images.len() == n, || "two objects share an image".into());
    report.checks.push(objects.into_outcome("objects"));

    let mut scalars = Tally::new(max_witnesses);
    let values: std::collections::HashSet<_> = iso.scalar_map.iter().collect();
    scalars.record(iso.scalar_map.len() as u64 + 1 == iso.p, || {
        "wrong number of scalars".into()
    });
    scalars.record(values.len() == iso.scalar_map.len(), || {
        "two scalars share a value".into()
    });
    scalars.record(iso.scalar_map.iter().all(|&v| v != 0 && v < iso.p), || {
        "scalar value out of range".into()
    });
    let id = t.identity(iso.base) - t.scalars_at(iso.base).start;
    scalars.record(iso.scalar_map.get(id) == Some(&1), || {
        "identity is not sent to 1".into()
    });
    report.checks.push(scalars.into_outcome("scalars"));

    if !report.passed() {
        report.checks.push(CheckOutcome::skipped(
            "functorial",
            "maps are not bijective",
        ));
        report
            .checks
            .push(CheckOutcome::skipped("labels", "maps are not bijective"));
        return report;
    }

    let image: Vec<Option<ModelArrow<u64>>> = (0..t.arrow_count())
        .map(|f| iso.map_arrow(t, &line, f).ok())
        .collect();
    let functorial = sweep(t.arrow_count(), max_witnesses, |f, tally| {
        for g in t.outgoing(t.arrow(f).dst()) {
            let ok = match (&image[f], &image[g], t.compose(f, g)) {
                (Some(a), Some(b), Some(h)) => image[h]
                    .as_ref()
                    .is_some_and(|c| line.compose(a, b).as_ref() == Ok(c)),
                _ => false,
            };
            tally.record(ok, || {
                format!("{} then {}", t.arrow_name(f), t.arrow_name(g))
            });
        }
    });
    report.checks.push(functorial.into_outcome("functorial"));

    let labels = sweep(t.arrow_count(), max_witnesses, |f, tally| {
        if let Arrow::NonEndo { label, .. } = t.arrow(f) {
            let got = image[f].as_ref().and_then(|a| line.arrow_to_label(a).ok());
            tally.record(got.as_ref() == Some(&iso.object_map[label]), || {
                format!(
                    "{} has label {} but its image has label {}",
                    t.arrow_name(f),
                    iso.object_map[label],
                    got.map_or("none".into(), |g| g.to_string())
                )
            });
        }
    });
    report.checks.push(labels.into_outcome("labels"));
    report
}

/// Same verdict as [`verify_iso`] on bijective maps, stopping at the first
/// failure.
fn iso_holds(t: &CandidateTable, line: &ProjectiveLine<PrimeField>, iso: &CandidateIso) -> bool {
    let image: Option<Vec<ModelArrow<u64>>> = (0..t.arrow_count())
        .map(|f| iso.map_arrow(t, line, f).ok())
        .collect();
    let Some(image) = image else { return false };
    (0..t.arrow_count()).all(|f| {
        let labelled = match t.arrow(f) {
            Arrow::NonEndo { label, .. } => {
                line.arrow_to_label(&image[f]).ok().as_ref() == Some(&iso.object_map[label])
            }
            Arrow::Endo { .. } => true,
        };
        labelled
            && t.outgoing(t.arrow(f).dst()).all(|g| {
                t.compose(f, g)
                    .is_some_and(|h| line.compose(&image[f], &image[g]).as_ref() == Ok(&image[h]))
            })
    })
}

/// Largest candidate for [`verify_uniqueness`]: 5! bijections at 8 objects.
pub const MAX_UNIQUENESS_OBJECTS: usize = 8;

/// Tries every object bijection fixing the frame images (with the scalar
/// map of the prime identification) and counts those that verify.
pub fn verify_uniqueness(
    t: &CandidateTable,
    ft: &FieldTable,
    frame: Frame,
) -> Result<Report, CoordError> {
    if t.object_count() > MAX_UNIQUENESS_OBJECTS {
        return Err(CoordError::TooLarge(t.object_count()));
    }
    let iso = coordinate_map(t, ft, frame)?;
    let free: Vec<ObjectId> = (0..t.object_count())
        .filter(|&o| !frame.contains(o))
        .collect();
    let targets: Vec<Point<u64>> = free.iter().map(|&o| iso.object_map[o].clone()).collect();
    let line = ProjectiveLine::new(PrimeField::new(iso.p).map_err(ModelError::from)?);
    let perms: Vec<Vec<usize>> = (0..free.len()).permutations(free.len()).collect();
    let passing: Vec<usize> = perms
        .par_iter()
        .enumerate()
        .filter_map(|(i, perm)| {
            let mut candidate = iso.clone();
            for (k, &o) in free.iter().enumerate() {
                candidate.object_map[o] = targets[perm[k]].clone();
            }
            iso_holds(t, &line, &candidate).then_some(i)
        })
        .collect();

    let mut tally = Tally::new(3);
    tally.checked = perms.len() as u64;
    if passing.len() != 1 {
        tally.failures = 1;
        tally.witnesses.push(format!(
            "{} of {} frame-fixing maps verify",
            passing.len(),
            perms.len()
        ));
    }
    let mut report = Report::new(format!("uniqueness over {} frame-fixing maps", perms.len()));
    report.checks.push(tally.into_outcome("unique"));
    Ok(report)
}
