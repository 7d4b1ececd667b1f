//! Projective line candidates given as explicit, finite composition tables.
//!
//! A [`CandidateTable`] is a transitive groupoid whose non-endo arrows
//! `A -> B` are named by a label, an object different from `A` and `B`.
//! Endo arrows (scalars) are named by per-object scalar ids. Nothing about
//! composition is assumed: it is a total table that the checkers in
//! [`structure`] and [`axioms`] examine.

pub mod axioms;
mod file;
pub mod structure;

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::OnceLock;

use thiserror::Error;

use crate::model::{ModelArrow, ModelError, ProjectiveLine};
use crate::scalar::Field;

pub use axioms::{check_axioms, Axiom};
pub use structure::validate_structure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CandidateError {
    #[error("a projective line candidate needs at least three objects, got {0}")]
    TooFewObjects(usize),
    #[error("duplicate or empty object name {0:?}")]
    BadObject(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("object {0} has a bad scalar list: {1}")]
    BadScalars(String, String),
    #[error("unknown scalar {1:?} at {0}")]
    UnknownScalar(String, String),
    #[error("malformed arrow {0:?}")]
    BadArrow(String),
    #[error("objects must be pairwise distinct: {0}")]
    Coincident(String),
    #[error("{0} then {1} is not a composable pair")]
    NotComposable(String, String),
    #[error("composite of {0} then {1} is not defined")]
    Undefined(String, String),
    #[error("{0} has no inverse")]
    NoInverse(String),
    #[error("{0} is not an endo-arrow")]
    NotEndo(String),
    #[error("duplicate compose entry for {0} then {1}")]
    DuplicateEntry(String, String),
    #[error("unsupported candidate file format {0}")]
    Format(u64),
    #[error("cannot read candidate file: {0}")]
    Parse(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Index of an object in a table.
pub type ObjectId = usize;

/// Index of an arrow in a table.
pub type ArrowId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    NonEndo {
        src: ObjectId,
        dst: ObjectId,
        label: ObjectId,
    },
    Endo {
        obj: ObjectId,
        scalar: usize,
    },
}

impl Arrow {
    pub fn src(&self) -> ObjectId {
        match *self {
            Arrow::NonEndo { src, .. } => src,
            Arrow::Endo { obj, .. } => obj,
        }
    }

    pub fn dst(&self) -> ObjectId {
        match *self {
            Arrow::NonEndo { dst, .. } => dst,
            Arrow::Endo { obj, .. } => obj,
        }
    }

    pub fn is_endo(&self) -> bool {
        matches!(self, Arrow::Endo { .. })
    }
}

/// A finite projective line candidate.
///
/// Arrows are numbered so that the arrows out of each object are
/// contiguous: first its scalars, then the non-endo arrows ordered by
/// destination and label. The composite of `f` then `g` lives at
/// `row_start[f] + (g - out_start[src g])`.
#[derive(Debug)]
pub struct CandidateTable {
    objects: Vec<String>,
    object_index: HashMap<String, ObjectId>,
    scalars: Vec<Vec<String>>,
    identity: Vec<usize>,
    arrows: Vec<Arrow>,
    out_start: Vec<usize>,
    row_start: Vec<usize>,
    compose: Vec<Option<ArrowId>>,
    inverses: OnceLock<Vec<Option<ArrowId>>>,
}

impl Clone for CandidateTable {
    fn clone(&self) -> Self {
        CandidateTable {
            objects: self.objects.clone(),
            object_index: self.object_index.clone(),
            scalars: self.scalars.clone(),
            identity: self.identity.clone(),
            arrows: self.arrows.clone(),
            out_start: self.out_start.clone(),
            row_start: self.row_start.clone(),
            compose: self.compose.clone(),
            inverses: OnceLock::new(),
        }
    }
}

impl CandidateTable {
    /// An empty table: objects, per-object scalar ids and the index of
    /// each object's identity scalar. All composites start undefined.
    pub fn new(
        objects: Vec<String>,
        scalars: Vec<Vec<String>>,
        identity: Vec<usize>,
    ) -> Result<Self, CandidateError> {
        let n = objects.len();
        if n < 3 {
            return Err(CandidateError::TooFewObjects(n));
        }
        let mut object_index = HashMap::new();
        for (i, name) in objects.iter().enumerate() {
            if name.is_empty()
                || name.contains(['>', '#'])
                || object_index.insert(name.clone(), i).is_some()
            {
                return Err(CandidateError::BadObject(name.clone()));
            }
        }
        if scalars.len() != n || identity.len() != n {
            return Err(CandidateError::BadScalars(
                "*".into(),
                "one scalar list and one identity per object".into(),
            ));
        }
        for (o, ids) in scalars.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            if ids.is_empty() || !ids.iter().all(|s| !s.is_empty() && seen.insert(s)) {
                return Err(CandidateError::BadScalars(
                    objects[o].clone(),
                    "empty or duplicate ids".into(),
                ));
            }
            if identity[o] >= ids.len() {
                return Err(CandidateError::BadScalars(
                    objects[o].clone(),
                    "identity out of range".into(),
                ));
            }
        }

        let mut arrows = vec![];
        let mut out_start = vec![];
        for src in 0..n {
            out_start.push(arrows.len());
            arrows.extend((0..scalars[src].len()).map(|scalar| Arrow::Endo { obj: src, scalar }));
            for dst in (0..n).filter(|&d| d != src) {
                for label in (0..n).filter(|&l| l != src && l != dst) {
                    arrows.push(Arrow::NonEndo { src, dst, label });
                }
            }
        }
        out_start.push(arrows.len());
        let mut row_start = Vec::with_capacity(arrows.len() + 1);
        let mut total = 0;
        for a in &arrows {
            row_start.push(total);
            total += out_start[a.dst() + 1] - out_start[a.dst()];
        }
        row_start.push(total);

        Ok(CandidateTable {
            objects,
            object_index,
            scalars,
            identity,
            arrows,
            out_start,
            row_start,
            compose: vec![None; total],
            inverses: OnceLock::new(),
        })
    }

    /// The candidate determined by a finite projective line `P(K^2)`:
    /// objects are the points, scalar ids are the nonzero field elements,
    /// and the composition table is copied from the model.
    pub fn from_model<F: Field>(line: &ProjectiveLine<F>) -> Result<Self, CandidateError> {
        let pts = line.points()?;
        let k = line.field();
        let nonzero: Vec<F::Elem> = k
            .elements()
            .unwrap_or_default()
            .into_iter()
            .filter(|x| !k.is_zero(x))
            .collect();
        let names: Vec<String> = nonzero.iter().map(|x| x.to_string()).collect();
        let one = nonzero.iter().position(|x| *x == k.one()).unwrap_or(0);
        let mut table = CandidateTable::new(
            pts.iter().map(|p| p.to_string()).collect(),
            vec![names; pts.len()],
            vec![one; pts.len()],
        )?;
        let point_index: HashMap<_, _> = pts
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let scalar_index: HashMap<_, _> = nonzero
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();

        let model: Vec<ModelArrow<F::Elem>> = table
            .arrows
            .iter()
            .map(|a| match *a {
                Arrow::NonEndo { src, dst, label } => {
                    line.label_to_arrow(&pts[src], &pts[dst], &pts[label])
                }
                Arrow::Endo { obj, scalar } => line.endo(&pts[obj], nonzero[scalar].clone()),
            })
            .collect::<Result<_, _>>()?;
        let back = |m: &ModelArrow<F::Elem>| -> Result<Arrow, ModelError> {
            let src = point_index[&m.src];
            Ok(if m.src == m.dst {
                Arrow::Endo {
                    obj: src,
                    scalar: scalar_index[&m.factor],
                }
            } else {
                Arrow::NonEndo {
                    src,
                    dst: point_index[&m.dst],
                    label: point_index[&line.arrow_to_label(m)?],
                }
            })
        };
        for f in 0..table.arrows.len() {
            for g in table.outgoing(table.arrows[f].dst()) {
                let h = back(&line.compose(&model[f], &model[g])?)?;
                let h = table.arrow_id(h).expect("model arrows are table arrows");
                let slot = table.slot(f, g).expect("composable");
                table.compose[slot] = Some(h);
            }
        }
        Ok(table)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, o: ObjectId) -> &str {
        &self.objects[o]
    }

    pub fn object_id(&self, name: &str) -> Result<ObjectId, CandidateError> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| CandidateError::UnknownObject(name.to_string()))
    }

    pub fn scalar_names(&self, o: ObjectId) -> &[String] {
        &self.scalars[o]
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, id: ArrowId) -> Arrow {
        self.arrows[id]
    }

    /// Arrows with source `o`.
    pub fn outgoing(&self, o: ObjectId) -> Range<ArrowId> {
        self.out_start[o]..self.out_start[o + 1]
    }

    /// Endo arrows at `o`.
    pub fn scalars_at(&self, o: ObjectId) -> Range<ArrowId> {
        self.out_start[o]..self.out_start[o] + self.scalars[o].len()
    }

    pub fn identity(&self, o: ObjectId) -> ArrowId {
        self.out_start[o] + self.identity[o]
    }

    pub fn arrow_id(&self, a: Arrow) -> Option<ArrowId> {
        let n = self.objects.len();
        match a {
            Arrow::Endo { obj, scalar } if obj < n && scalar < self.scalars[obj].len() => {
                Some(self.out_start[obj] + scalar)
            }
            Arrow::NonEndo { src, dst, label }
                if src < n
                    && dst < n
                    && label < n
                    && src != dst
                    && label != src
                    && label != dst =>
            {
                let d = dst - usize::from(dst > src);
                let l = label - usize::from(label > src) - usize::from(label > dst);
                Some(self.out_start[src] + self.scalars[src].len() + d * (n - 2) + l)
            }
            _ => None,
        }
    }

    /// The arrow `src -> dst` labelled `label`.
    pub fn labelled(
        &self,
        src: ObjectId,
        dst: ObjectId,
        label: ObjectId,
    ) -> Result<ArrowId, CandidateError> {
        self.arrow_id(Arrow::NonEndo { src, dst, label })
            .ok_or_else(|| {
                CandidateError::Coincident(format!(
                    "{}, {}, {}",
                    self.objects[src], self.objects[dst], self.objects[label]
                ))
            })
    }

    /// The reference arrow `src -> dst`: the one with the least label.
    pub fn reference_arrow(&self, src: ObjectId, dst: ObjectId) -> ArrowId {
        let label = (0..self.objects.len())
            .find(|&l| l != src && l != dst)
            .expect("at least three objects");
        self.labelled(src, dst, label).expect("distinct")
    }

    fn slot(&self, f: ArrowId, g: ArrowId) -> Option<usize> {
        let (a, b) = (self.arrows[f], self.arrows[g]);
        (a.dst() == b.src()).then(|| self.row_start[f] + (g - self.out_start[b.src()]))
    }

    /// `f` then `g`, when the pair is composable and the entry is present.
    pub fn compose(&self, f: ArrowId, g: ArrowId) -> Option<ArrowId> {
        self.slot(f, g).and_then(|s| self.compose[s])
    }

    pub fn try_compose(&self, f: ArrowId, g: ArrowId) -> Result<ArrowId, CandidateError> {
        match self.slot(f, g) {
            None => Err(CandidateError::NotComposable(
                self.arrow_name(f),
                self.arrow_name(g),
            )),
            Some(s) => self.compose[s]
                .ok_or_else(|| CandidateError::Undefined(self.arrow_name(f), self.arrow_name(g))),
        }
    }

    /// Overwrites one composition entry and returns the previous value.
    pub fn set_compose(
        &mut self,
        f: ArrowId,
        g: ArrowId,
        h: ArrowId,
    ) -> Result<Option<ArrowId>, CandidateError> {
        let s = self
            .slot(f, g)
            .ok_or_else(|| CandidateError::NotComposable(self.arrow_name(f), self.arrow_name(g)))?;
        self.inverses = OnceLock::new();
        Ok(self.compose[s].replace(h))
    }

    /// Number of composable pairs, i.e. the size of a total table.
    pub fn composable_pairs(&self) -> usize {
        self.compose.len()
    }

    /// Defined entries `(f, g, f·g)` in arrow order.
    pub fn entries(&self) -> impl Iterator<Item = (ArrowId, ArrowId, ArrowId)> + '_ {
        (0..self.arrows.len()).flat_map(move |f| {
            self.outgoing(self.arrows[f].dst())
                .filter_map(move |g| self.compose(f, g).map(|h| (f, g, h)))
        })
    }

    /// The two-sided inverse of `f`, if the table has one.
    pub fn inverse(&self, f: ArrowId) -> Option<ArrowId> {
        self.inverses.get_or_init(|| {
            (0..self.arrows.len())
                .map(|f| {
                    let a = self.arrows[f];
                    let (id_src, id_dst) = (self.identity(a.src()), self.identity(a.dst()));
                    self.outgoing(a.dst()).find(|&g| {
                        self.compose(f, g) == Some(id_src) && self.compose(g, f) == Some(id_dst)
                    })
                })
                .collect()
        })[f]
    }

    pub fn arrow_name(&self, id: ArrowId) -> String {
        match self.arrows[id] {
            Arrow::NonEndo { src, dst, label } => {
                format!(
                    "{}>{}>{}",
                    self.objects[src], self.objects[label], self.objects[dst]
                )
            }
            Arrow::Endo { obj, scalar } => {
                format!("{}#{}", self.objects[obj], self.scalars[obj][scalar])
            }
        }
    }

    /// Parses `src>label>dst` or `obj#scalar`.
    pub fn parse_arrow(&self, text: &str) -> Result<ArrowId, CandidateError> {
        if let Some((obj, scalar)) = text.split_once('#') {
            let o = self.object_id(obj)?;
            let s = self.scalars[o]
                .iter()
                .position(|x| x == scalar)
                .ok_or_else(|| {
                    CandidateError::UnknownScalar(obj.to_string(), scalar.to_string())
                })?;
            return Ok(self.out_start[o] + s);
        }
        let parts: Vec<&str> = text.split('>').collect();
        let [src, label, dst] = parts[..] else {
            return Err(CandidateError::BadArrow(text.to_string()));
        };
        let (src, label, dst) = (
            self.object_id(src)?,
            self.object_id(label)?,
            self.object_id(dst)?,
        );
        self.arrow_id(Arrow::NonEndo { src, dst, label })
            .ok_or_else(|| CandidateError::BadArrow(text.to_string()))
    }

    fn require_endo(&self, sigma: ArrowId) -> Result<ObjectId, CandidateError> {
        match self.arrows[sigma] {
            Arrow::Endo { obj, .. } => Ok(obj),
            _ => Err(CandidateError::NotEndo(self.arrow_name(sigma))),
        }
    }

    /// `σ` at `A` conjugated along `f: A -> B`, i.e. `f⁻¹ · σ · f`, a scalar at `B`.
    pub fn conjugate(&self, sigma: ArrowId, f: ArrowId) -> Result<ArrowId, CandidateError> {
        let at = self.require_endo(sigma)?;
        if self.arrows[f].src() != at {
            return Err(CandidateError::NotComposable(
                self.arrow_name(sigma),
                self.arrow_name(f),
            ));
        }
        let back = self
            .inverse(f)
            .ok_or_else(|| CandidateError::NoInverse(self.arrow_name(f)))?;
        let tmp = self.try_compose(back, sigma)?;
        self.try_compose(tmp, f)
    }

    /// Moves a scalar to object `target` by conjugation along the reference
    /// arrow.
    pub fn transport(&self, sigma: ArrowId, target: ObjectId) -> Result<ArrowId, CandidateError> {
        let at = self.require_endo(sigma)?;
        if at == target {
            return Ok(sigma);
        }
        self.conjugate(sigma, self.reference_arrow(at, target))
    }

    /// `(A,B;C,D)`: `A -> B` labelled `C`, then `B -> A` labelled `D`.
    pub fn cross_ratio(
        &self,
        a: ObjectId,
        b: ObjectId,
        c: ObjectId,
        d: ObjectId,
    ) -> Result<ArrowId, CandidateError> {
        let there = self.labelled(a, b, c)?;
        let back = self.labelled(b, a, d)?;
        self.try_compose(there, back)
    }

    /// `(A,B,C;D,E,F)`: `A -> B` labelled `D`, `B -> C` labelled `E`, `C -> A`
    /// labelled `F`.
    #[allow(clippy::too_many_arguments)]
    pub fn tri_rapport(
        &self,
        a: ObjectId,
        b: ObjectId,
        c: ObjectId,
        d: ObjectId,
        e: ObjectId,
        f: ObjectId,
    ) -> Result<ArrowId, CandidateError> {
        if a == b || b == c || a == c {
            return Err(CandidateError::Coincident(format!(
                "{}, {}, {}",
                self.objects[a], self.objects[b], self.objects[c]
            )));
        }
        let ab = self.labelled(a, b, d)?;
        let bc = self.labelled(b, c, e)?;
        let ca = self.labelled(c, a, f)?;
        let tmp = self.try_compose(ab, bc)?;
        self.try_compose(tmp, ca)
    }
}

impl fmt::Display for CandidateTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "candidate with {} objects, {} arrows, {}/{} composites defined",
            self.objects.len(),
            self.arrows.len(),
            self.compose.iter().filter(|c| c.is_some()).count(),
            self.compose.len()
        )
    }
}
