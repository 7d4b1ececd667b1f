//! The concrete projective line `P(K^2)` as a labelled groupoid.
//!
//! Objects are the one-dimensional subspaces of `K^2`, stored by their
//! normalized representative (`[x:1]`, or `[1:0]` for the point at infinity).
//! An arrow `A -> B` is a linear isomorphism between the two lines; it is
//! recorded as the factor `λ` with `rep(A) ↦ λ·rep(B)`. Composition of
//! arrows therefore multiplies factors, and an endo-arrow is literally the
//! scalar by which it multiplies.

mod tables;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::scalar::{Field, ScalarError};

pub use tables::{
    classical_rows, table_for_frame, verify_classical_tables, ReportLevel, RowSummary, TableEntry,
    TableReport, TableRow,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("points must be pairwise distinct: {0}")]
    Coincident(String),
    #[error("arrows are not composable: {0} then {1}")]
    NotComposable(String, String),
    #[error("endo-arrow at {0} has no label")]
    EndoArrow(String),
    #[error("the zero vector is not a point")]
    ZeroVector,
    #[error("arrow factor must be nonzero")]
    ZeroFactor,
    #[error("{0} has infinitely many points; supply an explicit point list")]
    Infinite(String),
    #[error("in characteristic 2 the harmonic conjugate of {0} coincides with it")]
    CharacteristicTwo(String),
    #[error("cannot parse point {0:?}; expected \"x:y\"")]
    BadPoint(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A point of `P(K^2)` in normalized homogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point<E> {
    x: E,
    y: E,
}

impl<E> Point<E> {
    pub fn x(&self) -> &E {
        &self.x
    }

    pub fn y(&self) -> &E {
        &self.y
    }
}

impl<E: Eq> Point<E> {
    fn is_infinity_with(&self, zero: &E) -> bool {
        self.y == *zero
    }
}

impl<E: Ord> Ord for Point<E> {
    /// Affine points by coordinate, the point at infinity (`y = 0 < 1`) last.
    fn cmp(&self, other: &Self) -> Ordering {
        other.y.cmp(&self.y).then_with(|| self.x.cmp(&other.x))
    }
}

impl<E: Ord> PartialOrd for Point<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E: fmt::Display> fmt::Display for Point<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.x, self.y)
    }
}

/// A labelled arrow of the model: `rep(src) ↦ factor · rep(dst)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelArrow<E> {
    pub src: Point<E>,
    pub dst: Point<E>,
    pub factor: E,
}

impl<E: fmt::Display> fmt::Display for ModelArrow<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-({})->{}", self.src, self.factor, self.dst)
    }
}

/// `P(K^2)` over a field `K`.
#[derive(Debug, Clone)]
pub struct ProjectiveLine<F: Field> {
    field: F,
}

impl<F: Field> ProjectiveLine<F> {
    pub fn new(field: F) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Normalizes `(x, y)`; the zero vector is rejected.
    pub fn point(&self, x: F::Elem, y: F::Elem) -> Result<Point<F::Elem>, ModelError> {
        let k = &self.field;
        if !k.is_zero(&y) {
            Ok(Point {
                x: k.div(&x, &y)?,
                y: k.one(),
            })
        } else if !k.is_zero(&x) {
            Ok(self.infinity())
        } else {
            Err(ModelError::ZeroVector)
        }
    }

    /// `[x:1]`
    pub fn affine(&self, x: F::Elem) -> Point<F::Elem> {
        Point {
            x,
            y: self.field.one(),
        }
    }

    /// `[1:0]`
    pub fn infinity(&self) -> Point<F::Elem> {
        Point {
            x: self.field.one(),
            y: self.field.zero(),
        }
    }

    pub fn is_infinity(&self, p: &Point<F::Elem>) -> bool {
        p.is_infinity_with(&self.field.zero())
    }

    /// The frame `[0:1], [1:0], [1:1]`.
    pub fn standard_frame(&self) -> [Point<F::Elem>; 3] {
        [
            self.affine(self.field.zero()),
            self.infinity(),
            self.affine(self.field.one()),
        ]
    }

    /// Parses `"x:y"` and normalizes it.
    pub fn parse_point(&self, text: &str) -> Result<Point<F::Elem>, ModelError> {
        let (x, y) = text
            .split_once(':')
            .ok_or_else(|| ModelError::BadPoint(text.to_string()))?;
        self.point(self.field.parse(x)?, self.field.parse(y)?)
    }

    /// All points in the order `[0:1], [1:1], …, [p-1:1], [1:0]`.
    pub fn points(&self) -> Result<Vec<Point<F::Elem>>, ModelError> {
        let elements = self
            .field
            .elements()
            .ok_or_else(|| ModelError::Infinite(self.field.id().to_string()))?;
        let mut pts: Vec<_> = elements.into_iter().map(|x| self.affine(x)).collect();
        pts.push(self.infinity());
        Ok(pts)
    }

    /// A small deterministic point list usable in any field: the finite
    /// enumeration when there is one, else `[0:1], [1:1], [2:1], [1:0]`.
    fn choice_pool(&self) -> Vec<Point<F::Elem>> {
        self.points().unwrap_or_else(|_| {
            let k = &self.field;
            vec![
                self.affine(k.zero()),
                self.affine(k.one()),
                self.affine(k.from_i64(2)),
                self.infinity(),
            ]
        })
    }

    fn distinct(&self, pts: &[&Point<F::Elem>]) -> Result<(), ModelError> {
        for (i, a) in pts.iter().enumerate() {
            if pts[i + 1..].contains(a) {
                let names: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
                return Err(ModelError::Coincident(names.join(", ")));
            }
        }
        Ok(())
    }

    /// The arrow `A -> B` with label `C`: projection onto `B` along `C`,
    /// restricted to `A`. Writing `rep(A) = β·rep(B) + γ·rep(C)`, its factor
    /// is `β`.
    pub fn label_to_arrow(
        &self,
        a: &Point<F::Elem>,
        b: &Point<F::Elem>,
        c: &Point<F::Elem>,
    ) -> Result<ModelArrow<F::Elem>, ModelError> {
        self.distinct(&[a, b, c])?;
        let k = &self.field;
        // Cramer's rule on the columns rep(B), rep(C).
        let det = k.sub(&k.mul(&b.x, &c.y), &k.mul(&c.x, &b.y));
        let num = k.sub(&k.mul(&a.x, &c.y), &k.mul(&c.x, &a.y));
        let factor = k.div(&num, &det)?;
        Ok(ModelArrow {
            src: a.clone(),
            dst: b.clone(),
            factor,
        })
    }

    /// The label of a non-endo arrow: the direction of `rep(src) - λ·rep(dst)`.
    pub fn arrow_to_label(&self, f: &ModelArrow<F::Elem>) -> Result<Point<F::Elem>, ModelError> {
        if f.src == f.dst {
            return Err(ModelError::EndoArrow(f.src.to_string()));
        }
        let k = &self.field;
        if k.is_zero(&f.factor) {
            return Err(ModelError::ZeroFactor);
        }
        let x = k.sub(&f.src.x, &k.mul(&f.factor, &f.dst.x));
        let y = k.sub(&f.src.y, &k.mul(&f.factor, &f.dst.y));
        self.point(x, y)
    }

    /// The scalar `μ` at `A`.
    pub fn endo(
        &self,
        a: &Point<F::Elem>,
        scalar: F::Elem,
    ) -> Result<ModelArrow<F::Elem>, ModelError> {
        if self.field.is_zero(&scalar) {
            return Err(ModelError::ZeroFactor);
        }
        Ok(ModelArrow {
            src: a.clone(),
            dst: a.clone(),
            factor: scalar,
        })
    }

    pub fn identity(&self, a: &Point<F::Elem>) -> ModelArrow<F::Elem> {
        ModelArrow {
            src: a.clone(),
            dst: a.clone(),
            factor: self.field.one(),
        }
    }

    pub fn inverse(&self, f: &ModelArrow<F::Elem>) -> Result<ModelArrow<F::Elem>, ModelError> {
        Ok(ModelArrow {
            src: f.dst.clone(),
            dst: f.src.clone(),
            factor: self.field.inv(&f.factor)?,
        })
    }

    /// `f` then `g`.
    pub fn compose(
        &self,
        f: &ModelArrow<F::Elem>,
        g: &ModelArrow<F::Elem>,
    ) -> Result<ModelArrow<F::Elem>, ModelError> {
        if f.dst != g.src {
            return Err(ModelError::NotComposable(f.to_string(), g.to_string()));
        }
        Ok(ModelArrow {
            src: f.src.clone(),
            dst: g.dst.clone(),
            factor: self.field.mul(&f.factor, &g.factor),
        })
    }

    /// `(A,B;C,D)`: `A -> B` labelled `C`, then `B -> A` labelled `D`.
    pub fn cross_ratio(
        &self,
        a: &Point<F::Elem>,
        b: &Point<F::Elem>,
        c: &Point<F::Elem>,
        d: &Point<F::Elem>,
    ) -> Result<F::Elem, ModelError> {
        let there = self.label_to_arrow(a, b, c)?;
        let back = self.label_to_arrow(b, a, d)?;
        Ok(self.compose(&there, &back)?.factor)
    }

    /// `(A,B,C;D,E,F)`: `A -> B` labelled `D`, `B -> C` labelled `E`,
    /// `C -> A` labelled `F`.
    #[allow(clippy::too_many_arguments)]
    pub fn tri_rapport(
        &self,
        a: &Point<F::Elem>,
        b: &Point<F::Elem>,
        c: &Point<F::Elem>,
        d: &Point<F::Elem>,
        e: &Point<F::Elem>,
        f: &Point<F::Elem>,
    ) -> Result<F::Elem, ModelError> {
        self.distinct(&[a, b, c])?;
        let ab = self.label_to_arrow(a, b, d)?;
        let bc = self.label_to_arrow(b, c, e)?;
        let ca = self.label_to_arrow(c, a, f)?;
        Ok(self.compose(&self.compose(&ab, &bc)?, &ca)?.factor)
    }

    /// The `D` with `(A,B;C,D) = μ`, for `μ ≠ 0`. Since `(A,B;C,D)` is the
    /// factor of `A→B` (via `C`) times that of `B→A` (via `D`), `D` is the
    /// label of the arrow `B→A` with the complementary factor.
    pub fn point_with_cross_ratio(
        &self,
        a: &Point<F::Elem>,
        b: &Point<F::Elem>,
        c: &Point<F::Elem>,
        mu: &F::Elem,
    ) -> Result<Point<F::Elem>, ModelError> {
        let there = self.label_to_arrow(a, b, c)?;
        if self.field.is_zero(mu) {
            return Err(ModelError::ZeroFactor);
        }
        let factor = self.field.div(mu, &there.factor)?;
        self.arrow_to_label(&ModelArrow {
            src: b.clone(),
            dst: a.clone(),
            factor,
        })
    }

    /// `(A,B,C;C,A,B)` for given `B`, `C`.
    pub fn minus_one_via(
        &self,
        a: &Point<F::Elem>,
        b: &Point<F::Elem>,
        c: &Point<F::Elem>,
    ) -> Result<F::Elem, ModelError> {
        self.tri_rapport(a, b, c, c, a, b)
    }

    /// `(-1)_A`, with `B`, `C` the two least points different from `A`.
    pub fn minus_one(&self, a: &Point<F::Elem>) -> Result<F::Elem, ModelError> {
        let pool = self.choice_pool();
        let mut others = pool.iter().filter(|p| *p != a);
        match (others.next(), others.next()) {
            (Some(b), Some(c)) => self.minus_one_via(a, b, c),
            _ => Err(ModelError::Coincident(a.to_string())),
        }
    }

    fn check_harmonic_inputs(
        &self,
        a: &Point<F::Elem>,
        b: &Point<F::Elem>,
        c: &Point<F::Elem>,
    ) -> Result<(), ModelError> {
        self.distinct(&[a, b, c])?;
        if self.field.id() == crate::scalar::FieldId::Prime(2) {
            return Err(ModelError::CharacteristicTwo(c.to_string()));
        }
        Ok(())
    }

    /// The harmonic conjugate of `C` with respect to `A`, `B`: the `H` with
    /// `(A,B;C,H) = -1`.
    pub fn harmonic_conjugate(
        &self,
        a: &Point<F::Elem>,
        b: &Point<F::Elem>,
        c: &Point<F::Elem>,
    ) -> Result<Point<F::Elem>, ModelError> {
        self.check_harmonic_inputs(a, b, c)?;
        let minus_one = self.field.neg(&self.field.one());
        self.point_with_cross_ratio(a, b, c, &minus_one)
    }

    /// The harmonic conjugate as the label of `B -> C` (via `A`) followed by
    /// `C -> A` (via `B`).
    pub fn harmonic_conjugate_by_composite(
        &self,
        a: &Point<F::Elem>,
        b: &Point<F::Elem>,
        c: &Point<F::Elem>,
    ) -> Result<Point<F::Elem>, ModelError> {
        self.check_harmonic_inputs(a, b, c)?;
        let bc = self.label_to_arrow(b, c, a)?;
        let ca = self.label_to_arrow(c, a, b)?;
        self.arrow_to_label(&self.compose(&bc, &ca)?)
    }
}
