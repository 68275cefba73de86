//! Q-balls in functional form `{x : Q(x) <= phi(x) + D'}`.
//!
//! The functional representation `(phi, D')` is canonical and valid for
//! every signature; the center/radius view exists only when the form is
//! non-degenerate (for a degenerate form the center sits at infinity).

use crate::error::Error;
use crate::linalg::{self, det, dot, solve};
use crate::qform::QuadraticForm;
use crate::rat::{rat, sign_of, ExactSign, Rat};

/// Ball `{x : Q(x) <= phi . x + D'}`; its boundary is the Q-sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QBall {
    form: QuadraticForm,
    phi: Vec<Rat>,
    dprime: Rat,
}

/// Center/radius view `{x : Q(x - center) <= radius_sq}`; `radius_sq`
/// may be negative for indefinite forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterForm {
    pub center: Vec<Rat>,
    pub radius_sq: Rat,
}

/// Result of an exact containment query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

impl QBall {
    pub fn new(form: QuadraticForm, phi: Vec<Rat>, dprime: Rat) -> Result<Self, Error> {
        if phi.len() != form.dim() {
            return Err(Error::DimensionMismatch { expected: form.dim(), got: phi.len() });
        }
        Ok(QBall { form, phi, dprime })
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn phi(&self) -> &[Rat] {
        &self.phi
    }

    pub fn dprime(&self) -> &Rat {
        &self.dprime
    }

    /// `Q(x) - phi(x) - D'`; negative inside, zero on the sphere.
    pub fn defect(&self, x: &[Rat]) -> Result<Rat, Error> {
        let q = self.form.evaluate(x)?;
        Ok(q - dot(&self.phi, x) - &self.dprime)
    }

    /// Exact containment by the sign of the defect.
    pub fn contains(&self, x: &[Rat]) -> Result<Containment, Error> {
        Ok(match sign_of(&self.defect(x)?) {
            ExactSign::Neg => Containment::Inside,
            ExactSign::Zero => Containment::Boundary,
            ExactSign::Pos => Containment::Outside,
        })
    }

    /// Gradient of the defining function at `x`: `2 A x - phi`.
    pub fn gradient(&self, x: &[Rat]) -> Vec<Rat> {
        linalg::sub(&self.form.gradient(x), &self.phi)
    }

    /// Center/radius view, defined only for non-degenerate forms:
    /// `center = A^{-1} phi / 2`, `radius_sq = D' + Q(center)`.
    pub fn center_form(&self) -> Result<CenterForm, Error> {
        if self.form.is_degenerate() {
            return Err(Error::DegenerateForm { op: "center_form" });
        }
        let half_phi = linalg::scale(&self.phi, &Rat::new(1.into(), 2.into()));
        let center = solve(self.form.matrix(), &half_phi)?;
        let radius_sq = &self.dprime + self.form.evaluate(&center)?;
        Ok(CenterForm { center, radius_sq })
    }

    /// Rebuilds the functional form from a center/radius view:
    /// `phi = 2 A p`, `D' = D - Q(p)`.
    pub fn from_center_form(form: QuadraticForm, cf: &CenterForm) -> Result<Self, Error> {
        let phi = form.gradient(&cf.center);
        let dprime = &cf.radius_sq - form.evaluate(&cf.center)?;
        QBall::new(form, phi, dprime)
    }
}

/// The unique Q-ball whose sphere passes through the `d+1` affinely
/// independent simplex vertices: solves `phi(x_i) + D' = Q(x_i)` exactly.
pub fn circumball(q: &QuadraticForm, simplex: &[Vec<Rat>]) -> Result<QBall, Error> {
    let d = q.dim();
    if simplex.len() != d + 1 {
        return Err(Error::InvalidParameter(format!(
            "circumball needs {} vertices, got {}",
            d + 1,
            simplex.len()
        )));
    }
    let mut matrix = Vec::with_capacity(d + 1);
    let mut rhs = Vec::with_capacity(d + 1);
    for v in simplex {
        let mut row = v.clone();
        row.push(rat(1));
        matrix.push(row);
        rhs.push(q.evaluate(v)?);
    }
    let mut solution = solve(&matrix, &rhs).map_err(|_| Error::AffinelyDependent)?;
    let dprime = solution.pop().unwrap();
    QBall::new(q.clone(), solution, dprime)
}

/// In-sphere predicate: the sign of the `(d+2) x (d+2)` lifted
/// determinant with rows `(x_i, Q(x_i), 1)` and `(query, Q(query), 1)`,
/// normalized by the simplex orientation so that negative means the
/// query lies strictly inside the circumscribing Q-ball. Agrees exactly
/// with `circumball` + `contains`.
pub fn in_sphere_sign(
    q: &QuadraticForm,
    simplex: &[Vec<Rat>],
    query: &[Rat],
) -> Result<ExactSign, Error> {
    let d = q.dim();
    if simplex.len() != d + 1 {
        return Err(Error::InvalidParameter(format!(
            "in_sphere_sign needs {} vertices, got {}",
            d + 1,
            simplex.len()
        )));
    }
    let mut orient_rows = Vec::with_capacity(d + 1);
    let mut lifted_rows = Vec::with_capacity(d + 2);
    for v in simplex {
        let mut orow = v.clone();
        orow.push(rat(1));
        orient_rows.push(orow);
        let mut lrow = v.clone();
        lrow.push(q.evaluate(v)?);
        lrow.push(rat(1));
        lifted_rows.push(lrow);
    }
    let orientation = det(&orient_rows);
    if orientation == rat(0) {
        return Err(Error::AffinelyDependent);
    }
    let mut qrow = query.to_vec();
    qrow.push(q.evaluate(query)?);
    qrow.push(rat(1));
    lifted_rows.push(qrow);
    let lifted = det(&lifted_rows);
    // lifted = -defect(query) * orientation, so the normalized sign
    // -sign(lifted) * sign(orientation) equals the sign of the defect.
    let normalized = -lifted * orientation;
    Ok(sign_of(&normalized))
}
