//! The left-invariant presymplectic two-form on the group determined by a
//! closed two-cochain, the potential functions built from the group
//! cocycle, and the sample-based integrability certificate.
//!
//! On left-invariant fields the form is constant, `Omega(l_X, l_Y) = c(X, Y)`;
//! on right-invariant fields at the endpoint of a word it picks up the
//! adjoint transport, `Omega(r_X, r_Y)(g) = c(Ad_{g^-1} X, Ad_{g^-1} Y)`.
//! The integrability criterion asks the derivative of
//! `Phi_X(g) = -<theta(g), X>` along right-invariant flows to reproduce
//! exactly that transported value; a passing sampled report is the
//! artifact's certificate that the central extension integrates.

use rand::Rng;

use crate::algebra::{Covector, GroupWord, LieAlgebra, Vector};
use crate::cocycle::SymplecticCocycle;
use crate::cohomology::{cocycle_residual, solve_coboundary, TwoCochain};
use crate::error::{Error, Result};
use crate::report::{MaxTracker, VerificationReport};
use crate::sampling;
use crate::scalar::{to_f64, Real};
use crate::tol::Tolerances;

/// A closed left-invariant two-form, carried by its value at the identity.
#[derive(Debug, Clone)]
pub struct LeftInvariantTwoForm<T: Real> {
    algebra: LieAlgebra<T>,
    c: TwoCochain<T>,
}

impl<T: Real> LeftInvariantTwoForm<T> {
    /// Closedness of the form is the cocycle condition on `c`.
    pub fn new(algebra: LieAlgebra<T>, c: TwoCochain<T>, tol_verify: T) -> Result<Self> {
        if c.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                context: "LeftInvariantTwoForm::new",
                expected: algebra.dim(),
                got: c.dim(),
            });
        }
        let residual = cocycle_residual(&algebra, &c)?;
        if residual > tol_verify {
            return Err(Error::NotACocycle {
                residual: to_f64(residual),
                tolerance: to_f64(tol_verify),
            });
        }
        Ok(LeftInvariantTwoForm { algebra, c })
    }

    pub fn algebra(&self) -> &LieAlgebra<T> {
        &self.algebra
    }

    pub fn cochain(&self) -> &TwoCochain<T> {
        &self.c
    }

    /// Value on left-invariant fields: `c(x, y)`, independent of the point.
    pub fn eval_left(&self, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
        self.c.eval(x, y)
    }

    /// Value on right-invariant fields at the endpoint of `w`:
    /// `c(Ad_{w^-1} x, Ad_{w^-1} y)`.
    pub fn eval_right(&self, w: &GroupWord<T>, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
        let back = self.algebra.word_adjoint(&w.inverse())?;
        let xb = Vector::from_dvector(&back * &x.coords);
        let yb = Vector::from_dvector(&back * &y.coords);
        self.c.eval(&xb, &yb)
    }
}

/// The potential `Phi_X(w) = -<theta(w), X>`; it vanishes at the identity.
pub fn phi_potential<T: Real>(
    s: &SymplecticCocycle<T>,
    x: &Vector<T>,
    w: &GroupWord<T>,
) -> Result<T> {
    if x.dim() != s.algebra().dim() {
        return Err(Error::DimensionMismatch {
            context: "phi_potential",
            expected: s.algebra().dim(),
            got: x.dim(),
        });
    }
    Ok(-s.eval_word(w)?.pair(x))
}

fn check_form_matches_cocycle<T: Real>(
    form: &LeftInvariantTwoForm<T>,
    s: &SymplecticCocycle<T>,
    tol_verify: T,
) -> Result<()> {
    let residual = (form.c.matrix() - s.dtheta().matrix()).amax();
    if residual > tol_verify {
        return Err(Error::CocycleMismatch {
            residual: to_f64(residual),
            tolerance: to_f64(tol_verify),
        });
    }
    Ok(())
}

/// Sampled integrability certificate: the central finite difference of
/// `Phi_X` along the right-invariant flow `g -> exp(t y) g` is compared to
/// the form on right-invariant fields.
pub fn neeb_verify<T: Real, R: Rng>(
    form: &LeftInvariantTwoForm<T>,
    s: &SymplecticCocycle<T>,
    samples: usize,
    step: T,
    rng: &mut R,
    tols: &Tolerances<T>,
) -> Result<VerificationReport> {
    if step <= T::zero() {
        return Err(Error::InvalidDocument {
            field: "step".into(),
            reason: "finite-difference step must be positive".into(),
        });
    }
    check_form_matches_cocycle(form, s, tols.verify)?;
    let n = form.algebra.dim();
    let mut worst = MaxTracker::new();
    for _ in 0..samples {
        let w = sampling::word::<T, _>(rng, n, 3);
        let x = sampling::unit_ball_vector::<T, _>(rng, n);
        let y = sampling::unit_ball_vector::<T, _>(rng, n);
        let plus = phi_potential(s, &x, &w.prepend(y.scaled(step)))?;
        let minus = phi_potential(s, &x, &w.prepend(y.scaled(-step)))?;
        let fd = (plus - minus) / (step + step);
        let exact = form.eval_right(&w, &x, &y)?;
        worst.update((fd - exact).abs());
    }
    Ok(VerificationReport::new(worst.value(), tols.fd, samples))
}

/// Outcome of the self-action check: whether the potentials can be shifted
/// so that `Phi_{[X,Y]}` equals the form on right-invariant fields.
#[derive(Debug, Clone)]
pub struct SelfHamiltonianReport<T: Real> {
    pub hamiltonian: bool,
    /// The shift covector, when the class of `c` vanishes.
    pub shift: Option<Covector<T>>,
    /// For the hamiltonian verdict: residual of the shifted identity.
    /// Otherwise: residual of the defect identity
    /// `c(X, Y) = Omega(r_X, r_Y)(w) - Phi_{[X,Y]}(w)`.
    pub report: VerificationReport,
}

/// Checks whether the self-action is hamiltonian, i.e. whether the shifted
/// potential `Phi'_X = Phi_X - <alpha, X>` satisfies
/// `Phi'_{[X,Y]}(w) = Omega(r_X, r_Y)(w)` for a coboundary shift `alpha`.
pub fn self_hamiltonian_check<T: Real, R: Rng>(
    form: &LeftInvariantTwoForm<T>,
    s: &SymplecticCocycle<T>,
    samples: usize,
    rng: &mut R,
    tols: &Tolerances<T>,
) -> Result<SelfHamiltonianReport<T>> {
    check_form_matches_cocycle(form, s, tols.verify)?;
    let n = form.algebra.dim();
    let shift = solve_coboundary(&form.algebra, &form.c, tols.verify, tols.rank)?;
    let mut worst = MaxTracker::new();
    match shift {
        Some(alpha) => {
            for _ in 0..samples {
                let w = sampling::word::<T, _>(rng, n, 3);
                let x = sampling::unit_ball_vector::<T, _>(rng, n);
                let y = sampling::unit_ball_vector::<T, _>(rng, n);
                let bracket = form.algebra.bracket(&x, &y)?;
                let shifted = phi_potential(s, &bracket, &w)? - alpha.pair(&bracket);
                let omega = form.eval_right(&w, &x, &y)?;
                worst.update((shifted - omega).abs());
            }
            let report = VerificationReport::new(worst.value(), tols.verify, samples);
            Ok(SelfHamiltonianReport {
                hamiltonian: report.pass,
                shift: Some(alpha),
                report,
            })
        }
        None => {
            // Spot-check the constant defect: c(X,Y) stays equal to
            // Omega(r_X, r_Y)(w) - Phi_{[X,Y]}(w) along the group.
            for _ in 0..samples {
                let w = sampling::word::<T, _>(rng, n, 3);
                let x = sampling::unit_ball_vector::<T, _>(rng, n);
                let y = sampling::unit_ball_vector::<T, _>(rng, n);
                let bracket = form.algebra.bracket(&x, &y)?;
                let defect = form.eval_right(&w, &x, &y)? - phi_potential(s, &bracket, &w)?;
                worst.update((defect - form.c.eval(&x, &y)?).abs());
            }
            Ok(SelfHamiltonianReport {
                hamiltonian: false,
                shift: None,
                report: VerificationReport::new(worst.value(), tols.verify, samples),
            })
        }
    }
}
