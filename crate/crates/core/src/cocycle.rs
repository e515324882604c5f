//! Symplectic group cocycles `theta: G -> g*`.
//!
//! A cocycle is determined by its derivative at the identity, an alternating
//! closed two-cochain `c`. Values on one-parameter subgroups follow from the
//! closed form `theta(exp X) = phi1(ad*_X) (d_e theta X)`, values on words
//! from a literal fold of the cocycle identity
//! `theta(g1 g2) = Ad*_{g1} theta(g2) + theta(g1)`.

use rand::Rng;

use crate::algebra::{Covector, GroupWord, LieAlgebra, MatrixRep, Vector};
use crate::cohomology::{cocycle_residual, solve_coboundary, TwoCochain};
use crate::error::{Error, Result};
use crate::linalg::expm_affine;
use crate::report::{MaxTracker, VerificationReport};
use crate::sampling;
use crate::scalar::{to_f64, Real};
use crate::tol::Tolerances;

/// A symplectic group cocycle, presented through its derivative cochain
/// `D_{ij} = <d_e theta(e_i), e_j>`.
///
/// The derivative is required to be alternating (canonicalized in
/// [`TwoCochain`]) and closed; for a connected group these data determine
/// `theta` uniquely, so no other state is carried.
#[derive(Debug, Clone)]
pub struct SymplecticCocycle<T: Real> {
    algebra: LieAlgebra<T>,
    dtheta: TwoCochain<T>,
}

impl<T: Real> SymplecticCocycle<T> {
    /// Builds the cocycle integrating a closed two-cochain. Rejects input
    /// whose cocycle residual exceeds `tol_verify`.
    pub fn from_ce_cocycle(
        algebra: LieAlgebra<T>,
        c: TwoCochain<T>,
        tol_verify: T,
    ) -> Result<Self> {
        if c.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                context: "SymplecticCocycle::from_ce_cocycle",
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
        Ok(SymplecticCocycle { algebra, dtheta: c })
    }

    pub fn algebra(&self) -> &LieAlgebra<T> {
        &self.algebra
    }

    pub fn dtheta(&self) -> &TwoCochain<T> {
        &self.dtheta
    }

    /// The derivative applied to an algebra element, as a covector:
    /// `<d_e theta(x), e_j> = sum_i x_i D_{ij}`.
    pub fn dtheta_apply(&self, x: &Vector<T>) -> Result<Covector<T>> {
        if x.dim() != self.algebra.dim() {
            return Err(Error::DimensionMismatch {
                context: "dtheta_apply",
                expected: self.algebra.dim(),
                got: x.dim(),
            });
        }
        Ok(Covector::from_dvector(
            self.dtheta.matrix().transpose() * &x.coords,
        ))
    }

    /// `theta(exp x)` in closed form.
    ///
    /// The curve `gamma(t) = theta(exp t x)` satisfies
    /// `gamma'(t) = Ad*_{exp t x} d_e theta(x)`, so
    /// `theta(exp x) = phi1(ad*_x) (d_e theta x)`, evaluated through the
    /// augmented-matrix exponential (exact at `ad*_x = 0`).
    pub fn eval_exp(&self, x: &Vector<T>) -> Result<Covector<T>> {
        let coad = self.algebra.coad(x)?;
        let beta = self.dtheta_apply(x)?;
        let (_, value) = expm_affine(&coad, &beta.coords);
        Ok(Covector::from_dvector(value))
    }

    /// `theta` on a word, by the right fold
    /// `theta(x :: w) = theta(exp x) + Ad*_{exp x} theta(w)`; the empty
    /// word gives zero.
    pub fn eval_word(&self, w: &GroupWord<T>) -> Result<Covector<T>> {
        self.algebra.check_word(w, "eval_word")?;
        let n = self.algebra.dim();
        let mut acc = Covector::zeros(n);
        for letter in w.letters.iter().rev() {
            let coad = self.algebra.coad(letter)?;
            let (transport, head) = expm_affine(&coad, &self.dtheta_apply(letter)?.coords);
            acc = Covector::from_dvector(transport * acc.coords + head);
        }
        Ok(acc)
    }

    /// Sampled check of the identity
    /// `<theta(g), [X, Y]> = c(X, Y) - c(Ad_{g^-1} X, Ad_{g^-1} Y)`
    /// over random words (length at most 3, unit-ball letters) and pairs.
    pub fn verify_cocycle_identity<R: Rng>(
        &self,
        samples: usize,
        rng: &mut R,
        tol_verify: T,
    ) -> Result<VerificationReport> {
        let n = self.algebra.dim();
        let mut worst = MaxTracker::new();
        for _ in 0..samples {
            let w = sampling::word::<T, _>(rng, n, 3);
            let x = sampling::unit_ball_vector::<T, _>(rng, n);
            let y = sampling::unit_ball_vector::<T, _>(rng, n);
            let theta = self.eval_word(&w)?;
            let lhs = theta.pair(&self.algebra.bracket(&x, &y)?);
            let back = self.algebra.word_adjoint(&w.inverse())?;
            let xb = Vector::from_dvector(&back * &x.coords);
            let yb = Vector::from_dvector(&back * &y.coords);
            let rhs = self.dtheta.eval(&x, &y)? - self.dtheta.eval(&xb, &yb)?;
            worst.update((lhs - rhs).abs());
        }
        Ok(VerificationReport::new(worst.value(), tol_verify, samples))
    }

    /// Searches for `mu0` with `theta(g) = Ad*_g mu0 - mu0`.
    ///
    /// A candidate comes from solving `ce_d1(mu0) = d_e theta`; it is
    /// accepted only after the sampled word-level check passes. Absence
    /// means the class of `theta` is nonzero.
    pub fn trivialize<R: Rng>(
        &self,
        samples: usize,
        rng: &mut R,
        tols: &Tolerances<T>,
    ) -> Result<Option<Covector<T>>> {
        let candidate = solve_coboundary(&self.algebra, &self.dtheta, tols.verify, tols.rank)?;
        let mu0 = match candidate {
            Some(mu0) => mu0,
            None => return Ok(None),
        };
        let n = self.algebra.dim();
        for _ in 0..samples.max(1) {
            let w = sampling::word::<T, _>(rng, n, 3);
            let theta = self.eval_word(&w)?;
            let coboundary = self.algebra.cotransport(&w, &mu0)?.sub(&mu0);
            if theta.sub(&coboundary).norm() > tols.verify {
                return Ok(None);
            }
        }
        Ok(Some(mu0))
    }

    /// Evaluates `theta` on a caller-declared identity word of a
    /// represented group.
    ///
    /// Preconditions: the word's image under `rep` multiplies to the
    /// identity and `Ad` of the word is the identity, both within
    /// `tol_verify`. A returned value with norm above the tolerance
    /// certifies that `theta` does not descend to a single-valued cocycle
    /// on the represented group.
    pub fn holonomy_defect(
        &self,
        rep: &MatrixRep<T>,
        w: &GroupWord<T>,
        tol_verify: T,
    ) -> Result<Covector<T>> {
        self.algebra.check_word(w, "holonomy_defect")?;
        let d = rep.dim_rep();
        let image = match &w.rep_images {
            Some(images) => {
                if images.len() != w.letters.len() {
                    return Err(Error::InvalidRep {
                        reason: format!(
                            "word carries {} images for {} letters",
                            images.len(),
                            w.letters.len()
                        ),
                    });
                }
                let mut m = nalgebra::DMatrix::<T>::identity(d, d);
                for g in images {
                    m = m * g;
                }
                m
            }
            None => rep.word_image(w),
        };
        let rep_residual = (image - nalgebra::DMatrix::<T>::identity(d, d)).amax();
        let n = self.algebra.dim();
        let ad_residual =
            (self.algebra.word_adjoint(w)? - nalgebra::DMatrix::<T>::identity(n, n)).amax();
        if rep_residual > tol_verify || ad_residual > tol_verify {
            return Err(Error::NotIdentityWord {
                rep_residual: to_f64(rep_residual),
                ad_residual: to_f64(ad_residual),
            });
        }
        self.eval_word(w)
    }
}
