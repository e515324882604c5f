//! One-dimensional central extensions and the factored (hatted) actions.
//!
//! The split is fixed once at construction: the extended algebra is the base
//! with one extra, central basis vector, and the extension cochain fills the
//! new structure component. The factored adjoint and coadjoint actions of
//! the base group on the extension are expressed through the unique group
//! cocycle integrating the split's cochain.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{Covector, GroupWord, LieAlgebra, Vector};
use crate::cocycle::SymplecticCocycle;
use crate::cohomology::{cocycle_residual, TwoCochain};
use crate::error::{Error, Result};
use crate::scalar::{to_f64, Real};
use crate::tol::Tolerances;

/// A one-dimensional central extension `base (+) R` with the last basis
/// vector central and bracket `[(X,u),(Y,v)] = ([X,Y], c(X,Y))`.
#[derive(Debug, Clone)]
pub struct CentralExtension<T: Real> {
    base: LieAlgebra<T>,
    cocycle: TwoCochain<T>,
    extended: LieAlgebra<T>,
}

/// Picks a label for the central direction, renaming on collision.
fn central_label(existing: &[String]) -> String {
    if !existing.iter().any(|n| n == "Z") {
        return "Z".to_string();
    }
    let mut k = 1usize;
    loop {
        let candidate = format!("Z_{}", k);
        if !existing.iter().any(|n| *n == candidate) {
            return candidate;
        }
        k += 1;
    }
}

impl<T: Real> CentralExtension<T> {
    /// Builds the extension defined by a closed two-cochain.
    ///
    /// Non-cocycles are rejected (the extended bracket would fail Jacobi);
    /// the reported residual is the Chevalley-Eilenberg one. The extended
    /// algebra is revalidated against the usual algebra invariants.
    pub fn new(base: LieAlgebra<T>, cocycle: TwoCochain<T>, tols: &Tolerances<T>) -> Result<Self> {
        let n = base.dim();
        if cocycle.dim() != n {
            return Err(Error::DimensionMismatch {
                context: "CentralExtension::new",
                expected: n,
                got: cocycle.dim(),
            });
        }
        let residual = cocycle_residual(&base, &cocycle)?;
        if residual > tols.verify {
            return Err(Error::NotACocycle {
                residual: to_f64(residual),
                tolerance: to_f64(tols.verify),
            });
        }

        let mut structure = Vec::with_capacity(n + 1);
        for k in 0..n {
            let mut m = DMatrix::<T>::zeros(n + 1, n + 1);
            m.view_mut((0, 0), (n, n)).copy_from(&base.structure()[k]);
            structure.push(m);
        }
        let mut central = DMatrix::<T>::zeros(n + 1, n + 1);
        central.view_mut((0, 0), (n, n)).copy_from(cocycle.matrix());
        structure.push(central);

        let mut names: Vec<String> = base.basis_names().to_vec();
        names.push(central_label(base.basis_names()));

        let extended = LieAlgebra::new(format!("{}_ext", base.name()), names, structure, tols.alg)?;
        Ok(CentralExtension {
            base,
            cocycle,
            extended,
        })
    }

    pub fn base(&self) -> &LieAlgebra<T> {
        &self.base
    }

    pub fn cocycle(&self) -> &TwoCochain<T> {
        &self.cocycle
    }

    pub fn extended(&self) -> &LieAlgebra<T> {
        &self.extended
    }

    /// Embeds `(x, u)` into the extension's coordinates.
    pub fn lift(&self, x: &Vector<T>, u: T) -> Result<Vector<T>> {
        let n = self.base.dim();
        if x.dim() != n {
            return Err(Error::DimensionMismatch {
                context: "lift",
                expected: n,
                got: x.dim(),
            });
        }
        let mut coords = DVector::zeros(n + 1);
        coords.view_mut((0, 0), (n, 1)).copy_from(&x.coords);
        coords[n] = u;
        Ok(Vector::from_dvector(coords))
    }

    /// Embeds `(alpha, zeta)` into the dual of the extension.
    pub fn lift_dual(&self, alpha: &Covector<T>, zeta: T) -> Result<Covector<T>> {
        let n = self.base.dim();
        if alpha.dim() != n {
            return Err(Error::DimensionMismatch {
                context: "lift_dual",
                expected: n,
                got: alpha.dim(),
            });
        }
        let mut coords = DVector::zeros(n + 1);
        coords.view_mut((0, 0), (n, 1)).copy_from(&alpha.coords);
        coords[n] = zeta;
        Ok(Covector::from_dvector(coords))
    }

    fn check_cocycle_match(&self, s: &SymplecticCocycle<T>, tol_verify: T) -> Result<()> {
        if s.algebra().dim() != self.base.dim() {
            return Err(Error::DimensionMismatch {
                context: "cocycle match",
                expected: self.base.dim(),
                got: s.algebra().dim(),
            });
        }
        let residual = (s.dtheta().matrix() - self.cocycle.matrix()).amax();
        if residual > tol_verify {
            return Err(Error::CocycleMismatch {
                residual: to_f64(residual),
                tolerance: to_f64(tol_verify),
            });
        }
        Ok(())
    }

    /// The factored adjoint action of the word on the extension:
    /// `(X, u) -> (Ad_w X, u - <theta(w^-1), X>)`, as an
    /// `(n+1) x (n+1)` block matrix. The group cocycle must integrate the
    /// split's cochain.
    pub fn factored_adjoint(
        &self,
        s: &SymplecticCocycle<T>,
        w: &GroupWord<T>,
        tol_verify: T,
    ) -> Result<DMatrix<T>> {
        self.check_cocycle_match(s, tol_verify)?;
        let n = self.base.dim();
        let ad = self.base.word_adjoint(w)?;
        let theta_inv = s.eval_word(&w.inverse())?;
        let mut m = DMatrix::<T>::identity(n + 1, n + 1);
        m.view_mut((0, 0), (n, n)).copy_from(&ad);
        for j in 0..n {
            m[(n, j)] = -theta_inv.coords[j];
        }
        Ok(m)
    }

    /// The factored coadjoint action on the dual:
    /// `(alpha, zeta) -> (Ad*_w alpha - zeta theta(w), zeta)`.
    /// The hyperplane coordinate `zeta` is returned unchanged.
    pub fn factored_coadjoint(
        &self,
        s: &SymplecticCocycle<T>,
        w: &GroupWord<T>,
        alpha: &Covector<T>,
        zeta: T,
        tol_verify: T,
    ) -> Result<(Covector<T>, T)> {
        self.check_cocycle_match(s, tol_verify)?;
        let moved = self.base.cotransport(w, alpha)?;
        let theta = s.eval_word(w)?;
        Ok((moved.sub(&theta.scaled(zeta)), zeta))
    }
}

/// The affine action `rho(w) alpha = Ad*_w alpha - theta(w)`: the factored
/// coadjoint action restricted to the hyperplane `zeta = 1`.
pub fn affine_action<T: Real>(
    s: &SymplecticCocycle<T>,
    w: &GroupWord<T>,
    alpha: &Covector<T>,
) -> Result<Covector<T>> {
    let moved = s.algebra().cotransport(w, alpha)?;
    Ok(moved.sub(&s.eval_word(w)?))
}
