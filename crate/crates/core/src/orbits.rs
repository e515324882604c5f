//! Coadjoint-orbit linear algebra at a point: the bilinear form
//! `B_alpha(X, Y) = <alpha, [X, Y]>`, stabilizer subalgebras, affine-orbit
//! stabilizers and symplectic form values, and the correspondence between
//! affine orbits and coadjoint orbits of the extension.

use nalgebra::DMatrix;
use rand::Rng;

use crate::algebra::{Covector, LieAlgebra, Vector};
use crate::cocycle::SymplecticCocycle;
use crate::cohomology::TwoCochain;
use crate::error::{Error, Result};
use crate::extension::{affine_action, CentralExtension};
use crate::linalg::rank_nullspace;
use crate::report::{ClauseReport, MaxTracker, MultiClauseReport};
use crate::sampling;
use crate::scalar::{real, to_f64, Real};
use crate::tol::Tolerances;

/// Stabilizer and orbit data at a dual point.
///
/// `orbit_dim` equals the rank of the relevant bilinear form and the form
/// rank coincides with it; both are even away from threshold ambiguity.
#[derive(Debug, Clone)]
pub struct OrbitReport<T: Real> {
    pub alpha: Covector<T>,
    pub stabilizer_basis: Vec<Vector<T>>,
    pub orbit_dim: usize,
    pub form_rank: usize,
    pub singular_values: Vec<T>,
    /// Non-empty when the rank decision was numerically delicate.
    pub warnings: Vec<String>,
}

/// The Kirillov-Kostant-Souriau form value `<alpha, [x, y]>`.
pub fn kks_form<T: Real>(
    alg: &LieAlgebra<T>,
    alpha: &Covector<T>,
    x: &Vector<T>,
    y: &Vector<T>,
) -> Result<T> {
    if alpha.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            context: "kks_form",
            expected: alg.dim(),
            got: alpha.dim(),
        });
    }
    Ok(alpha.pair(&alg.bracket(x, y)?))
}

/// The matrix `B_{ij} = <alpha, [e_i, e_j]>`.
pub fn kks_matrix<T: Real>(alg: &LieAlgebra<T>, alpha: &Covector<T>) -> Result<DMatrix<T>> {
    let n = alg.dim();
    if alpha.dim() != n {
        return Err(Error::DimensionMismatch {
            context: "kks_matrix",
            expected: n,
            got: alpha.dim(),
        });
    }
    let mut b = DMatrix::<T>::zeros(n, n);
    for k in 0..n {
        b += &alg.structure()[k] * alpha.coords[k];
    }
    Ok(b)
}

/// The affine-orbit form value `<alpha, [x, y]> + c(x, y)`.
pub fn affine_symplectic_form<T: Real>(
    alg: &LieAlgebra<T>,
    c: &TwoCochain<T>,
    alpha: &Covector<T>,
    x: &Vector<T>,
    y: &Vector<T>,
) -> Result<T> {
    Ok(kks_form(alg, alpha, x, y)? + c.eval(x, y)?)
}

fn report_from_form<T: Real>(
    alg: &LieAlgebra<T>,
    alpha: &Covector<T>,
    form: DMatrix<T>,
    tol_rank: T,
) -> OrbitReport<T> {
    let nullity = rank_nullspace(&form, tol_rank);
    let mut rank = nullity.rank;
    let mut warnings = Vec::new();
    let mut stabilizer: Vec<Vector<T>> = nullity
        .nullspace
        .iter()
        .map(|v| Vector::from_dvector(v.clone()))
        .collect();
    if rank % 2 == 1 {
        // Singular values of an antisymmetric form come in equal pairs; an
        // odd count means the threshold split a pair.
        warnings.push(format!(
            "odd numerical rank {} for an antisymmetric form; singular values {:?}; rank lowered to keep the orbit dimension even",
            rank,
            nullity
                .singular_values
                .iter()
                .map(|s| to_f64(*s))
                .collect::<Vec<_>>()
        ));
        rank -= 1;
        // Move the straddling direction into the stabilizer.
        let smax = nullity
            .singular_values
            .iter()
            .copied()
            .fold(T::zero(), |a, s| if s > a { s } else { a });
        let thresh = tol_rank * smax;
        if let Some((idx, _)) = nullity
            .singular_values
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s > thresh)
            .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite singular values"))
        {
            let svd = form.clone().svd(false, true);
            let v_t = svd.v_t.expect("SVD with compute_v");
            stabilizer.push(Vector::from_dvector(v_t.row(idx).transpose()));
        }
    } else {
        let smax = nullity
            .singular_values
            .iter()
            .copied()
            .fold(T::zero(), |a, s| if s > a { s } else { a });
        let thresh = tol_rank * smax;
        let near = nullity.singular_values.iter().any(|&s| {
            s > thresh * real::<T>(0.1) && s < thresh * real::<T>(10.0) && smax > T::zero()
        });
        if near {
            warnings.push(format!(
                "singular values near the rank threshold: {:?}",
                nullity
                    .singular_values
                    .iter()
                    .map(|s| to_f64(*s))
                    .collect::<Vec<_>>()
            ));
        }
    }
    let _ = alg;
    OrbitReport {
        alpha: alpha.clone(),
        stabilizer_basis: stabilizer,
        orbit_dim: rank,
        form_rank: rank,
        singular_values: nullity.singular_values,
        warnings,
    }
}

/// Stabilizer of `alpha` under the coadjoint action: the radical of
/// `B_alpha`, which coincides with `{x : ad*_x alpha = 0}`.
pub fn stabilizer<T: Real>(
    alg: &LieAlgebra<T>,
    alpha: &Covector<T>,
    tol_rank: T,
) -> Result<OrbitReport<T>> {
    let b = kks_matrix(alg, alpha)?;
    Ok(report_from_form(alg, alpha, b, tol_rank))
}

/// Stabilizer of `alpha` under the affine action: the radical of
/// `A_{ij} = <alpha, [e_i, e_j]> + C_{ij}`.
pub fn affine_stabilizer<T: Real>(
    alg: &LieAlgebra<T>,
    c: &TwoCochain<T>,
    alpha: &Covector<T>,
    tol_rank: T,
) -> Result<OrbitReport<T>> {
    if c.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            context: "affine_stabilizer",
            expected: alg.dim(),
            got: c.dim(),
        });
    }
    let a = kks_matrix(alg, alpha)? + c.matrix();
    Ok(report_from_form(alg, alpha, a, tol_rank))
}

/// Sampled check that the affine orbit of `alpha` and the coadjoint orbit
/// of `(alpha, 1)` in the extension carry the same structure:
///
/// 1. the factored coadjoint action on the hyperplane `zeta = 1` agrees
///    with the affine action;
/// 2. the KKS form of the extension at `(alpha, 1)` on lifts agrees with
///    the affine symplectic form;
/// 3. the stabilizer of `(alpha, 1)` in the extension contains the center
///    and its quotient dimension matches the affine orbit dimension.
pub fn correspondence_check<T: Real, R: Rng>(
    ext: &CentralExtension<T>,
    s: &SymplecticCocycle<T>,
    alpha: &Covector<T>,
    samples: usize,
    rng: &mut R,
    tols: &Tolerances<T>,
) -> Result<MultiClauseReport> {
    let n = ext.base().dim();
    if alpha.dim() != n {
        return Err(Error::DimensionMismatch {
            context: "correspondence_check",
            expected: n,
            got: alpha.dim(),
        });
    }
    let hat_alpha = ext.lift_dual(alpha, T::one())?;

    let mut action_residual = MaxTracker::new();
    let mut form_residual = MaxTracker::new();
    for _ in 0..samples {
        let w = sampling::word::<T, _>(rng, n, 3);
        let x = sampling::unit_ball_vector::<T, _>(rng, n);
        let y = sampling::unit_ball_vector::<T, _>(rng, n);

        let (hat_moved, zeta) = ext.factored_coadjoint(s, &w, alpha, T::one(), tols.verify)?;
        let aff_moved = affine_action(s, &w, alpha)?;
        action_residual.update((hat_moved.coords - aff_moved.coords).amax());
        action_residual.update((zeta - T::one()).abs());

        // KKS form of the extension on lifts, through the extended
        // structure tensor, against the base-level affine form.
        let lift_x = ext.lift(&x, T::zero())?;
        let lift_y = ext.lift(&y, T::zero())?;
        let lhs = kks_form(ext.extended(), &hat_alpha, &lift_x, &lift_y)?;
        let rhs = affine_symplectic_form(ext.base(), ext.cocycle(), alpha, &x, &y)?;
        form_residual.update((lhs - rhs).abs());
    }

    // Clause 3: structural comparison of stabilizers.
    let hat_report = stabilizer(ext.extended(), &hat_alpha, tols.rank)?;
    let aff_report = affine_stabilizer(ext.base(), ext.cocycle(), alpha, tols.rank)?;
    let center_residual = {
        let b_hat = kks_matrix(ext.extended(), &hat_alpha)?;
        let mut center = nalgebra::DVector::<T>::zeros(n + 1);
        center[n] = T::one();
        (b_hat * center).amax()
    };
    let dims_match = hat_report.orbit_dim == aff_report.orbit_dim;

    let clause1 = ClauseReport {
        name: "hyperplane_action",
        max_residual: to_f64(action_residual.value()),
        pass: action_residual.value() <= tols.verify,
        tolerance: to_f64(tols.verify),
    };
    let clause2 = ClauseReport {
        name: "orbit_form",
        max_residual: to_f64(form_residual.value()),
        pass: form_residual.value() <= tols.verify,
        tolerance: to_f64(tols.verify),
    };
    let clause3 = ClauseReport {
        name: "stabilizer_quotient",
        max_residual: to_f64(center_residual),
        pass: center_residual <= tols.verify && dims_match,
        tolerance: to_f64(tols.verify),
    };
    Ok(MultiClauseReport::new(
        vec![clause1, clause2, clause3],
        samples,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use approx::assert_relative_eq;

    fn tols() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn kks_form_basics() {
        let so3 = zoo::so3::<f64>();
        let eps3 = Covector::basis(3, 2);
        let e1 = so3.basis_vector(0);
        let e2 = so3.basis_vector(1);
        assert_eq!(kks_form(&so3, &eps3, &e1, &e2).unwrap(), 1.0);
        assert_eq!(kks_form(&so3, &eps3, &e1, &e1).unwrap(), 0.0);
        let ab = zoo::abelian::<f64>(3);
        assert_eq!(
            kks_form(&ab, &eps3, &ab.basis_vector(0), &ab.basis_vector(1)).unwrap(),
            0.0
        );
    }

    #[test]
    fn stabilizer_at_zero_is_everything() {
        let so3 = zoo::so3::<f64>();
        let rep = stabilizer(&so3, &Covector::zeros(3), tols().rank).unwrap();
        assert_eq!(rep.orbit_dim, 0);
        assert_eq!(rep.stabilizer_basis.len(), 3);
    }

    #[test]
    fn so3_sphere_orbit() {
        let so3 = zoo::so3::<f64>();
        let rep = stabilizer(&so3, &Covector::basis(3, 2), tols().rank).unwrap();
        assert_eq!(rep.orbit_dim, 2);
        assert_eq!(rep.form_rank, 2);
        assert_eq!(rep.stabilizer_basis.len(), 1);
        // The stabilizer is the e3 axis.
        let v = &rep.stabilizer_basis[0];
        assert!(v.coords[0].abs() < 1e-12 && v.coords[1].abs() < 1e-12);
        assert_relative_eq!(v.coords[2].abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn abelian_stabilizer_is_everything() {
        let ab = zoo::abelian::<f64>(4);
        let mut rng = sampling::seeded(40);
        let alpha = sampling::covector_in_cube::<f64, _>(&mut rng, 4);
        let rep = stabilizer(&ab, &alpha, tols().rank).unwrap();
        assert_eq!(rep.orbit_dim, 0);
        assert_eq!(rep.stabilizer_basis.len(), 4);
    }

    #[test]
    fn affine_stabilizer_reduces_to_stabilizer_for_zero_cochain() {
        let so3 = zoo::so3::<f64>();
        let mut rng = sampling::seeded(41);
        let alpha = sampling::covector_in_cube::<f64, _>(&mut rng, 3);
        let a = affine_stabilizer(&so3, &TwoCochain::zero(3), &alpha, tols().rank).unwrap();
        let b = stabilizer(&so3, &alpha, tols().rank).unwrap();
        assert_eq!(a.orbit_dim, b.orbit_dim);
    }

    #[test]
    fn abelian_symplectic_cochain_has_trivial_affine_stabilizer() {
        let ab = zoo::abelian::<f64>(2);
        let c = zoo::heisenberg_cochain::<f64>();
        let mut rng = sampling::seeded(42);
        for _ in 0..5 {
            let alpha = sampling::covector_in_cube::<f64, _>(&mut rng, 2);
            let rep = affine_stabilizer(&ab, &c, &alpha, tols().rank).unwrap();
            assert_eq!(rep.orbit_dim, 2);
            assert!(rep.stabilizer_basis.is_empty());
        }
    }

    #[test]
    fn galilei_affine_stabilizer_at_zero_is_time_translation() {
        let gal = zoo::galilei_1d::<f64>();
        let rep = affine_stabilizer(&gal, &zoo::mass_cochain(), &Covector::zeros(3), tols().rank)
            .unwrap();
        assert_eq!(rep.orbit_dim, 2);
        assert_eq!(rep.stabilizer_basis.len(), 1);
        let v = &rep.stabilizer_basis[0];
        // Basis order (H, P, B): the stabilizer is spanned by H.
        assert_relative_eq!(v.coords[0].abs(), 1.0, epsilon = 1e-12);
        assert!(v.coords[1].abs() < 1e-12 && v.coords[2].abs() < 1e-12);
    }

    #[test]
    fn affine_form_examples() {
        let ab = zoo::abelian::<f64>(2);
        let c = zoo::heisenberg_cochain::<f64>();
        let mut rng = sampling::seeded(43);
        let alpha = sampling::covector_in_cube::<f64, _>(&mut rng, 2);
        let e1 = ab.basis_vector(0);
        let e2 = ab.basis_vector(1);
        // Bracket vanishes, so the value is c(e1, e2) = 1 for any alpha.
        assert_eq!(
            affine_symplectic_form(&ab, &c, &alpha, &e1, &e2).unwrap(),
            1.0
        );
        assert_eq!(
            affine_symplectic_form(&ab, &c, &alpha, &e1, &e1).unwrap(),
            0.0
        );
    }

    #[test]
    fn stabilizer_vectors_annihilate_alpha() {
        // X in the stabilizer iff ad*_X alpha = 0.
        let algs = [zoo::so3::<f64>(), zoo::sl2(), zoo::galilei_1d()];
        let mut rng = sampling::seeded(44);
        for alg in &algs {
            for _ in 0..10 {
                let alpha = sampling::covector_in_cube::<f64, _>(&mut rng, alg.dim());
                let rep = stabilizer(alg, &alpha, tols().rank).unwrap();
                for v in &rep.stabilizer_basis {
                    let moved = alg.coad(v).unwrap() * &alpha.coords;
                    assert!(moved.amax() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn sampled_ranks_are_even() {
        let algs = [zoo::so3::<f64>(), zoo::sl2(), zoo::galilei_1d()];
        let mut rng = sampling::seeded(45);
        for alg in &algs {
            for _ in 0..20 {
                let alpha = sampling::covector_in_cube::<f64, _>(&mut rng, alg.dim());
                let rep = stabilizer(alg, &alpha, tols().rank).unwrap();
                assert_eq!(rep.orbit_dim % 2, 0);
                let c = sampling::two_cochain_in_cube::<f64, _>(&mut rng, alg.dim());
                if crate::cohomology::cocycle_residual(alg, &c).unwrap() < 1e-10 {
                    let arep = affine_stabilizer(alg, &c, &alpha, tols().rank).unwrap();
                    assert_eq!(arep.orbit_dim % 2, 0);
                }
            }
        }
    }

    #[test]
    fn affine_form_is_equivariant_along_the_action() {
        // The form value at rho(w) alpha on transported arguments equals
        // the value at alpha.
        let gal = zoo::galilei_1d::<f64>();
        let c = zoo::mass_cochain::<f64>();
        let s = SymplecticCocycle::from_ce_cocycle(gal.clone(), c.clone(), tols().verify).unwrap();
        let mut rng = sampling::seeded(46);
        for _ in 0..30 {
            let w = sampling::word::<f64, _>(&mut rng, 3, 3);
            let alpha = sampling::covector_in_cube::<f64, _>(&mut rng, 3);
            let x = sampling::unit_ball_vector::<f64, _>(&mut rng, 3);
            let y = sampling::unit_ball_vector::<f64, _>(&mut rng, 3);
            let moved_alpha = affine_action(&s, &w, &alpha).unwrap();
            let moved_x = gal.transport(&w, &x).unwrap();
            let moved_y = gal.transport(&w, &y).unwrap();
            let lhs = affine_symplectic_form(&gal, &c, &moved_alpha, &moved_x, &moved_y).unwrap();
            let rhs = affine_symplectic_form(&gal, &c, &alpha, &x, &y).unwrap();
            assert_relative_eq!(lhs, rhs, epsilon = 1e-6);
        }
    }

    #[test]
    fn correspondence_on_fixture_data() {
        let mut rng = sampling::seeded(47);
        // Zero cocycle: all clauses reduce to coadjoint identities.
        let so3 = zoo::so3::<f64>();
        let ext = CentralExtension::new(so3.clone(), TwoCochain::zero(3), &tols()).unwrap();
        let s =
            SymplecticCocycle::from_ce_cocycle(so3, TwoCochain::zero(3), tols().verify).unwrap();
        let alpha = sampling::covector_in_cube::<f64, _>(&mut rng, 3);
        let rep = correspondence_check(&ext, &s, &alpha, 50, &mut rng, &tols()).unwrap();
        assert!(rep.pass, "{:?}", rep);

        // Heisenberg data at alpha = 0: the orbit-form clause is exact.
        let ab = zoo::abelian::<f64>(2);
        let ext = CentralExtension::new(ab.clone(), zoo::heisenberg_cochain(), &tols()).unwrap();
        let s = SymplecticCocycle::from_ce_cocycle(ab, zoo::heisenberg_cochain(), tols().verify)
            .unwrap();
        let rep =
            correspondence_check(&ext, &s, &Covector::zeros(2), 50, &mut rng, &tols()).unwrap();
        assert!(rep.pass, "{:?}", rep);
        assert_eq!(rep.clauses[1].max_residual, 0.0);
    }
}
