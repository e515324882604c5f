//! Flat phase spaces with affine group actions and affine comoment maps.
//!
//! These fixtures make the whole moment-map pipeline closed-form: the
//! moment map, its equivariance defect, the induced cochain, the extended
//! comoment and the extended moment equivariance are all polynomial
//! identities of degree at most one, verified pointwise.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::algebra::{Covector, GroupWord, LieAlgebra, Vector};
use crate::cocycle::SymplecticCocycle;
use crate::cohomology::TwoCochain;
use crate::error::{Error, Result};
use crate::extension::CentralExtension;
use crate::linalg::{antisymmetry_residual, expm_affine, rank_nullspace, symmetry_residual};
use crate::report::{MaxTracker, ProbeReport, VerificationReport};
use crate::sampling;
use crate::scalar::{real, to_f64, Real};
use crate::tol::Tolerances;

/// An affine vector field `p -> M p + t` (one fundamental field per basis
/// element).
#[derive(Debug, Clone)]
pub struct AffineMap<T: Real> {
    pub linear: DMatrix<T>,
    pub translation: DVector<T>,
}

/// An affine function `p -> <a, p> + b` (one comoment component per basis
/// element).
#[derive(Debug, Clone)]
pub struct AffineFunctional<T: Real> {
    pub linear: DVector<T>,
    pub constant: T,
}

/// A flat symplectic vector space with an affine action of the algebra and
/// an explicit affine comoment map.
///
/// Validation enforces, per basis element: the symplectic-field condition
/// (`omega M` symmetric), the anti-homomorphism property of the fundamental
/// fields, and the comoment condition `i_{xi} omega = d phi` coefficientwise
/// (which, for invertible constant `omega` and affine comoments, forces the
/// linear parts to vanish against the p-dependent terms).
#[derive(Debug, Clone)]
pub struct PhaseSpaceFixture<T: Real> {
    name: String,
    algebra: LieAlgebra<T>,
    omega: DMatrix<T>,
    action: Vec<AffineMap<T>>,
    comoment: Vec<AffineFunctional<T>>,
}

impl<T: Real> PhaseSpaceFixture<T> {
    pub fn new(
        name: impl Into<String>,
        algebra: LieAlgebra<T>,
        omega: DMatrix<T>,
        action: Vec<AffineMap<T>>,
        comoment: Vec<AffineFunctional<T>>,
        tols: &Tolerances<T>,
    ) -> Result<Self> {
        let name = name.into();
        let m2 = omega.nrows();
        if omega.ncols() != m2 || m2 == 0 || m2 % 2 != 0 {
            return Err(Error::InvalidFixture {
                reason: format!("phase dimension {} must be positive and even", m2),
            });
        }
        let r = antisymmetry_residual(&omega);
        if r > tols.alg {
            return Err(Error::InvalidFixture {
                reason: format!("omega antisymmetry residual {:.3e}", to_f64(r)),
            });
        }
        let nullity = rank_nullspace(&omega, tols.rank);
        if nullity.rank != m2 {
            return Err(Error::InvalidFixture {
                reason: format!("omega is degenerate: rank {} of {}", nullity.rank, m2),
            });
        }
        let n = algebra.dim();
        if action.len() != n || comoment.len() != n {
            return Err(Error::InvalidFixture {
                reason: format!(
                    "need one action map and one comoment per basis element: got {} and {} for dim {}",
                    action.len(),
                    comoment.len(),
                    n
                ),
            });
        }
        for (i, a) in action.iter().enumerate() {
            if a.linear.nrows() != m2 || a.linear.ncols() != m2 || a.translation.len() != m2 {
                return Err(Error::InvalidFixture {
                    reason: format!("action map {} has wrong shape", i),
                });
            }
            let s = symmetry_residual(&(&omega * &a.linear));
            if s > tols.alg {
                return Err(Error::InvalidFixture {
                    reason: format!(
                        "field {} is not symplectic: symmetry residual {:.3e}",
                        i,
                        to_f64(s)
                    ),
                });
            }
        }
        for (i, c) in comoment.iter().enumerate() {
            if c.linear.len() != m2 {
                return Err(Error::InvalidFixture {
                    reason: format!("comoment {} has wrong length", i),
                });
            }
            // i_{xi_i} omega = d phi_i: the covector is -omega (M_i p + t_i),
            // so the p-linear part must vanish and -omega t_i must equal a_i.
            let linear_part = (&omega * &action[i].linear).amax();
            if linear_part > tols.alg {
                return Err(Error::InvalidFixture {
                    reason: format!(
                        "comoment condition fails for basis element {}: p-dependent part {:.3e} (affine comoments require translation actions)",
                        i,
                        to_f64(linear_part)
                    ),
                });
            }
            let constant_part = (-(&omega * &action[i].translation) - &c.linear).amax();
            if constant_part > tols.alg {
                return Err(Error::InvalidFixture {
                    reason: format!(
                        "comoment condition fails for basis element {}: residual {:.3e}",
                        i,
                        to_f64(constant_part)
                    ),
                });
            }
        }
        // Anti-homomorphism: [xi_i, xi_j] = -xi_{[e_i, e_j]} on basis pairs.
        for i in 0..n {
            for j in (i + 1)..n {
                let (mi, ti) = (&action[i].linear, &action[i].translation);
                let (mj, tj) = (&action[j].linear, &action[j].translation);
                let mut lin = mj * mi - mi * mj;
                let mut tr = mj * ti - mi * tj;
                for k in 0..n {
                    let coeff = algebra.structure()[k][(i, j)];
                    lin += &action[k].linear * coeff;
                    tr += &action[k].translation * coeff;
                }
                let r = lin.amax().max(tr.amax());
                if r > tols.alg {
                    return Err(Error::InvalidFixture {
                        reason: format!(
                            "fundamental fields are not an anti-homomorphism on pair ({}, {}): residual {:.3e}",
                            i,
                            j,
                            to_f64(r)
                        ),
                    });
                }
            }
        }
        Ok(PhaseSpaceFixture {
            name,
            algebra,
            omega,
            action,
            comoment,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &LieAlgebra<T> {
        &self.algebra
    }

    pub fn omega(&self) -> &DMatrix<T> {
        &self.omega
    }

    pub fn action(&self) -> &[AffineMap<T>] {
        &self.action
    }

    pub fn comoment(&self) -> &[AffineFunctional<T>] {
        &self.comoment
    }

    pub fn phase_dim(&self) -> usize {
        self.omega.nrows()
    }

    fn check_point(&self, p: &DVector<T>) -> Result<()> {
        if p.len() != self.phase_dim() {
            return Err(Error::DimensionMismatch {
                context: "phase-space point",
                expected: self.phase_dim(),
                got: p.len(),
            });
        }
        Ok(())
    }

    fn check_vector(&self, x: &Vector<T>) -> Result<()> {
        if x.dim() != self.algebra.dim() {
            return Err(Error::DimensionMismatch {
                context: "fixture algebra element",
                expected: self.algebra.dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// The fundamental field of `x`, as an affine map.
    pub fn field(&self, x: &Vector<T>) -> Result<AffineMap<T>> {
        self.check_vector(x)?;
        let m2 = self.phase_dim();
        let mut linear = DMatrix::zeros(m2, m2);
        let mut translation = DVector::zeros(m2);
        for i in 0..self.algebra.dim() {
            linear += &self.action[i].linear * x.coords[i];
            translation += &self.action[i].translation * x.coords[i];
        }
        Ok(AffineMap {
            linear,
            translation,
        })
    }

    /// The comoment value `phi_x(p)`.
    pub fn comoment_value(&self, x: &Vector<T>, p: &DVector<T>) -> Result<T> {
        self.check_vector(x)?;
        self.check_point(p)?;
        let mut v = T::zero();
        for i in 0..self.algebra.dim() {
            v += (self.comoment[i].linear.dot(p) + self.comoment[i].constant) * x.coords[i];
        }
        Ok(v)
    }

    /// The moment map: `<mu(p), e_i> = phi_{e_i}(p)`.
    pub fn moment(&self, p: &DVector<T>) -> Result<Covector<T>> {
        self.check_point(p)?;
        Ok(Covector::from_dvector(DVector::from_fn(
            self.algebra.dim(),
            |i, _| self.comoment[i].linear.dot(p) + self.comoment[i].constant,
        )))
    }

    /// The Poisson bracket of comoments at a point:
    /// `{phi_x, phi_y}(p) = omega(xi_x(p), xi_y(p))`.
    pub fn poisson(&self, x: &Vector<T>, y: &Vector<T>, p: &DVector<T>) -> Result<T> {
        let fx = self.field(x)?;
        let fy = self.field(y)?;
        self.check_point(p)?;
        let vx = &fx.linear * p + &fx.translation;
        let vy = &fy.linear * p + &fy.translation;
        Ok((vx.transpose() * &self.omega * vy)[(0, 0)])
    }

    /// Applies one letter `exp(xi_x)` to a point: the exact affine flow
    /// `p -> exp(M) p + phi1(M) t`.
    pub fn apply_letter(&self, x: &Vector<T>, p: &DVector<T>) -> Result<DVector<T>> {
        let f = self.field(x)?;
        self.check_point(p)?;
        let (flow, shift) = expm_affine(&f.linear, &f.translation);
        Ok(flow * p + shift)
    }

    /// Applies a word to a point, rightmost letter first.
    pub fn apply_word(&self, w: &GroupWord<T>, p: &DVector<T>) -> Result<DVector<T>> {
        self.check_point(p)?;
        let mut q = p.clone();
        for letter in w.letters.iter().rev() {
            q = self.apply_letter(letter, &q)?;
        }
        Ok(q)
    }

    /// The moment-map equivariance defect
    /// `Ad*_w mu(p) - mu(w . p)`, evaluated at the first probe, together
    /// with its maximal deviation across all probes (the defect must not
    /// depend on the point).
    pub fn theta(
        &self,
        w: &GroupWord<T>,
        probes: &[DVector<T>],
        tol_verify: T,
    ) -> Result<(Covector<T>, ProbeReport)> {
        if probes.is_empty() {
            return Err(Error::InvalidFixture {
                reason: "theta needs at least one probe point".into(),
            });
        }
        let coad = self.algebra.word_coadjoint(w)?;
        let mut first: Option<Covector<T>> = None;
        let mut dev = MaxTracker::new();
        for p in probes {
            let moved = self.apply_word(w, p)?;
            let value = Covector::from_dvector(
                &coad * &self.moment(p)?.coords - self.moment(&moved)?.coords,
            );
            match &first {
                None => first = Some(value),
                Some(f) => dev.update((value.coords - &f.coords).amax()),
            }
        }
        let report = ProbeReport {
            max_deviation: to_f64(dev.value()),
            probes: probes.len(),
            pass: dev.value() <= tol_verify,
            tolerance: to_f64(tol_verify),
            fd_residual: None,
        };
        Ok((first.expect("at least one probe"), report))
    }

    /// The moment cochain value
    /// `{phi_x, phi_y}(p0) - phi_{[x,y]}(p0)`, with its deviation across
    /// probes and a cross-check against the derivative of the equivariance
    /// defect along `exp(t x)` (central differences at `fd_step`).
    pub fn cocycle_value(
        &self,
        x: &Vector<T>,
        y: &Vector<T>,
        probes: &[DVector<T>],
        tols: &Tolerances<T>,
    ) -> Result<(T, ProbeReport)> {
        if probes.is_empty() {
            return Err(Error::InvalidFixture {
                reason: "cocycle_value needs at least one probe point".into(),
            });
        }
        let bracket = self.algebra.bracket(x, y)?;
        let mut first: Option<T> = None;
        let mut dev = MaxTracker::new();
        for p in probes {
            let v = self.poisson(x, y, p)? - self.comoment_value(&bracket, p)?;
            match first {
                None => first = Some(v),
                Some(f) => dev.update((v - f).abs()),
            }
        }
        let value = first.expect("at least one probe");

        // Independent route: differentiate <theta(exp t x), y> at t = 0.
        let t: T = real(crate::tol::FD_STEP);
        let probe = &probes[0..1];
        let theta_plus = self
            .theta(&GroupWord::single(x.scaled(t)), probe, tols.verify)?
            .0;
        let theta_minus = self
            .theta(&GroupWord::single(x.scaled(-t)), probe, tols.verify)?
            .0;
        let fd = (theta_plus.pair(y) - theta_minus.pair(y)) / (t + t);
        let fd_residual = (fd - value).abs();

        let report = ProbeReport {
            max_deviation: to_f64(dev.value()),
            probes: probes.len(),
            pass: dev.value() <= tols.verify && fd_residual <= tols.fd,
            tolerance: to_f64(tols.verify),
            fd_residual: Some(to_f64(fd_residual)),
        };
        Ok((value, report))
    }

    /// Assembles the full moment cochain `C_{ij} = c(e_i, e_j)`.
    pub fn cocycle_matrix(
        &self,
        probes: &[DVector<T>],
        tols: &Tolerances<T>,
    ) -> Result<TwoCochain<T>> {
        let n = self.algebra.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let (v, _) = self.cocycle_value(
                    &self.algebra.basis_vector(i),
                    &self.algebra.basis_vector(j),
                    probes,
                    tols,
                )?;
                entries.push((i, j, v));
            }
        }
        TwoCochain::from_upper_entries(n, &entries)
    }

    /// The same fixture with the comoment shifted by a constant covector
    /// (`phi_i += mu0_i`); the moment map shifts accordingly, the cochain
    /// does not.
    pub fn shifted_comoment(&self, mu0: &Covector<T>) -> Result<Self> {
        if mu0.dim() != self.algebra.dim() {
            return Err(Error::DimensionMismatch {
                context: "shifted_comoment",
                expected: self.algebra.dim(),
                got: mu0.dim(),
            });
        }
        let mut fx = self.clone();
        for (i, c) in fx.comoment.iter_mut().enumerate() {
            c.constant += mu0.coords[i];
        }
        fx.name = format!("{}_shifted", self.name);
        Ok(fx)
    }
}

fn check_extension_matches_fixture<T: Real>(
    fx: &PhaseSpaceFixture<T>,
    ext: &CentralExtension<T>,
    probes: &[DVector<T>],
    tols: &Tolerances<T>,
) -> Result<()> {
    let from_fixture = fx.cocycle_matrix(probes, tols)?;
    let residual = (from_fixture.matrix() - ext.cocycle().matrix()).amax();
    if residual > tols.verify {
        return Err(Error::CocycleMismatch {
            residual: to_f64(residual),
            tolerance: to_f64(tols.verify),
        });
    }
    Ok(())
}

/// Checks that the extended comoment `phi_hat_{(x,u)} = phi_x + u` is a
/// bracket homomorphism into the Poisson algebra, and that the extended
/// moment pairs as `<mu_hat(p), (x,u)> = <mu(p), x> + u`.
pub fn extended_comoment_check<T: Real, R: Rng>(
    fx: &PhaseSpaceFixture<T>,
    ext: &CentralExtension<T>,
    samples: usize,
    rng: &mut R,
    tols: &Tolerances<T>,
) -> Result<VerificationReport> {
    let m2 = fx.phase_dim();
    let probes: Vec<DVector<T>> = (0..4).map(|_| sampling::point_in_cube(rng, m2)).collect();
    check_extension_matches_fixture(fx, ext, &probes, tols)?;
    let n = fx.algebra().dim();
    let mut worst = MaxTracker::new();
    for _ in 0..samples {
        let x = sampling::unit_ball_vector::<T, _>(rng, n);
        let y = sampling::unit_ball_vector::<T, _>(rng, n);
        let u = real::<T>(rng.random_range(-1.0..=1.0));
        let v = real::<T>(rng.random_range(-1.0..=1.0));
        let p = sampling::point_in_cube(rng, m2);

        // Extended bracket through the extension algebra on lifts.
        let hat_bracket = ext
            .extended()
            .bracket(&ext.lift(&x, u)?, &ext.lift(&y, v)?)?;
        let base_part = Vector::from_dvector(hat_bracket.coords.rows(0, n).into_owned());
        let central_part = hat_bracket.coords[n];
        // phi_hat of the bracket vs the Poisson bracket of the phi_hats
        // (constants drop out of the Poisson bracket).
        let lhs = fx.comoment_value(&base_part, &p)? + central_part;
        let rhs = fx.poisson(&x, &y, &p)?;
        worst.update((lhs - rhs).abs());

        // Extended moment pairing.
        let mu_hat = ext.lift_dual(&fx.moment(&p)?, T::one())?;
        let pairing = mu_hat.pair(&ext.lift(&x, u)?);
        let direct = fx.comoment_value(&x, &p)? + u;
        worst.update((pairing - direct).abs());
    }
    Ok(VerificationReport::new(worst.value(), tols.verify, samples))
}

/// Checks equivariance of the extended moment map:
/// `Adhat*_w (mu(p), 1) = (mu(w . p), 1)`, with the hyperplane coordinate
/// preserved exactly.
pub fn moment_equivariance_check<T: Real, R: Rng>(
    fx: &PhaseSpaceFixture<T>,
    ext: &CentralExtension<T>,
    s: &SymplecticCocycle<T>,
    samples: usize,
    rng: &mut R,
    tols: &Tolerances<T>,
) -> Result<VerificationReport> {
    let m2 = fx.phase_dim();
    let probes: Vec<DVector<T>> = (0..4).map(|_| sampling::point_in_cube(rng, m2)).collect();
    check_extension_matches_fixture(fx, ext, &probes, tols)?;
    let n = fx.algebra().dim();
    let mut worst = MaxTracker::new();
    for _ in 0..samples {
        let w = sampling::word::<T, _>(rng, n, 3);
        let p = sampling::point_in_cube(rng, m2);
        let (moved, zeta) =
            ext.factored_coadjoint(s, &w, &fx.moment(&p)?, T::one(), tols.verify)?;
        if zeta != T::one() {
            return Err(Error::InvalidFixture {
                reason: "hyperplane coordinate was not preserved exactly".into(),
            });
        }
        let direct = fx.moment(&fx.apply_word(&w, &p)?)?;
        worst.update((moved.coords - direct.coords).amax());
    }
    Ok(VerificationReport::new(worst.value(), tols.verify, samples))
}

/// Pointwise symplectomorphism check: the fixture's symplectic form on
/// fundamental fields must equal `<mu(o), [x, y]> + c(x, y)`.
pub fn symplectomorphism_check<T: Real, R: Rng>(
    fx: &PhaseSpaceFixture<T>,
    ext: &CentralExtension<T>,
    samples: usize,
    rng: &mut R,
    tols: &Tolerances<T>,
) -> Result<VerificationReport> {
    let m2 = fx.phase_dim();
    let probes: Vec<DVector<T>> = (0..4).map(|_| sampling::point_in_cube(rng, m2)).collect();
    check_extension_matches_fixture(fx, ext, &probes, tols)?;
    let n = fx.algebra().dim();
    let mut worst = MaxTracker::new();
    for _ in 0..samples {
        let o = sampling::point_in_cube(rng, m2);
        let x = sampling::unit_ball_vector::<T, _>(rng, n);
        let y = sampling::unit_ball_vector::<T, _>(rng, n);
        let lhs = fx.poisson(&x, &y, &o)?;
        let mu = fx.moment(&o)?;
        let rhs = mu.pair(&fx.algebra().bracket(&x, &y)?) + ext.cocycle().eval(&x, &y)?;
        worst.update((lhs - rhs).abs());
    }
    Ok(VerificationReport::new(worst.value(), tols.verify, samples))
}
