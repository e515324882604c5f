//! The shipped algebras, cocycles, fixtures and representations used by the
//! test suites and the bundled data files.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{LieAlgebra, MatrixRep};
use crate::cohomology::TwoCochain;
use crate::fixtures::{AffineFunctional, AffineMap, PhaseSpaceFixture};
use crate::scalar::{real, Real};
use crate::tol::Tolerances;

/// The abelian algebra of dimension `n` (zero bracket).
pub fn abelian<T: Real>(n: usize) -> LieAlgebra<T> {
    let names = (1..=n).map(|i| format!("e{}", i)).collect();
    LieAlgebra::from_brackets(
        format!("abelian{}", n),
        names,
        &[],
        Tolerances::default().alg,
    )
    .expect("abelian algebra is valid")
}

/// so(3): `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
pub fn so3<T: Real>() -> LieAlgebra<T> {
    let one = T::one();
    LieAlgebra::from_brackets(
        "so3",
        vec!["e1".into(), "e2".into(), "e3".into()],
        &[
            (0, 1, vec![(2, one)]),
            (1, 2, vec![(0, one)]),
            (0, 2, vec![(1, -one)]),
        ],
        Tolerances::default().alg,
    )
    .expect("so(3) is valid")
}

/// sl(2, R) in the basis (H, E, F): `[H,E] = 2E`, `[H,F] = -2F`,
/// `[E,F] = H`.
pub fn sl2<T: Real>() -> LieAlgebra<T> {
    let one = T::one();
    let two = real::<T>(2.0);
    LieAlgebra::from_brackets(
        "sl2",
        vec!["H".into(), "E".into(), "F".into()],
        &[
            (0, 1, vec![(1, two)]),
            (0, 2, vec![(2, -two)]),
            (1, 2, vec![(0, one)]),
        ],
        Tolerances::default().alg,
    )
    .expect("sl(2,R) is valid")
}

/// The (1+1)-dimensional Galilei algebra in the basis (H, P, B) with
/// `[B, H] = P` and all other brackets zero.
pub fn galilei_1d<T: Real>() -> LieAlgebra<T> {
    let one = T::one();
    // Stored as [H, B] = -P to keep i < j.
    LieAlgebra::from_brackets(
        "galilei_1d",
        vec!["H".into(), "P".into(), "B".into()],
        &[(0, 2, vec![(1, -one)])],
        Tolerances::default().alg,
    )
    .expect("galilei_1d is valid")
}

/// aff(1) + R in the basis (X, Y, Z): `[X, Y] = Y`, Z central. The smallest
/// algebra in the set with two-cochains that are not cocycles.
pub fn aff_line_plus_r<T: Real>() -> LieAlgebra<T> {
    let one = T::one();
    LieAlgebra::from_brackets(
        "aff1_plus_r",
        vec!["X".into(), "Y".into(), "Z".into()],
        &[(0, 1, vec![(1, one)])],
        Tolerances::default().alg,
    )
    .expect("aff(1)+R is valid")
}

/// The symplectic cochain `c(e1, e2) = 1` on the abelian plane; its central
/// extension is the Heisenberg algebra.
pub fn heisenberg_cochain<T: Real>() -> TwoCochain<T> {
    TwoCochain::from_upper_entries(2, &[(0, 1, T::one())]).expect("canonical entries")
}

/// The mass cochain `c(B, P) = 1` on `galilei_1d`; its central extension is
/// the Bargmann algebra.
pub fn mass_cochain<T: Real>() -> TwoCochain<T> {
    // Basis order (H, P, B): c(P, B) = -c(B, P) = -1.
    TwoCochain::from_upper_entries(3, &[(1, 2, -T::one())]).expect("canonical entries")
}

/// The class representative `c(X, Z) = 1` on `aff_line_plus_r` (a cocycle
/// that is not a coboundary).
pub fn aff_line_cochain<T: Real>() -> TwoCochain<T> {
    TwoCochain::from_upper_entries(3, &[(0, 2, T::one())]).expect("canonical entries")
}

/// A two-cochain on `aff_line_plus_r` that fails the cocycle condition,
/// for rejection tests: `c(Y, Z) = 1` has `(dc)(X,Y,Z) = -1`.
pub fn aff_line_non_cocycle<T: Real>() -> TwoCochain<T> {
    TwoCochain::from_upper_entries(3, &[(1, 2, T::one())]).expect("canonical entries")
}

/// Phase-space fixture: the abelian plane translating `(q, p)` with
/// `omega = dq ^ dp`, comoment `phi_{e1} = p`, `phi_{e2} = -q`. Its moment
/// cocycle is the Heisenberg cochain.
pub fn translations_fixture<T: Real>() -> PhaseSpaceFixture<T> {
    let one = T::one();
    let omega = DMatrix::from_row_slice(2, 2, &[T::zero(), one, -one, T::zero()]);
    let action = vec![
        AffineMap {
            linear: DMatrix::zeros(2, 2),
            translation: DVector::from_vec(vec![one, T::zero()]),
        },
        AffineMap {
            linear: DMatrix::zeros(2, 2),
            translation: DVector::from_vec(vec![T::zero(), one]),
        },
    ];
    let comoment = vec![
        AffineFunctional {
            linear: DVector::from_vec(vec![T::zero(), one]),
            constant: T::zero(),
        },
        AffineFunctional {
            linear: DVector::from_vec(vec![-one, T::zero()]),
            constant: T::zero(),
        },
    ];
    PhaseSpaceFixture::new(
        "translations",
        abelian(2),
        omega,
        action,
        comoment,
        &Tolerances::default(),
    )
    .expect("translations fixture is valid")
}

/// Control fixture with vanishing moment cocycle: two commuting
/// q-translations on `(R^4, dq1^dp1 + dq2^dp2)`. The moment map is
/// equivariant on the nose.
pub fn trivial_pair_fixture<T: Real>() -> PhaseSpaceFixture<T> {
    let one = T::one();
    let z = T::zero();
    // Coordinates (q1, q2, p1, p2); omega(u, v) = u_q . v_p - u_p . v_q.
    let mut omega = DMatrix::zeros(4, 4);
    omega[(0, 2)] = one;
    omega[(2, 0)] = -one;
    omega[(1, 3)] = one;
    omega[(3, 1)] = -one;
    let action = vec![
        AffineMap {
            linear: DMatrix::zeros(4, 4),
            translation: DVector::from_vec(vec![one, z, z, z]),
        },
        AffineMap {
            linear: DMatrix::zeros(4, 4),
            translation: DVector::from_vec(vec![z, one, z, z]),
        },
    ];
    let comoment = vec![
        AffineFunctional {
            linear: DVector::from_vec(vec![z, z, one, z]),
            constant: z,
        },
        AffineFunctional {
            linear: DVector::from_vec(vec![z, z, z, one]),
            constant: z,
        },
    ];
    PhaseSpaceFixture::new(
        "trivial_pair",
        abelian(2),
        omega,
        action,
        comoment,
        &Tolerances::default(),
    )
    .expect("trivial pair fixture is valid")
}

/// The abelian plane represented as the torus `T^1 x T^1`: each generator
/// exponentiates to a rotation block, so `[2 pi e_i]` are identity words of
/// the represented group.
pub fn torus_rep<T: Real>() -> MatrixRep<T> {
    let one = T::one();
    let mut g1 = DMatrix::zeros(4, 4);
    g1[(0, 1)] = -one;
    g1[(1, 0)] = one;
    let mut g2 = DMatrix::zeros(4, 4);
    g2[(2, 3)] = -one;
    g2[(3, 2)] = one;
    MatrixRep::new(&abelian(2), vec![g1, g2], true, real(crate::tol::TOL_ALG))
        .expect("torus representation is valid")
}
