//! Chevalley-Eilenberg cochains in degrees 2 and 3 with trivial
//! coefficients, the differentials out of degrees 1 and 2, second-cohomology
//! reports, and coboundary solving.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{Covector, LieAlgebra, Vector};
use crate::error::{Error, Result};
use crate::linalg::{antisymmetry_residual, lstsq, rank_nullspace};
use crate::scalar::{to_f64, Real};

/// An alternating bilinear form `c` on the algebra, stored as the
/// antisymmetric matrix `C_{ij} = c(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoCochain<T: Real> {
    matrix: DMatrix<T>,
}

impl<T: Real> TwoCochain<T> {
    pub fn zero(dim: usize) -> Self {
        TwoCochain {
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    /// Canonicalizes a matrix into a cochain; the antisymmetry defect must
    /// not exceed `tol`. Entries with `i < j` are the source of truth.
    pub fn from_matrix(m: DMatrix<T>, tol: T) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                context: "TwoCochain::from_matrix",
                expected: m.nrows(),
                got: m.ncols(),
            });
        }
        let r = antisymmetry_residual(&m);
        if r > tol {
            return Err(Error::InvalidDocument {
                field: "cochain".into(),
                reason: format!(
                    "antisymmetry residual {:.3e} exceeds {:.3e}",
                    to_f64(r),
                    to_f64(tol)
                ),
            });
        }
        let n = m.nrows();
        let matrix = DMatrix::from_fn(n, n, |i, j| {
            if i < j {
                m[(i, j)]
            } else if i > j {
                -m[(j, i)]
            } else {
                T::zero()
            }
        });
        Ok(TwoCochain { matrix })
    }

    /// Builds a cochain from entries `(i, j, c(e_i, e_j))` with `i < j`;
    /// the antisymmetric completion is implied.
    pub fn from_upper_entries(dim: usize, entries: &[(usize, usize, T)]) -> Result<Self> {
        let mut m = DMatrix::<T>::zeros(dim, dim);
        for &(i, j, v) in entries {
            if i >= j {
                return Err(Error::InvalidDocument {
                    field: "entries".into(),
                    reason: format!("entry ({}, {}) must satisfy i < j", i, j),
                });
            }
            if j >= dim {
                return Err(Error::InvalidDocument {
                    field: "entries".into(),
                    reason: format!("entry ({}, {}) out of range for dim {}", i, j, dim),
                });
            }
            m[(i, j)] += v;
            m[(j, i)] -= v;
        }
        Ok(TwoCochain { matrix: m })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    /// Evaluates the form: `c(x, y) = x^T C y`.
    pub fn eval(&self, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
        if x.dim() != self.dim() || y.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "TwoCochain::eval",
                expected: self.dim(),
                got: if x.dim() != self.dim() {
                    x.dim()
                } else {
                    y.dim()
                },
            });
        }
        Ok((x.coords.transpose() * &self.matrix * &y.coords)[(0, 0)])
    }

    pub fn norm_inf(&self) -> T {
        self.matrix.amax()
    }

    pub fn scaled(&self, s: T) -> Self {
        TwoCochain {
            matrix: &self.matrix * s,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        TwoCochain {
            matrix: &self.matrix + &other.matrix,
        }
    }

    /// Coordinates over the pair basis `(i < j)` in lexicographic order.
    pub fn upper_coords(&self) -> DVector<T> {
        let n = self.dim();
        let mut v = DVector::zeros(n * (n - 1) / 2);
        let mut idx = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                v[idx] = self.matrix[(i, j)];
                idx += 1;
            }
        }
        v
    }

    /// Inverse of [`Self::upper_coords`].
    pub fn from_upper_coords(dim: usize, coords: &DVector<T>) -> Self {
        let mut m = DMatrix::<T>::zeros(dim, dim);
        let mut idx = 0;
        for i in 0..dim {
            for j in (i + 1)..dim {
                m[(i, j)] = coords[idx];
                m[(j, i)] = -coords[idx];
                idx += 1;
            }
        }
        TwoCochain { matrix: m }
    }
}

/// A fully antisymmetric trilinear form, stored on canonical triples
/// `i < j < k` in lexicographic order.
#[derive(Debug, Clone)]
pub struct ThreeCochain<T: Real> {
    dim: usize,
    triples: Vec<T>,
}

impl<T: Real> ThreeCochain<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm_inf(&self) -> T {
        self.triples.iter().fold(
            T::zero(),
            |acc, t| if t.abs() > acc { t.abs() } else { acc },
        )
    }

    /// Value on basis triple `(i, j, k)`, any order, with the sign of the
    /// permutation; zero when indices repeat.
    pub fn eval_basis(&self, i: usize, j: usize, k: usize) -> T {
        if i == j || j == k || i == k {
            return T::zero();
        }
        let mut idx = [i, j, k];
        let mut sign = T::one();
        // Three-element bubble sort, tracking parity.
        for a in 0..2 {
            for b in 0..(2 - a) {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        sign * self.triples[triple_index(self.dim, idx[0], idx[1], idx[2])]
    }
}

/// Number of pairs `i < j`.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Lexicographic position of the pair `(i, j)` with `i < j`.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn triple_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k && k < n);
    // Position among triples in lexicographic order.
    let mut idx = 0;
    for a in 0..i {
        idx += pair_count(n - 1 - a);
    }
    idx + pair_index(n - i - 1, j - i - 1, k - i - 1)
}

/// The differential of a one-cochain with trivial coefficients:
/// `(d a)(x, y) = -<a, [x, y]>`.
pub fn ce_d1<T: Real>(alg: &LieAlgebra<T>, alpha: &Covector<T>) -> Result<TwoCochain<T>> {
    let n = alg.dim();
    if alpha.dim() != n {
        return Err(Error::DimensionMismatch {
            context: "ce_d1",
            expected: n,
            got: alpha.dim(),
        });
    }
    let mut m = DMatrix::<T>::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let b = alg.bracket(&alg.basis_vector(i), &alg.basis_vector(j))?;
            let v = -alpha.pair(&b);
            m[(i, j)] = v;
            m[(j, i)] = -v;
        }
    }
    Ok(TwoCochain { matrix: m })
}

/// The differential of a two-cochain with trivial coefficients:
/// `(d c)(x, y, z) = -c([x,y], z) + c([x,z], y) - c([y,z], x)`.
pub fn ce_d2<T: Real>(alg: &LieAlgebra<T>, c: &TwoCochain<T>) -> Result<ThreeCochain<T>> {
    let n = alg.dim();
    if c.dim() != n {
        return Err(Error::DimensionMismatch {
            context: "ce_d2",
            expected: n,
            got: c.dim(),
        });
    }
    let mut triples = Vec::with_capacity(if n >= 3 { n * (n - 1) * (n - 2) / 6 } else { 0 });
    for i in 0..n {
        let ei = alg.basis_vector(i);
        for j in (i + 1)..n {
            let ej = alg.basis_vector(j);
            for k in (j + 1)..n {
                let ek = alg.basis_vector(k);
                let t = -c.eval(&alg.bracket(&ei, &ej)?, &ek)?
                    + c.eval(&alg.bracket(&ei, &ek)?, &ej)?
                    - c.eval(&alg.bracket(&ej, &ek)?, &ei)?;
                triples.push(t);
            }
        }
    }
    Ok(ThreeCochain { dim: n, triples })
}

/// Residual of the cocycle condition, `|d2 c|_inf`.
pub fn cocycle_residual<T: Real>(alg: &LieAlgebra<T>, c: &TwoCochain<T>) -> Result<T> {
    Ok(ce_d2(alg, c)?.norm_inf())
}

/// Matrix of `ce_d1` over the pair basis: rows indexed by pairs `(i < j)`,
/// columns by the dual basis.
pub fn d1_matrix<T: Real>(alg: &LieAlgebra<T>) -> DMatrix<T> {
    let n = alg.dim();
    let p = pair_count(n);
    let mut m = DMatrix::<T>::zeros(p, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let row = pair_index(n, i, j);
            for k in 0..n {
                // -<eps_k, [e_i, e_j]> = -c^k_{ij}
                m[(row, k)] = -alg.structure()[k][(i, j)];
            }
        }
    }
    m
}

/// Matrix of `ce_d2` over the pair and triple bases.
pub fn d2_matrix<T: Real>(alg: &LieAlgebra<T>) -> DMatrix<T> {
    let n = alg.dim();
    let p = pair_count(n);
    let t = if n >= 3 { n * (n - 1) * (n - 2) / 6 } else { 0 };
    let mut m = DMatrix::<T>::zeros(t, p);
    if n < 3 {
        return m;
    }
    // c(e_l, e_m) contributes +C_{lm} when l < m and -C_{ml} when l > m.
    let add_term = |row: usize, coeff: T, l: usize, mm: usize, m_out: &mut DMatrix<T>| {
        if l == mm {
            return;
        }
        if l < mm {
            m_out[(row, pair_index(n, l, mm))] += coeff;
        } else {
            m_out[(row, pair_index(n, mm, l))] -= coeff;
        }
    };
    let mut row = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for l in 0..n {
                    // -c([e_i,e_j], e_k)
                    add_term(row, -alg.structure()[l][(i, j)], l, k, &mut m);
                    // +c([e_i,e_k], e_j)
                    add_term(row, alg.structure()[l][(i, k)], l, j, &mut m);
                    // -c([e_j,e_k], e_i)
                    add_term(row, -alg.structure()[l][(j, k)], l, i, &mut m);
                }
                row += 1;
            }
        }
    }
    m
}

/// Dimensions and representatives of the degree-two cohomology.
#[derive(Debug, Clone)]
pub struct H2Report<T: Real> {
    pub dim_z2: usize,
    pub dim_b2: usize,
    pub dim_h2: usize,
    /// Basis of the cocycle space; the first `dim_h2` members project to a
    /// basis of the cohomology.
    pub cocycle_basis: Vec<TwoCochain<T>>,
    pub coboundary_basis: Vec<TwoCochain<T>>,
}

/// Computes `dim Z^2`, `dim B^2`, `dim H^2` and representative bases via
/// numerical rank with relative threshold `tol_rank`.
pub fn h2_report<T: Real>(alg: &LieAlgebra<T>, tol_rank: T) -> H2Report<T> {
    let n = alg.dim();
    let p = pair_count(n);

    let d2 = d2_matrix(alg);
    let kernel = rank_nullspace(&d2, tol_rank);
    let dim_z2 = p - kernel.rank;

    let d1 = d1_matrix(alg);
    // Orthonormal basis of the coboundary space = left singular vectors of
    // d1 with significant singular values.
    let (dim_b2, b_basis) = if n == 0 || p == 0 {
        (0, DMatrix::<T>::zeros(p, 0))
    } else {
        let svd = d1.clone().svd(true, false);
        let smax = svd
            .singular_values
            .iter()
            .copied()
            .fold(T::zero(), |a, s| if s > a { s } else { a });
        let thresh = tol_rank * smax;
        let u = svd.u.expect("SVD with compute_u");
        let cols: Vec<usize> = svd
            .singular_values
            .iter()
            .enumerate()
            .filter(|&(_, &s)| smax > T::zero() && s > thresh)
            .map(|(k, _)| k)
            .collect();
        let mut b = DMatrix::<T>::zeros(p, cols.len());
        for (out, &k) in cols.iter().enumerate() {
            b.set_column(out, &u.column(k));
        }
        (cols.len(), b)
    };

    let dim_h2 = dim_z2 - dim_b2;

    // Kernel basis as a matrix.
    let mut z = DMatrix::<T>::zeros(p, kernel.nullspace.len());
    for (c, v) in kernel.nullspace.iter().enumerate() {
        z.set_column(c, v);
    }

    // Project the kernel basis off the coboundary space; the surviving
    // directions represent the cohomology.
    let projected = if dim_b2 > 0 {
        &z - &b_basis * (b_basis.transpose() * &z)
    } else {
        z.clone()
    };
    let mut reps: Vec<TwoCochain<T>> = Vec::new();
    if projected.ncols() > 0 && dim_h2 > 0 {
        let svd = projected.svd(true, false);
        let smax = svd
            .singular_values
            .iter()
            .copied()
            .fold(T::zero(), |a, s| if s > a { s } else { a });
        let thresh = tol_rank * smax;
        let u = svd.u.expect("SVD with compute_u");
        for (k, &s) in svd.singular_values.iter().enumerate() {
            if smax > T::zero() && s > thresh {
                reps.push(TwoCochain::from_upper_coords(n, &u.column(k).into_owned()));
            }
        }
    }

    let mut cocycle_basis = reps;
    let mut coboundary_basis = Vec::new();
    for c in 0..dim_b2 {
        let cochain = TwoCochain::from_upper_coords(n, &b_basis.column(c).into_owned());
        cocycle_basis.push(cochain.clone());
        coboundary_basis.push(cochain);
    }

    H2Report {
        dim_z2,
        dim_b2,
        dim_h2,
        cocycle_basis,
        coboundary_basis,
    }
}

/// Attempts to solve `ce_d1(alpha) = c` in the least-squares sense.
///
/// Returns a solution when the residual stays below `tol_verify * |c|`;
/// absence means the class of `c` is numerically nonzero.
pub fn solve_coboundary<T: Real>(
    alg: &LieAlgebra<T>,
    c: &TwoCochain<T>,
    tol_verify: T,
    tol_rank: T,
) -> Result<Option<Covector<T>>> {
    let n = alg.dim();
    if c.dim() != n {
        return Err(Error::DimensionMismatch {
            context: "solve_coboundary",
            expected: n,
            got: c.dim(),
        });
    }
    let d1 = d1_matrix(alg);
    let target = c.upper_coords();
    let (x, residual) = lstsq(&d1, &target, tol_rank);
    let scale = target.norm();
    if residual <= tol_verify * scale || residual == T::zero() {
        Ok(Some(Covector::from_dvector(x)))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use crate::zoo;
    use approx::assert_relative_eq;

    #[test]
    fn d1_on_abelian_is_zero() {
        let ab = zoo::abelian::<f64>(3);
        let mut rng = sampling::seeded(10);
        let a = sampling::covector_in_cube::<f64, _>(&mut rng, 3);
        let c = ce_d1(&ab, &a).unwrap();
        assert_eq!(c.norm_inf(), 0.0);
    }

    #[test]
    fn d1_on_so3_eps3_frozen_from_brute_force() {
        // (d eps3)(e_i, e_j) = -<eps3, [e_i, e_j]>: only the (1,2) slot of
        // so(3) produces e3, so C_12 = -1 and the rest vanish.
        let so3 = zoo::so3::<f64>();
        let eps3 = Covector::<f64>::basis(3, 2);
        let c = ce_d1(&so3, &eps3).unwrap();
        assert_eq!(c.matrix()[(0, 1)], -1.0);
        assert_eq!(c.matrix()[(0, 2)], 0.0);
        assert_eq!(c.matrix()[(1, 2)], 0.0);
        // Brute-force oracle over all pairs.
        for i in 0..3 {
            for j in 0..3 {
                let b = so3
                    .bracket(&so3.basis_vector(i), &so3.basis_vector(j))
                    .unwrap();
                assert_relative_eq!(c.matrix()[(i, j)], -eps3.pair(&b), epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn d1_is_linear() {
        let so3 = zoo::so3::<f64>();
        let mut rng = sampling::seeded(11);
        let a = sampling::covector_in_cube::<f64, _>(&mut rng, 3);
        let b = sampling::covector_in_cube::<f64, _>(&mut rng, 3);
        let lhs = ce_d1(&so3, &a.add(&b.scaled(2.0))).unwrap();
        let rhs = ce_d1(&so3, &a)
            .unwrap()
            .add(&ce_d1(&so3, &b).unwrap().scaled(2.0));
        assert!((lhs.matrix() - rhs.matrix()).amax() < 1e-14);
    }

    #[test]
    fn d_squared_vanishes() {
        let algs = [
            zoo::so3::<f64>(),
            zoo::sl2(),
            zoo::galilei_1d(),
            zoo::aff_line_plus_r(),
        ];
        let mut rng = sampling::seeded(12);
        for alg in &algs {
            for _ in 0..100 {
                let a = sampling::covector_in_cube::<f64, _>(&mut rng, alg.dim());
                let dd = ce_d2(alg, &ce_d1(alg, &a).unwrap()).unwrap();
                assert!(dd.norm_inf() < 1e-10);
            }
        }
    }

    #[test]
    fn abelian_d2_is_zero() {
        let ab = zoo::abelian::<f64>(4);
        let mut rng = sampling::seeded(13);
        for _ in 0..10 {
            let c = sampling::two_cochain_in_cube::<f64, _>(&mut rng, 4);
            assert_eq!(ce_d2(&ab, &c).unwrap().norm_inf(), 0.0);
        }
    }

    #[test]
    fn galilei_every_two_cochain_is_closed() {
        // Brute force on the single triple (H, P, B): all three bracket
        // terms land on pairs with a zero bracket or cancel.
        let g = zoo::galilei_1d::<f64>();
        let mut rng = sampling::seeded(14);
        for _ in 0..20 {
            let c = sampling::two_cochain_in_cube::<f64, _>(&mut rng, 3);
            assert!(ce_d2(&g, &c).unwrap().norm_inf() < 1e-15);
        }
    }

    #[test]
    fn aff_line_has_a_non_cocycle() {
        // With [e1,e2] = e2, the cochain c(e2,e3) = 1 satisfies
        // (d c)(e1,e2,e3) = -c(e2,e3) = -1.
        let alg = zoo::aff_line_plus_r::<f64>();
        let c = TwoCochain::from_upper_entries(3, &[(1, 2, 1.0)]).unwrap();
        let d = ce_d2(&alg, &c).unwrap();
        assert_relative_eq!(d.eval_basis(0, 1, 2), -1.0, epsilon = 1e-15);
        assert_relative_eq!(d.eval_basis(1, 0, 2), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn h2_dimensions_on_fixture_algebras() {
        let tol = 1e-9;
        let ab2 = h2_report(&zoo::abelian::<f64>(2), tol);
        assert_eq!((ab2.dim_z2, ab2.dim_b2, ab2.dim_h2), (1, 0, 1));
        let so3 = h2_report(&zoo::so3::<f64>(), tol);
        assert_eq!((so3.dim_z2, so3.dim_b2, so3.dim_h2), (3, 3, 0));
        let gal = h2_report(&zoo::galilei_1d::<f64>(), tol);
        assert_eq!((gal.dim_z2, gal.dim_b2, gal.dim_h2), (3, 1, 2));
        let aff = h2_report(&zoo::aff_line_plus_r::<f64>(), tol);
        assert_eq!((aff.dim_z2, aff.dim_b2, aff.dim_h2), (2, 1, 1));
    }

    #[test]
    fn h2_cocycle_basis_members_are_closed() {
        let algs = [
            zoo::abelian::<f64>(3),
            zoo::so3(),
            zoo::galilei_1d(),
            zoo::aff_line_plus_r(),
        ];
        for alg in &algs {
            let rep = h2_report(alg, 1e-9);
            assert_eq!(rep.dim_z2 - rep.dim_b2, rep.dim_h2);
            assert!(rep.dim_z2 <= pair_count(alg.dim()));
            assert_eq!(rep.cocycle_basis.len(), rep.dim_z2);
            for c in &rep.cocycle_basis {
                assert!(
                    cocycle_residual(alg, c).unwrap() < 1e-6,
                    "basis member not closed on {}",
                    alg.name()
                );
            }
        }
    }

    #[test]
    fn solve_coboundary_roundtrip() {
        let algs = [zoo::so3::<f64>(), zoo::galilei_1d(), zoo::aff_line_plus_r()];
        let mut rng = sampling::seeded(15);
        for alg in &algs {
            for _ in 0..20 {
                let a0 = sampling::covector_in_cube::<f64, _>(&mut rng, alg.dim());
                let c = ce_d1(alg, &a0).unwrap();
                let a = solve_coboundary(alg, &c, 1e-6, 1e-9)
                    .unwrap()
                    .expect("coboundary must be solvable");
                let back = ce_d1(alg, &a).unwrap();
                assert!((back.matrix() - c.matrix()).amax() < 1e-9);
            }
        }
    }

    #[test]
    fn solve_coboundary_rejects_symplectic_cochain_on_abelian() {
        let ab = zoo::abelian::<f64>(2);
        let c = zoo::heisenberg_cochain::<f64>();
        assert!(solve_coboundary(&ab, &c, 1e-6, 1e-9).unwrap().is_none());
    }

    #[test]
    fn solve_coboundary_zero_yields_some() {
        let ab = zoo::abelian::<f64>(2);
        let c = TwoCochain::zero(2);
        let a = solve_coboundary(&ab, &c, 1e-6, 1e-9).unwrap();
        assert!(a.is_some());
    }

    #[test]
    fn every_so3_cocycle_is_a_coboundary() {
        let so3 = zoo::so3::<f64>();
        let mut rng = sampling::seeded(16);
        for _ in 0..20 {
            let c = sampling::two_cochain_in_cube::<f64, _>(&mut rng, 3);
            // Every two-cochain on so(3) is closed, and H^2 = 0.
            assert!(cocycle_residual(&so3, &c).unwrap() < 1e-14);
            assert!(solve_coboundary(&so3, &c, 1e-6, 1e-9).unwrap().is_some());
        }
    }

    #[test]
    fn pair_index_is_lexicographic() {
        assert_eq!(pair_index(4, 0, 1), 0);
        assert_eq!(pair_index(4, 0, 2), 1);
        assert_eq!(pair_index(4, 0, 3), 2);
        assert_eq!(pair_index(4, 1, 2), 3);
        assert_eq!(pair_index(4, 2, 3), 5);
    }

    #[test]
    fn upper_coords_roundtrip() {
        let mut rng = sampling::seeded(17);
        let c = sampling::two_cochain_in_cube::<f64, _>(&mut rng, 5);
        let back = TwoCochain::from_upper_coords(5, &c.upper_coords());
        assert_eq!(back.matrix(), c.matrix());
    }
}
