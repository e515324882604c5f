//! Dense linear-algebra kernels: matrix exponential, rank/nullspace
//! decisions, least squares.
//!
//! The exponential is scaling-and-squaring with Pade approximants after
//! Higham (2005); at the word norms that occur here it is accurate to
//! roughly 1e-12 for `f64`. Rank decisions go through the SVD with a
//! relative threshold, which is the only numerically delicate step in the
//! crate.

use nalgebra::{DMatrix, DVector};

use crate::scalar::{real, Real};

/// Maximum absolute column sum.
fn one_norm<T: Real>(a: &DMatrix<T>) -> T {
    let mut best = T::zero();
    for j in 0..a.ncols() {
        let mut s = T::zero();
        for i in 0..a.nrows() {
            s += a[(i, j)].abs();
        }
        if s > best {
            best = s;
        }
    }
    best
}

fn pade_from_powers<T: Real>(a: &DMatrix<T>, coeffs: &[f64]) -> (DMatrix<T>, DMatrix<T>) {
    let n = a.nrows();
    let id = DMatrix::<T>::identity(n, n);
    // Even powers a^0, a^2, a^4, ...
    let a2 = a * a;
    let mut even_powers: Vec<DMatrix<T>> = vec![id.clone()];
    while even_powers.len() < coeffs.len() / 2 {
        even_powers.push(even_powers.last().unwrap() * &a2);
    }
    let mut u_poly = DMatrix::<T>::zeros(n, n);
    let mut v = DMatrix::<T>::zeros(n, n);
    for (k, &b) in coeffs.iter().enumerate() {
        let b: T = real(b);
        if k % 2 == 1 {
            u_poly += &even_powers[(k - 1) / 2] * b;
        } else {
            v += &even_powers[k / 2] * b;
        }
    }
    (a * u_poly, v)
}

fn pade13<T: Real>(a: &DMatrix<T>) -> (DMatrix<T>, DMatrix<T>) {
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let n = a.nrows();
    let id = DMatrix::<T>::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = |k: usize| -> T { real(B[k]) };
    let u_inner = &a6 * b(13) + &a4 * b(11) + &a2 * b(9);
    let u_poly = &a6 * &u_inner + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &id * b(1);
    let u = a * u_poly;
    let v_inner = &a6 * b(12) + &a4 * b(10) + &a2 * b(8);
    let v = &a6 * &v_inner + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &id * b(0);
    (u, v)
}

/// Matrix exponential by scaling-and-squaring with Pade approximants.
pub fn expm<T: Real>(a: &DMatrix<T>) -> DMatrix<T> {
    assert_eq!(a.nrows(), a.ncols(), "expm needs a square matrix");
    let n = a.nrows();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }

    const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
    const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
    const B7: [f64; 8] = [
        17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
    ];
    const B9: [f64; 10] = [
        17643225600.0,
        8821612800.0,
        2075673600.0,
        302702400.0,
        30270240.0,
        2162160.0,
        110880.0,
        3960.0,
        90.0,
        1.0,
    ];
    // Order selection thresholds from Higham (2005), Table 2.3.
    const THETA3: f64 = 1.495585217958292e-2;
    const THETA5: f64 = 2.539398330063230e-1;
    const THETA7: f64 = 9.504178996162932e-1;
    const THETA9: f64 = 2.097847961257068e0;
    const THETA13: f64 = 5.371920351148152e0;

    let norm = one_norm(a);
    let mut squarings = 0usize;
    let (u, v) = if norm <= real(THETA3) {
        pade_from_powers(a, &B3)
    } else if norm <= real(THETA5) {
        pade_from_powers(a, &B5)
    } else if norm <= real(THETA7) {
        pade_from_powers(a, &B7)
    } else if norm <= real(THETA9) {
        pade_from_powers(a, &B9)
    } else {
        let theta13: T = real(THETA13);
        let mut scaled_norm = norm;
        while scaled_norm > theta13 {
            scaled_norm *= real(0.5);
            squarings += 1;
        }
        let scale = real::<T>(0.5).powi(squarings as i32);
        let a_scaled = a * scale;
        pade13(&a_scaled)
    };

    let numer = &v + &u;
    let denom = &v - &u;
    let mut r = denom
        .lu()
        .solve(&numer)
        .expect("Pade denominator is singular; matrix norm out of range");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}

/// Exponential of the affine extension `[[A, b], [0, 0]]`.
///
/// Returns `(exp(A), phi1(A) * b)` where `phi1(z) = (exp(z) - 1)/z`. No
/// matrix inversion is involved, so the result is exact at singular `A`
/// (in particular at `A = 0`, where `phi1(A) = I`).
pub fn expm_affine<T: Real>(a: &DMatrix<T>, b: &DVector<T>) -> (DMatrix<T>, DVector<T>) {
    let n = a.nrows();
    assert_eq!(a.ncols(), n, "expm_affine needs a square matrix");
    assert_eq!(b.len(), n, "expm_affine vector length mismatch");
    let mut aug = DMatrix::<T>::zeros(n + 1, n + 1);
    aug.view_mut((0, 0), (n, n)).copy_from(a);
    for i in 0..n {
        aug[(i, n)] = b[i];
    }
    let e = expm(&aug);
    let top = e.view((0, 0), (n, n)).into_owned();
    let col = DVector::from_fn(n, |i, _| e[(i, n)]);
    (top, col)
}

/// Rank and nullspace of a dense matrix via SVD with a relative threshold.
#[derive(Debug, Clone)]
pub struct RankedNullspace<T: Real> {
    pub rank: usize,
    /// Orthonormal basis of the numerical nullspace, in SVD order.
    pub nullspace: Vec<DVector<T>>,
    /// All singular values (unsorted, as returned by the decomposition).
    pub singular_values: Vec<T>,
}

/// Computes the numerical rank and nullspace of `m`.
///
/// Singular values below `rel_tol * sigma_max` count as zero. Wide matrices
/// are padded with zero rows so the full right-singular basis is available.
pub fn rank_nullspace<T: Real>(m: &DMatrix<T>, rel_tol: T) -> RankedNullspace<T> {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return RankedNullspace {
            rank: 0,
            nullspace: vec![],
            singular_values: vec![],
        };
    }
    if rows == 0 {
        // Zero map: everything is in the kernel.
        let nullspace = (0..cols)
            .map(|j| DVector::from_fn(cols, |i, _| if i == j { T::one() } else { T::zero() }))
            .collect();
        return RankedNullspace {
            rank: 0,
            nullspace,
            singular_values: vec![],
        };
    }
    let padded = if rows < cols {
        let mut p = DMatrix::<T>::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let sv: Vec<T> = svd.singular_values.iter().copied().collect();
    let smax = sv
        .iter()
        .copied()
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    let thresh = rel_tol * smax;
    let v_t = svd.v_t.expect("SVD with compute_v");
    let mut rank = 0usize;
    let mut nullspace = Vec::new();
    for (k, &s) in sv.iter().enumerate() {
        if smax > T::zero() && s > thresh {
            rank += 1;
        } else {
            nullspace.push(v_t.row(k).transpose());
        }
    }
    RankedNullspace {
        rank,
        nullspace,
        singular_values: sv,
    }
}

/// Minimum-norm least-squares solution of `a x = b`.
///
/// Returns the solution and the Euclidean residual `|a x - b|`.
pub fn lstsq<T: Real>(a: &DMatrix<T>, b: &DVector<T>, rel_tol: T) -> (DVector<T>, T) {
    if a.ncols() == 0 {
        return (DVector::zeros(0), b.norm());
    }
    if a.nrows() == 0 {
        return (DVector::zeros(a.ncols()), T::zero());
    }
    let svd = a.clone().svd(true, true);
    let smax = svd
        .singular_values
        .iter()
        .copied()
        .fold(T::zero(), |acc, s| if s > acc { s } else { acc });
    let x = svd
        .solve(b, rel_tol * smax)
        .expect("SVD least-squares solve");
    let residual = (a * &x - b).norm();
    (x, residual)
}

/// Infinity norm of the antisymmetry defect `m + m^T`.
pub fn antisymmetry_residual<T: Real>(m: &DMatrix<T>) -> T {
    (m + m.transpose()).amax()
}

/// Infinity norm of the symmetry defect `m - m^T`.
pub fn symmetry_residual<T: Real>(m: &DMatrix<T>) -> T {
    (m - m.transpose()).amax()
}
