//! Independent oracles shared by the integration suites. These deliberately
//! avoid the library's closed forms and rank machinery: integration is done
//! with a classical fixed-step RK4 on the defining ODE, and ranks come from
//! Gaussian elimination.

use liesym_core::algebra::{LieAlgebra, Vector};
use liesym_core::cohomology::TwoCochain;
use nalgebra::{DMatrix, DVector};

/// Integrates `gamma'(t) = Ad*_{exp(t x)} (d_e theta x)` from 0 to 1 with a
/// fixed-step RK4 on the joint linear system
/// `A' = K A, gamma' = A beta` with `A(0) = I`, `gamma(0) = 0`,
/// where `K = ad*_x`. No matrix exponential is involved.
#[allow(dead_code)]
pub fn rk4_theta_exp(
    alg: &LieAlgebra<f64>,
    dtheta: &TwoCochain<f64>,
    x: &Vector<f64>,
    steps: usize,
) -> DVector<f64> {
    let n = alg.dim();
    let k = alg.coad(x).expect("conforming element");
    let beta = dtheta.matrix().transpose() * &x.coords;
    let h = 1.0 / steps as f64;

    let mut a = DMatrix::<f64>::identity(n, n);
    let mut gamma = DVector::<f64>::zeros(n);
    for _ in 0..steps {
        // Stage derivatives for the pair (A, gamma).
        let a_k1 = &k * &a;
        let g_k1 = &a * &beta;
        let a_mid1 = &a + &a_k1 * (h / 2.0);
        let a_k2 = &k * &a_mid1;
        let g_k2 = &a_mid1 * &beta;
        let a_mid2 = &a + &a_k2 * (h / 2.0);
        let a_k3 = &k * &a_mid2;
        let g_k3 = &a_mid2 * &beta;
        let a_end = &a + &a_k3 * h;
        let a_k4 = &k * &a_end;
        let g_k4 = &a_end * &beta;

        a += (a_k1 + a_k2 * 2.0 + a_k3 * 2.0 + a_k4) * (h / 6.0);
        gamma += (g_k1 + g_k2 * 2.0 + g_k3 * 2.0 + g_k4) * (h / 6.0);
    }
    gamma
}

/// Rank by Gaussian elimination with partial pivoting; entries below `tol`
/// count as zero.
#[allow(dead_code)]
pub fn gaussian_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let (pivot_row, pivot_val) = (row..rows)
            .map(|r| (r, a[(r, col)].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if pivot_val <= tol {
            continue;
        }
        a.swap_rows(row, pivot_row);
        let pivot = a[(row, col)];
        for r in (row + 1)..rows {
            let factor = a[(r, col)] / pivot;
            for c in col..cols {
                let v = a[(row, c)];
                a[(r, c)] -= factor * v;
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

/// Brute-force matrix of the degree-one differential over the pair basis,
/// built directly from bracket evaluations.
#[allow(dead_code)]
pub fn brute_d1_matrix(alg: &LieAlgebra<f64>) -> DMatrix<f64> {
    let n = alg.dim();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut m = DMatrix::<f64>::zeros(pairs.len(), n);
    for (row, &(i, j)) in pairs.iter().enumerate() {
        let b = alg
            .bracket(&alg.basis_vector(i), &alg.basis_vector(j))
            .unwrap();
        for k in 0..n {
            m[(row, k)] = -b.coords[k];
        }
    }
    m
}

/// Brute-force matrix of the degree-two differential over the pair and
/// triple bases: each column is the elementary cochain `E_{lm}` pushed
/// through the alternating-sum formula evaluated with explicit brackets.
#[allow(dead_code)]
pub fn brute_d2_matrix(alg: &LieAlgebra<f64>) -> DMatrix<f64> {
    let n = alg.dim();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).flat_map(move |j| ((j + 1)..n).map(move |k| (i, j, k))))
        .collect();
    let eval_elementary = |l: usize, m_: usize, v: &DVector<f64>, w: &DVector<f64>| -> f64 {
        v[l] * w[m_] - v[m_] * w[l]
    };
    let mut out = DMatrix::<f64>::zeros(triples.len(), pairs.len());
    for (col, &(l, m_)) in pairs.iter().enumerate() {
        for (row, &(i, j, k)) in triples.iter().enumerate() {
            let ei = alg.basis_vector(i);
            let ej = alg.basis_vector(j);
            let ek = alg.basis_vector(k);
            let bij = alg.bracket(&ei, &ej).unwrap().coords;
            let bik = alg.bracket(&ei, &ek).unwrap().coords;
            let bjk = alg.bracket(&ej, &ek).unwrap().coords;
            out[(row, col)] = -eval_elementary(l, m_, &bij, &ek.coords)
                + eval_elementary(l, m_, &bik, &ej.coords)
                - eval_elementary(l, m_, &bjk, &ei.coords);
        }
    }
    out
}

/// Cohomology dimensions `(dim Z2, dim B2, dim H2)` by Gaussian ranks.
#[allow(dead_code)]
pub fn brute_h2_dims(alg: &LieAlgebra<f64>) -> (usize, usize, usize) {
    let n = alg.dim();
    let p = n * (n - 1) / 2;
    let rank_d2 = gaussian_rank(&brute_d2_matrix(alg), 1e-9);
    let rank_d1 = gaussian_rank(&brute_d1_matrix(alg), 1e-9);
    (p - rank_d2, rank_d1, p - rank_d2 - rank_d1)
}
