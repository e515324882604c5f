//! Structure-constant Lie algebras, their duals, and adjoint/coadjoint
//! operators at algebra and word level.
//!
//! Group elements are represented as words of exponentials
//! `exp(X_1) ... exp(X_k)`; every group-level formula in this crate is
//! evaluated by folding over such words, which canonically represents
//! elements of the universal cover of any connected group with the given
//! algebra.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{antisymmetry_residual, expm};
use crate::scalar::{to_f64, Real};

/// Element of the algebra, in basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<T: Real> {
    pub coords: DVector<T>,
}

/// Element of the dual, in dual-basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Covector<T: Real> {
    pub coords: DVector<T>,
}

impl<T: Real> Vector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Vector {
            coords: DVector::from_vec(coords),
        }
    }

    pub fn from_dvector(coords: DVector<T>) -> Self {
        Vector { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Vector {
            coords: DVector::zeros(dim),
        }
    }

    /// The `i`-th standard basis vector of an algebra of dimension `dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[i] = T::one();
        Vector { coords: v }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scaled(&self, s: T) -> Self {
        Vector {
            coords: &self.coords * s,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Vector {
            coords: &self.coords + &other.coords,
        }
    }

    pub fn negated(&self) -> Self {
        self.scaled(-T::one())
    }

    pub fn norm(&self) -> T {
        self.coords.norm()
    }
}

impl<T: Real> Covector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Covector {
            coords: DVector::from_vec(coords),
        }
    }

    pub fn from_dvector(coords: DVector<T>) -> Self {
        Covector { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Covector {
            coords: DVector::zeros(dim),
        }
    }

    /// The `i`-th dual basis covector.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[i] = T::one();
        Covector { coords: v }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Dual pairing `<alpha, x> = sum_i alpha_i x_i`.
    pub fn pair(&self, x: &Vector<T>) -> T {
        self.coords.dot(&x.coords)
    }

    pub fn scaled(&self, s: T) -> Self {
        Covector {
            coords: &self.coords * s,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Covector {
            coords: &self.coords + &other.coords,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Covector {
            coords: &self.coords - &other.coords,
        }
    }

    pub fn norm(&self) -> T {
        self.coords.norm()
    }
}

/// A group element presented as the word `exp(X_1) ... exp(X_k)`.
///
/// Words are never simplified; evaluation is always a literal fold. The
/// optional `rep_images` carry caller-declared images of each `exp(X_i)`
/// under a matrix representation, used to certify identity words of a
/// specific (non-simply-connected) group.
#[derive(Debug, Clone)]
pub struct GroupWord<T: Real> {
    pub letters: Vec<Vector<T>>,
    pub rep_images: Option<Vec<DMatrix<T>>>,
}

impl<T: Real> GroupWord<T> {
    pub fn identity() -> Self {
        GroupWord {
            letters: vec![],
            rep_images: None,
        }
    }

    pub fn from_letters(letters: Vec<Vector<T>>) -> Self {
        GroupWord {
            letters,
            rep_images: None,
        }
    }

    pub fn single(letter: Vector<T>) -> Self {
        GroupWord {
            letters: vec![letter],
            rep_images: None,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word for the inverse element: letters reversed and negated.
    /// Representation images are dropped.
    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(Vector::negated).collect(),
            rep_images: None,
        }
    }

    /// Concatenation `self * other`. Representation images are kept only
    /// when both operands carry them.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        let rep_images = match (&self.rep_images, &other.rep_images) {
            (Some(a), Some(b)) => {
                let mut m = a.clone();
                m.extend(b.iter().cloned());
                Some(m)
            }
            _ => None,
        };
        GroupWord {
            letters,
            rep_images,
        }
    }

    /// New word with `exp(t x)` prepended, used to probe right-invariant
    /// flows `g -> exp(t x) g`.
    pub fn prepend(&self, letter: Vector<T>) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(letter);
        letters.extend(self.letters.iter().cloned());
        GroupWord {
            letters,
            rep_images: None,
        }
    }
}

/// A (user-asserted) matrix representation, given by generator images.
#[derive(Debug, Clone)]
pub struct MatrixRep<T: Real> {
    generators: Vec<DMatrix<T>>,
    dim_rep: usize,
    pub faithful: bool,
}

impl<T: Real> MatrixRep<T> {
    /// Checks a generator list against the algebra: one square `d x d`
    /// matrix per basis element, with homomorphism residual
    /// `max_ij |rho([e_i,e_j]) - [rho(e_i), rho(e_j)]|` at most `tol_alg`.
    pub fn new(
        algebra: &LieAlgebra<T>,
        generators: Vec<DMatrix<T>>,
        faithful: bool,
        tol_alg: T,
    ) -> Result<Self> {
        let n = algebra.dim();
        if generators.len() != n {
            return Err(Error::InvalidRep {
                reason: format!("expected {} generators, got {}", n, generators.len()),
            });
        }
        let d = generators.first().map(|g| g.nrows()).unwrap_or(0);
        for (i, g) in generators.iter().enumerate() {
            if g.nrows() != d || g.ncols() != d {
                return Err(Error::InvalidRep {
                    reason: format!(
                        "generator {} is {}x{}, expected {}x{}",
                        i,
                        g.nrows(),
                        g.ncols(),
                        d,
                        d
                    ),
                });
            }
        }
        let rep = MatrixRep {
            generators,
            dim_rep: d,
            faithful,
        };
        let mut worst = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = rep.apply(&algebra.bracket(&Vector::basis(n, i), &Vector::basis(n, j))?);
                let gi = &rep.generators[i];
                let gj = &rep.generators[j];
                let rhs = gi * gj - gj * gi;
                let r = (lhs - rhs).amax();
                if r > worst {
                    worst = r;
                }
            }
        }
        if worst > tol_alg {
            return Err(Error::InvalidRep {
                reason: format!(
                    "homomorphism residual {:.3e} exceeds tolerance {:.3e}",
                    to_f64(worst),
                    to_f64(tol_alg)
                ),
            });
        }
        Ok(rep)
    }

    pub fn dim_rep(&self) -> usize {
        self.dim_rep
    }

    pub fn generators(&self) -> &[DMatrix<T>] {
        &self.generators
    }

    /// Image of an algebra element: `rho(x) = sum_i x_i rho(e_i)`.
    pub fn apply(&self, x: &Vector<T>) -> DMatrix<T> {
        let mut m = DMatrix::zeros(self.dim_rep, self.dim_rep);
        for (i, g) in self.generators.iter().enumerate() {
            m += g * x.coords[i];
        }
        m
    }

    /// Image of a word: the product of `exp(rho(X_i))`.
    pub fn word_image(&self, w: &GroupWord<T>) -> DMatrix<T> {
        let mut m = DMatrix::identity(self.dim_rep, self.dim_rep);
        for letter in &w.letters {
            m = m * expm(&self.apply(letter));
        }
        m
    }
}

/// A finite-dimensional real Lie algebra given by structure constants
/// `c^k_{ij}` with `[e_i, e_j] = sum_k c^k_{ij} e_k`.
///
/// The tensor is canonicalized at construction: entries with `i < j` are
/// taken as the source of truth, the rest derived by antisymmetry, so
/// `c^k_{ij} = -c^k_{ji}` holds exactly afterwards.
#[derive(Debug, Clone)]
pub struct LieAlgebra<T: Real> {
    name: String,
    dim: usize,
    basis_names: Vec<String>,
    /// `structure[k]` is the antisymmetric matrix `(c^k_{ij})_{ij}`.
    structure: Vec<DMatrix<T>>,
    jacobi_residual: T,
}

impl<T: Real> LieAlgebra<T> {
    /// Builds and validates an algebra from a full structure tensor.
    ///
    /// The input must be antisymmetric within `tol_alg` (it is then
    /// canonicalized to exact antisymmetry) and satisfy the Jacobi identity
    /// on basis triples within `tol_alg`.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        structure: Vec<DMatrix<T>>,
        tol_alg: T,
    ) -> Result<Self> {
        let name = name.into();
        let dim = basis_names.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra {
                reason: "dimension must be positive".into(),
            });
        }
        if structure.len() != dim {
            return Err(Error::InvalidAlgebra {
                reason: format!(
                    "structure tensor has {} components, expected {}",
                    structure.len(),
                    dim
                ),
            });
        }
        for (k, m) in structure.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::InvalidAlgebra {
                    reason: format!("structure component {} is not {}x{}", k, dim, dim),
                });
            }
            let r = antisymmetry_residual(m);
            if r > tol_alg {
                return Err(Error::InvalidAlgebra {
                    reason: format!(
                        "antisymmetry residual {:.3e} in component {} exceeds {:.3e}",
                        to_f64(r),
                        k,
                        to_f64(tol_alg)
                    ),
                });
            }
        }
        // Canonicalize: keep i < j, derive the rest.
        let structure: Vec<DMatrix<T>> = structure
            .into_iter()
            .map(|m| {
                DMatrix::from_fn(dim, dim, |i, j| {
                    if i < j {
                        m[(i, j)]
                    } else if i > j {
                        -m[(j, i)]
                    } else {
                        T::zero()
                    }
                })
            })
            .collect();

        let mut alg = LieAlgebra {
            name,
            dim,
            basis_names,
            structure,
            jacobi_residual: T::zero(),
        };
        let residual = alg.compute_jacobi_residual();
        if residual > tol_alg {
            return Err(Error::InvalidAlgebra {
                reason: format!(
                    "Jacobi residual {:.3e} exceeds tolerance {:.3e}",
                    to_f64(residual),
                    to_f64(tol_alg)
                ),
            });
        }
        alg.jacobi_residual = residual;
        Ok(alg)
    }

    /// Builds an algebra from sparse bracket data `(i, j, [(k, c^k_{ij})])`
    /// with `i < j`; omitted pairs commute.
    pub fn from_brackets(
        name: impl Into<String>,
        basis_names: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, T)>)],
        tol_alg: T,
    ) -> Result<Self> {
        let dim = basis_names.len();
        let mut structure = vec![DMatrix::<T>::zeros(dim, dim); dim];
        for &(i, j, ref coeffs) in brackets {
            if i >= j {
                return Err(Error::InvalidAlgebra {
                    reason: format!("bracket pair ({}, {}) must satisfy i < j", i, j),
                });
            }
            if j >= dim {
                return Err(Error::InvalidAlgebra {
                    reason: format!("bracket pair ({}, {}) out of range for dim {}", i, j, dim),
                });
            }
            for &(k, c) in coeffs {
                if k >= dim {
                    return Err(Error::InvalidAlgebra {
                        reason: format!("bracket target {} out of range for dim {}", k, dim),
                    });
                }
                structure[k][(i, j)] += c;
                structure[k][(j, i)] -= c;
            }
        }
        LieAlgebra::new(name, basis_names, structure, tol_alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure(&self) -> &[DMatrix<T>] {
        &self.structure
    }

    /// Max-norm Jacobi residual over basis triples, fixed at construction.
    pub fn jacobi_residual(&self) -> T {
        self.jacobi_residual
    }

    pub fn basis_vector(&self, i: usize) -> Vector<T> {
        Vector::basis(self.dim, i)
    }

    fn compute_jacobi_residual(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            let ei = self.basis_vector(i);
            for j in (i + 1)..n {
                let ej = self.basis_vector(j);
                for k in (j + 1)..n {
                    let ek = self.basis_vector(k);
                    let t1 = self.bracket_unchecked(&self.bracket_unchecked(&ei, &ej), &ek);
                    let t2 = self.bracket_unchecked(&self.bracket_unchecked(&ej, &ek), &ei);
                    let t3 = self.bracket_unchecked(&self.bracket_unchecked(&ek, &ei), &ej);
                    let r = (t1.coords + t2.coords + t3.coords).amax();
                    if r > worst {
                        worst = r;
                    }
                }
            }
        }
        worst
    }

    fn check_vector(&self, x: &Vector<T>, context: &'static str) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    fn check_covector(&self, a: &Covector<T>, context: &'static str) -> Result<()> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.dim,
                got: a.dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_word(&self, w: &GroupWord<T>, context: &'static str) -> Result<()> {
        for letter in &w.letters {
            self.check_vector(letter, context)?;
        }
        Ok(())
    }

    fn bracket_unchecked(&self, x: &Vector<T>, y: &Vector<T>) -> Vector<T> {
        let coords = DVector::from_fn(self.dim, |k, _| {
            (x.coords.transpose() * &self.structure[k] * &y.coords)[(0, 0)]
        });
        Vector { coords }
    }

    /// The Lie bracket `[x, y] = sum_{ijk} x_i y_j c^k_{ij} e_k`.
    pub fn bracket(&self, x: &Vector<T>, y: &Vector<T>) -> Result<Vector<T>> {
        self.check_vector(x, "bracket")?;
        self.check_vector(y, "bracket")?;
        Ok(self.bracket_unchecked(x, y))
    }

    /// The adjoint operator `ad_x` with `(ad_x)_{kj} = sum_i x_i c^k_{ij}`,
    /// so `ad_x y = [x, y]`.
    pub fn ad(&self, x: &Vector<T>) -> Result<DMatrix<T>> {
        self.check_vector(x, "ad")?;
        Ok(self.ad_unchecked(x))
    }

    fn ad_unchecked(&self, x: &Vector<T>) -> DMatrix<T> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for k in 0..self.dim {
            let row = x.coords.transpose() * &self.structure[k];
            for j in 0..self.dim {
                m[(k, j)] = row[(0, j)];
            }
        }
        m
    }

    /// The coadjoint operator `ad*_x = -(ad_x)^T` acting on covector
    /// coordinates, i.e. `<ad*_x a, y> = -<a, [x, y]>`.
    pub fn coad(&self, x: &Vector<T>) -> Result<DMatrix<T>> {
        Ok(-self.ad(x)?.transpose())
    }

    /// `Ad` of a word: `exp(ad_{X_1}) ... exp(ad_{X_k})`; the empty word
    /// gives the identity.
    pub fn word_adjoint(&self, w: &GroupWord<T>) -> Result<DMatrix<T>> {
        self.check_word(w, "word_adjoint")?;
        let mut m = DMatrix::identity(self.dim, self.dim);
        for letter in &w.letters {
            m = m * expm(&self.ad_unchecked(letter));
        }
        Ok(m)
    }

    /// `Ad*` of a word: the transpose of `Ad` of the inverse word, acting
    /// on covector coordinates.
    pub fn word_coadjoint(&self, w: &GroupWord<T>) -> Result<DMatrix<T>> {
        Ok(self.word_adjoint(&w.inverse())?.transpose())
    }

    /// Applies `Ad` of a word to an algebra element.
    pub fn transport(&self, w: &GroupWord<T>, x: &Vector<T>) -> Result<Vector<T>> {
        self.check_vector(x, "transport")?;
        Ok(Vector {
            coords: self.word_adjoint(w)? * &x.coords,
        })
    }

    /// Applies `Ad*` of a word to a covector.
    pub fn cotransport(&self, w: &GroupWord<T>, a: &Covector<T>) -> Result<Covector<T>> {
        self.check_covector(a, "cotransport")?;
        Ok(Covector {
            coords: self.word_coadjoint(w)? * &a.coords,
        })
    }
}
