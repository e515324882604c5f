//! JSON document schemas and conversions to and from the validated domain
//! types.
//!
//! Documents are plain `f64`; conversion into the working scalar happens at
//! this boundary. Emission uses sorted maps throughout so identical inputs
//! serialize to identical bytes.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::algebra::{GroupWord, LieAlgebra, MatrixRep, Vector};
use crate::cohomology::TwoCochain;
use crate::error::{Error, Result};
use crate::fixtures::{AffineFunctional, AffineMap, PhaseSpaceFixture};
use crate::scalar::{real, to_f64, Real};
use crate::tol::Tolerances;

/// `{ "name": str, "dim": n, "basis": [labels], "brackets": [...] }` with
/// 0-based indices, `i < j`, omitted pairs commuting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    /// Map from target index (as a string key) to the coefficient.
    pub coeffs: BTreeMap<String, f64>,
}

/// `{ "entries": [ {"i", "j", "value"} ] }` with `i < j`; the antisymmetric
/// completion is implied.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CochainDoc {
    pub entries: Vec<CochainEntryDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CochainEntryDoc {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

/// `{ "letters": [ [x1, ..., xn], ... ] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordDoc {
    pub letters: Vec<Vec<f64>>,
}

/// `{ "dim_rep": d, "generators": [row-major d*d arrays] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepDoc {
    pub dim_rep: usize,
    pub generators: Vec<Vec<f64>>,
    #[serde(default)]
    pub faithful: bool,
}

/// Phase-space fixture document; see the fixture type for the invariants
/// enforced on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureDoc {
    pub algebra: AlgebraDoc,
    pub phase_dim: usize,
    pub omega: Vec<Vec<f64>>,
    pub action: Vec<ActionDoc>,
    pub comoment: Vec<ComomentDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionDoc {
    pub linear: Vec<Vec<f64>>,
    pub translation: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComomentDoc {
    pub a: Vec<f64>,
    pub b: f64,
}

fn matrix_from_rows<T: Real>(rows: &[Vec<f64>], what: &str) -> Result<DMatrix<T>> {
    let r = rows.len();
    let c = rows.first().map(|row| row.len()).unwrap_or(0);
    for (k, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(Error::InvalidDocument {
                field: what.into(),
                reason: format!("row {} has length {}, expected {}", k, row.len(), c),
            });
        }
    }
    Ok(DMatrix::from_fn(r, c, |i, j| real(rows[i][j])))
}

fn matrix_to_rows<T: Real>(m: &DMatrix<T>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| to_f64(m[(i, j)])).collect())
        .collect()
}

pub fn algebra_from_doc<T: Real>(doc: &AlgebraDoc, tol_alg: T) -> Result<LieAlgebra<T>> {
    if doc.basis.len() != doc.dim {
        return Err(Error::InvalidDocument {
            field: "basis".into(),
            reason: format!("{} labels for dim {}", doc.basis.len(), doc.dim),
        });
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut brackets: Vec<(usize, usize, Vec<(usize, T)>)> = Vec::new();
    for b in &doc.brackets {
        if b.i >= b.j {
            return Err(Error::InvalidDocument {
                field: "brackets".into(),
                reason: format!("pair ({}, {}) must satisfy i < j", b.i, b.j),
            });
        }
        if b.j >= doc.dim {
            return Err(Error::InvalidDocument {
                field: "brackets".into(),
                reason: format!("pair ({}, {}) out of range for dim {}", b.i, b.j, doc.dim),
            });
        }
        if !seen.insert((b.i, b.j)) {
            return Err(Error::InvalidDocument {
                field: "brackets".into(),
                reason: format!("duplicate pair ({}, {})", b.i, b.j),
            });
        }
        let mut coeffs = Vec::new();
        for (key, &v) in &b.coeffs {
            let k: usize = key.parse().map_err(|_| Error::InvalidDocument {
                field: "coeffs".into(),
                reason: format!("key {:?} is not an index", key),
            })?;
            if k >= doc.dim {
                return Err(Error::InvalidDocument {
                    field: "coeffs".into(),
                    reason: format!("target {} out of range for dim {}", k, doc.dim),
                });
            }
            coeffs.push((k, real(v)));
        }
        brackets.push((b.i, b.j, coeffs));
    }
    LieAlgebra::from_brackets(doc.name.clone(), doc.basis.clone(), &brackets, tol_alg)
}

pub fn algebra_to_doc<T: Real>(alg: &LieAlgebra<T>) -> AlgebraDoc {
    let n = alg.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut coeffs = BTreeMap::new();
            for k in 0..n {
                let v = alg.structure()[k][(i, j)];
                if v != T::zero() {
                    coeffs.insert(k.to_string(), to_f64(v));
                }
            }
            if !coeffs.is_empty() {
                brackets.push(BracketDoc { i, j, coeffs });
            }
        }
    }
    AlgebraDoc {
        name: alg.name().to_string(),
        dim: n,
        basis: alg.basis_names().to_vec(),
        brackets,
    }
}

pub fn algebra_from_json<T: Real>(json: &str, tol_alg: T) -> Result<LieAlgebra<T>> {
    let doc: AlgebraDoc = serde_json::from_str(json)?;
    algebra_from_doc(&doc, tol_alg)
}

pub fn cochain_from_doc<T: Real>(doc: &CochainDoc, dim: usize) -> Result<TwoCochain<T>> {
    let entries: Vec<(usize, usize, T)> = doc
        .entries
        .iter()
        .map(|e| (e.i, e.j, real(e.value)))
        .collect();
    TwoCochain::from_upper_entries(dim, &entries)
}

pub fn cochain_to_doc<T: Real>(c: &TwoCochain<T>) -> CochainDoc {
    let n = c.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = c.matrix()[(i, j)];
            if v != T::zero() {
                entries.push(CochainEntryDoc {
                    i,
                    j,
                    value: to_f64(v),
                });
            }
        }
    }
    CochainDoc { entries }
}

pub fn cochain_from_json<T: Real>(json: &str, dim: usize) -> Result<TwoCochain<T>> {
    let doc: CochainDoc = serde_json::from_str(json)?;
    cochain_from_doc(&doc, dim)
}

pub fn word_from_doc<T: Real>(doc: &WordDoc, dim: usize) -> Result<GroupWord<T>> {
    let mut letters = Vec::with_capacity(doc.letters.len());
    for (k, letter) in doc.letters.iter().enumerate() {
        if letter.len() != dim {
            return Err(Error::InvalidDocument {
                field: "letters".into(),
                reason: format!("letter {} has length {}, expected {}", k, letter.len(), dim),
            });
        }
        letters.push(Vector::new(letter.iter().map(|&x| real(x)).collect()));
    }
    Ok(GroupWord::from_letters(letters))
}

pub fn word_to_doc<T: Real>(w: &GroupWord<T>) -> WordDoc {
    WordDoc {
        letters: w
            .letters
            .iter()
            .map(|l| l.coords.iter().map(|&x| to_f64(x)).collect())
            .collect(),
    }
}

pub fn word_from_json<T: Real>(json: &str, dim: usize) -> Result<GroupWord<T>> {
    let doc: WordDoc = serde_json::from_str(json)?;
    word_from_doc(&doc, dim)
}

pub fn rep_from_doc<T: Real>(
    doc: &RepDoc,
    algebra: &LieAlgebra<T>,
    tol_alg: T,
) -> Result<MatrixRep<T>> {
    let d = doc.dim_rep;
    let mut generators = Vec::with_capacity(doc.generators.len());
    for (k, flat) in doc.generators.iter().enumerate() {
        if flat.len() != d * d {
            return Err(Error::InvalidDocument {
                field: "generators".into(),
                reason: format!(
                    "generator {} has {} entries, expected {}",
                    k,
                    flat.len(),
                    d * d
                ),
            });
        }
        generators.push(DMatrix::from_fn(d, d, |i, j| real(flat[i * d + j])));
    }
    MatrixRep::new(algebra, generators, doc.faithful, tol_alg)
}

pub fn rep_from_json<T: Real>(
    json: &str,
    algebra: &LieAlgebra<T>,
    tol_alg: T,
) -> Result<MatrixRep<T>> {
    let doc: RepDoc = serde_json::from_str(json)?;
    rep_from_doc(&doc, algebra, tol_alg)
}

pub fn rep_to_doc<T: Real>(rep: &MatrixRep<T>) -> RepDoc {
    let d = rep.dim_rep();
    RepDoc {
        dim_rep: d,
        generators: rep
            .generators()
            .iter()
            .map(|g| {
                (0..d)
                    .flat_map(|i| (0..d).map(move |j| (i, j)))
                    .map(|(i, j)| to_f64(g[(i, j)]))
                    .collect()
            })
            .collect(),
        faithful: rep.faithful,
    }
}

pub fn fixture_from_doc<T: Real>(
    doc: &FixtureDoc,
    tols: &Tolerances<T>,
) -> Result<PhaseSpaceFixture<T>> {
    let algebra = algebra_from_doc(&doc.algebra, tols.alg)?;
    let omega = matrix_from_rows(&doc.omega, "omega")?;
    if omega.nrows() != doc.phase_dim {
        return Err(Error::InvalidDocument {
            field: "phase_dim".into(),
            reason: format!(
                "declared {} but omega is {}x{}",
                doc.phase_dim,
                omega.nrows(),
                omega.ncols()
            ),
        });
    }
    let mut action = Vec::with_capacity(doc.action.len());
    for a in &doc.action {
        action.push(AffineMap {
            linear: matrix_from_rows(&a.linear, "action.linear")?,
            translation: DVector::from_iterator(
                a.translation.len(),
                a.translation.iter().map(|&x| real(x)),
            ),
        });
    }
    let comoment = doc
        .comoment
        .iter()
        .map(|c| AffineFunctional {
            linear: DVector::from_iterator(c.a.len(), c.a.iter().map(|&x| real(x))),
            constant: real(c.b),
        })
        .collect();
    PhaseSpaceFixture::new(
        doc.algebra.name.clone(),
        algebra,
        omega,
        action,
        comoment,
        tols,
    )
}

pub fn fixture_from_json<T: Real>(
    json: &str,
    tols: &Tolerances<T>,
) -> Result<PhaseSpaceFixture<T>> {
    let doc: FixtureDoc = serde_json::from_str(json)?;
    fixture_from_doc(&doc, tols)
}

pub fn fixture_to_doc<T: Real>(fx: &PhaseSpaceFixture<T>) -> FixtureDoc {
    FixtureDoc {
        algebra: algebra_to_doc(fx.algebra()),
        phase_dim: fx.phase_dim(),
        omega: matrix_to_rows(fx.omega()),
        action: fx
            .action()
            .iter()
            .map(|a| ActionDoc {
                linear: matrix_to_rows(&a.linear),
                translation: a.translation.iter().map(|&x| to_f64(x)).collect(),
            })
            .collect(),
        comoment: fx
            .comoment()
            .iter()
            .map(|c| ComomentDoc {
                a: c.linear.iter().map(|&x| to_f64(x)).collect(),
                b: to_f64(c.constant),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn tols() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn algebra_roundtrip_through_doc() {
        for alg in [
            zoo::so3::<f64>(),
            zoo::sl2(),
            zoo::galilei_1d(),
            zoo::abelian(3),
        ] {
            let doc = algebra_to_doc(&alg);
            let back = algebra_from_doc::<f64>(&doc, tols().alg).unwrap();
            assert_eq!(back.dim(), alg.dim());
            for k in 0..alg.dim() {
                assert_eq!(back.structure()[k], alg.structure()[k]);
            }
        }
    }

    #[test]
    fn algebra_json_ingestion() {
        let json = r#"{
            "name": "galilei_1d",
            "dim": 3,
            "basis": ["H", "P", "B"],
            "brackets": [ {"i": 0, "j": 2, "coeffs": {"1": -1.0}} ]
        }"#;
        let alg = algebra_from_json::<f64>(json, tols().alg).unwrap();
        let b = alg.basis_vector(2);
        let h = alg.basis_vector(0);
        let p = alg.bracket(&b, &h).unwrap();
        assert_eq!(p.coords[1], 1.0);
    }

    #[test]
    fn algebra_doc_rejections() {
        let bad_pair = r#"{"name":"x","dim":2,"basis":["a","b"],
            "brackets":[{"i":1,"j":0,"coeffs":{}}]}"#;
        assert!(algebra_from_json::<f64>(bad_pair, tols().alg).is_err());
        let bad_range = r#"{"name":"x","dim":2,"basis":["a","b"],
            "brackets":[{"i":0,"j":5,"coeffs":{}}]}"#;
        assert!(algebra_from_json::<f64>(bad_range, tols().alg).is_err());
        let bad_key = r#"{"name":"x","dim":2,"basis":["a","b"],
            "brackets":[{"i":0,"j":1,"coeffs":{"q":1.0}}]}"#;
        assert!(algebra_from_json::<f64>(bad_key, tols().alg).is_err());
        let malformed = "{ not json";
        assert!(matches!(
            algebra_from_json::<f64>(malformed, tols().alg),
            Err(Error::Json(_))
        ));
    }

    #[test]
    fn cochain_roundtrip_and_rejection() {
        let c = zoo::mass_cochain::<f64>();
        let doc = cochain_to_doc(&c);
        let back = cochain_from_doc::<f64>(&doc, 3).unwrap();
        assert_eq!(back.matrix(), c.matrix());
        let bad = CochainDoc {
            entries: vec![CochainEntryDoc {
                i: 2,
                j: 1,
                value: 1.0,
            }],
        };
        assert!(cochain_from_doc::<f64>(&bad, 3).is_err());
    }

    #[test]
    fn word_doc_checks_letter_lengths() {
        let doc = WordDoc {
            letters: vec![vec![1.0, 2.0], vec![3.0]],
        };
        assert!(word_from_doc::<f64>(&doc, 2).is_err());
        let ok = WordDoc {
            letters: vec![vec![1.0, 2.0]],
        };
        assert_eq!(word_from_doc::<f64>(&ok, 2).unwrap().len(), 1);
    }

    #[test]
    fn rep_roundtrip() {
        let rep = zoo::torus_rep::<f64>();
        let doc = rep_to_doc(&rep);
        let back = rep_from_doc::<f64>(&doc, &zoo::abelian(2), tols().alg).unwrap();
        assert_eq!(back.dim_rep(), 4);
    }

    #[test]
    fn fixture_roundtrip() {
        for fx in [
            zoo::translations_fixture::<f64>(),
            zoo::trivial_pair_fixture(),
        ] {
            let doc = fixture_to_doc(&fx);
            let back = fixture_from_doc::<f64>(&doc, &tols()).unwrap();
            assert_eq!(back.phase_dim(), fx.phase_dim());
            assert_eq!(back.algebra().dim(), fx.algebra().dim());
        }
    }
}
