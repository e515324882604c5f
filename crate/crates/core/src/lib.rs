//! Structure-constant toolkit for Lie algebra cohomology, symplectic group
//! cocycles, one-dimensional central extensions, coadjoint and affine
//! orbits, and flat phase-space fixtures exercising the moment-map pipeline.
//!
//! Everything is generic over the scalar type via [`scalar::Real`]
//! (`f32` or `f64`); the aliases below fix the common choices. Group
//! elements are words of exponentials, so all group-level identities are
//! evaluated with matrix exponentials of adjoint operators and verified by
//! seeded sampling against explicit tolerances.

pub mod algebra;
pub mod cocycle;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod orbits;
pub mod presymplectic;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod tol;
pub mod zoo;

pub use algebra::{Covector, GroupWord, LieAlgebra, MatrixRep, Vector};
pub use cocycle::SymplecticCocycle;
pub use cohomology::{
    ce_d1, ce_d2, h2_report, solve_coboundary, H2Report, ThreeCochain, TwoCochain,
};
pub use error::{Error, Result};
pub use extension::{affine_action, CentralExtension};
pub use fixtures::PhaseSpaceFixture;
pub use orbits::{
    affine_stabilizer, affine_symplectic_form, correspondence_check, kks_form, stabilizer,
    OrbitReport,
};
pub use presymplectic::{
    neeb_verify, phi_potential, self_hamiltonian_check, LeftInvariantTwoForm, SelfHamiltonianReport,
};
pub use report::{ClauseReport, MultiClauseReport, ProbeReport, VerificationReport};
pub use scalar::Real;
pub use tol::Tolerances;

pub type LieAlgebraF64 = LieAlgebra<f64>;
pub type VectorF64 = Vector<f64>;
pub type CovectorF64 = Covector<f64>;
pub type GroupWordF64 = GroupWord<f64>;
pub type MatrixRepF64 = MatrixRep<f64>;
pub type TwoCochainF64 = TwoCochain<f64>;
pub type SymplecticCocycleF64 = SymplecticCocycle<f64>;
pub type CentralExtensionF64 = CentralExtension<f64>;
pub type LeftInvariantTwoFormF64 = LeftInvariantTwoForm<f64>;
pub type PhaseSpaceFixtureF64 = PhaseSpaceFixture<f64>;
pub type TolerancesF64 = Tolerances<f64>;

pub type LieAlgebraF32 = LieAlgebra<f32>;
pub type VectorF32 = Vector<f32>;
pub type CovectorF32 = Covector<f32>;
pub type GroupWordF32 = GroupWord<f32>;
pub type TwoCochainF32 = TwoCochain<f32>;
pub type SymplecticCocycleF32 = SymplecticCocycle<f32>;
pub type CentralExtensionF32 = CentralExtension<f32>;
