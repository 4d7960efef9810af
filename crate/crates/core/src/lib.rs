//! Exact parameters of entanglement-assisted quantum error-correcting codes
//! built from one-point codes on the Hermitian curve `x^{q+1} = y^q + y`.
//!
//! The central quantity is `Delta(m)`, the dimension of the Hermitian hull of
//! `C(m)`, from which the entanglement `c = n - k - Delta(m)` follows.
//!
//! ```
//! use hermitian_eaqecc::{eaqecc_params, CurveCtx};
//!
//! let ctx = CurveCtx::new(3, 1).unwrap();
//! let p = eaqecc_params(&ctx, 14).unwrap();
//! assert_eq!(p.to_string(), "[[27, 6, 13; 9]]_3");
//! ```

pub mod curve;
pub mod delta;
pub mod error;
pub mod field;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod params;
pub mod reduction;

pub use curve::{AffinePoint, CurveCtx, Monomial};
pub use delta::{
    delta, delta_with, phi_basis, reduction_bound, residue_class_census, Algorithm, DeltaResult,
    DeltaTable, Method, PhiBasis, PhiEntry,
};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem, PrimeField, PrimePower};
pub use params::{
    classical_dims, designed_distance, eaqecc_params, exceeds_gv, gv_exceeding_range, gv_holds,
    params_sweep, singleton_defect, EaqeccParams, Flags, GvEvaluator, GvQuery, OrderBound,
};
pub use reduction::{
    m_hat, normalize, qth_order, qth_power_reduced, reduce_poly, Poly, ReducedPoly,
};
