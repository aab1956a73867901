//! Exact re-derivation of the intersection lemma for the lifted lune
//! circles: the lifted circle equation, its rotations by `+-2 pi/3`, the
//! 8x8 Sylvester resultant in `V`, its factorization, and the discriminant
//! of the residual quartic `Q(U)`, all over `Z[U, V, d][s]/(s^2 - 3)`.

mod lemma;
mod linalg;
mod poly;
mod upoly;

pub use lemma::{
    displayed_a, displayed_discriminant, displayed_eq1, displayed_eq2, displayed_q,
    lemma9_certificate, lifted_circle, p_factored, q_boundary_factored, q_discriminant,
    q_sos_form, q_specialize, rotate_curve, sylvester_resultant, Certificate, CertificateOptions,
    CheckResult, Direction, QuarticInV, DISCRIMINANT_CONSTANT, P_CONSTANT, SAMPLE_D2,
};
pub use linalg::{bareiss_det, sylvester_matrix};
pub use poly::{grlex_cmp, BigPoly, Monomial, RingElem, D, U, V, VAR_NAMES};
pub use upoly::{RootCount, UPoly};
