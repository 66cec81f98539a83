//! Free nonsymmetric operad on one ternary generator, with Koszul signs.
//!
//! Monomials carry an implicit generator order, the preorder of their
//! vertices; every composition is normalized against it. An
//! [`OperadConfig`] fixes the generator's parity, the rewrite rules of the
//! quotient, and the cyclic action. [`OperadConfig::v`] gives the operad V
//! and [`OperadConfig::w`] its Koszul dual W.

mod config;
mod element;
mod monomial;
mod qbasis;
mod transport;

pub use config::{OperadConfig, Parity, RewriteRule, RewriteStep, TransportKind};
pub use element::OperadElement;
pub use monomial::Monomial;
pub use qbasis::{critical_pair_check, over_op, psi, q_element, q_monomial, shape, star_op, CriticalPairReport};
pub use transport::{cyclic_transport, cyclic_transport_pow, transport_free};
