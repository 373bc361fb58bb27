/// Errors raised by the model, solvers and pricers.
///
/// The `Display` form is `Kind: detail`, which the CLI forwards verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("OutOfRange: {0}")]
    OutOfRange(&'static str),
    #[error("NonFinite: {0}")]
    NonFinite(&'static str),
    /// Adaptive refinement (ODE nodes or quadrature panels) exceeded its budget.
    #[error("QuadratureFailure: {0}")]
    QuadratureFailure(&'static str),
    #[error("PoleProximity: argument within 1e-6 of a tangent pole")]
    PoleProximity,
    /// The Riccati solution diverged before the requested maturity.
    #[error("OutsideDomain: moment explosion before maturity")]
    OutsideDomain,
    #[error("HorizonTooShort: no moment explosion found to bracket the domain")]
    HorizonTooShort,
    #[error("NonConvexDetected: convexity probe failed")]
    NonConvexDetected,
    #[error("NoSolution: price outside no-arbitrage bounds")]
    NoSolution,
    #[error("NearBound: price within 1e-12 of a no-arbitrage bound")]
    NearBound,
    #[error("GridMismatch: maturity is not the terminal grid node")]
    GridMismatch,
}
