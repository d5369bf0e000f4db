use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("energy must be positive for scattering, got {0}")]
    NonPositiveEnergy(f64),
    #[error("wavenumber must be positive, got {0}")]
    NonPositiveK(f64),
    #[error("potential is not symmetric: |V(x) - V(-x)| = {deviation:e} at sample {index}")]
    AsymmetricPotential { index: usize, deviation: f64 },
    #[error("potential sample {0} is not finite")]
    NonFiniteSample(usize),
    #[error("sample grid is not uniform over [-a, a] (sample {0})")]
    NonUniformGrid(usize),
    #[error("a delta potential has no pointwise values")]
    DeltaNotSamplable,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("solution magnitude exceeded 1e150 at x = {0}")]
    Overflow(f64),
    #[error("transfer matrix entry T22 vanished (|T22| = {0:e})")]
    DegenerateTransfer(f64),
    #[error("amplitude system is singular")]
    SingularSystem,
    #[error("wavefunction has a non-negligible imaginary part")]
    ComplexWavefunction,
    #[error("wavefunction vanishes at every grid point")]
    AllMasked,
    #[error("perturbed wavefunction has a node near x = {0}")]
    NodeCollision(f64),
    #[error("t = {0} exceeds the double-precision ceiling t <= 6")]
    TTooLarge(f64),
    #[error("quadrature order {0} is below the minimum of 64")]
    QuadOrderTooSmall(usize),
    #[error("eigenvalue {0:e} is out of [0, 1] beyond tolerance")]
    EigenvalueOutOfRange(f64),
    #[error("eigenvalue {0} is numerically 1")]
    EigenvalueAtOne(f64),
    #[error("tau = {0} is not above 1/2, where the odd-case comparison potential is singular")]
    TauTooSmall(f64),
    #[error("Toeplitz matrix is not numerically positive definite at size {0}")]
    NotPositiveDefinite(usize),
}
