"""Exception types raised by the solvers."""


class SolverError(RuntimeError):
    """Base class for numerical failures at a parameter point."""


class NonUniqueSteadyStateError(SolverError):
    def __init__(self, null_dim: int):
        self.null_dim = null_dim
        super().__init__(f"non-unique steady state: null space of the Liouvillian has dimension {null_dim}")


class ConvergenceError(SolverError):
    def __init__(self, residual: float, tol: float):
        self.residual = residual
        self.tol = tol
        super().__init__(f"steady-state residual {residual:.3e} exceeds tolerance {tol:.1e}")


class IntegrationError(SolverError):
    def __init__(self, drift: float):
        self.drift = drift
        super().__init__(f"trace drifted by {drift:.3e} during integration; reduce the step size")


class InvalidStateError(ValueError):
    """Input is not a valid density matrix within tolerance."""
