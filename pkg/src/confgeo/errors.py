"""Exception types shared across the package."""


class ConfgeoError(Exception):
    """Base class for all package-specific errors."""


class DomainError(ConfgeoError):
    """A chart coordinate violated its stated bound.

    Carries enough detail to report which coordinate failed and by how much.
    """

    def __init__(self, coord, value, bound, message=None):
        self.coord = coord
        self.value = value
        self.bound = bound
        if message is None:
            message = f"coordinate {coord}={value!r} outside bound {bound}"
        super().__init__(message)


class UnsupportedOperationError(ConfgeoError):
    """Requested an operation a model does not define (e.g. Schouten in 2d)."""


class SingularCoordinateError(ConfgeoError):
    """Evaluation at a coordinate singularity (axis, bolt, origin)."""


class TurningPointError(ConfgeoError):
    """A square-root quadrature was asked to cross an interior zero."""


class DegenerateConstantsError(ConfgeoError):
    """Constants of motion degenerate; the requested reduction is invalid."""


class RootBracketError(ConfgeoError):
    """Root finder could not secure or maintain a sign-change bracket."""

    def __init__(self, lo, hi, flo, fhi, message=None):
        self.bracket = (lo, hi)
        self.values = (flo, fhi)
        if message is None:
            message = (
                f"no sign change on [{lo!r}, {hi!r}]: f(lo)={flo!r}, f(hi)={fhi!r}"
            )
        super().__init__(message)
