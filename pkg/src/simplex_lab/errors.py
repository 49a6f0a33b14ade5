class SimplexLabError(Exception):
    pass


class UnsupportedDimension(SimplexLabError, ValueError):
    pass


class PreconditionError(SimplexLabError, ValueError):
    pass


class ContradictionError(SimplexLabError):
    """A computation disagrees with a proven classification."""


class PathFailure(SimplexLabError):
    """Newton or path tracking did not reach the requested residual."""
