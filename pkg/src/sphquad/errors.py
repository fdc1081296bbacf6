"""Exception hierarchy shared by all engines."""


class SphquadError(Exception):
    """Base class. ``exit_code`` is what the CLI returns when it surfaces one."""

    exit_code = 2


class ParallelCircles(SphquadError):
    pass


class InfeasibleAngles(SphquadError):
    pass


class InfeasibleParameter(SphquadError):
    pass


class DegenerateConfig(SphquadError):
    pass


class DirectionBlocked(SphquadError):
    pass


class QuadrupleBoundary(DirectionBlocked):
    """Both opposite triangles contract together: four circles meet at a point."""


class BoundaryTie(SphquadError):
    pass


class AmbiguousOnBoundary(SphquadError):
    pass


class UnknownLabel(SphquadError):
    pass


class UncataloguedLabel(SphquadError):
    pass


class TargetInfeasible(SphquadError):
    pass


class SideTooLong(SphquadError):
    pass


class NotOrderZero(SphquadError):
    pass


class NoEligibleFace(SphquadError):
    pass


class LongSide(SphquadError):
    pass


class ForbiddenSide(SphquadError):
    pass


class UnknownVariant(SphquadError):
    pass


class LabelSyntaxError(SphquadError):
    pass
