"""Exception hierarchy shared by every module.

All errors derive from :class:`GeometryError` (a ``ValueError``) so callers
that only care about "bad input" can catch one type. The CLI serializes the
class name as the machine-readable error code.
"""


class GeometryError(ValueError):
    @property
    def code(self) -> str:
        return type(self).__name__


# model space
class InvalidCurvature(GeometryError):
    pass


class PointOutsideModel(GeometryError):
    pass


class DegenerateSegment(GeometryError):
    pass


class DegenerateLine(GeometryError):
    pass


class DegenerateAngle(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class TriangleInequalityViolated(GeometryError):
    pass


# domain
class SelfIntersecting(GeometryError):
    pass


class DuplicateVertex(GeometryError):
    pass


class CollinearDegenerate(GeometryError):
    pass


class TooFewVertices(GeometryError):
    pass


class TriangulationFailed(GeometryError):
    pass


# intrinsic geodesics
class PointOutsideDomain(GeometryError):
    pass


class ArclengthOutOfRange(GeometryError):
    pass


# verifier
class ScaleTooLarge(GeometryError):
    pass
