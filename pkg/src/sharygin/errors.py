"""Exception hierarchy shared by every module of the kernel."""


class GeometryError(ValueError):
    """Base class for precondition violations in the geometry kernel."""


class ConcentricCircles(GeometryError):
    pass


class DegenerateImage(GeometryError):
    pass


class CenterPole(GeometryError):
    pass


class CollinearPoints(GeometryError):
    pass


class IdenticalObjects(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class PointsNotOnCircle(GeometryError):
    pass


class IntersectingCircles(GeometryError):
    pass


class OnRadicalAxis(GeometryError):
    pass


class ZeroDenominator(GeometryError):
    pass


class LineMissesCircle(GeometryError):
    pass


class InconsistentPairs(GeometryError):
    pass


class NoCommonTangentAxis(GeometryError):
    pass


class SpeedOutOfRange(GeometryError):
    pass


class OutsideDisk(GeometryError):
    pass


class NotAHyperbolicCircle(GeometryError):
    pass


class NotACircle(GeometryError):
    pass


class NoIntersection(GeometryError):
    pass


class NonGeneric(GeometryError):
    pass


class NonCentralConic(GeometryError):
    pass


class NoRealBitangent(GeometryError):
    pass


class EmptyFamily(GeometryError):
    pass


class GenerationExhausted(GeometryError):
    pass


class GammaNotAdmissible(GeometryError):
    pass


class ConicCenterOutside(GeometryError):
    pass


class SearchDiverged(GeometryError):
    pass


class ScenarioError(GeometryError):
    """Malformed scenario file; carries the 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
