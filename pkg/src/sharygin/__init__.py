"""Circle pencils, Sharygin points, oriented cycles and conic pencils, with
numerical checkers for the theorems built on them."""

__version__ = "0.1.0"
