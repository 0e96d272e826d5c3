"""Tightness, weak Golodness and moment-angle homology of simplicial complexes."""

__version__ = "0.1.0"

from .complex import (  # noqa: E402
    SimplicialComplex,
    build,
    f_vector,
    full_subcomplex,
    join,
    link,
    minimal_non_faces,
)
from .linalg import GF2, QQ, Field, FieldMatrix  # noqa: E402

__all__ = [
    "Field",
    "FieldMatrix",
    "GF2",
    "QQ",
    "SimplicialComplex",
    "build",
    "f_vector",
    "full_subcomplex",
    "join",
    "link",
    "minimal_non_faces",
]
