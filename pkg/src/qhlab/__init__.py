"""Exact computations with quasi-hereditary algebras and exact Borel subalgebras."""

from importlib.metadata import PackageNotFoundError, version

from .algebra import Algebra, cartan_matrix, field_algebra, semisimple_algebra, tensor_algebras
from .constructions import (
    SpeciesSpec,
    TriangularSpec,
    predict_tensor_regular,
    species_algebra,
    species_borel,
    species_qh_criterion,
    species_standard_oracle,
    tensor_borel,
    tensor_qh,
    triangular_borel,
    triangular_matrix,
)
from .errors import QHLabError
from .homology import (
    BorelEmbedding,
    check_exact_borel,
    ext_table,
    induced_ext_map,
    is_homological,
    is_regular,
    is_strong,
    minimal_resolution,
    regularity_report,
)
from .modules import Embedding, Module
from .order import SimpleOrder
from .presentation import Quiver, bound_quiver_algebra, parse_presentation, path_algebra
from .qh import DeltaSystem, has_delta_filtration, heredity_chain, is_directed, is_quasi_hereditary

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.0.0"

__all__ = [
    "Algebra",
    "BorelEmbedding",
    "DeltaSystem",
    "Embedding",
    "Module",
    "QHLabError",
    "Quiver",
    "SimpleOrder",
    "SpeciesSpec",
    "TriangularSpec",
    "bound_quiver_algebra",
    "cartan_matrix",
    "check_exact_borel",
    "ext_table",
    "field_algebra",
    "has_delta_filtration",
    "heredity_chain",
    "induced_ext_map",
    "is_directed",
    "is_homological",
    "is_quasi_hereditary",
    "is_regular",
    "is_strong",
    "minimal_resolution",
    "parse_presentation",
    "path_algebra",
    "predict_tensor_regular",
    "regularity_report",
    "semisimple_algebra",
    "species_algebra",
    "species_borel",
    "species_qh_criterion",
    "species_standard_oracle",
    "tensor_algebras",
    "tensor_borel",
    "tensor_qh",
    "triangular_borel",
    "triangular_matrix",
]
