from .algebra import AlgebraPresentation, validate  # noqa F401
from .catalog import catalog  # noqa F401
from .cochain import Cochain, CochainSpace, coboundary  # noqa F401
from .cohomology import cohomology, verify_exact_sequence  # noqa F401

__version__ = version = "1.0"
