"""tensorloci: exact classification of small tensors and their rank-one loci."""

__version__ = "0.1.0"

from .errors import TensorLociError  # noqa: F401
