from ._bounds import projection_bounds, witness_bound
from ._hankel import hankel_bounds
from ._norms import dirichlet_norm, schatten_norm

__all__ = ["schatten_norm", "dirichlet_norm", "projection_bounds", "witness_bound", "hankel_bounds"]
