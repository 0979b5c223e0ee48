from .field import Scalar, ZERO, ONE, I, scalar, adjoin_sqrt, sqrt_in_field, parse, to_text, generators
from .linalg import (Matrix, rref, rank, kernel_basis, kernel_sparse, solve, span_basis, Reducer,
                     vadd, vscale, vsum, vdot)
