"""Equal-weight spherical designs, hyperinterpolation, needlet frames, and
transfers between regression on design nodes and Gaussian sequence models."""

from .designs import (BUNDLED_DESIGNS, CubatureRule, SphericalDesign,
                      builtin_design, cubature_integrate, defect_profile,
                      load_bundled, mz_ratio, parse_design_file,
                      reference_rule, resolve_design, strength_defect,
                      verify_design)
from .errors import ConditionError, DataError, SphereDesignError
from .harmonics import (CoefficientVector, dim_eigenspace, dim_poly_space,
                        eigenvalue, enumerate_pairs, eval_basis, pair_index,
                        zonal_kernel, zonal_sum)
from .sphere import PointSet, SpherePoint, dot, sample_uniform
from .specialfn import (gegenbauer_normalized, jacobi, jacobi_sequence,
                        std_normal_cdf)

__version__ = "0.1.0"
