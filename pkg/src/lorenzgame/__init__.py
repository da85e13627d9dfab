"""Cores, Lorenz stable sets and egalitarian solutions of integer cooperative games."""
from .errors import (BudgetExceededError, ContractError, GameError, GameFileError,
                     InternalConsistencyError, InvalidGameError, NotSupermodularError,
                     WorthOverflowError)
from .game import (Game, additive_game, format_coalition, is_feasible_payoff, is_imputation,
                   is_supermodular, marginal_vector, mask_of, members, random_game,
                   random_supermodular_game, reduced_game)
from .gamefile import dump_game, parse_game, read_game
from .lorenz import (dutta_ray_decomposition, egalitarian_set, lorenz_core,
                     lorenz_core_table)
from .mconvex import (CanonicalDecomposition, Tightening, canonical_decomposition,
                      canonical_decomposition_by_threshold, core_enumerate, core_membership,
                      core_violation, dec_min_by_tightening, dec_min_set_by_tightening,
                      dec_min_set_structural, find_tightening, lss)
from .orders import (DecComparison, compare_dec, compare_inc, is_dec_min, is_inc_max,
                     is_least_majorized, lorenz_dominates, lorenz_dominates_inc,
                     lorenz_filter, majorization_vector, majorized_by, sort_dec, sort_inc,
                     value_equivalent)
from .vectors import VectorSet
from .verify import (PropertyReport, check_property, verify_crgp,
                     verify_external_lorenz_stability, verify_reduced_convexity, verify_rgp)

__version__ = "0.1.0"


def fixture_path(name: str) -> str:
    """Filesystem path of a bundled example game (``"ex46.json"`` etc.)."""
    from importlib.resources import files
    return str(files(__package__) / "data" / name)
