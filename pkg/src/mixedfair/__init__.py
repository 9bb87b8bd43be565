"""Fair allocation of indivisible items that may be goods for some agents and chores for others."""
from .contiguous import (FractionalAllocation, MixedCake, cake_value, connected_prop1, is_contiguous,
                         moving_knife)
from .discrete import (AwStep, AwTrace, EnvyGraph, InvariantError, double_round_robin, envy_graph_allocate,
                       generalized_adjusted_winner, naive_round_robin, serial_dictatorship)
from .fairness import (FairnessReport, Property, compute_rrs, is_ef1, is_efx, is_envy_free,
                       is_pareto_optimal, is_prop1, is_proportional)
from .kernels import BACKEND
from .model import (Allocation, Instance, UtilityOracle, additive_oracle, bundle_utility,
                    check_double_monotonicity, synthetic_doubly_monotonic)
from .oracle import (BudgetExceeded, EnumerationBudget, enumerate_allocations, exists_allocation,
                     pareto_frontier)

__version__ = "0.1.0"
