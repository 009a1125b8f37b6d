"""Exact rational linear algebra for degenerate Whittaker structures on gl_n."""

from .errors import (AmbientMismatchError, CompositionTooShortError,
                     DomainError, HypothesisViolatedError, InvalidPairError,
                     NonCommutingError, NotCompatibleError, NotDominatedError,
                     NotGradedError, NotInStabilizerError, NotNilpotentError,
                     NotPLError, PerturbationNotFoundError,
                     PerturbationUnverifiedError, RegularityFailureError,
                     ZeroElementError)
from .exactlin import QMatrix, Subspace, jordan_type, kernel, rank, rat_str
from .partitions import (Composition, Partition, compositions_of,
                         dominance_leq, partitions_of, split_index)
from .gln import (LieElement, Sl2Triple, ad_matrix, bracket, centralizer,
                  is_neutral, jordan_chains, jordan_matrix, neutral_h,
                  sl2_complete)
from .grading import (GradedDecomposition, deligne_eZ_filtration,
                      deligne_filtration, heisenberg_data, weight_filtration,
                      weight_space)
from .whittaker import (ChainStage, DeformationChain, NeutralDecomposition,
                        PerturbationData, WhittakerPair, build_chain,
                        choose_m, critical_numbers, greedy_lagrangian,
                        levi_relation, lr_at, mw_decompose, omega_value,
                        preorder_geq, search_perturbation, uvw_at)
from .glmain import DegenerationWitness, construct, two_blocks
from .principal import (PLRootSystem, SimpleSystem, is_principal,
                        pl_support, plroot_system, principal_dominator,
                        principal_element)
from .mirabolic import (MirabolicSetup, final_stage_shape, hom_split_check,
                        make_setup, verify_suite)

__all__ = [name for name in dir() if not name.startswith("_")]
