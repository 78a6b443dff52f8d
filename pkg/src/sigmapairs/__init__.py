"""Toolkit for sigma-divisor prime pairs: quasichain generation,
checkpointed big-integer pair searches, modular residue analysis,
brute-force lemma oracles and exact-rational inequality certificates."""

from .arith import (
    DEFAULT_ROUNDS,
    Primality,
    PrimalityVerdict,
    bounded_square_part,
    gcd,
    is_prime,
    sigma_power,
)
from .certify import (
    Certificate,
    Inequality,
    Infeasible,
    LogLinearForm,
    combine,
    entails,
    form,
    known_inequalities,
    optimize,
    verify_known_combinations,
)
from .chains import (
    BelowChainStart,
    ChainState,
    NonIntegralStep,
    chain_invariant,
    chain_next,
    chain_prev,
    chain_terms,
    generate_s,
    generate_u,
    is_quasisolution,
    quadratic_identity_holds,
    start_state,
)
from .oracles import ORACLES, OracleReport
from .residues import (
    NonUnitResidue,
    PeriodNotFound,
    PreconditionViolation,
    ResidueProfile,
    check_residue_pattern,
    residue_profile,
)
from .search import (
    PairRecord,
    SearchCheckpoint,
    enumerate_seeds,
    heuristic_tail,
    load_checkpoint,
    locate_pair_index,
    search_pairs,
    square_divisor_probe,
    write_checkpoint,
)

__version__ = "0.1.0"
