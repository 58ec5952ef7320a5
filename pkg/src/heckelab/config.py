"""Run configuration: budgets and deterministic seeding.

Every randomized subroutine (modulus search, root splitting, rho
factoring, point sampling) draws from a random.Random seeded through a
RunConfig, so identical configurations reproduce identical output
byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace


@dataclass
class RunConfig:
    seed: int = 0
    # factoring
    trial_division_bound: int = 10**6
    rho_iterations: int = 10**7
    # field towers
    max_extension_degree: int = 200
    # point counting
    naive_count_budget: int = 10**7
    bsgs_count_budget: int = 10**18
    # discrete-log tables (Zech logarithms) are built for fields up to this size
    table_field_limit: int = 4 * 10**6
    # enumeration
    enumeration_budget: int = 10**7
    solution_budget: int = 10**6
    # isogeny path search
    path_depth: int = 6
    output_format: str = "text"

    def rng(self, purpose: str) -> random.Random:
        """Child generator whose stream depends only on (seed, purpose)."""
        return random.Random(f"{self.seed}:{purpose}")

    def with_seed(self, seed: int) -> "RunConfig":
        return replace(self, seed=seed)


DEFAULT_CONFIG = RunConfig()
