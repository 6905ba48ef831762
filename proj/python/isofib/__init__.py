"""Standard isotrivial fibrations (C1 x C2)/G from finite group data.

The heavy lifting lives in the compiled extension module: finite groups,
generating vectors, Hirzebruch-Jung resolutions, surface invariants and
the K^2 versus 8 chi(O) inequality gates. `analyze` and `search` accept
the same config text as the command line tool and return JSON strings.
"""

from ._core import (  # noqa: F401
    BudgetExceeded,
    Group,
    InternalError,
    InvalidInput,
    analyze,
    cyclic,
    dihedral,
    enumerate_vectors,
    genus,
    group_from_config,
    hj_corrections,
    hj_dual,
    hj_expand,
    is_rdp,
    metacyclic,
    search,
)

__all__ = [
    "BudgetExceeded",
    "Group",
    "InternalError",
    "InvalidInput",
    "analyze",
    "cyclic",
    "dihedral",
    "enumerate_vectors",
    "genus",
    "group_from_config",
    "hj_corrections",
    "hj_dual",
    "hj_expand",
    "is_rdp",
    "metacyclic",
    "search",
]
