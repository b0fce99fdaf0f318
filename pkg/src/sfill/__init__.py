"""sfill: exact-arithmetic classification of minimal symplectic fillings of
small Seifert 3-manifolds via curve configurations and rational blowdowns."""

__version__ = "0.1.0"

from .cfrac import CFWord, dual_expand, eval_cf, hj_expand  # noqa: F401
from .homlattice import (  # noqa: F401
    HClass,
    HomologicalData,
    adjunction_genus0,
    isometry_equivalent,
    pair,
)
from .plumbing import (  # noqa: F401
    BlowdownTemplate,
    ConcaveCap,
    PlumbingGraph,
    SeifertData,
    build_concave_cap,
    build_star_graph,
    c_p,
    c_pq,
    gamma_pqr,
    intersection_matrix,
    is_negative_definite,
)
from .curveconfig import (  # noqa: F401
    CurveConfiguration,
    Strand,
    blow_down,
    blow_up,
    line_arrangement,
    seed_configuration,
    verify_configuration,
)
from .enumeration import (  # noqa: F401
    BudgetExhausted,
    SearchBudget,
    ambient_bound,
    count_fillings_without_second_fan,
    enumerate_fillings,
    minimal_resolution_config,
)
from .blowdown import (  # noqa: F401
    BlowdownEdge,
    BlowdownGraph,
    ChainEmbedding,
    blowdown_graph,
    find_blowdown_embeddings,
    rational_blowdown,
)
from .catalog import Catalog, CatalogEntry, build_catalog, catalog_from_json, catalog_to_json  # noqa: F401
