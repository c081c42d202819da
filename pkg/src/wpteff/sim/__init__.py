from .engine import (
    OPPORTUNISTIC,
    ROUND_ROBIN,
    SimConfig,
    SimStats,
    resolve_threads,
    run_simulation,
    select_opportunistic,
    select_round_robin,
    slot_powers,
)
from .stats import growth_fit, ks_statistic, transfer_efficiency
