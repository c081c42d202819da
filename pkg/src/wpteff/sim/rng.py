"""Counter-based uniforms addressed by (seed, replication, purpose, ue, slot).

Each (seed, replication, purpose, ue) tuple keys its own Philox-4x64
stream; the slot index is the position inside that stream. Any slot range
can be produced directly by advancing the counter, so draws do not depend
on scheduling policy, block layout or thread count, and UE ``i`` sees the
same channel whatever the total number of UEs.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

FADING = 1
DISTANCE = 2

_OUTPUTS_PER_COUNTER = 4
_TWO_M53 = 2.0 ** -53


@lru_cache(maxsize=4096)
def stream_key(seed: int, replication: int, purpose: int, ue: int) -> tuple[int, int]:
    state = np.random.SeedSequence([seed, replication, purpose, ue]).generate_state(2, np.uint64)
    return int(state[0]), int(state[1])


def open_uniforms(seed: int, replication: int, purpose: int, ue: int,
                  start_slot: int, count: int) -> np.ndarray:
    """Uniforms in the open interval (0, 1) for slots ``start_slot .. start_slot+count-1``."""
    bitgen = np.random.Philox(key=np.array(stream_key(seed, replication, purpose, ue), dtype=np.uint64))
    skip, offset = divmod(start_slot, _OUTPUTS_PER_COUNTER)
    if skip:
        bitgen.advance(skip)
    raw = bitgen.random_raw(count + offset)[offset:]
    # top 53 bits, shifted half a step off zero
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _TWO_M53
