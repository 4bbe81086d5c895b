from widgets.bundle.framing import (
    CircleBundle,
    FramingBit,
    epsilon_of_base,
    flip,
    flip_delta,
    known_circle_bundles,
    pullback_bundle,
    pullback_index,
    pullback_total,
    tunnel_index,
    tunnel_sum,
)
from widgets.bundle.smale_barden import (
    NOT_REALIZABLE,
    classify_6mfd,
    in_circle_action_grammar,
    smale_barden_decompose,
)

__all__ = [
    "NOT_REALIZABLE",
    "CircleBundle",
    "FramingBit",
    "classify_6mfd",
    "epsilon_of_base",
    "flip",
    "flip_delta",
    "in_circle_action_grammar",
    "known_circle_bundles",
    "pullback_bundle",
    "pullback_index",
    "pullback_total",
    "smale_barden_decompose",
    "tunnel_index",
    "tunnel_sum",
]
