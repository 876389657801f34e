"""Per-state label sets used to discard partial paths that cannot matter."""
from __future__ import annotations

import warnings

from ..preference import Preference
from ..rationals import INF

DOMINANCE_MODES = ("sound", "scalar")


class _ScalarRule:
    """Textbook bi-objective pruning on (g, mu) per product state."""

    def dominance_key(self, accepted, pcs):
        return ()

    @staticmethod
    def covers(kept_g, kept_mu, g, mu):
        return kept_g <= g and kept_mu <= mu


class _CostOnlyRule:
    def dominance_key(self, accepted, pcs):
        return ()

    @staticmethod
    def covers(kept_g, kept_mu, g, mu):
        return kept_g <= g


def dominance_rule(mu, mode: str = "sound", mu_max=INF, *, cost_only_when_unbounded: bool = False):
    if mode not in DOMINANCE_MODES:
        raise ValueError(f"unknown dominance mode {mode!r}; expected one of {DOMINANCE_MODES}")
    if cost_only_when_unbounded and mu_max == INF:
        # without a budget the preference value never prunes, so only cost matters
        return _CostOnlyRule()
    if mode == "scalar":
        if not getattr(mu, "edge_additive", False):
            warnings.warn(
                "scalar dominance is only exact for edge-additive preference functions; "
                "the result may miss Pareto points",
                stacklevel=3,
            )
        return _ScalarRule()
    if isinstance(mu, Preference):
        return mu
    return Preference()  # exact-PCS dominance for a bare callable


class LabelStore:
    """Expanded labels bucketed by (product state, dominance key)."""

    __slots__ = ("rule", "buckets", "_acc_mask", "_key")

    def __init__(self, prod, rule):
        self.rule = rule
        self.buckets: dict = {}
        self._acc_mask = prod.acc_mask
        self._key = rule.dominance_key

    def key(self, state, pcs):
        return state, self._key(self._acc_mask(state), pcs)

    def covered(self, key, g, mu) -> bool:
        bucket = self.buckets.get(key)
        if not bucket:
            return False
        covers = self.rule.covers
        for kg, kmu in bucket:
            if covers(kg, kmu, g, mu):
                return True
        return False

    def add(self, key, g, mu) -> None:
        covers = self.rule.covers
        bucket = self.buckets.get(key)
        if bucket is None:
            self.buckets[key] = [(g, mu)]
            return
        # drop entries the new label makes redundant to keep buckets short
        bucket[:] = [(kg, kmu) for kg, kmu in bucket if not covers(g, mu, kg, kmu)]
        bucket.append((g, mu))
