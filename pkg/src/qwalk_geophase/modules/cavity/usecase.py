"""
Cavity use case orchestration layer.
"""

import math
from typing import Any, Dict, List, Optional

from ...shared.utils.angle_utils import wrap_phase
from ...shared.utils.export_utils import Column, RunOutcome
from .schemas import CavityRequest, RateRow
from .services import get_cavity_service

RATE_COLUMNS: List[Column] = [
    ("omega_c", "rad/s"),
    ("gamma_down", "1/s"),
    ("gamma_up", "1/s"),
    ("A", "1/s"),
    ("B", "1/s"),
    ("phi_inertial", "rad"),
    ("phi_noninertial", "rad"),
    ("n", ""),
]


def _rate_row(row: RateRow) -> list:
    return [getattr(row, name) for name, _ in RATE_COLUMNS]


class CavityUseCase:
    """Use case for orchestrating cavity runs."""

    def __init__(self):
        """Initialize cavity use case."""
        self.service = get_cavity_service()

    def cavity(self, request: CavityRequest, workers: Optional[int] = None) -> RunOutcome:
        """Decay rates and the inertial/non-inertial phase split of the orbiting atom.

        With ``omega_cs`` the rates are swept over cavity frequencies.
        Otherwise one configuration is evaluated, optionally with the
        quadrature phase, the trajectory phase and the n-scaling slopes.

        Args:
            request: Cavity parameters
            workers: Worker count for the sweep

        Returns:
            RunOutcome with one rate row per cavity frequency
        """
        params = request.params()
        regime = self.service.regime(params)

        if request.omega_cs:
            rows = self.service.rate_sweep(params, request.omega_cs, workers)
            return RunOutcome(
                headline=f"{regime.value} regime, {len(rows)} cavity frequencies",
                columns=RATE_COLUMNS,
                rows=[_rate_row(r) for r in rows],
                result={"regime": regime.value, "points": len(rows)},
            )

        split = self.service.gp_regimes(params)
        row = self.service.rate_sweep(params, [params.omega_c], workers=1)[0]
        result: Dict[str, Any] = {
            "regime": regime.value,
            "omega_c": params.omega_c,
            "eta": params.eta,
            "zeta": params.zeta,
            "acceleration": params.acceleration,
            "unitary": split.unitary,
            "phi_inertial": split.inertial,
            "phi_noninertial": split.noninertial,
            "ratio": split.ratio,
            "validity": split.validity,
        }

        if request.exact:
            rates = self.service.rates(params)
            exact = self.service.gp_exact(
                rates.A, rates.B, params.Omega0, params.theta, params.period
            )
            result["gp_exact"] = exact
            result["nonunitary_exact"] = exact - split.unitary
            result["gp_trajectory"] = self.service.gp_trajectory_numeric(
                rates.A, rates.B, params.Omega0, params.theta, params.period
            )
            result["gp_exact_wrapped"] = wrap_phase(exact)

        if request.ns:
            inertial, noninertial = self.service.n_scaling(params, request.ns)
            result["slope_inertial"] = inertial
            result["slope_noninertial"] = noninertial

        ratio = "inf" if math.isinf(split.ratio) else f"{split.ratio:.6g}"
        return RunOutcome(
            headline=(
                f"{regime.value} regime: phi_inertial = {split.inertial:.6g}, "
                f"phi_noninertial = {split.noninertial:.6g}, ratio = {ratio}"
            ),
            columns=RATE_COLUMNS,
            rows=[_rate_row(row)],
            result=result,
        )
