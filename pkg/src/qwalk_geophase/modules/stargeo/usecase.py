"""
Star geometry use case orchestration layer.
"""

from typing import List, Optional

import numpy as np

from ...shared.utils.export_utils import Column, RunOutcome
from ..geophase.schemas import PureCurve
from ..geophase.services import get_geophase_service
from .schemas import GeodesicRequest, NpcRequest, StarsRequest
from .services import get_star_geometry_service, star_bloch_vectors


class StarGeometryUseCase:
    """Use case for orchestrating star-geometry runs."""

    def __init__(self):
        """Initialize star geometry use case."""
        self.service = get_star_geometry_service()
        self.geophase = get_geophase_service()

    def geodesic(self, request: GeodesicRequest, workers: Optional[int] = None) -> RunOutcome:
        """Star circles of the canonical geodesic with their closed-form radii."""
        psi1, psi2 = self.service.canonical_endpoints(request.dim, request.theta)
        decomposition = self.service.geodesic_decompose(
            psi1, psi2, request.samples, request.jump_ratio
        )
        rows = []
        for k, curve in enumerate(decomposition.curves):
            for s, p in zip(curve.params, curve.points):
                rows.append([k, float(s), p[0], p[1], p[2]])

        fitted = np.array([f.radius for f in decomposition.fits])
        radius_error = float(np.max(np.abs(fitted - decomposition.radii)))
        plane = max(f.plane_residual for f in decomposition.fits)
        return RunOutcome(
            headline=(
                f"{len(decomposition.curves)} star circles, "
                f"radius error {radius_error:.3g}, plane residual {plane:.3g}"
            ),
            columns=[("curve", ""), ("s", "rad"), ("x", ""), ("y", ""), ("z", "")],
            rows=rows,
            result={
                "radii": decomposition.radii,
                "radius_error": radius_error,
                "plane_residual": plane,
                "pairing": decomposition.pairing,
                "self_dual": decomposition.self_dual,
                "reflection_residual": decomposition.reflection_residual(),
            },
        )

    def stars(self, request: StarsRequest, workers: Optional[int] = None) -> RunOutcome:
        """Bloch vectors of the Majorana stars of a state."""
        star_set = self.service.state_to_stars(request.state())
        points = star_bloch_vectors(star_set)
        return RunOutcome(
            headline=f"{len(star_set)} stars",
            columns=[("star", ""), ("x", ""), ("y", ""), ("z", ""), ("at_infinity", "bool")],
            rows=[
                [k, p[0], p[1], p[2], bool(flag)]
                for k, (p, flag) in enumerate(zip(points, star_set.at_infinity))
            ],
            result={"stars": len(star_set)},
        )

    def _npc_curve(self, request: NpcRequest) -> PureCurve:
        if request.family == "one":
            return self.service.npc_family_one(request.theta, request.samples)
        if request.family == "two":
            return self.service.npc_family_two(request.theta, request.chi, request.samples)
        s = np.linspace(0.0, request.theta, request.samples)
        eta, gamma = self.service.npc_dual_angles(request.theta, s)
        psi1 = np.array([1.0, 0.0, 0.0])
        psi2 = np.array([np.cos(request.theta), np.sin(request.theta), 0.0])
        unitary = self.service.degenerate_mapping_unitary(psi1, psi2)
        return self.service.npc_from_dual_curves(s, eta, gamma, request.theta, unitary)

    def npc(self, request: NpcRequest, workers: Optional[int] = None) -> RunOutcome:
        """Null phase curve with amplitudes, star tracks and the Bargmann test."""
        curve = self._npc_curve(request)
        check = self.service.npc_check(curve, request.triples)
        phase = self.geophase.gp_curve(curve)

        columns: List[Column] = [("s", "rad")]
        for i in range(curve.dim):
            columns += [(f"re_c{i}", ""), (f"im_c{i}", "")]
        for k in range(curve.dim - 1):
            columns += [(f"star{k}_x", ""), (f"star{k}_y", ""), (f"star{k}_z", "")]
        rows = []
        for s, state in zip(curve.params, curve.states):
            row = [float(s)]
            for c in state:
                row += [c.real, c.imag]
            for p in star_bloch_vectors(self.service.state_to_stars(state)):
                row += [p[0], p[1], p[2]]
            rows.append(row)

        verdict = "yes" if check.is_null_phase else "no"
        return RunOutcome(
            headline=(
                f"null phase curve: {verdict} (min Re D3 = {check.min_real:.6g}, "
                f"max |Im D3| = {check.max_imag:.3g}), GP = {phase:.3g}"
            ),
            columns=columns,
            rows=rows,
            result={**check.model_dump(), "gp": phase},
        )
