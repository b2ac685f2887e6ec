"""
Geometric phase use case orchestration layer.
"""

import math
from typing import Optional

import numpy as np

from ...shared.utils.angle_utils import phase_distance, wrap_phase
from ...shared.utils.export_utils import RunOutcome
from ..stargeo.services import get_star_geometry_service
from .schemas import (
    GpMixedRequest,
    GpRequest,
    PureCurve,
    UhlmannRequest,
    WeakValueRequest,
)
from .services import bloch_state, get_geophase_service, sigma_dot

PAULI_AXES = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))


def _axis(theta: float, phi: float) -> np.ndarray:
    return np.array(
        [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
    )


class GeometricPhaseUseCase:
    """Use case for orchestrating geometric-phase runs."""

    def __init__(self):
        """Initialize geometric phase use case."""
        self.service = get_geophase_service()
        self.stars = get_star_geometry_service()

    def gp(self, request: GpRequest, workers: Optional[int] = None) -> RunOutcome:
        """Pure-state phase of a geodesic, a Bloch circle or the Pauli triangle.

        Each curve carries a closed-form reference value: zero along a
        geodesic, minus half the enclosed solid angle otherwise.
        """
        samples = request.samples or self.service.samples
        if request.curve == "geodesic":
            psi1, psi2 = self.stars.canonical_endpoints(request.dim, request.theta)
            value = self.service.gp_curve(
                self.stars.geodesic(psi1, psi2, samples), request.method
            )
            expected = 0.0
        elif request.curve == "circle":
            phi = np.linspace(0.0, 2.0 * math.pi, samples)
            states = np.array([bloch_state(_axis(request.theta, p)) for p in phi])
            value = self.service.gp_curve(PureCurve.from_states(phi, states), request.method)
            expected = wrap_phase(-math.pi * (1.0 - math.cos(request.theta)))
        else:
            value = self.service.gp_discrete([bloch_state(a) for a in PAULI_AXES])
            expected = -0.5 * self.service.strackee_solid_angle(*PAULI_AXES)

        error = phase_distance(value, expected)
        return RunOutcome(
            headline=f"{value:.10f}",
            columns=[("gp", "rad"), ("expected", "rad"), ("error", "rad")],
            rows=[[value, expected, error]],
            result={"gp": value, "expected": expected, "error": error, "curve": request.curve},
        )

    def gp_mixed(self, request: GpMixedRequest, workers: Optional[int] = None) -> RunOutcome:
        """Mixed-state phase of a precessing or dephasing qubit against its closed form."""
        samples = request.samples or self.service.samples
        if request.kind == "unitary":
            _, rho0, us = self.service.precession_path(request.theta, request.r, samples)
            mixed = self.service.gp_mixed_unitary(rho0, us)
            value = mixed.phase
            expected = self.service.mixed_precession_gp(request.r, request.theta)
            # closed form is defined modulo pi
            error = min(
                phase_distance(value, expected), phase_distance(value, expected + math.pi)
            )
            result = {"visibility": mixed.visibility, "degenerate": mixed.degenerate}
            columns = [("phase", "rad"), ("closed_form", "rad"), ("error", "rad")]
            rows = [[value, expected, error]]
        else:
            trajectory = self.service.dephasing_trajectory(
                request.theta, request.eta, request.lam, samples
            )
            value = self.service.gp_mixed_nonunitary(trajectory)
            expected = self.service.dephasing_gp_exact(request.theta, request.eta, request.lam)
            first = self.service.dephasing_gp_first_order(
                request.theta, request.eta, request.lam
            )
            error = phase_distance(value, expected)
            result = {"first_order": first}
            columns = [
                ("phase", "rad"),
                ("exact", "rad"),
                ("first_order", "rad"),
                ("error", "rad"),
            ]
            rows = [[value, expected, first, error]]

        result.update({"phase": value, "expected": expected, "error": error})
        return RunOutcome(
            headline=f"{value:.10f}", columns=columns, rows=rows, result=result
        )

    def uhlmann(self, request: UhlmannRequest, workers: Optional[int] = None) -> RunOutcome:
        """Uhlmann phase at one tau or along a tau sweep."""
        n = (math.sin(request.theta), 0.0, math.cos(request.theta))
        taus = request.taus if request.taus is not None else [request.tau]
        results = [self.service.uhlmann_phase_qubit(request.r, n, tau) for tau in taus]
        continued = sum(r.pole_continued for r in results)
        if len(results) == 1:
            headline = f"{results[0].value:.10f}"
        else:
            headline = f"{len(results)} points, {continued} pole continuations"
        return RunOutcome(
            headline=headline,
            columns=[("tau", "rad"), ("phase", "rad"), ("denominator", ""), ("pole", "bool")],
            rows=[
                [tau, r.value, r.denominator, r.pole_continued]
                for tau, r in zip(taus, results)
            ],
            result={"phase": results[0].value, "pole_continued": continued},
        )

    def weakvalue(self, request: WeakValueRequest, workers: Optional[int] = None) -> RunOutcome:
        """Weak value of q.sigma, its Gaussian pointer shifts and a qubit-pointer readout."""
        n = _axis(request.pre_theta, request.pre_phi)
        m = _axis(request.post_theta, request.post_phi)
        q = _axis(request.obs_theta, request.obs_phi)
        pre, post, obs = bloch_state(n), bloch_state(m), sigma_dot(q)

        z = self.service.weak_value(pre, post, obs)
        closed = self.service.weak_value_pauli(q, n, m)
        dq, dp = self.service.pointer_shifts(z, request.kappa, request.sigma)
        phase = self.service.gp_from_pointer(dq, dp, request.sigma)
        readout = self.service.qubit_pointer_readout(
            pre, post, obs, (0.0, 0.0, 1.0), (1.0, 0.0, 0.0), request.kappa
        )
        rows = [
            ["weak_value", z.real, z.imag],
            ["closed_form", closed.real, closed.imag],
            ["qubit_pointer", readout.weak_value.real, readout.weak_value.imag],
            ["pointer_shift", dq, dp],
        ]
        return RunOutcome(
            headline=f"A_w = {z.real:.10f}{z.imag:+.10f}i, arg = {phase:.10f}",
            columns=[("quantity", ""), ("real", ""), ("imag", "")],
            rows=rows,
            result={
                "weak_value": [z.real, z.imag],
                "closed_form_error": abs(z - closed),
                "pointer_phase": phase,
                "qubit_pointer_error": abs(readout.weak_value - z),
            },
        )
