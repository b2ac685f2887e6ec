"""
Topology use case orchestration layer.
"""

from typing import List, Optional

import numpy as np

from ...shared.utils.export_utils import Column, RunOutcome
from .schemas import (
    ChernRequest,
    Edge1dRequest,
    Edge2dRequest,
    EdgeSpectrum,
    ExceptionalPointRequest,
    PhaseDiagram,
    RealspaceRequest,
    SshRequest,
    WindingRequest,
)
from .services import get_topo_service

PHASE_COLUMNS: List[Column] = [
    ("theta1", "rad"),
    ("theta2", "rad"),
    ("gamma", ""),
    ("gamma_y", ""),
    ("invariant", ""),
    ("failed", "bool"),
]


def _phase_rows(points: PhaseDiagram) -> List[list]:
    return [[p.theta1, p.theta2, p.gamma, p.gamma_y, p.invariant, p.failed] for p in points]


def _edge_summary(spectrum: EdgeSpectrum) -> dict:
    return {
        "midgap": spectrum.midgap_count,
        "edge_states": int(len(spectrum.edge_states)),
        "isolated": spectrum.isolated,
        "walls": list(spectrum.walls),
    }


class TopoUseCase:
    """Use case for orchestrating topological runs."""

    def __init__(self):
        """Initialize topology use case."""
        self.service = get_topo_service()

    def winding(self, request: WindingRequest, workers: Optional[int] = None) -> RunOutcome:
        """Winding number at one point, or a phase diagram when sweep values are given.

        A single point is also evaluated on a refined grid so that
        non-integer values above gamma_c can be judged for convergence.
        """
        if request.is_sweep:
            points = self.service.phase_diagram_1d(
                request.theta1s or [request.theta1],
                request.theta2s or [request.theta2],
                request.gammas or [request.gamma],
                request.kcount,
                workers,
            )
            failed = sum(p.failed for p in points)
            return RunOutcome(
                headline=f"{len(points)} points, {failed} without a gap",
                columns=PHASE_COLUMNS,
                rows=_phase_rows(points),
                result={"points": len(points), "failed": failed},
            )

        kcount = request.kcount or self.service.kcount
        result = self.service.ssq_winding(
            request.theta1, request.theta2, request.gamma, kcount, request.biorthogonal
        )
        refined = self.service.ssq_winding(
            request.theta1, request.theta2, request.gamma, 2 * kcount - 1, request.biorthogonal
        )
        return RunOutcome(
            headline=f"W = {result.value:.6f}",
            columns=[
                ("theta1", "rad"),
                ("theta2", "rad"),
                ("gamma", ""),
                ("kcount", ""),
                ("winding", ""),
                ("winding_imag", ""),
            ],
            rows=[
                [request.theta1, request.theta2, request.gamma, r.kcount, r.value, r.imag]
                for r in (result, refined)
            ],
            result={
                "winding": result.value,
                "winding_refined": refined.value,
                "dvector": result.dvector,
                "integer_gap": result.integer_gap,
            },
        )

    def chern(self, request: ChernRequest, workers: Optional[int] = None) -> RunOutcome:
        """Chern number at one point, or over a (theta1, theta2, gamma_x) grid."""
        if request.is_sweep:
            points = self.service.chern_sweep(
                request.theta1s or [request.theta1],
                request.theta2s or [request.theta2],
                request.gamma_xs or [request.gamma_x],
                request.gamma_y,
                request.grid,
                request.full_angle,
                workers,
            )
            failed = sum(p.failed for p in points)
            return RunOutcome(
                headline=f"{len(points)} points, {failed} without a gap",
                columns=PHASE_COLUMNS,
                rows=_phase_rows(points),
                result={"points": len(points), "failed": failed},
            )

        chern = self.service.chern_walk(
            request.theta1,
            request.theta2,
            request.gamma_x,
            request.gamma_y,
            request.grid,
            request.full_angle,
        )
        kx, ky = np.meshgrid(np.arange(chern.grid[0]), np.arange(chern.grid[1]), indexing="ij")
        return RunOutcome(
            headline=f"C = {chern.value:+d}",
            columns=[("ix", "index"), ("iy", "index"), ("field", "rad")],
            rows=[
                [int(i), int(j), float(f)]
                for i, j, f in zip(kx.ravel(), ky.ravel(), chern.field.ravel())
            ],
            result={"chern": chern.value, "grid": list(chern.grid), "trivial": chern.trivial},
        )

    def realspace(self, request: RealspaceRequest, workers: Optional[int] = None) -> RunOutcome:
        """Mean displacement after ``steps`` detections, or its theta1 sweep."""
        if request.theta1s is not None:
            pairs = self.service.realspace_sweep(
                request.theta1s,
                request.theta2,
                request.p_measure,
                request.steps,
                request.size,
                workers,
            )
            return RunOutcome(
                headline=f"{len(pairs)} points",
                columns=[("theta1", "rad"), ("theta2", "rad"), ("displacement", "site")],
                rows=[[t1, request.theta2, d.value] for t1, d in pairs],
                result={"points": len(pairs)},
            )

        disp = self.service.winding_realspace(
            request.theta1, request.theta2, request.p_measure, request.steps, request.size
        )
        return RunOutcome(
            headline=f"mean displacement = {disp.value:.6f}",
            columns=[("step", ""), ("displacement", "site")],
            rows=[[i + 1, float(v)] for i, v in enumerate(disp.partial)],
            result={"displacement": disp.value, "detected": disp.detected},
        )

    def edge1d(self, request: Edge1dRequest, workers: Optional[int] = None) -> RunOutcome:
        """Spectrum and localization of the two-domain chain."""
        spectrum = self.service.edge_spectrum_1d(
            (request.inner_theta1, request.inner_theta2),
            (request.outer_theta1, request.outer_theta2),
            request.gamma,
            request.size,
            request.half_width,
        )
        rows = [
            [i, lam.real, lam.imag, e.real, e.imag, ipr, wall, mid, loc]
            for i, (lam, e, ipr, wall, mid, loc) in enumerate(
                zip(
                    spectrum.eigenvalues,
                    spectrum.energies,
                    spectrum.ipr,
                    spectrum.wall_weight,
                    spectrum.midgap,
                    spectrum.localized,
                )
            )
        ]
        summary = _edge_summary(spectrum)
        return RunOutcome(
            headline=self._edge_headline(summary),
            columns=[
                ("index", ""),
                ("re_lambda", ""),
                ("im_lambda", ""),
                ("re_e", "rad"),
                ("im_e", "rad"),
                ("ipr", ""),
                ("wall_weight", ""),
                ("midgap", "bool"),
                ("localized", "bool"),
            ],
            rows=rows,
            result=summary,
        )

    def edge2d(self, request: Edge2dRequest, workers: Optional[int] = None) -> RunOutcome:
        """Strip bands against kx with edge flags."""
        spectrum = self.service.edge_bands_2d(
            (request.inner_theta1, request.inner_theta2),
            (request.outer_theta1, request.outer_theta2),
            request.gamma_x,
            request.gamma_y,
            request.size_y,
            request.kx_count,
            request.half_width,
            request.full_angle,
            workers=workers,
        )
        rows = []
        for i, kx in enumerate(spectrum.kx):
            for band in range(spectrum.energies.shape[1]):
                e = spectrum.energies[i, band]
                rows.append(
                    [
                        float(kx),
                        band,
                        e.real,
                        e.imag,
                        spectrum.ipr[i, band],
                        spectrum.wall_weight[i, band],
                        spectrum.midgap[i, band],
                        spectrum.localized[i, band],
                    ]
                )
        summary = _edge_summary(spectrum)
        return RunOutcome(
            headline=self._edge_headline(summary),
            columns=[
                ("kx", "rad"),
                ("band", ""),
                ("re_e", "rad"),
                ("im_e", "rad"),
                ("ipr", ""),
                ("wall_weight", ""),
                ("midgap", "bool"),
                ("localized", "bool"),
            ],
            rows=rows,
            result=summary,
        )

    @staticmethod
    def _edge_headline(summary: dict) -> str:
        text = f"{summary['edge_states']} localized mid-gap states of {summary['midgap']}"
        if not summary["isolated"]:
            text += " (edge states not isolated)"
        return text

    def ssh(self, request: SshRequest, workers: Optional[int] = None) -> RunOutcome:
        """Open-chain spectrum, zero modes and bulk winding of the SSH chain."""
        report = self.service.ssh_reference(
            request.v, request.w, request.cells, request.open_chain, request.kcount
        )
        winding = "undefined (gapless)" if report.winding is None else f"{report.winding:.6f}"
        polarization = [] if report.polarization is None else report.polarization.tolist()
        return RunOutcome(
            headline=f"{report.zero_mode_count} zero modes, W = {winding}",
            columns=[("index", ""), ("energy", "hopping")],
            rows=[[i, float(e)] for i, e in enumerate(report.spectrum)],
            result={
                "zero_modes": report.zero_mode_count,
                "winding": report.winding,
                "gap": report.gap,
                "polarization": polarization,
            },
        )

    def exceptional_point(
        self, request: ExceptionalPointRequest, workers: Optional[int] = None
    ) -> RunOutcome:
        """Eigenvalue spread and eigenvector conditioning across beta."""
        betas = np.linspace(request.beta_min, request.beta_max, request.points)
        report = self.service.exceptional_point_demo(betas)
        columns: List[Column] = [("beta", "")]
        for i in range(3):
            columns += [(f"re_lambda{i}", ""), (f"im_lambda{i}", "")]
        columns += [("spread", ""), ("condition", "")]
        rows = []
        for beta, lam, spread, cond in zip(
            report.beta, report.eigenvalues, report.spread, report.condition
        ):
            row = [float(beta)]
            for value in lam:
                row += [value.real, value.imag]
            rows.append(row + [spread, cond])
        worst = int(np.argmin(report.spread))
        return RunOutcome(
            headline=(
                f"smallest spread {report.spread[worst]:.3g} "
                f"at beta = {report.beta[worst]:.6g}"
            ),
            columns=columns,
            rows=rows,
            result={"beta_min_spread": float(report.beta[worst])},
        )

