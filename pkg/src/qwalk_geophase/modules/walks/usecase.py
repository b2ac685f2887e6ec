"""
Walks use case orchestration layer.
"""

from typing import Optional

import numpy as np

from ...shared.utils.export_utils import RunOutcome
from .schemas import (
    BandsRequest,
    GammaCRequest,
    SymmetryRequest,
    WalkRequest,
    WalkSpec,
    WalkVariant,
)
from .services import get_walk_service


class WalksUseCase:
    """Use case for orchestrating walk runs."""

    def __init__(self):
        """Initialize walks use case."""
        self.service = get_walk_service()

    def walk(self, request: WalkRequest, workers: Optional[int] = None) -> RunOutcome:
        """Evolve a walker from the origin and tabulate the result.

        Args:
            request: Walk parameters
            workers: Unused, accepted for a uniform signature

        Returns:
            RunOutcome with the site distribution or the per-step spread
        """
        spec = request.spec()
        trajectory = self.service.evolve(
            spec,
            self.service.origin_state(spec),
            request.steps,
            record=request.table == "spread",
        )
        final_norm = float(trajectory.norms[-1])
        result = {"final_norm": final_norm, "steps": request.steps}
        sites = self.service.sites(spec)

        if spec.is_2d:
            xs, ys = np.meshgrid(*sites, indexing="ij")
            columns = [("x", "site"), ("y", "site"), ("p", "")]
            rows = [
                [int(x), int(y), float(p)]
                for x, y, p in zip(xs.ravel(), ys.ravel(), trajectory.distribution.ravel())
            ]
            headline = f"P(T) = {final_norm:.12g}"
        elif request.table == "spread":
            variances = [self.service.variance(p, sites) for p in trajectory.history]
            classical = self.service.binomial_variance(np.arange(request.steps + 1))
            columns = [
                ("t", "step"),
                ("norm", ""),
                ("variance", "site^2"),
                ("binomial", "site^2"),
            ]
            rows = [
                [t, float(n), float(v), float(c)]
                for t, (n, v, c) in enumerate(zip(trajectory.norms, variances, classical))
            ]
            regime = None
            if request.steps >= 8:
                regime = self.service.classify_norm(trajectory.norms)
            result["variance"] = variances[-1]
            result["norm_regime"] = regime.value if regime else None
            headline = f"variance = {variances[-1]:.12g}, P(T) = {final_norm:.12g}"
        else:
            variance = self.service.variance(trajectory.distribution, sites)
            columns = [("x", "site"), ("p", "")]
            rows = [[int(x), float(p)] for x, p in zip(sites, trajectory.distribution)]
            result["variance"] = variance
            headline = f"variance = {variance:.12g}, P(T) = {final_norm:.12g}"
        return RunOutcome(headline=headline, columns=columns, rows=rows, result=result)

    def bands(self, request: BandsRequest, workers: Optional[int] = None) -> RunOutcome:
        """Tabulate both quasi-energy bands over the Brillouin zone."""
        spec = request.spec()
        grid = self.service.band_grid(spec, request.kcount)
        energies = grid.quasi_energies
        k = grid.k.reshape(-1, 2) if spec.is_2d else grid.k.reshape(-1, 1)
        energies = energies.reshape(-1, 2)

        kcols = [("kx", "rad"), ("ky", "rad")] if spec.is_2d else [("k", "rad")]
        columns = kcols + [
            ("re_e_lower", "rad"),
            ("im_e_lower", "rad"),
            ("re_e_upper", "rad"),
            ("im_e_upper", "rad"),
        ]
        rows = [
            [*map(float, kk), e[0].real, e[0].imag, e[1].real, e[1].imag]
            for kk, e in zip(k, energies)
        ]
        deviation = grid.energy_deviation()
        gap = float(np.min(np.abs(np.sin(grid.energy))))
        return RunOutcome(
            headline=f"closed-form deviation = {deviation:.3g}, min |sin E| = {gap:.6g}",
            columns=columns,
            rows=rows,
            result={"energy_deviation": deviation, "min_abs_sin_e": gap},
        )

    def gamma_c(self, request: GammaCRequest, workers: Optional[int] = None) -> RunOutcome:
        """Critical gain/loss of the split-step walk."""
        critical = self.service.gamma_critical(request.theta1, request.theta2)
        headline = f"{critical.value:.4f}"
        if critical.is_complex:
            headline += f" (complex, Im = {critical.imag:.4f})"
        return RunOutcome(
            headline=headline,
            columns=[
                ("theta1", "rad"),
                ("theta2", "rad"),
                ("gamma_c", ""),
                ("gamma_c_imag", ""),
                ("is_complex", "bool"),
            ],
            rows=[
                [
                    request.theta1,
                    request.theta2,
                    critical.value,
                    critical.imag,
                    critical.is_complex,
                ]
            ],
            result=critical.model_dump(),
        )

    def symmetry(self, request: SymmetryRequest, workers: Optional[int] = None) -> RunOutcome:
        """PT or chiral symmetry of the split-step walk on the k-grid."""
        spec = WalkSpec(
            variant=WalkVariant.SSQW1D,
            theta1=request.theta1,
            theta2=request.theta2,
            gamma=request.gamma,
            size=2,
        )
        if request.symmetry == "pt":
            check = self.service.pt_check(spec, request.kcount)
        else:
            check = self.service.chiral_check(spec, request.kcount)
        k = self.service.k_grid(spec, len(check.per_k))
        verdict = "holds" if check.holds else "broken"
        phase = "unbroken" if check.exact_phase else "broken"
        return RunOutcome(
            headline=(
                f"{request.symmetry} symmetry {verdict} "
                f"(max deviation {check.max_deviation:.3g}), spectrum {phase}"
            ),
            columns=[("k", "rad"), ("holds", "bool")],
            rows=[[float(kk), bool(ok)] for kk, ok in zip(k, check.per_k)],
            result={
                "holds": check.holds,
                "max_deviation": check.max_deviation,
                "exact_phase": check.exact_phase,
            },
        )
