"""
Ordered worker pool for independent parameter points.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Hashable, List, Optional, Sequence, Tuple, TypeVar

from ...core.config import get_settings
from ...core.logging import get_logger

logger = get_logger(__name__)

K = TypeVar("K", bound=Hashable)
R = TypeVar("R")


class SweepService:
    """Runs a function over parameter points and gathers results by sorted key.

    Results never depend on the worker count: every point is computed
    independently and the output order is the sorted order of the keys.
    """

    def __init__(self, workers: Optional[int] = None):
        """Initialize sweep service.

        Args:
            workers: Worker count (defaults to QWGP_WORKERS)
        """
        self.workers = workers or get_settings().QWGP_WORKERS

    def run(self, fn: Callable[[K], R], keys: Sequence[K]) -> List[Tuple[K, R]]:
        """Evaluate ``fn`` on every key.

        Args:
            fn: Pure function of one parameter point
            keys: Parameter points (must be sortable)

        Returns:
            (key, result) pairs in ascending key order
        """
        ordered = sorted(keys)
        logger.info("sweep started", points=len(ordered), workers=self.workers)
        if self.workers <= 1 or len(ordered) <= 1:
            results = [fn(k) for k in ordered]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(fn, ordered))
        logger.info("sweep finished", points=len(ordered))
        return list(zip(ordered, results))
