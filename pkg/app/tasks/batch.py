"""Fan-out of independent work units"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from tqdm import tqdm

from app.core.config import settings
from app.core.logging import get_logger

logger = get_logger(__name__)

Item = TypeVar("Item")
Result = TypeVar("Result")


def run_batch(
    task: Callable[[Item], Result],
    items: Sequence[Item],
    workers: Optional[int] = None,
    description: str = "tasks",
) -> List[Result]:
    """Results in input order; task must be a module-level function when workers > 1"""
    workers = workers or settings.MAX_WORKERS
    logger.info("Starting batch", description=description, items=len(items), workers=workers)
    progress = tqdm(total=len(items), desc=description, disable=None, leave=False)
    try:
        if workers <= 1 or len(items) <= 1:
            results = []
            for item in items:
                results.append(task(item))
                progress.update()
            return results
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = []
            for result in pool.map(task, items):
                results.append(result)
                progress.update()
            return results
    finally:
        progress.close()
        logger.info("Finished batch", description=description)
