"""Order-preserving parallel map used by the parameter sweeps."""
from concurrent.futures import ProcessPoolExecutor


def pmap(func, items, workers=None):
    """Map ``func`` over ``items``; results come back in input order.

    ``workers`` of None, 0 or 1 runs serially in-process. Otherwise a process
    pool is used, so ``func`` must be picklable (module level or a partial).
    """
    items = list(items)
    if not workers or workers == 1 or len(items) < 2:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
