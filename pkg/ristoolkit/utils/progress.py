import sys
from collections.abc import Iterable
from multiprocessing import Pool
from typing import Any, Callable, List, Sequence

import tqdm

tqdm_config = {
    'dynamic_ncols': True,
    'ascii': True,
    'file': sys.stderr,
}


class DummyTqdm:
    """A dummy tqdm class that keeps stats but without progress bar.

    It supports ``__enter__``, ``__exit__`` and ``update``, which is the
    interface that sweeps use.
    """

    def __init__(self, total: int, **kwargs: Any):
        self.total = total
        self.n = 0

    def update(self, n: int = 1) -> None:
        self.n += n

    def __enter__(self) -> 'DummyTqdm':
        return self

    def __exit__(self, *args: Any, **kwargs: Any) -> None:
        pass


def track_progress(
    func: Callable[[Any], Any],
    tasks: Sequence[Any],
    nproc: int = 1,
    show_progress: bool = False,
    desc: str = 'sweep',
    chunksize: int = 1,
) -> List[Any]:
    """Apply ``func`` to every task and return the results in task order.

    With ``nproc > 1`` the tasks run in a :class:`multiprocessing.Pool` and
    are collected with :meth:`Pool.imap`, which keeps the input order, so the
    output is identical to the sequential run. ``func`` and the tasks must be
    picklable in that case.

    Args:
        func (callable): The function to be applied to each task.
        tasks (Sequence): The tasks.
        nproc (int): Process (worker) number. Defaults to 1 (no pool).
        show_progress (bool): Render a tqdm bar on stderr.
        desc (str): Label of the progress bar.
        chunksize (int): Refer to :class:`multiprocessing.Pool` for details.

    Returns:
        list: The task results.
    """
    if not isinstance(tasks, Iterable):
        raise TypeError('"tasks" must be an iterable object')
    tasks = list(tasks)
    bar_cls = tqdm.tqdm if show_progress else DummyTqdm
    results = []
    with bar_cls(total=len(tasks), desc=desc, **tqdm_config) as bar:
        if nproc > 1 and len(tasks) > 1:
            with Pool(min(nproc, len(tasks))) as pool:
                for result in pool.imap(func, tasks, chunksize):
                    results.append(result)
                    bar.update()
        else:
            for task in tasks:
                results.append(func(task))
                bar.update()
    return results
