from time import perf_counter


class TimerError(Exception):

    def __init__(self, message):
        self.message = message
        super().__init__(message)


class Timer:
    """Wall-clock timer for solves and sweeps.

    Examples:
        >>> from ristoolkit.utils import Timer
        >>> with Timer() as timer:
        >>>     solution = solve(profile, scenario)
        >>> timer.elapsed
        0.012
        >>> timer = Timer()
        >>> for N in (10, 20):
        >>>     solve(profile, scenario.with_truncation(N))
        >>>     print(timer.since_last_check())
        0.004
        0.011
    """

    def __init__(self, start: bool = True):
        self._is_running = False
        self.elapsed = 0.0
        if start:
            self.start()

    @property
    def is_running(self) -> bool:
        """bool: indicate whether the timer is running"""
        return self._is_running

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, type, value, traceback):
        self.elapsed = self.since_start()
        self._is_running = False

    def start(self) -> None:
        """Start the timer."""
        if not self._is_running:
            self._t_start = perf_counter()
            self._is_running = True
        self._t_last = perf_counter()

    def since_start(self) -> float:
        """Seconds since the timer started; counts as a check."""
        if not self._is_running:
            raise TimerError('timer is not running')
        self._t_last = perf_counter()
        return self._t_last - self._t_start

    def since_last_check(self) -> float:
        """Seconds since the last :meth:`since_start` or
        :meth:`since_last_check` call."""
        if not self._is_running:
            raise TimerError('timer is not running')
        now = perf_counter()
        dur = now - self._t_last
        self._t_last = now
        return dur
