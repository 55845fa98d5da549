from .lbfgs import (LbfgsOptions, RunTrace, IterationRecord, minimize, two_loop, STRONG_WOLFE, CONVERGED,
                    MAX_ITERATIONS, LINE_SEARCH_FAILED)
from .linesearch import strong_wolfe, LineSearchResult
