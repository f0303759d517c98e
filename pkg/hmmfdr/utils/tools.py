import logging
import os
import time
from functools import wraps
from multiprocessing.pool import ThreadPool

logger = logging.getLogger(__name__)

dict_time = dict()


def timethis(func):
    '''
    Decorator that logs and accumulates the execution time.
    '''
    dict_time[func.__name__] = (0, 0)

    @wraps(func)
    def wrapper(*args, **kwargs):
        start = time.time()
        result = func(*args, **kwargs)
        end = time.time()
        logger.debug('%s took %.3fs', func.__name__, end - start)

        k, t = dict_time[func.__name__]
        dict_time[func.__name__] = k + 1, t + end - start

        return result
    return wrapper


def thread_count():
    """
    Worker threads allowed by HMMFDR_THREADS, default 1.
    """
    value = os.environ.get('HMMFDR_THREADS', '1')
    try:
        return max(1, int(value))
    except ValueError:
        logger.warning('ignoring HMMFDR_THREADS=%r', value)
        return 1


def replicate_map(func, replicates):
    """
    [func(k) for k in range(replicates)], spread over a thread pool
    of `thread_count()` workers. The result is in replicate order.
    """
    nthreads = thread_count()
    if nthreads == 1 or replicates < 2:
        return [func(k) for k in range(replicates)]
    pool = ThreadPool(nthreads)
    try:
        return pool.map(func, range(replicates))
    finally:
        pool.close()
        pool.join()
