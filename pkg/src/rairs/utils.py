import logging
import typing

import numpy as np

ArrayLike = typing.Union[float, np.ndarray]


def configure_logging(quiet: bool = False) -> None:
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s:%(name)s:%(message)s"))
    root = logging.getLogger()
    root.setLevel(logging.INFO)
    root.addHandler(handler)
    for name, level in {'rairs': logging.WARNING if quiet else logging.DEBUG,
                        '__main__': logging.DEBUG,
                        }.items():
        log = logging.getLogger(name)
        log.setLevel(level)


def db_to_linear(value_db: ArrayLike) -> ArrayLike:
    return np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)


def linear_to_db(value: ArrayLike) -> ArrayLike:
    with np.errstate(divide='ignore'):
        return 10.0 * np.log10(np.asarray(value, dtype=float))


def chunks(total: int, n: int) -> typing.Iterator[int]:
    """Sizes of consecutive batches covering ``total`` items, ``n`` at a time."""
    for start in range(0, total, n):
        yield min(n, total - start)


def fmt(value: float) -> str:
    return format(float(value), '.10g')


GENERATOR_NAME = 'Philox'


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Counter-based generator for one key; the same key always yields the same stream."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(master_seed, spawn_key=tuple(key))))
