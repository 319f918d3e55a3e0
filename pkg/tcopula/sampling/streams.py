"""Seeded, splittable random streams.

An RngStream is identified by (seed, stream_id). Every sampling operation
draws from its own named substream, derived from numpy's SeedSequence with
spawn key (stream_id, purpose code), so adding draws of one kind never shifts
the sequence of another kind.
"""

import logging

import numpy as np

logger = logging.getLogger(__name__)

UINT64_MAX = 2 ** 64 - 1

# Purpose codes are part of the reproducibility contract: never renumber.
NORMAL = "normal"
CHI_SQUARED = "chi_squared"
PURPOSE_CODES = {
    NORMAL: 0,
    CHI_SQUARED: 1,
}


def _check_uint64(name, value):
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if not 0 <= value <= UINT64_MAX:
        raise ValueError(f"{name} must fit in an unsigned 64-bit integer, got {value}")
    return value


class RngStream:
    """A deterministic random stream addressed by (seed, stream_id).

    Streams are cheap to create and may be handed to another thread, but a
    single stream must not be consumed from two threads at once.
    """

    def __init__(self, seed, stream_id=0):
        self._seed = _check_uint64("seed", seed)
        self._stream_id = _check_uint64("stream_id", stream_id)
        self._generators = {}

    @property
    def seed(self):
        return self._seed

    @property
    def stream_id(self):
        return self._stream_id

    def generator(self, purpose):
        """Return the numpy Generator backing the named substream.

        The generator is created on first use and then advanced by every
        draw taken from it.
        """
        gen = self._generators.get(purpose)
        if gen is None:
            try:
                code = PURPOSE_CODES[purpose]
            except KeyError:
                raise ValueError(f"Unknown substream purpose {purpose!r}") from None
            seq = np.random.SeedSequence(self._seed, spawn_key=(self._stream_id, code))
            gen = np.random.Generator(np.random.PCG64(seq))
            self._generators[purpose] = gen
            logger.debug("Opened substream %s for seed=%d stream=%d", purpose, self._seed, self._stream_id)
        return gen

    def spawn(self, stream_id):
        """A fresh stream with the same seed and another stream_id."""
        return RngStream(self._seed, stream_id)

    def reset(self):
        """Rewind every substream to its first draw."""
        self._generators.clear()

    def __eq__(self, other):
        if not isinstance(other, RngStream):
            return NotImplemented
        return (self._seed, self._stream_id) == (other._seed, other._stream_id)

    def __hash__(self):
        return hash((self._seed, self._stream_id))

    def __repr__(self):
        return f"RngStream(seed={self._seed}, stream_id={self._stream_id})"
