"""named random streams split from one master seed

every consumer of randomness asks for its stream by name, so adding a new
consumer never shifts the numbers an existing one sees

>>> _a = RngStreams(7).generator("train").integers(0, 1000, size=3)
>>> _b = RngStreams(7).generator("train").integers(0, 1000, size=3)
>>> bool((_a == _b).all())
True
>>> bool((RngStreams(7).generator("sample").integers(0, 1000, size=3) == _a).all())
False
"""

import dataclasses
import enum

import numpy as np


__all__ = (
    "RngStreams",
    "Stream",
)


@enum.unique
class Stream(enum.Enum):
    # values are spawn keys: never renumber
    INIT = 0
    DATA = 1
    TRAIN = 2
    SAMPLE = 3
    REVERSE = 4
    PROBE = 5
    HEATMAP = 6
    GRADCHECK = 7
    RECONSTRUCT = 8


@dataclasses.dataclass(frozen=True)
class RngStreams:
    seed: int

    def generator(self, stream: Stream | str) -> np.random.Generator:
        return np.random.default_rng(self._sequence(stream))

    def spawn(self, stream: Stream | str, count: int) -> list[np.random.Generator]:
        """independent generators for `count` workers sharing one stream"""
        return [
            np.random.default_rng(_child)
            for _child in self._sequence(stream).spawn(count)
        ]

    def _sequence(self, stream: Stream | str) -> np.random.SeedSequence:
        _stream = Stream[stream.upper()] if isinstance(stream, str) else stream
        return np.random.SeedSequence(self.seed, spawn_key=(_stream.value,))
