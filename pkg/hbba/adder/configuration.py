"""Definition, validation, parsing and printing of HBBA configurations.

A configuration is written as ``HBBA{[L_1,...,L_a],[S_1,...,S_a]}`` where the
vectors run from the least-significant approximate block upwards. The
approximate blocks always occupy the low end of the adder, every block above
them is an accurate carry look-ahead block.

Index
-----
.. currentmodule:: hbba.adder.configuration
.. autosummary::
    BlockKind
    BlockSpec
    AdderConfig
    parse_config
    canonical_string
    standard_config
    config_to_document

API
---
.. autoclass:: BlockSpec
    :members:
.. autoclass:: AdderConfig
    :members:
.. autofunction:: parse_config
.. autofunction:: canonical_string
.. autofunction:: standard_config
.. autofunction:: config_to_document

"""

__all__ = ['BlockKind', 'BlockSpec', 'AdderConfig', 'parse_config',
           'canonical_string', 'standard_config', 'config_to_document']

import enum
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import pyparsing as pa

from ..common import ConfigError

# Starting logger
logger = logging.getLogger(__name__)


class BlockKind(enum.Enum):
    """Kind of an H-bit sub-adder."""

    ACCURATE = 'accurate'
    APPROXIMATE = 'approximate'


@dataclass(frozen=True)
class BlockSpec:
    """An H-bit block with ``L`` OR-replaced low bits and an ``S`` bit carry chain.

    Accurate blocks are stored with ``L = 0`` and ``S = H``.
    """

    kind: BlockKind
    H: int
    L: int = 0
    S: int = 0

    def __post_init__(self) -> None:
        """Check the ranges of the block parameters."""
        if self.H < 1:
            raise ConfigError(f"the block size must be positive, got H={self.H}")
        if not 0 <= self.L <= self.H:
            raise ConfigError(f"L={self.L} is outside the range 0..{self.H}")
        if not 0 <= self.S <= self.H:
            raise ConfigError(f"S={self.S} is outside the range 0..{self.H}")
        if self.kind is BlockKind.ACCURATE and (self.L, self.S) != (0, self.H):
            raise ConfigError("accurate blocks have L=0 and S=H")

    @classmethod
    def accurate(cls, H: int) -> 'BlockSpec':
        """Create an exact carry look-ahead block."""
        return cls(BlockKind.ACCURATE, H, 0, H)

    @classmethod
    def approximate(cls, H: int, L: int, S: int) -> 'BlockSpec':
        """Create an approximate block."""
        return cls(BlockKind.APPROXIMATE, H, L, S)

    @property
    def is_accurate(self) -> bool:
        """Whether the block is an exact adder."""
        return self.kind is BlockKind.ACCURATE

    @property
    def fa_width(self) -> int:
        """Width of the full-adder section above the OR gates."""
        return self.H - self.L

    @property
    def case(self) -> int:
        """Error structure of the block: 1 for H-S > L, 2 for H-S = L and 3 for H-S < L."""
        gap = self.H - self.S - self.L
        return 1 if gap > 0 else (2 if gap == 0 else 3)

    @property
    def is_one_signed(self) -> bool:
        """Whether every error of the block is nonnegative (cases 1 and 2)."""
        return self.is_accurate or self.H - self.S >= self.L


@dataclass(frozen=True)
class AdderConfig:
    """An N-bit adder made of N/H blocks, least-significant block first."""

    N: int
    H: int
    blocks: Tuple[BlockSpec, ...]

    def __post_init__(self) -> None:
        """Check the width, the block sizes and the contiguity of approximate blocks."""
        if self.H < 1 or self.N < 1:
            raise ConfigError(f"N={self.N} and H={self.H} must be positive")
        if self.N % self.H:
            raise ConfigError(f"N={self.N} is not divisible by the block size H={self.H}")
        if len(self.blocks) != self.N // self.H:
            raise ConfigError(
                f"an adder with N={self.N} and H={self.H} has {self.N // self.H} blocks, "
                f"got {len(self.blocks)}")
        if any(b.H != self.H for b in self.blocks):
            raise ConfigError("every block must have the same size H")
        kinds = [b.is_accurate for b in self.blocks]
        if kinds != sorted(kinds):
            raise ConfigError("approximate blocks must form a contiguous run at the low end")

    @classmethod
    def from_vectors(cls, N: int, H: int, l_vec: Sequence[int],
                     s_vec: Sequence[int]) -> 'AdderConfig':
        """Build a configuration from the L and S vectors (least-significant first)."""
        if H < 1 or N < 1:
            raise ConfigError(f"N={N} and H={H} must be positive")
        if N % H:
            raise ConfigError(f"N={N} is not divisible by the block size H={H}")
        if len(l_vec) != len(s_vec):
            raise ConfigError(
                f"the L vector has {len(l_vec)} entries but the S vector has {len(s_vec)}")
        k = N // H
        if len(l_vec) > k:
            raise ConfigError(f"{len(l_vec)} approximate blocks do not fit in {k} blocks")
        approximate = [BlockSpec.approximate(H, l, s) for l, s in zip(l_vec, s_vec)]
        accurate = [BlockSpec.accurate(H)] * (k - len(approximate))
        return cls(N, H, tuple(approximate + accurate))

    @classmethod
    def exact(cls, N: int, H: int) -> 'AdderConfig':
        """All-accurate adder."""
        return cls.from_vectors(N, H, [], [])

    @property
    def k(self) -> int:
        """Total number of blocks."""
        return len(self.blocks)

    @property
    def approximate_blocks(self) -> Tuple[BlockSpec, ...]:
        """The approximate blocks, least-significant first."""
        return tuple(b for b in self.blocks if not b.is_accurate)

    @property
    def n_approximate(self) -> int:
        """Number of approximate blocks."""
        return len(self.approximate_blocks)

    @property
    def l_vec(self) -> List[int]:
        """OR widths of the approximate blocks."""
        return [b.L for b in self.approximate_blocks]

    @property
    def s_vec(self) -> List[int]:
        """Carry-chain lengths of the approximate blocks."""
        return [b.S for b in self.approximate_blocks]

    def __str__(self) -> str:
        """Render in the canonical notation."""
        return canonical_string(self)


def _build_grammar() -> pa.ParserElement:
    """Create the pyparsing grammar ``HBBA{[int,...],[int,...]}``."""
    integer = pa.Word(pa.nums).setParseAction(lambda t: int(t[0]))
    vector = pa.Group(
        pa.Suppress('[') + pa.Optional(pa.delimitedList(integer)) + pa.Suppress(']'))
    return (pa.Suppress(pa.Literal('HBBA')) + pa.Suppress('{') + vector +
            pa.Suppress(',') + vector + pa.Suppress('}'))


_GRAMMAR = _build_grammar()


def parse_config(text: str, N: int, H: int) -> AdderConfig:
    """Parse the notation ``HBBA{[L_1,...],[S_1,...]}`` into an :class:`AdderConfig`.

    Whitespace is ignored anywhere in the text; the comma between the two
    vectors is required.

    Parameters
    ----------
    text
        Configuration string, vectors ordered least-significant block first.
    N
        Width of the adder in bits.
    H
        Size of every block in bits.

    Raises
    ------
    ConfigError
        If the text does not follow the grammar or the configuration is invalid.

    """
    try:
        l_vec, s_vec = _GRAMMAR.parseString(text, parseAll=True)
    except pa.ParseException as ex:
        raise ConfigError(f"invalid configuration {text!r}: {ex}") from ex
    return AdderConfig.from_vectors(N, H, list(l_vec), list(s_vec))


def canonical_string(cfg: AdderConfig) -> str:
    """Print ``cfg`` without whitespace, e.g. ``HBBA{[2,1],[0,3]}``."""
    ls = ','.join(str(x) for x in cfg.l_vec)
    ss = ','.join(str(x) for x in cfg.s_vec)
    return f"HBBA{{[{ls}],[{ss}]}}"


def standard_config(N: int, H: int) -> AdderConfig:
    """Return the benchmark configuration used to compare against other adders.

    The lower half of the blocks are approximate with ``L = H/2``; the lower
    part of them truncates the carry (``S = 0``) and the rest use ``S = H/2``.
    """
    if N % H:
        raise ConfigError(f"N={N} is not divisible by the block size H={H}")
    n_approx = (N // H) // 2
    n_truncated = (n_approx + 1) // 2
    half = H // 2
    l_vec = [half] * n_approx
    s_vec = [0] * n_truncated + [half] * (n_approx - n_truncated)
    return AdderConfig.from_vectors(N, H, l_vec, s_vec)


def config_to_document(cfg: AdderConfig) -> Dict[str, Any]:
    """Structured form ``{n, h, l_vec, s_vec}`` of a configuration."""
    return {'n': cfg.N, 'h': cfg.H, 'l_vec': cfg.l_vec, 's_vec': cfg.s_vec}
