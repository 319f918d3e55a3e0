"""Bulk generation of draws for a SimConfig.

A run of n_samples draws is cut into blocks of ``block_size``. Block b is
drawn from RngStream(seed, method_offset + b), so the output depends only on
(config, block_size), never on how many worker threads produced it, and each
method owns a disjoint stream_id range.
"""

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor

from tcopula.config import BLOCK_SIZE, WORKERS
from tcopula.copulas.base import CopulaMethod, SampleBlock
from tcopula.copulas.constructions import get_construction
from tcopula.errors import DomainError
from tcopula.sampling.streams import RngStream

logger = logging.getLogger(__name__)

MAX_AHEAD_PER_WORKER = 2

# Each method gets 2**32 stream ids
METHOD_STREAM_OFFSETS = {
    CopulaMethod.SAME_CHI2: 0,
    CopulaMethod.INDEP_CHI2: 1 << 32,
    CopulaMethod.CORRELATED_T: 2 << 32,
}


def block_layout(n_samples, block_size=BLOCK_SIZE):
    """Return [(block_index, size), ...] covering n_samples draws."""
    if block_size < 1:
        raise DomainError(f"block_size must be positive, got {block_size}")
    layout = []
    start = 0
    index = 0
    while start < n_samples:
        size = min(block_size, n_samples - start)
        layout.append((index, size))
        start += size
        index += 1
    return layout


def block_stream(config, block_index):
    """The stream that feeds block ``block_index`` of ``config``."""
    return RngStream(config.seed, METHOD_STREAM_OFFSETS[config.method] + block_index)


def _draw_block(config, construction, block_index, size):
    stream = block_stream(config, block_index)
    block = construction.block(stream, config.rho, config.nu, size)
    logger.debug("Drew block %d (%d pairs) for %s", block_index, size, config.method)
    return block


def generate_blocks(config, workers=WORKERS, block_size=BLOCK_SIZE):
    """Yield SampleBlocks for ``config`` in deterministic order.

    With ``workers > 1`` blocks are drawn on a thread pool and yielded in
    submission order.
    """
    construction = get_construction(config.method)
    # Validated eagerly: the error surfaces at the call, before any draw
    construction.validate(config.rho, config.nu)
    layout = block_layout(config.n_samples, block_size)
    logger.info(
        "Generating %d %s pairs (rho=%s, nu=%s, seed=%d) in %d blocks",
        config.n_samples, config.method, config.rho, config.nu, config.seed, len(layout),
    )
    return _iter_blocks(config, construction, layout, workers)


def _iter_blocks(config, construction, layout, workers):
    if workers <= 1 or len(layout) == 1:
        for block_index, size in layout:
            yield _draw_block(config, construction, block_index, size)
        return

    # At most MAX_AHEAD_PER_WORKER * workers blocks in flight
    with ThreadPoolExecutor(max_workers=workers) as pool:
        pending = deque()
        for block_index, size in layout:
            pending.append(pool.submit(_draw_block, config, construction, block_index, size))
            if len(pending) >= MAX_AHEAD_PER_WORKER * workers:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def generate(config, workers=WORKERS, block_size=BLOCK_SIZE):
    """Iterate over exactly config.n_samples BivariateSample draws."""
    blocks = generate_blocks(config, workers=workers, block_size=block_size)
    return (sample for block in blocks for sample in block.samples())


def generate_arrays(config, workers=WORKERS, block_size=BLOCK_SIZE):
    """Materialise the whole run as one SampleBlock."""
    return SampleBlock.concat(generate_blocks(config, workers=workers, block_size=block_size))
