"""LZ78 dictionary coder over a finite alphabet, used as a code-length estimator.

Each phrase is the longest dictionary entry matching the input, extended by one
symbol. A dictionary with ``m`` entries (the empty phrase included) has
``m * alphabet_size`` extension slots, ``m - 1`` of them already taken, so the
next phrase is one of ``N = m * (alphabet_size - 1) + 1`` free slots. Its rank
among the free slots is written with a truncated binary code (``floor(log2 N)``
or ``ceil(log2 N)`` bits).

If the input ends inside a known phrase, the coder emits a free slot below it
(any deeper extension) and the decoder truncates to the event count, which is
known out of band. There is no header: an empty stream costs 0 bits.
"""
from __future__ import annotations

import bisect
from typing import Sequence

HEADER_BITS = 0


def _tb_params(n: int) -> tuple[int, int]:
    k = n.bit_length() - 1  # floor(log2 n)
    return k, (1 << (k + 1)) - n


def _tb_encode(value: int, n: int) -> str:
    k, u = _tb_params(n)
    if value < u:
        return format(value, f"0{k}b") if k else ""
    return format(value + u, f"0{k + 1}b")


def _tb_decode(bits: str, pos: int, n: int) -> tuple[int, int]:
    k, u = _tb_params(n)
    value = int(bits[pos:pos + k], 2) if k else 0
    if value < u:
        return value, pos + k
    return int(bits[pos:pos + k + 1], 2) - u, pos + k + 1


def _tb_len(value: int, n: int) -> int:
    k, u = _tb_params(n)
    return k if value < u else k + 1


def _free_slots(n_entries: int, alphabet_size: int) -> int:
    return n_entries * (alphabet_size - 1) + 1


def parse(stream: Sequence[int], alphabet_size: int) -> list[tuple[int, int]]:
    """Split ``stream`` into phrases, each an (entry, symbol) slot with entry 0 the root.

    Every returned slot was free when it was chosen.
    """
    trie: dict[tuple[int, int], int] = {}
    slots = []
    node = 0
    for s in stream:
        nxt = trie.get((node, s))
        if nxt is None:
            slots.append((node, s))
            trie[(node, s)] = len(slots)
            node = 0
        else:
            node = nxt
    if node:
        # pad the unfinished phrase down to a free slot; the decoder truncates
        while True:
            free = [s for s in range(alphabet_size) if (node, s) not in trie]
            if free:
                slots.append((node, free[0]))
                break
            node = min(trie[(node, s)] for s in range(alphabet_size))
    return slots


def _ranks(slots: Sequence[tuple[int, int]], alphabet_size: int):
    used: list[int] = []
    for node, s in slots:
        slot = node * alphabet_size + s
        yield slot - bisect.bisect_left(used, slot)
        bisect.insort(used, slot)


def encode(stream: Sequence[int], alphabet_size: int) -> str:
    slots = parse(stream, alphabet_size)
    return "".join(
        _tb_encode(rank, _free_slots(i + 1, alphabet_size))
        for i, rank in enumerate(_ranks(slots, alphabet_size))
    )


def decode(bits: str, alphabet_size: int, length: int) -> list[int]:
    entries: list[tuple[int, ...]] = [()]
    used: list[int] = []
    out: list[int] = []
    pos = 0
    while len(out) < length:
        rank, pos = _tb_decode(bits, pos, _free_slots(len(entries), alphabet_size))
        # the rank-th free slot: smallest v with v - #used(<= v) == rank
        slot = rank
        while True:
            nxt = rank + bisect.bisect_right(used, slot)
            if nxt == slot:
                break
            slot = nxt
        bisect.insort(used, slot)
        node, s = divmod(slot, alphabet_size)
        phrase = entries[node] + (s,)
        entries.append(phrase)
        out.extend(phrase)
    return out[:length]


def code_length(stream: Sequence[int], alphabet_size: int) -> int:
    """Length in bits of ``encode(stream, alphabet_size)`` without building it."""
    slots = parse(stream, alphabet_size)
    return HEADER_BITS + sum(
        _tb_len(rank, _free_slots(i + 1, alphabet_size))
        for i, rank in enumerate(_ranks(slots, alphabet_size))
    )
