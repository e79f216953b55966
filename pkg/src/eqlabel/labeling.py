"""Adjacency labels compiled from protocol transcripts, plus a standalone
decoder that works from the label bytes alone.

Build: replay the protocol on every ordered vertex pair and record, per
(vertex, role, transcript prefix), the vertex's local action: announce a
bit, supply an equality operand, or stop with the output. The protocol's
one-sidedness makes this map well defined; the builder asserts it and fails
loudly otherwise. Operand tokens are replaced by dense ids (rank in the
sorted list of their canonical serializations) so equality is preserved and
entries stay narrow.

Label record: two binary prefix trees (role A, then role B), each stored in
preorder. A node is 2 kind bits (00 bit, 01 operand, 10 output, 11 blank),
its payload (1 bit, the operand width from the header, 1 bit, nothing), and
one presence flag per child branch. Blank nodes carry structure where a
vertex has no action at a prefix but acts deeper on both branches.

Decode: walk the two trees in lock step from the empty prefix. A bit node
on one side (blank or absent on the other) appends its bit; two operand
nodes append [id_A == id_B]; two output nodes must agree and end the walk.
Anything else is a corrupt or foreign label pair.

File layout, all little-endian:
    magic 'IMPLREP1' (8) | version (1) | N (8) | max cost (1) | op width (1)
    then N records, each a varint byte length plus that many bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MAGIC = b"IMPLREP1"
VERSION = 1
_KIND_BIT = 0
_KIND_OP = 1
_KIND_OUT = 2
_KIND_BLANK = 3


class LabelError(ValueError):
    pass


class CostCeilingExceeded(LabelError):
    def __init__(self, cost: int, ceiling: int):
        super().__init__(f"run cost {cost} exceeds ceiling {ceiling}")
        self.cost = cost
        self.ceiling = ceiling


# ---------------------------------------------------------------------------
# canonical operand serialization (never rely on hash())


def _zigzag(x: int) -> int:
    return -2 * x - 1 if x < 0 else 2 * x


def _varint(x: int) -> bytes:
    if x < 0:
        raise ValueError("varint needs a nonnegative value")
    out = bytearray()
    while True:
        b = x & 0x7F
        x >>= 7
        if x:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def _read_varint(data: bytes, pos: int) -> tuple:
    x = 0
    shift = 0
    while True:
        if pos >= len(data):
            raise LabelError("truncated varint")
        b = data[pos]
        pos += 1
        x |= (b & 0x7F) << shift
        if not b & 0x80:
            return x, pos
        shift += 7


def serialize_operand(tok) -> bytes:
    if isinstance(tok, bool):
        raise LabelError("boolean operand")
    if isinstance(tok, int):
        return b"\x01" + _varint(_zigzag(tok))
    if isinstance(tok, str):
        raw = tok.encode("utf-8")
        return b"\x02" + _varint(len(raw)) + raw
    if isinstance(tok, tuple):
        out = b"\x03" + _varint(len(tok))
        for item in tok:
            out += serialize_operand(item)
        return out
    raise LabelError(f"unsupported operand type {type(tok).__name__}")


# ---------------------------------------------------------------------------
# bit packing


class _BitWriter:
    def __init__(self):
        self.bits: list = []

    def put(self, value: int, width: int) -> None:
        for i in range(width - 1, -1, -1):
            self.bits.append((value >> i) & 1)

    def __len__(self) -> int:
        return len(self.bits)

    def to_bytes(self) -> bytes:
        out = bytearray()
        acc = 0
        k = 0
        for b in self.bits:
            acc = (acc << 1) | b
            k += 1
            if k == 8:
                out.append(acc)
                acc = 0
                k = 0
        if k:
            out.append(acc << (8 - k))
        return bytes(out)


class _BitReader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def get(self, width: int) -> int:
        out = 0
        for _ in range(width):
            byte = self.pos >> 3
            if byte >= len(self.data):
                raise LabelError("truncated record")
            out = (out << 1) | ((self.data[byte] >> (7 - (self.pos & 7))) & 1)
            self.pos += 1
        return out


# ---------------------------------------------------------------------------
# building


@dataclass(frozen=True)
class LabelFamily:
    """A finished label file image plus its build statistics."""

    data: bytes
    n: int
    cost: int
    op_width: int
    record_sizes: tuple  # per vertex: record bytes, without the length prefix

    def label_bits(self, v: int) -> int:
        """Size of one label in bits: record plus its length prefix."""
        size = self.record_sizes[v]
        return 8 * (size + len(_varint(size)))

    @property
    def max_label_bits(self) -> int:
        return max(self.label_bits(v) for v in range(self.n))


def build_labels(run_pair, n: int, ceiling: int = 16) -> LabelFamily:
    """Replay run_pair(u, w) over all ordered pairs (diagonal included) and
    compile one label per vertex. Raises CostCeilingExceeded when any run
    has more events than the ceiling, and LabelError if the transcripts are
    not one-sided (two runs disagree on a vertex's action at a prefix)."""
    if not 1 <= ceiling <= 255:
        raise ValueError("ceiling must be in 1..255")
    nodes: dict = {}
    max_cost = 0

    def set_node(v, role, prefix, entry):
        key = (v, role, prefix)
        old = nodes.get(key)
        if old is None:
            nodes[key] = entry
        elif old != entry:
            raise LabelError(
                f"vertex {v} role {role} acts two ways at prefix {prefix}: "
                f"{old} vs {entry}"
            )

    for u in range(n):
        for w in range(n):
            run = run_pair(u, w)
            if run.cost > ceiling:
                raise CostCeilingExceeded(run.cost, ceiling)
            max_cost = max(max_cost, run.cost)
            prefix: tuple = ()
            for kind, value, party, op_a, op_b in run.events:
                if kind == "bit":
                    sender = u if party == "A" else w
                    set_node(sender, party, prefix, ("bit", value))
                elif kind == "eq":
                    set_node(u, "A", prefix, ("op", op_a))
                    set_node(w, "B", prefix, ("op", op_b))
                else:
                    raise LabelError(f"unknown event kind {kind!r}")
                prefix += (value,)
            out_bit = 1 if run.output > 0 else 0
            set_node(u, "A", prefix, ("out", out_bit))
            set_node(w, "B", prefix, ("out", out_bit))

    tokens = sorted(
        {serialize_operand(e[1]) for e in nodes.values() if e[0] == "op"}
    )
    op_id = {t: i for i, t in enumerate(tokens)}
    width = max(1, (len(tokens) - 1).bit_length()) if len(tokens) > 1 else 1

    per_vertex: dict = {}
    for (v, role, prefix), entry in nodes.items():
        per_vertex.setdefault((v, role), {})[prefix] = entry

    records = []
    for v in range(n):
        wtr = _BitWriter()
        for role in ("A", "B"):
            tree = per_vertex.get((v, role), {})
            branches: dict = {}
            for p in tree:
                for i in range(len(p)):
                    branches.setdefault(p[:i], set()).add(p[i])

            def emit(prefix: tuple) -> None:
                entry = tree.get(prefix)
                if entry is None:
                    wtr.put(_KIND_BLANK, 2)
                elif entry[0] == "bit":
                    wtr.put(_KIND_BIT, 2)
                    wtr.put(entry[1], 1)
                elif entry[0] == "op":
                    wtr.put(_KIND_OP, 2)
                    wtr.put(op_id[serialize_operand(entry[1])], width)
                else:
                    wtr.put(_KIND_OUT, 2)
                    wtr.put(entry[1], 1)
                kids = branches.get(prefix, ())
                for b in (0, 1):
                    if b in kids:
                        wtr.put(1, 1)
                        emit(prefix + (b,))
                    else:
                        wtr.put(0, 1)

            emit(())
        records.append(wtr.to_bytes())

    blob = bytearray()
    blob += MAGIC
    blob.append(VERSION)
    blob += n.to_bytes(8, "little")
    blob.append(max_cost)
    blob.append(width)
    for rec in records:
        blob += _varint(len(rec))
        blob += rec
    return LabelFamily(
        bytes(blob), n, max_cost, width, tuple(len(r) for r in records)
    )


# ---------------------------------------------------------------------------
# standalone decoding


class LabelFile:
    """Parsed label file; decoding needs nothing but this."""

    def __init__(self, data: bytes):
        if data[: len(MAGIC)] != MAGIC:
            raise LabelError("bad magic")
        pos = len(MAGIC)
        if data[pos] != VERSION:
            raise LabelError(f"unsupported version {data[pos]}")
        pos += 1
        self.n = int.from_bytes(data[pos : pos + 8], "little")
        pos += 8
        self.cost = data[pos]
        pos += 1
        self.op_width = data[pos]
        pos += 1
        self._records = []
        for _ in range(self.n):
            size, pos = _read_varint(data, pos)
            if pos + size > len(data):
                raise LabelError("truncated record")
            self._records.append(data[pos : pos + size])
            pos += size
        if pos != len(data):
            raise LabelError("trailing bytes")
        self._trees: dict = {}

    def record(self, v: int) -> bytes:
        return self._records[v]

    def label_bits(self, v: int) -> int:
        size = len(self._records[v])
        return 8 * (size + len(_varint(size)))

    def tree(self, v: int, role: str) -> dict:
        key = (v, role)
        got = self._trees.get(key)
        if got is not None:
            return got
        rdr = _BitReader(self._records[v])
        trees = {}
        for r in ("A", "B"):
            out: dict = {}

            def parse(prefix: tuple) -> None:
                kind = rdr.get(2)
                if kind == _KIND_BIT:
                    out[prefix] = ("bit", rdr.get(1))
                elif kind == _KIND_OP:
                    out[prefix] = ("op", rdr.get(self.op_width))
                elif kind == _KIND_OUT:
                    out[prefix] = ("out", rdr.get(1))
                for b in (0, 1):
                    if rdr.get(1):
                        parse(prefix + (b,))

            parse(())
            trees[r] = out
        self._trees[(v, "A")] = trees["A"]
        self._trees[(v, "B")] = trees["B"]
        return self._trees[key]


def decode_pair(labels, u: int, w: int) -> int:
    """Adjacency answer (+1/-1) from the labels of u (role A) and w (role
    B). Accepts a LabelFile or raw file bytes."""
    f = labels if isinstance(labels, LabelFile) else LabelFile(labels)
    ta = f.tree(u, "A")
    tb = f.tree(w, "B")
    prefix: tuple = ()
    for _ in range(max(1, f.cost) + 1):
        ea = ta.get(prefix)
        eb = tb.get(prefix)
        ka = ea[0] if ea else None
        kb = eb[0] if eb else None
        if ka == "out" or kb == "out":
            if ka != "out" or kb != "out" or ea[1] != eb[1]:
                raise LabelError(f"inconsistent leaves at {prefix}")
            return 1 if ea[1] else -1
        if ka == "bit":
            if kb is not None:
                raise LabelError(f"bit collision at {prefix}")
            prefix += (ea[1],)
        elif kb == "bit":
            if ka is not None:
                raise LabelError(f"bit collision at {prefix}")
            prefix += (eb[1],)
        elif ka == "op" and kb == "op":
            prefix += (1 if ea[1] == eb[1] else 0,)
        else:
            raise LabelError(f"stuck at prefix {prefix}")
    raise LabelError("walk exceeded the recorded cost")


def measure(labels) -> tuple:
    """Size summary (max_bits, mean_bits, bits_per_log_n) of a LabelFamily
    or LabelFile. The last entry divides by ceil(log2 n), floored at 1."""
    if labels.n == 0:
        return 0, 0.0, 0.0
    sizes = [labels.label_bits(v) for v in range(labels.n)]
    max_bits = max(sizes)
    mean_bits = sum(sizes) / len(sizes)
    return max_bits, mean_bits, max_bits / max(1, math.ceil(math.log2(labels.n)))


def write_labels(family: LabelFamily, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(family.data)


def read_labels(path: str) -> LabelFile:
    with open(path, "rb") as fh:
        return LabelFile(fh.read())
