"""Peephole optimization, gate counting, and circuit serialization.

Counting follows the convention that Fourier transforms are free: a
Fourier-conjugated primitive such as e^{itP³} stored as F·e^{itX³}·F†
contributes one non-Fourier gate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .algebra import NOPoly
from .circuit import EXPPOLY, FOURIER, ZERO_STRENGTH, Gate, GateSeq


class SchemaViolation(Exception):
    """Malformed circuit document."""


@dataclass
class DecompReport:
    n_gates_total: int = 0
    n_gates_nonfourier: int = 0
    n_gates_preopt: int = 0
    n_ancillas: int = 0
    recursion_trace: list[tuple[str, int]] = field(default_factory=list)
    residual_symbolic: float | None = None
    residual_numeric: float | None = None
    route: str = ""


def count_gates(seq: GateSeq, exclude_fourier: bool) -> int:
    if exclude_fourier:
        return sum(1 for g in seq.gates if g.kind != FOURIER)
    return len(seq.gates)


def optimize(seq: GateSeq) -> GateSeq:
    """Cancel adjacent inverses, merge equal generators, drop zero-strength
    gates, then compact ancilla registers. Circuit-equivalent output."""
    gates = [g for g in seq.gates if not _is_identity(g)]
    changed = True
    while changed:
        changed = False
        out: list[Gate] = []
        i = 0
        while i < len(gates):
            g = gates[i]
            if i + 1 < len(gates):
                merged = _merge_pair(g, gates[i + 1])
                if merged is not None:
                    if merged:
                        out.append(merged[0])
                    i += 2
                    changed = True
                    continue
            out.append(g)
            i += 1
        gates = out
    return _reuse_ancillas(replace(seq, gates=tuple(gates)))


def _is_identity(g: Gate) -> bool:
    return g.kind == EXPPOLY and abs(g.strength) < ZERO_STRENGTH


def _merge_pair(g: Gate, h: Gate):
    """None: no rule. []: both cancel. [gate]: merged replacement."""
    if g.kind == FOURIER and h.kind == FOURIER:
        if g.mode == h.mode and g.power == -h.power:
            return []
        return None
    if g.kind == EXPPOLY and h.kind == EXPPOLY and g.same_generator(h):
        s = g.strength + h.strength
        if abs(s) < ZERO_STRENGTH:
            return []
        return [replace(g, strength=s)]
    return None


def _reuse_ancillas(seq: GateSeq) -> GateSeq:
    """Pack ancillas with disjoint live ranges into shared registers."""
    if not seq.ancilla_modes:
        return seq
    n = seq.n_target_modes
    live: dict[int, tuple[int, int]] = {}
    for idx, g in enumerate(seq.gates):
        for m in g.modes():
            if m >= n or m in seq.ancilla_modes:
                lo, hi = live.get(m, (idx, idx))
                live[m] = (min(lo, idx), max(hi, idx))
    # assign each used ancilla (by first use) to the first free register
    regs: list[int] = []  # index -> last gate index occupying it
    mapping: dict[int, int] = {}
    for m, (lo, hi) in sorted(live.items(), key=lambda kv: (kv[1][0], kv[0])):
        if m < n:
            continue
        for r, busy_until in enumerate(regs):
            if busy_until < lo:
                regs[r] = hi
                mapping[m] = n + r
                break
        else:
            mapping[m] = n + len(regs)
            regs.append(hi)
    if not mapping:
        return replace(seq, ancilla_modes=())
    gates = tuple(_remap_gate(g, mapping) for g in seq.gates)
    return GateSeq(gates, n, tuple(n + r for r in range(len(regs))))


def _remap_gate(g: Gate, mapping: dict[int, int]) -> Gate:
    if g.kind == FOURIER:
        return replace(g, mode=mapping.get(g.mode, g.mode))
    terms = {}
    for key, coeff in g.generator.terms.items():
        new_key = tuple(sorted((mapping.get(m, m), a, b) for m, a, b in key))
        terms[new_key] = coeff
    return replace(g, generator=NOPoly(terms))


# -- serialization ---------------------------------------------------------

_POWER_KIND = {1: "x1", 2: "x2", 3: "x3"}
_KIND_POWER = {v: k for k, v in _POWER_KIND.items()}


def _gate_record(g: Gate) -> dict:
    if g.kind == FOURIER:
        return {"kind": "fourier", "modes": [g.mode], "strength": 0.0,
                "dagger": g.power == -1, "provenance": g.provenance}
    if not g.is_universal():
        raise SchemaViolation("only universal gates are serializable")
    (key, _), = g.generator.terms.items()
    if len(key) == 1:
        kind = _POWER_KIND[key[0][1]]
        modes = [key[0][0]]
    else:
        kind = "xx"
        modes = [key[0][0], key[1][0]]
    return {"kind": kind, "modes": modes, "strength": g.strength,
            "dagger": False, "provenance": g.provenance}


def serialize(seq: GateSeq) -> dict:
    """Circuit document; gate order is application order (first applied first)."""
    return {
        "version": 1,
        "modes": seq.n_target_modes,
        "ancillas": list(seq.ancilla_modes),
        "gates": [_gate_record(g) for g in reversed(seq.gates)],
    }


def serialize_json(seq: GateSeq) -> str:
    return json.dumps(serialize(seq), indent=2)


def deserialize(doc: dict | str) -> GateSeq:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("version") != 1:
        raise SchemaViolation("expected a version-1 circuit document")
    try:
        n = int(doc["modes"])
        ancillas = tuple(int(a) for a in doc["ancillas"])
        records = doc["gates"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaViolation(f"bad document structure: {exc}") from exc
    gates = []
    for rec in records:
        try:
            kind = rec["kind"]
            modes = [int(m) for m in rec["modes"]]
            strength = float(rec["strength"])
            dagger = bool(rec["dagger"])
            prov = rec.get("provenance", "")
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolation(f"bad gate record {rec!r}: {exc}") from exc
        if kind == "fourier":
            gates.append(Gate.fourier(modes[0], -1 if dagger else 1, prov))
        elif kind in _KIND_POWER:
            gates.append(Gate.x(modes[0], _KIND_POWER[kind], strength, prov))
        elif kind == "xx":
            gates.append(Gate.xx(modes[0], modes[1], strength, prov))
        else:
            raise SchemaViolation(f"unknown gate kind {kind!r}")
    return GateSeq(tuple(reversed(gates)), n, ancillas)
