"""Line-oriented instance files and the JSON scenario format.

Boolean instances::

    PARAPAC BOOL kind=kcnf n=3 k=1
    110 1
    011 1
    000 0

Graph instances (FORBIDDEN blocks define the family, hdeletion only)::

    PARAPAC GRAPH kind=hdeletion N=5 k=2
    FORBIDDEN N=2
    1 2
    END
    SAMPLE 1
    1 2
    2 3
    END

Hitting-set instances::

    PARAPAC HS n=3 k=1
    1 2
    2 3

Scenarios are JSON objects with fields kind, n (or N), k, ell, hypothesis,
support (list of {bits, weight}), and forbidden for hdeletion.  Blank lines
and lines starting with ``#`` are ignored in the line-oriented formats.
"""

from __future__ import annotations

import json
from typing import Any, Union

from .booleans import (
    Assignment,
    Clause,
    CnfFormula,
    DnfFormula,
    LabeledSample,
    Literal,
    ParamInfo,
    SampleSet,
    Term,
)
from .consistency import ConsistencyInstance, KernelTrace, MergedVariables
from .errors import InputError
from .graphs import ForbiddenFamily, Graph, GraphSample, GraphSampleSet, VertexSet
from .oracle import (
    DeletionHypothesis,
    FiniteDistribution,
    HiddenScenario,
)
from .reductions import HittingSetInstance

__all__ = [
    "parse_instance",
    "parse_instance_text",
    "format_instance",
    "write_instance",
    "scenario_to_dict",
    "scenario_from_dict",
    "trace_to_dict",
]

ParsedInstance = Union[ConsistencyInstance, HittingSetInstance, HiddenScenario]

_BOOL_KINDS = ("kcnf", "kdnf", "kterm_dnf", "kclause_cnf")
_GRAPH_KINDS = ("hdeletion", "fvs")


def _fail(line_no: int, message: str) -> None:
    raise InputError(f"line {line_no}: {message}")


def _numbered_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((i, line))
    return out


def _parse_kv_tokens(
    line_no: int, tokens: list[str], expected: dict[str, bool]
) -> dict[str, str]:
    """Parse ``key=value`` tokens; ``expected`` maps key -> required."""
    fields: dict[str, str] = {}
    for token in tokens:
        if "=" not in token:
            _fail(line_no, f"malformed header token {token!r}")
        key, value = token.split("=", 1)
        if key not in expected:
            _fail(line_no, f"unknown header field {key!r}")
        fields[key] = value
    for key, required in expected.items():
        if required and key not in fields:
            _fail(line_no, f"missing header field {key!r}")
    return fields


def _parse_header(line_no: int, line: str, expected: dict[str, bool]) -> dict[str, str]:
    return _parse_kv_tokens(line_no, line.split()[2:], expected)


def _int_field(line_no: int, fields: dict[str, str], key: str) -> int:
    try:
        return int(fields[key])
    except ValueError:
        _fail(line_no, f"field {key!r} must be an integer, got {fields[key]!r}")


def _parse_bool_instance(lines: list[tuple[int, str]]) -> ConsistencyInstance:
    line_no, header = lines[0]
    fields = _parse_header(
        line_no, header, {"kind": True, "n": True, "k": True, "size_bound": False}
    )
    kind = fields["kind"]
    if kind not in _BOOL_KINDS:
        _fail(line_no, f"kind {kind!r} is not a boolean kind")
    n = _int_field(line_no, fields, "n")
    k = _int_field(line_no, fields, "k")
    size_bound = (
        _int_field(line_no, fields, "size_bound") if "size_bound" in fields else None
    )
    samples = []
    for line_no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            _fail(line_no, f"expected '<bits> <label>', got {line!r}")
        bits, label = parts
        if len(bits) != n or any(c not in "01" for c in bits):
            _fail(line_no, f"assignment {bits!r} is not a {n}-bit string")
        if label not in ("0", "1"):
            _fail(line_no, f"label must be 0 or 1, got {label!r}")
        samples.append(LabeledSample(Assignment.from_string(bits), int(label)))
    sample_set = SampleSet(samples, n=n)
    return ConsistencyInstance(kind=kind, samples=sample_set, k=k, size_bound=size_bound)


def _parse_edge_block(
    lines: list[tuple[int, str]], start: int, order: int
) -> tuple[list[tuple[int, int]], int]:
    """Edge lines until END; returns (edges, index after END)."""
    edges = []
    i = start
    while i < len(lines):
        line_no, line = lines[i]
        if line == "END":
            return edges, i + 1
        parts = line.split()
        if len(parts) != 2:
            _fail(line_no, f"expected 'u v' edge line or END, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            _fail(line_no, f"edge endpoints must be integers, got {line!r}")
        if not (1 <= u <= order and 1 <= v <= order) or u == v:
            _fail(line_no, f"edge ({u}, {v}) invalid for {order} vertices")
        edges.append((u, v))
        i += 1
    _fail(lines[-1][0], "unterminated block: missing END")


def _parse_graph_instance(lines: list[tuple[int, str]]) -> ConsistencyInstance:
    line_no, header = lines[0]
    fields = _parse_header(
        line_no, header, {"kind": True, "N": True, "k": True, "size_bound": False}
    )
    kind = fields["kind"]
    if kind not in _GRAPH_KINDS:
        _fail(line_no, f"kind {kind!r} is not a graph kind")
    order = _int_field(line_no, fields, "N")
    k = _int_field(line_no, fields, "k")
    size_bound = (
        _int_field(line_no, fields, "size_bound") if "size_bound" in fields else None
    )
    members: list[Graph] = []
    samples: list[GraphSample] = []
    i = 1
    while i < len(lines):
        line_no, line = lines[i]
        if line.startswith("FORBIDDEN"):
            if samples:
                _fail(line_no, "FORBIDDEN blocks must precede SAMPLE blocks")
            sub = _parse_kv_tokens(line_no, line.split()[1:], {"N": True})
            pat_order = _int_field(line_no, sub, "N")
            edges, i = _parse_edge_block(lines, i + 1, pat_order)
            members.append(Graph.from_edges(pat_order, edges))
        elif line.startswith("SAMPLE"):
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("0", "1"):
                _fail(line_no, f"expected 'SAMPLE <label>', got {line!r}")
            edges, i = _parse_edge_block(lines, i + 1, order)
            samples.append(GraphSample(Graph.from_edges(order, edges), int(parts[1])))
        else:
            _fail(line_no, f"expected FORBIDDEN or SAMPLE block, got {line!r}")
    family = None
    if kind == "hdeletion":
        if not members:
            _fail(lines[0][0], "hdeletion instances need at least one FORBIDDEN block")
        family = ForbiddenFamily(members)
    elif members:
        _fail(lines[0][0], f"kind {kind!r} does not take FORBIDDEN blocks")
    return ConsistencyInstance(
        kind=kind,
        samples=GraphSampleSet(samples, order),
        k=k,
        family=family,
        size_bound=size_bound,
    )


def _parse_hs_instance(lines: list[tuple[int, str]]) -> HittingSetInstance:
    line_no, header = lines[0]
    fields = _parse_header(line_no, header, {"n": True, "k": True})
    n = _int_field(line_no, fields, "n")
    k = _int_field(line_no, fields, "k")
    sets = []
    for line_no, line in lines[1:]:
        try:
            elements = [int(tok) for tok in line.split()]
        except ValueError:
            _fail(line_no, f"set elements must be integers, got {line!r}")
        if not elements:
            _fail(line_no, "empty set line")
        for v in elements:
            if not 1 <= v <= n:
                _fail(line_no, f"element {v} outside universe 1..{n}")
        sets.append(frozenset(elements))
    return HittingSetInstance(n, tuple(sets), k)


def _signed_literals(values: list[Any], n: int, where: str) -> list[Literal]:
    lits = []
    for v in values:
        if not isinstance(v, int) or v == 0 or abs(v) > n:
            raise InputError(
                f"{where}: literal {v!r} must be a nonzero integer within +-{n}"
            )
        lits.append(Literal(abs(v), v > 0))
    return lits


def _hypothesis_from_dict(kind: str, payload: Any, n: int, order: int,
                          family: ForbiddenFamily | None):
    if not isinstance(payload, dict):
        raise InputError("hypothesis must be an object")
    if kind in ("kdnf", "kterm_dnf"):
        terms = payload.get("terms")
        if not isinstance(terms, list):
            raise InputError("hypothesis.terms must be a list of literal lists")
        return DnfFormula(
            tuple(Term(_signed_literals(t, n, "hypothesis.terms")) for t in terms), n
        )
    if kind in ("kcnf", "kclause_cnf"):
        clauses = payload.get("clauses")
        if not isinstance(clauses, list):
            raise InputError("hypothesis.clauses must be a list of literal lists")
        return CnfFormula(
            tuple(Clause(_signed_literals(c, n, "hypothesis.clauses")) for c in clauses),
            n,
        )
    vertices = payload.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, int) for v in vertices):
        raise InputError("hypothesis.vertices must be a list of integers")
    return DeletionHypothesis(VertexSet(frozenset(vertices), order), family)


def scenario_from_dict(data: Any) -> HiddenScenario:
    if not isinstance(data, dict):
        raise InputError("scenario must be a JSON object")
    kind = data.get("kind")
    if kind not in _BOOL_KINDS + _GRAPH_KINDS:
        raise InputError(f"unknown scenario kind {kind!r}")
    order = 0
    if kind in _GRAPH_KINDS:
        order = data.get("N")
        if not isinstance(order, int) or order < 1:
            raise InputError("graph scenarios need a positive integer field N")
        n = order * order
    else:
        n = data.get("n")
        if not isinstance(n, int) or n < 1:
            raise InputError("boolean scenarios need a positive integer field n")
    for key in ("k", "ell"):
        if not isinstance(data.get(key), int):
            raise InputError(f"scenario field {key!r} must be an integer")
    family = None
    if kind == "hdeletion":
        fam = data.get("forbidden")
        if not isinstance(fam, list) or not fam:
            raise InputError("hdeletion scenarios need a nonempty 'forbidden' list")
        members = []
        for i, g in enumerate(fam):
            if not isinstance(g, dict) or "N" not in g or "edges" not in g:
                raise InputError(f"forbidden[{i}] must have fields N and edges")
            members.append(Graph.from_edges(g["N"], [tuple(e) for e in g["edges"]]))
        family = ForbiddenFamily(members)
    support_field = data.get("support")
    if not isinstance(support_field, list) or not support_field:
        raise InputError("scenario needs a nonempty 'support' list")
    support, weights = [], []
    for i, entry in enumerate(support_field):
        if not isinstance(entry, dict) or "bits" not in entry or "weight" not in entry:
            raise InputError(f"support[{i}] must have fields bits and weight")
        bits = entry["bits"]
        if not isinstance(bits, str) or len(bits) != n or any(c not in "01" for c in bits):
            raise InputError(f"support[{i}].bits is not a {n}-bit string")
        weight = entry["weight"]
        if not isinstance(weight, (int, float)):
            raise InputError(f"support[{i}].weight must be a number")
        support.append(Assignment.from_string(bits))
        weights.append(float(weight))
    hypothesis = _hypothesis_from_dict(kind, data.get("hypothesis"), n, order, family)
    distribution = FiniteDistribution(n, tuple(support), tuple(weights))
    params = ParamInfo(data["k"], data["ell"])
    return HiddenScenario(kind=kind, hypothesis=hypothesis,
                          distribution=distribution, params=params)


def scenario_to_dict(scenario: HiddenScenario) -> dict:
    data: dict[str, Any] = {"kind": scenario.kind, "k": scenario.params.k,
                            "ell": scenario.params.ell}
    hyp = scenario.hypothesis
    if isinstance(hyp, DnfFormula):
        data["n"] = scenario.n
        data["hypothesis"] = {
            "terms": [
                [l.variable if l.positive else -l.variable for l in t.sorted_literals()]
                for t in hyp.terms
            ]
        }
    elif isinstance(hyp, CnfFormula):
        data["n"] = scenario.n
        data["hypothesis"] = {
            "clauses": [
                [l.variable if l.positive else -l.variable for l in c.sorted_literals()]
                for c in hyp.clauses
            ]
        }
    else:
        data["N"] = hyp.vertex_set.order
        data["hypothesis"] = {"vertices": sorted(hyp.vertex_set.vertices)}
        if hyp.family is not None:
            data["forbidden"] = [
                {"N": g.order, "edges": [list(e) for e in sorted(g.edges)]}
                for g in hyp.family.members
            ]
    data["support"] = [
        {"bits": str(x), "weight": w}
        for x, w in zip(scenario.distribution.support, scenario.distribution.weights)
    ]
    return data


def parse_instance_text(text: str) -> ParsedInstance:
    """Parse any of the three line formats or a JSON scenario from text."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON scenario: {exc}") from exc
        return scenario_from_dict(data)
    lines = _numbered_lines(text)
    if not lines:
        raise InputError("empty instance file")
    line_no, header = lines[0]
    words = header.split()
    if len(words) < 2 or words[0] != "PARAPAC":
        _fail(line_no, "expected a 'PARAPAC <FORMAT> ...' header or a JSON object")
    fmt = words[1]
    if fmt == "BOOL":
        return _parse_bool_instance(lines)
    if fmt == "GRAPH":
        return _parse_graph_instance(lines)
    if fmt == "HS":
        return _parse_hs_instance(lines)
    _fail(line_no, f"unknown format {fmt!r}; expected BOOL, GRAPH, or HS")


def parse_instance(path) -> ParsedInstance:
    """Parse and validate an instance or scenario file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_instance_text(text)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def format_instance(inst: ConsistencyInstance | HittingSetInstance) -> str:
    """Serialize an instance back to its line format (inverse of parsing)."""
    if isinstance(inst, HittingSetInstance):
        lines = [f"PARAPAC HS n={inst.universe_size} k={inst.k}"]
        lines += [" ".join(map(str, sorted(s))) for s in inst.family]
        return "\n".join(lines) + "\n"
    bound = f" size_bound={inst.size_bound}" if inst.size_bound is not None else ""
    if isinstance(inst.samples, SampleSet):
        lines = [f"PARAPAC BOOL kind={inst.kind} n={inst.samples.n} k={inst.k}{bound}"]
        lines += [f"{s.assignment} {s.label}" for s in inst.samples]
        return "\n".join(lines) + "\n"
    lines = [f"PARAPAC GRAPH kind={inst.kind} N={inst.samples.order} k={inst.k}{bound}"]
    if inst.family is not None:
        for g in inst.family.members:
            lines.append(f"FORBIDDEN N={g.order}")
            lines += [f"{u} {v}" for u, v in sorted(g.edges)]
            lines.append("END")
    for s in inst.samples:
        lines.append(f"SAMPLE {s.label}")
        lines += [f"{u} {v}" for u, v in sorted(s.graph.edges)]
        lines.append("END")
    return "\n".join(lines) + "\n"


def write_instance(inst: ConsistencyInstance | HittingSetInstance, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_instance(inst))


def trace_to_dict(trace: KernelTrace) -> dict:
    entries = []
    for entry in trace.entries:
        if isinstance(entry, MergedVariables):
            entries.append(
                {"rule": "merged_variables", "kept": entry.kept, "removed": entry.removed}
            )
        else:
            rule = (
                "removed_positive"
                if type(entry).__name__ == "RemovedPositive"
                else "removed_negative"
            )
            entries.append(
                {
                    "rule": rule,
                    "bits": str(entry.sample.assignment),
                    "label": entry.sample.label,
                    "pivot": entry.pivot,
                }
            )
    return {
        "n_original": trace.n_original,
        "variable_map": list(trace.variable_map),
        "entries": entries,
    }
