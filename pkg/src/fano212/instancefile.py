"""Line-oriented text format for model instances.

A file declares a conductor, an action, and three 4x4 matrices of cyclotomic
literals:

    conductor = 8
    order = 8
    swap = true
    weights = 0, 2, 4, 6
    exponents = 0, 1, 4

    [matrix.1]
    1, 0, 0, 0
    0, z, 0, 0
    0, 0, z^2, 0
    0, 0, 0, z^3
    ...

Literals follow the cyclotomic grammar (`1/2*z^3 - 2`), interpreted in
Q(zeta_N) for the declared conductor.  Serialization is canonical: parsing
then serializing is byte-idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .action import ActionSpec, validate_action, InvalidAction
from .cyclotomic import Cyclotomic, LiteralError, format_cyclotomic, parse_cyclotomic
from .model import InvalidModel, ModelTriple, model_from_matrices, validate_model


class ParseError(ValueError):
    def __init__(self, line: int, message: str, code: str = "syntax"):
        super().__init__("line %d: %s" % (line, message))
        self.line = line
        self.code = code


@dataclass(frozen=True)
class Instance:
    model: ModelTriple
    spec: ActionSpec
    conductor: int
    declared_exponents: tuple | None = None


_SCALAR_KEYS = ("conductor", "order", "swap", "weights", "weights2", "exponents")


def _parse_int_list(value: str, line: int, key: str):
    try:
        return tuple(int(x.strip()) for x in value.split(","))
    except ValueError:
        raise ParseError(line, "%s wants comma-separated integers, got %r" % (key, value))


def parse_instance(text: str) -> Instance:
    fields: dict = {}
    matrices: dict = {}
    current = None  # (index, rows)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError(lineno, "unterminated section header %r" % raw)
            name = line[1:-1].strip()
            if not name.startswith("matrix."):
                raise ParseError(lineno, "unknown section %r" % name)
            try:
                index = int(name.split(".", 1)[1])
            except ValueError:
                raise ParseError(lineno, "bad matrix index in %r" % name)
            if index not in (1, 2, 3):
                raise ParseError(lineno, "matrix index must be 1, 2 or 3", code="matrix-shape")
            if index in matrices:
                raise ParseError(lineno, "duplicate section [matrix.%d]" % index)
            current = (index, [])
            matrices[index] = current[1]
            continue
        if "=" in line and current is None:
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in _SCALAR_KEYS:
                raise ParseError(lineno, "unknown key %r" % key)
            if key in fields:
                raise ParseError(lineno, "duplicate key %r" % key)
            fields[key] = (value, lineno)
            continue
        if current is None:
            raise ParseError(lineno, "matrix row outside a [matrix.i] section")
        current[1].append((line, lineno))

    def need(key):
        if key not in fields:
            raise ParseError(0, "missing required key %r" % key, code="missing-key")
        return fields[key]

    value, lineno = need("conductor")
    try:
        conductor = int(value)
    except ValueError:
        raise ParseError(lineno, "conductor wants an integer, got %r" % value)
    if conductor < 1:
        raise ParseError(lineno, "conductor must be positive", code="bad-conductor")

    value, lineno = need("order")
    try:
        order = int(value)
    except ValueError:
        raise ParseError(lineno, "order wants an integer, got %r" % value)

    value, lineno = need("swap")
    if value not in ("true", "false"):
        raise ParseError(lineno, "swap wants true or false, got %r" % value)
    swap = value == "true"

    value, lineno = need("weights")
    weights = _parse_int_list(value, lineno, "weights")
    if len(weights) != 4:
        raise ParseError(lineno, "weights wants four integers", code="bad-weights")

    weights2 = None
    if "weights2" in fields:
        value, lineno = fields["weights2"]
        weights2 = _parse_int_list(value, lineno, "weights2")
        if len(weights2) != 4:
            raise ParseError(lineno, "weights2 wants four integers", code="bad-weights")

    declared = None
    if "exponents" in fields:
        value, lineno = fields["exponents"]
        declared = _parse_int_list(value, lineno, "exponents")
        if len(declared) != 3:
            raise ParseError(lineno, "exponents wants three integers", code="bad-exponents")

    grids = []
    for index in (1, 2, 3):
        if index not in matrices:
            raise ParseError(0, "missing section [matrix.%d]" % index, code="matrix-shape")
        rows = matrices[index]
        if len(rows) != 4:
            raise ParseError(
                rows[-1][1] if rows else 0,
                "matrix.%d has %d rows, expected 4" % (index, len(rows)),
                code="matrix-shape",
            )
        grid = []
        for content, lineno in rows:
            entries = [e.strip() for e in content.split(",")]
            if len(entries) != 4:
                raise ParseError(
                    lineno,
                    "matrix.%d row has %d entries, expected 4" % (index, len(entries)),
                    code="matrix-shape",
                )
            row = []
            for entry in entries:
                try:
                    row.append(parse_cyclotomic(entry, conductor))
                except LiteralError as exc:
                    raise ParseError(lineno, str(exc), code="bad-literal")
            grid.append(row)
        grids.append(grid)

    spec = ActionSpec(order=order, weights=weights, swap=swap, weights2=weights2)
    validate_action(spec)  # raises InvalidAction with its own code
    model = model_from_matrices(grids)
    validate_model(model)  # raises InvalidModel
    return Instance(model=model, spec=spec, conductor=conductor,
                    declared_exponents=declared)


def serialize_instance(inst: Instance) -> str:
    lines = []
    lines.append("conductor = %d" % inst.conductor)
    lines.append("order = %d" % inst.spec.order)
    lines.append("swap = %s" % ("true" if inst.spec.swap else "false"))
    lines.append("weights = %s" % ", ".join(str(w) for w in inst.spec.weights))
    if inst.spec.weights2 is not None:
        lines.append("weights2 = %s" % ", ".join(str(w) for w in inst.spec.weights2))
    if inst.declared_exponents is not None:
        lines.append("exponents = %s" % ", ".join(str(s) for s in inst.declared_exponents))
    for index in range(3):
        lines.append("")
        lines.append("[matrix.%d]" % (index + 1))
        for row in inst.model.matrices[index]:
            entries = []
            for v in row:
                if inst.conductor % v.n:
                    raise ValueError(
                        "entry conductor %d does not divide the file conductor %d"
                        % (v.n, inst.conductor)
                    )
                entries.append(format_cyclotomic(v.lift(inst.conductor)))
            lines.append(", ".join(entries))
    return "\n".join(lines) + "\n"


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_instance(handle.read())


def save_instance(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_instance(inst))
