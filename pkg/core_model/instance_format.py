"""
Plain-text instance files.

The header carries `n`, `m` and `tmax` lines (the classic orienteering
benchmark layout), followed by n node lines `x y profit [service]`. The
first node line is the source and the last one the destination. Optional
sections follow, each introduced by a keyword line:

    MANDATORY   node ids, any number per line
    PHYSICAL    one `i j` arc per line
    LOGICAL     one `i j` customer pair per line
    VARIANT     `P` or `PL`

Optional header flags `symmetric 1` and `exact 1` round-trip the
corresponding instance flags.
"""
import logging
from pathlib import Path
from typing import List, Optional, Union

from pydantic import ValidationError

from .instance_schema import Instance

logger = logging.getLogger(__name__)

SECTION_KEYWORDS = ("MANDATORY", "PHYSICAL", "LOGICAL", "VARIANT")
HEADER_KEYS = ("n", "m", "tmax", "symmetric", "exact")


class InstanceFormatError(ValueError):
    """Malformed instance file; the message carries the offending line."""


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _number(token: str, line_no: int, kind=float):
    try:
        return kind(token)
    except ValueError:
        raise InstanceFormatError(f"line {line_no}: expected a number, got '{token}'") from None


def parse_instance(text: str, name: str = "instance") -> Instance:
    lines = [(no, _strip(raw)) for no, raw in enumerate(text.splitlines(), start=1)]
    lines = [(no, line) for no, line in lines if line]

    header: dict = {}
    cursor = 0
    while cursor < len(lines):
        no, line = lines[cursor]
        tokens = line.split()
        key = tokens[0].lower()
        if key not in HEADER_KEYS or len(tokens) != 2:
            break
        if key in header:
            raise InstanceFormatError(f"line {no}: duplicate header line '{key}' (first on line {header[key][1]})")
        header[key] = (tokens[1], no)
        cursor += 1

    for key in ("n", "m", "tmax"):
        if key not in header:
            where = lines[cursor][0] if cursor < len(lines) else len(text.splitlines())
            raise InstanceFormatError(f"line {where}: missing header line '{key} <value>'")
    n = _number(header["n"][0], header["n"][1], int)
    m = _number(header["m"][0], header["m"][1], int)
    t_max = _number(header["tmax"][0], header["tmax"][1])

    coordinates, profits, services = [], [], []
    for _ in range(n):
        if cursor >= len(lines):
            raise InstanceFormatError(f"line {len(text.splitlines())}: expected {n} node lines, found {len(coordinates)}")
        no, line = lines[cursor]
        tokens = line.split()
        if tokens[0].upper() in SECTION_KEYWORDS or len(tokens) not in (3, 4):
            raise InstanceFormatError(f"line {no}: expected 'x y profit [service]', got '{line}'")
        x, y, profit = (_number(t, no) for t in tokens[:3])
        service = _number(tokens[3], no) if len(tokens) == 4 else 0.0
        coordinates.append((x, y))
        profits.append(profit)
        services.append(service)
        cursor += 1

    sections: dict[str, list] = {key: [] for key in SECTION_KEYWORDS}
    seen: dict[str, int] = {}
    current: Optional[str] = None
    for no, line in lines[cursor:]:
        tokens = line.split()
        if tokens[0].upper() in SECTION_KEYWORDS and len(tokens) == 1:
            current = tokens[0].upper()
            if current in seen:
                raise InstanceFormatError(f"line {no}: duplicate section {current} (first on line {seen[current]})")
            seen[current] = no
            continue
        if current is None:
            raise InstanceFormatError(f"line {no}: unexpected content after node lines: '{line}'")
        if current == "MANDATORY":
            sections[current].extend(_number(t, no, int) for t in tokens)
        elif current in ("PHYSICAL", "LOGICAL"):
            if len(tokens) != 2:
                raise InstanceFormatError(f"line {no}: expected a pair 'i j' in {current}, got '{line}'")
            sections[current].append((_number(tokens[0], no, int), _number(tokens[1], no, int)))
        else:
            if sections[current]:
                raise InstanceFormatError(f"line {no}: VARIANT takes a single value")
            if tokens[0] not in ("P", "PL") or len(tokens) != 1:
                raise InstanceFormatError(f"line {no}: variant must be P or PL, got '{line}'")
            sections[current].append(tokens[0])

    variant = sections["VARIANT"][0] if sections["VARIANT"] else "P"
    try:
        return Instance(
            name=name,
            node_count=n,
            fleet_size=m,
            t_max=t_max,
            coordinates=coordinates,
            profits=profits,
            service_times=services,
            mandatory=sections["MANDATORY"],
            physical=sections["PHYSICAL"],
            logical=sections["LOGICAL"],
            variant=variant,
            symmetric_physical=header.get("symmetric", ("0", 0))[0] == "1",
            exact_feasibility=header.get("exact", ("0", 0))[0] == "1",
        )
    except ValidationError as e:
        raise InstanceFormatError(f"invalid instance '{name}': {e}") from e


def load_instance(path: Union[str, Path]) -> Instance:
    path = Path(path)
    logger.debug(f"Reading instance file: {path}")
    return parse_instance(path.read_text(encoding="utf-8"), name=path.stem)


def write_instance(instance: Instance) -> str:
    """Canonical text form; floats are written with repr so parsing is exact."""
    if instance.coordinates is None:
        raise InstanceFormatError(f"instance '{instance.name}' has no coordinates and cannot be written")
    out: List[str] = [f"n {instance.node_count}", f"m {instance.fleet_size}", f"tmax {instance.t_max!r}"]
    if instance.symmetric_physical:
        out.append("symmetric 1")
    if instance.exact_feasibility:
        out.append("exact 1")
    for (x, y), profit, service in zip(instance.coordinates, instance.profits, instance.service_times):
        out.append(f"{x!r} {y!r} {profit!r} {service!r}")
    if instance.mandatory:
        out.append("MANDATORY")
        out.append(" ".join(str(k) for k in instance.mandatory))
    if instance.physical:
        out.append("PHYSICAL")
        out.extend(f"{i} {j}" for i, j in instance.physical)
    if instance.logical:
        out.append("LOGICAL")
        out.extend(f"{i} {j}" for i, j in instance.logical)
    out.append("VARIANT")
    out.append(instance.variant)
    return "\n".join(out) + "\n"
