"""Line-oriented scheme files.

Header ``key=value`` lines, then ``leaves=<count>`` followed by one line per
leaf.  Tree-addressed leaves are ``counts|payload_bits|depth|weight``; for
sphere-shaped sets the second field holds the exact used-sequence count and
the depth field is empty (``counts|used_count||weight``).  All integers are
decimal and arbitrary precision; floats use repr so files are byte-stable
across runs and platforms.  No timestamps.
"""

from __future__ import annotations

from . import __version__
from .combinatorics import AmplitudeAlphabet
from .errors import SchemeFileError
from .schemes import AddressedComposition, CompositionSet

TOOL_VERSION = f"dmshape {__version__}"


def _format_number(x: float) -> str:
    return repr(float(x))


def _format_level(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def scheme_to_text(built: CompositionSet) -> str:
    lines = [
        f"scheme={built.scheme}",
        f"n={built.n}",
        f"k={built.k}",
        "alphabet=" + ",".join(_format_level(x) for x in built.alphabet.levels),
        f"tool_version={TOOL_VERSION}",
        f"rate_loss={_format_number(built.rate_loss)}",
        "avg_pmf=" + ",".join(_format_number(p) for p in built.avg_pmf),
    ]
    if built.e_max is not None:
        lines.append(f"e_max={_format_number(built.e_max)}")
    lines.append(f"leaves={len(built.leaves)}")
    for leaf in built.leaves:
        counts = ",".join(str(c) for c in leaf.counts)
        if leaf.payload_bits is not None:
            mid = f"{leaf.payload_bits}|{leaf.depth}"
        else:
            mid = f"{leaf.used_count}|"
        lines.append(f"{counts}|{mid}|{_format_number(leaf.weight)}")
    return "\n".join(lines) + "\n"


def write_scheme(built: CompositionSet, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(scheme_to_text(built))


def read_scheme(path: str) -> CompositionSet:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise SchemeFileError(f"cannot read scheme file {path}: {exc}") from exc
    header: dict[str, str] = {}
    i = 0
    n_leaves = None
    while i < len(lines):
        line = lines[i]
        i += 1
        if not line.strip():
            continue
        if "=" not in line:
            raise SchemeFileError(f"{path}: malformed header line {line!r}")
        key, _, value = line.partition("=")
        if key == "leaves":
            n_leaves = int(value)
            break
        header[key] = value
    if n_leaves is None:
        raise SchemeFileError(f"{path}: missing leaves section")
    try:
        scheme = header["scheme"]
        n = int(header["n"])
        k = int(header["k"])
        alphabet = AmplitudeAlphabet(
            tuple(float(x) for x in header["alphabet"].split(",")))
        rate_loss = float(header["rate_loss"])
        avg_pmf = tuple(float(x) for x in header["avg_pmf"].split(","))
        e_max = float(header["e_max"]) if "e_max" in header else None
    except (KeyError, ValueError) as exc:
        raise SchemeFileError(f"{path}: bad header: {exc}") from exc
    leaf_lines = [ln for ln in lines[i:] if ln.strip()]
    if len(leaf_lines) != n_leaves:
        raise SchemeFileError(
            f"{path}: expected {n_leaves} leaf lines, found {len(leaf_lines)}")
    leaves = []
    tree = scheme != "ess"
    for ln in leaf_lines:
        parts = ln.split("|")
        if len(parts) != 4:
            raise SchemeFileError(f"{path}: malformed leaf line {ln!r}")
        counts = tuple(int(x) for x in parts[0].split(","))
        weight = float(parts[3])
        if tree:
            leaves.append(AddressedComposition(
                counts=counts, weight=weight,
                payload_bits=int(parts[1]), depth=int(parts[2])))
        else:
            leaves.append(AddressedComposition(
                counts=counts, weight=weight, used_count=int(parts[1])))
    built = CompositionSet(scheme=scheme, n=n, k=k, alphabet=alphabet,
                           leaves=tuple(leaves), avg_pmf=avg_pmf,
                           rate_loss=rate_loss, e_max=e_max)
    try:
        built.validate()
    except Exception as exc:
        raise SchemeFileError(f"{path}: inconsistent scheme: {exc}") from exc
    return built
