"""Family files: a header ``n k q`` followed by the member bit-set in hex.

Bit i of the hex integer is catalog id i (catalogs are in lexicographic
RREF order, so files are stable across runs). Lines starting with ``#``
are comments.
"""

from __future__ import annotations

from pathlib import Path

from .families import Family
from .geometry import Catalog, space


def dumps_family(Y: Family, comment: str | None = None) -> str:
    c = Y.catalog
    out = []
    if comment:
        out += [f"# {ln}" for ln in comment.splitlines()]
    out.append(f"{c.n} {c.k} {c.q}")
    out.append(format(Y.mask, "x"))
    return "\n".join(out) + "\n"


def loads_family(text: str, catalog: Catalog | None = None) -> Family:
    rows = [ln.strip() for ln in text.splitlines()
            if ln.strip() and not ln.lstrip().startswith("#")]
    if len(rows) != 2:
        raise ValueError("family file needs a header line and one hex line")
    try:
        n, k, q = (int(x) for x in rows[0].split())
        mask = int(rows[1], 16)
    except ValueError as exc:
        raise ValueError(f"malformed family file: {exc}") from None
    if catalog is None:
        catalog = space(n, q).catalog(k)
    elif (catalog.n, catalog.k, catalog.q) != (n, k, q):
        raise ValueError("family file parameters do not match the catalog")
    return Family(catalog, mask)


def write_family(path, Y: Family, comment: str | None = None) -> None:
    Path(path).write_text(dumps_family(Y, comment))


def read_family(path, catalog: Catalog | None = None) -> Family:
    return loads_family(Path(path).read_text(), catalog)
