"""Count records and the integrality guard shared by all counting backends."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Union

from .qexact import QRing

FAMILIES = ("gl", "u", "sp")
KINDS = ("pairs", "nilpotent_pairs", "class_size", "orbit_size", "group_order")
BACKENDS = ("class_sum", "gen_fn", "oracle")


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer (or integer polynomial) was not."""

    def __init__(self, stratum: str, value):
        self.stratum = stratum
        self.value = value
        super().__init__(f"non-integral result in {stratum}: {value}")


def exact(ring: QRing, x, stratum: str):
    """Return ``x`` as int (numeric) or polynomial (symbolic), else raise."""
    if not ring.is_integral(x):
        raise IntegralityError(stratum, x)
    if ring.symbolic:
        return x
    return x.numerator


@dataclass(frozen=True)
class CountReport:
    family: str
    n: int
    q: Union[int, str]
    kind: str
    backend: str
    value: Union[int, str]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")

    def to_dict(self) -> dict:
        d = asdict(self)
        # JSON numbers would survive, but some consumers choke on 200-digit ints
        if isinstance(self.value, int):
            d["value"] = str(self.value)
            d["value_type"] = "int"
        else:
            d["value_type"] = "qpoly"
        return d

    @classmethod
    def from_dict(cls, d: dict) -> CountReport:
        d = dict(d)
        vtype = d.pop("value_type", None)
        if vtype == "int":
            d["value"] = int(d["value"])
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
