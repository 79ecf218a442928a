"""CSV, JSON and SVG emission.

Floats are written with ``repr`` (shortest string that parses back to the
same double), so reading a CSV and writing it again reproduces it byte for
byte.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict
from importlib import resources
from typing import Iterable, Sequence

from .existence import ExistenceCertificate, NoSolution
from .profile import ClosureReport, Profile, ProfileSample
from .period import PeriodSample

__all__ = [
    "SWEEP_HEADER",
    "PROFILE_HEADER",
    "format_float",
    "write_csv",
    "read_csv",
    "csv_text",
    "sweep_rows",
    "profile_rows",
    "certificate_to_dict",
    "closure_to_dict",
    "load_schema",
    "validate_certificate",
    "disk_svg",
]

SWEEP_HEADER = ("C", "t1", "t2", "T", "P")
PROFILE_HEADER = (
    "s", "w", "wdot", "r", "lambda", "mu", "vartheta", "theta",
    "y1", "y2", "y3", "energy_residual",
)


def format_float(x: float) -> str:
    return repr(float(x))


def write_csv(stream, header: Sequence[str], rows: Iterable[Sequence[float]]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(x) for x in row])


def read_csv(stream) -> tuple[list[str], list[list[float]]]:
    reader = csv.reader(stream)
    header = next(reader)
    return header, [[float(x) for x in row] for row in reader]


def csv_text(header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    buf = io.StringIO()
    write_csv(buf, header, rows)
    return buf.getvalue()


def sweep_rows(samples: Iterable[PeriodSample]):
    return [(p.C, p.t1, p.t2, p.T, p.P) for p in samples]


def profile_rows(samples: Iterable[ProfileSample]):
    return [
        (p.s, p.w, p.w_dot, p.r, p.lam, p.mu, p.vartheta, p.theta, *p.y, p.energy_residual)
        for p in samples
    ]


def certificate_to_dict(result: ExistenceCertificate | NoSolution, k: int | None = None) -> dict:
    p = result.params
    out = {
        "status": result.status,
        "params": {"n": p.n, "m": p.m, "H": p.H},
    }
    if k is not None:
        out["k"] = k
    out.update({
        "target": result.target,
        "bounds": {"A": result.bounds.A, "B": result.bounds.B},
        "table": [[C, P] for C, P in result.table],
    })
    if isinstance(result, ExistenceCertificate):
        out.update(
            C_star=result.C_star,
            P_achieved=result.P_achieved,
            residual=result.residual,
            bracket=list(result.bracketing),
        )
    else:
        out["reason"] = result.reason
    return out


def closure_to_dict(report: ClosureReport, profile: Profile | None = None) -> dict:
    out = asdict(report)
    if profile is not None:
        p = profile.params
        out.update(
            params={"n": p.n, "m": p.m, "H": p.H},
            C=profile.C,
            T=profile.T,
            P=profile.P,
            t1=profile.t1,
            t2=profile.t2,
        )
    return out


def load_schema() -> dict:
    text = resources.files("hmsphere").joinpath("schemas/certificate.schema.json").read_text()
    return json.loads(text)


def validate_certificate(doc: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``doc`` does not match the schema."""
    import jsonschema

    jsonschema.validate(doc, load_schema())


def disk_svg(points: Sequence[tuple[float, float]], size: int = 480, title: str = "") -> str:
    """SVG 1.1 drawing of a closed curve in the unit disk, with the unit circle.

    The y axis is flipped so the drawing uses the usual mathematical orientation.
    """
    if not points:
        raise ValueError("no points to draw")
    if not all(math.isfinite(x) and math.isfinite(y) for x, y in points):
        raise ValueError("non-finite point")
    d = "M {:.6f} {:.6f} ".format(points[0][0], -points[0][1])
    d += " ".join("L {:.6f} {:.6f}".format(x, -y) for x, y in points[1:])
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="-1.1 -1.1 2.2 2.2">',
    ]
    if title:
        esc = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        lines.append(f"  <title>{esc}</title>")
    lines += [
        '  <rect x="-1.1" y="-1.1" width="2.2" height="2.2" fill="white"/>',
        '  <circle cx="0" cy="0" r="1" fill="none" stroke="#888888" stroke-width="0.006"/>',
        '  <line x1="-1.05" y1="0" x2="1.05" y2="0" stroke="#cccccc" stroke-width="0.003"/>',
        '  <line x1="0" y1="-1.05" x2="0" y2="1.05" stroke="#cccccc" stroke-width="0.003"/>',
        f'  <path d="{d}" fill="none" stroke="#1f4e9c" stroke-width="0.008" '
        'stroke-linejoin="round"/>',
        "</svg>",
        "",
    ]
    return "\n".join(lines)
