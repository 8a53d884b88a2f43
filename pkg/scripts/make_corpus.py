#!/usr/bin/env python3
"""Regenerate the checked-in corpus files.

Zeros and poles are placed at radius <= 0.8 r: the product quadrature
converges exponentially in the gap between the zero spheres and the
integration sphere, and 0.2 r of clearance keeps the n = 48 residual
comfortably under the 1e-6 acceptance tolerance (a sphere at 0.8 r is
the deliberate near-boundary stress case at ~1e-7).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from slicereg.io import function_to_dict
from slicereg.quaternions import Quaternion
from slicereg.slicepoly import SlicePolynomial
from slicereg.zeros_poles import SemiregularFunction, characteristic_poly

OUT = Path(__file__).resolve().parent.parent / "corpus"


def lin(*comps: float) -> SlicePolynomial:
    return SlicePolynomial.linear(Quaternion(*comps))


def real_poly(*coeffs: float) -> SlicePolynomial:
    return SlicePolynomial.from_real(list(coeffs))


def poly_cases() -> list[tuple[str, SlicePolynomial, float]]:
    deg6 = (
        characteristic_poly(Quaternion(0.0, 0.5, 0.0, 0.0))
        * real_poly(-0.3, 1.0)
        * real_poly(0.2, 1.0)
        * lin(0.0, 0.0, 0.0, 0.45)
        * lin(0.3, 0.35, 0.0, 0.0)
    )
    deg8 = (
        real_poly(-0.3, 1.0)
        * real_poly(0.45, 1.0)
        * characteristic_poly(Quaternion(0.1, 0.4, 0.0, 0.0))
        * lin(0.2, 0.0, 0.5, 0.0)
        * lin(-0.1, 0.3, 0.3, 0.3)
        * lin(0.0, 0.55, 0.0, 0.0)
        * real_poly(0.25, 1.0)
    )
    return [
        ("real_simple", real_poly(-0.5, 1.0), 1.0),
        ("real_negative", real_poly(0.45, 1.0), 1.0),
        ("real_triple", real_poly(-0.3, 1.0) ** 3, 0.8),
        ("spherical", real_poly(0.25, 0.0, 1.0), 1.0),
        ("spherical_double", real_poly(0.16, 0.0, 1.0) ** 2, 0.8),
        ("isolated_pair", lin(0.0, 0.5, 0.0, 0.0) * lin(0.0, 0.0, 0.5, 0.0), 1.0),
        ("isolated_linear", lin(0.3, 0.0, 0.4, 0.0), 1.0),
        (
            "mixed_deg4",
            real_poly(-0.3, 1.0) * real_poly(0.25, 1.0) * characteristic_poly(Quaternion(0.1, 0.45, 0.0, 0.0)),
            1.0,
        ),
        (
            "mixed_deg5",
            real_poly(-0.6, 1.0) * characteristic_poly(Quaternion(0.2, 0.7, 0.0, 0.0)) * lin(0.5, 0.0, 0.0, 0.6),
            1.5,
        ),
        ("deg6_mixed", deg6, 1.0),
        ("deg7_mixed", deg6 * real_poly(-0.55, 1.0), 1.0),
        ("deg8_all_kinds", deg8, 1.0),
        ("near_boundary_sphere", real_poly(0.64, 0.0, 1.0), 1.0),
        (
            "quaternion_coeffs_deg3",
            lin(0.0, 0.2, 0.0, 0.0) * lin(0.3, 0.0, 0.3, 0.0) * real_poly(0.35, 1.0),
            0.8,
        ),
        ("isolated_double", lin(0.0, 0.0, 0.4, 0.0) * lin(0.0, 0.0, 0.4, 0.0), 1.0),
    ]


def rational_cases() -> list[tuple[str, SemiregularFunction, float]]:
    return [
        (
            "remark_nonuniform",
            SemiregularFunction(real_poly(1.0, 0.0, 1.0), SlicePolynomial([Quaternion(0, 1, 0, 0), Quaternion(1, 0, 0, 0)])),
            2.0,
        ),
        ("real_pole", SemiregularFunction(real_poly(-0.5, 1.0), real_poly(1.0)), 0.8),
        (
            "real_pole_order2",
            SemiregularFunction(real_poly(-0.5, 1.0) ** 2, real_poly(0.6, 1.0)),
            1.0,
        ),
        (
            "uniform_sphere_pole",
            SemiregularFunction(real_poly(0.25, 0.0, 1.0), real_poly(-0.7, 1.0)),
            1.5,
        ),
        (
            "nonuniform_with_real_zero",
            SemiregularFunction(
                real_poly(0.36, 0.0, 1.0),
                lin(0.0, 0.6, 0.0, 0.0) * real_poly(0.2, 1.0),
            ),
            1.0,
        ),
        (
            "pole_outside_ball",
            SemiregularFunction(real_poly(4.0, 0.0, 1.0), real_poly(-0.5, 1.0)),
            1.0,
        ),
        (
            "real_pole_spherical_zero",
            SemiregularFunction(real_poly(-0.4, 1.0), real_poly(0.49, 0.0, 1.0)),
            1.0,
        ),
    ]


def main() -> None:
    OUT.mkdir(exist_ok=True)
    manifests = {"polynomials": [], "rationals": []}
    for name, f, r in poly_cases():
        path = OUT / f"poly_{name}.json"
        path.write_text(json.dumps(function_to_dict(f), indent=2) + "\n")
        manifests["polynomials"].append({"file": path.name, "name": name, "r": r})
    for name, f, r in rational_cases():
        path = OUT / f"rat_{name}.json"
        path.write_text(json.dumps(function_to_dict(f), indent=2) + "\n")
        manifests["rationals"].append({"file": path.name, "name": name, "r": r})
    for kind, cases in manifests.items():
        (OUT / f"{kind}.json").write_text(json.dumps({"cases": cases}, indent=2) + "\n")
    print(f"wrote {len(manifests['polynomials'])} polynomial and {len(manifests['rationals'])} rational cases to {OUT}")


if __name__ == "__main__":
    main()
