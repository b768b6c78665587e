"""Exact verification of anomaly-factorization identities.

Thin Python layer over the C++ engine. Reports come back as parsed JSON
documents with the same shape as ``anomod verify --format json``.
"""

from __future__ import annotations

import json
from typing import Any, Sequence

from ._anomod import (
    ConfigurationError,
    ParseError,
    UnsupportedConfiguration,
    identity_targets,
    run_cli,
    theta2_coefficients,
    verify_json,
)

__all__ = [
    "ConfigurationError",
    "ParseError",
    "UnsupportedConfiguration",
    "cli",
    "identity_targets",
    "numeric_transforms",
    "self_test",
    "theta2_coefficients",
    "verify",
    "verify_all",
]


def verify(
    target: str,
    *,
    ranks: str = "",
    xi: str = "",
    euler_mode: str = "both",
    q_order: int = 12,
) -> dict[str, Any]:
    """Verify one identity target (agw, gs, sw, remark, theorem1, cor1..cor3)."""
    return json.loads(verify_json(target, ranks, xi, euler_mode, q_order, False))


def cli(args: Sequence[str]) -> tuple[int, str]:
    """Run the command-line interface in-process; returns (exit_code, stdout).

    Error text is appended to stdout when the exit code is 2.
    """
    code, out, err = run_cli(list(args))
    return code, out + err


def _cli_json(args: Sequence[str]) -> dict[str, Any]:
    code, out, err = run_cli([*args, "--format", "json", "--no-timing"])
    if code == 2:
        raise ConfigurationError(err.strip())
    return json.loads(out)


def verify_all() -> dict[str, Any]:
    """Run the full verification matrix."""
    return _cli_json(["verify", "all"])


def self_test() -> dict[str, Any]:
    """Inject known faults and confirm each one is detected."""
    return _cli_json(["self-test"])


def numeric_transforms(tau: complex = 0.1 + 1.2j, v: complex = 0.3 + 0.1j, terms: int = 64) -> dict[str, Any]:
    """Check the theta / E2 / level-2 transformation laws numerically at tau."""
    return _cli_json(
        [
            "numeric",
            "transforms",
            "--tau",
            f"{tau.real!r},{tau.imag!r}",
            "--v",
            f"{v.real!r},{v.imag!r}",
            "--terms",
            str(terms),
        ]
    )
