"""Rational cuspidal divisor class groups of X0(N)."""

import json as _json

from . import _core

__all__ = ["cusps", "group", "group_text", "profile", "eta", "crosscheck", "parse_divisor", "verify"]


def _spec(divisor):
    if isinstance(divisor, str):
        return divisor
    if isinstance(divisor, dict):
        return _json.dumps({"N": divisor["N"], "coeffs": {str(k): v for k, v in divisor["coeffs"].items()}})
    raise TypeError("divisor must be a spec string or a {'N', 'coeffs'} dict")


def cusps(N):
    return _json.loads(_core.cusps_json(N))


def group(N, ell=0):
    return _json.loads(_core.group_json(N, ell))


def group_text(N):
    return _core.group_text(N)


def profile(N, divisor):
    return _json.loads(_core.profile_json(N, _spec(divisor)))


def eta(N, divisor, qexp=20):
    return _json.loads(_core.eta_json(N, _spec(divisor), qexp))


def crosscheck(N):
    return _json.loads(_core.crosscheck_json(N))


def verify(N):
    return crosscheck(N)["pass"]


def parse_divisor(text, N):
    return _json.loads(_core.parse_divisor_json(text, N))
