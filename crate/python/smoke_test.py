"""Smoke test for the `gft` extension module.

Build and install first, e.g. `pip install --no-build-isolation -e crates/python`.
"""

import json
import math

import gft

CONST = json.dumps({"terms": [{"coef": [1, 0], "atom": {"kind": "const"}}]})
ABS_EXP = json.dumps({"terms": [{"coef": [1, 0], "atom": {"kind": "abs_exp", "a": [1, 0]}}]})
ABS_GEOM = json.dumps({"terms": [{"coef": [1, 0], "atom": {"kind": "abs_geom", "a": [0.5, 0]}}]})
SCALE_EXP = json.dumps({"terms": [{"coef": [1, 0], "atom": {"kind": "exp", "a": 1.0}}]})


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b}"


def main():
    close(gft.gft(CONST, 1.0, 0.0), 2.0, 1e-15)
    for w in (-2.0, 0.5, 3.0):
        s = 1.5
        close(gft.gft(ABS_EXP, 0.5, w), 2 * s / (s * s + w * w), 1e-14)
        close(gft.gft(ABS_EXP, 0.5, w, numeric=True), 2 * s / (s * s + w * w), 1e-7)
    close(gft.igft(ABS_EXP, 0.5, -1.0), math.exp(-1.0), 1e-6)
    assert json.loads(gft.catalog(ABS_EXP))["roc"]

    close(gft.gdtft(ABS_GEOM, 0.0, 0.0), 3.0, 1e-14)

    sol = json.loads(gft.solve_ode([1, 0, 4], [1, 0]))
    assert sol == {"terms": [{"coef": [1.0, 0.0], "atom": {"kind": "cos", "omega0": 2.0}}]}, sol
    xs = gft.solve_difference([1, -0.5], [2], 5)
    for n, x in enumerate(xs):
        close(x, 0.5**n, 1e-14)

    assert gft.generalized_gamma(2) == 0
    close(gft.generalized_gamma(3), 4.0, 1e-14)
    s, x = 1 + 1j, 0.7
    total = gft.incomplete_gamma("lower", s, x) + gft.incomplete_gamma("upper", s, x)
    close(total, gft.gamma(s), 1e-10)

    close(gft.fst(SCALE_EXP, 2.0, 0.0), gft.incomplete_gamma("lower", 2, 1) + gft.incomplete_gamma("upper", -2, 1), 1e-8)
    close(gft.ifst(SCALE_EXP, 1.0, 2.0), math.exp(-2.0), 1e-4)

    close(gft.cauchy_damped_moment(2, 1.0), 0.2409927, 1e-6)
    assert gft.cauchy_damped_moment(3, 1.0) == 0.0

    try:
        gft.gft(CONST, -1.0, 0.0)
    except gft.RegionError as e:
        assert isinstance(e, gft.GftError)
    else:
        raise AssertionError("expected RegionError")
    try:
        gft.gft("{", 1.0, 0.0)
    except gft.GftError:
        pass
    else:
        raise AssertionError("expected GftError")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
