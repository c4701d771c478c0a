#!/usr/bin/env python3
"""Smoke test for the lindblad_py extension module.

Locates the cdylib under target/ (debug or release, whichever is newer),
exposes it under the importable name, and exercises the Python API end to
end.  Exits non-zero on the first failed check.

Build the extension first:

    cargo build -p lindblad-py            # or --release
    python3 python/smoke_test.py
"""

import math
import os
import shutil
import sys
import tempfile


def locate_cdylib():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    names = {
        "linux": "liblindblad_py.so",
        "darwin": "liblindblad_py.dylib",
        "win32": "lindblad_py.dll",
    }
    name = names.get(sys.platform, "liblindblad_py.so")
    candidates = [
        os.path.join(root, "target", profile, name) for profile in ("debug", "release")
    ]
    candidates = [p for p in candidates if os.path.exists(p)]
    if not candidates:
        sys.exit("no built extension found; run `cargo build -p lindblad-py` first")
    return max(candidates, key=os.path.getmtime)


def import_module():
    src = locate_cdylib()
    stage = tempfile.mkdtemp(prefix="lindblad_py_smoke_")
    ext = ".pyd" if sys.platform == "win32" else ".so"
    shutil.copy2(src, os.path.join(stage, "lindblad_py" + ext))
    sys.path.insert(0, stage)
    import lindblad_py

    return lindblad_py


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    lp = import_module()
    print(f"lindblad_py {lp.__version__} from {lp.__file__}")

    # spec round trip and norms
    ad = lp.Spec.amplitude_damping()
    assert ad.n == 1 and ad.m == 1 and ad.dim == 2
    approx(ad.pauli_norm(), 1.0)
    approx(ad.ops_norm(), 1.0)
    again = lp.Spec(ad.to_json())
    approx(again.pauli_norm(), ad.pauli_norm())
    print(f"spec: {ad!r}")

    # success-probability table
    std, new = lp.success_probabilities(0.25)
    approx(std, 4.0 / 9.0, 1e-12)
    approx(new, 0.8, 1e-12)

    # one-step map: Kraus shapes and the second-order TP defect
    kraus = lp.m_delta(ad, 0.1)
    assert len(kraus) == 2 and len(kraus[0]) == 2
    defect = lp.m_delta_tp_defect(ad, 0.1)
    assert 0 < defect < (0.1 * ad.pauli_norm()) ** 2 + 1e-12
    lo, hi = lp.m_delta_error(ad, 0.1)
    assert 0 <= lo <= hi <= 2 * (0.1 * ad.ops_norm()) ** 2 + 1e-9
    print(f"m_delta: defect {defect:.3e}, diamond interval [{lo:.3e}, {hi:.3e}]")

    # amplified segment
    delta = lp.solve_delta(ad, 4)
    d2, seg_defect, bound = lp.segment_defect(ad, 4)
    approx(d2, delta, 1e-12)
    assert seg_defect <= bound
    dist = lp.oaa_distance(ad, 4, delta, seed=7)
    assert 0 < dist < 0.1
    print(f"segment r=4: delta {delta:.4f}, defect {seg_defect:.3e} <= {bound:.3e}")

    # end-to-end pipeline: t = ln 2 sends |1><1| halfway to the ground state
    res = lp.simulate(ad, t=math.log(2), eps=0.05)
    assert res["diamond_lower"] <= 0.05
    rho = lp.evolve_density(ad, math.log(2), [[0, 0], [0, 1]])
    approx(rho[0][0].real, 0.5, 1e-12)
    ch = res["channel"]
    # vec(|1><1|) = e_3; column 3 of the channel is N[|1><1|]
    n00 = ch[0][3].real
    assert abs(n00 - 0.5) <= 0.05
    print(
        f"simulate: segments {res['segments']}, r {res['r']}, "
        f"certified interval [{res['diamond_lower']:.4f}, {res['diamond_upper']:.4f}]"
    )

    # counting model
    assert lp.poisson_h(1e-3) == 6
    rep = lp.cost(ad, math.log(2), 0.05)
    assert rep["gate_count"] > 0 and rep["q_dim"] == 7
    print(f"cost: {rep['gate_count']} blocks over {rep['segments']} segment(s)")

    # dilation experiments
    lo, hi = lp.fig1_error(ad, math.log(2), 64)
    assert 0 < lo <= hi < 1e-2
    star = lp.min_delta(ad, math.log(2), 16, 0.25)
    assert star is not None and 0 < star[0] < 0.2
    print(f"fig1 N=64: [{lo:.3e}, {hi:.3e}]; min_delta N=16: {star[0]:.5f}")

    # error paths surface as Python exceptions
    try:
        lp.Spec("{not json")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed spec must raise ValueError")

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
