"""Smoke test for the tdo Python module.

Build the extension and put it on the path first, for example:

    cargo build --release -p tdo-py
    cp target/release/libtdo.so python/tdo.so
    python3 python/smoke_test.py
"""

import tdo

TOFFOLI_NC = """\
qubits 3
h 2
cx 1 2
tdg 2
cx 0 2
t 2
cx 1 2
tdg 2
cx 0 2
t 2
tdg 1
h 2
cx 0 1
tdg 1
cx 0 1
s 1
t 0
"""


def main():
    c = tdo.Circuit.parse(TOFFOLI_NC)
    m = c.metrics()
    assert m["t_count"] == 7 and m["t_depth_as_written"] == 6, m
    assert tdo.Circuit.parse(c.emit()) == c

    ccx = tdo.Circuit.parse("qubits 3\nccx 0 1 2\n")
    fast = tdo.build("toffoli-tdepth1")
    assert fast.metrics()["t_depth_scheduled"] == 1
    assert fast.metrics()["depth"] == 7
    assert tdo.equivalent(fast, ccx)
    assert tdo.equivalent(c, ccx)

    mcx = tdo.build("multi-controlled-x", controls=5)
    assert mcx.metrics()["t_count"] == 31

    core = tdo.Circuit.parse("\n".join(l for l in TOFFOLI_NC.splitlines() if not l.startswith("h ")))
    assert tdo.validate_gateset(c) == [0, 10]
    flat = tdo.rewrite(core)
    assert flat.n_anc == 7 and flat.metrics()["t_depth_scheduled"] == 1
    assert tdo.equivalent(flat, core)
    assert tdo.rewrite(core, stages=2).n_anc == 4
    try:
        tdo.rewrite(c)
    except ValueError as e:
        assert "position 0" in str(e)
    else:
        raise AssertionError("rewrite accepted a Hadamard")

    v = tdo.obstruction_verdict(tdo.Circuit.parse("qubits 1\nt 0\nh 0\nt 0\n"))
    assert v["conclusion"] == "no-tdepth1-possible", v
    assert abs(v["e_zero_float"] - 2 ** -0.5) < 1e-12

    try:
        tdo.Circuit.parse("qubits 1\nt 3\n")
    except ValueError as e:
        assert str(e).startswith("2:3:"), e
    else:
        raise AssertionError("bad qubit accepted")

    print("python smoke test passed:", ", ".join(tdo.constructions()))


if __name__ == "__main__":
    main()
