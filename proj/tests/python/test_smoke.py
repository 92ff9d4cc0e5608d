#!/usr/bin/env python3
"""Smoke test for the python bindings; run with PYTHONPATH pointing at the
directory containing the compiled _pirsi module."""

from fractions import Fraction

import _pirsi as p


def test_capacities():
    assert p.capacity_w(8, 2) == Fraction(1, 3)
    assert p.capacity_w(5, 1) == Fraction(1, 3)
    assert p.capacity_ws(8, 2) == Fraction(1, 6)
    assert p.multiserver_rate_lb(2, 4, 1) == Fraction(2, 3)
    assert p.lemma5_lower_bound(3, 1) == 2
    assert p.joint_prior(1, [2], 4, 1) == Fraction(1, 12)


def test_gf():
    assert p.gf_mul(0x2, 0x9, 4) == 0x1
    assert p.gf_inv(0x2, 4) == 0x9
    try:
        p.gf_inv(0, 4)
    except ValueError:
        pass
    else:
        raise AssertionError("gf_inv(0) should raise")


def test_database_roundtrip(tmp="/tmp/pirsi_smoke.pirdb"):
    db = p.random_database(5, 12, seed=7)
    assert db.K == 5 and db.t == 12 and len(db.messages) == 5
    p.save_database(db, tmp)
    back = p.load_database(tmp)
    assert back.messages == db.messages


def test_fetch_local():
    db = p.random_database(8, 8, seed=1)
    r = p.fetch_local("partition", db, n=1, m=2, w=2, s=[4, 6], seed=3)
    assert r["message"] == db.messages[1]
    assert r["downloaded_bits"] == 24 and r["rate"] == Fraction(1, 3)

    r = p.fetch_local("mds", db, n=1, m=2, w=5, s=[1, 2], seed=3)
    assert r["message"] == db.messages[4]
    assert r["downloaded_bits"] == 48 and r["rate"] == Fraction(1, 6)

    db4 = p.random_database(4, 4, seed=2)
    r = p.fetch_local("multiserver", db4, n=2, m=1, w=2, s=[4], seed=3)
    assert r["message"] == db4.messages[1]
    assert r["downloaded_bits"] == 6 and r["rate"] == Fraction(2, 3)
    assert "transcript_json" in r


def test_audits():
    a = p.audit_exact("partition", 4, 1)
    assert a["max_deviation_w"] == 0
    assert a["max_deviation_ws"] > 0
    a = p.audit_exact("mds", 4, 1)
    assert a["max_deviation_ws"] == 0

    q = p.enumerate_partition_queries(3, 1, [2])
    assert q == {"1,2|3": Fraction(2, 3), "1|2,3": Fraction(1, 3)}

    s = p.audit_multiserver_statistical(4, 1, samples=2000, seed=5)
    assert s["chi_square_p"] > 0.001
    assert s["max_total_variation"] < 0.1


def test_mais():
    z = p.mais_greedy([[2], [3], [1]], seed=0, lowest_index=True)
    assert len(z) >= 1
    assert p.mais_greedy([[], [], []], seed=0) == [1, 2, 3]


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"PASS {name}")
            except Exception as exc:  # noqa: BLE001
                failures += 1
                print(f"FAIL {name}: {exc}")
    raise SystemExit(1 if failures else 0)
