"""Smoke test for the pylagtetra extension module."""

import cmath
import json
import math

import pylagtetra as lt


def close(a, b, eps=1e-9):
    return abs(a - b) < eps


def main():
    for name, expected in [("closed", "Closed"), ("intermediate", "Intermediate"), ("open", "Open")]:
        w = lt.Lagrangian.representative(name)
        assert w.classify() == expected, (name, w.classify())
        g = lt.Mobius.random(7)
        assert w.transform(g).classify() == expected

    # <X²Y, X³+Y³>: barycenter (0, 2^(-1/6))
    w = lt.Lagrangian([0, 1, 0, 0], [1, 0, 0, 1])
    t = lt.g_inverse(w)
    z, h = t.barycenter()
    assert close(z, 0) and close(h, 2 ** (-1 / 6)), (z, h)
    assert t.lagrangian().same_plane(w, 1e-12)
    assert close(t.cross_ratio(), (1 - math.sqrt(3) * 1j) / 2)

    closed = lt.Lagrangian.representative("closed")
    assert closed.in_kr()
    first, second = lt.g_inverse(closed)
    assert close(first, 0) and close(second, 0)

    std = lt.Tetra.standard()
    z, h = std.barycenter()
    assert close(z, 0) and close(h, math.sqrt(2))
    assert all(close(d, math.log(math.sqrt(2))) for d in std.face_distances())
    assert None in std.vertices()

    back = lt.Tetra.from_json(std.to_json())
    assert back.distance(std) < 1e-15

    x, h = lt.project_q_h2(lt.Lagrangian.random("open", 3))
    assert h > 0

    t = lt.Tetra.random_on_axis(11)
    assert lt.phi(t, 0.0).distance(t) == 0.0
    moved = lt.phi(t, 2.5)
    assert isinstance(moved, lt.Tetra)
    limit = lt.phi(t, math.inf)
    assert limit[0] == "+"
    frames = json.loads(lt.scene(t, -5, 5, 11))
    assert len(frames) == 11

    assert close(lt.eta_b_o(), lt.eta_a_o() - 1)
    for u in lt.phi_fiber(0.5 + 0.2j, 4):
        sign, second = lt.phi(u, math.inf)
        assert sign == "+" and cmath.isclose(second, 0.5 + 0.2j, abs_tol=1e-8)

    cert = json.loads(lt.certificate())
    assert cert["form"] == [["1", "0"], ["0", "-1"]]
    assert cert["classification"]["model"] == "CP²#C̄P²"
    assert lt.betti() == ["Z", "0", "Z²", "0", "Z"]
    assert lt.classify_form([[0, 1], [1, 0]])[2:] == ("even", "indefinite", "S²×S²")

    passed, report = lt.verify(["topology", "projective"], samples=200)
    assert passed, report

    try:
        lt.Lagrangian([1, 0, 0, 0], [1, 0, 0, 0])
    except lt.GeometryError as e:
        assert isinstance(e, ValueError)
    else:
        raise AssertionError("dependent basis accepted")

    print("pylagtetra smoke test passed")


if __name__ == "__main__":
    main()
