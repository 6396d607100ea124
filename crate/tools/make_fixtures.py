#!/usr/bin/env python3
"""Regenerate data/knots/*.tri and *.curves.json from the SnapPy census.

Needs snappy and regina. Each fixture is relabelled so every gluing is an
odd permutation; the figure-eight is further relabelled so that its quad
order matches the classical dual labelling (p, p', p'' on tet 0 and
q, q', q'' on tet 1).
"""
import itertools
import json
import sys
import warnings
from pathlib import Path

warnings.filterwarnings("ignore")
import regina  # noqa: E402
import snappy  # noqa: E402

KNOTS = ["3_1", "4_1", "5_2", "8_16", "8_17"]
OUT = Path(__file__).resolve().parent.parent / "data" / "knots"


def parity(p):
    inv = sum(1 for a in range(4) for b in range(a + 1, 4) if p[a] > p[b])
    return inv % 2


def compose(a, b):
    return tuple(a[b[k]] for k in range(4))


def inverse(a):
    r = [0] * 4
    for k in range(4):
        r[a[k]] = k
    return tuple(r)


def parse(text):
    lines = [ln for ln in text.splitlines()]
    i = 0
    while not lines[i].strip().isdigit() or len(lines[i].split()) != 1:
        i += 1
    # cusp count line precedes cusp descriptions; skip to tet count
    header = lines[:i]
    n = int(lines[i])
    i += 1
    tets = []
    for _ in range(n):
        while not lines[i].strip():
            i += 1
        nbr = [int(x) for x in lines[i].split()]
        perms = [tuple(int(c) for c in tok) for tok in lines[i + 1].split()]
        cusp = [int(x) for x in lines[i + 2].split()]
        curves = [[int(x) for x in lines[i + 3 + k].split()] for k in range(4)]
        shape = lines[i + 7]
        i += 8
        tets.append(dict(nbr=nbr, perms=perms, cusp=cusp, curves=curves, shape=shape))
    return header, tets


def render(header, tets):
    out = list(header)
    out.append(str(len(tets)))
    for t in tets:
        out.append("   " + " ".join("%4d" % x for x in t["nbr"]))
        out.append(" " + " ".join("".join(str(c) for c in p) for p in t["perms"]))
        out.append("   " + " ".join("%4d" % x for x in t["cusp"]))
        for row in t["curves"]:
            out.append(" " + " ".join("%2d" % x for x in row))
        out.append(t["shape"])
        out.append("")
    return "\n".join(out) + "\n"


def relabel(tets, pi, sigma):
    """Tet i becomes pi[i]; its vertex a becomes sigma[i][a]."""
    n = len(tets)
    new = [None] * n
    for i, t in enumerate(tets):
        s = sigma[i]
        nbr = [0] * 4
        perms = [None] * 4
        cusp = [0] * 4
        curves = [[0] * 16 for _ in range(4)]
        for f in range(4):
            j = t["nbr"][f]
            p = t["perms"][f]
            nbr[s[f]] = pi[j]
            perms[s[f]] = compose(sigma[j], compose(p, inverse(s)))
            cusp[s[f]] = t["cusp"][f]
        for k in range(4):
            for v in range(4):
                for f in range(4):
                    curves[k][4 * s[v] + s[f]] = t["curves"][k][4 * v + f]
        new[pi[i]] = dict(nbr=nbr, perms=perms, cusp=cusp, curves=curves, shape=t["shape"])
    return new


def make_odd(tets):
    n = len(tets)
    flip = [None] * n
    flip[0] = 0
    stack = [0]
    while stack:
        i = stack.pop()
        for f in range(4):
            j = tets[i]["nbr"][f]
            want = (1 - parity(tets[i]["perms"][f]) - flip[i]) % 2
            if flip[j] is None:
                flip[j] = want
                stack.append(j)
            elif flip[j] != want:
                raise SystemExit("triangulation is not orientable")
    sigma = [(0, 1, 3, 2) if fl else (0, 1, 2, 3) for fl in flip]
    return relabel(tets, list(range(n)), sigma)


def walk(tets, row):
    """Turn SnapPea crossing counts into a closed sequence of exits."""
    out = {}
    for i, t in enumerate(tets):
        for v in range(4):
            for f in range(4):
                c = t["curves"][row][4 * v + f]
                if c < 0:
                    out.setdefault((i, v), []).extend([f] * (-c))
    if not out:
        return []
    start = min(out)
    stack = [(start, None)]
    circuit = []
    while stack:
        node, step = stack[-1]
        if out.get(node):
            f = out[node].pop()
            j = tets[node[0]]["nbr"][f]
            w = tets[node[0]]["perms"][f][node[1]]
            stack.append(((j, w), [node[0], node[1], f]))
        else:
            stack.pop()
            if step is not None:
                circuit.append(step)
    circuit.reverse()
    if any(out.values()):
        raise SystemExit("peripheral curve is not connected")
    return circuit


def regina_data(header, tets):
    s = regina.SnapPeaTriangulation(render(header, tets))
    m = regina.makeMatchingEquations(s, regina.NS_QUAD)
    rows = [[int(str(m.entry(r, c))) for c in range(m.columns())] for r in range(m.rows())]
    e = s.slopeEquations()
    nu = [[int(str(e.entry(r, c))) for c in range(e.columns())] for r in range(e.rows())]
    return s, rows, nu


def rank(vectors):
    import sympy

    return sympy.Matrix(vectors).rank() if vectors else 0


def congruent(a, b, row):
    diff = [x - y for x, y in zip(a, b)]
    return rank([diff, row]) <= 1


def fig8(header, tets):
    want_row = [1, 1, -2, 1, 1, -2]
    want_mu = [0, -1, 1, -1, 0, 1]
    want_la = [2, 2, -4, 0, 0, 0]
    perms = list(itertools.permutations(range(4)))
    for pi in ([0, 1], [1, 0]):
        for s0 in perms:
            for s1 in perms:
                cand = relabel(tets, pi, [s0, s1])
                if any(parity(p) == 0 for t in cand for p in t["perms"]):
                    continue
                _, rows, nu = regina_data(header, cand)
                if not all(r in (want_row, [-x for x in want_row]) for r in rows):
                    continue
                mu, la = nu[0], nu[1]
                ok_mu = any(congruent([e * x for x in mu], want_mu, want_row) for e in (1, -1))
                ok_la = any(congruent([e * x for x in la], want_la, want_row) for e in (1, -1))
                if ok_mu and ok_la:
                    return cand
    raise SystemExit("no labelling of 4_1 matches the dual labelling")


def tri_text(name, tets):
    lines = ["# %s knot complement, ideal triangulation" % name, "tets %d" % len(tets)]
    for t in tets:
        lines.append(" ".join("%d:%s" % (j, "".join(map(str, p))) for j, p in zip(t["nbr"], t["perms"])))
    return "\n".join(lines) + "\n"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name in KNOTS:
        M = snappy.Manifold(name)
        header, tets = parse(M._to_string())
        tets = make_odd(tets)
        if name == "4_1":
            tets = fig8(header, tets)
        s, rows, nu = regina_data(header, tets)
        h1 = s.homology()
        assert str(h1) == "Z", (name, str(h1))
        assert s.countVertices() == 1 and s.vertex(0).linkType() == regina.Vertex3.TORUS
        (OUT / ("%s.tri" % name)).write_text(tri_text(name, tets))
        side = {
            "knot": name,
            "meridian": walk(tets, 0),
            "longitude": walk(tets, 2),
            "nu_meridian": nu[0],
            "nu_longitude": nu[1],
        }
        (OUT / ("%s.curves.json" % name)).write_text(json.dumps(side) + "\n")
        print(name, len(tets), "tets", file=sys.stderr)


if __name__ == "__main__":
    main()
