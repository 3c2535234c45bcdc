"""Writes g2b.json: the GKM graph of G2/B in simple-root coordinates."""
import json
from fractions import Fraction

IP = [[2, -3], [-3, 6]]  # invariant form on the basis (short, long)


def ip(x, y):
    return sum(x[i] * IP[i][j] * y[j] for i in range(2) for j in range(2))


def refl(g):
    def s(x):
        c = Fraction(2 * ip(x, g), ip(g, g))
        assert c.denominator == 1
        return tuple(x[i] - int(c) * g[i] for i in range(2))
    return s


def matrix(f):
    cols = [f((1, 0)), f((0, 1))]
    return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))


def mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def apply(m, x):
    return tuple(m[i][0] * x[0] + m[i][1] * x[1] for i in range(2))


simple = [matrix(refl((1, 0))), matrix(refl((0, 1)))]
ident = ((1, 0), (0, 1))
words = {ident: ""}
frontier = [ident]
while frontier:
    nxt = []
    for w in sorted(frontier, key=lambda m: words[m]):
        for i, s in enumerate(simple):
            u = mul(w, s)
            if u not in words:
                words[u] = words[w] + f"s{i + 1}"
                nxt.append(u)
            elif len(words[u]) == len(words[w]) + 2 and words[w] + f"s{i + 1}" < words[u]:
                words[u] = words[w] + f"s{i + 1}"
    frontier = nxt

positive = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
elems = sorted(words, key=lambda m: (len(words[m]), words[m]))
label = {m: (words[m] or "id") for m in elems}
edges = {}
for w in elems:
    for g in positive:
        u = mul(w, matrix(refl(g)))
        key = frozenset([w, u])
        if key not in edges:
            wt = apply(w, g)
            edges[key] = (label[w], label[u], [-wt[0], -wt[1]])
doc = {
    "rank": 2,
    "vertices": [label[m] for m in elems],
    "edges": [{"src": s, "dst": d, "weight": w} for s, d, w in edges.values()],
    "extra_flags": [],
}
with open("g2b.json", "w") as f:
    json.dump(doc, f, indent=2)
    f.write("\n")
