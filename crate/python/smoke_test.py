"""Quick end-to-end check of the pygkm extension."""
from fractions import Fraction

import pygkm

g24 = pygkm.Graph.grassmannian(2, 4)
listing = g24.describe().splitlines()
assert listing[0] == "GKM graph with 6 nodes, valency 4 and axial function:", listing[0]
assert listing[1] == "13 -> 12 => (0, -1, 1, 0)"
assert g24.validate() == []
assert g24.betti_numbers() == [1, 1, 2, 1, 1]

p2 = pygkm.Graph.projective_space(2)
lat = pygkm.CurveLattice(p2)
assert lat.rank == 1
assert all(lat.class_of_edge(e) == [1] for e in range(p2.num_edges()))

# one line through two points of P^2
pt = [pygkm.Class.point(p2, v) for v in (0, 1)]
assert pygkm.gromov_witten(p2, [1], pt) == 1

# twelve rational cubics through eight points
assert pygkm.gromov_witten(p2, [3], [pygkm.Class.parse(p2, "pt@0")] * 8) == 12

assert pygkm.Class.parse(p2, "c1^2").integrate() == "9"

cycle8 = pygkm.Graph.fixture("cycle8")
assert cycle8.betti_numbers() == [2, 4, 2]
assert pygkm.gromov_witten(cycle8, [1, 1, 0, 0, 0, 0], []) == "1/(t1^2*t2 - t1*t2^2)"

assert pygkm.bps_genus_zero(2, 7) == [1, -1, 2, -7, 31, -156, 863]
assert pygkm.gw_local_closed_form(2, 2) == Fraction(-7, 8)

g2b = pygkm.Graph.fixture("g2b")
assert pygkm.Graph.from_json(g2b.to_json()).to_json() == g2b.to_json()

p1 = pygkm.Graph.projective_space(1)
assert pygkm.gromov_witten(p1, [1], [(pygkm.Class.one(p1), 1)], cotangent_psi=True) == -2

code, out, _ = pygkm.run_cli(["betti", "--fixture", "cycle8"])
assert (code, out) == (0, "2 4 2\n")

print("pygkm smoke test passed")
