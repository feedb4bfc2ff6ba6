"""Houghton group elements, composition, and transitivity witnesses on
finite subsets of the rays."""
from wreathlab import compose, transitivity_witness
from wreathlab.houghton import generator, render_window

g = generator(3, 1, 2)
print(render_window(g, 4))
print()
print(render_window(compose(g, g), 4))
print()
w = transitivity_witness(3, [(1, 1), (2, 1)], [(3, 3), (1, 2)])
print("witness t =", w.t)
print(render_window(w, 5))
