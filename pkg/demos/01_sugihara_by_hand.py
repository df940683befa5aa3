# Building small chains from bunches of trivial groups, and taking them apart again.

from layergroups import catalog
from layergroups.decompose import decompose_chain
from layergroups.finite_chain import fc_enumerate_homs, fc_materialize, generate_sugihara
from layergroups.formats import format_bunch

# OS3: skeleton t < u, t of class o, u of class I, every group trivial.

B = catalog.os3()
print(format_bunch(B))

# Materializing gives three elements. The dotted copy of u sits just below t.

C = fc_materialize(B)
print([str(e) for e in C.elements])
for row in C.product:
    print(row)
print("t =", C.elements[C.t], " f =", C.elements[C.f])

# Going the other way: decompose the generated even chain of size 6.

S6 = generate_sugihara("even", 6)
print(format_bunch(decompose_chain(S6)))

# Homomorphisms between small chains, by exhaustive search.

for n, m in ((3, 3), (2, 3), (3, 2), (5, 3)):
    A, T = generate_sugihara("odd" if n % 2 else "even", n), generate_sugihara("odd" if m % 2 else "even", m)
    print(n, "->", m, fc_enumerate_homs(A, T))
