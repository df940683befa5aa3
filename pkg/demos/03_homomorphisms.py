# Bunch homomorphisms: conditions S1-S8, extension to chains, and the finite correspondence.

from layergroups import catalog
from layergroups.chain import ChainElement as E
from layergroups.finite_chain import generate_sugihara
from layergroups.hom import (
    BunchHom, bh_compose, bh_extend, bh_validate, check_extension, hom_correspondence_check,
)
from layergroups.ogroup import OGroupHomDesc
from layergroups.oracle import SampleConfig

B = catalog.bz2()


def scalar(c):
    return BunchHom(B, B, {"t": "t", "u": "u"}, {u: OGroupHomDesc.scalar(B.groups[u], c) for u in B.labels})


# Tripling both layers keeps 2Z exactly, doubling does not (1 is sent into 2Z).

print(bh_validate(scalar(3)).render())
print(bh_validate(scalar(2)).render())

# A valid bunch hom extends to a map of chains that keeps dotting.

ext = bh_extend(scalar(3))
print(ext(E("u", (2,), True)), ext(E("t", (-1,))))
print(check_extension(scalar(3), SampleConfig(samples=1000)).ok)
print(bh_compose(scalar(3), scalar(3)).layer_map["u"])

# Finite chains: chain homs and bunch homs match one for one.

for n, m in ((3, 3), (2, 3), (5, 3), (4, 4)):
    A = generate_sugihara("odd" if n % 2 else "even", n)
    T = generate_sugihara("odd" if m % 2 else "even", m)
    rep = hom_correspondence_check(A, T)
    print(n, "->", m, rep["count"].witness, rep.ok)
