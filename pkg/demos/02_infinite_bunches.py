# Chains over infinite layer groups: evaluate a few operations, then sample the axioms.

from layergroups import catalog
from layergroups.chain import chain_compare, chain_mul, chain_negate, chain_residuum, chain_constants
from layergroups.chain import ChainElement as E
from layergroups.decompose import reconstruct_bunch, verify_decomposition_sampled
from layergroups.formats import format_bunch
from layergroups.oracle import SampleConfig, check_axioms, check_cover_lemma

# BZ2: t over Z (class o) below u over Z (class I, H = 2Z), joined by doubling.

B = catalog.bz2()
print(format_bunch(B))
x, y = E("u", (4,)), E("t", (3,))
print(x, "*", y, "=", chain_mul(B, x, y))      # t:[3] is pushed up to u:[6]
print("neg", x, "=", chain_negate(B, x))
print("neg", E("u", (3,)), "=", chain_negate(B, E("u", (3,))))  # odd value, not in H
print(chain_compare(B, E("u", (4,), True), x))

# EZ: a single class-J layer over Z. Here f is t:[-1] and x' = -x-1.

Z = catalog.ez()
print(*chain_constants(Z))
print(chain_negate(Z, E("t", (5,))), chain_residuum(Z, E("t", (2,)), E("t", (9,))))

# Sampled checks. Reports list every check with a witness on failure.

cfg = SampleConfig(samples=2000, seed=1)
print(check_axioms(B, cfg).render())
print(check_cover_lemma(catalog.z2j(), cfg).render())

# Reading the bunch back off the chain, using chain operations only.

print(format_bunch(reconstruct_bunch(B)))
print(verify_decomposition_sampled(B, cfg).ok)
