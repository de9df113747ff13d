"""The braiding of one-forms and the exterior algebra it produces."""

import itertools

from qcartan import Context, gl_q2
from qcartan.linalg import nullspace
from qcartan.wedge import dense16

ctx = Context(gl_q2())
br = ctx.braid
print("braid equation holds:", br.braid_equation())
print("sigma is the flip:   ", br.is_flip())

sigma = dense16(ctx.n, br.sigma)
print("first row of sigma:", [str(x) for x in sigma[0]])

# Ranks of the antisymmetrizers give the dimensions of the space of k-forms.
for k in (2, 3, 4):
    W = br.W(k)
    idx = list(itertools.product(range(ctx.n), repeat=k))
    pos = {I: j for j, I in enumerate(idx)}
    rows = [{pos[I]: c for I, c in W.get(K, {}).items()} for K in idx]
    print(f"dim of {k}-forms:", len(idx) - len(nullspace(rows, len(idx))))

calc, ext = ctx.calc, ctx.ext
a = ctx.gens()[0]
print("d(omega^11) =", ext.value(ext.d(calc.omega(0))))
print("d(d(a)) is zero:", ext.is_zero(ext.d(calc.d(a))))
