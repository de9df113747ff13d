"""Right-invariant fields and the defect index.

Classically, left and right Lie derivatives along right-invariant vector
fields coincide. For q generic, they differ on products ``da * b`` by
the defect index DI_i^k(a).
"""

import itertools

from qcartan import Context, gl_q2
from qcartan.dsl import Evaluator

for q in (None, 1):
    ctx = Context(gl_q2(), q=q)
    a = ctx.gens()[0]
    nonzero = [(i + 1, k + 1) for i, k in itertools.product(range(ctx.n), repeat=2)
               if not ctx.cartan.defect_index(i, k, a).value.is_zero()]
    print(f"q = {q or 'symbolic'}: DI_i^k(a) nonzero for {len(nonzero)} of 16 index pairs")

ctx = Context(gl_q2())
ev = Evaluator(ctx)
print("DI(1, 1, a) =", ev.eval_text("DI(1, 1, a)"))
print("difference on da*b:", ev.eval_text("lieR(1, d(a) * b) - lie(h[1], d(a) * b)"))
