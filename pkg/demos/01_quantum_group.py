"""A first look at GL_q(2): relations, the Hopf structure and the functionals.

Run with ``python demos/01_quantum_group.py``.
"""

from qcartan import Context, antipode, coproduct, counit, gl_q2

inst = gl_q2()
ctx = Context(inst)
a, b, c, d, D = ctx.gens()

# Products are rewritten to a normal form with exact coefficients in q.
print("b*a         =", b * a)
print("d*a         =", d * a)
print("det * D     =", (a * d - ctx.inst.scalar("q") * b * c) * D)

print("Delta(a)    =", coproduct(a))
print("S(b)        =", antipode(b))
print("S(S(b))     =", antipode(antipode(b)))
print("eps(d)      =", counit(d))

# chi_i on the generators, i = (1,1), (1,2), (2,1), (2,2)
for i, label in enumerate(["11", "12", "21", "22"]):
    print(f"chi_{label} on a, b, c, d:", [str(ctx.basis.chi(i, x)) for x in (a, b, c, d)])

# The same identity with q fixed to 1: the functionals become derivations.
c1 = Context(inst, q=1)
a1, b1 = c1.gens()[:2]
print("q=1: chi_11(a*b) =", c1.basis.chi(0, a1 * b1))
