"""Exact symbolic engine for bicovariant differential calculus on GL_q(2)."""

from .calculus import Calculus, Field, Form, OneForm, VectorField
from .cartan import Cartan, DefectIndexValue, Op
from .dual import BasisFunctionals, Functional, build_f_chi, evaluate, solve_x_basis
from .ncalg import (AlgebraElement, CheckRow, Instance, TensorElement, antipode, coproduct,
                    counit, gl_q2, sl_q2, verify_hopf_axioms)
from .qscalar import LAMBDA, ONE, Q, ZERO, QScalar
from .suites import SUITES, Context, build_suite, run_checks
from .wedge import BraidData, Exterior

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "BasisFunctionals", "BraidData", "Calculus", "Cartan", "CheckRow", "Context",
    "DefectIndexValue", "Exterior", "Field", "Form", "Functional", "Instance", "LAMBDA",
    "ONE", "OneForm", "Op", "Q", "QScalar", "SUITES", "TensorElement", "VectorField", "ZERO",
    "antipode", "build_f_chi", "build_suite", "coproduct", "counit", "evaluate", "gl_q2", "run_checks", "sl_q2",
    "solve_x_basis", "verify_hopf_axioms",
]
