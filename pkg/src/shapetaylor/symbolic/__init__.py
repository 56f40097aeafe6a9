from __future__ import annotations

from shapetaylor.symbolic.exceptions import DegreeError, UnsupportedProxyError
from shapetaylor.symbolic.forms import (
    ZERO,
    Coefficient,
    FormExpr,
    add,
    atom,
    contract,
    ext_d,
    hodge,
    hodge_boundary,
    is_zero,
    jump,
    neg,
    normal,
    render_form,
    scale,
    system,
    trace_d,
    trace_n,
    velocity,
    wedge,
)
from shapetaylor.symbolic.proxy import (
    VectorExpr,
    VField,
    VSum,
    VSystem,
    render_canonical,
    substitute,
    to_vector_proxy,
)
from shapetaylor.symbolic.recurrence import (
    SymbolicBC,
    dirichlet_trace,
    generate,
    impedance_trace,
    initial_datum,
    neumann_trace,
    recurrence_step,
    robin_part,
)
from shapetaylor.symbolic.reduction import reduce_first_order_2d
from shapetaylor.symbolic.rules import (
    cartan,
    delta_normal,
    delta_omega,
    drop_normal_variations,
    simplify,
)

__all__ = (
    "ZERO",
    "Coefficient",
    "DegreeError",
    "FormExpr",
    "SymbolicBC",
    "UnsupportedProxyError",
    "VField",
    "VSum",
    "VSystem",
    "VectorExpr",
    "add",
    "atom",
    "cartan",
    "contract",
    "delta_normal",
    "delta_omega",
    "dirichlet_trace",
    "drop_normal_variations",
    "ext_d",
    "generate",
    "hodge",
    "hodge_boundary",
    "impedance_trace",
    "initial_datum",
    "is_zero",
    "jump",
    "neg",
    "neumann_trace",
    "normal",
    "recurrence_step",
    "reduce_first_order_2d",
    "render_canonical",
    "render_form",
    "robin_part",
    "scale",
    "simplify",
    "substitute",
    "system",
    "to_vector_proxy",
    "trace_d",
    "trace_n",
    "velocity",
    "wedge",
)
