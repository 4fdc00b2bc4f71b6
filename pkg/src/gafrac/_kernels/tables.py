"""Gauss-Kronrod 7-15 nodes and weights.

Values are the standard QUADPACK constants for the 15-point Kronrod
extension of the 7-point Gauss rule on [-1, 1], given to 33 significant
figures in the original Fortran and truncated here to double precision.

The full 15-entry arrays are laid out in ascending node order.  WG15
carries the 7-point Gauss weights at the Gauss nodes (indices 1, 3, ...,
13) and zeros at the Kronrod-only nodes, so a single weighted sum over
the 15 function values yields either rule.
"""

import numpy as np

# Positive Kronrod abscissae, descending, plus the centre node.
_XGK_HALF = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)

_WGK_HALF = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)

# 7-point Gauss weights for the positive abscissae (and centre).
_WG_HALF = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _mirror():
    xs = [-v for v in _XGK_HALF[:7]] + [0.0] + [v for v in reversed(_XGK_HALF[:7])]
    ws = list(_WGK_HALF[:7]) + [_WGK_HALF[7]] + list(reversed(_WGK_HALF[:7]))
    wg = [0.0] * 15
    # Gauss nodes sit at every second Kronrod node.
    for j, w in enumerate(_WG_HALF[:3]):
        wg[1 + 2 * j] = w
        wg[13 - 2 * j] = w
    wg[7] = _WG_HALF[3]
    return np.array(xs), np.array(ws), np.array(wg)


XGK15, WGK15, WG15 = _mirror()
for _arr in (XGK15, WGK15, WG15):
    _arr.flags.writeable = False
