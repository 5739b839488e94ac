"""Brute-force Euler characteristic by direct decomposition in X-space.

Independent cross-check for the pencil pipeline: decompose R^k for the
constraint family together with a ball polynomial X_1^2+...+X_k^2 - r^2,
and sum (-1)^dim over the cells where every constraint and the ball are
<= 0.  That set is compact, so the Borel-Moore sum equals the ordinary
Euler characteristic of S intersected with the closed ball of radius r;
for r beyond the last topological transition this is chi(S) under the
large-ball convention.  The radius is doubled until two consecutive values
agree.

Doubly exponential in k; intended for k <= 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cad import DEFAULT_MAX_CELLS, DEFAULT_MAX_PROJ_WEIGHT, cad_decompose
from .errors import NoStabilization
from .poly import MultiPoly


@dataclass(frozen=True)
class OracleResult:
    chi: int
    radius_used: Fraction
    cells_in_set: int
    touches_boundary: bool


def _chi_at_radius(polys: Sequence[MultiPoly], r: Fraction, max_cells, max_proj_weight):
    vs = polys[0].vars
    ball = MultiPoly.zero(vs)
    for name in vs:
        x = MultiPoly.variable(vs, name)
        ball = ball + x * x
    ball = ball + MultiPoly.constant(vs, -(r * r))
    cells = cad_decompose(list(polys) + [ball], max_cells, max_proj_weight)
    chi = 0
    inside = 0
    touches = False
    for c in cells:
        if all(s <= 0 for s in c.signs):
            chi += (-1) ** c.dim
            inside += 1
            if c.signs[-1] == 0:
                touches = True
    return chi, inside, touches


def chi_direct(
    polys: Sequence[MultiPoly],
    r0: Fraction = Fraction(1),
    max_doublings: int = 10,
    max_cells: int = DEFAULT_MAX_CELLS,
    max_proj_weight: Optional[int] = DEFAULT_MAX_PROJ_WEIGHT,
) -> OracleResult:
    """chi of { all P_i <= 0 } by radius-doubled direct decomposition.

    ``polys`` may be empty (chi of R^k is 1).  Raises NoStabilization if
    the doubling schedule runs out before two consecutive radii agree, and
    ResourceLimit if a decomposition exceeds the configured caps.
    """
    r0 = Fraction(r0)
    if r0 <= 0:
        raise ValueError("initial radius must be positive")
    if not polys:
        raise ValueError("pass the constraints (possibly constants) so the ambient ring is known")
    prev = None
    r = r0
    for _ in range(max_doublings + 1):
        chi, inside, touches = _chi_at_radius(polys, r, max_cells, max_proj_weight)
        if prev is not None and prev[1] == chi:
            return OracleResult(chi=chi, radius_used=prev[0], cells_in_set=prev[2],
                                touches_boundary=prev[3])
        prev = (r, chi, inside, touches)
        r = r * 2
    raise NoStabilization(f"chi did not stabilize within {max_doublings} radius doublings")
