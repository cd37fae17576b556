"""
Reduced Tate pairing from the net W_{P,Q} with P in E(F_p)[r] and
Q in E(F_{p^k})[r], in two forms:

    single value:  W(r,1)^((p^k - 1)/r)
    ratio:         (W(r+1,1) / W(r+1,0))^((p^k - 1)/r)

and the Miller reference f_{r,P}(Q)^((p^k - 1)/r).
"""

import logging
from enum import Enum

from pairnet.curves.instance import CurveInstance
from pairnet.curves.point import Point
from pairnet.curves.scalar import binary_step_counts
from pairnet.ellnet.context import build_context
from pairnet.ellnet.evaluate import net_walk
from pairnet.fieldtower.counter import counting
from pairnet.pairing.final_exp import final_exp
from pairnet.pairing.miller import miller
from pairnet.pairing.output import PairingOutput

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class TateForm(Enum):
    SINGLE = "single"
    RATIO = "ratio"


def tate_net(instance: CurveInstance, P: Point, Q: Point, form: TateForm = TateForm.SINGLE,
             modified: bool = False, reduce: bool = True) -> PairingOutput:
    """
    Tate pairing of P (on E over F_p) and Q (on E over F_{p^k}) via a net.

    Both forms walk to the block centered at r+1.

    Raises:
        DegenerateNetError: If P, Q do not define a non-degenerate net
    """
    r = instance.r
    ctx = build_context(P, Q, modified=modified)
    with counting(f"{instance.family} tate {form.value}") as counter:
        block = net_walk(ctx, r + 1)
        if form is TateForm.SINGLE:
            raw = block.w1(r)
        else:
            raw = block.w1(r + 1) / block.w0(r + 1)
    out = PairingOutput(raw=raw.embed(instance.k), family=instance.family, loop_scalar=r, method="net",
                        counter=counter, steps=binary_step_counts(r + 1))
    if reduce:
        out.reduced = final_exp(out.raw, instance)
    logger.debug(f"Tate pairing ({form.value}) on {instance.family}: {counter}")
    return out


def tate_miller(instance: CurveInstance, P: Point, Q: Point, reduce: bool = True) -> PairingOutput:
    """Reference f_{r,P}(Q)."""
    with counting(f"{instance.family} tate miller") as counter:
        raw = miller(instance.r, base=P, at=Q)
    out = PairingOutput(raw=raw.embed(instance.k), family=instance.family, loop_scalar=instance.r,
                        method="miller", counter=counter, steps=binary_step_counts(instance.r))
    if reduce:
        out.reduced = final_exp(out.raw, instance)
    return out
