"""
Optimal Ate Pairings via Elliptic Nets

Implements:
1. BN:    f = W~(m,1) * L1 * L2 with m = 6x+2
2. BLS:   f = W~(|x|,1), conjugated for negative x
3. KSS16: f = (W~(x,1) * l1)^(p^3) * l2
4. Miller-loop counterparts of all three, used as oracles

Nets are taken on the twist: the first point is Q~ over F_{p^e}, the second
is P~ = (x_P theta^-2, y_P theta^-3) over F_{p^k}. Lines are evaluated in
cleared-denominator form; every factor dropped this way lies in a proper
subfield and is removed by the final exponentiation. A negative loop scalar
is handled by conjugating the |m| value, which inverts it after reduction.
"""

import logging
from typing import Optional

from pairnet.curves.families import CurveFamily
from pairnet.curves.instance import CurveInstance
from pairnet.curves.point import Point, PointNotOnCurveError
from pairnet.curves.scalar import binary_step_counts
from pairnet.ellnet.block import NetBlock
from pairnet.ellnet.context import NetContext, build_context
from pairnet.ellnet.evaluate import StepTrace, net_walk
from pairnet.ellnet.steps import StepFunction, run_step
from pairnet.fieldtower.counter import counting, paused
from pairnet.fieldtower.element import FieldElement
from pairnet.pairing.final_exp import final_exp
from pairnet.pairing.miller import line_value, miller
from pairnet.pairing.output import BNLineIntermediates, DegenerateLineError, KSSLineIntermediates, PairingOutput

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def twisted_g1(instance: CurveInstance, P: Point) -> Point:
    """P~ = (x_P theta^-2, y_P theta^-3) on the twist over F_{p^k}."""
    if P.is_infinity:
        raise PointNotOnCurveError("G1 point is the point at infinity")
    if P.curve != instance.curve or not P.on_curve():
        raise PointNotOnCurveError(f"{P} is not a point of E over F_p")
    twist_k = instance.twist_k
    with paused():
        x = P.x.embed(instance.k) * instance.theta_power(-2)
        y = P.y.embed(instance.k) * instance.theta_power(-3)
    return Point(twist_k, x, y)


def _check_g2(instance: CurveInstance, Q: Point) -> None:
    if Q.is_infinity or Q.curve != instance.twist or not Q.on_curve():
        raise PointNotOnCurveError(f"{Q} is not an affine point of the twist")


def twist_frobenius(instance: CurveInstance, Q: Point, power: int = 1) -> Point:
    """pi^power(Q~) on the twist, through the precomputed constants."""
    g2, g3 = instance.frobenius_constants(power)
    return Point(Q.curve, g2 * Q.x.frobenius(power), g3 * Q.y.frobenius(power))


def pairing_context(instance: CurveInstance, Q: Point, P: Point, modified: bool = True) -> NetContext:
    """Net of (Q~, P~) on the twist."""
    _check_g2(instance, Q)
    return build_context(Q, twisted_g1(instance, P), modified=modified)


def _net_block(ctx: NetContext, m: int, trace: Optional[StepTrace], step: StepFunction) -> NetBlock:
    return net_walk(ctx, abs(m), trace=trace, step=step)


def _loop_value(block: NetBlock, m: int) -> FieldElement:
    value = block.w1(abs(m))
    return value.conjugate() if m < 0 else value


def _two_point_line(xp: FieldElement, yp: FieldElement, w: FieldElement, x1: FieldElement, y1: FieldElement,
                    x2: FieldElement, y2: FieldElement, name: str) -> FieldElement:
    """
    Line through (x1/w^2, y1/w^3) and (x2/w^2, y2/w^3) at (xp, yp), times w^5.
    """
    if x1 == x2:
        raise DegenerateLineError(name, f"Line {name} joins points with equal x-coordinates")
    w_sq = w.square()
    return (x2 - x1) * (yp * (w_sq * w) - y1) - (y2 - y1) * (xp * w_sq - x1)


def _finish(instance: CurveInstance, raw: FieldElement, m: int, method: str, counter, steps,
            reduce: bool) -> PairingOutput:
    out = PairingOutput(raw=raw, family=instance.family, loop_scalar=m, method=method, counter=counter, steps=steps)
    if reduce:
        out.reduced = final_exp(raw, instance)
    return out


def bn_line_intermediates(instance: CurveInstance, Q: Point, block: NetBlock, m: int) -> BNLineIntermediates:
    """S, T, S^, T^, Z, U, V from the block centered at |m|."""
    n = abs(m)
    w = block.w0(n)
    w_sq = w.square()
    w_cu = w_sq * w
    s = Q.x * w_sq - block.w0(n - 1) * block.w0(n + 1)
    t = (block.w0(n - 1).square() * block.w0(n + 2) - block.w0(n + 1).square() * block.w0(n - 2)) \
        * _quarter_y_inverse(Q)
    if m < 0:
        t = -t
    g2, g3 = instance.frobenius_constants(1)
    s_hat = g2 * w_sq * Q.x.frobenius(1)
    t_hat = g3 * w_cu * Q.y.frobenius(1)
    if s == s_hat:
        raise DegenerateLineError("S - S^", "[m]Q~ and [p]Q~ share an x-coordinate")
    z = (s - s_hat) * w
    b_w6 = instance.twist.b * w_cu.square()
    ss = s * s_hat
    tt = t * t_hat
    u = 2 * b_w6 + ss * (s + s_hat) - 2 * tt
    v = (t - t_hat) * (tt - 3 * b_w6) + 3 * ss * (s * t_hat - t * s_hat)
    return BNLineIntermediates(w=w, s=s, t=t, s_hat=s_hat, t_hat=t_hat, z=z, u=u, v=v)


def _quarter_y_inverse(Q: Point) -> FieldElement:
    """(4 y_Q~)^-1, one inversion per pairing."""
    return (4 * Q.y).inverse()


def optimal_ate_bn(instance: CurveInstance, Q: Point, P: Point, modified: bool = True, reduce: bool = True,
                   trace: Optional[StepTrace] = None, step: StepFunction = run_step) -> PairingOutput:
    """
    BN optimal ate: (W~(6x+2,1) * L1 * L2)^((p^12 - 1)/r).

    Raises:
        DegenerateLineError: If a line joins coincident points
    """
    _require_family(instance, CurveFamily.BN)
    m = instance.loop_scalar
    ctx = pairing_context(instance, Q, P, modified)
    Pt = ctx.second
    with counting(f"{instance.family} optimal ate") as counter:
        block = _net_block(ctx, m, trace, step)
        li = bn_line_intermediates(instance, Q, block, m)
        line1 = _two_point_line(Pt.x, Pt.y, li.w, li.s, li.t, li.s_hat, li.t_hat, "L1")
        N = -twist_frobenius(instance, Q, 2)
        z_sq = li.z.square()
        z_cu = z_sq * li.z
        xn, yn = N.x * z_sq, N.y * z_cu
        if xn == li.u:
            raise DegenerateLineError("U - X Z^2", "[m+p]Q~ and [-p^2]Q~ share an x-coordinate")
        line2 = (xn - li.u) * (Pt.y * z_cu - li.v) - (yn - li.v) * (Pt.x * z_sq - li.u)
        raw = _loop_value(block, m) * line1 * line2
    return _finish(instance, raw, m, "net", counter, binary_step_counts(m), reduce)


def optimal_ate_bls(instance: CurveInstance, Q: Point, P: Point, modified: bool = True, reduce: bool = True,
                    trace: Optional[StepTrace] = None, step: StepFunction = run_step) -> PairingOutput:
    """BLS12/24/48 optimal ate: W~(|x|,1)^((p^k - 1)/r), conjugated for x < 0."""
    if instance.params.family not in (CurveFamily.BLS12, CurveFamily.BLS24, CurveFamily.BLS48):
        raise ValueError(f"{instance.family} is not a BLS family")
    m = instance.loop_scalar
    ctx = pairing_context(instance, Q, P, modified)
    with counting(f"{instance.family} optimal ate") as counter:
        block = _net_block(ctx, m, trace, step)
        raw = _loop_value(block, m)
    return _finish(instance, raw, m, "net", counter, binary_step_counts(m), reduce)


def kss_line_intermediates(instance: CurveInstance, Q: Point, block: NetBlock, m: int) -> KSSLineIntermediates:
    n = abs(m)
    w = block.w0(n)
    a = Q.x * w.square() - block.w0(n - 1) * block.w0(n + 1)
    b = (block.w0(n - 1).square() * block.w0(n + 2) - block.w0(n + 1).square() * block.w0(n - 2)) \
        * _quarter_y_inverse(Q)
    if m < 0:
        b = -b
    return KSSLineIntermediates(w=w, a=a, b=b)


def optimal_ate_kss16(instance: CurveInstance, Q: Point, P: Point, modified: bool = True, reduce: bool = True,
                      trace: Optional[StepTrace] = None, step: StepFunction = run_step) -> PairingOutput:
    """
    KSS16 optimal ate: ((W~(x,1) * l1)^(p^3) * l2)^((p^16 - 1)/r).

    l1 joins [x]Q~ and [p]Q~; l2 is the tangent at Q~ on the twist,
    (3 x0^2 + a')(x - x0) - 2 y0 (y - y0), evaluated at P~.
    """
    _require_family(instance, CurveFamily.KSS16)
    m = instance.loop_scalar
    ctx = pairing_context(instance, Q, P, modified)
    Pt = ctx.second
    with counting(f"{instance.family} optimal ate") as counter:
        block = _net_block(ctx, m, trace, step)
        li = kss_line_intermediates(instance, Q, block, m)
        g2, g3 = instance.frobenius_constants(1)
        w_sq = li.w.square()
        s_hat = g2 * w_sq * Q.x.frobenius(1)
        t_hat = g3 * w_sq * li.w * Q.y.frobenius(1)
        line1 = _two_point_line(Pt.x, Pt.y, li.w, li.a, li.b, s_hat, t_hat, "l1")
        x0, y0 = Q.x, Q.y
        line2 = (3 * x0.square() + instance.twist.a) * (Pt.x - x0) - 2 * y0 * (Pt.y - y0)
        raw = (_loop_value(block, m) * line1).frobenius(3) * line2
    return _finish(instance, raw, m, "net", counter, binary_step_counts(m), reduce)


def _require_family(instance: CurveInstance, family: CurveFamily) -> None:
    if instance.params.family is not family:
        raise ValueError(f"Expected a {family.value} instance, got {instance.family}")


def optimal_ate(instance: CurveInstance, Q: Point, P: Point, **kwargs) -> PairingOutput:
    """Dispatch on the instance's family."""
    family = instance.params.family
    if family is CurveFamily.BN:
        return optimal_ate_bn(instance, Q, P, **kwargs)
    if family is CurveFamily.KSS16:
        return optimal_ate_kss16(instance, Q, P, **kwargs)
    return optimal_ate_bls(instance, Q, P, **kwargs)


def _signed_miller(m: int, Q: Point, P: Point) -> FieldElement:
    f = miller(abs(m), base=Q, at=P)
    return f.conjugate() if m < 0 else f


def optimal_ate_miller(instance: CurveInstance, Q: Point, P: Point, reduce: bool = True) -> PairingOutput:
    """
    The same optimal ate pairing from Miller functions on E over F_{p^k}.

    BN:    f_{m,Q} * l_{[m]Q,pi(Q)} * l_{[m]Q+pi(Q),-pi^2(Q)}
    BLS:   f_{x,Q}
    KSS16: (f_{x,Q} * l_{[x]Q,pi(Q)})^(p^3) * l_{Q,Q}
    """
    _check_g2(instance, Q)
    m = instance.loop_scalar
    Qk = instance.twist_map(Q)
    Pk = instance.lift_g1(P)
    family = instance.params.family
    with counting(f"{instance.family} miller") as counter:
        f = _signed_miller(m, Qk, Pk)
        if family is CurveFamily.BN:
            mQ = Qk * m
            piQ = instance.frobenius_point(Qk)
            ell1, R = line_value(mQ, piQ, Pk)
            neg_pi2 = -instance.frobenius_point(piQ)
            ell2, _ = line_value(R, neg_pi2, Pk)
            f = f * ell1 * ell2
        elif family is CurveFamily.KSS16:
            ell1, _ = line_value(Qk * m, instance.frobenius_point(Qk), Pk)
            ell2, _ = line_value(Qk, Qk, Pk)
            f = (f * ell1).frobenius(3) * ell2
    return _finish(instance, f, m, "miller", counter, binary_step_counts(m), reduce)
