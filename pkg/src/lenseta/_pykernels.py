"""Pure-Python defect-sum kernel; the fallback when the compiled one is absent."""

import math


def defect_sum(p, s, qs):
    """Return ``(re, im)`` of ``(1/p) sum_k (z_p^{ks} - 1) prod_i z_2p^{kq}/(z_p^{kq} - 1)``.

    Each factor is evaluated as ``1/(2i sin(pi*k*q/p))``.  Sums over ``k`` use
    compensated (Kahan) accumulation in increasing ``k``.  ``qs`` must be
    coprime to ``p``; ``s`` is any integer.
    """
    two_p = 2 * p
    s %= p
    qs = [q % two_p for q in qs]
    # (-i/2)^l
    c_re, c_im = 1.0, 0.0
    for _ in qs:
        c_re, c_im = 0.5 * c_im, -0.5 * c_re
    sum_re = comp_re = 0.0
    sum_im = comp_im = 0.0
    pi_over_p = math.pi / p
    two_pi_over_p = 2.0 * math.pi / p
    for k in range(1, p):
        ks = (k * s) % p
        if ks == 0:
            continue
        base = 1.0
        for q in qs:
            base /= math.sin(pi_over_p * ((k * q) % two_p))
        theta = two_pi_over_p * ks
        w_re = math.cos(theta) - 1.0
        w_im = math.sin(theta)
        t_re = base * (c_re * w_re - c_im * w_im)
        t_im = base * (c_re * w_im + c_im * w_re)

        y = t_re - comp_re
        t = sum_re + y
        comp_re = (t - sum_re) - y
        sum_re = t

        y = t_im - comp_im
        t = sum_im + y
        comp_im = (t - sum_im) - y
        sum_im = t
    return sum_re / p, sum_im / p
