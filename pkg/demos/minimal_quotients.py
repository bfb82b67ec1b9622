"""How big must a finite quotient be to see a given matrix?

For A in SL_n(Z) the answer is controlled by gcd(A - I): the congruence
quotient mod m kills A exactly when m divides that gcd, so the minimal
detecting quotient is found by scanning prime powers that do not.
"""

from resfin import matgrp
from resfin.chevalley import GroupSpec

SL2 = GroupSpec(2)


def show(label, a, **kwargs):
    r = matgrp.congruence_D(a, SL2, **kwargs)
    tag = " (central quotient)" if r.central_quotient else ""
    print(f"{label:>24}: gcd {matgrp.detection_gcd(a):>3}, "
          f"dies until mod {r.modulus}, |quotient| = {r.quotient_order}{tag}")


u = matgrp.elementary(2, 1, 2, 12)
show("E_12(12)", u)

minus_i = ((-1, 0), (0, -1))
show("-I", minus_i)

# the answer is a function of the matrix, not of how it was written down
w = matgrp.mat_mul(matgrp.elementary(2, 1, 2, 2), matgrp.elementary(2, 2, 1, 2))
show("E_12(2) E_21(2)", w)
show("same matrix, literal", ((5, 2), (2, 1)))

# allowing central quotients (G mod q divided by its center) can halve the
# order: E_12(12) survives in PSL_2(F_5) of order 60
show("E_12(12), central ok", u, allow_central=True)

# cross-check the shortcut against the all-moduli scan
r_fast = matgrp.congruence_D(u, SL2)
r_slow = matgrp.brute_force_D(u, SL2, m_max=200)
print(f"\nprime-power scan and full scan agree: "
      f"{(r_fast.modulus, r_fast.quotient_order) == (r_slow.modulus, r_slow.quotient_order)}")
