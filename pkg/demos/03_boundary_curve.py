"""
An explicit piece of the boundary near Lam = e
==============================================

Along the curve Lam_hat(theta) the composite map H = E_Lam o E_{Lam,c} has a
parabolic fixed point, which pins the curve to the boundary of the limit
zero-free set.  The invariant region T_theta certifies this while two scalar
inequalities hold.
"""
import numpy as np

from limitzeros import gamma as gm
from limitzeros import orbit as ob

print(" theta    gamma     Lam_hat                 c_hat    residuals")
for theta in np.linspace(0, 0.18, 7):
    p = gm.gamma_point(theta)
    r = gm.verify_parabolic(p)
    print(f"{theta:6.3f}  {p.gamma:.5f}  {p.lambda_hat:.5f}  {p.c_hat:.5f}"
          f"  {r.fixed_residual:.1e} {r.multiplier_residual:.1e}")

# %%
# Both inequalities keep a positive margin on the whole range; the second
# one is the first to give out.
for theta in (0.05, 0.1, 0.15, 0.18, 0.19):
    m = gm.invariance_margins(theta)
    print(f"theta {theta:.2f}: margins {m.ineq1_margin:+.4f} {m.ineq2_margin:+.4f}")
print("last grid value passing every check:", gm.theta_max_search(1e-3))

# %%
# Sampled check that E_Lam_hat maps T_theta into itself.
for theta in (0.05, 0.18):
    print(f"theta {theta}: worst image excess {gm.invariance_image_excess(theta):.1e}")

# %%
# The semigroup test sees the same boundary: just inside is a member, just
# outside is not.
for theta in (0.05, 0.1, 0.15):
    lam = gm.gamma_point(theta).lambda_hat
    print(theta, ob.classify_membership(0.98 * lam).value, ob.classify_membership(1.02 * lam).value)
