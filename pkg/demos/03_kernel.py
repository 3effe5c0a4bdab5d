"""Closed-form kernel of the sign symbol against quadrature.

Run with ``python3 demos/03_kernel.py``.
"""

import numpy as np

from bilintransfer import SignLine, kernel_c_alpha, kernel_table

rs = np.arange(-4, 5)
for alpha in (0.5, -1.0, 2.0):
    exact = kernel_c_alpha(alpha, rs[:, None], rs[None, :])
    # -i * sign(xi + alpha eta) integrated over the unit cell gives -i c_alpha
    table, err = kernel_table(SignLine(alpha, -1j), rs, rs)
    print(f"alpha = {alpha:5}: max |c_alpha - i K| = {np.max(np.abs(exact - 1j * table)):.2e}"
          f"  (quadrature error estimate {err:.1e}), c(0, 0) = {exact[4, 4]}")

# The r = 0 row for |alpha| <= 1: alpha (-1)^s / (pi i s).
s = np.arange(1, 5)
print("row r = 0, alpha = 0.5:", np.round(kernel_c_alpha(0.5, 0, s), 12))
print("formula               :", np.round(0.5 * (-1.0) ** s / (np.pi * 1j * s), 12))
