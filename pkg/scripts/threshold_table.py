"""Print the critical-strength table over a range of tensor orders."""

import math

from spiked_lab import beta_star, beta_star_asymptotic, lambda_star

ORDERS = [2, 3, 4, 5, 6, 8, 10, 15, 20, 50, 100]

header = f"{'k':>4}  {'beta*':>18}  {'lambda*':>18}  {'q*':>18}  {'sqrt(log(k/2))':>15}"
print(header)
print("-" * len(header))
for k in ORDERS:
    beta = beta_star(k)
    lam = lambda_star(k)
    asym = beta_star_asymptotic(k) if k > 2 else math.nan
    print(
        f"{k:>4}  {beta.value:>18.12f}  {lam.value:>18.12f}  "
        f"{beta.q_star:>18.12f}  {asym:>15.6f}"
    )
