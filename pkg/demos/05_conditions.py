"""Where do the theorem conditions start to hold?

All comparisons are exact: 16s <= q^(e/d) is tested as (16s)^d <= q^e.
"""
from qmatch.bounds import derive, thm_cl_condition, thm_main_condition

for n, k in [(4, 2), (6, 2), (8, 3), (12, 3)]:
    q = 2
    while not thm_main_condition(derive(n, k, q, 1)).holds:
        q += 1
    print(f"(n,k)=({n},{k}), s=1: main condition first holds at q={q}")

for n, k in [(9, 4), (10, 4), (13, 5)]:
    rep = thm_cl_condition(derive(n, k, 2, 1))
    print(f"(n,k)=({n},{k}): empty range {rep.extra['empty_range']}, "
          f"no s>=1 at q=2: {rep.extra['no_s_satisfies']}")

ps = derive(20, 2, 2, 2)
for name, c in thm_main_condition(ps).parts.items():
    print(f"(20,2,2,2) exponent {name}: holds={c.holds}, (16s)^d - q^e = {c.margin}")
