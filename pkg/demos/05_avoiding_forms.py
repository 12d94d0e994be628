# Forms that avoid a finite set of points over F_q
# ------------------------------------------------
# Every linear form over F_2 vanishes somewhere on the projective line,
# so avoiding all three points needs a quadratic.

from fibral import ProjectivePoint, evaluate_form, find_avoiding_form
from fibral.avoidance import all_points

line = all_points(2, 1)
f = find_avoiding_form(2, 1, line)
print("degree", f.degree, ":", f)
print({str(p): evaluate_form(f, p) for p in line})

# A full line of P^2(F_3) meets every other line, so again degree 2.
T = [ProjectivePoint(3, (0, 1, c)) for c in range(3)] + [ProjectivePoint(3, (0, 0, 1))]
g = find_avoiding_form(3, 2, T)
print("degree", g.degree, ":", g)
