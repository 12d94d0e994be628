# Fibers, multiplicities and the intersection form
# ------------------------------------------------
# A fiber is a list of components with multiplicities plus a symmetric
# pairing matrix. The weighted row sums vanish, and the form is negative
# semidefinite with kernel spanned by the fiber itself.

from fibral import FibralDivisor, check_fiber_form, cycle_fiber, d4_fiber, fiber_vector, pair_fibral

i3 = cycle_fiber(3)
for row in i3.pairing_matrix:
    print([str(x) for x in row])

C0 = FibralDivisor.component(i3, "C0")
print("<C0, C0> =", pair_fibral(i3, C0, C0))
print("<C0, fiber> =", pair_fibral(i3, C0, fiber_vector(i3)))

# The certificate deletes one component and checks the leading minors of
# the negated restriction; all positive means negative definite modulo the fiber.
cert = check_fiber_form(i3)
print("restricted minors:", [str(m) for m in cert.restricted_minors])

d4 = d4_fiber()
print("I0* multiplicities:", d4.multiplicities)
print("I0* minors:", [str(m) for m in check_fiber_form(d4).restricted_minors])

# Any divisor off the fiber line pairs negatively with itself.
x = FibralDivisor.from_vector(d4, [1, 0, -1, 2, 0])
print("<x, x> =", pair_fibral(d4, x, x))
