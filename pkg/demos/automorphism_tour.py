"""A quick tour of the order-p automorphisms of k[[t]].

We fix a character c on V = (Z/p)^s and build the power series
rho_sigma(t) solving 1/rho^m = 1/t^m + c(sigma).  The script checks the
defining equation, composes two generators, and prints the ramification
data that the conductor m controls.
"""

from wildram.autoreps import (
    build_rho,
    group_mul,
    make_character,
    ramification_data,
    verify_group_law,
)
from wildram.coeffring import make_field
from wildram.series import LaurentSeries, compose, invert_unit_series

p, s, m = 3, 2, 2
prec = 40

field = make_field(p, s)
ch = make_character(field, [[1, 0], [0, 1]], m)

print("group V = (Z/%d)^%d acting with conductor m = %d over GF(%d)"
      % (p, s, m, field.q))

sigma = ch.generator(1)
rho = build_rho(ch, sigma, prec)
print("\nrho_sigma(t) =", rho)

# the defining equation, checked to the working precision
lhs = invert_unit_series(rho.pow(m))
rhs = LaurentSeries.make(field, {-m: 1, 0: ch.vals[0]}, prec - 2 * m)
print("1/rho^m == 1/t^m + c(sigma):", lhs.eq_to_prec(rhs))

# composing the series realizes the group law
tau = ch.generator(2)
lhs = compose(build_rho(ch, sigma, prec), build_rho(ch, tau, prec))
rhs = build_rho(ch, group_mul(ch, sigma, tau), prec)
print("rho_sigma o rho_tau == rho_(sigma tau):", lhs.eq_to_prec(rhs))
print("full group law:", verify_group_law(ch, prec)["ok"])

# every nontrivial element breaks at m: wild ramification with one jump
ram = ramification_data(ch, prec)
print("\nv(sigma(t) - t) = m + 1 for each sigma != 1:",
      sorted(set(ram["i"].values())) == [m + 1])
print("single ramification jump at m:", ram["single_jump"] == m)
print("Artin identity ar(1) == (|V|-1)(m+1):",
      ram["ar_identity"] == (ch.order() - 1) * (m + 1))
