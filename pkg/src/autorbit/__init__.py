"""autorbit: exact computation of automorphism orbits in finite groups,
wreath-product conjugacy via backward cycle products, multinomial orbit
bounds, and the verification suites around them."""

__version__ = "0.1.0"
