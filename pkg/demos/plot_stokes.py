"""
The Stokes recurrence
=====================

Near its complex singularity the phi4 kink has the inner expansion
psi = sum a_m z^{-m}. Writing a_{2n+1} = (-1)^n (2n)! b_n turns the
recurrence into one for b_n whose terms are all positive, so b_n increases
and stays away from zero: the Stokes constant cannot vanish.
"""

import numpy as np

from travelling_kinks import stokes

seq = stokes.b_sequence(100)
print("b_0..b_5:", np.round(seq.b[:6], 8))
print("b_10, b_50, b_100:", seq.b[10], seq.b[50], seq.b[100])
print("increasing:", bool(np.all(np.diff(seq.b) > 0)))

# the a_m read back from b_n satisfy the original recurrence
print("a_1, a_3, a_5:", [stokes.a_from_b(seq, m) for m in (1, 3, 5)])
print("scaled residual for m <= 20:", stokes.verify_a_recurrence(seq, 20))

# much further out the sequence levels off (no claim is made about the limit)
long = stokes.b_sequence(5000).b
print("b_1000, b_5000:", long[1000], long[5000])
