"""Sample the duality curve psi(a, b, c, d) = 0 over the good region.

For each height b in (0, 1) there is exactly one a on the foliating
segment; we count it with Sturm sequences and then refine it.
"""

from prismgroups import blv
from prismgroups.algebra import rat

c, d = rat(1, 3), rat(-1, 4)
print(" b        a (duality curve)      segment")
for k in range(1, 10):
    b = rat(k, 10)
    lo, hi = blv.good_region_bounds(b)
    assert blv.segment_root_count(b, c, d) == 1
    a = blv.duality_curve_point(b, c, d, prec=96)
    print(f" {float(b):.1f}   {float(a):.15f}   [{float(lo):.4f}, {float(hi):.4f}]")

# the certificates behind the uniqueness claim
rep = blv.certificate_suite(fast=True)
for cert in rep.certificates:
    print(f"{'PASS' if cert.passed else 'FAIL'}  {cert.name}")
