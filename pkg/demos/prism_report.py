"""Eigenvalues and triple invariants of a few convex prisms.

The unit prism (1, 1, 1) has first invariant -1/8 and partner invariant
-(9825/5602)^3; the point (2, 1, 1/3) sits on the Pappus locus where
the partner is undefined.
"""

from prismgroups import prism
from prismgroups.algebra import rat, rat_str
from prismgroups.projgeom import prism_invariant

for r, s, t in ((1, 1, 1), (2, 1, rat(1, 3)), (3, 1, 2), (1, 2, rat(1, 2))):
    p = prism.PrismParams(rat(r), rat(s), rat(t))
    ev = prism.lambda_of(p)
    chi = prism.first_invariant(p)
    line = f"(r,s,t)=({rat_str(r)},{rat_str(s)},{rat_str(t)})  lambda={rat_str(ev.lam):>6}  {ev.classification:10s}"
    line += f"  chi={rat_str(chi)}  |log(-chi)|={float(prism_invariant(chi)):.6f}"
    if ev.classification != "neutral":
        tau = prism.partner(p).tau_prime
        line += f"  partner |log(-tau)|={float(prism_invariant(tau)):.6f}"
    print(line)
