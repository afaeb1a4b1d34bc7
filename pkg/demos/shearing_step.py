"""One step of the shearing map, printed stage by stage.

Start on the Pappus locus at (r, s, t) = (2, 1, 1/3), shear with d = 1/2,
re-describe the group by its second flag triple, and un-shear.
Everything stays exact for the first step.
"""

from prismgroups import dynamics as dyn
from prismgroups.algebra import rat, rat_str

p0 = dyn.DynPoint.from_rst(rat(2), rat(1), rat(1, 3))
out, tr = dyn.phi_step(p0, dyn.DynConfig(d=rat(1, 2)))

print("start      r^2, s^2, t =", *map(rat_str, (p0.r2, p0.s2, p0.t)))
print("sheared    r^2, s^2, t =", *map(rat_str, (tr.sheared.r2, tr.sheared.s2, tr.sheared.t)))
print("lambda     ", rat_str(tr.lam), " (g^2 eigenvalues 1, -16, -1/16)")
print("chi        ", rat_str(tr.chi))
print("t'         ", rat_str(tr.t_new))
print("r/s        ", dyn._num(tr.ratio, 256)[:30])
print("s          ", dyn._num(tr.s_root, 256)[:30], f"(root found by {tr.root_method})")
print("described  r^2 =", rat_str(tr.described.r2))
print("           s^2 =", rat_str(tr.described.s2))
print("output     r, s =", dyn._num(out.r, 128)[:20], dyn._num(out.s, 128)[:20])
print("on locus:", out.pappus_residual() == 0,
      " eigenvalues kept:", tr.eigen_conserved,
      " invariants exchanged:", tr.invariants_exchanged)

rep = dyn.conjugacy_check(dyn.EXAMPLE_CONJUGATOR, tr.sheared, tr.described)
print("explicit conjugator:", "ok" if rep.passed else "no", f"(rotation {rep.rotation})")

# the other eigen-branch gives a different ratio and leaves the locus
_, alt = dyn.phi_step(p0, dyn.DynConfig(d=rat(1, 2), branch=dyn.PRESERVE))
print("preserve branch r/s =", dyn._num(alt.ratio, 128)[:20], "flags:", alt.flags)
