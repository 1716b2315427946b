import sys, time, cProfile, pstats
from kovacic3.rationals import QQ, qq
from kovacic3.unipoly import UniPoly
from kovacic3.ratfunc import RatFunc
from kovacic3.diffop import DiffOp
from kovacic3.classify import classify_galois_group
from kovacic3.pullbacks import gauge_equivalent_value, _field_candidates

z = UniPoly.gen()
a1A = RatFunc(UniPoly([1125, -1313, 1088])*qq(1,1200), (z*(z-1))**2)
a0A = RatFunc(UniPoly([-20250, 52189, -35195, 19456])*qq(-1,21600), (z*(z-1))**3)
LA = DiffOp([a0A, a1A, RatFunc.zero(), RatFunc.one()])
cls = classify_galois_group(LA)
w = cls.witnesses["B6(m=6,r=2,d=1)"][0]
from kovacic3.invtheory import hessian_det
P6 = w.poly()
P12 = hessian_det(P6) * qq(-1, 20250)
one = UniPoly.one()
t0=time.time()
Q12 = gauge_equivalent_value(cls.L0, P12, 12, 1, one, w.z0)
print("Q12 gauge:", round(time.time()-t0,1), "s", flush=True)
print("Q12 coeff degrees:", [(c.num.degree, c.den.degree) for c in Q12.fcoeffs], flush=True)
t0=time.time()
Q6 = gauge_equivalent_value(cls.L0, P6, 6, 1, one, w.z0)
cands = _field_candidates(Q6, sqrt3=False)
print("field cands:", [len(q)-1 for _K, q in cands], round(time.time()-t0,1), flush=True)
print("qmin z-degrees:", [[c.degree for c in q] for _K, q in cands], flush=True)
K, qmin = [c for c in cands if len(c[1])-1 > 1][0]
q12 = K.elt(list(Q12.fcoeffs))
t0=time.time()
pr = cProfile.Profile(); pr.enable()
q122 = q12*q12
pr.disable()
print("q12^2:", round(time.time()-t0,1), "s", flush=True)
stats = pstats.Stats(pr); stats.sort_stats("cumulative"); stats.print_stats(12)
