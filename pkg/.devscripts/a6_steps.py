import sys, time
from kovacic3.rationals import QQ, qq
from kovacic3.unipoly import UniPoly
from kovacic3.ratfunc import RatFunc
from kovacic3.diffop import DiffOp
from kovacic3.classify import classify_galois_group
from kovacic3.pullbacks import gauge_equivalent_value, _field_candidates, _c_matrix, _apply_radical
from kovacic3.invtheory import hessian_det, bordered_hessian, jacobian_det

T0 = time.time()
def stamp(msg): print(f"[{time.time()-T0:7.1f}s] {msg}", flush=True)

z = UniPoly.gen()
a1A = RatFunc(UniPoly([1125, -1313, 1088])*qq(1,1200), (z*(z-1))**2)
a0A = RatFunc(UniPoly([-20250, 52189, -35195, 19456])*qq(-1,21600), (z*(z-1))**3)
LA = DiffOp([a0A, a1A, RatFunc.zero(), RatFunc.one()])
cls = classify_galois_group(LA)
stamp("classified")
L0 = cls.L0
w = cls.witnesses["B6(m=6,r=2,d=1)"][0]
P6 = w.poly()
P12 = hessian_det(P6) * qq(-1, 20250)
stamp("P12")
P30 = bordered_hessian(P6, P12) * qq(1, 24300)
stamp("P30")
P45 = jacobian_det(P6, P12, P30) * qq(1, 4860)
stamp("P45")
one = UniPoly.one()
Q6 = gauge_equivalent_value(L0, P6, 6, 1, one, w.z0)
stamp("Q6 gauge")
Q12 = gauge_equivalent_value(L0, P12, 12, 1, one, w.z0)
stamp("Q12 gauge")
Q30 = gauge_equivalent_value(L0, P30, 30, 1, one, w.z0)
stamp("Q30 gauge")
print("Q30 degrees:", [(c.num.degree, c.den.degree) for c in Q30.fcoeffs[:8]], flush=True)
cands = _field_candidates(Q6, sqrt3=False)
stamp(f"field candidates {[len(q)-1 for _K,q in cands]}")
K, qmin = cands[1] if len(cands) > 1 else cands[0]
q12 = K.elt(list(Q12.fcoeffs))
stamp("q12 reduced")
q30 = K.elt(list(Q30.fcoeffs))
stamp("q30 reduced")
t = q12 * q12
stamp("q12^2")
q125 = q12 ** 5
stamp("q12^5")
inv = q125.inverse()
stamp("q12^5 inverse")
s = (q30 * 3)**2 * (inv * qq(1,8))
stamp("s assembled")
C = _c_matrix(L0, K, q12, 12)
stamp("C matrix")
