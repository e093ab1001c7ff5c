# independent oracle: explicit Grassmann algebra, sympy exact rank
import itertools, sympy
from fractions import Fraction as F
# generators: M1..M4 even (w1,g0), C1..C3 odd (w1,g1), E even (w1,g2)
# element: dict key=(mexp tuple4, frozenset? no: sorted tuple of C indices, eexp) -> coeff
def mul(a,b):
    out={}
    for (ma,ca,ea),x in a.items():
        for (mb,cb,eb),y in b.items():
            if set(ca)&set(cb): continue
            seq=list(ca)+list(cb)
            # sign of sorting permutation
            s=1
            for i in range(len(seq)):
                for j in range(i+1,len(seq)):
                    if seq[i]>seq[j]: s=-s
            k=(tuple(p+q for p,q in zip(ma,mb)),tuple(sorted(seq)),ea+eb)
            out[k]=out.get(k,0)+s*x*y
    return {k:v for k,v in out.items() if v!=0}
def add(a,b,s=1):
    out=dict(a)
    for k,v in b.items(): out[k]=out.get(k,0)+s*v
    return {k:v for k,v in out.items() if v!=0}
def M(i): e=[0]*4; e[i]=1; return {(tuple(e),(),0):F(1)}
def C(i): return {((0,)*4,(i,),0):F(1)}
E={((0,)*4,(),1):F(1)}
one={((0,)*4,(),0):F(1)}
def eps(i,j,k): return {(0,1,2):1,(1,2,0):1,(2,0,1):1,(0,2,1):-1,(2,1,0):-1,(1,0,2):-1}.get((i,j,k),0)
dM=[{} for _ in range(4)]
for l in range(3):
    for j in range(3):
        for k in range(3):
            if eps(l,j,k): dM[l]=add(dM[l], mul(M(j),C(k)), -eps(l,j,k))
dC=[]
for l in range(3):
    v={k:v*F(1,2) for k,v in mul(M(l),E).items()}
    for j in range(3):
        for k in range(j+1,3):
            if eps(l,j,k): v=add(v,mul(C(j),C(k)),eps(l,j,k))
    dC.append(v)
def d_mono(key):
    ma,ca,ea=key
    res={}
    # write monomial as M-part * C_{c1}...C_{cn} * E^e ; d even on M-part and E
    Mpart={(ma,(),0):F(1)}
    for i in range(4):
        if ma[i]>0:
            e=list(ma); e[i]-=1
            res=add(res, mul({(tuple(e),(),0):F(ma[i])}, mul(dM[i], {((0,)*4,ca,ea):F(1)})))
    for pos,c in enumerate(ca):
        pre={((0,)*4,ca[:pos],0):F(1)}; post={((0,)*4,ca[pos+1:],ea):F(1)}
        t=mul(mul(Mpart,pre),mul(dC[c],post))
        res=add(res,t,(-1)**pos)
    return res
def basis(g,w):
    out=[]
    for nc in range(4):
        for ne in range(w+1):
            if nc+2*ne!=g: continue
            nm=w-nc-ne
            if nm<0: continue
            for cs in itertools.combinations(range(3),nc):
                for ms in itertools.product(range(nm+1),repeat=4):
                    if sum(ms)==nm: out.append((ms,cs,ne))
    return out
def mat(g,w):
    src=basis(g,w); tgt=basis(g+1,w+1); idx={k:i for i,k in enumerate(tgt)}
    m=sympy.zeros(len(tgt),len(src))
    for j,k in enumerate(src):
        for kk,v in d_mono(k).items(): m[idx[kk],j]=sympy.Rational(v.numerator,v.denominator)
    return m
def H(g,w):
    n=len(basis(g,w))
    if n==0: return 0
    r_out=mat(g,w).rank() if len(basis(g+1,w+1)) else 0
    r_in=mat(g-1,w-1).rank() if (w>=1 and g>=1 and len(basis(g-1,w-1))) else 0
    return n-r_out-r_in
for w in range(0,7):
    print(w,[H(g,w) for g in range(0,9)])
