"""Small modules over sweedler(Q) and kS3 shared by the finmod and acceptance tests."""

from hopfad.finmod import ModuleData
from hopfad.groups import small_groups
from hopfad.hopf import group_algebra, sweedler
from hopfad.scalar import QQ

S3 = small_groups()["S3"]


def _sign(p) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def _standard(p):
    # basis u1 = e0 - e1, u2 = e1 - e2 of the sum-zero plane; v = a*u1 + (a+b)*u2
    cols = []
    for u in ((1, -1, 0), (0, 1, -1)):
        v = [0, 0, 0]
        for i, x in enumerate(u):
            v[p[i]] += x
        cols.append((v[0], v[0] + v[1]))
    return [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]


def sweedler_modules():
    h = sweedler(QQ)
    return h, {
        "trivial": ModuleData.trivial(h),
        "regular": ModuleData.regular(h),
        "sign": ModuleData.from_generator_actions(h, 1, {"g": [[-1]], "x": [[0]]}, name="sign"),
        "two": ModuleData.from_generator_actions(h, 2, {"g": [[1, 0], [0, -1]], "x": [[0, 0], [1, 0]]}, name="two"),
    }


def s3_modules():
    h = group_algebra(S3, QQ)
    return h, {
        "trivial": ModuleData.trivial(h),
        "sign": ModuleData.from_basis_actions(h, 1, [[[_sign(p)]] for p in S3.elements], name="sign"),
        "standard": ModuleData.from_basis_actions(h, 2, [_standard(p) for p in S3.elements], name="standard"),
    }


# -- tensor-leg trials -----------------------------------------------------------------

from hopfad.finmod import is_submodule, orbit_closure, tensor_module, u_double_prime, u_prime  # noqa: E402
from hopfad.linalg import Subspace, span, tensor_subspace  # noqa: E402


def random_vector(rng, F, n, density=0.6):
    return {i: F.random_element(rng, 2) for i in range(n) if rng.random() < density}


def random_subspace(rng, F, n, k=None):
    k = rng.randint(0, min(n, 4)) if k is None else k
    return span([random_vector(rng, F, n) for _ in range(k)], n, F)


def minimality_holds(rng, U, dv, dw) -> bool:
    """U ⊆ U′⊗W, and dropping any basis vector of U′ (then adding random
    vectors that miss it) breaks U ⊆ V′⊗W."""
    F = U.field
    Up = u_prime(U, dv, dw)
    if not (U <= tensor_subspace(Up, Subspace.full(F, dw))):
        return False
    vecs = Up.vectors
    for drop in range(len(vecs)):
        Vp = span(vecs[:drop] + vecs[drop + 1 :] + [random_vector(rng, F, dv) for _ in range(rng.randint(0, 2))], dv, F)
        if Up <= Vp:
            continue
        if U <= tensor_subspace(Vp, Subspace.full(F, dw)):
            return False
    return True


def tensor_leg_trial(rng, V, W):
    """One random trial of parts (a) and (c); returns {check: passed}."""
    F = V.field
    dv, dw = V.dim, W.dim
    U = random_subspace(rng, F, dv * dw)
    legs = tensor_subspace(u_prime(U, dv, dw), u_double_prime(U, dv, dw))
    out = {"a": minimality_holds(rng, U, dv, dw) and U <= legs}
    VW = tensor_module(V, W)
    seeds = [random_vector(rng, F, dv * dw) for _ in range(rng.randint(1, 2))]
    seeds = [s for s in seeds if s] or [{0: F.one}]
    sub = orbit_closure(VW.as_computable(), seeds, budget=dv * dw).subspace
    sub = Subspace(F, dv * dw, sub.vectors)
    out["submodule"] = is_submodule(VW, sub)
    out["c"] = is_submodule(V, u_prime(sub, dv, dw)) and is_submodule(W, u_double_prime(sub, dv, dw))
    return out
