"""Verification suites run by `gckit verify` over the objects of an instance file."""
from __future__ import annotations

import itertools
import time

from gckit import boolalg, finring, groupoid, skew
from gckit.conv import ConvAlgebra
from gckit.equiv import (check_factor_through, check_main_theorem, disintegration_roundtrips,
                         summand_module)
from gckit.errors import GckitError, SizeLimit, UnknownSuite
from gckit.oracles import modulus_of, steinberg_convolve
from gckit.pierce import PierceSpectrum, stalks_indecomposable
from gckit.report import FAIL, PASS, SKIP, Check, SuiteReport

ADJUNCTION_MAX = 16


def _witness(exc):
    w = getattr(exc, "witness", None)
    return w if w is not None else str(exc)


def run_check(suite, subject, fn):
    """fn returns a detail string (pass) or raises; failures keep a witness."""
    try:
        detail = fn()
        if isinstance(detail, tuple):
            ok, detail, witness = detail
            return Check(suite, subject, PASS if ok else FAIL, detail, None if ok else witness)
        return Check(suite, subject, PASS, detail or "")
    except SizeLimit as exc:
        return Check(suite, subject, SKIP, str(exc))
    except GckitError as exc:
        return Check(suite, subject, FAIL, f"{type(exc).__name__}: {exc}", _witness(exc))
    except AssertionError as exc:
        return Check(suite, subject, FAIL, f"assertion failed: {exc}", str(exc))


# ---------------------------------------------------------------- axioms

def _semigroup_laws(S):
    for s in range(S.n):
        if S(S(s, S.star[s]), s) != s:
            return False, "s s* s != s", s
        for t in range(S.n):
            if S.star[S(s, t)] != S(S.star[t], S.star[s]):
                return False, "(st)* != t* s*", (s, t)
    for e, f in itertools.combinations(S.idempotents, 2):
        if S(e, f) != S(f, e):
            return False, "idempotents do not commute", (e, f)
    return True, f"{S.n} elements, {len(S.idempotents)} idempotents", None


def suite_axioms(reg):
    out = []
    for oid in reg.ids():
        kind = reg.kind(oid)

        def fn(oid=oid, kind=kind):
            obj = reg.get(oid)
            if kind == "semigroup":
                return _semigroup_laws(obj)
            if kind == "ring":
                return f"{obj.n} elements" + (", unital" if obj.is_unital() else "")
            if kind == "groupoid":
                return f"{obj.n_objects} objects, {obj.n_arrows} arrows"
            if kind == "sheaf":
                return f"stalk sizes {[R.n for R in obj.stalks]}"
            if kind == "spectral_action":
                return f"|D_s| = {[len(m) for m in obj.members]}"
            return f"{obj.n} elements"

        out.append(run_check("axioms", f"{oid} ({kind})", fn))
    return out


# ---------------------------------------------------------------- Boolean algebras

def _boolean_subjects(reg):
    for oid in reg.ids("boolalg"):
        yield oid, lambda oid=oid: reg.get(oid)
    for oid in reg.ids("ring"):
        yield f"E(Z({oid}))", lambda oid=oid: boolalg.from_central_idempotents(reg.get(oid))


def suite_boolalg(reg):
    out = []
    for subject, make in _boolean_subjects(reg):
        def fn(make=make):
            B = make()
            chars = boolalg.characters(B)
            p = boolalg.boolean_facts_problem(B)
            if p is not None:
                return False, f"Boolean facts fail: {p[0]}", p
            p = boolalg.stone_map_problem(B)
            if p is not None:
                return False, f"Stone map fails: {p[0]}", p
            if B.n <= 16 and boolalg.all_filters(B) != boolalg.all_filters_bruteforce(B):
                return False, "filter enumeration disagrees with brute force", None
            return True, f"{B.n} elements, {len(chars)} characters", None
        out.append(run_check("boolalg", subject, fn))
    return out


# ---------------------------------------------------------------- convolution

def _conv_checks(oid, O):
    G = O.base
    C = ConvAlgebra(O)
    R = C.ring
    bis = groupoid.enumerate_bisections(G)
    for U in bis:
        for V in bis:
            if C.convolve(C.indicator(U), C.indicator(V)) != C.indicator(groupoid.bisection_product(G, U, V)):
                return False, "chi_U * chi_V != chi_UV", (sorted(U), sorted(V))
    one = C.code(C.identity_element())
    if R.one != one:
        return False, "unit section is not the identity", one
    lus = C.local_units()
    for U, u in lus:
        cu = C.code(u)
        if R.times(cu, cu) != cu:
            return False, "local unit not idempotent", sorted(U)
        for V, v in lus:
            if C.convolve(u, v) != C.indicator(U & V):
                return False, "chi_U chi_V != chi_(U meet V) on units", (sorted(U), sorted(V))
    diag = [C.code(C.embed_diagonal(s)) for s in itertools.product(*[range(S.n) for S in O.stalks])]
    for _, u in lus:
        cu = C.code(u)
        if any(R.times(cu, d) != R.times(d, cu) for d in diag):
            return False, "local unit not central in the diagonal", None
    for f in C.elements():
        if C.convolve(C.identity_element(), f) != f:
            return False, "identity fails", f
        C.decompose(f)
    if not C.spans_by(groupoid.all_bisections(G)) or not C.spans_by(groupoid.singleton_bisections(G)):
        return False, "bisection-supported functions do not span", None
    n = modulus_of(O.stalks[0]) if O.is_constant() else None
    detail = f"|Γ_c| = {R.n}"
    if n is not None and G.n_arrows <= 6:
        elems = C.elements()
        for f in elems:
            for g in elems:
                if list(C.convolve(f, g)) != steinberg_convolve(G, n, f, g):
                    return False, "disagrees with the classical groupoid-ring product", (f, g)
        detail += ", matches classical product"
    return True, detail, None


def suite_convolution(reg):
    return [run_check("convolution", oid, lambda oid=oid: _conv_checks(oid, reg.get(oid)))
            for oid in reg.ids("sheaf")]


def suite_center(reg):
    def fn(oid):
        C = ConvAlgebra(reg.get(oid))
        cen = C.center()
        cls = C.class_functions()
        if sorted(cen) != sorted(cls):
            diff = set(cen) ^ set(cls)
            return False, "centre and class functions differ", C.label(sorted(diff)[0])
        return True, f"|Z| = {len(cen)}", None
    return [run_check("center", oid, lambda oid=oid: fn(oid)) for oid in reg.ids("sheaf")]


# ---------------------------------------------------------------- skew rings

def suite_skew(reg):
    def fn(oid):
        act = reg.get(oid, "spectral_action")
        R = skew.skew_ring(act)
        R.check_embedding()
        if R.delta_sum.size <= 4096:
            for a in range(act.A.n):
                vals = {R.element(d) for d in skew.all_decompositions(act, a)}
                if vals != {R.ring_image(a)}:
                    return False, "ring image depends on the decomposition", a
        return True, f"|N| = {len(R.relations)}, |A⋊S| = {R.ring.n}", None
    return [run_check("skew", oid, lambda oid=oid: fn(oid)) for oid in reg.ids("spectral_action")]


def suite_adjunction(reg):
    out = []
    for oid in reg.ids("spectral_action"):
        def fn(oid=oid):
            R = skew.skew_ring(reg.get(oid))
            if R.ring.n > ADJUNCTION_MAX:
                raise SizeLimit(f"adjunction enumeration limited to |A⋊S| <= {ADJUNCTION_MAX}")
            total = 0
            for name, T in skew.target_catalog():
                nh, ns, ok = skew.adjunction_check(R, T)
                if not ok:
                    return False, f"bijection fails for target {name}", (name, nh, ns)
                total += nh
            return True, f"{total} homomorphisms matched over {len(skew.target_catalog())} targets", None
        out.append(run_check("adjunction", oid, fn))
    return out


# ---------------------------------------------------------------- Pierce

def suite_pierce(reg):
    def fn(oid):
        R = reg.get(oid, "ring")
        P = PierceSpectrum(R)
        psi = P.gelfand_iso
        if psi.kernel() != frozenset([R.zero]):
            return False, "Gelfand map has a kernel", sorted(psi.kernel())
        if R.is_commutative() and not stalks_indecomposable(P):
            return False, "a commutative stalk decomposes", None
        return True, f"{P.n_points} points, stalks {[st.ring.n for st in P.stalks]}", None
    return [run_check("pierce", oid, lambda oid=oid: fn(oid)) for oid in reg.ids("ring")]


# ---------------------------------------------------------------- theorems

def _families(G):
    return [("all bisections", groupoid.all_bisections(G)),
            ("singletons", groupoid.singleton_bisections(G))]


def suite_factor_through(reg):
    out = []
    for oid in reg.ids("sheaf"):
        try:
            G = reg.get(oid).base
        except SizeLimit as exc:
            out.append(Check("factor_through", oid, SKIP, str(exc)))
            continue
        except GckitError as exc:
            out.append(Check("factor_through", oid, FAIL, f"{type(exc).__name__}: {exc}",
                             _witness(exc)))
            continue
        for name, fam in _families(G):
            def fn(oid=oid, fam=fam):
                rep = check_factor_through(G, reg.get(oid), fam)
                return rep.ok, rep.to_json(), rep.witness_failures or None
            out.append(run_check("factor_through", f"{oid} / {name}", fn))
    return out


def suite_disintegration(reg):
    out = []
    for oid in reg.ids("sheaf"):
        def fn(oid=oid):
            O = reg.get(oid)
            C = ConvAlgebra(O)
            mods = [("regular", finring.regular_module(C.ring))]
            n = O.base.n_objects
            for k in range(n + 1):
                for U in itertools.combinations(range(n), k):
                    mods.append((f"R*chi{list(U)}", summand_module(C, U)[0]))
            for name, M in mods:
                eta, v = disintegration_roundtrips(C, M)
                if not eta.ok:
                    return False, f"eta fails on {name}", eta.to_json()
                if not v.ok:
                    return False, f"v fails on {name}", v.to_json()
            return True, f"{len(mods)} modules round-tripped", None
        out.append(run_check("disintegration", oid, fn))
    return out


def suite_main_theorem(reg):
    def fn(oid):
        rep = check_main_theorem(reg.get(oid, "spectral_action"))
        return rep.ok, rep.to_json(), rep.witness_failures or None
    return [run_check("main_theorem", oid, lambda oid=oid: fn(oid))
            for oid in reg.ids("spectral_action")]


SUITES = {
    "axioms": suite_axioms,
    "boolalg": suite_boolalg,
    "convolution": suite_convolution,
    "center": suite_center,
    "skew": suite_skew,
    "adjunction": suite_adjunction,
    "pierce": suite_pierce,
    "factor_through": suite_factor_through,
    "disintegration": suite_disintegration,
    "main_theorem": suite_main_theorem,
}


def run_suite(reg, name) -> SuiteReport:
    if name != "all" and name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    names = list(SUITES) if name == "all" else [name]
    t0 = time.perf_counter()
    checks = []
    for n in names:
        checks.extend(SUITES[n](reg))
    return SuiteReport(name, checks, time.perf_counter() - t0)
