"""Self-check suites run by ``sslab verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .correspondences import is_radical_ls, localizing_view, sharp_rebuild, sigma_support
from .oracle import (
    LatticeScan, automorphisms, enumerate_pairs, f_table, flag_patterns, ideal_universe, localizing_axioms_check,
    poset_catalog,
)
from .ordinal import cnf_parse
from .prufer import (
    PosetIsomorphism, PruferDescriptor, is_radical_stable, normalize_pair, stable_join, stable_leq, stable_meet,
    stable_member, transfer_pair,
)
from .radical import Join, radical_is_spectral, radical_member
from .sampling import random_descriptor, random_family, random_ideal, random_pair, random_set
from .spaces import CantorOneDim, FinitePoset, OrdinalOneDim
from .spectral import IdealDescriptor, SpectralOp, spectral_member, spectral_sup

SUITES = ("topology", "spectral", "radical", "prufer", "correspondences", "lattice")


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)

    def check(self, ok: bool, what) -> None:
        self.checks += 1
        if not ok and len(self.failures) < 20:
            self.failures.append(what() if callable(what) else what)

    @property
    def ok(self) -> bool:
        return not self.failures


def sample_spaces(poset_size: int = 4):
    cat = poset_catalog(poset_size)
    return [cat[-1], OrdinalOneDim(cnf_parse("w^2")), CantorOneDim()]


def topology_checks(sp, rng: random.Random, n: int, out: SuiteResult) -> None:
    """Boolean, closure and derived-set identities on random sets."""
    full = sp.full()
    for _ in range(n):
        a, b = random_set(rng, sp), random_set(rng, sp)
        r = sp.render
        out.check(sp.complement(sp.union(a, b)) == sp.intersect(sp.complement(a), sp.complement(b)),
                  lambda: f"De Morgan (union) fails for {r(a)}, {r(b)}")
        out.check(sp.complement(sp.intersect(a, b)) == sp.union(sp.complement(a), sp.complement(b)),
                  lambda: f"De Morgan (intersection) fails for {r(a)}, {r(b)}")
        out.check(sp.complement(sp.complement(a)) == a, lambda: f"double complement fails for {r(a)}")
        out.check(sp.union(a, sp.complement(a)) == full, lambda: f"excluded middle fails for {r(a)}")
        ca = sp.closure(a)
        out.check(sp.closure(ca) == ca and sp.subset(a, ca), lambda: f"closure not idempotent/extensive on {r(a)}")
        out.check(sp.closure(sp.union(a, b)) == sp.union(ca, sp.closure(b)), lambda: f"closure not additive on {r(a)}, {r(b)}")
        iso, der = sp.isolated(a), sp.derived(a)
        out.check(sp.is_empty(sp.intersect(iso, der)) and sp.union(iso, der) == a,
                  lambda: f"isolated/derived do not partition {r(a)}")


def automorphism_checks(sp: FinitePoset, out: SuiteResult) -> None:
    for d in flag_patterns(sp):
        pairs = enumerate_pairs(d)
        for m in automorphisms(d):
            phi = PosetIsomorphism(d, d, tuple(m.items()))
            inv = phi.inverse()
            image = [transfer_pair(phi, p) for p in pairs]
            out.check(sorted(map(repr, image)) == sorted(map(repr, pairs)), "transfer is not a bijection")
            for p, q in zip(pairs, image):
                out.check(transfer_pair(inv, q) == p, lambda: f"inverse transfer fails on {p.describe()}")
            for i, a in enumerate(pairs):
                for j, b in enumerate(pairs):
                    out.check(stable_leq(a, b) == stable_leq(image[i], image[j]), "order not preserved")


def run_suite(name: str, seed: int = 0, poset_size: int = 4) -> SuiteResult:
    rng = random.Random(seed)
    out = SuiteResult(name)
    cat = poset_catalog(poset_size)
    if name == "topology":
        for sp in sample_spaces(poset_size):
            topology_checks(sp, rng, 200, out)
    elif name == "spectral":
        for sp in cat:
            for m in sp.down_masks():
                op = SpectralOp(sp, type(sp.empty())(m))
                for ideal in ideal_universe(PruferDescriptor(sp, sp.empty())):
                    if ideal.is_zero:
                        continue
                    direct = not (ideal.C.mask & m)
                    out.check(spectral_member(op, ideal) == direct, lambda: f"{sp!r}: {op.describe()}")
    elif name == "radical":
        for sp in cat:
            for _ in range(20):
                fam = random_family(rng, sp)
                j = Join(tuple(fam))
                out.check(radical_is_spectral(j).answer, lambda: f"{sp!r}: {j.describe()} not spectral")
                sup = spectral_sup(fam)
                for m in sp.closed_masks():
                    ideal = IdealDescriptor(sp, type(sp.empty())(m))
                    out.check(radical_member(j, ideal) == spectral_member(sup, ideal),
                              lambda: f"{sp!r}: {j.describe()} at {ideal.describe()}")
        w = OrdinalOneDim(cnf_parse("w^2"))
        for _ in range(50):
            fam = random_family(rng, w)
            j, sup = Join(tuple(fam)), spectral_sup(fam)
            for _ in range(20):
                ideal = random_ideal(rng, w)
                out.check(radical_member(j, ideal) == spectral_member(sup, ideal),
                          lambda: f"ordinal: {j.describe()} at {ideal.describe()}")
    elif name == "prufer":
        for sp in cat:
            for d in flag_patterns(sp):
                for p in enumerate_pairs(d):
                    out.check(normalize_pair(p) == p, lambda: f"normalize moves {p.describe()} on {sp!r}")
            automorphism_checks(sp, out)
        w = OrdinalOneDim(cnf_parse("w^2"))
        for _ in range(50):
            p = random_pair(rng, random_descriptor(rng, w))
            out.check(normalize_pair(p) == p, lambda: f"normalize moves {p.describe()} on {w!r}")
    elif name == "correspondences":
        for sp in cat:
            for d in flag_patterns(sp):
                universe = ideal_universe(d)
                for p in enumerate_pairs(d):
                    view = localizing_view(p)
                    radical_by_table = all(
                        stable_member(p, x) == stable_member(p, IdealDescriptor(sp, x.C))
                        for x in universe if not x.is_zero)
                    out.check(is_radical_ls(view) == is_radical_stable(p) == radical_by_table,
                              lambda: f"radicality views disagree on {p.describe()}")
                    out.check(sharp_rebuild(p) == p, lambda: f"sharp rebuild moves {p.describe()}")
                    out.check(not sp.has_generic(sigma_support(p)), "support holds the generic point")
    elif name == "lattice":
        for sp in cat:
            for d in flag_patterns(sp):
                pairs = enumerate_pairs(d)
                scan = LatticeScan(pairs)
                for a in pairs:
                    out.check(localizing_axioms_check(f_table(a)), lambda: f"table of {a.describe()} not upward closed")
                    for b in pairs:
                        glb, lub = scan.bounds(a, b)
                        out.check(glb == stable_meet(a, b) and lub == stable_join(a, b)
                                  and scan.leq(a, b) == stable_leq(a, b),
                                  lambda: f"lattice mismatch at {a.describe()}, {b.describe()} on {sp!r}")
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return out
