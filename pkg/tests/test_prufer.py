import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sslab.oracle import DIAMOND, V3, LatticeScan, automorphisms, enumerate_pairs, f_table, ideal_universe, poset_catalog
from sslab.ordinal import cnf_parse
from sslab.prufer import (
    CantorRelabel, IdentityMap, MapError, OracleNotStable, PairError, PosetIsomorphism, PruferDescriptor,
    is_radical_stable, normalize_pair, stable_join, stable_leq, stable_meet, stable_member, stable_normalize,
    transfer_pair, validate_pair,
)
from sslab.sampling import random_descriptor, random_ideal, random_pair
from sslab.spaces import CantorOneDim, OrdinalOneDim, SpaceError, parse_point
from sslab.spectral import IdealDescriptor, SpectralOp, spectral_member

D = PruferDescriptor(V3, V3.bits("p"))
CANTOR = CantorOneDim()
W2 = OrdinalOneDim(cnf_parse("w^2"))


def pair(delta, pi, d=D):
    sp = d.space
    return validate_pair(d, sp.bits(*delta), sp.bits(*pi))


def ideal(c, sharp=()):
    return IdealDescriptor(V3, V3.bits(*c), V3.bits(*sharp))


SPECTRAL_OP = pair("op", "")
PRIMARY_OP = pair("o", "p")


def test_validate_examples():
    assert PRIMARY_OP.delta == V3.bits("o") and PRIMARY_OP.pi == V3.bits("p")
    with pytest.raises(PairError) as err:
        pair("o", "q")
    assert err.value.rules == ["pi-not-idempotent"]
    dd = PruferDescriptor(DIAMOND, DIAMOND.bits("m"))
    with pytest.raises(PairError) as err:
        pair("o", "m", dd)
    assert err.value.rules == ["lower-prime-missing"]
    with pytest.raises(PairError) as err:
        pair("op", "p")
    assert "pi-inside-delta" in err.value.rules


def test_validate_canonicalizes_delta():
    assert pair("p", "").delta == V3.bits("o", "p")


def test_branched_override_rules():
    with pytest.raises(SpaceError):
        PruferDescriptor(V3, V3.bits("p"), V3.bits("q"))
    d = PruferDescriptor(V3, V3.bits("p"), V3.bits("q"), branched_override=True)
    with pytest.raises(PairError) as err:
        pair("o", "p", d)
    assert err.value.rules == ["pi-not-branched"]
    with pytest.raises(SpaceError):
        PruferDescriptor(W2, W2.empty(), W2.empty(), branched_override=True)
    with pytest.raises(SpaceError):
        stable_member(validate_pair(d, V3.bits("o"), V3.empty()), ideal("p", "p"))


def test_member_examples():
    assert not stable_member(PRIMARY_OP, ideal("p", "p"))
    assert stable_member(PRIMARY_OP, ideal("p"))
    assert not stable_member(SPECTRAL_OP, ideal("p"))


def test_leq_examples_against_tables():
    assert stable_leq(SPECTRAL_OP, PRIMARY_OP)
    assert f_table(SPECTRAL_OP) <= f_table(PRIMARY_OP)
    assert not stable_leq(PRIMARY_OP, SPECTRAL_OP)
    # (C={p}, sharp=empty) is admitted by the primary pair only.
    witness = ideal("p")
    assert stable_member(PRIMARY_OP, witness) and not stable_member(SPECTRAL_OP, witness)


def test_meet_and_join_examples():
    assert stable_meet(SPECTRAL_OP, PRIMARY_OP) == SPECTRAL_OP
    assert stable_join(SPECTRAL_OP, PRIMARY_OP) == PRIMARY_OP
    meet_table = f_table(stable_meet(SPECTRAL_OP, PRIMARY_OP))
    assert meet_table.bits == f_table(SPECTRAL_OP).bits & f_table(PRIMARY_OP).bits
    glb, lub = LatticeScan(enumerate_pairs(D)).bounds(SPECTRAL_OP, PRIMARY_OP)
    assert (glb, lub) == (SPECTRAL_OP, PRIMARY_OP)
    for x in enumerate_pairs(D):
        assert stable_meet(x, x) == x == stable_join(x, x)


def test_is_radical_examples():
    assert is_radical_stable(SPECTRAL_OP)
    assert not is_radical_stable(PRIMARY_OP)
    assert is_radical_stable(pair("", ""))


def test_normalize_examples():
    assert normalize_pair(PRIMARY_OP) == PRIMARY_OP
    pairs = enumerate_pairs(D)
    assert len(pairs) == 7
    for p in pairs:
        assert normalize_pair(p) == p
        if is_radical_stable(p):
            s = SpectralOp(V3, p.delta)
            rebuilt = stable_normalize(D, lambda i, s=s: spectral_member(s, i))
            assert rebuilt == p


def test_normalize_rejects_unstable_oracles():
    dd = PruferDescriptor(DIAMOND, DIAMOND.bits("m"))
    m = DIAMOND.bits("m")

    def oracle(i):
        return not i.is_zero and not (i.C == m and i.sharp == m)

    with pytest.raises(OracleNotStable):
        stable_normalize(dd, oracle)


def test_transfer_swap_on_v3():
    d = PruferDescriptor(V3, V3.bits("p", "q"))
    swap = PosetIsomorphism(d, d, (("o", "o"), ("p", "q"), ("q", "p")))
    assert transfer_pair(swap, pair("op", "", d)) == pair("oq", "", d)
    assert transfer_pair(swap, pair("o", "p", d)) == pair("o", "q", d)
    with pytest.raises(MapError):
        PosetIsomorphism(D, D, (("o", "o"), ("p", "q"), ("q", "p")))
    with pytest.raises(MapError):
        PosetIsomorphism(d, d, (("o", "p"), ("p", "o"), ("q", "q")))


def test_identity_map_fixes_pairs():
    ident = IdentityMap(D)
    for p in enumerate_pairs(D):
        assert transfer_pair(ident, p) == p


def test_transfer_round_trip_on_four_points():
    for sp in [s for s in poset_catalog(4) if len(s.points) == 4]:
        for mask in range(1 << len(sp.points)):
            idem = sp.difference(type(sp.empty())(mask), sp.generic_set())
            d = PruferDescriptor(sp, idem)
            pairs = enumerate_pairs(d)
            for m in automorphisms(d):
                phi = PosetIsomorphism(d, d, tuple(m.items()))
                for p in pairs:
                    assert transfer_pair(phi.inverse(), transfer_pair(phi, p)) == p


def test_cantor_relabel_transfer():
    d = PruferDescriptor(CANTOR, CANTOR.max_part())
    flip = CantorRelabel(d, d, (("0", "1"), ("1", "0")))
    delta = CANTOR.with_generic(CANTOR.cylinder("01"))
    pi = CANTOR.make(["1"], minus=[parse_point("1(0)")])
    p = validate_pair(d, delta, pi)
    q = transfer_pair(flip, p)
    assert q.delta == CANTOR.with_generic(CANTOR.cylinder("11"))
    assert q.pi == CANTOR.make(["0"], minus=[parse_point("0(0)")])
    assert transfer_pair(flip.inverse(), q) == p
    with pytest.raises(MapError):
        CantorRelabel(d, d, (("0", "1"), ("1", "1")))
    partial = PruferDescriptor(CANTOR, CANTOR.cylinder("0"))
    with pytest.raises(MapError):
        CantorRelabel(partial, partial, (("0", "1"), ("1", "0")))


@given(st.sampled_from([V3, DIAMOND, W2, CANTOR]), st.integers(0, 2**32))
def test_lattice_laws_on_random_pairs(sp, seed):
    rng = random.Random(seed)
    d = random_descriptor(rng, sp)
    a, b, c = (random_pair(rng, d) for _ in range(3))
    assert stable_leq(a, a)
    if stable_leq(a, b) and stable_leq(b, a):
        assert a == b
    if stable_leq(a, b) and stable_leq(b, c):
        assert stable_leq(a, c)
    m, j = stable_meet(a, b), stable_join(a, b)
    assert stable_leq(m, a) and stable_leq(m, b) and stable_leq(a, j) and stable_leq(b, j)
    assert stable_meet(a, b) == stable_meet(b, a) and stable_join(a, b) == stable_join(b, a)
    assert stable_meet(a, stable_join(a, b)) == a and stable_join(a, stable_meet(a, b)) == a
    assert stable_meet(stable_meet(a, b), c) == stable_meet(a, stable_meet(b, c))
    assert stable_join(stable_join(a, b), c) == stable_join(a, stable_join(b, c))


@given(st.sampled_from([W2, CANTOR]), st.integers(0, 2**32))
def test_meet_and_join_bound_memberships(sp, seed):
    rng = random.Random(seed)
    d = random_descriptor(rng, sp)
    a, b = random_pair(rng, d), random_pair(rng, d)
    m, j = stable_meet(a, b), stable_join(a, b)
    for _ in range(20):
        i = random_ideal(rng, sp)
        assert stable_member(m, i) == (stable_member(a, i) and stable_member(b, i))
        if stable_member(a, i) or stable_member(b, i):
            assert stable_member(j, i)


def test_spectral_pairs_match_spectral_ops():
    for sp in poset_catalog(4):
        d = PruferDescriptor(sp, sp.empty())
        universe = [x for x in ideal_universe(d) if not x.is_zero]
        for p in enumerate_pairs(d):
            s = SpectralOp(sp, p.delta)
            assert all(stable_member(p, x) == spectral_member(s, x) for x in universe)


@pytest.mark.parametrize("sp", [W2, OrdinalOneDim(cnf_parse("w^3")), CANTOR], ids=repr)
def test_one_dim_round_trip(sp):
    rng = random.Random(21)
    for _ in range(60):
        p = random_pair(rng, random_descriptor(rng, sp))
        assert normalize_pair(p) == p


def test_order_is_preserved_by_every_automorphism():
    for sp in poset_catalog(4):
        d = PruferDescriptor(sp, sp.difference(sp.full(), sp.generic_set()))
        pairs = enumerate_pairs(d)
        for m in automorphisms(d):
            phi = PosetIsomorphism(d, d, tuple(m.items()))
            for a, b in itertools.product(pairs, repeat=2):
                assert stable_leq(a, b) == stable_leq(transfer_pair(phi, a), transfer_pair(phi, b))
