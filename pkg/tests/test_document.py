import re
from pathlib import Path

import pytest

from sslab.document import QUERY_KINDS, DocumentError, parse_document
from sslab.ordinal import cnf_parse
from sslab.prufer import StableOpPair
from sslab.radical import Join, Meet, Punctured
from sslab.report import execute
from sslab.spaces import CantorOneDim, FinitePoset, OrdinalOneDim, parse_point

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def error_of(text):
    with pytest.raises(DocumentError) as err:
        parse_document(text)
    return err.value


def test_v3_fixture_counts():
    doc = parse_document((CORPUS / "v3.sslab").read_text())
    summary = doc.summary()
    assert (summary["spaces"], summary["descriptors"], summary["ops"], summary["queries"]) == (1, 1, 2, 2)
    assert isinstance(doc.spaces["V"], FinitePoset)
    assert all(isinstance(op, StableOpPair) for op in doc.ops.values())


def test_every_corpus_document_parses():
    files = sorted(CORPUS.glob("*.sslab"))
    assert len(files) >= 5
    for f in files:
        assert parse_document(f.read_text()).queries


def test_dangling_reference_points_at_use_site():
    err = error_of("space V = poset { o < p }\nquery m = member(X, ideal(C=points {p}))\n")
    assert (err.line, err.col) == (2, 18)
    assert "unknown op 'X'" in err.message


def test_duplicate_name_reports_both_lines():
    err = error_of("space V = poset { o < p }\nset A on V = points {p}\n\nset A on V = points {o}\n")
    assert err.line == 4
    assert "line 2" in err.message and "line 4" in err.message


@pytest.mark.parametrize("text,fragment", [
    ("space W = ordinal(w^9)\n", "exponent exceeds"),
    ("space V = poset { o < p }\nset A on V = cells[[0,w] nu>=1]\n", "ordinal spaces"),
    ("space W = ordinal(w)\nspace C = cantor\nop A = spectral(W, max)\nop B = spectral(C, max)\n"
     "op J = join(A, B)\n", "different spaces"),
    ("space W = ordinal(w)\nquery q = frobnicate(W)\n", "unknown query"),
    ("space V = poset { o < p }\nset A on V = points {z}\n", "z"),
    ("space V = poset { o < p } extra\n", "end of line"),
    ("space C = cantor\nset A on C = pt \"01\"\n", "point"),
    ("widget V = poset { o < p }\n", "unknown statement"),
])
def test_malformed_documents(text, fragment):
    assert fragment in error_of(text).message


def test_use_before_definition_is_an_error():
    err = error_of("query m = cb-rank(W.max)\nspace W = ordinal(w)\n")
    assert err.line == 1


def test_set_expressions_and_comments():
    doc = parse_document(
        "# ordinal line\n"
        "space W = ordinal(w^2)  # trailing comment\n"
        "set L on W = cells[[0,w^2] nu>=1]\n"
        "set S on W = max - L\n"
        "set U on W = (L | S) & cells[[0,w]]\n"
        "set G on W = closure(S) +generic\n"
    )
    w = doc.spaces["W"]
    assert isinstance(w, OrdinalOneDim) and w.max_top == cnf_parse("w^2")
    _, lim = doc.sets["L"]
    _, succ = doc.sets["S"]
    assert w.union(lim, succ) == w.max_part()
    _, u = doc.sets["U"]
    assert u == w.interval(0, "w")
    _, g = doc.sets["G"]
    # 0 is not a limit of successors, so the closure misses it.
    assert g == w.with_generic(w.difference(w.max_part(), w.singleton(cnf_parse("0"))))


def test_cantor_literals():
    doc = parse_document(
        'space C = cantor\n'
        'set A on C = cyl "01" - pt "01(0)"\n'
        'set B on C = pt "1(0)" | pt "(01)"\n'
    )
    c = doc.spaces["C"]
    assert isinstance(c, CantorOneDim)
    assert doc.sets["A"][1] == c.make(["01"], minus=[parse_point("01(0)")])
    assert doc.sets["B"][1] == c.make(plus=[parse_point("1(0)"), parse_point("(01)")])


def test_operation_forms():
    doc = parse_document(
        "space V = poset { o < p, o < q }\n"
        "space C = cantor\n"
        "op A = spectral(V, points {p})\n"
        "op B = spectral(V, points {q})\n"
        "op J = join(A, B)\n"
        "op M = meet(A, B)\n"
        "op P = join-punctured(C, M=max, S=max)\n"
    )
    assert isinstance(doc.ops["J"], Join)
    assert isinstance(doc.ops["M"], Meet)
    assert isinstance(doc.ops["P"], Punctured)


def test_statements_may_span_lines_inside_brackets():
    doc = parse_document("space V = poset {\n  o < p,\n  o < q\n}\nquery c = closure(V,\n  points { o })\n")
    assert len(doc.queries) == 1 and doc.queries[0].line == 5


def test_query_kinds_are_documented():
    assert {"member", "tau", "enumerate", "is-spectral", "qspec", "gqc", "cb-rank"} <= set(QUERY_KINDS)


def test_readme_example_runs():
    text = (CORPUS.parent / "README.md").read_text()
    block = re.search(r"```\n(space V.*?)```", text, re.S).group(1)
    report = execute(parse_document(block))
    assert report.failures == 0 and len(report.results) == 3
