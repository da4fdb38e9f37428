import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

import relconv

DATA = Path(os.environ.get("RELCONV_DATA", Path(__file__).resolve().parents[2] / "data"))


def direct_convolve(path, f1, f2):
    """(f1 * f2)(g) = sum of f1(h) f2(k) mu_g(h, k), straight from the file."""
    haar = json.loads(Path(path).read_text())["haar"]
    out = {}
    for g, fiber in haar.items():
        total = Fraction(0)
        for h, row in fiber.items():
            for k, w in row.items():
                total += Fraction(f1.get(h, 0)) * Fraction(f2.get(k, 0)) * Fraction(w)
        if total:
            out[g] = (total, Fraction(0))
    return out


def test_corpus_and_round_trip():
    names = relconv.corpus_names()
    assert "z4z2-strong" in names
    for name in names:
        d = relconv.corpus(name)
        assert all(e["passed"] for e in relconv.check_axioms(d))
        assert relconv.parse(d.serialize()).serialize() == d.serialize()


def test_canonical_files():
    for path in sorted(DATA.glob("*.json")):
        assert relconv.load(str(path)).serialize() == path.read_text()


def test_dirac_products():
    d = relconv.load(str(DATA / "z4z2-dirac.json"))
    assert d.carrier == ["0", "1", "2", "3"]
    assert relconv.convolve(d, "d0", "d1") == {"1": (Fraction(1, 4), Fraction(0))}
    a = relconv.associativity(d)
    assert not a["holds"]
    assert a["witness"] == ("0", "0", "1")
    assert a["left"] == {"1": (Fraction(1, 8), Fraction(0))}
    assert a["right"] == {"1": (Fraction(1, 16), Fraction(0))}
    c = relconv.classify(d)
    assert c["split"]["holds"] and not c["strongly_split"]["holds"]


def test_convolution_matches_direct_sum():
    for name in ["z4z2-strong", "z4z2-nonsplit", "s3-a3", "pair3"]:
        path = DATA / f"{name}.json"
        d = relconv.load(str(path))
        labels = d.carrier
        f1 = {x: Fraction(i + 1, 3) for i, x in enumerate(labels)}
        f2 = {x: Fraction(2 - i, 5) for i, x in enumerate(labels)}
        assert relconv.convolve(d, f1, f2) == direct_convolve(path, f1, f2)


def test_values_and_involution():
    d = relconv.corpus("z4z2-strong")
    f = {"1": (1, "2/3"), "2": 0.5}
    assert relconv.format_function(d, f) == "1: 1+2/3i, 2: 1/2"
    assert relconv.involution(d, f) == {"3": (Fraction(1), Fraction(-2, 3)), "2": (Fraction(1, 2), Fraction(0))}


def test_reduce_and_haar():
    d = relconv.load(str(DATA / "s3-a3.json"))
    r = relconv.reduce(d)
    assert len(r["classes"]) == 2
    assert all(len(m) == 3 for m in r["classes"].values())
    assert len(r["objects"]) == 1
    assert all(e["passed"] for e in relconv.check_haar(d))


def test_norm():
    d = relconv.load(str(DATA / "z2-half.json"))
    assert relconv.reduced_norm(d, "d0") == pytest.approx(0.5, rel=1e-12)


def test_errors():
    with pytest.raises(relconv.ParseError, match="line 1"):
        relconv.parse("{")
    d = relconv.corpus("z4z2-strong")
    with pytest.raises(relconv.NotInvariant):
        relconv.reduced_norm(d, "d0")
    with pytest.raises(relconv.Error, match="unknown function"):
        relconv.convolve(d, "nope", "d0")
    with pytest.raises(relconv.LabelError):
        relconv.convolve(d, {"9": 1}, "d0")
    assert issubclass(relconv.ParseError, relconv.Error)
