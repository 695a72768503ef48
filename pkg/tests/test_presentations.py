import pytest

from thinlie.fields import PrimeField
from thinlie.presentations import (
    Presentation,
    RelatorSyntaxError,
    Word,
    build_minus1,
    build_theorem41,
    make_relator,
    parse_relators,
    v_word,
    word,
)


def relator_words(pres):
    """The relators as {(((coeff, letters), ...))} for easy comparison."""
    return {tuple((c, str(w)) for c, w in r.terms) for r in pres.relators}


class TestVWord:
    def test_v1_q5(self):
        assert str(v_word(1, 5)) == "yxxx"
        assert v_word(1, 5).degree == 4

    def test_v2_q3(self):
        assert str(v_word(2, 3)) == "yxxx"
        assert v_word(2, 3).degree == 4

    def test_v3_q3(self):
        assert str(v_word(3, 3)) == "yxxxxy"
        assert v_word(3, 3).degree == 6

    def test_degree_law(self):
        for q in range(3, 10):
            for k in range(1, 13):
                assert v_word(k, q).degree == k * (q - 1)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            v_word(0, 5)
        with pytest.raises(ValueError):
            v_word(2, 2)


class TestWordsAndRelators:
    def test_empty_word_rejected(self):
        with pytest.raises(ValueError):
            Word(())

    def test_bad_letter_rejected(self):
        with pytest.raises(ValueError):
            word("xz")

    def test_pretty_powers(self):
        assert word("yxxxy").pretty() == "y, x^3, y"

    def test_make_relator_collects(self):
        f = PrimeField(5)
        r = make_relator(f, [(2, "yx"), (4, "yx"), (1, "xy")])
        assert tuple((c, str(w)) for c, w in r.terms) == ((1, "xy"), (1, "yx"))

    def test_make_relator_inhomogeneous(self):
        f = PrimeField(3)
        with pytest.raises(ValueError, match="inhomogeneous"):
            make_relator(f, [(1, "yx"), (1, "yxx")])

    def test_make_relator_zero(self):
        f = PrimeField(3)
        with pytest.raises(ValueError, match="zero"):
            make_relator(f, [(1, "yx"), (2, "yx")])


class TestTheorem41Builder:
    def test_exact_set_p3(self):
        pres = build_theorem41(3, 1, 1)
        assert relator_words(pres) == {
            ((1, "yxxy"),),
            ((1, "yxyx"),),
            ((1, "yxyy"),),
            ((1, "yxxxxxx"),),  # [v_2 x x x]
            ((1, "yxxxxxy"),),  # [v_2 x x y]
            ((2, "yxxxxyxyxx"), (1, "yxxxxyxyyx")),  # [v_4 y x] - [v_4 x x]
        }

    def test_exact_set_p5(self):
        pres = build_theorem41(5, 1, 1)
        chain = {((1, "y" + "x" * i + "y"),) for i in (1, 2, 4, 5, 6)}
        exceptional = {((1, "yxxxyx"),)}
        v2 = v_word(2, 5)
        deep = {
            ((1, str(v2) + "xxx"),),
            ((1, str(v2) + "xxy"),),
        }
        v4 = str(v_word(4, 5))
        even = {((1, v4 + "xx"),)}
        v6 = str(v_word(6, 5))
        type_rel = ((4, v6 + "xx"), (1, v6 + "yx"))  # terms sorted by word
        assert relator_words(pres) == chain | exceptional | deep | even | {type_rel}

    @pytest.mark.parametrize(
        "p,n,s", [(3, 1, 1), (5, 1, 1), (3, 2, 1), (7, 1, 1), (3, 1, 2), (5, 1, 2)]
    )
    def test_relator_count_formula(self, p, n, s):
        q = p**n
        pres = build_theorem41(p, n, s)
        expected = (2 * q - 4 - n) + n + (1 if q == 3 else 0) + 2
        expected += (p**s - 2) // 2 + 1
        assert len(pres.relators) == expected

    def test_all_homogeneous(self):
        for p, n, s in ((3, 1, 1), (5, 1, 1), (3, 2, 1)):
            for r in build_theorem41(p, n, s).relators:
                assert all(w.degree == r.degree for _, w in r.terms)

    def test_bad_params(self):
        with pytest.raises(ValueError):
            build_theorem41(4, 1, 1)
        with pytest.raises(ValueError):
            build_theorem41(3, 0, 1)
        with pytest.raises(ValueError):
            build_theorem41(3, 1, 0)


class TestMinus1Builder:
    def test_a4_p5_flags(self):
        with_odd = build_minus1(5, 1, 4, 1, include_odd_k=True)
        without = build_minus1(5, 1, 4, 1, include_odd_k=False)
        v2xx = ((1, str(v_word(2, 5)) + "xx"),)
        v3xx = ((1, str(v_word(3, 5)) + "xx"),)
        assert v2xx in relator_words(with_odd)
        assert v3xx in relator_words(with_odd)
        assert v2xx in relator_words(without)
        assert v3xx not in relator_words(without)

    def test_a3_smallest(self):
        pres = build_minus1(5, 1, 3, 1)
        v_rels = [r for r in pres.relators if r.degree > 8]
        # only [v_2 x x] (degree 10) and the type relator at v_3 (degree 14)
        assert sorted(r.degree for r in v_rels) == [10, 14]

    def test_type_relator_shape(self):
        pres = build_minus1(3, 1, 4, 2)
        type_rel = pres.relators[-1]
        v4 = str(v_word(4, 3))
        assert tuple((c, str(w)) for c, w in type_rel.terms) == (
            (1, v4 + "xx"),  # -2 = 1 mod 3
            (1, v4 + "yx"),
        )

    def test_lambda_zero_rejected(self):
        with pytest.raises(ValueError, match="lambda"):
            build_minus1(5, 1, 4, 5)

    def test_a_too_small(self):
        with pytest.raises(ValueError):
            build_minus1(5, 1, 2, 1)


class TestRelatorDsl:
    def test_single_word(self):
        pres = parse_relators("p=3 n=1\n[y,x^2,y] = 0\n")
        assert len(pres.relators) == 1
        assert pres.relators[0].degree == 4
        assert pres.provenance == "custom"

    def test_v_macro(self):
        pres = parse_relators("p=5 n=1\n[v(4),y,x] - [v(4),x,x] = 0\n")
        assert pres.relators[0].degree == 4 * 4 + 2

    def test_comments_and_blanks(self):
        text = "# header\np=3 n=1  # inline\n\n[y,x,y]  # relator\n"
        pres = parse_relators(text)
        assert len(pres.relators) == 1

    def test_coefficients_and_signs(self):
        pres = parse_relators("p=7\n3[y,x] - [x,y] = 0\n")
        assert tuple((c, str(w)) for c, w in pres.relators[0].terms) == (
            (6, "xy"),
            (3, "yx"),
        )

    def test_zero_exponent_rejected(self):
        with pytest.raises(RelatorSyntaxError, match="exponent"):
            parse_relators("p=3\n[x^0]\n")

    def test_empty_word_rejected(self):
        with pytest.raises(RelatorSyntaxError, match="empty word"):
            parse_relators("p=3\n[]\n")

    def test_v_needs_q(self):
        with pytest.raises(RelatorSyntaxError, match="v\\(k\\) requires q"):
            parse_relators("p=3\n[v(2),x]\n")

    def test_v_only_first(self):
        with pytest.raises(RelatorSyntaxError, match="first atom"):
            parse_relators("p=3 n=1\n[x,v(2)]\n")

    def test_missing_p(self):
        with pytest.raises(RelatorSyntaxError, match="must set p"):
            parse_relators("n=1\n[y,x]\n")

    def test_unknown_key(self):
        with pytest.raises(RelatorSyntaxError, match="unknown header key"):
            parse_relators("p=3 z=4\n[y,x]\n")

    def test_inhomogeneous_with_line(self):
        with pytest.raises(RelatorSyntaxError, match="line 3"):
            parse_relators("p=3\n[y,x]\n[y,x] + [y,x,x]\n")

    def test_error_reports_position(self):
        with pytest.raises(RelatorSyntaxError, match="line 2"):
            parse_relators("p=3\n[y,x] ?\n")

    def test_composite_modulus_rejected(self):
        with pytest.raises(RelatorSyntaxError, match="prime"):
            parse_relators("p=9\n[y,x]\n")

    @pytest.mark.parametrize(
        "pres",
        [
            build_theorem41(3, 1, 1),
            build_theorem41(5, 1, 1),
            build_minus1(5, 1, 4, 2, include_odd_k=True),
        ],
        ids=["t41-p3", "t41-p5", "minus1-p5"],
    )
    def test_roundtrip(self, pres):
        reparsed = parse_relators(pres.to_dsl())
        assert reparsed.p == pres.p
        assert relator_words(reparsed) == relator_words(pres)
        again = parse_relators(reparsed.to_dsl())
        assert relator_words(again) == relator_words(reparsed)

    def test_header_params_kept(self):
        pres = parse_relators("p=5 n=1 a=4 lambda=2\n[y,x,y]\n")
        assert pres.params == {"n": 1, "a": 4, "lambda": 2}
        assert pres.q == 5


def test_truncated_drops_deep_relators():
    pres = build_theorem41(3, 1, 1)
    cut = pres.truncated(8)
    assert cut.max_relator_degree() <= 8
    assert len(cut.relators) == len(pres.relators) - 1


def test_presentation_q():
    assert build_theorem41(3, 2, 1).q == 9
    assert Presentation(PrimeField(3), ()).q is None
