import random

import pytest

from demushkin.errors import DomainError, GeneratorRangeError, NotPrimeError, ParseError
from demushkin.forms import SkewForm, radical
from demushkin.presentations import (
    Presentation,
    abelianization,
    analyze,
    canonical_relator,
    cup_form,
    dump_presentation,
    h2_of_index_p_subgroup,
    is_demushkin,
    is_minimal,
    load_presentation,
    pro2_relator,
    q_invariant,
    relator_from_form,
    s_family_relator,
    subgroup_rank,
    truncate,
)
from demushkin.words import (
    Commutator,
    Identity,
    Power,
    Product,
    gen,
    parse_word,
)

X1, X2, X3, X4 = gen(1), gen(2), gen(3), gen(4)


def pres(p, n, text):
    return Presentation(p, n, parse_word(text, n))


class TestPresentation:
    def test_validation(self):
        with pytest.raises(NotPrimeError):
            Presentation(4, 2, X1)
        with pytest.raises(DomainError):
            Presentation(3, 0, X1)
        with pytest.raises(DomainError):
            Presentation(3, 2, Identity())
        with pytest.raises(DomainError):
            Presentation(3, 2, X3)


class TestMinimality:
    def test_examples(self):
        assert is_minimal(pres(3, 1, "x1^3"))
        assert not is_minimal(pres(3, 1, "x1"))
        assert is_minimal(pres(5, 2, "[x1,x2]"))


class TestQInvariant:
    def test_examples(self):
        assert q_invariant(pres(3, 2, "x1^9 [x1,x2]")) == 9
        assert q_invariant(pres(3, 4, "[x1,x2] [x3,x4]")) == 0
        assert q_invariant(pres(3, 2, "x1^3 x2^9")) == 3

    def test_requires_minimal(self):
        with pytest.raises(DomainError):
            q_invariant(pres(3, 1, "x1"))


class TestAbelianization:
    def test_examples(self):
        assert abelianization(canonical_relator(3, 3, 4)) == (3, 3)
        assert abelianization(pres(3, 2, "[x1,x2]")) == (0, 2)
        assert abelianization(pres(2, 1, "x1^4")) == (4, 0)


class TestCupForm:
    def test_canonical_is_standard_symplectic(self):
        form = cup_form(pres(3, 4, "x1^3 [x1,x2] [x3,x4]"))
        assert form == SkewForm.standard_symplectic(3, 4)

    def test_char2_square_diagonal(self):
        form = cup_form(pres(2, 2, "x1^2 [x1,x2]"))
        assert form.to_json() == [[1, 1], [1, 0]]

    def test_unused_generator_in_radical(self):
        form = cup_form(pres(3, 3, "[x1,x2]"))
        rad = radical(form)
        assert rad.dim == 1
        assert rad.contains((0, 0, 1))

    def test_odd_p_diagonal_vanishes(self):
        rng = random.Random(31)
        from helpers import random_minimal_presentation

        for p in (3, 5):
            for _ in range(30):
                candidate = random_minimal_presentation(rng, p, 3, 10)
                form = cup_form(candidate)
                assert all(form.gram[i][i] == 0 for i in range(3))


class TestIsDemushkin:
    def test_canonical_families(self):
        for p, q, n in [(3, 3, 4), (3, 0, 2), (2, 4, 2), (5, 25, 6)]:
            assert is_demushkin(canonical_relator(p, q, n))

    def test_cyclic_of_order_two(self):
        assert is_demushkin(pres(2, 1, "x1^2"))

    def test_degenerate_cases(self):
        assert not is_demushkin(pres(3, 3, "[x1,x2]"))
        assert not is_demushkin(pres(3, 1, "x1"))  # non-minimal
        assert not is_demushkin(pres(3, 1, "x1^3"))  # diagonal zero at odd p


class TestCanonicalRelator:
    def test_shapes(self):
        assert canonical_relator(3, 3, 4).relator == Product(
            (Power(X1, 3), Commutator(X1, X2), Commutator(X3, X4))
        )
        assert canonical_relator(3, 0, 2).relator == Commutator(X1, X2)
        assert canonical_relator(2, 4, 2).relator == Product(
            (Power(X1, 4), Commutator(X1, X2))
        )

    def test_rejections(self):
        with pytest.raises(DomainError):
            canonical_relator(2, 2, 2)  # q = 2 excluded
        with pytest.raises(DomainError):
            canonical_relator(3, 3, 3)  # odd n
        with pytest.raises(DomainError):
            canonical_relator(3, 4, 2)  # q not a power of p
        with pytest.raises(NotPrimeError):
            canonical_relator(6, 0, 2)


class TestRelatorFromForm:
    def test_standard_block_form(self):
        form = SkewForm.standard_symplectic(3, 4)
        built = relator_from_form(3, form)
        assert built.relator == canonical_relator(3, 3, 4).relator

    def test_q_zero(self):
        built = relator_from_form(0, SkewForm.standard_symplectic(3, 2))
        assert built.relator == Commutator(X1, X2)

    def test_exponent_two_entry_round_trips(self):
        rows = [
            [0, 1, 0, 0],
            [-1, 0, 0, 0],
            [0, 0, 0, 2],
            [0, 0, -2, 0],
        ]
        form = SkewForm.from_rows(rows, 3)
        built = relator_from_form(3, form)
        assert built.relator == Product(
            (Power(X1, 3), Commutator(X1, X2), Power(Commutator(X3, X4), 2))
        )
        assert cup_form(built) == form

    def test_round_trip_with_busy_second_row(self):
        # v_2 may pair with later vectors; only v_1 must be orthogonal
        rows = [
            [0, 1, 0, 0],
            [-1, 0, 1, 2],
            [0, -1, 0, 1],
            [0, -2, -1, 0],
        ]
        form = SkewForm.from_rows(rows, 3)
        assert radical(form).dim == 0
        assert cup_form(relator_from_form(3, form)) == form

    def test_rejections(self):
        with pytest.raises(DomainError):
            relator_from_form(3, SkewForm.from_rows([[0, 0], [0, 0]], 3))
        bad_pivot = [
            [0, 1, 1, 0],
            [-1, 0, 0, 0],
            [-1, 0, 0, 1],
            [0, 0, -1, 0],
        ]
        with pytest.raises(DomainError):
            relator_from_form(3, SkewForm.from_rows(bad_pivot, 3))
        with pytest.raises(DomainError):
            relator_from_form(2, SkewForm.standard_symplectic(2, 2))  # q = 2


class TestPro2Relator:
    def test_case_one(self):
        built = pro2_relator(1, 2, 2)
        assert built.relator == Product((Power(X1, 6), Commutator(X1, X2)))
        assert built.p == 2

    def test_case_two(self):
        built = pro2_relator(2, 3, 4)
        assert built.relator == Product(
            (Power(X1, 2), Commutator(X1, X2), Power(X3, 8), Commutator(X3, X4))
        )

    def test_case_three(self):
        built = pro2_relator(3, 2, 3)
        assert built.relator == Product(
            (Power(X1, 2), Power(X2, 4), Commutator(X2, X3))
        )

    def test_t0_case(self):
        built = pro2_relator("t0", None, 3, {(1, 2): 1, (1, 3): 1})
        assert built.relator == Product(
            (Commutator(X1, X2), Commutator(X1, X3))
        )

    def test_tail_coefficients(self):
        built = pro2_relator(1, 2, 4, {(3, 4): 1})
        assert built.relator == Product(
            (Power(X1, 6), Commutator(X1, X2), Commutator(X3, X4))
        )

    def test_rejections(self):
        with pytest.raises(DomainError):
            pro2_relator(1, 1, 2)  # f < 2
        with pytest.raises(DomainError):
            pro2_relator(1, 2, 4, {(2, 3): 1})  # tail must avoid the head
        with pytest.raises(DomainError):
            pro2_relator("t0", None, 2, {})
        with pytest.raises(DomainError):
            pro2_relator(5, 2, 2)


class TestSFamily:
    def test_one_block(self):
        built = s_family_relator(3, 9, 1)
        assert built.p == 3 and built.n == 4
        assert built.relator == Product(
            (Power(X1, 3), Commutator(X1, X2), Power(X3, 9), Commutator(X3, X4))
        )

    def test_q_zero_pro2(self):
        built = s_family_relator(0, 2, 1)
        assert built.p == 2
        assert built.relator == Product(
            (Commutator(X1, X2), Power(X3, 2), Commutator(X3, X4))
        )

    def test_q_invariant_of_truncation(self):
        assert q_invariant(s_family_relator(3, 9, 2)) == 3

    def test_rejections(self):
        with pytest.raises(DomainError):
            s_family_relator(9, 9, 1)  # q' must exceed q
        with pytest.raises(DomainError):
            s_family_relator(3, 6, 1)  # q' not a prime power
        with pytest.raises(DomainError):
            s_family_relator(2, 9, 1)  # q not a power of the same p


class TestTruncate:
    def test_canonical_tower(self):
        big = canonical_relator(3, 3, 6)
        small = truncate(big, {1, 2, 3, 4})
        assert small == canonical_relator(3, 3, 4)

    def test_commutator_block(self):
        got = truncate(canonical_relator(3, 3, 4), {3, 4})
        assert got == Presentation(3, 2, Commutator(X1, X2))

    def test_degenerate_marker(self):
        big = Presentation(3, 4, Commutator(X1, X2))
        assert truncate(big, {3, 4}) is None

    def test_cup_form_functoriality(self):
        base = s_family_relator(3, 9, 2)
        keep = [1, 2, 3, 4]
        small = truncate(base, keep)
        big_form = cup_form(base)
        small_form = cup_form(small)
        for a, i in enumerate(keep):
            for b, j in enumerate(keep):
                assert small_form.gram[a][b] == big_form.gram[i - 1][j - 1]

    def test_q_monotone_when_first_generator_kept(self):
        base = s_family_relator(3, 9, 2)
        q0 = q_invariant(base)
        small = truncate(base, {1, 2, 3, 4})
        assert q_invariant(small) == q0
        dropped_head = truncate(base, {3, 4, 5, 6})
        assert q_invariant(dropped_head) >= q0

    def test_bad_subsets(self):
        base = canonical_relator(3, 3, 4)
        with pytest.raises(DomainError):
            truncate(base, set())
        with pytest.raises(DomainError):
            truncate(base, {0, 1})
        with pytest.raises(DomainError):
            truncate(base, {4, 5})


class TestSubgroupRank:
    def test_examples(self):
        assert subgroup_rank(2, 9) == 2
        assert subgroup_rank(4, 9) == 20
        assert subgroup_rank(3, 3) == 5

    def test_rejections(self):
        with pytest.raises(DomainError):
            subgroup_rank(1, 3)
        with pytest.raises(DomainError):
            subgroup_rank(4, 0)


class TestH2Certificate:
    def test_canonical_rank_two(self):
        report = h2_of_index_p_subgroup(canonical_relator(3, 3, 2), [1, 0])
        assert (report.s, report.h2, report.d_u) == (2, 1, 2)

    def test_commutator_with_spare_generator(self):
        report = h2_of_index_p_subgroup(Presentation(3, 3, Commutator(X1, X2)), [0, 0, 1])
        assert report.s == 0
        assert report.h2 == 3

    def test_demushkin_all_functionals(self):
        from helpers import functionals

        base = canonical_relator(3, 3, 4)
        for chi in functionals(3, 4):
            report = h2_of_index_p_subgroup(base, chi)
            assert report.h2 == 1
            assert report.d_u == subgroup_rank(4, 3)

    def test_errors(self):
        base = canonical_relator(3, 3, 2)
        with pytest.raises(DomainError):
            h2_of_index_p_subgroup(base, [0, 0])
        with pytest.raises(DomainError):
            h2_of_index_p_subgroup(base, [1])
        with pytest.raises(DomainError):
            h2_of_index_p_subgroup(pres(3, 1, "x1"), [1])


class TestFunctionalEnumeration:
    def test_projective_count(self):
        from helpers import functionals

        assert len(functionals(3, 2)) == 4
        assert len(functionals(2, 4)) == 15
        assert len(functionals(3, 4)) == 40


class TestAnalyze:
    def test_minimal_report(self):
        report = analyze(canonical_relator(2, 4, 2))
        assert report.minimal and report.demushkin
        assert report.q == 4
        assert report.t == 1  # alternate cup form over F_2
        payload = report.to_json_dict()
        assert set(payload) == {
            "p",
            "n",
            "minimal",
            "q",
            "abelianization",
            "gram",
            "demushkin",
            "t",
        }

    def test_non_minimal_report(self):
        report = analyze(pres(3, 1, "x1"))
        assert not report.minimal and not report.demushkin
        assert report.q is None and report.gram is None
        assert report.to_json_dict()["abelianization"] is None

    def test_t_null_for_odd_p(self):
        assert analyze(canonical_relator(3, 3, 2)).t is None


class TestPresentationFiles:
    def test_round_trip(self):
        for built in [
            canonical_relator(3, 3, 4),
            pro2_relator(2, 3, 4),
            s_family_relator(0, 2, 1),
        ]:
            assert load_presentation(dump_presentation(built)) == built

    def test_layout(self):
        text = dump_presentation(canonical_relator(3, 3, 4))
        assert text == 'p = 3\ngenerators = 4\nrelator = "x1^3 [x1,x2] [x3,x4]"\n'

    def test_comments_and_blank_lines(self):
        text = '# a canonical presentation\n\np = 3\ngenerators = 2\nrelator = "[x1,x2]"\n'
        assert load_presentation(text) == canonical_relator(3, 0, 2)

    def test_unquoted_relator(self):
        text = "p = 3\ngenerators = 2\nrelator = [x1,x2]\n"
        assert load_presentation(text).relator == Commutator(X1, X2)

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            load_presentation("p = 3\ngenerators = 2\n")
        with pytest.raises(ParseError):
            load_presentation("p = x\ngenerators = 2\nrelator = \"x1^3\"\n")
        with pytest.raises(ParseError):
            load_presentation("p = 3\nrank = 2\nrelator = \"x1^3\"\n")
        with pytest.raises(ParseError):
            load_presentation("p = 3\np = 3\ngenerators = 2\nrelator = \"x1^3\"\n")
        with pytest.raises(GeneratorRangeError):
            load_presentation('p = 3\ngenerators = 2\nrelator = "x3"\n')

    def test_domain_errors(self):
        with pytest.raises(NotPrimeError):
            load_presentation('p = 6\ngenerators = 2\nrelator = "x1^2"\n')
