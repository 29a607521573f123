import string

import pytest
from hypothesis import given, settings, strategies as st

from wrt import (
    AmbiguousContext,
    BadAccent,
    CommandRegistry,
    NotationContext,
    ParseError,
    QuantitySpec,
    ReservedName,
    concise_form,
    expand_form,
    parse_command,
    parse_variable_name,
    render_command,
    to_variable_name,
)

# The four rows of the typesetting-to-source-code translation table.
TRANSLATION_TABLE = [
    (r"\Pos{s}{b}{c}", "p_s_b_c"),
    (r"\Pos[dot]{s}{b}", "pdot_s_b"),
    (r"\Rot{s}{b}\Inv", "R_s_b_Inv"),
    (r"\v[dot]{s}{b}{c}\Tran", "vdot_s_b_c_Tran"),
]


class TestParseCommand:
    def test_exhaustive_position(self):
        q = parse_command(r"\Pos{s}{b}{c}")
        assert q == QuantitySpec("p", subject="s", basis="b", coordsys="c")

    def test_rotation_with_suffix(self):
        q = parse_command(r"\Rot{s}{b}\Inv")
        assert q == QuantitySpec("R", subject="s", basis="b", suffix="Inv")

    def test_bare_command(self):
        assert parse_command(r"\Pos") == QuantitySpec("p")

    def test_accent_with_and_without_backslash(self):
        assert parse_command(r"\Pos[dot]{s}") == parse_command(r"\Pos[\dot]{s}")

    def test_unregistered_command_keeps_name(self):
        q = parse_command(r"\Vel{s}{b}")
        assert q.symbol == "Vel"

    def test_registered_command(self):
        reg = CommandRegistry()
        reg.register("Vel", "v")
        assert parse_command(r"\Vel{s}", reg).symbol == "v"

    def test_malformed_braces(self):
        with pytest.raises(ParseError):
            parse_command(r"\Pos{s}{b")

    def test_not_a_command(self):
        with pytest.raises(ParseError):
            parse_command("p_s_b")

    def test_too_many_groups(self):
        with pytest.raises(ParseError):
            parse_command(r"\Pos{s}{b}{c}{d}")

    def test_reserved_frame_name(self):
        with pytest.raises(ReservedName):
            parse_command(r"\Pos{Tran}{b}")

    def test_bad_accent(self):
        with pytest.raises(BadAccent):
            parse_command(r"\Pos[\bar]{s}")

    def test_empty_group(self):
        with pytest.raises(ParseError):
            parse_command(r"\Pos{}{b}")

    def test_reserved_command_name(self):
        with pytest.raises(ReservedName):
            parse_command(r"\Tran")


class TestVariableNames:
    def test_table_rows_to_var(self):
        for latex, var in TRANSLATION_TABLE:
            assert to_variable_name(parse_command(latex)) == var

    def test_table_rows_to_latex(self):
        for latex, var in TRANSLATION_TABLE:
            assert render_command(parse_variable_name(var)) == latex

    def test_spoken_order(self):
        q = QuantitySpec("v", accent="dot", subject="s", basis="b",
                         coordsys="c", suffix="Tran")
        assert to_variable_name(q) == "vdot_s_b_c_Tran"

    def test_parse_accent(self):
        assert parse_variable_name("pdot_s_b") == QuantitySpec(
            "p", accent="dot", subject="s", basis="b")

    def test_parse_ddot_before_dot(self):
        assert parse_variable_name("pddot_s").accent == "ddot"

    def test_parse_suffix(self):
        assert parse_variable_name("R_s_b_Inv") == QuantitySpec(
            "R", subject="s", basis="b", suffix="Inv")

    def test_reserved_in_frame_position(self):
        with pytest.raises(ReservedName):
            parse_variable_name("p_s_Tran_c")

    def test_empty_tokens(self):
        with pytest.raises(ParseError):
            parse_variable_name("p__s")

    def test_leading_underscore(self):
        with pytest.raises(ParseError):
            parse_variable_name("_p_s")

    def test_too_many_frames(self):
        with pytest.raises(ParseError):
            parse_variable_name("p_a_b_c_d")

    def test_accent_only_head_is_a_symbol(self):
        # "dot" alone cannot be stripped to an empty symbol
        assert parse_variable_name("dot_s").symbol == "dot"


class TestRenderCommand:
    def test_concise_mode_drops_matching_coordsys(self):
        reg = CommandRegistry()
        reg.register("Vel", "v")
        q = QuantitySpec("v", subject="s", basis="b", coordsys="b")
        assert render_command(q, concise_mode=True, registry=reg) == r"\Vel{s}{b}"
        assert render_command(q, concise_mode=False, registry=reg) == r"\Vel{s}{b}{b}"

    def test_concise_mode_keeps_differing_coordsys(self):
        q = QuantitySpec("p", subject="s", basis="b", coordsys="c")
        assert render_command(q, concise_mode=True) == r"\Pos{s}{b}{c}"

    def test_suffix(self):
        reg = CommandRegistry()
        reg.register("Acc", "a")
        q = QuantitySpec("a", subject="s", basis="b", suffix="Tran")
        assert render_command(q, registry=reg) == r"\Acc{s}{b}\Tran"

    def test_unregistered_symbol_emitted_verbatim(self):
        assert render_command(QuantitySpec("v", subject="s")) == r"\v{s}"


class TestConciseExpand:
    def test_drop_coordsys_equal_basis(self):
        q = QuantitySpec("p", subject="s", basis="b", coordsys="b")
        got = concise_form(q, NotationContext())
        assert got == QuantitySpec("p", subject="s", basis="b")

    def test_drop_basis_with_singleton_context(self):
        q = QuantitySpec("R", subject="s", basis="b")
        ctx = NotationContext(subjects={"s", "t"}, bases={"b"})
        assert concise_form(q, ctx) == QuantitySpec("R", subject="s")

    def test_no_drop_with_two_bases(self):
        q = QuantitySpec("R", subject="s", basis="b")
        ctx = NotationContext(bases={"b", "w"})
        assert concise_form(q, ctx) == q

    def test_drop_everything(self):
        q = QuantitySpec("R", subject="s", basis="b")
        ctx = NotationContext(subjects={"s"}, bases={"b"})
        assert concise_form(q, ctx) == QuantitySpec("R")

    def test_coordsys_differs_blocks_basis_drop(self):
        q = QuantitySpec("p", subject="s", basis="b", coordsys="c")
        ctx = NotationContext(subjects={"s"}, bases={"b"})
        assert concise_form(q, ctx) == q

    def test_expand_coordsys_to_basis(self):
        q = QuantitySpec("p", subject="s", basis="b")
        got = expand_form(q, NotationContext())
        assert got == QuantitySpec("p", subject="s", basis="b", coordsys="b")

    def test_expand_rotation_has_no_coordsys(self):
        q = QuantitySpec("R")
        ctx = NotationContext(subjects={"s"}, bases={"b"})
        assert expand_form(q, ctx) == QuantitySpec("R", subject="s", basis="b")

    def test_expand_ambiguous_basis(self):
        q = QuantitySpec("p", subject="s")
        with pytest.raises(AmbiguousContext):
            expand_form(q, NotationContext(bases={"a", "b"}))

    def test_expand_ambiguous_subject(self):
        with pytest.raises(AmbiguousContext):
            expand_form(QuantitySpec("R"), NotationContext(subjects=set(), bases={"b"}))


class TestRegistryConfig:
    def test_load_pairs(self):
        reg = CommandRegistry()
        reg.load_config("Vel v\nAcc a\n\n# comment\n")
        assert reg.symbol_for("Vel") == "v"
        assert reg.command_for("a") == "Acc"

    def test_bad_line(self):
        reg = CommandRegistry()
        with pytest.raises(ParseError):
            reg.load_config("Vel v extra")


# --- property tests -------------------------------------------------------

_frame_names = st.text(alphabet=string.ascii_letters + string.digits,
                       min_size=1, max_size=4).filter(
    lambda s: s not in {"Tran", "Inv", "Conj", "Herm"})


@st.composite
def quantity_specs(draw):
    symbol = draw(st.sampled_from(["p", "R", "v", "a", "X"]))
    accent = draw(st.sampled_from([None, "dot", "ddot", "hat"]))
    n_frames = draw(st.integers(0, 3))
    frames = [draw(_frame_names) for _ in range(n_frames)]
    suffix = draw(st.sampled_from([None, "Tran", "Inv", "Conj", "Herm"]))
    fields = dict(zip(("subject", "basis", "coordsys"), frames))
    return QuantitySpec(symbol, accent=accent, suffix=suffix, **fields)


@given(quantity_specs())
@settings(max_examples=300)
def test_variable_name_round_trip(q):
    assert parse_variable_name(to_variable_name(q)) == q


@given(quantity_specs())
@settings(max_examples=300)
def test_command_round_trip(q):
    reg = CommandRegistry()
    reg.register("Vel", "v")
    reg.register("Acc", "a")
    assert parse_command(render_command(q, concise_mode=False, registry=reg), reg) == q


@st.composite
def spec_with_context(draw):
    q = draw(quantity_specs())
    extra_s = draw(st.sets(_frame_names, max_size=2))
    extra_b = draw(st.sets(_frame_names, max_size=2))
    subjects = set(extra_s) | ({q.subject} if q.subject else set())
    bases = set(extra_b) | ({q.basis} if q.basis else set())
    return q, NotationContext(subjects=subjects, bases=bases)


@given(spec_with_context())
@settings(max_examples=300)
def test_concise_idempotent(qc):
    q, ctx = qc
    once = concise_form(q, ctx)
    assert concise_form(once, ctx) == once


@st.composite
def exhaustive_spec_with_context(draw):
    symbol = draw(st.sampled_from(["p", "R", "v", "a", "X"]))
    accent = draw(st.sampled_from([None, "dot", "ddot", "hat"]))
    subject = draw(_frame_names)
    basis = draw(_frame_names)
    if symbol == "R":
        coordsys = None
    else:
        coordsys = draw(st.one_of(st.just(basis), _frame_names))
    suffix = draw(st.sampled_from([None, "Tran", "Inv", "Conj", "Herm"]))
    q = QuantitySpec(symbol, accent=accent, subject=subject, basis=basis,
                     coordsys=coordsys, suffix=suffix)
    extra_s = draw(st.sets(_frame_names, max_size=2))
    extra_b = draw(st.sets(_frame_names, max_size=2))
    ctx = NotationContext(subjects={subject} | extra_s, bases={basis} | extra_b)
    return q, ctx


@given(exhaustive_spec_with_context())
@settings(max_examples=300)
def test_expand_undoes_concise(qc):
    q, ctx = qc
    assert expand_form(concise_form(q, ctx), ctx) == q


@given(quantity_specs())
@settings(max_examples=100)
def test_reserved_words_rejected_everywhere(q):
    for reserved in ("Tran", "Inv", "Conj", "Herm"):
        with pytest.raises(ReservedName):
            QuantitySpec("p", subject=reserved)
        with pytest.raises(ReservedName):
            parse_variable_name(f"p_{reserved}_b")
        with pytest.raises(ReservedName):
            parse_command(rf"\Pos{{{reserved}}}")
