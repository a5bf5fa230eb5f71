import pytest

from dcsynth.base.errors import DefinitionError, ElaborationError, FspSyntaxError
from dcsynth.bench.transfer_line import generate_transfer_line
from dcsynth.fsp import elaborate, elaborate_process, load_problem, parse, print_spec
from dcsynth.lts.label import Label, label_set

TL = generate_transfer_line(2, 1, 1)


def transitions(lts):
    return {(lts.states[s], str(l), lts.states[t]) for s, l, t in lts.edges()}


class TestParse:
    def test_transfer_line_definitions(self):
        ast = parse(TL)
        assert [p.name for p in ast.processes] == ["Machine", "TU", "Buffer"]
        assert [c.name for c in ast.composites] == ["Plant"]
        assert [c.name for c in ast.constants] == ["M", "W", "C"]
        assert ast.target == "Plant"

    def test_smallest_process(self):
        ast = parse("P = (a -> P).")
        assert len(ast.processes) == 1
        process = ast.processes[0]
        assert process.locals == ()
        (branch,) = process.body.branches
        assert [a.name for a in branch.actions] == ["a"]
        assert branch.target.name == "P"

    def test_comments_are_ignored(self):
        ast = parse("// one\nP = (a -> P). /* two */")
        assert ast.processes[0].name == "P"

    @pytest.mark.parametrize("text", ["P = (a -> P).", TL])
    def test_print_round_trip(self, text):
        ast = parse(text)
        assert parse(print_spec(ast)) == ast

    def test_round_trip_keeps_guards_and_sequences(self):
        text = "const N = 2\nQ = S[0],\n  S[i:0..N] = (when (i < N) up -> down -> S[i+1] | when i == N stop -> STOP)."
        ast = parse(text)
        assert parse(print_spec(ast)) == ast


class TestParseErrors:
    def test_empty_input(self):
        with pytest.raises(DefinitionError, match="no definitions"):
            parse("")

    def test_syntax_error_has_position_and_expectations(self):
        with pytest.raises(FspSyntaxError) as info:
            parse("P = (a -> ).")
        assert info.value.line == 1
        assert info.value.column > 0
        assert info.value.expected
        assert str(info.value).startswith("E-PARSE")

    def test_duplicate_definition(self):
        with pytest.raises(DefinitionError, match="duplicate"):
            parse("P = (a -> P).\nP = (b -> P).")

    def test_unknown_local_process(self):
        with pytest.raises(DefinitionError, match="unknown process Q"):
            parse("P = (a -> Q).")

    def test_unknown_composite_member(self):
        with pytest.raises(DefinitionError, match="unknown process R"):
            parse("P = (a -> P).\n||S = P || R.")

    def test_mutually_recursive_composites(self):
        with pytest.raises(DefinitionError, match="X -> Y -> X"):
            parse("A = (a -> A).\n||X = (Y || A).\n||Y = (X || A).\ntarget X")

    def test_self_recursive_composite(self):
        with pytest.raises(DefinitionError, match="refer to each other"):
            parse("A = (a -> A).\n||X = (X || A).")

    def test_nested_composites_are_allowed(self):
        ast = parse("A = (a -> A).\nB = (b -> B).\n||X = (A || B).\n||Y = (X || A).\ntarget Y")
        assert [c.name for c in ast.composites] == ["X", "Y"]

    def test_unknown_target(self):
        with pytest.raises(DefinitionError, match="unknown target"):
            parse("P = (a -> P).\ntarget Nope")


class TestElaborate:
    def test_machine(self):
        lts = elaborate_process(parse(TL), "Machine", (0,))
        assert lts.name == "Machine(0)"
        assert set(lts.states) == {"Working[0]", "Working[1]"}
        assert lts.alphabet == label_set(["get.0", "put.1"])
        assert transitions(lts) == {
            ("Working[0]", "get.0", "Working[1]"),
            ("Working[1]", "put.1", "Working[0]"),
        }

    def test_buffer(self):
        lts = elaborate_process(parse(TL), "Buffer", (1,))
        assert set(lts.states) == {"At[0]", "At[1]", "ERROR"}
        assert lts.num_transitions == 6
        assert lts.error_state == lts.states.index("ERROR")
        assert ("At[0]", "get.1", "ERROR") in transitions(lts)
        assert ("At[1]", "ret.1", "ERROR") in transitions(lts)

    def test_test_unit_alphabet_extension(self):
        lts = elaborate_process(parse(TL), "TU")
        assert len(lts) == 3
        assert label_set(["ret.0", "ret.1", "ret.2"]) <= lts.alphabet
        # ret.0 and ret.2 are declared but never taken.
        taken = {l for _, l, _ in lts.edges()}
        assert Label("ret", (0,)) not in taken and Label("ret", (2,)) not in taken

    def test_self_loop(self):
        components, _ = elaborate(parse("P = (a -> P)."))
        (lts,) = components
        assert len(lts) == 1
        assert transitions(lts) == {("P", "a", "P")}

    @pytest.mark.parametrize("machines", [1, 2, 3])
    def test_transfer_line_instances(self, machines):
        components, problem = elaborate(parse(generate_transfer_line(machines, 1, 1)))
        names = [c.name for c in components]
        assert sum(n.startswith("Machine") for n in names) == machines
        assert sum(n.startswith("Buffer") for n in names) == machines
        assert names.count("TU") == 1
        assert problem.controllable == frozenset(Label("get", (i,)) for i in range(machines + 1))
        assert problem.reach == label_set(["accept", "reject"])
        assert problem.avoid == frozenset()

    def test_bindings_override_constants(self):
        _, problem = elaborate(parse(TL), {"W": 2})
        machine = problem.components[0]
        assert len(machine) == 3

    def test_elaborated_components_are_deterministic_and_closed(self, tl211):
        for lts in tl211.components:
            for state, row in enumerate(lts.transitions):
                labels = [l for l, _ in row]
                assert len(labels) == len(set(labels))
                assert all(0 <= t < len(lts) for _, t in row)

    def test_load_problem(self):
        problem = load_problem("P = (a -> b -> P).\nreach {b}")
        assert problem.reach == label_set(["b"])
        assert len(problem.components[0]) == 2


class TestElaborationErrors:
    def test_unbound_constant(self):
        with pytest.raises(ElaborationError, match="unbound constant N"):
            elaborate(parse("P = (a[N] -> P)."))

    def test_free_constant_is_checked_at_elaboration(self):
        ast = parse("P = (a[N] -> P).\nreach {a[N]}")
        assert ast.constants == ()
        with pytest.raises(ElaborationError, match="unbound constant N"):
            load_problem("P = (a[N] -> P).\nreach {a[N]}")
        problem = load_problem("P = (a[N] -> P).\nreach {a[N]}", {"N": 3})
        assert problem.reach == frozenset({Label("a", (3,))})

    def test_index_out_of_range(self):
        with pytest.raises(ElaborationError, match="outside"):
            elaborate(parse("P = S[0],\n  S[i:0..1] = (a -> S[i+1])."))

    def test_nondeterministic_choice(self):
        with pytest.raises(ElaborationError, match="nondeterministic"):
            elaborate(parse("P = (a -> P | a -> STOP)."))

    def test_empty_forall_range(self):
        with pytest.raises(ElaborationError, match="empty forall"):
            elaborate(parse("P(I=0) = (a[I] -> P).\n||S = forall [i:1..0] P(i)."))
