import os

import pytest

from fano212.action import InvalidAction
from fano212.instancefile import (
    Instance,
    ParseError,
    load_instance,
    parse_instance,
    serialize_instance,
)
from fano212.model import InvalidModel

DATA = os.path.join(os.path.dirname(__file__), "data")


def data_text(name):
    with open(os.path.join(DATA, name)) as handle:
        return handle.read()


class TestRoundtrip:
    @pytest.mark.parametrize("name", ["symmetric_n2.txt", "swap_n8.txt"])
    def test_parse_serialize_is_byte_idempotent(self, name):
        text = data_text(name)
        inst = parse_instance(text)
        canonical = serialize_instance(inst)
        assert canonical == text
        assert serialize_instance(parse_instance(canonical)) == canonical

    def test_comments_and_blank_lines_ignored(self):
        text = data_text("symmetric_n2.txt")
        noisy = "# leading comment\n\n" + text.replace(
            "order = 2", "order = 2   # the declared order"
        )
        inst = parse_instance(noisy)
        assert inst.spec.order == 2


class TestErrors:
    def test_matrix_shape_names_matrix(self):
        with pytest.raises(ParseError) as exc:
            parse_instance(data_text("bad_shape.txt"))
        assert exc.value.code == "matrix-shape"
        assert "matrix.1" in str(exc.value)

    def test_parity_violation_cites_true_order(self):
        with pytest.raises(InvalidAction) as exc:
            parse_instance(data_text("bad_parity.txt"))
        assert exc.value.code == "parity"
        assert "4" in str(exc.value)  # computed projective order

    def test_syntax_error_carries_line(self):
        text = data_text("symmetric_n2.txt").replace("-4, -5, 0, -6", "-4, oops, 0, -6")
        with pytest.raises(ParseError) as exc:
            parse_instance(text)
        assert exc.value.code == "bad-literal"
        assert exc.value.line == 8  # first row of [matrix.1]

    def test_unknown_key(self):
        with pytest.raises(ParseError):
            parse_instance("conductor = 2\nfrobnicate = 1\n")

    def test_missing_matrix_section(self):
        text = "\n".join(
            line
            for line in data_text("symmetric_n2.txt").splitlines()
            if not line.startswith("[matrix.3]")
        )
        # removing only the header makes rows fall into matrix.2
        with pytest.raises(ParseError) as exc:
            parse_instance(text)
        assert exc.value.code == "matrix-shape"

    def test_bad_conductor(self):
        with pytest.raises(ParseError) as exc:
            parse_instance("conductor = 0\norder = 2\nswap = true\nweights = 0,0,0,0\n")
        assert exc.value.code == "bad-conductor"

    def test_dependent_forms_detected(self):
        text = data_text("symmetric_n2.txt")
        # overwrite matrix.2 with matrix.1's rows
        head, m1, m2, m3 = text.split("[matrix.")
        broken = head + "[matrix." + m1 + "[matrix.2]\n" + "\n".join(
            m1.splitlines()[1:5]
        ) + "\n\n[matrix." + m3
        with pytest.raises(InvalidModel) as exc:
            parse_instance(broken)
        assert exc.value.code == "dependent-forms"
