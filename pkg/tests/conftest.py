import pytest

from cartan_pentads import Pentad


def sl3_a():
    return Pentad.build([["2/3", "1/3"], ["1/3", "2/3"]], [[2, -1], [-1, 2]], [1, 1])


def sl3_b():
    return Pentad.build([["14/75", "-3/75"], ["-3/75", "6/75"]], [[3, 0], [4, -5]], [1, 1])


def sl2():
    return Pentad.build([["1/8"]], [[2]], [4])


def loop():
    return Pentad.build([["1/8"]], [[2, -2]], [4, 4])


def affine():
    return Pentad.build([["1/8", 0, 0], [0, 0, 1], [0, 1, 0]], [[2, -2], [0, 0], [0, 1]], [4, 4])


def nonregular_zero():
    return Pentad.build([[0, 1], [1, 0]], [[0], [0]], [1])


def nonregular_heisenberg():
    return Pentad.build([[0, 1], [1, 0]], [[2], [0]], [1])


PENTADS = {
    "sl3_a": sl3_a, "sl3_b": sl3_b, "sl2": sl2, "loop": loop, "affine": affine,
    "nonregular_zero": nonregular_zero, "nonregular_heisenberg": nonregular_heisenberg,
}


@pytest.fixture(params=sorted(PENTADS))
def named_pentad(request):
    return request.param, PENTADS[request.param]()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
