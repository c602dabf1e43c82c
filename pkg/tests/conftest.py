import pytest

from k4perc.graph import complete_graph, cycle_graph, graph_from_edge_list


@pytest.fixture
def triangle():
    return graph_from_edge_list(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def k4_minus_edge():
    # missing edge (0, 1)
    return graph_from_edge_list(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def bowtie():
    return graph_from_edge_list(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def k4():
    return complete_graph(4)


# acceptance criteria report one line each at the end of the run
_CRITERIA = {}


@pytest.fixture(scope="session")
def criterion_log():
    """``record(num, part, ok, detail)``; parts of one criterion are combined."""

    def record(num, part, ok, detail=""):
        _CRITERIA.setdefault(num, {})[part] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        parts = _CRITERIA[num]
        ok = all(p[0] for p in parts.values())
        detail = "; ".join(f"{name}: {'ok' if p[0] else 'FAIL'} {p[1]}".rstrip()
                           for name, p in parts.items())
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} | {detail}")
