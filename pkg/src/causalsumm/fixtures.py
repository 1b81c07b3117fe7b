"""The worked examples shipped with the package, as constructors.

The same graphs live as JSON files under fixtures/ at the repository
root; ``write_all`` regenerates those files and the test suite asserts
they match these definitions. The five-node family (g1..g3, h1..h4) is
the running example used throughout docs and tests; the redshift DAG is
a 12-variable query-performance model, with two perturbed variants used
by the robustness demos.
"""

from .graph_core import Dag
from .summary import contract, trivial_summary

_FIVE = "ABCDE"


def g1():
    return Dag(_FIVE, [("A", "B"), ("A", "C"), ("B", "D"), ("C", "D"), ("D", "E")])


def g2():
    return Dag(_FIVE, [("A", "B"), ("C", "B"), ("C", "D"), ("D", "E")])


def g3():
    return Dag(_FIVE, [("A", "D"), ("B", "D"), ("C", "D"), ("D", "E")])


def h1():
    # g1 with B and C contracted
    return contract(trivial_summary(g1()), "B", "C")


def h2():
    # g1 with B and D contracted
    return contract(trivial_summary(g1()), "B", "D")


def h3():
    # g1 with A, B and C contracted
    return contract(h1(), "A", "BC")


def h4():
    # g1 with B,C and D,E contracted
    return contract(h1(), "D", "E")


def h3_canonical():
    """The canonical causal DAG of h3, as a plain graph fixture."""
    return Dag(
        _FIVE,
        [
            ("A", "B"),
            ("A", "C"),
            ("A", "D"),
            ("B", "C"),
            ("B", "D"),
            ("C", "D"),
            ("D", "E"),
        ],
    )


_REDSHIFT_NODES = (
    "QueryTemplate",
    "ReturnedRows",
    "ReturnedBytes",
    "NumJoins",
    "NumTables",
    "NumColumns",
    "ResultCacheHit",
    "CompileTime",
    "PlanTime",
    "LockWaitTime",
    "ExecTime",
    "ElapsedTime",
)

_REDSHIFT_EDGES = (
    ("QueryTemplate", "ReturnedRows"),
    ("QueryTemplate", "ReturnedBytes"),
    ("ReturnedRows", "ReturnedBytes"),
    ("QueryTemplate", "NumTables"),
    ("QueryTemplate", "NumColumns"),
    ("QueryTemplate", "NumJoins"),
    ("NumTables", "PlanTime"),
    ("NumJoins", "PlanTime"),
    ("NumTables", "LockWaitTime"),
    ("NumJoins", "LockWaitTime"),
    ("NumTables", "ExecTime"),
    ("NumJoins", "ExecTime"),
    ("NumColumns", "ExecTime"),
    ("NumColumns", "ReturnedBytes"),
    ("QueryTemplate", "ResultCacheHit"),
    ("ResultCacheHit", "CompileTime"),
    ("ResultCacheHit", "PlanTime"),
    ("ResultCacheHit", "ExecTime"),
    ("ResultCacheHit", "LockWaitTime"),
    ("CompileTime", "ElapsedTime"),
    ("PlanTime", "ElapsedTime"),
    ("ExecTime", "ElapsedTime"),
    ("LockWaitTime", "ElapsedTime"),
)


def redshift():
    """12-variable query-performance DAG (23 edges)."""
    return Dag(_REDSHIFT_NODES, _REDSHIFT_EDGES)


def redshift_missing_edge():
    """redshift with the ResultCacheHit -> LockWaitTime edge removed."""
    dropped = ("ResultCacheHit", "LockWaitTime")
    return Dag(_REDSHIFT_NODES, [e for e in _REDSHIFT_EDGES if e != dropped])


def redshift_extra_edges():
    """redshift with five spurious edges added (28 edges)."""
    extra = (
        ("LockWaitTime", "ReturnedRows"),
        ("NumColumns", "LockWaitTime"),
        ("NumColumns", "PlanTime"),
        ("ReturnedBytes", "ExecTime"),
        ("ReturnedBytes", "ElapsedTime"),
    )
    return Dag(_REDSHIFT_NODES, _REDSHIFT_EDGES + extra)


#: fixture name -> constructor; summaries and graphs serialize differently
GRAPHS = {
    "g1": g1,
    "g2": g2,
    "g3": g3,
    "h3_canonical": h3_canonical,
    "redshift": redshift,
    "redshift_missing_edge": redshift_missing_edge,
    "redshift_extra_edges": redshift_extra_edges,
}

SUMMARIES = {
    "h1": h1,
    "h2": h2,
    "h3": h3,
    "h4": h4,
}


def write_all(directory):
    """(Re)generate the fixture JSON files under ``directory``."""
    from pathlib import Path

    from .cli_io import save_dag, save_summary

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, build in GRAPHS.items():
        save_dag(build(), directory / f"{name}.json")
    for name, build in SUMMARIES.items():
        save_summary(build(), directory / f"{name}.json")
