from pathlib import Path

import pytest

from fdchase import FD, Delta, Tuple, Universe

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def tup(text: str) -> Tuple:
    """``tup("Id=i1,K=k")``; the empty string is not allowed."""
    return Tuple(dict(part.split("=", 1) for part in text.split(",")))


def table(*texts: str) -> frozenset:
    return frozenset(tup(t) for t in texts)


def fds(*texts: str) -> tuple:
    return tuple(FD.parse(t) for t in texts)


OBJ = Universe(("Id", "K", "M", "C"))
OBJ_FDS = fds("Id -> K", "Id -> C")

D1 = table("Id=i1,K=k,M=m,C=c", "Id=i1,M=m'", "Id=i2,K=k',M=m',C=c", "Id=i2,K=k',M=m''", "Id=i3,M=m")
D2 = table("Id=i1,K=k,C=c", "Id=i2,K=k',C=c'", "Id=i2,K=k',M=m''", "Id=i3,K=k'")
D = table(
    "Id=i1,K=k,M=m,C=c", "Id=i1,M=m'", "Id=i1,K=k,C=c",
    "Id=i2,K=k',M=m',C=c", "Id=i2,K=k',M=m''", "Id=i2,K=k',C=c'",
    "Id=i3,M=m", "Id=i3,K=k'",
)
DSTAR = table(
    "Id=i1,K=k,M=m,C=c", "Id=i1,K=k,M=m',C=c",
    "Id=i2,K=k',M=m',C=c", "Id=i2,K=k',M=m'',C=c",
    "Id=i2,K=k',M=m',C=c'", "Id=i2,K=k',M=m'',C=c'",
    "Id=i3,K=k',M=m",
)
D1STAR = table(
    "Id=i1,K=k,M=m,C=c", "Id=i1,K=k,M=m',C=c",
    "Id=i2,K=k',M=m',C=c", "Id=i2,K=k',M=m'',C=c", "Id=i3,M=m",
)
D2STAR = table("Id=i1,K=k,C=c", "Id=i2,K=k',M=m'',C=c'", "Id=i3,K=k'")
R1 = table(
    "Id=i1,K=k,M=m,C=c", "Id=i1,K=k,M=m',C=c",
    "Id=i2,K=k',M=m',C=c", "Id=i2,K=k',M=m'',C=c", "Id=i3,K=k',M=m",
)
R2 = table(
    "Id=i1,K=k,M=m,C=c", "Id=i1,K=k,M=m',C=c",
    "Id=i2,K=k',M=m',C=c'", "Id=i2,K=k',M=m'',C=c'", "Id=i3,K=k',M=m",
)

ABC = Universe(("A", "B", "C"))


@pytest.fixture
def objects():
    return Delta(OBJ, D, OBJ_FDS)


@pytest.fixture
def group1():
    return Delta(OBJ, D1, OBJ_FDS)


@pytest.fixture
def group2():
    return Delta(OBJ, D2, OBJ_FDS)


@pytest.fixture
def shared_b():
    """{ab, bc, abc'} under B -> C."""
    return Delta(ABC, table("A=a,B=b", "B=b,C=c", "A=a,B=b,C=c'"), fds("B -> C"))


@pytest.fixture
def chain():
    """{abc, ac'} under A -> B, B -> C."""
    return Delta(ABC, table("A=a,B=b,C=c", "A=a,C=c'"), fds("A -> B", "B -> C"))


@pytest.fixture
def chain_consistent():
    """{ac, ac'} under A -> B, B -> C."""
    return Delta(ABC, table("A=a,C=c", "A=a,C=c'"), fds("A -> B", "B -> C"))


@pytest.fixture
def split_chain():
    """{ac, b} under A -> B, B -> C."""
    return Delta(ABC, table("A=a,C=c", "B=b"), fds("A -> B", "B -> C"))


@pytest.fixture
def data_dir():
    return DATA


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
