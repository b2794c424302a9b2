import pytest

from gradualdrift.eventlog import parse_csv, traces_from_behaviors
from gradualdrift.model import BehaviorModel

# Loan-style example: 15 events, 3 cases, listed out of order on purpose
LOAN_ROWS = [
    ("#aaa", "2021-10-01T08:01", "Lock feature", "Phoebe"),
    ("#aaa", "2021-10-01T08:53", "Check restrictions", "Phoebe"),
    ("#aab", "2021-10-01T11:40", "Lock feature", "Rachel"),
    ("#aac", "2021-10-01T09:12", "Lock feature", "Ross"),
    ("#aac", "2021-10-01T09:33", "Interview customer", "Ross"),
    ("#aac", "2021-10-01T11:48", "Build part", "Ross"),
    ("#aab", "2021-10-01T11:49", "Check restrictions", "Rachel"),
    ("#aaa", "2021-10-01T08:57", "Build part", "Phoebe"),
    ("#aab", "2021-10-01T16:18", "Build part", "Rachel"),
    ("#aac", "2021-10-01T12:16", "Quality test", "Monica"),
    ("#aaa", "2021-10-01T13:45", "Integration test", "Chandler"),
    ("#aab", "2021-10-01T17:23", "Integration test", "Joey"),
    ("#aaa", "2021-10-01T13:37", "Quality test", "Monica"),
    ("#aac", "2021-10-01T16:22", "Integration test", "Joey"),
    ("#aab", "2021-10-01T17:35", "Quality test", "Monica"),
]


def rows_to_csv(rows):
    lines = ["case,timestamp,activity,resource"]
    lines += [",".join(r) for r in rows]
    return "\n".join(lines) + "\n"


LOCK, CHECK, INTERVIEW, BUILD = "Lock feature", "Check restrictions", "Interview customer", "Build part"
INTEG, QUALITY = "Integration test", "Quality test"

# the four paths of the hand-drawn net, with its six structural arcs
LOAN_MODEL = BehaviorModel(
    frozenset({
        (LOCK, CHECK, BUILD, QUALITY, INTEG),
        (LOCK, CHECK, BUILD, INTEG, QUALITY),
        (LOCK, INTERVIEW, BUILD, QUALITY, INTEG),
        (LOCK, INTERVIEW, BUILD, INTEG, QUALITY),
    }),
    frozenset({
        (LOCK, CHECK), (LOCK, INTERVIEW), (CHECK, BUILD),
        (INTERVIEW, BUILD), (BUILD, INTEG), (BUILD, QUALITY),
    }),
)

ABCD, ABDC = tuple("ABCD"), tuple("ABDC")
WALKTHROUGH_BEHAVIORS = [ABCD] * 8 + [ABDC, ABCD] * 4 + [ABDC] * 11


@pytest.fixture
def loan_csv():
    return rows_to_csv(LOAN_ROWS)


@pytest.fixture
def loan_log(loan_csv):
    return parse_csv(loan_csv)


@pytest.fixture
def loan_model():
    return LOAN_MODEL


@pytest.fixture
def walkthrough_log():
    return traces_from_behaviors(WALKTHROUGH_BEHAVIORS)


def random_variant_sets(rng, alphabet="ABCDEFG"):
    """Disjoint common / previous-only / new-only variant sets; the last two non-empty."""
    pool = set()
    while len(pool) < rng.randint(3, 9):
        pool.add(tuple(rng.choice(alphabet) for _ in range(rng.randint(2, 6))))
    pool = sorted(pool)
    rng.shuffle(pool)
    k_prev = rng.randint(1, len(pool) - 2)
    k_new = rng.randint(1, len(pool) - k_prev - 1)
    prev = pool[:k_prev]
    new = pool[k_prev:k_prev + k_new]
    common = pool[k_prev + k_new:]
    return common, prev, new


def segment(rng, variants, length):
    """Every variant at least once, then random fill, shuffled."""
    out = list(variants) + [rng.choice(variants) for _ in range(length - len(variants))]
    rng.shuffle(out)
    return out


_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if report.when == "call" and name.startswith("test_criterion_"):
        _criteria[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        number = name.split("_")[2]
        terminalreporter.write_line(f"criterion {number}: {_criteria[name]}  ({name})")
