import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"
VALID = sorted((FIXTURES / "valid").glob("*.ood"))
MESSY = sorted((FIXTURES / "messy").glob("*.ood"))
ERRORS = sorted((FIXTURES / "errors").iterdir())


@pytest.fixture
def canonical_text():
    return (FIXTURES / "valid" / "canonical.ood").read_text()


@pytest.fixture
def canonical(canonical_text):
    from oodset import parse, resolve
    return resolve(parse(canonical_text))


def random_model_text(rng: random.Random, packages: int, max_classes: int,
                      relations: int, name: str = "Rand") -> str:
    """A resolvable random design as .ood text (single module M)."""
    lines = [f"model {name} {{", "  module M {"]
    qnames = []
    for p in range(packages):
        lines.append(f"    package P{p} {{")
        for c in range(rng.randint(0, max_classes)):
            data = [f"d{i}" for i in range(rng.randint(0, 4))]
            body = []
            if data:
                body.append(f"data {', '.join(data)};")
            for f in range(rng.randint(0, 4)):
                used = rng.sample(data, rng.randint(0, len(data)))
                body.append(f"func f{f}({', '.join(used)});")
            if body:
                lines.append(f"      class C{p}_{c} {{ {' '.join(body)} }}")
            else:
                lines.append(f"      class C{p}_{c};")
            qnames.append(f"M.P{p}.C{p}_{c}")
        lines.append("    }")
    if qnames:
        for _ in range(relations):
            a, b = rng.choice(qnames), rng.choice(qnames)
            kind = rng.choice(["inherits", "associates", "aggregates", "uses"])
            lines.append(f"    relation {a} {kind} {b};")
    lines += ["  }", "}"]
    return "\n".join(lines) + "\n"


def generate_scale_text(classes=100, packages=20, relations=300, seed=7) -> str:
    """Acyclic-by-construction design: inheritance and aggregation only point 'forward'."""
    rng = random.Random(seed)
    per = classes // packages
    lines = ["model Scale {", "  module M {"]
    names = []
    for p in range(packages):
        lines.append(f"    package P{p} {{")
        for c in range(per):
            lines.append(f"      class C{p}_{c} {{ data a, b; func f(a); func g(a, b); }}")
            names.append(f"M.P{p}.C{p}_{c}")
        lines.append("    }")
    kinds = ["inherits", "associates", "aggregates", "uses"]
    seen = set()
    while len(seen) < relations:
        i, j = sorted(rng.sample(range(len(names)), 2))
        kind = rng.choice(kinds)
        if (i, j, kind) in seen:
            continue
        seen.add((i, j, kind))
        # sub inherits super with super earlier: no cycles
        if kind == "inherits":
            lines.append(f"    relation {names[j]} inherits {names[i]};")
        else:
            lines.append(f"    relation {names[i]} {kind} {names[j]};")
    lines += ["  }", "}"]
    return "\n".join(lines) + "\n"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
