import json
from pathlib import Path

import pytest

from torkh.config_analysis import configuration_from_json, decorated_from_json
from torkh.torus_diagram import diagram_from_json

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def read(rel):
    with open(FIXTURES / rel, encoding="utf-8") as fh:
        return json.load(fh)


def diagram(name):
    return diagram_from_json(read(f"diagrams/{name}.json"))


def move_pair(name):
    return (diagram_from_json(read(f"moves/{name}_a.json")),
            diagram_from_json(read(f"moves/{name}_b.json")))


def move_names():
    return sorted({p.name.rsplit("_", 1)[0] for p in (FIXTURES / "moves").glob("*.json")})


def config(name):
    return decorated_from_json(read(f"configs/{name}.json"))


def bare_config(name):
    return configuration_from_json(read(f"configs/{name}.json"))[0]


def all_diagrams():
    """Every fixture diagram: named ones, both sides of each move, random ones."""
    out = [(p.stem, diagram_from_json(read(f"diagrams/{p.name}")))
           for p in sorted((FIXTURES / "diagrams").glob("*.json"))]
    out += [(p.stem, diagram_from_json(read(f"moves/{p.name}")))
            for p in sorted((FIXTURES / "moves").glob("*.json"))]
    out += [(f"random{i}", diagram_from_json(r))
            for i, r in enumerate(read("random_diagrams.json"))]
    return out


@pytest.fixture(scope="session")
def corpus_diagrams():
    return all_diagrams()


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in test_acceptance.summary_lines():
        terminalreporter.write_line(line)
