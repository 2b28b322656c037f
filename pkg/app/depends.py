from typing import Sequence

from errors import NotFound
from formula.models import GxwSpec
from formula.patterns import load_spec
from sdf.models import ActorSystem
from sdf.netlist import import_json
from validate.models import Trace
from validate.trace import read_trace_csv


def load_text_depend(path: str) -> str:
    """Read an input file, raising NotFound when it is missing or unreadable."""
    try:
        with open(path, encoding='utf-8') as handle:
            return handle.read()
    except OSError as exc:
        raise NotFound(f"{path}: {exc.strerror or exc}") from None


def load_spec_depend(path: str) -> GxwSpec:
    """Parse and classify a spec file."""
    return load_spec(load_text_depend(path))


def load_netlist_depend(path: str) -> ActorSystem:
    """Import a netlist JSON file with every wire endpoint validated."""
    return import_json(load_text_depend(path))


def load_trace_depend(path: str, inputs: Sequence[str], outputs: Sequence[str] = ()) -> Trace:
    return read_trace_csv(load_text_depend(path), inputs, outputs)
