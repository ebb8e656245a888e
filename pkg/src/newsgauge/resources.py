"""Access to the data files bundled with the package."""

from importlib import resources


def data_text(name: str) -> str:
    """Return the contents of a bundled data file as text."""
    return (resources.files("newsgauge") / "data" / name).read_text(encoding="utf-8")


def data_lines(name: str) -> list[str]:
    """Non-empty, non-comment (#) lines of a bundled data file."""
    out = []
    for line in data_text(name).splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out
