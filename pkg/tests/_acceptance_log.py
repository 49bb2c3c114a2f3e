"""Collector for the one-line acceptance verdicts (printed in the summary)."""

lines: list[str] = []


def record(criterion: int, verdict: str, detail: str) -> None:
    line = f"criterion {criterion}: {verdict} - {detail}"
    lines.append(line)
    print(line, flush=True)
