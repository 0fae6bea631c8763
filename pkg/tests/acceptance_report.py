"""Shared registry for acceptance-criterion results, printed by the
terminal-summary hook in conftest so one line per criterion always shows."""

results: list[tuple[int, str, bool, float, float]] = []


def record(num: int, desc: str, ok: bool, elapsed: float, bound: float) -> None:
    results.append((num, desc, ok, elapsed, bound))
