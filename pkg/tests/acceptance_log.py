"""Collects one line per acceptance criterion for the terminal summary."""

LINES: list[str] = []


def record(label: str, ok: bool, detail: str = "") -> bool:
    LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else ""))
    return ok
