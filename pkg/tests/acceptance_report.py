"""Collects one result line per acceptance criterion."""

RESULTS = {}


def record(number, title, ok, detail, seconds):
    status = "PASS" if ok else "FAIL"
    line = f"{status}  criterion {number}: {title} ({detail}; {seconds:.2f}s)"
    RESULTS[number] = line
    print(line)
    return line
