"""Published pivot-detection scenarios used as reference data.

Seven scenarios over ten nodes (a1..a10). Each carries the per-node event
totals (nbe), the probability row, the possibility row and the expected
pivot set, all exactly as printed in the source tables, which round to two
decimals. Scenario A additionally matches the packaged 10x15 participation
fixture: its nbe row equals that matrix's row sums.
"""

SCENARIOS = {
    "A": {
        "nbe": (75, 10, 14, 26, 1, 2, 7, 0, 0, 0),
        "p": (0.30, 0.10, 0.25, 0.25, 0, 0, 0.10, 0, 0, 0),
        "pi": (1.00, 0.20, 0.70, 0.70, 0, 0, 0.20, 0, 0, 0),
        "pivots": {"a1"},
    },
    "B": {
        "nbe": (591, 28, 218, 142, 44, 31, 117, 53, 10, 8),
        "p": (0.42, 0.06, 0.18, 0.23, 0, 0, 0.11, 0, 0, 0),
        "pi": (1.00, 0.06, 0.35, 0.59, 0, 0, 0.17, 0, 0, 0),
        "pivots": {"a1"},
    },
    "C": {
        "nbe": (1638, 108, 668, 348, 120, 63, 348, 170, 27, 16),
        "p": (0.39, 0.11, 0.17, 0.22, 0, 0, 0.11, 0, 0, 0),
        "pi": (1.00, 0.22, 0.38, 0.61, 0, 0, 0.22, 0, 0, 0),
        "pivots": {"a1"},
    },
    "D": {
        "nbe": (3659, 257, 1596, 773, 206, 164, 890, 425, 59, 40),
        "p": (0.39, 0.11, 0.17, 0.22, 0, 0, 0.11, 0, 0, 0),
        "pi": (1.00, 0.22, 0.38, 0.61, 0, 0, 0.22, 0, 0, 0),
        "pivots": {"a1"},
    },
    "E": {
        "nbe": (428, 34, 204, 95, 26, 40, 52, 40, 6, 4),
        "p": (0.38, 0, 0.38, 0, 0.06, 0.06, 0.06, 0.06, 0, 0),
        "pi": (1.00, 0, 1.00, 0, 0.25, 0.25, 0.25, 0.25, 0, 0),
        "pivots": {"a1", "a3"},
    },
    "F": {
        "nbe": (702, 50, 321, 140, 38, 54, 122, 82, 13, 8),
        "p": (0.32, 0, 0.32, 0.07, 0, 0, 0.07, 0.15, 0, 0.07),
        "pi": (1.00, 0, 1.00, 0.23, 0, 0, 0.23, 0.38, 0, 0.23),
        "pivots": {"a1", "a3"},
    },
    "G": {
        "nbe": (1569, 127, 663, 335, 72, 81, 405, 170, 22, 16),
        "p": (0.32, 0, 0.38, 0, 0.06, 0, 0.18, 0.06, 0, 0),
        "pi": (0.62, 0, 1.00, 0, 0.12, 0, 0.31, 0.12, 0, 0),
        "pivots": {"a3"},
    },
}

NODE_IDS = tuple(f"a{i}" for i in range(1, 11))
