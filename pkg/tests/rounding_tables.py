"""Printed rounding tables, transcribed for the rounding tests."""

C = "00 01 10 11"

# labels of the 5x5 grid on P4 x P4, rows top to bottom
SQUARE_LABELS = [
    ["00", "00", "00 01", "01", "01"],
    ["00", "00", C, "01", "01"],
    ["00 10", C, C, C, "01 11"],
    ["10", "10", C, "11", "11"],
    ["10", "10", "10 11", "11", "11"],
]

# image sizes on the 7x7x7 grid; four blocks side by side, for layers
# (0, 6), (1, 5), (2, 4) and 3; brackets as printed
CUBE_ROWS = """
(1) 1 1 (2) 1 1 (1)  1 1 1 2 1 1 1  1 1 1 4 1 1 1  (2) 2 4 (4) 4 2 (2)
1 1 1 2 1 1 1        1 1 1 2 1 1 1  1 1 1 8 1 1 1  2 2 8 8 8 2 2
1 1 1 4 1 1 1        1 1 1 8 1 1 1  1 1 1 8 1 1 1  4 8 8 8 8 8 4
(2) 2 4 (4) 4 2 (2)  2 2 8 8 8 1 1  4 8 8 8 8 8 4  (4) 8 8 (8) 8 2 (4)
1 1 1 4 1 1 1        1 1 1 8 1 1 1  1 1 1 8 1 1 1  4 8 8 8 8 8 4
1 1 1 2 1 1 1        1 1 1 2 1 1 1  1 1 1 8 1 1 1  2 2 8 8 8 2 2
(1) 1 1 (2) 1 1 (1)  1 1 1 2 1 1 1  1 1 1 4 1 1 1  (2) 2 4 (4) 4 2 (2)
"""

CUBE_LAYERS = [(0, 6), (1, 5), (2, 4), (3,)]

# printed cells that disagree with the rounding rule and with the table's own
# mirror symmetry x2 -> 6 - x2; keys are (x1, x2, x3)
CUBE_MISPRINTS = {(3, 5, 1), (3, 6, 1), (3, 5, 5), (3, 6, 5), (3, 5, 3)}


def cube_table():
    """Map (x1, x2, x3) -> (printed size, bracketed)."""
    out = {}
    for x1, line in enumerate(CUBE_ROWS.strip().splitlines()):
        cells = line.split()
        assert len(cells) == 28
        for b, layers in enumerate(CUBE_LAYERS):
            for x2, cell in enumerate(cells[7 * b: 7 * b + 7]):
                for x3 in layers:
                    out[(x1, x2, x3)] = (int(cell.strip("()")), cell.startswith("("))
    return out
