"""Print the d = 3 geometry and operators: the point grid, the line j = (1, 2),
its point operators and line operator, and the APG line eta = xi + 1."""
import numpy as np

from fgrt.geometry import CB, Sloped, apg_common_dapg_point, apg_line_points, line_points
from fgrt.operators import apg_line_operator, line_operator, point_operator

D = 3


def fmt(matrix):
    """Render entries of 3*matrix (or matrix itself for 0/1 patterns) as powers of w."""
    w = np.exp(2j * np.pi / D)
    scale = 1 if np.allclose(np.abs(matrix)[np.abs(matrix) > 1e-9], 1) else D
    rows = []
    for row in matrix * scale:
        cells = []
        for z in row:
            if abs(z) < 1e-9:
                cells.append("0")
                continue
            k = int(round(np.angle(z / abs(z)) / (2 * np.pi / D))) % D
            assert abs(z - w**k) < 1e-9
            cells.append({0: "1", 1: "w", 2: "w^2"}[k])
        rows.append("  ".join(f"{c:>3}" for c in cells))
    prefix = f"(1/{scale}) " if scale != 1 else ""
    return prefix + ("\n" + " " * len(prefix)).join(rows)


def main():
    j = (1, 2)
    pts = line_points(D, j)
    print(f"line j = {j} passes through {[tuple(p) for p in pts]}\n")
    print("m\\b " + "".join(f"{b:>8}" for b in range(CB, D)))
    for m in range(D):
        cells = [f"({m},{b})" if (m, b) in pts else "." for b in range(CB, D)]
        print(f"{m:>3} " + "".join(f"{c:>8}" for c in cells))
    print()
    for a in pts:
        print(f"A{tuple(a)} =\n{fmt(point_operator(D, a))}\n")
    print(f"P{j} =\n{fmt(line_operator(D, j))}\n")

    lam = Sloped(1, 1)
    print(f"APG line eta = xi + 1 contains {[tuple(p) for p in apg_line_points(D, lam)]}")
    alpha = apg_common_dapg_point(D, lam)
    print(f"its dual DAPG lines share the point {tuple(alpha)}")
    print(f"B = (1/3) sum P =\n{fmt(apg_line_operator(D, lam))}")


if __name__ == "__main__":
    main()
