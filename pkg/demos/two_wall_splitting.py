"""Two mollifier walls: how the pair of gap eigenvalues closes in on zero.

For each half-spacing the script prints the direct eigenvalue, the leading
prediction +-a, their difference, and the root of det M(E) from the reduced
2 x 2 system.  It finishes with fitted decay rates.

    python demos/two_wall_splitting.py
"""
from domainwall import (
    Grid,
    assemble_full_matrix,
    coupling,
    det_roots,
    dirac_spectrum_in_gap,
    fit_decay_rate,
    glue_walls,
    make_single_wall,
)

base = make_single_wall("mollifier")
gaps, couplings = [], []
print(f"{'delta':>6} {'E_+ direct':>14} {'a':>14} {'E_+ - a':>11} {'det root':>14}")
for d in (3.0, 4.0, 5.0, 6.0):
    prof = glue_walls(base, 2, d)
    E = dirac_spectrum_in_gap(prof, Grid.around(prof), refinements=2).eigenvalues
    a = coupling(base, d)
    root = det_roots(assemble_full_matrix(2, d, base))[-1]
    print(f"{d:6.1f} {E[-1]:14.6e} {a:14.6e} {E[-1] - a:11.2e} {root:14.6e}")
    gaps.append((d, abs(E[-1] - a)))
    couplings.append((d, a))

print(f"\nslope of ln a             : {fit_decay_rate(couplings).slope:7.3f}  (expect -2)")
print(f"slope of ln |E_+ - a|     : {fit_decay_rate(gaps).slope:7.3f}")
