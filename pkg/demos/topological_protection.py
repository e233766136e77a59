"""Three walls with and without a local bump in the mass.

The middle eigenvalue is pinned to zero because kappa changes sign between
-inf and +inf; the outer pair moves when the barrier between walls changes.

    python demos/topological_protection.py
"""
from domainwall import Grid, add_bump, dirac_spectrum_in_gap, glue_walls, make_single_wall, shooting_oracle

plain = glue_walls(make_single_wall("mollifier"), 3, 3.0)
for amp in (0.0, 0.1, 0.3, -0.3):
    prof = plain if amp == 0 else add_bump(plain, amp, center=3.0, width=1.0)
    E = dirac_spectrum_in_gap(prof, Grid.around(prof), refinements=2).eigenvalues
    S = shooting_oracle(prof, (-0.9, 0.9))
    print(f"bump {amp:+.1f}: E = {', '.join(f'{e:+.6e}' for e in E)}   shooting max diff {max(abs(S - E)):.1e}")
