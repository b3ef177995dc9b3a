"""Simulation and analysis toolkit for phase-engineered strong symmetries
in driven-dissipative atom-cavity systems.

Modules: operators (Hilbert spaces and collective operators), models
(parameter sets and Lindblad model assembly), lindblad (exact dynamics and
Liouvillian spectra), meanfield (semiclassical equations of motion),
symmetry (sector decompositions and conserved weights), analysis
(frequency classification, thresholds, sweeps), cli (batch front end).
"""

__version__ = "0.1.0"
