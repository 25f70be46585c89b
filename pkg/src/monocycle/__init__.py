"""Monochromatic cycle spectra, extremal colorings and constructive cycle finders
for two-edge-colored graphs."""

from .graph import (
    COLORS,
    BipartiteView,
    Color,
    ColoredGraph,
    CycleCertificate,
    GraphError,
    PathCertificate,
    SimpleGraph,
    build,
    deficiency,
    monochrome_view,
    verify_cycle,
    verify_path,
)
from .spectrum import (
    SpectrumRefused,
    arrows_cycle,
    cycle_spectrum,
    monochromatic_circumference,
    spectrum_report,
    theorem_verdict,
)

__version__ = "0.1.0"
