"""esdscan: two-qubit MEMS decoherence, concurrence, and sudden-death zone scans."""

__version__ = "0.1.0"

from .channels import (
    ChannelKind,
    KrausChannel,
    apply_product,
    apply_product_channel,
    check_completeness,
    kraus_operators,
    kraus_set,
)
from .concurrence import (
    IntegrityError,
    XStructureError,
    concurrence,
    concurrence_eig_route,
    spin_flip,
    wootters_spectrum,
    xstate_concurrence,
)
from .linalg import SolverError, charpoly4, dag, durand_kerner, eig4, kron2
from .spectra import (
    DiscrepancyRecord,
    FormulaDomainError,
    closed_form_spectrum,
    compare_spectrum,
    concurrence_from_spectrum,
    numeric_spectrum,
    scan_grid,
)
from .states import (
    DensityMatrixError,
    mems,
    reference_concurrence,
    validate_density,
    werner,
    werner_concurrence_raw,
)
from .zonescan import (
    ConcurrenceCurve,
    SweepConfig,
    Zone,
    ZoneReport,
    find_zones,
    sample_curve,
)

__all__ = [
    "__version__",
    "ChannelKind",
    "KrausChannel",
    "apply_product",
    "apply_product_channel",
    "check_completeness",
    "kraus_operators",
    "kraus_set",
    "IntegrityError",
    "XStructureError",
    "concurrence",
    "concurrence_eig_route",
    "spin_flip",
    "wootters_spectrum",
    "xstate_concurrence",
    "SolverError",
    "charpoly4",
    "dag",
    "durand_kerner",
    "eig4",
    "kron2",
    "DiscrepancyRecord",
    "FormulaDomainError",
    "closed_form_spectrum",
    "compare_spectrum",
    "concurrence_from_spectrum",
    "numeric_spectrum",
    "scan_grid",
    "DensityMatrixError",
    "mems",
    "reference_concurrence",
    "validate_density",
    "werner",
    "werner_concurrence_raw",
    "ConcurrenceCurve",
    "SweepConfig",
    "Zone",
    "ZoneReport",
    "find_zones",
    "sample_curve",
]
