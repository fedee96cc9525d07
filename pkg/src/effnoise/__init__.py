"""Effective logical Pauli noise channels for stabilizer-encoded qubits."""

from .codes import (
    StabilizerCode,
    cluster_ring_code,
    from_definition,
    ghz_code,
    repetition_code,
    trivial_code,
    validate,
)
from .effective import (
    ChoiCoefficients,
    EffectiveChannel,
    choi_effective,
    cluster_ring_p0,
    derive_effective,
    p_eff_estimate,
    repetition_closed_form,
    repetition_mean,
    white_parameter,
)
from .concat import (
    ConcatSpec,
    CriticalRateResult,
    concatenate,
    critical_rate,
    generalized_shor,
    lifetime_concat_compare,
)
from .entanglement import (
    DensityMatrix,
    LifetimeResult,
    apply_channel,
    apply_channel_all,
    ghz_negativity_fast,
    ghz_state,
    lifetime_pcrit,
    negativity,
    negativity_curve,
)
from .errors import ResourceLimitError
from .pauli import (
    PauliChannel,
    PauliString,
    phase_noise,
    string_probability,
    white_noise,
)

__all__ = [
    "ChoiCoefficients",
    "ConcatSpec",
    "CriticalRateResult",
    "DensityMatrix",
    "EffectiveChannel",
    "LifetimeResult",
    "PauliChannel",
    "PauliString",
    "ResourceLimitError",
    "StabilizerCode",
    "apply_channel",
    "apply_channel_all",
    "choi_effective",
    "cluster_ring_code",
    "cluster_ring_p0",
    "concatenate",
    "critical_rate",
    "derive_effective",
    "from_definition",
    "generalized_shor",
    "ghz_code",
    "ghz_negativity_fast",
    "ghz_state",
    "lifetime_concat_compare",
    "lifetime_pcrit",
    "negativity",
    "negativity_curve",
    "p_eff_estimate",
    "phase_noise",
    "repetition_closed_form",
    "repetition_code",
    "repetition_mean",
    "string_probability",
    "trivial_code",
    "validate",
    "white_noise",
    "white_parameter",
]

__version__ = "0.1.0"
