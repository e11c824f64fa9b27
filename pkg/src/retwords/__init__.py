"""Return words of interval exchange transformations and rotation codings.

The package builds infinite words from interval exchanges, codings of
rotations and substitutions, and computes their factors, complexity and
return words exactly, over a quadratic field.
"""

from .dynamics import (
    IETransform,
    Interval,
    KeaneReport,
    RotationCoding,
    apply,
    build_iet,
    code_orbit,
    coding,
    keane_check,
    to_iet,
)
from .errors import (
    ConfigError,
    DomainError,
    HorizonExceeded,
    NoOccurrence,
    NotReducible,
    RadicandMismatch,
    RegularityViolation,
)
from .language import complexity, factors, factors_scan, partition_level, rotation_factor_test
from .morphisms import Morphism, fixed_point_prefix
from .returns import (
    ReturnReport,
    factor_interval,
    induced_partition,
    occurrences,
    return_words_geometric,
    return_words_scan,
    verify_property_Rk,
)
from .scalar import Scalar
from .words import PeriodicSequence, SymbolSequence

__version__ = "0.1.0"
