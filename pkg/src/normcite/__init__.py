"""Field-normalized citation impact indicators (Crown, MNCS, SO/MM) and eligibility analysis."""

from .baselines import (
    BaselineEntry,
    BaselineTable,
    CategoryShare,
    dump_baselines,
    expected_for_publication,
    load_baselines,
    lookup_expected,
    parse_baselines,
)
from .eligibility import (
    EligibilityPolicy,
    EligibilityReport,
    check_guarantor,
    compare_reference,
    h_index,
    highly_cited_count,
    load_references,
)
from .errors import (
    ChoiceSpaceTooLargeError,
    ComputationError,
    EmptySetError,
    InputError,
    MissingBaselineError,
    NormciteError,
    ParseError,
    PolicyError,
    RowError,
    TieBreakWarning,
    TooFewItemsError,
    UnresolvedTieError,
    ZeroExpectedError,
)
from .indicators import (
    CategoryRange,
    IndicatorResult,
    ItemScore,
    SommYearRow,
    compute,
    crown,
    item_scores,
    mncs,
    somm,
    somm_category_range,
)
from .policies import Multicat, MulticategoryPolicy, TieBreak, TieBreakPolicy
from .records import (
    DocType,
    DocTypeGroup,
    Publication,
    SourceDb,
    ValidatedSet,
    YearWindow,
    dump_publications,
    load_publications,
    parse_publications,
    scan_publications,
    validate_set,
)
from .sensitivity import bootstrap, compare_sources, perturb

__version__ = "0.1.0"
