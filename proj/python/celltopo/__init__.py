"""Multi-class cell layout descriptors, matching losses and synthesis."""

from ._celltopo import (
    ALL_CLASSES,
    DUMMY,
    AnalysisParams,
    CellLayout,
    ClassMetrics,
    DefaultsSpec,
    DensityVector,
    DistanceField,
    EnrichedPersistenceDiagram,
    FormatError,
    HoleEnrichment,
    HoleMatching,
    IoError,
    KFunctionVector,
    MatchPair,
    MetricReport,
    Objective,
    PersistencePoint,
    SynthesisConfig,
    SynthesisResult,
    SynthesisStep,
    SynthesisTrace,
    ValidationError,
    cell_configuration_loss,
    cross_k,
    distance_transform,
    init_layout,
    k_distance,
    load_layout,
    location_k,
    metric_report,
    multiscale_density,
    normalize_to_unit,
    objective,
    optimal_match,
    pd_ccmd,
    pd_emd,
    per_class_diagrams,
    persistence_h1,
    remove_overlaps,
    render_svg,
    save_layout,
    synthesize,
    vectorize_diagram,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
