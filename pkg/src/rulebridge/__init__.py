"""rulebridge: translate proprietary trigger/action names from rule recipes
to high-level IoT ontology terms via word-vector similarity, textual
entailment, or the combination of both, with human review kept in the loop.
"""

__version__ = "0.1.0"

from .catalog import (
    ACTION,
    KINDS,
    TRIGGER,
    CatalogTerm,
    CleaningReport,
    FormatConfig,
    OntologyCatalog,
    OntologyTerm,
    ProprietaryCatalog,
    RawRecipeSet,
    RecipeRow,
    clean_and_split,
    clean_name,
    load_catalog,
    load_ontology,
    load_ontology_catalog,
    load_recipes,
    save_catalog,
    save_ontology_catalog,
    split_camel_case,
)
from .config import AppConfig, load_config, override
from .embedvec import DocVector, VectorStore, cosine, embed, tokenize
from .errors import (
    DataFormatError,
    RevisionConflictError,
    RuleBridgeError,
    ScorerUnavailableError,
    SyncError,
    UnknownIdError,
)
from .evaluation import (
    AnnotationRecord,
    DatasetStats,
    MethodSummary,
    compare_methods,
    dataset_stats,
    load_annotations,
    render_summary_table,
    sample_for_annotation,
    save_annotations,
    score_method,
)
from .formats import (
    LEGACY_FIELDS,
    batch_to_json,
    candidate_record,
    dumps_canonical,
    keyed_object_records,
    flat_records,
    result_to_dict,
)
from .pipeline import (
    COMBINED,
    DEFAULT_THRESHOLD,
    DEFAULT_TOP_N,
    EMBEDDING,
    ENTAILMENT,
    METHODS,
    BatchOutcome,
    PipelineConfig,
    ScoredCandidate,
    TranslationResult,
    apply_review_overrides,
    translate_batch,
    translate_one,
)
from .rulestore import (
    ACCURACY_SCALE,
    RemoteContainerClient,
    ReviewRecord,
    RuleStore,
    SyncReport,
    TranslatedRuleDoc,
    sync_remote,
)
from .scoring import (
    DEFAULT_ANTONYM_PAIRS,
    EmbeddingScore,
    EntailmentTriple,
    RemoteEntailmentClient,
    embedding_score,
    make_embedding_scorer,
    proxy_entailment,
    validate_triple,
)
from .service import (
    API_ERROR_CODES,
    ApiException,
    TranslationEngine,
    create_app,
    serve,
)

__all__ = [
    "__version__",
    "ACTION",
    "ACCURACY_SCALE",
    "API_ERROR_CODES",
    "AnnotationRecord",
    "ApiException",
    "AppConfig",
    "BatchOutcome",
    "COMBINED",
    "CatalogTerm",
    "CleaningReport",
    "DEFAULT_ANTONYM_PAIRS",
    "DEFAULT_THRESHOLD",
    "DEFAULT_TOP_N",
    "DataFormatError",
    "DatasetStats",
    "DocVector",
    "EMBEDDING",
    "ENTAILMENT",
    "EmbeddingScore",
    "EntailmentTriple",
    "FormatConfig",
    "KINDS",
    "LEGACY_FIELDS",
    "METHODS",
    "MethodSummary",
    "OntologyCatalog",
    "OntologyTerm",
    "PipelineConfig",
    "ProprietaryCatalog",
    "RawRecipeSet",
    "RecipeRow",
    "RemoteContainerClient",
    "RemoteEntailmentClient",
    "ReviewRecord",
    "RevisionConflictError",
    "RuleBridgeError",
    "RuleStore",
    "ScoredCandidate",
    "ScorerUnavailableError",
    "SyncError",
    "SyncReport",
    "TRIGGER",
    "TranslatedRuleDoc",
    "TranslationEngine",
    "TranslationResult",
    "UnknownIdError",
    "VectorStore",
    "apply_review_overrides",
    "batch_to_json",
    "candidate_record",
    "clean_and_split",
    "clean_name",
    "compare_methods",
    "cosine",
    "create_app",
    "dataset_stats",
    "dumps_canonical",
    "embed",
    "embedding_score",
    "keyed_object_records",
    "flat_records",
    "load_annotations",
    "load_catalog",
    "load_config",
    "load_ontology",
    "load_ontology_catalog",
    "load_recipes",
    "make_embedding_scorer",
    "override",
    "proxy_entailment",
    "render_summary_table",
    "result_to_dict",
    "sample_for_annotation",
    "save_annotations",
    "save_catalog",
    "save_ontology_catalog",
    "score_method",
    "serve",
    "split_camel_case",
    "sync_remote",
    "tokenize",
    "translate_batch",
    "translate_one",
    "validate_triple",
]
