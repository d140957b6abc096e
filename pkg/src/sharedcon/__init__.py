"""Shared lemmatised construction mining and analysis for dialogue corpora."""

from .analyses import analysis1, analysis2, analysis3, analyze_corpus, analyze_dialogue
from .bundle import BundleFormatError, CorpusValidationError, parse_corpus, write_corpus
from .construction_types import (
    ConstructionType,
    TypeTimeline,
    build_timeline,
    dominant_type,
    group_into_types,
    type_features,
)
from .corpus import (
    CONTENT_POS,
    POS,
    Corpus,
    Dialogue,
    NamingRecord,
    Phase,
    Token,
    Trial,
    Utterance,
    content_lemmas,
    lemma_stream,
    validate,
)
from .extraction import (
    Occurrence,
    SharedConstruction,
    cross_speaker_sequences,
    extract_shared_constructions,
    filter_function_word_only,
    filter_multi_referent,
)
from .metrics import (
    ConvergenceRecord,
    DegenerateDataError,
    LemmaVector,
    NameOverlap,
    StatResult,
    convergence,
    dialogue_coverage,
    lexical_cosine,
    name_overlap,
    spearman,
    t_test,
    utterance_coverage,
)
from .pipeline import PipelineConfig, run_pipeline
from .pseudo import (
    IncompatibleSourcesError,
    PseudoPairPlan,
    build_pseudo_corpus,
    materialize_pseudo_dialogue,
    plan_pseudo_pairs,
)
from .report import render_report
from .synth import GeneratorConfig, GroundTruthCell, generate

__version__ = "0.1.0"
