"""Raw transcript annotation: tokenize, tag, lemmatize, flag disfluencies."""

from .annotate import (
    RawRecord,
    RawTranscriptError,
    annotate_records,
    load_disfluency_lexicon,
    parse_raw,
    tokenize,
    write_bundle,
)
from .engine import (
    BuiltinDutchEngine,
    EngineUnavailableError,
    SpacyEngine,
    make_engine,
    map_spacy_pos,
)

__version__ = "0.1.0"
