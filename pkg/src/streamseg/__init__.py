"""Online unsupervised word segmentation of unspaced letter streams."""

from .config import EngineConfig
from .evaluation import EvalReport, Segmentation, compare
from .experiment import RunSpec, SegmentationReport, run, sweep
from .memory import SequenceMemory, SequenceRecord, hash_index
from .segmenter import LEARNING, OUTPUT, Session, render
from .streamgen import Corpus, Lcg, generate, lcg_next
from .trellis import Emission

__all__ = [
    "Corpus", "Emission", "EngineConfig", "EvalReport", "LEARNING", "Lcg",
    "OUTPUT", "RunSpec", "Segmentation", "SegmentationReport",
    "SequenceMemory", "SequenceRecord", "Session", "compare", "generate",
    "hash_index", "lcg_next", "render", "run", "sweep",
]
