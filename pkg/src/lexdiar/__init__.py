"""Speaker clustering on fused acoustic and lexical adjacency matrices."""
from .acoustic import acoustic_affinity, binarize_knn, pairwise_distance_matrix, symmetrize
from .fusion import combine_max
from .lexical import Utterance, Word, build_q, lexical_affinity
from .pipeline import PipelineConfig, diarize
from .scoring import DerBreakdown, RttmEntry, compute_der, parse_rttm
from .spectral import EigengapReport, eigengap_report, laplacian, select_threshold, spectral_cluster
from .synth import SynthSpec, generate
from .timeline import Segment, TimeInterval, overlap_duration, segments_in_utterance, uniform_segments

__version__ = "0.1.0"
