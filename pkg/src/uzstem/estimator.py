"""scikit-learn compatible front end."""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .resources import load_resources
from .stemmer import StemResult, stem
from .validation import check_positive_int, check_tokens

_OUTPUTS = ("stem", "segmentation")


class UzbekStemmer(TransformerMixin, BaseEstimator):
    """Dictionary-free affix-stripping stemmer.

    Nothing is learned from data: ``fit`` loads the affix lexicon, compiles
    the per-class stripping automata and the analysis paths.  ``transform``
    maps an iterable of tokens to stems (or slash-joined segmentations).

    Parameters
    ----------
    lexicon : path-like, optional
        ``Suffixes.xml`` to use instead of the shipped one.
    topology_dir : path-like, optional
        Directory of ``*.fsm`` class topologies.
    paths : path-like, optional
        Path configuration file.
    min_stem_len : int, default=2
        Shortest stem, in letters, a default cut may leave behind.
    output : {"stem", "segmentation"}, default="stem"
    """

    def __init__(self, lexicon=None, topology_dir=None, paths=None, min_stem_len=2, output="stem"):
        self.lexicon = lexicon
        self.topology_dir = topology_dir
        self.paths = paths
        self.min_stem_len = min_stem_len
        self.output = output

    def fit(self, X=None, y=None):
        min_len = check_positive_int(self.min_stem_len, "min_stem_len")
        if self.output not in _OUTPUTS:
            raise ValueError(f"output must be one of {_OUTPUTS}, got {self.output!r}")
        res = load_resources(self.lexicon, self.topology_dir, self.paths, min_stem_len=min_len)
        self.lexicon_ = res.lexicon
        self.topologies_ = res.topologies
        self.main_fsm_ = res.main
        self.n_paths_ = len(res.main.paths)
        return self

    def analyze(self, word: str, keep_candidates: bool = False) -> StemResult:
        check_is_fitted(self, "main_fsm_")
        return stem(word, self.main_fsm_, keep_candidates=keep_candidates)

    def transform(self, X) -> list[str]:
        check_is_fitted(self, "main_fsm_")
        results = (stem(token, self.main_fsm_) for token in check_tokens(X))
        if self.output == "segmentation":
            return [r.segmentation for r in results]
        return [r.stem for r in results]

    def __call__(self, word: str) -> str:
        return self.analyze(word).stem
