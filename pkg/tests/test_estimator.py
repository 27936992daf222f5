import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline
from sklearn.preprocessing import FunctionTransformer

from uzstem import UzbekStemmer


@pytest.fixture(scope="module")
def fitted():
    return UzbekStemmer().fit()


def test_transform(fitted):
    assert fitted.transform(["yaxshiroqlaridan", "kitob"]) == ["yaxshi", "kitob"]
    assert fitted("qishlog‘imdansizlar") == "qishlog‘"


def test_segmentation_output():
    stemmer = UzbekStemmer(output="segmentation").fit()
    assert stemmer.transform(["O‘qimaganlardanmisiz"]) == ["o‘qi/ma/gan/lar/dan/mi/siz"]


def test_params_and_clone():
    stemmer = UzbekStemmer(min_stem_len=3)
    params = stemmer.get_params()
    assert params["min_stem_len"] == 3 and params["output"] == "stem"
    twin = clone(stemmer)
    assert twin.get_params() == params
    assert not hasattr(twin, "main_fsm_")
    stemmer.set_params(output="segmentation")
    assert stemmer.output == "segmentation"


def test_not_fitted():
    with pytest.raises(NotFittedError):
        UzbekStemmer().transform(["kitob"])


@pytest.mark.parametrize("kwargs", [{"min_stem_len": 0}, {"min_stem_len": "2"}, {"output": "tree"}])
def test_bad_params(kwargs):
    with pytest.raises(ValueError):
        UzbekStemmer(**kwargs).fit()


@pytest.mark.parametrize("X", ["kitob", [1, 2], 5])
def test_bad_input(fitted, X):
    with pytest.raises(TypeError):
        fitted.transform(X)


def test_pipeline():
    pipe = Pipeline([("lower", FunctionTransformer(lambda xs: [x.lower() for x in xs])), ("stem", UzbekStemmer())])
    assert pipe.fit_transform(["KITOBLAR"]) == ["kitob"]
    assert pipe.get_params()["stem__min_stem_len"] == 2


def test_fit_returns_self_and_attributes():
    stemmer = UzbekStemmer()
    assert stemmer.fit(["ignored"]) is stemmer
    assert stemmer.n_paths_ == 9
    assert 2 in stemmer.topologies_
