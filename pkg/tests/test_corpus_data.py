from qbayes.corpus import data_files, data_path
from qbayes.io import load_model
from qbayes.qbn import validate


def test_shipped_files_are_current():
    for name, text in data_files().items():
        assert data_path(name).read_text() == text, name


def test_shipped_models_valid():
    for name in data_files():
        if name.endswith(".qbn"):
            assert validate(load_model(data_path(name))).valid
