"""Principal-component fitting and projection."""

import numpy as np
import pytest

from qevo.chem.fingerprint import Fingerprint, fingerprint
from qevo.decoder import decode_molecule
from qevo.errors import DegenerateCovariance
from qevo.pca import fit_components, project_molecules


def mols(*token_lists):
    return [decode_molecule(list(t)) for t in token_lists]


@pytest.fixture(scope="module")
def sample_fps():
    graphs = mols(
        ["[C]"] * 6, ["[C]"] * 5, ["[O]"] + ["[C]"] * 5,
        ["[N]"] + ["[C]"] * 4, ["[C]", "[=C]", "[C]", "[C]"],
        ["[F]", "[C]", "[C]"], ["[C]", "[O]", "[C]", "[C]"],
        ["[C]", "[#N]"], ["[C]", "[=C]", "[=C]", "[Ring1]", "[Ring1]"],
    )
    return [fingerprint(g) for g in graphs]


def test_components_orthonormal(sample_fps):
    model = fit_components(sample_fps)
    v1, v2 = model.components
    assert np.linalg.norm(v1) == pytest.approx(1.0, abs=1e-8)
    assert np.linalg.norm(v2) == pytest.approx(1.0, abs=1e-8)
    assert abs(float(v1 @ v2)) < 1e-8


def test_explained_variance_ordered(sample_fps):
    model = fit_components(sample_fps)
    assert model.explained[0] >= model.explained[1] >= 0.0


def test_projection_deterministic(sample_fps):
    model = fit_components(sample_fps)
    again = fit_components(sample_fps)
    fp = sample_fps[0]
    assert np.allclose(model.project(fp), again.project(fp))
    assert np.allclose(model.components, again.components)


def test_matches_dense_eigendecomposition(sample_fps):
    model = fit_components(sample_fps)
    data = np.zeros((len(sample_fps), sample_fps[0].width))
    for i, fp in enumerate(sample_fps):
        data[i, list(fp.bits)] = 1.0
    data -= data.mean(axis=0)
    cov = data.T @ data / len(data)
    eigvals = np.linalg.eigvalsh(cov)
    assert model.explained[0] == pytest.approx(eigvals[-1], rel=1e-6)
    assert model.explained[1] == pytest.approx(eigvals[-2], rel=1e-6)


def test_degenerate_covariance():
    fp = Fingerprint(frozenset({1, 2}))
    with pytest.raises(DegenerateCovariance):
        fit_components([fp, fp, fp])


def test_project_molecules_windows(sample_fps):
    model = fit_components(sample_fps)
    graphs = {
        "CCCCCC": decode_molecule(["[C]"] * 6),
        "CCCCC": decode_molecule(["[C]"] * 5),
    }
    molecules = {"CCCCCC": (-2.58, 0), "CCCCC": (-2.19, 11)}
    rows = project_molecules(model, molecules, graphs.__getitem__, 12)
    assert [r["canonical"] for r in rows] == ["CCCCC", "CCCCCC"]
    windows = {r["canonical"]: r["window"] for r in rows}
    assert windows["CCCCCC"] == 0
    assert windows["CCCCC"] == 5
