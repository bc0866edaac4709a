from typing import List, NamedTuple

import numpy as np


class EigenPair(NamedTuple):
    value: complex
    vector: np.ndarray
    residual: float


def eigen_4x4(matrix) -> List[EigenPair]:
    """
    All eigenpairs of a real 4x4 matrix, ordered by (real part, imaginary part).

    Complex eigenvalues are returned as they are; for Bogoliubov matrices they signal a
    dynamical instability. Each vector has unit 2-norm.
    """
    a = np.asarray(matrix, dtype=float)
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    values, vectors = np.linalg.eig(a)
    order = np.lexsort((values.imag, values.real))
    pairs = []
    for idx in order:
        lam = complex(values[idx])
        vec = vectors[:, idx].astype(complex)
        vec = vec / np.linalg.norm(vec)
        residual = float(np.linalg.norm(a @ vec - lam * vec))
        pairs.append(EigenPair(value=lam, vector=vec, residual=residual))
    return pairs


def eigenvalues_4x4(matrix) -> np.ndarray:
    return np.array([p.value for p in eigen_4x4(matrix)])
