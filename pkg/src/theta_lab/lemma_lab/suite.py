"""The full verification suite: every verifier at its stated K, plus a
negative control just below each threshold."""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from . import appendix, cases, triangles
from .cases import CASES, case_threshold
from .potentials import DERIVATIVE_BREAKEVEN, paper_constants
from .report import LemmaReport

CONTROL_GAP = 1e-2

# id -> (default K or None, threshold or None)
_K_DEFAULTS: dict[str, tuple[Optional[float], Optional[Callable[[], float]]]] = {
    "constants": (None, None),
    "t253": (4.53, lambda: paper_constants().K_t253),
    "t334": (5.70, lambda: paper_constants().K_main),
    "posofc": (3.24, lambda: paper_constants().K_posofc),
    "claim6": (None, None),
    **{v[0]: (v[1], (lambda n=k: case_threshold(n))) for k, v in CASES.items()},
    "mainlemma1": (5.70, None),
    "mainlemma1_all": (5.70, None),
    "mainlemma2": (5.70, appendix.mainlemma2_threshold),
    "mainlemma2_derivative": (5.70, lambda: DERIVATIVE_BREAKEVEN),
}

ALIASES = {
    "4": "t253", "5": "t334", "7": "posofc", "6": "claim6",
    **{str(k): v[0] for k, v in CASES.items()},
    "appendix_a": "mainlemma1", "appendix_b": "mainlemma2",
}

LEMMA_IDS = tuple(_K_DEFAULTS)


def resolve(lemma_id) -> str:
    key = str(lemma_id).strip().lower()
    key = ALIASES.get(key, key)
    if key not in _K_DEFAULTS:
        raise ValueError(f"unknown lemma {lemma_id!r}; known: {', '.join(LEMMA_IDS)}")
    return key


def default_K(lemma_id) -> Optional[float]:
    return _K_DEFAULTS[resolve(lemma_id)][0]


def threshold(lemma_id) -> Optional[float]:
    fn = _K_DEFAULTS[resolve(lemma_id)][1]
    return fn() if fn else None


def run_lemma(
    lemma_id,
    K: Optional[float] = None,
    grid: int = 500,
    samples: int = 100_000,
    seed: int = 0,
    threads: int = 1,
    role: str = "main",
) -> LemmaReport:
    """Run one verifier; ``K`` defaults to the constant it is stated for."""
    key = resolve(lemma_id)
    if K is None:
        K = default_K(key)
    if key == "constants":
        rep = triangles.verify_constants()
    elif key == "t253":
        rep = triangles.verify_t253(K, grid, threads)
    elif key == "t334":
        rep = triangles.verify_t334(K, grid, threads)
    elif key == "posofc":
        rep = triangles.verify_posofc(K, grid, min(samples, 20_000), seed, threads)
    elif key == "claim6":
        rep = triangles.verify_claim6(max(grid, 1000), flip=(role == "control"))
    elif key in cases.CASE_IDS:
        rep = cases.verify_case_lemma(key, grid, K, min(samples, 50_000), seed, threads)
    elif key in ("mainlemma1", "mainlemma1_all"):
        extend = 0.1 if role == "control" else 0.0
        rep = appendix.verify_mainlemma1(samples, seed, key == "mainlemma1", K, extend)
    elif key == "mainlemma2":
        rep = appendix.verify_mainlemma2(grid, K)
    else:
        rep = appendix.verify_mainlemma2_derivative(K, max(grid, 10_000))
    rep.role = role
    return rep


def run_lemma_suite(
    grid: int = 500,
    samples: int = 100_000,
    seed: int = 0,
    threads: int = 1,
    lemmas: Optional[Iterable] = None,
    K: Optional[float] = None,
    controls: bool = True,
) -> list[LemmaReport]:
    """Main runs for the requested lemmas (all by default) and, unless
    ``K`` is forced, one negative control each.

    Controls run at threshold - 0.01 where a closed-form threshold exists;
    otherwise they break a hypothesis (mirror pentagon, c' past p1).
    """
    keys = [resolve(x) for x in lemmas] if lemmas else list(LEMMA_IDS)
    out = []
    for key in keys:
        out.append(run_lemma(key, K, grid, samples, seed, threads))
        if not controls or K is not None or key == "constants":
            continue
        th = threshold(key)
        if th is not None:
            out.append(run_lemma(key, th - CONTROL_GAP, grid, samples, seed, threads, role="control"))
        elif key in ("claim6", "mainlemma1"):
            out.append(run_lemma(key, None, grid, samples, seed, threads, role="control"))
    return out
