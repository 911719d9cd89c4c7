from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from config.models import SystemSetting
from core.exceptions import (
    CrysredError,
    DomainError,
    IntegralityFailure,
    NonSquareCentre,
    PrecisionError,
    RingMismatch,
)
from padic.models import RamifiedElement, check_prime, int_valuation
from padic.services import PadicService
from .models import ASpec, ClassificationResult, ExceptionalDiscs, SweepRow, SweepTable, Variant

logger = logging.getLogger(__name__)

TWIST_NOTE = (
    "t = [k-2]+1 = 2 here; the same case is also written ind(omega_2), "
    "which differs from ind(omega_2^2) by a twist. Reported as computed."
)


class ClassifierService:
    """
    0 < v(a) < 1 için V_{k,a}'nın indirgemesi, valuation'lar üzerinde bir karar olarak.

    t = [k−2] + 1 ile ind(ω₂^t) indirgenemezdir; ancak k > 3, k ≡ 3 mod p−1 ve
    v(a² − (k−2)p) ≥ v(k−3) + 1 + v(a) ise τ = ((k−2)p − a²)/(a·p·(k−3))
    olmak üzere izi τ̄ olan indirgenebilir temsildir.
    """

    @staticmethod
    def _check_weight(p: int, k: int) -> None:
        check_prime(p)
        if k < 2:
            raise DomainError(f"weight k must be ≥ 2, got {k}")

    @classmethod
    def t_exponent(cls, p: int, k: int) -> int:
        cls._check_weight(p, k)
        return (k - 2) % (p - 1) + 1

    @staticmethod
    def is_exceptional_weight(p: int, k: int) -> bool:
        return k > 3 and (k - 3) % (p - 1) == 0

    @staticmethod
    def default_precision(p: int, k: int, e: int) -> int:
        configured = SystemSetting.get("PRECISION", default=0)
        if configured:
            return configured
        t = int_valuation(k - 3, p) or 0
        return e * (t + 4)

    # ------------------------------------------------------------------
    # classify
    # ------------------------------------------------------------------

    @classmethod
    def classify(cls, p: int, k: int, a: ASpec, precision: int | None = None) -> ClassificationResult:
        """
        Başlangıç hassasiyetinde karar verir; PrecisionError'da hassasiyeti
        başlangıcın PRECISION_RETRY_FACTOR katına kadar ikiye katlar.
        """
        cls._check_weight(p, k)
        if a.p != p:
            raise RingMismatch(f"a is given over p = {a.p}, classifying for p = {p}")

        start = precision or a.precision or cls.default_precision(p, k, a.e)
        cap = start * SystemSetting.get("PRECISION_RETRY_FACTOR", default=8)
        current = start
        while True:
            try:
                return cls._classify_at(p, k, a, current)
            except PrecisionError as exc:
                if current * 2 > cap:
                    raise PrecisionError(
                        f"undecided at precision {current} (cap {cap}): {exc}",
                        suggested_precision=current * 2,
                    ) from exc
                logger.debug("classify p=%s k=%s a=%s: retrying at precision %s", p, k, a, current * 2)
                current *= 2

    @classmethod
    def _classify_at(cls, p: int, k: int, a: ASpec, precision: int) -> ClassificationResult:
        x = a.element(precision)
        va = x.valuation()
        if not va.exact:
            raise PrecisionError(f"v(a) is not visible at precision {precision}", suggested_precision=2 * precision)
        if not 0 < va.value < 1:
            raise DomainError(f"v(a) = {va.value} is outside (0, 1)")

        t = cls.t_exponent(p, k)
        discriminant = x * x - (k - 2) * p
        diagnostics = {
            "v_a": str(va.value),
            "v_k_minus_3": None if k == 3 else int_valuation(k - 3, p),
            "v_a2_minus_kp": discriminant.valuation().to_json(),
            "exceptional_weight": cls.is_exceptional_weight(p, k),
        }

        if not cls.is_exceptional_weight(p, k):
            note = TWIST_NOTE if (k - 3) % (p - 1) == 0 else None
            return ClassificationResult(p, k, a, Variant.IRREDUCIBLE, t=t, precision=precision, diagnostics=diagnostics, note=note)

        bound = int_valuation(k - 3, p) + 1 + va.value
        diagnostics["bound"] = str(bound)
        reducible = PadicService.valuation_at_least(discriminant.valuation(), bound)
        diagnostics["branch_condition"] = reducible
        if not reducible:
            return ClassificationResult(
                p, k, a, Variant.IRREDUCIBLE, t=t, precision=precision, diagnostics=diagnostics, note=TWIST_NOTE
            )

        try:
            tau = PadicService.ram_divide(-discriminant, x * (p * (k - 3)))
        except DomainError as exc:
            raise IntegralityFailure(f"τ is not integral on the reducible branch: {exc}") from exc
        trace = PadicService.residue(tau)
        diagnostics["tau"] = list(tau.coeffs)
        logger.debug("classify p=%s k=%s a=%s: reducible, trace %s", p, k, a, trace)
        return ClassificationResult(p, k, a, Variant.REDUCIBLE, trace=trace, precision=precision, diagnostics=diagnostics)

    # ------------------------------------------------------------------
    # İstisnai diskler
    # ------------------------------------------------------------------

    @classmethod
    def exceptional_discs(
        cls, p: int, k: int, precision: int | None = None, require_centres: bool = False
    ) -> ExceptionalDiscs | None:
        cls._check_weight(p, k)
        if not cls.is_exceptional_weight(p, k) or (k - 2) % p == 0:
            return None
        radius = 1 + int_valuation(k - 3, p)
        precision = precision or 2 * (radius + 4)
        try:
            root = PadicService.sqrt_unit_times_p(k - 2, p, precision)
        except DomainError:
            discs = ExceptionalDiscs(p, k, radius)
            if require_centres:
                raise NonSquareCentre(f"{k - 2} is not a square modulo {p}", discs=discs)
            return discs
        return ExceptionalDiscs(p, k, radius, (root, -root))

    @staticmethod
    def in_exceptional_disc(discs: ExceptionalDiscs, a: RamifiedElement) -> bool:
        """
        a disklerden birinde mi. O_e üzerindeki elemanlar O₂ merkezleriyle
        O_L içinde karşılaştırılır, L = lcm(e, 2).
        """
        if a.p != discs.p:
            raise RingMismatch(f"a is over p = {a.p}, discs over p = {discs.p}")
        L = math.lcm(a.e, 2)
        x = a.embed(L) if a.e != L else a

        if discs.centres is None:
            va = x.valuation()
            square = x * x - (discs.k - 2) * discs.p
            return PadicService.valuation_at_least(square.valuation(), Fraction(discs.radius_exponent) + va.value)

        undecided = None
        for centre in discs.centres:
            c = centre.embed(L) if L != 2 else centre
            try:
                if PadicService.valuation_at_least((x - c).valuation(), discs.radius_exponent):
                    return True
            except PrecisionError as exc:
                undecided = exc
        if undecided is not None:
            raise undecided
        return False

    # ------------------------------------------------------------------
    # Taramalar
    # ------------------------------------------------------------------

    @classmethod
    def sweep(
        cls, p: int, k: int, grid: list[ASpec], precision: int | None = None, parallelism: int | None = None
    ) -> SweepTable:
        """Her grid noktasında classify(); hatalar error satırına dönüşür."""
        workers = parallelism or SystemSetting.get("PARALLELISM", default=1)
        jobs = [(index, p, k, spec, precision) for index, spec in enumerate(grid)]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(_sweep_point, jobs))
        else:
            rows = [_sweep_point(job) for job in jobs]
        table = SweepTable(p, k, tuple(rows))
        logger.info("sweep p=%s k=%s: %s points, %s", p, k, len(rows), table.summary)
        return table


def _sweep_point(job) -> SweepRow:
    index, p, k, spec, precision = job
    try:
        return SweepRow(index, spec, result=ClassifierService.classify(p, k, spec, precision))
    except CrysredError as exc:
        logger.debug("sweep point %s (%s) failed: %s", index, spec, exc)
        return SweepRow(index, spec, error={"error": type(exc).__name__, "detail": str(exc)})
    except Exception as exc:
        logger.exception("sweep point %s (%s) failed unexpectedly", index, spec)
        return SweepRow(index, spec, error={"error": type(exc).__name__, "detail": str(exc)})
