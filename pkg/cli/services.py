# =============================================================================
# cli/services.py
#
# Django App: cli
# Bağımlılıklar: config.SystemSetting, rest_framework (JSONRenderer)
#
# RunConfig     tek bir çalıştırmanın parse edilmiş komut satırı (artı --config dosyası)
# RenderService sonuçların, raporların ve induction elemanlarının json / table çıktısı
#
# JSON modu tek sonuç için tek bir kompakt nesne, akışlar (verify) için öğe
# başına bir satır yazar. Table modu aynı veriyi okunur biçimde gösterir.
# =============================================================================

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from rest_framework.renderers import JSONRenderer

from config.models import SystemSetting
from core.exceptions import UsageError

logger = logging.getLogger(__name__)

FORMATS = ("json", "table")

# flag adı → SystemSetting anahtarı
SETTING_FLAGS = {
    "precision": "PRECISION",
    "parallelism": "PARALLELISM",
    "format": "OUTPUT_FORMAT",
}


def parse_digits(raw: str, what: str = "unit") -> list[int]:
    """"4,3" → [4, 3]."""
    try:
        digits = [int(d) for d in raw.replace(" ", "").split(",") if d != ""]
    except ValueError as exc:
        raise UsageError(f"{what} digits must be integers separated by commas, got {raw!r}") from exc
    if not digits:
        raise UsageError(f"{what} digit list is empty")
    return digits


def serializer_errors(errors) -> str:
    """DRF hata dict'i → tek satır."""
    if isinstance(errors, dict):
        return "; ".join(f"{key}: {serializer_errors(value)}" for key, value in errors.items())
    if isinstance(errors, list):
        return ", ".join(serializer_errors(value) for value in errors)
    return str(errors)


@dataclass(frozen=True)
class RunConfig:
    """
    Tek bir komut çağrısının ihtiyaç duyduğu her şey.

    Flag'ler --config dosyasını ezer. settings() etkinken ikisi de ortam
    değişkenlerinin ve settings.CRYSRED'in önündedir.
    """

    command: str
    p: int | None = None
    k: int | None = None
    r: int | None = None
    e: int = 1
    units: tuple[str, ...] = ()
    shifts: tuple[int, ...] = (0,)
    precision: int | None = None
    output_format: str | None = None
    parallelism: int | None = None
    statement: str | None = None
    suite: str | None = None
    timing: bool = True
    drop_block: int | None = None
    n_max: int | None = None
    config_path: str | None = None
    file_values: dict = field(default_factory=dict)

    @classmethod
    def from_options(cls, command: str, options: dict) -> RunConfig:
        config_path = options.get("config")
        file_values = SystemSetting.read_file(config_path) if config_path else {}

        units = options.get("unit") or ()
        if isinstance(units, str):
            units = (units,)
        shifts = options.get("shift")
        if shifts is None or shifts == []:
            shifts = (0,)
        elif isinstance(shifts, int):
            shifts = (shifts,)

        output_format = options.get("format")
        if output_format is not None and output_format not in FORMATS:
            raise UsageError(f"unknown output format {output_format!r}; use one of {', '.join(FORMATS)}")

        return cls(
            command=command,
            p=options.get("p"),
            k=options.get("k"),
            r=options.get("r"),
            e=options.get("e") or 1,
            units=tuple(units),
            shifts=tuple(shifts),
            precision=options.get("precision"),
            output_format=output_format,
            parallelism=options.get("parallelism"),
            statement=options.get("statement"),
            suite=options.get("suite"),
            timing=not options.get("no_timing", False),
            drop_block=options.get("drop_block"),
            n_max=options.get("n_max"),
            config_path=config_path,
            file_values=file_values,
        )

    def settings(self) -> dict:
        """SystemSetting.overrides() için override katmanı."""
        values = dict(self.file_values)
        for flag, key in SETTING_FLAGS.items():
            value = getattr(self, "output_format" if flag == "format" else flag)
            if value is not None:
                values[key] = value
        return values

    @property
    def shift(self) -> int:
        return self.shifts[0]

    def require(self, *names: str) -> None:
        missing = [f"--{name}" for name in names if getattr(self, name) is None]
        if missing:
            raise UsageError(f"{self.command}: missing {', '.join(missing)}")

    def resolved_format(self) -> str:
        fmt = SystemSetting.get("OUTPUT_FORMAT", default="json")
        if fmt not in FORMATS:
            raise UsageError(f"unknown output format {fmt!r}; use one of {', '.join(FORMATS)}")
        return fmt

    def resolved_precision(self) -> int | None:
        return SystemSetting.get("PRECISION", default=0) or None


class RenderService:
    """Management command'ları için metin çıktısı; hiçbir şey hesaplamaz."""

    renderer = JSONRenderer()

    @classmethod
    def json_line(cls, payload) -> str:
        return cls.renderer.render(payload).decode("utf-8")

    # ------------------------------------------------------------------
    # Tablolar
    # ------------------------------------------------------------------

    @staticmethod
    def _columns(header: list[str], rows: list[list]) -> list[str]:
        cells = [[str(c) for c in header]] + [["" if c is None else str(c) for c in row] for row in rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
        return ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]

    @staticmethod
    def classification_table(body: dict) -> list[str]:
        lines = [f"variant    {body['variant']}"]
        if body["t"] is not None:
            lines.append(f"t          {body['t']}")
        if body["trace"] is not None:
            lines.append(f"trace      {body['trace']}")
        lines.append(f"precision  {body['precision']}")
        for key, value in body["diagnostics"].items():
            if isinstance(value, dict):
                value = value["value"] + ("" if value.get("exact", True) else " (lower bound)")
            lines.append(f"  {key}: {value}")
        if body["note"]:
            lines.append(f"note: {body['note']}")
        return lines

    @classmethod
    def sweep_table(cls, body: dict) -> list[str]:
        rows = []
        for row in body["rows"]:
            result = row.get("result") or {}
            rows.append(
                [
                    row["index"],
                    ",".join(str(d) for d in row["a"]["unit"]),
                    row["a"]["shift"],
                    row["status"],
                    result.get("t"),
                    result.get("trace"),
                    (row.get("error") or {}).get("detail"),
                ]
            )
        lines = cls._columns(["#", "unit", "shift", "status", "t", "trace", "error"], rows)
        summary = body["summary"]
        lines.append(" ".join(f"{key}={value}" for key, value in summary.items()))
        return lines

    @classmethod
    def report_table(cls, reports: list[dict]) -> list[str]:
        rows = []
        for report in reports:
            witness = report["witness"]
            rows.append(
                [
                    report["statement"],
                    "pass" if report["pass"] else "FAIL",
                    report.get("ms"),
                    "" if witness is None else cls.json_line(witness),
                ]
            )
        lines = cls._columns(["statement", "result", "ms", "witness"], rows)
        failed = sum(1 for report in reports if not report["pass"])
        lines.append(f"{len(reports) - failed}/{len(reports)} passed")
        return lines

    @classmethod
    def element_table(cls, body: dict) -> list[str]:
        ring = body["ring"]
        rows = [
            [term["m"], term["low"], ",".join(str(d) for d in term["c_digits"]), cls.json_line(term["poly"])]
            for term in body["terms"]
        ]
        header = f"{ring['kind']} p={ring['p']} e={ring['e']} P={ring['P']} degree={body['degree']}"
        return [header] + cls._columns(["m", "low", "c", "poly"], rows) + [f"{len(rows)} terms"]
