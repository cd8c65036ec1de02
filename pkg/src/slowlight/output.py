"""CSV tables, gnuplot scripts and the sha256 manifest.

Every data file is a CSV with a header row; floats are written with
``repr`` so reruns are byte-identical.  Each figure gets a gnuplot script
(``gnuplot fig3.gp`` renders ``fig3.png``).  ``manifest.sha256`` lists every
written file in ``sha256sum`` format and can be checked with
``sha256sum -c manifest.sha256``.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass
from pathlib import Path

from .errors import OutputError

MANIFEST = "manifest.sha256"


@dataclass(frozen=True)
class Table:
    name: str
    columns: tuple
    rows: tuple
    plot: str | None = None  # gnuplot script text

    def csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()


def _fmt(value):
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, float):
        return repr(value)
    return value


def sweep_table(rows, name="sweep") -> Table:
    body = tuple((r.power * 1e3, r.omega / (2 * 3.141592653589793), r.T_g, r.v_g,
                  r.transmission, r.opaque, r.error) for r in rows)
    plot = f"""\
set terminal pngcairo size 800,500
set output '{name}.png'
set datafile separator ','
set key autotitle columnhead
set logscale x
set xlabel 'drive power (mW)'
set ylabel 'group delay (ms)'
set y2label 'average group velocity (m/s)'
set ytics nomirror
set y2tics
plot '{name}.csv' using 1:($3*1e3) with linespoints pt 7 title 'delay', \\
     '' using 1:4 axes x1y2 with linespoints pt 6 title 'average v_g'
"""
    return Table(name, ("power_mw", "rabi_2pi_hz", "delay_s", "vg_avg_m_s", "transmission",
                        "opaque", "error"), body, plot)


def fig3_table(result, name="fig3") -> Table:
    labels = sorted(result.curves)
    columns = ("power_mw",) + tuple(f"vg_{k}" for k in labels) + tuple(f"opaque_{k}" for k in labels)
    body = []
    for i, p in enumerate(result.powers):
        body.append((p * 1e3,) + tuple(result.curves[k][i].v_g for k in labels)
                    + tuple(result.curves[k][i].opaque for k in labels))
    lines = ", \\\n     ".join(
        f"'{name}.csv' using 1:{2 + j} with lines title '({k}) {result.descriptions[k]}'"
        for j, k in enumerate(labels))
    plot = f"""\
set terminal pngcairo size 800,500
set output '{name}.png'
set datafile separator ','
set logscale xy
set xlabel 'drive power (mW)'
set ylabel 'group velocity (m/s)'
plot {lines}
"""
    return Table(name, columns, tuple(body), plot)


def beat_table(spectrum, name="beat") -> Table:
    body = tuple((p.frequency, p.power, ";".join("x".join(pair) for pair in p.contributors))
                 for p in spectrum.peaks)
    plot = f"""\
set terminal pngcairo size 800,500
set output '{name}.png'
set datafile separator ','
set xlabel 'beat frequency (GHz)'
set ylabel 'power (arb., linear)'
plot '{name}.csv' using ($1/1e9):2 with impulses lw 3 notitle
"""
    return Table(name, ("freq_hz", "power", "contributors"), body, plot)


def fit_table(result, name="fit") -> Table:
    units = {"gamma_bc": "rad/s", "rabi_cal": "Hz/sqrt(mW/cm^2)", "N": "m^-3"}
    body = [(k, v, units[k]) for k, v in sorted(result.params.items())]
    body += [("residual_norm", result.residual_norm, ""),
             ("iterations", result.iterations, ""),
             ("converged", result.converged, "")]
    return Table(name, ("parameter", "value", "unit"), tuple(body))


def _write(path: Path, text: str) -> str:
    data = text.encode("utf-8")
    try:
        path.write_bytes(data)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from None
    return hashlib.sha256(data).hexdigest()


def export_outputs(results, output_dir) -> list[tuple[str, str]]:
    """Write each :class:`Table` (and its plot script) and return ``(file, sha256)`` pairs.

    The manifest itself is written last and is not part of the returned list.
    """
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create output directory {out}: {exc}") from None
    manifest = []
    for table in results:
        fname = f"{table.name}.csv"
        manifest.append((fname, _write(out / fname, table.csv_text())))
        if table.plot:
            gname = f"{table.name}.gp"
            manifest.append((gname, _write(out / gname, table.plot)))
    _write(out / MANIFEST, "".join(f"{digest}  {fname}\n" for fname, digest in manifest))
    return manifest
