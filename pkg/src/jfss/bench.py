"""Benchmark: encrypting only selected files vs encrypting everything.

Each trial runs the real encrypt_file pipeline on a fresh copy of the
workload tree with its own key directory, so filesystem caching and key
placement costs are paid identically by both modes. Trials are strictly
sequential; wall-clock medians are reported.
"""

import random
import shutil
import statistics
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from .auth import Session
from .errors import InvalidSelection
from .keystore import KeystoreConfig
from .vault import encrypt_file

MIN_REPEATS = 3
_MIB = 1024 * 1024


@dataclass(frozen=True)
class BenchReport:
    total_files: int
    total_bytes: int
    selected_files: int
    selected_bytes: int
    t_selective: float
    t_full: float
    selective_mib_s: float
    full_mib_s: float
    ratio: float


def generate_workload(
    directory: Path, n_files: int, size_each: int, seed: int = 0
) -> list[Path]:
    """Populate a directory with n_files random files of size_each bytes.

    Deterministic for a fixed seed. The directory is created if missing
    and must be empty.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    if any(directory.iterdir()):
        raise FileExistsError(f"workload directory {directory} is not empty")
    rng = random.Random(seed)
    paths = []
    for i in range(n_files):
        path = directory / f"file_{i:04d}.bin"
        path.write_bytes(rng.randbytes(size_each))
        paths.append(path)
    return paths


def _timed_encrypt_trial(session: Session, workload_dir: Path, k: int) -> float:
    """Encrypt the first k files of a fresh copy of the workload; return seconds."""
    with tempfile.TemporaryDirectory(prefix="jfss-bench-") as tmp:
        tree = Path(tmp) / "tree"
        shutil.copytree(workload_dir, tree)
        cfg = KeystoreConfig(card_path=Path(tmp) / "card")
        cfg.card_path.mkdir()
        chosen = sorted(p for p in tree.iterdir() if p.is_file())[:k]
        start = time.perf_counter()
        for path in chosen:
            encrypt_file(session, path, cfg)
        return time.perf_counter() - start


def measure_fixed_overhead(session: Session, repeats: int = 5) -> float:
    """Median seconds to encrypt a single empty file (per-file fixed cost)."""
    times = []
    for _ in range(repeats):
        with tempfile.TemporaryDirectory(prefix="jfss-cal-") as tmp:
            src = Path(tmp) / "empty.bin"
            src.write_bytes(b"")
            cfg = KeystoreConfig(card_path=Path(tmp) / "card")
            cfg.card_path.mkdir()
            start = time.perf_counter()
            encrypt_file(session, src, cfg)
            times.append(time.perf_counter() - start)
    return statistics.median(times)


def run_benchmark(
    session: Session,
    workload_dir: Path,
    select_k: int,
    repeats: int = 5,
) -> BenchReport:
    """Time encrypting select_k files vs all files; median of repeats.

    Raises:
        InvalidSelection: repeats < 3, empty workload, or select_k out of
        range.
    """
    if repeats < MIN_REPEATS:
        raise InvalidSelection(f"repeats must be >= {MIN_REPEATS}, got {repeats}")
    workload_dir = Path(workload_dir)
    files = sorted(p for p in workload_dir.iterdir() if p.is_file())
    if not files:
        raise InvalidSelection(f"no workload files in {workload_dir}")
    if not 0 < select_k <= len(files):
        raise InvalidSelection(
            f"select_k must be in 1..{len(files)}, got {select_k}"
        )
    total_bytes = sum(p.stat().st_size for p in files)
    selected_bytes = sum(p.stat().st_size for p in files[:select_k])

    t_sel_runs, t_full_runs = [], []
    for _ in range(repeats):
        t_sel_runs.append(_timed_encrypt_trial(session, workload_dir, select_k))
        t_full_runs.append(_timed_encrypt_trial(session, workload_dir, len(files)))
    t_selective = statistics.median(t_sel_runs)
    t_full = statistics.median(t_full_runs)

    return BenchReport(
        total_files=len(files),
        total_bytes=total_bytes,
        selected_files=select_k,
        selected_bytes=selected_bytes,
        t_selective=t_selective,
        t_full=t_full,
        selective_mib_s=(selected_bytes / _MIB) / t_selective if t_selective else 0.0,
        full_mib_s=(total_bytes / _MIB) / t_full if t_full else 0.0,
        ratio=t_selective / t_full,
    )


def format_report(report: BenchReport, raw: bool = False) -> str:
    """Render a report as aligned columns, optionally plus key=value lines."""
    rows = [
        ("files (selected/total)", f"{report.selected_files}/{report.total_files}"),
        (
            "bytes (selected/total)",
            f"{report.selected_bytes}/{report.total_bytes}",
        ),
        ("t_selective", f"{report.t_selective:.4f} s"),
        ("t_full", f"{report.t_full:.4f} s"),
        ("selective throughput", f"{report.selective_mib_s:.2f} MiB/s"),
        ("full throughput", f"{report.full_mib_s:.2f} MiB/s"),
        ("ratio (selective/full)", f"{report.ratio:.4f}"),
    ]
    width = max(len(label) for label, _ in rows)
    lines = [f"{label:<{width}}  {value}" for label, value in rows]
    if raw:
        lines.append("")
        for field in (
            "total_files",
            "total_bytes",
            "selected_files",
            "selected_bytes",
            "t_selective",
            "t_full",
            "selective_mib_s",
            "full_mib_s",
            "ratio",
        ):
            lines.append(f"{field}={getattr(report, field)}")
    return "\n".join(lines)
