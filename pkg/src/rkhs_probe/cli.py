"""Command line front end: reproducible experiment reports as CSV/JSON plus
a rendered PNG per command.

Subcommands: variance-seq, determinacy, krige, membership,
closed-form-check.  Every run writes its delimited output, a figure, and a
manifest with the config hash, library version, per-stage precision and
wall time.  CSV/JSON outputs are byte-deterministic for identical configs;
the manifest's wall times and the PNG bytes are not part of that contract.

Exit codes: 0 success, 2 precision exhaustion or a singular kernel matrix,
3 configuration or validation errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import mpmath as mp

from . import __version__
from .errors import (ConfigError, DegenerateError, DomainError, LengthError,
                     ParameterError, PrecisionError, SingularKernelError,
                     UnsupportedFamilyError)
from .gp import (Kernel, confidence_bands, equispaced_design,
                 evaluate_test_function, krige, membership_diagnostic,
                 offset_gaussian, offset_parabola, polynomial_function,
                 reproducing_element)
from .hankel import blue_variance_seq
from .moments import SpectralFamily, determinacy_indicators, even_moments
from .scalars import (DEFAULT_BITS, PRECISION_CEILING_BITS, ExactScalar,
                      format_rational, parse_rational)

N_MAX_CAP = 64
DESIGN_CAP = 200
SERIES_CAP = 1024
GRID_DEFAULT = 1001
GRID_CAP = 100001

_ALLOWED_KEYS = {
    "variance-seq": {"family", "n_max", "cap"},
    "determinacy": {"family", "N", "cap"},
    "krige": {"kernel", "sigma2", "domain", "N", "function", "grid_size",
              "band_variant", "cap"},
    "membership": {"kernel", "sigma2", "domain", "N_schedule", "function", "cap"},
    "closed-form-check": {"family", "n_max", "cap"},
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on its own; route usage problems to the
    # config-error path (exit 3) instead
    def error(self, message):
        raise ConfigError(message)


def _add_common(parser):
    parser.add_argument("--config", default=argparse.SUPPRESS,
                        help="JSON config file; inline flags override its keys")
    parser.add_argument("--out", default=argparse.SUPPRESS,
                        help="output directory, or a .csv/.json path fixing the file stem")
    parser.add_argument("--precision-start", type=int, default=argparse.SUPPRESS,
                        metavar="BITS", help="starting solve precision (default 256)")
    parser.add_argument("--band-variant", choices=("paper", "standard"),
                        default=argparse.SUPPRESS,
                        help="band half-width rule: factor*s2*C as printed, or factor*sqrt(s2*C)")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rkhs-probe",
                description="moment-determinacy, BLUE-variance and kriging diagnostics "
                            "for smooth stationary kernels")
    _add_common(p)
    p.set_defaults(config=None, out=None, precision_start=None, band_variant=None)
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    sp = sub.add_parser("variance-seq", parents=[], help="H_n/G_n variance sequence of a family")
    _add_common(sp)
    sp.add_argument("--family", help="spectral family JSON")
    sp.add_argument("--n-max", type=int, dest="n_max")

    sp = sub.add_parser("determinacy", help="Carleman sums and growth-rate label")
    _add_common(sp)
    sp.add_argument("--family", help="spectral family JSON")
    sp.add_argument("--N", type=int, dest="N")

    sp = sub.add_parser("krige", help="kriging fit, bands and deviation summary")
    _add_common(sp)
    sp.add_argument("--kernel", help="kernel JSON")
    sp.add_argument("--N", type=int, dest="N")
    sp.add_argument("--function", help='"f1", "f2", "repro:<x0>" or {"poly": [...]}')
    sp.add_argument("--grid-size", type=int, dest="grid_size")

    sp = sub.add_parser("membership", help="N*sigma2_hat trace and verdict")
    _add_common(sp)
    sp.add_argument("--kernel", help="kernel JSON")
    sp.add_argument("--function", help='"f1", "f2", "repro:<x0>" or {"poly": [...]}')
    sp.add_argument("--N-schedule", dest="N_schedule",
                    help="comma-separated increasing design sizes")

    sp = sub.add_parser("closed-form-check", help="determinant vs closed-form residuals")
    _add_common(sp)
    sp.add_argument("--family", help="spectral family JSON")
    sp.add_argument("--n-max", type=int, dest="n_max")
    return p


def _load_config_file(path: Optional[str]) -> Dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path} must contain a JSON object")
    return doc


def _merge_config(args) -> Dict:
    cfg = _load_config_file(args.config)
    inline = {}
    for key in ("family", "kernel", "function", "n_max", "N", "grid_size",
                "N_schedule"):
        val = getattr(args, key, None)
        if val is not None:
            inline[key] = val
    cfg = {**cfg, **inline}
    allowed = _ALLOWED_KEYS[args.command]
    unknown = set(cfg) - allowed
    if unknown:
        raise ConfigError(
            f"unknown config keys for {args.command}: {sorted(unknown)} "
            f"(allowed: {sorted(allowed)})")
    return cfg


def _as_json_doc(value, what: str) -> Dict:
    if isinstance(value, dict):
        return value
    if isinstance(value, str):
        try:
            doc = json.loads(value)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{what} is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError(f"{what} must be a JSON object")
        return doc
    raise ConfigError(f"{what} must be a JSON object or a JSON string")


def _get_family(cfg) -> SpectralFamily:
    if "family" not in cfg:
        raise ConfigError("missing required key: family")
    try:
        return SpectralFamily.from_json_dict(_as_json_doc(cfg["family"], "family"))
    except (ParameterError, DomainError) as exc:
        raise ConfigError(f"bad family: {exc}") from exc


def _get_kernel(cfg) -> Kernel:
    if "kernel" not in cfg:
        raise ConfigError("missing required key: kernel")
    try:
        kernel = Kernel.from_json_dict(_as_json_doc(cfg["kernel"], "kernel"))
        if "sigma2" in cfg:
            kernel = kernel.with_sigma2(parse_rational(cfg["sigma2"]))
        return kernel
    except (ParameterError, DomainError, ValueError) as exc:
        raise ConfigError(f"bad kernel: {exc}") from exc


def _get_int(cfg, key, default=None, lo=None, hi=None, cap_key=None):
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing required key: {key}")
        value = default
    else:
        value = cfg[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    if lo is not None and value < lo:
        raise ConfigError(f"{key} must be >= {lo}, got {value}")
    cap = hi
    if cap_key is not None and "cap" in cfg:
        cap_val = cfg["cap"]
        if isinstance(cap_val, bool) or not isinstance(cap_val, int) or cap_val < 1:
            raise ConfigError(f"cap must be a positive integer, got {cap_val!r}")
        cap = cap_val
    if cap is not None and value > cap:
        raise ConfigError(f"{key} = {value} exceeds the cap {cap} "
                          f"(raise it with the 'cap' config key)")
    return value


def _get_domain(cfg) -> Tuple[Fraction, Fraction]:
    dom = cfg.get("domain", ["0", "1"])
    if not (isinstance(dom, (list, tuple)) and len(dom) == 2):
        raise ConfigError(f"domain must be a two-element list, got {dom!r}")
    try:
        a, b = parse_rational(dom[0]), parse_rational(dom[1])
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad domain endpoint: {exc}") from exc
    if not a < b:
        raise ConfigError(f"domain must satisfy a < b, got [{a}, {b}]")
    return a, b


def _get_schedule(cfg) -> List[int]:
    if "N_schedule" not in cfg:
        raise ConfigError("missing required key: N_schedule")
    raw = cfg["N_schedule"]
    if isinstance(raw, str):
        parts = [p.strip() for p in raw.split(",") if p.strip()]
        try:
            raw = [int(p) for p in parts]
        except ValueError as exc:
            raise ConfigError(f"bad N_schedule: {exc}") from exc
    if not (isinstance(raw, list) and raw and
            all(isinstance(n, int) and not isinstance(n, bool) for n in raw)):
        raise ConfigError(f"N_schedule must be a list of integers, got {raw!r}")
    cap = DESIGN_CAP
    if "cap" in cfg:
        cap = _get_int(cfg, "cap", lo=1)
    if any(n > cap for n in raw):
        raise ConfigError(f"N_schedule entries exceed the cap {cap}")
    if len(raw) < 2 or any(b <= a for a, b in zip(raw, raw[1:])) or raw[0] < 2:
        raise ConfigError("N_schedule must be at least two strictly increasing sizes >= 2")
    return raw


def _get_function(cfg, kernel: Optional[Kernel]) -> Tuple[Callable, str]:
    if "function" not in cfg:
        raise ConfigError("missing required key: function")
    form = cfg["function"]
    if isinstance(form, str) and form.lstrip().startswith("{"):
        form = _as_json_doc(form, "function")
    if isinstance(form, str):
        if form == "f1":
            return offset_gaussian, "f1"
        if form == "f2":
            return offset_parabola, "f2"
        if form.startswith("repro:"):
            if kernel is None:
                raise ConfigError("repro:<x0> needs a kernel")
            try:
                x0 = parse_rational(form[len("repro:"):])
            except (ValueError, TypeError) as exc:
                raise ConfigError(f"bad reproducing-element point: {exc}") from exc
            return reproducing_element(kernel, x0), form
        raise ConfigError(
            f'unknown function {form!r} (use "f1", "f2", "repro:<x0>" or {{"poly": [...]}})')
    if isinstance(form, dict):
        if set(form) != {"poly"}:
            raise ConfigError(f'function object must have the single key "poly", got {sorted(form)}')
        coeffs = form["poly"]
        if not isinstance(coeffs, list) or not coeffs:
            raise ConfigError("poly coefficients must be a non-empty list")
        try:
            fn = polynomial_function(coeffs)
        except (ValueError, TypeError, ParameterError) as exc:
            raise ConfigError(f"bad poly coefficients: {exc}") from exc
        return fn, "poly[" + ",".join(format_rational(parse_rational(c)) for c in coeffs) + "]"
    raise ConfigError(f"cannot interpret function value {form!r}")


def _start_bits(args) -> int:
    bits = args.precision_start if args.precision_start is not None else DEFAULT_BITS
    if not (8 <= bits <= PRECISION_CEILING_BITS):
        raise ConfigError(
            f"--precision-start must lie in [8, {PRECISION_CEILING_BITS}], got {bits}")
    return bits


def _resolve_out(out_arg: Optional[str], command: str) -> Tuple[Path, str]:
    stem = command.replace("-", "_")
    if out_arg is None:
        return Path("."), stem
    p = Path(out_arg)
    if p.suffix in (".csv", ".json"):
        parent = p.parent if str(p.parent) else Path(".")
        return parent, p.stem
    return p, stem


class _Stages:
    def __init__(self):
        self.wall: Dict[str, float] = {}
        self.bits: Dict[str, object] = {}

    def run(self, name: str, fn: Callable, bits=None):
        t0 = time.perf_counter()
        out = fn()
        self.wall[name] = time.perf_counter() - t0
        if bits is not None:
            self.bits[name] = bits
        return out


def _config_sha256(resolved: Dict) -> str:
    canon = json.dumps(resolved, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def _write_text(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _write_json(path: Path, doc: Dict):
    _write_text(path, json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _write_manifest(outdir: Path, stem: str, command: str, resolved_cfg: Dict,
                    stages: _Stages, outputs: List[Path]):
    doc = {
        "command": command,
        "version": __version__,
        "config_sha256": _config_sha256(resolved_cfg),
        "precision_bits": stages.bits,
        "wall_time_s": {k: round(v, 6) for k, v in stages.wall.items()},
        "outputs": [p.name for p in outputs],
    }
    _write_json(outdir / f"{stem}_manifest.json", doc)


def _scalar_text(x: Optional[ExactScalar]) -> Optional[str]:
    return None if x is None else x.to_text()


def cmd_variance_seq(args) -> int:
    from . import plots
    cfg = _merge_config(args)
    fam = _get_family(cfg)
    n_max = _get_int(cfg, "n_max", default=16, lo=0, hi=N_MAX_CAP, cap_key="cap")
    outdir, stem = _resolve_out(args.out, args.command)
    stages = _Stages()

    b = stages.run("moments", lambda: even_moments(fam, 2 * n_max), bits="exact")
    report = stages.run("variance", lambda: blue_variance_seq(b, n_max),
                        bits="exact" if b.kind == "exact" else None)

    csv_path = outdir / f"{stem}.csv"
    _write_text(csv_path, report.to_csv_text())
    summary = {
        "family": fam.to_json_dict(),
        "n_max": n_max,
        "kind": report.kind,
        "limit_flag": report.limit_flag,
        "final_variance": report.entries[-1].var.to_text(),
        "closed_form_available": any(e.closed_form is not None for e in report.entries),
    }
    sum_path = outdir / f"{stem}_summary.json"
    _write_json(sum_path, summary)
    png_path = outdir / f"{stem}.png"
    stages.run("render", lambda: plots.save_variance_plot(
        [e.n for e in report.entries],
        [float(e.var) for e in report.entries],
        str(png_path),
        closed_forms=[None if e.closed_form is None else float(e.closed_form)
                      for e in report.entries],
        title=f"BLUE variance, {fam.label()}"))
    resolved = {"command": args.command, "family": fam.to_json_dict(), "n_max": n_max}
    _write_manifest(outdir, stem, args.command, resolved, stages,
                    [csv_path, sum_path, png_path])
    return 0


def cmd_determinacy(args) -> int:
    from . import plots
    cfg = _merge_config(args)
    fam = _get_family(cfg)
    N = _get_int(cfg, "N", default=256, lo=16, hi=SERIES_CAP, cap_key="cap")
    bits = _start_bits(args)
    outdir, stem = _resolve_out(args.out, args.command)
    stages = _Stages()

    b = stages.run("moments", lambda: even_moments(fam, N), bits="exact")
    rep = stages.run("indicators", lambda: determinacy_indicators(b, N, bits=bits),
                     bits=bits)

    doc = {
        "family": fam.to_json_dict(),
        "N": N,
        "carleman_partial_sums": [s.to_text() for s in rep.carleman_partial_sums],
        "carleman_rate_label": rep.carleman_rate_label,
        "fit_residuals": rep.fit_residuals,
        "a4_sequence": list(rep.a4_sequence),
        "a4_bounded": rep.a4_bounded,
        "verdict": rep.verdict,
    }
    json_path = outdir / f"{stem}.json"
    _write_json(json_path, doc)
    png_path = outdir / f"{stem}.png"
    ns = list(range(1, N + 1))
    stages.run("render", lambda: plots.save_determinacy_plot(
        ns, [float(s) for s in rep.carleman_partial_sums],
        ns, list(rep.a4_sequence), str(png_path),
        verdict=f"{fam.label()}: {rep.verdict}, rate {rep.carleman_rate_label}"))
    resolved = {"command": args.command, "family": fam.to_json_dict(), "N": N,
                "precision_start": bits}
    _write_manifest(outdir, stem, args.command, resolved, stages, [json_path, png_path])
    return 0


def _band_variant(args, cfg) -> str:
    variant = args.band_variant or cfg.get("band_variant", "paper")
    if variant not in ("paper", "standard"):
        raise ConfigError(f"band_variant must be 'paper' or 'standard', got {variant!r}")
    return variant


def _f_text(v) -> str:
    if isinstance(v, ExactScalar):
        return v.to_text()
    if isinstance(v, (int, Fraction)):
        return format_rational(Fraction(v))
    return ExactScalar.hp(v, DEFAULT_BITS).to_text()


def cmd_krige(args) -> int:
    from . import plots
    cfg = _merge_config(args)
    kernel = _get_kernel(cfg)
    N = _get_int(cfg, "N", lo=1, hi=DESIGN_CAP, cap_key="cap")
    domain = _get_domain(cfg)
    grid_size = _get_int(cfg, "grid_size", default=GRID_DEFAULT, lo=2, hi=GRID_CAP)
    variant = _band_variant(args, cfg)
    f, f_label = _get_function(cfg, kernel)
    bits = _start_bits(args)
    outdir, stem = _resolve_out(args.out, args.command)
    stages = _Stages()

    design = equispaced_design(domain, N)
    f_vals = [evaluate_test_function(f, p, bits) for p in design.points]
    a, bnd = domain
    step = (bnd - a) / (grid_size - 1)
    grid = [a + k * step for k in range(grid_size)]

    means, cvars, fit = stages.run(
        "solve", lambda: krige(kernel, design, f_vals, grid, start_bits=bits))
    stages.bits["solve"] = fit.solve_precision
    bands = stages.run("bands", lambda: confidence_bands(fit, grid, factor=3,
                                                         variant=variant),
                       bits=fit.solve_precision)

    wp = fit.solve_precision
    with mp.workprec(wp):
        f_grid = [evaluate_test_function(f, q, bits) for q in grid]
        fg = [v.to_mpf(wp) if isinstance(v, ExactScalar)
              else mp.mpf(Fraction(v).numerator) / Fraction(v).denominator
              for v in f_grid]
        mu = [m.to_mpf(wp) for m in means]
        halves = [(hi.to_mpf(wp) - lo.to_mpf(wp)) / 2 for lo, hi in bands]
        devs = [abs(m - v) for m, v in zip(mu, fg)]
        dev_mean = mp.fsum(devs) / len(devs)
        half_mean = mp.fsum(halves) / len(halves)
        ratio = float(dev_mean / half_mean) if half_mean > 0 else float("inf")
        # per-point ratios only where the band carries real width (design
        # points have half-widths at rounding level)
        floor = max(halves) * mp.mpf("1e-6")
        pts = [(d / h) for d, h in zip(devs, halves) if h > floor]
        pointwise = float(mp.fsum(pts) / len(pts)) if pts else None

    rows = ["x,f,mu,cond_var,band_lo,band_hi"]
    for q, fv, m, cv, (lo, hi) in zip(grid, f_grid, means, cvars, bands):
        rows.append(",".join([format_rational(q), _f_text(fv), m.to_text(),
                              cv.to_text(), lo.to_text(), hi.to_text()]))
    csv_path = outdir / f"{stem}.csv"
    _write_text(csv_path, "\n".join(rows) + "\n")

    summary = {
        "kernel": kernel.to_json_dict(),
        "sigma2": format_rational(kernel.sigma2),
        "function": f_label,
        "domain": [format_rational(a), format_rational(bnd)],
        "N": N,
        "grid_size": grid_size,
        "band_variant": variant,
        "sigma2_hat": fit.sigma2_hat.to_text(),
        "N_sigma2_hat": (N * fit.sigma2_hat).to_text(),
        "deviation_band_ratio": ratio,
        "mean_pointwise_ratio": pointwise,
        "solve_precision_bits": fit.solve_precision,
        "condition_estimate": fit.condition_estimate.to_text(),
    }
    sum_path = outdir / f"{stem}_summary.json"
    _write_json(sum_path, summary)

    png_path = outdir / f"{stem}.png"
    stages.run("render", lambda: plots.save_krige_plot(
        [float(q) for q in grid], [float(v) for v in fg],
        [float(m) for m in mu],
        [float(lo) for lo, _ in bands], [float(hi) for _, hi in bands],
        [float(p) for p in design.points],
        [float(Fraction(v)) if isinstance(v, (int, Fraction)) else float(v)
         for v in f_vals],
        str(png_path), title=f"{kernel.label()}, N={N}, {f_label}"))
    resolved = {"command": args.command, "kernel": kernel.to_json_dict(),
                "sigma2": format_rational(kernel.sigma2), "function": f_label,
                "domain": [format_rational(a), format_rational(bnd)], "N": N,
                "grid_size": grid_size, "band_variant": variant,
                "precision_start": bits}
    _write_manifest(outdir, stem, args.command, resolved, stages,
                    [csv_path, sum_path, png_path])
    return 0


def cmd_membership(args) -> int:
    from . import plots
    cfg = _merge_config(args)
    kernel = _get_kernel(cfg)
    domain = _get_domain(cfg)
    schedule = _get_schedule(cfg)
    f, f_label = _get_function(cfg, kernel)
    bits = _start_bits(args)
    outdir, stem = _resolve_out(args.out, args.command)
    stages = _Stages()

    diag = stages.run("diagnostic", lambda: membership_diagnostic(
        kernel, f, domain, schedule, start_bits=bits))
    for e in diag.entries:
        stages.bits[f"N={e.N}"] = e.sigma2_hat.precision_bits or "exact"

    doc = diag.to_json_dict()
    doc.update({
        "kernel": kernel.to_json_dict(),
        "sigma2": format_rational(kernel.sigma2),
        "function": f_label,
        "domain": [format_rational(domain[0]), format_rational(domain[1])],
    })
    json_path = outdir / f"{stem}.json"
    _write_json(json_path, doc)
    png_path = outdir / f"{stem}.png"
    stages.run("render", lambda: plots.save_membership_plot(
        [e.N for e in diag.entries],
        [float(e.N_sigma2_hat) for e in diag.entries],
        diag.slope, diag.verdict, str(png_path)))
    resolved = {"command": args.command, "kernel": kernel.to_json_dict(),
                "sigma2": format_rational(kernel.sigma2), "function": f_label,
                "domain": [format_rational(domain[0]), format_rational(domain[1])],
                "N_schedule": schedule, "precision_start": bits}
    _write_manifest(outdir, stem, args.command, resolved, stages, [json_path, png_path])
    return 0


def cmd_closed_form_check(args) -> int:
    from . import plots
    cfg = _merge_config(args)
    fam = _get_family(cfg)
    n_max = _get_int(cfg, "n_max", default=20, lo=1, hi=N_MAX_CAP, cap_key="cap")
    outdir, stem = _resolve_out(args.out, args.command)
    stages = _Stages()

    b = stages.run("moments", lambda: even_moments(fam, 2 * n_max), bits="exact")
    report = stages.run("variance", lambda: blue_variance_seq(b, n_max), bits="exact")
    if all(e.closed_form is None for e in report.entries[1:]):
        raise ConfigError(
            f"family {fam.label()} has no closed-form variance to check "
            "(gaussian, beta, or a mixture over one of those)")

    entries = []
    residuals = []
    for e in report.entries[1:]:
        res = e.abs_residual
        entries.append({
            "n": e.n,
            "var": e.var.to_text(),
            "closed_form": _scalar_text(e.closed_form),
            "abs_residual": _scalar_text(res),
            "exact_match": bool(res is not None and res == 0),
        })
        residuals.append(res)
    exact_count = sum(1 for r in residuals if r is not None and r == 0)
    max_res = 0.0
    for r in residuals:
        if r is not None:
            max_res = max(max_res, float(r))
    doc = {
        "family": fam.to_json_dict(),
        "n_max": n_max,
        "entries": entries,
        "exact_match_count": exact_count,
        "max_abs_residual": max_res,
    }
    json_path = outdir / f"{stem}.json"
    _write_json(json_path, doc)
    png_path = outdir / f"{stem}.png"
    stages.run("render", lambda: plots.save_residual_plot(
        [e.n for e in report.entries[1:]],
        [0.0 if r is None else float(r) for r in residuals],
        str(png_path), title=f"closed form residuals, {fam.label()}"))
    resolved = {"command": args.command, "family": fam.to_json_dict(), "n_max": n_max}
    _write_manifest(outdir, stem, args.command, resolved, stages, [json_path, png_path])
    return 0


_COMMANDS = {
    "variance-seq": cmd_variance_seq,
    "determinacy": cmd_determinacy,
    "krige": cmd_krige,
    "membership": cmd_membership,
    "closed-form-check": cmd_closed_form_check,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except (ConfigError, ParameterError, LengthError, DomainError,
            UnsupportedFamilyError, DegenerateError) as exc:
        print(f"rkhs-probe: error: {exc}", file=sys.stderr)
        return 3
    except (PrecisionError, SingularKernelError) as exc:
        print(f"rkhs-probe: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
