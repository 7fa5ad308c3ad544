"""Report assembly, result caching, and command orchestration.

A report is a plain dict (JSON-serializable) wrapping the outcome of one
verification command: engine version, the field and parameters acted on,
one entry per check with its anchor / status / witness, timing data, and a
roll-up summary.  Reports are deterministic for fixed inputs up to the
timing fields.
"""

import json
import os
from pathlib import Path

from . import __version__, checks
from .cyclo import FieldSpec
from .nt import fundamental_discriminant, valuation

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

#: statuses that make a run unsuccessful
_BAD = (checks.FAIL, checks.REFUTES)


class Cache:
    """A directory of JSON entries keyed by name and engine version.

    The root is the explicit argument if given, else the RAYVERIFY_CACHE
    environment variable, else ~/.cache/rayverify.  Entries written by a
    different engine version are never returned.
    """

    def __init__(self, root=None):
        root = (
            root
            or os.environ.get("RAYVERIFY_CACHE")
            or os.path.join(os.path.expanduser("~"), ".cache", "rayverify")
        )
        self.root = Path(root)

    def _path(self, key):
        safe = "".join(c if (c.isalnum() or c in "-_.") else "_" for c in key)
        return self.root / ("%s-v%s.json" % (safe, __version__))

    def get(self, key):
        try:
            with open(self._path(key)) as fh:
                return json.load(fh)
        except (OSError, ValueError):
            return None

    def put(self, key, value):
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w") as fh:
            json.dump(value, fh, sort_keys=True)
        tmp.replace(path)

    def clear(self):
        removed = 0
        if self.root.is_dir():
            for path in self.root.glob("*.json"):
                path.unlink()
                removed += 1
        return removed

    def stats(self):
        entries = list(self.root.glob("*.json")) if self.root.is_dir() else []
        return {
            "root": str(self.root),
            "entries": len(entries),
            "bytes": sum(p.stat().st_size for p in entries),
        }


def resolve_discriminant(quad=None, field=None):
    """Fundamental discriminant from either a --quad or a --field argument.

    `quad` is a radicand or discriminant of a real quadratic field; `field`
    is an "m:a1,a2,..." description of the fixed field of the subgroup
    generated by the a_i in (Z/m)^*.  Raises ValueError for fields that are
    not real quadratic.
    """
    if field is not None:
        m, _, gens = field.partition(":")
        m = int(m)
        H = {1 % m}
        todo = [int(a) % m for a in gens.split(",") if a.strip()]
        for a in todo:
            new = {a}
            while new:
                x = new.pop()
                if x not in H:
                    H.add(x)
                    new.update({(x * h) % m for h in H} | {(x * t) % m for t in todo})
        spec = FieldSpec(m, sorted(H))
        if spec.degree() != 2:
            raise ValueError(
                "field %s has degree %d; only real quadratic fields are "
                "supported here" % (field, spec.degree())
            )
        D = spec.conductor
        assert spec.H == FieldSpec.quadratic(D).H
        return D
    if quad is None:
        raise ValueError("a field is required: pass --quad or --field")
    D = fundamental_discriminant(int(quad))
    assert D > 1, "the field must be real quadratic"
    return D


def build_report(command, D, params, results, seed=None):
    """Assemble the result records of one command into a report dict."""
    summary = {
        checks.PASS: 0,
        checks.FAIL: 0,
        checks.INCONCLUSIVE: 0,
        checks.REFUTES: 0,
    }
    embeddings = set()
    for r in results:
        summary[r.status] += 1
        if "embedding" in r.witness:
            embeddings.add(r.witness["embedding"])
    return {
        "version": __version__,
        "command": command,
        "field": {"type": "real-quadratic", "discriminant": D},
        "params": params,
        "seed": seed,
        "embeddings": sorted(embeddings),
        "checks": [r.to_dict() for r in results],
        "timings": {"total": round(sum(r.elapsed for r in results), 6)},
        "summary": summary,
        "exit_status": EXIT_FAILED if any(summary[s] for s in _BAD) else EXIT_OK,
    }


def strip_timings(report):
    """A copy of the report without timing fields, for determinism tests."""
    out = {k: v for k, v in report.items() if k != "timings"}
    out["checks"] = [
        {k: v for k, v in c.items() if k != "elapsed"} for c in report["checks"]
    ]
    return out


# --------------------------------------------------------------------------
# command dispatch


def run_sinnott(D, p=7, prec=12, d=6, **_):
    params = {"p": p, "prec": prec, "d_max": d}
    return build_report(
        "verify sinnott", D, params, checks.check_sinnott(D, p, prec, d)
    )


def run_rays(D, ell=11, p=5, modulus=None, **_):
    if modulus is None:
        e = 1
    else:
        e = valuation(modulus, ell)
        assert ell**e == modulus, "modulus must be a power of ell"
    params = {"ell": ell, "p": p, "exponent": e}
    return build_report("verify rays", D, params, checks.check_rays(D, ell, p, e))


def run_gras(D, p=None, d=None, mode=None, **_):
    if mode == "scan":
        p_list = (3, 5, 7) if p is None else (p,)
        d_max = 50 if d is None else d
        params = {"p_list": list(p_list), "d_max": d_max, "mode": "scan"}
        results = checks.check_gras_scan(D, p_list, d_max)
    else:
        p = 3 if p is None else p
        d = 1 if d is None else d
        params = {"p": p, "d": d, "mode": "single"}
        results = checks.check_gras(D, p, d)
    return build_report("verify gras", D, params, results)


def run_h90(D, ell=11, **_):
    params = {"ell": ell, "level": 3, "twist": 4}
    return build_report("verify h90", D, params, checks.check_h90(D, ell))


def run_annihilator(D, p=3, modulus=None, mode=None, cache=None, **_):
    mode = mode or "both"
    assert mode in ("thaine", "solomon", "special", "both")
    results = []
    params = {"p": p, "mode": mode}
    if mode in ("thaine", "both"):
        m = 1 if modulus is None else modulus
        params["thaine_modulus"] = m
        results += checks.check_thaine(D, n_exp=p, modulus=m)
    if mode in ("solomon", "both"):
        moduli = (1, 4) if modulus is None else (modulus,)
        params["solomon_moduli"] = list(moduli)
        results += checks.check_solomon(D, p=p, moduli=moduli)
    if mode == "special":
        results += checks.check_special_units(D, cache=cache)
    return build_report("verify annihilator", D, params, results)


def run_conjecture(D, p=3, d=18, **_):
    params = {"p": p, "d": d}
    return build_report("explore conjecture", D, params, checks.explore_conjecture(D, p, d))


COMMANDS = {
    ("verify", "sinnott"): run_sinnott,
    ("verify", "rays"): run_rays,
    ("verify", "gras"): run_gras,
    ("verify", "h90"): run_h90,
    ("verify", "annihilator"): run_annihilator,
    ("explore", "conjecture"): run_conjecture,
}
