"""Job configuration: parsing and validation of the JSON config format.

Example config::

    {"n": 3, "field": {"type": "gf", "p": 3}, "product": "assoc",
     "group": {"abelian": {"free_rank": 0, "torsion": [2]}},
     "grading": {"kind": "elementary", "eta": [[1], [1]]},
     "tasks": ["verify"], "budget": 10000000, "format": "json", "seed": 0}
"""

from dataclasses import dataclass, field as dc_field

from .analysis import EnumerationBudget
from .fields import GF, QQ, UnsupportedEnumeration
from .gradings import (
    Grading,
    GradingError,
    elementary_from_eta,
    is_symmetric,
    mt_from_symmetric,
)
from .groups import AbelianGroup, CayleyGroup, GroupError
from .triangular import PRODUCT_KINDS

TASKS = ("verify", "stab", "weyl", "diag", "involutions", "omega-construct", "report")
FORMATS = ("text", "json")

ENUMERATION_TASKS = {"verify", "stab", "weyl", "diag", "involutions", "report"}


@dataclass
class JobConfig:
    n: int
    field: object
    product: str
    group: object
    grading: Grading
    tasks: list
    budget: EnumerationBudget
    format: str
    seed: int
    omega_params: dict | None
    raw: dict


def _diag(path, message):
    return {"path": path, "message": message}


def validate(raw):
    """Diagnostics for a raw config dict; empty iff parse() would accept it."""
    try:
        parse(raw)
        return []
    except ConfigError as exc:
        return exc.diagnostics


class ConfigError(ValueError):
    def __init__(self, diagnostics):
        super().__init__("; ".join(f"{d['path']}: {d['message']}" for d in diagnostics))
        self.diagnostics = diagnostics


def parse(raw):
    """Build a JobConfig from a raw dict, or raise ConfigError with diagnostics."""
    diags = []
    if not isinstance(raw, dict):
        raise ConfigError([_diag("", "config must be a JSON object")])

    n = raw.get("n")
    if not isinstance(n, int) or n < 1:
        diags.append(_diag("/n", "n must be >= 1"))
        raise ConfigError(diags)

    field = _parse_field(raw.get("field"), diags)
    product = raw.get("product")
    if product not in PRODUCT_KINDS:
        diags.append(_diag("/product", f"product must be one of {PRODUCT_KINDS}"))
    group = _parse_group(raw.get("group"), diags)
    if diags:
        raise ConfigError(diags)

    grading = _parse_grading(raw.get("grading"), n, field, product, group, diags)

    tasks = raw.get("tasks")
    if not isinstance(tasks, list) or not tasks:
        diags.append(_diag("/tasks", "tasks must be a nonempty list"))
        tasks = []
    else:
        for i, t in enumerate(tasks):
            if t not in TASKS:
                diags.append(_diag(f"/tasks/{i}", f"unknown task {t!r}"))

    budget_raw = raw.get("budget", 10 ** 7)
    budget = None
    if not isinstance(budget_raw, int) or budget_raw < 1:
        diags.append(_diag("/budget", "budget must be a positive integer"))
    else:
        budget = EnumerationBudget(max_candidates=budget_raw)

    fmt = raw.get("format", "text")
    if fmt not in FORMATS:
        diags.append(_diag("/format", f"format must be one of {FORMATS}"))

    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        diags.append(_diag("/seed", "seed must be an integer"))

    if field is not None and not field.is_finite:
        for t in tasks:
            if t in ENUMERATION_TASKS:
                diags.append(_diag("/field", f"task {t!r} requires a finite field"))
                break

    omega_params = None
    if "omega-construct" in tasks:
        omega_params = _parse_omega(raw.get("omega"), n, field, diags)

    if "involutions" in tasks and field is not None and field.characteristic == 2:
        diags.append(_diag("/tasks", "involutions require characteristic != 2"))

    if diags:
        raise ConfigError(diags)
    return JobConfig(n, field, product, group, grading, list(tasks), budget,
                     fmt, seed, omega_params, raw)


def _parse_field(spec, diags):
    if not isinstance(spec, dict):
        diags.append(_diag("/field", "field descriptor required"))
        return None
    kind = spec.get("type")
    if kind == "q":
        return QQ
    if kind == "gf":
        try:
            return GF(int(spec.get("p", 0)))
        except (TypeError, ValueError) as exc:
            diags.append(_diag("/field/p", str(exc)))
            return None
    diags.append(_diag("/field/type", "field type must be 'gf' or 'q'"))
    return None


def _parse_group(spec, diags):
    if not isinstance(spec, dict):
        diags.append(_diag("/group", "group descriptor required"))
        return None
    if "abelian" in spec:
        data = spec["abelian"]
        try:
            return AbelianGroup(free_rank=int(data.get("free_rank", 0)),
                                torsion=data.get("torsion", []))
        except (GroupError, TypeError, ValueError) as exc:
            diags.append(_diag("/group/abelian", str(exc)))
            return None
    if "cayley" in spec:
        try:
            return CayleyGroup(spec["cayley"])
        except (GroupError, TypeError, ValueError) as exc:
            diags.append(_diag("/group/cayley", str(exc)))
            return None
    diags.append(_diag("/group", "group must be 'abelian' or 'cayley'"))
    return None


def _group_element(group, coords, path, diags):
    try:
        if isinstance(group, CayleyGroup):
            if isinstance(coords, list):
                if len(coords) != 1:
                    raise GroupError("Cayley element is a single index")
                coords = coords[0]
            return group.element(int(coords))
        if not isinstance(coords, list):
            raise GroupError("abelian element must be a coordinate list")
        return group.element(coords)
    except (GroupError, TypeError, ValueError) as exc:
        diags.append(_diag(path, str(exc)))
        return None


def _parse_grading(spec, n, field, product, group, diags):
    if not isinstance(spec, dict):
        diags.append(_diag("/grading", "grading descriptor required"))
        return None
    kind = spec.get("kind")
    if kind not in ("elementary", "mt"):
        diags.append(_diag("/grading/kind", "grading kind must be 'elementary' or 'mt'"))
        return None
    eta_raw = spec.get("eta")
    if not isinstance(eta_raw, list) or len(eta_raw) != n - 1:
        diags.append(_diag("/grading/eta", f"eta must be a list of {n - 1} group elements"))
        return None
    eta = []
    for i, coords in enumerate(eta_raw):
        g = _group_element(group, coords, f"/grading/eta/{i}", diags)
        if g is None:
            return None
        eta.append(g)

    if kind == "elementary":
        if product in ("lie", "jordan") and not getattr(group, "is_abelian", False):
            diags.append(_diag("/group", "Lie/Jordan gradings require an abelian group"))
            return None
        try:
            return elementary_from_eta(n, group, eta, product, field)
        except GradingError as exc:
            diags.append(_diag("/grading", str(exc)))
            return None

    # MT
    if product == "assoc":
        diags.append(_diag("/grading/kind", "MT gradings require the Lie or Jordan product"))
        return None
    if field is not None and field.characteristic == 2:
        diags.append(_diag("/field", "MT requires characteristic != 2"))
        return None
    if not getattr(group, "is_abelian", False):
        diags.append(_diag("/group", "Lie/Jordan gradings require an abelian group"))
        return None
    if not is_symmetric(eta):
        diags.append(_diag("/grading/eta", "MT gradings require a symmetric sequence"))
        return None
    try:
        return mt_from_symmetric(n, group, eta, field, product)
    except GradingError as exc:
        diags.append(_diag("/grading", str(exc)))
        return None


def _parse_omega(spec, n, field, diags):
    from .analysis import omega_free_cells

    spec = spec or {}
    if not isinstance(spec, dict):
        diags.append(_diag("/omega", "omega parameters must be an object"))
        return None
    if field is None:
        return None
    try:
        k = field.parse(spec.get("k", "1"))
    except (ValueError, ZeroDivisionError) as exc:
        diags.append(_diag("/omega/k", str(exc)))
        return None
    if k == field.zero:
        diags.append(_diag("/omega/k", "k must be nonzero"))
        return None
    entries = {}
    raw_entries = spec.get("entries", {})
    if not isinstance(raw_entries, dict):
        diags.append(_diag("/omega/entries", "entries must map 'i,j' to scalars"))
        return None
    cells = omega_free_cells(n)
    for key, value in raw_entries.items():
        try:
            i, j = (int(v) for v in str(key).split(","))
        except ValueError:
            diags.append(_diag(f"/omega/entries/{key}", "cell keys look like 'i,j'"))
            return None
        if (i, j) not in cells:
            diags.append(_diag(f"/omega/entries/{key}",
                               f"cell ({i},{j}) is not free (need i <= j, i + j <= {n})"))
            return None
        try:
            entries[(i, j)] = field.parse(value)
        except (ValueError, ZeroDivisionError) as exc:
            diags.append(_diag(f"/omega/entries/{key}", str(exc)))
            return None
    # default: ones on the free diagonal, zeros elsewhere
    for (i, j) in cells:
        entries.setdefault((i, j), field.one if i == j else field.zero)
    for (i, j) in cells:
        if i == j and entries[(i, j)] == field.zero:
            diags.append(_diag("/omega/entries", f"free diagonal entry ({i},{i}) must be nonzero"))
            return None
    if field.characteristic == 2:
        diags.append(_diag("/field", "omega-construct requires characteristic != 2"))
        return None
    return {"k": k, "entries": entries}
