"""Module descriptors, experiment files, and the shipped presets."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .basefield.spec import FieldSpec
from .config import _item, _split_top, field_spec_from, get, get_int, parse_config
from .drinfeld import DrinfeldModule
from .errors import ParseError
from .mordell import CosetDecomposition, CosetPart, PhiSubmodule, Variety, place_representatives
from .parsing import parse_element

PRESETS = {
    "remark_sharp": """\
# phi_t = tau + t tau^3 over F_9(t); lambda = g lies in F_9 but not F_3
name = remark_sharp
p = 3
e = 1
m = 2
mode = ratfunc
phi_t = T + t*T^3
""",
    "example_lambda": """\
# phi_t = f (1 + f) with f = t tau + tau^3, over F_9(t)
name = example_lambda
p = 3
e = 1
m = 2
mode = ratfunc
f = t*T + T^3
phi_t = (t*T + T^3) * (1 + t*T + T^3)
""",
    "example_lambda_p2": """\
# p = 2: f = t tau + tau^4, phi_t = f (1 + f), lambda in F_8 but not F_2
name = example_lambda_p2
p = 2
e = 1
m = 3
mode = ratfunc
f = t*T + T^4
phi_t = (t*T + T^4) * (1 + t*T + T^4)
""",
    "remark_important": """\
# the module t -> phi_u, u = t + t^2, for phi_t = tau + t tau^3
name = remark_important
p = 3
e = 1
m = 2
mode = ratfunc
phi_t = T + t*T^3
u = t + t^2
""",
    "trivial_tau": """\
# phi_t = tau over F_3: characteristic (t), trivial t-torsion
name = trivial_tau
p = 3
e = 1
m = 1
mode = finite
phi_t = T
""",
    "carlitz_f2": """\
# phi_t = tau + tau^2 over F_2
name = carlitz_f2
p = 2
e = 1
m = 1
mode = finite
phi_t = T + T^2
""",
}

EXPERIMENTS = {
    "remark_sharp": """\
module = remark_sharp
gamma = [(1, g)]
X = ["y - g*x"]
B = 6
bounds = [2, 4, 6]
nmax = 8
decomposition = ["(0, 0) ; (1, g) ; 2"]
place_orbits = (2, 24)
host_m = 4
reduce_B = 3
""",
    "remark_important": """\
module = remark_important
gamma = [(1, g)]
X = ["y - g*x"]
B = 6
bounds = [4, 6]
nmax = 6
""",
}


@dataclass
class Descriptor:
    spec: FieldSpec
    module: DrinfeldModule
    name: str | None
    config: dict
    text: str

    def extra_ore(self, key):
        """An additional Ore polynomial stored under ``key`` (e.g. f), or None."""
        from .ore import parse_ore

        v = self.config.get(key)
        if v is None:
            return None
        return _with_position(lambda: parse_ore(str(v.raw), self.spec), v, self.text)

    def base_module(self):
        """The module before any ``u`` substitution."""
        return self._base

    _base = None


def _with_position(fn, v, text):
    try:
        return fn()
    except ParseError as exc:
        # re-anchor an expression-level error at its line in the file
        raise ParseError(exc.message, v.line, v.col + exc.column - 1, text) from exc


def resolve_text(ref, base_dir=None, table=PRESETS):
    """Read a descriptor: a path (absolute or relative to base_dir) or a preset name."""
    candidates = [ref]
    if base_dir and not os.path.isabs(ref):
        candidates.insert(0, os.path.join(base_dir, ref))
    for path in candidates:
        if os.path.isfile(path):
            with open(path, encoding="utf-8") as fh:
                return fh.read(), os.path.dirname(os.path.abspath(path))
    stem = os.path.splitext(os.path.basename(ref))[0]
    if stem in table:
        return table[stem], base_dir
    raise FileNotFoundError(f"no such file or preset: {ref}")


def load_descriptor_text(text, spec_override=None):
    cfg = parse_config(text)
    spec = spec_override or field_spec_from(cfg, text)
    v = cfg.get("phi_t")
    if v is None:
        raise ParseError("missing key 'phi_t'", 1, 1, text)
    name = get(cfg, "name")
    base = _with_position(lambda: DrinfeldModule.parse(str(v.raw), spec, name), v, text)
    module = base
    u = cfg.get("u")
    if u is not None:
        module = _with_position(lambda: base.substitute(str(u.raw), name), u, text)
    d = Descriptor(spec, module, name, cfg, text)
    d._base = base
    return d


def load_descriptor(ref, base_dir=None, spec_override=None):
    text, _ = resolve_text(ref, base_dir)
    return load_descriptor_text(text, spec_override)


@dataclass
class Experiment:
    descriptor: Descriptor
    gamma: PhiSubmodule
    variety: Variety
    B: int
    bounds: list
    nmax: int
    decomposition: CosetDecomposition | None
    places: list
    reduce_B: int
    reduction_gamma: PhiSubmodule | None


def _points(items, spec, g, v, text):
    pts = []
    for it in items:
        tup = it if isinstance(it, tuple) else (it,)
        if g is not None and len(tup) != g:
            raise ParseError(f"point {it!r} has {len(tup)} coordinates, expected {g}", v.line, v.col, text)
        pts.append(tuple(_with_position(lambda s=s: parse_element(str(s), spec), v, text) for s in tup))
    return pts


def _decomposition(items, spec, g, v, text):
    parts = []
    for it in items:
        fields = [s.strip() for s in str(it).split(";")]
        if len(fields) != 3:
            raise ParseError("decomposition parts are 'translate ; generators ; period'", v.line, v.col, text)
        tr = _item(fields[0], v.line, v.col, text)
        gens = [_item(s, v.line, v.col, text) for s, _ in _split_top(fields[1], v.line, v.col, text) if s.strip()]
        try:
            period = int(fields[2])
        except ValueError:
            raise ParseError(f"period must be an integer, got {fields[2]!r}", v.line, v.col, text) from None
        translate = _points([tr], spec, g, v, text)[0]
        parts.append(CosetPart(translate, tuple(_points(gens, spec, g, v, text)), period))
    return CosetDecomposition(tuple(parts))


def load_experiment_text(text, base_dir=None):
    cfg = parse_config(text)
    if "module" in cfg:
        mtext, _ = resolve_text(str(cfg["module"].raw), base_dir)
    else:
        mtext = text
    desc = load_descriptor_text(mtext)
    spec = desc.spec
    gv = cfg.get("gamma")
    if gv is None:
        raise ParseError("missing key 'gamma'", 1, 1, text)
    gens = _points(gv.raw if isinstance(gv.raw, list) else [gv.raw], spec, None, gv, text)
    g = len(gens[0]) if gens else get_int(cfg, "g", 1, text)
    # the submodule is generated under the undeformed module; invariance uses desc.module
    gamma = PhiSubmodule(desc.base_module(), gens, g)
    xv = cfg.get("X")
    eqs = [] if xv is None else (xv.raw if isinstance(xv.raw, list) else [xv.raw])
    variety = _with_position(lambda: Variety.parse(spec, g, [str(e) for e in eqs]), xv, text) if xv else Variety(spec, g, ())
    B = get_int(cfg, "B", 4, text)
    bounds = [int(b) for b in (get(cfg, "bounds") or [B])]
    nmax = get_int(cfg, "nmax", 8, text)
    dv = cfg.get("decomposition")
    decomposition = _decomposition(dv.raw, spec, g, dv, text) if dv else None
    places, red_gamma = [], None
    orbits = cfg.get("place_orbits")
    explicit = cfg.get("places")
    if orbits or explicit:
        host_m = get_int(cfg, "host_m", spec.m, text)
        host = FieldSpec(spec.p, spec.e, host_m, None if host_m != spec.m else spec.modulus, spec.mode)
        red_desc = load_descriptor_text(mtext, spec_override=host) if host != spec else desc
        red_gens = _embed_points(gens, spec, host)
        red_gamma = PhiSubmodule(red_desc.base_module(), red_gens, g)
        if orbits:
            sub_m, count = (int(x) for x in orbits.raw)
            places = place_representatives(host, sub_m, count)
        if explicit:
            for pt in _points(explicit.raw, host, 1, explicit, text):
                places.append(host.place(pt[0].constant_value()))
    reduce_B = get_int(cfg, "reduce_B", B, text)
    return Experiment(desc, gamma, variety, B, bounds, nmax, decomposition, places, reduce_B, red_gamma)


def _embed_points(points, small, big):
    if small == big:
        return points
    from .basefield.gf import FFElem, embed

    def emb(x):
        # only constants are needed for the shipped experiments; general elements map coefficient-wise
        from .basefield.poly import Poly
        from .basefield.ratfunc import RatFunc

        def lift(poly):
            return Poly(big.gf, {e: embed(small.gf, big.gf, c) for e, c in poly.terms.items()})

        return RatFunc(lift(x.num), lift(x.den))

    return [tuple(emb(x) for x in pt) for pt in points]


def load_experiment(ref):
    text, base_dir = resolve_text(ref, None, EXPERIMENTS)
    return load_experiment_text(text, base_dir)


__all__ = [
    "PRESETS", "EXPERIMENTS", "Descriptor", "Experiment", "resolve_text", "load_descriptor",
    "load_descriptor_text", "load_experiment", "load_experiment_text",
]
