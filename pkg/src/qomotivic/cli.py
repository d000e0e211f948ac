"""Command line front end.

Input is one JSON document::

    {"mode": "qo", "d": 2, "exponents": [["3/2", "0"], ["7/4", "0"], ["2", "1/2"]]}

Toric inputs use "generators" instead of "exponents".  An optional "lattice"
key lists generators of the ambient lattice M, and "options" may set
section_lattice, box_limit and guard (command line flags take precedence).
"""

import argparse
import json
import logging
import sys
from importlib import resources

from .errors import InvalidInput, QOError
from .ltseries import lp_str
from .motivic import (Settings, _injective, assemble, candidate_poles, curve_multiplicity,
                      interior_terms, motivic_volume, p_geom, p_interior)
from .numlin import fmt_vec, lattice_from_generators, primitive_in, vec
from .oracle import DEFAULT_BOX_LIMIT, geom_coefficients, series_coefficients, volume_trace
from .qocore import (b_set, dk_cones, generator_expressions, jacobian_generators,
                     phi_psi_linear, refinement, sections, validate)


def fixture_names():
    return sorted(p.name[:-5] for p in resources.files("qomotivic.fixtures").iterdir()
                  if p.name.endswith(".json"))


def load_input(path=None, fixture=None):
    if fixture is not None:
        f = resources.files("qomotivic.fixtures") / f"{fixture}.json"
        if not f.is_file():
            raise InvalidInput(f"unknown fixture {fixture!r}; known: {', '.join(fixture_names())}")
        text, where = f.read_text(), f"fixture {fixture}"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InvalidInput(f"{path}: {exc.strerror}") from None
        where = path
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{where}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InvalidInput(f"{where}: top level must be an object")
    return data


def parse_input(data):
    """(CharData, options dict) from a decoded input document."""
    mode = data.get("mode")
    if mode not in ("qo", "toric"):
        raise InvalidInput(f"field 'mode': expected \"qo\" or \"toric\", got {mode!r}")
    d = data.get("d")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InvalidInput(f"field 'd': expected a positive integer, got {d!r}")
    key = "exponents" if mode == "qo" else "generators"
    vs = data.get(key, [] if mode == "qo" else None)
    if not isinstance(vs, list):
        raise InvalidInput(f"field {key!r}: expected a list of vectors")
    lattice = None
    if data.get("lattice") is not None:
        try:
            gens = [vec(v) for v in data["lattice"]]
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"field 'lattice': {exc}") from None
        if any(len(g) != d for g in gens):
            raise InvalidInput(f"field 'lattice': vectors must have length {d}")
        lattice = lattice_from_generators(gens, d)
    opts = data.get("options") or {}
    if not isinstance(opts, dict):
        raise InvalidInput("field 'options': expected an object")
    return validate(mode, d, vs, lattice=lattice), opts


def _settings(args, opts):
    return Settings(
        section_lattice=args.section_lattice or opts.get("section_lattice", "ambient"),
        box_limit=args.box_limit or opts.get("box_limit", DEFAULT_BOX_LIMIT),
        guard=args.guard or opts.get("guard"),
    )


# -- commands ---------------------------------------------------------------------------------

def cmd_validate(cd, settings, args, out):
    if args.format == "json":
        doc = {"mode": cd.mode, "d": cd.d,
               "exponents": [[str(x) for x in v] for v in cd.exponents],
               "M": str(cd.lattice_M), "N": str(cd.N), "warnings": list(cd.warnings)}
        if cd.chain is not None:
            doc["chain"] = [str(m) for m in cd.chain.lattices]
            doc["indices"] = list(cd.chain.indices)
        out.append(json.dumps(doc, indent=2))
        return 0
    label = "exponents" if cd.mode == "qo" else "generators"
    out.append(f"mode: {cd.mode}   d = {cd.d}")
    out.append(f"{label}: " + (", ".join(fmt_vec(v) for v in cd.exponents) or "none (smooth)"))
    if cd.chain is not None:
        for j, m in enumerate(cd.chain.lattices):
            out.append(f"M_{j} = {m}")
        out.append("indices n_j = " + str(tuple(cd.chain.indices)))
    out.append(f"M = {cd.lattice_M}")
    out.append(f"N = {cd.N}")
    for w in cd.warnings:
        out.append(f"warning: {w}")
    return 0


def _report_doc(cd, settings):
    doc = {"jacobian": {}, "rays": {}, "D": {}, "sections": []}
    for k in range(1, cd.d + 1):
        exprs = generator_expressions(cd, k)
        doc["jacobian"][k] = [f"{fmt_vec(g)} = {' = '.join(exprs[g])}"
                              for g in jacobian_generators(cd, k).generators]
        doc["rays"][k] = sorted(fmt_vec(primitive_in(r.rays[0], cd.N))
                                for r in refinement(cd, k).rays())
        cones = []
        for dk in dk_cones(cd, k):
            ps, ph = phi_psi_linear(cd, k, dk.cone)
            cones.append({"rays": [fmt_vec(r) for r in dk.cone.rays],
                          "interior": dk.interior,
                          "Psi": fmt_vec(ps), "phi": fmt_vec(ph),
                          "path": "closed" if _injective(cd, k, dk.cone) else "reconstructed"})
        doc["D"][k] = cones
    for sec in sections(cd, settings.section_lattice):
        entry = {"coordinates": [i + 1 for i in sec.keep]}
        if sec.chardata is None:
            entry["B"] = [[0, 1]]
        else:
            entry["data"] = [fmt_vec(v) for v in sec.surviving]
            entry["index"] = sec.index
            entry["B"] = sorted(list(ab) for ab in b_set(sec.chardata))
            if sec.chardata.d == 1:
                entry["multiplicity"] = curve_multiplicity(p_interior(sec.chardata, settings))
        doc["sections"].append(entry)
    doc["candidate_poles"] = sorted(list(ab) for ab in candidate_poles(cd, settings))
    return doc


def cmd_report(cd, settings, args, out):
    doc = _report_doc(cd, settings)
    if args.format == "json":
        out.append(json.dumps(doc, indent=2))
        return 0
    for k in range(1, cd.d + 1):
        out.append(f"J_{k}:")
        out.extend(f"  {line}" for line in doc["jacobian"][k])
    for k in range(1, cd.d + 1):
        out.append(f"rays of the refinement of Sigma_1..Sigma_{k}: " + ", ".join(doc["rays"][k]))
    for k in range(1, cd.d + 1):
        cones = doc["D"][k]
        n_int = sum(c["interior"] for c in cones)
        out.append(f"D_{k}: {len(cones)} cones, {n_int} meeting the interior")
        for c in cones:
            tag = "" if c["interior"] else "  (boundary)"
            out.append(f"  [{', '.join(c['rays'])}]  Psi={c['Psi']} phi={c['phi']} "
                       f"{c['path']}{tag}")
    for e in doc["sections"]:
        coords = "{" + ",".join(map(str, e["coordinates"])) + "}"
        pairs = ", ".join(f"({a},{b})" for a, b in e["B"])
        extra = ""
        if "multiplicity" in e:
            extra = f"  multiplicity {e['multiplicity']}"
        if "index" in e and e["index"] != 1:
            extra += f"  lattice index {e['index']}"
        out.append(f"B on section {coords}: {pairs}{extra}")
    out.append("candidate poles: " + ", ".join(f"({a},{b})" for a, b in doc["candidate_poles"]))
    return 0


def _coeff_table(coeffs):
    return [f"T^{s}: {lp_str(c)}" for s, c in enumerate(coeffs)]


def cmd_series(cd, settings, args, out):
    geom = args.what == "geom"
    order = args.order
    closed = oracle = None
    if args.method in ("closed", "both"):
        closed = p_geom(cd, settings) if geom else p_interior(cd, settings)
    if args.method in ("oracle", "both"):
        if order is None:
            order = 12
        if geom:
            oracle = geom_coefficients(cd, order, settings.section_lattice, settings.box_limit)
        else:
            oracle = series_coefficients(cd, order, settings.box_limit)
    status = 0
    doc = {"what": args.what, "method": args.method}
    text = []
    if closed is not None:
        doc["series"] = closed.to_json()
        text.append(closed.to_text())
        if geom:
            for sec, term in assemble_sections(cd, settings):
                text.append(f"  section {sec}: {term}")
        if order is not None and oracle is None:
            coeffs = closed.expand(order)
            doc["coefficients"] = [lp_str(c) for c in coeffs]
            text.extend(_coeff_table(coeffs))
    if oracle is not None and closed is None:
        doc["coefficients"] = [lp_str(c) for c in oracle]
        text.extend(_coeff_table(oracle))
    if oracle is not None and closed is not None:
        mine = closed.expand(order)
        diffs = [(s, a, b) for s, (a, b) in enumerate(zip(mine, oracle)) if a != b]
        doc["mismatches"] = [[s, lp_str(a), lp_str(b)] for s, a, b in diffs]
        for s, a, b in diffs:
            text.append(f"T^{s}: closed {lp_str(a)} != oracle {lp_str(b)}")
        if diffs:
            status = 3
        else:
            text.append(f"all {order + 1} coefficients agree")
    out.append(json.dumps(doc, indent=2) if args.format == "json" else "\n".join(text))
    return status


def assemble_sections(cd, settings):
    rep = assemble(cd, settings, with_volume=False)
    out = []
    for sec, term in rep.sections:
        coords = "{" + ",".join(str(i + 1) for i in sec.keep) + "}"
        out.append((coords, term.to_text()))
    return out


def cmd_volume(cd, settings, args, out):
    vol = motivic_volume(cd)
    doc = {"volume": vol.to_json()}
    text = [vol.to_text()]
    status = 0
    if args.method in ("oracle", "both"):
        prec = args.order if args.order is not None else 8
        trace = volume_trace(cd, prec, settings.box_limit)
        mine = vol.expand(-prec)
        doc["trace"] = {"precision": prec, "oracle": lp_str(trace), "closed": lp_str(mine)}
        text.append(f"enumeration, exponents >= -{prec}: {lp_str(trace)}")
        if trace != mine:
            text.append(f"closed form, exponents >= -{prec}: {lp_str(mine)}")
            status = 3
        else:
            text.append("closed form agrees")
    out.append(json.dumps(doc, indent=2) if args.format == "json" else "\n".join(text))
    return status


COMMANDS = {"validate": cmd_validate, "report": cmd_report, "series": cmd_series,
            "volume": cmd_volume}


def build_parser():
    p = argparse.ArgumentParser(prog="qomotivic", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        src = s.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", metavar="PATH")
        src.add_argument("--fixture", metavar="NAME", help="one of the bundled examples")
        s.add_argument("--format", choices=("text", "json"), default="text")
        s.add_argument("--section-lattice", choices=("ambient", "branch"))
        s.add_argument("--box-limit", type=int)
        s.add_argument("--guard", type=int)
        s.add_argument("-v", "--verbose", action="store_true")
        if name in ("series", "volume"):
            s.add_argument("--order", type=int)
            s.add_argument("--method", choices=("closed", "oracle", "both"), default="closed")
        if name == "series":
            s.add_argument("--what", choices=("interior", "geom"), default="interior")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    out = []
    try:
        if getattr(args, "order", None) is not None and args.order < 0:
            raise InvalidInput("--order must be nonnegative")
        cd, opts = parse_input(load_input(args.input, args.fixture))
        status = COMMANDS[args.command](cd, _settings(args, opts), args, out)
    except QOError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return exc.exit_code
    print("\n".join(out))
    return status


if __name__ == "__main__":
    sys.exit(main())
