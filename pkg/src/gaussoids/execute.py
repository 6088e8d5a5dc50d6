import json
import logging
import random
from typing import Any, Callable, Dict, List

from gaussoids.ci import (CIStructure, axiom_violation, dual, format_structure,
                          is_gaussoid_belts, minor,
                          parse_structure)
from gaussoids.classify import ClassSpec, class_profile
from gaussoids.config import use_cache
from gaussoids.construct import (bound_report, certify, puzzle_frames,
                                 puzzle_lift, random_assignment)
from gaussoids.cube import enumerate_faces, face_parse
from gaussoids.enumeration import (brute_force_count, count_class,
                                   enumerate_class, to_cnf)
from gaussoids.errors import DimensionMismatchError
from gaussoids.graphs import (format_graph, graph_from_gaussoid, parse_graph,
                              separation_gaussoid)
from gaussoids.qgraph import (QGraphParams, brute_force_neighbors,
                              clique_construction, degree_formula,
                              greedy_coloring, independent_set, is_complete,
                              vertex_count)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def load_structure(path: str) -> CIStructure:
    logging.debug("Reading CI structure from %s", path)
    return parse_structure(read_text(path))


def emit(params: Dict[str, Any], text: str, payload: Any) -> None:
    if params.get("json"):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def squares_payload(A: CIStructure) -> List[str]:
    return [f.set_notation() for f in A.squares()]


def handle_check(params: Dict[str, Any]) -> int:
    A = load_structure(params["file"])
    if params.get("belts"):
        verdict = is_gaussoid_belts(A)
        witness = None if verdict else str(class_profile(A).failure_frame)
    else:
        violation = axiom_violation(A)
        verdict = violation is None
        witness = None if verdict else str(violation)

    lines = [f"gaussoid: {str(verdict).lower()}"]
    if witness:
        lines.append(f"violation: {witness}")
    emit(params, "\n".join(lines), {"gaussoid": verdict, "violation": witness})
    return EXIT_OK if verdict else EXIT_DOMAIN


def handle_minor(params: Dict[str, Any]) -> int:
    A = load_structure(params["file"])
    frame = face_parse(params["frame"], A.n)
    M = minor(A, frame)
    label_map = ", ".join(f"{new + 1}->{old + 1}" for new, old in enumerate(M.ground_labels))
    comments = [f"frame {frame.letters} ({frame.set_notation()})", f"labels {label_map}"]
    emit(params, format_structure(M, comments).rstrip("\n"), {
        "n": M.n,
        "frame": frame.letters,
        "labels": [old + 1 for old in M.ground_labels],
        "squares": squares_payload(M),
    })
    return EXIT_OK


def handle_dual(params: Dict[str, Any]) -> int:
    D = dual(load_structure(params["file"]))
    emit(params, format_structure(D).rstrip("\n"), {"n": D.n, "squares": squares_payload(D)})
    return EXIT_OK


def handle_classify(params: Dict[str, Any]) -> int:
    A = load_structure(params["file"])
    profile = class_profile(A)
    if not profile.ok:
        emit(params, f"profile: FAILURE at {profile.failure_frame}",
             {"ok": False, "failure_frame": str(profile.failure_frame)})
        return EXIT_DOMAIN
    spec = profile.letters()
    emit(params, f"profile: {profile}\nclass: {spec or '-'}", {
        "ok": True,
        "profile": {str(c): count for c, count in profile.counts.items()},
        "class": str(spec),
    })
    return EXIT_OK


def handle_count(params: Dict[str, Any]) -> int:
    n, spec = params["n"], ClassSpec.parse(params["spec"])
    if params.get("brute_force"):
        count = brute_force_count(n, spec)
        emit(params, str(count), {"n": n, "spec": str(spec), "count": count})
        return EXIT_OK
    result = count_class(n, spec, workers=params.get("workers"),
                         unsafe=params.get("unsafe", False),
                         cache=use_cache() and not params.get("no_cache"))
    emit(params, str(result.count), result.to_dict())
    return EXIT_OK


def handle_enumerate(params: Dict[str, Any]) -> int:
    n, spec = params["n"], ClassSpec.parse(params["spec"])
    structures = enumerate_class(n, spec, limit=params.get("limit"),
                                 unsafe=params.get("unsafe", False))
    text = "\n".join(format_structure(A) for A in structures).rstrip("\n")
    emit(params, text, [squares_payload(A) for A in structures])
    return EXIT_OK


def handle_cnf(params: Dict[str, Any]) -> int:
    text = to_cnf(params["n"], ClassSpec.parse(params["spec"]))
    output = params.get("output")
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        logging.debug("CNF written to %s", output)
    else:
        print(text, end="")
    return EXIT_OK


def handle_qgraph(params: Dict[str, Any]) -> int:
    q = QGraphParams(params["n"], params["k"], params["p"], params["q"])
    mode = params["mode"]

    if mode == "degree":
        degree = degree_formula(q)
        emit(params, str(degree), {"params": str(q), "degree": degree})
    elif mode == "complete":
        complete = is_complete(q)
        emit(params, str(complete).lower(), {"params": str(q), "complete": complete})
    elif mode == "verify_degree":
        degree = degree_formula(q)
        logging.debug("Checking %d vertices of %s", vertex_count(q), q)
        observed = sorted({len(brute_force_neighbors(q, D))
                           for D in enumerate_faces(q.n, q.k)})
        verified = observed == [degree]
        shown = ",".join(str(d) for d in observed)
        emit(params, f"degree: {degree}, observed: {shown}, "
                     f"verified: {str(verified).lower()}",
             {"params": str(q), "degree": degree, "observed": observed, "verified": verified})
        return EXIT_OK if verified else EXIT_DOMAIN
    elif mode == "independent_set":
        faces = independent_set(q)
        emit(params, "\n".join(f.letters for f in faces),
             {"params": str(q), "size": len(faces), "faces": [f.letters for f in faces]})
    elif mode == "clique":
        if q.k != 3:
            raise DimensionMismatchError("the clique construction lives in Q(n,3,3,2)")
        faces = clique_construction(q.n)
        emit(params, "\n".join(f.letters for f in faces),
             {"params": str(q), "size": len(faces), "faces": [f.letters for f in faces]})
    elif mode == "coloring":
        coloring = greedy_coloring(q)
        emit(params, f"colors: {coloring.num_colors}, degree: {coloring.max_degree}, "
                     f"within-degree: {str(coloring.within_max_degree).lower()}",
             {"params": str(q), "colors": coloring.num_colors, "degree": coloring.max_degree,
              "within_degree": coloring.within_max_degree,
              "largest_class": [f.letters for f in coloring.largest_class()]})
    return EXIT_OK


def handle_puzzle(params: Dict[str, Any]) -> int:
    n, k = params["n"], params["k"]
    rng = random.Random(params["seed"])
    frames = puzzle_frames(n, k)
    all_ok = True
    blocks, payload = [], []
    for _ in range(params.get("count") or 1):
        assignment = random_assignment(frames, rng)
        G = puzzle_lift(assignment, n)
        certificate = certify(assignment, G)
        all_ok = all_ok and certificate.gaussoid
        blocks.append(format_structure(G) + str(certificate))
        payload.append({"squares": squares_payload(G), "gaussoid": certificate.gaussoid,
                        "frames": certificate.frames, "pieces_hash": certificate.pieces_hash})
    emit(params, "\n".join(blocks), payload)
    return EXIT_OK if all_ok else EXIT_DOMAIN


def handle_graph_gaussoid(params: Dict[str, Any]) -> int:
    if params.get("invert"):
        G = graph_from_gaussoid(load_structure(params["file"]))
        emit(params, format_graph(G).rstrip("\n"),
             {"n": G.n, "edges": [[u + 1, v + 1] for u, v in sorted(G.edges)]})
    else:
        A = separation_gaussoid(parse_graph(read_text(params["file"])))
        emit(params, format_structure(A).rstrip("\n"), {"n": A.n, "squares": squares_payload(A)})
    return EXIT_OK


def handle_bounds(params: Dict[str, Any]) -> int:
    report = bound_report(params["n"])
    rows = report.rows()
    emit(params, "\n".join(f"{key}: {value}" for key, value in rows),
         {"n": report.n, **dict(rows)})
    return EXIT_OK


COMMANDS: Dict[str, Callable[[Dict[str, Any]], int]] = {
    "check": handle_check,
    "minor": handle_minor,
    "dual": handle_dual,
    "classify": handle_classify,
    "count": handle_count,
    "enumerate": handle_enumerate,
    "cnf": handle_cnf,
    "qgraph": handle_qgraph,
    "puzzle": handle_puzzle,
    "graph-gaussoid": handle_graph_gaussoid,
    "bounds": handle_bounds,
}


def execute(params: Dict[str, Any]) -> int:
    """
    Führt ein Unterkommando mit den angegebenen Parametern aus.

    Args:
        params: Die Parameter des Unterkommandos, ``command`` wählt den Handler

    Returns:
        int: Exit-Code
    """
    logging.debug("Executing with params: %s", params)
    return COMMANDS[params["command"]](params)
