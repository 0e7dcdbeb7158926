"""Command-line front end: classification, root listings, and verification
campaigns with JSON reports."""

import argparse
import json
import sys
import time

from .affine import (
    AffineMatrixGroup,
    commutator_identity_check,
    congruence_subgroup,
    borel_subgroup,
    enumerate_special_linear,
    frattini_dimension_affine,
    monomial_subgroup,
    sylow_generators,
    sylow_order,
    sylow_table,
    verify_generation,
    weyl_representatives,
)
from .errors import (
    CharacteristicTooSmall,
    EnumerationCapExceeded,
    GcmError,
    HypothesisViolated,
    KmError,
    TruncationTooShallow,
)
from .fields import FqConfig, is_prime
from .gcm import classify, validate_gcm
from .lie import build_positive_part
from .pgroup import (
    DEFAULT_CAP,
    check_filtration_lemma,
    closure,
    derived_subgroup,
    frattini_subgroup,
    verify_tits_axioms,
)
from .roots import (
    IMAGINARY,
    REAL,
    positive_real_roots_up_to_height,
    positive_roots_up_to_height,
    root_status,
    roots_to_json,
    simple_root,
    weyl_apply,
)
from .unipotent import verify_theorem1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2

# precondition violations turn a check into a skip, named by error class
SKIP_ERRORS = (
    CharacteristicTooSmall,
    HypothesisViolated,
    TruncationTooShallow,
    EnumerationCapExceeded,
)


class CampaignError(Exception):
    pass


DEFAULT_CAMPAIGN = {
    "name": "default",
    "seed": 20260819,
    "instances": [
        {"model": "bch", "gcm": [[2, -1], [-1, 2]], "q": 5, "H": 3,
         "checks": ["roots", "lie", "theorem1"]},
        {"model": "bch", "gcm": [[2, -1], [-1, 2]], "q": 25, "H": 3,
         "checks": ["theorem1"]},
        {"model": "bch", "gcm": [[2, -1], [-2, 2]], "q": 5, "H": 4,
         "checks": ["theorem1"]},
        {"model": "bch", "gcm": [[2, -1], [-3, 2]], "q": 5, "H": 4,
         "checks": ["roots", "lie", "theorem1"]},
        {"model": "bch", "gcm": [[2, -1], [-3, 2]], "q": 7, "H": 4,
         "checks": ["theorem1"]},
        {"model": "bch", "gcm": [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
         "q": 5, "H": 4, "checks": ["theorem1"]},
        {"model": "bch", "gcm": [[2, -2], [-2, 2]], "q": 5, "H": 4,
         "checks": ["roots", "lie"]},
        # skipped: p = 2 does not exceed the height cutoff
        {"model": "bch", "gcm": [[2, -1], [-1, 2]], "q": 4, "H": 3,
         "checks": ["theorem1"]},
        # skipped: p = 2 does not exceed the off-diagonal size 2
        {"model": "affine", "m": 2, "q": 2, "k": 2, "checks": ["theorem1"]},
        {"model": "affine", "m": 2, "q": 3, "k": 2,
         "checks": ["theorem1", "cor_linear", "generation"]},
        {"model": "affine", "m": 2, "q": 3, "k": 3,
         "checks": ["cor_linear", "generation", "filtration"]},
        {"model": "affine", "m": 2, "q": 9, "k": 2, "checks": ["cor_linear"]},
        {"model": "affine", "m": 3, "q": 3, "k": 2, "checks": ["cor_linear"]},
        {"model": "affine", "m": 3, "q": 2, "k": 2, "checks": ["generation"]},
        {"model": "affine", "m": 2, "q": 3, "k": 4, "checks": ["filtration"]},
        {"model": "affine", "q": 2, "K": 10, "max_exp": 3,
         "checks": ["commutator"]},
        {"model": "affine", "q": 3, "K": 10, "max_exp": 3,
         "checks": ["commutator"]},
        {"model": "affine", "q": 4, "K": 10, "max_exp": 3,
         "checks": ["commutator"]},
        {"model": "affine", "m": 2, "q": 2, "k": 1, "checks": ["tits"]},
        {"model": "affine", "m": 2, "q": 3, "k": 1, "checks": ["tits"]},
        {"model": "affine", "m": 3, "q": 2, "k": 1, "checks": ["tits"]},
    ],
}


def _fq_from_q(q):
    if not isinstance(q, int) or q < 2:
        raise CampaignError(f"q must be an integer prime power, got {q!r}")
    for p in range(2, q + 1):
        if not is_prime(p):
            continue
        if q % p == 0:
            r = 0
            n = q
            while n % p == 0:
                n //= p
                r += 1
            if n != 1:
                raise CampaignError(f"q = {q} is not a prime power")
            return FqConfig(p, r)
    raise CampaignError(f"q = {q} is not a prime power")


def _require(inst, *names):
    out = []
    for name in names:
        if name not in inst:
            raise CampaignError(f"instance is missing the field {name!r}")
        out.append(inst[name])
    return out[0] if len(out) == 1 else out


def _load_gcm_value(value):
    if isinstance(value, dict):
        return validate_gcm(value["matrix"], labels=value.get("labels"))
    return validate_gcm(value)


def _check_roots(inst, seed, cap):
    import random

    gcm = _load_gcm_value(_require(inst, "gcm"))
    cutoff = _require(inst, "H")
    tagged = positive_roots_up_to_height(gcm, cutoff)
    real = {alpha for alpha, tag in tagged if tag == REAL}
    imaginary = {alpha for alpha, tag in tagged if tag == IMAGINARY}
    ok = real == set(positive_real_roots_up_to_height(gcm, cutoff))
    for alpha in real:
        status = root_status(gcm, alpha)
        replay = weyl_apply(gcm, status.word, simple_root(status.simple))
        ok = ok and replay == alpha
    rng = random.Random(seed)
    labels = list(gcm.labels)
    samples = 0
    for alpha, tag in sorted(tagged, key=lambda t: (t[0].items,)):
        for _ in range(3):
            word = tuple(
                labels[rng.randrange(len(labels))]
                for _ in range(rng.randrange(1, 5))
            )
            moved = weyl_apply(gcm, word, alpha)
            ok = ok and root_status(gcm, moved).tag == tag
            samples += 1
    payload = {
        "real": len(real),
        "imaginary": len(imaginary),
        "invariance_samples": samples,
    }
    return payload, ok


def _check_lie(inst, seed, cap):
    import random

    gcm = _load_gcm_value(_require(inst, "gcm"))
    cutoff = _require(inst, "H")
    algebra = build_positive_part(gcm, cutoff)
    tagged = positive_roots_up_to_height(gcm, cutoff)
    supports = {alpha for alpha, _ in tagged}
    ok = set(algebra.by_degree) == supports
    for alpha, tag in tagged:
        mult = len(algebra.by_degree.get(alpha, ()))
        if tag == REAL:
            ok = ok and mult == 1
        else:
            ok = ok and mult >= 1
    from .lie import bracket

    fld = algebra.field
    dim = algebra.dimension
    rng = random.Random(seed)
    triples = min(500, dim ** 3)
    for _ in range(triples):
        i, j, k = (rng.randrange(dim) for _ in range(3))
        x, y, z = ({i: fld.one}, {j: fld.one}, {k: fld.one})
        acc = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            term = bracket(algebra, a, bracket(algebra, b, c))
            for idx, v in term.items():
                s = fld.add(acc.get(idx, fld.zero), v)
                if s == fld.zero:
                    acc.pop(idx, None)
                else:
                    acc[idx] = s
        ok = ok and not acc
    payload = {
        "dimensions_per_height": algebra.dimensions_per_height(),
        "jacobi_samples": triples,
    }
    return payload, ok


def _check_theorem1_bch(inst, seed, cap):
    gcm = _load_gcm_value(_require(inst, "gcm"))
    q, cutoff = _require(inst, "q", "H")
    fq = _fq_from_q(q)
    report = verify_theorem1(gcm, fq, cutoff, cap=cap)
    finite_type = classify(gcm).tag == "finite"
    ok = (
        report["h1_blackbox"] == report["h1_linear"] == report["h1_predicted"]
        and report["frattini_eq_derived"]
        and report["generators_generate"]
    )
    if finite_type:
        ok = ok and report["thm_ii_lhs_order"] == report["thm_ii_rhs_order"]
    report = dict(report)
    report["model"] = "bch"
    report["thm_ii_asserted"] = finite_type
    return report, ok


def _affine_hypothesis(m, fq):
    # largest off-diagonal entry of the rank-m affine diagram: 2 when the
    # cycle degenerates to a double bond (m = 2), else 1
    bound = 2 if m == 2 else 1
    if fq.p <= bound:
        raise HypothesisViolated(
            f"p = {fq.p} must exceed the off-diagonal size {bound}"
        )


def _check_theorem1_affine(inst, seed, cap):
    m, q, k = _require(inst, "m", "q", "k")
    fq = _fq_from_q(q)
    _affine_hypothesis(m, fq)
    t0 = time.perf_counter()
    _, table = sylow_table(m, fq, k, cap=cap)
    phi = frattini_subgroup(table, cap=cap)
    derived = derived_subgroup(table, cap=cap)
    from .pgroup import _log_exact

    h1 = _log_exact(table.order // phi.order, fq.p)
    predicted = m * fq.r if k >= 2 else (m - 1) * fq.r
    generate = verify_generation(m, fq, k, cap=cap)
    report = {
        "model": "affine_matrix",
        "gcm": None,
        "m": m,
        "k": k,
        "q": q,
        "H": None,
        "h1_blackbox": h1,
        "h1_linear": None,
        "h1_predicted": predicted,
        "frattini_eq_derived": phi.element_set == derived.element_set,
        "thm_ii_lhs_order": None,
        "thm_ii_rhs_order": None,
        "generators_generate": generate,
        "elapsed_ms": int(round((time.perf_counter() - t0) * 1000)),
    }
    ok = h1 == predicted and generate
    return report, ok


def _check_cor_linear(inst, seed, cap):
    m, q, k = _require(inst, "m", "q", "k")
    fq = _fq_from_q(q)
    _affine_hypothesis(m, fq)
    h1 = frattini_dimension_affine(m, fq, k, cap=cap)
    predicted = m * fq.r if k >= 2 else (m - 1) * fq.r
    return {"h1": h1, "predicted": predicted}, h1 == predicted


def _check_generation(inst, seed, cap):
    m, q, k = _require(inst, "m", "q", "k")
    fq = _fq_from_q(q)
    generate = verify_generation(m, fq, k, cap=cap)
    group = AffineMatrixGroup(m, fq, k)
    oracle = group.oracle()
    gens = [group.key(A) for A in sylow_generators(m, fq, k)]
    partial = closure(gens[: -fq.r], oracle, cap=cap, p=fq.p)
    corner_needed = partial.order < sylow_order(m, fq, k)
    payload = {
        "generates": generate,
        "partial_order": partial.order,
        "full_order": sylow_order(m, fq, k),
    }
    return payload, generate and corner_needed


def _check_commutator(inst, seed, cap):
    q, K, max_exp = _require(inst, "q", "K", "max_exp")
    fq = _fq_from_q(q)
    cases = 0
    ok = True
    for r_val in range(fq.q):
        for s_val in range(fq.q):
            for m_exp in range(1, max_exp + 1):
                for n_exp in range(1, max_exp + 1):
                    ok = ok and commutator_identity_check(
                        fq, r_val, s_val, m_exp, n_exp, K
                    )
                    cases += 1
    return {"cases": cases}, ok


def _check_filtration(inst, seed, cap):
    m, q, k = _require(inst, "m", "q", "k")
    fq = _fq_from_q(q)
    pre = sylow_table(m, fq, k, cap=cap)
    _, table = pre
    V = derived_subgroup(table, cap=cap)
    chain = [
        congruence_subgroup(m, fq, k, i, cap=cap, precomputed=pre).table
        for i in range(2, k + 1)
    ]
    if not chain:
        raise CampaignError("filtration check needs k >= 2")
    report = check_filtration_lemma(table, chain, V)
    ok = (
        all(report["normal"])
        and report["hypothesis_holds"]
        and bool(report["conclusion_holds"])
    )
    return report, ok


def _check_tits(inst, seed, cap):
    m, q = _require(inst, "m", "q")
    fq = _fq_from_q(q)
    group, table = enumerate_special_linear(m, fq, cap=cap)
    B = borel_subgroup(group, table)
    N = monomial_subgroup(group, table)
    report = verify_tits_axioms(table, B, N, weyl_representatives(group), cap=cap)
    return dict(report), all(report.values())


CHECKS = {
    ("bch", "roots"): _check_roots,
    ("bch", "lie"): _check_lie,
    ("bch", "theorem1"): _check_theorem1_bch,
    ("affine", "theorem1"): _check_theorem1_affine,
    ("affine", "cor_linear"): _check_cor_linear,
    ("affine", "generation"): _check_generation,
    ("affine", "commutator"): _check_commutator,
    ("affine", "filtration"): _check_filtration,
    ("affine", "tits"): _check_tits,
}


def _run_instance(index, inst, seed, cap):
    model = inst.get("model")
    checks = inst.get("checks")
    if model not in ("bch", "affine"):
        raise CampaignError(f"instance {index}: unknown model {model!r}")
    if not isinstance(checks, list) or not checks:
        raise CampaignError(f"instance {index}: checks must be a nonempty list")
    results = []
    for name in checks:
        fn = CHECKS.get((model, name))
        if fn is None:
            raise CampaignError(
                f"instance {index}: check {name!r} is not defined for "
                f"model {model!r}"
            )
        try:
            payload, ok = fn(inst, seed + index, cap)
        except SKIP_ERRORS as err:
            results.append(
                {
                    "check": name,
                    "status": "skipped",
                    "reason": type(err).__name__,
                    "detail": str(err),
                }
            )
            continue
        results.append(
            {
                "check": name,
                "status": "pass" if ok else "fail",
                "payload": payload,
            }
        )
    params = {k: v for k, v in inst.items() if k not in ("model", "checks")}
    return {"index": index, "model": model, "params": params, "results": results}


def run_campaign(campaign, seed=None, cap=None):
    if not isinstance(campaign, dict) or "instances" not in campaign:
        raise CampaignError("campaign must be an object with an instances list")
    seed = campaign.get("seed", 0) if seed is None else seed
    cap = cap or DEFAULT_CAP
    instances = campaign["instances"]
    report = {
        "campaign": campaign.get("name", "unnamed"),
        "seed": seed,
        "cap": cap,
        "instances": [
            _run_instance(i, inst, seed, cap) for i, inst in enumerate(instances)
        ],
    }
    return report


def _strip_volatile(obj):
    if isinstance(obj, dict):
        return {
            k: _strip_volatile(v) for k, v in obj.items() if k != "elapsed_ms"
        }
    if isinstance(obj, list):
        return [_strip_volatile(v) for v in obj]
    return obj


def _summarize(report, out):
    failures = 0
    for inst in report["instances"]:
        label = f"instance {inst['index']} ({inst['model']})"
        for res in inst["results"]:
            if res["status"] == "pass":
                print(f"[PASS] {label} {res['check']}", file=out)
            elif res["status"] == "skipped":
                print(
                    f"[SKIP] {label} {res['check']} ({res['reason']})", file=out
                )
            else:
                failures += 1
                print(f"[FAIL] {label} {res['check']}", file=out)
    return failures


def _cmd_classify(args, out):
    try:
        with open(args.gcm_file) as fh:
            data = json.load(fh)
        gcm = _load_gcm_value(data)
    except (OSError, ValueError, KeyError, GcmError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    result = classify(gcm)
    if args.json:
        print(
            json.dumps(
                {
                    "type": result.tag,
                    "blocks": [
                        {"labels": list(labels), "type": tag}
                        for labels, tag in result.blocks
                    ],
                    "indecomposable": result.is_indecomposable,
                },
                indent=2,
                sort_keys=True,
            ),
            file=out,
        )
    else:
        print(result.tag, file=out)
        for labels, tag in result.blocks:
            print(f"  block {list(labels)}: {tag}", file=out)
    return EXIT_OK


def _cmd_roots(args, out):
    try:
        with open(args.gcm_file) as fh:
            data = json.load(fh)
        gcm = _load_gcm_value(data)
        if args.height < 1:
            raise ValueError("height must be at least 1")
    except (OSError, ValueError, KeyError, GcmError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    tagged = positive_roots_up_to_height(gcm, args.height)
    rows = roots_to_json(gcm, tagged)
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True), file=out)
    else:
        for row in rows:
            print(
                f"{row['coords']} height={row['height']} {row['status']}",
                file=out,
            )
        print(f"{len(rows)} positive roots", file=out)
    return EXIT_OK


def _cmd_verify(args, out):
    try:
        if args.campaign_file:
            with open(args.campaign_file) as fh:
                campaign = json.load(fh)
        else:
            campaign = DEFAULT_CAMPAIGN
        report = run_campaign(campaign, seed=args.seed, cap=args.cap)
    except (OSError, ValueError, KeyError, CampaignError, GcmError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.verify_report:
        try:
            with open(args.verify_report) as fh:
                stored = json.load(fh)
        except (OSError, ValueError) as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_CONFIG
        same = _strip_volatile(stored) == _strip_volatile(report)
        print(
            "report matches" if same else "report mismatch",
            file=out,
        )
        if not same:
            return EXIT_CHECK_FAILED
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True), file=out)
        failures = sum(
            1
            for inst in report["instances"]
            for res in inst["results"]
            if res["status"] == "fail"
        )
    else:
        failures = _summarize(report, out)
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kmsylow",
        description=(
            "Verification toolkit for truncated Kac-Moody Sylow models"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser(
        "classify", help="classify a generalized Cartan matrix"
    )
    p_classify.add_argument("gcm_file")
    p_classify.add_argument("--json", action="store_true")

    p_roots = sub.add_parser("roots", help="list positive roots up to a height")
    p_roots.add_argument("gcm_file")
    p_roots.add_argument("--height", type=int, required=True)
    p_roots.add_argument("--json", action="store_true")

    p_verify = sub.add_parser("verify", help="run a verification campaign")
    p_verify.add_argument("campaign_file", nargs="?")
    p_verify.add_argument("--json", action="store_true")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--cap", type=int, default=None)
    p_verify.add_argument("--out")
    p_verify.add_argument(
        "--verify-report",
        dest="verify_report",
        help="recompute and compare against a stored report",
    )
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    out = sys.stdout
    if args.command == "classify":
        return _cmd_classify(args, out)
    if args.command == "roots":
        return _cmd_roots(args, out)
    return _cmd_verify(args, out)


if __name__ == "__main__":
    sys.exit(main())
