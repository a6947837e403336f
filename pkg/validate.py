"""
Pre-flight validation script.

Run this after installing or changing the analyzer to verify:
1. Every built-in system parses and validates
2. Coset data of the reference systems (L', Ψ_0)
3. Coincidence verdicts and minimal k of the reference systems
4. The worst-case family reaches (m-1)^2
5. Collaring of the nonadmissible example
6. Dekking data of the 1D constant-length examples

Usage:
    python validate.py

Nothing is written to disk.
"""

import sys

import config
from coincidence.census import verify_worst_case
from coincidence.graph import Status
from parsing.builtins import builtin, list_builtins
from reporting.analyzer import AUTO_RADIUS, AnalysisOptions, analyze
from utils.errors import ModcoError
from utils.logger import get_logger

log = get_logger("validate")

# ANSI colors for terminal output
GREEN = "\033[92m"
RED = "\033[91m"
YELLOW = "\033[93m"
BOLD = "\033[1m"
RESET = "\033[0m"

# name -> (status, minimal k or None when not pinned)
EXPECTED_VERDICTS = {
    "abab": (Status.COINCIDENT, 0),
    "periodic1": (Status.COINCIDENT, None),
    "thue-morse": (Status.NOT_COINCIDENT, None),
    "kolakoski24": (Status.COINCIDENT, 2),
    "chair": (Status.COINCIDENT, 2),
    "table": (Status.NOT_COINCIDENT, None),
    "paperfolding": (Status.COINCIDENT, None),
    "height2": (Status.COINCIDENT, None),
    "house": (Status.NOT_COINCIDENT, None),
    "nonadmissible1-equivalent": (Status.COINCIDENT, 0),
    "nonadmissible2-equivalent": (Status.COINCIDENT, 2),
}


def ok(msg: str) -> None:
    print(f"  {GREEN}PASS{RESET}  {msg}")


def fail(msg: str) -> None:
    print(f"  {RED}FAIL{RESET}  {msg}")


def warn(msg: str) -> None:
    print(f"  {YELLOW}WARN{RESET}  {msg}")


def info(msg: str) -> None:
    print(f"  ----  {msg}")


def validate() -> bool:
    """Run all validation checks. Returns True if all checks pass."""
    all_passed = True

    print()
    print(f"{BOLD}{'=' * 60}{RESET}")
    print(f"{BOLD}  Modular Coincidence Analyzer: Pre-flight Validation{RESET}")
    print(f"{BOLD}{'=' * 60}{RESET}")
    print()
    print(f"  Max depth:     {BOLD}{config.MAX_DEPTH}{RESET}")
    print(f"  Stable steps:  {BOLD}{config.STABLE_STEPS}{RESET}")
    print(f"  Patch budget:  {config.MAX_PATCH_POINTS}")
    print()

    # ------------------------------------------------------------------
    # Check 1: built-ins parse
    # ------------------------------------------------------------------
    print(f"{BOLD}[1/6] Built-in Systems{RESET}")

    for name, _ in list_builtins():
        try:
            builtin(name.split(":")[0])
        except ModcoError as e:
            fail(f"{name}: {e}")
            all_passed = False
    ok(f"{len(list_builtins())} built-in systems parse")

    # ------------------------------------------------------------------
    # Check 2: coset data
    # ------------------------------------------------------------------
    print(f"\n{BOLD}[2/6] Coset Data{RESET}")

    try:
        result = analyze(builtin("periodic1"), "builtin:periodic1")
        cosets = result.report.cosets
        lattices = cosets.color_lattices
        if lattices == {"a": "3Z", "b": "2Z", "c": "2Z"} and cosets.lattice_sum == "Z":
            ok("periodic1: L_a = 3Z, L_b = L_c = 2Z, L' = Z")
        else:
            fail(f"periodic1: unexpected lattices {lattices}, L' = {cosets.lattice_sum}")
            all_passed = False

        result = analyze(builtin("kolakoski24"), "builtin:kolakoski24")
        psi0 = {c.coset: "".join(c.colors) for c in result.report.cosets.classes}
        if psi0 == {"0": "abc"} and result.report.cosets.lattice_sum == "Z":
            ok("kolakoski24: L' = Z, Ψ_0 = {a,b,c}")
        else:
            fail(f"kolakoski24: unexpected Ψ_0 {psi0}")
            all_passed = False
    except ModcoError as e:
        fail(f"Coset computation failed: {e}")
        all_passed = False

    # ------------------------------------------------------------------
    # Check 3: verdicts
    # ------------------------------------------------------------------
    print(f"\n{BOLD}[3/6] Coincidence Verdicts{RESET}")

    for name, (status, min_k) in EXPECTED_VERDICTS.items():
        try:
            verdict = analyze(builtin(name), f"builtin:{name}").verdict
        except ModcoError as e:
            fail(f"{name}: {e}")
            all_passed = False
            continue
        if verdict.status is not status:
            fail(f"{name}: {verdict.status.value}, expected {status.value}")
            all_passed = False
        elif min_k is not None and verdict.min_k != min_k:
            fail(f"{name}: minimal k = {verdict.min_k}, expected {min_k}")
            all_passed = False
        else:
            suffix = f" (k = {verdict.min_k})" if verdict.min_k is not None else ""
            ok(f"{name}: {status.value}{suffix}")

    # ------------------------------------------------------------------
    # Check 4: worst-case family
    # ------------------------------------------------------------------
    print(f"\n{BOLD}[4/6] Worst-Case Family{RESET}")

    for m, k in verify_worst_case(range(2, 7)):
        if k == (m - 1) ** 2:
            ok(f"m = {m}: minimal k = {k}")
        else:
            fail(f"m = {m}: minimal k = {k}, expected {(m - 1) ** 2}")
            all_passed = False

    # ------------------------------------------------------------------
    # Check 5: collaring
    # ------------------------------------------------------------------
    print(f"\n{BOLD}[5/6] Collaring{RESET}")

    try:
        plain = analyze(builtin("nonadmissible1"), "builtin:nonadmissible1")
        if plain.verdict.status is Status.INCONCLUSIVE:
            ok("nonadmissible1 without collaring stays undecided")
        else:
            warn(f"nonadmissible1 without collaring: {plain.verdict.status.value}")

        collared = analyze(
            builtin("nonadmissible1"),
            "builtin:nonadmissible1",
            AnalysisOptions(collar=AUTO_RADIUS),
        )
        section = collared.report.collaring
        info(f"radius {section.radius}, {section.classes} collared classes")
        if collared.verdict.status is Status.COINCIDENT and section.refinement_ok:
            ok(f"nonadmissible1: {collared.report.verdict.headline}")
        else:
            fail(f"nonadmissible1 collared: {collared.report.verdict.headline}")
            all_passed = False
    except ModcoError as e:
        fail(f"Collaring failed: {e}")
        all_passed = False

    # ------------------------------------------------------------------
    # Check 6: Dekking data
    # ------------------------------------------------------------------
    print(f"\n{BOLD}[6/6] Height & Dekking Coincidence{RESET}")

    for name, h in (("paperfolding", 1), ("height2", 2)):
        try:
            dekking = analyze(builtin(name), f"builtin:{name}").report.dekking
        except ModcoError as e:
            fail(f"{name}: {e}")
            all_passed = False
            continue
        if dekking is not None and dekking.h == h:
            ok(f"{name}: h = {h}, internal space {dekking.internal_space}")
        else:
            fail(f"{name}: expected height {h}, got {dekking.h if dekking else None}")
            all_passed = False

    # ------------------------------------------------------------------
    # Summary
    # ------------------------------------------------------------------
    print()
    print(f"{BOLD}{'=' * 60}{RESET}")
    if all_passed:
        print(f"{GREEN}{BOLD}  ALL CHECKS PASSED{RESET}")
        print(f"  Next step: {BOLD}python main.py analyze builtin:kolakoski24{RESET}")
    else:
        print(f"{RED}{BOLD}  SOME CHECKS FAILED, fix the issues above{RESET}")
    print(f"{BOLD}{'=' * 60}{RESET}")
    print()
    return all_passed


def main():
    result = validate()
    sys.exit(0 if result else 1)


if __name__ == "__main__":
    main()
