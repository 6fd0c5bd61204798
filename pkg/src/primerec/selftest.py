"""Built-in verification suites: character properties and oracle equivalence.

These are the same checks the test battery runs, packaged so a deployed
installation can validate itself from the command line.  Each check prints
one PASS/FAIL line; the entry point returns the number of failures.
"""

from __future__ import annotations

import itertools
import math
import sys
from fractions import Fraction

from . import oracle, recursion
from .characters import CHAR_ZERO, CharValue, enumerate_characters
from .mpnum import PrecisionContext

__all__ = ["run_selftest", "character_property_failures", "oracle_equivalence_failures"]

CHARACTER_K_MAX = 50
BRUTE_FORCE_K = (3, 4, 5, 8)
ORACLE_MODULI = (1, 4, 8)
ORACLE_N = range(1, 7)
ORACLE_S = (5, 10, 20, 40)
ORACLE_REL_BITS = 64


def _phi(k: int) -> int:
    return sum(1 for n in range(k) if math.gcd(n, k) == 1) or 1


def character_property_failures(k_max: int = CHARACTER_K_MAX) -> list:
    """Count, multiplicativity, orthogonality and zero pattern for k <= k_max."""
    failures = []
    ctx = PrecisionContext(256)
    tol = Fraction(1, 1 << 200)
    for k in range(1, k_max + 1):
        group = enumerate_characters(k)
        if len(group) != _phi(k):
            failures.append(f"modulus {k}: expected {_phi(k)} characters, got {len(group)}")
        for ch in group.characters:
            for m in range(k):
                for n in range(k):
                    if ch((m * n) % k) != ch(m).mul(ch(n)):
                        failures.append(
                            f"modulus {k} label {ch.label}: multiplicativity fails at ({m},{n})"
                        )
                        break
                else:
                    continue
                break
            for n in range(k):
                if ch(n).is_zero != (k > 1 and math.gcd(n, k) > 1):
                    failures.append(
                        f"modulus {k} label {ch.label}: zero pattern fails at n={n}"
                    )
                    break
            if not ch.is_principal:
                acc = ctx.complex(ctx.from_int(0))
                for n in range(k):
                    v = ch(n)
                    if not v.is_zero:
                        acc = ctx.add(acc, ctx.root_of_unity(v.a, v.m))
                mag = ctx.complex_abs(acc)
                if mag.to_fraction() > tol:
                    failures.append(
                        f"modulus {k} label {ch.label}: orthogonality sum is {mag!r}"
                    )
    return failures


def _brute_force_tables(k: int) -> set:
    """Every completely multiplicative unit-valued table mod k, by search.

    Exhaustively assigns each unit a phi(k)-th root of unity (exponents
    0..phi-1, with f(1) fixed to 1), keeps the assignments that are
    completely multiplicative, and fills non-units with 0.  Unit values of
    any such table are roots of unity of order dividing phi(k), so the
    search space is a superset of all valid tables.
    """
    units = [n for n in range(k) if math.gcd(n, k) == 1]
    phi = len(units)
    free_units = [u for u in units if u != 1]
    tables = set()
    for combo in itertools.product(range(phi), repeat=len(free_units)):
        f = {1: 0}
        f.update(zip(free_units, combo))
        if all(f[(a * b) % k] == (f[a] + f[b]) % phi for a in units for b in units):
            tables.add(
                tuple(
                    CharValue.root(f[n], phi) if math.gcd(n, k) == 1 else CHAR_ZERO
                    for n in range(k)
                )
            )
    return tables


def brute_force_equivalence_failures(ks=BRUTE_FORCE_K) -> list:
    failures = []
    for k in ks:
        found = {ch.table for ch in enumerate_characters(k).characters}
        expected = _brute_force_tables(k)
        if found != expected:
            failures.append(
                f"modulus {k}: enumerated tables disagree with brute-force search "
                f"({len(found)} vs {len(expected)})"
            )
    return failures


def oracle_equivalence_failures() -> list:
    """Multiprecision residual vs the exact Gaussian-rational route."""
    failures = []
    for k in ORACLE_MODULI:
        for ch in enumerate_characters(k).characters:
            for n in ORACLE_N:
                for s in ORACLE_S:
                    value = recursion.residual(n, s, ch)
                    exact = oracle.residual_exact(n, s, ch)
                    if not oracle.abs2_delta_within(value, exact, ORACLE_REL_BITS):
                        failures.append(
                            f"residual(n={n}, s={s}, modulus {k} label {ch.label}) "
                            f"deviates from the exact oracle beyond 2**-{ORACLE_REL_BITS}"
                        )
    return failures


def run_selftest(stream=None) -> int:
    """Run all suites, print one line per suite, return the failure count."""
    stream = stream or sys.stdout

    def report(name: str, failures: list) -> int:
        tag = "PASS" if not failures else "FAIL"
        print(f"{tag}  {name}", file=stream)
        for f in failures[:20]:
            print(f"      {f}", file=stream)
        return len(failures)

    total = 0
    total += report(
        f"character properties (count, multiplicativity, orthogonality, zeros; k <= {CHARACTER_K_MAX})",
        character_property_failures(),
    )
    total += report(
        f"brute-force character equivalence (k in {BRUTE_FORCE_K})",
        brute_force_equivalence_failures(),
    )
    total += report(
        f"oracle equivalence (moduli {ORACLE_MODULI}, n in [1,6], s in {ORACLE_S})",
        oracle_equivalence_failures(),
    )
    return total
