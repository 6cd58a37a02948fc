"""Assembly of the monodromy at infinity from invariant data.

Inputs: the number of variables is n+1, the polynomial degree is d, the
zero set of the top-degree part is a hypersurface in P^n whose isolated
singularities are given as local models, and the equivariant defects
beta_s are given, derived from node positions, or enumerated.

The assembled Jordan structure is built in two independent layers:

* eigenvalues alpha = e^(2*pi*i*s/d) (d-th roots of unity): with chi_s
  the global Euler-type invariant and T_i the local monodromies, the
  block counts at alpha are
      size 1:    chi_s + 2*beta_s - sum_i #(T_i)_alpha
      size 2:    -beta_s + sum_i #_1(T_i)_alpha
      size l+1:  sum_i #_l(T_i)_alpha             (l >= 2)
  Negative counts mean the beta vector is inadmissible and raise an
  error naming the violated bound.
* eigenvalues with alpha^d != 1: the local blocks of T_i at alpha^(1-d)
  are copied to alpha whenever alpha^(1-d) lies in the spectrum of T_i.

Cross-checks accompany every assembly: the degree identity, the block
size limits, the bound check on beta, the local product formula for the
characteristic polynomial, and the two-forms identity for the zeta
function of the top form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from .cyclo import ONE, RootExponentVector, UnitRoot, mth_roots
from .defect import ProjectivePointSet, nodal_beta
from .jordan import JordanStructure
from .localsing import (
    OrdinaryNode,
    SingularityModel,
    local_monodromy,
    milnor_number,
    parse_singularities,
)

DEFAULT_ENUMERATE_CAP = 1024


class InstanceError(ValueError):
    """Invalid or inconsistent problem data (reported as input error)."""


@dataclass(frozen=True)
class GivenBeta:
    values: tuple[int, ...]


@dataclass(frozen=True)
class FromNodes:
    points: ProjectivePointSet


@dataclass(frozen=True)
class EnumerateBeta:
    pass


BetaSpec = Union[GivenBeta, FromNodes, EnumerateBeta]


@dataclass(frozen=True)
class ProblemSpec:
    n: int
    d: int
    singularities: tuple[SingularityModel, ...]
    beta: BetaSpec

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise InstanceError("n must be >= 2")
        if not isinstance(self.d, int) or self.d < 2:
            raise InstanceError("d must be >= 2")
        object.__setattr__(self, "singularities", tuple(self.singularities))
        # force early validation of each local model (exponent counts etc.)
        for model in self.singularities:
            local_monodromy(model, self.n)
        total_mu = sum(milnor_number(m) for m in self.singularities)
        space = (self.d - 1) ** (self.n + 1)
        if total_mu > space:
            raise InstanceError(
                f"total local Milnor number {total_mu} exceeds "
                f"(d-1)^(n+1) = {space}; no such hypersurface data")
        beta = self.beta
        if isinstance(beta, GivenBeta):
            values = tuple(beta.values)
            if len(values) != self.d:
                raise InstanceError(
                    f"beta must have exactly d = {self.d} entries, got {len(values)}")
            for s, value in enumerate(values):
                if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                    raise InstanceError(
                        f"beta[{s}] must be a nonnegative integer, got {value!r}")
            for s in range(1, self.d):
                if values[s] != values[self.d - s]:
                    raise InstanceError(
                        f"beta symmetry violated: beta[{s}] = {values[s]} but "
                        f"beta[{self.d - s}] = {values[self.d - s]} "
                        "(beta[s] must equal beta[d-s])")
        elif isinstance(beta, FromNodes):
            non_nodes = [m for m in self.singularities
                         if not isinstance(m, OrdinaryNode)]
            if non_nodes:
                raise InstanceError("FromNodes with non-node singularity")
            if beta.points.dim != self.n:
                raise InstanceError(
                    f"node points live in P^{beta.points.dim}, expected P^{self.n}")
            if len(beta.points) != len(self.singularities):
                raise InstanceError(
                    f"from_nodes needs exactly one point per node: "
                    f"{len(self.singularities)} nodes but {len(beta.points)} points")
        elif not isinstance(beta, EnumerateBeta):
            raise InstanceError(f"unknown beta specification {beta!r}")

    def local_monodromies(self) -> list[JordanStructure]:
        return [local_monodromy(m, self.n) for m in self.singularities]

    def milnor_numbers(self) -> list[int]:
        return [milnor_number(m) for m in self.singularities]


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "not_applicable"
    detail: str

    def to_json(self) -> dict[str, str]:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class BetaEntry:
    beta: tuple[int, ...]
    jordan: JordanStructure
    checks: tuple[CheckResult, ...]


@dataclass(frozen=True)
class Report:
    n: int
    d: int
    mu: tuple[int, ...]
    chi: tuple[int, ...]
    mode: str
    entries: tuple[BetaEntry, ...]
    truncated: bool
    charpoly: RootExponentVector | None
    zeta: RootExponentVector
    checks: tuple[CheckResult, ...]

    @property
    def total_dim(self) -> int:
        return (self.d - 1) ** (self.n + 1) - sum(self.mu)

    def all_checks(self) -> list[tuple[tuple[int, ...] | None, CheckResult]]:
        out: list[tuple[tuple[int, ...] | None, CheckResult]] = [
            (None, check) for check in self.checks]
        for entry in self.entries:
            out.extend((entry.beta, check) for check in entry.checks)
        return out

    def has_failures(self) -> bool:
        return any(check.status == "fail" for _, check in self.all_checks())

    def to_json(self) -> dict[str, object]:
        single = self.mode in ("given", "from_nodes")
        if single:
            beta_used: object = list(self.entries[0].beta)
            jordan: object = self.entries[0].jordan.to_json()
        else:
            beta_used = [list(entry.beta) for entry in self.entries]
            jordan = [entry.jordan.to_json() for entry in self.entries]
        checks = []
        for beta, check in self.all_checks():
            row = check.to_json()
            if beta is not None and not single:
                row["beta"] = list(beta)
            checks.append(row)
        return {
            "n": self.n,
            "d": self.d,
            "mu": list(self.mu),
            "total_dim": self.total_dim,
            "chi": list(self.chi),
            "mode": self.mode,
            "beta_used": beta_used,
            "jordan": jordan,
            "charpoly": None if self.charpoly is None else self.charpoly.to_json(),
            "charpoly_display": None if self.charpoly is None else str(self.charpoly),
            "zeta": self.zeta.to_json(),
            "zeta_display": str(self.zeta),
            "checks": checks,
            "truncated": self.truncated,
        }

    def to_text(self) -> str:
        lines = [
            f"monodromy at infinity: n = {self.n}, d = {self.d}",
            f"local Milnor numbers: {list(self.mu)} (total {sum(self.mu)}); "
            f"operator dimension {self.total_dim}",
            f"chi = {list(self.chi)}",
            f"beta mode: {self.mode}"
            + (" (truncated)" if self.truncated else ""),
        ]
        for entry in self.entries:
            lines.append(f"beta = {list(entry.beta)}")
            if entry.jordan:
                for root in entry.jordan.spectrum():
                    counts = entry.jordan.blocks_at(root)
                    part = ", ".join(f"{counts[size]} x size {size}"
                                     for size in sorted(counts, reverse=True))
                    lines.append(f"  eigenvalue {root}: {part}")
            else:
                lines.append("  empty operator (dimension 0)")
        if not self.entries:
            lines.append("no admissible beta vector")
        if self.charpoly is not None:
            lines.append(f"char poly: {self.charpoly}")
        lines.append(f"zeta of top form: {self.zeta}")
        lines.append("checks:")
        for beta, check in self.all_checks():
            where = "" if beta is None or len(self.entries) <= 1 \
                else f" [beta = {list(beta)}]"
            lines.append(f"  [{check.status}] {check.name}{where}: {check.detail}")
        return "\n".join(lines) + "\n"


def chi_vector(n: int, d: int, mu_list: list[int]) -> list[int]:
    """The d global invariants chi_s attached to the eigenvalues e^(2*pi*i*s/d)."""
    if n < 2:
        raise InstanceError("n must be >= 2")
    if d < 1:
        raise InstanceError("d must be >= 1")
    sign = (-1) ** n
    numerator = sign + (d - 1) ** (n + 1)
    assert numerator % d == 0, "divisibility of (-1)^n + (d-1)^(n+1) by d"
    chi_0 = -sum(mu_list) + numerator // d - sign
    return [chi_0] + [chi_0 + sign] * (d - 1)


def beta_bounds(spec: ProblemSpec, s: int) -> tuple[int, int]:
    """Admissible range for beta_s: block counts at e^(2*pi*i*s/d) stay >= 0.

    lower = max(0, ceil((sum_i #(T_i)_alpha - chi_s) / 2)), from the size-1
    count; upper = sum_i #_1(T_i)_alpha, from the size-2 count.
    """
    if not 0 <= s < spec.d:
        raise InstanceError(f"s must lie in 0..{spec.d - 1}, got {s}")
    locals_ = spec.local_monodromies()
    chi = chi_vector(spec.n, spec.d, spec.milnor_numbers())
    return _bounds_at(spec.d, chi, locals_, s)


def _bounds_at(d: int, chi: list[int], locals_: list[JordanStructure],
               s: int) -> tuple[int, int]:
    alpha = UnitRoot(s, d)
    total_blocks = sum(t.block_count(alpha) for t in locals_)
    size_one = sum(t.sharp(alpha, 1) for t in locals_)
    lower = max(0, (total_blocks - chi[s] + 1) // 2)
    return lower, size_one


def _assemble_structure(spec: ProblemSpec, chi: list[int],
                        locals_: list[JordanStructure],
                        beta: tuple[int, ...]) -> JordanStructure:
    d = spec.d
    blocks: dict[UnitRoot, dict[int, int]] = {}
    for s in range(d):
        alpha = UnitRoot(s, d)
        total_blocks = sum(t.block_count(alpha) for t in locals_)
        size_one = sum(t.sharp(alpha, 1) for t in locals_)
        count_1 = chi[s] + 2 * beta[s] - total_blocks
        count_2 = -beta[s] + size_one
        lower, upper = _bounds_at(d, chi, locals_, s)
        if count_1 < 0:
            raise InstanceError(
                f"negative block count: {count_1} blocks of size 1 at "
                f"eigenvalue {alpha}; beta[{s}] = {beta[s]} is below the "
                f"lower bound {lower} (admissible range {lower}..{upper})")
        if count_2 < 0:
            raise InstanceError(
                f"negative block count: {count_2} blocks of size 2 at "
                f"eigenvalue {alpha}; beta[{s}] = {beta[s]} is above the "
                f"upper bound {upper} (admissible range {lower}..{upper})")
        sizes: dict[int, int] = {}
        if count_1:
            sizes[1] = count_1
        if count_2:
            sizes[2] = count_2
        for t in locals_:
            for size, count in t.blocks_at(alpha).items():
                if size >= 2:
                    sizes[size + 1] = sizes.get(size + 1, 0) + count
        if sizes:
            blocks[alpha] = sizes
    for t in locals_:
        for xi in t.spectrum():
            local_sizes = t.blocks_at(xi)
            for alpha in mth_roots(xi.conjugate(), d - 1):
                if alpha ** d == ONE:
                    continue
                sizes = blocks.setdefault(alpha, {})
                for size, count in local_sizes.items():
                    sizes[size] = sizes.get(size, 0) + count
    return JordanStructure(blocks)


def charpoly_local_formula(spec: ProblemSpec) -> RootExponentVector:
    """Characteristic polynomial of the assembled operator, from local data.

    (x - 1)^((-1)^(n+1)) * (x^d - 1)^(((d-1)^(n+1) + (-1)^n)/d)
    * prod_i [ det(x^(d-1) * Id - T_i) * (x^d - 1)^(-mu_i) ]

    The determinant factor contributes, for each eigenvalue xi of T_i of
    algebraic multiplicity m, the exponent m at every (d-1)-th root of xi.
    Raises when the final exponent vector has a negative entry, which
    signals local data inconsistent with any actual hypersurface.
    """
    n, d = spec.n, spec.d
    sign = (-1) ** n
    numerator = sign + (d - 1) ** (n + 1)
    assert numerator % d == 0, "divisibility of (-1)^n + (d-1)^(n+1) by d"
    out = RootExponentVector.linear(ONE, -sign)
    out = out * RootExponentVector.power_minus_one(d, numerator // d)
    for t in (local_monodromy(m, n) for m in spec.singularities):
        pairs = []
        for xi in t.spectrum():
            mult = t.multiplicity(xi)
            pairs.extend((alpha, mult) for alpha in mth_roots(xi, d - 1))
        out = out * RootExponentVector(pairs)
        out = out * RootExponentVector.power_minus_one(d, -t.total_dim)
    if not out.is_polynomial():
        bad = [str(r) for r, e in out.items() if e < 0]
        raise InstanceError(
            "non-polynomial result: the local product formula leaves negative "
            f"exponents at {', '.join(bad)}; local data admits no consistent "
            "operator")
    return out


def zeta_of_top_form(spec: ProblemSpec) -> RootExponentVector:
    """Zeta function of the degree-d top form, as an exponent vector.

    Computes both closed forms and asserts their equality:
    (x - 1)^((-1)^(n+1)) * (x^d - 1)^(((d-1)^(n+1) + (-1)^n)/d - sum mu_i)
    and prod_s (x - e^(2*pi*i*s/d))^(chi_s).
    """
    n, d = spec.n, spec.d
    mus = spec.milnor_numbers()
    sign = (-1) ** n
    numerator = sign + (d - 1) ** (n + 1)
    assert numerator % d == 0, "divisibility of (-1)^n + (d-1)^(n+1) by d"
    form_a = RootExponentVector.linear(ONE, -sign)
    form_a = form_a * RootExponentVector.power_minus_one(
        d, numerator // d - sum(mus))
    chi = chi_vector(n, d, mus)
    form_b = RootExponentVector((UnitRoot(s, d), chi[s]) for s in range(d))
    assert form_a == form_b, "the two zeta forms disagree"
    return form_a


def check_block_size_limits(structure: JordanStructure, n: int,
                            d: int) -> CheckResult:
    """No block may exceed size n+1; size n+1 only at alpha^d = 1, alpha != 1."""
    problems = []
    for root, size, count in structure.iter_blocks():
        if size >= n + 2:
            problems.append(
                f"{count} blocks of size {size} at eigenvalue {root} exceed "
                f"the maximum size n+1 = {n + 1}")
        elif size == n + 1 and (root ** d != ONE or root == ONE):
            problems.append(
                f"{count} blocks of size {n + 1} at eigenvalue {root}; size "
                f"n+1 is only allowed at nontrivial d-th roots of unity")
    if problems:
        return CheckResult("block_size_limits", "fail", "; ".join(problems))
    return CheckResult(
        "block_size_limits", "pass",
        f"all blocks within the size limits for n = {n}, d = {d}")


def _resolve_beta(spec: ProblemSpec, chi: list[int],
                  locals_: list[JordanStructure],
                  cap: int) -> tuple[str, list[tuple[int, ...]], bool]:
    beta = spec.beta
    if isinstance(beta, GivenBeta):
        return "given", [tuple(beta.values)], False
    if isinstance(beta, FromNodes):
        vector = nodal_beta(beta.points, spec.n, spec.d)
        return "from_nodes", [tuple(vector)], False
    d = spec.d
    free = list(range(d // 2 + 1))
    ranges = []
    for s in free:
        lo, up = _bounds_at(d, chi, locals_, s)
        mirror = (d - s) % d
        if mirror != s:
            lo2, up2 = _bounds_at(d, chi, locals_, mirror)
            lo, up = max(lo, lo2), min(up, up2)
        if lo > up:
            return "enumerate", [], False
        ranges.append(range(lo, up + 1))
    vectors: list[tuple[int, ...]] = []
    truncated = False
    for combo in itertools.product(*ranges):
        if len(vectors) == cap:
            truncated = True
            break
        vector = [0] * d
        for s, value in zip(free, combo):
            vector[s] = value
            vector[(d - s) % d] = value
        vectors.append(tuple(vector))
    return "enumerate", vectors, truncated


def assemble(spec: ProblemSpec, *,
             enumerate_cap: int = DEFAULT_ENUMERATE_CAP) -> Report:
    """Compute the Jordan structure(s) of the monodromy at infinity."""
    if enumerate_cap < 1:
        raise InstanceError(f"enumerate cap must be >= 1, got {enumerate_cap}")
    locals_ = spec.local_monodromies()
    mus = spec.milnor_numbers()
    chi = chi_vector(spec.n, spec.d, mus)
    mode, vectors, truncated = _resolve_beta(spec, chi, locals_, enumerate_cap)
    symmetric = all(t.is_conjugation_symmetric() for t in locals_)
    formula: RootExponentVector | None = None
    formula_error: str | None = None
    try:
        formula = charpoly_local_formula(spec)
    except InstanceError as exc:
        formula_error = str(exc)
    zeta = zeta_of_top_form(spec)
    global_checks = [CheckResult(
        "zeta_two_forms", "pass",
        "both closed forms of the zeta function agree: " + str(zeta))]
    expected_dim = (spec.d - 1) ** (spec.n + 1) - sum(mus)
    entries = []
    for beta in vectors:
        structure = _assemble_structure(spec, chi, locals_, beta)
        checks = []
        got_dim = structure.total_dim
        checks.append(CheckResult(
            "degree_identity",
            "pass" if got_dim == expected_dim else "fail",
            f"operator dimension {got_dim}, expected "
            f"(d-1)^(n+1) - total mu = {expected_dim}"))
        checks.append(check_block_size_limits(structure, spec.n, spec.d))
        bound_text = []
        in_bounds = True
        for s in range(spec.d):
            lo, up = _bounds_at(spec.d, chi, locals_, s)
            if not lo <= beta[s] <= up:
                in_bounds = False
                bound_text.append(f"beta[{s}] = {beta[s]} outside {lo}..{up}")
        checks.append(CheckResult(
            "beta_within_bounds",
            "pass" if in_bounds else "fail",
            "; ".join(bound_text) or "every beta[s] lies within its bounds"))
        if not symmetric:
            checks.append(CheckResult(
                "charpoly_local_formula", "not_applicable",
                "local spectra are not conjugation-symmetric, so the local "
                "product formula need not match the assembled operator; "
                "assembly used the stated counting rules unchanged"))
        elif formula is None:
            checks.append(CheckResult(
                "charpoly_local_formula", "fail",
                formula_error or "formula unavailable"))
        else:
            agrees = structure.char_poly() == formula
            checks.append(CheckResult(
                "charpoly_local_formula",
                "pass" if agrees else "fail",
                "product formula matches the assembled characteristic "
                "polynomial" if agrees else
                f"product formula gives {formula}, assembled operator has "
                f"{structure.char_poly()}"))
        entries.append(BetaEntry(beta, structure, tuple(checks)))
    if entries:
        charpoly: RootExponentVector | None = entries[0].jordan.char_poly()
    else:
        charpoly = formula
    return Report(
        n=spec.n,
        d=spec.d,
        mu=tuple(mus),
        chi=tuple(chi),
        mode=mode,
        entries=tuple(entries),
        truncated=truncated,
        charpoly=charpoly,
        zeta=zeta,
        checks=tuple(global_checks),
    )


def parse_problem(data: object) -> ProblemSpec:
    """Parse and validate an instance document (strict schema)."""
    if not isinstance(data, dict):
        raise InstanceError("instance must be a JSON object")
    required = {"n", "d", "singularities", "beta"}
    missing = required - set(data)
    unknown = set(data) - required
    if missing:
        raise InstanceError(f"missing fields: {', '.join(sorted(missing))}")
    if unknown:
        raise InstanceError(f"unknown fields: {', '.join(sorted(unknown))}")
    n, d = data["n"], data["d"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InstanceError("n must be an integer")
    if not isinstance(d, int) or isinstance(d, bool):
        raise InstanceError("d must be an integer")
    try:
        models = parse_singularities(data["singularities"])
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    beta_data = data["beta"]
    if not isinstance(beta_data, dict):
        raise InstanceError("'beta' must be an object with a 'mode' field")
    mode = beta_data.get("mode")
    beta: BetaSpec
    if mode == "given":
        if set(beta_data) != {"mode", "values"}:
            raise InstanceError(
                "beta mode 'given' takes exactly the fields 'mode' and 'values'")
        values = beta_data["values"]
        if not isinstance(values, list):
            raise InstanceError("beta values must be a list of integers")
        beta = GivenBeta(tuple(values))
    elif mode == "from_nodes":
        if set(beta_data) != {"mode", "points"}:
            raise InstanceError(
                "beta mode 'from_nodes' takes exactly the fields 'mode' and 'points'")
        if not isinstance(n, int) or n < 2:
            raise InstanceError("n must be >= 2")
        try:
            points = ProjectivePointSet.from_json(beta_data["points"], dim=n)
        except ValueError as exc:
            raise InstanceError(str(exc)) from exc
        beta = FromNodes(points)
    elif mode == "enumerate":
        if set(beta_data) != {"mode"}:
            raise InstanceError("beta mode 'enumerate' takes only the field 'mode'")
        beta = EnumerateBeta()
    else:
        raise InstanceError(
            f"beta mode must be 'given', 'from_nodes' or 'enumerate', got {mode!r}")
    try:
        return ProblemSpec(n, d, tuple(models), beta)
    except ValueError as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError(str(exc)) from exc
