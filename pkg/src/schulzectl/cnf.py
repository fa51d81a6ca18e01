"""3-CNF formulas: DIMACS I/O, exhaustive satisfiability, small formula suites."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .election import ValidationError

Assignment = tuple[bool, ...]


@dataclass(frozen=True)
class CnfFormula:
    """Clauses of exactly three signed, 1-based variable indices.

    Repeated literals inside a clause are accepted unless ``strict`` is set,
    in which case every clause must mention three distinct variables.
    """

    variable_count: int
    clauses: tuple[tuple[int, int, int], ...]
    strict: bool = False

    def __post_init__(self) -> None:
        if self.variable_count < 1:
            raise ValidationError("a formula needs at least one variable")
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        for idx, clause in enumerate(clauses):
            if len(clause) != 3:
                raise ValidationError(f"clause {idx + 1}: expected 3 literals, got {len(clause)}")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise ValidationError(f"clause {idx + 1}: literal {lit} out of range")
            if self.strict and len({abs(l) for l in clause}) != 3:
                raise ValidationError(f"clause {idx + 1}: strict mode needs three distinct variables")
        object.__setattr__(self, "clauses", clauses)

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def with_variable_count(self, n: int) -> "CnfFormula":
        """Same clauses over ``max(n, variable_count)`` variables (extras unused)."""
        return CnfFormula(max(n, self.variable_count), self.clauses, self.strict)

    def clause_satisfied(self, j: int, assignment: Assignment) -> bool:
        return any(assignment[abs(l) - 1] == (l > 0) for l in self.clauses[j])

    def satisfied_by(self, assignment: Assignment) -> bool:
        return all(self.clause_satisfied(j, assignment) for j in range(len(self.clauses)))

    def satisfying_assignments(self) -> Iterator[Assignment]:
        """All models, in lexicographic order with False < True."""
        for bits in itertools.product((False, True), repeat=self.variable_count):
            if self.satisfied_by(bits):
                yield bits

    def first_model(self) -> Assignment | None:
        return next(self.satisfying_assignments(), None)

    def is_satisfiable(self) -> bool:
        return self.first_model() is not None

    def satisfied_when(self, var: int, value: bool) -> list[int]:
        """Clause indices containing the literal ``var`` (value True) or ``-var``."""
        lit = var if value else -var
        return [j for j, c in enumerate(self.clauses) if lit in c]

    def __str__(self) -> str:
        def lit(l: int) -> str:
            return f"x{l}" if l > 0 else f"~x{-l}"

        return " & ".join("(" + " | ".join(lit(l) for l in c) + ")" for c in self.clauses)


def parse_dimacs(text: str, strict: bool = False) -> CnfFormula:
    """Read ``p cnf V C`` followed by 0-terminated clauses; ``c`` lines are comments."""
    header = None
    tokens: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ValidationError(f"line {lineno}: malformed problem line {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ValidationError(f"line {lineno}: malformed problem line {line!r}") from None
            continue
        if header is None:
            raise ValidationError(f"line {lineno}: clause before 'p cnf' header")
        try:
            tokens.extend(int(t) for t in line.split())
        except ValueError:
            raise ValidationError(f"line {lineno}: non-integer literal in {line!r}") from None
    if header is None:
        raise ValidationError("missing 'p cnf' header")
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for t in tokens:
        if t == 0:
            clauses.append(tuple(current))
            current = []
        else:
            current.append(t)
    if current:
        raise ValidationError("last clause is not terminated by 0")
    n_vars, n_clauses = header
    if len(clauses) != n_clauses:
        raise ValidationError(f"header announces {n_clauses} clauses, found {len(clauses)}")
    return CnfFormula(n_vars, tuple(clauses), strict)


def to_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.variable_count} {f.clause_count}"]
    lines += [" ".join(str(l) for l in c) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def _clauses_over(n: int) -> list[tuple[int, int, int]]:
    lits = [v for i in range(1, n + 1) for v in (i, -i)]
    return [tuple(c) for c in itertools.combinations_with_replacement(lits, 3)]


def _canonical(n: int, clauses: Sequence[tuple[int, int, int]]) -> tuple:
    """Representative under renaming of variables and clause order."""
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        ren = {v: perm[v - 1] for v in range(1, n + 1)}
        mapped = sorted(
            tuple(sorted((ren[abs(l)] if l > 0 else -ren[abs(l)]) for l in c)) for c in clauses
        )
        key = tuple(mapped)
        if best is None or key < best:
            best = key
    return best


def desk_suite(max_vars: int = 2, max_clauses: int = 2) -> list[CnfFormula]:
    """Every formula over 1..max_vars variables and 1..max_clauses distinct clauses.

    Every declared variable occurs in some clause; formulas equal up to
    renaming variables or reordering clauses are listed once.
    """
    out: list[CnfFormula] = []
    for n in range(1, max_vars + 1):
        pool = _clauses_over(n)
        seen = set()
        for k in range(1, max_clauses + 1):
            for combo in itertools.combinations(pool, k):
                used = {abs(l) for c in combo for l in c}
                if len(used) != n:
                    continue
                key = _canonical(n, combo)
                if key in seen:
                    continue
                seen.add(key)
                out.append(CnfFormula(n, tuple(combo)))
    return out


def random_3cnf(n_vars: int, n_clauses: int, rng, strict: bool = True) -> CnfFormula:
    """Uniform random 3-CNF; ``rng`` is a ``random.Random``."""
    clauses = []
    for _ in range(n_clauses):
        if strict:
            vs = rng.sample(range(1, n_vars + 1), 3)
        else:
            vs = [rng.randint(1, n_vars) for _ in range(3)]
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(n_vars, tuple(clauses), strict)
