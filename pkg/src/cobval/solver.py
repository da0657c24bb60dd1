"""Built-in decision procedure for path conditions over bounded PIC domains.

Every symbol ranges over an integer interval (scaled numerics or base-95
string codes).  The search alternates bounds-consistency propagation on the
atoms that are currently linear with three-valued interval evaluation of the
rest, and backtracks over the symbols of still-undecided atoms in
lexicographic name order trying values nearest to zero first.  Candidate
values are visited in magnitude bands so a band that propagation refutes is
skipped whole.  The first witness found is therefore the smallest-magnitude
one in symbol order, which keeps generated data readable and stable.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd, lcm
from typing import Optional

from .errors import MissingSymbol, UnsupportedAtom
from .pic import RADIX, code_string, store_numeric, string_code
from .terms import (
    FALSE, TRUE, Add, And, BoolConst, Cmp, Const, Div, Domain, Mul, Neg, Not, NumStore, Or, SConst,
    SFit, SSym, Sym, add, cmp, conj, const, disj, div, eval_formula, first_nonlinear, is_string,
    make_symbol, mul, neg, negate, nnf, num_store, sfit, term_from_json, term_to_json,
)

SAT, UNSAT, UNKNOWN = "SAT", "UNSAT", "UNKNOWN"
DEFAULT_STEP_BUDGET = 10_000
SAMPLE_TRIES = 200
SAMPLE_SEED = 0x5EED
EXHAUSTIVE_LIMIT = 10 ** 6
PROPAGATION_ROUNDS = 64


@dataclass
class ConstraintSet:
    conjuncts: list
    domains: dict  # symbol name -> Domain

    def formula(self):
        return And(tuple(self.conjuncts)) if self.conjuncts else TRUE

    def domain_product(self):
        total = 1
        for d in self.domains.values():
            total *= d.size
        return total

    def to_json(self):
        return {
            "domains": {k: v.to_json() for k, v in sorted(self.domains.items())},
            "conjuncts": [term_to_json(c) for c in self.conjuncts],
        }

    @classmethod
    def from_json(cls, d):
        domains = {k: Domain.from_json(v) for k, v in d.get("domains", {}).items()}
        return cls([term_from_json(c, domains) for c in d.get("conjuncts", [])], domains)

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False)


@dataclass
class Result:
    status: str
    assignment: Optional[dict] = None
    steps: int = 0
    detail: str = ""

    @property
    def sat(self):
        return self.status == SAT


class _Budget(Exception):
    pass


# -- linear forms -----------------------------------------------------------


@dataclass
class Lin:
    """``const + Σ coeffs[s] * raw(s)`` where ``raw`` is the scaled integer or string code."""

    coeffs: dict = field(default_factory=dict)
    const: Fraction = Fraction(0)

    def scaled(self, k):
        return Lin({s: c * k for s, c in self.coeffs.items()}, self.const * k)

    def plus(self, other):
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out.get(s, 0) + c
            if out[s] == 0:
                del out[s]
        return Lin(out, self.const + other.const)

    def interval(self, box):
        lo = hi = self.const
        for s, c in self.coeffs.items():
            a, b = box[s]
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return lo, hi


def _linear(t, box) -> Optional[Lin]:
    """Linear form of ``t`` valid everywhere inside ``box``, or None."""
    return _analyze(t, box)[0]


def _interval(t, box):
    """Sound enclosure of the term's value (Fractions; string codes for strings)."""
    return _analyze(t, box)[1]


def _fixed(name, box, coeff):
    lo, hi = box[name]
    if lo == hi:
        return Lin({}, coeff * lo)
    return Lin({name: coeff}, Fraction(0))


def _with_iv(lin, box):
    return lin, lin.interval(box)


def _analyze(t, box):
    """One bottom-up pass returning ``(linear form or None, enclosure or None)``."""
    if isinstance(t, Const):
        return _with_iv(Lin({}, t.value), box)
    if isinstance(t, Sym):
        return _with_iv(_fixed(t.name, box, Fraction(1, 10 ** t.scale)), box)
    if isinstance(t, SSym):
        return _with_iv(_fixed(t.name, box, Fraction(1)), box)
    if isinstance(t, SConst):
        return _with_iv(Lin({}, Fraction(string_code(t.text))), box)
    if isinstance(t, Add):
        (la, ia), (lb, ib) = _analyze(t.left, box), _analyze(t.right, box)
        if la is not None and lb is not None:
            return _with_iv(la.plus(lb), box)
        return None, (None if ia is None or ib is None else (ia[0] + ib[0], ia[1] + ib[1]))
    if isinstance(t, Neg):
        la, ia = _analyze(t.operand, box)
        if la is not None:
            return _with_iv(la.scaled(-1), box)
        return None, (None if ia is None else (-ia[1], -ia[0]))
    if isinstance(t, (Mul, Div)):
        (la, ia), (lb, ib) = _analyze(t.left, box), _analyze(t.right, box)
        if la is not None and lb is not None:
            lin = None
            if isinstance(t, Div):
                if not lb.coeffs and lb.const != 0:
                    lin = la.scaled(1 / lb.const)
            elif not la.coeffs:
                lin = lb.scaled(la.const)
            elif not lb.coeffs:
                lin = la.scaled(lb.const)
            if lin is not None:
                return _with_iv(lin, box)
        if ia is None or ib is None:
            return None, None
        if isinstance(t, Div):
            if ib[0] <= 0 <= ib[1]:
                return None, None
            corners = [x / y for x in ia for y in ib]
        else:
            corners = [x * y for x in ia for y in ib]
        return None, (min(corners), max(corners))
    if isinstance(t, NumStore):
        la, ia = _analyze(t.operand, box)
        lin = _store_linear(t, la, ia)
        if lin is not None:
            return _with_iv(lin, box)
        return None, _store_interval(t, ia)
    if isinstance(t, SFit):
        la, ia = _analyze(t.operand, box)
        src = t.operand.length
        if la is not None:
            if t.length >= src:
                return _with_iv(la.scaled(RADIX ** (t.length - src)), box)
            if ia[0] == ia[1]:
                return _with_iv(Lin({}, Fraction(int(ia[0]) // RADIX ** (src - t.length))), box)
        d = RADIX ** (src - t.length) if src > t.length else 1
        if t.length > src:
            k = RADIX ** (t.length - src)
            return None, (ia[0] * k, ia[1] * k)
        return None, (Fraction(int(ia[0]) // d), Fraction(int(ia[1]) // d))
    raise UnsupportedAtom(f"unknown term {t!r}")


def _store_linear(t: NumStore, a: Optional[Lin], iv):
    if a is None:
        return None
    lo, hi = iv
    if lo == hi:
        return Lin({}, store_numeric(lo, t.pic))
    unit = 10 ** t.frac_digits
    aligned = (a.const * unit).denominator == 1 and all((c * unit).denominator == 1 for c in a.coeffs.values())
    limit = Fraction(10 ** (t.int_digits + t.frac_digits), unit)
    if not aligned:
        return None
    if t.signed and -limit < lo and hi < limit:
        return a
    # inside a single wrap period the stored value is a shifted copy of the operand
    if lo >= 0:
        k = floor(lo / limit)
        return a.plus(Lin({}, -k * limit)) if hi < (k + 1) * limit else None
    if hi <= 0:
        k = floor(-hi / limit)
        if -lo >= (k + 1) * limit:
            return None
        if t.signed:
            return a.plus(Lin({}, k * limit))
        return a.scaled(-1).plus(Lin({}, -k * limit))
    return None


def _store_interval(t: NumStore, a):
    limit = Fraction(10 ** (t.int_digits + t.frac_digits) - 1, 10 ** t.frac_digits)
    full = (-limit if t.signed else Fraction(0), limit)
    bound = 10 ** t.int_digits
    if a is None or not (-bound < a[0] and a[1] < bound):
        return full
    lo, hi = store_numeric(a[0], t.pic), store_numeric(a[1], t.pic)
    if t.signed or a[0] >= 0:
        return lo, hi
    if a[1] <= 0:
        return hi, lo
    return Fraction(0), max(lo, hi)


def _cmp_diff(f: Cmp, box):
    """``(linear form or None, enclosure or None)`` of ``left - right``, strings padded to a common width."""
    (la, ia), (lb, ib) = _analyze(f.left, box), _analyze(f.right, box)
    pa = pb = 1
    if is_string(f.left):
        width = max(f.left.length, f.right.length)
        pa, pb = RADIX ** (width - f.left.length), RADIX ** (width - f.right.length)
    if la is not None and lb is not None:
        lin = la.scaled(pa).plus(lb.scaled(-pb))
        return lin, lin.interval(box)
    if ia is None or ib is None:
        return None, None
    return None, (ia[0] * pa - ib[1] * pb, ia[1] * pa - ib[0] * pb)


def _diff_interval(f: Cmp, box):
    return _cmp_diff(f, box)[1]


def _truth(op, lo, hi):
    """Three-valued truth of ``d op 0`` for ``d`` in ``[lo, hi]``."""
    if op == "=":
        return True if lo == hi == 0 else (False if lo > 0 or hi < 0 else None)
    if op == "<>":
        t = _truth("=", lo, hi)
        return None if t is None else not t
    if op == "<":
        return True if hi < 0 else (False if lo >= 0 else None)
    if op == "<=":
        return True if hi <= 0 else (False if lo > 0 else None)
    if op == ">":
        return True if lo > 0 else (False if hi <= 0 else None)
    return True if lo >= 0 else (False if hi < 0 else None)


def _eval3(f, box):
    if isinstance(f, BoolConst):
        return f.value
    if isinstance(f, Cmp):
        iv = _diff_interval(f, box)
        return None if iv is None else _truth(f.op, *iv)
    if isinstance(f, And):
        seen_unknown = False
        for x in f.items:
            v = _eval3(x, box)
            if v is False:
                return False
            seen_unknown |= v is None
        return None if seen_unknown else True
    if isinstance(f, Or):
        seen_unknown = False
        for x in f.items:
            v = _eval3(x, box)
            if v is True:
                return True
            seen_unknown |= v is None
        return None if seen_unknown else False
    raise UnsupportedAtom(f"unknown formula {f!r}")


# -- propagation ---------------------------------------------------------------


class _Conflict(Exception):
    pass


def _narrow(box, name, lo, hi):
    a, b = box[name]
    lo, hi = max(a, lo), min(b, hi)
    if lo > hi:
        raise _Conflict(name)
    if (lo, hi) != (a, b):
        box[name] = (lo, hi)
        return True
    return False


def _propagate_linear(lin: Lin, op, box):
    """Bounds consistency for ``lin op 0``; returns True when a bound moved."""
    if not lin.coeffs:
        if not _truth(op, lin.const, lin.const):
            raise _Conflict("constant")
        return False
    den = 1
    for c in list(lin.coeffs.values()) + [lin.const]:
        den = lcm(den, c.denominator)
    coeffs = {s: int(c * den) for s, c in lin.coeffs.items()}
    k = int(lin.const * den)
    if op == "<>":
        if len(coeffs) == 1:
            (s, c), = coeffs.items()
            if (-k) % c == 0:
                v = -k // c
                lo, hi = box[s]
                if lo == v == hi:
                    raise _Conflict(s)
                if v == lo:
                    return _narrow(box, s, lo + 1, hi)
                if v == hi:
                    return _narrow(box, s, lo, hi - 1)
        return False
    if op == "=":
        g = 0
        for c in coeffs.values():
            g = gcd(g, c)
        if k % g:
            raise _Conflict("divisibility")
    # normalize to Σ c·x + k <= 0 (and >= 0 for equality)
    forms = []
    if op in ("<", "<="):
        forms.append((coeffs, k + (1 if op == "<" else 0)))
    elif op in (">", ">="):
        forms.append(({s: -c for s, c in coeffs.items()}, -k + (1 if op == ">" else 0)))
    else:
        forms.append((coeffs, k))
        forms.append(({s: -c for s, c in coeffs.items()}, -k))
    moved = False
    for cs, kk in forms:
        mins = {}
        total_min = kk
        for s, c in cs.items():
            lo, hi = box[s]
            m = c * lo if c > 0 else c * hi
            mins[s] = m
            total_min += m
        if total_min > 0:
            raise _Conflict("bounds")
        for s, c in cs.items():
            rest = total_min - mins[s]
            # c·x <= -rest
            lo, hi = box[s]
            if c > 0:
                moved |= _narrow(box, s, lo, floor(Fraction(-rest, c)))
            else:
                moved |= _narrow(box, s, ceil(Fraction(-rest, c)), hi)
    return moved


def _propagate(f, box):
    if isinstance(f, BoolConst):
        if not f.value:
            raise _Conflict("false")
        return False
    if isinstance(f, Cmp):
        lin, iv = _cmp_diff(f, box)
        if lin is None:
            if iv is not None and _truth(f.op, *iv) is False:
                raise _Conflict("atom")
            return False
        return _propagate_linear(lin, f.op, box)
    if isinstance(f, And):
        moved = False
        for x in f.items:
            moved |= _propagate(x, box)
        return moved
    if isinstance(f, Or):
        open_items = []
        for x in f.items:
            v = _eval3(x, box)
            if v is True:
                return False
            if v is None:
                open_items.append(x)
        if not open_items:
            raise _Conflict("disjunction")
        if len(open_items) == 1:
            return _propagate(open_items[0], box)
        return False
    raise UnsupportedAtom(f"unknown formula {f!r}")


def _fixpoint(atoms, box):
    for _ in range(PROPAGATION_ROUNDS):
        before = dict(box)
        moved = False
        for a in atoms:
            moved |= _propagate(a, box)
        if not moved or not _significant(before, box):
            # creeping bounds (x = y with x > y moves one unit per round) are left to the search
            return


def _significant(before, box):
    """True when some symbol lost at least a twentieth of its width this round."""
    for n, (lo, hi) in box.items():
        a, b = before[n]
        if (a, b) != (lo, hi) and ((b - a) - (hi - lo)) * 20 >= b - a:
            return True
    return False


# -- search -------------------------------------------------------------------


def _candidates(lo, hi):
    """Values of ``[lo, hi]`` in order of increasing magnitude, positive first on ties."""
    if lo >= 0:
        yield from range(lo, hi + 1)
        return
    if hi <= 0:
        yield from range(hi, lo - 1, -1)
        return
    yield 0
    k = 1
    while k <= hi or -k >= lo:
        if k <= hi:
            yield k
        if -k >= lo:
            yield -k
        k += 1


def _preferred(lo, hi):
    return next(_candidates(lo, hi))


def _flatten(f):
    f = nnf(f)
    if isinstance(f, And):
        return list(f.items)
    return [f]


def _check_language(f):
    bad = first_nonlinear(f)
    if bad is not None:
        raise UnsupportedAtom(f"nonlinear atom {bad!r}")


def solve(cs: ConstraintSet, budget: Optional[int] = None) -> Result:
    """Decide ``cs``; SAT results carry a witness mapping symbol -> raw value."""
    for c in cs.conjuncts:
        _check_language(c)
        for name in _symbols_of(c):
            if name not in cs.domains:
                raise UnsupportedAtom(f"symbol {name} has no domain")
    atoms = []
    for c in cs.conjuncts:
        atoms.extend(_flatten(c))
    if any(a == FALSE for a in atoms):
        return Result(UNSAT)
    atoms = [a for a in atoms if a != TRUE]
    if budget is None:
        budget = None if cs.domain_product() <= EXHAUSTIVE_LIMIT else DEFAULT_STEP_BUDGET
    box = {n: (d.lo, d.hi) for n, d in cs.domains.items()}
    atoms, solved = _eliminate_equalities(atoms, cs.domains, box)
    if atoms is None:
        return Result(UNSAT)
    names = sorted(box)
    atom_syms = [_symbols_of(a) for a in atoms]
    steps = [0]

    def tick():
        steps[0] += 1
        if budget is not None and steps[0] > budget:
            raise _Budget()

    def settle(box):
        """Propagate; return the undecided atoms' indices, or None on conflict."""
        try:
            _fixpoint(atoms, box)
        except _Conflict:
            return None
        pending = []
        for i, a in enumerate(atoms):
            v = _eval3(a, box)
            if v is False:
                return None
            if v is None:
                pending.append(i)
        return pending

    def search(box):
        pending = settle(box)
        if pending is None:
            return None
        if not pending:
            return {n: _preferred(*box[n]) for n in names}
        live = set().union(*(atom_syms[i] for i in pending))
        name = next((n for n in names if n in live and box[n][0] != box[n][1]), None)
        if name is None:
            return None  # fully assigned yet undecided cannot happen; be conservative
        lo, hi = box[name]
        m_lo = lo if lo > 0 else (-hi if hi < 0 else 0)
        return band(box, name, m_lo, max(abs(lo), abs(hi)))

    def sides(box, name, m1, m2):
        """Sub-boxes of ``name`` with magnitude in ``[m1, m2]``: positive side first."""
        lo, hi = box[name]
        out = []
        for a, b in ((max(m1, lo), min(m2, hi)), (max(-m2, lo), min(-max(m1, 1), hi))):
            if a <= b:
                child = dict(box)
                child[name] = (a, b)
                out.append(child)
        return out

    def band(box, name, m1, m2):
        # values are tried in order of increasing magnitude (positive first on ties);
        # whole magnitude bands are skipped once propagation refutes both signs
        todo = [(m1, m2)]
        while todo:
            a, b = todo.pop()
            if a == b:
                for child in sides(box, name, a, b):
                    tick()
                    found = search(child)
                    if found is not None:
                        return found
                continue
            tick()
            if all(settle(c) is None for c in sides(box, name, a, b)):
                continue
            mid = (a + b) // 2
            todo.append((mid + 1, b))
            todo.append((a, mid))
        return None

    def sample(box):
        # after the budget: propagation-guided random probes, half of them biased to small values
        rng = random.Random(SAMPLE_SEED)
        for _ in range(SAMPLE_TRIES):
            b = dict(box)
            for n in names:
                pending = settle(b)
                if pending is None or not pending:
                    break
                lo, hi = b[n]
                if lo != hi:
                    b[n] = (_preferred(lo, hi),) * 2 if rng.random() < 0.5 else (rng.randint(lo, hi),) * 2
            if settle(b) == []:
                return {n: _preferred(*b[n]) for n in names}
        return None

    try:
        raw = search(box)
    except _Budget:
        raw = sample(box)
        if raw is None:
            return Result(UNKNOWN, None, steps[0], "step budget exhausted")
    if raw is None:
        return Result(UNSAT, None, steps[0])
    for n, (other, sign, k) in reversed(solved):
        raw[n] = sign * raw[other] + k
    assignment = {}
    for n in sorted(cs.domains):
        d = cs.domains[n]
        assignment[n] = code_string(raw[n], d.length) if d.kind == "str" else raw[n]
    if not check(assignment, cs):
        raise AssertionError("solver produced a witness that fails check()")
    return Result(SAT, assignment, steps[0])


def _eliminate_equalities(atoms, domains, box):
    """Substitute away ``y = ±x + k`` atoms, always dropping the later-named symbol.

    Bounds propagation needs one round per unit to refute pairs such as
    ``y = x`` with ``y > x``; after substitution they fold to a constant.  The
    earlier symbol still determines the later one, so the search order and
    hence the first witness are unchanged.  Returns (atoms, solved) where
    solved lists (name, (other, sign, k)) with raw(name) = sign*raw(other) + k,
    or (None, solved) on a constant contradiction.  ``box`` loses solved names.
    """
    solved = []
    folded = []
    for a in atoms:
        folded.extend(_flatten(_fold_divisibility(a, box)))
    if any(a == FALSE for a in folded):
        return None, solved
    atoms = [a for a in folded if a != TRUE]
    changed = True
    while changed:
        changed = False
        for i, a in enumerate(atoms):
            if not (isinstance(a, Cmp) and a.op == "="):
                continue
            lin, _ = _cmp_diff(a, box)
            if lin is None or len(lin.coeffs) != 2:
                continue
            (x, cx), (y, cy) = sorted(lin.coeffs.items())
            if abs(cx) != abs(cy):
                continue
            sign, k = -cx / cy, -lin.const / cy
            dx, dy = domains[x], domains[y]
            if k.denominator != 1 or dx.kind != dy.kind:
                continue
            if dx.kind == "str":
                if sign != 1 or k != 0 or dx.length != dy.length:
                    continue
                repl, extra = make_symbol(x, dx), []
            else:
                repl = add(mul(const(Fraction(int(sign) * 10 ** dx.scale, 10 ** dy.scale)), make_symbol(x, dx)),
                           const(Fraction(int(k), 10 ** dy.scale)))
                extra = [cmp(">=", repl, const(Fraction(dy.lo, 10 ** dy.scale))),
                         cmp("<=", repl, const(Fraction(dy.hi, 10 ** dy.scale)))]
            rest = []
            for b in atoms[:i] + atoms[i + 1:] + extra:
                rest.extend(_flatten(_subst(b, y, repl)))
            if any(b == FALSE for b in rest):
                return None, solved
            atoms = [b for b in rest if b != TRUE]
            solved.append((y, (x, int(sign), int(k))))
            del box[y]
            changed = True
            break
    return atoms, solved


def _fold_divisibility(f, box):
    """Equalities with no integer solution become FALSE (and their negations TRUE)."""
    if isinstance(f, Cmp) and f.op in ("=", "<>"):
        lin, _ = _cmp_diff(f, box)
        if lin is not None and lin.coeffs:
            den = 1
            for c in list(lin.coeffs.values()) + [lin.const]:
                den = lcm(den, c.denominator)
            g = 0
            for c in lin.coeffs.values():
                g = gcd(g, int(c * den))
            if int(lin.const * den) % g:
                return FALSE if f.op == "=" else TRUE
        return f
    if isinstance(f, And):
        return conj(*(_fold_divisibility(x, box) for x in f.items))
    if isinstance(f, Or):
        return disj(*(_fold_divisibility(x, box) for x in f.items))
    return f


def _subst(t, name, repl):
    """Replace symbol ``name`` by ``repl`` and re-fold with the smart constructors."""
    if isinstance(t, (Sym, SSym)):
        return repl if t.name == name else t
    if isinstance(t, (Const, SConst, BoolConst)):
        return t
    if isinstance(t, Add):
        return add(_subst(t.left, name, repl), _subst(t.right, name, repl))
    if isinstance(t, Mul):
        return mul(_subst(t.left, name, repl), _subst(t.right, name, repl))
    if isinstance(t, Div):
        return div(_subst(t.left, name, repl), _subst(t.right, name, repl))
    if isinstance(t, Neg):
        return neg(_subst(t.operand, name, repl))
    if isinstance(t, NumStore):
        return num_store(_subst(t.operand, name, repl), t.pic)
    if isinstance(t, SFit):
        return sfit(_subst(t.operand, name, repl), t.length)
    if isinstance(t, Cmp):
        return cmp(t.op, _subst(t.left, name, repl), _subst(t.right, name, repl))
    if isinstance(t, And):
        return conj(*(_subst(x, name, repl) for x in t.items))
    if isinstance(t, Or):
        return disj(*(_subst(x, name, repl) for x in t.items))
    if isinstance(t, Not):
        return negate(_subst(t.operand, name, repl))
    raise UnsupportedAtom(f"cannot substitute into {t!r}")


def _symbols_of(f):
    from .terms import symbols

    return symbols(f)


def check(assignment: dict, cs: ConstraintSet) -> bool:
    """True iff every conjunct holds; numeric witnesses are scaled integers."""
    needed = set()
    for c in cs.conjuncts:
        needed |= _symbols_of(c)
    missing = sorted(needed - set(assignment))
    if missing:
        raise MissingSymbol(missing[0])
    env = {}
    for name in needed:
        v = assignment[name]
        if isinstance(v, str):
            d = cs.domains.get(name)
            if d is not None and len(v) != d.length:
                return False
            env[name] = string_code(v)
        else:
            env[name] = v
    try:
        return all(eval_formula(c, env) for c in cs.conjuncts)
    except ZeroDivisionError:
        return False


# -- SMT-LIB export ------------------------------------------------------------


def _smt_int(n):
    n = int(n)
    return str(n) if n >= 0 else f"(- {-n})"


def _smt_term(t):
    """Return ``(expr, denominator)`` with value ``expr / denominator``."""
    if isinstance(t, Const):
        return _smt_int(t.value.numerator), t.value.denominator
    if isinstance(t, Sym):
        return _quote(t.name), 10 ** t.scale
    if isinstance(t, SSym):
        return _quote(t.name), 1
    if isinstance(t, SConst):
        return _smt_int(string_code(t.text)), 1
    if isinstance(t, Add):
        (a, da), (b, db) = _smt_term(t.left), _smt_term(t.right)
        d = lcm(da, db)
        return f"(+ {_times(a, d // da)} {_times(b, d // db)})", d
    if isinstance(t, Neg):
        a, da = _smt_term(t.operand)
        return f"(- {a})", da
    if isinstance(t, Mul):
        (a, da), (b, db) = _smt_term(t.left), _smt_term(t.right)
        return f"(* {a} {b})", da * db
    if isinstance(t, Div):
        (a, da), (b, db) = _smt_term(t.left), _smt_term(t.right)
        if isinstance(t.right, Const):
            p = t.right.value.numerator
            return _times(a, db if p > 0 else -db), da * abs(p)
        return f"(div (* {a} {db}) (* {b} {da}))", 1
    if isinstance(t, NumStore):
        a, da = _smt_term(t.operand)
        num = _times(a, 10 ** t.frac_digits)
        trunc = f"(ite (>= {num} 0) (div {num} {da}) (- (div (- {num}) {da})))"
        m = 10 ** (t.int_digits + t.frac_digits)
        if t.signed:
            expr = f"(ite (>= {trunc} 0) (mod {trunc} {m}) (- (mod (- {trunc}) {m})))"
        else:
            expr = f"(mod (abs {trunc}) {m})"
        return expr, 10 ** t.frac_digits
    if isinstance(t, SFit):
        a, _ = _smt_term(t.operand)
        src = t.operand.length
        if t.length >= src:
            return _times(a, RADIX ** (t.length - src)), 1
        return f"(div {a} {RADIX ** (src - t.length)})", 1
    raise UnsupportedAtom(f"unknown term {t!r}")


def _times(expr, k):
    if k == 1:
        return expr
    if k < 0:
        return f"(* {_smt_int(k)} {expr})"
    return f"(* {k} {expr})"


def _quote(name):
    return f"|{name}|"


_SMT_OP = {"=": "=", "<": "<", "<=": "<=", ">": ">", ">=": ">="}


def _smt_formula(f):
    if isinstance(f, BoolConst):
        return "true" if f.value else "false"
    if isinstance(f, Cmp):
        (a, da), (b, db) = _smt_term(f.left), _smt_term(f.right)
        if is_string(f.left):
            width = max(f.left.length, f.right.length)
            a = _times(a, RADIX ** (width - f.left.length))
            b = _times(b, RADIX ** (width - f.right.length))
            da = db = 1
        # a/da op b/db with positive denominators
        left, right = _times(a, db), _times(b, da)
        op = f.op
        if op == "<>":
            return f"(not (= {left} {right}))"
        return f"({_SMT_OP[op]} {left} {right})"
    if isinstance(f, And):
        return "(and " + " ".join(_smt_formula(x) for x in f.items) + ")" if f.items else "true"
    if isinstance(f, Or):
        return "(or " + " ".join(_smt_formula(x) for x in f.items) + ")" if f.items else "false"
    if isinstance(f, Not):
        return f"(not {_smt_formula(f.operand)})"
    raise UnsupportedAtom(f"unknown formula {f!r}")


def export_smtlib(cs: ConstraintSet) -> str:
    """SMT-LIB 2 script over integers; string symbols are base-95 codes."""
    lines = ["(set-logic QF_NIA)" if any(first_nonlinear(c) for c in cs.conjuncts) else "(set-logic QF_LIA)"]
    for name in sorted(cs.domains):
        d = cs.domains[name]
        lines.append(f"(declare-fun {_quote(name)} () Int)")
        lines.append(f"(assert (and (<= {_smt_int(d.lo)} {_quote(name)}) (<= {_quote(name)} {_smt_int(d.hi)})))")
    for c in cs.conjuncts:
        lines.append(f"(assert {_smt_formula(c)})")
    lines.append("(check-sat)")
    lines.append("(get-model)")
    return "\n".join(lines) + "\n"


def decode_model(model: dict, cs: ConstraintSet) -> dict:
    """Turn an external solver's integer model into a witness accepted by check()."""
    out = {}
    for name, d in cs.domains.items():
        v = int(model.get(name, d.lo))
        out[name] = code_string(v, d.length) if d.kind == "str" else v
    return out
