"""Cross-language resource-call patterns and source/target call alignment.

Offline, each known (source statement, target call sequence) pair is
generalized into a pattern whose placeholders link source host variables to
target argument slots.  Online, every source external call is scored against
every target call sequence and the calls are aligned by an order-preserving,
one-to-one, maximum-weight matching computed exactly by dynamic programming.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import NoAnchor, SlotArityMismatch
from .ir import ExternalCall

WILD = "⟨_⟩"
STATUS = "⟨S⟩"
_ANCHOR_RE = re.compile(r"⟨A(\d+)⟩")
_WORD = r"[A-Za-z0-9_#$@-]+"


def norm_ident(name: str) -> str:
    """Identifier key shared by COBOL and target spellings (WS-CUST-ID ~ wsCustId)."""
    return re.sub(r"[-_]", "", name).lower()


def slot_key(call_index: int, arg_slot: int) -> str:
    return f"{call_index}:{arg_slot}"


def parse_slot(key: str):
    a, b = key.split(":")
    return int(a), int(b)


def is_literal(token: str) -> bool:
    return token.startswith('"') or token.startswith("'") or re.fullmatch(r"-?\d+(\.\d+)?", token) is not None


def literal_text(token: str) -> str:
    if token[:1] in "\"'":
        return token[1:-1]
    return token


# -- target side ------------------------------------------------------------------


@dataclass(frozen=True)
class TargetCall:
    callee: str
    args: tuple
    ret: Optional[str] = None

    @property
    def name(self):
        return self.callee.split(".")[-1]

    def to_json(self):
        return {"callee": self.callee, "args": list(self.args), "ret": self.ret}

    @classmethod
    def from_json(cls, d):
        return cls(d["callee"], tuple(d.get("args", ())), d.get("ret"))


@dataclass(frozen=True)
class TargetCallSeq:
    seq_id: int
    calls: tuple
    source_span: tuple = (0, 0)

    @property
    def arg_count(self):
        return sum(len(c.args) for c in self.calls)

    def to_json(self):
        return {"seqId": self.seq_id, "calls": [c.to_json() for c in self.calls],
                "sourceSpan": list(self.source_span)}

    @classmethod
    def from_json(cls, d):
        return cls(d["seqId"], tuple(TargetCall.from_json(c) for c in d["calls"]),
                   tuple(d.get("sourceSpan", (0, 0))))


@dataclass
class Manifest:
    target_class: str
    method: str
    sequences: list

    def to_json(self):
        return {"class": self.target_class, "method": self.method,
                "sequences": [s.to_json() for s in self.sequences]}

    @classmethod
    def from_json(cls, d):
        seqs = [TargetCallSeq.from_json(s) for s in d.get("sequences", [])]
        ids = [s.seq_id for s in seqs]
        if ids != sorted(set(ids)):
            raise ValueError("manifest seqIds must be strictly increasing")
        return cls(d.get("class", ""), d.get("method", ""), seqs)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def seq(self, seq_id):
        for s in self.sequences:
            if s.seq_id == seq_id:
                return s
        raise KeyError(seq_id)


_CALL_LINE = re.compile(r"^\s*(?:[\w<>\[\]]+\s+)?(?:(\w+)\s*=\s*)?([\w.]+)\s*\((.*)\)\s*;\s*(?://.*)?$")


def _split_args(text):
    args, depth, cur, quote = [], 0, "", None
    for ch in text:
        if quote:
            cur += ch
            if ch == quote:
                quote = None
            continue
        if ch in "\"'":
            quote = ch
            cur += ch
        elif ch == "(":
            depth += 1
            cur += ch
        elif ch == ")":
            depth -= 1
            cur += ch
        elif ch == "," and depth == 0:
            args.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        args.append(cur.strip())
    return args


def scan_target_source(text: str, resource_callees) -> list:
    """Best-effort extraction of resource call sequences from translated source.

    Consecutive lines calling one of ``resource_callees`` (matched on the last
    dotted component) form one sequence; any other line ends it.
    """
    wanted = set(resource_callees)
    seqs, current, start = [], [], 0
    for lineno, line in enumerate(text.splitlines(), 1):
        m = _CALL_LINE.match(line)
        name = m.group(2).split(".")[-1] if m else None
        if m and name in wanted:
            if not current:
                start = lineno
            current.append(TargetCall(m.group(2), tuple(_split_args(m.group(3))), m.group(1)))
            continue
        if current:
            seqs.append(TargetCallSeq(len(seqs) + 1, tuple(current), (start, lineno - 1)))
            current = []
    if current:
        seqs.append(TargetCallSeq(len(seqs) + 1, tuple(current), (start, start + len(current) - 1)))
    return seqs


# -- patterns -----------------------------------------------------------------------


@dataclass(frozen=True)
class ResourcePattern:
    kind: str
    verb: str
    source_template: str
    source_anchors: tuple  # anchors of the originating call, e.g. ("CUSTOMER",)
    target_sequence: tuple  # ((callee name, (arg tokens...), ret token or None), ...)
    param_map: tuple  # ((placeholder, "callIndex:argSlot", direction), ...)

    @property
    def key(self):
        return (self.source_template, self.target_sequence)

    @property
    def source_placeholders(self):
        return len(re.findall(r"⟨H\d+⟩", self.source_template))

    @property
    def arg_count(self):
        return sum(len(args) for _, args, _ in self.target_sequence)

    def slot_of(self, placeholder):
        for ph, slot, _ in self.param_map:
            if ph == placeholder:
                return slot
        return None

    def to_json(self):
        return {
            "kind": self.kind, "verb": self.verb, "sourceTemplate": self.source_template,
            "sourceAnchors": list(self.source_anchors),
            "targetSequence": [{"callee": c, "args": list(a), "ret": r} for c, a, r in self.target_sequence],
            "paramMap": [{"placeholder": p, "slot": s, "direction": d} for p, s, d in self.param_map],
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["kind"], d["verb"], d["sourceTemplate"], tuple(d.get("sourceAnchors", ())),
                   tuple((c["callee"], tuple(c["args"]), c.get("ret")) for c in d["targetSequence"]),
                   tuple((p["placeholder"], p["slot"], p["direction"]) for p in d["paramMap"]))


def _direction(call: ExternalCall, var):
    inp, out = var in call.resource_inputs, var in call.resource_outputs
    return "inout" if inp and out else ("in" if inp else "out")


def generalize_pair(call: ExternalCall, seq: TargetCallSeq) -> ResourcePattern:
    """Abstract a source call / target sequence pair into a reusable pattern."""
    links = {}  # normalized identifier -> source placeholder
    for k, var in enumerate(call.host_vars, 1):
        links.setdefault(norm_ident(var), (f"⟨H{k}⟩", var))
    if call.status_var:
        links.setdefault(norm_ident(call.status_var), (STATUS, call.status_var))
    anchors = [a.upper() for a in call.anchors]
    anchor_ph = {a: f"⟨A{i}⟩" for i, a in enumerate(anchors, 1)}
    shared = 0
    param_map = {}
    target = []

    def token(tok, ci, slot):
        nonlocal shared
        if tok is None:
            return None
        if is_literal(tok):
            text = literal_text(tok)
            for a in sorted(anchor_ph, key=len, reverse=True):
                pattern = re.compile(rf"(?<![A-Za-z0-9_#$@-]){re.escape(a)}(?![A-Za-z0-9_#$@-])", re.I)
                if pattern.search(text):
                    text = pattern.sub(anchor_ph[a], text)
                    shared += 1
            return tok[0] + text + tok[-1] if tok[:1] in "\"'" else text
        key = norm_ident(tok)
        if key in links:
            ph, var = links[key]
            if ph not in param_map:
                param_map[ph] = (slot_key(ci, slot), _direction(call, var))
                shared += 1
            return ph
        return WILD

    for ci, c in enumerate(seq.calls):
        args = tuple(token(a, ci, s) for s, a in enumerate(c.args, 1))
        ret = token(c.ret, ci, 0)
        target.append((c.name, args, ret))
    if shared == 0:
        raise NoAnchor(f"no shared literal or identifier between {call.template!r} and sequence {seq.seq_id}")
    ordered = tuple(sorted(((p, s, d) for p, (s, d) in param_map.items()), key=lambda x: _ph_order(x[0])))
    return ResourcePattern(call.kind, call.verb, call.template, tuple(anchors), tuple(target), ordered)


def _ph_order(ph):
    m = re.match(r"⟨H(\d+)⟩", ph)
    return (0, int(m.group(1))) if m else (1, 0)


@dataclass
class CJResourceMap:
    patterns: list = field(default_factory=list)

    def add(self, pattern: ResourcePattern) -> bool:
        if any(p.key == pattern.key for p in self.patterns):
            return False
        self.patterns.append(pattern)
        return True

    def lookup(self, kind, verb):
        return [p for p in self.patterns if p.kind == kind and p.verb == verb]

    def to_json(self):
        return {"patterns": [p.to_json() for p in self.patterns]}

    @classmethod
    def from_json(cls, d):
        return cls([ResourcePattern.from_json(p) for p in d.get("patterns", [])])

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def build_map(pairs) -> CJResourceMap:
    """Generalize ``(ExternalCall, TargetCallSeq)`` pairs; pairs without anchors are skipped."""
    m = CJResourceMap()
    for call, seq in pairs:
        try:
            m.add(generalize_pair(call, seq))
        except NoAnchor:
            continue
    return m


# -- scoring --------------------------------------------------------------------------


@dataclass(frozen=True)
class MatchConfig:
    w_verb: Fraction = Fraction(2, 5)
    w_anchor: Fraction = Fraction(3, 10)
    w_arity: Fraction = Fraction(3, 10)
    theta: Fraction = Fraction(1, 4)

    def to_json(self):
        return {"wVerb": str(self.w_verb), "wAnchor": str(self.w_anchor), "wArity": str(self.w_arity),
                "theta": str(self.theta)}


def _fit(a, b):
    if a == b:
        return Fraction(1)
    return Fraction(min(a, b), max(a, b))


def _jaccard(a, b):
    a, b = set(a), set(b)
    if not a and not b:
        return Fraction(1)
    return Fraction(len(a & b), len(a | b))


def _structural(pattern: ResourcePattern, seq: TargetCallSeq) -> bool:
    if len(pattern.target_sequence) != len(seq.calls):
        return False
    return all(p[0] == c.name for p, c in zip(pattern.target_sequence, seq.calls))


def _literal_regex(template):
    parts = re.split(r"(⟨A\d+⟩|⟨_⟩)", template)
    rx = ""
    for p in parts:
        if _ANCHOR_RE.fullmatch(p):
            rx += f"(?P<a{_ANCHOR_RE.fullmatch(p).group(1)}>{_WORD})"
        elif p == WILD:
            rx += ".*?"
        else:
            rx += re.escape(p)
    return re.compile(rx + r"\Z", re.I | re.S)


def sequence_anchors(pattern: ResourcePattern, seq: TargetCallSeq):
    """Anchor values bound by the pattern's literal templates in ``seq``."""
    bound = set()
    for (_, pargs, _), call in zip(pattern.target_sequence, seq.calls):
        for ptok, tok in zip(pargs, call.args):
            if ptok is None or not is_literal(ptok) or not _ANCHOR_RE.search(ptok) or not is_literal(tok):
                continue
            m = _literal_regex(literal_text(ptok)).match(literal_text(tok))
            if m:
                bound.update(v.upper() for v in m.groupdict().values())
    return bound


def pattern_score(call: ExternalCall, seq: TargetCallSeq, pattern: ResourcePattern,
                  cfg: MatchConfig = MatchConfig()) -> Fraction:
    if pattern.kind != call.kind or not _structural(pattern, seq):
        return Fraction(0)
    verb = Fraction(1) if pattern.verb == call.verb else Fraction(0)
    anchors = _jaccard({a.upper() for a in call.anchors}, sequence_anchors(pattern, seq))
    call_ph = len(re.findall(r"⟨H\d+⟩", call.template))
    arity = (_fit(call_ph, pattern.source_placeholders) + _fit(seq.arg_count, pattern.arg_count)) / 2
    return cfg.w_verb * verb + cfg.w_anchor * anchors + cfg.w_arity * arity


def best_pattern(call: ExternalCall, seq: TargetCallSeq, cmap: CJResourceMap, cfg: MatchConfig = MatchConfig()):
    best, best_score = None, Fraction(0)
    for p in cmap.patterns:
        s = pattern_score(call, seq, p, cfg)
        if s > best_score:
            best, best_score = p, s
    return best, best_score


def score_match(call: ExternalCall, seq: TargetCallSeq, cmap: CJResourceMap,
                cfg: MatchConfig = MatchConfig()) -> Fraction:
    """Best pattern score in [0, 1] for aligning ``call`` with ``seq``."""
    return best_pattern(call, seq, cmap, cfg)[1]


# -- matching -------------------------------------------------------------------------


@dataclass
class Matching:
    pairs: list  # (callId, seqId, weight)
    unmatched_source: list
    unmatched_target: list
    var_arg_map: dict = field(default_factory=dict)  # (callId, var) -> (seqId, callIndex, argSlot)
    unmappable: list = field(default_factory=list)  # (callId, var)
    demoted: list = field(default_factory=list)  # (callId, seqId, reason)

    @property
    def total_weight(self):
        return sum((Fraction(w) for _, _, w in self.pairs), Fraction(0))

    def seq_of(self, call_id):
        for c, s, _ in self.pairs:
            if c == call_id:
                return s
        return None

    def to_json(self):
        return {
            "pairs": [{"callId": c, "seqId": s, "weight": str(Fraction(w))} for c, s, w in self.pairs],
            "unmatchedSource": list(self.unmatched_source),
            "unmatchedTarget": list(self.unmatched_target),
            "varArgMap": [{"callId": c, "var": v, "seqId": s, "slot": slot_key(ci, sl)}
                          for (c, v), (s, ci, sl) in sorted(self.var_arg_map.items())],
            "unmappable": [{"callId": c, "var": v} for c, v in self.unmappable],
            "demoted": [{"callId": c, "seqId": s, "reason": r} for c, s, r in self.demoted],
        }

    @classmethod
    def from_json(cls, d):
        m = cls([(p["callId"], p["seqId"], Fraction(p["weight"])) for p in d["pairs"]],
                list(d["unmatchedSource"]), list(d["unmatchedTarget"]))
        for e in d.get("varArgMap", []):
            ci, sl = parse_slot(e["slot"])
            m.var_arg_map[(e["callId"], e["var"])] = (e["seqId"], ci, sl)
        m.unmappable = [(e["callId"], e["var"]) for e in d.get("unmappable", [])]
        m.demoted = [(e["callId"], e["seqId"], e["reason"]) for e in d.get("demoted", [])]
        return m


def align(weights, theta=Fraction(1, 4)):
    """Monotone injective max-weight alignment of a weight matrix.

    Returns index pairs; ties go to the lexicographically smallest pair list.
    Pairs with weight below ``theta`` (or zero) are never used.
    """
    n = len(weights)
    m = len(weights[0]) if n else 0
    best = [[(Fraction(0), ()) for _ in range(m + 1)] for _ in range(n + 1)]

    def better(a, b):
        return a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])

    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            cand = best[i + 1][j]
            if better(best[i][j + 1], cand):
                cand = best[i][j + 1]
            w = Fraction(weights[i][j])
            if w > 0 and w >= theta:
                nxt = best[i + 1][j + 1]
                take = (nxt[0] + w, ((i, j),) + nxt[1])
                if better(take, cand):
                    cand = take
            best[i][j] = cand
    return list(best[0][0][1]) if n and m else []


def match_calls(calls, seqs, cmap: CJResourceMap, cfg: MatchConfig = MatchConfig()) -> Matching:
    weights = [[score_match(c, s, cmap, cfg) for s in seqs] for c in calls]
    chosen = align(weights, cfg.theta)
    pairs = [(calls[i].call_id, seqs[j].seq_id, weights[i][j]) for i, j in chosen]
    used_c = {i for i, _ in chosen}
    used_s = {j for _, j in chosen}
    return Matching(pairs, [c.call_id for i, c in enumerate(calls) if i not in used_c],
                    [s.seq_id for j, s in enumerate(seqs) if j not in used_s])


def derive_var_arg_map(m: Matching, calls, seqs, cmap: CJResourceMap, cfg: MatchConfig = MatchConfig()) -> Matching:
    """Instantiate each pair's winning pattern with the call's actual variables."""
    by_call = {c.call_id: c for c in calls}
    by_seq = {s.seq_id: s for s in seqs}
    out = Matching([], list(m.unmatched_source), list(m.unmatched_target))
    for call_id, seq_id, w in m.pairs:
        call, seq = by_call[call_id], by_seq[seq_id]
        pattern, _ = best_pattern(call, seq, cmap, cfg)
        try:
            entries = _instantiate(call, seq, pattern)
        except SlotArityMismatch as exc:
            out.demoted.append((call_id, seq_id, str(exc)))
            out.unmatched_source.append(call_id)
            out.unmatched_target.append(seq_id)
            continue
        out.pairs.append((call_id, seq_id, w))
        for var, (ci, slot) in entries.items():
            out.var_arg_map[(call_id, var)] = (seq_id, ci, slot)
        for var in _call_vars(call):
            if var not in entries:
                out.unmappable.append((call_id, var))
    out.unmatched_source.sort()
    out.unmatched_target.sort()
    for call_id in out.unmatched_source:
        for var in _call_vars(by_call[call_id]):
            out.unmappable.append((call_id, var))
    return out


def _call_vars(call: ExternalCall):
    seen = []
    for v in list(call.resource_outputs) + list(call.resource_inputs):
        if v not in seen:
            seen.append(v)
    return seen


def _instantiate(call: ExternalCall, seq: TargetCallSeq, pattern: ResourcePattern):
    entries = {}
    for ph, key, _ in pattern.param_map:
        ci, slot = parse_slot(key)
        if ph == STATUS:
            var = call.status_var
        else:
            k = int(re.match(r"⟨H(\d+)⟩", ph).group(1))
            if k > len(call.host_vars):
                continue
            var = call.host_vars[k - 1]
        if var is None:
            continue
        if ci >= len(seq.calls):
            raise SlotArityMismatch(f"sequence {seq.seq_id} has no call #{ci}")
        target = seq.calls[ci]
        if (slot == 0 and target.ret is None) or slot > len(target.args):
            raise SlotArityMismatch(f"sequence {seq.seq_id} call {target.name} has no slot {slot}")
        entries.setdefault(var, (ci, slot))
    return entries


def map_calls(calls, manifest: Manifest, cmap: CJResourceMap, cfg: MatchConfig = MatchConfig()) -> Matching:
    """Alignment followed by variable/argument instantiation."""
    m = match_calls(calls, manifest.sequences, cmap, cfg)
    return derive_var_arg_map(m, calls, manifest.sequences, cmap, cfg)
