"""Argumentation frameworks, their probabilistic variant, and the classic semantics.

An :class:`AF` is a finite directed attack graph.  A :class:`PAF` attaches a
marginal probability to every argument and attack; a concrete scenario is a
:class:`Subframework`, and under the independence model its probability is the
product of the marginals of everything present (and one minus the marginal of
everything that could be present but is not).

Extensions and labelings are computed by plain enumeration here; faster code
paths live in :mod:`paftd.oracle` and :mod:`paftd.solver`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from itertools import combinations, product

from .errors import CapacityError, InputError

IN = "I"
OUT = "O"
UND = "U"
LABELS = (IN, OUT, UND)

EXTENSION_SEMANTICS = ("cf", "adm", "com", "stb", "grd")
LABELING_SEMANTICS = ("adm", "com", "stb")

Attack = tuple[str, str]

_NAME_RE = re.compile(r"^(?!#)[^\s,]+$")

# enumeration guards; subset enumeration is exponential in |A|
MAX_ENUM_ARGUMENTS = 20
MAX_ENUM_LABELINGS = 14


def is_valid_arg_name(name: str) -> bool:
    """Argument names are non-empty tokens without whitespace or commas and
    must not start with ``#`` (reserved for comments in the file format)."""
    return isinstance(name, str) and bool(_NAME_RE.match(name))


def as_probability(value) -> Fraction:
    """Coerce a probability given as Fraction, int, Decimal or decimal string.

    Binary floats are rejected: they would silently smuggle rounding error
    into the exact arithmetic mode.
    """
    if isinstance(value, float):
        raise InputError(
            f"refusing float probability {value!r}; pass a string or Fraction"
        )
    if isinstance(value, (Fraction, int, str, Decimal)):
        try:
            p = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"invalid probability {value!r}: {exc}") from None
    else:
        raise InputError(f"invalid probability {value!r}")
    if not 0 <= p <= 1:
        raise InputError(f"probability {value!r} outside [0, 1]")
    return p


class AF:
    """An argumentation framework: arguments plus a directed attack relation.

    Arguments are kept in lexicographic order, which is the canonical order
    used for iteration and serialization everywhere in the package.
    Immutable after construction.
    """

    __slots__ = ("arguments", "attacks", "_attackers", "_targets")

    def __init__(self, arguments, attacks=()):
        args = tuple(sorted(set(arguments)))
        for a in args:
            if not is_valid_arg_name(a):
                raise InputError(f"invalid argument name {a!r}")
        argset = frozenset(args)
        atts = set()
        for att in attacks:
            x, y = att
            if x not in argset or y not in argset:
                raise InputError(f"attack {att!r} has an undeclared endpoint")
            atts.add((x, y))
        self.arguments: tuple[str, ...] = args
        self.attacks: frozenset[Attack] = frozenset(atts)
        attackers = {a: set() for a in args}
        targets = {a: set() for a in args}
        for x, y in atts:
            attackers[y].add(x)
            targets[x].add(y)
        self._attackers = {a: frozenset(s) for a, s in attackers.items()}
        self._targets = {a: frozenset(s) for a, s in targets.items()}

    def attackers(self, a: str) -> frozenset[str]:
        self._check_member(a)
        return self._attackers[a]

    def targets(self, a: str) -> frozenset[str]:
        self._check_member(a)
        return self._targets[a]

    def _check_member(self, a: str) -> None:
        if a not in self._attackers:
            raise InputError(f"unknown argument {a!r}")

    def check_subset(self, S) -> frozenset[str]:
        S = frozenset(S)
        for a in S:
            self._check_member(a)
        return S

    def __eq__(self, other):
        if not isinstance(other, AF):
            return NotImplemented
        return self.arguments == other.arguments and self.attacks == other.attacks

    def __hash__(self):
        return hash((self.arguments, self.attacks))

    def __repr__(self):
        return f"AF({list(self.arguments)}, {sorted(self.attacks)})"


class Labeling:
    """A (possibly partial) assignment of I/O/U labels to arguments."""

    __slots__ = ("assignment",)

    def __init__(self, assignment):
        assignment = dict(assignment)
        for a, lab in assignment.items():
            if lab not in LABELS:
                raise InputError(f"invalid label {lab!r} for {a!r}")
        self.assignment = assignment

    def in_args(self) -> frozenset[str]:
        return frozenset(a for a, l in self.assignment.items() if l == IN)

    def out_args(self) -> frozenset[str]:
        return frozenset(a for a, l in self.assignment.items() if l == OUT)

    def und_args(self) -> frozenset[str]:
        return frozenset(a for a, l in self.assignment.items() if l == UND)

    def triple(self):
        return self.in_args(), self.out_args(), self.und_args()

    def is_total(self, af: AF) -> bool:
        return set(self.assignment) == set(af.arguments)

    def __getitem__(self, a: str) -> str:
        return self.assignment[a]

    def __contains__(self, a: str) -> bool:
        return a in self.assignment

    def __eq__(self, other):
        if not isinstance(other, Labeling):
            return NotImplemented
        return self.assignment == other.assignment

    def __hash__(self):
        return hash(frozenset(self.assignment.items()))

    def __repr__(self):
        items = ", ".join(f"{a}->{l}" for a, l in sorted(self.assignment.items()))
        return f"Labeling({items})"


def is_conflict_free(af: AF, S) -> bool:
    """True iff no attack runs between two members of S (self-attacks count)."""
    S = af.check_subset(S)
    return not any(x in S and y in S for x, y in af.attacks)


def defends(af: AF, S, a: str) -> bool:
    """True iff every attacker of ``a`` is attacked by some member of S."""
    S = af.check_subset(S)
    af._check_member(a)
    return all(af.attackers(b) & S for b in af.attackers(a))


def _attacked_by(af: AF, S) -> frozenset[str]:
    out = set()
    for a in S:
        out |= af._targets[a]
    return frozenset(out)


def _subsets(items):
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def extensions(af: AF, sigma: str) -> frozenset[frozenset[str]]:
    """All sigma-extensions of ``af``, by enumeration over argument subsets."""
    if sigma not in EXTENSION_SEMANTICS:
        raise InputError(f"unknown semantics {sigma!r}")
    if len(af.arguments) > MAX_ENUM_ARGUMENTS:
        raise CapacityError(
            f"extension enumeration capped at {MAX_ENUM_ARGUMENTS} arguments"
        )
    if sigma == "grd":
        com = extensions(af, "com")
        return frozenset(S for S in com if not any(T < S for T in com))

    found = set()
    allargs = frozenset(af.arguments)
    for cand in _subsets(af.arguments):
        S = frozenset(cand)
        if not is_conflict_free(af, S):
            continue
        if sigma == "cf":
            found.add(S)
        elif sigma == "stb":
            if allargs - S <= _attacked_by(af, S):
                found.add(S)
        else:
            if not all(defends(af, S, a) for a in S):
                continue
            if sigma == "adm":
                found.add(S)
            elif all(a in S for a in allargs - S if defends(af, S, a)):
                found.add(S)
    return frozenset(found)


def grounded_extension(af: AF) -> frozenset[str]:
    """The unique grounded extension, via the iterated-defense fixed point."""
    S: frozenset[str] = frozenset()
    while True:
        T = frozenset(a for a in af.arguments if defends(af, S, a))
        if T == S:
            return S
        S = T


def labeling_of_set(af: AF, S) -> Labeling:
    """The labeling corresponding to a conflict-free set: members are I,
    arguments attacked by S are O, everything else is U."""
    S = af.check_subset(S)
    if not is_conflict_free(af, S):
        raise InputError(f"set {sorted(S)} is not conflict-free")
    attacked = _attacked_by(af, S)
    return Labeling(
        {a: IN if a in S else OUT if a in attacked else UND for a in af.arguments}
    )


def set_of_labeling(labeling: Labeling) -> frozenset[str]:
    """The extension corresponding to a total labeling: its I-labeled arguments."""
    return labeling.in_args()


def labelings(af: AF, sigma: str) -> frozenset[Labeling]:
    """All total labelings satisfying the sigma labeling conditions."""
    if sigma not in LABELING_SEMANTICS:
        raise InputError(f"unknown labeling semantics {sigma!r}")
    n = len(af.arguments)
    if n > MAX_ENUM_LABELINGS:
        raise CapacityError(
            f"labeling enumeration capped at {MAX_ENUM_LABELINGS} arguments"
        )
    found = set()
    for labels in product(LABELS, repeat=n):
        lab = dict(zip(af.arguments, labels))
        if _satisfies_labeling(af, lab, sigma):
            found.add(Labeling(lab))
    return frozenset(found)


def _satisfies_labeling(af: AF, lab: dict[str, str], sigma: str) -> bool:
    for a in af.arguments:
        l = lab[a]
        if l == IN:
            if any(lab[b] != OUT for b in af.attackers(a)):
                return False
        elif l == OUT:
            if not any(lab[b] == IN for b in af.attackers(a)):
                return False
        else:  # UND
            if sigma == "stb":
                return False
            if sigma == "com":
                atks = af.attackers(a)
                if any(lab[b] == IN for b in atks):
                    return False
                if not any(lab[b] == UND for b in atks):
                    return False
    return True


class PAF:
    """A probabilistic AF: marginal probabilities for every argument and attack.

    Zero-probability elements are rejected; normalize the instance by dropping
    them before construction.  Immutable after construction.
    """

    __slots__ = ("af", "arg_prob", "att_prob")

    def __init__(self, af: AF, arg_prob, att_prob):
        arg_prob = {a: as_probability(p) for a, p in dict(arg_prob).items()}
        att_prob = {
            (x, y): as_probability(p) for (x, y), p in dict(att_prob).items()
        }
        if set(arg_prob) != set(af.arguments):
            raise InputError("argument probabilities do not cover the arguments")
        if set(att_prob) != set(af.attacks):
            raise InputError("attack probabilities do not cover the attacks")
        for key, p in list(arg_prob.items()) + list(att_prob.items()):
            if p == 0:
                raise InputError(
                    f"zero-probability element {key!r}; remove it from the instance"
                )
        self.af = af
        self.arg_prob = arg_prob
        self.att_prob = att_prob

    @classmethod
    def certain(cls, af: AF) -> "PAF":
        """Wrap a plain AF with all probabilities equal to one."""
        return cls(af, {a: 1 for a in af.arguments}, {r: 1 for r in af.attacks})

    def arg_certain(self, a: str) -> bool:
        return self.arg_prob[a] == 1

    def att_certain(self, r: Attack) -> bool:
        return self.att_prob[r] == 1

    def uncertain_args(self) -> tuple[str, ...]:
        return tuple(a for a in self.af.arguments if self.arg_prob[a] != 1)

    def uncertain_attacks(self) -> tuple[Attack, ...]:
        return tuple(sorted(r for r in self.af.attacks if self.att_prob[r] != 1))

    def uncertainty_count(self) -> int:
        return len(self.uncertain_args()) + len(self.uncertain_attacks())

    def without_arguments(self, removed) -> "PAF":
        """A copy with the given arguments and their incident attacks deleted."""
        removed = self.af.check_subset(removed)
        keep = [a for a in self.af.arguments if a not in removed]
        atts = [r for r in self.af.attacks if r[0] not in removed and r[1] not in removed]
        af = AF(keep, atts)
        return PAF(
            af,
            {a: self.arg_prob[a] for a in keep},
            {r: self.att_prob[r] for r in atts},
        )

    def __eq__(self, other):
        if not isinstance(other, PAF):
            return NotImplemented
        return (
            self.af == other.af
            and self.arg_prob == other.arg_prob
            and self.att_prob == other.att_prob
        )

    def __hash__(self):
        return hash(
            (self.af, frozenset(self.arg_prob.items()), frozenset(self.att_prob.items()))
        )

    def __repr__(self):
        return f"PAF({self.af!r}, {len(self.uncertain_args())} uncertain args)"


@dataclass(frozen=True)
class Subframework:
    """One concrete scenario: the arguments and attacks actually present."""

    args: frozenset[str]
    atts: frozenset[Attack]

    def to_af(self) -> AF:
        return AF(self.args, self.atts)


def is_certain_respecting(paf: PAF, sub: Subframework) -> bool:
    """Membership test for the certain-constrained subframework family:
    probability-one arguments are present, and probability-one attacks are
    present whenever both endpoints are."""
    if not sub.args <= set(paf.af.arguments):
        return False
    if not sub.atts <= paf.af.attacks:
        return False
    if any(x not in sub.args or y not in sub.args for x, y in sub.atts):
        return False
    for a in paf.af.arguments:
        if paf.arg_certain(a) and a not in sub.args:
            return False
    for x, y in paf.af.attacks:
        if (
            paf.att_certain((x, y))
            and x in sub.args
            and y in sub.args
            and (x, y) not in sub.atts
        ):
            return False
    return True


def subframework_probability(paf: PAF, sub: Subframework) -> Fraction:
    """The independence-model probability of one subframework."""
    if not is_certain_respecting(paf, sub):
        raise InputError("subframework violates the certain part of the PAF")
    p = Fraction(1)
    for a in paf.af.arguments:
        p *= paf.arg_prob[a] if a in sub.args else 1 - paf.arg_prob[a]
    for r in paf.af.attacks:
        x, y = r
        if x in sub.args and y in sub.args:
            p *= paf.att_prob[r] if r in sub.atts else 1 - paf.att_prob[r]
    return p
