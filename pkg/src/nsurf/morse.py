"""Morse words for knots, links, and one-vertex spatial graphs.

A Morse word records the critical events of a height function on an
embedded curve or graph, read from bottom to top.  Between events the
level set is a finite row of strand points indexed left to right from
zero.  A birth opens two adjacent strands, a death closes two, a
crossing exchanges two, and a single optional vertex event gathers
strands into the graph vertex.

The complexity calculus lives here as well: leaf complexities of level
surfaces under closed, bounded, and graph-relative sweeps, the width of
a word, Lmax profiles with their lexicographic order, bridge position,
and the commutation moves that slide independent events past each
other.  minimize() searches the closure of a word under commutations
and zigzag cancellations for the cheapest presentation.
"""

from collections import deque
from fractions import Fraction

from .errors import DependentEventsError, GuardExceededError, MorseWordError

# Event kinds double as the file-format directives.
BIRTH = "min"
DEATH = "max"
CROSS_POS = "x+"
CROSS_NEG = "x-"
VERTEX = "vertex"

EVENT_KINDS = (BIRTH, DEATH, CROSS_POS, CROSS_NEG, VERTEX)

# Sweep conventions for leaf_complexity.
CLOSED = "closed"
BOUNDED = "bounded"
RELATIVE_TO_K = "relative-to-k"

# Profile mode for sweeps of the 3-sphere described by a word alone.
AMBIENT = "ambient"

# Objectives for minimize.
WIDTH = "width"
LMAX = "lmax"

SEARCH_CAP = 14


class MorseEvent:
    """One event of a Morse word.

    kind is the file directive: "min" (birth), "max" (death), "x+" or
    "x-" (crossing), or "vertex".  position indexes the leftmost strand
    the event touches.  Vertex events also carry the number of strands
    entering from below and leaving above.
    """

    __slots__ = ("kind", "position", "below", "above")

    def __init__(self, kind, position, below=None, above=None):
        if kind not in EVENT_KINDS:
            raise MorseWordError("unknown event kind %r" % (kind,))
        if position < 0:
            raise MorseWordError("event position must be nonnegative")
        if kind == VERTEX:
            if below is None or above is None:
                raise MorseWordError("vertex event needs strand counts below and above")
            if below < 0 or above < 0:
                raise MorseWordError("vertex strand counts must be nonnegative")
            if below + above < 3:
                raise MorseWordError("vertex valence must be at least 3")
        elif below is not None or above is not None:
            raise MorseWordError("only vertex events carry strand counts")
        self.kind = kind
        self.position = position
        self.below = below
        self.above = above

    def spans(self):
        """Strands consumed and produced, as a pair."""
        if self.kind == BIRTH:
            return 0, 2
        if self.kind == DEATH:
            return 2, 0
        if self.kind == VERTEX:
            return self.below, self.above
        return 2, 2

    def is_critical(self):
        """Crossings are not critical for the curve; everything else is."""
        return self.kind in (BIRTH, DEATH, VERTEX)

    def sign(self):
        """+1 or -1 for a crossing, 0 otherwise.  Inert for width and Lmax."""
        if self.kind == CROSS_POS:
            return 1
        if self.kind == CROSS_NEG:
            return -1
        return 0

    def shifted(self, delta):
        return MorseEvent(self.kind, self.position + delta, self.below, self.above)

    def key(self):
        if self.kind == VERTEX:
            return (self.kind, self.position, self.below, self.above)
        return (self.kind, self.position)

    def __eq__(self, other):
        if not isinstance(other, MorseEvent):
            return NotImplemented
        return self.key() == other.key()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "MorseEvent(%s)" % ", ".join(repr(x) for x in self.key())


def birth(position):
    return MorseEvent(BIRTH, position)


def death(position):
    return MorseEvent(DEATH, position)


def crossing(position, sign=1):
    return MorseEvent(CROSS_POS if sign > 0 else CROSS_NEG, position)


def vertex_event(position, below, above):
    return MorseEvent(VERTEX, position, below, above)


class MorseWord:
    """A validated event sequence sweeping from zero strands back to zero.

    counts[i] is the strand count just after event i.  At most one
    vertex event is allowed: a connected graph that is untangled enough
    to sweep this way has a single vertex.
    """

    __slots__ = ("events", "counts")

    def __init__(self, events):
        events = tuple(events)
        counts = []
        count = 0
        vertices = 0
        for i, ev in enumerate(events):
            if not isinstance(ev, MorseEvent):
                raise MorseWordError("event %d is not a MorseEvent" % i)
            consumed, produced = ev.spans()
            if ev.position + consumed > count:
                raise MorseWordError(
                    "event %d (%s at %d) does not fit a level of %d strands"
                    % (i, ev.kind, ev.position, count))
            if ev.kind == VERTEX:
                vertices += 1
                if vertices > 1:
                    raise MorseWordError("at most one vertex event is allowed")
            count += produced - consumed
            counts.append(count)
        if count != 0:
            raise MorseWordError("word ends with %d strands, expected 0" % count)
        self.events = events
        self.counts = tuple(counts)

    def critical_indices(self):
        return tuple(i for i, ev in enumerate(self.events) if ev.is_critical())

    def gap_counts(self):
        """Strand counts in the gaps between consecutive critical events."""
        crit = self.critical_indices()
        return tuple(self.counts[i] for i in crit[:-1])

    def vertex(self):
        for ev in self.events:
            if ev.kind == VERTEX:
                return ev
        return None

    def key(self):
        return tuple(ev.key() for ev in self.events)

    def __eq__(self, other):
        if not isinstance(other, MorseWord):
            return NotImplemented
        return self.events == other.events

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.events)

    def __len__(self):
        return len(self.events)

    def __repr__(self):
        return "MorseWord<%s>" % "; ".join(event_line(ev) for ev in self.events)


def width(w):
    """Sum of strand counts over the gaps between consecutive critical events."""
    return sum(w.gap_counts())


def bridge_report(w):
    """(is_bridge, bridge number of the presentation) for a knot or link word.

    The word is in bridge position when every birth comes before every
    death; the bridge number of the presentation is the death count.
    """
    if w.vertex() is not None:
        raise MorseWordError("bridge position is not defined for words with a vertex event")
    births = [i for i, ev in enumerate(w.events) if ev.kind == BIRTH]
    deaths = [i for i, ev in enumerate(w.events) if ev.kind == DEATH]
    is_bridge = not births or not deaths or max(births) < min(deaths)
    return is_bridge, len(deaths)


def vertex_good_position(w):
    """True when the graph vertex sits at a local extremum of the height.

    Every edge at the vertex must leave in the same direction, so either
    no strands enter from below or none leave above.
    """
    v = w.vertex()
    if v is None:
        raise MorseWordError("word has no vertex event")
    return v.below == 0 or v.above == 0


class LeafComponent:
    """One component of a level surface.

    Records the closed flag, the Euler characteristic, the number of
    points of the graph K piercing the component, and the trivial flag
    marking disks and spheres.  The flag is determined by the other
    data (a closed surface of Euler characteristic 2 is a sphere, a
    bounded one of characteristic 1 is a disk), so an explicit value
    must agree with it.
    """

    __slots__ = ("closed", "chi", "k_points", "trivial")

    def __init__(self, closed, chi, k_points=0, trivial=None):
        closed = bool(closed)
        if chi > (2 if closed else 1):
            raise MorseWordError(
                "no %s surface has Euler characteristic %d"
                % ("closed" if closed else "bounded", chi))
        if k_points < 0:
            raise MorseWordError("intersection count with K must be nonnegative")
        derived = chi == (2 if closed else 1)
        if trivial is None:
            trivial = derived
        elif bool(trivial) != derived:
            raise MorseWordError(
                "inconsistent leaf component: closed=%r chi=%d with trivial=%r"
                % (closed, chi, trivial))
        self.closed = closed
        self.chi = chi
        self.k_points = k_points
        self.trivial = trivial

    def __repr__(self):
        return "LeafComponent(closed=%r, chi=%d, k_points=%d)" % (
            self.closed, self.chi, self.k_points)


class LeafDescriptor:
    """A level surface described component by component."""

    __slots__ = ("components",)

    def __init__(self, components):
        components = tuple(components)
        for comp in components:
            if not isinstance(comp, LeafComponent):
                raise MorseWordError("leaf descriptor entries must be LeafComponent")
        self.components = components

    def __repr__(self):
        return "LeafDescriptor(%r)" % (list(self.components),)


def sphere_leaf(k_points=0):
    """The sphere level of a sweep of the 3-sphere, meeting K in k points."""
    return LeafDescriptor([LeafComponent(True, 2, k_points)])


def leaf_complexity(d, ambient):
    """Complexity of a level surface under the given sweep convention.

    CLOSED sweeps score a component 0 if it is a sphere and 1 - chi
    otherwise.  BOUNDED sweeps also forgive disks and score bounded
    components 1/2 - chi.  RELATIVE_TO_K adds the number of points of K
    on the component to its bounded-style score.  Components are summed;
    the result is an exact rational.
    """
    if ambient not in (CLOSED, BOUNDED, RELATIVE_TO_K):
        raise MorseWordError("unknown sweep convention %r" % (ambient,))
    total = Fraction(0)
    for comp in d.components:
        if ambient == CLOSED:
            if not comp.closed:
                raise MorseWordError("a closed sweep cannot carry a bounded leaf component")
            if not comp.trivial:
                total += 1 - comp.chi
            continue
        if comp.trivial:
            pass
        elif comp.closed:
            total += 1 - comp.chi
        else:
            total += Fraction(1, 2) - comp.chi
        if ambient == RELATIVE_TO_K:
            total += comp.k_points
    return total


class LmaxProfile:
    """Thick-level complexities stored in non-increasing order.

    Profiles compare lexicographically, and when one is a prefix of the
    other the shorter profile is the smaller one: dropping a thick level
    never makes a sweep worse.
    """

    __slots__ = ("values",)

    def __init__(self, values):
        vals = []
        for v in values:
            f = Fraction(v)
            vals.append(int(f) if f.denominator == 1 else f)
        for i in range(len(vals) - 1):
            if vals[i] < vals[i + 1]:
                raise MorseWordError("profile values must be non-increasing")
        self.values = tuple(vals)

    def __eq__(self, other):
        if not isinstance(other, LmaxProfile):
            return NotImplemented
        return self.values == other.values

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __lt__(self, other):
        if not isinstance(other, LmaxProfile):
            return NotImplemented
        return self.values < other.values

    def __le__(self, other):
        if not isinstance(other, LmaxProfile):
            return NotImplemented
        return self.values <= other.values

    def __gt__(self, other):
        if not isinstance(other, LmaxProfile):
            return NotImplemented
        return self.values > other.values

    def __ge__(self, other):
        if not isinstance(other, LmaxProfile):
            return NotImplemented
        return self.values >= other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return "LmaxProfile(%r)" % (list(self.values),)


def _local_maxima(seq):
    # A plateau counts once; a boundary run counts when its one inner
    # neighbour is strictly smaller (or the sequence has a single run).
    runs = []
    for v in seq:
        if not runs or runs[-1] != v:
            runs.append(v)
    out = []
    for i, v in enumerate(runs):
        if (i == 0 or runs[i - 1] < v) and (i == len(runs) - 1 or runs[i + 1] < v):
            out.append(v)
    return out


def lmax_profile(w, mode=RELATIVE_TO_K):
    """Profile of thick-level complexities for the sweep a word describes.

    The levels are the gaps between consecutive critical events.  The
    word is read as a curve in the 3-sphere swept by spheres, so in
    RELATIVE_TO_K mode a level scores its strand count and in AMBIENT
    mode it scores 0.  The profile keeps the local maxima of the level
    sequence, sorted non-increasing.
    """
    if mode == RELATIVE_TO_K:
        convention = RELATIVE_TO_K
    elif mode == AMBIENT:
        convention = CLOSED
    else:
        raise MorseWordError("unknown profile mode %r" % (mode,))
    levels = [leaf_complexity(sphere_leaf(c), convention) for c in w.gap_counts()]
    return LmaxProfile(sorted(_local_maxima(levels), reverse=True))


def lmax_profile_of_leaves(descriptors, ambient):
    """Profile for an explicitly described sweep, one descriptor per level.

    This is the general form of lmax_profile: sweeps of manifolds other
    than the 3-sphere supply their own leaf descriptors in height order.
    """
    levels = [leaf_complexity(d, ambient) for d in descriptors]
    return LmaxProfile(sorted(_local_maxima(levels), reverse=True))


def commute(w, k):
    """Swap events k and k+1 when they touch disjoint strand ranges.

    Positions are re-indexed so the underlying curve or graph is
    unchanged.  Raises DependentEventsError when the ranges overlap;
    such events cannot slide past each other.
    """
    events = w.events
    if not 0 <= k < len(events) - 1:
        raise MorseWordError("no adjacent event pair at index %d" % k)
    e1, e2 = events[k], events[k + 1]
    u1, v1 = e1.spans()
    u2, v2 = e2.spans()
    if e2.position + u2 <= e1.position:
        pair = (e2, e1.shifted(v2 - u2))
    elif e2.position >= e1.position + v1:
        pair = (e2.shifted(u1 - v1), e1)
    else:
        raise DependentEventsError(
            "events %d and %d act on overlapping strand ranges" % (k, k + 1))
    return MorseWord(events[:k] + pair + events[k + 2:])


def _cancelled(w, k):
    """Word with the zigzag at events k, k+1 removed, or None.

    A birth immediately followed by a death sharing exactly one of the
    newborn strands is a zigzag on a single strand; straightening it
    deletes both events and leaves every other position unchanged.  A
    death sharing both strands would erase a circle component, so that
    pair is kept.
    """
    e1, e2 = w.events[k], w.events[k + 1]
    if e1.kind != BIRTH or e2.kind != DEATH:
        return None
    if abs(e2.position - e1.position) != 1:
        return None
    return MorseWord(w.events[:k] + w.events[k + 2:])


def minimize(w, objective=WIDTH, cap=SEARCH_CAP):
    """Cheapest presentation reachable from w, with its objective value.

    Breadth-first search over the closure of the word under event
    commutations and zigzag cancellations.  The objective is WIDTH or
    LMAX (the RELATIVE_TO_K profile); ties are broken by the smallest
    event sequence, so the result is deterministic and minimize is
    idempotent.  Words longer than cap events are refused.
    """
    if objective == WIDTH:
        score = width
    elif objective == LMAX:
        def score(word):
            return lmax_profile(word, RELATIVE_TO_K)
    else:
        raise MorseWordError("unknown objective %r" % (objective,))
    if len(w.events) > cap:
        raise GuardExceededError(
            "word has %d events, the search cap is %d" % (len(w.events), cap))
    seen = {w.key()}
    queue = deque([w])
    best_word, best_score = w, score(w)
    while queue:
        cur = queue.popleft()
        for k in range(len(cur.events) - 1):
            moved = []
            try:
                moved.append(commute(cur, k))
            except DependentEventsError:
                pass
            cancelled = _cancelled(cur, k)
            if cancelled is not None:
                moved.append(cancelled)
            for nxt in moved:
                nkey = nxt.key()
                if nkey in seen:
                    continue
                seen.add(nkey)
                queue.append(nxt)
                s = score(nxt)
                if s < best_score or (s == best_score and nkey < best_word.key()):
                    best_word, best_score = nxt, s
    return best_word, best_score


def event_line(ev):
    """Render one event in the file format."""
    if ev.kind == VERTEX:
        return "vertex %d %d %d" % (ev.position, ev.below, ev.above)
    return "%s %d" % (ev.kind, ev.position)


def format_morse_word(w):
    return "".join(event_line(ev) + "\n" for ev in w.events)


def parse_morse_word(text):
    """Parse the one-event-per-line format.

    Lines hold `min i`, `max i`, `x+ i`, `x- i`, or `vertex i below
    above`; blank lines and `#` comments are skipped.
    """
    events = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind not in EVENT_KINDS:
            raise MorseWordError("line %d: unknown directive %r" % (lineno, kind))
        want = 3 if kind == VERTEX else 1
        if len(args) != want:
            raise MorseWordError(
                "line %d: %s takes %d argument%s"
                % (lineno, kind, want, "" if want == 1 else "s"))
        try:
            args = [int(tok) for tok in args]
        except ValueError:
            raise MorseWordError("line %d: arguments must be integers" % lineno) from None
        try:
            if kind == VERTEX:
                events.append(MorseEvent(VERTEX, args[0], args[1], args[2]))
            else:
                events.append(MorseEvent(kind, args[0]))
        except MorseWordError as exc:
            raise MorseWordError("line %d: %s" % (lineno, exc)) from None
    return MorseWord(events)
