"""Right-angled Coxeter systems: diagrams, canonical words, and the weak order.

A right-angled Coxeter system is described by its set of generators together
with the symmetric relation of commuting pairs (exponent 2); all other pairs
of distinct generators have exponent infinity.  Group elements are handled as
canonical words: the ShortLex-least reduced word under the input generator
order.  Two reduced words represent the same element exactly when they differ
by swaps of adjacent commuting letters, so the canonical word is computable by
cancellation followed by a greedy lexicographic linearization.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

Word = tuple[str, ...]

EMPTY: Word = ()

#: Generator names that would make element serialization ambiguous.  "e" is
#: allowed as a generator; when present, the identity is spelled "1" instead.
_RESERVED_NAMES = {"1", ""}
_FORBIDDEN_CHARS = set(".,=*()[]{} \t\n")


class DiagramError(ValueError):
    """Malformed diagram description or unknown generator."""


class CoxeterDiagram:
    """A right-angled Coxeter diagram.

    Parameters
    ----------
    generators:
        Ordered sequence of distinct generator names.  The order fixes the
        ShortLex order used by all canonical-word computations.
    commuting:
        Pairs ``(s, t)`` of distinct generators with exponent 2.  The relation
        is symmetrized; self-pairs are rejected.
    """

    def __init__(self, generators: Sequence[str], commuting: Iterable[Sequence[str]] = ()):
        gens = tuple(generators)
        if not gens:
            raise DiagramError("diagram needs at least one generator")
        if len(set(gens)) != len(gens):
            raise DiagramError("duplicate generator")
        self.generators: tuple[str, ...] = gens
        self._gidx: dict[str, int] = {s: i for i, s in enumerate(gens)}
        pairs: set[tuple[str, str]] = set()
        for pair in commuting:
            if len(pair) != 2:
                raise DiagramError(f"commuting entry {pair!r} is not a pair")
            s, t = pair
            if s not in self._gidx or t not in self._gidx:
                raise DiagramError(f"unknown generator in pair ({s!r}, {t!r})")
            if s == t:
                raise DiagramError(f"self-pair ({s!r}, {s!r})")
            pairs.add((s, t))
            pairs.add((t, s))
        self._commuting = frozenset(pairs)
        # noncommuting[s] = letters that block s from moving past them,
        # including s itself (ss is a cancellation, never a free swap).
        self._noncomm: dict[str, frozenset[str]] = {
            s: frozenset({s} | {t for t in gens if t != s and (s, t) not in pairs})
            for s in gens
        }

    # -- basic structure ---------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.generators)

    def commutes(self, s: str, t: str) -> bool:
        """True iff ``s != t`` and the exponent of (s, t) is 2."""
        return (s, t) in self._commuting

    def gen_index(self, s: str) -> int:
        return self._gidx[s]

    def infinity_edges(self) -> list[tuple[str, str]]:
        """Unordered pairs of distinct generators with exponent infinity."""
        out = []
        for i, s in enumerate(self.generators):
            for t in self.generators[i + 1:]:
                if not self.commutes(s, t):
                    out.append((s, t))
        return out

    def key(self) -> tuple:
        pairs = sorted(
            (s, t) for (s, t) in self._commuting if self._gidx[s] < self._gidx[t]
        )
        return (self.generators, tuple(pairs))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoxeterDiagram) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"CoxeterDiagram(generators={list(self.generators)!r})"

    def _check_letters(self, word: Iterable[str]) -> None:
        for x in word:
            if x not in self._gidx:
                raise DiagramError(f"unknown generator {x!r}")

    # -- canonical words ---------------------------------------------------

    def _reduce(self, letters: list[str]) -> list[str]:
        # Remove a pair of equal letters whenever the letters strictly
        # between them all commute with it; repeat until stable.
        changed = True
        while changed:
            changed = False
            n = len(letters)
            for i in range(n):
                x = letters[i]
                blocked = False
                for j in range(i + 1, n):
                    y = letters[j]
                    if y == x and not blocked:
                        del letters[j]
                        del letters[i]
                        changed = True
                        break
                    if y in self._noncomm[x]:
                        blocked = True
                if changed:
                    break
        return letters

    def _linearize(self, letters: Sequence[str]) -> Word:
        # Greedy ShortLex: repeatedly emit the smallest letter that commutes
        # with everything before it.  On reduced input this yields the
        # lexicographically least reduced word of the element.
        rest = list(letters)
        out: list[str] = []
        while rest:
            best_i = -1
            best_rank = len(self.generators)
            shield: set[str] = set()
            for i, x in enumerate(rest):
                if x not in shield and self._gidx[x] < best_rank:
                    best_rank = self._gidx[x]
                    best_i = i
                shield |= self._noncomm[x]
            out.append(rest[best_i])
            del rest[best_i]
        return tuple(out)

    def normal_form(self, word: Iterable[str]) -> Word:
        """ShortLex-least reduced word of the element spelled by ``word``."""
        letters = list(word)
        self._check_letters(letters)
        return self._linearize(self._reduce(letters))

    def is_reduced(self, word: Sequence[str]) -> bool:
        return len(self.normal_form(word)) == len(word)

    # -- group operations --------------------------------------------------

    def multiply(self, v: Iterable[str], w: Iterable[str]) -> Word:
        return self.normal_form(tuple(v) + tuple(w))

    def inverse(self, w: Sequence[str]) -> Word:
        # Generators are involutions, so the inverse word is the reversal;
        # it stays reduced and only needs re-linearization.
        self._check_letters(w)
        return self._linearize(tuple(reversed(w)))

    def left_descents(self, word: Sequence[str]) -> list[str]:
        """Letters s with s <= w, in generator order.  ``word`` must be reduced."""
        found: set[str] = set()
        shield: set[str] = set()
        for x in word:
            if x not in shield:
                found.add(x)
            shield |= self._noncomm[x]
        return sorted(found, key=self._gidx.__getitem__)

    def right_descents(self, word: Sequence[str]) -> list[str]:
        found: set[str] = set()
        shield: set[str] = set()
        for x in reversed(word):
            if x not in shield:
                found.add(x)
            shield |= self._noncomm[x]
        return sorted(found, key=self._gidx.__getitem__)

    def left_strip(self, s: str, word: Sequence[str]) -> Word:
        """Canonical word of ``s * word`` when s is a left descent of ``word``."""
        shield: set[str] = set()
        for i, x in enumerate(word):
            if x == s and s not in shield:
                return self._linearize(tuple(word[:i]) + tuple(word[i + 1:]))
            shield |= self._noncomm[x]
        raise ValueError(f"{s!r} is not a left descent of {word!r}")

    def left_multiply(self, s: str, word: Sequence[str]) -> Word:
        if s not in self._gidx:
            raise DiagramError(f"unknown generator {s!r}")
        shield: set[str] = set()
        for i, x in enumerate(word):
            if x == s and s not in shield:
                return self._linearize(tuple(word[:i]) + tuple(word[i + 1:]))
            shield |= self._noncomm[x]
        return self._linearize((s,) + tuple(word))

    # -- weak right Bruhat order --------------------------------------------

    def starts_with(self, v: Sequence[str], w: Sequence[str]) -> bool:
        """The order v <= w, i.e. |v^-1 w| == |w| - |v|."""
        v = self.normal_form(v)
        w = self.normal_form(w)
        if len(v) > len(w):
            return False
        # Strip the letters of v off the front of w one descent at a time.
        cur = w
        for t in v:
            shield: set[str] = set()
            pos = -1
            for i, x in enumerate(cur):
                if x == t and t not in shield:
                    pos = i
                    break
                shield |= self._noncomm[x]
            if pos < 0:
                return False
            cur = cur[:pos] + cur[pos + 1:]
        return True

    def meet(self, v: Sequence[str], w: Sequence[str]) -> Word:
        """Greatest lower bound in the weak right order (always exists)."""
        v = self.normal_form(v)
        w = self.normal_form(w)
        out: list[str] = []
        while True:
            dv = set(self.left_descents(v))
            common = [s for s in self.left_descents(w) if s in dv]
            if not common:
                break
            s = common[0]
            out.append(s)
            v = self.left_strip(s, v)
            w = self.left_strip(s, w)
        return tuple(out)

    def _after(self, w: Word, v: Word) -> Word | None:
        # Least u with w <= v.u (reduced product), or None if no upper bound
        # of {v-prefix, w} exists.  Letters of w are either consumed against a
        # matching descent of v or emitted into u once they commute past all
        # of v.
        if not w:
            return EMPTY
        descents = self.left_descents(w)
        dv = set(self.left_descents(v))
        for t in descents:
            if t in dv:
                return self._after(self.left_strip(t, w), self.left_strip(t, v))
        content = set(v)
        for t in descents:
            if t in content or any(y != t and not self.commutes(t, y) for y in content):
                return None
        t = descents[0]
        rest = self._after(self.left_strip(t, w), v)
        if rest is None:
            return None
        return (t,) + rest

    def join(self, v: Sequence[str], w: Sequence[str]) -> Word | None:
        """Least upper bound in the weak right order, or None if there is none."""
        v = self.normal_form(v)
        w = self.normal_form(w)
        rest = self._after(w, v)
        if rest is None:
            return None
        return self.normal_form(v + rest)

    def centralizes(self, s: str, w: Sequence[str]) -> bool:
        """True iff s*w == w*s."""
        if s not in self._gidx:
            raise DiagramError(f"unknown generator {s!r}")
        w = tuple(w)
        return self.multiply((s,), w) == self.multiply(w, (s,))

    # -- diagram shape -----------------------------------------------------

    def _infty_components(self) -> list[list[str]]:
        adj: dict[str, list[str]] = {s: [] for s in self.generators}
        for s, t in self.infinity_edges():
            adj[s].append(t)
            adj[t].append(s)
        seen: set[str] = set()
        comps: list[list[str]] = []
        for s in self.generators:
            if s in seen:
                continue
            comp = []
            stack = [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for x in adj[u]:
                    if x not in seen:
                        seen.add(x)
                        stack.append(x)
            comps.append(sorted(comp, key=self._gidx.__getitem__))
        return comps

    def is_irreducible(self) -> bool:
        """True iff the graph of infinite exponents on the generators is connected."""
        return len(self._infty_components()) == 1

    def components(self) -> list["CoxeterDiagram"]:
        """Sub-diagrams induced on the connected components of the infinity graph."""
        out = []
        for comp in self._infty_components():
            cset = set(comp)
            pairs = [
                (s, t)
                for (s, t) in self._commuting
                if s in cset and t in cset and self._gidx[s] < self._gidx[t]
            ]
            out.append(CoxeterDiagram(comp, pairs))
        return out

    def covering_closed_path(self) -> Word | None:
        """A closed path in the diagram visiting every generator, or None.

        Consecutive letters (and the first/last pair) have infinite exponent.
        Built by depth-first traversal of the infinity graph, recording every
        arrival including backtracks and dropping the final return to the
        root.  Returns None when the infinity graph is disconnected or the
        rank is less than 2.
        """
        if self.rank < 2 or not self.is_irreducible():
            return None
        adj: dict[str, list[str]] = {s: [] for s in self.generators}
        for s, t in self.infinity_edges():
            adj[s].append(t)
            adj[t].append(s)
        for s in adj:
            adj[s].sort(key=self._gidx.__getitem__)
        walk: list[str] = []
        seen: set[str] = set()

        def dfs(u: str) -> None:
            walk.append(u)
            seen.add(u)
            for x in adj[u]:
                if x not in seen:
                    dfs(x)
                    walk.append(u)

        dfs(self.generators[0])
        # walk ends back at the root; drop that final repeat.
        if len(walk) > 1 and walk[-1] == walk[0]:
            walk.pop()
        return tuple(walk)

    # -- serialization -----------------------------------------------------

    def format_element(self, word: Sequence[str]) -> str:
        if not word:
            return "1" if "e" in self._gidx else "e"
        if all(len(s) == 1 for s in self.generators):
            return "".join(word)
        return ".".join(word)

    def parse_element(self, text: str) -> Word:
        text = text.strip()
        if text in ("", "1"):
            return EMPTY
        if text == "e" and "e" not in self._gidx:
            return EMPTY
        if "." in text or any(len(s) > 1 for s in self.generators):
            letters = [x for x in text.split(".") if x]
        else:
            letters = list(text)
        return self.normal_form(letters)


def parse_diagram(source: str | Mapping) -> CoxeterDiagram:
    """Build a diagram from a JSON document or an equivalent mapping.

    Expected shape: ``{"generators": ["a", "b"], "commuting": [["a", "b"]]}``.
    """
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"invalid JSON: {exc}") from exc
    else:
        data = source
    if not isinstance(data, Mapping):
        raise DiagramError("diagram description must be a JSON object")
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise DiagramError("'generators' must be a non-empty list")
    for g in gens:
        if not isinstance(g, str) or not g:
            raise DiagramError(f"bad generator name {g!r}")
        if g in _RESERVED_NAMES:
            raise DiagramError(f"generator name {g!r} is reserved")
        if any(c in _FORBIDDEN_CHARS for c in g):
            raise DiagramError(f"generator name {g!r} contains forbidden characters")
    commuting = data.get("commuting", [])
    if not isinstance(commuting, list):
        raise DiagramError("'commuting' must be a list of pairs")
    return CoxeterDiagram(gens, commuting)
