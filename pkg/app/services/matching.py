"""Decision oracles for equidecomposability of finite sets.

``match_oracle`` reduces the question to a perfect bipartite matching
between A and B; ``brute_force_pieces`` searches word assignments directly
and serves as an independent check of the matching oracle.
"""

import itertools
import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from app.errors import BudgetExceeded, InvalidBudget
from app.models.action import ActionSpec, GeneratorLetter, GroupWord, Point
from app.models.certificate import FiniteCertificate
from app.models.matching import HallViolation, MatchResult, WitnessEdge
from app.services.actions import ActionService
from app.services.equidecomp import EquidecompService

logger = logging.getLogger(__name__)

UNMATCHED = -1


def _witnesses(
    spec: ActionSpec, point: Point, targets: Set[Point], max_word_len: int, budget: int
) -> List[Tuple[Point, GroupWord]]:
    """Targets reachable from ``point`` by words of length <= max_word_len, with BFS-first words.

    The search stops once every target is reached. Raises BudgetExceeded
    when ``budget`` points are discovered while targets remain and the
    search is still short of depth ``max_word_len``.
    """
    act = spec.action.act
    paths: Dict[Point, Tuple[GeneratorLetter, ...]] = {point: ()}
    remaining = set(targets)
    found: List[Tuple[Point, GroupWord]] = []
    if point in remaining:
        remaining.discard(point)
        found.append((point, GroupWord.identity()))
    queue = deque([point])
    while queue and remaining:
        current = queue.popleft()
        path = paths[current]
        if len(path) >= max_word_len:
            break
        for letter in spec.closure:
            image = act(letter, current)
            if image in paths:
                continue
            if len(paths) >= budget:
                raise BudgetExceeded(
                    f"match_oracle: BFS from {point!r} hit the budget {budget} before depth {max_word_len}"
                )
            paths[image] = path + (letter,)
            queue.append(image)
            if image in remaining:
                remaining.discard(image)
                found.append((image, GroupWord.from_path(paths[image])))
    return found


def _hall_violation(
    adjacency: List[List[int]],
    match_row: Sequence[int],
    match_col: Sequence[int],
    rows: Sequence[Point],
    cols: Sequence[Point],
) -> HallViolation:
    """Alternating reachability from every unmatched vertex of the deficient side."""
    if any(m == UNMATCHED for m in match_row):
        side, near, far, start_match, back_match = "source", rows, cols, match_row, match_col
        neighbors = adjacency
    else:
        side, near, far, start_match, back_match = "target", cols, rows, match_col, match_row
        neighbors = [[] for _ in cols]
        for r, row in enumerate(adjacency):
            for c in row:
                neighbors[c].append(r)

    reached_near = {i for i, m in enumerate(start_match) if m == UNMATCHED}
    reached_far: Set[int] = set()
    queue = deque(sorted(reached_near))
    while queue:
        i = queue.popleft()
        for j in neighbors[i]:
            if j in reached_far:
                continue
            reached_far.add(j)
            k = back_match[j]
            if k != UNMATCHED and k not in reached_near:
                reached_near.add(k)
                queue.append(k)
    return HallViolation(
        side=side,
        subset=tuple(near[i] for i in sorted(reached_near)),
        neighborhood=tuple(far[j] for j in sorted(reached_far)),
    )


class MatchingService:
    """Finite equidecomposability via Hall matchings and exhaustive search."""

    @staticmethod
    def match_oracle(
        spec: ActionSpec,
        source: Iterable[Point],
        target: Iterable[Point],
        max_word_len: int,
        budget: int = 100000,
        workers: int = 1,
    ) -> MatchResult:
        """Decide A ~ B for finite A, B using words of length at most ``max_word_len``.

        On a perfect matching the matched pairs are grouped by witness word
        into a certificate that passes ``verify_finite``; otherwise the
        result carries a Hall-violating subset.

        Raises BudgetExceeded when a search runs out of budget before it
        can rule an edge out.
        """
        if max_word_len < 0:
            raise InvalidBudget("match_oracle: max_word_len must be non-negative")
        if budget < 1:
            raise InvalidBudget("match_oracle: budget must be at least 1")
        rows = spec.sorted_points(spec.action.check_point(p) for p in set(source))
        cols = spec.sorted_points(spec.action.check_point(p) for p in set(target))
        col_index = {point: j for j, point in enumerate(cols)}
        targets = set(cols)

        if workers > 1 and len(rows) > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                found = list(
                    executor.map(lambda a: _witnesses(spec, a, targets, max_word_len, budget), rows)
                )
        else:
            found = [_witnesses(spec, a, targets, max_word_len, budget) for a in rows]

        edges: List[WitnessEdge] = []
        adjacency: List[List[int]] = []
        words: Dict[Tuple[int, int], GroupWord] = {}
        for i, (a, reachable) in enumerate(zip(rows, found)):
            reachable = sorted(reachable, key=lambda item: col_index[item[0]])
            adjacency.append([col_index[b] for b, _ in reachable])
            for b, word in reachable:
                edges.append(WitnessEdge(a, b, word))
                words[(i, col_index[b])] = word
        logger.debug(f"match_oracle: {len(rows)}x{len(cols)} bipartite graph with {len(edges)} edges")

        if not rows or not cols:
            match_row = [UNMATCHED] * len(rows)
            match_col = [UNMATCHED] * len(cols)
        else:
            data = np.ones(len(edges), dtype=np.int8)
            indices = np.array([j for row in adjacency for j in row], dtype=np.int32)
            indptr = np.cumsum([0] + [len(row) for row in adjacency]).astype(np.int32)
            graph = csr_matrix((data, indices, indptr), shape=(len(rows), len(cols)))
            match_row = [int(j) for j in maximum_bipartite_matching(graph, perm_type="column")]
            match_col = [UNMATCHED] * len(cols)
            for i, j in enumerate(match_row):
                if j != UNMATCHED:
                    match_col[j] = i

        size = sum(1 for j in match_row if j != UNMATCHED)
        if size == len(rows) == len(cols):
            assignment = [(rows[i], words[(i, j)]) for i, j in enumerate(match_row)]
            certificate = EquidecompService.group_by_word(assignment, frozenset(rows), frozenset(cols))
            return MatchResult(certificate, tuple(edges), size, max_word_len)

        violation = _hall_violation(adjacency, match_row, match_col, rows, cols)
        logger.info(
            f"match_oracle: no perfect matching ({size} of {max(len(rows), len(cols))}), "
            f"Hall deficiency {violation.deficiency} on the {violation.side} side"
        )
        return MatchResult(None, tuple(edges), size, max_word_len, violation)

    @staticmethod
    def brute_force_pieces(
        spec: ActionSpec,
        source: Iterable[Point],
        target: Iterable[Point],
        max_word_len: int,
        max_pieces: int,
        cap: int = 2000000,
    ) -> Optional[FiniteCertificate]:
        """Search every assignment of at most ``max_pieces`` words to the points of A.

        Words are enumerated up to ``max_word_len`` and merged when they act
        identically on A. Raises BudgetExceeded when the word list or the
        search tree outgrows ``cap``.
        """
        if max_word_len < 0 or max_pieces < 0:
            raise InvalidBudget("brute_force_pieces: max_word_len and max_pieces must be non-negative")
        rows = spec.sorted_points(spec.action.check_point(p) for p in set(source))
        cols = frozenset(spec.action.check_point(p) for p in set(target))
        if len(rows) != len(cols):
            return None
        if not rows:
            return FiniteCertificate(source=frozenset(), pieces=(), target=frozenset())
        if max_pieces == 0:
            return None

        closure = spec.closure
        total = sum(len(closure) ** length for length in range(max_word_len + 1))
        if total > cap:
            raise BudgetExceeded(f"brute_force_pieces: {total} words of length <= {max_word_len} exceed cap {cap}")

        candidates: List[GroupWord] = []
        images: List[Tuple[Point, ...]] = []
        seen: Set[Tuple[Point, ...]] = set()
        for length in range(max_word_len + 1):
            for letters in itertools.product(closure, repeat=length):
                word = GroupWord(letters)
                signature = tuple(ActionService.apply(spec, word, a) for a in rows)
                if signature not in seen:
                    seen.add(signature)
                    candidates.append(word)
                    images.append(signature)

        options = [[k for k, image in enumerate(images) if image[i] in cols] for i in range(len(rows))]
        chosen: List[int] = []
        used_images: Set[Point] = set()
        piece_count: Dict[int, int] = {}
        nodes = 0

        def search(i: int) -> bool:
            nonlocal nodes
            if i == len(rows):
                return True
            for k in options[i]:
                nodes += 1
                if nodes > cap:
                    raise BudgetExceeded(f"brute_force_pieces: search exceeded {cap} nodes")
                image = images[k][i]
                if image in used_images:
                    continue
                if k not in piece_count and len(piece_count) >= max_pieces:
                    continue
                used_images.add(image)
                piece_count[k] = piece_count.get(k, 0) + 1
                chosen.append(k)
                if search(i + 1):
                    return True
                chosen.pop()
                piece_count[k] -= 1
                if not piece_count[k]:
                    del piece_count[k]
                used_images.discard(image)
            return False

        if not search(0):
            logger.debug(f"brute_force_pieces: no certificate after {nodes} nodes")
            return None
        assignment = [(a, candidates[k]) for a, k in zip(rows, chosen)]
        return EquidecompService.group_by_word(assignment, frozenset(rows), cols)
