"""
Property checks of the Path Commitment Measure over synthetic degree sequences

Synthetic paths are out-degree sequences; each branch state of degree d
contributes d - 1 active redundant exits.
"""

import itertools
import random
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from ptampc.schemas.analysis import CspConvention
from ptampc.services.analysis_service import AnalysisService

REFERENCE = CspConvention()
MAX_LENGTH = 8
MAX_GAMMA = 12

Degrees = Tuple[int, ...]


def synthetic_active(degrees: Sequence[int]) -> int:
    return sum(x - 1 for x in degrees if x >= 2)


def kappa(degrees: Sequence[int]) -> Fraction:
    return AnalysisService.kappa_from_degrees(degrees, synthetic_active(degrees), REFERENCE)


def csp_stats(degrees: Sequence[int]) -> Tuple[int, int, int]:
    """(L, m, Gamma) of a degree sequence"""
    spans = AnalysisService.committed_spans(degrees, REFERENCE)
    length = AnalysisService.path_length(degrees, REFERENCE)
    return length, len(spans), sum(AnalysisService.span_length(span, REFERENCE) for span in spans)


def gamma_centrality(degrees: Sequence[int]) -> int:
    return sum(x for x in degrees if x >= 2)


def branch_count(degrees: Sequence[int]) -> int:
    return sum(1 for x in degrees if x >= 2)


def random_degrees(rng: random.Random, length: int) -> Degrees:
    return tuple(rng.choice((1, 1, 1, 2, 2, 3)) for _ in range(length + 1))


def configurations(states: int, budget: int):
    """Every degree sequence whose branch degrees sum to at most budget"""
    def extend(prefix: List[int], remaining: int):
        if len(prefix) == states:
            yield tuple(prefix)
            return
        yield from extend(prefix + [1], remaining)
        for degree in range(2, remaining + 1):
            yield from extend(prefix + [degree], remaining - degree)

    yield from extend([], budget)


@lru_cache(maxsize=None)
def brute_force() -> Dict[Tuple[int, int], List[Tuple[Degrees, Fraction]]]:
    """All configurations grouped by (path length, gamma)"""
    table: Dict[Tuple[int, int], List[Tuple[Degrees, Fraction]]] = defaultdict(list)
    for length in range(1, MAX_LENGTH + 1):
        for degrees in configurations(length + 1, MAX_GAMMA):
            gamma = gamma_centrality(degrees)
            if gamma >= 2:
                table[(length, gamma)].append((degrees, kappa(degrees)))
    return table


def committed_class(entries: List[Tuple[Degrees, Fraction]]) -> List[Tuple[Degrees, Fraction]]:
    """Configurations where the quotient is defined: at least one CSP and two active exits"""
    return [
        (degrees, value) for degrees, value in entries
        if csp_stats(degrees)[1] >= 1 and synthetic_active(degrees) >= 2
    ]


class TestEqualStatisticsEqualKappa:
    """Paths with equal length, CSP count and CSP length sum share kappa"""

    def test_random_pairs(self):
        rng = random.Random(7)
        groups: Dict[Tuple[int, int, int], List[Degrees]] = defaultdict(list)
        for _ in range(4000):
            degrees = random_degrees(rng, rng.randint(2, 10))
            if synthetic_active(degrees) >= 2 and csp_stats(degrees)[1] >= 1:
                groups[csp_stats(degrees)].append(degrees)

        pairs = 0
        for members in groups.values():
            for first, second in itertools.combinations(members, 2):
                pairs += 1
                assert kappa(first) == kappa(second), (first, second)
        assert pairs >= 1000

    def test_kappa_is_the_quotient(self):
        rng = random.Random(11)
        for _ in range(500):
            degrees = random_degrees(rng, rng.randint(2, 10))
            length, m, gamma = csp_stats(degrees)
            if synthetic_active(degrees) >= 2 and m >= 1:
                assert kappa(degrees) == Fraction(gamma, m * length)


class TestCentralityInvariance:
    """Raising a branch state's out-degree leaves kappa unchanged"""

    def test_raise_degree_two_branches(self):
        rng = random.Random(13)
        trials = 0
        while trials < 1000:
            degrees = random_degrees(rng, rng.randint(2, 10))
            if synthetic_active(degrees) < 2 or 2 not in degrees:
                continue
            raised = tuple(rng.randint(2, 6) if x == 2 else x for x in degrees)
            assert kappa(raised) == kappa(degrees)
            trials += 1


class TestMonotonicity:
    """More branch states on an equal-length path lower kappa"""

    @staticmethod
    def bounded_family(rng: random.Random, length: int) -> Degrees:
        """First and last states are branch states, the interior is random"""
        interior = [rng.choice((1, 2)) for _ in range(length - 1)]
        return tuple([2] + interior + [2])

    def test_strictly_decreasing_in_branch_count(self):
        rng = random.Random(17)
        comparisons = 0
        while comparisons < 1000:
            length = rng.randint(3, 10)
            first = self.bounded_family(rng, length)
            second = self.bounded_family(rng, length)
            m_first, m_second = csp_stats(first)[1], csp_stats(second)[1]
            if m_first != m_second or m_first == 0:
                continue
            if branch_count(first) == branch_count(second):
                continue
            more, fewer = sorted((first, second), key=branch_count, reverse=True)
            assert kappa(more) < kappa(fewer), (more, fewer)
            comparisons += 1

    def test_csp_length_sum_in_bounded_family(self):
        rng = random.Random(19)
        for _ in range(500):
            length = rng.randint(3, 10)
            degrees = self.bounded_family(rng, length)
            path_length, m, gamma = csp_stats(degrees)
            assert gamma == path_length - branch_count(degrees) + 1 + m

    def test_unbounded_families_admit_counterexamples(self):
        fewer = (1, 2, 1, 2, 1, 1)
        more = (1, 2, 1, 1, 2, 2)
        assert csp_stats(fewer)[:2] == csp_stats(more)[:2] == (5, 1)
        assert branch_count(more) > branch_count(fewer)
        assert kappa(more) > kappa(fewer)


class TestDegreeTwoOptimality:
    """Minimum kappa at fixed gamma is reached with the most degree-2 branch states"""

    def test_brute_force(self):
        table = brute_force()
        checked = 0
        for (length, gamma), entries in table.items():
            best = min(value for _, value in entries)
            most_twos = max(degrees.count(2) for degrees, _ in entries)
            assert any(
                degrees.count(2) == most_twos and value == best for degrees, value in entries
            ), (length, gamma)
            checked += 1
        assert checked == MAX_LENGTH * (MAX_GAMMA - 1)


class TestCspInsertAndRemove:
    """Inserting or removing one CSP of a kappa-minimal configuration keeps it minimal"""

    @staticmethod
    def minima() -> Dict[Tuple[int, int], Fraction]:
        result = {}
        for key, entries in brute_force().items():
            candidates = committed_class(entries)
            if candidates:
                result[key] = min(value for _, value in candidates)
        return result

    def test_minimum_is_two_over_length(self):
        for (length, _), value in self.minima().items():
            assert value == Fraction(2, length)

    def test_insert_committed_state(self):
        minima = self.minima()
        inserted = 0
        for (length, gamma), entries in brute_force().items():
            if length + 1 > MAX_LENGTH or (length, gamma) not in minima:
                continue
            for degrees, value in committed_class(entries):
                if value != minima[(length, gamma)]:
                    continue
                for i in range(len(degrees) - 1):
                    if degrees[i] >= 2 and degrees[i + 1] >= 2:
                        grown = degrees[: i + 1] + (1,) + degrees[i + 1 :]
                        assert kappa(grown) == minima[(length + 1, gamma)]
                        inserted += 1
        assert inserted > 0

    def test_remove_committed_sub_path(self):
        minima = self.minima()
        removed = 0
        for (length, gamma), entries in brute_force().items():
            if (length, gamma) not in minima:
                continue
            for degrees, value in committed_class(entries):
                if value != minima[(length, gamma)]:
                    continue
                spans = AnalysisService.committed_spans(degrees, REFERENCE)
                if len(spans) < 2:
                    continue
                start, end = spans[0]
                shrunk = degrees[: start + 1] + degrees[end:]
                assert kappa(shrunk) == minima[(length - 1, gamma)]
                removed += 1
        assert removed > 0
