from fractions import Fraction

from hypothesis import settings, strategies as st

from webspider.qgroup import UWord, n_bounded, shift
from webspider.scalar import Scalar

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def scalars(draw, root=1, max_terms=4):
    terms = draw(st.dictionaries(st.integers(-6, 6),
                                 st.fractions(min_value=-5, max_value=5, max_denominator=4),
                                 max_size=max_terms))
    return Scalar({e: Fraction(c) for e, c in terms.items()}, root)


def random_word(rng, n, m, length, k=None):
    """Seeded word whose running weights all stay n-bounded."""
    if k is None:
        k = tuple(rng.randint(0, n) for _ in range(m))
    letters = []
    cur = k
    for _ in range(length):
        moves = [(g, i, r) for g in "EF" for i in range(1, m) for r in range(1, n + 1)
                 if n_bounded(shift(cur, (g, i, r)), n)]
        if not moves:
            break
        letter = rng.choice(moves)
        letters.insert(0, letter)
        cur = shift(cur, letter)
    return UWord(k, tuple(letters))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
