from fractions import Fraction

import pytest


class _Exhausted(Exception):
    pass


class ScriptedStream:
    """Replays a fixed sequence of choices; records the arity of each draw.

    ``coin`` has arity 2, ``below(n)`` arity n and ``bernoulli`` arity 2
    (choice 1 means success) unless p is 0 or 1, where it is forced. Past the
    end of the script every draw takes choice 0, so a depth-first odometer
    over the recorded arities visits every decision path exactly once.
    """

    def __init__(self, script=()):
        self.script = list(script)
        self.arities = []

    def _draw(self, arity):
        i = len(self.arities)
        self.arities.append(arity)
        return self.script[i] if i < len(self.script) else 0

    def coin(self):
        return self._draw(2)

    def below(self, n):
        return self._draw(n) if n > 1 else 0

    def bernoulli(self, p):
        if p >= 1:
            return True
        if p <= 0:
            return False
        return bool(self._draw(2))

    def permutation(self, n):
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm


def enumerate_outcomes(fn):
    """All (probability, result) pairs of ``fn(stream)`` under uniform choices.

    Non-degenerate ``bernoulli`` draws are treated as fair.
    """
    out = []
    script = []
    while True:
        s = ScriptedStream(script)
        result = fn(s)
        arities = s.arities
        choices = script + [0] * (len(arities) - len(script))
        prob = Fraction(1)
        for a in arities:
            prob /= a
        out.append((prob, result))
        # advance the odometer from the last draw
        i = len(arities) - 1
        while i >= 0 and choices[i] == arities[i] - 1:
            i -= 1
        if i < 0:
            return out
        script = choices[:i] + [choices[i] + 1]


@pytest.fixture
def scripted():
    return ScriptedStream


_acceptance_lines = []


def record_acceptance(line):
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
