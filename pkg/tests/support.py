import json
import random
from pathlib import Path

from ecrho.instances import example1, example2, random_curve

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name):
    return json.loads((FIXTURES / name).read_text())


def sample_curves(count=5, seed=7):
    """The two worked-example curves plus ``count`` seeded random ones."""
    rng = random.Random(seed)
    curves = [example1().curve, example2().curve]
    curves += [random_curve(rng, 50, 400) for _ in range(count)]
    return curves
