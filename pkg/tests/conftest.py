import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None,
                          derandomize=True)
settings.load_profile("ci")
