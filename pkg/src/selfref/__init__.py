"""Self-referential sentences of first-order arithmetic: construction, coding, evaluation."""
import sys

# Goedel codes routinely exceed the default limit on int <-> decimal conversion
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

from . import theory as _theory  # noqa: E402,F401  registers the delta atom
