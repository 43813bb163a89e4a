import sys
from pathlib import Path

try:
    import rankcert  # noqa: F401
except ImportError:
    # fall back to the source tree when the package is not installed
    sys.path.insert(0, str(Path(__file__).parent / "src"))
