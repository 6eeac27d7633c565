import re
import string

VALID_CHARS = frozenset("-_.+" + string.ascii_letters + string.digits)
MAX_NAME_LENGTH = 100


def sanitize_filename(filename: str) -> str:
    """
    File-system safe form of an instance name or setting label.
    Dots and dashes survive (Chao names look like p4.2.a, scheme ids like CM-DPI-FLI).
    """
    if not filename:
        return "untitled"
    sanitized = ''.join(c if c in VALID_CHARS else '_' for c in filename)
    sanitized = re.sub(r'__+', '_', sanitized).strip('_.')
    if len(sanitized) > MAX_NAME_LENGTH:
        sanitized = sanitized[:MAX_NAME_LENGTH].rsplit('_', 1)[0] or sanitized[:MAX_NAME_LENGTH]
    return sanitized or "untitled"


def with_suffix(name: str, suffix: str) -> str:
    """`name` sanitized, plus `suffix` unless it already ends with it."""
    base = sanitize_filename(name)
    return base if base.endswith(suffix) else base + suffix
