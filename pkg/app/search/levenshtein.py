"""
Edit distance between constructor names.
"""


def levenshtein(a: str, b: str) -> int:
    """Insertions, deletions and substitutions turning a into b."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, left in enumerate(a, 1):
        current = [i]
        for j, right in enumerate(b, 1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (left != right)))
        previous = current
    return previous[-1]


def short_name(name: str) -> str:
    """Old.nil -> nil"""
    return name.rsplit('.', 1)[-1]
