"""Field registry: bundled curve list, lookup, and field resolution."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .gf2x import BinaryPoly, FieldSpec, _is_irreducible


def _bundled_text() -> str:
    return resources.files("qflt").joinpath("data/curves.txt").read_text()


def parse_registry(text: str) -> list[FieldSpec]:
    """Parse `name,n,hex-modulus` records; blank lines and # comments allowed.

    Every record is validated (FieldSpec checks irreducibility on
    construction), so a corrupt registry fails at load time.
    """
    specs: list[FieldSpec] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise ValueError(f"registry line {lineno}: expected name,n,hex-modulus")
        name, n_text, mod_text = parts
        try:
            n = int(n_text)
            modulus = BinaryPoly(int(mod_text, 16))
        except ValueError as exc:
            raise ValueError(f"registry line {lineno}: {exc}") from exc
        specs.append(FieldSpec(n=n, modulus=modulus, name=name))
    return specs


def load_registry(path: str | Path | None = None) -> list[FieldSpec]:
    """Load the bundled registry, or a user-supplied file of the same format."""
    if path is None:
        return parse_registry(_bundled_text())
    return parse_registry(Path(path).read_text())


def find_field(registry: list[FieldSpec], token: str) -> FieldSpec | None:
    """Look a field up by name (case-insensitive) or by extension degree."""
    token = token.strip()
    for spec in registry:
        if spec.name and spec.name.lower() == token.lower():
            return spec
    try:
        n = int(token)
    except ValueError:
        return None
    for spec in registry:
        if spec.n == n:
            return spec
    return None


def smallest_irreducible(n: int) -> BinaryPoly:
    """Lowest-mask irreducible polynomial of degree n (deterministic default)."""
    if n < 1:
        raise ValueError("degree must be positive")
    top = 1 << n
    # An irreducible polynomial of degree >= 1 needs a nonzero constant term.
    for low in range(1, top, 2):
        if _is_irreducible(top | low):
            return BinaryPoly(top | low)
    raise ValueError(f"no irreducible polynomial of degree {n} found")


def resolve_field(
    token: str,
    modulus_hex: str | None = None,
    registry: list[FieldSpec] | None = None,
    registry_path: str | Path | None = None,
) -> FieldSpec:
    """Resolve a CLI/API field token to a FieldSpec.

    Resolution order: explicit modulus (token must then be the degree n),
    registry name or degree, then fall back to the smallest irreducible
    modulus for an integer degree not in the registry.
    """
    if registry is None:
        registry = load_registry(registry_path)
    if modulus_hex is not None:
        try:
            n = int(token)
        except ValueError:
            raise ValueError(
                "with an explicit modulus the field token must be the degree n"
            ) from None
        return FieldSpec(n=n, modulus=BinaryPoly(int(modulus_hex, 16)))
    found = find_field(registry, token)
    if found is not None:
        return found
    try:
        n = int(token)
    except ValueError:
        raise ValueError(f"unknown field {token!r}") from None
    return FieldSpec(n=n, modulus=smallest_irreducible(n))
