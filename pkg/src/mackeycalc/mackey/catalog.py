"""Catalog of named Mackey functors.

Entries are defined with:
- name: Display name used in charts (e.g. "phi*_LDR(F2)", "n_D*")
- group: Group id of the table the functor lives over
- builder: Zero-argument callable producing the functor (evaluated lazily, once)
- atom: Whether identification may use the entry as an indecomposable summand
"""

from collections.abc import Callable
from dataclasses import dataclass, field

from mackeycalc.common import get_logger
from mackeycalc.mackey.functor import MackeyFunctor

log = get_logger(__name__)

# Module-level registry
_CATALOG: dict[tuple[str, str], "CatalogEntry"] = {}


@dataclass
class CatalogEntry:
    """Catalog entry: a named Mackey functor built on first use."""

    name: str
    group: str
    description: str
    builder: Callable[[], MackeyFunctor]
    atom: bool = True
    _value: MackeyFunctor | None = field(default=None, repr=False, compare=False)

    @property
    def value(self) -> MackeyFunctor:
        """The functor, named after the entry."""
        if self._value is None:
            built = self.builder()
            if built.table.group_id != self.group:
                raise ValueError(f"Entry {self.name} built over {built.table.group_id}, expected {self.group}")
            self._value = built.with_name(self.name)
        return self._value


def register_entry(entry: CatalogEntry) -> CatalogEntry:
    """Register an entry in the global catalog."""
    key = (entry.group, entry.name)
    if key in _CATALOG:
        log.warning("catalog_overwrite", group=entry.group, name=entry.name)
    _CATALOG[key] = entry
    log.debug("catalog_registered", group=entry.group, name=entry.name)
    return entry


def get_entry(group: str, name: str) -> CatalogEntry:
    """Get an entry by group and name."""
    if (group, name) not in _CATALOG:
        raise KeyError(f"Catalog entry not found: {name} (group {group})")
    return _CATALOG[(group, name)]


def get_functor(group: str, name: str) -> MackeyFunctor:
    return get_entry(group, name).value


def list_entries(group: str | None = None) -> list[str]:
    """List registered names, in registration order."""
    return [name for g, name in _CATALOG if group is None or g == group]


def entries(group: str, *, atoms_only: bool = False) -> list[CatalogEntry]:
    return [e for (g, _), e in _CATALOG.items() if g == group and (e.atom or not atoms_only)]


def mackey_entry(
    name: str,
    group: str,
    description: str = "",
    atom: bool = True,
) -> Callable[[Callable[[], MackeyFunctor]], CatalogEntry]:
    """Decorator to register a builder function as a catalog entry.

    Example:
        @mackey_entry("g", "K4", "F2 at the top level only")
        def g() -> MackeyFunctor:
            return MackeyFunctor.build(K4, {"K": [2]})
    """

    def decorator(func: Callable[[], MackeyFunctor]) -> CatalogEntry:
        return register_entry(
            CatalogEntry(
                name=name,
                group=group,
                description=description or (func.__doc__ or "").strip(),
                builder=func,
                atom=atom,
            )
        )

    return decorator
