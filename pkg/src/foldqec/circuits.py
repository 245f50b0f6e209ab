"""Time-stepped circuits: gate layers plus prepare/measure events.

A ScheduledCircuit is a register description (slots with planar coordinates)
and an ordered list of layers; each layer is a list of events that act on
disjoint slots.  Layers marked local must only contain 2-qudit gates between
slots within the locality radius.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .pauli import GateApplication


@dataclass(frozen=True)
class Prepare:
    """Initialize a fresh slot to |0> ("Z") or |+> = H|0> ("X")."""
    site: int
    basis: str = "Z"


@dataclass(frozen=True)
class Measure:
    """Computational ("Z") or Fourier ("X") single-site measurement.

    Outcome k reports the eigenvalue w^k of Z (resp. X) on the site.
    """
    site: int
    basis: str = "Z"
    key: str = ""


Event = object  # GateApplication | Prepare | Measure


def event_sites(ev) -> tuple[int, ...]:
    if isinstance(ev, GateApplication):
        return ev.targets
    return (ev.site,)


@dataclass
class ScheduledCircuit:
    """Gate layers with spatial metadata.

    slot_coords maps slot index -> planar coordinate used for locality
    checks; locality_radius[i] bounds 2-qudit gate length in layer i
    (None disables the check for that layer).
    """

    dims: tuple[int, ...]
    layers: list[list[Event]] = field(default_factory=list)
    slot_coords: dict[int, tuple[float, float]] = field(default_factory=dict)
    locality_radius: list = field(default_factory=list)

    def add_layer(self, events, radius=None) -> None:
        self.layers.append(list(events))
        self.locality_radius.append(radius)

    def gates(self) -> list[GateApplication]:
        return [ev for layer in self.layers for ev in layer
                if isinstance(ev, GateApplication)]

    def events(self):
        for layer in self.layers:
            yield from layer

    @property
    def depth(self) -> int:
        return len(self.layers)

    def validate(self) -> None:
        """Per-layer slot disjointness and locality."""
        for i, layer in enumerate(self.layers):
            seen = set()
            for ev in layer:
                for s in event_sites(ev):
                    if s in seen:
                        raise ValueError(
                            f"slot {s} used twice in layer {i}")
                    seen.add(s)
            radius = self.locality_radius[i]
            if radius is None:
                continue
            for ev in layer:
                if isinstance(ev, GateApplication) and len(ev.targets) == 2:
                    a, b = ev.targets
                    pa = self.slot_coords.get(a)
                    pb = self.slot_coords.get(b)
                    if pa is None or pb is None:
                        continue
                    dist = ((pa[0] - pb[0]) ** 2 + (pa[1] - pb[1]) ** 2) ** 0.5
                    if dist > radius + 1e-9:
                        raise ValueError(
                            f"gate {ev} in local layer {i} spans {dist:.3f} "
                            f"> radius {radius}")

    def reversed_gates(self) -> "ScheduledCircuit":
        """Time-reversed circuit of adjoint gates (measurements dropped)."""
        out = ScheduledCircuit(self.dims, slot_coords=dict(self.slot_coords))
        for layer in reversed(self.layers):
            gates = [ev.adjoint() for ev in layer
                     if isinstance(ev, GateApplication)]
            if gates:
                out.add_layer(gates)
        return out
