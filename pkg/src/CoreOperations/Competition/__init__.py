from dataclasses import dataclass, field, fields, replace

from PyQt5 import QtCore

from src.CoreOperations.Competition.HexLattice import HexGrid, hex_distance
from src.Utils.Exceptions import InvalidConfigError

translate = QtCore.QCoreApplication.translate


@dataclass(frozen=True)
class FoodSource:
    position: tuple
    mass:     float
    quality:  float = 1.


@dataclass(frozen=True)
class AgentSeed:
    position: tuple
    power:    float = 1.
    genotype: int   = 0
    mass:     float = 1.
    hunger:   float = 0.5
    spread:   int   = 0


@dataclass(frozen=True)
class SimConfig:
    radius:             int   = 10
    foods:              tuple = field(default_factory=tuple)
    agents:             tuple = field(default_factory=tuple)
    w_f:                float = 1.
    w_c:                float = 1.
    w_s:                float = 0.3
    kappa:              float = 1.
    delta:              float = 0.6
    slime_rate:         float = 0.1
    expansion_cost:     float = 0.05
    expansion_scale:    float = 5.
    eat_rate:           float = 1.
    hunger_gain:        float = 0.02
    hunger_relief:      float = 0.5
    shrink_fraction:    float = 0.5
    upkeep:             float = 0.002
    release_rate:       int   = 1
    contact_radius:     int   = 1
    competitor_urgency: float = 0.
    sense_threshold:    float = 1e-3
    score_noise:        float = 0.
    fusion_enabled:     bool  = True
    max_ticks:          int   = 200
    seed:               int   = 0

    @classmethod
    def scalar_names(cls):
        return [f.name for f in fields(cls) if f.name not in ("foods", "agents")]

    def updated(self, **overrides):
        return replace(self, **overrides).validate()

    def validate(self):
        def fail(message):
            raise InvalidConfigError(translate("Competition", "Invalid simulation config: {message}").format(message=message))

        for name in ("w_f", "w_c", "w_s", "kappa", "slime_rate", "expansion_cost", "eat_rate", "hunger_gain",
                     "hunger_relief", "shrink_fraction", "upkeep", "competitor_urgency", "sense_threshold", "score_noise"):
            if not getattr(self, name) >= 0:
                fail(f"{name}={getattr(self, name)} must be non-negative")
        if not 0 < self.delta <= 1:
            fail(f"delta={self.delta} must lie in (0, 1]")
        if not self.expansion_scale > 0:
            fail("expansion_scale must be positive")
        if self.radius < 0 or self.max_ticks < 0 or self.release_rate < 0 or self.contact_radius < 0:
            fail("radius, max_ticks, release_rate and contact_radius must be non-negative")
        if not isinstance(self.seed, int) or self.seed < 0:
            fail(f"seed={self.seed} must be a non-negative integer")

        grid = HexGrid(self.radius)
        for food in self.foods:
            if tuple(food.position) not in grid:
                fail(f"food at {tuple(food.position)} lies outside the grid")
            if not food.mass >= 0 or not food.quality > 0:
                fail(f"food at {tuple(food.position)} needs mass >= 0 and quality > 0")
        if len({tuple(food.position) for food in self.foods}) != len(self.foods):
            fail("two food sources share a cell")

        claimed = {}
        for agent_id, seed in enumerate(self.agents):
            if tuple(seed.position) not in grid:
                fail(f"agent {agent_id} at {tuple(seed.position)} lies outside the grid")
            if not (seed.power > 0 and seed.mass > 0 and 0 <= seed.hunger <= 1 and seed.spread >= 0):
                fail(f"agent {agent_id} needs power > 0, mass > 0, hunger in [0, 1] and spread >= 0")
            for cell in grid.disk(tuple(seed.position), seed.spread):
                if cell in claimed:
                    fail(f"agents {claimed[cell]} and {agent_id} overlap at {cell}")
                claimed[cell] = agent_id
        return self


class Agent:
    __slots__ = ("id", "genotype", "power", "mass", "initial_mass", "hunger", "occupied", "released",
                 "first_contact", "first_move_tick", "alive", "fused_into")

    def __init__(self, agent_id, seed, occupied):
        self.id              = agent_id
        self.genotype        = seed.genotype
        self.power           = seed.power
        self.mass            = seed.mass
        self.initial_mass    = seed.mass
        self.hunger          = seed.hunger
        self.occupied        = set(occupied)
        self.released        = set()
        self.first_contact   = {}
        self.first_move_tick = None
        self.alive           = True
        self.fused_into      = None

    def time_to_first_food(self):
        return min(self.first_contact.values()) if self.first_contact else None


class Fusion:
    __slots__ = ("survivor", "absorbed", "cell")

    def __init__(self, survivor, absorbed, cell):
        self.survivor = survivor
        self.absorbed = absorbed
        self.cell     = cell

    def as_dict(self):
        return {"survivor": self.survivor.id, "absorbed": [agent.id for agent in self.absorbed], "cell": list(self.cell)}


class SimState:
    """
    ``attractant`` holds one field per food, ``slime`` one per agent seed;
    ``owner`` maps each cell to the id of the agent occupying it, or -1.
    """
    __slots__ = ("grid", "attractant", "slime", "agents", "food_mass", "owner", "tick")

    def __init__(self, grid, attractant, slime, agents, food_mass, owner, tick=0):
        self.grid       = grid
        self.attractant = attractant
        self.slime      = slime
        self.agents     = agents
        self.food_mass  = food_mass
        self.owner      = owner
        self.tick       = tick

    def alive_agents(self):
        return [agent for agent in self.agents if agent.alive]


class AgentTick:
    __slots__ = ("id", "mass", "hunger", "cells", "eaten", "claimed", "released")

    def __init__(self, agent, eaten, claimed, released):
        self.id       = agent.id
        self.mass     = agent.mass
        self.hunger   = agent.hunger
        self.cells    = len(agent.occupied)
        self.eaten    = eaten
        self.claimed  = claimed
        self.released = released

    def as_dict(self):
        return {"id": self.id, "mass": self.mass, "hunger": self.hunger, "cells": self.cells, "eaten": self.eaten,
                "claimed": [list(cell) for cell in self.claimed], "released": [list(cell) for cell in self.released]}


class TickReport:
    __slots__ = ("tick", "agents", "food_remaining", "first_contacts", "fusions", "deaths")

    def __init__(self, tick, agents, food_remaining, first_contacts, fusions, deaths):
        self.tick           = tick
        self.agents         = agents
        self.food_remaining = food_remaining
        self.first_contacts = first_contacts
        self.fusions        = fusions
        self.deaths         = deaths

    def agent(self, agent_id):
        for entry in self.agents:
            if entry.id == agent_id:
                return entry
        return None

    def as_dict(self):
        return {"tick": self.tick,
                "agents": [entry.as_dict() for entry in self.agents],
                "food_remaining": list(self.food_remaining),
                "first_contacts": [[agent_id, food, tick] for (agent_id, food), tick in sorted(self.first_contacts.items())],
                "fusions": self.fusions,
                "deaths": self.deaths}


class SimResult:
    __slots__ = ("ticks", "reports", "summary", "termination", "final_state")

    def __init__(self, ticks, reports, summary, termination, final_state):
        self.ticks       = ticks
        self.reports     = reports
        self.summary     = summary
        self.termination = termination
        self.final_state = final_state

    def as_dict(self):
        return {"ticks": self.ticks, "termination": self.termination, "agents": self.summary}


def touches(agent, food, contact_radius):
    return any(hex_distance(cell, food.position) <= contact_radius for cell in agent.occupied)
