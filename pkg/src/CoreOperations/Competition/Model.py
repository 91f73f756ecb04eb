import math

import networkx as nx
import numpy as np
from PyQt5 import QtCore

from src.CoreOperations.Competition import Agent, AgentTick, Fusion, SimResult, SimState, TickReport, touches
from src.CoreOperations.Competition.HexLattice import HexGrid, diffuse
from src.Utils.Exceptions import EmptyFrontierError
from src.Utils.MessageLog import null_log
from src.Utils.Random import seeded_stream

translate = QtCore.QCoreApplication.translate


def initial_state(config):
    grid = HexGrid(config.radius)
    owner = np.full(len(grid), -1, dtype=np.int64)
    agents = []
    for agent_id, seed in enumerate(config.agents):
        cells = grid.disk(tuple(seed.position), seed.spread)
        agent = Agent(agent_id, seed, cells)
        for cell in cells:
            owner[grid.index_of(cell)] = agent_id
        agents.append(agent)
    state = SimState(grid,
                     grid.zeros(len(config.foods)),
                     grid.zeros(len(config.agents)),
                     agents,
                     np.array([float(food.mass) for food in config.foods]),
                     owner)
    record_contacts(state, config, {})
    return state


###########################
# FIELDS AND FRONTIER SCORE #
###########################
def emit_and_diffuse(state, config):
    grid = state.grid
    for i, food in enumerate(config.foods):
        state.attractant[i, grid.index_of(food.position)] += config.kappa * state.food_mass[i] * food.quality
    for agent in state.alive_agents():
        share = config.slime_rate * agent.mass / len(agent.occupied)
        for cell in agent.occupied:
            state.slime[agent.id, grid.index_of(cell)] += share
    if len(config.foods):
        state.attractant = diffuse(state.attractant, config.delta, grid)
    if len(config.agents):
        state.slime = diffuse(state.slime, config.delta, grid)
    return state


def cell_scores(agent, state, config):
    own = state.slime[agent.id]
    competitors = state.slime.sum(axis=0) - own
    attractant = state.attractant.sum(axis=0)
    return agent.hunger * config.w_f * attractant - config.w_c * competitors - config.w_s * own


def frontier_indices(agent, state):
    grid = state.grid
    occupied = [grid.index_of(cell) for cell in agent.occupied]
    candidates = np.unique(grid.table[occupied].ravel())
    candidates = candidates[candidates >= 0]
    return candidates[state.owner[candidates] == -1]


def _ranked(cells, scores):
    return sorted(zip(cells, (float(s) for s in scores)), key=lambda item: (-item[1], item[0]))


def score_frontier(agent, state, config):
    frontier = frontier_indices(agent, state)
    if not len(frontier):
        raise EmptyFrontierError(agent.id)
    scores = cell_scores(agent, state, config)[frontier]
    return _ranked([state.grid.cells[i] for i in frontier], scores)


def senses_competitor(agent, state, config, frontier):
    competitors = state.slime.sum(axis=0) - state.slime[agent.id]
    return bool(len(frontier)) and bool((competitors[frontier] > config.sense_threshold).any())


#####################
# CONFLICT RESOLUTION #
#####################
def resolve_conflict(claimants, cell, config):
    claimants = sorted(claimants, key=lambda agent: agent.id)
    if config.fusion_enabled and len({agent.genotype for agent in claimants}) == 1:
        return Fusion(claimants[0], claimants[1:], cell)
    return min(claimants, key=lambda agent: (-agent.power * agent.mass, agent.id))


def fuse(fusion, state):
    survivor = fusion.survivor
    for absorbed in fusion.absorbed:
        survivor.mass += absorbed.mass
        survivor.initial_mass += absorbed.initial_mass
        survivor.occupied |= absorbed.occupied
        survivor.released |= absorbed.released
        for food, tick in absorbed.first_contact.items():
            survivor.first_contact.setdefault(food, tick)
        state.slime[survivor.id] += state.slime[absorbed.id]
        state.slime[absorbed.id] = 0.
        for cell in absorbed.occupied:
            state.owner[state.grid.index_of(cell)] = survivor.id
        absorbed.occupied = set()
        absorbed.mass = 0.
        absorbed.alive = False
        absorbed.fused_into = survivor.id


def claim_budget(agent, config):
    k = math.ceil(agent.power * agent.mass / config.expansion_scale)
    if config.expansion_cost > 0:
        affordable = max(math.ceil(agent.mass / config.expansion_cost) - 1, 0)
        while affordable and agent.mass - affordable * config.expansion_cost <= 0:
            affordable -= 1
        k = min(k, affordable)
    return max(k, 0)


def allocate_claims(state, config, rankings, tick, fusions):
    """
    Round-based allocation: each round every agent still owed cells proposes
    its best positive cell not yet taken or lost. Contested cells go through
    resolve_conflict; losers move on to their next choice.
    """
    agents = {agent.id: agent for agent in state.alive_agents()}
    queues = {agent_id: [cell for cell, score in rankings[agent_id] if score > 0] for agent_id in agents}
    owed = {agent_id: claim_budget(agent, config) for agent_id, agent in agents.items()}
    granted = {agent_id: [] for agent_id in agents}
    taken = set()

    def grant(agent, cell):
        taken.add(cell)
        agent.occupied.add(cell)
        state.owner[state.grid.index_of(cell)] = agent.id
        granted[agent.id].append(cell)
        owed[agent.id] -= 1
        if agent.first_move_tick is None:
            agent.first_move_tick = tick

    while True:
        proposals = {}
        for agent_id in sorted(agents):
            if not agents[agent_id].alive or owed[agent_id] <= 0:
                continue
            queue = queues[agent_id]
            while queue and queue[0] in taken:
                queue.pop(0)
            if queue:
                proposals.setdefault(queue.pop(0), []).append(agents[agent_id])
        if not proposals:
            break

        for cell in sorted(proposals):
            claimants = proposals[cell]
            if len(claimants) == 1:
                grant(claimants[0], cell)
                continue
            outcome = resolve_conflict(claimants, cell, config)
            if isinstance(outcome, Fusion):
                fuse(outcome, state)
                survivor = outcome.survivor
                for absorbed in outcome.absorbed:
                    granted[survivor.id].extend(granted.pop(absorbed.id))
                    owed[absorbed.id] = 0
                grant(survivor, cell)
                fusions.append(outcome.as_dict())
            else:
                grant(outcome, cell)
    return granted


#########
# UPDATE #
#########
def feed(agent, state, config):
    eaten = 0.
    for i, food in enumerate(config.foods):
        remaining = state.food_mass[i]
        if remaining > 0 and tuple(food.position) in agent.occupied:
            bite = min(config.eat_rate, remaining)
            state.food_mass[i] = remaining - bite if bite < remaining else 0.
            agent.mass += bite
            eaten += bite
    return eaten


def record_contacts(state, config, new_contacts):
    for agent in state.alive_agents():
        for i, food in enumerate(config.foods):
            if i not in agent.first_contact and touches(agent, food, config.contact_radius):
                agent.first_contact[i] = state.tick
                new_contacts[(agent.id, i)] = state.tick
    return new_contacts


def contract(agent, state, config, scores):
    """Releases the lowest-scoring cells whose loss keeps the plasmodium connected."""
    released = []
    food_cells = {tuple(food.position) for food in config.foods}
    for _ in range(config.release_rate):
        if len(agent.occupied) <= 1:
            break
        graph = nx.Graph()
        graph.add_nodes_from(agent.occupied)
        for cell in agent.occupied:
            graph.add_edges_from((cell, other) for other in state.grid.neighbors(cell) if other in agent.occupied)
        pinned = set(nx.articulation_points(graph))
        candidates = [cell for cell in agent.occupied if cell not in pinned and cell not in food_cells]
        if not candidates:
            break
        cell = min(candidates, key=lambda c: (float(scores[state.grid.index_of(c)]), c))
        agent.occupied.remove(cell)
        agent.released.add(cell)
        state.owner[state.grid.index_of(cell)] = -1
        released.append(cell)
    return released


def step(state, config, rng):
    state.tick += 1
    tick = state.tick
    emit_and_diffuse(state, config)

    rankings = {}
    sensed = {}
    for agent in state.alive_agents():
        frontier = frontier_indices(agent, state)
        sensed[agent.id] = senses_competitor(agent, state, config, frontier)
        try:
            ranking = score_frontier(agent, state, config)
        except EmptyFrontierError:
            ranking = []
        if config.score_noise > 0 and ranking:
            cells, scores = zip(*ranking)
            ranking = _ranked(cells, np.array(scores) + rng.normal(0., config.score_noise, len(scores)))
        rankings[agent.id] = ranking

    fusions = []
    granted = allocate_claims(state, config, rankings, tick, fusions)

    deaths = []
    new_contacts = {}
    entries = []
    for agent in state.alive_agents():
        claimed = granted.get(agent.id, [])
        agent.mass -= config.expansion_cost * len(claimed)
        agent.mass -= config.upkeep * len(agent.occupied)
        eaten = feed(agent, state, config)
        urgency = config.competitor_urgency if sensed.get(agent.id) else 0.
        agent.hunger = min(1., max(0., agent.hunger + config.hunger_gain + urgency - config.hunger_relief * eaten))
        entries.append([agent, eaten, claimed])

    record_contacts(state, config, new_contacts)

    for entry in entries:
        agent = entry[0]
        released = []
        if agent.mass < config.shrink_fraction * agent.initial_mass and len(agent.occupied) > 1:
            released = contract(agent, state, config, cell_scores(agent, state, config))
        if agent.mass <= 0:
            agent.alive = False
            for cell in agent.occupied:
                state.owner[state.grid.index_of(cell)] = -1
            deaths.append(agent.id)
        entry.append(released)

    reports = [AgentTick(agent, eaten, claimed, released) for agent, eaten, claimed, released in entries]
    for agent, *_ in entries:
        if not agent.alive:
            agent.occupied = set()
    return state, TickReport(tick, reports, state.food_mass.tolist(), new_contacts, fusions, deaths)


def summarize(state):
    summary = []
    for agent in state.agents:
        summary.append({"id": agent.id,
                        "genotype": agent.genotype,
                        "time_to_first_food": agent.time_to_first_food(),
                        "first_contacts": {str(food): tick for food, tick in sorted(agent.first_contact.items())},
                        "first_move_tick": agent.first_move_tick,
                        "final_mass": agent.mass if agent.alive else 0.,
                        "survived": agent.alive,
                        "fused_into": agent.fused_into})
    return summary


def run(config, on_tick=None, log=null_log, updateLog=null_log):
    """
    Steps the simulation until every food is eaten, every agent is dead or
    max_ticks is reached. ``on_tick(report)`` sees each TickReport as it is made.
    """
    config.validate()
    state = initial_state(config)
    if not len(config.agents):
        return SimResult(0, [], [], "no_agents", state)

    rng = seeded_stream(config.seed)
    reports = []
    termination = "max_ticks"
    log(translate("Competition", "Simulating {agents} agents and {foods} food sources on a radius {radius} grid...").format(agents=len(config.agents), foods=len(config.foods), radius=config.radius))
    while state.tick < config.max_ticks:
        state, report = step(state, config, rng)
        reports.append(report)
        if on_tick is not None:
            on_tick(report)
        updateLog(translate("Competition", "[{tick}/{max}] {alive} agents alive").format(tick=state.tick, max=config.max_ticks, alive=len(state.alive_agents())))
        if len(config.foods) and not state.food_mass.any():
            termination = "food_consumed"
            break
        if not state.alive_agents():
            termination = "all_dead"
            break
    log(translate("Competition", "Stopped after {ticks} ticks ({reason}).").format(ticks=state.tick, reason=termination))
    return SimResult(state.tick, reports, summarize(state), termination, state)
