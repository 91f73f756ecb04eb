import os
from dataclasses import asdict, dataclass, field, replace

from PyQt5 import QtCore

from src.CoreOperations.AntColony import solve_tsp
from src.CoreOperations.Competition import SimConfig
from src.CoreOperations.Competition.Model import run as run_competition
from src.CoreOperations.ConfigManager import ConfigManager, apply_overrides
from src.CoreOperations.FileFormats import read_text, write_text
from src.CoreOperations.FileFormats.EdgeList import parse_edgelist
from src.CoreOperations.FileFormats.Maze import parse_maze
from src.CoreOperations.FileFormats.SimConfigFile import config_as_dict, parse_sim_config, serialize_sim_config
from src.CoreOperations.FileFormats.Traces import SolverTraceWriter, TickTraceWriter, write_snapshot
from src.CoreOperations.FileFormats.TspInstance import parse_tsp
from src.CoreOperations.PhysarumSolver import run_solver
from src.CoreOperations.PhysarumSolver.Steiner import steiner_approx
from src.CoreOperations.PhysarumSolver.Strategies import StrategyMode, get_strategy
from src.Utils.Exceptions import UsageError
from src.Utils.JSONHandler import dump_json, write_json
from src.Utils.MessageLog import null_log
from src.Utils.Random import check_seed
from src.Utils.Threading import run_seeds

translate = QtCore.QCoreApplication.translate

engines = ("path", "steiner", "compete", "tsp")


@dataclass(frozen=True)
class RunManifest:
    engine:     str
    input_path: str
    input_kind: str
    overrides:  dict  = field(default_factory=dict)
    seed:       int   = 0
    out_dir:    str   = None
    trace:      bool  = False
    mode:       str   = None
    source:     str   = None
    sink:       str   = None
    terminals:  tuple = ()

    def for_seed(self, seed):
        out_dir = None if self.out_dir is None else os.path.join(self.out_dir, f"seed_{seed}")
        return replace(self, seed=seed, out_dir=out_dir)


class RunManager:
    """
    Resolves a RunManifest against the engine defaults, runs it and writes
    ``summary.json``, ``manifest.json`` and any traces to the output directory.
    """
    __slots__ = ("config", "log", "updateLog")

    def __init__(self, config=None, log=null_log, updateLog=null_log):
        self.config = ConfigManager() if config is None else config
        self.log = log
        self.updateLog = updateLog

    ####################
    # PARAMETER RESOLVE #
    ####################
    def resolve_params(self, manifest):
        if manifest.engine not in engines:
            raise UsageError(translate("RunManager", "Unknown engine '{engine}'.").format(engine=manifest.engine))
        check_seed(manifest.seed)
        if manifest.trace and manifest.out_dir is None:
            raise UsageError(translate("RunManager", "--trace needs an output directory (--out)."))
        if manifest.engine == "compete":
            base = self.config.sim_config()
            config = parse_sim_config(read_text(manifest.input_path), base)
            config = apply_overrides(config, manifest.overrides, SimConfig.scalar_names())
            return replace(config, seed=manifest.seed).validate()
        if manifest.engine == "tsp":
            params = apply_overrides(self.config.aco_params(), manifest.overrides)
            return replace(params, seed=manifest.seed).validate()
        params = self.config.params_for(manifest.engine)
        return apply_overrides(params, manifest.overrides).validate()

    def check(self, manifest):
        """Validates engine/parameter compatibility without running anything."""
        self.resolve_params(manifest)

    ##########
    # EXECUTE #
    ##########
    def execute(self, manifest, log=None, updateLog=None):
        log = self.log if log is None else log
        updateLog = self.updateLog if updateLog is None else updateLog
        params = self.resolve_params(manifest)
        if manifest.out_dir is not None:
            os.makedirs(manifest.out_dir, exist_ok=True)

        runner = {"path": self.run_path, "steiner": self.run_steiner,
                  "compete": self.run_compete, "tsp": self.run_tsp}[manifest.engine]
        summary = runner(manifest, params, log, updateLog)

        if manifest.out_dir is not None:
            write_json(os.path.join(manifest.out_dir, "summary.json"), summary)
            write_json(os.path.join(manifest.out_dir, "manifest.json"), self.manifest_echo(manifest, params))
        return summary

    def execute_batch(self, manifest, repeat):
        """Runs seeds seed..seed+repeat-1 on a thread pool; results come back in seed order."""
        seeds = list(range(manifest.seed, manifest.seed + repeat))
        for seed in seeds:
            self.check(manifest.for_seed(seed))
        self.log(translate("RunManager", "Running {count} seeds in parallel...").format(count=repeat))
        return run_seeds(lambda seed: self.execute(manifest.for_seed(seed), null_log, null_log), seeds)

    def manifest_echo(self, manifest, params):
        resolved = config_as_dict(params) if isinstance(params, SimConfig) else asdict(params)
        return {"engine": manifest.engine,
                "input": manifest.input_path,
                "input_kind": manifest.input_kind,
                "seed": manifest.seed,
                "mode": manifest.mode,
                "source": manifest.source,
                "sink": manifest.sink,
                "terminals": list(manifest.terminals),
                "overrides": dict(sorted(manifest.overrides.items())),
                "params": resolved}

    ##########
    # ENGINES #
    ##########
    def _solver_trace(self, manifest):
        if manifest.trace:
            return SolverTraceWriter(os.path.join(manifest.out_dir, "trace.csv"))
        return None

    def _load_graph(self, manifest, params):
        text = read_text(manifest.input_path)
        if manifest.input_kind == "maze":
            return parse_maze(text, params.inflow)
        return parse_edgelist(text, params.init_conductivity), None

    def _terminal_ids(self, network, names):
        return tuple(network.vertex_of(name) for name in names)

    def run_path(self, manifest, params, log, updateLog):
        network, terminals = self._load_graph(manifest, params)
        mode = None
        if terminals is None:
            kind = manifest.mode or "siso"
            if kind == "siso":
                if manifest.source is None or manifest.sink is None:
                    raise UsageError(translate("RunManager", "solve-path on an edge list needs --source and --sink, or --terminals with --mode."))
                names = (manifest.source, manifest.sink)
            else:
                names = manifest.terminals
            mode = StrategyMode(kind, self._terminal_ids(network, names), seed=manifest.seed)

        trace = self._solver_trace(manifest)
        try:
            if mode is None or mode.kind == "siso":
                fixed = terminals if mode is None else get_strategy(mode, params.inflow).make_terminals(0)
                result = run_solver(network, fixed, params, trace=trace, log=log, updateLog=updateLog)
            else:
                strategy = get_strategy(mode, params.inflow)
                result = run_solver(network, params=params, schedule=strategy.schedule, ground=strategy.ground(),
                                    trace=trace, log=log, updateLog=updateLog)
        finally:
            if trace is not None:
                trace.close()
        return self.solver_summary("path", result)

    def run_steiner(self, manifest, params, log, updateLog):
        network, _ = self._load_graph(manifest, params)
        terminals = self._terminal_ids(network, manifest.terminals)
        mode = StrategyMode(manifest.mode or "mimo", terminals, seed=manifest.seed)
        trace = self._solver_trace(manifest)
        try:
            result = steiner_approx(network, terminals, params, mode, trace=trace, log=log, updateLog=updateLog)
        finally:
            if trace is not None:
                trace.close()
        return self.solver_summary("steiner", result)

    def solver_summary(self, engine, result):
        network = result.final_network
        surviving = [{"u": network.names[network.tails[i]], "v": network.names[network.heads[i]],
                      "length": float(network.lengths[i]), "conductivity": float(network.conductivities[i]),
                      "flux": float(network.fluxes[i])}
                     for i in result.surviving_subgraph]
        return {"engine": engine,
                "converged": result.converged,
                "iterations": result.iterations,
                "spans_terminals": result.spans_terminals,
                "terminals": [network.names[v] for v in result.terminal_vertices],
                "surviving_length": result.surviving_length(),
                "surviving_edges": surviving,
                "flux_history_tail": [record.as_dict() for record in result.flux_history[-5:]]}

    def run_compete(self, manifest, config, log, updateLog):
        trace = TickTraceWriter(os.path.join(manifest.out_dir, "trace.jsonl")) if manifest.trace else None
        try:
            result = run_competition(config, on_tick=trace, log=log, updateLog=updateLog)
        finally:
            if trace is not None:
                trace.close()

        if manifest.out_dir is not None:
            write_text(os.path.join(manifest.out_dir, "resolved.cfg"), serialize_sim_config(config))
            snapshot_dir = os.path.join(manifest.out_dir, "snapshots")
            os.makedirs(snapshot_dir, exist_ok=True)
            state = result.final_state
            for i in range(len(config.foods)):
                write_snapshot(os.path.join(snapshot_dir, f"attractant_{i}.txt"), state.grid, state.attractant[i])
            for i in range(len(config.agents)):
                write_snapshot(os.path.join(snapshot_dir, f"slime_{i}.txt"), state.grid, state.slime[i])

        summary = result.as_dict()
        summary["engine"] = "compete"
        summary["food_remaining"] = result.final_state.food_mass.tolist()
        return summary

    def run_tsp(self, manifest, params, log, updateLog):
        distances, _ = parse_tsp(read_text(manifest.input_path))
        result = solve_tsp(distances, params, log=log, updateLog=updateLog)
        summary = result.as_dict()
        summary["engine"] = "tsp"
        summary["cities"] = len(distances)
        summary["epsilon"] = params.epsilon
        return summary


def summary_text(summary):
    return dump_json(summary)
