import argparse
import os
import sys
import traceback
from datetime import datetime

from PyQt5 import QtCore

from src.CoreOperations.PhysarumSolver.Strategies import available_modes
from src.CoreOperations.RunManager import RunManager, RunManifest, summary_text
from src.CoreOperations.ConfigManager import parse_assignments
from src.Utils.Exceptions import PhysarumError, UsageError
from src.Utils.MessageLog import MessageLog

translate = QtCore.QCoreApplication.translate

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random stream of the run")
    common.add_argument("--out", default=None, help="output directory for summary.json, manifest.json and traces")
    common.add_argument("--trace", action="store_true", help="write a per-iteration trace (needs --out)")
    common.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="override one engine parameter; may repeat")
    common.add_argument("--repeat", type=int, default=1, help="run seeds seed..seed+N-1 in parallel")
    common.add_argument("--verbose", action="store_true", help="report progress on stderr")

    parser = ArgumentParser(prog="physarum-toolkit", description="Physarum network solver, competition simulator and ACO hybrid.")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    solve_path = subparsers.add_parser("solve-path", parents=[common], help="adapt a maze or edge list between terminals")
    source = solve_path.add_mutually_exclusive_group(required=True)
    source.add_argument("--maze", help="ASCII maze with one S and one T")
    source.add_argument("--edges", help="edge list, one 'u v length' per line")
    solve_path.add_argument("--source", help="source vertex name (edge lists)")
    solve_path.add_argument("--sink", help="sink vertex name (edge lists)")
    solve_path.add_argument("--terminals", nargs="+", default=[], help="terminal vertex names for multi-terminal modes")
    solve_path.add_argument("--mode", choices=available_modes(), default=None)

    steiner = subparsers.add_parser("steiner", parents=[common], help="approximate a Steiner tree")
    steiner.add_argument("--edges", required=True)
    steiner.add_argument("--terminals", nargs="+", required=True)
    steiner.add_argument("--mode", choices=available_modes(), default=None)

    compete = subparsers.add_parser("compete", parents=[common], help="run the hex-lattice competition simulator")
    compete.add_argument("--config", required=True, help="flat key = value simulation config")

    tsp = subparsers.add_parser("tsp", parents=[common], help="solve a TSP instance with the hybrid ACO")
    tsp.add_argument("--instance", required=True, help="'x y' coordinates or a distance matrix")
    return parser


def manifest_from_args(args):
    if args.command == "solve-path":
        engine, kind, path = "path", ("maze" if args.maze else "edges"), (args.maze or args.edges)
    elif args.command == "steiner":
        engine, kind, path = "steiner", "edges", args.edges
    elif args.command == "compete":
        engine, kind, path = "compete", "config", args.config
    else:
        engine, kind, path = "tsp", "instance", args.instance
    if args.repeat < 1:
        raise UsageError(translate("Cli", "--repeat must be at least 1."))
    if args.seed < 0:
        raise UsageError(translate("Cli", "--seed must be a non-negative integer, got {seed}.").format(seed=args.seed))
    if not os.path.isfile(path):
        raise UsageError(translate("Cli", "Input file '{path}' does not exist.").format(path=path))
    return RunManifest(engine=engine, input_path=path, input_kind=kind,
                       overrides=parse_assignments(args.overrides), seed=args.seed,
                       out_dir=args.out, trace=args.trace,
                       mode=getattr(args, "mode", None),
                       source=getattr(args, "source", None), sink=getattr(args, "sink", None),
                       terminals=tuple(getattr(args, "terminals", ()) or ()))


def write_crashlog(tb):
    os.makedirs("logs", exist_ok=True)
    path = os.path.join("logs", f"crashlog_{datetime.now().strftime('%Y_%m_%d-%H_%M_%S')}.txt")
    with open(path, "w") as F:
        F.write(tb)
    return path


def report(message, stderr):
    stderr.write(" ".join(str(message).split()) + "\n")


def run_cli(argv=None, stdout=None, stderr=None):
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    messages = None
    try:
        args = build_parser().parse_args(argv)
        manifest = manifest_from_args(args)
        messages = MessageLog(stderr, enabled=args.verbose)
        manager = RunManager(log=messages.log, updateLog=messages.updateLog)

        if args.repeat == 1:
            summary = manager.execute(manifest)
            if manifest.out_dir is None:
                stdout.write(summary_text(summary) + "\n")
            return EXIT_OK

        runs = manager.execute_batch(manifest, args.repeat)
        for runnable in runs:
            if runnable.exception is not None and not isinstance(runnable.exception, PhysarumError):
                raise RuntimeError(runnable.traceback)
        failures = [runnable for runnable in runs if runnable.exception is not None]
        if manifest.out_dir is None:
            stdout.write(summary_text({"runs": [{"seed": runnable.seed, "summary": runnable.result}
                                                for runnable in runs if runnable.exception is None]}) + "\n")
        for runnable in failures:
            report(translate("Cli", "seed {seed}: {error}").format(seed=runnable.seed, error=runnable.exception), stderr)
        return EXIT_DOMAIN if failures else EXIT_OK

    except UsageError as e:
        report(translate("Cli", "usage error: {error}").format(error=e), stderr)
        return EXIT_USAGE
    except PhysarumError as e:
        report(translate("Cli", "error: {error}").format(error=e), stderr)
        return EXIT_DOMAIN
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    except OSError as e:
        report(translate("Cli", "error: {error}").format(error=e), stderr)
        return EXIT_DOMAIN
    except Exception:
        path = write_crashlog(traceback.format_exc())
        report(translate("Cli", "unexpected error; traceback written to {path}").format(path=path), stderr)
        return EXIT_DOMAIN
    finally:
        if messages is not None:
            messages.close()


def main():
    sys.exit(run_cli())
