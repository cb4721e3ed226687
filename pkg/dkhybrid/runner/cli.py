__author__ = 'dkhybrid developers'

import argparse
import logging
import sys
import traceback

from dkhybrid.runner.config import SimConfig, METHODS
from dkhybrid.runner.executor import EnsembleRunner
from dkhybrid.runner.writers import write_outputs

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


def run(config: SimConfig):
    """Execute the ensemble described by ``config`` and write its output tables.

    :return: (EnsembleStatistics, dict of written paths)
    """
    config = config.effective()
    logger.info("running %d %s member(s) of scenario %s for %d steps, dt=%r",
                config.ensemble, config.method, config.scenario, config.burn_in + config.total_steps,
                config.time_step)
    stats = EnsembleRunner(config).execute()
    paths = write_outputs(config, stats)
    return stats, paths


def get_options(argv=None):
    parser = argparse.ArgumentParser(prog='dkh', description='Particle, SPDE and hybrid simulations of '
                                                             'fluctuating diffusion')
    sub = parser.add_subparsers(dest='command', required=True)
    p = sub.add_parser('run', help='run an ensemble and write its statistics')
    p.add_argument('--config', required=True, help='key=value or .json configuration file')
    p.add_argument('--method', choices=METHODS)
    p.add_argument('--cells', help='cell counts, e.g. 100,1,1')
    p.add_argument('--dt', help="time step or 'auto'")
    p.add_argument('--steps', type=int)
    p.add_argument('--ensemble', type=int)
    p.add_argument('--seed', type=int)
    p.add_argument('--theta', type=float)
    p.add_argument('--regrid-interval', dest='regrid_interval', type=int)
    p.add_argument('--out')
    p.add_argument('--workers', type=int)
    p.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    return parser.parse_args(argv)


def main(argv=None):
    args = get_options(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s %(name)s %(levelname)s: %(message)s')
    try:
        config = SimConfig.load(args.config).override(method=args.method, cells=args.cells, dt=args.dt,
                                                      steps=args.steps, ensemble=args.ensemble, seed=args.seed,
                                                      theta=args.theta, regrid_interval=args.regrid_interval,
                                                      out=args.out, workers=args.workers,
                                                      # an explicit step count replaces t_end
                                                      t_end='none' if args.steps is not None else None)
        run(config)
    except Exception as e:
        logger.error("Exception while running %s: %s", args.config, traceback.format_exc())
        print("dkh: error: " + str(e), file=sys.stderr)
        return 1
    return 0


def main_entry():
    sys.exit(main())


if __name__ == '__main__':
    main_entry()
