__author__ = 'dkhybrid developers'

from multiprocessing import Process, Queue
import logging
import sys
import traceback

import numpy as np

from dkhybrid.runner.config import SimConfig
from dkhybrid.runner.members import MemberResult, run_member
from dkhybrid.stats.histogram import pdf_histogram
from dkhybrid.stats.moments import MomentAccumulator

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

EOF = 'EOF'


def _format_exception():
    exc_type, exc_value, exc_traceback = sys.exc_info()
    return ''.join(traceback.format_exception(exc_type, exc_value, exc_traceback))


def _worker(config_json, tasks: Queue, out: Queue):
    config = SimConfig.load_from_json(config_json)
    index = tasks.get()
    while index != EOF:
        logger.debug("worker picked member %d", index)
        try:
            out.put((index, run_member(config, index), None))
        except Exception:
            emsg = _format_exception()
            logger.error("Exception in member %d: %s", index, emsg)
            out.put((index, None, emsg))
        index = tasks.get()


class EnsembleStatistics(object):
    """Everything the output files need, accumulated in member order."""

    def __init__(self, config: SimConfig):
        self.config = config
        self.grid = config.grid
        self.accumulators = {s: MomentAccumulator(self.grid.shape) for s in config.recorded_steps()}
        self.pdf_samples = []
        self.mass = []
        self.regions = []
        self.snapshots = {}
        self.members = 0

    def add(self, result: MemberResult):
        if result.index != self.members:
            raise ValueError("member %d arrived out of order, expected %d" % (result.index, self.members))
        for step, acc in self.accumulators.items():
            acc.accumulate(result.samples[step])
        self.pdf_samples.append(result.samples[self.config.pdf_step].reshape(-1))
        self.mass.extend(result.mass)
        self.regions.extend(result.regions)
        if result.index == 0:
            self.snapshots = {s: result.samples[s] for s in self.accumulators}
        self.members += 1

    def moments(self, step):
        return self.accumulators[step].finalize()

    def pooled_moments(self, step):
        return self.accumulators[step].pooled().finalize()

    def histogram(self):
        return pdf_histogram(np.concatenate(self.pdf_samples), self.grid.cell_volume)

    def mass_summary(self):
        """Ensemble mean and spread of the total mass at each recorded step."""
        by_step = {}
        for row in self.mass:
            by_step.setdefault(row[0], []).append(row[1])
        summary = []
        for step in sorted(by_step):
            m = np.asarray(by_step[step])
            summary.append({'step': step, 'mean': float(m.mean()), 'std': float(m.std()), 'members': len(m)})
        return summary


class EnsembleRunner(object):

    def __init__(self, config: SimConfig):
        self.config = config.effective()

    def execute(self):
        """Run all members and merge them in member order.

        :return: EnsembleStatistics
        """
        stats = EnsembleStatistics(self.config)
        if self.config.workers <= 1 or self.config.ensemble == 1:
            for index in range(self.config.ensemble):
                stats.add(run_member(self.config, index))
            return stats

        tasks = Queue()
        out = Queue()
        for index in range(self.config.ensemble):
            tasks.put(index)
        nworkers = min(self.config.workers, self.config.ensemble)
        for _ in range(nworkers):
            tasks.put(EOF)
        processes = [Process(target=_worker, args=(self.config.to_json(), tasks, out)) for _ in range(nworkers)]
        for p in processes:
            p.start()
        logger.debug("started %d workers for %d members", nworkers, self.config.ensemble)

        pending = {}
        try:
            for _ in range(self.config.ensemble):
                index, result, error = out.get()
                if error is not None:
                    raise RuntimeError("ensemble member %d failed:\n%s" % (index, error))
                pending[index] = result
                while stats.members in pending:
                    stats.add(pending.pop(stats.members))
        finally:
            for p in processes:
                if p.is_alive():
                    p.terminate()
                p.join()
        return stats
