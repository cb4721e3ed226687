__author__ = 'dkhybrid developers'

"""Comma-separated output tables with a '#' metadata block."""

import csv
import logging
import os

import numpy as np

import dkhybrid
from dkhybrid.runner.config import SimConfig
from dkhybrid.runner.executor import EnsembleStatistics

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

STATS_COLUMNS = ['step', 'i', 'j', 'k', 'mean', 'variance', 'skewness', 'kurtosis']
PDF_COLUMNS = ['bin_center_particles', 'probability', 'method']
MASS_COLUMNS = ['step', 'total_mass', 'negative_cell_count', 'min_value', 'rounding_mass', 'ghost_rounding',
                'member']
REGION_COLUMNS = ['step', 'box_id', 'lo_i', 'lo_j', 'lo_k', 'hi_i', 'hi_j', 'hi_k', 'member']
SNAPSHOT_COLUMNS = ['i', 'j', 'k', 'q']


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (np.integer,)):
        return str(int(v))
    return str(v)


def metadata(config: SimConfig, extra=None):
    meta = [('version', 'dkhybrid ' + dkhybrid.__version__),
            ('method', config.method),
            ('seed', config.seed),
            ('dt', repr(float(config.time_step))),
            ('steps', config.total_steps),
            ('burn_in', config.burn_in),
            ('ensemble', config.ensemble),
            ('scenario', config.scenario),
            ('moments', 'population central moments; kurtosis is non-excess')]
    return meta + list(extra or [])


def write_table(path, columns, rows, meta):
    with open(path, 'w', newline='') as f:
        for key, value in meta:
            f.write('# %s: %s\n' % (key, value))
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    logger.debug("wrote %s", path)
    return path


def _cell_rows(values):
    for (i, j, k), v in np.ndenumerate(values):
        yield i, j, k, v


def stats_rows(stats: EnsembleStatistics):
    for step in sorted(stats.accumulators):
        m = stats.moments(step)
        for (i, j, k), _ in np.ndenumerate(m['mean']):
            yield (step, i, j, k, m['mean'][i, j, k], m['variance'][i, j, k],
                   m['skewness'][i, j, k], m['kurtosis'][i, j, k])


def write_outputs(config: SimConfig, stats: EnsembleStatistics, out=None):
    """Write every table of a finished ensemble into ``out`` (default ``config.out``).

    :return: dict of table name -> path
    """
    config = config.effective()
    out = out or config.out
    os.makedirs(out, exist_ok=True)
    paths = {}
    config.dump(os.path.join(out, 'config.txt'))
    paths['config'] = os.path.join(out, 'config.txt')

    final = config.recorded_steps()[-1]
    extra = []
    if stats.members >= 2:
        pooled = stats.pooled_moments(final)
        # pooled over cells assumes a spatially homogeneous equilibrium
        extra.append(('pooled_over_cells_step', final))
        for key in ('mean', 'variance', 'skewness', 'kurtosis'):
            extra.append(('pooled_' + key, _fmt(float(pooled[key]))))
        paths['stats'] = write_table(os.path.join(out, 'stats.csv'), STATS_COLUMNS, stats_rows(stats),
                                     metadata(config, extra))
    else:
        logger.info("ensemble of %d member(s): stats.csv skipped, moments need two samples", stats.members)

    hist = stats.histogram()
    pdf_rows = [(k, p, config.method) for k, p in zip(hist.centers_particles, hist.probabilities())]
    paths['pdf'] = write_table(os.path.join(out, 'pdf.csv'), PDF_COLUMNS, pdf_rows,
                               metadata(config, [('pdf_step', config.pdf_step),
                                                 ('bin_width', 'one particle per cell')]))
    paths['mass'] = write_table(os.path.join(out, 'mass.csv'), MASS_COLUMNS, stats.mass,
                                metadata(config, [('rounding_mass', 'cumulative sampling rounding, changes total_mass'),
                                                  ('ghost_rounding', 'boundary filling rounding, diagnostic only')]))
    if config.method == 'hybrid':
        paths['regions'] = write_table(os.path.join(out, 'regions.csv'), REGION_COLUMNS, stats.regions,
                                       metadata(config, [('policy', config.policy.to_json())]))
    for step, values in sorted(stats.snapshots.items()):
        name = 'snapshot_%d' % step
        paths[name] = write_table(os.path.join(out, name + '.csv'), SNAPSHOT_COLUMNS,
                                  _cell_rows(values), metadata(config, [('member', 0)]))
    logger.info("wrote %d output files to %s", len(paths), out)
    return paths
