__author__ = 'dkhybrid developers'

import json
import logging
import os

from dkhybrid.grid.model import BoundaryType, GridSpec
from dkhybrid.hybrid.regrid import RegridPolicy
from dkhybrid.solvers.fv import auto_dt

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

METHODS = ('particle', 'fv', 'gaussian', 'hybrid')

KEYS = ('method', 'dim', 'cells', 'extents', 'bc', 'dt', 'steps', 't_end', 'ensemble', 'seed', 'workers',
        'theta', 'buffer', 'efficiency', 'regrid_interval', 'scenario', 'out', 'output_every', 'burn_in',
        'histogram_step')

SCENARIO_PREFIX = 'scenario.'


def _ints(value):
    if isinstance(value, str):
        value = [v for v in value.split(',') if v.strip()]
    return tuple(int(v) for v in value)


def _floats(value):
    if isinstance(value, str):
        value = [v for v in value.split(',') if v.strip()]
    return tuple(float(v) for v in value)


def _names(value):
    if isinstance(value, str):
        value = [v.strip() for v in value.split(',') if v.strip()]
    return tuple(BoundaryType.parse(v).value for v in value)


def _optional_int(value):
    if value is None or str(value).strip().lower() in ('', 'none'):
        return None
    return int(value)


def _optional_float(value):
    if value is None or str(value).strip().lower() in ('', 'none'):
        return None
    return float(value)


def _dt(value):
    if value is None or str(value).strip().lower() == 'auto':
        return 'auto'
    return float(value)


class SimConfig(object):
    """Everything needed to reproduce one ensemble run.

    Values can come from a json document, from a flat ``key=value`` file, or
    from CLI overrides. ``scenario_params`` holds the ``scenario.<param>`` keys.
    """

    def __init__(self, method='fv', dim=1, cells=(100, 1, 1), extents=(1.0, 1.0, 1.0), bc=('Periodic',),
                 dt='auto', steps=100, t_end=None, ensemble=1, seed=0, workers=1, theta=10.0, buffer=1,
                 efficiency=0.7, regrid_interval=10, scenario='uniform', scenario_params=None, out='./out',
                 output_every=0, burn_in=0, histogram_step=None):
        self.method = str(method).strip().lower()
        self.dim = int(dim)
        self.cells = _ints(cells)
        self.extents = _floats(extents)
        self.bc = _names(bc)
        self.dt = _dt(dt)
        self.steps = int(steps)
        self.t_end = _optional_float(t_end)
        self.ensemble = int(ensemble)
        self.seed = int(seed)
        self.workers = int(workers)
        self.theta = float(theta)
        self.buffer = int(buffer)
        self.efficiency = float(efficiency)
        self.regrid_interval = int(regrid_interval)
        self.scenario = str(scenario).strip()
        self.scenario_params = {str(k): str(v).strip() for k, v in dict(scenario_params or {}).items()}
        self.out = str(out)
        self.output_every = int(output_every)
        self.burn_in = int(burn_in)
        self.histogram_step = _optional_int(histogram_step)

        self._grid = None
        self.validate()

    def validate(self):
        if self.method not in METHODS:
            raise ValueError("Unknown method '%s', expected one of %s" % (self.method, ', '.join(METHODS)))
        if self.steps < 0 or self.burn_in < 0 or self.output_every < 0:
            raise ValueError("steps, burn_in and output_every must be non-negative")
        if self.ensemble <= 0 or self.workers <= 0:
            raise ValueError("ensemble and workers must be positive")
        if self.dt != 'auto' and not self.dt > 0:
            raise ValueError("dt must be positive or 'auto', got " + str(self.dt))
        if self.t_end is not None and self.t_end < 0:
            raise ValueError("t_end must be non-negative")
        # builds and validates the grid and regrid policy
        self.grid
        self.policy

    @property
    def grid(self):
        if self._grid is None:
            self._grid = GridSpec(self.dim, self.cells, self.extents, self.bc)
        return self._grid

    @property
    def policy(self):
        return RegridPolicy(self.theta, self.buffer, self.efficiency, self.regrid_interval)

    @property
    def time_step(self):
        if self.dt == 'auto':
            return auto_dt(self.grid)
        return self.dt

    @property
    def total_steps(self):
        """Steps after burn-in; ``t_end`` wins over ``steps`` when set."""
        if self.t_end is None:
            return self.steps
        dt = self.time_step
        n = int(round(self.t_end / dt))
        if abs(n * dt - self.t_end) > 1e-12 * max(1.0, self.t_end):
            logger.info("t_end=%r snapped to the nearest step: %d steps, t=%r", self.t_end, n, n * dt)
        return n

    def recorded_steps(self):
        """Absolute step numbers at which ensemble statistics are taken."""
        n = self.total_steps
        if self.output_every > 0:
            rel = list(range(0, n + 1, self.output_every))
            if rel[-1] != n:
                rel.append(n)
        else:
            rel = [n]
        return [self.burn_in + s for s in rel]

    @property
    def pdf_step(self):
        if self.histogram_step is None:
            return self.recorded_steps()[-1]
        return self.histogram_step

    def effective(self):
        """Copy with the time step and step count resolved."""
        data = self.to_json()
        data['dt'] = self.time_step
        data['steps'] = self.total_steps
        data['t_end'] = None
        return SimConfig.load_from_json(data)

    def override(self, **kwargs):
        data = self.to_json()
        for k, v in kwargs.items():
            if v is None:
                continue
            if k not in KEYS:
                raise KeyError("Unknown config key: " + k)
            data[k] = v
        return SimConfig.load_from_json(data)

    def to_json(self):
        return {
            'method': self.method,
            'dim': self.dim,
            'cells': list(self.cells),
            'extents': list(self.extents),
            'bc': list(self.bc),
            'dt': self.dt,
            'steps': self.steps,
            't_end': self.t_end,
            'ensemble': self.ensemble,
            'seed': self.seed,
            'workers': self.workers,
            'theta': self.theta,
            'buffer': self.buffer,
            'efficiency': self.efficiency,
            'regrid_interval': self.regrid_interval,
            'scenario': self.scenario,
            'scenario_params': dict(self.scenario_params),
            'out': self.out,
            'output_every': self.output_every,
            'burn_in': self.burn_in,
            'histogram_step': self.histogram_step
        }

    @staticmethod
    def load_from_json(data):
        data = dict(data)
        params = dict(data.pop('scenario_params', {}) or {})
        for k in list(data.keys()):
            if k.startswith(SCENARIO_PREFIX):
                params[k[len(SCENARIO_PREFIX):]] = data.pop(k)
        unknown = [k for k in data if k not in KEYS]
        if unknown:
            raise KeyError("Unknown config key(s): " + ', '.join(sorted(unknown)))
        return SimConfig(scenario_params=params, **data)

    @staticmethod
    def parse_text(text):
        """Parse the flat ``key=value`` format; ``#`` starts a comment."""
        data = {}
        for n, line in enumerate(text.splitlines(), 1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ValueError("line %d: expected key=value, got '%s'" % (n, line))
            key, value = line.split('=', 1)
            data[key.strip()] = value.strip()
        return SimConfig.load_from_json(data)

    @staticmethod
    def load(path):
        with open(path) as f:
            text = f.read()
        if path.endswith('.json'):
            return SimConfig.load_from_json(json.loads(text))
        return SimConfig.parse_text(text)

    def to_text(self):
        def fmt(v):
            if isinstance(v, (list, tuple)):
                return ','.join(fmt(x) for x in v)
            if isinstance(v, float):
                return repr(v)
            return '' if v is None else str(v)

        lines = []
        for k, v in self.to_json().items():
            if k == 'scenario_params':
                continue
            if v is None:
                continue
            lines.append('%s=%s' % (k, fmt(v)))
        for k in sorted(self.scenario_params):
            lines.append('%s%s=%s' % (SCENARIO_PREFIX, k, fmt(self.scenario_params[k])))
        return '\n'.join(lines) + '\n'

    def dump(self, path):
        d = os.path.dirname(path)
        if d:
            os.makedirs(d, exist_ok=True)
        with open(path, 'w') as f:
            f.write(self.to_text())
        logger.info("effective configuration written to %s", path)

    def __eq__(self, other):
        return isinstance(other, SimConfig) and self.to_json() == other.to_json()

    def __repr__(self):
        return 'SimConfig(' + json.dumps(self.to_json(), sort_keys=True) + ')'
