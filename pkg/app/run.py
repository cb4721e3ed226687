import logging
import os
import sys
import traceback

from flask import Blueprint, current_app, jsonify, request

from dkhybrid.runner import SimConfig, run as run_ensemble

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

bp = Blueprint('run', __name__, url_prefix='/')


def _error(e):
    exc_type, exc_value, exc_traceback = sys.exc_info()
    emsg = repr(traceback.format_exception(exc_type, exc_value, exc_traceback))
    logger.error("Exception  " + emsg)
    return jsonify({'status': False, 'error': str(e)})


def _output_dir(out):
    """Resolve ``out`` inside the configured output root."""
    root = os.path.abspath(current_app.config['OUTPUT_ROOT'])
    path = os.path.abspath(os.path.join(root, out))
    if os.path.commonpath([root, path]) != root:
        raise ValueError("output directory must stay inside " + root)
    return path


@bp.route("/run", methods=['POST'])
def run():
    try:
        data = request.get_json(force=True) or {}
        out = _output_dir(str(data.pop('out', 'run')))
        config = SimConfig.load_from_json(dict(data, out=out))
        stats, paths = run_ensemble(config)
        return jsonify({'status': True,
                        'out': out,
                        'files': sorted(os.path.basename(p) for p in paths.values()),
                        'mass': stats.mass_summary()})
    except Exception as e:
        return _error(e)


@bp.route("/inspect", methods=['GET'])
def inspect():
    try:
        out = _output_dir(request.args.get('out', 'run'))
        path = os.path.join(out, 'config.txt')
        if not os.path.exists(path):
            return jsonify({'status': False, 'config': None, 'error': 'No run found in ' + out})
        return jsonify({'status': True, 'config': SimConfig.load(path).to_json()})
    except Exception as e:
        return _error(e)
