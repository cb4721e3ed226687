import logging
import os

from flask import Flask


def create_app(test_config=None):
    # create and configure the app
    app = Flask(__name__, instance_relative_config=False)
    app.config.from_mapping(
        OUTPUT_ROOT=os.environ.get('DKH_OUTPUT_ROOT', './runs')
    )

    if test_config is None:
        # load the instance config, if it exists, when not testing
        app.config.from_pyfile('config.py', silent=True)
        logging.basicConfig(level=logging.INFO, format='%(asctime)s %(name)s %(levelname)s: %(message)s')
    else:
        # load the test config if passed in
        app.config.from_mapping(test_config)

    from . import run
    app.register_blueprint(run.bp)

    return app
