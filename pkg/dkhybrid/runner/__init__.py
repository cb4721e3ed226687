from dkhybrid.runner.config import SimConfig
from dkhybrid.runner.scenarios import Scenario, build_scenario
from dkhybrid.runner.members import run_member, member_for, MemberResult
from dkhybrid.runner.executor import EnsembleRunner, EnsembleStatistics
from dkhybrid.runner.writers import write_outputs
from dkhybrid.runner.cli import run, main
