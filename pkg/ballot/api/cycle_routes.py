from flask import Blueprint

from ballot.api.dispatch import run_command

cycle_bp = Blueprint("cycle_bp", __name__)


@cycle_bp.route("/cycle", methods=["POST"])
def cycle_route():
    return run_command("cycle")
