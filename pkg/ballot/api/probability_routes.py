from flask import Blueprint

from ballot.api.dispatch import run_command

probability_bp = Blueprint("probability_bp", __name__)


@probability_bp.route("/exact", methods=["POST"])
def exact_route():
    return run_command("exact")


@probability_bp.route("/weighted", methods=["POST"])
def weighted_route():
    return run_command("weighted")


@probability_bp.route("/takacs", methods=["POST"])
def takacs_route():
    return run_command("takacs")


@probability_bp.route("/sample", methods=["POST"])
def sample_route():
    return run_command("sample")
