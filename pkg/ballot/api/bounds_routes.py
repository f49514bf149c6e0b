from flask import Blueprint

from ballot.api.dispatch import run_command

bounds_bp = Blueprint("bounds_bp", __name__)


@bounds_bp.route("/bounds", methods=["POST"])
def bounds_route():
    return run_command("bounds")


@bounds_bp.route("/scan", methods=["POST"])
def scan_route():
    return run_command("scan")
