from flask import jsonify, request

from ballot.errors import ParseError
from ballot.services.commands import CommandRequest, execute


def run_command(subcommand):
    """Run one command from a JSON body whose keys mirror the CLI flags."""
    data = request.get_json(silent=True)
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ParseError("request body must be a JSON object")

    payload = execute(CommandRequest(subcommand, dict(data), "json"))
    return jsonify({"status": "success", **payload}), 200
