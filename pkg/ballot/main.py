import logging

from flask import Flask, jsonify
from flask_cors import CORS

from ballot.config import Config, configure_logging
from ballot.errors import BallotError

logger = logging.getLogger("BallotAPI")


def create_app():
    configure_logging()

    app = Flask(__name__)
    app.config.from_object(Config)

    CORS(app, resources={r"/api/*": {"origins": Config.CORS_ORIGINS}})

    # --- Health check route ---
    @app.route("/api/health")
    def health():
        return jsonify({
            "status": "ok",
            "message": "Ballot toolkit API running",
            "enumeration_budget": app.config["ENUMERATION_BUDGET"],
        })

    # --- Error envelope for every service error ---
    @app.errorhandler(BallotError)
    def handle_ballot_error(e):
        logger.error(f"{e.name}: {e}")
        return jsonify({
            "status": "error",
            "error": e.name,
            "message": str(e),
        }), e.http_status

    # --- Register API blueprints ---
    from ballot.api.probability_routes import probability_bp
    from ballot.api.bounds_routes import bounds_bp
    from ballot.api.cycle_routes import cycle_bp

    app.register_blueprint(probability_bp, url_prefix="/api")
    app.register_blueprint(bounds_bp, url_prefix="/api")
    app.register_blueprint(cycle_bp, url_prefix="/api")

    return app


if __name__ == "__main__":
    app = create_app()
    app.run(host="127.0.0.1", port=5000, debug=True)
