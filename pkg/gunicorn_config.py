import os

# Large enumerations and scans can run for minutes
timeout = int(os.getenv("GUNICORN_TIMEOUT", 300))
bind = f"0.0.0.0:{os.getenv('PORT', 5000)}"
workers = int(os.getenv("WEB_CONCURRENCY", 2))
