"""Test wiring: the suite is written for Django's test runner
(``python manage.py test`` from ``app/``), so configure the project's
settings before pytest collects the test modules."""

import os
import sys
from pathlib import Path

APP_DIR = Path(__file__).resolve().parent / 'app'
if str(APP_DIR) not in sys.path:
    sys.path.insert(0, str(APP_DIR))

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'app.settings')

import django  # noqa: E402

django.setup()
