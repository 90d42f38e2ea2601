import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "dynamicsBase.settings")
django.setup()
