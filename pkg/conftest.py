import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'workbench.settings')
django.setup()
