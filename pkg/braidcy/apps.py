from django.apps import AppConfig


class BraidcyConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'braidcy'
    verbose_name = 'Braided Calabi-Yau analysis'
