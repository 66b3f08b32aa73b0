from django.apps import AppConfig


class DecompileConfig(AppConfig):
    name = 'decompile'
    verbose_name = 'Proof script decompiler'
