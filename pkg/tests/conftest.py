from hypothesis import settings

# exact arithmetic on random inputs has uneven cost; rely on example counts instead
settings.register_profile("default", deadline=None)
settings.load_profile("default")
