from hypothesis import settings

# Exact arithmetic on long periodic tails has uneven per-example cost.
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")
