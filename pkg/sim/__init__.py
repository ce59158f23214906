# sim/__init__.py
# Keep this empty to avoid import side-effects.
# Import directly from submodules, e.g.:
# from sim.runners import run_scenario
