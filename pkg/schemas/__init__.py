# schemas/__init__.py
# Keep this empty to avoid import side-effects.
# Import directly from submodules, e.g.:
# from schemas.scenario import Scenario
