# filters/__init__.py
# Keep this empty to avoid import side-effects.
# Import directly from submodules, e.g.:
# from filters.closed_form import penalty_filter
